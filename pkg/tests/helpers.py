"""Shared test utilities: random physical two-site states in X form."""

import numpy as np

from xychain.measures import CorrelatorBundle


def random_x_bundle(rng, edge=False):
    """Random physical X-structured two-site state as a correlator bundle.

    Populations come from a Dirichlet draw; the two coherences are placed
    inside their positivity disks |c| <= sqrt(uu*dd), |z| <= sqrt(ud*du).
    With edge=True they sit exactly on the boundary (rank-deficient state).
    """
    uu, ud, du, dd = rng.dirichlet(np.ones(4))
    r_c = 1.0 if edge else rng.uniform(0.0, 1.0)
    r_z = 1.0 if edge else rng.uniform(0.0, 1.0)
    c = r_c * np.sqrt(uu * dd) * np.exp(2j * np.pi * rng.uniform())
    z = r_z * np.sqrt(ud * du) * np.exp(2j * np.pi * rng.uniform())
    gzz = (uu + dd - ud - du) / 4.0
    mz_mean = (uu - dd) / 2.0
    mz_diff = (ud - du) / 2.0
    gxx = (c + z).real / 2.0
    gyx = -(c + z).imag / 2.0
    gyy = (z - c).real / 2.0
    gxy = (z - c).imag / 2.0
    return CorrelatorBundle(gxx=gxx, gyy=gyy, gzz=gzz, gxy=gxy, gyx=gyx,
                            mz_l=mz_mean + mz_diff, mz_m=mz_mean - mz_diff)
