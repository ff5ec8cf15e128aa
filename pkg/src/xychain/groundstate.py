"""Equilibrium (ground-state) correlations and energies.

The ground state of the chain is Gaussian in the Jordan-Wigner fermions, so
the same Pfaffian machinery applies with the static contraction

    G(r) = -<A_l B_{l+r}>_GS
         = (1/pi) int_0^pi [ (e_k / Lambda_k) cos(kr)
                             - (lam gamma sin k / Lambda_k) sin(kr) ] dk

together with <A_l A_m> = delta_lm and <B_l B_m> = -delta_lm.  At lam = 0
this gives G(0) = 1: the fully polarized all-up state.  Above lam = 1 (and
at gamma = 0 for lam > 1, where e_k changes sign inside the zone) the
integrand steepens or jumps, so extra panels are spent there.

Finite-ring ground energies come from the Bogoliubov spectrum per boundary
sector.  In the even-parity (antiperiodic) sector the naive filling is the
sector ground state.  In the odd-parity (periodic) sector the parity
constraint costs one quasiparticle whenever lam <= 1, while for lam > 1 the
naive filling already has odd parity; at lam = 1 the correction is gapless
and both prescriptions agree.
"""

import math

import numpy as np

from . import model as _model
from .errors import NumericalHealthError
from .measures import CorrelatorBundle, bundle_from_contractions, one_tangle
from .quadrature import composite_grid


def _gs_grid(params, reach):
    panels = int(math.ceil(8.0 * (1.0 + reach)))
    if params.lam > 1.0 and abs(params.gamma) < 0.1:
        panels = max(panels, 384)
    elif params.lam >= 0.99:
        panels = max(panels, 128)
    return composite_grid(panels)


_gs_cache = {}


def gs_contractions(params, radius):
    """GroundStateContractions with G(r) tabulated on |r| <= radius."""
    key = (params, int(radius))
    hit = _gs_cache.get(key)
    if hit is not None:
        return hit
    rs = np.arange(-radius, radius + 1)
    if params.gamma == 0.0 and params.lam > 1.0:
        # e_k changes sign at k_F; split the integral there.
        kf = math.acos(-1.0 / params.lam)
        panels = int(math.ceil(8.0 * (1.0 + radius)))
        k1, w1 = composite_grid(panels, 0.0, kf)
        k2, w2 = composite_grid(panels, kf, math.pi)
        k = np.concatenate([k1, k2])
        w = np.concatenate([w1, w2])
    else:
        k, w = _gs_grid(params, radius)
    e = 1.0 + params.lam * np.cos(k)
    s = params.lam * params.gamma * np.sin(k)
    lam_k = np.hypot(e, s)
    if np.any(lam_k == 0.0):
        lam_k = np.where(lam_k == 0.0, 1e-300, lam_k)
    ckr = np.cos(np.outer(rs, k))
    skr = np.sin(np.outer(rs, k))
    g = (ckr @ (w * e / lam_k) - skr @ (w * s / lam_k)) / np.pi
    out = GroundStateContractions(params, int(radius), g)
    _gs_cache[key] = out
    return out


class GroundStateContractions:
    """Static Majorana contractions of the ground state."""

    is_modified = False

    def __init__(self, params, radius, g_table):
        self.params = params
        self.radius = radius
        self._g = g_table

    def g(self, r):
        if abs(r) > self.radius:
            raise NumericalHealthError(
                f"ground-state contraction radius {self.radius} exceeded")
        return self._g[r + self.radius]

    def pair(self, kind_l, l, kind_m, m):
        if kind_l == "A" and kind_m == "B":
            return complex(-self.g(m - l))
        if kind_l == "B" and kind_m == "A":
            return complex(self.g(l - m))
        # same-kind pairs vanish in the ground state except for the
        # operator identities A_l^2 = 1 and B_l^2 = -1
        if l == m:
            return complex(1.0 if kind_l == "A" else -1.0)
        return 0.0 + 0.0j


def gs_magnetization(params):
    """<S^z> in the ground state."""
    return 0.5 * gs_contractions(params, 0).g(0)


def gs_bundle(params, d):
    """Correlators of a ground-state site pair at distance d >= 1."""
    if d < 1:
        raise ValueError("distance must be >= 1")
    con = gs_contractions(params, d + 1)
    return bundle_from_contractions(con, 0, d)


def gs_concurrence(params, d):
    """Ground-state concurrence at distance d, with the winning branch."""
    from .measures import concurrence_branches

    bundle = gs_bundle(params, d)
    branch_c, branch_z = concurrence_branches(bundle)
    value = max(0.0, branch_c, branch_z)
    label = "parallel" if branch_c >= branch_z else "antiparallel"
    return value, label


def gs_gxx_determinant(params, d):
    """<Sx_0 Sx_d> via the Toeplitz determinant (secondary route).

    The Pfaffian of the xx string collapses to a determinant because the
    ground state has no anomalous A-A or B-B contractions.
    """
    con = gs_contractions(params, d + 1)
    k = np.empty((d, d))
    for p in range(d):
        for q in range(d):
            k[p, q] = -con.g(q - 1 - p)
    return 0.25 * (-1.0) ** d * np.linalg.det(k)


def gs_one_tangle(params):
    return one_tangle(gs_magnetization(params))


def gs_tangle_budget(params, window=7):
    """(tau1, sum of squared pair concurrences up to the window distance)."""
    tau1 = gs_one_tangle(params)
    total = 0.0
    for d in range(1, window + 1):
        c, _ = gs_concurrence(params, d)
        total += 2.0 * c * c  # both directions along the chain
    return tau1, total


def _sector_energy(n, gamma, lam, sector):
    """Ground energy of one boundary sector from the quadratic form.

    E = (1/2) sum_{eps<0} eps + (1/2) tr M + N/2 with the naive filling;
    the periodic (odd-parity) sector pays the smallest positive
    quasiparticle when lam <= 1.
    """
    bc = -1.0 if sector == "antiperiodic" else 1.0
    m = np.zeros((n, n))
    d = np.zeros((n, n))
    for l in range(n):
        m[l, l] = -1.0
    for l in range(n - 1):
        m[l, l + 1] = m[l + 1, l] = -lam / 2.0
        d[l, l + 1] = -lam * gamma / 2.0
        d[l + 1, l] = lam * gamma / 2.0
    m[n - 1, 0] = m[0, n - 1] = bc * (-lam / 2.0)
    d[n - 1, 0] = bc * (-lam * gamma / 2.0)
    d[0, n - 1] = bc * (lam * gamma / 2.0)
    gen = np.block([[m, d], [-d, -m]])
    eps = np.linalg.eigvalsh(gen)
    energy = 0.5 * eps[eps < 0.0].sum() + 0.5 * np.trace(m) + n / 2.0
    if sector == "periodic" and lam <= 1.0:
        energy += eps[eps > 0.0].min()
    return energy


def ring_ground_energy(n, gamma, lam):
    """Exact ground energy of a ring of n sites."""
    e_even = _sector_energy(n, gamma, lam, "antiperiodic")
    e_odd = _sector_energy(n, gamma, lam, "periodic")
    return min(e_even, e_odd)
