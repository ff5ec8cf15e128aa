"""Closed-form dynamics at the isotropic point (gamma = 0).

With gamma = 0 the fermion number is conserved and the all-down vacuum is
stationary, so a Bell insertion evolves inside a fixed particle-number
sector.  A one-particle seed (c_i^dag + e^{i phi} c_j^dag)|vac>/sqrt(2)
stays a one-particle wavepacket with amplitudes

    w_l(t) = [ i^{l-i} J_{l-i}(lam t) + e^{i phi} i^{l-j} J_{l-j}(lam t) ] / sqrt(2)

up to one global phase that no exposed quantity depends on and that is
dropped throughout this module.  All pair measures then reduce to closed
forms in the amplitudes: C_{nm} = 2|w_n wbar_m|, tau1 = 4|w|^2(1-|w|^2),
S2 = h(|w_n|^2 + |w_m|^2), F_psi(phi') = |w_n + e^{-i phi'} w_m|^2 / 2.

A two-particle seed (|vac> + e^{i phi} c_i^dag c_j^dag |vac>)/sqrt(2) mixes
the vacuum with a fermion pair whose ordered amplitudes form the
antisymmetric matrix

    T_pq = e^{i phi} (g_{p-i} g_{q-j} - g_{q-i} g_{p-j}),   g_x = i^x J_x(lam t).

This module keeps the pair sector in the frame rotating with the uniform
field (the relative phase exp(2it) between the sectors is dropped), which is
the natural frame for the Bessel coefficients; coherence magnitudes,
populations and concurrences are frame independent, while the phases of the
uu/dd and ud/du coherences, and hence the Bell-fidelity maximizers reported
here, are frame-relative.  The pair density matrix of sites n < m is the X
matrix with

    a = |T_nm|^2/2                   c = T_nm/2
    x = sum_{q != n,m} |T_nq|^2/2    y = likewise with m
    b = 1 - a - x - y
    z = (1/2) [ sum_{q<n} + sum_{q>m} - sum_{n<q<m} ] T_nq conj(T_mq)

where the interior sum carries the Jordan-Wigner reordering sign.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_j, bessel_signed_row
from .errors import CutoffError
from .measures import binary_entropy
from .model import LIGHT_CONE_PAD

NORM_DEFECT_TOL = 1e-10


def _ladder(nmax, x):
    """g_n = i^n J_n(x) for n = -nmax..nmax, indexed by n + nmax."""
    js = bessel_signed_row(nmax, x)
    ns = np.arange(-nmax, nmax + 1)
    return (1j) ** ns * js


@dataclass(frozen=True)
class SingleParticleState:
    """One conserved excitation on the vacuum, gamma = 0.

    Amplitudes are stored on the window [start, start + len - 1]; sites
    outside carry weight below the normalization tolerance.
    """

    start: int
    amps: np.ndarray
    time: float
    lam: float
    sources: tuple
    phi: float

    def w(self, site):
        idx = site - self.start
        if idx < 0 or idx >= len(self.amps):
            return 0.0 + 0.0j
        return self.amps[idx]

    @property
    def sites(self):
        return range(self.start, self.start + len(self.amps))

    @property
    def norm_defect(self):
        return abs(1.0 - float(np.sum(np.abs(self.amps) ** 2)))

    def rho1(self, site):
        p = abs(self.w(site)) ** 2
        return np.array([[p, 0.0], [0.0, 1.0 - p]])

    def rho2(self, n, m):
        """Reduced pair state in the basis (uu, ud, du, dd)."""
        wn, wm = self.w(n), self.w(m)
        x = abs(wn) ** 2
        y = abs(wm) ** 2
        rho = np.zeros((4, 4), dtype=complex)
        rho[1, 1] = x
        rho[2, 2] = y
        rho[1, 2] = wn * np.conj(wm)
        rho[2, 1] = np.conj(rho[1, 2])
        rho[3, 3] = 1.0 - x - y
        return rho


def wavepacket(i, j, phi, t, lam, pad=LIGHT_CONE_PAD):
    """Evolved one-particle Bell seed (c_i + e^{i phi} c_j)^dag |vac>/sqrt(2)."""
    if i == j:
        raise ValueError("seed sites must differ")
    i, j = (i, j) if i < j else (j, i)
    radius = int(math.ceil(abs(lam) * t)) + pad
    nmax = radius + (j - i)
    g = _ladder(nmax, abs(lam) * t)
    start = i - radius
    sites = np.arange(start, j + radius + 1)
    amps = (g[(sites - i) + nmax] + np.exp(1j * phi) * g[(sites - j) + nmax])
    amps = amps / math.sqrt(2.0)
    state = SingleParticleState(start=int(start), amps=amps, time=float(t),
                                lam=float(lam), sources=(i, j),
                                phi=float(phi))
    if state.norm_defect > NORM_DEFECT_TOL:
        raise CutoffError(
            f"wavepacket window too small at t={t}: defect "
            f"{state.norm_defect:.3e}")
    return state


def single_source_packet(i, t, lam, pad=LIGHT_CONE_PAD):
    """Evolved single insertion c_i^dag |vac>."""
    radius = int(math.ceil(abs(lam) * t)) + pad
    g = _ladder(radius, abs(lam) * t)
    state = SingleParticleState(start=int(i - radius), amps=g.copy(),
                                time=float(t), lam=float(lam),
                                sources=(int(i),), phi=0.0)
    if state.norm_defect > NORM_DEFECT_TOL:
        raise CutoffError(
            f"packet window too small at t={t}: defect "
            f"{state.norm_defect:.3e}")
    return state


def concurrence_pair(state, n, m):
    """C_{nm} = 2 |w_n wbar_m| for a one-particle state."""
    return 2.0 * abs(state.w(n) * np.conj(state.w(m)))


def one_tangle_site(state, n):
    p = abs(state.w(n)) ** 2
    return 4.0 * p * (1.0 - p)


def entropy_pair(state, n, m):
    """Von Neumann entropy of the reduced pair state, in bits."""
    return binary_entropy(abs(state.w(n)) ** 2 + abs(state.w(m)) ** 2)


def block_entropy(state, sites):
    """Entropy of a contiguous (or any) block of sites, in bits."""
    p = float(sum(abs(state.w(s)) ** 2 for s in sites))
    return binary_entropy(min(p, 1.0))


def fidelity_pair(state, n, m, phi_ref):
    """Overlap with (ud + e^{i phi_ref} du)/sqrt(2) on sites (n, m)."""
    return 0.5 * abs(state.w(n) + np.exp(-1j * phi_ref) * state.w(m)) ** 2


def bell_fidelities_pair(state, n, m):
    """(psi-, psi+, phi-, phi+) overlaps of the reduced pair state."""
    x = abs(state.w(n)) ** 2
    y = abs(state.w(m)) ** 2
    z_re = (state.w(n) * np.conj(state.w(m))).real
    mid = 0.5 * (x + y)
    outer = 0.5 * (1.0 - x - y)
    return (mid - z_re, mid + z_re, outer, outer)


def self_concurrence(x, phi, t, lam):
    """Concurrence between the two seed sites at separation x.

    Closed form |J_0^2 + 2 i^x J_0 J_x cos(phi) + (-1)^x J_x^2| at argument
    lam*t; equal to 2|w_i wbar_{i+x}| of the wavepacket.
    """
    j0 = bessel_j(0, abs(lam) * t)
    jx = bessel_j(x, abs(lam) * t)
    val = (j0 * j0 + 2.0 * (1j ** x) * j0 * jx * math.cos(phi)
           + (-1.0) ** x * jx * jx)
    return abs(val)


def total_concurrence(state, n):
    """Sum of pair concurrences of site n with every other site."""
    mags = np.abs(state.amps)
    wn = abs(state.w(n))
    return 2.0 * wn * (float(mags.sum()) - wn)


def ckw_pair(state, n):
    """(tau1, sum of squared concurrences, residual) at site n.

    For a pure one-particle state the monogamy bound is saturated:
    tau1 = sum_m C_{nm}^2 exactly, up to the window normalization defect.
    """
    tau1 = one_tangle_site(state, n)
    wn2 = abs(state.w(n)) ** 2
    total = 4.0 * wn2 * (float(np.sum(np.abs(state.amps) ** 2)) - wn2)
    return tau1, total, tau1 - total


@dataclass(frozen=True)
class PhiCoefficients:
    """X-matrix entries of a pair-seed reduced state on sites n < m."""

    a: float
    b: float
    x: float
    y: float
    c: complex
    z: complex

    def rho2(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = self.a
        rho[1, 1] = self.x
        rho[2, 2] = self.y
        rho[3, 3] = self.b
        rho[0, 3] = self.c
        rho[3, 0] = np.conj(self.c)
        rho[1, 2] = self.z
        rho[2, 1] = np.conj(self.z)
        return rho

    def branches(self):
        """Competing concurrence branches 2(|c|-sqrt(xy)), 2(|z|-sqrt(ab))."""
        return (2.0 * (abs(self.c) - math.sqrt(max(self.x * self.y, 0.0))),
                2.0 * (abs(self.z) - math.sqrt(max(self.a * self.b, 0.0))))

    def concurrence(self):
        b1, b2 = self.branches()
        return max(0.0, b1, b2)

    def active_branch(self):
        """'pair' when the uu/dd coherence branch dominates, else 'exchange'."""
        b1, b2 = self.branches()
        return "pair" if b1 >= b2 else "exchange"


class PhiState:
    """Evolved two-particle Bell seed (|vac> + e^{i phi} c_i^dag c_j^dag)/sqrt(2).

    Works in the rotating frame described in the module docstring.  The
    window is sized by the light cone; coefficient weight escaping it would
    show up as a trace defect and is checked.
    """

    def __init__(self, i, j, phi, t, lam, pad=LIGHT_CONE_PAD):
        if i == j:
            raise ValueError("seed sites must differ")
        i, j = (i, j) if i < j else (j, i)
        self.i, self.j = int(i), int(j)
        self.phi = float(phi)
        self.time = float(t)
        self.lam = float(lam)
        radius = int(math.ceil(abs(lam) * t)) + pad
        self.start = i - radius
        sites = np.arange(self.start, j + radius + 1)
        self.sites = sites
        nmax = radius + (j - i)
        g = _ladder(nmax, abs(lam) * t)
        gi = g[(sites - i) + nmax]
        gj = g[(sites - j) + nmax]
        self.t_mat = np.exp(1j * phi) * (np.outer(gi, gj) - np.outer(gj, gi))

    def _idx(self, site):
        idx = site - self.start
        if idx < 0 or idx >= len(self.sites):
            raise CutoffError(f"site {site} outside the coefficient window")
        return idx

    def coefficients(self, n, m):
        """PhiCoefficients of the ordered pair n < m."""
        if not n < m:
            raise ValueError("coefficients need ordered sites n < m")
        ni, mi = self._idx(n), self._idx(m)
        t_n = self.t_mat[ni]
        t_m = self.t_mat[mi]
        mask = np.ones(len(self.sites), dtype=bool)
        mask[[ni, mi]] = False
        a = 0.5 * abs(t_n[mi]) ** 2
        c = 0.5 * t_n[mi]
        x = 0.5 * float(np.sum(np.abs(t_n[mask]) ** 2))
        y = 0.5 * float(np.sum(np.abs(t_m[mask]) ** 2))
        signs = np.ones(len(self.sites))
        signs[ni + 1:mi] = -1.0
        z = 0.5 * complex(np.sum(signs[mask] * t_n[mask]
                                 * np.conj(t_m[mask])))
        b = 1.0 - a - x - y
        return PhiCoefficients(a=a, b=b, x=x, y=y, c=c, z=z)

    def rho2(self, n, m):
        return self.coefficients(n, m).rho2()

    def concurrence(self, n, m):
        return self.coefficients(n, m).concurrence()

    def one_tangle(self, n):
        ni = self._idx(n)
        p = 0.5 * float(np.sum(np.abs(self.t_mat[ni]) ** 2))
        return 4.0 * p * (1.0 - p)

    def optimal_phase_pair(self, n, m):
        """Maximizer of the uu/dd Bell fidelity over the reference phase."""
        return cmath.phase(self.coefficients(n, m).c) % (2.0 * math.pi)

    def optimal_phase_exchange(self, n, m):
        """Maximizer of the ud/du Bell fidelity over the reference phase."""
        return cmath.phase(self.coefficients(n, m).z) % (2.0 * math.pi)

    def orbital_states(self):
        """The two one-particle orbitals seeded at i and j."""
        return (single_source_packet(self.i, self.time, self.lam),
                single_source_packet(self.j, self.time, self.lam))


def phi_state_coefficients(i, j, n, m, t, lam, phi=0.0):
    """X-matrix entries of the evolved pair seed, at one site pair."""
    return PhiState(i, j, phi, t, lam).coefficients(n, m)


def optimal_phases(n, m, i, j, phi):
    """Static reference-phase formulas for the pair seed coherences.

    phi_pair = phi + (pi/2)(i + j - m - n) and phi_exchange = (pi/2)(m - n),
    both mod 2 pi.  These are the t -> 0+ branch values: the exact maximizers
    follow the coherence arguments and jump by pi whenever the underlying
    Bessel combination changes sign, so agreement with the instance methods
    holds modulo pi in general.
    """
    phi_pair = (phi + 0.5 * math.pi * (i + j - m - n)) % (2.0 * math.pi)
    phi_exchange = (0.5 * math.pi * (m - n)) % (2.0 * math.pi)
    return phi_pair, phi_exchange
