"""Majorana contractions of the evolved vacuum and Bell-seeded states.

Everything downstream (Pfaffian spin correlators, density matrices) consumes
pair expectations of the Majorana operators A_l = c_l^dag + c_l and
B_l = c_l^dag - c_l in the Heisenberg picture.  Two families of states are
covered here:

* the bare vacuum |down...down>, whose contractions stay translation
  invariant and Wick-factorize over a single antisymmetric matrix, and
* one-particle Bell seeds (w_i c_i^dag + w_j c_j^dag)|vac>, which cover the
  two-site Bell insertions with one shared excitation.  (The two-particle
  pair seed is handled at gamma = 0 by `isotropic`.)

For the one-particle family the contraction splits into the vacuum part plus
a modification assembled from one-particle matrix elements
<vac| c_a X_l(t) |vac> (bra side, "left") and <vac| X_l(t) c_b^dag |vac>
(ket side, "right"):

    left_A(x)  = V(x) - i (E(x) - O(x))        x = source - site
    left_B(x)  = V(x) - i (E(x) + O(x))
    right_A(x) = conj(left_A(x))
    right_B(x) = -conj(left_B(x))

    <X_l Y_m>_state = <X_l Y_m>_vac
      + (1/n2) sum_{a,b in sources} wbar_a w_b
          [ left_X(l,a) right_Y(m,b) - left_Y(m,a) right_X(l,b) ]

with n2 = sum |w|^2; the bra-side source always pairs with a left element.  The vacuum pair values have closed momentum-integral
forms in terms of the kernels u^o = s*t*sinc(Lambda t),
u^e = e*t*sinc(Lambda t), v = cos(Lambda t):

    <A_l B_{l+r}> = delta_{r0} - (2/pi) int_0^pi [u_o^2 cos(kr)
                                                   + u_e u_o sin(kr)] dk
    <A_l A_{l+r}> = delta_{r0} - (2i/pi) int_0^pi v u_o sin(kr) dk
    <B_l B_{l+r}> = -conj(<A_l A_{l+r}>)

All of these were cross-checked against exact diagonalization on small rings
before being frozen into the test suite.
"""

import threading
from dataclasses import dataclass

import numpy as np

from .errors import CutoffError
from .model import ModelParams, light_cone_radius, propagation_kernels
from .quadrature import kernel_grid
from . import model as _model

_cache_lock = threading.Lock()
_kernel_cache = {}
_vacuum_cache = {}


@dataclass(frozen=True)
class KernelCache:
    """Kernel tables V, E, O on |x| <= radius at one (params, t)."""

    params: ModelParams
    time: float
    radius: int
    v_table: np.ndarray
    e_table: np.ndarray
    o_table: np.ndarray

    def _idx(self, x):
        if abs(x) > self.radius:
            raise CutoffError(
                f"kernel radius {self.radius} exceeded at separation {x}")
        return x + self.radius

    def v(self, x):
        return self.v_table[self._idx(x)]

    def e(self, x):
        return self.e_table[self._idx(x)]

    def o(self, x):
        return self.o_table[self._idx(x)]


def kernels(params, t, radius):
    """Cached kernel tables for separations up to radius."""
    key = (params, float(t), int(radius))
    with _cache_lock:
        hit = _kernel_cache.get(key)
    if hit is not None:
        return hit
    xs = np.arange(-radius, radius + 1)
    vx, ex, ox = propagation_kernels(params, t, xs)
    cache = KernelCache(params, float(t), int(radius), vx, ex, ox)
    with _cache_lock:
        _kernel_cache[key] = cache
    return cache


class VacuumContractions:
    """Pair expectations of the time-evolved vacuum, indexed by separation."""

    is_modified = False

    def __init__(self, params, t, radius):
        self.params = params
        self.time = float(t)
        self.radius = int(radius)
        rs = np.arange(-radius, radius + 1)
        if params.is_finite:
            k = _model.momentum_grid(params.size, "antiperiodic")
            w = np.full(params.size, np.pi / params.size)
        else:
            k, w = kernel_grid(params.lam * t, radius)
        e = 1.0 + params.lam * np.cos(k)
        s = params.lam * params.gamma * np.sin(k)
        lam_k = np.hypot(e, s)
        sinc_t = t * np.sinc(lam_k * t / np.pi)
        v = np.cos(lam_k * t)
        ue = e * sinc_t
        uo = s * sinc_t
        ckr = np.cos(np.outer(rs, k))
        skr = np.sin(np.outer(rs, k))
        delta = (rs == 0).astype(float)
        two_pi = 2.0 / np.pi
        self._ab = delta - two_pi * (ckr @ (w * uo * uo) + skr @ (w * ue * uo))
        self._aa = delta.astype(complex) - 2j / np.pi * (skr @ (w * v * uo))
        self._bb = -np.conj(self._aa)

    def _at(self, table, r):
        if abs(r) > self.radius:
            raise CutoffError(
                f"contraction radius {self.radius} exceeded at separation {r}")
        return table[r + self.radius]

    def ab(self, r):
        """<A_l B_{l+r}>."""
        return self._at(self._ab, r)

    def aa(self, r):
        """<A_l A_{l+r}>."""
        return self._at(self._aa, r)

    def bb(self, r):
        """<B_l B_{l+r}>."""
        return self._at(self._bb, r)

    def pair(self, kind_l, l, kind_m, m):
        """<X_l Y_m> for kinds in {'A', 'B'}."""
        r = m - l
        if kind_l == "A" and kind_m == "B":
            return complex(self.ab(r))
        if kind_l == "B" and kind_m == "A":
            return -complex(self.ab(-r))
        if kind_l == "A" and kind_m == "A":
            return complex(self.aa(r))
        return complex(self.bb(r))


class BellContractions:
    """Contractions of a one-particle Bell seed on the vacuum.

    The state is (w_i c_i^dag + w_j c_j^dag)|vac> / sqrt(n2) with weights
    (1, amp).  Real amp = +/-1 covers the Bell pair insertions used by the
    scenario engine; the machinery itself accepts any complex amp.
    """

    is_modified = True

    def __init__(self, params, t, radius, i, j, amp=-1.0):
        if i == j:
            raise ValueError("Bell seed needs two distinct sites")
        self.params = params
        self.time = float(t)
        self.i = int(i)
        self.j = int(j)
        self.amp = complex(amp)
        self.weights = (1.0 + 0j, complex(amp))
        self.n2 = 1.0 + abs(amp) ** 2
        self.sources = (int(i), int(j))
        span = abs(j - i) + radius
        self.vacuum = vacuum_contractions(params, t, radius=span)
        self.kernel = kernels(params, t, span)

    def left(self, kind, site, source):
        """<vac| c_source X_site(t) |vac> (source index as bra-side mode)."""
        x = source - site
        kc = self.kernel
        if kind == "A":
            return kc.v(x) - 1j * (kc.e(x) - kc.o(x))
        return kc.v(x) - 1j * (kc.e(x) + kc.o(x))

    def right(self, kind, site, source):
        """<vac| X_site(t) c_source^dag |vac>."""
        x = source - site
        kc = self.kernel
        if kind == "A":
            return kc.v(x) + 1j * (kc.e(x) - kc.o(x))
        return -(kc.v(x) + 1j * (kc.e(x) + kc.o(x)))

    def mod(self, kind_l, l, kind_m, m):
        """Modification of <X_l Y_m> relative to the vacuum value."""
        total = 0.0 + 0j
        for a, wa in zip(self.sources, self.weights):
            for b, wb in zip(self.sources, self.weights):
                term = (self.left(kind_l, l, a) * self.right(kind_m, m, b)
                        - self.left(kind_m, m, a) * self.right(kind_l, l, b))
                total += np.conj(wa) * wb * term
        return total / self.n2

    def pair(self, kind_l, l, kind_m, m):
        return self.vacuum.pair(kind_l, l, kind_m, m) + self.mod(
            kind_l, l, kind_m, m)


def vacuum_contractions(params, t, radius=None):
    if radius is None:
        radius = light_cone_radius(params, t)
    key = (params, float(t), int(radius))
    with _cache_lock:
        hit = _vacuum_cache.get(key)
    if hit is not None:
        return hit
    out = VacuumContractions(params, t, radius)
    with _cache_lock:
        _vacuum_cache[key] = out
    return out


def bell_contractions(params, t, i, j, amp=-1.0, radius=None):
    if radius is None:
        radius = light_cone_radius(params, t)
    return BellContractions(params, t, radius, i, j, amp=amp)
