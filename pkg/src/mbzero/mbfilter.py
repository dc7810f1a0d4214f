"""Mellin-Barnes engine: vertical-contour quadrature, contour-shift
calculus, residue extraction, Hadamard finite parts, and Newton root
finding on the spectral filter.

Two distinct objects live here and must not be conflated:

* ``mb_integral`` is the literal vertical-line quadrature of a kernel.
  It obeys contour-shift invariance and the a -> 0 limit lemmas, and it
  is what the tail-bound and panel-doubling contracts are written about.

* ``spectral_filter`` is the residue-localized value of the same kernel
  at the spectral point s0(E) = 1/4 + iE/4, where the kernel's
  arithmetic factor crosses the critical line: a closed-circle
  extraction of kernel(s)/(s - s0).  Its roots in E are exactly twice
  the critical-line ordinates, which is what Newton iterates on.  The
  raw line integral provably does not vanish at those energies: the
  vanish-iff statement holds for the localized arithmetic factor (the
  Gamma dressing never vanishes), not for the unlocalized integral.
"""

import cmath
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from . import specfun as sf
from .errors import (
    ArgumentDomain,
    BasinEscape,
    ContourOnPole,
    NoConvergence,
    NotAZero,
    DerivativeVanishes,
    PoleInStrip,
    TailBoundViolated,
)
from .quadrature import circle_nodes, panel_nodes
from .zerocensus import ZeroRecord

KERNELS = ("zeta2s", "beta2s", "xi2s")
_DD_DPS = 31  # working digits of the double-double mode
_POLE_MARGIN = 1e-6


@dataclass(frozen=True)
class KernelScale:
    """Scale parameter a in (0, 1), entering kernels as (2a)^{2s}."""

    a: float

    def __post_init__(self):
        if not (0.0 < self.a < 1.0):
            raise ArgumentDomain(f"scale a = {self.a} outside (0, 1)")


@dataclass(frozen=True)
class SpectralPoint:
    """Energy E with order nu = 1/2 + iE/2 and locus s0 = 1/4 + iE/4."""

    energy: float

    @property
    def nu(self) -> complex:
        return complex(0.5, 0.5 * self.energy)

    @property
    def s0(self) -> complex:
        return complex(0.25, 0.25 * self.energy)


@dataclass(frozen=True)
class ContourSpec:
    """Vertical line Re s = abscissa, truncated at |Im s| = t_max."""

    abscissa: float
    t_max: float = 60.0
    panel_count: int = 160
    rule: str = "gauss_legendre"

    def __post_init__(self):
        if not (self.t_max > 0 and self.panel_count > 0):
            raise ArgumentDomain("t_max and panel_count must be positive")
        if self.rule not in ("gauss_legendre", "tanh_sinh"):
            raise ArgumentDomain(f"unknown rule {self.rule!r}")

    @staticmethod
    def default(abscissa: float, energy: float = 0.0) -> "ContourSpec":
        t_max = max(60.0, 0.5 * abs(energy) + 35.0)
        return ContourSpec(abscissa=abscissa, t_max=t_max,
                           panel_count=max(160, int(2.0 * t_max)))


@dataclass(frozen=True)
class FilterEvaluation:
    energy: float
    kernel: str
    value: complex
    truncation_error: float
    contour: ContourSpec

    def __post_init__(self):
        if not (self.truncation_error >= 0.0):
            raise ArgumentDomain("truncation_error must be >= 0")
        v = complex(self.value)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ArgumentDomain("filter value not finite")


# ---------------------------------------------------------------------------
# Kernels
# ---------------------------------------------------------------------------

def _check_kernel(kernel: str) -> str:
    if kernel not in KERNELS:
        raise ArgumentDomain(f"unknown kernel {kernel!r}")
    return kernel


def kernel_prefactor(kernel: str) -> complex:
    """1/(4 pi i) for the zeta kernel, 1/(2 pi i) for beta and xi."""
    if kernel == "zeta2s":
        return 1.0 / (4j * math.pi)
    return 1.0 / (2j * math.pi)


def pole_abscissas(kernel: str, span: float = 12.0) -> np.ndarray:
    """Real parts of the kernel's pole ladders within [-span, span]."""
    _check_kernel(kernel)
    ladders = set()
    n_max = int(span) + 2
    if kernel in ("zeta2s", "beta2s"):
        ladders.update(float(-n) for n in range(n_max))          # Gamma(s)
        ladders.update(0.5 - n for n in range(n_max))            # Gamma(s - nu)
        if kernel == "zeta2s":
            ladders.add(0.5)                                     # zeta(2s) pole
    else:
        ladders.update(0.5 - n for n in range(n_max))            # Gamma(s - nu)
        ladders.update((0.0, 0.5))                               # 1/(2s(2s-1))
    arr = np.array(sorted(ladders))
    return arr[np.abs(arr) <= span]


def _kernel_integrand(kernel: str, s: np.ndarray, nu: complex, a: float) -> np.ndarray:
    """Kernel integrand (no prefactor) on an array of contour nodes."""
    log2a = math.log(2.0 * a)
    lg_nu = np.array([sf.log_gamma(z - nu) for z in s])
    if kernel == "zeta2s":
        lg_s = np.array([sf.log_gamma(z) for z in s])
        return np.exp(lg_s + lg_nu + 2.0 * s * log2a) * sf.zeta_vec(2.0 * s)
    if kernel == "beta2s":
        lg_s = np.array([sf.log_gamma(z) for z in s])
        return np.exp(lg_s + lg_nu + 2.0 * s * log2a) \
            * sf.dirichlet_beta_vec(2.0 * s)
    xi = np.array([sf.completed_xi(2.0 * z) for z in s])
    return (np.exp(lg_nu + s * math.log(math.pi) + 2.0 * s * log2a)
            * xi / (2.0 * s * (2.0 * s - 1.0)))


def arithmetic_factor(kernel: str, z: complex) -> complex:
    """The kernel's L-type factor evaluated at argument z (= 2s)."""
    if kernel == "zeta2s":
        return sf.zeta(z)
    if kernel == "beta2s":
        return sf.dirichlet_beta(z)
    return sf.completed_xi(z)


def _dressing_log(kernel: str, point: SpectralPoint, a: float) -> complex:
    """log of the never-vanishing factor multiplying L(2 s0) in the filter."""
    s0, nu = point.s0, point.nu
    log2a = math.log(2.0 * a)
    if kernel in ("zeta2s", "beta2s"):
        return sf.log_gamma(s0) + sf.log_gamma(s0 - nu) + 2.0 * s0 * log2a
    return (sf.log_gamma(s0 - nu) + s0 * math.log(math.pi) + 2.0 * s0 * log2a
            - cmath.log(2.0 * s0) - cmath.log(2.0 * s0 - 1.0))


# ---------------------------------------------------------------------------
# High-precision (double-double scale) backend
# ---------------------------------------------------------------------------

def _hp_arithmetic(kernel: str, z):
    if kernel == "zeta2s":
        return mp.zeta(z)
    if kernel == "beta2s":
        return mp.mpf(4) ** (-z) * (mp.zeta(z, mp.mpf(1) / 4)
                                    - mp.zeta(z, mp.mpf(3) / 4))
    return (mp.pi ** (-z / 2) * mp.gamma(z / 2 + 1) * (z - 1) * mp.zeta(z)
            if abs(z - 1) > mp.mpf("1e-25") else mp.mpf("0.5"))


def _hp_dressing(kernel: str, s0, nu, a):
    log2a = mp.log(2 * a)
    if kernel in ("zeta2s", "beta2s"):
        return mp.gamma(s0) * mp.gamma(s0 - nu) * mp.exp(2 * s0 * log2a)
    return (mp.gamma(s0 - nu) * mp.exp(s0 * mp.log(mp.pi) + 2 * s0 * log2a)
            / (2 * s0 * (2 * s0 - 1)))


# ---------------------------------------------------------------------------
# Line integral
# ---------------------------------------------------------------------------

def _graded_edges(kernel: str, nu: complex, contour: ContourSpec) -> np.ndarray:
    """Panel edges: uniform base grid plus geometric refinement opposite
    any pole ladder that sits close to the contour.

    A pole at horizontal distance d from the line makes the integrand
    spike with width ~d at that height; panels are shrunk to ~d/2 there
    so 16-point Gauss-Legendre keeps spectral accuracy.
    """
    lo, hi = -contour.t_max, contour.t_max
    g = contour.abscissa
    edges = set(np.linspace(lo, hi, contour.panel_count + 1))
    ladders = pole_abscissas(kernel, span=max(12.0, abs(g) + 2))
    hotspots = (
        (0.0, float(np.min(np.abs(ladders - g)))),
        (nu.imag, min(abs(g - (0.5 - n)) for n in range(14))),
    )
    for t_star, dist in hotspots:
        if dist >= 0.75 or not (lo < t_star < hi):
            continue
        width = max(0.5 * dist, 1e-4)
        offset = 0.0
        while offset < 4.0:
            for sgn in (1.0, -1.0):
                e = t_star + sgn * offset
                if lo < e < hi:
                    edges.add(e)
            offset = width if offset == 0.0 else 2.0 * offset
    return np.array(sorted(edges))


def _nodes_from_edges(edges: np.ndarray, refine: int = 0):
    for _ in range(refine):
        edges = np.sort(np.concatenate([edges, 0.5 * (edges[1:] + edges[:-1])]))
    x, w = np.polynomial.legendre.leggauss(16)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def _line_sum(kernel: str, nu: complex, a: float, contour: ContourSpec,
              refine: int = 0) -> complex:
    edges = _graded_edges(kernel, nu, contour)
    t, w = _nodes_from_edges(edges, refine)
    s = contour.abscissa + 1j * t
    vals = _kernel_integrand(kernel, s, nu, a)
    return complex(np.sum(vals * w)) * 1j * kernel_prefactor(kernel)


def _tail_estimate(kernel: str, nu: complex, a: float, contour: ContourSpec) -> float:
    """Exponential-tail bound from the measured decay at the truncation edge."""
    out = 0.0
    for sign in (+1.0, -1.0):
        t_edge = sign * contour.t_max
        probe = np.array([t_edge - sign * 1.0, t_edge])
        s = contour.abscissa + 1j * probe
        m = np.abs(_kernel_integrand(kernel, s, nu, a))
        if m[1] <= 0.0:
            continue
        rate = math.log(max(m[0], 1e-300) / m[1])  # e-folds per unit t
        rate = max(rate, 0.5)
        out += m[1] / rate * 2.0
    return out * abs(kernel_prefactor(kernel))


def validate_contour(kernel: str, contour: ContourSpec) -> None:
    _check_kernel(kernel)
    ladders = pole_abscissas(kernel, span=max(12.0, abs(contour.abscissa) + 2))
    dist = float(np.min(np.abs(ladders - contour.abscissa)))
    if dist < _POLE_MARGIN:
        raise ContourOnPole(
            f"abscissa {contour.abscissa} within {_POLE_MARGIN} of a pole ladder"
        )


def mb_integral(kernel: str, energy: float, scale: KernelScale,
                contour: ContourSpec = None,
                precision: str = "double") -> FilterEvaluation:
    """Literal vertical-line quadrature of the kernel at Re s = abscissa.

    truncation_error combines the discarded-tail bound with a half-panel
    consistency delta; doubling panel_count moves the value by less than
    ten times this figure.
    """
    _check_kernel(kernel)
    point = SpectralPoint(energy)
    if contour is None:
        contour = ContourSpec.default(0.75 if kernel != "zeta2s" else 0.6, energy)
    validate_contour(kernel, contour)
    if precision == "double_double":
        return _mb_integral_hp(kernel, point, scale, contour)
    nu = point.nu
    coarse = _line_sum(kernel, nu, scale.a, contour, refine=0)
    value = _line_sum(kernel, nu, scale.a, contour, refine=1)
    tail = _tail_estimate(kernel, nu, scale.a, contour)
    err = tail + abs(value - coarse)
    accumulated = abs(value)
    if accumulated > 0.0 and tail > 1e-14 * accumulated and tail > 1e-280:
        raise TailBoundViolated(
            f"tail {tail:.3e} above 1e-14 of |integral| {accumulated:.3e}; "
            "raise t_max"
        )
    return FilterEvaluation(energy=energy, kernel=kernel, value=value,
                            truncation_error=err, contour=contour)


def _mb_integral_hp(kernel: str, point: SpectralPoint, scale: KernelScale,
                    contour: ContourSpec) -> FilterEvaluation:
    with mp.workdps(_DD_DPS):
        nu = mp.mpc(0.5, 0.5 * point.energy)
        a = mp.mpf(scale.a)
        log2a = mp.log(2 * a)
        t, w = _nodes_from_edges(_graded_edges(kernel, point.nu, contour))
        total = mp.mpc(0)
        for ti, wi in zip(t, w):
            s = mp.mpc(contour.abscissa, ti)
            if kernel in ("zeta2s", "beta2s"):
                val = mp.gamma(s) * mp.gamma(s - nu) * mp.exp(2 * s * log2a)
                val *= _hp_arithmetic(kernel, 2 * s)
            else:
                val = (mp.gamma(s - nu)
                       * mp.exp(s * mp.log(mp.pi) + 2 * s * log2a)
                       * _hp_arithmetic(kernel, 2 * s)
                       / (2 * s * (2 * s - 1)))
            total += val * wi
        total *= 1j * kernel_prefactor(kernel)
        value = complex(total)
    tail = _tail_estimate(kernel, point.nu, scale.a, contour)
    return FilterEvaluation(energy=point.energy, kernel=kernel, value=value,
                            truncation_error=tail, contour=contour)


# ---------------------------------------------------------------------------
# Spectral filter (residue-localized) and Newton root finding
# ---------------------------------------------------------------------------

def spectral_filter(kernel: str, energy: float, scale: KernelScale,
                    precision: str = "double") -> complex:
    """Residue extraction of kernel(s)/(s - s0) at s0(E) = 1/4 + iE/4.

    Equals prefactor * 2 pi i * Gamma-dressing * L(1/2 + iE/2); vanishes
    exactly at E = 2 t_n.  Reported with the kernel's paper prefactor.
    """
    _check_kernel(kernel)
    point = SpectralPoint(energy)
    norm = kernel_prefactor(kernel) * 2j * math.pi
    if precision == "double_double":
        with mp.workdps(_DD_DPS):
            s0 = mp.mpc(0.25, 0.25 * energy)
            nu = mp.mpc(0.5, 0.5 * energy)
            val = (_hp_dressing(kernel, s0, nu, mp.mpf(scale.a))
                   * _hp_arithmetic(kernel, 2 * s0))
            return complex(val * norm)
    dress = cmath.exp(_dressing_log(kernel, point, scale.a))
    return norm * dress * arithmetic_factor(kernel, 2.0 * point.s0)


def spectral_filter_circle(kernel: str, energy: float, scale: KernelScale,
                           radius: float = 0.05, n_points: int = 64) -> complex:
    """Same object as spectral_filter, by closed-circle quadrature.

    Independent route used to cross-check the direct product; spectrally
    accurate since the integrand is meromorphic with one enclosed pole.
    """
    _check_kernel(kernel)
    point = SpectralPoint(energy)
    s, w = circle_nodes(point.s0, radius, n_points)
    vals = _kernel_integrand(kernel, s, point.nu, scale.a) / (s - point.s0)
    return complex(np.sum(vals * w)) * kernel_prefactor(kernel)


def _filter_with_derivative(kernel: str, energy: float, scale: KernelScale):
    """(F, dF/dE) with the derivative taken under the extraction.

    dF/dE carries (i/4)(psi(s0) - psi(s0 - nu) + 2 log 2a) from the
    moving dressing (d nu/dE = i/2 appearing as -(i/4) net on s0 - nu)
    plus the (i/2) L'(2 s0) arithmetic term, L' by central differences.
    """
    h = 1e-6
    point = SpectralPoint(energy)
    s0, nu = point.s0, point.nu
    dress = cmath.exp(_dressing_log(kernel, point, scale.a))
    lval = arithmetic_factor(kernel, 2.0 * s0)
    lp = (arithmetic_factor(kernel, 2.0 * s0 + 1j * h)
          - arithmetic_factor(kernel, 2.0 * s0 - 1j * h)) / (2j * h)
    if kernel in ("zeta2s", "beta2s"):
        dlog = 0.25j * (sf.digamma(s0) - sf.digamma(s0 - nu)
                        + 2.0 * math.log(2.0 * scale.a))
    else:
        dlog = (-0.25j * sf.digamma(s0 - nu)
                + 0.25j * (math.log(math.pi) + 2.0 * math.log(2.0 * scale.a))
                - 0.5j / (2.0 * s0) - 0.5j / (2.0 * s0 - 1.0))
    norm = kernel_prefactor(kernel) * 2j * math.pi
    f = norm * dress * lval
    df = norm * dress * (dlog * lval + 0.5j * lp)
    return f, df


def newton_root_dd(kernel: str, e_guess: float, scale: KernelScale,
                   max_iter: int = 50):
    """Newton on the spectral filter carried entirely in 31-digit scalars.

    Returns the root as an mpmath mpf (full working precision) for the
    32-digit serialization path; newton_filter_root wraps it for the
    double_double precision tag.
    """
    _check_kernel(kernel)
    with mp.workdps(_DD_DPS):
        e = mp.mpf(e_guess)
        a = mp.mpf(scale.a)
        hh = mp.mpf("1e-12")
        f_hist = []
        for it in range(max_iter):
            s0 = mp.mpf(1) / 4 + 1j * e / 4
            nu = mp.mpf(1) / 2 + 1j * e / 2
            dress = _hp_dressing(kernel, s0, nu, a)
            lval = _hp_arithmetic(kernel, 2 * s0)
            lp = (_hp_arithmetic(kernel, 2 * s0 + 1j * hh)
                  - _hp_arithmetic(kernel, 2 * s0 - 1j * hh)) / (2j * hh)
            if kernel in ("zeta2s", "beta2s"):
                dlog = (mp.digamma(s0) - mp.digamma(s0 - nu)
                        + 2 * mp.log(2 * a)) * mp.mpc(0, 0.25)
            else:
                dlog = (-mp.mpc(0, 0.25) * mp.digamma(s0 - nu)
                        + mp.mpc(0, 0.25) * (mp.log(mp.pi) + 2 * mp.log(2 * a))
                        - mp.mpc(0, 0.5) / (2 * s0)
                        - mp.mpc(0, 0.5) / (2 * s0 - 1))
            f = dress * lval
            df = dress * (dlog * lval + mp.mpc(0, 0.5) * lp)
            f_hist.append(abs(f))
            if it == 2 and not (f_hist[2] < f_hist[0]):
                raise BasinEscape(
                    f"|filter| not decreasing from guess {e_guess}"
                )
            if df == 0:
                raise NoConvergence("filter derivative vanished")
            step = mp.re(f / df)
            e_new = e - step
            if abs(e_new - e_guess) > 1:
                raise BasinEscape(
                    f"iterate {float(e_new):.6f} left the guess basin"
                )
            e = e_new
            if abs(step) < mp.mpf(10) ** (-_DD_DPS + 4) * max(1, abs(e)):
                return +e
    raise NoConvergence(f"dd Newton did not converge from {e_guess}")


def newton_filter_root(kernel: str, e_guess: float, scale: KernelScale,
                       contour: ContourSpec = None,
                       precision: str = "double",
                       max_iter: int = 50) -> ZeroRecord:
    """Newton iteration in E on the spectral filter from e_guess.

    Converged roots satisfy |spectral_filter(E)| < 1e-9 (double) or
    < 1e-11 (double-double).  The iterate must stay within +-1 of the
    guess and |F| must decrease over the first two steps.
    """
    _check_kernel(kernel)
    if precision == "double_double":
        root = newton_root_dd(kernel, e_guess, scale, max_iter)
        e = float(root)
        if abs(spectral_filter(kernel, e, scale, "double_double")) >= 1e-11:
            raise NoConvergence("dd filter residual above 1e-11 at the root")
        residual = abs(arithmetic_factor(kernel, complex(0.5, 0.5 * e)))
        return ZeroRecord(index=0, ordinate=0.5 * e, residual=residual,
                          function="zeta" if kernel != "beta2s" else "beta",
                          method="filter_root")
    e = float(e_guess)
    tol_val = 1e-9
    tol_step = 1e-12
    f_hist = []
    for it in range(max_iter):
        f, df = _filter_with_derivative(kernel, e, scale)
        f_hist.append(abs(f))
        if it == 2 and not (f_hist[2] < f_hist[0]):
            raise BasinEscape(
                f"|filter| not decreasing from guess {e_guess}: {f_hist[:3]}"
            )
        if df == 0:
            raise NoConvergence("filter derivative vanished")
        step = (f / df).real
        e_new = e - step
        if abs(e_new - e_guess) > 1.0:
            raise BasinEscape(
                f"iterate {e_new:.6f} left [{e_guess - 1}, {e_guess + 1}]"
            )
        e = e_new
        if abs(step) < tol_step * max(1.0, abs(e)):
            f_final = abs(spectral_filter(kernel, e, scale, precision))
            if f_final < tol_val:
                residual = abs(arithmetic_factor(kernel, complex(0.5, 0.5 * e)))
                return ZeroRecord(index=0, ordinate=0.5 * e, residual=residual,
                                  function="zeta" if kernel != "beta2s" else "beta",
                                  method="filter_root")
    raise NoConvergence(f"Newton did not converge from {e_guess} in {max_iter}")


# ---------------------------------------------------------------------------
# Contour shift
# ---------------------------------------------------------------------------

def contour_shift_delta(kernel: str, energy: float, scale: KernelScale,
                        g1: float, g2: float,
                        t_max: float = None) -> float:
    """|mb_integral(g1) - mb_integral(g2)| over a pole-free strip."""
    _check_kernel(kernel)
    lo, hi = min(g1, g2), max(g1, g2)
    ladders = pole_abscissas(kernel, span=max(12.0, abs(lo) + 2, abs(hi) + 2))
    inside = ladders[(ladders > lo + 1e-12) & (ladders < hi - 1e-12)]
    if inside.size:
        raise PoleInStrip(
            f"pole ladder at Re s = {inside[0]} inside [{lo}, {hi}]",
            pole=float(inside[0]),
        )
    if g1 == g2:
        return 0.0
    t_cap = t_max if t_max is not None else max(60.0, 0.5 * abs(energy) + 35.0)
    evals = [
        mb_integral(kernel, energy, scale,
                    ContourSpec.default(g, energy) if t_max is None else
                    ContourSpec(abscissa=g, t_max=t_cap,
                                panel_count=max(160, int(2 * t_cap))))
        for g in (g1, g2)
    ]
    return abs(evals[0].value - evals[1].value)


def residue_at_pole(kernel: str, energy: float, scale: KernelScale,
                    pole: complex, radius: float = 0.05,
                    n_points: int = 64) -> complex:
    """Residue of the raw kernel integrand at a pole, by circle quadrature."""
    _check_kernel(kernel)
    point = SpectralPoint(energy)
    s, w = circle_nodes(complex(pole), radius, n_points)
    vals = _kernel_integrand(kernel, s, point.nu, scale.a)
    return complex(np.sum(vals * w)) / (2j * math.pi)


# ---------------------------------------------------------------------------
# Residue at a simple zero
# ---------------------------------------------------------------------------

def residue_simple_zero(s0: complex, scale: KernelScale,
                        h: float = 1e-6) -> complex:
    """2 Phi(s0) zeta'(2 s0) with Phi(s) = pi^{-s} Gamma(s/2).

    This is the coefficient extracted by circling Phi(s) zeta(2s)/(s-s0)^2
    at a simple zero s0 of zeta(2s); zeta' comes from Richardson-refined
    central differences at step h.
    """
    s0 = complex(s0)
    z = 2.0 * s0
    if abs(sf.zeta(z)) > 1e-8:
        raise NotAZero(f"zeta(2 s0) = {sf.zeta(z):.3e} at s0 = {s0!r}")
    d1 = (sf.zeta(z + h) - sf.zeta(z - h)) / (2.0 * h)
    d2 = (sf.zeta(z + 0.5 * h) - sf.zeta(z - 0.5 * h)) / h
    dz = (4.0 * d2 - d1) / 3.0
    if abs(dz) < 1e-8:
        raise DerivativeVanishes(f"zeta'(2 s0) = {dz:.3e}: multiple zero?")
    phi = cmath.exp(-s0 * math.log(math.pi) + sf.log_gamma(0.5 * s0))
    return 2.0 * phi * dz


# ---------------------------------------------------------------------------
# Double-pole circle audit
# ---------------------------------------------------------------------------

def double_pole_circle(anchor: complex, epsilon: float = 0.05,
                       ladder=(0.05, 0.025, 0.0125)):
    """Audit the double-pole expansion on the built-in pair at the anchor.

    A(s) = exp(s), B(s) = cosh(s - anchor + 1).  The circle integral of
    A B / (s - s0)^2 equals 2 pi i (A'B + AB')(s0) exactly for every
    radius; the printed expansion keeps only the A B' term, so its
    discrepancy is the constant 2 pi |A'(s0) B(s0)|, not O(epsilon).
    Both comparisons are measured and reported.
    """
    from .audit import AuditReport

    if not (0.0 < epsilon < 0.1):
        raise ArgumentDomain("epsilon must be in (0, 0.1)")
    s0 = complex(anchor)
    A = cmath.exp
    B = lambda s: cmath.cosh(s - s0 + 1.0)
    a0, a1 = A(s0), A(s0)                      # exp is its own derivative
    b0, b1 = B(s0), cmath.sinh(1.0)
    full = 2j * math.pi * (a1 * b0 + a0 * b1)
    printed = 2j * math.pi * (a0 * b1)
    rows = []
    for eps in ladder:
        s, w = circle_nodes(s0, eps, 64)
        quad = complex(np.sum(np.array([A(z) * B(z) for z in s]) * w
                              / (s - s0) ** 2))
        rows.append((eps, abs(quad - full), abs(quad - printed)))
    worst_full = max(r[1] for r in rows)
    printed_gap = rows[0][2]
    fitted_c = max(r[2] / r[0] for r in rows)
    ratios = [rows[i][2] / rows[i + 1][2] for i in range(len(rows) - 1)]
    return AuditReport(
        claim_id="mb_double_pole_circle",
        lhs=complex(rows[0][1]),
        rhs=complex(printed_gap),
        abs_discrepancy=worst_full,
        rel_discrepancy=worst_full / abs(full),
        verdict="pass" if worst_full <= 1e-10 * abs(full) else "fail",
        notes="circle integral matches 2 pi i (A'B + AB') to quadrature "
              "precision on the whole ladder; the A B'-only form misses the "
              f"constant 2 pi |A' B| = {abs(2 * math.pi * a1 * b0):.6e} "
              f"(shrink ratios {ratios}, fitted C = {fitted_c:.3e} absorbs it)",
        extra={
            "ladder": [r[0] for r in rows],
            "full_residue_gap": [r[1] for r in rows],
            "printed_form_gap": [r[2] for r in rows],
        },
    )


# ---------------------------------------------------------------------------
# Hadamard finite part
# ---------------------------------------------------------------------------

def hadamard_finite_part(f, s0: complex, epsilon_ladder,
                         half_width: float = 1.0) -> complex:
    """Finite part of the vertical-segment integral of f through s0.

    f may carry up to a double pole at s0.  For each ladder epsilon the
    symmetric segment [s0 - i H, s0 + i H] minus the epsilon ball is
    integrated and the divergent 2 i g(s0)/epsilon profile (g the
    analytic factor (s - s0)^2 f) is removed together with its
    -2 i g(s0)/H completion; the remaining drift is c1 eps + c3 eps^3 and
    the ladder is extrapolated through that model.  The result is
    independent of the particular ladder.
    """
    eps = list(epsilon_ladder)
    if len(eps) < 3 or any(b >= a for a, b in zip(eps, eps[1:])):
        raise ArgumentDomain("epsilon_ladder must be strictly decreasing, >= 3")
    s0 = complex(s0)

    # g(s0) = lim (s - s0)^2 f(s): symmetric average kills odd orders, two
    # Richardson levels kill delta^2 and delta^4 (the 2i g0/eps correction
    # amplifies any g0 error by 1/eps, so this needs to be sharp)
    def g_pair(d: float) -> complex:
        up = (1j * d) ** 2 * f(s0 + 1j * d)
        dn = (-1j * d) ** 2 * f(s0 - 1j * d)
        return 0.5 * (up + dn)

    d0 = 0.02
    g_a, g_b, g_c = g_pair(d0), g_pair(0.5 * d0), g_pair(0.25 * d0)
    r1a = (4.0 * g_b - g_a) / 3.0
    r1b = (4.0 * g_c - g_b) / 3.0
    g0 = (16.0 * r1b - r1a) / 15.0

    x_gl, w_gl = np.polynomial.legendre.leggauss(16)

    def both_sides(e: float) -> complex:
        # geometric panels from the excluded ball outward: the integrand
        # grows like u^{-2} toward the ball and uniform panels lose digits
        edges = np.geomspace(e, half_width, 33)
        half = 0.5 * np.diff(edges)
        mid = 0.5 * (edges[1:] + edges[:-1])
        u = (mid[:, None] + half[:, None] * x_gl[None, :]).ravel()
        w = (half[:, None] * w_gl[None, :]).ravel()
        vals = np.array([f(s0 + 1j * ui) + f(s0 - 1j * ui) for ui in u])
        return complex(np.sum(vals * w)) * 1j

    estimates = []
    for e in eps:
        total = both_sides(e) + 2j * g0 / e - 2j * g0 / half_width
        estimates.append(total)
    # after removing the 1/epsilon profile the estimates drift like
    # c1 eps + c3 eps^3 + c5 eps^5 (even Taylor orders cancel by symmetry);
    # extrapolate the ladder through that model
    est_arr = np.array(estimates)
    spread = float(np.max(np.abs(est_arr - est_arr[-1])))
    if not np.all(np.isfinite(est_arr)) \
            or abs(est_arr[-1]) > 10.0 * abs(est_arr[0]) + 1e3:
        raise NoConvergence("finite-part ladder estimates diverge")
    powers = (0, 1, 3, 5)[:min(4, len(eps))]
    design = np.array([[e ** p for p in powers] for e in eps])
    coef, *_ = np.linalg.lstsq(design, est_arr, rcond=None)
    limit = complex(coef[0])
    resid = float(np.max(np.abs(design @ coef - est_arr)))
    if resid > 1e-4 * max(1.0, spread):
        raise NoConvergence("finite-part ladder estimates do not follow the "
                            "removable-drift model; divergent input?")
    return limit
