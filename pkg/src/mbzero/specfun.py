"""Complex special functions underpinning the rest of the library.

Gamma is a Lanczos rational approximation with reflection below
Re s = 1/2.  Zeta and Hurwitz zeta use Euler-Maclaurin continuation with
truncation scaled to |Im s| and Bernoulli corrections through order 12.
All argument-sensitive quantities (S(t), continued arg Gamma) go through
ArgTracker paths anchored at s = 2 rather than principal-branch atan2.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ArgumentDomain,
    BranchJump,
    LimitTooLarge,
    NonFiniteInput,
    PoleProximity,
)

# Lanczos coefficients, g = 4.7421875 (607/128), 14-term rational sum.
_LANCZOS_G = 4.7421875
_LANCZOS_C0 = 0.999999999999997092
_LANCZOS_C = (
    57.1562356658629235,
    -59.5979603554754912,
    14.1360979747417471,
    -0.491913816097620199,
    0.339946499848118887e-4,
    0.465236289270485756e-4,
    -0.983744753048795646e-4,
    0.158088703224912494e-3,
    -0.210264441724104883e-3,
    0.217439618115212643e-3,
    -0.164318106536763890e-3,
    0.844182239838527433e-4,
    -0.261908384015814087e-4,
    0.368991826595316234e-5,
)
_SQRT_2PI = 2.5066282746310005

# B_2 .. B_16; the order-12 default uses the first six.
_BERNOULLI = (
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
)

_POLE_MARGIN = 1e-12


def _require_finite(s) -> complex:
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise NonFiniteInput(f"non-finite argument {s!r}")
    return s


# ---------------------------------------------------------------------------
# Gamma family
# ---------------------------------------------------------------------------

def _lanczos_log_gamma_right(z: complex) -> complex:
    """log Gamma on Re z >= 0.5 via the Lanczos sum; principal branch."""
    ser = _LANCZOS_C0
    for j, c in enumerate(_LANCZOS_C):
        ser += c / (z + 1.0 + j)
    tmp = z + _LANCZOS_G + 0.5
    return (z + 0.5) * cmath.log(tmp) - tmp + cmath.log(_SQRT_2PI * ser / z)


def log_sin_pi(s: complex) -> complex:
    """log sin(pi s), overflow-safe for large |Im s|."""
    if s.imag >= 0.0:
        # sin(pi s) = e^{-i pi s} (1 - e^{2 i pi s}) (i/2); |e^{2 i pi s}| <= 1 here
        return (
            -1j * math.pi * s
            + cmath.log(1.0 - cmath.exp(2j * math.pi * s))
            + complex(-math.log(2.0), 0.5 * math.pi)
        )
    return log_sin_pi(s.conjugate()).conjugate()


def _check_gamma_pole(s: complex) -> None:
    if abs(s.imag) < _POLE_MARGIN and s.real < 0.5:
        near = round(s.real)
        if near <= 0 and abs(s.real - near) < _POLE_MARGIN:
            raise PoleProximity(f"Gamma pole within 1e-12 of s = {s!r}")


def log_gamma(s) -> complex:
    """log Gamma(s); exp of it reproduces Gamma to ~1e-13 relative.

    On Re s >= 0.5 this is the principal branch and is continuous along
    vertical lines; below, the reflection formula is used and only the
    exponential is contractual (branch-continuous paths use ArgTracker).
    """
    s = _require_finite(s)
    if s.real >= 0.5:
        return _lanczos_log_gamma_right(s)
    _check_gamma_pole(s)
    return math.log(math.pi) - log_sin_pi(s) - _lanczos_log_gamma_right(1.0 - s)


def gamma(s) -> complex:
    """Gamma(s) for complex s; relative error <= 1e-13 for |s| <= 50."""
    s = _require_finite(s)
    _check_gamma_pole(s)
    return cmath.exp(log_gamma(s))


def digamma(s) -> complex:
    """psi_0(s) = d/ds log Gamma(s), derivative of the Lanczos form."""
    s = _require_finite(s)
    if s.real < 0.5:
        _check_gamma_pole(s)
        return digamma(1.0 - s) - math.pi / cmath.tan(math.pi * s)
    ser = _LANCZOS_C0
    dser = 0.0 + 0.0j
    for j, c in enumerate(_LANCZOS_C):
        ser += c / (s + 1.0 + j)
        dser -= c / (s + 1.0 + j) ** 2
    tmp = s + _LANCZOS_G + 0.5
    return cmath.log(tmp) + (s + 0.5) / tmp - 1.0 + dser / ser - 1.0 / s


# ---------------------------------------------------------------------------
# ArgTracker: continuous-argument bookkeeping
# ---------------------------------------------------------------------------

@dataclass
class ArgTracker:
    """Continuous argument along a sample path, unwrapped step by step.

    Paths start where the principal branch is unambiguous (convention:
    s = 2).  A step whose unwrapped argument still moves by >= pi raises
    BranchJump: the caller refines the path instead of guessing a sheet.
    """

    path: list = field(default_factory=list)
    accumulated_arg: float = 0.0

    def step(self, s: complex, principal_arg: float,
             limit: float = 0.9 * math.pi) -> float:
        k = round((self.accumulated_arg - principal_arg) / (2.0 * math.pi))
        candidate = principal_arg + 2.0 * math.pi * k
        if self.path and abs(candidate - self.accumulated_arg) >= limit:
            raise BranchJump(
                f"arg step {candidate - self.accumulated_arg:+.3f} rad at s={s!r}; "
                "refine the path"
            )
        self.path.append(s)
        self.accumulated_arg = candidate
        return candidate


def log_gamma_continuous(s, tracker: ArgTracker) -> complex:
    """log Gamma with imaginary part continued along the tracker path."""
    s = _require_finite(s)
    val = log_gamma(s)
    unwrapped = tracker.step(s, val.imag)
    return complex(val.real, unwrapped)


# ---------------------------------------------------------------------------
# Euler-Maclaurin zeta / Hurwitz zeta
# ---------------------------------------------------------------------------

def _em_truncation(im_max: float) -> int:
    return max(24, int(1.4 * abs(im_max)) + 16)


def _hurwitz_core(s_arr: np.ndarray, a: float, order: int = 12) -> np.ndarray:
    """Euler-Maclaurin Hurwitz zeta(s, a) over a 1-d array of s.

    head(n=0..N-1) + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
                   + sum_j B_{2j}/(2j)! (s)_{2j-1} (N+a)^{-s-2j+1}
    Valid for Re s > -1, s != 1; pairwise summation via np.sum.
    """
    s = np.atleast_1d(np.asarray(s_arr, dtype=complex))
    n_trunc = _em_truncation(float(np.max(np.abs(s.imag))))
    log_pts = np.log(np.arange(n_trunc, dtype=float) + a)
    head = np.sum(np.exp(-s[:, None] * log_pts[None, :]), axis=1)
    logx0 = math.log(n_trunc + a)
    tail = np.exp((1.0 - s) * logx0) / (s - 1.0)
    tail += 0.5 * np.exp(-s * logx0)
    poch = s.copy()
    m_terms = order // 2
    for j in range(1, m_terms + 1):
        coeff = _BERNOULLI[j - 1] / math.factorial(2 * j)
        tail += coeff * poch * np.exp((-s - (2 * j - 1)) * logx0)
        if j < m_terms:
            poch = poch * (s + (2 * j - 1)) * (s + 2 * j)
    return head + tail


def hurwitz_zeta(s, a: float) -> complex:
    """Hurwitz zeta(s, a) for 0 < a <= 1, Re s > -1, s != 1."""
    s = _require_finite(s)
    if abs(s - 1.0) <= 1e-10:
        raise PoleProximity("Hurwitz zeta pole at s = 1")
    return complex(_hurwitz_core(np.array([s]), a)[0])


def zeta(s) -> complex:
    """Riemann zeta via Euler-Maclaurin continuation.

    Relative error <= 1e-12 for |Im s| <= 200, -1 < Re s <= 4;
    conjugation-equivariant by construction.
    """
    s = _require_finite(s)
    if abs(s - 1.0) <= 1e-10:
        raise PoleProximity("zeta pole at s = 1")
    return complex(_hurwitz_core(np.array([s]), 1.0)[0])


def zeta_vec(s: np.ndarray) -> np.ndarray:
    """Vectorized zeta for contour quadrature; same contract as zeta()."""
    s = np.asarray(s, dtype=complex)
    if np.any(np.abs(s - 1.0) <= 1e-10):
        raise PoleProximity("zeta pole at s = 1 inside vector argument")
    return _hurwitz_core(s.ravel(), 1.0).reshape(s.shape)


def zeta_shifted(s) -> complex:
    """(s - 1) * zeta(s): entire, safe arbitrarily close to s = 1."""
    s = _require_finite(s)
    if abs(s - 1.0) <= 1e-13:
        return 1.0 + 0.0j
    return (s - 1.0) * complex(_hurwitz_core(np.array([s]), 1.0)[0])


def _beta_core(s_arr: np.ndarray, order: int = 12) -> np.ndarray:
    """4^{-s} [zeta(s,1/4) - zeta(s,3/4)] with the s = 1 poles cancelled.

    The two Euler-Maclaurin tails share a truncation point, so the
    (x^{1-s} - y^{1-s})/(s-1) difference can be taken in expm1 form and
    beta stays entire numerically as well.
    """
    s = np.atleast_1d(np.asarray(s_arr, dtype=complex))
    n_trunc = _em_truncation(float(np.max(np.abs(s.imag))))
    base = np.arange(n_trunc, dtype=float)
    log_a = np.log(base + 0.25)
    log_b = np.log(base + 0.75)
    head = np.sum(np.exp(-s[:, None] * log_a[None, :])
                  - np.exp(-s[:, None] * log_b[None, :]), axis=1)
    la, lb = math.log(n_trunc + 0.25), math.log(n_trunc + 0.75)
    # (xa^{1-s} - xb^{1-s})/(s-1) = xa^{1-s} (lb-la) (e^w - 1)/w,
    # w = (1-s)(lb-la); (e^w - 1)/w is entire, series below |w| = 1e-4
    w = (1.0 - s) * (lb - la)
    small = np.abs(w) < 1e-4
    w_safe = np.where(small, 1.0, w)
    phi = np.where(small, 1.0 + w / 2.0 + w * w / 6.0,
                   (np.exp(w_safe) - 1.0) / w_safe)
    tail = np.exp((1.0 - s) * la) * (lb - la) * phi
    tail += 0.5 * (np.exp(-s * la) - np.exp(-s * lb))
    poch = s.copy()
    m_terms = order // 2
    for j in range(1, m_terms + 1):
        coeff = _BERNOULLI[j - 1] / math.factorial(2 * j)
        tail += coeff * poch * (np.exp((-s - (2 * j - 1)) * la)
                                - np.exp((-s - (2 * j - 1)) * lb))
        if j < m_terms:
            poch = poch * (s + (2 * j - 1)) * (s + 2 * j)
    return np.exp(-s * math.log(4.0)) * (head + tail)


def dirichlet_beta(s) -> complex:
    """Dirichlet beta via the Hurwitz split 4^{-s}[zeta(s,1/4)-zeta(s,3/4)]."""
    s = _require_finite(s)
    return complex(_beta_core(np.array([s]))[0])


def dirichlet_beta_vec(s: np.ndarray) -> np.ndarray:
    s = np.asarray(s, dtype=complex)
    return _beta_core(s.ravel()).reshape(s.shape)


# ---------------------------------------------------------------------------
# Completed functions and Hardy rotations
# ---------------------------------------------------------------------------

def completed_xi(s) -> complex:
    """xi(s) = (1/2) s (s-1) pi^{-s/2} Gamma(s/2) zeta(s).

    Evaluated as pi^{-s/2} Gamma(s/2 + 1) (s-1) zeta(s), finite through
    both s = 0 and s = 1.
    """
    s = _require_finite(s)
    val = cmath.exp(-0.5 * s * math.log(math.pi) + log_gamma(0.5 * s + 1.0))
    out = val * zeta_shifted(s)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise PoleProximity(f"completed xi not finite at s = {s!r}")
    return out


def completed_beta(s) -> complex:
    """Completed beta: (4/pi)^{(s+1)/2} Gamma((s+1)/2) beta(s).

    Entire, real on the critical line, invariant under s -> 1 - s.
    """
    s = _require_finite(s)
    pref = cmath.exp(0.5 * (s + 1.0) * math.log(4.0 / math.pi)
                     + log_gamma(0.5 * (s + 1.0)))
    return pref * dirichlet_beta(s)


def riemann_siegel_theta(t: float) -> float:
    """theta(t) = Im log Gamma(1/4 + it/2) - (t/2) log pi, continuous in t."""
    return (_lanczos_log_gamma_right(complex(0.25, 0.5 * t)).imag
            - 0.5 * t * math.log(math.pi))


def beta_theta(t: float) -> float:
    """Rotation phase of the completed beta function on the critical line."""
    s = complex(0.5, t)
    return (0.5 * (s + 1.0) * math.log(4.0 / math.pi)
            + _lanczos_log_gamma_right(0.5 * (s + 1.0))).imag


def hardy_Z(t: float) -> float:
    """Hardy Z(t) = e^{i theta(t)} zeta(1/2 + it); real for real t >= 0."""
    if t < 0:
        raise ArgumentDomain("hardy_Z defined for t >= 0")
    val = cmath.exp(1j * riemann_siegel_theta(t)) * zeta(complex(0.5, t))
    if abs(val.imag) >= 1e-10 * max(1.0, abs(val)):
        raise ArgumentDomain(f"rotation left imaginary residue {val.imag:.3e}")
    return val.real


def hardy_Z_beta(t: float) -> float:
    """Real rotation of beta on the critical line (completed-function phase)."""
    if t < 0:
        raise ArgumentDomain("hardy_Z_beta defined for t >= 0")
    val = cmath.exp(1j * beta_theta(t)) * dirichlet_beta(complex(0.5, t))
    if abs(val.imag) >= 1e-10 * max(1.0, abs(val)):
        raise ArgumentDomain(f"rotation left imaginary residue {val.imag:.3e}")
    return val.real


def hardy_Z_for(function: str):
    if function == "zeta":
        return hardy_Z
    if function == "beta":
        return hardy_Z_beta
    raise ArgumentDomain(f"unknown function tag {function!r}")


# ---------------------------------------------------------------------------
# Continued arg zeta along the census rectangle
# ---------------------------------------------------------------------------

def walk_arg_generic(tracker: ArgTracker, evaluate, point_at,
                     u0: float, u1: float, step: float) -> None:
    """March u from u0 to u1 unwrapping arg evaluate(point_at(u)).

    Halves the step whenever a move would change the unwrapped argument
    by >= pi/2; raises BranchJump if refinement stalls (a zero of the
    evaluated function sits on the path).
    """
    if u0 == u1:
        return
    direction = 1.0 if u1 > u0 else -1.0
    u = u0
    h = step
    while direction * (u1 - u) > 1e-15:
        h = min(h, abs(u1 - u))
        s = point_at(u + direction * h)
        arg = cmath.phase(evaluate(s))
        try:
            tracker.step(s, arg, limit=0.5 * math.pi)
        except BranchJump:
            if h < 1e-11:
                raise BranchJump(
                    f"arg path stalled at {s!r}; a zero sits on the path"
                ) from None
            h *= 0.5
            continue
        u += direction * h
        h = min(step, h * 2.0)


def arg_rectangle(evaluate, t: float) -> float:
    """arg of evaluate at 1/2 + it, continued along 2 -> 2 + it -> 1/2 + it."""
    if t < 0:
        raise ArgumentDomain("arg_rectangle defined for t >= 0")
    tracker = ArgTracker()
    tracker.step(complex(2.0, 0.0), cmath.phase(evaluate(complex(2.0, 0.0))))
    walk_arg_generic(tracker, evaluate, lambda y: complex(2.0, y), 0.0, t, 1.0)
    walk_arg_generic(tracker, evaluate, lambda x: complex(x, t), 2.0, 0.5, 0.25)
    return tracker.accumulated_arg


def arg_zeta_rectangle(t: float) -> float:
    """arg zeta(1/2 + it) continued along the census rectangle."""
    return arg_rectangle(zeta, t)


_S_ANCHOR_T = 2.0
_s_anchor_cache: list = []


def s_of_t(t: float) -> float:
    """S(t) = (1/pi) arg zeta(1/2 + it), normalized so S(2) = 0."""
    if not _s_anchor_cache:
        _s_anchor_cache.append(arg_zeta_rectangle(_S_ANCHOR_T))
    return (arg_zeta_rectangle(t) - _s_anchor_cache[0]) / math.pi


# ---------------------------------------------------------------------------
# von Mangoldt table
# ---------------------------------------------------------------------------

_MANGOLDT_CEILING = 50_000_000


@dataclass(frozen=True)
class PrimeTable:
    """Immutable Lambda(n) table: log p at prime powers n = p^k, 0 elsewhere."""

    limit: int
    mangoldt: dict

    def psi(self) -> float:
        """Chebyshev psi(limit) = sum of all table entries."""
        return math.fsum(self.mangoldt.values())


def von_mangoldt_table(limit: int) -> PrimeTable:
    """Sieve Lambda(n) exactly for 2 <= n <= limit."""
    if limit < 2:
        raise ArgumentDomain("limit must be >= 2")
    if limit > _MANGOLDT_CEILING:
        raise LimitTooLarge(f"limit {limit} above ceiling {_MANGOLDT_CEILING}")
    table = {}
    for p in primes_upto(limit):
        p = int(p)
        logp = math.log(p)
        q = p
        while q <= limit:
            table[q] = logp
            q *= p
    return PrimeTable(limit=limit, mangoldt=table)


def primes_upto(limit: int) -> np.ndarray:
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p:: p] = False
    return np.flatnonzero(sieve)
