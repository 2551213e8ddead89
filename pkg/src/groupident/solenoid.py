"""Desk-scale model of the solenoid character group and Gaussian fitting.

The character group of an a-adic solenoid is the discrete group of rationals
``m/(a_0 a_1 ... a_n)``.  All computations here happen on finite symmetric
windows of that group, held as exact ``Fraction`` points; the compact group
itself is never materialized.  Characters on a window are parameterized by a
compatible phase sequence, Gaussian characteristic functions by a phase plus
a quadratic decay rate, and endomorphisms by multiplication with admissible
rationals, for which all kernel conditions reduce to being nonzero.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import (DomainError, InvalidEndomorphismError, PreconditionError,
                     VanishingFactorError, WindowMarginError)
from .funceq import (DegreeReport, FunctionTable, ProductEquation,
                     character_defect, is_character, least_degree,
                     shifted_sum_degrees)

FIT_TOL = 1e-8
EQUATION_TOL = 1e-8


# -- the lattice window ------------------------------------------------------------


class RationalLattice:
    """Symmetric window ``{m/(a_0...a_n) : |m| <= radius}`` in exact rationals."""

    def __init__(self, base: Sequence[int], depth: int, radius: int) -> None:
        base = tuple(int(a) for a in base)
        if not base or any(a < 2 for a in base):
            raise DomainError(f"base entries must be >= 2, got {base}")
        if not 0 <= depth < len(base):
            raise DomainError(f"depth {depth} out of range for base {base}")
        if radius < 1:
            raise WindowMarginError("radius must be >= 1 (margin precondition)")
        self.base = base
        self.depth = int(depth)
        self.radius = int(radius)
        self.denominator = math.prod(base[: depth + 1])
        self.full_denominator = math.prod(base)

    def __repr__(self) -> str:
        return (f"RationalLattice(base={self.base}, depth={self.depth}, "
                f"radius={self.radius})")

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, RationalLattice)
                and (self.base, self.depth, self.radius)
                == (other.base, other.depth, other.radius))

    def __hash__(self) -> int:
        return hash((self.base, self.depth, self.radius))

    @cached_property
    def points(self) -> tuple[Fraction, ...]:
        D = self.denominator
        return tuple(Fraction(m, D) for m in range(-self.radius,
                                                   self.radius + 1))

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    def contains(self, p) -> bool:
        if not isinstance(p, Fraction):
            return False
        m = p * self.denominator
        return m.denominator == 1 and abs(m) <= self.radius

    def step(self) -> Fraction:
        """The finest generator ``1/(a_0...a_n)`` of the window."""
        return Fraction(1, self.denominator)


def make_lattice(base: Sequence[int], depth: int, radius: int) -> RationalLattice:
    return RationalLattice(base, depth, radius)


# -- characters and Gaussian tables ---------------------------------------------------


def _frac_mod1(r: Fraction) -> Fraction:
    return r - (r.numerator // r.denominator)


@dataclass(frozen=True)
class SolenoidCharModel:
    """A character times a Gaussian decay on a lattice window.

    ``phases[k]`` is the phase (a rational in ``[0, 1)``) of the character at
    the generator ``1/(a_0...a_k)``; coarser and finer phases are tied by
    ``phases[k] = a_{k+1} * phases[k+1] (mod 1)``, which is exactly the
    condition for the sequence to define one character of the whole dual.
    ``sigma >= 0`` is the quadratic decay rate.
    """

    base: tuple[int, ...]
    depth: int
    phases: tuple[Fraction, ...]
    sigma: float = 0.0

    def __post_init__(self) -> None:
        base = tuple(int(a) for a in self.base)
        phases = tuple(Fraction(r) for r in self.phases)
        if len(phases) != self.depth + 1:
            raise DomainError(
                f"need {self.depth + 1} phases, got {len(phases)}")
        if any(not 0 <= r < 1 for r in phases):
            raise DomainError("phases must lie in [0, 1)")
        for k in range(self.depth):
            if _frac_mod1(base[k + 1] * phases[k + 1]) != phases[k]:
                raise DomainError(
                    f"phase compatibility fails at level {k}: "
                    f"{base[k + 1]}*{phases[k + 1]} != {phases[k]} (mod 1)")
        if self.sigma < 0:
            raise DomainError("sigma must be nonnegative")
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "phases", phases)

    @classmethod
    def from_finest(cls, base: Sequence[int], depth: int, finest: Fraction,
                    sigma: float = 0.0) -> "SolenoidCharModel":
        """Build the compatible chain from the phase at the finest generator."""
        base = tuple(int(a) for a in base)
        rs = [_frac_mod1(Fraction(finest))]
        for k in range(depth, 0, -1):
            rs.append(_frac_mod1(base[k] * rs[-1]))
        return cls(base, depth, tuple(reversed(rs)), sigma)

    @property
    def finest_phase(self) -> Fraction:
        return self.phases[-1]


def character_gaussian_values(lattice: RationalLattice, phase: Fraction,
                              sigma: float) -> FunctionTable:
    """Table ``y -> exp(2 pi i m phase) * exp(-sigma y^2)`` for ``y = m/D``.

    The sign of ``sigma`` is free here; this is the building block for ratio
    tables, where a negative rate means the Gaussian sits on the other side.
    """
    phase = Fraction(phase)
    D = lattice.denominator
    vals = []
    for p in lattice.points:
        m = int(p * D)
        ang = 2.0 * math.pi * float(_frac_mod1(m * phase))
        vals.append(cmath.exp(1j * ang) * math.exp(-sigma * float(p) ** 2))
    return FunctionTable(lattice, lattice.points, np.array(vals))


def gaussian_table(lattice: RationalLattice,
                   model: SolenoidCharModel) -> FunctionTable:
    """Characteristic-function table of the Gaussian described by ``model``."""
    if model.base[: lattice.depth + 1] != lattice.base[: lattice.depth + 1] \
            or model.depth != lattice.depth:
        raise DomainError("model and lattice disagree on base or depth")
    return character_gaussian_values(lattice, model.finest_phase, model.sigma)


# -- coefficients -------------------------------------------------------------------


@dataclass(frozen=True)
class SolenoidEndo:
    """Multiplication by a nonzero admissible rational on the dual lattice."""

    lattice: RationalLattice
    ratio: Fraction

    def __post_init__(self) -> None:
        r = Fraction(self.ratio)
        if r == 0:
            raise InvalidEndomorphismError("ratio must be nonzero")
        # The image of the window generator must live in the dual at full depth.
        scaled = r * Fraction(1, self.lattice.denominator) \
            * self.lattice.full_denominator
        if scaled.denominator != 1:
            raise InvalidEndomorphismError(
                f"{r} maps the window outside depth {len(self.lattice.base) - 1}")
        object.__setattr__(self, "ratio", r)

    def apply(self, p: Fraction) -> Fraction:
        return self.ratio * p


def _coeff_value(b) -> Fraction:
    if isinstance(b, SolenoidEndo):
        return b.ratio
    return Fraction(b)


# -- nullspace of the power constraints ------------------------------------------------


def vandermonde_nullspace(bs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Generator of the nullspace of the rows ``(1,..), (b_j,..), ... (b_j^{n-2},..)``.

    For distinct ``b_j`` the nullspace is one-dimensional and spanned by the
    alternating products of coefficient differences.  The result is scaled to
    coprime integers with a negative leading entry, so ``(1, 2, 3, 4)`` maps
    to ``(-1, 3, -3, 1)``.
    """
    bs = [Fraction(b) for b in bs]
    n = len(bs)
    if n < 2 or len(set(bs)) != n:
        raise DomainError("need at least two pairwise distinct coefficients")
    cs = []
    for j in range(n):
        rest = [b for t, b in enumerate(bs) if t != j]
        prod = Fraction(1)
        for i in range(len(rest)):
            for k in range(i + 1, len(rest)):
                prod *= rest[k] - rest[i]
        cs.append((-1) ** j * prod)
    scale = math.lcm(*(c.denominator for c in cs))
    ints = [int(c * scale) for c in cs]
    g = math.gcd(*ints)
    ints = [c // g for c in ints]
    lead = next(c for c in ints if c != 0)
    if lead > 0:
        ints = [-c for c in ints]
    return tuple(Fraction(c) for c in ints)


# -- Gaussian-ratio fitting --------------------------------------------------------------


@dataclass(frozen=True)
class GaussianFitResult:
    sigma: float
    modulus_residual: float
    phase_is_character: bool
    phase_defect: float
    ok: bool

    def to_json_dict(self) -> dict:
        return {
            "sigma": self.sigma,
            "modulus_residual": self.modulus_residual,
            "phase_is_character": self.phase_is_character,
            "phase_defect": self.phase_defect,
            "ok": self.ok,
        }


def fit_gaussian_ratio(f: FunctionTable, tol: float = FIT_TOL) -> GaussianFitResult:
    """Factor a ratio table as character times ``exp(-sigma y^2)``.

    ``sigma`` is the least-squares slope of ``log|f|`` against ``-y^2``
    (positive means the second side carries the extra Gaussian, negative the
    first); the verdict fails when the modulus deviates from the fitted
    Gaussian by more than ``tol`` anywhere on the window, or when the phase
    part is not multiplicative.  Summation order is fixed, so the fit is
    bit-deterministic.
    """
    if len(f.points) < 7:
        raise WindowMarginError("gaussian fit needs at least 3 points per side")
    if not f.nonvanishing(0.0):
        raise VanishingFactorError("gaussian fit needs a nonvanishing table")
    pts = sorted(f.points)
    logs = [math.log(abs(f[p])) for p in pts]
    num = math.fsum(-float(p) ** 2 * lg for p, lg in zip(pts, logs))
    den = math.fsum(float(p) ** 4 for p in pts)
    sigma = num / den if den > 0 else 0.0
    residual = max(abs(abs(f[p]) - math.exp(-sigma * float(p) ** 2))
                   for p in pts)
    phase = f.phase_part()
    defect = character_defect(phase)
    phase_ok = is_character(phase, tol=max(tol, 1e-9))
    ok = residual <= tol and phase_ok
    return GaussianFitResult(float(sigma), float(residual), bool(phase_ok),
                             float(defect), bool(ok))


# -- the four-variable verifiers ------------------------------------------------------------


VERDICT_GAUSSIAN = "determined-up-to-gaussian"
VERDICT_NOT_GAUSSIAN = "not-gaussian-ratio"
VERDICT_MISMATCH = "mismatch"


@dataclass(frozen=True)
class GaussianIdentReport:
    form: str
    coefficients: tuple[Fraction, ...]
    window: str
    equation_defect: float
    degree_report: DegreeReport
    extra_degree: int | None
    fits: tuple[GaussianFitResult, ...]
    sigma_sums: tuple[float, ...] | None
    failures: tuple[str, ...]
    verdict: str

    def to_json_dict(self) -> dict:
        return {
            "form": self.form,
            "coefficients": [str(b) for b in self.coefficients],
            "verified_on_window": self.window,
            "equation_defect": self.equation_defect,
            "degrees": list(self.degree_report.degrees),
            "degree_bound": self.degree_report.bound,
            "sum_equation_defect": self.degree_report.equation_defect,
            "extra_degree": self.extra_degree,
            "fits": [fit.to_json_dict() for fit in self.fits],
            "sigma_sums": (None if self.sigma_sums is None
                           else list(self.sigma_sums)),
            "failures": list(self.failures),
            "verdict": self.verdict,
        }


def _ratio_tables(muhats, nuhats) -> list[FunctionTable]:
    if len(muhats) != len(nuhats):
        raise DomainError("need equally many tables on both sides")
    for t in (*muhats, *nuhats):
        if not t.nonvanishing(0.0):
            raise PreconditionError("all tables must be nonvanishing")
    fs = [nu.ratio(mu) for mu, nu in zip(muhats, nuhats)]
    for j, f in enumerate(fs):
        # ratios of characteristic functions are normalized and Hermitian
        if abs(f.value_at_zero() - 1.0) > 1e-6 or f.hermitian_defect() > 1e-6:
            raise PreconditionError(
                f"ratio table {j + 1} is not a characteristic-function ratio")
    return fs


def _check_pairwise(bs: Sequence[Fraction], count: int) -> None:
    for i in range(count):
        for j in range(i + 1, count):
            if bs[i] == bs[j]:
                raise PreconditionError(
                    f"coefficients {i + 1} and {j + 1} coincide; "
                    "a kernel condition fails")


def verify_gaussian_form_I(bs, muhats: Sequence[FunctionTable],
                           nuhats: Sequence[FunctionTable], *,
                           tol: float = EQUATION_TOL,
                           fit_tol: float = FIT_TOL) -> GaussianIdentReport:
    """Four variables, ``L_1 = xi_1+...+xi_4``: components are pinned down up
    to a Gaussian convolution when all pairwise coefficient differences are
    nonzero.

    The verifier checks the product equation of the ratio tables on the
    window, bounds the degree of each log-modulus by 2 through the additive
    shifted-sum equation, factors each ratio as character times Gaussian, and
    cross-validates the power sums of the fitted rates.
    """
    if len(bs) != 4:
        raise PreconditionError("form I takes four coefficients")
    vals = [_coeff_value(b) for b in bs]
    _check_pairwise(vals, 4)
    fs = _ratio_tables(muhats, nuhats)
    eq = ProductEquation(tuple((f, b) for f, b in zip(fs, vals)))
    eq_defect = eq.residual_defect()
    psis = [f.log_modulus() for f in fs]
    deg = shifted_sum_degrees(psis, vals, None, tol=max(tol, 1e-9))
    fits = tuple(fit_gaussian_ratio(f, fit_tol) for f in fs)
    sums = tuple(
        abs(math.fsum(fit.sigma * float(b) ** k
                      for fit, b in zip(fits, vals)))
        for k in range(3))
    failures = []
    if eq_defect > tol:
        failures.append(f"product equation defect {eq_defect:.3e}")
    for j, fit in enumerate(fits):
        if not fit.ok:
            failures.append(f"factor {j + 1} is not character*gaussian")
    if not deg.within_bound:
        failures.append("log-modulus degree bound violated")
    if any(s > 1e-8 for s in sums):
        failures.append("fitted rates violate the power-sum constraints")
    if eq_defect > tol:
        verdict = VERDICT_MISMATCH
    elif failures:
        verdict = VERDICT_NOT_GAUSSIAN
    else:
        verdict = VERDICT_GAUSSIAN
    return GaussianIdentReport("I", tuple(vals), repr(fs[0].domain),
                               float(eq_defect), deg, None, fits, sums,
                               tuple(failures), verdict)


def verify_gaussian_form_II(bs, muhats: Sequence[FunctionTable],
                            nuhats: Sequence[FunctionTable], *,
                            tol: float = EQUATION_TOL,
                            fit_tol: float = FIT_TOL) -> GaussianIdentReport:
    """Four variables, ``L_1 = xi_1+xi_2+xi_3``: the fourth ratio enters the
    equation composed with its coefficient alone, which must be injective."""
    if len(bs) != 4:
        raise PreconditionError("form II takes four coefficients")
    vals = [_coeff_value(b) for b in bs]
    _check_pairwise(vals, 3)
    if vals[3] == 0:
        raise PreconditionError("the fourth coefficient must be nonzero")
    fs = _ratio_tables(muhats, nuhats)
    lattice = fs[0].domain
    # Right-hand side 1/f4(b4 v), defined where b4 v stays in the table.
    rhs_pts, rhs_vals = [], []
    for v in lattice.points:
        arg = vals[3] * v
        if arg in fs[3]:
            rhs_pts.append(v)
            rhs_vals.append(1.0 / fs[3][arg])
    if not rhs_pts:
        raise WindowMarginError("fourth coefficient maps the window outside")
    rhs = FunctionTable(lattice, tuple(rhs_pts), np.array(rhs_vals))
    eq = ProductEquation(tuple((f, b) for f, b in zip(fs[:3], vals[:3])), rhs)
    eq_defect = eq.residual_defect()
    psis = [f.log_modulus() for f in fs]
    neg_psi4 = FunctionTable(
        lattice, rhs.points,
        np.array([-psis[3][vals[3] * v] for v in rhs.points]))
    deg = shifted_sum_degrees(psis[:3], vals[:3], neg_psi4,
                              tol=max(tol, 1e-9))
    extra_degree = least_degree(psis[3], 2, tol=max(tol, 1e-9))
    fits = tuple(fit_gaussian_ratio(f, fit_tol) for f in fs)
    failures = []
    if eq_defect > tol:
        failures.append(f"product equation defect {eq_defect:.3e}")
    for j, fit in enumerate(fits):
        if not fit.ok:
            failures.append(f"factor {j + 1} is not character*gaussian")
    if not deg.within_bound:
        failures.append("log-modulus degree bound violated")
    if extra_degree is None:
        failures.append("fourth log-modulus is not quadratic on the window")
    if eq_defect > tol:
        verdict = VERDICT_MISMATCH
    elif failures:
        verdict = VERDICT_NOT_GAUSSIAN
    else:
        verdict = VERDICT_GAUSSIAN
    return GaussianIdentReport("II", tuple(vals), repr(fs[0].domain),
                               float(eq_defect), deg, extra_degree, fits,
                               None, tuple(failures), verdict)


# -- synthetic instances for campaigns and round-trip tests -----------------------------


def form_I_phase_solution(bs: Sequence[Fraction], r1: Fraction,
                          r2: Fraction) -> tuple[Fraction, ...]:
    """Phases with ``sum r_j = 0`` and ``sum r_j b_j = 0`` exactly in the rationals."""
    b = [Fraction(x) for x in bs]
    r1, r2 = Fraction(r1), Fraction(r2)
    a = -(r1 + r2)
    c = -(b[0] * r1 + b[1] * r2)
    det = b[3] - b[2]
    if det == 0:
        raise DomainError("last two coefficients must differ")
    r3 = (b[3] * a - c) / det
    r4 = (c - b[2] * a) / det
    return (r1, r2, r3, r4)


def form_II_phase_solution(bs: Sequence[Fraction], r1: Fraction,
                           r2: Fraction) -> tuple[Fraction, ...]:
    """Phases with ``r_1+r_2+r_3 = 0`` and ``sum_{j<=3} r_j b_j + r_4 b_4 = 0``."""
    b = [Fraction(x) for x in bs]
    r1, r2 = Fraction(r1), Fraction(r2)
    r3 = -(r1 + r2)
    if b[3] == 0:
        raise DomainError("the fourth coefficient must be nonzero")
    r4 = -(b[0] * r1 + b[1] * r2 + b[2] * r3) / b[3]
    return (r1, r2, r3, r4)


def form_sigmas(bs: Sequence[Fraction], scale: float,
                form: str = "I") -> tuple[float, ...]:
    """Gaussian rates solving the modulus constraints for the given form."""
    b = [Fraction(x) for x in bs]
    if form == "I":
        null = vandermonde_nullspace(b)
        return tuple(scale * float(c) for c in null)
    null = vandermonde_nullspace(b[:3])
    sig123 = [scale * float(c) for c in null]
    s2 = sum(s * float(bj) ** 2 for s, bj in zip(sig123, b[:3]))
    sig4 = -s2 / float(b[3]) ** 2
    return (*sig123, sig4)


def synth_gaussian_instance(lattice: RationalLattice, bs, seed,
                            form: str = "I", *, sigma_scale: float = 0.1,
                            base_sigma: float = 0.25):
    """Seeded (muhats, nuhats, sigmas, phases) with an exactly valid ratio system."""
    vals = [_coeff_value(b) for b in bs]
    rng = np.random.default_rng(seed)
    D = lattice.denominator
    r1 = Fraction(int(rng.integers(0, D)), D)
    r2 = Fraction(int(rng.integers(0, D)), D)
    if form == "I":
        phases = form_I_phase_solution(vals, r1, r2)
    else:
        phases = form_II_phase_solution(vals, r1, r2)
    sigmas = form_sigmas(vals, sigma_scale, form)
    muhats, nuhats = [], []
    for j in range(4):
        t = Fraction(int(rng.integers(0, D)), D)
        mu = character_gaussian_values(lattice, t, base_sigma)
        ratio = character_gaussian_values(lattice, phases[j], sigmas[j])
        muhats.append(mu)
        nuhats.append(mu.times(ratio))
    return muhats, nuhats, sigmas, phases
