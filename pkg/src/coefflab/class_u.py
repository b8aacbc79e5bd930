"""Parameter region, coefficient map, catalog, and membership evidence for
the function class defined by the defect inequality |(z/f)^2 f'(z) - 1| < 1
on the unit disc.

Every member with second coefficient a2 admits a representation

    z / f(z) = 1 - a2 z - z w(z),

where w is analytic with w(0) = 0 and |w'| <= 1.  Writing
w(z) = c1 z + c2 z^2 + c3 z^3 + ... and inverting the series gives the
coefficient map used throughout:

    a3 = a2^2 + c1
    a4 = c2 + 2 a2 c1 + a2^3
    a5 = c3 + 2 a2 c2 + c1^2 + 3 a2^2 c1 + a2^4

The admissible leading triple (c1, c2, c3) is constrained by the necessary
conditions

    |c1| <= 1
    |c2| <= (1 - |c1|^2) / 2
    |c3| <= (1 - |c1|^2 - 4 |c2|^2 / (1 + |c1|)) / 3

which carve out the search region used elsewhere.  These conditions are
necessary, not sufficient, so the region is a relaxation of the true class:
suprema computed over it are upper evidence, never membership proofs.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable

from .functionals import CoefficientWindow
from .series import TruncatedSeries, series_reciprocal

#: Feasibility inequalities are checked with this additive slack.
FEASIBILITY_TOL = 1e-12

#: The two coefficient routes (polynomial map vs series inversion) must agree this well.
MAP_AGREEMENT_TOL = 1e-10

#: Radius cap for the second coefficient.
A2_RADIUS = 2.0

#: Relative step used for central finite differences in the defect check.
FD_STEP_SCALE = 1e-6


class UnknownName(KeyError):
    """Name not present in the function catalog."""


class EvaluationFailure(ArithmeticError):
    """An evaluator returned a non-finite value on the sampling grid."""


@dataclass(frozen=True)
class SchwarzParams:
    """Leading coefficients (c1, c2, c3) of the bounded-derivative map w."""

    c1: complex
    c2: complex
    c3: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "c1", complex(self.c1))
        object.__setattr__(self, "c2", complex(self.c2))
        object.__setattr__(self, "c3", complex(self.c3))


@dataclass(frozen=True)
class UParamPoint:
    """A point (a2, c1, c2, c3) of the parameter region."""

    a2: complex
    schwarz: SchwarzParams

    def __post_init__(self) -> None:
        a2 = complex(self.a2)
        if abs(a2) > A2_RADIUS + FEASIBILITY_TOL:
            raise ValueError(f"|a2| = {abs(a2):.17g} exceeds the radius {A2_RADIUS}")
        object.__setattr__(self, "a2", a2)


@dataclass(frozen=True)
class FeasibilityCheck:
    """Outcome of the three-inequality region test.

    ``margins`` holds (bound - |value|) per inequality, so a negative entry
    pinpoints the violated constraint.
    """

    feasible: bool
    margins: tuple[float, float, float]


def c2_limit_abs(c1_abs: float) -> float:
    """Radius available to c2 once |c1| is fixed (clamped at zero)."""
    return max(0.0, 0.5 * (1.0 - c1_abs * c1_abs))


def c3_limit_abs(c1_abs: float, c2_abs: float) -> float:
    """Radius available to c3 once |c1| and |c2| are fixed (clamped at zero)."""
    raw = (1.0 - c1_abs * c1_abs - 4.0 * c2_abs * c2_abs / (1.0 + c1_abs)) / 3.0
    return max(0.0, raw)


def schwarz_feasible(p: SchwarzParams) -> FeasibilityCheck:
    """Check the three region inequalities with additive slack FEASIBILITY_TOL.

    Margins are computed from the raw bound expressions, without clamping, so
    an infeasible c1 shows up as a negative first margin rather than a
    distorted later one.
    """
    c1a, c2a, c3a = abs(p.c1), abs(p.c2), abs(p.c3)
    m1 = 1.0 - c1a
    m2 = 0.5 * (1.0 - c1a * c1a) - c2a
    m3 = (1.0 - c1a * c1a - 4.0 * c2a * c2a / (1.0 + c1a)) / 3.0 - c3a
    margins = (m1, m2, m3)
    return FeasibilityCheck(all(m >= -FEASIBILITY_TOL for m in margins), margins)


def _scale_to(c: complex, radius: float) -> complex:
    # same slack as schwarz_feasible, so projection output is a fixed point
    # even when rescaling lands an ulp above the bound
    mag = abs(c)
    if mag <= radius + FEASIBILITY_TOL:
        return c
    if radius == 0.0:
        return 0j
    return c * (radius / mag)


def project_feasible(p: SchwarzParams) -> SchwarzParams:
    """Radially shrink (c1, c2, c3), in that order, onto the region.

    Phases are preserved; each later bound is computed from the already
    repaired earlier entries, so the output always passes schwarz_feasible.
    Feasible input comes back unchanged.
    """
    c1 = _scale_to(p.c1, 1.0)
    c2 = _scale_to(p.c2, c2_limit_abs(abs(c1)))
    c3 = _scale_to(p.c3, c3_limit_abs(abs(c1), abs(c2)))
    return SchwarzParams(c1, c2, c3)


def coefficient_quintet(
    a2: complex, c1: complex, c2: complex, c3: complex
) -> tuple[complex, complex, complex]:
    """The polynomial coefficient map (a3, a4, a5).

    Kept as the single source of these expressions: the search hot loop and
    u_coefficients both call it, so their arithmetic is identical.
    """
    a22 = a2 * a2
    a3 = a22 + c1
    a4 = c2 + 2.0 * a2 * c1 + a22 * a2
    a5 = c3 + 2.0 * a2 * c2 + c1 * c1 + 3.0 * a22 * c1 + a22 * a22
    return a3, a4, a5


def _series_coefficients(pt: UParamPoint, m: int) -> tuple[complex, ...]:
    """Coefficients a1..am via series inversion of z/f.

    z/f is the explicit quartic 1 - a2 z - c1 z^2 - c2 z^3 - c3 z^4, padded
    with zeros to order m-1, whose reciprocal is f/z = a1 + a2 z + ...
    """
    p = pt.schwarz
    lead = [1.0, -pt.a2, -p.c1, -p.c2, -p.c3]
    coeffs = (lead + [0.0] * max(0, m - len(lead)))[:m]
    recip = series_reciprocal(TruncatedSeries(tuple(coeffs)))
    return recip.coeffs


def u_coefficients(pt: UParamPoint, m: int = 5) -> CoefficientWindow:
    """Window (a1..am) for a parameter point.

    For m <= 5 the polynomial map and the series-inversion route are both
    evaluated and must agree to MAP_AGREEMENT_TOL; the polynomial values are
    returned.  For larger m only the series route applies.
    """
    if m < 1:
        raise ValueError(f"window length must be >= 1, got {m}")
    via_series = _series_coefficients(pt, m)
    p = pt.schwarz
    a3, a4, a5 = coefficient_quintet(pt.a2, p.c1, p.c2, p.c3)
    direct = (1.0, pt.a2, a3, a4, a5)[:m]
    for k, (x, y) in enumerate(zip(direct, via_series), start=1):
        assert abs(x - y) <= MAP_AGREEMENT_TOL, (
            f"coefficient routes disagree at a{k}: {x} vs {y}"
        )
    if m <= 5:
        return CoefficientWindow(direct)
    return CoefficientWindow(via_series)


# ---------------------------------------------------------------------------
# Catalog of reference functions
# ---------------------------------------------------------------------------

_SQRT2 = math.sqrt(2.0)
_ALPHA = 1.0 / _SQRT2


def _f1(z: complex) -> complex:
    return z / (1.0 - 1j * z) ** 2


def _f2(z: complex) -> complex:
    return z / (1.0 - z * z)


def _f3(z: complex) -> complex:
    return z / (1.0 - 1j * z * z)


def _koebe(z: complex) -> complex:
    return z / (1.0 - z) ** 2


def _omega_slow_growth(z: complex) -> complex:
    # Antiderivative of (alpha + t) / (1 + alpha t) from 0 to z, alpha = 1/sqrt(2).
    # The principal log is safe: Re(1 + alpha z) > 0 whenever |z| < sqrt(2).
    return _SQRT2 * z - cmath.log(1.0 + _ALPHA * z)


def _f4(z: complex) -> complex:
    return z / (1.0 - z * _omega_slow_growth(z))


@dataclass(frozen=True)
class CatalogEntry:
    """A named reference function with its window and (when known) parameters."""

    name: str
    evaluator: Callable[[complex], complex]
    window: CoefficientWindow
    param: UParamPoint | None
    description: str = ""


def _entry(name, evaluator, window, a2, c, description) -> CatalogEntry:
    return CatalogEntry(
        name=name,
        evaluator=evaluator,
        window=CoefficientWindow(tuple(window)),
        param=UParamPoint(a2, SchwarzParams(*c)),
        description=description,
    )


# a5 of the slow-growth entry follows from its own expansion:
# c = (1/sqrt2, 1/4, -1/(6 sqrt2)) so a5 = c3 + c1^2 = 1/2 - 1/(6 sqrt2).
_F4_C3 = -1.0 / (6.0 * _SQRT2)
_F4_A5 = 0.5 + _F4_C3

_CATALOG: dict[str, CatalogEntry] = {
    e.name: e
    for e in (
        _entry("identity", lambda z: z, (1, 0, 0, 0, 0), 0, (0, 0, 0), "f(z) = z"),
        _entry("f1", _f1, (1, 2j, -3, -4j, 5), 2j, (1, 0, 0), "z / (1 - iz)^2"),
        _entry("f2", _f2, (1, 0, 1, 0, 1), 0, (1, 0, 0), "z / (1 - z^2)"),
        _entry("f3", _f3, (1, 0, 1j, 0, -1), 0, (1j, 0, 0), "z / (1 - i z^2)"),
        _entry(
            "f4",
            _f4,
            (1, 0, _ALPHA, 0.25, _F4_A5),
            0,
            (_ALPHA, 0.25, _F4_C3),
            "z/f = 1 - z * (sqrt2 z - log(1 + z/sqrt2)); extremal third "
            "region inequality holds with equality",
        ),
        _entry("koebe", _koebe, (1, 2, 3, 4, 5), 2, (-1, 0, 0), "z / (1 - z)^2"),
    )
}

CATALOG_NAMES: tuple[str, ...] = tuple(_CATALOG)


def catalog(name: str) -> CatalogEntry:
    """Look up a reference function by name; see CATALOG_NAMES."""
    try:
        return _CATALOG[name]
    except KeyError:
        raise UnknownName(f"unknown catalog name {name!r}; known: {CATALOG_NAMES}") from None


def _non_member_specimen(z: complex) -> complex:
    # Deliberate non-member: z + 2 z^3 has z/f zeros at z = +-i/sqrt2, so the
    # defect blows up near radius 0.707 and the checker must flag it.
    return z + 2.0 * z * z * z


def named_evaluator(name: str) -> Callable[[complex], complex]:
    """Catalog evaluators plus the documented non-member specimen 'z+2z3'."""
    if name == "z+2z3":
        return _non_member_specimen
    return catalog(name).evaluator


@dataclass(frozen=True)
class DefectReport:
    """Largest sampled defect |(z/f)^2 f'(z) - 1| and where it occurred."""

    max_defect: float
    argmax: complex


def membership_max_defect(
    evaluator: Callable[[complex], complex],
    radii: Iterable[float],
    samples_per_circle: int = 256,
) -> DefectReport:
    """Sample the defect on circles of the given radii.

    f' comes from a central difference with step FD_STEP_SCALE * r along the
    real direction (direction is irrelevant for an analytic f).  A value
    below 1 everywhere is numerical membership evidence only; a value above 1
    at any sample is a concrete non-membership witness.

    Raises EvaluationFailure if the evaluator produces a non-finite value on
    the grid, which signals a pole inside the sampled disc.
    """
    radii = tuple(radii)
    if not radii:
        raise ValueError("need at least one radius")
    if any(not (0.0 < r < 1.0) for r in radii):
        raise ValueError(f"radii must lie strictly inside (0, 1), got {radii}")
    if samples_per_circle < 8:
        raise ValueError(f"need at least 8 samples per circle, got {samples_per_circle}")

    best = -1.0
    where = 0j
    for r in radii:
        h = FD_STEP_SCALE * r
        for k in range(samples_per_circle):
            theta = 2.0 * math.pi * k / samples_per_circle
            z = complex(r * math.cos(theta), r * math.sin(theta))
            try:
                fz = evaluator(z)
                fp = evaluator(z + h)
                fm = evaluator(z - h)
            except (ZeroDivisionError, OverflowError, ValueError) as exc:
                # a pole (or log branch point) sitting on the grid
                raise EvaluationFailure(f"evaluator failed near z = {z}: {exc}") from exc
            if not all(_finite(v) for v in (fz, fp, fm)):
                raise EvaluationFailure(f"non-finite evaluation near z = {z}")
            deriv = (fp - fm) / (2.0 * h)
            try:
                ratio = z / fz
            except ZeroDivisionError as exc:
                raise EvaluationFailure(f"f vanishes at the sample z = {z}") from exc
            defect = abs(ratio * ratio * deriv - 1.0)
            if not math.isfinite(defect):
                raise EvaluationFailure(f"non-finite defect at z = {z}")
            if defect > best:
                best = defect
                where = z
    return DefectReport(max_defect=best, argmax=where)


def _finite(v: complex) -> bool:
    return math.isfinite(v.real) and math.isfinite(v.imag)
