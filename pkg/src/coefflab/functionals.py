"""Symmetric Toeplitz and Hankel coefficient determinants.

For a normalized coefficient window ``(a1=1, a2, ..., am)`` the two families
are, with 1-based matrix indices,

    T(q, n): q x q symmetric Toeplitz matrix, entry (i, j) = a_{n+|i-j|}
    H(q, n): q x q Hankel matrix,             entry (i, j) = a_{n+i+j-2}

Seven low-order determinants additionally have explicit polynomial forms in
a2..a5.  Keeping both routes alive gives every caller a built-in cross-check:

    T(2,2) = a2^2 - a3^2
    T(2,3) = a3^2 - a4^2
    T(3,1) = 1 - 2 a2^2 + 2 a2^2 a3 - a3^2
    T(3,2) = (a2 - a4)(a2^2 - 2 a3^2 + a2 a4)
    T(3,3) = (a3 - a5)(a3^2 - 2 a4^2 + a3 a5)
    H(2,2) = a2 a4 - a3^2
    H(2,3) = a3 a5 - a4^2
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable

import numpy as np


class WindowTooShort(ValueError):
    """Window has fewer coefficients than the requested determinant needs."""


class UnsupportedId(KeyError):
    """Determinant id outside the closed-form table."""


@dataclass(frozen=True)
class CoefficientWindow:
    """Leading Taylor coefficients ``a1..am`` of a normalized function.

    Normalization means ``a1 == 1`` exactly; construction enforces it.
    """

    a: tuple[complex, ...]

    def __post_init__(self) -> None:
        coeffs = tuple(complex(v) for v in self.a)
        if not coeffs:
            raise ValueError("a window needs at least a1")
        if coeffs[0] != 1:
            raise ValueError(f"window must be normalized with a1 = 1, got a1 = {coeffs[0]}")
        object.__setattr__(self, "a", coeffs)

    @property
    def m(self) -> int:
        return len(self.a)

    def coeff(self, k: int) -> complex:
        """1-based accessor: coeff(1) is a1."""
        return self.a[k - 1]


_DET_ID_RE = re.compile(r"^([TH])(\d+),(\d+)$")


@dataclass(frozen=True)
class DeterminantId:
    """Names one determinant: kind 'T' (Toeplitz) or 'H' (Hankel), size q, offset n."""

    kind: str
    q: int
    n: int

    def __post_init__(self) -> None:
        if self.kind not in ("T", "H"):
            raise ValueError(f"kind must be 'T' or 'H', got {self.kind!r}")
        if self.q < 1 or self.n < 1:
            raise ValueError(f"q and n must be >= 1, got q={self.q}, n={self.n}")

    @property
    def min_window(self) -> int:
        """Smallest window length m able to fill the matrix."""
        if self.kind == "T":
            return self.n + self.q - 1
        return self.n + 2 * (self.q - 1)

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.kind, self.q, self.n)

    def __str__(self) -> str:
        return f"{self.kind}{self.q},{self.n}"

    @classmethod
    def parse(cls, text: str) -> "DeterminantId":
        m = _DET_ID_RE.match(text.strip())
        if not m:
            raise ValueError(f"bad determinant id {text!r}, expected forms like T2,2 or H2,3")
        return cls(m.group(1), int(m.group(2)), int(m.group(3)))


# Explicit polynomial identities for the seven supported determinants.
# Arguments are a2..a5; a1 = 1 is baked into the T(3,1) constant term.
_CLOSED_FORMS: dict[tuple[str, int, int], Callable[..., complex]] = {
    ("T", 2, 2): lambda a2, a3, a4, a5: a2 * a2 - a3 * a3,
    ("T", 2, 3): lambda a2, a3, a4, a5: a3 * a3 - a4 * a4,
    ("T", 3, 1): lambda a2, a3, a4, a5: 1.0 - 2.0 * a2 * a2 + 2.0 * a2 * a2 * a3 - a3 * a3,
    ("T", 3, 2): lambda a2, a3, a4, a5: (a2 - a4) * (a2 * a2 - 2.0 * a3 * a3 + a2 * a4),
    ("T", 3, 3): lambda a2, a3, a4, a5: (a3 - a5) * (a3 * a3 - 2.0 * a4 * a4 + a3 * a5),
    ("H", 2, 2): lambda a2, a3, a4, a5: a2 * a4 - a3 * a3,
    ("H", 2, 3): lambda a2, a3, a4, a5: a3 * a5 - a4 * a4,
}

SUPPORTED_CLOSED_FORM_IDS: tuple[DeterminantId, ...] = tuple(
    DeterminantId(kind, q, n) for (kind, q, n) in sorted(_CLOSED_FORMS)
)


def _require_window(w: CoefficientWindow, needed: int, what: str) -> None:
    if w.m < needed:
        raise WindowTooShort(f"{what} needs a window of length >= {needed}, got {w.m}")


def _det_cofactor(m: list[list[complex]], q: int) -> complex:
    if q == 1:
        return m[0][0]
    if q == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    # q == 3, first-row expansion
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def _entries(w: CoefficientWindow, det: DeterminantId) -> list[list[complex]]:
    if det.kind == "T":
        return [
            [w.coeff(det.n + abs(i - j)) for j in range(det.q)] for i in range(det.q)
        ]
    return [[w.coeff(det.n + i + j) for j in range(det.q)] for i in range(det.q)]


def toeplitz_matrix(w: CoefficientWindow, q: int, n: int) -> np.ndarray:
    det = DeterminantId("T", q, n)
    _require_window(w, det.min_window, str(det))
    return np.array(_entries(w, det), dtype=complex)


def hankel_matrix(w: CoefficientWindow, q: int, n: int) -> np.ndarray:
    det = DeterminantId("H", q, n)
    _require_window(w, det.min_window, str(det))
    return np.array(_entries(w, det), dtype=complex)


def det_value(w: CoefficientWindow, det: DeterminantId) -> complex:
    """Determinant by direct evaluation.

    Cofactor expansion for q <= 3 keeps small cases exact and dependency-free;
    q >= 4 goes through LU with partial pivoting (numpy).
    """
    _require_window(w, det.min_window, str(det))
    if det.q <= 3:
        return _det_cofactor(_entries(w, det), det.q)
    return complex(np.linalg.det(np.array(_entries(w, det), dtype=complex)))


def toeplitz_det(w: CoefficientWindow, q: int, n: int) -> complex:
    return det_value(w, DeterminantId("T", q, n))


def hankel_det(w: CoefficientWindow, q: int, n: int) -> complex:
    return det_value(w, DeterminantId("H", q, n))


def closed_form_function(det: DeterminantId) -> Callable[..., complex]:
    """The polynomial identity for a supported id, as callable(a2, a3, a4, a5)."""
    fn = _CLOSED_FORMS.get(det.key)
    if fn is None:
        raise UnsupportedId(f"no closed form for {det}")
    return fn


def closed_form(w: CoefficientWindow, det: DeterminantId) -> complex:
    """Evaluate the polynomial identity for one of the seven supported ids."""
    fn = closed_form_function(det)
    _require_window(w, det.min_window, str(det))
    padded = w.a + (0j,) * (5 - w.m) if w.m < 5 else w.a
    return fn(padded[1], padded[2], padded[3], padded[4])
