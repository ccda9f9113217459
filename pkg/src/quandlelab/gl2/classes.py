"""Conjugacy classes of GL(2, C): two distinct eigenvalues, a Jordan block,
or a scalar."""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Union

import numpy as np

from .matrix import DEFAULT_TOL, Mat2, SingularMatrixError, conj_op, eigenvalues, random_conjugator


def _key(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


@dataclass(frozen=True, eq=False)
class DiagPair:
    """Class of ``D(l1, l2)`` with ``l1 != l2``.

    The class does not depend on the order of the eigenvalues, and equality
    ignores it.  The stored order picks the base point ``D(l1, l2)``.
    """

    l1: complex
    l2: complex

    def __post_init__(self):
        object.__setattr__(self, "l1", complex(self.l1))
        object.__setattr__(self, "l2", complex(self.l2))
        if self.l1 == self.l2:
            raise ValueError("DiagPair needs distinct eigenvalues")
        if self.l1 == 0 or self.l2 == 0:
            raise ValueError("eigenvalues of an invertible matrix are nonzero")

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DiagPair) and {self.l1, self.l2} == {other.l1, other.l2}

    def __hash__(self) -> int:
        return hash(frozenset((self.l1, self.l2)))

    def normalized(self) -> "DiagPair":
        lo, hi = sorted((self.l1, self.l2), key=_key)
        return DiagPair(lo, hi)

    def swapped(self) -> "DiagPair":
        return DiagPair(self.l2, self.l1)

    @property
    def trace(self) -> complex:
        return self.l1 + self.l2

    @property
    def det(self) -> complex:
        return self.l1 * self.l2

    def base_point(self) -> Mat2:
        return Mat2.diag(self.l1, self.l2)

    def scaled(self, k) -> "DiagPair":
        return DiagPair(k * self.l1, k * self.l2)

    def __str__(self) -> str:
        return f"M[{_z(self.l1)},{_z(self.l2)}]"


@dataclass(frozen=True)
class Jordan:
    """Class of ``[[lam, 1], [0, lam]]``."""

    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if self.lam == 0:
            raise ValueError("eigenvalue of an invertible matrix is nonzero")

    @property
    def trace(self) -> complex:
        return 2 * self.lam

    @property
    def det(self) -> complex:
        return self.lam * self.lam

    def base_point(self) -> Mat2:
        return Mat2(self.lam, 1 + 0j, 0j, self.lam)

    def scaled(self, k) -> "Jordan":
        return Jordan(k * self.lam)

    def __str__(self) -> str:
        return f"M[{_z(self.lam)}]"


@dataclass(frozen=True)
class Scalar:
    lam: complex

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if self.lam == 0:
            raise ValueError("eigenvalue of an invertible matrix is nonzero")

    @property
    def trace(self) -> complex:
        return 2 * self.lam

    @property
    def det(self) -> complex:
        return self.lam * self.lam

    def base_point(self) -> Mat2:
        return Mat2.diag(self.lam, self.lam)

    def scaled(self, k) -> "Scalar":
        return Scalar(k * self.lam)

    def __str__(self) -> str:
        return f"Scalar[{_z(self.lam)}]"


ClassLabel = Union[DiagPair, Jordan, Scalar]


def _z(z: complex) -> str:
    if z.imag == 0:
        return f"{z.real:g}"
    if z.real == 0:
        return f"{z.imag:g}i"
    return f"{z.real:g}{z.imag:+g}i"


def classify(a: Mat2, tol: float = DEFAULT_TOL) -> ClassLabel:
    """Conjugacy class from the characteristic polynomial."""
    a = a.to_complex()
    scale = max(1.0, a.norm())
    if abs(a.det()) <= tol * scale * scale:
        raise SingularMatrixError("classify needs an invertible matrix")
    if a.is_scalar(tol):
        return Scalar((a.a + a.d) / 2)
    tr, det = a.trace(), a.det()
    disc = tr * tr - 4 * det
    if abs(disc) <= tol * scale * scale:
        return Jordan(tr / 2)
    m1, m2 = eigenvalues(a)
    return DiagPair(m1, m2).normalized()


def same_class(x: ClassLabel, y: ClassLabel, tol: float = DEFAULT_TOL) -> bool:
    if type(x) is not type(y):
        return False
    s = max(1.0, abs(x.trace), abs(x.det))
    return abs(x.trace - y.trace) <= tol * s and abs(x.det - y.det) <= tol * s


def in_class(a: Mat2, cls: ClassLabel, tol: float = DEFAULT_TOL) -> bool:
    """Membership by trace, determinant and (non-)scalarity."""
    a = a.to_complex()
    s = max(1.0, a.norm(), abs(cls.trace))
    ok = abs(a.trace() - cls.trace) <= tol * s and abs(a.det() - cls.det) <= tol * s * s
    if not ok:
        return False
    if isinstance(cls, Scalar):
        return a.is_scalar(tol)
    return not a.is_scalar(tol)


def sample_member(cls: ClassLabel, rng: np.random.Generator) -> Mat2:
    """``P^-1 base P`` for a random well-conditioned ``P``."""
    return conj_op(cls.base_point(), random_conjugator(rng), 1)


def sample_members(cls: ClassLabel, count: int, seed: int) -> list[Mat2]:
    """Sample ``i`` uses its own generator seeded with ``seed + i``."""
    return [sample_member(cls, np.random.default_rng(seed + i)) for i in range(count)]


def root_of_unity(k: int, n: int) -> complex:
    return cmath.exp(2j * cmath.pi * k / n)
