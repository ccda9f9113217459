"""2x2 complex matrices as plain value objects.

Entries are Python complex numbers.  The arithmetic only uses ``+ - * /``
so the same class also carries exact Gaussian rationals when needed.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Any

import numpy as np

DEFAULT_TOL = 1e-9


class SingularMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class Mat2:
    a: Any
    b: Any
    c: Any
    d: Any

    @classmethod
    def of(cls, rows) -> "Mat2":
        (a, b), (c, d) = rows
        return cls(complex(a), complex(b), complex(c), complex(d))

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1 + 0j, 0j, 0j, 1 + 0j)

    @classmethod
    def diag(cls, l1, l2) -> "Mat2":
        return cls(complex(l1), 0j, 0j, complex(l2))

    @classmethod
    def from_numpy(cls, m: np.ndarray) -> "Mat2":
        return cls(complex(m[0, 0]), complex(m[0, 1]), complex(m[1, 0]), complex(m[1, 1]))

    def to_numpy(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=complex)

    def entries(self) -> tuple:
        return (self.a, self.b, self.c, self.d)

    def rows(self) -> list[list]:
        return [[self.a, self.b], [self.c, self.d]]

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def __add__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    def __sub__(self, o: "Mat2") -> "Mat2":
        return Mat2(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a, -self.b, -self.c, -self.d)

    def scale(self, k) -> "Mat2":
        return Mat2(k * self.a, k * self.b, k * self.c, k * self.d)

    def __rmul__(self, k) -> "Mat2":
        return self.scale(k)

    def trace(self):
        return self.a + self.d

    def det(self):
        return self.a * self.d - self.b * self.c

    def norm(self) -> float:
        """Max-modulus entry."""
        return max(abs(complex(v)) for v in self.entries())

    def inverse(self, tol: float = DEFAULT_TOL) -> "Mat2":
        det = self.det()
        if abs(complex(det)) <= tol:
            raise SingularMatrixError(f"matrix is singular (|det| = {abs(complex(det)):.3g})")
        return Mat2(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __pow__(self, n: int) -> "Mat2":
        base = self if n >= 0 else self.inverse()
        out = Mat2(base.a ** 0, base.a * 0, base.a * 0, base.a ** 0)
        k = abs(n)
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def is_scalar(self, tol: float = DEFAULT_TOL) -> bool:
        s = max(1.0, self.norm())
        return abs(complex(self.b)) <= tol * s and abs(complex(self.c)) <= tol * s and abs(complex(self.a - self.d)) <= tol * s

    def is_diagonal(self, tol: float = DEFAULT_TOL) -> bool:
        s = max(1.0, self.norm())
        return abs(complex(self.b)) <= tol * s and abs(complex(self.c)) <= tol * s

    def to_complex(self) -> "Mat2":
        return Mat2(*(_to_complex(v) for v in self.entries()))

    def to_json(self) -> list[list[float]]:
        return [[_clean(complex(v).real), _clean(complex(v).imag)] for v in self.to_complex().entries()]

    def __repr__(self) -> str:
        return f"Mat2([[{_fmt(self.a)}, {_fmt(self.b)}], [{_fmt(self.c)}, {_fmt(self.d)}]])"


def _to_complex(v) -> complex:
    if isinstance(v, (int, float, complex)):
        return complex(v)
    if hasattr(v, "x") and hasattr(v, "y"):  # sympy Gaussian rational
        return complex(float(v.x), float(v.y))
    return complex(v)


def _clean(x: float) -> float:
    return 0.0 if x == 0 else float(x)


def _fmt(v) -> str:
    z = _to_complex(v) + 0j
    z = complex(z.real + 0.0, z.imag + 0.0)
    if z.imag == 0:
        return f"{z.real:g}"
    return f"{z.real:g}{z.imag:+g}j"


def D(l1, l2) -> Mat2:
    return Mat2.diag(l1, l2)


def residual(got: Mat2, want: Mat2) -> float:
    """``|got - want|_max / max(1, |want|_max)``."""
    return (got - want).norm() / max(1.0, want.norm())


def conj_op(a: Mat2, b: Mat2, n: int = 1, tol: float = DEFAULT_TOL) -> Mat2:
    """``b^-n a b^n``; negative n gives the dual operation."""
    bn = b ** abs(n) if n >= 0 else b.inverse(tol) ** abs(n)
    return bn.inverse(tol) @ a @ bn


def scale_map(a: Mat2, k) -> Mat2:
    if k == 0:
        raise ValueError("scale factor must be nonzero")
    return a.scale(k)


def pgl_normalize(a: Mat2) -> Mat2:
    """Representative of the projective class: the first entry of largest
    modulus becomes 1 (row-major tie break)."""
    ent = [complex(v) for v in a.to_complex().entries()]
    mods = [abs(v) for v in ent]
    top = max(mods)
    if top == 0:
        raise SingularMatrixError("zero matrix has no projective class")
    pivot = ent[mods.index(top)]
    return Mat2(*(v / pivot for v in ent))


def pgl_residual(got: Mat2, want: Mat2) -> float:
    """Distance between projective classes, robust to near ties in the pivot."""
    g, w = got.to_complex(), want.to_complex()
    ge, we = g.entries(), w.entries()
    i = max(range(4), key=lambda j: abs(we[j]))
    if abs(ge[i]) == 0:
        return math.inf
    return residual(g.scale(we[i] / ge[i]), w)


def sqrt_principal(z) -> complex:
    return cmath.sqrt(complex(z))


def eigenvalues(a: Mat2) -> tuple[complex, complex]:
    """Roots of ``x^2 - tr x + det`` with the cancellation-free formula."""
    tr, det = complex(a.trace()), complex(a.det())
    disc = cmath.sqrt(tr * tr - 4 * det)
    p, m = (tr + disc) / 2, (tr - disc) / 2
    mu1 = p if abs(p) >= abs(m) else m
    if mu1 == 0:
        return 0j, 0j
    return mu1, det / mu1


def solve_quadratic(q2: complex, q1: complex, q0: complex) -> list[complex]:
    """Roots of ``q2 t^2 + q1 t + q0`` with ``q2 != 0``, stable form."""
    disc = cmath.sqrt(q1 * q1 - 4 * q2 * q0)
    s = -q1 - disc if abs(-q1 - disc) >= abs(-q1 + disc) else -q1 + disc
    if s == 0:
        return [0j, 0j]
    r1 = s / (2 * q2)
    r2 = (2 * q0) / s
    return [r1, r2]


def nth_root_matrix(p: Mat2, n: int, tol: float = DEFAULT_TOL) -> Mat2:
    """A matrix ``q`` with ``q**n == p``, built from principal eigenvalue roots.

    Uses the divided-difference form ``f(p) = f(m2) I + f[m1, m2] (p - m2 I)``
    for ``f(z) = z^(1/n)``, exact for every 2x2 matrix including Jordan
    blocks, where ``f[m, m] = f'(m)``.
    """
    if n < 1:
        raise ValueError(f"root index must be >= 1, got {n}")
    p = p.to_complex()
    if abs(p.det()) <= tol:
        raise SingularMatrixError("cannot take a root of a singular matrix")
    if n == 1:
        return p
    m1, m2 = eigenvalues(p)
    r1 = complex(m1) ** (1 / n)
    r2 = complex(m2) ** (1 / n)
    if abs(m1 - m2) <= 1e-6 * max(abs(m1), abs(m2)):
        # keep both roots on the branch through r1 so f[m1, m2] ~ f'(m1)
        r2 = r1 * (m2 / m1) ** (1 / n)
    denom = sum(r1 ** (n - 1 - k) * r2 ** k for k in range(n))
    dd = 1 / denom
    ident = Mat2.identity()
    return ident.scale(r2) + (p - ident.scale(m2)).scale(dd)


def random_conjugator(rng: np.random.Generator, min_det: float = 0.1) -> Mat2:
    """Entries uniform in ``[0,1) + i[0,1)``, resampled until ``|det| >= min_det``."""
    while True:
        re = rng.random(4)
        im = rng.random(4)
        z = re + 1j * im
        m = Mat2(*(complex(v) for v in z))
        if abs(m.det()) >= min_det:
            return m
