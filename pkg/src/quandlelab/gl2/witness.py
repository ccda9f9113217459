"""Conjugators inside a prescribed class: ``X in cls`` with ``X^-1 a X = target``.

The search space is the linear space ``{X : a X = X target}``.  On it the
class trace is a linear condition and the class determinant a quadratic
one, so after the trace is imposed at most one quadratic equation remains.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

import numpy as np

from .classes import ClassLabel, DiagPair, Jordan, Scalar, classify, in_class, same_class
from .matrix import DEFAULT_TOL, Mat2, _to_complex, SingularMatrixError, conj_op, residual, solve_quadratic


class Status(str, Enum):
    WITNESS = "Witness"
    NO_WITNESS = "NoWitness"
    REFUTED = "Refuted"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class WitnessReport:
    status: Status
    matrices: list[Mat2] = field(default_factory=list)
    residual: float = 0.0
    refutation: str = ""
    solver_values: dict[str, complex] = field(default_factory=dict)
    points: list[Mat2] = field(default_factory=list)

    def __post_init__(self):
        if self.status is Status.NO_WITNESS and not self.refutation:
            raise ValueError("NoWitness needs a refutation tag")

    @property
    def ok(self) -> bool:
        return self.status is Status.WITNESS

    @property
    def length(self) -> int:
        return len(self.matrices)

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "matrices": [m.to_json() for m in self.matrices],
            "residual": float(self.residual),
            "refutation": self.refutation,
            "solver_values": {k: [complex(v).real, complex(v).imag] for k, v in self.solver_values.items()},
        }


class ClassMismatchError(ValueError):
    pass


# -- linear algebra ------------------------------------------------------

@dataclass
class ConjugatorSpace:
    dim: int
    basis: list[Mat2]


def _sylvester_matrix(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # row-major vec: vec(aX) = (a kron I) vec X, vec(Xb) = (I kron b^T) vec X
    eye = np.eye(2)
    return np.kron(a, eye) - np.kron(eye, b.T)


def _rref(rows: np.ndarray, eps: float = 1e-12) -> np.ndarray:
    m = rows.astype(complex).copy()
    r = 0
    for col in range(m.shape[1]):
        if r == m.shape[0]:
            break
        piv = r + int(np.argmax(np.abs(m[r:, col])))
        if abs(m[piv, col]) <= eps:
            continue
        m[[r, piv]] = m[[piv, r]]
        m[r] /= m[r, col]
        for i in range(m.shape[0]):
            if i != r:
                m[i] -= m[i, col] * m[r]
        r += 1
    m[np.abs(m) < eps] = 0
    return m


def conjugator_space(a: Mat2, b: Mat2, tol: float = DEFAULT_TOL) -> ConjugatorSpace:
    """Basis of ``{X : a X = X b}`` from the SVD null space, in reduced row form."""
    m = _sylvester_matrix(a.to_complex().to_numpy(), b.to_complex().to_numpy())
    _, s, vh = np.linalg.svd(m)
    cutoff = tol * max(1.0, s[0])
    rank = int(np.sum(s > cutoff))
    null = vh[rank:].conj()
    if null.shape[0] == 0:
        return ConjugatorSpace(0, [])
    basis = _rref(null)
    return ConjugatorSpace(len(basis), [Mat2(*(complex(v) for v in row)) for row in basis])


def to_gaussian(z, max_den: int = 10 ** 6):
    """Exact Gaussian rational equal to ``z``, or None."""
    from sympy import QQ, QQ_I

    z = complex(z)
    parts = []
    for x in (z.real, z.imag):
        f = Fraction(x).limit_denominator(max_den)
        if float(f) != x:
            return None
        parts.append(QQ(f.numerator, f.denominator))
    return QQ_I(*parts)


def exact_matrix(m: Mat2) -> Optional[Mat2]:
    ents = [to_gaussian(v) for v in m.to_complex().entries()]
    if any(e is None for e in ents):
        return None
    return Mat2(*ents)


def conjugator_space_exact(a: Mat2, b: Mat2) -> ConjugatorSpace:
    """Exact version of :func:`conjugator_space` for Gaussian-rational input."""
    from sympy import QQ_I
    from sympy.polys.matrices import DomainMatrix

    ea, eb = exact_matrix(a), exact_matrix(b)
    if ea is None or eb is None:
        raise ValueError("inputs are not Gaussian rational")
    A, B = ea.rows(), eb.rows()
    zero = QQ_I.zero
    rows = []
    for i in range(2):
        for j in range(2):
            row = [zero] * 4
            for k in range(2):
                row[2 * k + j] += A[i][k]
                row[2 * i + k] -= B[k][j]
            rows.append(row)
    ns = DomainMatrix(rows, (4, 4), QQ_I).nullspace()
    if ns.shape[0] == 0:
        return ConjugatorSpace(0, [])
    red, _ = ns.rref()
    basis = [Mat2(*r) for r in red.to_list() if any(r)]
    return ConjugatorSpace(len(basis), basis)


# -- constraint solving --------------------------------------------------

@dataclass
class _Solve:
    candidates: list[tuple[Mat2, dict[str, Any]]]
    tag: str = ""


def _is_zero(z, eps: float) -> bool:
    return not z if eps == 0 else abs(z) <= eps


def _roots(q2, q1, q0, eps: float) -> list:
    if not _is_zero(q2, eps):
        rs = solve_quadratic(complex(q2), complex(q1), complex(q0))
        return sorted(rs, key=lambda z: (-round(z.real, 12), -round(z.imag, 12)))
    if not _is_zero(q1, eps):
        return [-q0 / q1]
    return []


def _fmt_num(z) -> str:
    z = _to_complex(z)
    if abs(z.imag) < 1e-12:
        return f"{z.real:.6g}"
    return f"{z.real:.6g}{z.imag:+.6g}i"


def _constrain(basis: list[Mat2], T, Dt, eps: float) -> _Solve:
    """Impose ``tr X = T`` and ``det X = Dt`` on ``X`` in ``span(basis)``.

    With ``eps == 0`` the arithmetic is exact and only the consistency
    verdict (tag or not) is meaningful.
    """
    k = len(basis)
    if k == 0:
        return _Solve([], "no conjugator exists")
    if k > 2:
        raise ValueError(f"conjugator space of dimension {k} needs a scalar shortcut")
    taus = [B.trace() for B in basis]
    if k == 1:
        B = basis[0]
        tau, delta = taus[0], B.det()
        if not _is_zero(tau, eps):
            s = T / tau
            if _is_zero(delta * s * s - Dt, eps * max(1.0, abs(Dt)) if eps else 0):
                return _Solve([(B.scale(s), {"s": s})])
            return _Solve([], f"determinant forced to {_fmt_num(delta * s * s)}")
        if not _is_zero(T, eps):
            return _Solve([], "trace must be zero")
        if _is_zero(delta, eps):
            return _Solve([], "all solutions singular")
        if eps == 0:
            return _Solve([(B, {})])
        r = cmath.sqrt(complex(Dt / delta))
        return _Solve([(B.scale(r), {"s": r}), (B.scale(-r), {"s": -r})])

    B1, B2 = basis
    if all(_is_zero(t, eps) for t in taus):
        if not _is_zero(T, eps):
            return _Solve([], "trace must be zero")
        # det(s B1 + t B2) = al s^2 + be s t + ga t^2, a binary quadratic form
        al, ga = B1.det(), B2.det()
        be = (B1 + B2).det() - al - ga
        if all(_is_zero(v, eps) for v in (al, be, ga)):
            return _Solve([], "all solutions singular")
        if eps == 0:
            return _Solve([(B1, {})])
        cands = [(B1 + B2.scale(t), {"s": 1, "t": t}) for t in _roots(ga, be, al - Dt, eps)]
        if not _is_zero(ga, eps):
            r = cmath.sqrt(complex(Dt / ga))
            cands += [(B2.scale(r), {"s": 0, "t": r}), (B2.scale(-r), {"s": 0, "t": -r})]
        return _Solve(cands)

    # pivot on a nonzero trace coefficient: largest one numerically, first one exactly
    if eps == 0:
        i = next(j for j in range(2) if taus[j])
    else:
        i = max(range(2), key=lambda j: (abs(taus[j]), -j))
    j = 1 - i
    Bi, Bj = basis[i], basis[j]
    P = Bi.scale(T / taus[i])
    Dir = Bj - Bi.scale(taus[j] / taus[i])
    q0 = P.det()
    q2 = Dir.det()
    q1 = (P + Dir).det() - q0 - q2
    scale = eps * max(1.0, abs(Dt), abs(q0)) if eps else 0
    if _is_zero(q2, scale) and _is_zero(q1, scale):
        if _is_zero(q0 - Dt, scale):
            return _Solve([(P, {"t": 0}), (P + Dir, {"t": 1})])
        if _is_zero(q0, scale):
            return _Solve([], "all solutions singular")
        return _Solve([], f"determinant forced to {_fmt_num(q0)}")
    if eps == 0:
        return _Solve([(P, {})])
    return _Solve([(P + Dir.scale(t), {"t": t}) for t in _roots(q2, q1, q0 - Dt, scale)])


def _verify(a: Mat2, target: Mat2, X: Mat2, cls: ClassLabel, tol: float) -> Optional[float]:
    try:
        got = conj_op(a, X, 1, tol)
    except SingularMatrixError:
        return None
    if not in_class(X, cls, max(tol, 1e-9)):
        return None
    r = residual(got, target)
    return r if r <= tol else None


def _eigen_route(a: Mat2, target: Mat2, cls: ClassLabel, tol: float) -> Optional[WitnessReport]:
    """Eigenvector parametrization when exactly one side is diagonal."""
    T, Dt = cls.trace, cls.det
    if a.is_diagonal(1e-14) and not target.is_diagonal(1e-14):
        M, mu, Tw, Dw, invert = target, (a.a, a.d), T / Dt, 1 / Dt, True
    elif target.is_diagonal(1e-14) and not a.is_diagonal(1e-14):
        M, mu, Tw, Dw, invert = a, (target.a, target.d), T, Dt, False
    else:
        return None
    mu1, mu2 = mu
    if abs(mu1 - mu2) <= 1e-12 * max(1.0, abs(mu1)):
        return None
    eps = 1e-12 * max(1.0, M.norm())
    cands = []
    if abs(M.c) > eps:
        c, d = M.c, M.d
        k2 = (mu1 - d) * (mu1 - mu2) / c ** 2
        k1 = -Tw * (mu1 - mu2) / c
        for u in _roots(k2, k1, Dw, 1e-12 * max(1.0, abs(Dw))):
            v = Tw - u * (mu1 - d) / c
            cands.append((Mat2(u * (mu1 - d) / c, v * (mu2 - d) / c, u, v), u, v))
    elif abs(M.b) > eps:
        b, a0 = M.b, M.a
        k2 = (mu2 - a0) * (mu2 - mu1) / b ** 2
        k1 = -Tw * (mu2 - mu1) / b
        for v in _roots(k2, k1, Dw, 1e-12 * max(1.0, abs(Dw))):
            u = Tw - v * (mu2 - a0) / b
            cands.append((Mat2(u, v, u * (mu1 - a0) / b, v * (mu2 - a0) / b), u, v))
    for W, u, v in cands:
        try:
            X = W.inverse(1e-14) if invert else W
        except SingularMatrixError:
            continue
        r = _verify(a, target, X, cls, tol)
        if r is not None:
            return WitnessReport(Status.WITNESS, [X], r, solver_values={"u": u, "v": v})
    return None


def _exact_recheck(a: Mat2, target: Mat2, cls: ClassLabel) -> Optional[str]:
    """Refutation tag from exact arithmetic, '' if solvable, None if not applicable."""
    ea, et = exact_matrix(a), exact_matrix(target)
    if ea is None or et is None:
        return None
    T, Dt = to_gaussian(cls.trace), to_gaussian(cls.det)
    if T is None or Dt is None:
        return None
    space = conjugator_space_exact(ea, et)
    if space.dim > 2:
        return None
    return _constrain(space.basis, T, Dt, 0).tag


def witness_in_class(a: Mat2, target: Mat2, cls: ClassLabel, tol: float = DEFAULT_TOL) -> WitnessReport:
    """Find ``X`` in ``cls`` with ``conj_op(a, X) == target``.

    Returns NoWitness with the violated necessary condition when the
    constraints are inconsistent.  For Gaussian-rational input that verdict
    is re-derived exactly; a disagreement gives Inconclusive.
    """
    a, target = a.to_complex(), target.to_complex()
    ca, ct = classify(a, tol), classify(target, tol)
    if not same_class(ca, ct, max(tol, 1e-8)):
        raise ClassMismatchError(f"{a} is in {ca} but {target} is in {ct}")
    if isinstance(ca, Scalar):
        X = cls.base_point()
        return WitnessReport(Status.WITNESS, [X], residual(conj_op(a, X, 1, tol), target))

    if isinstance(cls, DiagPair):
        rep = _eigen_route(a, target, cls, tol)
        if rep is not None:
            return rep

    space = conjugator_space(a, target, min(tol, 1e-10))
    if space.dim > 2:
        raise ValueError(f"unexpected conjugator space dimension {space.dim}")
    sol = _constrain(space.basis, cls.trace, cls.det, tol)
    if sol.tag:
        exact = _exact_recheck(a, target, cls)
        if exact == "":
            return WitnessReport(Status.INCONCLUSIVE, refutation=f"float solver: {sol.tag}; exact solver finds solutions")
        return WitnessReport(Status.NO_WITNESS, refutation=exact or sol.tag)
    for X, vals in sol.candidates:
        r = _verify(a, target, X, cls, tol)
        if r is not None:
            return WitnessReport(Status.WITNESS, [X], r, solver_values=vals)
    if sol.candidates and isinstance(cls, Jordan) and all(X.is_scalar(1e-6) for X, _ in sol.candidates):
        return WitnessReport(Status.NO_WITNESS, refutation="all solutions scalar")
    return WitnessReport(Status.INCONCLUSIVE, refutation="candidates failed verification")


# -- paths from the base point -------------------------------------------

def _jordan_family(a: Mat2, lam: complex, tol: float) -> Optional[tuple[Mat2, dict]]:
    """``X`` in ``M_lam`` with ``X^-1 [[lam,0],[lam,lam]] X = a``, needs b != 0.

    Works on ``a / lam`` in ``M_1`` with ``x = sqrt(c)``, ``y = +-i sqrt(b)``,
    ``w = 2 - x``, ``z = (2x - c - 1) / y``, then scales back.
    """
    A1 = a.scale(1 / lam)
    if abs(A1.b) <= 1e-12:
        return None
    x = cmath.sqrt(A1.c)
    best = None
    for sgn in (1, -1):
        y = sgn * 1j * cmath.sqrt(A1.b)
        err = abs(1 - x * y - A1.a)
        if best is None or err < best[0]:
            best = (err, y)
    y = best[1]
    z = (2 * x - A1.c - 1) / y
    w = 2 - x
    X = Mat2(x, y, z, w).scale(lam)
    return X, {"x": x, "y": y, "z": z, "w": w}


def _intermediates(cls: ClassLabel) -> list[Mat2]:
    base = cls.base_point()
    out = []
    if isinstance(cls, DiagPair):
        l1, l2 = cls.l1, cls.l2
        out.append(Mat2.diag(l2, l1))
        out.append(conj_op(base, Mat2(l1, 1, 0, l2)))
        out.append(conj_op(base, Mat2(l1, 0, 1, l2)))
    elif isinstance(cls, Jordan):
        lam = cls.lam
        out.append(Mat2(lam, 0, lam, lam))
    rng = np.random.default_rng(0)
    from .classes import sample_member

    out += [sample_member(cls, rng) for _ in range(6)]
    return out


def two_step_path(cls: ClassLabel, a: Mat2, tol: float = DEFAULT_TOL) -> WitnessReport:
    """Conjugators ``X`` (and ``Y``) in ``cls`` with ``base*X = a`` or ``base*X*Y = a``.

    A single step is tried first, so the returned length is minimal
    whenever the single-step solver is decisive.
    """
    if isinstance(cls, Scalar):
        raise ValueError("scalar classes have one element")
    a = a.to_complex()
    if not in_class(a, cls, max(tol, 1e-8)):
        raise ClassMismatchError(f"{a} is not in {cls}")
    base = cls.base_point()
    one = witness_in_class(base, a, cls, tol)
    if one.ok:
        one.points = [base, a]
        return one
    refuted = one.refutation
    for M in _intermediates(cls):
        first = witness_in_class(base, M, cls, tol)
        if not first.ok:
            continue
        second = None
        if isinstance(cls, Jordan) and abs(M.c) > 0 and abs(M.b) == 0:
            fam = _jordan_family(a, cls.lam, tol)
            if fam is not None:
                Y, vals = fam
                r = _verify(M, a, Y, cls, tol)
                if r is not None:
                    second = WitnessReport(Status.WITNESS, [Y], r, solver_values=vals)
        if second is None:
            second = witness_in_class(M, a, cls, tol)
        if not second.ok:
            continue
        X, Y = first.matrices[0], second.matrices[0]
        r = residual(conj_op(conj_op(base, X, 1, tol), Y, 1, tol), a)
        if r <= tol:
            vals = {**{f"X.{k}": v for k, v in first.solver_values.items()},
                    **{f"Y.{k}": v for k, v in second.solver_values.items()}}
            return WitnessReport(Status.WITNESS, [X, Y], r, refutation=refuted, solver_values=vals, points=[base, M, a])
    return WitnessReport(Status.INCONCLUSIVE, refutation=f"no two-step path found; one step: {refuted or one.status.value}")
