"""Numeric checks of the constructive statements about conjugacy-class
quandles in GL(2, C) and PGL(2, C)."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .classes import ClassLabel, DiagPair, Jordan, Scalar, in_class, root_of_unity, sample_member, sample_members
from .matrix import DEFAULT_TOL, Mat2, _to_complex, conj_op, nth_root_matrix, pgl_residual, random_conjugator, residual, scale_map
from .witness import (
    ConjugatorSpace,
    Status,
    WitnessReport,
    _constrain,
    conjugator_space,
    conjugator_space_exact,
    exact_matrix,
    to_gaussian,
    witness_in_class,
)

DEFAULT_SEED = 0xC0FFEE


def _close(x, y, tol: float) -> bool:
    return abs(complex(x) - complex(y)) <= tol * max(1.0, abs(complex(x)), abs(complex(y)))


# -- single-step obstructions ---------------------------------------------

@dataclass
class ExpectationReport:
    """A solver outcome together with what the statement predicts."""

    expected_witness: bool
    report: WitnessReport

    @property
    def ok(self) -> bool:
        if self.expected_witness:
            return self.report.status is Status.WITNESS
        return self.report.status is Status.NO_WITNESS


def swap_check(l1, l2, tol: float = DEFAULT_TOL) -> ExpectationReport:
    """Is there ``X`` in ``M[l1,l2]`` with ``D(l2,l1) * X = D(l1,l2)``?

    Predicted: exactly when ``l1 == -l2``.
    """
    cls = DiagPair(l1, l2)
    rep = witness_in_class(Mat2.diag(l2, l1), Mat2.diag(l1, l2), cls, tol)
    return ExpectationReport(_close(l1, -l2, 1e-12), rep)


@dataclass
class SampledWitnessReport:
    samples: int
    failures: list[int]
    max_residual: float

    @property
    def ok(self) -> bool:
        return not self.failures


def diagonalizing_witnesses(l1, l2, samples: int = 100, seed: int = DEFAULT_SEED, tol: float = DEFAULT_TOL) -> SampledWitnessReport:
    """For sampled ``A`` in ``M[l1,l2]``: conjugators in the class joining ``A``
    with both diagonal points, in both directions."""
    cls = DiagPair(l1, l2)
    d1, d2 = Mat2.diag(l1, l2), Mat2.diag(l2, l1)
    failures, worst = [], 0.0
    for i, A in enumerate(sample_members(cls, samples, seed)):
        reps = [witness_in_class(A, d1, cls, tol), witness_in_class(A, d2, cls, tol),
                witness_in_class(d1, A, cls, tol), witness_in_class(d2, A, cls, tol)]
        if not all(r.ok for r in reps):
            failures.append(i)
        else:
            worst = max(worst, *(r.residual for r in reps))
    return SampledWitnessReport(samples, failures, worst)


# -- root-of-unity subquandles -------------------------------------------

@dataclass
class Counterexample:
    A: Mat2
    B: Mat2
    alpha: complex
    got: complex
    expected: complex

    @property
    def deviation(self) -> float:
        return abs(self.got - self.alpha)


@dataclass
class SubquandleReport:
    n: int
    predicted: bool
    samples: int
    agreements: int
    max_residual: float
    counterexample: Optional[Counterexample] = None
    trivial: bool = False

    @property
    def ok(self) -> bool:
        if self.trivial:
            return True
        if self.agreements != self.samples:
            return False
        return self.predicted or (self.counterexample is not None and self.counterexample.deviation > 0)


def subquandle_order_test(cls: ClassLabel, n: int, samples: int = 200, seed: int = DEFAULT_SEED,
                          tol: float = 1e-8, alpha: complex = 1.0) -> SubquandleReport:
    """Is ``cls`` an ``n``-subquandle, i.e. ``A *_n B == A`` throughout?

    Predicted iff ``(l1/l2)^n == 1``; every sample is compared against the
    prediction.  When the prediction fails, the upper-triangular pair
    ``A = [[l1, alpha], [0, l2]]``, ``B = D(l1, l2)`` shows the corner entry
    turning into ``alpha (l2/l1)^n``.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if isinstance(cls, Scalar):
        return SubquandleReport(n, True, 0, 0, 0.0, trivial=True)
    if not isinstance(cls, DiagPair):
        raise ValueError("subquandle_order_test expects a DiagPair or Scalar class")
    l1, l2 = cls.l1, cls.l2
    predicted = abs((l1 / l2) ** n - 1) <= tol
    agree, worst = 0, 0.0
    for i in range(samples):
        rng = np.random.default_rng(seed + i)
        A, B = sample_member(cls, rng), sample_member(cls, rng)
        r = residual(conj_op(A, B, n), A)
        if predicted:
            worst = max(worst, r)
        if (r <= tol) == predicted:
            agree += 1
    cex = None
    if not predicted:
        A = Mat2(l1, complex(alpha), 0j, l2)
        B = Mat2.diag(l1, l2)
        got = conj_op(A, B, n).b
        cex = Counterexample(A, B, complex(alpha), got, alpha * (l2 / l1) ** n)
    return SubquandleReport(n, predicted, samples, agree, worst, cex)


@dataclass
class PGLCountReport:
    n: int
    count: int
    per_class: list[tuple[complex, int, int]]  # (omega, passed samples, samples)
    control_ratio: complex
    control_failures: int
    distinct_projective_classes: int

    @property
    def ok(self) -> bool:
        return self.count == self.n and self.control_failures > 0


def count_trivial_components_pgl(n: int, samples: int = 50, seed: int = DEFAULT_SEED, tol: float = 1e-8,
                                 control: complex = 2.0) -> PGLCountReport:
    """Count ``omega = exp(2 pi i k / n)`` whose class ``[D(1, omega)]`` satisfies
    ``A *_n B == A`` projectively on every sample.

    ``k = 0`` is the identity class.  A ratio that is not an ``n``-th root of
    unity is run as a control and must fail.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    per_class = []
    count = 0
    for k in range(n):
        w = root_of_unity(k, n)
        cls: ClassLabel = Scalar(1) if k == 0 else DiagPair(1, w)
        passed = 0
        for i in range(samples):
            rng = np.random.default_rng(seed + 1000 * k + i)
            A, B = sample_member(cls, rng), sample_member(cls, rng)
            if pgl_residual(conj_op(A, B, n), A) <= tol:
                passed += 1
        per_class.append((w, passed, samples))
        if passed == samples:
            count += 1
    ctrl = DiagPair(1, control)
    fails = 0
    for i in range(samples):
        rng = np.random.default_rng(seed + 10 ** 6 + i)
        A, B = sample_member(ctrl, rng), sample_member(ctrl, rng)
        if pgl_residual(conj_op(A, B, n), A) > 1e-3:
            fails += 1
    # D(1,w) and D(1,1/w) agree up to scaling and reordering
    distinct = len({frozenset((k % n, (-k) % n)) for k in range(n)})
    return PGLCountReport(n, count, per_class, complex(control), fails, distinct)


# -- Jordan classes have infinite type ------------------------------------

@dataclass
class JordanProbe:
    result: Mat2
    expected: Mat2
    residual: float
    differs_from_base: bool
    tol: float

    @property
    def ok(self) -> bool:
        return self.residual <= self.tol and self.differs_from_base


def jordan_type_probe(lam: complex, n: int, m: int, tol: float = 1e-10) -> JordanProbe:
    """``[[lam,1],[0,lam]] *_n P`` applied ``m`` times with ``P = [[lam,0],[1,lam]]``.

    Compared against ``[[lam + t, 1], [-t^2, lam - t]]`` with ``t = n m / lam``.
    """
    lam = complex(lam)
    if lam == 0:
        raise ValueError("lam must be nonzero")
    if m < 1:
        raise ValueError(f"m must be >= 1, got {m}")
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    base = Mat2(lam, 1 + 0j, 0j, lam)
    P = Mat2(lam, 0j, 1 + 0j, lam)
    X = base
    for _ in range(m):
        X = conj_op(X, P, n)
    t = n * m / lam
    want = Mat2(lam + t, 1 + 0j, -t * t, lam - t)
    return JordanProbe(X, want, residual(X, want), residual(X, base) > tol, tol)


# -- R_3 inside conjugacy classes -----------------------------------------

R3_TABLE = ((0, 2, 1), (2, 1, 0), (1, 0, 2))  # i*j = 2j - i mod 3


def r3_triple(lam: complex, b: complex = math.sqrt(3) / 2, c: Optional[complex] = None) -> list[Mat2]:
    """``D(lam,-lam)`` and ``lam [[-1/2, +-b], [+-c, 1/2]]`` with ``b c = 3/4``."""
    lam = complex(lam)
    c = 0.75 / b if c is None else c
    X = Mat2(-0.5, b, c, 0.5).scale(lam)
    Y = Mat2(-0.5, -b, -c, 0.5).scale(lam)
    return [Mat2.diag(lam, -lam), X, Y]


def _r3_residual(elems: list[Mat2]) -> float:
    worst = 0.0
    for i in range(3):
        for j in range(3):
            worst = max(worst, residual(conj_op(elems[i], elems[j]), elems[R3_TABLE[i][j]]))
    return worst


def _nil(v, eps: float = 1e-12) -> bool:
    return abs(_to_complex(v)) <= eps


def _exact_or_float(values):
    ex = [to_gaussian(v) for v in values]
    return ex if all(e is not None for e in ex) else None


def _linear_inconsistent(l1: complex, l2: complex, tol: float) -> tuple[bool, bool]:
    """The two linear consequences ``a l2 + d l1 = l2^2`` and ``a l2 + d l1 = l1^2``.

    Returns (inconsistent, exact).
    """
    ex = _exact_or_float([l1, l2])
    if ex is not None:
        from sympy import QQ_I
        from sympy.polys.matrices import DomainMatrix

        e1, e2 = ex
        coef = DomainMatrix([[e2, e1], [e2, e1]], (2, 2), QQ_I)
        aug = DomainMatrix([[e2, e1, e2 * e2], [e2, e1, e1 * e1]], (2, 3), QQ_I)
        return coef.rank() < aug.rank(), True
    coef = np.array([[l2, l1], [l2, l1]])
    aug = np.array([[l2, l1, l2 * l2], [l2, l1, l1 * l1]])
    s = max(1.0, abs(l1) ** 2, abs(l2) ** 2)
    return (np.linalg.matrix_rank(coef, tol * s) < np.linalg.matrix_rank(aug, tol * s)), False


def _triangular_branch_refuted(l1: complex, l2: complex, tol: float) -> bool:
    """``b = 0`` or ``c = 0`` forces ``l1 = 2 l2`` together with
    ``l1^2 + l2^2 = l1 l2``; both at once would need ``5 l2^2 = 2 l2^2``."""
    ex = _exact_or_float([l1, l2])
    if ex is not None:
        e1, e2 = ex
        return bool(e1 - 2 * e2) or bool(e1 * e1 + e2 * e2 - e1 * e2)
    s = max(1.0, abs(l1), abs(l2)) ** 2
    return abs(l1 - 2 * l2) > tol * s or abs(l1 * l1 + l2 * l2 - l1 * l2) > tol * s


def _commutant(m: Mat2, tol: float) -> tuple[ConjugatorSpace, bool]:
    em = exact_matrix(m)
    if em is not None:
        return conjugator_space_exact(em, em), True
    return conjugator_space(m, m, tol), False


def r3_probe(cls: ClassLabel, tol: float = 1e-10) -> WitnessReport:
    """Embed R_3 in ``cls`` or refute it.

    ``M[lam,-lam]`` gets an explicit triple checked on all nine products.
    Otherwise three distinct elements ``D, X, X*D`` with ``(X*D)*D = X``
    would need ``X`` to commute with ``D^2``; the forced equations are
    solved exactly for Gaussian-rational eigenvalues.
    """
    if isinstance(cls, Scalar):
        raise ValueError("scalar classes have one element")
    if isinstance(cls, DiagPair):
        l1, l2 = cls.l1, cls.l2
        if _close(l1, -l2, 1e-12):
            elems = r3_triple(l1)
            r = _r3_residual(elems)
            members = all(in_class(e, cls, 1e-9) for e in elems)
            status = Status.WITNESS if r <= tol and members else Status.INCONCLUSIVE
            b, c = elems[1].b / l1, elems[1].c / l1
            return WitnessReport(status, elems, r, solver_values={"a": -0.5, "d": 0.5, "b": b, "c": c, "bc": b * c})
        inconsistent, exact = _linear_inconsistent(l1, l2, tol)
        tri = _triangular_branch_refuted(l1, l2, tol)
        space, exact_c = _commutant(Mat2.diag(l1, l2) ** 2, tol)
        diag_only = all(_nil(B.b) and _nil(B.c) for B in space.basis)
        if inconsistent and tri and diag_only:
            return WitnessReport(Status.REFUTED, refutation="forces λ₁² = λ₂²",
                                 solver_values={"exact": 1 if exact and exact_c else 0})
        return WitnessReport(Status.INCONCLUSIVE, refutation="refutation conditions not all met")
    # Jordan: X commuting with J^2 has c = 0 and a = d, hence commutes with J
    J = cls.base_point()
    space, exact = _commutant(J ** 2, tol)
    forced = all(_nil(B.c) and _nil(B.a - B.d) for B in space.basis)
    if forced and space.dim == 2:
        return WitnessReport(Status.REFUTED, refutation="forces c = 0 and a = d",
                             solver_values={"exact": 1 if exact else 0})
    return WitnessReport(Status.INCONCLUSIVE, refutation="commutant of J^2 is larger than expected")


# -- non-commuting return pairs ------------------------------------------

SCALE_CANDIDATES = (2, 3, 0.5, 5, 7, 1 / 3, 11, 13, 0.25, 1j, 2j, 1 + 1j)


def is_admissible(l1: complex, l2: complex, tol: float = 1e-9) -> bool:
    """Hypotheses under which the explicit construction applies directly."""
    bad = (l1 - l2, l2 - 1, l2 + 1, l1 + l2, l1 - l2 * l2, l1 - 1)
    return all(abs(v) > tol * max(1.0, abs(l1), abs(l2)) ** 2 for v in bad)


def return_pair(l1: complex, l2: complex) -> tuple[Mat2, Mat2, dict]:
    """``A, B`` in ``M[l1,l2]`` with ``A B = D(l1, l2)`` and ``A B != B A``."""
    l1, l2 = complex(l1), complex(l2)
    e = (l1 + l2) * l2 / (1 + l2)
    h = (l1 + l2) / (1 + l2)
    fg = -l2 * (-(l1 + l2) ** 2 + l1 * (1 + l2) ** 2) / (1 + l2) ** 2
    f, g = 1.0, fg
    B = Mat2(e, f, g, h)
    A = Mat2(e, -f * l2, -g / l2, h)
    return A, B, {"e": e, "h": h, "fg": fg, "f": f, "g": g}


def noncommuting_return_pair(l1, l2, tol: float = 1e-8, comm_tol: float = 1e-6) -> WitnessReport:
    """``A, B`` in ``M[l1,l2]`` with ``D * A * B == D`` and ``A B != B A``.

    Outside the admissible range the pair is built in ``M[k l1, k l2]`` for
    the first admissible ``k`` and divided by ``k``.
    """
    l1, l2 = complex(l1), complex(l2)
    if l1 == 0 or l2 == 0:
        raise ValueError("eigenvalues must be nonzero")
    if _close(l1, l2, 1e-12) or _close(l1, -l2, 1e-12):
        raise ValueError("needs l1 != +-l2")
    cls = DiagPair(l1, l2)
    Dm = Mat2.diag(l1, l2)
    ks = [1] if is_admissible(l1, l2) else []
    ks += [k for k in SCALE_CANDIDATES if is_admissible(k * l1, k * l2)]
    for k in ks:
        A, B, vals = return_pair(k * l1, k * l2)
        A, B = scale_map(A, 1 / k), scale_map(B, 1 / k)
        r = residual(conj_op(conj_op(Dm, A), B), Dm)
        comm = (A @ B - B @ A).norm()
        if r <= tol and comm > comm_tol and in_class(A, cls, 1e-9) and in_class(B, cls, 1e-9):
            vals = {**vals, "k": k, "commutator": comm}
            return WitnessReport(Status.WITNESS, [A, B], r, solver_values=vals)
    return WitnessReport(Status.INCONCLUSIVE, refutation="no scale produced a verified pair")


# -- maximal trivial subquandles -----------------------------------------

@dataclass
class TrivialPairReport:
    pair_trivial: bool
    samples: int
    bad_samples: list[int] = field(default_factory=list)
    solutions: list[Mat2] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.pair_trivial and not self.bad_samples


def max_trivial_pair_check(l1, l2, samples: int = 50, seed: int = DEFAULT_SEED, tol: float = 1e-9) -> TrivialPairReport:
    """``{D(l1,l2), D(l2,l1)}`` is trivial, and no other class member commutes with ``D(l1,l2)``.

    The commutant of ``D`` is intersected with the class on randomly
    re-based copies of the commutant; every solution must be one of the
    two diagonal points.
    """
    l1, l2 = complex(l1), complex(l2)
    if _close(l1, l2, 1e-12):
        raise ValueError("needs l1 != l2")
    cls = DiagPair(l1, l2)
    d1, d2 = Mat2.diag(l1, l2), Mat2.diag(l2, l1)
    pair_trivial = residual(conj_op(d1, d2), d1) <= tol and residual(conj_op(d2, d1), d2) <= tol
    space = conjugator_space(d1, d1, tol)
    bad, sols = [], []
    for i in range(samples):
        rng = np.random.default_rng(seed + i)
        mix = rng.random((2, 2)) + 1j * rng.random((2, 2))
        if abs(np.linalg.det(mix)) < 0.1:
            mix = np.eye(2) + mix * 0.1
        basis = [space.basis[0].scale(mix[r, 0]) + space.basis[1].scale(mix[r, 1]) for r in range(2)]
        sol = _constrain(basis, cls.trace, cls.det, tol)
        found = [X for X, _ in sol.candidates if in_class(X, cls, 1e-8)]
        if i == 0:
            sols = found
        if len(found) != 2 or not all(min(residual(X, d1), residual(X, d2)) <= 1e-8 for X in found):
            bad.append(i)
        elif residual(found[0], found[1]) <= 1e-8:
            bad.append(i)
    return TrivialPairReport(pair_trivial, samples, bad, sols)


# -- class transport by n-th roots ---------------------------------------

@dataclass
class RootTransport:
    root_residual: float
    transport_residual: float


def class_root_transport(P: Mat2, A: Mat2, n: int) -> RootTransport:
    """``P^-1 A P == Q^-n A Q^n`` for ``Q = nth_root_matrix(P, n)``."""
    Q = nth_root_matrix(P, n)
    return RootTransport(residual(Q ** n, P), residual(conj_op(A, Q, n), conj_op(A, P, 1)))


def sample_transport(count: int = 100, n_max: int = 4, seed: int = DEFAULT_SEED) -> float:
    worst = 0.0
    for i in range(count):
        rng = np.random.default_rng(seed + i)
        P = random_conjugator(rng)
        A = random_conjugator(rng)
        for n in range(1, n_max + 1):
            rt = class_root_transport(P, A, n)
            worst = max(worst, rt.root_residual, rt.transport_residual)
    return worst
