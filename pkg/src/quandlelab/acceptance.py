"""The thirteen acceptance checks, runnable from tests and from the CLI.

Each check returns a :class:`CriterionResult`; ``details`` holds only
deterministic data so reports are byte-identical across runs.
"""
from __future__ import annotations

import cmath
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import analysis, core, words
from .catalog import catalog
from .gl2 import lemmas
from .gl2.classes import DiagPair, Jordan, sample_members
from .gl2.matrix import Mat2
from .gl2.witness import Status, two_step_path, witness_in_class

DEFAULT_SEED = 0xC0FFEE


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    details: dict = field(default_factory=dict)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}"

    def to_dict(self) -> dict:
        return {"criterion": self.number, "title": self.title, "passed": self.passed, "details": self.details}


def _small(limit: int):
    return [t for t in catalog() if t.size <= limit]


def latin_equivalence(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    cat = catalog()
    disagree = [t.name for t in cat if analysis.is_latin(t, "fast") != analysis.is_latin(t, "oracle")]
    mixed_rows = [t.name for t in cat if len(set(analysis.latin_rows(t))) > 1]
    odd = [n for n in range(1, 25, 2) if not analysis.is_latin(core.build(core.Dihedral(n)), "oracle")]
    even = [n for n in range(4, 25, 2) if analysis.is_latin(core.build(core.Dihedral(n)), "oracle")]
    elapsed = time.perf_counter() - start
    ok = len(cat) >= 50 and max(t.size for t in cat) <= 24 and not (disagree or mixed_rows or odd or even)
    return CriterionResult(1, "latin fast/oracle agreement", ok and elapsed < 5.0, {
        "quandles": len(cat), "disagreements": disagree, "mixed_rows": mixed_rows,
        "odd_dihedral_not_latin": odd, "even_dihedral_latin": even, "under_5s": elapsed < 5.0,
    }, elapsed)


def connectivity(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    small = _small(12)
    mismatches = []
    for t in small:
        fast, brute = analysis.connectivity_degree(t), analysis.connectivity_degree_bruteforce(t)
        if fast != brute:
            mismatches.append(t.name)
    odd = [n for n in range(1, 25, 2) if analysis.connectivity_degree(core.build(core.Dihedral(n))).degree != 1]
    even = [n for n in range(2, 25, 2) if analysis.connectivity_degree(core.build(core.Dihedral(n))).connected]
    trivial = [n for n in range(2, 13) if analysis.connectivity_degree(core.build(core.Trivial(n))).connected]
    ok = not (mismatches or odd or even or trivial)
    return CriterionResult(2, "connectivity degree vs brute force", ok, {
        "checked": len(small), "mismatches": mismatches, "odd_dihedral_not_degree_1": odd,
        "even_dihedral_connected": even, "trivial_connected": trivial,
    }, time.perf_counter() - start)


def functor(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    invalid, not_trivial, not_periodic, fast_mismatch = [], [], [], []
    for t in catalog():
        ident = np.arange(t.size)[:, None]
        for n in range(1, 7):
            it = core.iterate(t, n)
            if not core.validate(it).ok:
                invalid.append((t.name, n))
            if it != core.iterate_fast(t, n):
                fast_mismatch.append((t.name, n))
        k = analysis.type_of(t)
        if not np.all(core.iterate(t, k).op == ident):
            not_trivial.append(t.name)
        for m in range(1, 4):
            if core.iterate(t, m) != core.iterate(t, m + k):
                not_periodic.append((t.name, m))
    ok = not (invalid or not_trivial or not_periodic or fast_mismatch)
    return CriterionResult(3, "iterated operation functor", ok, {
        "invalid": invalid, "type_iterate_not_trivial": not_trivial,
        "not_periodic": not_periodic, "fast_iterate_mismatch": fast_mismatch,
    }, time.perf_counter() - start)


def power_identities(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    psi_bad = [n for n in range(1, 9) if not (words.psi_word(n).is_identity() and words.psi_word_sympy_is_identity(n))]
    sigma_bad = []
    pairs = 0
    for t in _small(12):
        for n in range(1, 5):
            rep = words.verify_functor_identities(t, n)
            pairs += rep.pairs_checked
            if rep.sigma_failures:
                sigma_bad.append((t.name, n))
    ok = not (psi_bad or sigma_bad)
    return CriterionResult(4, "power-map identities", ok, {
        "psi_failures": psi_bad, "sigma_failures": sigma_bad, "sigma_pairs_checked": pairs,
    }, time.perf_counter() - start)


def two_connectedness(seed: int = DEFAULT_SEED, samples: int = 1000) -> CriterionResult:
    start = time.perf_counter()
    tol = 1e-8
    per_class = {}
    for cls in (DiagPair(2, 3), DiagPair(1, -1), Jordan(1)):
        fails, worst, lengths = 0, 0.0, {1: 0, 2: 0}
        for A in sample_members(cls, samples, seed):
            rep = two_step_path(cls, A, tol)
            if not rep.ok or rep.residual > tol:
                fails += 1
                continue
            worst = max(worst, rep.residual)
            lengths[rep.length] += 1
        per_class[str(cls)] = {"failures": fails, "max_residual_ok": worst <= tol, "lengths": lengths}
    m23 = DiagPair(2, 3)
    swap = two_step_path(m23, Mat2.diag(3, 2), tol)
    one = witness_in_class(m23.base_point(), Mat2.diag(3, 2), m23, tol)
    swap_ok = swap.ok and swap.length == 2 and one.status is Status.NO_WITNESS and one.refutation == "trace must be zero"
    l44 = witness_in_class(Mat2.diag(1, -1), Mat2.of([[-1, 0], [1, 1]]), DiagPair(1, -1), tol)
    m1 = witness_in_class(Mat2.of([[1, 1], [0, 1]]), Mat2.of([[1, 2], [0, 1]]), Jordan(1), tol)
    elapsed = time.perf_counter() - start
    ok = (all(v["failures"] == 0 and v["max_residual_ok"] for v in per_class.values()) and swap_ok
          and l44.status is Status.NO_WITNESS and m1.status is Status.NO_WITNESS)
    return CriterionResult(5, "two-step paths in conjugacy classes", ok and elapsed < 30.0, {
        "classes": per_class, "swap_length": swap.length, "swap_one_step": one.refutation,
        "singular_target": l44.refutation, "jordan_target": m1.refutation, "under_30s": elapsed < 30.0,
    }, elapsed)


def root_of_unity_subquandles(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    w = cmath.exp(2j * cmath.pi / 5)
    yes = lemmas.subquandle_order_test(DiagPair(w, 1), 5, samples=200, seed=seed, tol=1e-8)
    no = lemmas.subquandle_order_test(DiagPair(2, 1), 3, samples=200, seed=seed, tol=1e-8)
    dev = no.counterexample.deviation if no.counterexample else 0.0
    ok = yes.predicted and yes.agreements == 200 and yes.max_residual <= 1e-8 and not no.predicted and dev > 1e-3
    return CriterionResult(6, "root-of-unity subquandle criterion", ok, {
        "fifth_root_agreements": yes.agreements, "ratio_2_predicted": no.predicted,
        "counterexample_deviation": round(dev, 12),
    }, time.perf_counter() - start)


def pgl_components(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    counts, controls, unverified = {}, {}, []
    for n in range(1, 9):
        rep = lemmas.count_trivial_components_pgl(n, samples=50, seed=seed)
        counts[n] = rep.count
        controls[n] = rep.control_failures > 0
        if any(passed != total or total < 50 for _, passed, total in rep.per_class):
            unverified.append(n)
    ok = all(counts[n] == n for n in counts) and all(controls.values()) and not unverified
    return CriterionResult(7, "PGL trivial components", ok,
                           {"counts": counts, "controls_fail": controls, "unverified_classes": unverified},
                           time.perf_counter() - start)


def jordan_type(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    bad = []
    for lam in (1, 1j, 2):
        for n in range(1, 5):
            for m in range(1, 11):
                if not lemmas.jordan_type_probe(lam, n, m, tol=1e-10).ok:
                    bad.append((str(lam), n, m))
    return CriterionResult(8, "Jordan class type probes", not bad, {"failures": bad}, time.perf_counter() - start)


def gaussian_pairs(count: int, seed: int, admissible: bool = False) -> list[tuple[complex, complex]]:
    """Seeded pairs of Gaussian rationals with ``l1 != +-l2``."""
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        re, im = rng.integers(-6, 7, size=2), rng.integers(-6, 7, size=2)
        den = rng.integers(1, 4, size=2)
        l1 = complex(re[0], im[0]) / den[0]
        l2 = complex(re[1], im[1]) / den[1]
        if l1 == 0 or l2 == 0 or l1 == l2 or l1 == -l2:
            continue
        if admissible and not lemmas.is_admissible(l1, l2):
            continue
        out.append((l1, l2))
    return out


def r3_results(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    wit = lemmas.r3_probe(DiagPair(1, -1), tol=1e-10)
    pairs = gaussian_pairs(20, seed)
    refuted = [lemmas.r3_probe(DiagPair(*p)).status is Status.REFUTED for p in pairs]
    jordan = lemmas.r3_probe(Jordan(1))
    r3 = core.build(core.Dihedral(3))
    in_r6 = analysis.embed(r3, core.build(core.Dihedral(6)))
    in_t5 = analysis.embed(r3, core.build(core.Trivial(5)))
    ok = (wit.status is Status.WITNESS and wit.residual <= 1e-10 and all(refuted)
          and jordan.status is Status.REFUTED and in_r6.found and in_t5.status is analysis.SearchStatus.NOT_FOUND)
    return CriterionResult(9, "R_3 embeddings and refutations", ok, {
        "witness_status": wit.status.value, "refuted_pairs": sum(refuted), "jordan": jordan.refutation,
        "embed_dihedral_6": in_r6.status.value, "embed_trivial_5": in_t5.status.value,
    }, time.perf_counter() - start)


EXCLUDED_REPRESENTATIVES = {"l1=1": (1, 3), "l2=1": (3, 1), "l2=-1": (2, -1), "l1=l2^2": (4, 2)}


def return_pairs(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < 20:
        z = rng.uniform(0.5, 3.0, size=2) * np.exp(1j * rng.uniform(-np.pi, np.pi, size=2))
        l1, l2 = complex(z[0]), complex(z[1])
        if lemmas.is_admissible(l1, l2):
            pairs.append((l1, l2))

    def good(rep) -> bool:
        return rep.ok and rep.residual <= 1e-8 and rep.solver_values["commutator"] > 1e-6

    admissible_ok = sum(good(lemmas.noncommuting_return_pair(*p)) for p in pairs)
    excluded = {}
    for name, p in EXCLUDED_REPRESENTATIVES.items():
        rep = lemmas.noncommuting_return_pair(*p)
        excluded[name] = good(rep) and rep.solver_values.get("k") != 1
    ok = admissible_ok == 20 and all(excluded.values())
    return CriterionResult(10, "non-commuting return pairs", ok, {"admissible_ok": admissible_ok, "excluded_ok": excluded},
                           time.perf_counter() - start)


def random_word(rng: np.random.Generator, n: int, max_len: int = 6) -> words.QuandleWord:
    k = int(rng.integers(0, max_len + 1))
    tail = tuple((int(rng.integers(0, n)), int(rng.choice([-1, 1]))) for _ in range(k))
    return words.QuandleWord(int(rng.integers(0, n)), tail)


def word_calculus(seed: int = DEFAULT_SEED, pairs: int = 1000) -> CriterionResult:
    start = time.perf_counter()
    details = {}
    ok = True
    for t in (core.build(core.Dihedral(5)), core.build(core.parse_spec("conj:symmetric:3"))):
        rng = np.random.default_rng(seed)
        inv = core.dual(t)
        hom_fail = idem_fail = 0
        for _ in range(pairs):
            raw1, raw2 = random_word(rng, t.size), random_word(rng, t.size)
            w1, w2 = words.normalize(raw1), words.normalize(raw2)
            s = int(rng.choice([-1, 1]))
            c = words.compose(w1, w2, s)
            x, y = words.evaluate(w1, t), words.evaluate(w2, t)
            want = t(x, y) if s == 1 else inv(x, y)
            if words.evaluate(c, t) != want:
                hom_fail += 1
            if (words.normalize(c) != c or words.normalize(w1) != w1
                    or words.evaluate(w1, t) != words.evaluate(raw1, t)):
                idem_fail += 1
        details[t.name] = {"compose_failures": hom_fail, "normalize_failures": idem_fail}
        ok = ok and hom_fail == 0 and idem_fail == 0
    return CriterionResult(11, "left-associated word calculus", ok, details, time.perf_counter() - start)


def _orbit_count_unionfind(t) -> int:
    parent = list(range(t.size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x in range(t.size):
        for y in range(t.size):
            a, b = find(x), find(int(t.op[x, y]))
            if a != b:
                parent[a] = b
    return len({find(x) for x in range(t.size)})


def abelianization(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    bad_rank, bad_smith = [], []
    smith_checked = 0
    for t in catalog():
        rank = analysis.analyze(t).rank
        if rank != _orbit_count_unionfind(t):
            bad_rank.append(t.name)
        if t.size <= 10:
            smith_checked += 1
            if analysis.abelianization_rank_smith(t) != rank:
                bad_smith.append(t.name)
    return CriterionResult(12, "abelianization rank", not (bad_rank or bad_smith) and smith_checked > 0,
                           {"rank_mismatch": bad_rank, "smith_mismatch": bad_smith, "smith_checked": smith_checked},
                           time.perf_counter() - start)


def root_transport(seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    worst = lemmas.sample_transport(100, 4, seed)
    return CriterionResult(13, "class transport by n-th roots", worst <= 1e-8,
                           {"within_1e-8": worst <= 1e-8}, time.perf_counter() - start)


CRITERIA: list[Callable[..., CriterionResult]] = [
    latin_equivalence, connectivity, functor, power_identities, two_connectedness,
    root_of_unity_subquandles, pgl_components, jordan_type, r3_results, return_pairs,
    word_calculus, abelianization, root_transport,
]


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [check(seed=seed) for check in CRITERIA]
