"""Invariants and decision procedures on finite quandles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import reduce
from typing import Literal

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .core import QuandleTable, iterate, right_translation

LatinMode = Literal["fast", "oracle"]
DEFAULT_BUDGET = 1_000_000


def is_latin(t: QuandleTable, mode: LatinMode = "fast") -> bool:
    """Whether every left translation ``L_x`` is a bijection.

    In a quandle one bijective ``L_x`` forces all of them, so the fast mode
    only inspects row 0.  The oracle mode inspects every row.
    """
    if mode == "fast":
        rows = t.op[:1]
    elif mode == "oracle":
        rows = t.op
    else:
        raise ValueError(f"unknown latin mode {mode!r}")
    n = t.size
    return all(len(np.unique(r)) == n for r in rows)


def latin_rows(t: QuandleTable) -> list[bool]:
    """Per-row bijectivity, used to check the all-or-nothing behaviour."""
    return [len(np.unique(r)) == t.size for r in t.op]


def orbits(t: QuandleTable) -> tuple[list[list[int]], int]:
    """Orbits of Inn(Q) and the rank of the abelianized associated group.

    Abelianizing ``e_{x*y} = e_y^-1 e_x e_y`` identifies ``e_{x*y}`` with
    ``e_x``, so the rank is the number of orbits.
    """
    n = t.size
    rows = np.repeat(np.arange(n), n)
    graph = coo_matrix((np.ones(n * n, dtype=np.int8), (rows, t.op.ravel())), shape=(n, n))
    count, labels = connected_components(graph, directed=True, connection="weak")
    blocks: dict[int, list[int]] = {}
    for x, lab in enumerate(labels.tolist()):
        blocks.setdefault(lab, []).append(x)
    parts = sorted(blocks.values(), key=lambda b: b[0])
    return parts, int(count)


def abelianization_rank_smith(t: QuandleTable) -> int:
    """Free rank of As(Q)^ab from the Smith form of its relation matrix.

    Independent of :func:`orbits`; intended for small tables.
    """
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form
    from sympy.polys.domains import ZZ

    n = t.size
    rows = set()
    for x in range(n):
        for y in range(n):
            z = int(t.op[x, y])
            if z != x:
                r = [0] * n
                r[z] += 1
                r[x] -= 1
                rows.add(tuple(r))
    if not rows:
        return n
    snf = smith_normal_form(Matrix(sorted(rows)), domain=ZZ)
    nonzero = sum(1 for i in range(min(snf.shape)) if snf[i, i] != 0)
    return n - nonzero


@dataclass(frozen=True)
class ConnectivityReport:
    connected: bool
    degree: int | None = None
    witness_pair: tuple[int, int] | None = None


def distance_matrix(t: QuandleTable) -> np.ndarray:
    """``D[x, y]`` = least l >= 1 with ``y = x*z1*...*zl``, or 0 if unreachable.

    ``D[x, x] == 1`` since ``x*x == x``.
    """
    n = t.size
    step = np.zeros((n, n), dtype=bool)
    step[np.repeat(np.arange(n), n), t.op.ravel()] = True
    dist = np.zeros((n, n), dtype=np.int64)
    reach = step.copy()
    dist[reach] = 1
    level = 1
    while True:
        nxt = (reach.astype(np.int64) @ step.astype(np.int64)) > 0
        new = nxt & ~reach
        if not new.any():
            break
        level += 1
        dist[new] = level
        reach |= nxt
    return dist


def connectivity_degree(t: QuandleTable) -> ConnectivityReport:
    """Least n such that every ordered pair is joined by a word of length <= n.

    The witness is the lexicographically smallest pair attaining the maximum.
    """
    _, count = orbits(t)
    if count > 1:
        return ConnectivityReport(False)
    dist = distance_matrix(t)
    degree = int(dist.max())
    x, y = np.argwhere(dist == degree)[0]
    return ConnectivityReport(True, degree, (int(x), int(y)))


def connectivity_degree_bruteforce(t: QuandleTable, max_len: int | None = None) -> ConnectivityReport:
    """Definition-level check by growing endpoint sets of explicit words.

    Pure Python, for cross-checking :func:`connectivity_degree`.
    """
    n = t.size
    op = t.op.tolist()
    max_len = max_len or n
    worst = (0, None)
    for x in range(n):
        seen_at = {}
        frontier = {op[x][z] for z in range(n)}
        for y in frontier:
            seen_at[y] = 1
        length = 1
        while len(seen_at) < n and length < max_len:
            length += 1
            frontier = {op[s][z] for s in frontier for z in range(n)}
            grew = False
            for y in frontier:
                if y not in seen_at:
                    seen_at[y] = length
                    grew = True
            if not grew:
                break
        if len(seen_at) < n:
            return ConnectivityReport(False)
        for y in range(n):
            if seen_at[y] > worst[0]:
                worst = (seen_at[y], (x, y))
    return ConnectivityReport(True, worst[0], worst[1])


def type_of(t: QuandleTable) -> int:
    """lcm of the orders of the right translations."""
    return reduce(math.lcm, (right_translation(t, y).order() for y in range(t.size)), 1)


def type_bruteforce(t: QuandleTable) -> int:
    n = 1
    ident = np.arange(t.size)[:, None]
    while not np.all(iterate(t, n).op == ident):
        n += 1
    return n


# -- homomorphism search -------------------------------------------------

class SearchStatus(str, Enum):
    FOUND = "found"
    NOT_FOUND = "not_found"
    INCONCLUSIVE = "inconclusive"


@dataclass
class IsoResult:
    status: SearchStatus
    mapping: tuple[int, ...] | None = None
    nodes_explored: int = 0

    @property
    def found(self) -> bool:
        return self.status is SearchStatus.FOUND

    @property
    def inconclusive(self) -> bool:
        return self.status is SearchStatus.INCONCLUSIVE


def element_profiles(t: QuandleTable) -> list[tuple]:
    """Per-element data preserved by isomorphisms."""
    blocks, _ = orbits(t)
    orbit_size = {x: len(b) for b in blocks for x in b}
    latin = is_latin(t)
    out = []
    for x in range(t.size):
        r = right_translation(t, x)
        out.append((orbit_size[x], r.cycle_type(), len(r.fixed_points()), len(set(t.op[x].tolist())), latin))
    return out


def is_homomorphism(p: QuandleTable, q: QuandleTable, phi) -> bool:
    phi = np.asarray(phi)
    return bool(np.array_equal(phi[p.op], q.op[phi[:, None], phi[None, :]]))


class _Budget(Exception):
    pass


def _search(p: QuandleTable, q: QuandleTable, candidates: list[list[int]], budget: int) -> IsoResult:
    n = p.size
    pop, qop = p.op.tolist(), q.op.tolist()
    phi = [-1] * n
    used = [False] * q.size
    assigned: list[int] = []
    nodes = 0

    def assign(x: int, u: int, trail: list[int]) -> bool:
        # Set phi(x) = u and close under forced products.  Undo via trail on failure.
        stack = [(x, u)]
        while stack:
            x, u = stack.pop()
            if phi[x] >= 0:
                if phi[x] != u:
                    return False
                continue
            if used[u] or u not in cand_sets[x]:
                return False
            phi[x] = u
            used[u] = True
            trail.append(x)
            assigned.append(x)
            for y in assigned:
                v = phi[y]
                for a, b, img in ((x, y, qop[u][v]), (y, x, qop[v][u])):
                    z = pop[a][b]
                    if phi[z] >= 0:
                        if phi[z] != img:
                            return False
                    else:
                        stack.append((z, img))
        return True

    def undo(trail: list[int]) -> None:
        for x in trail:
            used[phi[x]] = False
            phi[x] = -1
        del assigned[len(assigned) - len(trail):]

    cand_sets = [set(c) for c in candidates]
    order = sorted(range(n), key=lambda x: (len(candidates[x]), x))

    def rec() -> bool:
        nonlocal nodes
        x = next((x for x in order if phi[x] < 0), None)
        if x is None:
            return True
        for u in candidates[x]:
            if used[u]:
                continue
            nodes += 1
            if nodes > budget:
                raise _Budget
            trail: list[int] = []
            if assign(x, u, trail) and rec():
                return True
            undo(trail)
        return False

    try:
        ok = rec()
    except _Budget:
        return IsoResult(SearchStatus.INCONCLUSIVE, None, nodes)
    if not ok:
        return IsoResult(SearchStatus.NOT_FOUND, None, nodes)
    mapping = tuple(phi)
    if not is_homomorphism(p, q, mapping) or len(set(mapping)) != n:
        raise AssertionError("search returned a map that is not an injective homomorphism")
    return IsoResult(SearchStatus.FOUND, mapping, nodes)


def find_isomorphism(a: QuandleTable, b: QuandleTable, budget: int = DEFAULT_BUDGET) -> IsoResult:
    """Backtracking search for a bijection ``phi`` with ``phi(x*y) = phi(x)*phi(y)``."""
    if a.size != b.size:
        return IsoResult(SearchStatus.NOT_FOUND)
    pa, pb = element_profiles(a), element_profiles(b)
    if sorted(pa) != sorted(pb):
        return IsoResult(SearchStatus.NOT_FOUND)
    by_profile: dict[tuple, list[int]] = {}
    for u, prof in enumerate(pb):
        by_profile.setdefault(prof, []).append(u)
    candidates = [by_profile[pa[x]] for x in range(a.size)]
    return _search(a, b, candidates, budget)


def embed(p: QuandleTable, q: QuandleTable, budget: int = DEFAULT_BUDGET) -> IsoResult:
    """Search for an injective homomorphism ``p -> q``."""
    if p.size > q.size:
        raise ValueError(f"cannot embed size {p.size} into size {q.size}")
    candidates = [list(range(q.size)) for _ in range(p.size)]
    return _search(p, q, candidates, budget)


@dataclass
class AnalysisReport:
    name: str
    size: int
    latin: bool
    orbits: int
    degree: int | None
    type: int
    rank: int
    blocks: list[list[int]] = field(default_factory=list, repr=False)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "size": self.size,
            "latin": self.latin,
            "orbits": self.orbits,
            "degree": self.degree,
            "type": self.type,
            "rank": self.rank,
        }


def analyze(t: QuandleTable) -> AnalysisReport:
    blocks, count = orbits(t)
    conn = connectivity_degree(t)
    return AnalysisReport(t.name, t.size, is_latin(t), count, conn.degree, type_of(t), count, blocks)

