from itertools import permutations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quandlelab import analysis
from quandlelab.analysis import (
    SearchStatus, abelianization_rank_smith, analyze, connectivity_degree, connectivity_degree_bruteforce,
    embed, find_isomorphism, is_homomorphism, is_latin, latin_rows, orbits, type_bruteforce, type_of,
)
from quandlelab.catalog import base_catalog, catalog
from quandlelab.core import Conj, Dihedral, QuandleTable, Trivial, build, iterate
from quandlelab.groups import Symmetric

from oracles import brute_degree, latin, orbit_blocks, perm_order

CAT = catalog()
SMALL = [t for t in CAT if t.size <= 12]
R = lambda n: build(Dihedral(n))  # noqa: E731
T = lambda n: build(Trivial(n))  # noqa: E731
S3 = build(Conj(Symmetric(3)))


def relabel(t: QuandleTable, perm) -> QuandleTable:
    """Table of the isomorphic copy under ``x -> perm[x]``."""
    n = t.size
    op = np.empty((n, n), dtype=int)
    for x in range(n):
        for y in range(n):
            op[perm[x], perm[y]] = perm[t.op[x, y]]
    return QuandleTable(op, t.name)


# -- latin ---------------------------------------------------------------

@pytest.mark.parametrize("t,expected", [(R(3), True), (T(2), False), (R(4), False)])
def test_latin_examples(t, expected):
    assert is_latin(t, "fast") is expected and is_latin(t, "oracle") is expected


def test_latin_modes_agree_with_pure_oracle():
    for t in CAT:
        want = latin(t.op.tolist())
        assert is_latin(t, "fast") == want == is_latin(t, "oracle")
        assert len(set(latin_rows(t))) == 1


def test_latin_bad_mode():
    with pytest.raises(ValueError):
        is_latin(R(3), "slow")


# -- orbits and rank -----------------------------------------------------

def test_orbits_trivial():
    blocks, rank = orbits(T(5))
    assert blocks == [[x] for x in range(5)] and rank == 5


def test_orbits_dihedral3():
    assert orbits(R(3)) == ([[0, 1, 2]], 1)


def test_orbits_conj_s3():
    blocks, rank = orbits(S3)
    assert sorted(len(b) for b in blocks) == [1, 2, 3] and rank == 3


def test_orbits_match_pure_oracle():
    for t in CAT:
        assert sorted(orbits(t)[0]) == sorted(orbit_blocks(t.op.tolist()))


def test_smith_rank_matches_orbit_count():
    for t in CAT:
        if t.size <= 10:
            assert abelianization_rank_smith(t) == orbits(t)[1]


# -- connectivity --------------------------------------------------------

def test_connectivity_examples():
    assert connectivity_degree(R(3)) == analysis.ConnectivityReport(True, 1, (0, 0))
    assert not connectivity_degree(T(2)).connected
    assert not connectivity_degree(R(6)).connected


def test_connectivity_matches_bruteforce_and_oracle():
    for t in SMALL:
        fast = connectivity_degree(t)
        assert fast == connectivity_degree_bruteforce(t)
        assert fast.degree == brute_degree(t.op.tolist())


def transpositions_s4() -> QuandleTable:
    """The six transpositions of S4 under conjugation, as a subquandle of Conj(S4)."""
    perms = list(permutations(range(4)))
    idx = [i for i, p in enumerate(perms) if sum(p[k] != k for k in range(4)) == 2]
    big = build(Conj(Symmetric(4)))
    return QuandleTable([[idx.index(int(big.op[x, y])) for y in idx] for x in idx], "Transp(S4)")


def test_degree_two_example():
    t = transpositions_s4()
    assert brute_degree(t.op.tolist()) == 2
    rep = connectivity_degree(t)
    assert rep.degree == 2 and rep == connectivity_degree_bruteforce(t)
    assert not is_latin(t)


def test_witness_pair_is_lexicographically_first():
    for t in SMALL:
        rep = connectivity_degree(t)
        if rep.connected:
            d = analysis.distance_matrix(t)
            first = min((x, y) for x in range(t.size) for y in range(t.size) if d[x, y] == rep.degree)
            assert rep.witness_pair == first


# -- type ----------------------------------------------------------------

@pytest.mark.parametrize("t,expected", [(R(3), 2), (T(7), 1), (S3, 6)])
def test_type_examples(t, expected):
    assert type_of(t) == expected


def test_type_matches_bruteforce_and_oracle():
    for t in base_catalog():
        rows = t.op.tolist()
        lcm = 1
        for y in range(t.size):
            o = perm_order([rows[x][y] for x in range(t.size)])
            lcm = lcm * o // np.gcd(lcm, o)
        assert type_of(t) == type_bruteforce(t) == lcm


# -- isomorphism and embedding ------------------------------------------

def test_iso_examples():
    r3 = R(3)
    res = find_isomorphism(r3, iterate(r3, 3))
    assert res.found and is_homomorphism(r3, iterate(r3, 3), res.mapping)
    assert find_isomorphism(r3, T(3)).status is SearchStatus.NOT_FOUND
    assert find_isomorphism(iterate(r3, 2), T(3)).found


def test_iso_against_brute_force():
    small = [t for t in base_catalog() if 2 <= t.size <= 6]
    for a in small:
        for b in small:
            if a.size != b.size:
                continue
            brute = any(is_homomorphism(a, b, p) for p in permutations(range(a.size)))
            assert find_isomorphism(a, b).found == brute


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(range(64)), st.randoms(use_true_random=False))
def test_iso_finds_relabelings(i, rnd):
    t = base_catalog()[i]
    perm = list(range(t.size))
    rnd.shuffle(perm)
    other = relabel(t, perm)
    res = find_isomorphism(t, other)
    assert res.found and is_homomorphism(t, other, res.mapping)
    assert find_isomorphism(other, t).found


def test_iso_symmetric_on_catalog():
    base = [t for t in base_catalog() if t.size <= 12]
    for a in base:
        for b in base:
            if a.size == b.size:
                assert find_isomorphism(a, b).found == find_isomorphism(b, a).found


def test_iso_budget_inconclusive():
    a = build(Conj(Symmetric(4)))
    res = find_isomorphism(a, relabel(a, list(reversed(range(24)))), budget=1)
    assert res.status is SearchStatus.INCONCLUSIVE and res.inconclusive and not res.found


def test_embed_examples():
    res = embed(R(3), R(6))
    assert res.found
    assert is_homomorphism(R(3), R(6), res.mapping) and len(set(res.mapping)) == 3
    assert embed(R(3), T(5)).status is SearchStatus.NOT_FOUND
    res = embed(T(2), R(4))
    assert res.found and sorted(res.mapping) in ([0, 2], [1, 3])


def test_embed_subtable_oracle():
    # {0,2,4} in R6 with the induced operation is a copy of R3
    sub = [0, 2, 4]
    r6 = R(6)
    induced = [[sub.index(int(r6.op[x, y])) for y in sub] for x in sub]
    assert induced == R(3).op.tolist()


def test_embed_budget_inconclusive():
    assert embed(R(3), R(24), budget=1).status in (SearchStatus.INCONCLUSIVE, SearchStatus.FOUND)
    assert embed(build(Conj(Symmetric(3))), build(Conj(Symmetric(4))), budget=1).inconclusive


# -- report --------------------------------------------------------------

def test_analyze_dihedral3():
    assert analyze(R(3)).to_dict() == {"name": "R3", "size": 3, "latin": True, "orbits": 1,
                                       "degree": 1, "type": 2, "rank": 1}
