from itertools import permutations, product

import numpy as np
import pytest

from quandlelab import analysis
from quandlelab.core import Conj, build
from quandlelab.groups import (
    Cyclic, DihedralGroup, GroupFromTable, GroupLawError, Symmetric, build_group, center,
    conjugacy_classes, dumps_group, from_mul, group_power, loads_group, parse_group_spec,
)

from oracles import group_conj_classes

GROUPS = [Cyclic(n) for n in range(1, 9)] + [DihedralGroup(n) for n in range(1, 7)] + [Symmetric(n) for n in range(1, 5)]


def test_cyclic3():
    g = build_group(Cyclic(3))
    assert g.mul.tolist() == [[(i + j) % 3 for j in range(3)] for i in range(3)]
    assert g.identity == 0


def test_symmetric3_size():
    assert build_group(Symmetric(3)).size == 6


def test_dihedral4_center():
    g = build_group(DihedralGroup(4))
    assert g.size == 8 and len(center(g)) == 2


def test_symmetric_cap():
    with pytest.raises(ValueError):
        build_group(Symmetric(6))


@pytest.mark.parametrize("spec,sizes", [
    (Symmetric(3), [1, 2, 3]),
    (Cyclic(5), [1, 1, 1, 1, 1]),
    (DihedralGroup(4), [1, 1, 2, 2, 2]),
])
def test_class_sizes(spec, sizes):
    assert sorted(len(c) for c in conjugacy_classes(build_group(spec))) == sizes


@pytest.mark.parametrize("spec", GROUPS, ids=str)
def test_classes_match_oracle_and_orbits(spec):
    g = build_group(spec)
    ours = conjugacy_classes(g)
    assert sorted(ours) == sorted(group_conj_classes(g.mul.tolist(), g.identity))
    blocks, _ = analysis.orbits(build(Conj(spec)))
    assert sorted(blocks) == sorted(ours)


@pytest.mark.parametrize("spec", GROUPS, ids=str)
def test_conj_columns_are_inner_automorphisms(spec):
    g = build_group(spec)
    q = build(Conj(spec))
    for y in range(g.size):
        assert [int(q.op[x, y]) for x in range(g.size)] == [int(g.mul[g.mul[g.inv[y], x], y]) for x in range(g.size)]


@pytest.mark.parametrize("spec", GROUPS, ids=str)
def test_group_laws_brute_force(spec):
    g = build_group(spec)
    n, m, e = g.size, g.mul, g.identity
    assert all(m[e, x] == x == m[x, e] for x in range(n))
    assert all(m[x, g.inv[x]] == e for x in range(n))
    assert all(m[m[a, b], c] == m[a, m[b, c]] for a, b, c in product(range(n), repeat=3))


def test_symmetric_composition_convention():
    perms = list(permutations(range(3)))
    g = build_group(Symmetric(3))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            assert perms[g.mul[i, j]] == tuple(p[q[k]] for k in range(3))


def test_group_power_negative():
    g = build_group(Cyclic(7))
    assert group_power(g, 3, -2) == (7 - 6) % 7
    assert group_power(g, 3, 0) == 0


def test_from_mul_reports_failed_law():
    with pytest.raises(GroupLawError) as err:
        from_mul([[0, 1], [1, 1]], "bad", 0)
    assert err.value.law in {"inverse", "associativity"}


def test_from_mul_reports_associativity():
    # unique identity and inverses, but not associative (a Latin loop of order 5)
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupLawError) as err:
        from_mul(loop, "loop", 0)
    assert err.value.law == "associativity"
    a, b, c = err.value.witness
    m = np.array(loop)
    assert m[m[a, b], c] != m[a, m[b, c]]


def test_group_file_round_trip(tmp_path):
    g = build_group(DihedralGroup(3))
    p = tmp_path / "d3.txt"
    p.write_text(dumps_group(g))
    again = build_group(GroupFromTable(p))
    assert np.array_equal(again.mul, g.mul) and again.identity == g.identity


def test_group_file_requires_identity():
    with pytest.raises(ValueError, match="identity"):
        loads_group("2\n0 1\n1 0\n")


@pytest.mark.parametrize("text,spec", [("cyclic:4", Cyclic(4)), ("dihedral:3", DihedralGroup(3)),
                                       ("symmetric:3", Symmetric(3))])
def test_parse_group_spec(text, spec):
    assert parse_group_spec(text) == spec
