import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from quandlelab import words
from quandlelab.catalog import base_catalog, catalog
from quandlelab.core import Conj, Dihedral, Trivial, build, dual, iterate
from quandlelab.groups import Symmetric
from quandlelab.words import (
    GroupWord, QuandleWord, canonical_relator, compose, evaluate, normalize, parse_word, presentation,
    psi_word, psi_word_sympy_is_identity, verify_functor_identities,
)

R3, R5 = build(Dihedral(3)), build(Dihedral(5))
S3 = build(Conj(Symmetric(3)))


def W(text: str) -> QuandleWord:
    return parse_word(text)


def word_strategy(n: int, max_len: int = 8):
    letter = st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1]))
    return st.builds(QuandleWord, st.integers(0, n - 1), st.lists(letter, max_size=max_len).map(tuple))


def naive_eval(w: QuandleWord, t) -> int:
    rows, inv = t.op.tolist(), dual(t).op.tolist()
    x = w.base
    for a, s in w.tail:
        x = rows[x][a] if s == 1 else inv[x][a]
    return x


# -- examples ------------------------------------------------------------

def test_compose_expansion():
    a0 = QuandleWord(0)
    b = QuandleWord(1, ((2, 1),))
    assert compose(a0, b, 1) == QuandleWord(0, ((2, -1), (1, 1), (2, 1)))


def test_compose_base_only_idempotent():
    x = QuandleWord(4)
    assert compose(x, x, 1) == x


def test_compose_r3_negative():
    w = W("0 * 1")
    c = compose(w, w, -1)
    assert evaluate(c, R3) == 2
    assert evaluate(w, R3) == 2 and R3(2, 2) == 2


@pytest.mark.parametrize("text,expected", [
    ("3 * 1 *- 1", "3"),
    ("3 * 3", "3"),
    ("0 * 1 * 1 *- 1", "0 * 1"),
])
def test_normalize_examples(text, expected):
    assert str(normalize(W(text))) == expected


def test_normalize_example_evaluation():
    assert evaluate(W("0 * 1 * 1 *- 1"), R3) == evaluate(W("0 * 1"), R3)


def test_evaluate_examples():
    assert evaluate(W("0 * 1 * 2"), R3) == 2
    assert evaluate(QuandleWord(1), R3) == 1
    assert evaluate(W("0 *- 1"), R3) == 2


def test_evaluate_out_of_range():
    with pytest.raises(IndexError):
        evaluate(W("0 * 3"), R3)


def test_parse_and_format_round_trip():
    assert str(W("0 * 1 *- 2")) == "0 * 1 *- 2"
    for bad in ("", "0 *", "0 + 1", "a * 1"):
        with pytest.raises(ValueError):
            parse_word(bad)


def test_carrier_mismatch():
    with pytest.raises(ValueError):
        compose(QuandleWord(0, carrier="R3"), QuandleWord(1, carrier="R5"))


def test_bad_sign():
    with pytest.raises(ValueError):
        QuandleWord(0, ((1, 2),))
    with pytest.raises(ValueError):
        compose(QuandleWord(0), QuandleWord(1), 0)


# -- properties ----------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(st.data())
def test_normalize_idempotent_and_preserves_value(data):
    t = data.draw(st.sampled_from([R3, R5, S3, build(Trivial(4))]))
    w = data.draw(word_strategy(t.size))
    nw = normalize(w)
    assert normalize(nw) == nw and nw.is_canonical()
    assert evaluate(nw, t) == evaluate(w, t) == naive_eval(w, t)
    assert len(nw) <= len(w)


@settings(max_examples=300, deadline=None)
@given(st.data())
def test_compose_is_homomorphism(data):
    t = data.draw(st.sampled_from(base_catalog()))
    w1 = data.draw(word_strategy(t.size, 5))
    w2 = data.draw(word_strategy(t.size, 5))
    s = data.draw(st.sampled_from([1, -1]))
    want = t(evaluate(w1, t), evaluate(w2, t)) if s == 1 else dual(t)(evaluate(w1, t), evaluate(w2, t))
    assert evaluate(compose(w1, w2, s), t) == want


def test_compose_seeded_catalog_sweep():
    rng = np.random.default_rng(0xC0FFEE)
    for t in base_catalog():
        d = dual(t)
        for _ in range(1000 // 16):
            w1 = QuandleWord(int(rng.integers(t.size)), tuple((int(a), int(s)) for a, s in zip(
                rng.integers(0, t.size, 4), rng.choice([-1, 1], 4))))
            w2 = QuandleWord(int(rng.integers(t.size)), tuple((int(a), int(s)) for a, s in zip(
                rng.integers(0, t.size, 3), rng.choice([-1, 1], 3))))
            for s, op in ((1, t), (-1, d)):
                assert naive_eval(compose(w1, w2, s), t) == op(naive_eval(w1, t), naive_eval(w2, t))


# -- free group and presentations -----------------------------------------

def test_group_word_reduction():
    w = GroupWord.from_letters([(0, 1), (1, 1), (1, -1), (0, -1)])
    assert w.is_identity()
    assert (GroupWord.gen(0, 2) * GroupWord.gen(0, -2)).is_identity()
    assert GroupWord.gen(1, 3).length() == 3


@settings(max_examples=200, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=12))
def test_group_word_matches_sympy(letters):
    from sympy.combinatorics.free_groups import free_group

    F, *gens = free_group("a b c")
    ref = F.identity
    for g, e in letters:
        ref = ref * gens[g] ** e
    ours = GroupWord.from_letters(letters)
    assert ours.length() == len(ref)
    assert (ours * ours.inverse()).is_identity()


@pytest.mark.parametrize("n", range(1, 9))
def test_psi_identity(n):
    assert psi_word(n).is_identity()
    assert psi_word_sympy_is_identity(n)


def test_psi_nontrivial_variant_is_not_identity():
    # dropping one conjugation breaks the identity, so the reducer is not vacuous
    xn = GroupWord.gen(0, 2)
    w = (xn.inverse() * GroupWord.gen(1) * xn) ** 2 * GroupWord.gen(1, -2)
    assert not w.is_identity()


def test_sigma_examples():
    rep = verify_functor_identities(R5, 2)
    assert rep.ok and rep.pairs_checked == 25
    for t in base_catalog()[:30]:
        assert verify_functor_identities(t, 1).ok


def test_sigma_all_small_catalog():
    for t in catalog():
        if t.size <= 12:
            for n in range(1, 5):
                assert not verify_functor_identities(t, n).sigma_failures


def test_presentation_trivial2():
    p = presentation(build(Trivial(2)))
    assert p.generators == 2 and len(p.relations) == 1
    x, y, z = p.relations[0]
    assert z == x  # e_x = e_y^-1 e_x e_y: the generators commute


def test_presentation_r3():
    p = presentation(R3)
    assert len(p.relations) == 6
    assert p.text().splitlines()[0] == "generators: e0 e1 e2"
    assert "e2 = e1^-1 e0 e1" in p.text()


def test_presentation_trivial1():
    p = presentation(build(Trivial(1)))
    assert p.generators == 1 and p.relations == []


def test_presentation_bounds_and_determinism():
    for t in base_catalog():
        p = presentation(t)
        assert len(p.relations) <= t.size * (t.size - 1)
        assert presentation(t).text() == p.text()
        keys = [canonical_relator(r) for r in p.relators()]
        assert len(set(keys)) == len(keys)


def test_presentation_relators_hold_in_inner_group():
    from quandlelab.core import right_translation

    for t in base_catalog()[:40]:
        R = [right_translation(t, y) for y in range(t.size)]
        for x, y, z in presentation(t).relations:
            assert R[z] == R[y].inverse() * R[x] * R[y]
