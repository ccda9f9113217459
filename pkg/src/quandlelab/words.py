"""Left-associated quandle words, associated-group presentations and
free-group checks of the power-map identities."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .core import Permutation, QuandleTable, dual, iterate, right_translation

Letter = tuple[int, int]  # (element, sign)


@dataclass(frozen=True)
class QuandleWord:
    """``((a0 *^e1 a1) *^e2 a2) ...`` stored as ``base`` and ``tail``.

    ``carrier`` optionally names the quandle the letters belong to; words
    over different carriers cannot be composed.
    """

    base: int
    tail: tuple[Letter, ...] = ()
    carrier: str | None = field(default=None, compare=False)

    def __post_init__(self):
        tail = tuple((int(a), int(s)) for a, s in self.tail)
        for _, s in tail:
            if s not in (1, -1):
                raise ValueError(f"letter sign must be +1 or -1, got {s}")
        object.__setattr__(self, "tail", tail)

    def __len__(self) -> int:
        return len(self.tail)

    def __str__(self) -> str:
        parts = [str(self.base)]
        for a, s in self.tail:
            parts.append("*" if s == 1 else "*-")
            parts.append(str(a))
        return " ".join(parts)

    def is_canonical(self) -> bool:
        return normalize(self) == self


def parse_word(text: str, carrier: str | None = None) -> QuandleWord:
    """Parse ``"0 * 1 *- 2"``."""
    tokens = text.split()
    if not tokens:
        raise ValueError("empty word")
    try:
        base = int(tokens[0])
        if len(tokens) % 2 == 0:
            raise ValueError("word must alternate element and operator")
        tail = []
        for i in range(1, len(tokens), 2):
            opr, letter = tokens[i], int(tokens[i + 1])
            if opr not in ("*", "*-"):
                raise ValueError(f"unknown operator {opr!r}")
            tail.append((letter, 1 if opr == "*" else -1))
    except (ValueError, IndexError) as exc:
        raise ValueError(f"bad word {text!r}: {exc}") from None
    return QuandleWord(base, tuple(tail), carrier)


def normalize(w: QuandleWord) -> QuandleWord:
    """Free cancellation of ``*y *-y`` pairs and dropping ``*^e a0`` at the head.

    The head rule is ``a0 *^e a0 = a0``; it applies whenever the stack
    has been reduced back to the bare base.
    """
    stack: list[Letter] = []
    for a, s in w.tail:
        if stack and stack[-1] == (a, -s):
            stack.pop()
        elif not stack and a == w.base:
            continue
        else:
            stack.append((a, s))
    return QuandleWord(w.base, tuple(stack), w.carrier)


def compose(w1: QuandleWord, w2: QuandleWord, sign: int = 1) -> QuandleWord:
    """Left-associated form of ``w1 *^sign w2``.

    Uses ``R_{b*c} = R_c^-1 R_b R_c`` repeatedly: the tail of ``w2`` is
    undone, ``b0`` applied, then the tail replayed.
    """
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    if w1.carrier is not None and w2.carrier is not None and w1.carrier != w2.carrier:
        raise ValueError(f"carrier mismatch: {w1.carrier!r} vs {w2.carrier!r}")
    undo = tuple((a, -s) for a, s in reversed(w2.tail))
    tail = w1.tail + undo + ((w2.base, sign),) + w2.tail
    return normalize(QuandleWord(w1.base, tail, w1.carrier or w2.carrier))


def evaluate(w: QuandleWord, t: QuandleTable) -> int:
    n = t.size
    for a in (w.base, *(a for a, _ in w.tail)):
        if not 0 <= a < n:
            raise IndexError(f"letter {a} out of range for size {n}")
    op, inv = t.op, dual(t).op
    x = w.base
    for a, s in w.tail:
        x = int(op[x, a] if s == 1 else inv[x, a])
    return x


# -- free group ----------------------------------------------------------

@dataclass(frozen=True)
class GroupWord:
    """Freely reduced word as ``((gen, exponent), ...)``."""

    syllables: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_letters(cls, letters: Iterable[tuple[int, int]]) -> "GroupWord":
        out: list[list[int]] = []
        for g, e in letters:
            if e == 0:
                continue
            if out and out[-1][0] == g:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([g, e])
        return cls(tuple((g, e) for g, e in out))

    @classmethod
    def gen(cls, g: int, e: int = 1) -> "GroupWord":
        return cls.from_letters([(g, e)])

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord.from_letters(self.syllables + other.syllables)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple((g, -e) for g, e in reversed(self.syllables)))

    def __pow__(self, k: int) -> "GroupWord":
        base = self if k >= 0 else self.inverse()
        out = GroupWord()
        for _ in range(abs(k)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return not self.syllables

    def length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def cyclic_reduce(self) -> "GroupWord":
        s = list(self.syllables)
        while len(s) > 1 and s[0][0] == s[-1][0]:
            g, e = s[0][0], s[0][1] + s[-1][1]
            s = s[1:-1]
            if e:
                s = [(g, e)] + s
        return GroupWord(tuple(s))

    def letters(self) -> tuple[tuple[int, int], ...]:
        """Expanded into unit exponents."""
        return tuple((g, 1 if e > 0 else -1) for g, e in self.syllables for _ in range(abs(e)))

    def format(self, prefix: str = "e") -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"{prefix}{g}" if e == 1 else f"{prefix}{g}^{e}" for g, e in self.syllables)


def canonical_relator(w: GroupWord) -> tuple[tuple[int, int], ...]:
    """Least rotation of ``w`` or its inverse, after cyclic reduction."""
    best = None
    for v in (w.cyclic_reduce(), w.inverse().cyclic_reduce()):
        letters = v.letters()
        for i in range(max(1, len(letters))):
            rot = letters[i:] + letters[:i]
            if best is None or rot < best:
                best = rot
    return best


@dataclass
class Presentation:
    generators: int
    relations: list[tuple[int, int, int]]  # (x, y, x*y): e_{x*y} = e_y^-1 e_x e_y

    def relators(self) -> list[GroupWord]:
        return [relator(x, y, z) for x, y, z in self.relations]

    def text(self) -> str:
        lines = ["generators: " + " ".join(f"e{i}" for i in range(self.generators))]
        lines += [f"e{z} = e{y}^-1 e{x} e{y}" for x, y, z in self.relations]
        return "\n".join(lines) + "\n"


def relator(x: int, y: int, z: int) -> GroupWord:
    return GroupWord.from_letters([(z, -1), (y, -1), (x, 1), (y, 1)])


def presentation(t: QuandleTable) -> Presentation:
    """Associated-group presentation, one relation per ordered pair ``x != y``.

    Relations whose relators agree up to cyclic rotation and inversion are
    kept once, first occurrence in row-major order.
    """
    seen = set()
    rels = []
    for x in range(t.size):
        for y in range(t.size):
            if x == y:
                continue
            z = int(t.op[x, y])
            key = canonical_relator(relator(x, y, z))
            if key in seen:
                continue
            seen.add(key)
            rels.append((x, y, z))
    return Presentation(t.size, rels)


def psi_word(n: int) -> GroupWord:
    """``(x^-n p x^n)^n (x^-n p^n x^n)^-1`` in the free group on x=0, p=1."""
    xn = GroupWord.gen(0, n)
    conj = xn.inverse() * GroupWord.gen(1) * xn
    return conj ** n * (xn.inverse() * GroupWord.gen(1, n) * xn).inverse()


def psi_word_sympy_is_identity(n: int) -> bool:
    """Independent check of :func:`psi_word` in sympy's free group."""
    from sympy.combinatorics.free_groups import free_group

    _, x, p = free_group("x p")
    w = (x ** -n * p * x ** n) ** n * (x ** -n * p ** n * x ** n) ** -1
    return bool(w.is_identity)


@dataclass
class FunctorReport:
    n: int
    psi_word: GroupWord
    psi_ok: bool
    psi_oracle_ok: bool
    pairs_checked: int
    sigma_failures: list[tuple[int, int]]

    @property
    def ok(self) -> bool:
        return self.psi_ok and self.psi_oracle_ok and not self.sigma_failures


def verify_functor_identities(t: QuandleTable, n: int) -> FunctorReport:
    """Check the power-map identities for ``*_n``.

    Free group: ``psi_word(n)`` reduces to the empty word.  On ``t``:
    ``R_{x *_n y}^n == R_y^-n R_x^n R_y^n`` for every pair.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    w = psi_word(n)
    tn = iterate(t, n)
    rn = [right_translation(t, y) ** n for y in range(t.size)]
    rn_inv = [r.inverse() for r in rn]
    failures = []
    for x in range(t.size):
        for y in range(t.size):
            lhs: Permutation = rn[int(tn.op[x, y])]
            if lhs != rn_inv[y] * rn[x] * rn[y]:
                failures.append((x, y))
    return FunctorReport(n, w, w.is_identity(), psi_word_sympy_is_identity(n), t.size ** 2, failures)
