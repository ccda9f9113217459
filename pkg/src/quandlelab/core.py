"""Finite quandles as operation tables.

Elements are the indices ``0..n-1``; ``op[x, y]`` holds ``x * y``.  Every
table is validated on construction through :func:`build`, and tables are
read-only numpy arrays so they can be shared freely.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from pathlib import Path
from typing import Iterator, Sequence, Union

import numpy as np

from .groups import GroupSpec, GroupTable, build_group, group_power

MAX_WITNESSES = 16
EXHAUSTIVE_LIMIT = 64
SAMPLED_TRIPLES = 100_000


class StructureError(ValueError):
    """Table has the wrong shape or entries outside ``0..n-1``."""


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class Permutation:
    """Bijection of ``0..n-1`` stored by its image list.

    Products act on the right: ``(p * q)(x) == q(p(x))``, so ``p * q`` means
    "apply p, then q".  This is the convention in which the inner
    automorphisms satisfy ``R[x*y] == R[y]**-1 * R[x] * R[y]``.
    """

    __slots__ = ("image",)

    def __init__(self, image: Sequence[int]):
        image = tuple(int(i) for i in image)
        if sorted(image) != list(range(len(image))):
            raise ValueError(f"{image} is not a permutation")
        self.image = image

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    def __len__(self) -> int:
        return len(self.image)

    def __call__(self, x: int) -> int:
        return self.image[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation([other.image[i] for i in self.image])

    def __pow__(self, k: int) -> "Permutation":
        base = self if k >= 0 else self.inverse()
        out = Permutation.identity(len(self))
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.image == other.image

    def __hash__(self) -> int:
        return hash(self.image)

    def __repr__(self) -> str:
        return f"Permutation({list(self.image)})"

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.image)
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(inv)

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles including fixed points, each starting at its least element."""
        seen = [False] * len(self.image)
        out = []
        for start in range(len(self.image)):
            if seen[start]:
                continue
            cyc = []
            x = start
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.image[x]
            out.append(tuple(cyc))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted(len(c) for c in self.cycles()))

    def order(self) -> int:
        return reduce(math.lcm, self.cycle_type(), 1)

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.image) if i == j]

    def cycle_string(self) -> str:
        return "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())


@dataclass(frozen=True, eq=False)
class QuandleTable:
    op: np.ndarray
    name: str = ""
    labels: tuple[str, ...] | None = field(default=None)

    def __post_init__(self):
        arr = np.array(self.op, dtype=np.int64, copy=True)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
            raise StructureError(f"operation table must be a non-empty square array, got shape {arr.shape}")
        n = arr.shape[0]
        bad = np.argwhere((arr < 0) | (arr >= n))
        if len(bad):
            x, y = bad[0]
            raise StructureError(f"entry op[{x}][{y}] = {arr[x, y]} is outside 0..{n - 1}")
        arr.setflags(write=False)
        object.__setattr__(self, "op", arr)

    @property
    def size(self) -> int:
        return self.op.shape[0]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, QuandleTable) and np.array_equal(self.op, other.op)

    def __hash__(self) -> int:
        return hash(self.op.tobytes())

    def __repr__(self) -> str:
        return f"QuandleTable(name={self.name!r}, size={self.size})"

    def __call__(self, x: int, y: int) -> int:
        return int(self.op[x, y])

    def renamed(self, name: str) -> "QuandleTable":
        return QuandleTable(self.op, name, self.labels)


# -- specs ---------------------------------------------------------------

@dataclass(frozen=True)
class Trivial:
    n: int


@dataclass(frozen=True)
class Dihedral:
    n: int


@dataclass(frozen=True)
class Conj:
    group: GroupSpec
    exponent: int = 1


@dataclass(frozen=True)
class Core:
    group: GroupSpec


@dataclass(frozen=True)
class FromTable:
    path: Union[str, Path]


QuandleSpec = Union[Trivial, Dihedral, Conj, Core, FromTable]


def parse_spec(text: str) -> QuandleSpec:
    """Parse the CLI spelling of a quandle spec.

    ``trivial:4``, ``dihedral:3``, ``conj:symmetric:3``, ``conj:cyclic:5@-2``,
    ``core:dihedral:4``, ``table:path/to/file``.  Inside ``conj``/``core``
    the group part is a group spec, so ``dihedral:N`` there is the dihedral
    group of order 2N.
    """
    from .groups import parse_group_spec

    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "trivial":
            return Trivial(int(rest))
        if kind == "dihedral":
            return Dihedral(int(rest))
        if kind == "conj":
            group, _, exp = rest.partition("@")
            return Conj(parse_group_spec(group), int(exp) if exp else 1)
        if kind == "core":
            return Core(parse_group_spec(rest))
        if kind == "table":
            return FromTable(rest)
    except ValueError as exc:
        raise ValueError(f"bad quandle spec {text!r}: {exc}") from None
    raise ValueError(f"unknown quandle spec {text!r}")


def build(spec: QuandleSpec) -> QuandleTable:
    match spec:
        case Trivial(n):
            _require_positive(n)
            op = np.repeat(np.arange(n)[:, None], n, axis=1)
            table = QuandleTable(op, f"Trivial({n})")
        case Dihedral(n):
            _require_positive(n)
            i = np.arange(n)
            table = QuandleTable((2 * i[None, :] - i[:, None]) % n, f"R{n}")
        case Conj(group, m):
            g = build_group(group) if not isinstance(group, GroupTable) else group
            table = conj_table(g, m)
        case Core(group):
            g = build_group(group) if not isinstance(group, GroupTable) else group
            table = core_table(g)
        case FromTable(path):
            table = load_table(path)
        case _:
            raise TypeError(f"not a quandle spec: {spec!r}")
    report = validate(table)
    if not report.ok:
        raise ValueError(f"{table.name} is not a quandle: {report}")
    return table


def _require_positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"size must be >= 1, got {n}")


def conj_table(g: GroupTable, m: int = 1) -> QuandleTable:
    """``x * y = y^-m x y^m``."""
    n = g.size
    op = np.empty((n, n), dtype=np.int64)
    for y in range(n):
        ym = group_power(g, y, m)
        ym_inv = g.inv[ym]
        for x in range(n):
            op[x, y] = g.mul[g.mul[ym_inv, x], ym]
    suffix = "" if m == 1 else f"_{m}"
    return QuandleTable(op, f"Conj{suffix}({g.name})")


def core_table(g: GroupTable) -> QuandleTable:
    """``x * y = y x^-1 y``."""
    n = g.size
    op = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        xi = g.inv[x]
        for y in range(n):
            op[x, y] = g.mul[g.mul[y, xi], y]
    return QuandleTable(op, f"Core({g.name})")


# -- axioms --------------------------------------------------------------

@dataclass
class AxiomReport:
    q1: list[tuple[int, ...]] = field(default_factory=list)
    q2: list[tuple[int, ...]] = field(default_factory=list)
    q3: list[tuple[int, ...]] = field(default_factory=list)
    exhaustive: bool = True

    @property
    def ok(self) -> bool:
        return not (self.q1 or self.q2 or self.q3)

    def violations(self) -> dict[str, list[tuple[int, ...]]]:
        return {k: v for k, v in (("Q1", self.q1), ("Q2", self.q2), ("Q3", self.q3)) if v}

    def __str__(self) -> str:
        if self.ok:
            return "all axioms hold"
        return "; ".join(f"{k} violated at {v}" for k, v in self.violations().items())


def validate(t: QuandleTable, seed: int = 0) -> AxiomReport:
    """Check the three quandle axioms.

    Q1 witnesses are ``(x,)``; Q2 witnesses are ``(x1, x2, y)`` with
    ``x1*y == x2*y``; Q3 witnesses are ``(x, y, z)``.  Q3 is checked on
    every triple up to size 64 and on seeded random triples above that.
    """
    op = t.op
    n = t.size
    report = AxiomReport()
    diag = np.flatnonzero(op[np.arange(n), np.arange(n)] != np.arange(n))
    report.q1 = [(int(x),) for x in diag[:MAX_WITNESSES]]

    for y in range(n):
        col = op[:, y]
        if len(np.unique(col)) == n:
            continue
        first: dict[int, int] = {}
        for x, v in enumerate(col.tolist()):
            if v in first:
                report.q2.append((first[v], x, y))
                break
            first[v] = x
        if len(report.q2) >= MAX_WITNESSES:
            break

    if n <= EXHAUSTIVE_LIMIT:
        lhs = op[op]  # [x, y, z] -> (x*y)*z
        rhs = op[op[:, None, :], op[None, :, :]]  # (x*z)*(y*z)
        bad = np.argwhere(lhs != rhs)[:MAX_WITNESSES]
    else:
        report.exhaustive = False
        rng = np.random.default_rng(seed)
        x, y, z = rng.integers(0, n, size=(3, SAMPLED_TRIPLES))
        mask = op[op[x, y], z] != op[op[x, z], op[y, z]]
        bad = np.stack([x[mask], y[mask], z[mask]], axis=1)
        bad = np.unique(bad, axis=0)[:MAX_WITNESSES]
    report.q3 = [tuple(int(v) for v in row) for row in bad]
    return report


# -- derived operations --------------------------------------------------

def dual(t: QuandleTable) -> QuandleTable:
    """Table of ``x *^-1 y``, the inverse of each right translation."""
    n = t.size
    cols = np.broadcast_to(np.arange(n), (n, n))
    d = np.empty_like(t.op)
    d[t.op, cols] = np.arange(n)[:, None]
    return QuandleTable(d, f"dual({t.name})")


def iterate(t: QuandleTable, n: int) -> QuandleTable:
    """``x *_n y``: apply ``* y`` n times.  Naive column composition."""
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    size = t.size
    cols = np.broadcast_to(np.arange(size), (size, size))
    res = np.broadcast_to(np.arange(size)[:, None], (size, size))
    for _ in range(n):
        res = t.op[res, cols]
    name = t.name if n == 1 else f"Q{n}({t.name})"
    return QuandleTable(res, name)


def iterate_fast(t: QuandleTable, n: int) -> QuandleTable:
    """Same as :func:`iterate` by square-and-multiply on the columns."""
    if n < 1:
        raise ValueError(f"iteration count must be >= 1, got {n}")
    size = t.size
    cols = np.broadcast_to(np.arange(size), (size, size))
    power = t.op
    res = np.broadcast_to(np.arange(size)[:, None], (size, size))
    k = n
    while k:
        if k & 1:
            res = power[res, cols]
        power = power[power, cols]
        k >>= 1
    return QuandleTable(res, t.name if n == 1 else f"Q{n}({t.name})")


def right_translation(t: QuandleTable, y: int) -> Permutation:
    return Permutation(t.op[:, y])


def left_translation(t: QuandleTable, x: int) -> tuple[int, ...]:
    return tuple(int(v) for v in t.op[x, :])


def translations(t: QuandleTable, y: int) -> tuple[Permutation, tuple[int, ...]]:
    if not 0 <= y < t.size:
        raise IndexError(f"element {y} out of range for size {t.size}")
    return right_translation(t, y), left_translation(t, y)


def is_trivial(t: QuandleTable) -> bool:
    return bool(np.all(t.op == np.arange(t.size)[:, None]))


# -- file format ---------------------------------------------------------

def _content_lines(text: str) -> Iterator[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def parse_rows(lines: list[tuple[int, str]], n: int, labels: dict[str, int] | None) -> np.ndarray:
    if len(lines) != n:
        last = lines[-1][0] if lines else 1
        raise ParseError(f"expected {n} table rows, found {len(lines)}", last)
    op = np.empty((n, n), dtype=np.int64)
    for r, (lineno, line) in enumerate(lines):
        tokens = line.split()
        if len(tokens) != n:
            raise ParseError(f"row {r} has {len(tokens)} entries, expected {n}", lineno)
        for c, tok in enumerate(tokens):
            if labels is not None:
                if tok not in labels:
                    raise ParseError(f"unknown label {tok!r}", lineno, c + 1)
                op[r, c] = labels[tok]
                continue
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(f"entry {tok!r} is not an integer", lineno, c + 1) from None
            if not 0 <= v < n:
                raise ParseError(f"entry {v} is outside 0..{n - 1}", lineno, c + 1)
            op[r, c] = v
    return op


def parse_header(lines: list[tuple[int, str]]) -> tuple[int, dict[str, int] | None, tuple[str, ...] | None, list]:
    if not lines:
        raise ParseError("empty table file", 1)
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"first line must be the size, got {first!r}", lineno) from None
    if n < 1:
        raise ParseError(f"size must be >= 1, got {n}", lineno)
    rest = lines[1:]
    labels = names = None
    if rest and rest[0][1].startswith("labels"):
        lno, line = rest[0]
        names = tuple(line.split()[1:])
        if len(names) != n or len(set(names)) != n:
            raise ParseError(f"labels line must list {n} distinct labels", lno)
        labels = {name: i for i, name in enumerate(names)}
        rest = rest[1:]
    return n, labels, names, rest


def loads_table(text: str, name: str = "table") -> QuandleTable:
    """Parse the table format: size line, optional ``labels`` line, then rows."""
    lines = list(_content_lines(text))
    n, labels, names, rows = parse_header(lines)
    return QuandleTable(parse_rows(rows, n, labels), name, names)


def load_table(path: Union[str, Path]) -> QuandleTable:
    path = Path(path)
    return loads_table(path.read_text(), path.stem)


def dumps_table(t: QuandleTable) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in t.op]
    return "\n".join([str(t.size), *rows]) + "\n"


def save_table(t: QuandleTable, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_table(t))
