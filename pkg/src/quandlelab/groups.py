"""Small finite groups as multiplication tables.

These exist to feed the ``Conj`` and ``Core`` quandle constructors, so only a
handful of families is provided.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from pathlib import Path
from typing import Union

import numpy as np

MAX_SYMMETRIC_DEGREE = 5
ASSOCIATIVITY_EXHAUSTIVE = 64


class GroupLawError(ValueError):
    def __init__(self, law: str, witness: tuple[int, ...]):
        super().__init__(f"{law} fails at {witness}")
        self.law = law
        self.witness = witness


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class DihedralGroup:
    """Symmetries of the regular n-gon, order 2n."""
    n: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class GroupFromTable:
    path: Union[str, Path]


GroupSpec = Union[Cyclic, DihedralGroup, Symmetric, GroupFromTable]


@dataclass(frozen=True, eq=False)
class GroupTable:
    mul: np.ndarray
    identity: int
    inv: tuple[int, ...]
    name: str = ""

    @property
    def size(self) -> int:
        return self.mul.shape[0]

    def __repr__(self) -> str:
        return f"GroupTable(name={self.name!r}, size={self.size})"


def parse_group_spec(text: str) -> GroupSpec:
    kind, _, rest = text.strip().partition(":")
    kind = kind.lower()
    if kind == "cyclic":
        return Cyclic(int(rest))
    if kind in ("dihedral", "dihedralgroup"):
        return DihedralGroup(int(rest))
    if kind == "symmetric":
        return Symmetric(int(rest))
    if kind == "table":
        return GroupFromTable(rest)
    raise ValueError(f"unknown group spec {text!r}")


def from_mul(mul, name: str = "", identity: int | None = None) -> GroupTable:
    """Check the group laws on ``mul`` and return the table.

    Raises :class:`GroupLawError` naming the first failed law.
    """
    mul = np.array(mul, dtype=np.int64)
    n = mul.shape[0]
    if mul.shape != (n, n) or n < 1:
        raise ValueError(f"multiplication table must be square, got {mul.shape}")
    if mul.min() < 0 or mul.max() >= n:
        raise ValueError("multiplication table entries out of range")
    ar = np.arange(n)
    if identity is None:
        cands = [e for e in range(n) if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar)]
        if not cands:
            raise GroupLawError("identity", ())
        identity = cands[0]
    for x in range(n):
        if mul[identity, x] != x or mul[x, identity] != x:
            raise GroupLawError("identity", (identity, x))
    inv = []
    for x in range(n):
        hits = np.flatnonzero(mul[x] == identity)
        if len(hits) == 0 or mul[hits[0], x] != identity:
            raise GroupLawError("inverse", (x,))
        inv.append(int(hits[0]))
    if n <= ASSOCIATIVITY_EXHAUSTIVE:
        bad = np.argwhere(mul[mul] != mul[:, mul])
    else:
        rng = np.random.default_rng(0)
        x, y, z = rng.integers(0, n, size=(3, 100_000))
        mask = mul[mul[x, y], z] != mul[x, mul[y, z]]
        bad = np.stack([x[mask], y[mask], z[mask]], axis=1)
    if len(bad):
        raise GroupLawError("associativity", tuple(int(v) for v in bad[0]))
    mul.setflags(write=False)
    return GroupTable(mul, int(identity), tuple(inv), name)


def build_group(spec: GroupSpec) -> GroupTable:
    match spec:
        case Cyclic(n):
            if n < 1:
                raise ValueError(f"cyclic group order must be >= 1, got {n}")
            i = np.arange(n)
            return from_mul((i[:, None] + i[None, :]) % n, f"C{n}", 0)
        case DihedralGroup(n):
            if n < 1:
                raise ValueError(f"dihedral group parameter must be >= 1, got {n}")
            # element k + n*e is r^k s^e
            size = 2 * n
            mul = np.empty((size, size), dtype=np.int64)
            for i in range(size):
                a, e = i % n, i // n
                for j in range(size):
                    b, f = j % n, j // n
                    k = (a + (-b if e else b)) % n
                    mul[i, j] = k + n * ((e + f) % 2)
            return from_mul(mul, f"D{n}", 0)
        case Symmetric(n):
            if not 1 <= n <= MAX_SYMMETRIC_DEGREE:
                raise ValueError(f"symmetric group degree must be in 1..{MAX_SYMMETRIC_DEGREE}, got {n}")
            perms = list(permutations(range(n)))
            index = {p: i for i, p in enumerate(perms)}
            # mul[i][j] is p_i o p_j (p_j applied first)
            mul = [[index[tuple(p[q[k]] for k in range(n))] for q in perms] for p in perms]
            return from_mul(mul, f"S{n}", 0)
        case GroupFromTable(path):
            return load_group(path)
    raise TypeError(f"not a group spec: {spec!r}")


def group_power(g: GroupTable, x: int, m: int) -> int:
    base = x if m >= 0 else g.inv[x]
    out = g.identity
    for _ in range(abs(m)):
        out = int(g.mul[out, base])
    return out


def conjugacy_classes(g: GroupTable) -> list[list[int]]:
    """Orbits of ``x -> y^-1 x y``, each sorted, ordered by least element."""
    seen: set[int] = set()
    classes = []
    for x in range(g.size):
        if x in seen:
            continue
        orbit = sorted({int(g.mul[g.mul[g.inv[y], x], y]) for y in range(g.size)})
        seen.update(orbit)
        classes.append(orbit)
    return classes


def center(g: GroupTable) -> list[int]:
    return [z for z in range(g.size) if np.array_equal(g.mul[z, :], g.mul[:, z])]


def loads_group(text: str, name: str = "group") -> GroupTable:
    from .core import ParseError, _content_lines, parse_header, parse_rows

    lines = list(_content_lines(text))
    identity = None
    kept = []
    for lineno, line in lines:
        if line.startswith("identity"):
            parts = line.split()
            if len(parts) != 2:
                raise ParseError("identity header must be 'identity k'", lineno)
            identity = parts[1]
        else:
            kept.append((lineno, line))
    if identity is None:
        raise ParseError("missing 'identity k' header line", 1)
    n, labels, _names, rows = parse_header(kept)
    mul = parse_rows(rows, n, labels)
    if labels is not None:
        if identity not in labels:
            raise ParseError(f"identity label {identity!r} unknown")
        e = labels[identity]
    else:
        try:
            e = int(identity)
        except ValueError:
            raise ParseError(f"identity {identity!r} is not an integer") from None
        if not 0 <= e < n:
            raise ParseError(f"identity {e} is outside 0..{n - 1}")
    return from_mul(mul, name, e)


def load_group(path: Union[str, Path]) -> GroupTable:
    path = Path(path)
    return loads_group(path.read_text(), path.stem)


def dumps_group(g: GroupTable) -> str:
    rows = [" ".join(str(int(v)) for v in row) for row in g.mul]
    return "\n".join([str(g.size), f"identity {g.identity}", *rows]) + "\n"
