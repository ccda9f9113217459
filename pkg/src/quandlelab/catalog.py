"""The fixed collection of small quandles used by the property checks."""
from __future__ import annotations

from functools import lru_cache

from .core import Conj, Core, Dihedral, QuandleTable, build, iterate
from .groups import Cyclic, DihedralGroup, Symmetric

MAX_ITERATE = 4


@lru_cache(maxsize=None)
def base_catalog() -> tuple[QuandleTable, ...]:
    out = [build(Dihedral(n)) for n in range(1, 25)]
    for n in range(1, 13):
        out.append(build(Conj(Cyclic(n))))
        out.append(build(Core(Cyclic(n))))
    for n in range(1, 7):
        out.append(build(Conj(DihedralGroup(n))))
        out.append(build(Core(DihedralGroup(n))))
    for n in (3, 4):
        out.append(build(Conj(Symmetric(n))))
        out.append(build(Core(Symmetric(n))))
    return tuple(out)


@lru_cache(maxsize=None)
def catalog(max_iterate: int = MAX_ITERATE) -> tuple[QuandleTable, ...]:
    """Base quandles followed by their iterates ``Q_n`` for ``2 <= n <= max_iterate``."""
    base = base_catalog()
    iterates = [iterate(t, n) for n in range(2, max_iterate + 1) for t in base]
    return base + tuple(iterates)
