"""Shared generators for the test suite (seeded, deterministic)."""

from __future__ import annotations

import random
from functools import lru_cache

from twosig.composition import MatrixComposition, enumerate_compositions
from twosig.grid import EvConstGrid, EvZeroGrid
from twosig.scalars import INT


@lru_cache(maxsize=None)
def comps_of_weight(d: int, w: int) -> tuple:
    return tuple(enumerate_compositions(d, w))


@lru_cache(maxsize=None)
def comps_up_to(d: int, w: int) -> tuple:
    out = []
    for i in range(1, w + 1):
        out.extend(comps_of_weight(d, i))
    return tuple(out)


def random_comp(rng: random.Random, d: int, w_max: int) -> MatrixComposition:
    w = rng.randint(1, w_max)
    return rng.choice(comps_of_weight(d, w))


def random_evz(
    rng: random.Random,
    d: int = 1,
    max_rows: int = 3,
    max_cols: int = 3,
    lo: int = -2,
    hi: int = 3,
    kind=INT,
) -> EvZeroGrid:
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    cells = [
        [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(cols)]
        for _ in range(rows)
    ]
    return EvZeroGrid(kind, d, cells)


def random_evc(
    rng: random.Random,
    d: int = 1,
    max_rows: int = 4,
    max_cols: int = 4,
    lo: int = -2,
    hi: int = 3,
    kind=INT,
) -> EvConstGrid:
    """Arbitrary values inside a finite box, one constant value outside."""
    rows = rng.randint(1, max_rows)
    cols = rng.randint(1, max_cols)
    limit = tuple(rng.randint(lo, hi) for _ in range(d))
    cells = [
        [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(cols)] + [limit]
        for _ in range(rows)
    ]
    cells.append([limit] * (cols + 1))
    return EvConstGrid(kind, d, cells)


def grid_ints(g) -> list:
    """d=1 grid data as plain ints, for readable assertions."""
    return [[cell[0] for cell in row] for row in g.data]
