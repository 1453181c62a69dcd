"""Matrix compositions over the free commutative monoid.

A matrix composition is a rectangular matrix of monoid elements with no
all-epsilon row and no all-epsilon column, plus the distinguished empty
composition ``ec`` (0 x 0).  These index the coefficients of the
two-parameter sums signature.

The module provides the diagonal product ``diag`` with its unique
factorization into connected blocks, the three chaining operations (the
closure of 1x1 blocks under chaining admits linear-time signature
evaluation), and exhaustive enumeration by weight.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from . import monoid
from .monoid import MonoidElement, epsilon, is_epsilon


class InvalidComposition(ValueError):
    """Raised when a candidate matrix violates the no-epsilon-line invariant."""


class MatrixComposition:
    """Immutable matrix of monoid elements without epsilon lines.

    ``entries`` is a tuple of rows; each row a tuple of exponent tuples.
    The empty composition has rows == cols == 0 and entries == ().
    """

    __slots__ = ("d", "entries", "rows", "cols", "_weight", "_hash")

    def __init__(self, d: int, entries: Sequence[Sequence[Sequence[int]]], *, validate: bool = True):
        rows = tuple(tuple(tuple(int(e) for e in cell) for cell in row) for row in entries)
        self.d = int(d)
        self.entries = rows
        self.rows = len(rows)
        self.cols = len(rows[0]) if rows else 0
        if validate:
            self._validate()
        self._weight = sum(sum(cell) for row in rows for cell in row)
        self._hash = hash((self.d, rows))

    def _validate(self) -> None:
        if self.d < 1:
            raise InvalidComposition("dimension d must be >= 1")
        if self.rows == 0:
            return  # ec
        if any(len(row) != self.cols for row in self.entries):
            raise InvalidComposition("ragged rows")
        if self.cols == 0:
            raise InvalidComposition("rows=0 iff cols=0: empty rows are not allowed")
        for row in self.entries:
            for cell in row:
                if len(cell) != self.d:
                    raise InvalidComposition(f"cell {cell!r} does not have {self.d} exponents")
                if any(e < 0 for e in cell):
                    raise InvalidComposition(f"negative exponent in {cell!r}")
        for i, row in enumerate(self.entries):
            if all(is_epsilon(c) for c in row):
                raise InvalidComposition(f"row {i + 1} is all epsilon")
        for j in range(self.cols):
            if all(is_epsilon(row[j]) for row in self.entries):
                raise InvalidComposition(f"column {j + 1} is all epsilon")

    # -- basic protocol ----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return self.rows == 0

    @property
    def weight(self) -> int:
        return self._weight

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, MatrixComposition)
            and self.d == other.d
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        """Canonical total order: (weight, rows, cols, row-major entries)."""
        return (self._weight, self.rows, self.cols, self.entries)

    def __lt__(self, other) -> bool:
        return self.sort_key() < other.sort_key()

    def __repr__(self) -> str:
        if self.is_empty:
            return "ec"
        body = "; ".join(
            " ".join(monoid.format_element(c) for c in row) for row in self.entries
        )
        return f"[{body}]"

    # -- JSON forms ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "d": self.d,
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[list(cell) for cell in row] for row in self.entries],
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "MatrixComposition":
        d = obj["d"]
        entries = obj.get("entries", [])
        comp = cls(d, entries)
        if comp.rows != obj.get("rows", comp.rows) or comp.cols != obj.get("cols", comp.cols):
            raise InvalidComposition("declared shape does not match entries")
        return comp

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "MatrixComposition":
        return cls.from_json_dict(json.loads(text))


def ec(d: int) -> MatrixComposition:
    """The empty composition (unit of diag and of the quasi-shuffle)."""
    return MatrixComposition(d, ())


def from_int_matrix(d: int, weights: Sequence[Sequence[int]]) -> MatrixComposition:
    """Build a d=1-style composition from plain integer entries.

    For d == 1 the integer is the exponent itself; for d > 1 the integers
    are read as single-letter multiplicities of letter 1 (mostly a test
    convenience -- general entries should be given as exponent vectors).
    """
    entries = [[(w,) + (0,) * (d - 1) for w in row] for row in weights]
    return MatrixComposition(d, entries)


# -- diag and connectedness ---------------------------------------------------


def diag(a: MatrixComposition, b: MatrixComposition, *more: MatrixComposition) -> MatrixComposition:
    """Block matrix with a top-left and b bottom-right, epsilon elsewhere."""
    if more:
        return diag(diag(a, b), more[0], *more[1:])
    if a.d != b.d:
        raise ValueError("dimension mismatch")
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    d = a.d
    eps = epsilon(d)
    top = [row + (eps,) * b.cols for row in a.entries]
    bottom = [(eps,) * a.cols + row for row in b.entries]
    return MatrixComposition(d, top + bottom, validate=False)


def diag_all(d: int, blocks: Sequence[MatrixComposition]) -> MatrixComposition:
    out = ec(d)
    for b in blocks:
        out = diag(out, b)
    return out


def _split_rows(a: MatrixComposition) -> list:
    """Row indices u (1-based) after which a block-diagonal cut exists."""
    if a.rows == 0:
        return []
    maxc = []
    minc = []
    for row in a.entries:
        nz = [j for j, cell in enumerate(row) if not is_epsilon(cell)]
        maxc.append(max(nz))
        minc.append(min(nz))
    cuts = []
    pref = -1
    # suffix minima of minc
    suff = [0] * (a.rows + 1)
    suff[a.rows] = a.cols  # sentinel
    for i in range(a.rows - 1, -1, -1):
        suff[i] = min(minc[i], suff[i + 1])
    for u in range(a.rows - 1):
        pref = max(pref, maxc[u])
        if pref < suff[u + 1]:
            cuts.append(u + 1)
    return cuts


def connected_factorization(a: MatrixComposition) -> list:
    """The unique list of connected blocks v with diag(*v) == a; [] for ec."""
    if a.is_empty:
        return []
    cuts = _split_rows(a)
    if not cuts:
        return [a]
    blocks = []
    row_bounds = [0] + cuts + [a.rows]
    col_start = 0
    for lo, hi in zip(row_bounds, row_bounds[1:]):
        sub_rows = a.entries[lo:hi]
        width = 1 + max(
            j for row in sub_rows for j, cell in enumerate(row) if not is_epsilon(cell)
        )
        block = [row[col_start:width] for row in sub_rows]
        blocks.append(MatrixComposition(a.d, block, validate=False))
        col_start = width
    return blocks


def is_connected(a: MatrixComposition) -> bool:
    """No non-trivial block-diagonal split; ec itself is not connected."""
    return not a.is_empty and not _split_rows(a)


def weight(a: MatrixComposition) -> int:
    return a.weight


# -- chaining operations ------------------------------------------------------


def chain(axis: int, a: MatrixComposition, b: MatrixComposition) -> MatrixComposition:
    """Chaining: axis 0 is diag; axis 1 overlaps the last row of a with the
    first row of b; axis 2 overlaps columns analogously."""
    if axis not in (0, 1, 2):
        raise ValueError("axis must be 0, 1 or 2")
    if a.d != b.d:
        raise ValueError("dimension mismatch")
    if a.is_empty:
        return b
    if b.is_empty:
        return a
    if axis == 0:
        return diag(a, b)
    d = a.d
    eps = epsilon(d)
    if axis == 1:
        out = []
        for row in a.entries[:-1]:
            out.append(row + (eps,) * b.cols)
        out.append(a.entries[-1] + b.entries[0])
        for row in b.entries[1:]:
            out.append((eps,) * a.cols + row)
        return MatrixComposition(d, out, validate=False)
    # axis == 2: the transposed picture; column a.cols is shared
    out = []
    for row in a.entries:
        out.append(row + (eps,) * (b.cols - 1))
    for row in b.entries:
        out.append((eps,) * (a.cols - 1) + row)
    return MatrixComposition(d, out, validate=False)


@dataclass(frozen=True)
class ChainedComposition:
    """A composition described as a chain of 1x1 blocks.

    ``head`` is the first block's monoid element (non-epsilon); ``steps`` is
    a sequence of (axis, element) pairs applied left to right.  These are
    exactly the compositions whose signature coefficients admit the
    linear-time evaluation.
    """

    d: int
    head: MonoidElement
    steps: tuple

    def __post_init__(self):
        if is_epsilon(self.head):
            raise InvalidComposition("chain head must be non-epsilon")
        for axis, lam in self.steps:
            if axis not in (0, 1, 2):
                raise InvalidComposition(f"bad chain axis {axis!r}")
            if is_epsilon(lam):
                raise InvalidComposition("chain letters must be non-epsilon")

    def materialize(self) -> MatrixComposition:
        out = MatrixComposition(self.d, ((self.head,),), validate=False)
        for axis, lam in self.steps:
            out = chain(axis, out, MatrixComposition(self.d, ((lam,),), validate=False))
        return out

    def __len__(self) -> int:
        return 1 + len(self.steps)


def parse_chained(a: MatrixComposition) -> Optional[ChainedComposition]:
    """Greedy parse of a composition into a chain of 1x1 blocks.

    The non-epsilon cells of a chained composition form a monotone staircase
    from (1,1) to (rows, cols) with steps right, down, or diagonally
    down-right.  Returns None when a is not of this shape (including ec).
    """
    if a.is_empty:
        return None
    cells = [
        (i, j)
        for i, row in enumerate(a.entries)
        for j, cell in enumerate(row)
        if not is_epsilon(cell)
    ]
    cells.sort()
    if cells[0] != (0, 0) or cells[-1] != (a.rows - 1, a.cols - 1):
        return None
    steps = []
    for (pi, pj), (i, j) in zip(cells, cells[1:]):
        di, dj = i - pi, j - pj
        if (di, dj) == (1, 1):
            steps.append((0, a.entries[i][j]))
        elif (di, dj) == (0, 1):
            steps.append((1, a.entries[i][j]))
        elif (di, dj) == (1, 0):
            steps.append((2, a.entries[i][j]))
        else:
            return None
    return ChainedComposition(a.d, a.entries[0][0], tuple(steps))


# -- enumeration ---------------------------------------------------------------


def _monoid_elements_of_weight(d: int, w: int) -> list:
    """All exponent vectors of total weight w, lexicographically sorted."""
    if d == 1:
        return [(w,)]
    out = []
    for first in range(w, -1, -1):
        for rest in _monoid_elements_of_weight(d - 1, w - first):
            out.append((first,) + rest)
    return sorted(out)


def _fillings(d: int, cells: int, w: int):
    """Yield all tuples of `cells` monoid elements with total weight w."""
    if cells == 0:
        if w == 0:
            yield ()
        return
    if cells == 1:
        for m in _monoid_elements_of_weight(d, w):
            yield (m,)
        return
    for first_w in range(w + 1):
        for m in _monoid_elements_of_weight(d, first_w):
            for rest in _fillings(d, cells - 1, w - first_w):
                yield (m,) + rest


def enumerate_compositions(d: int, w: int) -> Iterator[MatrixComposition]:
    """Every matrix composition over M_d of weight exactly w, once each,
    in the canonical (weight, rows, cols, entries) order.

    Each of the r rows and c columns needs weight >= 1, so shapes are
    bounded by r, c <= w.
    """
    if w < 1:
        raise ValueError("weight must be >= 1")
    for r in range(1, w + 1):
        for c in range(1, w + 1):
            if r * c < max(r, c):  # unreachable; shapes are always fine
                continue
            batch = []
            for flat in _fillings(d, r * c, w):
                rows = tuple(flat[i * c : (i + 1) * c] for i in range(r))
                if any(all(is_epsilon(x) for x in row) for row in rows):
                    continue
                if any(all(is_epsilon(rows[i][j]) for i in range(r)) for j in range(c)):
                    continue
                batch.append(MatrixComposition(d, rows, validate=False))
            batch.sort(key=MatrixComposition.sort_key)
            yield from batch


def compositions_up_to_weight(d: int, w_max: int) -> list:
    """[ec] + all compositions of weight 1..w_max, canonical order."""
    out = [ec(d)]
    for w in range(1, w_max + 1):
        out.extend(enumerate_compositions(d, w))
    return out


def transpose(a: MatrixComposition) -> MatrixComposition:
    if a.is_empty:
        return a
    cols = tuple(tuple(a.entries[i][j] for i in range(a.rows)) for j in range(a.cols))
    return MatrixComposition(a.d, cols, validate=False)
