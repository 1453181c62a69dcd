"""Two-parameter data functions over K^d.

``EvZeroGrid`` stores the support bounding box of an eventually-zero
function (extension by zero); ``EvConstGrid`` stores the minimal clamp
window of an eventually-constant function, with extension rule
X[i, j] = data[min(i, M), min(j, N)].

Sizes follow the consecutive-difference characterization: for an
eventually-zero grid the size is the support bounding box; for an
eventually-constant grid it is the stored clamp window minus one per axis
that actually varies (an all-constant grid has size (1, 1), the minimum of
the index poset).  All operators canonicalize on construction, so equality
of canonical forms decides equality of the underlying functions.
"""

from __future__ import annotations

from typing import Callable, List, Optional, Sequence, Tuple

from .scalars import Scalar, ScalarKind

Cell = tuple  # tuple of d scalars
Matrix = Tuple[tuple, ...]  # rows of cells


def _to_cells(kind: ScalarKind, d: int, data) -> Tuple[tuple, ...]:
    rows = []
    width = None
    for row in data:
        cells = []
        for cell in row:
            if not isinstance(cell, (tuple, list)):
                cell = (cell,)
            if len(cell) != d:
                raise ValueError(f"cell {cell!r} does not have {d} components")
            cells.append(tuple(cell))
        if width is None:
            width = len(cells)
        elif len(cells) != width:
            raise ValueError("ragged grid data")
        rows.append(tuple(cells))
    if not rows or width == 0:
        rows = [((kind.zero,) * d,)]
    return tuple(rows)


def _zero_cell(kind: ScalarKind, d: int) -> Cell:
    return (kind.zero,) * d


def _cell_is_zero(kind: ScalarKind, cell: Cell) -> bool:
    return all(kind.is_zero(x) for x in cell)


def _cell_add(kind: ScalarKind, a: Cell, b: Cell) -> Cell:
    return tuple(kind.add(x, y) for x, y in zip(a, b))


def _cell_sub(kind: ScalarKind, a: Cell, b: Cell) -> Cell:
    return tuple(kind.sub(x, y) for x, y in zip(a, b))


class EvZeroGrid:
    """Eventually-zero function; stores the support bounding box."""

    __slots__ = ("kind", "d", "data", "rows", "cols", "_hash")

    def __init__(self, kind: ScalarKind, d: int, data, *, _canonical=False):
        self.kind = kind
        self.d = int(d)
        cells = data if _canonical else self._canonicalize(kind, d, _to_cells(kind, d, data))
        self.data = cells
        self.rows = len(cells)
        self.cols = len(cells[0])
        self._hash = hash((kind.name, self.d, cells))

    @staticmethod
    def _canonicalize(kind, d, cells):
        nz_rows = [i for i, row in enumerate(cells) if not all(_cell_is_zero(kind, c) for c in row)]
        if not nz_rows:
            return ((_zero_cell(kind, d),),)
        last_row = nz_rows[-1]
        nz_cols = [
            j
            for j in range(len(cells[0]))
            if not all(_cell_is_zero(kind, row[j]) for row in cells)
        ]
        last_col = nz_cols[-1]
        return tuple(tuple(row[: last_col + 1]) for row in cells[: last_row + 1])

    def size(self) -> tuple:
        """Support bounding box; (1, 1) for the all-zero grid."""
        return (self.rows, self.cols)

    def at(self, i: int, j: int) -> Cell:
        """1-based access with zero extension."""
        if 1 <= i <= self.rows and 1 <= j <= self.cols:
            return self.data[i - 1][j - 1]
        return _zero_cell(self.kind, self.d)

    def is_zero(self) -> bool:
        return all(_cell_is_zero(self.kind, c) for row in self.data for c in row)

    def component(self, j: int) -> "EvZeroGrid":
        """The j-th channel (1-based) as a d=1 grid."""
        return EvZeroGrid(self.kind, 1, [[(c[j - 1],) for c in row] for row in self.data])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EvZeroGrid)
            and self.kind.name == other.kind.name
            and self.d == other.d
            and self.data == other.data
        )

    def __hash__(self):
        return self._hash

    def __repr__(self) -> str:
        return f"EvZeroGrid({self.kind.name}, d={self.d}, {self.rows}x{self.cols})"


class EvConstGrid:
    """Eventually-constant function; stores the minimal clamp window.

    Eventual constancy means a single value outside a finite box, so the
    last stored row and column must consist of the limit value alone; the
    constructor rejects anything else (such inputs describe functions whose
    variation escapes to infinity along a line, outside this class).
    """

    __slots__ = ("kind", "d", "data", "stored_rows", "stored_cols")

    def __init__(self, kind: ScalarKind, d: int, data, *, _canonical=False):
        self.kind = kind
        self.d = int(d)
        cells = data if _canonical else self._canonicalize(_to_cells(kind, d, data))
        corner = cells[-1][-1]
        if any(c != corner for c in cells[-1]) or any(row[-1] != corner for row in cells):
            raise ValueError(
                "grid is not eventually constant: its boundary row/column varies"
            )
        self.data = cells
        self.stored_rows = len(cells)
        self.stored_cols = len(cells[0])

    @staticmethod
    def _canonicalize(cells):
        rows = list(cells)
        while len(rows) >= 2 and rows[-1] == rows[-2]:
            rows.pop()
        width = len(rows[0])
        while width >= 2 and all(row[width - 1] == row[width - 2] for row in rows):
            width -= 1
        return tuple(tuple(row[:width]) for row in rows)

    def size(self) -> tuple:
        """Consecutive-difference size; (1, 1) for a constant grid."""
        return (max(self.stored_rows - 1, 1), max(self.stored_cols - 1, 1))

    def at(self, i: int, j: int) -> Cell:
        """1-based access with clamp extension."""
        i = min(max(i, 1), self.stored_rows)
        j = min(max(j, 1), self.stored_cols)
        return self.data[i - 1][j - 1]

    def limit(self) -> Cell:
        """The eventual constant value."""
        return self.data[-1][-1]

    def is_constant(self) -> bool:
        first = self.data[0][0]
        return all(c == first for row in self.data for c in row)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, EvConstGrid)
            and self.kind.name == other.kind.name
            and self.d == other.d
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.kind.name, self.d, self.data))

    def __repr__(self) -> str:
        return f"EvConstGrid({self.kind.name}, d={self.d}, stored {self.stored_rows}x{self.stored_cols})"


# -- conversions -----------------------------------------------------------------


def evz_to_evc(z: EvZeroGrid) -> EvConstGrid:
    """Embed an eventually-zero grid as an eventually-constant one by
    padding a zero row and column after the support window."""
    zero = _zero_cell(z.kind, z.d)
    rows = [row + (zero,) for row in z.data]
    rows.append((zero,) * (z.cols + 1))
    return EvConstGrid(z.kind, z.d, rows)


def evc_to_evz(x: EvConstGrid) -> EvZeroGrid:
    """Read an eventually-constant grid as eventually zero; its last stored
    row and column must vanish (they describe all far values)."""
    kind = x.kind
    last_row_zero = all(_cell_is_zero(kind, c) for c in x.data[-1])
    last_col_zero = all(_cell_is_zero(kind, row[-1]) for row in x.data)
    if not (last_row_zero and last_col_zero):
        raise ValueError("grid is not eventually zero")
    if x.stored_rows >= 2 and x.stored_cols >= 2:
        body = [row[:-1] for row in x.data[:-1]]
    else:
        body = [[_zero_cell(kind, x.d)]]
    return EvZeroGrid(kind, x.d, body)


# -- warping and zero insertion ---------------------------------------------------


def warp(axis: int, k: int, x: EvConstGrid) -> EvConstGrid:
    """Duplicate row (axis 1) or column (axis 2) k; identity when k falls in
    the constant part."""
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    if k < 1:
        raise ValueError("position must be >= 1")
    if axis == 1:
        if k >= x.stored_rows:
            return x
        rows = x.data[:k] + (x.data[k - 1],) + x.data[k:]
        return EvConstGrid(x.kind, x.d, rows)
    if k >= x.stored_cols:
        return x
    rows = tuple(row[:k] + (row[k - 1],) + row[k:] for row in x.data)
    return EvConstGrid(x.kind, x.d, rows)


def zero_insert(axis: int, k: int, z: EvZeroGrid) -> EvZeroGrid:
    """Insert an all-zero row (axis 1) or column (axis 2) at position k."""
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    if k < 1:
        raise ValueError("position must be >= 1")
    zero = _zero_cell(z.kind, z.d)
    if axis == 1:
        if k > z.rows:
            return z
        rows = z.data[: k - 1] + ((zero,) * z.cols,) + z.data[k - 1 :]
        return EvZeroGrid(z.kind, z.d, rows)
    if k > z.cols:
        return z
    rows = tuple(row[: k - 1] + (zero,) + row[k - 1 :] for row in z.data)
    return EvZeroGrid(z.kind, z.d, rows)


# -- difference calculus -----------------------------------------------------------


def delta(x: EvConstGrid) -> EvZeroGrid:
    """Forward difference (dX)_{ij} = X_{i+1,j+1} - X_{i+1,j} - X_{i,j+1} + X_{ij}."""
    kind = x.kind
    if not kind.is_ring:
        raise TypeError(f"delta needs subtraction; scalar kind {kind.name!r} is not a ring")
    m, n = x.stored_rows, x.stored_cols
    out = []
    for i in range(1, m + 1):
        row = []
        for j in range(1, n + 1):
            cell = _cell_sub(
                kind,
                _cell_add(kind, x.at(i + 1, j + 1), x.at(i, j)),
                _cell_add(kind, x.at(i + 1, j), x.at(i, j + 1)),
            )
            row.append(cell)
        out.append(row)
    return EvZeroGrid(kind, x.d, out)


def varsigma(z: EvZeroGrid) -> EvZeroGrid:
    """Suffix sums (sZ)_{ij} = sum_{s>=i, t>=j} Z_{st}: the linear right
    inverse of delta; stays eventually zero."""
    kind = z.kind
    m, n = z.rows, z.cols
    acc = [list(row) for row in z.data]
    for i in range(m):
        for j in range(n - 2, -1, -1):
            acc[i][j] = _cell_add(kind, acc[i][j], acc[i][j + 1])
    for j in range(n):
        for i in range(m - 2, -1, -1):
            acc[i][j] = _cell_add(kind, acc[i][j], acc[i + 1][j])
    return EvZeroGrid(kind, z.d, acc)


# -- normal forms -------------------------------------------------------------------


def nf_zero(z: EvZeroGrid) -> EvZeroGrid:
    """Remove every all-zero row and column inside the support window."""
    kind = z.kind
    rows = [row for row in z.data if not all(_cell_is_zero(kind, c) for c in row)]
    if not rows:
        return EvZeroGrid(kind, z.d, [[_zero_cell(kind, z.d)]])
    keep = [
        j for j in range(len(rows[0])) if not all(_cell_is_zero(kind, row[j]) for row in rows)
    ]
    out = [[row[j] for j in keep] for row in rows]
    return EvZeroGrid(kind, z.d, out)


def nf_warp(x: EvConstGrid) -> EvConstGrid:
    """Remove duplicated consecutive rows and columns (keep the first of
    each run): the unique warping normal form."""
    rows = [x.data[0]]
    for row in x.data[1:]:
        if row != rows[-1]:
            rows.append(row)
    width = len(rows[0])
    keep = [0]
    for j in range(1, width):
        if any(row[j] != row[keep[-1]] for row in rows):
            keep.append(j)
    out = [[row[j] for j in keep] for row in rows]
    return EvConstGrid(x.kind, x.d, out)


def nf_const(x: EvConstGrid) -> EvZeroGrid:
    """Normal form modulo constants: varsigma after delta."""
    return varsigma(delta(x))


def nf_sim(x: EvConstGrid) -> EvZeroGrid:
    """Normal form modulo constants or warping."""
    return nf_const(nf_warp(x))


# -- concatenations -----------------------------------------------------------------


def diag_concat(a: EvZeroGrid, b: EvZeroGrid) -> EvZeroGrid:
    """Diagonal concatenation: b shifted by size(a), added to a."""
    if a.kind.name != b.kind.name or a.d != b.d:
        raise ValueError("grids must share scalar kind and dimension")
    kind = a.kind
    ra, ca = a.size()
    rows = ra + b.rows
    cols = ca + b.cols
    zero = _zero_cell(kind, a.d)
    out = [[zero] * cols for _ in range(rows)]
    for i in range(a.rows):
        for j in range(a.cols):
            out[i][j] = a.data[i][j]
    for i in range(b.rows):
        for j in range(b.cols):
            out[ra + i][ca + j] = b.data[i][j]
    return EvZeroGrid(kind, a.d, out)


def box_concat(x: EvConstGrid, y: EvConstGrid) -> EvConstGrid:
    """Concatenation along the diagonal: the constant-free part of x plus y
    warped down-right by size(x)."""
    if x.kind.name != y.kind.name or x.d != y.d:
        raise ValueError("grids must share scalar kind and dimension")
    kind = x.kind
    nfc = nf_const(x)
    r, c = x.size()
    rows = r + y.stored_rows
    cols = c + y.stored_cols
    out = []
    for i in range(1, rows + 1):
        row = []
        for j in range(1, cols + 1):
            lifted = y.at(max(i - r, 1), max(j - c, 1))
            row.append(_cell_add(kind, nfc.at(i, j), lifted))
        out.append(row)
    return EvConstGrid(kind, x.d, out)


# -- window-matrix utilities (cumulative sums, shifts) -------------------------------

# The signature DP works on plain rectangular matrices of scalars inside an
# explicit window, since cumulative sums leave the eventually-zero class.


def cumsum(kind: ScalarKind, axis: int, mat: Sequence[Sequence[Scalar]]) -> list:
    """Prefix sums along axis 1 (rows), 2 (cols), or 0 (both)."""
    if axis == 0:
        return cumsum(kind, 1, cumsum(kind, 2, mat))
    out = [list(row) for row in mat]
    m = len(out)
    n = len(out[0]) if m else 0
    if axis == 1:
        for i in range(1, m):
            for j in range(n):
                out[i][j] = kind.add(out[i][j], out[i - 1][j])
    elif axis == 2:
        for i in range(m):
            for j in range(1, n):
                out[i][j] = kind.add(out[i][j], out[i][j - 1])
    else:
        raise ValueError("axis must be 0, 1 or 2")
    return out


def shift_zero(kind: ScalarKind, axis: int, mat: Sequence[Sequence[Scalar]]) -> list:
    """Shift content by one along the axis, filling with zeros (axis 0 = both)."""
    if axis == 0:
        return shift_zero(kind, 1, shift_zero(kind, 2, mat))
    m = len(mat)
    n = len(mat[0]) if m else 0
    if axis == 1:
        return [[kind.zero] * n] + [list(row) for row in mat[:-1]]
    if axis == 2:
        return [[kind.zero] + list(row[:-1]) for row in mat]
    raise ValueError("axis must be 0, 1 or 2")


# -- text formats --------------------------------------------------------------------


def parse_grid_cells(kind: ScalarKind, d: int, text: str) -> list:
    """Grid CSV: one text row per matrix row, cells comma-separated;
    d > 1 components are colon-joined."""
    rows = []
    for line in text.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        cells = []
        for tok in line.split(","):
            tok = tok.strip()
            if d == 1:
                cells.append((kind.parse(tok),))
            else:
                comps = tok.split(":")
                if len(comps) != d:
                    raise ValueError(f"cell {tok!r} does not have {d} components")
                cells.append(tuple(kind.parse(c) for c in comps))
        rows.append(cells)
    if not rows:
        raise ValueError("empty grid")
    return rows


def format_grid_csv(grid) -> str:
    kind = grid.kind
    lines = []
    for row in grid.data:
        lines.append(",".join(":".join(kind.format(c) for c in cell) for cell in row))
    return "\n".join(lines) + "\n"


def parse_pgm(text: str) -> list:
    """ASCII PGM ("P2"); returns integer rows (d = 1)."""
    tokens = []
    for line in text.splitlines():
        body = line.split("#", 1)[0]
        tokens.extend(body.split())
    if not tokens or tokens[0] != "P2":
        raise ValueError("not an ASCII PGM (P2) file")
    if len(tokens) < 4:
        raise ValueError("truncated PGM header")
    width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    if maxval > 65535:
        raise ValueError("PGM maxval too large")
    values = [int(t) for t in tokens[4:]]
    if len(values) != width * height:
        raise ValueError("PGM pixel count mismatch")
    return [[(values[i * width + j],) for j in range(width)] for i in range(height)]
