"""Two-parameter sums signature coefficients and the warping invariants.

Four evaluation strategies compute the same coefficient:

* naive         -- the defining sum over pairs of strictly increasing index
                   chains (always applicable, exponential, guarded);
* chained DP    -- linear-time recursion for compositions that parse as a
                   chain of 1x1 blocks;
* 2x2           -- a quadratic reordering with inner prefix sums for full
                   2x2 compositions;
* Boolean matmul-- the all-ones 2x2 coefficient over the Boolean semiring
                   via Z Z^T.

The chained recursion maintains the corner-pinned coefficient matrix
F[u][v] = (sum over chains whose last row index is u and last column index
is v); each chaining step is an elementwise product with the evaluated data
after a shifted cumulative sum along the step's axis, and the final answer
is the double cumulative sum of F.  The formula is certified against the
naive oracle in the tests.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from . import grid as gridmod
from .algebra import LinComb, coproduct, format_coeff
from .composition import (
    ChainedComposition,
    MatrixComposition,
    compositions_up_to_weight,
    ec,
    parse_chained,
)
from .grid import EvConstGrid, EvZeroGrid, cumsum, delta, nf_sim, shift_zero
from .monoid import evaluate, is_epsilon
from .scalars import BOOL, Scalar, ScalarKind

DEFAULT_GUARD = 10_000_000


class GuardExceeded(RuntimeError):
    """Naive evaluation would exceed the configured work bound."""


def naive_guard() -> int:
    value = os.environ.get("TWOSIG_GUARD")
    if value:
        return int(value)
    return DEFAULT_GUARD


@dataclass(frozen=True)
class SignatureWindow:
    """Half-open summation bounds: chains live in (lower, upper]."""

    lower: tuple = (0, 0)
    upper: tuple = None  # None = full support window

    def resolved(self, z: EvZeroGrid) -> tuple:
        upper = self.upper if self.upper is not None else z.size()
        lo, up = tuple(self.lower), tuple(upper)
        if not (0 <= lo[0] <= up[0] and 0 <= lo[1] <= up[1]):
            raise ValueError(f"bad window {lo} .. {up}")
        return lo, up


FULL_WINDOW = SignatureWindow()


def _eval_matrix(z: EvZeroGrid, mel, rows: range, cols: range) -> list:
    kind = z.kind
    return [[evaluate(kind, z.at(i, j), mel) for j in cols] for i in rows]


@lru_cache(maxsize=4096)
def _eval_matrix_cached(z: EvZeroGrid, mel, r1: int, r2: int) -> tuple:
    return tuple(
        tuple(row) for row in _eval_matrix(z, mel, range(1, r1 + 1), range(1, r2 + 1))
    )


def ss_coeff_naive(
    z: EvZeroGrid,
    a: MatrixComposition,
    window: SignatureWindow = FULL_WINDOW,
    guard: Optional[int] = None,
) -> Scalar:
    """Defining sum: over chains l1 < i_1 < ... < i_m <= r1 and
    l2 < k_1 < ... < k_n <= r2, the product of entrywise evaluations."""
    kind = z.kind
    if a.is_empty:
        return kind.one
    if z.d != a.d:
        raise ValueError("grid and composition dimension mismatch")
    (l1, l2), (r1, r2) = window.resolved(z)
    m, n = a.rows, a.cols
    if r1 - l1 < m or r2 - l2 < n:
        return kind.zero
    limit = guard if guard is not None else naive_guard()
    work = math.comb(r1 - l1, m) * math.comb(r2 - l2, n) * m * n
    if work > limit:
        raise GuardExceeded(
            f"naive evaluation needs ~{work} products, guard is {limit} "
            "(set TWOSIG_GUARD to override)"
        )
    row_range = range(l1 + 1, r1 + 1)
    col_range = range(l2 + 1, r2 + 1)
    anchored = (l1, l2) == (0, 0)
    values: Dict[tuple, list] = {}
    for row in a.entries:
        for mel in row:
            if mel not in values:
                if anchored:
                    values[mel] = _eval_matrix_cached(z, mel, r1, r2)
                else:
                    values[mel] = _eval_matrix(z, mel, row_range, col_range)
    from itertools import combinations

    total = kind.zero
    rows_idx = range(r1 - l1)
    cols_idx = range(r2 - l2)
    for iota in combinations(rows_idx, m):
        for kappa in combinations(cols_idx, n):
            prod = kind.one
            dead = False
            for s in range(m):
                for t in range(n):
                    mel = a.entries[s][t]
                    if is_epsilon(mel):
                        continue
                    prod = kind.mul(prod, values[mel][iota[s]][kappa[t]])
                    if kind.is_zero(prod):
                        dead = True
                        break
                if dead:
                    break
            if not dead:
                total = kind.add(total, prod)
    return total


# -- chained dynamic programming ---------------------------------------------------


def ss_matrix_chained(z: EvZeroGrid, c: ChainedComposition) -> list:
    """Full coefficient matrix r -> <SS_{0;r}(Z), materialize(c)> for
    r <= size(Z), in O(len(c) * rows * cols) scalar operations."""
    kind = z.kind
    if z.d != c.d:
        raise ValueError("grid and composition dimension mismatch")
    r1, r2 = z.size()
    f = _eval_matrix_cached(z, c.head, r1, r2)
    for axis, lam in c.steps:
        if axis == 0:
            g = shift_zero(kind, 0, cumsum(kind, 0, f))
        elif axis == 1:
            # same last row, new column: accumulate over earlier columns
            g = shift_zero(kind, 2, cumsum(kind, 2, f))
        else:
            g = shift_zero(kind, 1, cumsum(kind, 1, f))
        zl = _eval_matrix_cached(z, lam, r1, r2)
        f = [[kind.mul(zl[i][j], g[i][j]) for j in range(r2)] for i in range(r1)]
    return cumsum(kind, 0, f)


def ss_2x2(z: EvZeroGrid, a: MatrixComposition) -> list:
    """Full coefficient matrix for a 2x2 composition in O(rows^2 * cols)."""
    kind = z.kind
    if a.shape != (2, 2):
        raise ValueError("composition is not 2x2")
    if z.d != a.d:
        raise ValueError("grid and composition dimension mismatch")
    r1, r2 = z.size()
    v11 = _eval_matrix_cached(z, a.entries[0][0], r1, r2)
    v12 = _eval_matrix_cached(z, a.entries[0][1], r1, r2)
    v21 = _eval_matrix_cached(z, a.entries[1][0], r1, r2)
    v22 = _eval_matrix_cached(z, a.entries[1][1], r1, r2)
    contrib = [[kind.zero] * r2 for _ in range(r1)]
    for i2 in range(1, r1):  # 0-based second row index
        for i1 in range(i2):
            pref = kind.zero  # sum over k1 < k2 of v11[i1][k1] * v21[i2][k1]
            for k2 in range(r2):
                if k2 > 0:
                    term = kind.mul(v22[i2][k2], kind.mul(v12[i1][k2], pref))
                    contrib[i2][k2] = kind.add(contrib[i2][k2], term)
                pref = kind.add(pref, kind.mul(v11[i1][k2], v21[i2][k2]))
    return cumsum(kind, 0, contrib)


def ss_bool_allones_2x2(z: EvZeroGrid) -> bool:
    """<SS(Z), [[1,1],[1,1]]> over the Boolean semiring: true iff Z Z^T has
    an off-diagonal entry >= 2, i.e. two rows share two columns."""
    if z.kind.name != BOOL.name:
        raise ValueError("Boolean path needs the Boolean scalar kind")
    masks = []
    for row in z.data:
        bits = 0
        for j, cell in enumerate(row):
            if cell[0]:
                bits |= 1 << j
        masks.append(bits)
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if (masks[i] & masks[j]).bit_count() >= 2:
                return True
    return False


# -- strategy dispatch --------------------------------------------------------------


def _is_bool_allones(a: MatrixComposition) -> bool:
    return a.shape == (2, 2) and all(
        sum(cell) == 1 for row in a.entries for cell in row
    ) and a.d == 1


def ss_coeff(
    z: EvZeroGrid,
    a: MatrixComposition,
    window: SignatureWindow = FULL_WINDOW,
    strategy: str = "auto",
    guard: Optional[int] = None,
) -> Scalar:
    """Signature coefficient via the requested strategy ("auto" picks the
    fastest applicable one; all strategies agree exactly)."""
    kind = z.kind
    if a.is_empty:
        return kind.one
    (l1, l2), (r1, r2) = window.resolved(z)
    if r1 - l1 < a.rows or r2 - l2 < a.cols:
        return kind.zero
    full = (l1, l2) == (0, 0)
    size = z.size()
    if strategy == "naive":
        return ss_coeff_naive(z, a, window, guard)
    if strategy == "chained":
        chained = parse_chained(a)
        if chained is None:
            raise ValueError("composition is not chained")
        if not (full and (r1, r2) <= size):
            raise ValueError("chained path only covers windows 0 < r <= size(Z)")
        return ss_matrix_chained(z, chained)[r1 - 1][r2 - 1]
    if strategy == "2x2":
        if not (full and (r1, r2) <= size):
            raise ValueError("2x2 path only covers windows 0 < r <= size(Z)")
        return ss_2x2(z, a)[r1 - 1][r2 - 1]
    if strategy == "bool":
        if not (_is_bool_allones(a) and full and (r1, r2) == size):
            raise ValueError("Boolean path needs the all-ones 2x2 composition, full window")
        return ss_bool_allones_2x2(z)
    if strategy != "auto":
        raise ValueError(f"unknown strategy {strategy!r}")
    if full:
        # entries beyond the support contribute zero products, so the upper
        # bound may be clamped to the support window
        rr1, rr2 = min(r1, size[0]), min(r2, size[1])
        if kind.name == BOOL.name and _is_bool_allones(a) and (rr1, rr2) == size:
            return ss_bool_allones_2x2(z)
        chained = parse_chained(a)
        if chained is not None:
            return ss_matrix_chained(z, chained)[rr1 - 1][rr2 - 1]
        if a.shape == (2, 2):
            return ss_2x2(z, a)[rr1 - 1][rr2 - 1]
    return ss_coeff_naive(z, a, window, guard)


# -- truncated signatures -----------------------------------------------------------


@dataclass
class TruncatedSignature:
    """Coefficients of all compositions of weight <= w_max (zeros omitted;
    the empty composition always has coefficient one)."""

    kind: ScalarKind
    d: int
    w_max: int
    coeffs: Dict[MatrixComposition, Scalar]

    def get(self, a: MatrixComposition) -> Scalar:
        if a.is_empty:
            return self.kind.one
        return self.coeffs.get(a, self.kind.zero)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TruncatedSignature)
            and self.kind.name == other.kind.name
            and self.d == other.d
            and self.w_max == other.w_max
            and self.coeffs == other.coeffs
        )

    def mul(self, other: "TruncatedSignature") -> "TruncatedSignature":
        """Concatenation (convolution) product over diag splits; exact up to
        the common truncation weight thanks to the grading."""
        if self.kind.name != other.kind.name or self.d != other.d:
            raise ValueError("incompatible signatures")
        from .composition import diag

        w = min(self.w_max, other.w_max)
        kind = self.kind
        acc: Dict[MatrixComposition, Scalar] = {}
        left = [(ec(self.d), kind.one)] + list(self.coeffs.items())
        right = [(ec(self.d), kind.one)] + list(other.coeffs.items())
        for b, cb in left:
            for c, cc in right:
                if b.weight + c.weight > w or (b.is_empty and c.is_empty):
                    continue
                key = diag(b, c)
                val = kind.mul(cb, cc)
                acc[key] = kind.add(acc.get(key, kind.zero), val)
        acc = {k: v for k, v in acc.items() if not kind.is_zero(v)}
        return TruncatedSignature(kind, self.d, w, acc)

    def to_json_dict(self) -> dict:
        items = sorted(self.coeffs.items(), key=lambda kv: kv[0].sort_key())
        return {
            "W": self.w_max,
            "coeffs": [
                {"composition": k.to_json_dict(), "value": self.kind.format(v)}
                for k, v in items
            ],
        }


def ss_truncated(
    z: EvZeroGrid,
    w_max: int,
    strategy: str = "auto",
    guard: Optional[int] = None,
) -> TruncatedSignature:
    """Signature coefficients for every composition of weight <= w_max."""
    kind = z.kind
    coeffs: Dict[MatrixComposition, Scalar] = {}
    for a in compositions_up_to_weight(z.d, w_max):
        if a.is_empty:
            continue
        val = ss_coeff(z, a, strategy=strategy, guard=guard)
        if not kind.is_zero(val):
            coeffs[a] = val
    return TruncatedSignature(kind, z.d, w_max, coeffs)


# -- invariants and Chen -------------------------------------------------------------


def psi(x: EvConstGrid, a: MatrixComposition, strategy: str = "auto") -> Scalar:
    """The warping invariant: <SS(delta X), a> over the full window."""
    return ss_coeff(delta(x), a, strategy=strategy)


def ss_via_chen(a_grid: EvZeroGrid, b_grid: EvZeroGrid, a: MatrixComposition) -> Scalar:
    """Signature coefficient of the diagonal concatenation, assembled from
    the factors' signatures through the coproduct splits."""
    kind = a_grid.kind
    total = kind.zero
    for (b, c), mult in coproduct(a):
        term = kind.mul(ss_coeff(a_grid, b), ss_coeff(b_grid, c))
        for _ in range(mult):  # mult is always 1 for deconcatenation
            total = kind.add(total, term)
    return total


def equivalent(x: EvConstGrid, y: EvConstGrid) -> bool:
    """Equality modulo constants and warping, decided on normal forms.

    The signature criterion SS(delta X) == SS(delta Y) is the test oracle
    for this decision.
    """
    return nf_sim(x) == nf_sim(y)


# -- separation witness ----------------------------------------------------------------


def witness_composition(j: int, z: EvZeroGrid) -> MatrixComposition:
    """The constructive composition a(j, Z) whose signature coefficient is a
    single full-window product: entry (s, t) is letter j where channel j is
    non-zero, else the minimal non-zero letter, else epsilon.

    Z must be in zero-insertion normal form (no zero lines inside the
    window); otherwise the result would contain an epsilon line.
    """
    if not 1 <= j <= z.d:
        raise ValueError("letter index out of range")
    kind = z.kind
    entries = []
    for row in z.data:
        out_row = []
        for cell in row:
            exps = [0] * z.d
            if not kind.is_zero(cell[j - 1]):
                exps[j - 1] = 1
            else:
                for i, comp_val in enumerate(cell):
                    if not kind.is_zero(comp_val):
                        exps[i] = 1
                        break
            out_row.append(tuple(exps))
        entries.append(out_row)
    return MatrixComposition(z.d, entries)


def distinguishing_witness(
    x: EvZeroGrid, y: EvZeroGrid
) -> Optional[MatrixComposition]:
    """A composition from the constructive separation family on which the
    signatures of x and y differ; None when no candidate separates them
    (which the separation theorem rules out for distinct normal forms)."""
    from .composition import InvalidComposition
    from .monoid import star, letter

    candidates: List[MatrixComposition] = []
    for src in (x, y):
        for j in range(1, src.d + 1):
            try:
                candidates.append(witness_composition(j, src))
            except InvalidComposition:
                continue
    bumped: List[MatrixComposition] = []
    for base in candidates:
        for s in range(base.rows):
            for t in range(base.cols):
                for j in range(1, base.d + 1):
                    entries = [list(r) for r in base.entries]
                    entries[s][t] = star(entries[s][t], letter(j, base.d))
                    bumped.append(MatrixComposition(base.d, entries, validate=False))
    for cand in candidates + bumped:
        if ss_coeff(x, cand) != ss_coeff(y, cand):
            return cand
    return None
