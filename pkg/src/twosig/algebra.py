"""The free module over matrix compositions and its Hopf structure.

Coefficients are exact Python numbers (int by default, Fraction when
division is wanted); the quasi-shuffle, coproduct and antipode formulas are
integral, so int suffices for every identity test.

Two independent routes compute the two-parameter quasi-shuffle:

* ``qshuffle``        -- the fast recursive algorithm: one-parameter
                         quasi-shuffle of padded columns, split each monomial
                         into its top/bottom part, then one-parameter
                         quasi-shuffle of rows;
* ``qshuffle_direct`` -- brute-force enumeration of pairs of order-preserving
                         surjections realized as right-invertible 0/1
                         matrices acting on rows and columns of the block
                         diagonal.

They are cross-validated exhaustively in the test suite and must agree
exactly.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Tuple

from . import monoid
from .composition import (
    MatrixComposition,
    connected_factorization,
    diag,
    diag_all,
    ec,
)
from .monoid import epsilon, is_epsilon


def format_coeff(c) -> str:
    if isinstance(c, Fraction):
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def parse_coeff(text: str):
    t = text.strip()
    if "/" in t:
        return Fraction(t)
    return int(t)


class LinComb:
    """Finitely supported map key -> coefficient, no stored zeros.

    Keys are matrix compositions (or pairs of them, for tensors); they only
    need to be hashable and sortable via ``_key_sort``.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict] = None):
        self.terms = {}
        if terms:
            for k, c in terms.items():
                if c != 0:
                    self.terms[k] = c

    @classmethod
    def single(cls, key, coeff=1) -> "LinComb":
        out = cls()
        if coeff != 0:
            out.terms[key] = coeff
        return out

    @classmethod
    def zero(cls) -> "LinComb":
        return cls()

    def __getitem__(self, key):
        return self.terms.get(key, 0)

    def __iter__(self) -> Iterator[Tuple]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinComb) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("LinComb is not hashable")

    def __add__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return LinComb(out)

    def __sub__(self, other: "LinComb") -> "LinComb":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) - c
        return LinComb(out)

    def __neg__(self) -> "LinComb":
        return LinComb({k: -c for k, c in self.terms.items()})

    def scale(self, s) -> "LinComb":
        if s == 0:
            return LinComb()
        return LinComb({k: s * c for k, c in self.terms.items()})

    @staticmethod
    def _key_sort(key):
        if isinstance(key, MatrixComposition):
            return key.sort_key()
        return tuple(LinComb._key_sort(k) for k in key)

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: LinComb._key_sort(kv[0]))

    def support(self):
        return list(self.terms.keys())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for k, c in self.sorted_items():
            bits.append(f"{format_coeff(c)}*{k!r}")
        return " + ".join(bits)

    # JSON form for composition-keyed combinations
    def to_json_dict(self) -> dict:
        return {
            "terms": [
                {"coeff": format_coeff(c), "composition": k.to_json_dict()}
                for k, c in self.sorted_items()
            ]
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "LinComb":
        out = cls()
        for item in obj["terms"]:
            comp = MatrixComposition.from_json_dict(item["composition"])
            out.terms[comp] = out.terms.get(comp, 0) + parse_coeff(item["coeff"])
        return cls(out.terms)


# -- one-parameter quasi-shuffle on words of lines ------------------------------

# A "line" is a tuple of monoid elements (a column or a row); a word is a
# tuple of lines.  The recursion is the classical
#   av qs bw = a(v qs bw) + b(av qs w) + (a*b)(v qs w).


def _line_star(a: tuple, b: tuple) -> tuple:
    return tuple(monoid.star(x, y) for x, y in zip(a, b))


def _word_qshuffle(u: tuple, v: tuple, memo: dict) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    key = (u, v)
    hit = memo.get(key)
    if hit is not None:
        return hit
    out: dict = {}
    a, b = u[0], v[0]
    for w, c in _word_qshuffle(u[1:], v, memo).items():
        k = (a,) + w
        out[k] = out.get(k, 0) + c
    for w, c in _word_qshuffle(u, v[1:], memo).items():
        k = (b,) + w
        out[k] = out.get(k, 0) + c
    ab = _line_star(a, b)
    for w, c in _word_qshuffle(u[1:], v[1:], memo).items():
        k = (ab,) + w
        out[k] = out.get(k, 0) + c
    memo[key] = out
    return out


def one_param_qshuffle(axis: str, u: Iterable[tuple], v: Iterable[tuple]) -> dict:
    """Classical quasi-shuffle of two words of lines; letters merge with *.

    ``axis`` is "rows" or "cols" and only documents the intent -- a word of
    columns is shuffled exactly like a word of rows.  Returns a dict from
    result word (tuple of lines) to multiplicity.
    """
    if axis not in ("rows", "cols"):
        raise ValueError("axis must be 'rows' or 'cols'")
    u = tuple(tuple(line) for line in u)
    v = tuple(tuple(line) for line in v)
    dims = {len(line) for line in u} | {len(line) for line in v}
    if len(dims) > 1:
        raise ValueError("lines of differing dimension")
    return _word_qshuffle(u, v, {})


# -- two-parameter quasi-shuffle: fast recursive route --------------------------


def qshuffle(a: MatrixComposition, b: MatrixComposition) -> LinComb:
    """Two-parameter quasi-shuffle of matrix compositions.

    Stage 1 shuffles the padded columns (a above zeros, zeros above b);
    stage 2 splits every resulting monomial at row m and shuffles the rows.
    Multiplicities accumulate into the coefficient map.
    """
    if a.d != b.d:
        raise ValueError("dimension mismatch")
    if a.is_empty:
        return LinComb.single(b)
    if b.is_empty:
        return LinComb.single(a)
    d = a.d
    eps = epsilon(d)
    m, n = a.rows, a.cols
    s, t = b.rows, b.cols
    cols_a = tuple(
        tuple(a.entries[i][j] for i in range(m)) + (eps,) * s for j in range(n)
    )
    cols_b = tuple(
        (eps,) * m + tuple(b.entries[i][j] for i in range(s)) for j in range(t)
    )
    acc: dict = {}
    memo_cols: dict = {}
    memo_rows: dict = {}
    for col_word, c1 in _word_qshuffle(cols_a, cols_b, memo_cols).items():
        top = tuple(tuple(col[i] for col in col_word) for i in range(m))
        bottom = tuple(tuple(col[m + i] for col in col_word) for i in range(s))
        for row_word, c2 in _word_qshuffle(top, bottom, memo_rows).items():
            comp = MatrixComposition(d, row_word, validate=False)
            acc[comp] = acc.get(comp, 0) + c1 * c2
    return LinComb(acc)


# -- two-parameter quasi-shuffle: direct surjection oracle ----------------------


def qsh_matrices(m: int, s: int, j: int) -> Iterator[tuple]:
    """All 0/1 matrices [e_{i_1} .. e_{i_m} e_{k_1} .. e_{k_s}] of shape
    j x (m+s) with both index chains strictly increasing and the matrix
    right invertible (rows jointly surjective)."""
    if j < max(m, s) or j > m + s:
        return
    full = frozenset(range(j))
    for left in itertools.combinations(range(j), m):
        for right in itertools.combinations(range(j), s):
            if frozenset(left) | frozenset(right) != full:
                continue
            mat = [[0] * (m + s) for _ in range(j)]
            for col, row in enumerate(left):
                mat[row][col] = 1
            for col, row in enumerate(right):
                mat[row][m + col] = 1
            yield tuple(tuple(r) for r in mat)


def row_action(p: tuple, a_entries: tuple, d: int) -> tuple:
    """(P a): star-combine the rows of a selected by each row of P."""
    eps = epsilon(d)
    cols = len(a_entries[0]) if a_entries else 0
    out = []
    for prow in p:
        new = [eps] * cols
        for u, flag in enumerate(prow):
            if flag:
                row = a_entries[u]
                new = [monoid.star(x, y) for x, y in zip(new, row)]
        out.append(tuple(new))
    return tuple(out)


def col_action(a_entries: tuple, q: tuple, d: int) -> tuple:
    """(a Q^T): star-combine the columns of a selected by each row of Q."""
    eps = epsilon(d)
    out = []
    for row in a_entries:
        new = []
        for qrow in q:
            cell = eps
            for v, flag in enumerate(qrow):
                if flag:
                    cell = monoid.star(cell, row[v])
            new.append(cell)
        out.append(tuple(new))
    return tuple(out)


QSHUFFLE_DIRECT_MAX_LINES = 8


def qshuffle_direct(a: MatrixComposition, b: MatrixComposition) -> LinComb:
    """Brute-force quasi-shuffle: sum of P diag(a,b) Q^T over all surjection
    pairs.  Serves as the independent oracle for ``qshuffle``."""
    if a.d != b.d:
        raise ValueError("dimension mismatch")
    if a.is_empty:
        return LinComb.single(b)
    if b.is_empty:
        return LinComb.single(a)
    m, n = a.rows, a.cols
    s, t = b.rows, b.cols
    if m + s > QSHUFFLE_DIRECT_MAX_LINES or n + t > QSHUFFLE_DIRECT_MAX_LINES:
        raise ValueError(
            f"direct enumeration guard: {m + s} rows / {n + t} cols exceeds "
            f"{QSHUFFLE_DIRECT_MAX_LINES}"
        )
    base = diag(a, b).entries
    acc: dict = {}
    for j in range(max(m, s), m + s + 1):
        for p in qsh_matrices(m, s, j):
            rowed = row_action(p, base, a.d)
            for k in range(max(n, t), n + t + 1):
                for q in qsh_matrices(n, t, k):
                    comp = MatrixComposition(a.d, col_action(rowed, q, a.d), validate=False)
                    acc[comp] = acc.get(comp, 0) + 1
    return LinComb(acc)


# -- coproduct, counit, antipode, dual product ----------------------------------


def coproduct(a: MatrixComposition) -> LinComb:
    """Deconcatenation along the connected factorization: sum of b (x) c
    over all diag(b, c) == a, keyed by pairs (b, c)."""
    if a.is_empty:
        return LinComb.single((a, a))
    blocks = connected_factorization(a)
    k = len(blocks)
    terms: dict = {}
    for alpha in range(k + 1):
        left = diag_all(a.d, blocks[:alpha])
        right = diag_all(a.d, blocks[alpha:])
        terms[(left, right)] = terms.get((left, right), 0) + 1
    return LinComb(terms)


def counit(x, d: Optional[int] = None):
    """Coefficient of the empty composition."""
    if isinstance(x, MatrixComposition):
        return 1 if x.is_empty else 0
    for key in x.terms:
        d = key.d
        break
    if d is None:
        return 0
    return x[ec(d)]


def _integer_compositions(k: int) -> Iterator[tuple]:
    """All ordered tuples of positive integers summing to k."""
    if k == 0:
        yield ()
        return
    for first in range(1, k + 1):
        for rest in _integer_compositions(k - first):
            yield (first,) + rest


def antipode(a: MatrixComposition) -> LinComb:
    """Antipode of the quasi-shuffle Hopf algebra.

    With a = diag(v_1, ..., v_k) into connected blocks, sum over integer
    compositions (i_1, ..., i_l) of k the sign (-1)^l times the quasi-shuffle
    of the l grouped diag-blocks.  Verified against the antipode axiom
    m o (S (x) id) o Delta = eta o epsilon in the tests.
    """
    if a.is_empty:
        return LinComb.single(a)
    blocks = connected_factorization(a)
    k = len(blocks)
    total = LinComb()
    for parts in _integer_compositions(k):
        groups = []
        idx = 0
        for p in parts:
            groups.append(diag_all(a.d, blocks[idx : idx + p]))
            idx += p
        prod = LinComb.single(groups[0])
        for g in groups[1:]:
            prod = qshuffle_lin(prod, LinComb.single(g))
        sign = -1 if len(parts) % 2 else 1
        total = total + prod.scale(sign)
    return total


def concat_product(f: LinComb, g: LinComb) -> LinComb:
    """Dual product on coefficient functionals: <FG, a> is the convolution
    over the splits diag(b, c) = a.  On finite supports this is the sum of
    diag(b, c) over support pairs."""
    acc: dict = {}
    for b, cb in f.terms.items():
        for c, cc in g.terms.items():
            key = diag(b, c)
            acc[key] = acc.get(key, 0) + cb * cc
    return LinComb(acc)


# -- bilinear / linear extensions -----------------------------------------------


def qshuffle_lin(f: LinComb, g: LinComb) -> LinComb:
    out = LinComb()
    for a, ca in f.terms.items():
        for b, cb in g.terms.items():
            out = out + qshuffle(a, b).scale(ca * cb)
    return out


def coproduct_lin(f: LinComb) -> LinComb:
    out = LinComb()
    for a, ca in f.terms.items():
        out = out + coproduct(a).scale(ca)
    return out


def antipode_lin(f: LinComb) -> LinComb:
    out = LinComb()
    for a, ca in f.terms.items():
        out = out + antipode(a).scale(ca)
    return out


def tensor_flip(t: LinComb) -> LinComb:
    """The flip map on tensors, implemented as key swapping."""
    return LinComb({(b, a): c for (a, b), c in t.terms.items()})
