"""Two-parameter quasisymmetric functions on tiny variable truncations.

This is a cross-validation oracle (d = 1 only): the monomial basis element
of a composition, expanded symbolically in the variables x[i,j] with
(i, j) <= t, must multiply according to the quasi-shuffle, evaluate to the
signature coefficient, and be fixed by the formal zero-insertion
endomorphism.  Truncations stay tiny by design.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Tuple

from .algebra import LinComb, qshuffle
from .composition import MatrixComposition
from .grid import EvZeroGrid
from .signature import ss_coeff_naive

ExponentMatrix = Tuple[tuple, ...]  # t1 x t2 grid of non-negative ints


@dataclass(frozen=True)
class TruncatedPolynomial:
    """Polynomial in the variables x[i,j], (i,j) <= trunc, as a finitely
    supported map from exponent matrices to integer coefficients."""

    trunc: tuple
    terms: tuple  # sorted tuple of (ExponentMatrix, coeff)

    @classmethod
    def make(cls, trunc: tuple, terms: Dict[ExponentMatrix, int]) -> "TruncatedPolynomial":
        clean = {k: c for k, c in terms.items() if c != 0}
        return cls(tuple(trunc), tuple(sorted(clean.items())))

    def term_dict(self) -> Dict[ExponentMatrix, int]:
        return dict(self.terms)

    def __add__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")
        acc = self.term_dict()
        for k, c in other.terms:
            acc[k] = acc.get(k, 0) + c
        return TruncatedPolynomial.make(self.trunc, acc)

    def scale(self, s: int) -> "TruncatedPolynomial":
        return TruncatedPolynomial.make(self.trunc, {k: s * c for k, c in self.terms})

    def __mul__(self, other: "TruncatedPolynomial") -> "TruncatedPolynomial":
        if self.trunc != other.trunc:
            raise ValueError("truncation mismatch")
        t1, t2 = self.trunc
        acc: Dict[ExponentMatrix, int] = {}
        for ka, ca in self.terms:
            for kb, cb in other.terms:
                key = tuple(
                    tuple(ka[i][j] + kb[i][j] for j in range(t2)) for i in range(t1)
                )
                acc[key] = acc.get(key, 0) + ca * cb
        return TruncatedPolynomial.make(self.trunc, acc)

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for exps, coeff in self.terms:
            vars_ = [
                f"x{i + 1}{j + 1}" + (f"^{e}" if e > 1 else "")
                for i, row in enumerate(exps)
                for j, e in enumerate(row)
                if e
            ]
            monom = "*".join(vars_) if vars_ else "1"
            bits.append(f"{coeff}*{monom}" if coeff != 1 or not vars_ else monom)
        return " + ".join(bits)


def one(trunc: tuple) -> TruncatedPolynomial:
    t1, t2 = trunc
    empty = tuple((0,) * t2 for _ in range(t1))
    return TruncatedPolynomial.make(trunc, {empty: 1})


def monomial_expand(a: MatrixComposition, trunc: tuple) -> TruncatedPolynomial:
    """The monomial basis element of a, truncated to variables within trunc:
    sum over increasing chains of prod x[iota_s, kappa_t]^(a_{s,t})."""
    if a.d != 1:
        raise ValueError("the QSym oracle is restricted to d = 1")
    t1, t2 = trunc
    if a.is_empty:
        return one(trunc)
    m, n = a.rows, a.cols
    acc: Dict[ExponentMatrix, int] = {}
    for iota in itertools.combinations(range(t1), m):
        for kappa in itertools.combinations(range(t2), n):
            exps = [[0] * t2 for _ in range(t1)]
            for s in range(m):
                for t in range(n):
                    exps[iota[s]][kappa[t]] += a.entries[s][t][0]
            key = tuple(tuple(row) for row in exps)
            acc[key] = acc.get(key, 0) + 1
    return TruncatedPolynomial.make(trunc, acc)


def monomial_eval(a: MatrixComposition, z: EvZeroGrid):
    """Evaluation of the monomial basis element at a grid: by the defining
    identity this is exactly the signature coefficient."""
    if a.d != 1:
        raise ValueError("the QSym oracle is restricted to d = 1")
    return ss_coeff_naive(z, a)


def substitute(f: TruncatedPolynomial, z: EvZeroGrid):
    """Plug the grid values into the truncated polynomial (d = 1)."""
    kind = z.kind
    total = kind.zero
    for exps, coeff in f.terms:
        prod = kind.one
        for i, row in enumerate(exps):
            for j, e in enumerate(row):
                if e:
                    prod = kind.mul(prod, kind.pow(z.at(i + 1, j + 1)[0], e))
        term = kind.mul(prod, coeff)
        total = kind.add(total, term)
    return total


def formal_zero_insert(axis: int, k: int, f: TruncatedPolynomial) -> TruncatedPolynomial:
    """Free analogue of zero insertion: variables on line k of the axis go
    to zero, later lines shift down; the truncation shrinks by one."""
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    t1, t2 = f.trunc
    size = t1 if axis == 1 else t2
    if k < 1:
        raise ValueError("position must be >= 1")
    if k > size:
        return f
    new_trunc = (t1 - 1, t2) if axis == 1 else (t1, t2 - 1)
    acc: Dict[ExponentMatrix, int] = {}
    for exps, coeff in f.terms:
        if axis == 1:
            if any(e for e in exps[k - 1]):
                continue
            key = exps[: k - 1] + exps[k:]
        else:
            if any(row[k - 1] for row in exps):
                continue
            key = tuple(row[: k - 1] + row[k:] for row in exps)
        acc[key] = acc.get(key, 0) + coeff
    return TruncatedPolynomial.make(new_trunc, acc)


def qsym_product_check(a: MatrixComposition, b: MatrixComposition, trunc: tuple) -> bool:
    """Does M_a * M_b expand to the quasi-shuffle's monomial sum at trunc?"""
    lhs = monomial_expand(a, trunc) * monomial_expand(b, trunc)
    rhs = one(trunc).scale(0)
    for c, coeff in qshuffle(a, b):
        rhs = rhs + monomial_expand(c, trunc).scale(coeff)
    return lhs == rhs


def qsym_coproduct_check(a: MatrixComposition, x: EvZeroGrid, y: EvZeroGrid) -> bool:
    """Numeric form of the coproduct-vs-deconcatenation claim: evaluating
    M_a on the block grid x (diag) y equals the split sum of evaluations."""
    from .algebra import coproduct
    from .grid import diag_concat
    from .signature import ss_coeff

    kind = x.kind
    lhs = ss_coeff(diag_concat(x, y), a)
    rhs = kind.zero
    for (b, c), mult in coproduct(a):
        term = kind.mul(ss_coeff(x, b), ss_coeff(y, c))
        rhs = kind.add(rhs, term)
    return lhs == rhs


def monomial_rank(comps, trunc: tuple) -> int:
    """Rank over the rationals of the monomial expansions of the given
    compositions (exact Gaussian elimination)."""
    polys = [monomial_expand(a, trunc) for a in comps]
    columns = sorted({k for p in polys for k, _ in p.terms})
    index = {k: i for i, k in enumerate(columns)}
    rows = []
    for p in polys:
        vec = [Fraction(0)] * len(columns)
        for k, c in p.terms:
            vec[index[k]] = Fraction(c)
        rows.append(vec)
    rank = 0
    col = 0
    n_rows = len(rows)
    n_cols = len(columns)
    while rank < n_rows and col < n_cols:
        pivot = None
        for r in range(rank, n_rows):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            col += 1
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pv = rows[rank][col]
        for r in range(n_rows):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / pv
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank
