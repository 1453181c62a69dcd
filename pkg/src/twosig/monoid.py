"""The free commutative monoid on d letters.

An element is a length-d exponent vector (component j = multiplicity of
letter j+1), stored as a plain tuple of non-negative ints.  Tuples are
immutable, hashable and compare lexicographically, which doubles as the
canonical total order used for serialization and map keys.
"""

from __future__ import annotations

from typing import Sequence

from .scalars import Scalar, ScalarKind

MonoidElement = tuple  # tuple[int, ...] of length d


def epsilon(d: int) -> MonoidElement:
    """Neutral element: the all-zeros exponent vector."""
    return (0,) * d


def is_epsilon(m: MonoidElement) -> bool:
    return all(e == 0 for e in m)


def letter(j: int, d: int) -> MonoidElement:
    """The generator with 1-based index j."""
    if not 1 <= j <= d:
        raise ValueError(f"letter index {j} out of range 1..{d}")
    return tuple(1 if i == j - 1 else 0 for i in range(d))


def element(exponents: Sequence[int]) -> MonoidElement:
    m = tuple(int(e) for e in exponents)
    if any(e < 0 for e in m):
        raise ValueError(f"negative exponent in {exponents!r}")
    return m


def star(a: MonoidElement, b: MonoidElement) -> MonoidElement:
    """Monoid operation: componentwise sum of exponent vectors."""
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return tuple(x + y for x, y in zip(a, b))


def weight(m: MonoidElement) -> int:
    """The homomorphism sending every generator to 1: total exponent sum."""
    return sum(m)


def evaluate(kind: ScalarKind, z: Sequence[Scalar], m: MonoidElement) -> Scalar:
    """Evaluation homomorphism of the data point z: prod_j z_j ** m_j.

    evaluate(z, epsilon) is one (empty product) for every z.
    """
    if len(z) != len(m):
        raise ValueError(f"dimension mismatch: point has {len(z)} components, element {len(m)}")
    acc = kind.one
    for zj, ej in zip(z, m):
        if ej:
            acc = kind.mul(acc, kind.pow(zj, ej))
    return acc


def format_element(m: MonoidElement) -> str:
    """Human form: "eps", "2", "1*3", "2^3*1" (letters are 1-based)."""
    if is_epsilon(m):
        return "eps"
    parts = []
    for j, e in enumerate(m, start=1):
        if e == 1:
            parts.append(str(j))
        elif e > 1:
            parts.append(f"{j}^{e}")
    return "*".join(parts)
