import random

import pytest

from twosig.algebra import (
    LinComb,
    antipode,
    antipode_lin,
    concat_product,
    coproduct,
    coproduct_lin,
    counit,
    format_coeff,
    one_param_qshuffle,
    qshuffle,
    qshuffle_direct,
    qshuffle_lin,
    tensor_flip,
)
from twosig.composition import (
    MatrixComposition,
    connected_factorization,
    diag,
    diag_all,
    ec,
    from_int_matrix,
)
from twosig.monoid import epsilon, is_epsilon, letter, star

from util import comps_of_weight, comps_up_to, random_comp


def M(d, rows):
    return MatrixComposition(d, rows)


def test_qshuffle_small_paper_example():
    # [1] qs [2] over two letters: nine terms, all with coefficient one
    d = 2
    e = epsilon(d)
    x, y = letter(1, d), letter(2, d)
    got = qshuffle(M(d, [[x]]), M(d, [[y]]))
    expected = LinComb(
        {
            M(d, [[x, e], [e, y]]): 1,
            M(d, [[e, x], [y, e]]): 1,
            M(d, [[y, e], [e, x]]): 1,
            M(d, [[e, y], [x, e]]): 1,
            M(d, [[x], [y]]): 1,
            M(d, [[y], [x]]): 1,
            M(d, [[x, y]]): 1,
            M(d, [[y, x]]): 1,
            M(d, [[star(x, y)]]): 1,
        }
    )
    assert got == expected


def test_qshuffle_square_identity():
    # [1] qs [1] over the non-negative integers: the five-term identity
    one = from_int_matrix(1, [[1]])
    got = qshuffle(one, one)
    expected = LinComb(
        {
            from_int_matrix(1, [[2]]): 1,
            from_int_matrix(1, [[1], [1]]): 2,
            from_int_matrix(1, [[1, 1]]): 2,
            from_int_matrix(1, [[1, 0], [0, 1]]): 2,
            from_int_matrix(1, [[0, 1], [1, 0]]): 2,
        }
    )
    assert got == expected


def test_qshuffle_fifteen_term_paper_example():
    d = 3
    e = epsilon(d)
    l1, l2, l3 = (letter(j, d) for j in (1, 2, 3))
    a = M(d, [[l1]])
    b = M(d, [[l2], [l3]])
    got = qshuffle(a, b)
    expected_terms = [
        [[l1, e], [e, l2], [e, l3]],
        [[l1, l2], [e, l3]],
        [[e, l2], [l1, e], [e, l3]],
        [[e, l2], [l1, l3]],
        [[e, l2], [e, l3], [l1, e]],
        [[l1], [l2], [l3]],
        [[star(l1, l2)], [l3]],
        [[l2], [l1], [l3]],
        [[l2], [star(l1, l3)]],
        [[l2], [l3], [l1]],
        [[e, l1], [l2, e], [l3, e]],
        [[l2, l1], [l3, e]],
        [[l2, e], [e, l1], [l3, e]],
        [[l2, e], [l3, l1]],
        [[l2, e], [l3, e], [e, l1]],
    ]
    assert got == LinComb({M(d, t): 1 for t in expected_terms})


def test_qshuffle_unit():
    a = from_int_matrix(1, [[1, 2]])
    assert qshuffle(a, ec(1)) == LinComb.single(a)
    assert qshuffle(ec(1), a) == LinComb.single(a)
    assert qshuffle_direct(a, ec(1)) == LinComb.single(a)


def test_one_param_qshuffle_column_examples():
    d = 3
    e = epsilon(d)
    l1, l2, l3 = (letter(j, d) for j in (1, 2, 3))
    # [1;3] qs2 [eps;2] -> three words of two-entry columns
    got = one_param_qshuffle("cols", [(l1, l3)], [(e, l2)])
    expected = {
        ((l1, l3), (e, l2)): 1,
        ((e, l2), (l1, l3)): 1,
        ((star(l1, e), star(l3, l2)),): 1,
    }
    assert got == expected
    # [1;eps;eps] qs2 [eps;2;3] -> three words
    got = one_param_qshuffle("cols", [(l1, e, e)], [(e, l2, l3)])
    assert got == {
        ((l1, e, e), (e, l2, l3)): 1,
        ((e, l2, l3), (l1, e, e)): 1,
        ((l1, l2, l3),): 1,
    }


def test_one_param_qshuffle_row_example():
    d = 3
    e = epsilon(d)
    l1, l2, l3 = (letter(j, d) for j in (1, 2, 3))
    # [1 eps] qs1 ([eps 2], [eps 3]) -> five words of rows
    got = one_param_qshuffle("rows", [(l1, e)], [(e, l2), (e, l3)])
    expected = {
        ((l1, e), (e, l2), (e, l3)): 1,
        ((star(l1, e), star(e, l2)), (e, l3)): 1,
        ((e, l2), (l1, e), (e, l3)): 1,
        ((e, l2), (l1, l3)): 1,
        ((e, l2), (e, l3), (l1, e)): 1,
    }
    assert got == expected


def test_one_param_qshuffle_dimension_mismatch():
    with pytest.raises(ValueError):
        one_param_qshuffle("rows", [((1,), (0,))], [((1,),)])


def test_direct_oracle_matches_recursive_sampled():
    rng = random.Random(3)
    for _ in range(60):
        d = rng.choice([1, 2])
        a = random_comp(rng, d, 2)
        b = random_comp(rng, d, 2)
        assert qshuffle(a, b) == qshuffle_direct(a, b)


def test_qshuffle_commutative_associative_sampled():
    rng = random.Random(4)
    for _ in range(20):
        a = random_comp(rng, 1, 2)
        b = random_comp(rng, 1, 2)
        assert qshuffle(a, b) == qshuffle(b, a)
    for _ in range(6):
        a = random_comp(rng, 1, 1)
        b = random_comp(rng, 1, 2)
        c = random_comp(rng, 1, 1)
        left = qshuffle_lin(qshuffle(a, b), LinComb.single(c))
        right = qshuffle_lin(LinComb.single(a), qshuffle(b, c))
        assert left == right


def test_qshuffle_graded_and_no_epsilon_lines():
    rng = random.Random(5)
    for _ in range(40):
        d = rng.choice([1, 2])
        a = random_comp(rng, d, 2)
        b = random_comp(rng, d, 2)
        for term, coeff in qshuffle(a, b):
            assert coeff > 0
            assert term.weight == a.weight + b.weight
            MatrixComposition(d, term.entries)  # validates no epsilon lines


def test_coproduct_paper_example():
    d = 3
    l1, l2, l3 = (letter(j, d) for j in (1, 2, 3))
    b1 = M(d, [[l1, l2]])
    b2 = M(d, [[l3]])
    b3 = M(d, [[l2, star(l1, l2)], [l1, l1]])
    a = diag_all(d, [b1, b2, b3])
    got = coproduct(a)
    expected = LinComb(
        {
            (a, ec(d)): 1,
            (diag(b1, b2), b3): 1,
            (b1, diag(b2, b3)): 1,
            (ec(d), a): 1,
        }
    )
    assert got == expected


def test_coproduct_trivial_cases():
    e = ec(1)
    assert coproduct(e) == LinComb.single((e, e))
    c = from_int_matrix(1, [[1, 1]])
    assert coproduct(c) == LinComb({(c, e): 1, (e, c): 1})


def test_counit():
    e = ec(1)
    assert counit(LinComb.single(e)) == 1
    assert counit(LinComb.single(from_int_matrix(1, [[1]]))) == 0
    mix = LinComb({e: 3, from_int_matrix(1, [[1]]): 2})
    assert counit(mix) == 3
    assert counit(e) == 1 and counit(from_int_matrix(1, [[2]])) == 0


def test_antipode_small_cases():
    e = ec(1)
    assert antipode(e) == LinComb.single(e)
    c = from_int_matrix(1, [[1, 2], [1, 1]])  # connected
    assert antipode(c) == LinComb.single(c, -1)
    v = from_int_matrix(1, [[1]])
    w = from_int_matrix(1, [[2]])
    assert antipode(diag(v, w)) == qshuffle(v, w) - LinComb.single(diag(v, w))


def test_antipode_axiom_weight_3_d1():
    for a in comps_up_to(1, 3):
        out = LinComb()
        for (b, c), mult in coproduct(a):
            out = out + qshuffle_lin(antipode(b), LinComb.single(c)).scale(mult)
        assert out == LinComb.single(ec(1), counit(a)), a


def test_concat_product():
    v = from_int_matrix(1, [[1]])
    w = from_int_matrix(1, [[1, 1]])
    f = LinComb.single(v)
    g = LinComb.single(w)
    assert concat_product(f, g) == LinComb.single(diag(v, w))
    unit = LinComb.single(ec(1))
    h = LinComb({v: 2, diag(v, w): -1})
    assert concat_product(h, unit) == h
    assert concat_product(unit, h) == h


def test_concat_product_matches_convolution():
    rng = random.Random(6)
    for _ in range(30):
        f = LinComb({random_comp(rng, 1, 2): rng.randint(-3, 3) for _ in range(2)})
        g = LinComb({random_comp(rng, 1, 2): rng.randint(-3, 3) for _ in range(2)})
        prod = concat_product(f, g)
        for a in comps_up_to(1, 4):
            expect = 0
            for (b, c), _ in coproduct(a):
                expect += f[b] * g[c]
            assert prod[a] == expect


def test_bilinearity():
    a = from_int_matrix(1, [[1]])
    b = from_int_matrix(1, [[2]])
    two_a = LinComb.single(a, 2)
    assert qshuffle_lin(two_a, LinComb.single(b)) == qshuffle(a, b).scale(2)
    assert coproduct_lin(LinComb({a: 1, b: 1})) == coproduct(a) + coproduct(b)
    assert antipode_lin(LinComb()) == LinComb()


def test_tensor_flip():
    a = from_int_matrix(1, [[1]])
    b = from_int_matrix(1, [[2]])
    t = LinComb({(a, b): 2, (b, a): -1})
    assert tensor_flip(t) == LinComb({(b, a): 2, (a, b): -1})


def test_lincomb_json_roundtrip():
    a = from_int_matrix(1, [[1]])
    b = from_int_matrix(1, [[2]])
    f = LinComb({a: 2, b: -3})
    assert LinComb.from_json_dict(f.to_json_dict()) == f
    assert format_coeff(-3) == "-3"


def test_qshuffle_direct_guard():
    big = from_int_matrix(1, [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    with pytest.raises(ValueError):
        qshuffle_direct(big, big)
