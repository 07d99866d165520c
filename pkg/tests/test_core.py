import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudoht.core import (
    ExactMatrix,
    MapClass,
    Signature,
    basis_vector,
    classify_map,
    epsilon,
    exact_det,
    exact_rank,
    gram_matrix,
    metric_signs,
    nullspace,
    scalar_product,
)

rationals = st.builds(
    Fraction,
    st.integers(min_value=-40, max_value=40),
    st.integers(min_value=1, max_value=12),
)


def test_epsilon_values():
    assert epsilon(1, Signature(1, 1)) == 1
    assert epsilon(2, Signature(1, 1)) == -1
    assert epsilon(5, Signature(4, 4)) == -1


def test_epsilon_out_of_range():
    with pytest.raises(IndexError):
        epsilon(0, Signature(2, 2))
    with pytest.raises(IndexError):
        epsilon(5, Signature(2, 2))


@given(st.integers(min_value=0, max_value=6), st.integers(min_value=0, max_value=6))
def test_epsilon_squares_to_one(r, s):
    sig = Signature(r, s)
    for i in range(1, sig.dim + 1):
        assert epsilon(i, sig) ** 2 == 1


def test_scalar_product_basis_vectors():
    sig = Signature(3, 2)
    e1 = basis_vector(1, 5)
    e4 = basis_vector(4, 5)
    assert scalar_product(e1, e1, sig) == 1
    assert scalar_product(e4, e4, sig) == -1
    null = tuple(a + b for a, b in zip(e1, e4))
    assert scalar_product(null, null, sig) == 0


def test_scalar_product_length_mismatch():
    with pytest.raises(ValueError):
        scalar_product([1, 2], [1, 2, 3], Signature(2, 1))


@settings(max_examples=60)
@given(st.lists(rationals, min_size=4, max_size=4),
       st.lists(rationals, min_size=4, max_size=4),
       st.lists(rationals, min_size=4, max_size=4),
       rationals)
def test_scalar_product_symmetric_bilinear(x, y, z, c):
    sig = Signature(2, 2)
    assert scalar_product(x, y, sig) == scalar_product(y, x, sig)
    xz = [a + c * b for a, b in zip(x, z)]
    assert (scalar_product(xz, y, sig)
            == scalar_product(x, y, sig) + c * scalar_product(z, y, sig))


def test_metric_signs_rejects_bad_entries():
    with pytest.raises(ValueError):
        metric_signs([1, 0, -1])


def test_rank_and_det_identity():
    m = ExactMatrix.identity(5)
    assert exact_rank(m) == 5
    assert exact_det(m) == 1


def test_rank_zero_matrix():
    assert exact_rank(ExactMatrix.zero(3, 4)) == 0


def test_det_known_values():
    m = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert exact_det(m) == -2
    m = ExactMatrix.from_rows([[Fraction(1, 2), 1], [1, Fraction(1, 2)]])
    assert exact_det(m) == Fraction(-3, 4)
    m = ExactMatrix.from_rows([[0, 1, 2], [0, 0, 3], [0, 0, 0]])
    assert exact_det(m) == 0


def test_rank_rectangular_with_dependent_rows():
    m = ExactMatrix.from_rows([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 0, 1]])
    assert exact_rank(m) == 2


def test_rank_equals_rank_of_gram():
    # 200 random integer matrices with entries in [-3, 3]
    rng = random.Random(20240)
    for _ in range(200):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = ExactMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
        mmT = m.mul(m.transpose())
        assert exact_rank(m) == exact_rank(mmT)


def test_rank_matches_fraction_gauss_reference():
    # cross-check the fraction-free elimination against plain Gauss over Q
    def gauss_rank(m):
        a = [list(r) for r in m.entries]
        nr, nc = m.rows, m.cols
        r = 0
        for c in range(nc):
            piv = next((i for i in range(r, nr) if a[i][c] != 0), None)
            if piv is None:
                continue
            a[r], a[piv] = a[piv], a[r]
            for i in range(nr):
                if i != r and a[i][c] != 0:
                    f = a[i][c] / a[r][c]
                    a[i] = [x - f * y for x, y in zip(a[i], a[r])]
            r += 1
        return r

    rng = random.Random(7)
    for _ in range(150):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = ExactMatrix.from_rows(
            [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(cols)]
             for _ in range(rows)])
        assert exact_rank(m) == gauss_rank(m)


def test_det_multiplicative_on_random_int_matrices():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(1, 5)
        a = ExactMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        b = ExactMatrix.from_rows([[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)])
        assert exact_det(a.mul(b)) == exact_det(a) * exact_det(b)


def test_nullspace_basic():
    m = ExactMatrix.from_rows([[1, 1, 0], [0, 0, 1]])
    basis = nullspace(m)
    assert len(basis) == 1
    v = basis[0]
    assert m.apply(v) == (0, 0)


def test_nullspace_dimension_theorem():
    rng = random.Random(5)
    for _ in range(80):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        m = ExactMatrix.from_rows(
            [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
        basis = nullspace(m)
        assert len(basis) == cols - exact_rank(m)
        for v in basis:
            assert all(e == 0 for e in m.apply(v))


def test_classify_identity_is_isometry():
    m = ExactMatrix.identity(4)
    assert classify_map(m, Signature(2, 2), Signature(2, 2)) == MapClass.ISOMETRY


def test_classify_swap_on_1_1_is_anti_isometry():
    # Z_1 <-> Z_2 between the two basis directions of a (1,1) space
    m = ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert classify_map(m, Signature(1, 1), Signature(1, 1)) == MapClass.ANTI_ISOMETRY


def test_classify_scaling_is_neither():
    m = ExactMatrix.from_rows([[2, 0], [0, 1]])
    assert classify_map(m, Signature(1, 1), Signature(1, 1)) == MapClass.NEITHER


def test_classify_isometry_closed_under_inverse():
    # signed permutations with an even number of sign flips per metric block
    rng = random.Random(31)
    signs = metric_signs(Signature(2, 2))
    for _ in range(40):
        perm = [1, 2, 3, 4]
        # permute within the positive and negative blocks so the map stays isometric
        rng.shuffle(perm[0:2])
        rng.shuffle(perm[2:4])
        flip = [rng.choice([1, -1]) for _ in range(4)]
        rows = [[0] * 4 for _ in range(4)]
        for col, (img, s) in enumerate(zip(perm, flip)):
            rows[img - 1][col] = s
        m = ExactMatrix.from_rows(rows)
        assert classify_map(m, signs, signs) == MapClass.ISOMETRY
        inv = m.transpose()  # signed permutation matrices are orthogonal
        assert classify_map(inv, signs, signs) == MapClass.ISOMETRY


def test_gram_matrix():
    g = gram_matrix([basis_vector(1, 3), basis_vector(3, 3)], Signature(1, 2))
    assert g.entries == ((1, 0), (0, -1))
