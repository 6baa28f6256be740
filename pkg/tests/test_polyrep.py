"""Polynomial matrix representations: noncommutative polynomials, Singer
cycles, block representations, witness and root-group checks."""

import random

import pytest

from trigroup.errors import (BadParameters, BadPrime, NonUnitriangularInverse,
                             OutOfRange, PreconditionViolated,
                             UnsupportedAlgebraicForm)
from trigroup.polyrep import (DEFAULT_SEED, NCPoly, PolyMatrix, REP_IDS,
                              kassabov_witness, power_span_size,
                              random_matrix_triple, root_group_model,
                              singer_matrix, verify_commuting_pair_A2,
                              verify_rep)


def test_ncpoly_letter_order_distinguishes_modes():
    x_free = NCPoly.letter("x", 5, "free")
    y_free = NCPoly.letter("y", 5, "free")
    assert x_free * y_free != y_free * x_free
    x_comm = NCPoly.letter("x", 5)
    y_comm = NCPoly.letter("y", 5)
    assert x_comm * y_comm == y_comm * x_comm


def test_ncpoly_square_of_sum():
    for mode in ("commutative", "free"):
        x = NCPoly.letter("x", 7, mode)
        y = NCPoly.letter("y", 7, mode)
        square = (x + y) * (x + y)
        expected = x * x + x * y + y * x + y * y
        assert square == expected
    x = NCPoly.letter("x", 7)
    y = NCPoly.letter("y", 7)
    assert (x + y) * (x + y) == x * x + NCPoly.monomial(("x", "y"), 2, 7) + y * y


def test_ncpoly_coefficients_reduce_mod_p():
    x = NCPoly.letter("x", 3)
    assert x + x + x == NCPoly(3, "commutative")
    assert (x + x).coeffs == {("x",): 2}


def test_ncpoly_validation():
    with pytest.raises(BadPrime):
        NCPoly(4, "commutative")
    with pytest.raises(BadParameters):
        NCPoly(5, "weird")
    with pytest.raises(BadParameters):
        NCPoly.letter("x", 5) * NCPoly.letter("x", 7)
    with pytest.raises(BadParameters):
        NCPoly.letter("x", 5) * NCPoly.letter("x", 5, "free")


def test_polymatrix_identity_and_scalar_lift():
    ident = PolyMatrix.identity(3, 5)
    assert ident.is_identity()
    lifted = PolyMatrix.from_scalar_rows([[1, 2], [0, 1]], 5)
    assert lifted.to_scalar_rows() == ((1, 2), (0, 1))
    assert lifted.det() == 1


def test_polymatrix_unitriangular_inverse():
    x = NCPoly.letter("x", 5, "free")
    zero = NCPoly(5, "free")
    one = NCPoly.constant(1, 5, "free")
    m = PolyMatrix(((one, x), (zero, one)))
    inv = m.inverse()
    assert (m * inv).is_identity()
    assert (inv * m).is_identity()


def test_polymatrix_inverse_requires_unipotent_part():
    m = PolyMatrix.from_scalar_rows([[2, 0], [0, 1]], 5)
    with pytest.raises(NonUnitriangularInverse):
        m.inverse()


def test_polymatrix_scalar_rows_requires_constants():
    x = NCPoly.letter("x", 5)
    one = NCPoly.constant(1, 5)
    m = PolyMatrix(((one, x), (NCPoly(5, "commutative"), one)))
    with pytest.raises(UnsupportedAlgebraicForm):
        m.to_scalar_rows()


def test_singer_matrix_smallest_case():
    assert singer_matrix(3, 2) == ((2, 1), (1, 0))


def test_singer_matrix_companion_shape_and_span():
    for p, k in ((3, 2), (5, 2), (7, 2), (5, 3)):
        grid = singer_matrix(p, k)
        assert len(grid) == k
        assert grid[0][k - 1] == 1
        assert all(grid[i][k - 1] == 0 for i in range(1, k))
        assert power_span_size(grid, p) == p ** k


def test_singer_matrix_rejects_trivial_dimension():
    with pytest.raises(OutOfRange):
        singer_matrix(5, 1)


def test_random_matrix_triple_is_deterministic():
    lhs = random_matrix_triple(5, 2, random.Random(11))
    rhs = random_matrix_triple(5, 2, random.Random(11))
    assert lhs == rhs
    assert len(lhs) == 3
    assert all(len(m) == 2 and len(m[0]) == 2 for m in lhs)


def test_verify_rep_all_ids_scalar_case():
    for rep_id in REP_IDS:
        result = verify_rep(rep_id, 5)
        assert result.passed, (rep_id, result.to_dict())


def test_verify_rep_block_case():
    result = verify_rep("A2_block", 5, k=2)
    assert result.passed
    result = verify_rep("C2_sigma", 7, k=2, seed=DEFAULT_SEED + 1)
    assert result.passed


def test_verify_rep_unknown_id():
    with pytest.raises(BadParameters):
        verify_rep("E8_block", 5)


def test_commuting_pair_is_necessary_only():
    for p in (5, 7, 11):
        check = verify_commuting_pair_A2(p)
        assert check.passed
        d = check.to_dict()
        assert d["necessary_only"] is True
        assert d["commute"] and d["product_identity"] and d["reversed_identity"]


def test_kassabov_witness_passes_on_valid_parameters():
    for p, k in ((3, 2), (5, 2), (5, 3)):
        witness = kassabov_witness(p, k)
        assert witness.passed, (p, k)


def test_kassabov_witness_preconditions():
    with pytest.raises(PreconditionViolated):
        kassabov_witness(3, 3)
    with pytest.raises(PreconditionViolated):
        kassabov_witness(5, 4)
    with pytest.raises(PreconditionViolated):
        kassabov_witness(2, 3)


def test_root_group_models():
    u3 = root_group_model("U3", 5)
    assert u3.passed
    assert u3.group_order == 125 == u3.expected_order
    u4 = root_group_model("U4", 5)
    assert u4.passed
    assert u4.group_order == 625 == u4.expected_order
    assert u4.to_dict()["passed"] is True


def test_root_group_model_validation():
    with pytest.raises(BadParameters):
        root_group_model("U5", 5)
    with pytest.raises(BadPrime):
        root_group_model("U3", 2)
    with pytest.raises(BadPrime):
        root_group_model("U3", 9)
