"""Finite fields, permutation and matrix contexts, group closure."""

import pytest
from hypothesis import given, strategies as st

from trigroup.algebra import (FieldSpec, FiniteGroup, GroupElement,
                              MatrixContext, PermContext, ProjContext,
                              check_subgroup, closure, cyclic_subgroup,
                              is_prime, subgroup_from_raws)
from trigroup.errors import CapExceeded, NotSubgroup


def test_is_prime_small_values():
    primes = {2, 3, 5, 7, 11, 13, 109, 131, 997}
    for n in primes:
        assert is_prime(n)
    for n in (-7, 0, 1, 4, 9, 91, 561):
        assert not is_prime(n)


def test_prime_field_arithmetic():
    f5 = FieldSpec(5)
    assert f5.q == 5
    assert f5.add(3, 4) == 2
    assert f5.sub(1, 3) == 3
    assert f5.mul(3, 4) == 2
    for a in range(1, 5):
        assert f5.mul(a, f5.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        f5.inv(0)


def test_prime_field_element_orders():
    f7 = FieldSpec(7)
    assert f7.element_order(3) == 6
    assert f7.element_order(2) == 3
    assert f7.element_order(6) == 2
    assert f7.element_order(1) == 1
    with pytest.raises(ZeroDivisionError):
        f7.element_order(0)


def test_extension_field_f9():
    f9 = FieldSpec(3, 2)
    assert f9.q == 9
    z = f9.encode((0, 1))
    one = f9.encode((1, 0))
    assert f9.mul(z, f9.inv(z)) == one == 1
    orders = {f9.element_order(a) for a in range(1, 9)}
    assert max(orders) == 8
    for a in range(1, 9):
        assert 8 % f9.element_order(a) == 0


def test_extension_field_requires_modulus_beyond_f9():
    with pytest.raises(ValueError):
        FieldSpec(5, 2)
    f25 = FieldSpec(5, 2, modulus=(2, 0, 1))
    assert f25.q == 25
    for a in range(1, 25):
        assert f25.mul(a, f25.inv(a)) == 1


def test_encode_decode_round_trip():
    f9 = FieldSpec(3, 2)
    for index in range(9):
        assert f9.encode(f9.decode(index)) == index


def test_perm_context_composition_and_inverse():
    ctx = PermContext(5)
    a = GroupElement(ctx, PermContext.from_cycles(5, [(1, 2, 3)]))
    b = GroupElement(ctx, PermContext.from_cycles(5, [(3, 4)]))
    assert (a * a.inverse()).is_identity()
    assert a.order() == 3
    assert b.order() == 2
    assert (a * b) != (b * a)
    assert (a * b).inverse() == b.inverse() * a.inverse()
    assert (a ** 3).is_identity()


def test_group_element_power():
    ctx = PermContext(6)
    g = GroupElement(ctx, PermContext.from_cycles(6, [(1, 2, 3, 4, 5, 6)]))
    assert g ** 6 == g ** 0
    assert (g ** -1) == g.inverse()
    assert (g ** 4) == g * g * g * g


def test_matrix_context_over_f5():
    ctx = MatrixContext(FieldSpec(5), 2)
    m = GroupElement(ctx, ctx.from_rows([[1, 1], [0, 1]]))
    assert m.order() == 5
    assert (m * m.inverse()).is_identity()
    n = GroupElement(ctx, ctx.from_rows([[2, 0], [0, 3]]))
    assert (n * m) != (m * n)


def test_proj_context_identifies_scalars():
    ctx = ProjContext(FieldSpec(5), 2)
    scalar = GroupElement(ctx, ctx.from_rows([[2, 0], [0, 2]]))
    assert scalar.is_identity()
    m = GroupElement(ctx, ctx.from_rows([[1, 1], [0, 1]]))
    double = GroupElement(ctx, ctx.from_rows([[2, 2], [0, 2]]))
    assert m == double


def test_closure_symmetric_group():
    ctx = PermContext(3)
    t = GroupElement(ctx, PermContext.from_cycles(3, [(1, 2)]))
    c = GroupElement(ctx, PermContext.from_cycles(3, [(1, 2, 3)]))
    s3 = closure([t, c])
    assert isinstance(s3, FiniteGroup)
    assert s3.order == 6
    assert len(s3) == 6
    assert t in s3 and (t * c) in s3
    assert s3.identity.is_identity()


def test_closure_cap():
    ctx = PermContext(5)
    g = GroupElement(ctx, PermContext.from_cycles(5, [(1, 2, 3, 4, 5)]))
    h = GroupElement(ctx, PermContext.from_cycles(5, [(1, 2)]))
    with pytest.raises(CapExceeded):
        closure([g, h], cap=10)


def test_cyclic_subgroup_and_membership():
    ctx = PermContext(6)
    g = GroupElement(ctx, PermContext.from_cycles(6, [(1, 2, 3, 4, 5, 6)]))
    c6 = cyclic_subgroup(g)
    assert c6.order == 6
    c3 = cyclic_subgroup(g * g)
    assert c3.order == 3
    assert c3.is_subgroup_of(c6)
    check_subgroup(c3, c6)


def test_check_subgroup_rejects_non_subgroup():
    ctx = PermContext(4)
    g = GroupElement(ctx, PermContext.from_cycles(4, [(1, 2, 3, 4)]))
    h = GroupElement(ctx, PermContext.from_cycles(4, [(1, 2)]))
    c4 = cyclic_subgroup(g)
    c2 = cyclic_subgroup(h)
    with pytest.raises(NotSubgroup):
        check_subgroup(c2, c4)


def test_intersection_and_union_generates():
    ctx = PermContext(4)
    a = GroupElement(ctx, PermContext.from_cycles(4, [(1, 2, 3)]))
    b = GroupElement(ctx, PermContext.from_cycles(4, [(2, 3, 4)]))
    A, B = cyclic_subgroup(a), cyclic_subgroup(b)
    alt4 = closure([a, b])
    meet = A.intersection(B)
    assert meet.order == 1
    assert A.union_generates(B, alt4)
    assert not A.union_generates(A, alt4)


def test_subgroup_from_raws():
    ctx = PermContext(3)
    c = GroupElement(ctx, PermContext.from_cycles(3, [(1, 2, 3)]))
    sub = subgroup_from_raws(ctx, [ctx.identity(), c.raw, (c * c).raw])
    assert sub.order == 3
    assert c in sub


@given(st.permutations(list(range(5))))
def test_permutation_inverse_property(image):
    ctx = PermContext(5)
    g = GroupElement(ctx, tuple(image))
    assert (g * g.inverse()).is_identity()
    assert (g.inverse() * g).is_identity()
    order = g.order()
    assert (g ** order).is_identity()
    assert order >= 1
