"""Property-(T) certificates, curvature gate, Kazhdan thresholds, exact
translation lengths."""

import math

import pytest
from hypothesis import given, strategies as st

from trigroup.certifier import (Surd, closed_form_epsilons, ej_certify,
                                ej_certify_adversarial, ej_certify_from_gaps,
                                flat_witness_length, kms_kazhdan_threshold,
                                npc_gate, z2_exclusion)
from trigroup.errors import (BadType, OutOfRange, UnknownPattern,
                             UnsupportedAlgebraicForm)


RONAN_EPSILON = math.sqrt(2.0) / 3.0


def test_certificate_for_ronan_triple():
    cert = ej_certify(RONAN_EPSILON, RONAN_EPSILON, RONAN_EPSILON)
    assert cert.certified
    assert cert.verdict == "T-certified"
    exact = 2.0 / 3.0 + 4.0 * math.sqrt(2.0) / 27.0
    assert abs(cert.S - exact) < 1e-12
    assert abs(sum(cert.angles) - 3.0 * math.acos(RONAN_EPSILON)) < 1e-12


def test_equal_sixth_root_triple_is_inconclusive():
    e = math.sqrt(3.0) / 3.0
    cert = ej_certify(e, e, e)
    assert not cert.certified
    assert cert.verdict == "inconclusive"
    assert cert.S > 1.0


def test_certificate_to_dict_shape():
    d = ej_certify(0.0, 0.0, 0.0).to_dict()
    assert d["verdict"] == "T-certified"
    assert len(d["angles_degrees"]) == 3
    assert abs(d["angles_degrees"][0] - 90.0) < 1e-9


def test_certify_margin_blocks_borderline():
    assert ej_certify(0.4, 0.4, 0.4).certified
    assert not ej_certify(0.4, 0.4, 0.4, margin=0.5).certified
    with pytest.raises(OutOfRange):
        ej_certify(0.4, 0.4, 0.4, margin=-0.1)


def test_certify_epsilon_range():
    with pytest.raises(OutOfRange):
        ej_certify(1.2, 0.0, 0.0)
    with pytest.raises(OutOfRange):
        ej_certify(-0.1, 0.0, 0.0)


def test_certify_from_gaps():
    delta = 1.0 - RONAN_EPSILON
    cert = ej_certify_from_gaps(delta, delta, delta)
    assert cert.certified
    assert abs(cert.epsilons[0] - RONAN_EPSILON) < 1e-15
    with pytest.raises(OutOfRange):
        ej_certify_from_gaps(-0.1, 0.5, 0.5)


def test_adversarial_certificate_uses_worst_case_margin():
    eps = (RONAN_EPSILON,) * 3
    tight = ej_certify_adversarial(eps, (1e-12, 1e-12, 1e-12))
    assert tight.certified
    wide = ej_certify_adversarial(eps, (0.2, 0.2, 0.2))
    assert not wide.certified
    assert wide.margin > tight.margin


def test_npc_gate_classification():
    assert npc_gate(2, 3, 7).klass == "hyperbolic"
    assert npc_gate(4, 4, 4).klass == "hyperbolic"
    assert npc_gate(3, 3, 3).klass == "euclidean-borderline"
    assert npc_gate(2, 4, 4).klass == "euclidean-borderline"
    assert npc_gate(2, 2, 2).klass == "violates-NPC"
    with pytest.raises(OutOfRange):
        npc_gate(1, 3, 3)


def test_closed_form_epsilon_triples():
    a = 1.0 / math.sqrt(5.0)
    b = math.sqrt(2.0 / 5.0)
    assert closed_form_epsilons((2, 4, 4), 5) == (0.0, b, b)
    assert closed_form_epsilons((3, 3, 3), 5) == (a, a, a)
    assert closed_form_epsilons((3, 3, 4), 5) == (a, a, b)
    assert closed_form_epsilons((3, 4, 4), 5) == (a, b, b)
    assert closed_form_epsilons((4, 4, 4), 5) == (b, b, b)
    with pytest.raises(BadType):
        closed_form_epsilons((2, 3, 7), 5)


FIRST_CERTIFIED = {
    (2, 4, 4): 5,
    (3, 3, 3): 5,
    (3, 3, 4): 7,
    (3, 4, 4): 7,
    (4, 4, 4): 11,
}

ODD_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)


def test_threshold_first_certified_primes():
    for half_girth_type, cutoff in FIRST_CERTIFIED.items():
        for p in ODD_PRIMES:
            verdict = kms_kazhdan_threshold(half_girth_type, p)
            assert verdict.certified == (p >= cutoff), (half_girth_type, p)


def test_threshold_agrees_with_certificate_of_closed_forms():
    for half_girth_type in FIRST_CERTIFIED:
        for p in ODD_PRIMES:
            verdict = kms_kazhdan_threshold(half_girth_type, p)
            cert = ej_certify(*closed_form_epsilons(half_girth_type, p))
            assert verdict.certified == cert.certified


def test_threshold_parameter_validation():
    with pytest.raises(BadType):
        kms_kazhdan_threshold((3, 3, 3), 2)
    with pytest.raises(BadType):
        kms_kazhdan_threshold((3, 3, 3), 9)
    with pytest.raises(BadType):
        kms_kazhdan_threshold((2, 3, 7), 5)


def test_threshold_cubic_values_are_exact_integers():
    verdict = kms_kazhdan_threshold((4, 4, 4), 11)
    assert verdict.cubic_value == 11 ** 3 - 12 * 11 ** 2 + 36 * 11 - 32
    assert kms_kazhdan_threshold((2, 4, 4), 5).cubic_value is None


def test_surd_normalization():
    assert Surd(1, 8) == Surd(2, 2)
    assert Surd(3, 9) == Surd(9, 1)
    assert Surd(0, 7) == Surd(0)
    assert abs(float(Surd(1, 2)) - math.sqrt(2.0)) < 1e-15


def test_surd_multiplication_and_ratio():
    assert Surd(1, 2) * Surd(1, 2) == Surd(2)
    assert Surd(2, 3) * 2 == Surd(4, 3)
    assert Surd(3, 2).ratio(Surd(1, 2)) == Surd(3)
    mixed = Surd(1, 3).ratio(Surd(1, 2))
    assert not mixed.is_rational
    assert abs(float(mixed) - math.sqrt(1.5)) < 1e-15


def test_surd_validation():
    with pytest.raises(UnsupportedAlgebraicForm):
        Surd(-1)
    with pytest.raises(UnsupportedAlgebraicForm):
        Surd(1, 0)
    with pytest.raises(ZeroDivisionError):
        Surd(1, 2).ratio(Surd(0))


def test_flat_witness_lengths():
    assert flat_witness_length("abcb'", (3, 3, 3)) == Surd(1, 3)
    assert flat_witness_length("abca'b'c'", (3, 3, 3)) == Surd(3)
    assert flat_witness_length("acbc'", (2, 4, 4)) == Surd(1, 2)
    with pytest.raises(UnknownPattern):
        flat_witness_length("zzz", (3, 3, 3))
    with pytest.raises(UnknownPattern):
        flat_witness_length("abcb'", (9, 9, 9))


def test_z2_exclusion_dichotomy():
    kind, ratio = z2_exclusion(Surd(2, 2), Surd(1, 2))
    assert kind == "ratio-rational" and ratio == (2, 1)
    kind, ratio = z2_exclusion(Surd(1, 3), Surd(1, 2))
    assert kind == "ratio-irrational" and ratio is None
    kind, ratio = z2_exclusion(3, 2)
    assert kind == "ratio-rational" and ratio == (3, 2)
    with pytest.raises(UnsupportedAlgebraicForm):
        z2_exclusion(Surd(0), Surd(1))


@given(st.floats(min_value=0.0, max_value=0.999),
       st.floats(min_value=0.0, max_value=0.999),
       st.floats(min_value=0.0, max_value=0.999))
def test_s_form_and_angle_form_agree(e0, e1, e2):
    s = e0 * e0 + e1 * e1 + e2 * e2 + 2.0 * e0 * e1 * e2
    if abs(s - 1.0) <= 1e-9:
        return
    cert = ej_certify(e0, e1, e2)
    angle_sum = math.acos(e0) + math.acos(e1) + math.acos(e2)
    assert cert.certified == (angle_sum > math.pi)
    assert cert.certified == (s < 1.0)
