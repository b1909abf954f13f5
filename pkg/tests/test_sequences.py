import random
from fractions import Fraction as Fr

import pytest
import sympy
from hypothesis import given, strategies as st

from ellcf.cfquartic import QuarticCurve, e_values, expand, init_from_point, random_instance
from ellcf.curves import Affine, InfinityO, WeierstrassCurve
from ellcf.errors import InvalidK, NoNormalization, PreconditionFailed, TorsionTruncation
from ellcf.field import GF, QQ
from ellcf.sequences import (EDSequence, IndexedSequence, SomosRelation, curve_relation,
                             curve_to_somos_coefficients, derive_somos8_coefficients, e_product_failures,
                             e_stream_of, eds_closed_forms, eds_generate, fit_relation, integer_renormalize,
                             products_divisible, random_ward_triples, reprise_solve, sequence_from_e,
                             shipsey_denominator_check, somos8_identity_as_printed, somos8_identity_closed,
                             somos8_identity_cubic, somos_generate, torsion_detect, twist_coefficients,
                             twist_transform, verify_relation, ward_checks)

C41 = QuarticCurve(-29, -48, 240)
C42 = QuarticCurve(-3, 1, 2)
ONES = [Fr(1)] * 4


def _stream(c, M, v0, n=12):
    return e_values(expand(c, init_from_point(c, M, v0), n, n, truncate=True))


def test_indexed_sequence_window_and_json():
    A = IndexedSequence([1, 2, 3], -1)
    assert (A.lo, A.hi, A[0]) == (-1, 1, 2)
    with pytest.raises(KeyError):
        A[5]
    assert IndexedSequence.from_json(A.to_json()) == A
    assert A.to_csv().splitlines() == ["h,value", "-1,1", "0,2", "1,3"]
    with pytest.raises(ValueError):
        IndexedSequence({0: 1, 2: 1})


def test_constant_e_gives_constant_sequence():
    A = sequence_from_e({h: Fr(1) for h in range(-5, 6)}, Fr(1), Fr(1))
    assert set(A.as_dict().values()) == {1} and (A.lo, A.hi) == (-6, 6)


def test_twist_examples():
    A = IndexedSequence([Fr(1)] * 5, -1)
    assert twist_transform(A, 2).window(-1, 3) == [1, 1, 2, 8, 64]
    assert twist_transform(twist_transform(A, 2), Fr(1, 2)) == A
    assert e_stream_of(twist_transform(A, 3)) == {h: 3 for h in range(0, 3)}


def test_twisted_coefficients_match_a_fit():
    C = somos_generate(SomosRelation(4, 1, 1), ONES, lo=-12, hi=12)
    for gap in (4, 5, 6, 7):
        rel = fit_relation(C, gap)
        for k in (2, Fr(-1, 3)):
            assert fit_relation(twist_transform(C, k), gap) == twist_coefficients(rel, k)


def test_second_example_sequences_and_relations():
    e = _stream(C42, (1, 0), 1)
    C = sequence_from_e(e, Fr(1), Fr(1))
    assert C.window(-2, 7) == [2, 1, 1, 1, 1, 2, 3, 7, 23, 59]
    got = curve_to_somos_coefficients(C42)
    assert [(r.kappa, r.lam) for r in (got[4], got[5], got[6], got[8])] == [(1, 1), (-1, 5), (1, 5), (25, -4)]
    for r in got.values():
        assert verify_relation(C, r, C.lo, C.hi).ok
    assert derive_somos8_coefficients(1, -1, -5, -4) == SomosRelation(8, 25, -4)


def test_somos4_integers():
    C = somos_generate(SomosRelation(4, 1, 1), ONES, lo=-30, hi=30)
    assert all(x.denominator == 1 for _, x in C.items())
    assert C.window(0, 9) == [1, 1, 1, 1, 2, 3, 7, 23, 59, 314]


def test_somos_generate_rejects_wrong_length():
    with pytest.raises(ValueError):
        somos_generate(SomosRelation(5, 1, 1), ONES, hi=5)


@pytest.mark.parametrize("field", [QQ, GF(101)], ids=["Q", "F101"])
@given(seed=st.integers(0, 10 ** 6))
def test_curve_relations_hold_for_every_start(field, seed):
    rng = random.Random(seed)
    c, M, v0 = random_instance(field, rng)
    e = _stream(c, M, v0)
    A = sequence_from_e(e, field.random(rng, nonzero=True), field.random(rng, nonzero=True))
    assert e_product_failures(A, e) == []
    W = eds_generate(c, 8)
    for gap in range(4, 12):
        if W.torsion is not None and W.torsion <= gap // 2 + 2:
            continue
        rel = curve_relation(c, gap)
        assert verify_relation(A, rel, A.lo, A.hi).first_failure is None


def test_fit_relation_none_for_generic_sequence():
    A = IndexedSequence([Fr(x) for x in (1, 2, 5, 3, 17, 4, 9, 11, 30)], 0)
    assert fit_relation(A, 4) is None


def test_first_example_renormalization():
    e = {h: x / 4 for h, x in _stream(C41, (-3, -4), 8, 10).items()}
    A = sequence_from_e(e, Fr(1), Fr(1))
    assert A.window(-3, 5) == [288, 12, 2, 1, 1, 3, 36, 972, 58320]
    r = integer_renormalize(A, SomosRelation(5, 1, 1))
    assert r.source == SomosRelation(5, 36, 216)
    assert (r.c[0], r.c[1]) == (2, 3)
    assert r.B.window(-4, 8) == [3, 2, 1, 1, 1, 1, 1, 2, 3, 5, 11, 37, 83]
    assert products_divisible(A, -2, 3, 6 ** 3, range(-8, 9)) == []
    assert products_divisible(A, -1, 2, 6, range(-8, 9)) == []
    assert products_divisible(A, 0, 1, 6, range(0, 3)) == [0, 1]


def test_second_example_renormalization_is_trivial():
    C = sequence_from_e(_stream(C42, (1, 0), 1), Fr(1), Fr(1))
    r = integer_renormalize(C, SomosRelation(4, 1, 1))
    assert set(r.c.values()) == {1} and r.B == C


def test_renormalize_reports_impossible_target():
    C = somos_generate(SomosRelation(4, 1, 1), ONES, lo=-8, hi=8)
    with pytest.raises(NoNormalization):
        integer_renormalize(C, SomosRelation(4, 2, 1))


def test_eds_of_second_example():
    W = eds_generate(C42, 16)
    assert isinstance(W, EDSequence) and W.torsion is None
    assert W.window(-3, 9) == [1, -1, -1, 0, 1, 1, -1, -5, -4, 29, 129, -65, -3689]
    rep = ward_checks(W, 6, [(8, 5, 2), (7, 4, 3), (6, 3, 1)])
    assert rep.ok and rep.divisibility_checked and rep.gcd_checked and rep.redundant_checked == 3


def test_eds_against_group_law():
    # x(hS) W_h^2 = -W_{h-1} W_{h+1} for the point S = (0, 0)
    rng = random.Random(2)
    for _ in range(20):
        c, _, _ = random_instance(QQ, rng)
        E = WeierstrassCurve.from_quartic(c)
        W = eds_generate(c, 10)
        P = InfinityO
        for h in range(1, 10):
            P = E.add(P, Affine(0, 0))
            if P is InfinityO:
                break
            assert P.x * W[h] ** 2 == -W[h - 1] * W[h + 1]


def test_eds_closed_forms_symbolic():
    f, v, w = sympy.symbols("f v w")
    k = f + w ** 2
    W = {1: 1, 2: v, 3: -v ** 2 * k, 4: -v ** 4 * (v + 2 * w * k)}
    W5 = sympy.expand(W[2] ** 3 * W[4] - W[3] ** 3)
    assert sympy.expand(W5 + v ** 6 * (v * (v + 2 * w * k) - k ** 3)) == 0
    assert sympy.expand(W[2] ** 5 + W[4] + 2 * v ** 4 * w * k) == 0
    # the other printed form only holds on 2w = 1
    assert sympy.factor(W[2] ** 5 + W[4] - W[2] ** 2 * W[3]) == sympy.factor(-v ** 4 * k * (2 * w - 1))
    assert eds_closed_forms(C42) == {1: 1, 2: 1, 3: -1, 4: -5, 5: -4}


def test_somos8_identity_predicates():
    rng = random.Random(9)
    for _ in range(30):
        c, _, _ = random_instance(QQ, rng)
        W = eds_generate(c, 5)
        assert somos8_identity_closed(c)
        assert somos8_identity_cubic(W[2], W[3], W[4], W[5])
    assert not somos8_identity_as_printed(C42)
    assert somos8_identity_as_printed(QuarticCurve.from_fvw(-3, 1, Fr(1, 2)))


def test_ward_on_random_curves():
    rng = random.Random(4)
    for _ in range(10):
        c, _, _ = random_instance(QQ, rng)
        W = eds_generate(c, 16)
        assert ward_checks(W, 6, random_ward_triples(rng, 5, 14)).ok


def test_ward_out_of_window_triple_is_a_notice():
    rep = ward_checks(eds_generate(C42, 6), 2, [(9, 8, 1)])
    assert rep.ok and rep.redundant_checked == 0 and rep.notices


def test_shipsey():
    rep = shipsey_denominator_check(C42, 15)
    assert rep.ok and rep.checked == list(range(1, 16))
    with pytest.raises(PreconditionFailed):
        shipsey_denominator_check(C41, 5)


def test_torsion():
    t3 = torsion_detect(QuarticCurve.from_fvw(-1, 1, 1))
    assert (t3.m, t3.quasi_period, t3.period) == (3, 2, 2) and t3.consistent and t3.period_rule_ok
    t4 = torsion_detect(QuarticCurve.from_fvw(0, -2, 1))
    assert (t4.m, t4.quasi_period, t4.kappa, t4.period) == (4, 3, 4, 6) and t4.period_rule_ok
    t2 = torsion_detect(QuarticCurve(0, 0, 3))
    assert (t2.m, t2.quasi_period) == (2, 1) and t2.consistent
    assert not torsion_detect(C42, 20).found
    with pytest.raises(TorsionTruncation):
        eds_generate(QuarticCurve.from_fvw(-1, 1, 1), 8, strict=True)
    assert eds_generate(QuarticCurve.from_fvw(-1, 1, 1), 8).hi == 3


@pytest.mark.parametrize("k", [-2, 1, 3, Fr(1, 2), Fr(-5, 3)])
def test_reprise(k):
    r = reprise_solve(k)
    e = e_values(expand(r.curve, r.start, 3))
    k2 = Fr(k) ** 2
    assert [e[h] / k2 for h in range(3)] == [2, 3, 4]
    assert r.c == (2 * k2, 3 * k2)


def test_reprise_reproduces_first_example():
    r = reprise_solve(-2)
    assert r.curve == C41 and r.start == init_from_point(C41, (-3, -4), 8)
    with pytest.raises(InvalidK):
        reprise_solve(0)
