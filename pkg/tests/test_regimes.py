import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tdsolve.errors import RegimeError
from tdsolve.regimes import BClass, Case, Params, Picture, Row, Subclass, classify, tprime_domain
from tdsolve.timemaps import tprime_offset


@pytest.mark.parametrize(
    "picture,a,b,omega,t_o,key,row",
    [
        ("TO", 1, 0.5, 1, 1, "{1;(-1,inf)}", Row.CASE1_GT),
        ("TO", 1, -3, 1, 1, "{1;(-inf,-1)}", Row.CASE1_LT),
        ("TO", 1, -1, 1, 1, "{1;-1}", Row.SHO),
        ("TO", 0.5, 1, 1, 1, "{!=1;(a-2,inf)}", Row.BESSEL_GT),
        ("TO", 0.5, -2, 1, 1, "{!=1;(-inf,a-2)}", Row.BESSEL_LT),
        ("TO", 0.5, -1.5, 1, 0.1, "{!=1;a-2;t_o<|1-a|/2w;+}", Row.CRIT_LT),
        ("TO", 0.5, -1.5, 1, 0.25, "{!=1;a-2;t_o=|1-a|/2w;+}", Row.CRIT_EQ),
        ("TO", 3, 1, 2, 1, "{!=1;a-2;t_o>|1-a|/2w;-}", Row.CRIT_GT),
        ("TM", 1, -1, 1, 1, "{1;-1}", Row.SHO),
        ("TM", 1, 0.5, 1, 1, "{!=0;(a-2,inf)}", Row.BESSEL_GT),
        ("TM", 2, 1, 1, 1, "{!=0;(a-2,inf)}", Row.BESSEL_GT),
        ("TQ", -1, -5, 1, 1, "{!=0;(-inf,a-2)}", Row.BESSEL_LT),
        ("TQ", 3, 1, 1, 2, "{!=0,1;a-2;t_o>|1-a|/2w;-}", Row.CRIT_GT),
        ("TM", 3, 1, 1, 1, "{!=0,1;a-2;t_o=|1-a|/2w;-}", Row.CRIT_EQ),
    ],
)
def test_table_of_keys(picture, a, b, omega, t_o, key, row):
    k = classify(Params(a, b, omega, t_o), picture)
    assert k.key == key
    assert k.row is row


def test_critical_report_fields():
    k = classify(Params(3, 1, 2, 1), "to")
    assert k.klass is BClass.CRITICAL and k.subclass is Subclass.T_GT
    assert k.sign_tag == "-"
    assert k.case is Case.CASE2
    assert k.params.critical_t == 0.5
    assert k.label == "TO{a=3;b=1;crit;t_o>|1-a|/2w;-}"


def test_special_flag():
    assert classify(Params(0.5, -0.5, 1, 1)).special
    assert not classify(Params(0.5, -0.4, 1, 1)).special


@pytest.mark.parametrize("picture", ["TM", "TQ", "tm"])
def test_a_zero_rejected_outside_to(picture):
    with pytest.raises(RegimeError, match="a=0: transformation is the identity"):
        classify(Params(0, 1, 1, 1), picture)


def test_a_zero_allowed_in_to():
    assert classify(Params(0, 1, 1, 1), "TO").row is Row.BESSEL_GT


@pytest.mark.parametrize("kw,msg", [(dict(t_o=0.0), "t_o > 0"), (dict(t_o=-1.0), "t_o > 0"),
                                    (dict(omega=0.0), "omega"), (dict(a=math.nan), "finite")])
def test_params_validation(kw, msg):
    base = dict(a=1.0, b=0.0, omega=1.0, t_o=1.0) | kw
    with pytest.raises(RegimeError, match=msg):
        Params(**base)


def test_bad_picture():
    with pytest.raises(ValueError, match="picture"):
        classify(Params(1, 0, 1, 1), "XY")


def test_near_boundary_resolution_is_deterministic():
    a = 0.5
    assert classify(Params(a, a - 2 + 1e-14, 1, 1)).klass is BClass.CRITICAL
    assert classify(Params(a, a - 2 + 1e-9, 1, 1)).klass is BClass.B_GT
    assert classify(Params(a, a - 2 - 1e-9, 1, 1)).klass is BClass.B_LT
    # t_o within relative eps of the threshold counts as equal
    assert classify(Params(a, a - 2, 1, 0.25 * (1 + 1e-14))).subclass is Subclass.T_EQ
    assert classify(Params(1 + 1e-14, -1, 1, 1)).row is Row.SHO


def test_to_dict_roundtrip_fields():
    d = classify(Params(2, 1, 1, 1), Picture.TQ).to_dict()
    assert d["picture"] == "TQ" and d["key"] == "{!=0;(a-2,inf)}" and d["row"] == "bessel_gt"


def test_tprime_domain():
    assert tprime_domain(Params(3, 1, 1, 2)).upper == pytest.approx(1.0)
    assert math.isinf(tprime_domain(Params(0.5, 1, 1, 2)).upper)
    assert math.isinf(tprime_domain(Params(1, 1, 1, 2)).upper)
    dom = tprime_domain(Params(3, 1, 1, 2))
    assert 0.0 in dom and 0.99 in dom and 1.0 not in dom and -0.1 not in dom


@settings(max_examples=200, deadline=None)
@given(
    st.floats(-3, 3).filter(lambda a: abs(a) > 1e-3),
    st.floats(0.1, 10),
    st.floats(0, 6),
)
def test_image_of_t_domain_lies_in_tprime_domain(a, t_o, log10_r):
    p = Params(a, 0.0, 1.0, t_o)
    off = float(tprime_offset(t_o * 10**log10_r, p))
    assert off in tprime_domain(p)
