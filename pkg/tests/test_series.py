import pytest

from traceideal.scalars import make_field
from traceideal.series import PrecisionError, Series, parse_series, parse_series_list

F2 = make_field("F2")
F3 = make_field("F3")
Q = make_field("Q")


def test_parse_and_print():
    f = parse_series("t4-1t5", F3)
    assert f.coeffs == {4: 1, 5: 2}
    assert str(f) == "t4+2t5"
    assert str(parse_series("2t3", Q)) == "2t3"
    assert parse_series("t^-2+1", Q).coeffs == {-2: 1, 0: 1}
    F8 = make_field("F8/F2")
    g = parse_series("(x+1)t^3", F8)
    assert g.coeffs == {3: (1, 1, 0)}
    assert [str(s) for s in parse_series_list("t4,t5,t6", F2)] == ["t4", "t5", "t6"]


@pytest.mark.parametrize("bad", ["", "t4+", "a t5", "t4**2"])
def test_parse_errors(bad):
    with pytest.raises(ValueError):
        parse_series(bad, Q)


def test_product_precision_window():
    a = Series(Q, {2: 1, 3: 1}, prec=10)
    b = Series(Q, {1: 1}, prec=6)
    # known below min(v1 + h2, v2 + h1) = min(2 + 6, 1 + 10)
    assert (a * b).prec == 8


def test_inverse():
    f = parse_series("1+t", Q)
    g = f.inverse(precision=6)
    assert g.prec == 6
    assert (f * g).agrees_with(Series.one(Q))
    assert Series.monomial(Q, 3).inverse().is_exact
    with pytest.raises(PrecisionError):
        f.inverse()


def test_valuation_of_unknown_zero():
    with pytest.raises(PrecisionError):
        Series(Q, {}, prec=5).valuation
    assert Series.zero(Q).valuation == float("inf")
