import datetime as dt
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from fedtopics.errors import EmptyWindow, NonPositiveCoefficient
from fedtopics.indicators import (
    IndicatorSeries,
    TaylorRuleParams,
    extreme_summary,
    load_series_csv,
    parse_window,
    taylor_rate,
    write_summary_csv,
)

DATA = Path(__file__).parent / "data" / "indicators"
GREAT_RECESSION = (dt.date(2007, 12, 1), dt.date(2010, 6, 30))
COVID = (dt.date(2020, 2, 1), dt.date(2020, 9, 30))


def test_zero_gap():
    assert taylor_rate(TaylorRuleParams(pi_t=2, pi_star=2, r_star=2, y_t=1.5, y_bar=1.5)) == 4


def test_inflation_gap():
    assert taylor_rate(TaylorRuleParams(pi_t=4, pi_star=2, r_star=2, a_pi=0.5)) == 7


@pytest.mark.parametrize("kw", [{"a_pi": 0}, {"a_y": -0.5}])
def test_coefficients_must_be_positive(kw):
    with pytest.raises(NonPositiveCoefficient):
        taylor_rate(TaylorRuleParams(pi_t=2, **kw))


finite = st.floats(-20, 20, allow_nan=False)
coef = st.floats(0.01, 3)


@settings(max_examples=200, deadline=None)
@given(finite, finite, finite, finite, finite, coef, coef)
def test_finite_difference_slopes(pi, pi_star, r_star, y, y_bar, a_pi, a_y):
    p = TaylorRuleParams(pi, pi_star, r_star, y, y_bar, a_pi, a_y)
    h = 1.0
    base = taylor_rate(p)
    d_pi = taylor_rate(TaylorRuleParams(pi + h, pi_star, r_star, y, y_bar, a_pi, a_y)) - base
    d_y = taylor_rate(TaylorRuleParams(pi, pi_star, r_star, y + h, y_bar, a_pi, a_y)) - base
    assert d_pi / h == pytest.approx(1 + a_pi, abs=1e-9)
    assert d_y / h == pytest.approx(a_y, abs=1e-9)


def load_all():
    return [load_series_csv(p.stem, p) for p in sorted(DATA.glob("*.csv"))]


def test_great_recession_window():
    rows = {r.indicator: r for r in extreme_summary(load_all(), GREAT_RECESSION)}
    assert rows["unemployment"].extreme == "max" and rows["unemployment"].value == 9.5
    # ties go to the earliest date
    assert rows["unemployment"].date == dt.date(2009, 6, 1)
    assert rows["interest_rate"].value == 0.16
    assert rows["real_gdp_growth"].value == -8.5
    assert rows["inflation"].value == -2.1


def test_covid_window():
    rows = {r.indicator: r for r in extreme_summary(load_all(), COVID)}
    assert rows["interest_rate"].value == 0.05 and rows["interest_rate"].date == dt.date(2020, 4, 1)
    assert rows["unemployment"].value == 14.7


def test_single_observation():
    s = IndicatorSeries("inflation", ((dt.date(2020, 5, 1), 0.1),))
    (row,) = extreme_summary([s], COVID)
    assert (row.value, row.date) == (0.1, dt.date(2020, 5, 1))


def test_empty_window():
    s = IndicatorSeries("inflation", ((dt.date(2015, 5, 1), 0.1),))
    with pytest.raises(EmptyWindow):
        extreme_summary([s], COVID)


def test_series_validation():
    with pytest.raises(ValueError):
        IndicatorSeries("gdp", ())
    with pytest.raises(ValueError):
        IndicatorSeries("inflation", (("2020-01-01", 1.0), ("2020-01-01", 2.0)))
    with pytest.raises(ValueError):
        IndicatorSeries("inflation", (("2020-01-01", float("nan")),))


obs = st.lists(st.tuples(st.dates(dt.date(2000, 1, 1), dt.date(2001, 12, 31)), finite),
               min_size=1, max_size=30, unique_by=lambda o: o[0])


@settings(max_examples=150, deadline=None)
@given(obs, st.sampled_from(["unemployment", "inflation"]), st.data())
def test_full_range_and_window_monotonicity(o, name, data):
    s = IndicatorSeries(name, tuple(sorted(o)))
    full = (dt.date(2000, 1, 1), dt.date(2001, 12, 31))
    (row,) = extreme_summary([s], full)
    values = [v for _, v in o]
    assert row.value == (max(values) if name == "unemployment" else min(values))
    dates = sorted(d for d, _ in o)
    a = data.draw(st.sampled_from(dates))
    b = data.draw(st.sampled_from([d for d in dates if d >= a]))
    (inner,) = extreme_summary([s], (a, b))
    if name == "unemployment":
        assert inner.value <= row.value
    else:
        assert inner.value >= row.value


def test_csv_round_trip(tmp_path):
    s = load_series_csv("interest_rate", DATA / "interest_rate.csv")
    assert len(s.observations) == 7  # header, comment and "." skipped
    rows = extreme_summary([s], COVID)
    write_summary_csv(rows, tmp_path / "out.csv")
    assert (tmp_path / "out.csv").read_text() == "indicator,extreme,value,date\ninterest_rate,min,0.05,2020-04-01\n"


def test_parse_window():
    assert parse_window("2007-12-01:2010-06-30") == GREAT_RECESSION
    for bad in ("2010-01-01", "2010-06-30:2007-12-01"):
        with pytest.raises(ValueError):
            parse_window(bad)
