# %% [markdown]
# # Taylor rule and crisis-window extremes
#
# The rule sets the nominal rate from inflation and the output gap.

# %%
import datetime as dt

from fedtopics.indicators import IndicatorSeries, TaylorRuleParams, extreme_summary, taylor_rate

print(taylor_rate(TaylorRuleParams(pi_t=2, pi_star=2, r_star=2)))
print(taylor_rate(TaylorRuleParams(pi_t=4, pi_star=2, r_star=2)))
print(taylor_rate(TaylorRuleParams(pi_t=1, pi_star=2, r_star=2, y_t=-3, y_bar=2)))

# %% [markdown]
# Extremes inside a window: the minimum for every indicator except
# unemployment, which reports its maximum. Real series are `date,value` CSVs
# read with `load_series_csv`; the numbers below are made up.

# %%
unemployment = IndicatorSeries("unemployment", (
    (dt.date(2008, 1, 1), 5.0), (dt.date(2009, 10, 1), 10.0), (dt.date(2010, 6, 1), 9.4)))
rate = IndicatorSeries("interest_rate", (
    (dt.date(2008, 1, 1), 3.0), (dt.date(2009, 1, 1), 0.15), (dt.date(2010, 1, 1), 0.11)))
for row in extreme_summary([unemployment, rate], (dt.date(2007, 12, 1), dt.date(2010, 6, 30))):
    print(row)
