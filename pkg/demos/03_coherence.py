# %% [markdown]
# # C_v coherence by hand and by library
#
# Probabilities come from boolean sliding windows over the reference texts.
# Each top word gets a vector of NPMI values against the topic's words; a
# word's confirmation is the cosine between its vector and the sum of all of
# them, and the topic score is their mean.

# %%
from fedtopics.coherence import CoherenceConfig, cv_score, npmi, sliding_window_counts

docs = [
    "rate cut inflat labor".split(),
    "rate cut inflat market".split(),
    "rate cut inflat credit".split(),
    "bank labor".split(),
    "oil market".split(),
]
counts = sliding_window_counts(docs, window=110)
print("P(rate) =", counts.prob("rate"), " P(rate, cut) =", counts.prob_pair("rate", "cut"))
print("NPMI(rate, cut) =", round(npmi("rate", "cut", counts), 4))
print("NPMI(bank, oil) =", round(npmi("bank", "oil", counts), 4))

# %%
score = cv_score([["rate", "cut", "inflat"], ["bank", "oil", "credit"]], docs, CoherenceConfig(top_n=3))
print(score)
