# %% [markdown]
# # Topic dominance over time and the topic map
#
# The dominance series pairs each statement date with its topic mixture.
# Dominant periods are runs sharing an argmax topic; short runs fold into
# their predecessor. The map places topics by classical MDS on Jensen-Shannon
# divergences between their word distributions.

# %%
import tempfile
from importlib.resources import files

import numpy as np

from fedtopics.corpus import load_corpus
from fedtopics.lda import LdaHyperparams, fit
from fedtopics.preprocess import normalize_corpus
from fedtopics.trends import dominance_series, dominant_periods, mds_embed, wordcloud_data, write_report
from fedtopics.vectorize import bow_matrix, build_dictionary

corpus = load_corpus(files("fedtopics.data") / "fixture_corpus.jsonl")
tokens = normalize_corpus(corpus)
model = fit(bow_matrix(tokens, build_dictionary(tokens)), LdaHyperparams(K=3, alpha=0.3, eta=0.2, iterations=500))

series = dominance_series(model, corpus)
for p in dominant_periods(series, min_len=2):
    print(p.start, "to", p.end, "topic", p.topic)

# %%
emb = mds_embed(model)
print(np.round(emb.coords, 4), np.round(emb.sizes, 3))
for k, cloud in enumerate(wordcloud_data(model, 6)):
    print(k, [(w, round(v, 3)) for w, v in cloud])

# %% [markdown]
# `write_report` writes CSVs, SVG figures and the top words. Labels are
# supplied by the analyst.

# %%
out = tempfile.mkdtemp(prefix="fedtopics-report-")
paths = write_report(model, corpus, out, labels={0: "Financial markets", 1: "Labor", 2: "Inflation"})
print(*paths, sep="\n")
