# %% [markdown]
# # Bag-of-words, tf-idf and a Gibbs-sampled LDA fit
#
# Terms found in more than half of the statements are dropped before the
# matrices are built. tf-idf scales counts by `ln(d / f_j)`.

# %%
from importlib.resources import files

import numpy as np

from fedtopics.corpus import load_corpus
from fedtopics.lda import LdaHyperparams, fit, infer_theta, top_words
from fedtopics.preprocess import normalize_corpus
from fedtopics.vectorize import bow_matrix, build_dictionary, tfidf_transform

tokens = normalize_corpus(load_corpus(files("fedtopics.data") / "fixture_corpus.jsonl"))
dictionary = build_dictionary(tokens, max_df=0.5)
A = bow_matrix(tokens, dictionary)
T = tfidf_transform(A)
print("bow", A.shape, "tf-idf", T.shape)

# %% [markdown]
# A bag-of-words cell with count `c` becomes `c` sampling sites; a tf-idf
# cell is a single site carrying its real weight. Same seed, same model.

# %%
hyper = LdaHyperparams(K=4, alpha=0.55, eta=0.45, iterations=500, seed=42)
for matrix in (A, T):
    model = fit(matrix, hyper)
    print(matrix.kind)
    for k in range(model.K):
        print("  topic", k, [w for w, _ in top_words(model, k, 8)])

# %% [markdown]
# The log-likelihood trace holds the initial state and then the mean over
# each block of 50 sweeps.

# %%
model = fit(A, hyper)
for sweep, ll in model.loglik_trace[:4]:
    print(sweep, round(ll, 1))

# %% [markdown]
# Unseen text is folded in with the topic-word table held fixed.

# %%
print(np.round(infer_theta(model, tokens[-1], seed=0), 3))
