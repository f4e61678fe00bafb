# %% [markdown]
# # Randomized grid search
#
# K runs from 3 to 10; alpha and eta take 15 values each starting at 0.05 in
# steps of 0.1, which gives 1800 grid points. A seeded draw picks the
# configurations to try. Each fit's seed is derived from the global seed and
# the configuration alone, so the order of evaluation does not matter.

# %%
from importlib.resources import files

from fedtopics.coherence import CoherenceConfig
from fedtopics.corpus import load_corpus
from fedtopics.hyperopt import FitOptions, GridSpec, enumerate_grid, sample_configs, search, select_best
from fedtopics.preprocess import normalize_corpus
from fedtopics.vectorize import bow_matrix, build_dictionary

grid = enumerate_grid(GridSpec())
print(len(grid), grid[0], grid[-1])

# %%
tokens = normalize_corpus(load_corpus(files("fedtopics.data") / "fixture_corpus.jsonl"))
A = bow_matrix(tokens, build_dictionary(tokens))
configs = sample_configs(grid, 12, seed=42)
results = search(A, configs, FitOptions(iterations=300), CoherenceConfig(), reference=tokens)
print("n_topics,alpha,eta,coherence")
for r in results[:10]:
    print(f"{r.K},{r.alpha:g},{r.eta:g},{r.coherence:.6f}")
print("best:", select_best(results))
