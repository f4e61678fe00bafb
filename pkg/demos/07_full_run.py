# %% [markdown]
# # The whole pipeline in one call
#
# `run` preprocesses once, builds both matrices, searches each and writes a
# report bundle per matrix kind. `manifest.json` lists every file it wrote
# with its SHA-256, so identical configurations give identical manifests.
# The same run from a shell:
#
#     fedtopics run --corpus statements.jsonl --kind both --samples 100 --seed 42 --out runs/main

# %%
import json
import tempfile
from importlib.resources import files

from fedtopics.hyperopt import GridSpec, IntRange
from fedtopics.pipeline import RunConfig, run

out = tempfile.mkdtemp(prefix="fedtopics-run-")
cfg = RunConfig(
    corpus=str(files("fedtopics.data") / "fixture_corpus.jsonl"),
    out=out,
    grid=GridSpec(topics=IntRange(2, 4)),
    samples=8,
    iterations=300,
)
manifest = run(cfg)
print(json.dumps({k: v["best"] for k, v in manifest["branches"].items()}, indent=2))
print(len(manifest["artifacts"]), "artifacts under", out)
