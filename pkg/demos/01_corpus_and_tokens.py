# %% [markdown]
# # From statement pages to token lists
#
# Statements arrive as HTML. `strip_markup` reduces a page to plain text and
# `normalize` runs the eight cleaning steps: special characters, case,
# punctuation, tokenizing, the name/boilerplate blocklist, stopwords, numbers
# and single letters, and finally the Porter stemmer.

# %%
from importlib.resources import files

from fedtopics.corpus import RawDocument, load_corpus, strip_markup
from fedtopics.preprocess import STEPS, PreprocessConfig, normalize, normalize_corpus

page = RawDocument(
    "monetary20081216a",
    "2008-12-16",
    "<html><body><p>The Federal Open Market Committee decided today to establish a "
    "target range for the federal funds rate of 0 to 1/4&nbsp;percent.</p></body></html>",
)
doc = strip_markup(page)
print(doc.text)

# %% [markdown]
# Blocklisted words ("federal", "committee", member names, Reserve Bank
# cities) go before the stopwords, and both are matched on surface forms
# before stemming.

# %%
cfg = PreprocessConfig()
print(STEPS)
print(normalize(doc, cfg).tokens)

# %% [markdown]
# The package ships a 12-statement synthetic corpus in the canonical JSONL
# layout (`id`, `date`, `text`), ordered by date.

# %%
corpus = load_corpus(files("fedtopics.data") / "fixture_corpus.jsonl")
tokens = normalize_corpus(corpus, cfg)
for d in tokens[:3]:
    print(d.date, len(d.tokens), " ".join(d.tokens[:12]))
