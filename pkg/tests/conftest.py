import datetime as dt
from importlib.resources import files

import numpy as np
import pytest

from fedtopics.preprocess import TokenizedDocument
from fedtopics.vectorize import bow_matrix, build_dictionary

TOPIC_WORDS = (("a", "b", "c"), ("x", "y", "z"))


def synthetic_docs(n_docs=200, n_tokens=50, seed=7, alpha=0.5, topics=TOPIC_WORDS, mixtures=None):
    """Documents drawn from the LDA generative process over disjoint vocabularies.

    Returns the documents and the generating mixtures.
    """
    rng = np.random.default_rng(seed)
    K = len(topics)
    if mixtures is None:
        mixtures = rng.dirichlet([alpha] * K, size=n_docs)
    start = dt.date(2000, 1, 1)
    docs = []
    for i, theta in enumerate(mixtures):
        z = rng.choice(K, size=n_tokens, p=theta)
        toks = [topics[k][rng.integers(len(topics[k]))] for k in z]
        docs.append(TokenizedDocument(f"d{i:04d}", start + dt.timedelta(days=i), tuple(toks)))
    return docs, np.asarray(mixtures)


@pytest.fixture(scope="session")
def synthetic():
    docs, mix = synthetic_docs()
    return docs, bow_matrix(docs, build_dictionary(docs, max_df=1.0)), mix


@pytest.fixture(scope="session")
def fixture_corpus_path():
    return str(files("fedtopics.data") / "fixture_corpus.jsonl")


def align(phi, topics=TOPIC_WORDS, terms=None):
    """Map each generating topic to the fitted topic with the most mass on its words."""
    index = {t: j for j, t in enumerate(terms)}
    mass = np.array([[phi[k, [index[w] for w in words]].sum() for k in range(phi.shape[0])]
                     for words in topics])
    return mass.argmax(axis=1), mass


# -- acceptance summary -------------------------------------------------------

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
