import pytest
from pathlib import Path

from ransomguard.pipeline import Document, load_corpus, train_pipeline
from ransomguard.bayes import CLASS_BENIGN, CLASS_RANSOM

CORPUS_DIR = Path(__file__).resolve().parents[1] / "data" / "corpus"


@pytest.fixture(scope="session")
def corpus():
    return load_corpus(CORPUS_DIR)


@pytest.fixture(scope="session")
def trained(corpus):
    return train_pipeline(corpus, seed=42)


@pytest.fixture(scope="session")
def bundle(trained):
    return trained[0]


def make_separable_corpus(per_class: int = 10):
    """Classes with disjoint vocabularies; any sane pipeline scores 1.0."""
    docs = []
    for i in range(per_class):
        docs.append(
            Document(
                id=f"r{i:02d}",
                text=f"zebra quartz violet umbra nectar token{i % 3} zebra quartz",
                label=CLASS_RANSOM,
            )
        )
        docs.append(
            Document(
                id=f"b{i:02d}",
                text=f"maple gravel harbor cedar lantern stone{i % 3} maple gravel",
                label=CLASS_BENIGN,
            )
        )
    return docs
