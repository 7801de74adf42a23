import random

import pytest

from scx.cli import load_document
from scx.groups import enumerate_quotients
from scx.models import BUILDERS, presentation_complex
from scx.sutured import SuturedComplex

BUNDLED = sorted(BUILDERS)
SUTURED_BUNDLED = ["product_D2", "product_A1", "product_T1",
                   "meridional_solidtorus", "slope2_solidtorus",
                   "d3_two_sutures"]


@pytest.fixture(scope="session")
def docs():
    return {name: load_document(f"bundled:{name}") for name in BUNDLED}


@pytest.fixture(scope="session")
def sutured(docs):
    return {name: SuturedComplex(docs[name]) for name in SUTURED_BUNDLED}


def random_presentation_doc(rng: random.Random):
    """A random small presentation complex (any word is a valid relator)."""
    ngens = rng.randint(1, 3)
    names = ["a", "b", "c"][:ngens]
    relators = []
    for _ in range(rng.randint(0, 2)):
        length = rng.randint(1, 6)
        letters = []
        for _ in range(length):
            g = rng.randint(1, ngens)
            letters.append(g if rng.random() < 0.5 else -g)
        word = "*".join(names[abs(k) - 1] + ("" if k > 0 else "^-1")
                        for k in letters)
        relators.append(word)
    return presentation_complex(names, relators)


def random_quotient(pres, rng: random.Random, max_degree=3):
    pool = list(enumerate_quotients(pres, max_degree))
    return rng.choice(pool) if pool else None
