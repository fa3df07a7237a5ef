import math
from collections import defaultdict

import numpy as np
import pytest
from hypothesis import strategies as st

from avgentropy.dist import JointDistribution


def oracle_entropy_vector(dist):
    """Dict-based marginal entropies straight from the support list."""
    out = {}
    support = dist.support
    for mask in range(1, 1 << dist.n):
        cols = [i for i in range(dist.n) if mask >> i & 1]
        marg = defaultdict(float)
        for labels, p in support:
            marg[tuple(labels[i] for i in cols)] += p
        out[mask] = -sum(p * math.log2(p) for p in marg.values())
    return out


@st.composite
def distributions(draw, n=None, max_alphabet=3, max_n=4):
    n = draw(st.integers(1, max_n)) if n is None else n
    sizes = [draw(st.integers(1, max_alphabet)) for _ in range(n)]
    cells = list(np.ndindex(*sizes))
    chosen = draw(st.lists(st.sampled_from(cells), min_size=1, max_size=len(cells), unique=True))
    weights = draw(st.lists(st.floats(0.01, 1.0), min_size=len(chosen), max_size=len(chosen)))
    probs = np.array(weights) / sum(weights)
    return JointDistribution(np.array(chosen, dtype=np.int64).reshape(len(chosen), n), probs, sizes)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
