import math

import numpy as np
import pytest
from hypothesis import given, settings

from avgentropy.dist import (DistributionError, EntropyVector, FormatError, JointDistribution,
                             dist_entropy, dist_marginal, dist_product, dist_uniform_code,
                             entropy_vector, format_distribution, format_entropy_vector,
                             parse_distribution, parse_entropy_vector, random_distribution)
from avgentropy.gf2m import field_make
from avgentropy.rs_code import GuardExceeded, rs_enumerate, rs_make

from conftest import distributions, oracle_entropy_vector

GF4 = field_make(2)


def ev(dist):
    return entropy_vector(dist).values.tolist()


def test_uniform_code():
    d = dist_uniform_code([(0, 0), (1, 1)])
    assert d.support == [((0, 0), 0.5), ((1, 1), 0.5)]
    rs = dist_uniform_code(rs_enumerate(rs_make(3, 2, GF4)))
    assert rs.size == 16 and np.all(rs.probs == 1 / 16)
    with pytest.raises(DistributionError):
        dist_uniform_code([])
    with pytest.raises(DistributionError):
        dist_uniform_code([(0, 1), (0, 1)])
    with pytest.raises(DistributionError):
        dist_uniform_code([(0, 1), (0,)])


def test_validation():
    with pytest.raises(DistributionError):
        JointDistribution([[0], [1]], [0.5, 0.4])
    with pytest.raises(DistributionError):
        JointDistribution([[0], [1]], [1.0, 0.0])
    with pytest.raises(DistributionError):
        JointDistribution([[0], [0]], [0.5, 0.5])
    with pytest.raises(DistributionError):
        JointDistribution([[0], [2]], [0.5, 0.5], alphabet_sizes=[2])
    with pytest.raises(DistributionError):
        JointDistribution([[-1]], [1.0])
    d = JointDistribution([[0], [1]], [0.5, 0.5 + 5e-10])
    assert d.alphabet_sizes == (2,)


def test_marginal():
    d = dist_uniform_code([(0, 0), (1, 1)])
    m = dist_marginal(d, 0b01)
    assert m.n == 1 and m.support == [((0,), 0.5), ((1,), 0.5)]
    full = dist_marginal(d, 0b11)
    assert full.support == d.support
    rs = dist_uniform_code(rs_enumerate(rs_make(3, 2, GF4)))
    for pair in (0b011, 0b101, 0b110):
        pm = dist_marginal(rs, pair)
        assert pm.size == 16 and np.all(pm.probs == 1 / 16)
    with pytest.raises(ValueError):
        dist_marginal(d, 0)
    with pytest.raises(ValueError):
        dist_marginal(d, 0b100)


def test_entropy_examples():
    assert dist_entropy(dist_uniform_code([(0,), (1,)])) == 1.0
    assert dist_entropy(JointDistribution([[3, 1]], [1.0])) == 0.0
    assert dist_entropy(dist_uniform_code([(i,) for i in range(16)])) == 4.0


def test_entropy_vector_examples():
    assert ev(dist_uniform_code([(0, 0), (1, 1)])) == [1.0, 1.0, 1.0]
    assert ev(dist_uniform_code([(0, 0), (0, 1), (1, 0), (1, 1)])) == [1.0, 1.0, 2.0]
    assert ev(dist_uniform_code(rs_enumerate(rs_make(3, 1, GF4)))) == [2.0] * 7


def test_product_examples():
    d = dist_uniform_code([(0, 0), (1, 1)])
    p = dist_product(d, d)
    assert p.size == 4 and ev(p) == [2.0, 2.0, 2.0]
    point = JointDistribution([[0, 0]], [1.0])
    assert ev(dist_product(d, point)) == ev(d)
    r1 = dist_uniform_code(rs_enumerate(rs_make(3, 1, GF4)))
    r2 = dist_uniform_code(rs_enumerate(rs_make(3, 2, GF4)))
    assert dist_product(r1, r2).size == 64
    with pytest.raises(ValueError):
        dist_product(d, r1)
    with pytest.raises(GuardExceeded):
        dist_product(r1, r2, guard=63)


@settings(max_examples=150, deadline=None)
@given(distributions())
def test_entropy_vector_matches_oracle(d):
    H = entropy_vector(d)
    oracle = oracle_entropy_vector(d)
    for mask, v in H.items():
        assert v == pytest.approx(oracle[mask], abs=1e-9)


@settings(max_examples=150, deadline=None)
@given(distributions())
def test_entropy_bounds(d):
    H = entropy_vector(d)
    for mask, v in H.items():
        cap = sum(math.log2(d.alphabet_sizes[i]) for i in range(d.n) if mask >> i & 1)
        assert -1e-9 <= v <= cap + 1e-9


@settings(max_examples=100, deadline=None)
@given(distributions(n=3), distributions(n=3))
def test_product_additivity(d1, d2):
    p = dist_product(d1, d2)
    assert entropy_vector(p).allclose(entropy_vector(d1) + entropy_vector(d2), 1e-9)


def test_random_distribution_reproducible():
    a = random_distribution(3, np.random.default_rng(5))
    b = random_distribution(3, np.random.default_rng(5))
    assert a.support == b.support
    assert all(s <= 3 for s in a.alphabet_sizes)


def test_entropy_vector_type():
    H = EntropyVector(2, [1, 1, 3])
    assert H[0] == 0.0 and H[3] == 3.0
    with pytest.raises(IndexError):
        H[4]
    with pytest.raises(ValueError):
        EntropyVector(2, [1, 1])
    with pytest.raises(ValueError):
        EntropyVector(1, [float("nan")])


def test_distribution_format_round_trip():
    text = "# two bits\nn 2\n0 0 0.5\n1 1 0.5\n"
    d = parse_distribution(text)
    assert d.support == [((0, 0), 0.5), ((1, 1), 0.5)]
    assert parse_distribution(format_distribution(d)).support == d.support


@pytest.mark.parametrize("text,lineno", [
    ("n 2\n0 0 half\n", 2),
    ("n 2\n0 0\n", 2),
    ("m 2\n", 1),
    ("n 1\n0 0.5\n0 0.5\n", 3),
    ("n 1\n-1 1.0\n", 2),
    ("n 1\nx 1.0\n", 2),
])
def test_distribution_format_errors(text, lineno):
    with pytest.raises(FormatError) as err:
        parse_distribution(text)
    assert err.value.lineno == lineno


def test_distribution_probability_sum_error():
    with pytest.raises(FormatError):
        parse_distribution("n 1\n0 0.5\n1 0.4\n")
    with pytest.raises(FormatError):
        parse_distribution("# nothing\n")


def test_entropy_vector_format():
    H = EntropyVector(2, [1, 1, 1])
    text = format_entropy_vector(H, header=True)
    assert text == "n 2\n1 1.0\n2 1.0\n3 1.0\n"
    assert parse_entropy_vector(text) == H
    with pytest.raises(FormatError, match="missing"):
        parse_entropy_vector("n 2\n1 1\n3 1\n")
    with pytest.raises(FormatError):
        parse_entropy_vector("n 2\n1 1\n1 1\n2 1\n3 1\n")
    with pytest.raises(FormatError):
        parse_entropy_vector("n 2\n4 1\n")
