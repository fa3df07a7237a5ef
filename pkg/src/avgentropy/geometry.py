"""
Shannon-type inequality checks, the averaging map, the second-order
difference and its inverse, cone membership and decomposition into the
unit rays ``(1, 2, ..., k, k, ..., k)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import NamedTuple, Sequence

import numpy as np

from .dist import EntropyVector

DEFAULT_TOL = 1e-9

NONNEG, MONOTONE, SUBMODULAR = "nonneg", "monotone", "submodular"
_KINDS = (NONNEG, MONOTONE, SUBMODULAR)


class _Vector:
    __slots__ = ("values",)

    def __init__(self, values):
        values = np.array(values, dtype=np.float64).reshape(-1)
        if values.size == 0:
            raise ValueError("need at least one coordinate")
        if not np.all(np.isfinite(values)):
            raise ValueError("entries must be finite")
        values.setflags(write=False)
        self.values = values

    @property
    def n(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size

    def __iter__(self):
        return iter(self.values.tolist())

    def __getitem__(self, k: int) -> float:
        """1-based access, matching the usual ``h_1 .. h_n`` indexing."""
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return float(self.values[k - 1])

    def _same(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise ValueError(f"cannot combine {other!r} with {self!r}")

    def __add__(self, other):
        self._same(other)
        return type(self)(self.values + other.values)

    def __sub__(self, other):
        self._same(other)
        return type(self)(self.values - other.values)

    def __mul__(self, c: float):
        return type(self)(self.values * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def allclose(self, other, atol: float) -> bool:
        return other.n == self.n and bool(np.max(np.abs(self.values - np.asarray(other.values))) <= atol)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.values.tolist()})"


class AverageVector(_Vector):
    """``(h_1, ..., h_n)``: mean joint entropy at each subset size, in bits."""

    __slots__ = ()

    @property
    def h(self) -> np.ndarray:
        return self.values


class DiffVector(_Vector):
    """``(g_1, ..., g_n)``: second-order differences of an average vector."""

    __slots__ = ()

    @property
    def g(self) -> np.ndarray:
        return self.values


@dataclass(frozen=True)
class Violation:
    kind: str
    alpha: int
    beta: int
    slack: float


@dataclass(frozen=True)
class ShannonReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed


@lru_cache(maxsize=None)
def _shannon_system(n: int):
    """Index arrays for every inequality of the full system.

    Returns ``(kind, alpha, beta, plus1, plus2, minus1, minus2)``; the slack
    of each row is ``H[plus1] + H[plus2] - H[minus1] - H[minus2]`` on the
    padded vector where index 0 holds ``H_empty = 0``. Rows are sorted by
    ``(alpha, beta, kind)``.
    """
    full = 1 << n
    a, b = np.meshgrid(np.arange(full), np.arange(full), indexing="ij")
    a, b = a.ravel(), b.ravel()
    meet, join = a & b, a | b
    zero = np.zeros_like(a)

    nonneg = (a == 0) & (b != 0)
    monotone = (a != 0) & (meet == a) & (a != b)
    submod = (a < b) & (meet != a) & (meet != b)

    parts = []
    # nonneg: H_beta - H_empty >= 0, reported as the pair (0, beta)
    parts.append((0, a[nonneg], b[nonneg], b[nonneg], zero[nonneg], zero[nonneg], zero[nonneg]))
    parts.append((1, a[monotone], b[monotone], b[monotone], zero[monotone], a[monotone], zero[monotone]))
    parts.append((2, a[submod], b[submod], a[submod], b[submod], join[submod], meet[submod]))

    kind = np.concatenate([np.full(p[1].size, p[0]) for p in parts])
    cols = [np.concatenate([p[i] for p in parts]) for i in range(1, 7)]
    order = np.lexsort((kind, cols[1], cols[0]))
    out = tuple(x[order] for x in [kind, *cols])
    for x in out:
        x.setflags(write=False)
    return out


def shannon_check_full(H: EntropyVector, tol: float = DEFAULT_TOL) -> ShannonReport:
    """Check nonnegativity, monotonicity and submodularity over all subset pairs.

    Every violated inequality (slack below ``-tol``) is reported in ascending
    ``(alpha, beta)`` bitmask order. Nonnegativity of ``H_alpha`` appears as
    the pair ``(0, alpha)``.
    """
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    kind, alpha, beta, p1, p2, m1, m2 = _shannon_system(H.n)
    Hp = H.padded()
    slack = Hp[p1] + Hp[p2] - Hp[m1] - Hp[m2]
    bad = np.flatnonzero(slack < -tol)
    return ShannonReport([
        Violation(_KINDS[kind[i]], int(alpha[i]), int(beta[i]), float(slack[i])) for i in bad
    ])


@lru_cache(maxsize=None)
def _elemental_system(n: int):
    full = (1 << n) - 1
    rows = [(full, 0, full & ~(1 << i), 0) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rest = full & ~(1 << i) & ~(1 << j)
            K = rest
            while True:
                rows.append((K | 1 << i, K | 1 << j, K | 1 << i | 1 << j, K))
                if K == 0:
                    break
                K = (K - 1) & rest
    arr = np.array(rows, dtype=np.int64).T
    arr.setflags(write=False)
    return arr


def elemental_count(n: int) -> int:
    return n + comb(n, 2) * 2 ** max(n - 2, 0)


def shannon_check_elemental(H: EntropyVector, tol: float = DEFAULT_TOL) -> bool:
    """Same verdict as :func:`shannon_check_full` using only elemental inequalities."""
    p1, p2, m1, m2 = _elemental_system(H.n)
    Hp = H.padded()
    return bool(np.all(Hp[p1] + Hp[p2] - Hp[m1] - Hp[m2] >= -tol))


@lru_cache(maxsize=None)
def _sizes(n: int) -> np.ndarray:
    sizes = np.array([bin(m).count("1") for m in range(1, 1 << n)])
    sizes.setflags(write=False)
    return sizes


def average_map(H: EntropyVector) -> AverageVector:
    """``h_k`` = mean of the ``C(n, k)`` entries with ``|alpha| = k``."""
    n = H.n
    totals = np.bincount(_sizes(n), weights=H.values, minlength=n + 1)[1:]
    return AverageVector(totals / np.array([comb(n, k) for k in range(1, n + 1)]))


def _as(cls, v):
    return v if isinstance(v, cls) else cls(v)


def second_diff(h) -> DiffVector:
    """``g_k = h_{k-1} - 2 h_k + h_{k+1}`` with ``h_0 = 0`` and ``h_{n+1} = h_n``."""
    h = _as(AverageVector, h).values
    hp = np.concatenate(([0.0], h, h[-1:]))
    return DiffVector(hp[:-2] - 2.0 * hp[1:-1] + hp[2:])


def second_diff_inv(g) -> AverageVector:
    """Unique ``h`` with ``second_diff(h) == g``.

    Back-substitute the first differences ``d_k = h_k - h_{k-1}`` from
    ``d_n = -g_n`` and ``d_j = d_{j+1} - g_j``, then sum them.
    """
    g = _as(DiffVector, g).values
    d = -np.cumsum(g[::-1])[::-1]
    return AverageVector(np.cumsum(d))


class Membership(NamedTuple):
    member: bool
    violations: tuple[int, ...]  # 1-based indices k with g_k > tol
    g: DiffVector


def phi_membership(h, tol: float = DEFAULT_TOL) -> Membership:
    """Is ``h`` in the averaged Shannon region, i.e. is every ``g_k <= tol``?"""
    g = second_diff(h)
    bad = tuple(int(k) + 1 for k in np.flatnonzero(g.values > tol))
    return Membership(not bad, bad, g)


def lambda_membership(g, tol: float = DEFAULT_TOL) -> bool:
    g = _as(DiffVector, g)
    return bool(np.all(g.values <= tol))


def unit_ray(n: int, k: int) -> AverageVector:
    """``(1, 2, ..., k, k, ..., k)`` of length ``n``."""
    if not 1 <= k <= n:
        raise ValueError(f"ray level k={k} outside 1..{n}")
    return AverageVector(np.minimum(np.arange(1, n + 1), k))


class Decomposition(NamedTuple):
    coefficients: np.ndarray  # lambda_1 .. lambda_n
    conic: bool  # every coefficient >= -tol

    def reconstruct(self) -> AverageVector:
        return reconstruct(self.coefficients)


def reconstruct(coefficients: Sequence[float]) -> AverageVector:
    """``sum_k coefficients[k-1] * unit_ray(n, k)``, built directly from the rays."""
    n = len(coefficients)
    total = np.zeros(n)
    for k, lam in enumerate(coefficients, start=1):
        total += lam * unit_ray(n, k).values
    return AverageVector(total)


def decompose(h, tol: float = DEFAULT_TOL) -> Decomposition:
    """Coefficients of ``h`` on the unit rays; negative ones are reported, not rejected."""
    lam = -second_diff(h).values
    lam = lam + 0.0
    lam.setflags(write=False)
    return Decomposition(lam, bool(np.all(lam >= -tol)))
