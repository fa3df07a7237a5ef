"""
Finite joint distributions over n discrete coordinates and their entropy
functions.

Distributions are sparse: only atoms with positive probability are stored,
as an ``(N, n)`` integer array of symbol labels plus a length-``N``
probability array. Entropies are in bits.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from .rs_code import DEFAULT_GUARD, check_guard

PROB_TOL = 1e-9


class DistributionError(ValueError):
    """Invalid distribution data."""


class FormatError(ValueError):
    """Malformed text input; ``lineno`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(message if lineno is None else f"line {lineno}: {message}")


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def subset_indices(mask: int) -> list[int]:
    """0-based coordinates in ``mask`` (bit ``i`` set means coordinate ``i+1``)."""
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


class JointDistribution:
    """Immutable sparse joint distribution.

    Parameters
    ----------
    symbols : array_like, shape (N, n)
        Distinct non-negative integer label tuples.
    probs : array_like, shape (N,)
        Strictly positive probabilities summing to 1 within ``1e-9``.
    alphabet_sizes : sequence of int, optional
        Per-coordinate alphabet sizes; defaults to ``max label + 1``.
    """

    __slots__ = ("_symbols", "_probs", "_alphabet_sizes")

    def __init__(self, symbols, probs, alphabet_sizes: Sequence[int] | None = None,
                 *, check_unique: bool = True):
        symbols = np.asarray(symbols, dtype=np.int64)
        probs = np.asarray(probs, dtype=np.float64)
        if symbols.ndim != 2 or symbols.shape[0] == 0 or symbols.shape[1] == 0:
            raise DistributionError("need a non-empty support over at least one coordinate")
        if probs.shape != (symbols.shape[0],):
            raise DistributionError("one probability per atom required")
        if not np.all(np.isfinite(probs)) or np.any(probs <= 0):
            raise DistributionError("probabilities must be finite and strictly positive")
        total = float(probs.sum())
        if abs(total - 1.0) > PROB_TOL:
            raise DistributionError(f"probabilities sum to {total!r}, not 1")
        if np.any(symbols < 0):
            raise DistributionError("symbol labels must be non-negative")
        if alphabet_sizes is None:
            alphabet_sizes = tuple(int(v) + 1 for v in symbols.max(axis=0))
        else:
            alphabet_sizes = tuple(int(a) for a in alphabet_sizes)
            if len(alphabet_sizes) != symbols.shape[1] or min(alphabet_sizes) < 1:
                raise DistributionError("need one positive alphabet size per coordinate")
            if any(int(top) >= a for top, a in zip(symbols.max(axis=0), alphabet_sizes)):
                raise DistributionError("symbol label outside its alphabet")
        if check_unique and len(_row_keys(symbols, alphabet_sizes)[1]) != symbols.shape[0]:
            raise DistributionError("support tuples must be unique")
        symbols.setflags(write=False)
        probs.setflags(write=False)
        self._symbols = symbols
        self._probs = probs
        self._alphabet_sizes = alphabet_sizes

    @property
    def n(self) -> int:
        return self._symbols.shape[1]

    @property
    def alphabet_sizes(self) -> tuple[int, ...]:
        return self._alphabet_sizes

    @property
    def symbols(self) -> np.ndarray:
        return self._symbols

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    @property
    def size(self) -> int:
        return len(self._probs)

    @property
    def support(self) -> list[tuple[tuple[int, ...], float]]:
        return [(tuple(int(v) for v in row), float(p))
                for row, p in zip(self._symbols, self._probs)]

    def __len__(self) -> int:
        return self.size

    def __repr__(self) -> str:
        return (f"JointDistribution(n={self.n}, atoms={self.size}, "
                f"alphabet_sizes={self.alphabet_sizes})")


def _row_keys(symbols: np.ndarray, alphabet_sizes: Sequence[int]):
    """Group identical rows: returns (inverse index per row, unique rows)."""
    if math.prod(alphabet_sizes) < 2**62:
        keys = np.zeros(symbols.shape[0], dtype=np.int64)
        for col, a in enumerate(alphabet_sizes):
            keys = keys * a + symbols[:, col]
        _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
        return inverse.reshape(-1), symbols[first]
    uniq, inverse = np.unique(symbols, axis=0, return_inverse=True)
    return inverse.reshape(-1), uniq


class EntropyVector:
    """Joint entropies ``H_alpha`` for every nonempty ``alpha``, keyed by bitmask.

    ``values[mask - 1]`` holds ``H_mask``; ``H[0]`` reads as 0.
    """

    __slots__ = ("n", "values")

    def __init__(self, n: int, values):
        values = np.array(values, dtype=np.float64)
        if n < 1 or values.shape != ((1 << n) - 1,):
            raise ValueError(f"an entropy vector for n={n} has {(1 << n) - 1} entries")
        if not np.all(np.isfinite(values)):
            raise ValueError("entropy values must be finite")
        values.setflags(write=False)
        self.n = n
        self.values = values

    @classmethod
    def from_mapping(cls, n: int, mapping) -> "EntropyVector":
        return cls(n, [mapping[mask] for mask in range(1, 1 << n)])

    def __getitem__(self, mask: int) -> float:
        if mask == 0:
            return 0.0
        if not 0 < mask < (1 << self.n):
            raise IndexError(mask)
        return float(self.values[mask - 1])

    def padded(self) -> np.ndarray:
        """Length ``2^n`` array with ``H_empty = 0`` at index 0."""
        return np.concatenate(([0.0], self.values))

    def __add__(self, other: "EntropyVector") -> "EntropyVector":
        if other.n != self.n:
            raise ValueError("entropy vectors of different n")
        return EntropyVector(self.n, self.values + other.values)

    def __mul__(self, c: float) -> "EntropyVector":
        return EntropyVector(self.n, self.values * c)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, EntropyVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def allclose(self, other: "EntropyVector", atol: float) -> bool:
        return self.n == other.n and bool(np.all(np.abs(self.values - other.values) <= atol))

    def items(self):
        return ((mask, float(v)) for mask, v in enumerate(self.values, start=1))

    def __repr__(self) -> str:
        return f"EntropyVector(n={self.n}, values={self.values.tolist()})"


def dist_uniform_code(codewords: Iterable[Sequence[int]]) -> JointDistribution:
    """Uniform distribution over a list of distinct equal-length codewords."""
    words = [tuple(w) for w in codewords]
    if not words:
        raise DistributionError("empty codeword list")
    if len({len(w) for w in words}) != 1:
        raise DistributionError("codewords have unequal lengths")
    if len(set(words)) != len(words):
        raise DistributionError("duplicate codewords")
    return uniform_over(np.array(words, dtype=np.int64), check_unique=False)


def uniform_over(rows: np.ndarray, alphabet_sizes=None, *, check_unique=True) -> JointDistribution:
    """Uniform distribution over the distinct rows of an integer array."""
    probs = np.full(len(rows), 1.0 / len(rows))
    return JointDistribution(rows, probs, alphabet_sizes, check_unique=check_unique)


def dist_marginal(dist: JointDistribution, alpha: int) -> JointDistribution:
    """Distribution of ``X_alpha``; coordinates kept in increasing index order."""
    if alpha <= 0:
        raise ValueError("marginal needs a nonempty subset")
    if alpha >> dist.n:
        raise ValueError(f"subset {alpha} not contained in 1..{dist.n}")
    cols = subset_indices(alpha)
    sizes = [dist.alphabet_sizes[c] for c in cols]
    sub = dist.symbols[:, cols]
    inverse, rows = _row_keys(sub, sizes)
    probs = np.bincount(inverse, weights=dist.probs, minlength=len(rows))
    return JointDistribution(rows, probs, sizes, check_unique=False)


def entropy_of(probs: np.ndarray) -> float:
    return float(-np.sum(probs * np.log2(probs)))


def dist_entropy(dist: JointDistribution) -> float:
    """Shannon entropy of the joint distribution, in bits."""
    return entropy_of(dist.probs) + 0.0


def entropy_vector(dist: JointDistribution) -> EntropyVector:
    """All ``2^n - 1`` joint entropies of ``dist``."""
    values = np.empty((1 << dist.n) - 1)
    for alpha in range(1, 1 << dist.n):
        values[alpha - 1] = dist_entropy(dist_marginal(dist, alpha))
    return EntropyVector(dist.n, values)


def dist_product(d1: JointDistribution, d2: JointDistribution,
                 guard: int = DEFAULT_GUARD) -> JointDistribution:
    """Independent pairing of ``d1`` and ``d2`` coordinate by coordinate.

    Coordinate ``i`` of the result carries the pair ``(s1, s2)`` encoded as
    the label ``s1 * a2 + s2``, where ``a2`` is d2's alphabet size there.
    Entropy vectors add under this operation.
    """
    if d1.n != d2.n:
        raise ValueError(f"coordinate counts differ: {d1.n} vs {d2.n}")
    check_guard(d1.size * d2.size, guard)
    a2 = np.array(d2.alphabet_sizes, dtype=np.int64)
    sizes = [x * y for x, y in zip(d1.alphabet_sizes, d2.alphabet_sizes)]
    if max(sizes) >= 2**62:
        raise DistributionError("product alphabet too large for integer labels")
    symbols = (d1.symbols[:, None, :] * a2 + d2.symbols[None, :, :]).reshape(-1, d1.n)
    probs = (d1.probs[:, None] * d2.probs[None, :]).reshape(-1)
    # Product probabilities can drift from an exact sum of 1; renormalise.
    probs = probs / probs.sum()
    return JointDistribution(symbols, probs, sizes, check_unique=False)


def random_distribution(n: int, rng: np.random.Generator, max_alphabet: int = 3,
                        max_support: int | None = None) -> JointDistribution:
    """Sample a distribution: random alphabets and support, flat-Dirichlet weights."""
    sizes = [int(a) for a in rng.integers(1, max_alphabet + 1, size=n)]
    total = math.prod(sizes)
    cap = total if max_support is None else min(total, max_support)
    k = int(rng.integers(1, cap + 1))
    flat = np.sort(rng.choice(total, size=k, replace=False))
    symbols = np.stack(np.unravel_index(flat, sizes), axis=1).astype(np.int64)
    probs = rng.dirichlet(np.ones(k))
    keep = probs > 0
    symbols, probs = symbols[keep], probs[keep]
    return JointDistribution(symbols, probs / probs.sum(), sizes, check_unique=False)


# -- text format -------------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _parse_header(lines) -> int:
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise FormatError("missing 'n <count>' header") from None
    parts = line.split()
    if len(parts) != 2 or parts[0] != "n":
        raise FormatError("expected 'n <count>'", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError(f"bad coordinate count {parts[1]!r}", lineno) from None
    if n < 1:
        raise FormatError("coordinate count must be positive", lineno)
    return n


def parse_distribution(text: str) -> JointDistribution:
    """Parse the ``n <count>`` / ``labels... probability`` text format."""
    lines = _content_lines(text)
    n = _parse_header(lines)
    rows, probs, seen = [], [], set()
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != n + 1:
            raise FormatError(f"expected {n} labels and a probability", lineno)
        try:
            labels = tuple(int(p) for p in parts[:n])
        except ValueError:
            raise FormatError("symbol labels must be integers", lineno) from None
        if min(labels) < 0:
            raise FormatError("symbol labels must be non-negative", lineno)
        try:
            p = float(parts[n])
        except ValueError:
            raise FormatError(f"bad probability {parts[n]!r}", lineno) from None
        if not math.isfinite(p) or p < 0:
            raise FormatError(f"bad probability {parts[n]!r}", lineno)
        if labels in seen:
            raise FormatError(f"duplicate atom {labels}", lineno)
        seen.add(labels)
        if p > 0:
            rows.append(labels)
            probs.append(p)
    if not rows:
        raise FormatError("no atoms with positive probability")
    try:
        return JointDistribution(np.array(rows, dtype=np.int64), probs, check_unique=False)
    except DistributionError as exc:
        raise FormatError(str(exc)) from None


def format_distribution(dist: JointDistribution) -> str:
    lines = [f"n {dist.n}"]
    for row, p in zip(dist.symbols, dist.probs):
        lines.append(" ".join(str(int(v)) for v in row) + f" {float(p)!r}")
    return "\n".join(lines) + "\n"


def parse_entropy_vector(text: str) -> EntropyVector:
    """Parse ``n <count>`` then one ``bitmask value`` line per nonempty subset."""
    lines = _content_lines(text)
    n = _parse_header(lines)
    full = 1 << n
    found: dict[int, float] = {}
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 2:
            raise FormatError("expected 'bitmask value'", lineno)
        try:
            mask = int(parts[0])
        except ValueError:
            raise FormatError(f"bad bitmask {parts[0]!r}", lineno) from None
        if not 0 < mask < full:
            raise FormatError(f"bitmask {mask} outside 1..{full - 1}", lineno)
        if mask in found:
            raise FormatError(f"bitmask {mask} repeated", lineno)
        try:
            value = float(parts[1])
        except ValueError:
            raise FormatError(f"bad value {parts[1]!r}", lineno) from None
        if not math.isfinite(value):
            raise FormatError(f"bad value {parts[1]!r}", lineno)
        found[mask] = value
    missing = [m for m in range(1, full) if m not in found]
    if missing:
        shown = " ".join(map(str, missing[:8])) + (" ..." if len(missing) > 8 else "")
        raise FormatError(f"missing bitmask entries: {shown}")
    return EntropyVector.from_mapping(n, found)


def format_number(x: float) -> str:
    """12 significant digits, rendered as a Python float literal (``1.0``)."""
    return repr(float(f"{x:.12g}") + 0.0)


def format_entropy_vector(H: EntropyVector, header: bool = False) -> str:
    lines = [f"n {H.n}"] if header else []
    lines += [f"{mask} {format_number(v)}" for mask, v in H.items()]
    return "\n".join(lines) + "\n"
