"""
Constructive check that every point of the averaged Shannon region is an
averaged entropy function.

The extreme rays come from uniform distributions over Reed-Solomon
codewords; integer combinations of rays are realised as independent
products; random points of the region are decomposed onto the rays.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Sequence

import numpy as np

from .dist import (EntropyVector, JointDistribution, dist_product, entropy_vector,
                   random_distribution, uniform_over)
from .geometry import (DEFAULT_TOL, AverageVector, DiffVector, average_map, decompose,
                       phi_membership, second_diff, second_diff_inv, shannon_check_full,
                       unit_ray)
from .gf2m import field_make
from .rs_code import DEFAULT_GUARD, check_guard, rs_codeword_array, rs_make

# RS-derived entropies are exact in binary floating point.
EXACT_TOL = 1e-12
SWEEP_COEFF_TOL = 1e-12
RECONSTRUCT_TOL = 1e-9
MAX_EXAMPLES = 5


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def render(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return bool(passed)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = [f"# {self.title}"] + [c.render() for c in self.checks]
        lines.append(("PASS" if self.passed else "FAIL") + " overall")
        return "\n".join(lines)


def field_exponent(n: int) -> int:
    """Smallest ``m`` with ``2**m > n``."""
    if n < 1:
        raise ValueError("need at least one coordinate")
    return n.bit_length()


def expected_ray_entropy(n: int, k: int, m: int) -> EntropyVector:
    return EntropyVector(n, [min(bin(a).count("1"), k) * m for a in range(1, 1 << n)])


def extreme_ray_distribution(n: int, k: int, guard: int = DEFAULT_GUARD):
    """Uniform codeword distribution of the ``(n, k)`` RS code over the smallest
    GF(2^m) with ``2^m > n``, paired with its predicted entropy vector
    ``H_alpha = min(|alpha|, k) * m``.
    """
    if not 1 <= k <= n:
        raise ValueError(f"ray level k={k} outside 1..{n}")
    m = field_exponent(n)
    code = rs_make(n, k, field_make(m))
    check_guard(code.size, guard, "code")
    words = rs_codeword_array(code, guard)
    dist = uniform_over(words, [code.spec.q] * n, check_unique=False)
    return dist, expected_ray_entropy(n, k, m)


@dataclass
class RayReport(Report):
    n: int = 0
    k: int = 0
    m: int = 0
    entropy: EntropyVector | None = None
    average: AverageVector | None = None
    diff: DiffVector | None = None


def _worst(diff: np.ndarray) -> tuple[int, float]:
    i = int(np.argmax(np.abs(diff)))
    return i + 1, float(diff[i])


def verify_ray(n: int, k: int, tol: float = DEFAULT_TOL, guard: int = DEFAULT_GUARD) -> RayReport:
    dist, expected = extreme_ray_distribution(n, k, guard)
    m = field_exponent(n)
    H = entropy_vector(dist)
    rep = RayReport(f"ray n={n} k={k} over GF({1 << m})", n=n, k=k, m=m, entropy=H)

    err = H.values - expected.values
    mask, worst = _worst(err)
    rep.add("entropy vector equals min(|alpha|,k)*m",
            np.max(np.abs(err)) <= EXACT_TOL,
            "" if np.max(np.abs(err)) <= EXACT_TOL else f"subset {mask} off by {worst!r}")

    bad_level = None
    for level in range(1, n + 1):
        masks = [sum(1 << i for i in c) for c in combinations(range(n), level)]
        vals = H.values[np.array(masks) - 1]
        if vals.max() - vals.min() > EXACT_TOL:
            off = masks[int(np.argmax(np.abs(vals - vals[0])))]
            bad_level = f"level {level}: subset {off} differs from subset {masks[0]}"
            break
    rep.add("level entropies identical", bad_level is None, bad_level or "")

    shannon = shannon_check_full(H, tol)
    detail = ""
    if not shannon.passed:
        v = shannon.violations[0]
        detail = f"{v.kind} ({v.alpha},{v.beta}) slack {v.slack!r}"
    rep.add("Shannon inequalities", shannon.passed, detail)

    h = average_map(H)
    rep.average = h
    target = unit_ray(n, k) * m
    err = h.values - target.values
    ok = np.max(np.abs(err)) <= EXACT_TOL
    idx, worst = _worst(err)
    rep.add(f"average equals {m}*unit_ray({n},{k})", ok,
            "" if ok else f"h_{idx} off by {worst!r}")

    g = second_diff(h)
    rep.diff = g
    target = np.zeros(n)
    target[k - 1] = -m
    err = g.values - target
    ok = np.max(np.abs(err)) <= EXACT_TOL
    idx, worst = _worst(err)
    rep.add(f"second difference equals -{m}*e_{k}", ok,
            "" if ok else f"g_{idx} off by {worst!r}")
    return rep


@dataclass
class AchieveReport(Report):
    m: int = 0
    average: AverageVector | None = None
    target: AverageVector | None = None
    coefficients: np.ndarray | None = None


def achieve(n: int, multiplicities: Sequence[int], guard: int = DEFAULT_GUARD,
            tol: float = RECONSTRUCT_TOL):
    """Realise ``sum_k c_k * m * unit_ray(n, k)`` as a product of independent rays.

    Returns ``(distribution, report)``.
    """
    c = [int(x) for x in multiplicities]
    if len(c) != n:
        raise ValueError(f"expected {n} multiplicities, got {len(c)}")
    if any(x < 0 for x in c):
        raise ValueError("multiplicities must be non-negative")
    if sum(c) < 1:
        raise ValueError("at least one multiplicity must be positive")
    m = field_exponent(n)
    q = 1 << m
    check_guard(q ** sum(k * ck for k, ck in enumerate(c, start=1)), guard)

    rays = []
    for k, ck in enumerate(c, start=1):
        if ck:
            ray, _ = extreme_ray_distribution(n, k, guard)
            rays += [ray] * ck
    dist: JointDistribution = reduce(lambda a, b: dist_product(a, b, guard), rays)

    h = average_map(entropy_vector(dist))
    target = AverageVector(sum(ck * m * unit_ray(n, k).values for k, ck in enumerate(c, start=1)))
    rep = AchieveReport(f"achieve n={n} c={' '.join(map(str, c))} over GF({q})",
                        m=m, average=h, target=target)
    err = h.values - target.values
    ok = np.max(np.abs(err)) <= tol
    idx, worst = _worst(err)
    rep.add(f"average equals sum of c_k*{m}*unit_ray", ok, "" if ok else f"h_{idx} off by {worst!r}")

    lam = decompose(h).coefficients
    rep.coefficients = lam
    err = lam - m * np.array(c, dtype=np.float64)
    ok = np.max(np.abs(err)) <= tol
    idx, worst = _worst(err)
    rep.add(f"decomposition returns {m}*c", ok, "" if ok else f"lambda_{idx} off by {worst!r}")
    return dist, rep


def _fmt(v) -> str:
    return "(" + ", ".join(f"{x:.6g}" for x in v) + ")"


def verify_theorem(n: int, samples: int, seed: int = 0, tol: float = DEFAULT_TOL,
                   guard: int = DEFAULT_GUARD, max_alphabet: int = 3) -> Report:
    """Run the inward sweep, ray realisability and outward sweep for ``n``.

    (i)   Points ``h = second_diff_inv(g)`` for ``g`` uniform in ``[-1, 0]^n``
          decompose onto the rays with non-negative coefficients.
    (ii)  Every ray ``k = 1..n`` is realised by an RS distribution.
    (iii) Averaged entropy functions of random distributions satisfy
          ``g_k <= tol``.
    """
    if n < 1 or samples < 1:
        raise ValueError("need n >= 1 and samples >= 1")
    inward_seq, outward_seq = np.random.SeedSequence(seed).spawn(2)
    rep = Report(f"theorem n={n} samples={samples} seed={seed}")

    rng = np.random.default_rng(inward_seq)
    bad = []
    for g in rng.uniform(-1.0, 0.0, size=(samples, n)):
        h = second_diff_inv(g)
        dec = decompose(h)
        resid = np.max(np.abs(dec.reconstruct().values - h.values))
        if np.min(dec.coefficients) < -SWEEP_COEFF_TOL or resid > RECONSTRUCT_TOL:
            bad.append(f"g={_fmt(g)} lambda={_fmt(dec.coefficients)} residual={resid:.3g}")
    rep.add(f"stage i: inward sweep, {samples} points decompose onto rays", not bad,
            "; ".join(bad[:MAX_EXAMPLES]))

    failed_rays = []
    for k in range(1, n + 1):
        ray = verify_ray(n, k, tol, guard)
        for chk in ray.failures():
            failed_rays.append(f"k={k} {chk.name}: {chk.detail}")
    rep.add(f"stage ii: rays k=1..{n} realised over GF({1 << field_exponent(n)})",
            not failed_rays, "; ".join(failed_rays[:MAX_EXAMPLES]))

    rng = np.random.default_rng(outward_seq)
    bad = []
    for i in range(samples):
        d = random_distribution(n, rng, max_alphabet, max_support=guard)
        H = entropy_vector(d)
        shannon = shannon_check_full(H, tol)
        member = phi_membership(average_map(H), tol)
        if not shannon.passed:
            v = shannon.violations[0]
            bad.append(f"sample {i}: {v.kind} ({v.alpha},{v.beta}) slack {v.slack:.3g}")
        elif not member.member:
            bad.append(f"sample {i}: g_{member.violations[0]} = "
                       f"{member.g[member.violations[0]]:.3g}")
    rep.add(f"stage iii: outward sweep, {samples} random distributions in region",
            not bad, "; ".join(bad[:MAX_EXAMPLES]))
    return rep
