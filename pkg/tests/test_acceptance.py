"""Exit criteria. Each test records one PASS/FAIL line, echoed in the pytest summary.

Run standalone with ``python tests/test_acceptance.py``.
"""

import io
import time
from itertools import combinations

import numpy as np
import pytest

from avgentropy.cli import main as cli_main
from avgentropy.dist import EntropyVector, dist_product, entropy_vector, random_distribution
from avgentropy.geometry import (average_map, phi_membership, second_diff, second_diff_inv,
                                 shannon_check_elemental, shannon_check_full, unit_ray)
from avgentropy.gf2m import field_make
from avgentropy.harness import extreme_ray_distribution, field_exponent, verify_theorem
from avgentropy.rs_code import projection_counts, rs_make, rs_mds_check

SEED = 20240611
GRID = [(n, k) for n in (2, 3, 4, 5) for k in range(1, n + 1)]
EXACT = 1e-12

RESULTS: list[str] = []


def record(num: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"criterion {num} {'PASS' if ok else 'FAIL'} {title}" + (f" ({detail})" if detail else "")
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def ray_runs():
    start = time.perf_counter()
    runs = {}
    for n, k in GRID:
        d, expected = extreme_ray_distribution(n, k)
        runs[n, k] = (field_exponent(n), entropy_vector(d), expected)
    return runs, time.perf_counter() - start


def test_criterion_1_ray_entropies(ray_runs):
    runs, elapsed = ray_runs
    worst = 0.0
    for n, k in GRID:
        m, H, _ = runs[n, k]
        target = np.array([min(bin(a).count("1"), k) * m for a in range(1, 1 << n)], dtype=float)
        worst = max(worst, float(np.max(np.abs(H.values - target))))
    record(1, "ray entropies equal min(|alpha|,k)*m", worst <= EXACT and elapsed < 10,
           f"max error {worst:.1e}, {elapsed:.2f}s for {len(GRID)} rays")


def test_criterion_2_level_symmetry(ray_runs):
    runs, _ = ray_runs
    spread = 0.0
    for n, k in GRID:
        H = runs[n, k][1]
        for level in range(1, n + 1):
            vals = [H[sum(1 << i for i in c)] for c in combinations(range(n), level)]
            spread = max(spread, max(vals) - min(vals))
    record(2, "same-size subset entropies identical", spread <= EXACT, f"max spread {spread:.1e}")


def test_criterion_3_averaged_rays(ray_runs):
    runs, _ = ray_runs
    worst_h = worst_g = 0.0
    for n, k in GRID:
        m, H, _ = runs[n, k]
        h = average_map(H)
        worst_h = max(worst_h, float(np.max(np.abs(h.values - m * unit_ray(n, k).values))))
        e = np.zeros(n)
        e[k - 1] = -m
        worst_g = max(worst_g, float(np.max(np.abs(second_diff(h).values - e))))
    record(3, "average = m*(1..k..k), second difference = -m*e_k",
           worst_h <= EXACT and worst_g <= EXACT, f"errors {worst_h:.1e}, {worst_g:.1e}")


def test_criterion_4_theorem_sweep():
    reps = [verify_theorem(3, 1000, seed=SEED), verify_theorem(4, 200, seed=SEED)]
    failed = [c.render() for r in reps for c in r.failures()]
    record(4, "verify_theorem n=3 (1000) and n=4 (200), all stages", not failed,
           "; ".join(failed) or "6/6 stages")


def test_criterion_5_outward_inclusion():
    rng = np.random.default_rng(SEED)
    bad = 0
    for _ in range(1000):
        H = entropy_vector(random_distribution(3, rng, max_alphabet=3))
        if not shannon_check_full(H, 1e-9).passed or not phi_membership(average_map(H), 1e-9).member:
            bad += 1
    record(5, "1000 random n=3 distributions inside both regions", bad == 0, f"{bad} failures")


def test_criterion_6_additivity():
    rng = np.random.default_rng(SEED + 6)
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 5))
        d1 = random_distribution(n, rng, max_alphabet=3)
        d2 = random_distribution(n, rng, max_alphabet=3)
        lhs = entropy_vector(dist_product(d1, d2)).values
        rhs = (entropy_vector(d1) + entropy_vector(d2)).values
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    record(6, "product entropy = sum of entropies, 100 pairs", worst <= 1e-9, f"max error {worst:.1e}")


def test_criterion_7_mds_oracle():
    bad = []
    for n, k in GRID:
        code = rs_make(n, k, field_make(field_exponent(n)))
        q = code.spec.q
        if not rs_mds_check(code) or not np.all(projection_counts(code) == q ** (k - 1)):
            bad.append(f"({n},{k})")
    record(7, "MDS projections bijective, q^(k-1) codewords per coordinate value", not bad,
           " ".join(bad) or f"{len(GRID)} codes")


def test_criterion_8_round_trips_and_elemental():
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for _ in range(10000):
        n = int(rng.integers(1, 9))
        v = rng.uniform(-1, 1, n)
        worst = max(worst,
                    float(np.max(np.abs(second_diff_inv(second_diff(v)).values - v))),
                    float(np.max(np.abs(second_diff(second_diff_inv(v)).values - v))))
    disagree, passed = 0, 0
    for n in (3, 4):
        for i in range(1000):
            # a uniform box alone is almost never Shannon; mix in entropic
            # vectors and perturbations of them to exercise both verdicts
            if i % 2 == 0:
                H = EntropyVector(n, rng.uniform(0, 2, (1 << n) - 1))
            else:
                H = entropy_vector(random_distribution(n, rng))
                if i % 4 == 1:
                    H = EntropyVector(n, H.values + rng.normal(0, 0.05, H.values.size))
            full = shannon_check_full(H).passed
            passed += full
            disagree += full != shannon_check_elemental(H)
    record(8, "transform round trips; elemental == full Shannon check",
           worst <= EXACT and disagree == 0,
           f"round-trip error {worst:.1e}, {disagree} disagreements, {passed} Shannon vectors")


def _cli(*argv):
    out = io.StringIO()
    code = cli_main(list(argv), out=out)
    lines = dict(line.split(" ", 1) for line in out.getvalue().splitlines()
                 if line.startswith(("average", "support")))
    return code, [float(x) for x in lines["average"].split()], int(lines["support"])


def test_criterion_9_integer_achievability():
    code1, avg1, _ = _cli("achieve", "3", "1", "1", "0")
    start = time.perf_counter()
    code2, avg2, support2 = _cli("achieve", "4", "0", "1", "1")
    elapsed = time.perf_counter() - start
    target = 3 * unit_ray(4, 2).values + 3 * unit_ray(4, 3).values
    ok = (code1 == 0 and avg1 == [4.0, 6.0, 6.0]
          and code2 == 0 and np.max(np.abs(np.array(avg2) - target)) <= EXACT
          and target.tolist() == [6, 12, 15, 15]
          and support2 == 8**2 * 8**3 and elapsed < 10)
    record(9, "achieve 3 1 1 0 -> (4,6,6); achieve 4 0 1 1 -> (6,12,15,15)", ok,
           f"support {support2}, {elapsed:.2f}s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
