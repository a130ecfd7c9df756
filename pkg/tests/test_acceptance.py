"""Acceptance criteria, each run at its stated tolerance.

Every test records one PASS/FAIL line that is printed in the terminal
summary under "acceptance criteria".
"""

import json
import time

import numpy as np

from conftest import record_criterion
from ltc.analysis import (
    CUT_FRACTIONS,
    correlation_coefficients,
    cut_attack,
    entropy,
    histogram_variance,
    key_sensitivity_report,
    npcr_uaci,
    psnr,
    salt_pepper_attack,
)
from ltc.chaos import PAPER_KEY, KeyMaterial
from ltc.cipher import decrypt, derive_material, encrypt, encrypt_stages, scramble_transversal
from ltc.field import default_field
from ltc.latin import Labeling, build_decomposition, build_squares, valid_multipliers, verify_design
from oracles import GOLDEN_PATH, PIPELINE_INPUT, golden

W4_M = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
W4_MG = [[0, 1, 2, 3], [2, 3, 0, 1], [3, 2, 1, 0], [1, 0, 3, 2]]
W4_M1 = [[0, 1, 2, 3], [3, 2, 1, 0], [1, 0, 3, 2], [2, 3, 0, 1]]
# first transversal and where pixels 1, 7, 12, 14 of Q = 1..16 land
W4_T0 = [(0, 0), (1, 2), (2, 3), (3, 1)]
W4_WALK = {1: (1, 2), 7: (2, 3), 12: (3, 1), 14: (0, 0)}


def random_key(rng, mu_range=(3.6, 4.0), **public):
    # 15 fractional digits
    mu0 = round(float(rng.uniform(*mu_range)), 15)
    k0, k1 = (round(float(v), 15) for v in rng.uniform(0.01, 0.99, 2))
    return KeyMaterial(mu0, k0, k1, **public)


def check(number, title, passed, detail):
    record_criterion(number, title, passed, detail)
    assert passed, detail


def test_ac01_order_four():
    f = default_field(4)
    ok = []
    timings = []
    for _ in range(50):
        t = time.perf_counter()
        M, M1, Mg = build_squares(f, Labeling.identity(4), f.generator)
        D = build_decomposition(f, Labeling.identity(4), f.generator)
        timings.append(time.perf_counter() - t)
    ok.append(M.tolist() == W4_M and Mg.tolist() == W4_MG and M1.tolist() == W4_M1)
    ok.append(D.transversal(0) == W4_T0)
    P1 = scramble_transversal(np.arange(1, 17, dtype=np.uint8).reshape(4, 4), D)
    ok.append(all(P1[r, c] == v for v, (r, c) in W4_WALK.items()))
    best = min(timings) * 1e3
    check(1, "worked 4x4 example exactness", all(ok) and best < 1.0, f"cells match={all(ok)}, build {best:.3f} ms (< 1 ms)")


def test_ac02_design_verifiers():
    t = time.perf_counter()
    failures, cases = 0, 0
    rng = np.random.default_rng(2)
    for n in (4, 8, 9, 16):
        f = default_field(n)
        for a in valid_multipliers(f):
            for _ in range(20):
                checks = verify_design(f, Labeling(rng.permutation(n)), a)
                failures += not all(checks.values())
                cases += 1
    for _ in range(10):
        key = random_key(rng)
        sum_q = int(rng.integers(0, 255 * 65536 + 1))
        failures += not all(derive_material(sum_q, 256, key).verify().values())
        cases += 1
    elapsed = time.perf_counter() - t
    check(2, "design verifier suite", failures == 0 and elapsed < 30,
          f"{failures} failures in {cases} designs, {elapsed:.1f} s (< 30 s)")


def test_ac03_round_trip(corpus):
    t = time.perf_counter()
    rng = np.random.default_rng(3)
    failures, count = 0, 0
    for n in (4, 8, 9, 16, 25, 256):
        for _ in range(200):
            q = rng.integers(0, 256, (n, n), dtype=np.uint8)
            failures += not np.array_equal(decrypt(encrypt(q, PAPER_KEY), PAPER_KEY), q)
            count += 1
    for q in corpus.values():
        failures += not np.array_equal(decrypt(encrypt(q, PAPER_KEY), PAPER_KEY), q)
        count += 1
    elapsed = time.perf_counter() - t
    check(3, "round trip", failures == 0 and elapsed < 60, f"{failures}/{count} mismatches, {elapsed:.1f} s (< 60 s)")


def test_ac04_oracle_transcript():
    committed = json.loads(GOLDEN_PATH.read_text())
    regenerated = json.loads(json.dumps(golden()))
    want = committed["pinned"]
    inp = PIPELINE_INPUT
    key = KeyMaterial(inp["mu0"], inp["key0"], inp["key1"], inp["a"], inp["c1"], inp["c2"])
    m = derive_material(want["sum_q"], 4, key, labeling=Labeling.identity(4))
    got = encrypt_stages(np.array(inp["Q"], dtype=np.uint8), m, key.c1, key.c2)
    stages = ("P1", "P2", "P3", "cipher")
    same = committed == regenerated and all(got[k].tolist() == want[k] for k in stages)
    check(4, "oracle transcript equivalence", same, f"stages {', '.join(stages)} byte-identical={same}")


def test_ac05_entropy(corpus):
    rng = np.random.default_rng(5)
    keys = [random_key(rng) for _ in range(10)]
    values = [entropy(encrypt(q, k).image) for q in corpus.values() for k in keys]
    worst = min(values)
    check(5, "entropy", worst > 7.995, f"min H={worst:.5f} over {len(values)} ciphertexts (> 7.995)")


def test_ac06_correlation(corpus):
    worst = (10, None)
    detail = []
    for name, q in corpus.items():
        c = encrypt(q, PAPER_KEY).image
        rs = np.array([correlation_coefficients(c, pairs=4000, seed=s) for s in range(10)], dtype=float)
        passes = (np.abs(rs) <= 0.02).sum(axis=0)
        for d, k in zip("hvd", passes):
            if k < worst[0]:
                worst = (int(k), f"{name}/{d}")
        detail.append(f"{name}={'/'.join(map(str, passes))}")
    ok = worst[0] >= 9
    check(6, "correlation", ok,
          f"min seeds passing |r|<=0.02 is {worst[0]}/10 at {worst[1]} (need >= 9); h/v/d per image: " + " ".join(detail))


def test_ac07_histogram_variance(corpus):
    values = {name: histogram_variance(encrypt(q, PAPER_KEY).image) for name, q in corpus.items()}
    worst = max(values, key=values.get)
    check(7, "histogram variance", values[worst] < 350, f"max S={values[worst]:.1f} ({worst}) (< 350)")


def test_ac08_differential(corpus):
    # trials vary the secret around the experiment's fully chaotic regime;
    # below ~3.99 periodic windows (e.g. near 3.84) flatten the keystream
    rng = np.random.default_rng(8)
    keys = [random_key(rng, (3.99, 4.0)) for _ in range(10)]
    results = {}
    for name, q in corpus.items():
        q2 = q.copy()
        q2[0, 0] = q2[0, 0] - 1 if q2[0, 0] > 0 else 1
        pairs = [npcr_uaci(encrypt(q, k).image, encrypt(q2, k).image) for k in keys]
        results[name] = np.mean(pairs, axis=0)
    npcr = min(v[0] for v in results.values())
    uaci_lo = min(v[1] for v in results.values())
    uaci_hi = max(v[1] for v in results.values())
    ok = npcr >= 99.5693 and 32.8 <= uaci_lo and uaci_hi <= 34.0
    check(8, "differential", ok,
          f"10-trial mean NPCR min={npcr:.4f}% (>= 99.5693), UACI in [{uaci_lo:.3f}, {uaci_hi:.3f}]% (within [32.8, 34.0])")


def test_ac09_key_sensitivity(corpus):
    worst = (101.0, None)
    for name, q in corpus.items():
        for comp, sides in key_sensitivity_report(q, PAPER_KEY, 1e-15).items():
            for side, value in sides.items():
                if value < worst[0]:
                    worst = (value, f"{name}/{comp}/{side}")
    check(9, "key sensitivity", worst[0] > 99.5, f"min differing={worst[0]:.4f}% at {worst[1]} (> 99.5)")


def test_ac10_robustness(corpus):
    problems = []
    quarter, sp = [], []
    for name, q in corpus.items():
        env = encrypt(q, PAPER_KEY)
        curve = [psnr(q, decrypt(cut_attack(env, fr), PAPER_KEY, check_sum=False)) for fr in CUT_FRACTIONS]
        if any(b >= a for a, b in zip(curve, curve[1:])):
            problems.append(f"{name} not monotone {curve}")
        quarter.append(curve[2])
        sp.append(psnr(q, decrypt(salt_pepper_attack(env, 0.05, seed=0), PAPER_KEY, check_sum=False)))
    ok = not problems and min(quarter) > 9 and min(sp) > 16
    check(10, "robustness", ok,
          f"cut curves monotone={not problems}, min PSNR at 1/4 cut={min(quarter):.2f} dB (> 9), "
          f"min salt-pepper 0.05 PSNR={min(sp):.2f} dB (> 16)" + "".join(f"; {p}" for p in problems))


def test_ac11_throughput(corpus):
    q = corpus["camera"]
    decrypt(encrypt(q, PAPER_KEY), PAPER_KEY)  # warm caches
    times = []
    for _ in range(5):
        t = time.perf_counter()
        decrypt(encrypt(q, PAPER_KEY), PAPER_KEY)
        times.append(time.perf_counter() - t)
    worst = max(times)
    check(11, "throughput", worst < 1.0, f"encrypt+decrypt 256x256 worst of 5 = {worst * 1e3:.0f} ms (< 1 s)")
