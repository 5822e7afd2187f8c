"""Acceptance gate: one test per criterion, each printing a pass line.

Run with ``pytest -s tests/test_acceptance.py`` to see the per-criterion
lines.  Tolerances and budgets are fixed here, not configurable.
"""

import time

import numpy as np

from crsphere import (
    MinimizeOptions,
    OBJECTIVE_DET_SQ,
    SweepConfig,
    VERDICT_ALL_REGULAR,
    VERDICT_FAILURE,
    ar_determinant_profile,
    ar_embedding,
    block_sum_embedding,
    block_support_ok,
    equivalence_check_many,
    two_form_identity_check,
    make_ar_polynomial,
    make_block_sum,
    make_negative_control,
    multistart_minimize,
    restrict_to_block,
    sample_sphere,
    sweep,
    verify_ar_identity,
    wirtinger_fd,
)
from crsphere.cli import main as cli_main
from helpers import random_unit, random_wpoly

CONTROLS = ("holomorphic", "zero", "radial")


def _catalog():
    return [ar_embedding()] + [block_sum_embedding(n) for n in (1, 2, 3)]


def test_criterion_1_exact_identity():
    assert cli_main(["identity-check"]) == 0
    result = verify_ar_identity()
    assert result.holds and result.residual.is_zero

    best = min(
        _timed(verify_ar_identity) for _ in range(5)
    )
    assert best < 1e-3, f"identity check took {best * 1e3:.3f} ms"
    print(f"\n[PASS] criterion 1: exact identity, zero residual ({best * 1e6:.0f} us)")


def _timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def test_criterion_2_positivity_sweeps():
    t0 = time.perf_counter()
    cfg = SweepConfig(samples=100_000, seed=42, tol=1e-8)
    margins = {}
    for E in _catalog():
        rep = sweep(E, cfg)
        assert rep.verdict == VERDICT_ALL_REGULAR, E.label
        floor = 1e3 * cfg.tol * rep.sigma_max_samples
        assert np.all(rep.sigma_min_samples > floor), E.label
        margins[E.label] = rep.min_sigma
    wall = time.perf_counter() - t0
    assert wall < 30.0, f"sweeps took {wall:.1f} s"
    print(
        "\n[PASS] criterion 2: 1e5-sample sweeps all-regular with margin; "
        + ", ".join(f"{k}: {v:.4f}" for k, v in margins.items())
        + f" ({wall:.1f} s)"
    )


def test_criterion_3_criterion_equivalence():
    embeddings = _catalog() + [make_negative_control(k, 2) for k in CONTROLS]
    disagreements = 0
    for i, E in enumerate(embeddings):
        Z = sample_sphere(E.m, 1000, 1000 + i)
        results = equivalence_check_many(E, Z, tol=1e-8)
        disagreements += sum(1 for r in results if not r.agree)
    assert disagreements == 0
    print(
        f"\n[PASS] criterion 3: three criteria agree at 1000 points on "
        f"{len(embeddings)} embeddings, 0 disagreements"
    )


def test_criterion_4_two_form_identity():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 5))
        f = random_wpoly(rng, m, max_degree=4)
        for _ in range(10):
            worst = max(worst, two_form_identity_check(f, random_unit(rng, m)))
    assert worst <= 1e-10
    print(f"\n[PASS] criterion 4: two-form identity residual <= 1e-10 (worst {worst:.2e})")


def test_criterion_5_derivative_correctness():
    rng = np.random.default_rng(2025)
    worst = 0.0
    for _ in range(100):
        m = int(rng.integers(1, 5))
        p = random_wpoly(rng, m, max_degree=4)
        z = random_unit(rng, m)
        j = int(rng.integers(0, m))
        for kind, sym in (
            ("zbar", p.d_zbar(j).eval(z)),
            ("z", p.d_z(j).eval(z)),
        ):
            fd = wirtinger_fd(p, z, j, h=1e-5, kind=kind)
            rel = abs(fd - sym) / (1 + abs(sym))
            worst = max(worst, rel)
    assert worst <= 1e-6
    print(f"\n[PASS] criterion 5: derivatives match finite differences (worst {worst:.2e})")


def test_criterion_6_optimizer_vs_oracle():
    t0 = time.perf_counter()
    t_star, oracle = ar_determinant_profile(1_000_000)
    # the scan's outcome, frozen: 1/9 attained at t in {1/3, 2/3}
    assert abs(oracle - 1 / 9) < 1e-10
    assert min(abs(t_star - 1 / 3), abs(t_star - 2 / 3)) < 1e-5

    rep = multistart_minimize(
        ar_embedding(), 64, 42, MinimizeOptions(objective=OBJECTIVE_DET_SQ)
    )
    gap = abs(rep.best_value - oracle)
    wall = time.perf_counter() - t0
    assert gap <= 1e-6, f"gap {gap:.2e}"
    assert wall < 10.0, f"took {wall:.1f} s"
    print(
        f"\n[PASS] criterion 6: multistart |det|^2 {rep.best_value:.9f} vs "
        f"oracle {oracle:.9f}, gap {gap:.2e} ({wall:.1f} s)"
    )


def test_criterion_7_negative_controls():
    for kind in CONTROLS:
        E = make_negative_control(kind, 2)
        rep = sweep(E, SweepConfig(samples=1000, seed=42))
        assert rep.verdict == VERDICT_FAILURE, kind
        assert rep.min_sigma < 1e-12, kind
    print("\n[PASS] criterion 7: all three controls fail with sigma_min < 1e-12")


def test_criterion_8_determinism(tmp_path):
    emb = tmp_path / "ar.json"
    assert cli_main(["construct", "--preset", "ar", "--out", str(emb)]) == 0
    blobs = []
    for sub, workers in (("r1", "1"), ("r2", "1"), ("r3", "4")):
        d = tmp_path / sub
        d.mkdir()
        report = d / "report.json"
        code = cli_main(
            ["verify", str(emb), "--samples", "100000", "--seed", "42",
             "--tol", "1e-8", "--workers", workers, "--report", str(report)]
        )
        assert code == 0
        blobs.append(report.read_bytes())
    assert blobs[0] == blobs[1] == blobs[2]
    print("\n[PASS] criterion 8: verify reports byte-identical across runs and worker counts")


def test_criterion_9_block_structure():
    P = make_ar_polynomial()
    for n in range(1, 5):
        Q = make_block_sum(n)
        assert block_support_ok(Q, n)
        for k in range(n):
            assert restrict_to_block(Q, n, k) == P
    print("\n[PASS] criterion 9: block support and restriction identities exact for n <= 4")
