"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (run with ``pytest tests/test_acceptance.py -v -s``).

Criterion 4 (contest-dataset reproduction) needs the externally supplied
DISEC'13 data; point DISEC13_IMAGES at the image directory and
DISEC13_MANIFEST at a filename,group_id,gt_angle manifest to enable it.
"""

import os
import time
from pathlib import Path

import numpy as np
import pytest

from conftest import dyadic_valued
from houghskew import raster
from houghskew.detector import detect_skew
from houghskew.evaluation import (
    SampleRecord,
    compute_metrics,
    parse_manifest,
    synth_document,
    time_transforms,
)
from houghskew.fht import Orientation, SlopeSign, brute_force_hough, fht, projection_profiles

ALL_COMBOS = [(o, s) for o in Orientation for s in SlopeSign]


def _report(num: int, name: str, ok: bool, detail: str):
    print(f"[criterion {num}] {name}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {num} {name}: {detail}"


def test_criterion_1_fht_matches_brute_force_oracle():
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 4, 8, 16, 32):
        for _ in range(50):
            img = rng.random((n, n))
            for orientation, sign in ALL_COMBOS:
                fast = fht(img, orientation, sign).cells
                slow = brute_force_hough(img, orientation, sign).cells
                worst = max(worst, float(np.abs(fast - slow).max()))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and elapsed < 10.0
    _report(1, "oracle equivalence", ok, f"max |diff| {worst:.2e}, {elapsed:.1f}s")


def test_criterion_2_shift0_rows_equal_projections_exactly():
    rng = np.random.default_rng(202)
    exact = True
    for _ in range(20):
        # Intensities on the k/256 grid keep every partial sum exact in
        # float64, so different summation orders agree bitwise.
        img = dyadic_valued(rng, (32, 32))
        col_sums, row_sums = projection_profiles(img)
        for orientation, sign in ALL_COMBOS:
            acc = fht(img, orientation, sign)
            want = row_sums if orientation is Orientation.HORIZONTAL else col_sums
            exact &= bool(np.array_equal(acc.cells[0], want))
    _report(2, "axis projection consistency", exact, "bitwise equality on 20 images")


def test_criterion_3_synthetic_skew_recovery():
    rng = np.random.default_rng(303)
    start = time.perf_counter()
    errors = []
    for i in range(100):
        angle = float(rng.uniform(-15.0, 15.0))
        img, gt = synth_document(512, angle, seed=7000 + i)
        errors.append(abs(detect_skew(img).angle - gt))
    elapsed = time.perf_counter() - start
    errors = np.array(errors)
    aed = errors.mean()
    ce = 100.0 * np.mean(errors <= 0.1)
    worst = errors.max()
    ok = aed <= 0.20 and ce >= 60.0 and worst <= 0.5 and elapsed < 120.0
    _report(
        3,
        "synthetic skew recovery",
        ok,
        f"AED {aed:.4f} (<=0.20), CE {ce:.1f}% (>=60), max {worst:.4f} (<=0.5), {elapsed:.0f}s",
    )


@pytest.mark.skipif(
    not (os.environ.get("DISEC13_IMAGES") and os.environ.get("DISEC13_MANIFEST")),
    reason="set DISEC13_IMAGES and DISEC13_MANIFEST to run the dataset reproduction",
)
def test_criterion_4_contest_dataset_reproduction():
    images = Path(os.environ["DISEC13_IMAGES"])
    records = parse_manifest(os.environ["DISEC13_MANIFEST"])
    for rec in records:
        rec.est_angle = detect_skew(raster.load_image(images / rec.filename)).angle
    rep = compute_metrics(records)
    ok = rep.aed <= 0.15 and rep.top80 <= 0.10 and rep.ce >= 55.0
    _report(
        4,
        "contest dataset reproduction",
        ok,
        f"AED {rep.aed:.4f} (<=0.15), TOP80 {rep.top80:.4f} (<=0.10), CE {rep.ce:.2f}% (>=55)",
    )


def test_criterion_5_rotation_equivariance():
    # Size 1024 halves the tangent grid step; the bound stays the stated 0.3.
    rng = np.random.default_rng(505)
    worst = 0.0
    for i in range(20):
        base_angle = float(rng.uniform(-10.0, 10.0))
        img, _ = synth_document(1024, base_angle, seed=8000 + i)
        base = detect_skew(img).angle
        for beta in (-4.0, -2.0, 2.0, 4.0):
            turned = detect_skew(raster.rotate(img, beta, fill=1.0)).angle
            worst = max(worst, abs(turned - base - beta))
    ok = worst <= 0.3
    _report(5, "rotation equivariance", ok, f"worst |dev| {worst:.4f} (<=0.3)")


def test_criterion_6_scale_invariance_of_peak_index():
    rng = np.random.default_rng(606)
    matches = 0
    for i in range(20):
        angle = float(rng.uniform(-15.0, 15.0))
        img, _ = synth_document(512, angle, seed=9000 + i)
        if detect_skew(img).peak_index == detect_skew(0.25 * img).peak_index:
            matches += 1
    _report(6, "intensity-scale invariance", matches == 20, f"{matches}/20 exact")


def test_criterion_7_fast_transform_outruns_rotate_and_project():
    rep = time_transforms(1024, repeats=3)
    ok = rep.fht_micros <= rep.drt_micros / 10.0
    _report(
        7,
        "timing",
        ok,
        f"fht {rep.fht_micros:.0f}us vs drt {rep.drt_micros:.0f}us over "
        f"{rep.projections} projections, speedup {rep.speedup:.1f}x (>=10)",
    )


def test_criterion_8_metric_unit_suite():
    recs = [
        SampleRecord(f"s{i}", "g", 0.0, est_angle=e)
        for i, e in enumerate([0.05, 0.05, 0.2, 0.3])
    ]
    rep = compute_metrics(recs)
    fixture_ok = (
        abs(rep.aed - 0.15) < 1e-12
        and abs(rep.top80 - 0.1) < 1e-12
        and rep.ce == 50.0
    )
    rng = np.random.default_rng(808)
    property_ok = True
    for _ in range(1000):
        errs = rng.random(int(rng.integers(1, 40))) * rng.uniform(0.01, 5.0)
        recs = [
            SampleRecord(f"r{i}", "g", 0.0, est_angle=float(e))
            for i, e in enumerate(errs)
        ]
        r = compute_metrics(recs)
        property_ok &= r.top80 <= r.aed + 1e-12
    ok = fixture_ok and property_ok
    _report(
        8,
        "metric unit suite",
        ok,
        f"fixture aed {rep.aed} top80 {rep.top80} ce {rep.ce}; top80<=aed on 1000 sets",
    )
