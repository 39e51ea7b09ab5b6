"""
Imaging Test Suite
==================

Behavior Documentation
----------------------

1. **Sampling**: scan grids are exactly symmetric about zero.
2. **Contrast**: two-lobe modulation depth with a peak floor; fewer than
   two lobes means depth 0.
3. **Scans**: curves are mirror symmetric and independent of the thread count.
4. **Sweeps**: emitter-distance, order/standoff and detector-mode sweeps.
"""

import math
import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from testing import describe, it, expect, expect_error

from superres.core.geometry import SetupConfig
from superres.core.imaging import (
    ContrastReport,
    CorrelationCurve,
    DetectorMode,
    contrast,
    default_fixed_positions,
    local_maxima,
    max_normalize,
    scan_1d,
    scan_2d,
    shape_similarity,
    sweep_detector_modes,
    sweep_emitter_distance,
    sweep_standoff_order,
    symmetric_samples,
)


TWO_LOBES = np.array([
    0.0, 0.2, 0.5, 1.0, 0.5, 0.3, 0.3, 0.3, 0.5, 0.8,
    0.5, 0.2, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
])


def curve_of(values, xs=None) -> CorrelationCurve:
    values = np.asarray(values, dtype=float)
    xs = np.linspace(-1.0, 1.0, values.size) if xs is None else xs
    return CorrelationCurve(scan_x=xs, values=values, order=1, config=SetupConfig())


@describe("Scan sampling")
class SamplingTests:
    """
    Symmetric scan grids
    ====================
    """

    @it("mirrors every sample exactly")
    def test_symmetric(self):
        xs = symmetric_samples(1000.0, 401)
        expect(bool(np.all(xs == -xs[::-1]))).to_be_true()
        expect(xs[200]).to_equal(0.0)
        expect(xs[0]).to_equal(-1000.0)
        expect(xs[-1]).to_equal(1000.0)

    @it("accepts a symmetric range and rejects anything else")
    def test_ranges(self):
        expect(symmetric_samples((-5.0, 5.0), 11)).to_be_close_to(np.linspace(-5.0, 5.0, 11), abs=1e-15)
        with expect_error(ValueError):
            symmetric_samples((-5.0, 4.0), 11)
        with expect_error(ValueError):
            symmetric_samples(5.0, 1)

    @it("max-normalizes, leaving an all-zero curve alone")
    def test_normalize(self):
        expect(max_normalize(np.array([1.0, 4.0, 2.0]))).to_be_close_to(np.array([0.25, 1.0, 0.5]))
        expect(max_normalize(np.zeros(3))).to_be_close_to(np.zeros(3))


@describe("Contrast metric")
class ContrastTests:
    """
    Modulation depth between the two highest lobes
    ==============================================
    """

    @it("finds strict maxima and the leftmost sample of a plateau")
    def test_local_maxima(self):
        expect(local_maxima(np.array([0.0, 1.0, 0.0, 2.0, 2.0, 0.0]))).to_equal([1, 3])
        expect(local_maxima(np.array([0.0, 1.0, 1.0, 2.0]))).to_equal([])

    @it("measures (peak - valley) / (peak + valley) with the lower peak")
    def test_depth(self):
        report = contrast(TWO_LOBES)
        expect(report.depth).to_be_close_to(0.5 / 1.1)
        expect(report.resolved).to_be_true()
        expect(report.lobes).to_equal((3.0, 9.0))
        expect(report.valley).to_equal(5.0)
        expect(report.peak_values).to_equal((1.0, 0.8))

    @it("reports lobe positions in scan coordinates for curves")
    def test_curve_coordinates(self):
        xs = np.arange(20, dtype=float) * 10.0 - 95.0
        report = contrast(curve_of(TWO_LOBES, xs))
        expect(report.lobes).to_equal((-65.0, -5.0))

    @it("ignores lobes below half the global maximum")
    def test_peak_floor(self):
        values = TWO_LOBES.copy()
        values[9] = 0.4
        values[8] = 0.35
        values[10] = 0.35
        expect(contrast(values).depth).to_equal(0.0)
        expect(contrast(values, peak_floor=0.2).depth).to_be_greater_than(0.0)

    @it("gives depth 0 for a single lobe or a dark curve")
    def test_single_lobe(self):
        single = np.concatenate([np.linspace(0.0, 1.0, 10), np.linspace(0.9, 0.0, 10)])
        report = contrast(single)
        expect(report.depth).to_equal(0.0)
        expect(report.resolved).to_be_false()
        expect(report.lobes).to_be_none()
        expect(contrast(np.zeros(20)).depth).to_equal(0.0)

    @it("applies the resolution threshold")
    def test_threshold(self):
        expect(contrast(TWO_LOBES, threshold=0.5).resolved).to_be_false()
        expect(contrast(TWO_LOBES, threshold=0.45).resolved).to_be_true()

    @it("keeps well separated lobes through box smoothing")
    def test_smooth(self):
        report = contrast(TWO_LOBES, smooth=True)
        expect(report.depth).to_be_close_to(1.0 / 3.0)
        expect(report.resolved).to_be_true()

    @it("does not change when the curve is rescaled")
    def test_rescale(self):
        report = contrast(TWO_LOBES)
        for scale in (1e-9, 0.25, 3.7, 1e6):
            scaled = contrast(TWO_LOBES * scale)
            expect(scaled.depth).to_be_close_to(report.depth, rel=1e-12)
            expect(scaled.lobes).to_equal(report.lobes)
            expect(scaled.valley_ratio).to_be_close_to(0.3, rel=1e-12)

    @it("ranks a deeper valley between unequal lobes by its valley ratio")
    def test_valley_ratio(self):
        even = TWO_LOBES.copy()
        even[9] = 1.0
        even[5:8] = 0.32
        lopsided, balanced = contrast(TWO_LOBES), contrast(even)
        expect(lopsided.valley_ratio).to_be_close_to(0.3)
        expect(balanced.valley_ratio).to_be_close_to(0.32)
        expect(lopsided.valley_ratio).to_be_less_than(balanced.valley_ratio)
        expect(lopsided.depth).to_be_less_than(balanced.depth)
        expect(ContrastReport(depth=0.0, resolved=False).valley_ratio).to_be_none()

    @it("needs at least 16 samples")
    def test_min_samples(self):
        with expect_error(ValueError):
            contrast(np.ones(15))

    @it("serializes its report")
    def test_to_dict(self):
        data = contrast(TWO_LOBES).to_dict()
        expect(sorted(data)).to_equal(["depth", "lobes", "resolved", "threshold", "valley", "valley_ratio"])
        expect(data["lobes"]).to_equal([3.0, 9.0])
        expect(ContrastReport(depth=0.0, resolved=False).to_dict()["lobes"]).to_be_none()


@describe("Correlation curves")
class CurveTests:
    """
    Curve and image containers
    ==========================
    """

    @it("requires increasing coordinates and non-negative values")
    def test_validation(self):
        with expect_error(ValueError):
            curve_of([1.0, 2.0, 3.0], np.array([0.0, 2.0, 1.0]))
        with expect_error(ValueError):
            curve_of([1.0, -2.0, 3.0])

    @it("rates identical shapes at similarity 1 regardless of scale")
    def test_similarity(self):
        xs = np.linspace(-1.0, 1.0, 41)
        a = curve_of(np.cos(3.0 * xs) ** 2, xs)
        b = curve_of(7.0 * np.cos(3.0 * xs) ** 2, xs)
        expect(shape_similarity(a, b)).to_be_close_to(1.0)
        c = curve_of(np.sin(3.0 * xs) ** 2, xs)
        expect(shape_similarity(a, c)).to_be_less_than(0.9)


@describe("Scans")
class ScanTests:
    """
    1-D and 2-D correlation scans
    =============================
    """

    @it("produces a mirror-symmetric G(1) curve")
    def test_g1_symmetric(self):
        curve = scan_1d(1, SetupConfig(), x_range=400.0, n_samples=17)
        expect(curve).to_have_length(17)
        expect(curve.values).to_be_close_to(curve.values[::-1], rel=1e-12, abs=0.0)
        expect(curve.emitter_xs).to_equal((0.0,))
        expect(bool(np.all(curve.values > 0))).to_be_true()

    @it("does not depend on the number of worker threads")
    def test_threads(self):
        serial = scan_1d(2, SetupConfig(), x_range=300.0, n_samples=9, workers=1)
        parallel = scan_1d(2, SetupConfig(), x_range=300.0, n_samples=9, workers=4)
        expect(bool(np.array_equal(serial.values, parallel.values))).to_be_true()

    @it("reports progress once per point")
    def test_progress(self):
        ticks = []
        scan_1d(1, SetupConfig(), x_range=100.0, n_samples=5, progress=ticks.append)
        expect(sum(ticks)).to_equal(5)

    @it("normalizes on request")
    def test_normalize(self):
        curve = scan_1d(1, SetupConfig(), x_range=400.0, n_samples=9, normalize=True)
        expect(float(curve.values.max())).to_equal(1.0)
        expect(curve.normalized).to_be_true()

    @it("peaks on axis in far-field mode")
    def test_far_field(self):
        curve = scan_1d(1, SetupConfig(), x_range=400.0, n_samples=17, far_field=True, normalize=True)
        expect(float(curve.values[8])).to_equal(1.0)
        expect(curve.values).to_be_close_to(curve.values[::-1])
        expect(float(curve.values[12])).to_be_less_than(1e-12)

    @it("leaves the far-field double aperture unresolved")
    def test_rayleigh(self):
        curve = scan_1d(1, SetupConfig(), far_field=True)
        report = contrast(curve)
        expect(report.depth).to_be_less_than(0.05)
        expect(report.resolved).to_be_false()

    @it("builds a y-symmetric image row by row")
    def test_image(self):
        image = scan_2d(1, SetupConfig(), x_range=300.0, y_range=200.0, nx=5, ny=3)
        expect(image.shape).to_equal((3, 5))
        expect(image.values[0]).to_be_close_to(image.values[2], rel=1e-12, abs=0.0)
        expect(image.center_row().metadata["scan_y"]).to_equal(0.0)
        with expect_error(ValueError):
            scan_2d(1, SetupConfig(), nx=1, ny=3)


@describe("Sweeps")
class SweepTests:
    """
    Parameter sweeps
    ================
    """

    @it("places an emitter pair at each multiple of delta")
    def test_distance(self):
        samples = sweep_emitter_distance([1.0, 5.0], SetupConfig(), x_range=300.0, n_samples=17)
        expect(samples).to_have_length(2)
        expect(samples[0].distance).to_be_close_to(1.0 / 45.0)
        expect(samples[1].distance).to_be_close_to(5.0 / 45.0)
        expect(samples[1].curve.metadata["multiplier"]).to_equal(5.0)
        expect(samples[0].report).to_be_instance_of(ContrastReport)

    @it("fills a contrast matrix over orders and standoffs")
    def test_matrix(self):
        matrix = sweep_standoff_order([1, 2], [0.1, 1.0], SetupConfig(), x_range=300.0, n_samples=17)
        expect(matrix.depths.shape).to_equal((2, 2))
        expect(matrix.report_for(2, 1.0)).to_be(matrix[1, 1])
        expect(matrix.cells[0][1].curve.config.source_standoff).to_equal(1.0)

    @it("fixes the stationary detectors from the N=4 placement at x = 0")
    def test_fixed_positions(self):
        big = 500.0 / 4.5
        two = default_fixed_positions(DetectorMode.TWO_MOVING_TWO_FIXED, SetupConfig())
        expect(two).to_be_close_to((big, 0.5 * big))
        three = default_fixed_positions(DetectorMode.ONE_MOVING_THREE_FIXED, SetupConfig())
        expect(three).to_be_close_to((0.0, big, 0.5 * big))
        expect(math.copysign(1.0, three[0])).to_equal(1.0)
        expect(default_fixed_positions(DetectorMode.FOUR_MOVING, SetupConfig())).to_equal(())

    @it("checks the number of fixed detectors before scanning")
    def test_fixed_count(self):
        with expect_error(ValueError):
            sweep_detector_modes("two_moving_two_fixed", [1.0, 2.0, 3.0], SetupConfig())
        with expect_error(ValueError):
            sweep_detector_modes(DetectorMode.FOUR_MOVING, [1.0], SetupConfig())
        with expect_error(ValueError):
            sweep_detector_modes("three_moving", None, SetupConfig())

    @it("records the mode and fixed detectors on the curve")
    def test_mode_metadata(self):
        curve = sweep_detector_modes(
            "one_moving_three_fixed", None, SetupConfig(), x_range=300.0, n_samples=5,
        )
        expect(curve.metadata["mode"]).to_equal("one_moving_three_fixed")
        expect(curve.metadata["fixed_positions"]).to_have_length(3)
        expect(curve.order).to_equal(4)


if __name__ == "__main__":
    from testing import run_tests

    success = run_tests()
    sys.exit(0 if success else 1)
