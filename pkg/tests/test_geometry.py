"""
Geometry Test Suite
===================

Behavior Documentation
----------------------

1. **Units**: lengths are in wavelengths, so delta = eps / (2(4a+d)).
2. **Validation**: non-physical setups raise GeometryError naming the config field.
3. **Placement**: emitters and detectors follow the per-order rules; other orders raise PlacementError.
"""

import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from testing import describe, it, expect, expect_error

from superres.core.errors import GeometryError, PlacementError
from superres.core.geometry import (
    K,
    ApertureMask,
    EmitterArray,
    SetupConfig,
    aperture_centers,
    delta_scale,
    detector_offset,
    detector_positions,
    detectors_at,
    emitter_pair,
    emitter_positions,
    in_aperture,
)


@describe("SetupConfig")
class SetupConfigTests:
    """
    Setup configuration
    ===================

    Aperture radius, gap, source standoff and detector distance.
    """

    @it("uses the standard double-aperture defaults")
    def test_defaults(self):
        config = SetupConfig()
        expect(config.aperture_radius).to_equal(0.5)
        expect(config.aperture_gap).to_equal(0.25)
        expect(config.source_standoff).to_equal(0.1)
        expect(config.detector_z).to_equal(500.0)
        expect(config.extent).to_equal(2.25)
        expect(config.center_offset).to_equal(0.625)
        expect(config.k).to_be_close_to(2.0 * math.pi)
        expect(K).to_be_close_to(2.0 * math.pi)

    @it("rejects a detector plane closer than 100 mask widths")
    def test_far_zone(self):
        with expect_error(GeometryError) as raised:
            SetupConfig(detector_z=100.0)
        expect(raised.value.field_path).to_equal("geometry.r_z")
        expect(str(raised.value)).to_contain("225")
        SetupConfig(detector_z=225.0)

    @it("names the offending field of non-positive lengths")
    def test_positive_lengths(self):
        with expect_error(GeometryError) as raised:
            SetupConfig(aperture_radius=0.0)
        expect(raised.value.field_path).to_equal("geometry.a")
        with expect_error(GeometryError) as raised:
            SetupConfig(source_standoff=-0.1)
        expect(raised.value.field_path).to_equal("geometry.epsilon")
        with expect_error(GeometryError) as raised:
            SetupConfig(aperture_gap=-1.0)
        expect(raised.value.field_path).to_equal("geometry.d")

    @it("swaps only the standoff in with_standoff")
    def test_with_standoff(self):
        config = SetupConfig(aperture_gap=0.5).with_standoff(1.0)
        expect(config.source_standoff).to_equal(1.0)
        expect(config.aperture_gap).to_equal(0.5)


@describe("Aperture mask")
class ApertureMaskTests:
    """
    Aperture mask
    =============

    Two open discs centred at x = +-(a + d/2).
    """

    @it("places the centres symmetrically on the x axis")
    def test_centers(self):
        expect(aperture_centers(SetupConfig())).to_equal([(-0.625, 0.0), (0.625, 0.0)])
        expect(ApertureMask.from_config(SetupConfig()).extent).to_equal(2.25)

    @it("treats the gap and the rim as opaque")
    def test_membership(self):
        config = SetupConfig()
        expect(in_aperture((0.625, 0.0), config)).to_be_true()
        expect(in_aperture((-0.625, 0.4), config)).to_be_true()
        expect(in_aperture((0.0, 0.0), config)).to_be_false()
        expect(in_aperture((1.125, 0.0), config)).to_be_false()
        expect(in_aperture((0.625, 0.5), config)).to_be_false()


@describe("Position uncertainty scale")
class DeltaScaleTests:
    """
    delta = lambda * eps / (2(4a+d))
    ================================
    """

    @it("gives lambda/45 at a standoff of lambda/10")
    def test_default_delta(self):
        expect(delta_scale(0.1, SetupConfig())).to_be_close_to(1.0 / 45.0)

    @it("scales with 1/sqrt(p^2 - 1) for a steepness factor")
    def test_steepness(self):
        base = delta_scale(0.1, SetupConfig())
        expect(delta_scale(0.1, SetupConfig(), p=5.0)).to_be_close_to(base / math.sqrt(24.0))

    @it("rejects a non-positive standoff and p <= 1")
    def test_invalid(self):
        with expect_error(GeometryError):
            delta_scale(0.0, SetupConfig())
        with expect_error(GeometryError):
            delta_scale(0.1, SetupConfig(), p=1.0)

    @it("uses the detector distance for the detector offset D")
    def test_detector_offset(self):
        expect(detector_offset(SetupConfig())).to_be_close_to(500.0 / 4.5)


@describe("Emitter placement")
class EmitterPlacementTests:
    """
    Emitter placement
    =================

    N=1: [0], N=2: [0, d], N=4: [-d, 0, d/2, d] at y = 0, z = -eps.
    """

    @it("places one, two and four emitters")
    def test_orders(self):
        config = SetupConfig()
        delta = 1.0 / 45.0
        expect(emitter_positions(1, config).xs).to_equal([0.0])
        expect(emitter_positions(2, config).xs).to_be_close_to([0.0, delta])
        expect(emitter_positions(4, config).xs).to_be_close_to([-delta, 0.0, 0.5 * delta, delta])
        for p in emitter_positions(4, config).positions:
            expect(p[1]).to_equal(0.0)
            expect(p[2]).to_equal(-0.1)

    @it("honours an explicit standoff")
    def test_standoff(self):
        emitters = emitter_positions(2, SetupConfig(), standoff=1.0)
        expect(emitters.standoff).to_equal(1.0)
        expect(emitters.xs[1]).to_be_close_to(1.0 / 4.5)

    @it("refuses orders without a placement rule")
    def test_unsupported(self):
        with expect_error(PlacementError) as raised:
            emitter_positions(3, SetupConfig())
        expect(str(raised.value)).to_contain("N=3")
        expect(raised.value.field_path).to_equal("scan.order")

    @it("spaces an emitter pair by a multiple of delta")
    def test_pair(self):
        pair = emitter_pair(5.0, SetupConfig())
        expect(pair.xs).to_be_close_to([0.0, 5.0 / 45.0])
        with expect_error(GeometryError):
            emitter_pair(0.0, SetupConfig())

    @it("keeps every emitter on the source line")
    def test_source_line(self):
        with expect_error(ValueError):
            EmitterArray(positions=((0.0, 0.1, -0.1),), standoff=0.1)
        with expect_error(ValueError):
            EmitterArray(positions=(), standoff=0.1)


@describe("Detector placement")
class DetectorPlacementTests:
    """
    Detector placement
    ==================

    N=2 mirrors the scan point, N=4 adds two detectors offset by D and D/2.
    """

    @it("mirrors the scan point for N=2")
    def test_pair(self):
        detectors = detector_positions(2, 120.0, 7.0, SetupConfig())
        expect(detectors.xs).to_equal([120.0, -120.0])
        expect(detectors.placement).to_equal("mirror_pair")
        for p in detectors.positions:
            expect(p[1]).to_equal(7.0)
            expect(p[2]).to_equal(500.0)

    @it("uses [x, -x, -x + D, x + D/2] for N=4")
    def test_quad(self):
        big = 500.0 / 4.5
        detectors = detector_positions(4, 10.0, 0.0, SetupConfig())
        expect(detectors.xs).to_be_close_to([10.0, -10.0, -10.0 + big, 10.0 + 0.5 * big])

    @it("puts custom detectors on the detector plane")
    def test_custom(self):
        detectors = detectors_at([(1.0, 2.0), (3.0, 4.0)], SetupConfig())
        expect(detectors.order).to_equal(2)
        expect(detectors.positions[1]).to_equal((3.0, 4.0, 500.0))
        expect(detectors.free).to_equal(())

    @it("refuses orders without a placement rule")
    def test_unsupported(self):
        with expect_error(PlacementError):
            detector_positions(5, 0.0, 0.0, SetupConfig())


if __name__ == "__main__":
    from testing import run_tests

    success = run_tests()
    sys.exit(0 if success else 1)
