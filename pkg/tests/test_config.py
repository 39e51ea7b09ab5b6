"""
Configuration Test Suite
========================

Behavior Documentation
----------------------

1. **RunConfig**: nested blocks with defaults; unknown keys and wrong types
   are rejected with the dotted path of the offending field.
2. **Layering**: defaults < environment < preset < config file < CLI flags.
3. **Settings**: SUPERRES_* environment variables are typed and validated.
4. **Session**: every run writes a manifest, on success and on failure.
"""

import json
import os
import sys
import tempfile
from pathlib import Path
from unittest.mock import patch

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from testing import describe, it, expect, expect_error

from superres.core.config import (
    RunConfig,
    RunManifest,
    SuperresSettings,
    load_config,
    resolve_run_config,
)
from superres.core.errors import ConfigError, GeometryError, OutputError, PlacementError
from superres.core.presets import FIGURE_PRESETS, apply_preset, deep_merge, get_preset
from superres.core.session import prepare_config, run_session


def write_config(directory: str, data, name: str = "run.json") -> Path:
    path = Path(directory) / name
    path.write_text(data if isinstance(data, str) else json.dumps(data), encoding="utf-8")
    return path


@describe("RunConfig")
class RunConfigTests:
    """
    Nested run configuration
    ========================
    """

    @it("defaults to the reference setup")
    def test_defaults(self):
        config = RunConfig()
        expect(config.geometry.a).to_equal(0.5)
        expect(config.geometry.d).to_equal(0.25)
        expect(config.geometry.epsilon).to_equal(0.1)
        expect(config.geometry.r_z).to_equal(500.0)
        expect(config.scan.order).to_equal(2)
        expect(config.scan.n_samples).to_equal(401)
        expect(config.quadrature.order).to_equal(8)
        expect(config.sweep.orders).to_equal([1, 2, 4])
        expect(config.output.image_format).to_equal("pgm")
        expect(config.setup.extent).to_equal(2.25)

    @it("round-trips through its dict form")
    def test_round_trip(self):
        config = RunConfig.from_dict({"scan": {"order": 4, "x_range": 800}, "threads": 3})
        expect(config.scan.x_range).to_be_instance_of(float)
        expect(RunConfig.from_dict(config.to_dict())).to_equal(config)

    @it("names an unknown key by its dotted path")
    def test_unknown_key(self):
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"scan": {"bogus": 1}})
        expect(raised.value.field_path).to_equal("scan.bogus")

    @it("names a field of the wrong type")
    def test_bad_type(self):
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"geometry": {"a": "half"}})
        expect(raised.value.field_path).to_equal("geometry.a")
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"scan": {"far_field": 1}})
        expect(raised.value.field_path).to_equal("scan.far_field")
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"sweep": {"standoffs": [0.1, "x"]}})
        expect(raised.value.field_path).to_equal("sweep.standoffs[1]")

    @it("enforces the far-zone condition on r_z")
    def test_far_zone(self):
        with expect_error(GeometryError) as raised:
            RunConfig.from_dict({"geometry": {"r_z": 100}})
        expect(raised.value.field_path).to_equal("geometry.r_z")
        expect(RunConfig.from_dict({"geometry": {"r_z": 225}}).geometry.r_z).to_equal(225.0)
        with expect_error(GeometryError) as raised:
            RunConfig.from_dict({"geometry": {"epsilon": -1}})
        expect(raised.value.field_path).to_equal("geometry.epsilon")

    @it("rejects orders without a placement rule")
    def test_order(self):
        with expect_error(PlacementError) as raised:
            RunConfig.from_dict({"scan": {"order": 3}})
        expect(raised.value.field_path).to_equal("scan.order")
        expect(str(raised.value)).to_contain("N=3")
        with expect_error(PlacementError) as raised:
            RunConfig.from_dict({"sweep": {"orders": [1, 5]}})
        expect(raised.value.field_path).to_equal("sweep.orders[1]")

    @it("checks enumerated and ranged fields")
    def test_enumerations(self):
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"output": {"image_format": "gif"}})
        expect(raised.value.field_path).to_equal("output.image_format")
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"sweep": {"detector_mode": "sideways"}})
        expect(raised.value.field_path).to_equal("sweep.detector_mode")
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"sweep": {"detector_mode": "one_moving_three_fixed", "fixed_positions": [1.0, 2.0]}})
        expect(raised.value.field_path).to_equal("sweep.fixed_positions")
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"sweep": {"max_order": 9}})
        expect(raised.value.field_path).to_equal("sweep.max_order")
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"scan": {"n_samples": 1}})
        expect(raised.value.field_path).to_equal("scan.n_samples")

    @it("carries the quadrature block into a QuadratureSpec")
    def test_quad(self):
        config = RunConfig.from_dict({"quadrature": {"tolerance": 1e-8}})
        expect(config.quad.tolerance).to_equal(1e-8)
        with expect_error(ConfigError) as raised:
            RunConfig.from_dict({"quadrature": {"order": 1}})
        expect(raised.value.field_path).to_equal("quadrature")


@describe("Config files")
class ConfigFileTests:
    """
    JSON config files and manifests
    ===============================
    """

    @it("loads a partial file over the defaults")
    def test_load(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = load_config(write_config(tmp, {"geometry": {"epsilon": 0.25}}))
        expect(config.geometry.epsilon).to_equal(0.25)
        expect(config.scan.order).to_equal(2)

    @it("reports invalid JSON with its position")
    def test_invalid_json(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_config(tmp, '{"scan": {"order": 2,}}')
            with expect_error(ConfigError) as raised:
                load_config(path)
        expect(raised.value.message).to_contain("invalid JSON")

    @it("reports a missing file")
    def test_missing(self):
        with tempfile.TemporaryDirectory() as tmp:
            with expect_error(ConfigError) as raised:
                load_config(Path(tmp) / "nope.json")
        expect(raised.value.message).to_contain("not found")

    @it("accepts a run manifest as a config file")
    def test_manifest(self):
        config = RunConfig.from_dict({"scan": {"order": 4}, "geometry": {"epsilon": 0.25}})
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "scan1d.manifest.json"
            RunManifest.for_run("scan1d", config, "0.1.0").save_to_file(str(path))
            loaded = load_config(path)
            manifest = RunManifest.load_from_file(str(path))
        expect(loaded).to_equal(config)
        expect(manifest.run_config).to_equal(config)
        expect(manifest.status).to_equal("running")


@describe("Config layering")
class LayeringTests:
    """
    defaults < environment < preset < config file < CLI flags
    ================================================================
    """

    @it("applies a preset under the file")
    def test_preset_under_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_config(tmp, {"scan": {"n_samples": 51}})
            config = resolve_run_config(path, figure="2d")
        expect(config.scan.order).to_equal(4)
        expect(config.scan.n_samples).to_equal(51)
        expect(config.figure).to_equal("2d")

    @it("lets the file pick the preset")
    def test_preset_in_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            config = resolve_run_config(write_config(tmp, {"figure": "farfield-g1"}))
        expect(config.scan.far_field).to_be_true()
        expect(config.scan.order).to_equal(1)
        expect(config.figure).to_equal("2a")

    @it("puts CLI flags on top and ignores unset ones")
    def test_overrides(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_config(tmp, {"scan": {"order": 1, "x_range": 600.0}})
            config = resolve_run_config(
                path, figure="2c", overrides={"scan": {"order": 4, "x_range": None}, "threads": None},
            )
        expect(config.scan.order).to_equal(4)
        expect(config.scan.x_range).to_equal(600.0)
        expect(config.threads).to_equal(1)

    @it("puts environment values at the bottom")
    def test_base(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = write_config(tmp, {"threads": 2})
            expect(resolve_run_config(path, base={"threads": 3}).threads).to_equal(2)
        expect(resolve_run_config(base={"threads": 3}).threads).to_equal(3)

    @it("rejects an unknown preset")
    def test_unknown_preset(self):
        with expect_error(ConfigError) as raised:
            resolve_run_config(figure="9z")
        expect(raised.value.field_path).to_equal("figure")

    @it("merges without touching its inputs")
    def test_deep_merge(self):
        base = {"scan": {"order": 1, "x_range": 10.0}}
        top = {"scan": {"order": 2}, "threads": 4}
        merged = deep_merge(base, top)
        expect(merged).to_equal({"scan": {"order": 2, "x_range": 10.0}, "threads": 4})
        expect(base).to_equal({"scan": {"order": 1, "x_range": 10.0}})
        expect(top).to_equal({"scan": {"order": 2}, "threads": 4})

    @it("ships a valid config for every preset")
    def test_presets_valid(self):
        for name in FIGURE_PRESETS:
            config = RunConfig.from_dict(apply_preset({}, name))
            expect(config.figure).to_equal(name)
        expect(get_preset("3").command).to_equal("sweep-matrix")

    @it("resolves descriptive aliases to figure ids")
    def test_aliases(self):
        expect(get_preset("nearfield-g1").name).to_equal("2b")
        expect(get_preset("order-standoff")).to_be(get_preset("3"))
        expect(apply_preset({}, "g4-one-fixed")["figure"]).to_equal("s4c")
        for preset in FIGURE_PRESETS.values():
            expect(get_preset(preset.alias).name).to_equal(preset.name)


@describe("Environment settings")
class SettingsTests:
    """
    SUPERRES_* variables
    ====================
    """

    @it("reads typed values with defaults")
    def test_typed(self):
        with patch.dict(os.environ, {"SUPERRES_THREADS": "3", "SUPERRES_DEBUG": "yes"}):
            settings = SuperresSettings()
            expect(settings.SUPERRES_THREADS).to_equal(3)
            expect(settings.SUPERRES_DEBUG).to_be_true()
        with patch.dict(os.environ, {"SUPERRES_THREADS": ""}):
            expect(SuperresSettings().SUPERRES_THREADS).to_equal(1)

    @it("makes the output directory absolute")
    def test_output_dir(self):
        with patch.dict(os.environ, {"SUPERRES_OUTPUT_DIR": "runs"}):
            expect(os.path.isabs(SuperresSettings().SUPERRES_OUTPUT_DIR)).to_be_true()

    @it("rejects a non-positive thread count")
    def test_bad_threads(self):
        with patch.dict(os.environ, {"SUPERRES_THREADS": "0"}):
            with expect_error(ValueError):
                SuperresSettings().SUPERRES_THREADS
            with expect_error(ConfigError) as raised:
                prepare_config()
        expect(raised.value.field_path).to_equal("environment")

    @it("layers the environment under CLI flags")
    def test_prepare(self):
        with patch.dict(os.environ, {"SUPERRES_THREADS": "4"}):
            expect(prepare_config().threads).to_equal(4)
            expect(prepare_config(overrides={"threads": 2}).threads).to_equal(2)


@describe("Run session")
class SessionTests:
    """
    Manifest bookkeeping
    ====================
    """

    @it("writes an ok manifest with outputs and diagnostics")
    def test_success(self):
        with tempfile.TemporaryDirectory() as tmp:
            with run_session("scan1d", RunConfig(), tmp) as session:
                session.record_output(session.path("curve.csv"))
                session.record("contrast", {"depth": 0.5})
                with session.timed("scan"):
                    pass
            data = json.loads(session.manifest_path.read_text(encoding="utf-8"))
        expect(data["kind"]).to_equal("superres-manifest")
        expect(data["status"]).to_equal("ok")
        expect(data["diagnostics"]["contrast"]["depth"]).to_equal(0.5)
        expect(data["outputs"]).to_have_length(1)
        expect("scan" in data["timings"] and "total" in data["timings"]).to_be_true()

    @it("writes a failed manifest and re-raises")
    def test_failure(self):
        with tempfile.TemporaryDirectory() as tmp:
            with expect_error(RuntimeError):
                with run_session("scan1d", RunConfig(), tmp):
                    raise RuntimeError("boom")
            data = json.loads((Path(tmp) / "scan1d.manifest.json").read_text(encoding="utf-8"))
        expect(data["status"]).to_equal("failed")
        expect(data["error"]).to_contain("RuntimeError: boom")

    @it("raises OutputError when the output directory cannot be created")
    def test_unwritable(self):
        with tempfile.TemporaryDirectory() as tmp:
            blocker = Path(tmp) / "file"
            blocker.write_text("x", encoding="utf-8")
            with expect_error(OutputError):
                with run_session("scan1d", RunConfig(), blocker / "out"):
                    pass


if __name__ == "__main__":
    from testing import run_tests

    success = run_tests()
    sys.exit(0 if success else 1)
