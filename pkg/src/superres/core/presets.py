"""Figure presets: named parameter sets layered under a run configuration.

Presets are selected by their figure id (``2b``) or by their descriptive
alias (``nearfield-g1``). Each preset is a partial configuration in the
JSON layout of ``RunConfig``.
Values from a config file and from CLI flags are applied on top of it.
"""

import copy
from dataclasses import dataclass, field
from typing import Any, Dict, List

from superres.core.errors import ConfigError


@dataclass(frozen=True)
class RunPreset:
    name: str
    alias: str
    command: str
    description: str
    overrides: Dict[str, Any] = field(default_factory=dict)


_NEAR_FIELD = {"a": 0.5, "d": 0.25, "epsilon": 0.1, "r_z": 500.0}
_LINE_SCAN = {"x_range": 1000.0, "n_samples": 401}

FIGURE_PRESETS: Dict[str, RunPreset] = {
    p.name: p
    for p in [
        RunPreset(
            "2a", "farfield-g1", "scan1d", "far-field intensity of the plane-wave lit mask (Rayleigh limit)",
            {"geometry": _NEAR_FIELD, "scan": {**_LINE_SCAN, "order": 1, "far_field": True}},
        ),
        RunPreset(
            "2b", "nearfield-g1", "scan1d", "near-field intensity G1 of one on-axis emitter",
            {"geometry": _NEAR_FIELD, "scan": {**_LINE_SCAN, "order": 1}},
        ),
        RunPreset(
            "2c", "nearfield-g2", "scan1d", "two-emitter G2 with mirrored detector pair",
            {"geometry": _NEAR_FIELD, "scan": {**_LINE_SCAN, "order": 2}},
        ),
        RunPreset(
            "2d", "nearfield-g4", "scan1d", "four-emitter G4",
            {"geometry": _NEAR_FIELD, "scan": {**_LINE_SCAN, "order": 4}},
        ),
        RunPreset(
            "3", "order-standoff", "sweep-matrix", "contrast for orders {1, 2, 4} against standoffs {1/10, 1/4, 1} wavelength",
            {
                "geometry": _NEAR_FIELD,
                "scan": dict(_LINE_SCAN),
                "sweep": {"orders": [1, 2, 4], "standoffs": [0.1, 0.25, 1.0]},
            },
        ),
        RunPreset(
            "s2", "g2-distance", "sweep-distance", "two-emitter G2 as the emitter separation grows from delta to 15 delta",
            {
                "geometry": _NEAR_FIELD,
                "scan": {
                    **_LINE_SCAN, "order": 2, "y_range": 500.0, "nx": 201, "ny": 101,
                },
                "sweep": {"multipliers": [1.0, 5.0, 10.0, 15.0]},
            },
        ),
        RunPreset(
            "s4a", "g4-two-fixed", "sweep-detectors", "G4 with two moving and two stationary detectors",
            {
                "geometry": _NEAR_FIELD,
                "scan": {**_LINE_SCAN, "order": 4},
                "sweep": {"detector_mode": "two_moving_two_fixed"},
            },
        ),
        RunPreset(
            "s4c", "g4-one-fixed", "sweep-detectors", "G4 with one moving and three stationary detectors",
            {
                "geometry": _NEAR_FIELD,
                "scan": {**_LINE_SCAN, "order": 4},
                "sweep": {"detector_mode": "one_moving_three_fixed"},
            },
        ),
    ]
}


PRESET_ALIASES: Dict[str, str] = {p.alias: p.name for p in FIGURE_PRESETS.values()}


def list_presets() -> List[str]:
    return list(FIGURE_PRESETS)


def get_preset(name: str) -> RunPreset:
    """Look a preset up by figure id or alias."""
    key = PRESET_ALIASES.get(name, name)
    try:
        return FIGURE_PRESETS[key]
    except KeyError:
        expected = ", ".join(f"{p.name} ({p.alias})" for p in FIGURE_PRESETS.values())
        raise ConfigError("figure", f"unknown preset {name!r}, expected one of {expected}") from None


def deep_merge(base: Dict[str, Any], top: Dict[str, Any]) -> Dict[str, Any]:
    """Nested dict merge; values in ``top`` win, neither input is modified."""
    merged = copy.deepcopy(base)
    for key, value in top.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = copy.deepcopy(value)
    return merged


def apply_preset(data: Dict[str, Any], name: str) -> Dict[str, Any]:
    """Layer ``data`` over the preset ``name``; the figure id is recorded under ``figure``."""
    preset = get_preset(name)
    merged = deep_merge(preset.overrides, data)
    merged["figure"] = preset.name
    return merged
