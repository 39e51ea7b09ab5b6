"""Run manifest: everything needed to reproduce a run, written next to its outputs."""

import json
import os
import platform
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Literal, Optional

from superres.core.config.run_config import RunConfig


MANIFEST_KIND = "superres-manifest"
RunStatus = Literal["running", "ok", "failed"]


@dataclass
class RunManifest:
    command: str
    config: Dict[str, Any]
    version: str
    status: RunStatus = "running"
    error: Optional[str] = None
    seed: Optional[int] = None
    diagnostics: Dict[str, Any] = field(default_factory=dict)
    timings: Dict[str, float] = field(default_factory=dict)
    outputs: List[str] = field(default_factory=list)
    started: str = field(default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds"))
    python: str = field(default_factory=platform.python_version)
    kind: str = MANIFEST_KIND

    @classmethod
    def for_run(cls, command: str, config: RunConfig, version: str) -> "RunManifest":
        return cls(command=command, config=config.to_dict(), version=version)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "RunManifest":
        return cls(**data)

    def save_to_file(self, filepath: str) -> None:
        os.makedirs(os.path.dirname(os.path.abspath(filepath)), exist_ok=True)
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(self.to_dict(), f, indent=2, ensure_ascii=False)

    @classmethod
    def load_from_file(cls, filepath: str) -> "RunManifest":
        with open(filepath, 'r', encoding='utf-8') as f:
            return cls.from_dict(json.load(f))

    @property
    def run_config(self) -> RunConfig:
        return RunConfig.from_dict(self.config)
