"""Run bookkeeping for CLI commands: resolved config, outputs, timings, manifest."""

import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Union

from superres.core.config import RunConfig, RunManifest, SuperresSettings, resolve_run_config
from superres.core.diffraction import QuadratureSpec, convergence_report
from superres.core.errors import ConfigError, SuperresError
from superres.core.geometry import Point3, SetupConfig
from superres.utils import echo
from superres.utils.file_utils import mkdir, write_json
from superres.utils.typer_utils import get_superres_version


def prepare_config(
    config_path: Optional[Union[str, Path]] = None,
    figure: Optional[str] = None,
    overrides: Optional[Dict[str, Any]] = None,
) -> RunConfig:
    """Resolve the effective run configuration.

    Precedence, lowest first: built-in defaults, environment settings
    (``SUPERRES_THREADS``, ``SUPERRES_OUTPUT_DIR``), figure preset, config
    file, CLI flags.
    """
    settings = SuperresSettings()
    try:
        env_base = {
            "threads": settings.SUPERRES_THREADS,
            "output": {"directory": str(settings.SUPERRES_OUTPUT_DIR)},
        }
    except ValueError as e:
        raise ConfigError("environment", str(e)) from None
    return resolve_run_config(config_path, figure, overrides, base=env_base)


class RunSession:
    def __init__(self, command: str, config: RunConfig, out_dir: Optional[Union[str, Path]] = None):
        self.command = command
        self.config = config
        self.out_dir = Path(out_dir or config.output.directory)
        self.manifest = RunManifest.for_run(command, config, get_superres_version())
        self._start = time.perf_counter()

    @property
    def manifest_path(self) -> Path:
        return self.out_dir / f"{self.command}.manifest.json"

    def path(self, name: str) -> Path:
        return self.out_dir / name

    def record_output(self, path: Path) -> Path:
        self.manifest.outputs.append(str(path))
        echo.debug(f"wrote {path}")
        return path

    def record(self, key: str, value: Any) -> None:
        self.manifest.diagnostics[key] = value

    @contextmanager
    def timed(self, label: str) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        finally:
            self.manifest.timings[label] = time.perf_counter() - start

    def record_quadrature(self, label: str, setup: SetupConfig, quad: QuadratureSpec, detector: Point3, emitter: Point3) -> None:
        """Convergence diagnostics of one representative matrix cell."""
        report = convergence_report(detector, emitter, setup, quad)
        report["detector"] = list(detector)
        report["emitter"] = list(emitter)
        self.manifest.diagnostics.setdefault("quadrature", {})[label] = report

    def _write_manifest(self, status: str, error: Optional[str] = None) -> None:
        self.manifest.status = status
        self.manifest.error = error
        self.manifest.timings["total"] = time.perf_counter() - self._start
        write_json(self.manifest_path, self.manifest.to_dict())

    def finish(self) -> None:
        self._write_manifest("ok")
        echo.success(f"{self.command} finished, manifest at {self.manifest_path}")

    def fail(self, error: BaseException) -> None:
        try:
            self._write_manifest("failed", f"{type(error).__name__}: {error}")
            echo.warning(f"partial manifest written to {self.manifest_path}")
        except SuperresError as e:
            echo.warning(f"could not write the partial manifest: {e}")


@contextmanager
def run_session(command: str, config: RunConfig, out_dir: Optional[Union[str, Path]] = None) -> Iterator[RunSession]:
    """Yield a session; the manifest is written on success and on failure."""
    session = RunSession(command, config, out_dir)
    mkdir(session.out_dir)
    echo.info(f"{command}: writing to {session.out_dir}")
    try:
        yield session
    except Exception as e:
        session.fail(e)
        raise
    session.finish()
