from .config import SuperresSettings
from .manifest import MANIFEST_KIND, RunManifest
from .run_config import (
    GeometryBlock,
    OutputBlock,
    QuadratureBlock,
    RunConfig,
    ScanBlock,
    SweepBlock,
    load_config,
    read_config_data,
    resolve_run_config,
)
from .utils import (
    get_command_dir,
    get_config_dir,
    get_env_config_file,
    load_env_config,
)


__all__ = [
    "SuperresSettings",
    "MANIFEST_KIND",
    "RunManifest",
    "GeometryBlock",
    "OutputBlock",
    "QuadratureBlock",
    "RunConfig",
    "ScanBlock",
    "SweepBlock",
    "load_config",
    "read_config_data",
    "resolve_run_config",
    "get_command_dir",
    "get_config_dir",
    "get_env_config_file",
    "load_env_config",
]
