"""Locations and environment loading for superres."""
from pathlib import Path
from typing import List

from dotenv import load_dotenv


def get_config_dir() -> Path:
    """Per-user configuration directory"""
    return Path.home() / ".superres"


def get_env_config_file() -> Path:
    """Per-user .env file"""
    return get_config_dir() / ".env"


def get_command_dir() -> Path:
    """Directory holding the CLI command modules"""
    return Path(__file__).parent.parent.parent / "commands"


def env_config_files() -> List[Path]:
    """.env files in load order; earlier files win because load_dotenv never overrides."""
    return [Path.cwd() / ".env", get_env_config_file()]


def load_env_config() -> List[Path]:
    loaded = []
    for env_file in env_config_files():
        if env_file.is_file():
            load_dotenv(env_file, override=False)
            loaded.append(env_file)
    return loaded
