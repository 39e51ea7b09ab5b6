import json
import os

from abc import ABC
from typing import Any, Dict, List, Literal, NewType, Union, get_args, get_origin, get_type_hints


AbsolutePath = NewType("AbsolutePath", str)


def _to_bool(raw: str) -> bool:
    return raw.strip().lower() in ("true", "1", "yes", "on")


def _to_positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise ValueError(f"expected a positive integer, got {value}")
    return value


PositiveInt = NewType("PositiveInt", int)

_converters = {
    str: str,
    int: int,
    float: float,
    bool: _to_bool,
    list: json.loads,
    dict: json.loads,
    List: json.loads,
    Dict: json.loads,
    PositiveInt: _to_positive_int,
    AbsolutePath: lambda raw: os.path.abspath(raw),
}


class EnvConfig(ABC):
    """
    Typed view on environment variables.

    Every annotated class attribute names an environment variable; reading the
    attribute returns the variable converted to the annotated type, or the
    class default when the variable is unset.

        class Settings(EnvConfig):
            MY_THREADS: PositiveInt = 1

        Settings().MY_THREADS  # int(os.environ["MY_THREADS"]) or 1
    """

    def __init_subclass__(cls, **kwargs):
        super().__init_subclass__(**kwargs)
        cls._cached_type_hints = None

    def __getattribute__(self, name: str) -> Any:
        if name.startswith('_'):
            return super().__getattribute__(name)

        cls = super().__getattribute__("__class__")
        if cls._cached_type_hints is None:
            cls._cached_type_hints = get_type_hints(cls)
        hints = cls._cached_type_hints
        if name not in hints:
            return super().__getattribute__(name)

        try:
            default = super().__getattribute__(name)
        except AttributeError:
            default = None

        raw = os.getenv(name)
        if raw is None or raw.strip() == "":
            return default
        try:
            return self._convert(raw.strip(), hints[name])
        except (ValueError, TypeError, json.JSONDecodeError) as e:
            raise ValueError(f"Invalid value for environment variable {name}={raw!r}: {e}") from e

    @staticmethod
    def _convert(raw: str, target: Any) -> Any:
        if target in _converters:
            return _converters[target](raw)

        origin = get_origin(target)
        if origin is Literal:
            for allowed in get_args(target):
                converter = _converters.get(type(allowed), str)
                if converter(raw) == allowed:
                    return allowed
            raise ValueError(f"must be one of {get_args(target)}")

        if origin is Union:
            for arg in get_args(target):
                if arg is type(None):
                    continue
                try:
                    return EnvConfig._convert(raw, arg)
                except (ValueError, TypeError):
                    continue
            raise ValueError(f"could not convert to any of {get_args(target)}")

        if origin is not None:
            return EnvConfig._convert(raw, origin)

        raise TypeError(f"unsupported setting type {target!r}")
