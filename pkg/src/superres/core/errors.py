"""Exception hierarchy shared by the simulation core and the CLI."""

from typing import Optional, Tuple


class SuperresError(Exception):
    """Base exception for every error raised by superres."""
    exit_code: int = 1


class ConfigError(SuperresError):
    """Raised when a run configuration fails validation."""
    exit_code = 2

    def __init__(self, field_path: str, message: str):
        self.field_path = field_path
        self.message = message
        super().__init__(f"{field_path}: {message}" if field_path else message)


class GeometryError(ConfigError):
    """Raised when a setup violates a physical validity rule."""


class PlacementError(ConfigError):
    """Raised when no placement rule exists for the requested order."""

    def __init__(self, order: int, field_path: str = "scan.order"):
        self.order = order
        super().__init__(field_path, f"placement undefined for N={order}")


class QuadratureConvergenceError(SuperresError):
    """Raised when adaptive quadrature exhausts its refinement depth.

    Carries the last two estimates so callers can judge how far off they were.
    """
    exit_code = 3

    def __init__(
        self,
        previous: complex,
        current: complex,
        depth: int,
        cell: Optional[Tuple[int, int]] = None,
    ):
        self.previous = previous
        self.current = current
        self.depth = depth
        self.cell = cell
        where = f" at matrix cell (i={cell[0]}, mu={cell[1]})" if cell is not None else ""
        super().__init__(
            f"quadrature did not converge within depth {depth}{where}: "
            f"last estimates {previous!r} and {current!r}"
        )

    def at_cell(self, i: int, mu: int) -> "QuadratureConvergenceError":
        return QuadratureConvergenceError(self.previous, self.current, self.depth, (i, mu))


class OracleGuardError(SuperresError):
    """Raised when a factorial-time oracle is asked for a matrix that is too large."""


class OutputError(SuperresError):
    """Raised when an output file cannot be written."""
    exit_code = 4
