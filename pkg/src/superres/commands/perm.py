import math
from typing import Optional

import numpy as np
import typer

from superres import Annotated, superres_cli, capture_exception, echo
from superres.commands._options import ConfigOption, OutOption, QuietOption
from superres.core.errors import SuperresError
from superres.core.permanent import permanent_naive, permanent_ryser
from superres.core.session import prepare_config, run_session
from superres.utils.progress import progress_bar


PERM_RTOL = 1e-12
PERM_ATOL = 1e-12


def random_unit_disc_matrix(rng: np.random.Generator, order: int) -> np.ndarray:
    """Complex entries drawn uniformly from the unit disc."""
    radius = np.sqrt(rng.random((order, order)))
    angle = rng.uniform(0.0, 2.0 * math.pi, (order, order))
    return radius * np.exp(1j * angle)


def permanents_agree(a: complex, b: complex, rtol: float = PERM_RTOL, atol: float = PERM_ATOL) -> bool:
    return abs(a - b) <= atol + rtol * max(abs(a), abs(b))


@superres_cli.command(name="perm-check")
@capture_exception
def perm_check_command(
    trials: Annotated[Optional[int], typer.Option(
        "--trials", min=1, help="Random matrices per order", show_default=False,
    )] = None,
    max_order: Annotated[Optional[int], typer.Option(
        "--max-order", min=1, max=8, help="Largest matrix order checked", show_default=False,
    )] = None,
    seed: Annotated[Optional[int], typer.Option("--seed", help="Random seed", show_default=False)] = None,
    config_path: ConfigOption = None,
    out: OutOption = None,
    quiet: QuietOption = False,
) -> None:
    """
    Cross-check the Ryser permanent against the N! path sum on random matrices.

    Examples:
        superres perm-check
        superres perm-check --trials 1000 --max-order 8 --seed 7
    """
    config = prepare_config(config_path, None, {
        "output": {"directory": str(out) if out else None},
        "sweep": {"trials": trials, "max_order": max_order, "seed": seed},
    })
    sweep = config.sweep
    rng = np.random.default_rng(sweep.seed)

    with run_session("perm-check", config) as session:
        session.manifest.seed = sweep.seed
        worst = {}
        failures = []
        with session.timed("random"), progress_bar(
            range(1, sweep.max_order + 1), desc="perm-check", unit="N", mode="off" if quiet else "auto"
        ) as orders:
            for n in orders:
                worst_n = 0.0
                for trial in range(sweep.trials):
                    m = random_unit_disc_matrix(rng, n)
                    fast, slow = permanent_ryser(m), permanent_naive(m)
                    worst_n = max(worst_n, abs(fast - slow) / max(abs(slow), 1e-300))
                    if not permanents_agree(fast, slow):
                        failures.append({"order": n, "trial": trial, "ryser": fast, "naive": slow})
                worst[str(n)] = worst_n

        with session.timed("all_ones"):
            ones = {}
            for n in range(1, sweep.max_order + 1):
                value = permanent_ryser(np.ones((n, n)))
                ones[str(n)] = value.real
                if not permanents_agree(value, complex(math.factorial(n))):
                    failures.append({"order": n, "all_ones": value, "expected": math.factorial(n)})

        session.record("permanent", {
            "trials": sweep.trials,
            "max_order": sweep.max_order,
            "worst_relative_difference": worst,
            "all_ones": ones,
            "failures": len(failures),
        })
        for n, diff in worst.items():
            echo.info(f"N={n}: worst relative difference {diff:.2e}")
        if failures:
            session.record("failed_cases", failures[:10])
            raise SuperresError(f"{len(failures)} permanent mismatches, first: {failures[0]}")
        echo.success(f"Ryser agrees with the path sum for N=1..{sweep.max_order}")
