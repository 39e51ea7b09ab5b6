import typer

from superres import Annotated, superres_cli, capture_exception, echo
from superres.commands._options import ConfigOption, OutOption
from superres.core.diffraction import evanescent_fraction, weyl_kz, weyl_reconstruct
from superres.core.errors import ConfigError
from superres.core.geometry import K
from superres.core.session import prepare_config, run_session
from superres.utils.file_utils import write_json


@superres_cli.command(name="weyl-check")
@capture_exception
def weyl_check_command(
    epsilon: Annotated[float, typer.Option("--epsilon", "-e", help="Axial source offset in wavelengths")] = 0.5,
    lateral: Annotated[float, typer.Option("--lateral", help="Lateral offset in wavelengths")] = 0.0,
    kmax: Annotated[float, typer.Option("--kmax", help="Spectral cutoff in units of k")] = 8.0,
    grid_order: Annotated[int, typer.Option("--grid-order", min=2, help="Gauss-Legendre nodes per panel")] = 24,
    config_path: ConfigOption = None,
    out: OutOption = None,
) -> None:
    """
    Check the plane-wave (Weyl) expansion of a spherical wave against its closed form.

    Reports the relative reconstruction error, the evanescent share of the
    spectrum at this standoff and the evanescent kz at k_par = 5k.

    Examples:
        superres weyl-check
        superres weyl-check --epsilon 0.1 --kmax 16 --grid-order 32
    """
    if not epsilon > 0:
        raise ConfigError("epsilon", "must be > 0")
    config = prepare_config(config_path, None, {"output": {"directory": str(out) if out else None}})
    emitter = (0.0, 0.0, -epsilon)
    point = (lateral, 0.0, 0.0)

    with run_session("weyl-check", config) as session:
        with session.timed("weyl"):
            result = weyl_reconstruct(emitter, point, k_max=kmax, grid_order=grid_order)
            fraction = evanescent_fraction(epsilon, lateral, grid_order)
        kz5 = weyl_kz(5.0 * K, 0.0)
        report = {
            "epsilon": epsilon,
            "lateral": lateral,
            "k_max": kmax,
            "grid_order": grid_order,
            "value": result.value,
            "exact": result.exact,
            "propagating": result.propagating,
            "evanescent": result.evanescent,
            "relative_error": result.relative_error,
            "evanescent_fraction": fraction,
            "kz_at_5k": kz5,
        }
        session.record_output(write_json(session.path("weyl_check.json"), report))
        session.record("weyl", {
            "relative_error": result.relative_error,
            "evanescent_fraction": fraction,
            "kz_at_5k_over_k": kz5.imag / K,
        })
        echo.echo(
            f"relative_error={result.relative_error:.3e} "
            f"evanescent_fraction={fraction:.4f} "
            f"kz(5k)={kz5.imag / K:.5f}i k"
        )
