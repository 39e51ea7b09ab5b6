from superres.utils.env_utils import AbsolutePath, EnvConfig, PositiveInt


class SuperresSettings(EnvConfig):
    SUPERRES_THREADS: PositiveInt = 1
    SUPERRES_DEBUG: bool = False
    SUPERRES_OUTPUT_DIR: AbsolutePath = "superres-out"
