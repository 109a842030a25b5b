from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict
from pathlib import Path

import logging

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """
    Application settings loaded from environment variables or default values.
    Every field can be overridden with an `ISOPERIMETRY_` prefixed variable or a `.env` file.
    """

    APP_NAME: str = "Non-Euclidean Isoperimetry Toolkit"
    DEBUG: bool = False  # Adds a console handler to the log
    LOG_LEVEL: str = "INFO"  # Options: "DEBUG", "INFO", "WARNING", etc.
    LOG_DIR: Path = Field(default_factory=lambda: Path("logs"))
    LOG_TO_FILE: bool = True

    # Numerical tolerances (see ToleranceConfig)
    EPS_PREDICATE: float = 1e-10
    EPS_CONVERGE: float = 1e-8

    # Symmetrization and fuzzing
    MAX_ITER: int = 500
    FUZZ_WORKERS: int = 1
    SAMPLER_MAX_TRIES: int = 1000
    FLEX_SCAN_POINTS: int = 64
    FLEX_TOLERANCE: float = 1e-12

    OUTPUT_FOLDER: Path = Field(default_factory=lambda: Path("output"))

    model_config = SettingsConfigDict(
        env_file=".env",
        env_prefix="ISOPERIMETRY_",
        extra="ignore",
    )

    def setup(self) -> None:
        """
        Creates the output directory if it doesn't exist.

        @return: None
        """
        if not self.OUTPUT_FOLDER.exists():
            self.OUTPUT_FOLDER.mkdir(parents=True, exist_ok=True)
            logger.info(f"Created directory: {self.OUTPUT_FOLDER}")
        else:
            logger.debug(f"Directory already exists: {self.OUTPUT_FOLDER}")


# Initialize settings
settings = Settings()

# Expose as default for global access
default = settings
