from pydantic_settings import BaseSettings, SettingsConfigDict
from pydantic import field_validator
from pathlib import Path
from typing import List


PACKAGE_DIR = Path(__file__).resolve().parent.parent


class Settings(BaseSettings):
    APP_NAME: str = "spherecurves"
    VERSION: str = "1.0.0"

    LOG_LEVEL: str = "WARNING"
    LOG_DIR: str = "logs"
    LOG_TO_FILE: bool = False

    # joblib workers; -1 uses every CPU
    N_JOBS: int = -1

    DEFAULT_MAX_CROSSINGS: int = 7
    MOVE_MAX_CROSSINGS: int = 7
    BFS_MAX_STEPS: int = 8
    BFS_MAX_STATES: int = 200_000

    PROJECTIONS_FILE: Path = PACKAGE_DIR / "data" / "rolfsen_projections.txt"
    REPORTS_DIR: Path = Path("reports")

    RANDOM_SEED: int = 42

    # Triangle class whose RIII is the strong one; fixed by the calibration suite.
    STRONG_RIII_TRIANGLE: str = "coherent"

    # Store as comma-separated string, convert via property
    CSV_COLUMNS_STR: str = "name,n,u,b,lr,x,s,kappa,inv_s3,inv_s2,inv_w3,mu"

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    @field_validator("STRONG_RIII_TRIANGLE")
    @classmethod
    def triangle_class_known(cls, v: str) -> str:
        if v not in ("coherent", "incoherent"):
            raise ValueError("STRONG_RIII_TRIANGLE must be 'coherent' or 'incoherent'")
        return v

    @field_validator("LOG_LEVEL")
    @classmethod
    def log_level_known(cls, v: str) -> str:
        v = v.upper()
        if v not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"unknown LOG_LEVEL {v!r}")
        return v

    @property
    def CSV_COLUMNS(self) -> List[str]:
        """Parse CSV_COLUMNS as a list from comma-separated string."""
        return [col.strip() for col in self.CSV_COLUMNS_STR.split(",") if col.strip()]


settings = Settings()
