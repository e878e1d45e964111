from pathlib import Path
from typing import Optional, Union
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """gmc knobs, read from the environment or the repository ``.env``."""

    # Runtime
    LOG_LEVEL: str = Field(default="INFO", description="Root log level for the gmc CLI.")
    DEBUG_MODE: bool = False
    PROJECT_ROOT: str = Field(
        default_factory=lambda: str(Path(__file__).resolve().parent.parent),
        description="Absolute path to the project root directory.",
    )
    ARTIFACTS_DIR: str = Field(
        default="artifacts",
        description="Directory for bench output and rendered scenes. Relative paths are resolved from PROJECT_ROOT.",
    )

    # Exact routines
    IR_CAP: int = Field(default=20, description="Largest demand count accepted by ir_exact.")
    VS_CAP: int = Field(default=16, description="Largest demand count accepted by vs_exact.")
    EXACT_CANDIDATE_CAP: int = Field(
        default=24,
        description="Largest candidate-point count accepted by exact_opt without a node budget.",
    )
    EXACT_NODE_BUDGET: int = Field(
        default=2_000_000,
        description="Search-node limit for exact_opt and enumerate_optima.",
    )

    # Approximation algorithms
    DEFAULT_STRIPS: Optional[int] = Field(
        default=None,
        description="Strip count for vertical_manhattan. Unset selects 2^ceil(sqrt(log2 n)).",
    )
    PROJECT_ONLY_DEMANDED: bool = Field(
        default=False,
        description="Project only points with a cross-strip demand in vertical_manhattan.",
    )
    DENSE_PROJECTION: bool = Field(
        default=False,
        description="Use the dense fallback projection pattern in disk_solve.",
    )

    # Harness and rendering
    BENCH_CONFIG: str = Field(
        default="configs/bench.yaml",
        description="Bench configuration used when gmc bench gets no --config. Relative to PROJECT_ROOT.",
    )
    BENCH_WORKERS: int = Field(default=1, description="Worker processes used by gmc bench.")
    RENDER_WIDTH_IN: float = Field(default=6.0, description="Width of rendered SVG scenes in inches.")

    model_config = SettingsConfigDict(
        env_file=str(Path(__file__).resolve().parent.parent / ".env"),
        env_file_encoding="utf-8",
        extra="ignore",
    )

    def resolve_path(self, path_value: Union[str, Path]) -> Path:
        """Absolute paths pass through; relative ones hang off ``PROJECT_ROOT``."""
        path = Path(path_value).expanduser()
        if not path.is_absolute():
            path = Path(self.PROJECT_ROOT).expanduser().resolve() / path
        return path

    @property
    def artifacts_path(self) -> Path:
        return self.resolve_path(self.ARTIFACTS_DIR)


settings = Settings()
