"""
Configuration Management for the Quillen Sectional Category Toolkit

Settings are read from the environment (and an optional .env file) so the CLI,
the API and the test-suite share one set of defaults:
- Degree bounds used when a command does not pass --max-degree
- Search options for the certifier (seed, branch budget, restarts)
- Reporting switches (timings) and API server settings
"""

from typing import List, Literal

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """
    Application settings

    Every field can be overridden by an environment variable of the same name,
    e.g. ``SEARCH_BUDGET=1024 ./dgl cat cp2.dgl``.
    """

    # Application Environment
    APP_ENV: Literal["development", "production"] = "development"
    APP_TITLE: str = "Quillen Sectional Category API"
    APP_VERSION: str = "1.0.0"
    APP_DESCRIPTION: str = "Quillen models of products and fat wedges, secat / cat / TC certificates"

    # Logging
    LOG_LEVEL: str = "info"

    # Degree bounds
    DEFAULT_MAX_DEGREE: int = 8
    MAX_DEGREE_LIMIT: int = 16  # Free Lie algebras grow exponentially; refuse anything larger

    # Certificate search
    SEARCH_SEED: int = 0
    SEARCH_BUDGET: int = 256      # Explored branch nodes per candidate n
    SEARCH_RESTARTS: int = 4      # Seeded randomized restarts after backtracking fails
    SEARCH_COEFFICIENTS: List[int] = [-2, -1, 0, 1, 2]
    DEFAULT_MAX_N: int = 3

    # Reports
    REPORT_TIMINGS: bool = False  # Off: reports stay byte-identical across runs

    # API Settings
    API_HOST: str = "0.0.0.0"
    API_PORT: int = 8000
    CORS_ENABLED: bool = True
    CORS_ORIGINS: List[str] = ["*"]

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=True,
        extra="ignore"
    )

    @property
    def is_production(self) -> bool:
        """True when APP_ENV is explicitly 'production'"""
        return self.APP_ENV == "production"

    def search_options(self):
        """
        Default certificate search options

        Returns:
            SearchOptions: options built from the SEARCH_* settings
        """
        from .secat.problem import SearchOptions

        return SearchOptions(
            seed=self.SEARCH_SEED,
            budget=self.SEARCH_BUDGET,
            restarts=self.SEARCH_RESTARTS,
            coefficients=list(self.SEARCH_COEFFICIENTS),
        )


# Global settings instance
settings = Settings()


# Log configuration on import
if __name__ != "__main__":
    import logging
    logger = logging.getLogger(__name__)
    logger.info("Configuration Loaded:")
    logger.info(f"  Environment: {'PRODUCTION' if settings.is_production else 'DEVELOPMENT'}")
    logger.info(f"  Default degree bound: {settings.DEFAULT_MAX_DEGREE} (limit {settings.MAX_DEGREE_LIMIT})")
    logger.info(f"  Search: seed={settings.SEARCH_SEED} budget={settings.SEARCH_BUDGET} restarts={settings.SEARCH_RESTARTS}")
