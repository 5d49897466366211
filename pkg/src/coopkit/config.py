"""Configuration management for coopkit."""

import os
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Optional

from coopkit import logger

try:
    import yaml
    YAML_AVAILABLE = True
except ImportError:
    YAML_AVAILABLE = False

BUDGET_ENV_VAR = "COOPKIT_BUDGET"
DEFAULT_BUDGET = 2 ** 20


@dataclass
class Config:
    """Configuration for coopkit.

    Attributes:
        log_level: Logging level (DEBUG, INFO, WARNING, ERROR).
        log_file: Path to log file.
        enumeration_budget: Maximum number of candidate pairs enumerate_pairs
            may examine before refusing.
        output_format: Report format ("json" or "text").
        mode: Solution concept for cooperation checks ("bayesian" or "icr").
        check_prior_consistency: Also require belief kernels to equal the
            common prior conditioned on each type when a prior is present.
    """

    log_level: str = "INFO"
    log_file: Optional[str] = None
    enumeration_budget: int = DEFAULT_BUDGET
    output_format: str = "json"
    mode: str = "bayesian"
    check_prior_consistency: bool = False

    @classmethod
    def from_file(cls, config_path: str) -> "Config":
        """Load configuration from YAML file.

        Args:
            config_path: Path to configuration file.

        Returns:
            Config instance with values from file.

        Raises:
            FileNotFoundError: If config file doesn't exist.
            ValueError: If YAML library is not available or file is invalid.
        """
        if not YAML_AVAILABLE:
            raise ValueError(
                "PyYAML is not installed. "
                "Install it with: pip install coopkit[yaml]"
            )

        config_file = Path(config_path)
        if not config_file.exists():
            raise FileNotFoundError("Config file not found: %s" % config_path)

        with open(config_file, "r", encoding="utf-8") as f:
            config_data = yaml.safe_load(f) or {}

        if not isinstance(config_data, dict):
            raise ValueError("Config file must contain a mapping: %s" % config_path)

        return cls(
            log_level=config_data.get("log_level", cls.log_level),
            log_file=config_data.get("log_file", cls.log_file),
            enumeration_budget=int(
                config_data.get("enumeration_budget", cls.enumeration_budget)
            ),
            output_format=config_data.get("output_format", cls.output_format),
            mode=config_data.get("mode", cls.mode),
            check_prior_consistency=bool(
                config_data.get("check_prior_consistency", cls.check_prior_consistency)
            ),
        )

    @classmethod
    def load(
        cls,
        config_path: Optional[str] = None,
        log_level: Optional[str] = None,
        enumeration_budget: Optional[int] = None,
    ) -> "Config":
        """Load configuration with optional overrides.

        Values are merged in order: defaults, config file (if provided and
        exists), the ``COOPKIT_BUDGET`` environment variable, then command-line
        overrides.

        Args:
            config_path: Optional path to configuration file.
            log_level: Optional log level override from command line.
            enumeration_budget: Optional budget override from command line.

        Returns:
            Config instance with merged values.
        """
        config = cls()
        log = logger.get_logger()

        if config_path and os.path.exists(config_path):
            try:
                config = cls.from_file(config_path)
            except (ValueError, FileNotFoundError) as e:
                log.warning("Failed to load config file: %s (%s), using defaults", config_path, e)

        env_budget = os.environ.get(BUDGET_ENV_VAR)
        if env_budget:
            try:
                config.enumeration_budget = int(env_budget)
            except ValueError:
                log.warning("Ignoring invalid %s=%r", BUDGET_ENV_VAR, env_budget)

        if log_level is not None:
            config.log_level = log_level
        if enumeration_budget is not None:
            config.enumeration_budget = enumeration_budget

        return config

    def to_dict(self) -> dict:
        """Convert configuration to dictionary.

        Returns:
            Dictionary representation of configuration.
        """
        return asdict(self)
