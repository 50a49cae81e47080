from loguru import logger

logger.disable("chiral_qw")

from . import chiral, constants, dynamics, errors, estimation, graphs, utils
from .config import (
    auto_match_config,
    configuration,
    estimator_config,
    figures_config,
    logger_config,
    qsw_config,
    walk_config,
)

__all__ = [
    "graphs",
    "chiral",
    "dynamics",
    "estimation",
    "errors",
    "configuration",
    "constants",
    "utils",
    "auto_match_config",
    "walk_config",
    "qsw_config",
    "estimator_config",
    "figures_config",
    "logger_config",
]
