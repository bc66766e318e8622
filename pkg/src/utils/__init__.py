"""
工具模块
"""

from .helpers import (
    get_project_root,
    get_config_path,
    setup_logger,
    format_float,
    format_complex,
    parse_complex_list
)
from .config import (
    Tolerances,
    CheckThresholds,
    NumericsConfig,
    RunConfig,
    AppConfig,
    load_config
)

__all__ = [
    "get_project_root",
    "get_config_path",
    "setup_logger",
    "format_float",
    "format_complex",
    "parse_complex_list",
    "Tolerances",
    "CheckThresholds",
    "NumericsConfig",
    "RunConfig",
    "AppConfig",
    "load_config"
]
