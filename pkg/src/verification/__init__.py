"""
数值验证模块
"""

from .suites import (
    SUITE_NAMES,
    Sampler,
    CheckResult,
    SuiteReport,
    expand_suites,
    run_suite,
    run_suites,
    reports_to_json,
    render_human
)

__all__ = [
    "SUITE_NAMES",
    "Sampler",
    "CheckResult",
    "SuiteReport",
    "expand_suites",
    "run_suite",
    "run_suites",
    "reports_to_json",
    "render_human"
]
