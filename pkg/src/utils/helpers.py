"""
工具函数模块
"""

import math
import sys
from pathlib import Path


def get_project_root() -> Path:
    """获取项目根目录"""
    return Path(__file__).parent.parent.parent


def get_config_path(config_name: str = "lie_config.yaml") -> Path:
    """获取配置文件路径"""
    return get_project_root() / "config" / config_name


def setup_logger(level: str = "INFO"):
    """配置日志（只输出到stderr，保证stdout上的JSON/CSV不被污染）"""
    from loguru import logger

    logger.remove()
    logger.add(
        sys.stderr,
        level=level,
        format="<green>{time:YYYY-MM-DD HH:mm:ss}</green> | "
               "<level>{level: <8}</level> | "
               "<level>{message}</level>"
    )

    return logger


def format_float(value: float) -> str:
    """最短往返十进制表示"""
    return repr(float(value))


def format_complex(value: complex) -> str:
    """复数的可读表示，例如 1.0+0.5j"""
    value = complex(value)
    sign = "-" if math.copysign(1.0, value.imag) < 0 else "+"
    return f"{format_float(value.real)}{sign}{format_float(abs(value.imag))}j"


def parse_complex_list(text: str) -> list:
    """
    解析逗号分隔的复数列表

    Args:
        text: 例如 "1,1+1j,-0.5j"

    Returns:
        复数列表
    """
    values = []
    for item in text.split(","):
        item = item.strip().replace(" ", "")
        if not item:
            continue
        values.append(complex(item))
    return values
