"""
配置管理

从 config/lie_config.yaml 读取容差、数值参数和运行参数，
使用 pydantic 模型做校验。环境变量 LIE_CONFIG_PATH 可以指定其他配置文件。
"""

import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

import yaml
from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .helpers import get_config_path


class Tolerances(BaseModel):
    """数值容差（均为无量纲量）"""

    model_config = ConfigDict(frozen=True)

    tol_det: float = Field(default=1e-9, gt=0, lt=1)
    tol_unitary: float = Field(default=1e-10, gt=0, lt=1)
    tol_recon: float = Field(default=1e-10, gt=0, lt=1)
    tol_coset: float = Field(default=1e-8, gt=0, lt=1)
    tol_value: float = Field(default=1e-9, gt=0, lt=1)


class CheckThresholds(BaseModel):
    """
    验证套件中各检查项的容差上限

    检查项实际使用 min(对应的 tol_*, 上限)，命令行收紧 tol_* 仍然生效。
    """

    model_config = ConfigDict(frozen=True)

    closed_form_sl3: float = Field(default=1e-9, gt=0, lt=1)
    closed_form_len2: float = Field(default=1e-10, gt=0, lt=1)
    orthogonal_identity: float = Field(default=1e-12, gt=0, lt=1)
    phi_include_identity: float = Field(default=1e-10, gt=0, lt=1)
    equivariance: float = Field(default=1e-9, gt=0, lt=1)
    iwasawa_equivariance: float = Field(default=1e-9, gt=0, lt=1)
    closed_form_factorization: float = Field(default=1e-10, gt=0, lt=1)
    matrix_identities: float = Field(default=1e-10, gt=0, lt=1)
    roundtrip: float = Field(default=1e-8, gt=0, lt=1)
    sl3_inverse_point: float = Field(default=1e-9, gt=0, lt=1)
    u_entries: float = Field(default=1e-12, gt=0, lt=1)


class NumericsConfig(BaseModel):
    """数值算法参数"""

    model_config = ConfigDict(frozen=True)

    # 分解前的条件数上限
    max_condition: float = Field(default=1e12, gt=1)
    # 随机采样矩阵的条件数上限
    sample_condition_limit: float = Field(default=1e6, gt=1)
    finite_difference_step: float = Field(default=1e-5, gt=0, lt=1)
    # 坐标采样圆盘半径 |ζ| <= R
    sample_radius: float = Field(default=2.0, gt=0)


class RunConfig(BaseModel):
    """单次运行参数"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(default=3, ge=2)
    word: List[int] = Field(default_factory=lambda: [1, 2, 1])
    seed: int = Field(default=42, ge=0, lt=2 ** 64)
    samples: int = Field(default=100, ge=1)
    tolerances: Tolerances = Field(default_factory=Tolerances)
    thresholds: CheckThresholds = Field(default_factory=CheckThresholds)
    output: Literal["human", "json"] = "human"

    @model_validator(mode="after")
    def _check_word(self) -> "RunConfig":
        for letter in self.word:
            if not 1 <= letter <= self.n - 1:
                raise ValueError(f"字母 {letter} 超出范围 [1, {self.n - 1}]")
        return self


class AppConfig(BaseModel):
    """完整配置"""

    model_config = ConfigDict(frozen=True)

    tolerances: Tolerances = Field(default_factory=Tolerances)
    thresholds: CheckThresholds = Field(default_factory=CheckThresholds)
    numerics: NumericsConfig = Field(default_factory=NumericsConfig)
    run: Dict[str, Any] = Field(default_factory=dict)

    @field_validator("run", mode="before")
    @classmethod
    def _none_to_empty(cls, value):
        return value or {}

    def run_config(self, **overrides) -> RunConfig:
        """
        合并配置文件中的运行参数和命令行覆盖值

        Args:
            **overrides: 覆盖值（None 表示不覆盖）

        Returns:
            校验后的 RunConfig
        """
        values = dict(self.run)
        values.setdefault("tolerances", self.tolerances.model_dump())
        values.setdefault("thresholds", self.thresholds.model_dump())
        tol_overrides = overrides.pop("tolerances", None) or {}
        if tol_overrides:
            merged = dict(values["tolerances"])
            merged.update({k: v for k, v in tol_overrides.items() if v is not None})
            values["tolerances"] = merged
        values.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig(**values)


def resolve_config_path(config_path: Optional[str] = None) -> Path:
    """确定配置文件路径：显式参数 > 环境变量 > 默认路径"""
    if config_path:
        return Path(config_path)

    load_dotenv()
    env_path = os.getenv("LIE_CONFIG_PATH")
    if env_path:
        return Path(env_path)

    return get_config_path("lie_config.yaml")


def load_config(config_path: Optional[str] = None) -> AppConfig:
    """
    加载配置文件

    Args:
        config_path: 配置文件路径（None 时按环境变量或默认路径查找）

    Returns:
        AppConfig；文件不存在时返回默认配置
    """
    path = resolve_config_path(config_path)

    if not path.exists():
        return AppConfig()

    with open(path, 'r', encoding='utf-8') as f:
        raw = yaml.safe_load(f) or {}

    return AppConfig(**raw)
