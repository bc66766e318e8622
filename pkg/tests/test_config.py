"""
配置管理单元测试
"""

import pytest
from pathlib import Path
import sys

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from pydantic import ValidationError

from src.utils.config import (
    AppConfig,
    CheckThresholds,
    RunConfig,
    Tolerances,
    load_config,
    resolve_config_path,
)


class TestConfig:
    """配置测试类"""

    def test_default_file(self, config_dir):
        config = load_config(str(config_dir / "lie_config.yaml"))
        assert config.tolerances.tol_coset == 1e-8
        assert config.numerics.max_condition == 1e12
        run = config.run_config()
        assert run.word == [1, 2, 1]
        assert run.seed == 42

    def test_default_thresholds(self, config_dir):
        config = load_config(str(config_dir / "lie_config.yaml"))
        assert config.thresholds == CheckThresholds()
        assert config.thresholds.orthogonal_identity == 1e-12
        assert config.thresholds.u_entries == 1e-12
        assert config.run_config().thresholds == config.thresholds

    def test_thresholds_from_file(self, tmp_path):
        path = tmp_path / "alt.yaml"
        path.write_text("thresholds:\n  roundtrip: 1.0e-6\n", encoding="utf-8")
        run = load_config(str(path)).run_config()
        assert run.thresholds.roundtrip == 1e-6
        assert run.thresholds.u_entries == 1e-12

    @pytest.mark.parametrize("value", [0.0, 1.0])
    def test_threshold_range(self, value):
        with pytest.raises(ValidationError):
            CheckThresholds(roundtrip=value)

    def test_missing_file_gives_defaults(self, tmp_path):
        config = load_config(str(tmp_path / "none.yaml"))
        assert config == AppConfig()

    def test_env_variable(self, tmp_path, monkeypatch):
        path = tmp_path / "alt.yaml"
        path.write_text("run:\n  n: 4\n  word: [1, 3]\n", encoding="utf-8")
        monkeypatch.setenv("LIE_CONFIG_PATH", str(path))
        assert resolve_config_path() == path
        assert load_config().run_config().n == 4

    def test_overrides(self):
        run = AppConfig().run_config(n=4, word=[1, 2, 3], seed=None,
                                     tolerances={"tol_value": 1e-6, "tol_det": None})
        assert run.n == 4
        assert run.seed == 42
        assert run.tolerances.tol_value == 1e-6
        assert run.tolerances.tol_det == 1e-9

    def test_invalid_letter(self):
        with pytest.raises(ValidationError):
            RunConfig(n=3, word=[3])

    @pytest.mark.parametrize("value", [0.0, 1.5, -1e-3])
    def test_tolerance_range(self, value):
        with pytest.raises(ValidationError):
            Tolerances(tol_value=value)

    def test_samples_positive(self):
        with pytest.raises(ValidationError):
            RunConfig(samples=0)

    def test_frozen(self):
        with pytest.raises(ValidationError):
            Tolerances().tol_det = 1e-3
