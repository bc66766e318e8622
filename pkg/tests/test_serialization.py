"""
序列化模块单元测试
"""

import pytest
import numpy as np
from pathlib import Path
import sys

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.coords.charts import ChartPoint
from src.linalg.matrix_core import iwasawa_factor
from src.resolution.tuples import Flavor
from src.storage.serialization import (
    chart_point_from_json,
    chart_point_to_json,
    dumps,
    factors_from_json,
    factors_to_json,
    group_tuple_from_json,
    group_tuple_to_json,
    loads,
    matrix_from_json,
    matrix_to_json,
    read_text,
    table_to_csv,
    word_from_json,
    word_to_json,
    write_text,
)
from src.utils.errors import NonReducedWordError, SerializationError


class TestMatrixJson:
    """矩阵 JSON 测试类"""

    def test_layout(self):
        payload = matrix_to_json(np.array([[1 + 2j, 0], [0.5, -1j]]))
        assert payload == {"dim": 2, "re": [[1.0, 0.0], [0.5, 0.0]], "im": [[2.0, 0.0], [0.0, -1.0]]}

    def test_parse(self):
        mat = matrix_from_json({"dim": 2, "re": [[1, 0], [0, 1]], "im": [[0, 1], [0, 0]]})
        np.testing.assert_array_equal(mat, np.array([[1, 1j], [0, 1]]))

    def test_byte_stable(self, sampler):
        text = dumps(matrix_to_json(sampler.det_one_matrix(3)))
        assert dumps(matrix_to_json(matrix_from_json(loads(text)))) == text

    @pytest.mark.parametrize("payload", [
        {"re": [[1]], "im": [[0]]},
        {"dim": 2, "re": [[1, 0]], "im": [[0, 0]]},
        {"dim": 1, "re": [["x"]], "im": [[0]]},
    ])
    def test_malformed(self, payload):
        with pytest.raises(SerializationError):
            matrix_from_json(payload)

    def test_nan_rejected_on_dump(self):
        with pytest.raises(SerializationError):
            dumps({"x": float("nan")})

    def test_invalid_json_text(self):
        with pytest.raises(SerializationError):
            loads("{not json")


class TestDomainJson:
    """字、元组、坐标点、因子 JSON 测试类"""

    def test_word(self, sl3_word):
        assert word_to_json(sl3_word) == {"word": [1, 2, 1], "n": 3}
        assert word_from_json({"word": [1, 2, 1], "n": 3}) == sl3_word

    def test_word_out_of_range(self):
        with pytest.raises(SerializationError):
            word_from_json({"word": [3], "n": 3})

    def test_group_tuple(self, sampler, sl3_word):
        p = sampler.parabolic_tuple(sl3_word)
        payload = group_tuple_to_json(p)
        assert payload["flavor"] == "parabolic"
        assert len(payload["slots"]) == 3
        back = group_tuple_from_json(payload)
        assert back.flavor == Flavor.PARABOLIC
        for a, b in zip(back.slots, p.slots):
            np.testing.assert_array_equal(a, b)

    def test_chart_point(self, sl3_word):
        pt = ChartPoint(sl3_word, (1, 0.5j, -2 + 1j))
        payload = chart_point_to_json(pt)
        assert payload["coords"][2] == {"re": -2.0, "im": 1.0}
        assert chart_point_from_json(payload) == pt

    def test_chart_point_non_reduced(self):
        payload = {"word": [1, 1], "n": 3, "coords": [{"re": 0, "im": 0}] * 2}
        with pytest.raises(NonReducedWordError):
            chart_point_from_json(payload)

    def test_factors(self, sampler):
        factors = iwasawa_factor(sampler.det_one_matrix(3))
        payload = factors_to_json(factors)
        assert set(payload) == {"k", "a", "n", "d"}
        back = factors_from_json(payload)
        np.testing.assert_array_equal(back.k, factors.k)
        np.testing.assert_array_equal(back.d, factors.d)


class TestFilesAndTables:
    """文件读写与 CSV 测试类"""

    def test_write_and_read(self, tmp_path):
        target = tmp_path / "sub" / "out.json"
        write_text(str(target), dumps({"a": 1}))
        assert loads(read_text(str(target))) == {"a": 1}
        assert target.read_text(encoding="utf-8").endswith("\n")

    def test_missing_file(self, tmp_path):
        with pytest.raises(SerializationError):
            read_text(str(tmp_path / "missing.json"))

    def test_csv_shortest_floats(self):
        rows = [{"x": 0.1, "y": 1e-20, "status": "ok"}, {"x": 2.0, "status": "non-generic:2"}]
        text = table_to_csv(rows, ["x", "y", "status"])
        assert text.splitlines() == ["x,y,status", "0.1,1e-20,ok", "2.0,,non-generic:2"]
