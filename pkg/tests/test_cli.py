"""
命令行入口集成测试
"""

import pytest
import json
import numpy as np
from pathlib import Path
import sys

# 添加项目根目录到路径
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.main import main, parse_axis
from src.storage.serialization import chart_point_from_json, matrix_from_json
from src.utils.errors import (
    EXIT_NON_REDUCED,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_TOLERANCE,
    EXIT_VERIFY_FAILED,
)


SL3_ARGS = ["--n", "3", "--word", "1,2,1"]


def write_matrix(path, mat):
    mat = np.asarray(mat, dtype=complex)
    payload = {"dim": mat.shape[0], "re": mat.real.tolist(), "im": mat.imag.tolist()}
    path.write_text(json.dumps(payload), encoding="utf-8")


@pytest.mark.integration
class TestChangeCoords:
    """change-coords 命令测试类"""

    @pytest.mark.asyncio
    async def test_sl3_example(self, capsys):
        code = await main(["change-coords", *SL3_ARGS, "--coords", "1,1,1", "--output", "json"])
        assert code == EXIT_OK

        payload = json.loads(capsys.readouterr().out)
        z = chart_point_from_json(payload["output"]).as_array()
        np.testing.assert_allclose(z, [1, 2 ** -0.5, (2 + 1j) / np.sqrt(3)], atol=1e-9)
        assert payload["closed_form_deviation"] < 1e-9

    @pytest.mark.asyncio
    async def test_inverse_direction(self, capsys):
        code = await main(["change-coords", *SL3_ARGS, "--direction", "z-to-zeta",
                           "--coords", "1,0.7071067811865476,1.1547005383792515+0.5773502691896258j",
                           "--output", "json"])
        assert code == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        zeta = chart_point_from_json(payload["output"]).as_array()
        np.testing.assert_allclose(zeta, np.ones(3), atol=1e-9)

    @pytest.mark.asyncio
    async def test_human_output(self, capsys):
        code = await main(["change-coords", "--n", "2", "--word", "1", "--coords", "0.5-1j"])
        assert code == EXIT_OK
        assert "[1] 0.5-1.0j -> " in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_non_reduced_word(self):
        code = await main(["change-coords", "--n", "3", "--word", "1,1", "--coords", "0,0"])
        assert code == EXIT_NON_REDUCED

    @pytest.mark.asyncio
    @pytest.mark.parametrize("word", ["1,3", "1,x", "0"])
    async def test_invalid_word(self, word):
        code = await main(["change-coords", "--n", "3", "--word", word, "--coords", "0,0"])
        assert code == EXIT_PARSE_ERROR

    @pytest.mark.asyncio
    async def test_wrong_coordinate_count(self):
        code = await main(["change-coords", *SL3_ARGS, "--coords", "1,1"])
        assert code == EXIT_PARSE_ERROR


@pytest.mark.integration
class TestFactor:
    """factor 命令测试类"""

    @pytest.mark.asyncio
    async def test_identity(self, tmp_path):
        source, target = tmp_path / "g.json", tmp_path / "f.json"
        write_matrix(source, np.eye(3))
        code = await main(["factor", "--in", str(source), "--out", str(target)])
        assert code == EXIT_OK

        payload = json.loads(target.read_text(encoding="utf-8"))
        for name in ("k", "a", "n", "d"):
            np.testing.assert_allclose(matrix_from_json(payload[name]), np.eye(3), atol=1e-14)

    @pytest.mark.asyncio
    async def test_not_special_linear(self, tmp_path):
        source = tmp_path / "g.json"
        write_matrix(source, 2 * np.eye(2))
        assert await main(["factor", "--in", str(source)]) == EXIT_TOLERANCE

    @pytest.mark.asyncio
    async def test_malformed(self, tmp_path):
        source = tmp_path / "g.json"
        source.write_text('{"dim": 2}', encoding="utf-8")
        assert await main(["factor", "--in", str(source)]) == EXIT_PARSE_ERROR


@pytest.mark.integration
class TestVerify:
    """verify 命令测试类"""

    @pytest.mark.asyncio
    async def test_pass_and_determinism(self, tmp_path):
        outputs = []
        for name in ("a.json", "b.json"):
            target = tmp_path / name
            code = await main(["verify", *SL3_ARGS, "--suite", "theorem33", "--suite", "sl3",
                               "--samples", "6", "--seed", "42", "--output", "json",
                               "--out", str(target)])
            assert code == EXIT_OK
            outputs.append(target.read_bytes())

        assert outputs[0] == outputs[1]
        payload = json.loads(outputs[0])
        assert payload["passed"] is True
        assert [suite["suite"] for suite in payload["suites"]] == ["theorem33", "sl3"]

    @pytest.mark.asyncio
    async def test_failure_exit_code(self, capsys):
        code = await main(["verify", *SL3_ARGS, "--suite", "sl3", "--samples", "3",
                           "--tol-value", "1e-300"])
        assert code == EXIT_VERIFY_FAILED
        assert "FAIL" in capsys.readouterr().out

    @pytest.mark.asyncio
    async def test_invalid_tolerance(self):
        code = await main(["verify", *SL3_ARGS, "--suite", "sl3", "--tol-value", "2"])
        assert code == EXIT_PARSE_ERROR


@pytest.mark.integration
class TestGrid:
    """grid 命令测试类"""

    @pytest.mark.asyncio
    async def test_length_two_grid(self, capsys):
        code = await main(["grid", "--n", "3", "--word", "1,2", "--base", "0,1",
                           "--axis", "1.re:-1:1:3"])
        assert code == EXIT_OK

        lines = capsys.readouterr().out.strip().splitlines()
        header = lines[0].split(",")
        assert header[:4] == ["zeta1_re", "zeta1_im", "zeta2_re", "zeta2_im"]
        assert len(lines) == 4
        for line in lines[1:]:
            row = dict(zip(header, line.split(",")))
            x = float(row["zeta1_re"])
            z2 = complex(float(row["z2_re"]), float(row["z2_im"]))
            assert abs(z2) == pytest.approx((1 + x * x) ** -0.5, abs=1e-12)
            assert row["status"] == "ok"

    @pytest.mark.asyncio
    async def test_two_axes_row_major(self, capsys):
        code = await main(["grid", "--n", "3", "--word", "1,2",
                           "--axis", "1.re:0:1:2", "--axis", "2.im:0:1:3"])
        assert code == EXIT_OK
        rows = capsys.readouterr().out.strip().splitlines()[1:]
        firsts = [row.split(",")[0] for row in rows]
        assert firsts == ["0.0"] * 3 + ["1.0"] * 3

    @pytest.mark.asyncio
    async def test_bad_axis(self):
        code = await main(["grid", "--n", "3", "--word", "1,2", "--axis", "3.re:0:1:2"])
        assert code == EXIT_PARSE_ERROR

    def test_parse_axis(self):
        index, part, values = parse_axis("2.im:-1:1:5", 3)
        assert (index, part) == (1, "im")
        np.testing.assert_allclose(values, [-1, -0.5, 0, 0.5, 1])
        with pytest.raises(ValueError):
            parse_axis("1.abs:0:1:2", 3)
