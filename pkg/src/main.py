"""
Demazure / Bott-Samelson 分解工具 - 命令行入口

Usage:
    python -m src.main factor --in matrix.json
    python -m src.main change-coords --direction zeta-to-z --n 3 --word 1,2,1 --coords 1,1,1
    python -m src.main verify --suite theorem33 --suite sl3 --seed 42 --samples 100
    python -m src.main grid --n 3 --word 1,2 --base 0,1 --axis 1.re:-2:2:5
"""

import argparse
import asyncio
import sys
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from loguru import logger
from pydantic import ValidationError

from .coords.change import closed_form_sl3, z_to_zeta, zeta_to_z
from .coords.charts import ChartPoint
from .linalg.matrix_core import iwasawa_factor, max_entry_deviation
from .storage.serialization import (
    chart_point_from_json,
    chart_point_to_json,
    dumps,
    factors_to_json,
    loads,
    matrix_from_json,
    read_text,
    table_to_csv,
    write_text,
)
from .utils.config import AppConfig, RunConfig, load_config
from .utils.errors import (
    EXIT_NON_GENERIC,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_VERIFY_FAILED,
    LieComputationError,
    NonGenericPointError,
    exit_code_for,
)
from .utils.helpers import format_complex, parse_complex_list, setup_logger
from .verification.suites import SUITE_NAMES, render_human, reports_to_json, run_suites
from .weyl.weyl_sl import Word


DIRECTIONS = ("zeta-to-z", "z-to-zeta")
SL3_LETTERS = (1, 2, 1)


class ResolutionToolkit:
    """
    命令行工具主类

    持有合并后的配置，提供 factor / change-coords / verify / grid 四个命令。
    """

    def __init__(self, config: AppConfig, run: RunConfig):
        """
        初始化工具

        Args:
            config: 配置文件内容
            run: 合并命令行覆盖值后的运行参数
        """
        self.config = config
        self.run = run
        self.tolerances = run.tolerances

        logger.debug(f"[CLI] n={run.n}, word={run.word}, seed={run.seed}, "
                     f"samples={run.samples}, output={run.output}")

    @property
    def word(self) -> Word:
        return Word(n=self.run.n, letters=tuple(self.run.word))

    def _convert(self, direction: str, pt: ChartPoint) -> ChartPoint:
        if direction == "zeta-to-z":
            return zeta_to_z(pt, self.tolerances)
        return z_to_zeta(pt, self.tolerances)

    def factor(self, source: str) -> Dict[str, Any]:
        """
        Iwasawa 分解

        Args:
            source: 矩阵 JSON 文件路径（"-" 为标准输入）

        Returns:
            {"k", "a", "n", "d"}
        """
        g = matrix_from_json(loads(read_text(source)))
        factors = iwasawa_factor(g, self.tolerances, self.config.numerics.max_condition)
        logger.info(f"[CLI] {g.shape[0]}×{g.shape[0]} 矩阵分解完成")
        return factors_to_json(factors)

    def change_coords(self, direction: str, pt: ChartPoint) -> Dict[str, Any]:
        """
        换元，SL(3) 字 (1,2,1) 上附带闭式结果和偏差

        Args:
            direction: zeta-to-z 或 z-to-zeta
            pt: 输入坐标点

        Returns:
            结果字典
        """
        result = self._convert(direction, pt)
        payload = {
            "direction": direction,
            "input": chart_point_to_json(pt),
            "output": chart_point_to_json(result)
        }

        if pt.word.n == 3 and pt.word.letters == SL3_LETTERS:
            zeta, z = (pt, result) if direction == "zeta-to-z" else (result, pt)
            closed = closed_form_sl3(zeta)
            payload["closed_form"] = chart_point_to_json(closed)
            payload["closed_form_deviation"] = max_entry_deviation(
                closed.as_array(), z.as_array()
            )

        return payload

    async def verify(self, suites: List[str], show_progress: bool) -> Tuple[bool, str]:
        """
        运行验证套件

        Args:
            suites: 套件名列表（可含 "all"）
            show_progress: 是否显示进度条

        Returns:
            (是否全部通过, 报告文本)
        """
        reports = await run_suites(suites, self.run, self.config.numerics, show_progress)
        passed = all(report.passed for report in reports)

        if self.run.output == "json":
            text = dumps(reports_to_json(reports, self.run))
        else:
            text = render_human(reports)
        return passed, text

    def grid(self, direction: str, base: ChartPoint,
             axes: List[Tuple[int, str, np.ndarray]]) -> Tuple[bool, str]:
        """
        在矩形网格上批量换元，输出 CSV

        Args:
            direction: 换元方向
            base: 基点（未变化的坐标取基点值）
            axes: [(坐标下标, "re"/"im", 取值), ...]，第一个轴为外层循环

        Returns:
            (是否全部为一般点, CSV 文本)
        """
        length = len(base)
        in_name, out_name = ("zeta", "z") if direction == "zeta-to-z" else ("z", "zeta")
        columns = []
        for prefix in (in_name, out_name):
            for j in range(1, length + 1):
                columns += [f"{prefix}{j}_re", f"{prefix}{j}_im"]
        columns.append("status")

        rows = []
        all_generic = True
        for point in _grid_points(base, axes):
            row = {}
            for j, value in enumerate(point.coords, start=1):
                row[f"{in_name}{j}_re"] = value.real
                row[f"{in_name}{j}_im"] = value.imag
            try:
                result = self._convert(direction, point)
                for j, value in enumerate(result.coords, start=1):
                    row[f"{out_name}{j}_re"] = value.real
                    row[f"{out_name}{j}_im"] = value.imag
                row["status"] = "ok"
            except NonGenericPointError as e:
                all_generic = False
                row["status"] = f"non-generic:{e.slot}"
            rows.append(row)

        logger.info(f"[CLI] 网格共 {len(rows)} 个点")
        return all_generic, table_to_csv(rows, columns)


def _grid_points(base: ChartPoint, axes: List[Tuple[int, str, np.ndarray]]):
    """按行优先顺序生成网格点"""
    if not axes:
        yield base
        return

    (index, part, values), rest = axes[0], axes[1:]
    for value in values:
        coords = list(base.coords)
        current = coords[index]
        coords[index] = complex(value, current.imag) if part == "re" else complex(current.real, value)
        yield from _grid_points(ChartPoint(base.word, tuple(coords)), rest)


def parse_axis(text: str, length: int) -> Tuple[int, str, np.ndarray]:
    """
    解析 INDEX.{re|im}:START:STOP:COUNT（INDEX 从1开始）

    Args:
        text: 轴描述
        length: 字长

    Returns:
        (从0开始的下标, 实部或虚部, 取值数组)
    """
    try:
        head, start, stop, count = text.split(":")
        index_text, part = head.split(".")
        index = int(index_text) - 1
        count = int(count)
        values = np.linspace(float(start), float(stop), count)
    except ValueError as e:
        raise ValueError(f"无法解析网格轴 '{text}': {e}") from e

    if part not in ("re", "im"):
        raise ValueError(f"网格轴需要 re 或 im，得到 '{part}'")
    if not 0 <= index < length:
        raise ValueError(f"网格轴下标 {index + 1} 超出范围 [1, {length}]")
    if count < 1:
        raise ValueError("网格点数至少为1")
    return index, part, values


def build_parser() -> argparse.ArgumentParser:
    """构造命令行解析器"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="配置文件路径（默认 config/lie_config.yaml）")
    common.add_argument("--n", type=int, default=None, help="矩阵阶数")
    common.add_argument("--word", default=None, help="字，逗号分隔，例如 1,2,1")
    common.add_argument("--seed", type=int, default=None, help="随机种子")
    common.add_argument("--samples", type=int, default=None, help="样本数")
    common.add_argument("--output", choices=["human", "json"], default=None, help="输出格式")
    common.add_argument("--in", dest="source", default=None, help="输入文件（- 为标准输入）")
    common.add_argument("--out", dest="target", default="-", help="输出文件（- 为标准输出）")
    common.add_argument("--debug", action="store_true", help="调试模式")
    for name in ("det", "unitary", "recon", "coset", "value"):
        common.add_argument(f"--tol-{name}", type=float, default=None, help=f"tol_{name}")

    parser = argparse.ArgumentParser(description="Demazure / Bott-Samelson 分解与 Lu 坐标工具")
    commands = parser.add_subparsers(dest="command", required=True)

    commands.add_parser("factor", parents=[common], help="Iwasawa 分解")

    change = commands.add_parser("change-coords", parents=[common], help="坐标换元")
    change.add_argument("--direction", choices=DIRECTIONS, default="zeta-to-z")
    change.add_argument("--coords", default=None, help="复数列表，例如 1,1+1j,-0.5j")

    verify = commands.add_parser("verify", parents=[common], help="运行验证套件")
    verify.add_argument("--suite", action="append", choices=SUITE_NAMES + ["all"],
                        default=None, help="套件名（可重复）")

    grid = commands.add_parser("grid", parents=[common], help="网格换元，输出 CSV")
    grid.add_argument("--direction", choices=DIRECTIONS, default="zeta-to-z")
    grid.add_argument("--base", default=None, help="基点坐标（默认全为0）")
    grid.add_argument("--axis", action="append", default=[],
                      help="INDEX.{re|im}:START:STOP:COUNT（最多两个）")

    return parser


def _overrides(args: argparse.Namespace, config: AppConfig) -> Dict[str, Any]:
    tolerances = {
        f"tol_{name}": getattr(args, f"tol_{name}")
        for name in ("det", "unitary", "recon", "coset", "value")
    }
    word = None
    if args.word is not None:
        n = args.n if args.n is not None else config.run.get("n", RunConfig().n)
        word = list(Word.parse(args.word, n).letters)
    return {
        "n": args.n,
        "word": word,
        "seed": args.seed,
        "samples": args.samples,
        "output": args.output,
        "tolerances": tolerances
    }


def _chart_point(toolkit: ResolutionToolkit, args: argparse.Namespace,
                 text: Optional[str]) -> ChartPoint:
    if args.source is not None:
        return chart_point_from_json(loads(read_text(args.source)))
    if text is None:
        return ChartPoint(toolkit.word, tuple(0j for _ in toolkit.word))
    return ChartPoint(toolkit.word, tuple(parse_complex_list(text)))


async def run_command(args: argparse.Namespace) -> int:
    """
    执行子命令

    Args:
        args: 解析后的参数

    Returns:
        退出码
    """
    config = load_config(args.config)
    toolkit = ResolutionToolkit(config, config.run_config(**_overrides(args, config)))

    if args.command == "factor":
        write_text(args.target, dumps(toolkit.factor(args.source or "-")))
        return EXIT_OK

    if args.command == "change-coords":
        pt = _chart_point(toolkit, args, args.coords)
        payload = toolkit.change_coords(args.direction, pt)
        if toolkit.run.output == "json":
            write_text(args.target, dumps(payload))
        else:
            lines = [f"{args.direction}: 字 {list(pt.word.letters)}, n={pt.word.n}"]
            result = chart_point_from_json(payload["output"])
            for j, (x, y) in enumerate(zip(pt.coords, result.coords), start=1):
                lines.append(f"  [{j}] {format_complex(x)} -> {format_complex(y)}")
            if "closed_form_deviation" in payload:
                lines.append(f"  闭式偏差: {payload['closed_form_deviation']:.3e}")
            write_text(args.target, "\n".join(lines))
        return EXIT_OK

    if args.command == "verify":
        show_progress = toolkit.run.output == "human"
        passed, text = await toolkit.verify(args.suite or ["all"], show_progress)
        write_text(args.target, text)
        return EXIT_OK if passed else EXIT_VERIFY_FAILED

    if args.command == "grid":
        base = _chart_point(toolkit, args, args.base)
        if len(args.axis) > 2:
            raise ValueError("最多支持两个网格轴")
        axes = [parse_axis(text, len(base)) for text in args.axis]
        all_generic, csv_text = toolkit.grid(args.direction, base, axes)
        write_text(args.target, csv_text)
        return EXIT_OK if all_generic else EXIT_NON_GENERIC

    raise ValueError(f"未知命令: {args.command}")


async def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    parser = build_parser()
    args = parser.parse_args(argv)

    setup_logger("DEBUG" if args.debug else "INFO")

    try:
        return await run_command(args)
    except LieComputationError as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        return exit_code_for(e)
    except (ValidationError, ValueError) as e:
        logger.error(f"[CLI] 参数错误: {e}")
        return EXIT_PARSE_ERROR


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
