"""
序列化模块

功能：
1. 矩阵、字、元组、坐标点、Iwasawa 因子的 JSON 编解码
2. 文件 / 标准输入输出读写（"-" 表示 stdin/stdout）
3. 表格数据导出为 CSV（grid 命令）

浮点数使用 Python 的最短往返表示，输出与输入逐字节可复现。
"""

import json
import sys
from pathlib import Path
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd
from loguru import logger

from ..coords.charts import ChartPoint
from ..linalg.matrix_core import IwasawaFactors, as_matrix
from ..resolution.tuples import Flavor, GroupTuple
from ..utils.errors import SerializationError
from ..weyl.weyl_sl import Word


def matrix_to_json(mat: np.ndarray) -> Dict[str, Any]:
    """
    方阵 → {"dim": n, "re": [[...]], "im": [[...]]}（按行存储）

    Args:
        mat: 复方阵

    Returns:
        JSON 兼容字典
    """
    mat = as_matrix(mat)
    return {
        "dim": int(mat.shape[0]),
        "re": [[float(x) for x in row] for row in mat.real],
        "im": [[float(x) for x in row] for row in mat.imag]
    }


def matrix_from_json(obj: Dict[str, Any]) -> np.ndarray:
    """
    {"dim", "re", "im"} → 复方阵

    Args:
        obj: JSON 字典

    Returns:
        complex128 方阵
    """
    try:
        dim = int(obj["dim"])
        re = np.array(obj["re"], dtype=np.float64)
        im = np.array(obj["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError(f"矩阵 JSON 格式错误: {e}") from e

    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise SerializationError(
            f"矩阵维度不一致: dim={dim}, re={re.shape}, im={im.shape}"
        )

    try:
        return as_matrix(re + 1j * im)
    except ValueError as e:
        raise SerializationError(str(e)) from e


def word_to_json(word: Word) -> Dict[str, Any]:
    return {"word": list(word.letters), "n": word.n}


def word_from_json(obj: Dict[str, Any]) -> Word:
    try:
        return Word(n=int(obj["n"]), letters=tuple(int(x) for x in obj["word"]))
    except (KeyError, TypeError) as e:
        raise SerializationError(f"字 JSON 格式错误: {e}") from e
    except ValueError as e:
        raise SerializationError(f"字不合法: {e}") from e


def group_tuple_to_json(p: GroupTuple) -> Dict[str, Any]:
    """GroupTuple → {"word", "n", "flavor", "slots"}"""
    payload = word_to_json(p.word)
    payload["flavor"] = p.flavor.value
    payload["slots"] = [matrix_to_json(slot) for slot in p.slots]
    return payload


def group_tuple_from_json(obj: Dict[str, Any]) -> GroupTuple:
    word = word_from_json(obj)
    try:
        flavor = Flavor(obj.get("flavor", Flavor.PARABOLIC.value))
        slots = tuple(matrix_from_json(slot) for slot in obj["slots"])
        return GroupTuple(word, slots, flavor)
    except SerializationError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError(f"元组 JSON 格式错误: {e}") from e


def chart_point_to_json(pt: ChartPoint) -> Dict[str, Any]:
    """ChartPoint → {"word", "n", "coords": [{"re", "im"}, ...]}"""
    payload = word_to_json(pt.word)
    payload["coords"] = [{"re": c.real, "im": c.imag} for c in pt.coords]
    return payload


def chart_point_from_json(obj: Dict[str, Any]) -> ChartPoint:
    word = word_from_json(obj)
    try:
        values = tuple(complex(float(c["re"]), float(c["im"])) for c in obj["coords"])
    except (KeyError, TypeError, ValueError) as e:
        raise SerializationError(f"坐标 JSON 格式错误: {e}") from e
    # NonReducedWordError 原样抛出，由 CLI 映射为退出码 5
    return ChartPoint(word, values)


def factors_to_json(factors: IwasawaFactors) -> Dict[str, Any]:
    """Iwasawa 因子 → {"k", "a", "n", "d"}"""
    return {
        "k": matrix_to_json(factors.k),
        "a": matrix_to_json(factors.a),
        "n": matrix_to_json(factors.n),
        "d": matrix_to_json(factors.d)
    }


def factors_from_json(obj: Dict[str, Any]) -> IwasawaFactors:
    try:
        return IwasawaFactors(
            k=matrix_from_json(obj["k"]),
            a=matrix_from_json(obj["a"]),
            n=matrix_from_json(obj["n"])
        )
    except KeyError as e:
        raise SerializationError(f"因子 JSON 缺少字段: {e}") from e


def dumps(payload: Any) -> str:
    """规范化 JSON 文本（键有序、禁止 NaN）"""
    try:
        return json.dumps(payload, ensure_ascii=False, sort_keys=True,
                          indent=2, allow_nan=False)
    except ValueError as e:
        raise SerializationError(f"无法序列化: {e}") from e


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SerializationError(f"JSON 解析失败: {e}") from e


def read_text(path: str) -> str:
    """读取文件内容，"-" 表示标准输入"""
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SerializationError(f"无法读取 {path}: {e}") from e


def write_text(path: str, text: str):
    """写入文件，"-" 表示标准输出"""
    if not text.endswith("\n"):
        text += "\n"
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    logger.info(f"[Storage] 已写入: {target}")


def rows_to_frame(rows: Sequence[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    """
    构造表格，浮点数预先格式化为最短往返字符串

    Args:
        rows: 行字典列表
        columns: 列顺序

    Returns:
        字符串化的 DataFrame
    """
    formatted = [
        {col: (repr(row[col]) if isinstance(row.get(col), float) else row.get(col, ""))
         for col in columns}
        for row in rows
    ]
    return pd.DataFrame(formatted, columns=columns)


def table_to_csv(rows: Sequence[Dict[str, Any]], columns: List[str]) -> str:
    """表格 → CSV 文本（带表头，无索引列）"""
    return rows_to_frame(rows, columns).to_csv(index=False, lineterminator="\n")
