"""
数据存储模块（JSON / CSV 编解码）
"""

from .serialization import (
    matrix_to_json,
    matrix_from_json,
    word_to_json,
    word_from_json,
    group_tuple_to_json,
    group_tuple_from_json,
    chart_point_to_json,
    chart_point_from_json,
    factors_to_json,
    factors_from_json,
    dumps,
    loads,
    read_text,
    write_text,
    rows_to_frame,
    table_to_csv
)

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "word_to_json",
    "word_from_json",
    "group_tuple_to_json",
    "group_tuple_from_json",
    "chart_point_to_json",
    "chart_point_from_json",
    "factors_to_json",
    "factors_from_json",
    "dumps",
    "loads",
    "read_text",
    "write_text",
    "rows_to_frame",
    "table_to_csv"
]
