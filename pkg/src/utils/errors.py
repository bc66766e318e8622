"""
异常定义

所有计算异常都继承自对应的内置异常（ValueError / RuntimeError），
调用方既可以捕获具体类型，也可以按内置类型统一处理。
命令行根据异常类型映射退出码。
"""


class LieComputationError(Exception):
    """计算异常基类"""


class DimensionMismatchError(LieComputationError, ValueError):
    """矩阵维度不匹配"""


class SingularMatrixError(LieComputationError, ValueError):
    """奇异矩阵（行列式过小或无法求逆）"""


class FactorizationError(LieComputationError, RuntimeError):
    """分解结果违反容差约束"""


class IllConditionedError(FactorizationError):
    """条件数超过上限，拒绝分解"""


class NotUnitaryError(LieComputationError, ValueError):
    """输入不是酉矩阵"""


class MembershipError(LieComputationError, RuntimeError):
    """矩阵不属于要求的子群"""


class NonReducedWordError(LieComputationError, ValueError):
    """Weyl字不是既约字"""


class NonGenericPointError(LieComputationError, ValueError):
    """坐标点位于大胞腔之外"""

    def __init__(self, message: str, slot: int = None):
        super().__init__(message)
        self.slot = slot


class SerializationError(LieComputationError, ValueError):
    """JSON数据格式错误"""


# 退出码约定
EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE_ERROR = 2
EXIT_TOLERANCE = 3
EXIT_NON_GENERIC = 4
EXIT_NON_REDUCED = 5


def exit_code_for(error: BaseException) -> int:
    """
    根据异常类型返回退出码

    Args:
        error: 异常实例

    Returns:
        退出码
    """
    if isinstance(error, NonGenericPointError):
        return EXIT_NON_GENERIC
    if isinstance(error, NonReducedWordError):
        return EXIT_NON_REDUCED
    if isinstance(error, (FactorizationError, MembershipError,
                          SingularMatrixError, NotUnitaryError)):
        return EXIT_TOLERANCE
    # 解析错误、维度错误和其余输入错误
    return EXIT_PARSE_ERROR
