"""
Demazure / Bott-Samelson 分解工具

SL(n,C) 上基于 Iwasawa 分解的分解映射、Schubert 胞腔坐标换元与数值验证
"""

__version__ = "0.1.0"
__description__ = "Demazure 与 Bott-Samelson 分解的显式等价及 Lu 坐标换元"
