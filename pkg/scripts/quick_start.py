"""
快速启动脚本 - SL(3) 算例

依次演示：
1. n_zṡ 的 Iwasawa 分解与闭式对照
2. 字 (1,2,1) 上 ζ=(1,1,1) 的换元及闭式
3. 反向换元与 u 坐标
4. 一轮小样本验证
"""

import asyncio
from pathlib import Path

import numpy as np
from loguru import logger

# 添加项目根目录到路径
import sys
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.coords import (
    ChartPoint,
    big_product_M,
    closed_form_sl3,
    lu_d_closed,
    lu_k_closed,
    u_from_zeta,
    z_to_zeta,
    zeta_to_z,
)
from src.linalg import iwasawa_factor
from src.utils import RunConfig, format_complex, setup_logger
from src.verification import render_human, run_suites
from src.weyl import Word, simple_refl_rep, unipotent_param


class QuickStartDemo:
    """SL(3) 快速演示"""

    def __init__(self, seed: int = 42, samples: int = 20):
        """初始化"""
        self.word = Word(n=3, letters=(1, 2, 1))
        self.run = RunConfig(n=3, word=[1, 2, 1], seed=seed, samples=samples)

        logger.info("✓ 快速启动演示已初始化")

    def show_factorization(self, z: complex = 1.0):
        """n_zṡ 的数值分解与闭式"""
        g = unipotent_param(1, z, 2) @ simple_refl_rep(1, 2)
        factors = iwasawa_factor(g)

        logger.info(f"n_zṡ (z={format_complex(z)}):\n{np.round(g, 6)}")
        logger.info(f"k:\n{np.round(factors.k, 6)}")
        logger.info(f"d:\n{np.round(factors.d, 6)}")

        gap = max(
            np.max(np.abs(factors.k - lu_k_closed(1, z, 2))),
            np.max(np.abs(factors.d - lu_d_closed(1, z, 2)))
        )
        logger.info(f"与闭式的最大偏差: {gap:.3e}")

    def show_change_of_variables(self):
        """ζ=(1,1,1) 的换元"""
        zeta = ChartPoint(self.word, (1, 1, 1))
        z = zeta_to_z(zeta)
        closed = closed_form_sl3(zeta)

        for j, (numeric, exact) in enumerate(zip(z.coords, closed.coords), start=1):
            logger.info(f"z{j} = {format_complex(numeric)}   闭式 {format_complex(exact)}")

        back = z_to_zeta(z)
        logger.info("反向换元: " + ", ".join(format_complex(c) for c in back.coords))

        m = big_product_M(zeta)
        u = u_from_zeta(zeta)
        logger.info(f"M_ẇ:\n{np.round(m, 6)}")
        logger.info("u 坐标: " + ", ".join(format_complex(c) for c in u.coords))

    async def run_checks(self):
        """小样本验证"""
        reports = await run_suites(["theorem33", "sl3", "roundtrip"], self.run)
        print(render_human(reports))


async def main():
    """主函数"""
    setup_logger("INFO")

    demo = QuickStartDemo()
    demo.show_factorization()
    demo.show_change_of_variables()
    await demo.run_checks()


if __name__ == "__main__":
    asyncio.run(main())
