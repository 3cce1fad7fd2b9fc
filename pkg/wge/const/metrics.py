""" This module provide the framing, clamping and flooring conventions of the objective metrics.
"""

SEGSNR_FRAME: int = 512
SEGSNR_HOP: int = 256
SEGSNR_CLAMP: tuple[float, float] = (-10.0, 35.0)

LPC_ORDER: int = 12
N_CEPSTRA: int = 12
LPC_FRAME: int = 400    # 25 ms at 16 kHz
LPC_HOP: int = 160      # 10 ms at 16 kHz
CD_CLAMP: tuple[float, float] = (0.0, 10.0)

ENERGY_FLOOR: float = 1e-10
