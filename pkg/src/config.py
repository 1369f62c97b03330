import logging
import os
from pathlib import Path

from dotenv import load_dotenv

# Базовые пути
BASE_DIR = Path(__file__).parent.parent

load_dotenv(BASE_DIR / ".env")

# Настройки логирования
LOG_LEVEL = os.getenv("INFOBOUND_LOG_LEVEL", "WARNING").upper()
LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

logging.basicConfig(level=LOG_LEVEL, format=LOG_FORMAT)

# Настройки квадратуры
DEFAULT_REL_TOL = float(os.getenv("INFOBOUND_REL_TOL", "1e-11"))
MIN_REL_TOL = 1e-14
MAX_REL_TOL = 1e-4
MAX_EVALUATIONS = int(os.getenv("INFOBOUND_MAX_EVALUATIONS", "200000"))
INITIAL_CUTOFF = 8.0
MAX_CUTOFF = 1.0e5

# Настройки матриц
MATRIX_TOL = 1e-12
MAX_MATRIX_DIMENSION = 64
MAX_JACOBI_SWEEPS = 100
PROBABILITY_TOL = 1e-12

# Допуски проверок
SATURATION_TOL = 1e-9
DISPERSION_SAMPLES = 1024

# Параметры мысленного эксперимента
DEFAULT_ZETA = float(os.getenv("INFOBOUND_DEFAULT_ZETA", "5"))
ZETA_RANGE = (1.0, 10.0)
NU_RANGE = (1.0, 2.0)
NU_ENVELOPE = (1.35, 1.64)
# ν для сорта без табличного значения
DEFAULT_NU = float(os.getenv("INFOBOUND_DEFAULT_NU", "1.5"))
SPECIES_CAP = 100.0
D_OVER_M_THRESHOLD = 57.0
FORCE_RATIO_THRESHOLD = 1e-2
POOR_MAN_COEFFICIENT_CAP = 100.0

# Порог "d >> 2M" для подсчёта каналов
CHANNEL_DISTANCE_FACTOR = 20.0

# Типичные отношения E/R (Планковские единицы)
TYPICAL_COMPACTNESS = {
    "laboratory": 1e-23,
    "astronomical": 1e-5,
}

# Настройки вывода
TABLE_DIGITS = int(os.getenv("INFOBOUND_TABLE_DIGITS", "4"))
MACHINE_DIGITS = int(os.getenv("INFOBOUND_MACHINE_DIGITS", "10"))
