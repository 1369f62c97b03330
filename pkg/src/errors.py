from typing import Any, List, Optional


class InfoBoundError(Exception):
    """Базовая ошибка библиотеки"""


class DomainError(InfoBoundError, ValueError):
    """Нарушено предусловие операции"""


class UnitError(DomainError):
    """Несовместимые размерности или неизвестная единица"""


class MatrixError(DomainError):
    """Матрица не эрмитова, не нормирована или слишком велика"""


class QuadratureError(InfoBoundError):
    """Квадратура не сошлась за отведённое число вычислений"""

    def __init__(self, message: str, partial: Optional[Any] = None):
        super().__init__(message)
        self.partial = partial


class AuditViolation(DomainError):
    """Нарушены неравенства мысленного эксперимента"""

    def __init__(self, flags: List[str]):
        super().__init__(f"violated: {', '.join(flags)}")
        self.flags = flags


class UsageError(InfoBoundError):
    """Неверный вызов командной строки"""
