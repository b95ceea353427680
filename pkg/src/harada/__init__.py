"""Exact checks of Harada's conjecture for finite general linear and unitary groups."""

from .groups import GroupSpec, harada_report, verify_main2
from .qarith import PrimePower

__all__ = ["GroupSpec", "PrimePower", "harada_report", "verify_main2"]
__version__ = "0.1.0"
