"""Finite fields, matrix groups over them, and brute-force spectra."""

from .enum import DEFAULT_CAP, GroupEnum, TooLarge, enumerate_group
from .field import GF, make_field
from .matrix import MatrixElement

__all__ = ["DEFAULT_CAP", "GF", "GroupEnum", "MatrixElement", "TooLarge", "enumerate_group", "make_field"]
