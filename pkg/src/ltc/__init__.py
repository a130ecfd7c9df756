"""Grayscale image cipher built on transversals of finite-field Latin squares."""

from .chaos import PAPER_KEY, KeyMaterial
from .cipher import CipherEnvelope, decrypt, derive_material, encrypt
from .field import FiniteField, build_field, default_field

__all__ = [
    "PAPER_KEY",
    "CipherEnvelope",
    "FiniteField",
    "KeyMaterial",
    "build_field",
    "decrypt",
    "default_field",
    "derive_material",
    "encrypt",
]

__version__ = "0.1.0"
