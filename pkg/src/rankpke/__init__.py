"""Rank-metric one-way encryption over Gabidulin codes, with cost estimates and failure experiments."""

from .field import FieldContext, field_new
from .rng import SeededRng
from .scheme import (PRESETS, Ciphertext, DecryptFailure, InvalidParameters, ParameterSet, Plaintext,
                     PrivateKey, PublicKey, decrypt, encrypt, keygen, sample_plaintext)

__all__ = ["FieldContext", "field_new", "SeededRng", "PRESETS", "Ciphertext", "DecryptFailure",
           "InvalidParameters", "ParameterSet", "Plaintext", "PrivateKey", "PublicKey",
           "decrypt", "encrypt", "keygen", "sample_plaintext"]
