"""
Encrypting and decrypting a photograph
======================================

Encrypt one corpus image, write the envelope and decrypt it again.
A key that differs in the fifteenth decimal place fails the pixel-sum
check, but the garbled image is still available on the exception.
"""

import sys
import tempfile
from pathlib import Path

import numpy as np

from ltc import PAPER_KEY, decrypt, encrypt
from ltc.errors import SumMismatch
from ltc.formats import read_envelope, read_pgm, write_envelope

corpus = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"
name = sys.argv[1] if len(sys.argv) > 1 else "camera"
q = read_pgm(corpus / f"{name}.pgm")

env = encrypt(q, PAPER_KEY)
print("sumQ carried in the header:", env.sum_q)

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / f"{name}.ltc"
    write_envelope(env, path)
    print("envelope bytes:", path.stat().st_size)
    back = decrypt(read_envelope(path), PAPER_KEY)
print("round trip exact:", np.array_equal(back, q))

wrong = PAPER_KEY.perturbed("key0", 1e-15)
try:
    decrypt(env, wrong)
except SumMismatch as exc:
    print("wrong key:", exc)
    print("pixels that differ: %.4f%%" % (100 * np.mean(exc.image != q)))
