"""
Cutting and noise on the ciphertext
===================================

Damage the transmitted image and measure how much of the plaintext
survives decryption.
"""

from pathlib import Path

from ltc import PAPER_KEY, decrypt, encrypt
from ltc.analysis import CUT_FRACTIONS, cut_attack, noise_attack, psnr
from ltc.formats import read_pgm

corpus = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"
q = read_pgm(corpus / "astronaut.pgm")
env = encrypt(q, PAPER_KEY)

# the damaged envelope no longer matches sumQ, so skip that check
for fr in CUT_FRACTIONS:
    out = decrypt(cut_attack(env, fr), PAPER_KEY, check_sum=False)
    print(f"cut {str(fr):>4}: PSNR {psnr(q, out):6.2f} dB")

for kind, amount in (("salt-pepper", 0.05), ("salt-pepper", 0.1), ("gaussian", 0.01), ("gaussian", 0.1)):
    out = decrypt(noise_attack(env, kind, amount, seed=0), PAPER_KEY, check_sum=False)
    print(f"{kind} {amount}: PSNR {psnr(q, out):6.2f} dB")
