"""
Statistics of plain and cipher images
=====================================

Histogram variance, neighbour correlation, entropy and the one-pixel
differential test for every corpus image under the default key.
"""

from pathlib import Path

import numpy as np

from ltc import PAPER_KEY, encrypt
from ltc.analysis import analyze_image, correlation_coefficients, npcr_uaci
from ltc.formats import read_pgm

corpus = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus"

print(f"{'image':10} {'H plain':>8} {'H cipher':>9} {'S cipher':>9} {'NPCR':>8} {'UACI':>7}")
for path in sorted(corpus.glob("*.pgm")):
    q = read_pgm(path)
    c = encrypt(q, PAPER_KEY).image
    q2 = q.copy()
    q2[0, 0] = q2[0, 0] - 1 if q2[0, 0] else 1
    npcr, uaci = npcr_uaci(c, encrypt(q2, PAPER_KEY).image)
    plain, cipher = analyze_image(q), analyze_image(c)
    print(f"{path.stem:10} {plain.entropy:8.4f} {cipher.entropy:9.5f} {cipher.variance:9.1f} {npcr:8.4f} {uaci:7.3f}")

# with 4000 sampled pairs the coefficient itself is noisy: its spread
# across seeds is about 1/sqrt(4000)
c = encrypt(read_pgm(corpus / "camera.pgm"), PAPER_KEY).image
rs = np.array([correlation_coefficients(c, 4000, seed=s) for s in range(50)], dtype=float)
print("r over 50 seeds, mean:", rs.mean(axis=0).round(4), "sd:", rs.std(axis=0).round(4))
print("r over all pairs:", np.round(correlation_coefficients(c, pairs=None), 4))
