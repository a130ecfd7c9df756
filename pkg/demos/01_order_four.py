"""
Orthogonal squares of order four
================================

Build the three Latin squares over GF(4), look at one transversal and
watch a 4x4 image move through the scrambling and diffusion stages.
"""

import numpy as np

from ltc import PAPER_KEY, default_field
from ltc.cipher import derive_material, encrypt_stages
from ltc.latin import Labeling, build_decomposition, build_squares, verify_design

# GF(4) with x^2 + x + 1; code 2 is the root omega
f = default_field(4)
print("generator code:", f.generator)
print(f.addition_table())

# with the identity labeling the first square is the Cayley table
M, M1, Mg = build_squares(f, Labeling.identity(4), f.generator)
for name, sq in (("M", M), ("M1", M1), ("M_gamma", Mg)):
    print(name)
    print(sq)

# column j of M_gamma lists, row by row, the cells of the j-th transversal
D = build_decomposition(f, None, f.generator)
print("transversal 0:", D.transversal(0))
print(verify_design(f, None, f.generator))

# pin the labeling to see every stage on Q = 1..16
Q = np.arange(1, 17, dtype=np.uint8).reshape(4, 4)
material = derive_material(int(Q.sum()), 4, PAPER_KEY, labeling=Labeling.identity(4))
for stage, value in encrypt_stages(Q, material, PAPER_KEY.c1, PAPER_KEY.c2).items():
    print(stage)
    print(value)
