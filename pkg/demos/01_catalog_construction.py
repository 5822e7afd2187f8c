#!/usr/bin/env python3
"""Build the stock embeddings and poke at their exact structure.

Walks through: the Ahern-Rudin quartic that graphs S^3 into C^3 as a totally
real submanifold, the block-sum quartic that graphs S^{4n-1} into C^{2n+1},
and the JSON files the rest of the toolkit consumes.
"""

import numpy as np

from crsphere import (
    GraphEmbedding,
    ar_embedding,
    block_sum_embedding,
    block_support_ok,
    eval_embedding,
    make_ar_polynomial,
    make_block_sum,
    restrict_to_block,
)

print("=== the Ahern-Rudin quartic ===")
P = make_ar_polynomial()
print(f"P = {P}")
print(f"terms: {len(P)}, total degree: {P.degree}")
print(f"P(1, 0)            = {P.eval([1, 0])}")
s = 1 / np.sqrt(2)
print(f"P(1/sqrt2, 1/sqrt2) = {P.eval([s, s])}   (exactly 1/4 + i/4)")

print("\n=== block sums: one quartic per coordinate pair ===")
for n in (1, 2, 3):
    Q = make_block_sum(n)
    print(f"n={n}: {len(Q)} terms over {Q.m} variables, "
          f"block support ok: {block_support_ok(Q, n)}")
Q2 = make_block_sum(2)
print(f"restricting the n=2 sum to either pair recovers P exactly: "
      f"{all(restrict_to_block(Q2, 2, k) == P for k in range(2))}")

print("\n=== graph embeddings ===")
for E in (ar_embedding(), block_sum_embedding(2)):
    sphere_dim = 2 * E.m - 1
    print(f"{E.label}: S^{sphere_dim} -> C^{E.m + E.q}")
    axis = np.zeros(E.m, dtype=complex)
    axis[0] = 1.0
    print(f"  image of the first axis point: {eval_embedding(E, axis)}")

print("\n=== JSON round trip ===")
E = block_sum_embedding(2)
text = E.dumps()
print(f"serialized {E.label} to {len(text)} bytes of JSON")
back = GraphEmbedding.loads(text)
print(f"round trip gives an equal embedding: {back == E}")
