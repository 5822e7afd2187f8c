#!/usr/bin/env python3
"""Three routes to one pointwise verdict, and what failure looks like.

At a sphere point z the graph embedding is CR regular iff (a) the matrix with
rows z and df/dzbar(z) has full rank, iff (b) the wedge of the holomorphic
differentials of the defining functions is nonzero at the image point, iff
(c) the pushed-forward tangent space meets its J-rotation in the minimal
dimension m-q-1.  The three computations share nothing but the embedding, so
their agreement is a strong internal consistency check.
"""

import numpy as np

from crsphere import (
    ar_embedding,
    block_sum_embedding,
    cr_dim_at,
    defining_functions,
    del_form,
    equivalence_check_many,
    eval_embedding,
    independence_matrix,
    two_form_identity_check,
    make_ar_polynomial,
    make_negative_control,
    point_report,
    sample_sphere,
    wedge_nonzero,
)

E = ar_embedding()

print("=== route (a): the independence matrix ===")
for z in ([1, 0], [0, 1]):
    M = independence_matrix(E, z)
    rep = point_report(E, z)
    print(f"z = {z}: M =\n{np.round(M, 6)}")
    print(f"  sigma_min = {rep.sigma_min:.6f}, rank = {rep.rank}, "
          f"cr_regular = {rep.cr_regular}")

print("\n=== route (b): defining functions and their wedge ===")
rhos = defining_functions(E)
for i, rho in enumerate(rhos, start=1):
    print(f"rho_{i} = {rho}")
w = eval_embedding(E, [1, 0])
forms = [del_form(rho, w) for rho in rhos]
print(f"wedge of the three differentials at the image of (1,0) nonzero: "
      f"{wedge_nonzero(forms)}")

print("\n=== the two-form identity feeding route (b) ===")
rng = np.random.default_rng(0)
x = rng.standard_normal(4)
z = (x[:2] + 1j * x[2:]) / np.linalg.norm(x)
print(f"residual of du^dv = (i/2) df ^ conj(dbar f) for the quartic at a "
      f"random point: {two_form_identity_check(make_ar_polynomial(), z):.2e}")

print("\n=== route (c): brute-force tangent count ===")
print(f"dim_C(T ^ JT) for S^3 graph at (1,0):        {cr_dim_at(E, [1, 0])}  (m-q-1 = 0)")
E7 = block_sum_embedding(2)
z7 = sample_sphere(4, 1, 5)[0]
print(f"dim_C(T ^ JT) for S^7 graph at a random z:   {cr_dim_at(E7, z7)}  (m-q-1 = 2)")

print("\n=== all three at once, on good and bad embeddings ===")
Z = sample_sphere(2, 200, 11)
for emb in (E, make_negative_control("holomorphic", 2),
            make_negative_control("zero", 2), make_negative_control("radial", 2)):
    results = equivalence_check_many(emb, Z)
    agree = sum(r.agree for r in results)
    passing = sum(r.all_pass for r in results)
    print(f"{emb.label:24s}: {agree}/200 agree, {passing}/200 pass")
