#!/usr/bin/env python3
"""The Cullis determinant of rectangular matrices: definition, column
properties, shift maps, the sign condition for X -> AXB, and the
equal-rows space."""

import os
import random
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from polyrad import (GF, Matrix, CullisContext, ab_sign_condition, axb_map,
                     binom_expansion, compute_radical, cullis_det,
                     cullis_laplace, equal_rows_space, is_radical_member,
                     shift_map)

F7 = GF(7)
rng = random.Random(9)


def rand(ctx):
    return Matrix(ctx.spec, [[rng.randrange(7) for _ in range(ctx.k)]
                             for _ in range(ctx.n)])


print("det_{2,1} is the alternating sum of the entries:")
ctx21 = CullisContext(2, 1, F7)
print("  det (3; 5)^T =", cullis_det(ctx21, Matrix(F7, [[3], [5]])), " (3 - 5 mod 7)")
print()

ctx = CullisContext(5, 3, F7)
X = rand(ctx)
print("a random 5x3 matrix over GF(7):", X)
d = cullis_det(ctx, X)
print("determinant (alternating minor sum):", d)
print("Laplace expansion along each column:",
      [str(cullis_laplace(ctx, X, c)) for c in (1, 2, 3)])

swapped = Matrix(F7, [[r[1], r[0], r[2]] for r in X.rows])
print("after swapping two columns:", cullis_det(ctx, swapped), "= -det")
print()

print("det(A + tB) expands as a degree-<=k polynomial in t:")
A, B = rand(ctx), rand(ctx)
poly = binom_expansion(ctx, A, B)
print("  ", poly)
print("   constant term = det(A):", poly.coefficient(0) == cullis_det(ctx, A))
print("   t^3 coefficient = det(B):", poly.coefficient(3) == cullis_det(ctx, B))
print()

print("Shift maps cycle rows, swap a column to the front and fix signs;")
print("each one is invertible and preserves the determinant:")
S = shift_map(ctx, i=3, j=2)
img = ctx.unflatten(S(ctx.flatten(X)))
print("   det(S_{3,2} X) =", cullis_det(ctx, img), "= det(X) =", d)
print()

print("The sign condition certifies maps X -> AXB:")
eye5, eye3 = Matrix.identity(F7, 5), Matrix.identity(F7, 3)
print("   A = I, B = I:        ", ab_sign_condition(ctx, eye5, eye3))
bad_b = Matrix(F7, [[6, 0, 0], [0, 1, 0], [0, 0, 1]])
print("   A = I, B = diag(-1,1,1):", ab_sign_condition(ctx, eye5, bad_b))
amap = axb_map(ctx, eye5, eye3)
print("   X -> I X I preserves det:",
      cullis_det(ctx, ctx.unflatten(amap(ctx.flatten(X)))) == d)
print()

print("Parity decides the radical.  Matrices with all rows equal form a")
print("k-dimensional space; with n + k odd, adding one never changes det:")
F5 = GF(5)
odd = CullisContext(4, 3, F5)
W = equal_rows_space(odd)
A = Matrix(F5, [[rng.randrange(5) for _ in range(3)] for _ in range(4)])
shifted = A + W.matrix_from([1, 4, 2])
print("   4x3: det(A + W) == det(A):",
      cullis_det(odd, shifted) == cullis_det(odd, A))
print("   rad(det_{4,3}) equals that space:",
      compute_radical(odd.as_poly).radical == W.subspace)
even = CullisContext(5, 3, F5)
w_vec = equal_rows_space(even).subspace.basis_vectors()[0]
print("   5x3 (even): same direction is NOT radical:",
      not is_radical_member(even.as_poly, w_vec))
