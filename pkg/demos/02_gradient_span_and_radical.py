#!/usr/bin/env python3
"""The two linear invariants of a polynomial: the span of its gradient
functionals and its radical, plus the dimension condition tying them."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from polyrad import (GF, QQ, annihilator, compute_radical, gradient_at,
                     gradient_span_sampled, gradient_span_symbolic,
                     is_radical_member, parse_poly)


def show_report(P, rep):
    print("polynomial:           ", P)
    print("method:               ", rep.method)
    print("dim gradient span:    ", rep.span.dim)
    print("dim radical:          ", rep.radical.dim)
    print("dimension condition:  ", "holds" if rep.dim_condition_holds else "FAILS")
    if rep.quotient is not None:
        print("quotient dimension:   ", rep.quotient.dim)
    print()


print("The gradient of P at a point a is the linear functional")
print("v -> coefficient of t in P(a + t v); its coefficient row is the")
print("vector of formal partials at a.")
print()

F5 = GF(5)
P = parse_poly("x1*x2", 2, F5)
print("P = x1*x2 over GF(5), gradient at (2,3):",
      [str(c) for c in gradient_at(P, [2, 3])])

sym = gradient_span_symbolic(P)
enum = gradient_span_sampled(P)
print("span dim (symbolic route):", sym.dim)
print("span dim (full 25-point enumeration):", enum.dim)
print("same canonical subspace:", sym.subspace == enum.subspace)
print("witness points whose gradients form a basis:",
      [tuple(str(c) for c in w) for w in sym.witnesses])
print()

print("-" * 64)
print("Radical reports")
print("-" * 64)

show_report(P, compute_radical(P))

# A polynomial that ignores a direction: the radical picks it up.
Q = parse_poly("x1^2 + 2*x1*x2 + x2^2", 2, QQ)  # (x1 + x2)^2
rep = compute_radical(Q)
show_report(Q, rep)
print("radical basis of (x1+x2)^2:",
      [tuple(str(c) for c in v) for v in rep.radical.basis_vectors()])
print("membership of (1,-1):", is_radical_member(Q, [1, -1]))
print()

print("-" * 64)
print("Degenerate cases in positive characteristic")
print("-" * 64)
print()
print("x^3 over GF(3): every gradient vanishes, yet the radical is zero,")
print("so the dimension condition fails (0 + 0 != 1).")
show_report(parse_poly("x1^3", 1, GF(3)), compute_radical(parse_poly("x1^3", 1, GF(3))))

print("x1^2*x2 over GF(4): deg = 3 < |F| = 4 and still degenerate, because")
print("the square kills the first partial in characteristic 2.")
F4 = GF(4)
R = parse_poly("x1^2*x2", 2, F4)
rep = compute_radical(R)
show_report(R, rep)
ann = annihilator(rep.span.subspace)
print("annihilator of the span has dim", ann.dim,
      "; its basis vector is a radical member:",
      is_radical_member(R, ann.basis_vectors()[0]))
