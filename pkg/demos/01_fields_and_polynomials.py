#!/usr/bin/env python3
"""Tour of the exact arithmetic layer: fields, scalars, polynomials,
line restrictions and directional derivatives."""

import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from fractions import Fraction

from polyrad import GF, QQ, parse_poly


def section(title):
    print()
    print("=" * 64)
    print(title)
    print("=" * 64)


section("Prime fields, extension fields, rationals")

F7 = GF(7)
print("GF(7): 3 * 5 =", F7.from_int(3) * F7.from_int(5))
print("GF(7): 3^-1  =", F7.from_int(3).inverse())

F4 = GF(4)
u = F4.generator()
print("GF(4) elements:", ", ".join(str(e) for e in F4.elements()))
print("GF(4): u * u =", u * u, " (reduction by the default modulus)")

half = QQ.scalar(Fraction(1, 2))
third = QQ.scalar(Fraction(1, 3))
print("QQ: 1/2 + 1/3 =", half + third)

section("Polynomials: parsing, canonical printing, evaluation")

P = parse_poly("x1*x2 - 3", 2, GF(5))
print("'x1*x2 - 3' over GF(5) canonicalizes to:", P)
print("P(2, 3) =", P.evaluate([2, 3]))

Q = parse_poly("x1*(x2 + 1)", 2, QQ)
print("'x1*(x2 + 1)' over QQ expands to:", Q)
print("homogeneous?", Q.is_homogeneous())

section("Restriction to a line and the directional derivative")

# P(a + t v) is a univariate polynomial in t; its t-coefficient is the
# directional derivative of P at a along v.
P = parse_poly("x1^2", 1, QQ)
line = P.restrict_line([1], [1])
print("x^2 restricted to the line 1 + t:", line)

P = parse_poly("x1*x2", 2, QQ)
print("x1*x2 along (2,3) + t(1,0):", P.restrict_line([2, 3], [1, 0]))
print("directional derivative at (2,3) along (1,0):",
      P.dir_derivative([2, 3], [1, 0]))

section("Characteristic-p collapse")

frob = parse_poly("x1^3", 1, GF(3))
print("d/dx of x^3 over GF(3):", frob.partial(0), "  (3 x^2 = 0)")
print("x^3 - x1 as a function on GF(3):",
      (frob - parse_poly("x1", 1, GF(3))).is_zero_function())
print("x^3 - x1 over QQ:",
      parse_poly("x1^3 - x1", 1, QQ).is_zero_function())
