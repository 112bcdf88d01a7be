"""The span of the gradient range of a polynomial.

For P in F[x1..xn] and a point a, the gradient at a is the linear functional
v -> (coefficient of t in P(a + t v)), whose coefficient row is the vector of
formal partials evaluated at a.  This module computes the subspace of the
dual space spanned by all such functionals, together with witness points
whose gradients form a basis of it.

Two independent algorithms are provided.

Symbolic route.  Write the i-th partial as a sum over monomials m with
coefficients b(m, i); then the gradient row at a is sum_m m(a) * c_m where
c_m = (b(m, 1), ..., b(m, n)).  The span of the gradient rows is therefore
contained in the span of the coefficient vectors c_m.  When the monomials m
are linearly independent as functions on F^n, the containment is an
equality: a functional vanishing on every gradient row gives a linear
combination sum_m (l . c_m) m that vanishes identically on F^n, which forces
every l . c_m to be zero.  Monomials of per-variable degree below |F| are
independent in this sense (a polynomial with such degrees defining the zero
function is the zero polynomial), and over the rationals all monomials are.
This is why the symbolic route requires the rationals, or a finite field
with deg(P) < |F|.

Sampled route.  Over a finite field the definition can be followed
literally: enumerate every point, span the gradients.  No degree hypothesis
is needed, which makes this the oracle for the symbolic route and the only
route for polynomials of large degree.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field

from .errors import UndecidableError
from .field import FieldSpec
from .linalg import SpanBuilder, Subspace
from .poly import MultiPoly

DEFAULT_SEED = 1729
DEFAULT_POINT_CAP = 10 ** 6
_WITNESS_BUDGET = 20000


def gradient_at(P: MultiPoly, a):
    """Coefficient row of the gradient functional of P at the point a."""
    a = [P.spec.scalar(x) for x in a]
    return tuple(part.evaluate(a) for part in P.partials())


@dataclass
class GradientBasis:
    """A dual subspace spanned by gradients, plus witness points whose
    gradients form a basis of it."""

    poly: MultiPoly
    subspace: Subspace
    witnesses: list = dataclass_field(default_factory=list)

    @property
    def dim(self):
        return self.subspace.dim

    def witness_functionals(self):
        return [gradient_at(self.poly, a) for a in self.witnesses]

    def revalidate(self) -> bool:
        """Recheck that the witness gradients are independent and span."""
        b = SpanBuilder(self.poly.spec, self.poly.nvars)
        for a in self.witnesses:
            if not b.add(gradient_at(self.poly, a)):
                return False
        sub = Subspace.from_vectors(self.poly.spec, self.poly.nvars,
                                    b.vectors(), side="dual")
        return sub == self.subspace


def witness_stream(spec: FieldSpec, n: int, seed: int = DEFAULT_SEED,
                   include_prefix: bool = True):
    """Deterministic stream of probe points: standard basis vectors, sums of
    pairs, then a seeded pseudorandom tail."""
    zero, one = spec.zero(), spec.one()
    if include_prefix:
        for i in range(n):
            yield tuple(one if j == i else zero for j in range(n))
        for i in range(n):
            for j in range(i + 1, n):
                yield tuple(one if k in (i, j) else zero for k in range(n))
    rng = random.Random(seed)
    if spec.is_finite:
        elems = spec.elements()
        while True:
            yield tuple(rng.choice(elems) for _ in range(n))
    else:
        bound = 3
        while True:
            for _ in range(50):
                yield tuple(spec.from_int(rng.randint(-bound, bound))
                            for _ in range(n))
            bound += 2


def _collect_witnesses(P, dim, stream, budget=_WITNESS_BUDGET):
    builder = SpanBuilder(P.spec, P.nvars)
    witnesses = []
    for count, point in enumerate(stream):
        if builder.rank == dim:
            break
        if count >= budget:
            raise UndecidableError(
                "witness search exhausted its budget of %d points" % budget)
        if builder.add(gradient_at(P, point)):
            witnesses.append(tuple(P.spec.scalar(x) for x in point))
    return witnesses


def gradient_span_symbolic(P: MultiPoly, seed: int = DEFAULT_SEED,
                           include_prefix: bool = True) -> GradientBasis:
    """Gradient span via monomial coefficient vectors (see module docs).

    Requires the rationals, or a finite field with deg(P) < |F|; refuses
    otherwise so the caller can fall back to the sampled route.
    """
    spec, n = P.spec, P.nvars
    degree = P.total_degree()
    if spec.is_finite and degree is not None and degree >= spec.order:
        raise ValueError(
            "degree/field mismatch: deg(P) = %d is not below |F| = %d"
            % (degree, spec.order))
    vectors = {}
    zero = spec.zero()
    for i, part in enumerate(P.partials()):
        for mono, coeff in part.terms.items():
            row = vectors.setdefault(mono, [zero] * n)
            row[i] = coeff
    ordered = [tuple(vectors[m]) for m in sorted(vectors)]
    subspace = Subspace.from_vectors(spec, n, ordered, side="dual")
    witnesses = _collect_witnesses(
        P, subspace.dim, witness_stream(spec, n, seed, include_prefix))
    return GradientBasis(P, subspace, witnesses)


def gradient_span_sampled(P: MultiPoly,
                          cap: int = DEFAULT_POINT_CAP) -> GradientBasis:
    """Gradient span by enumerating every point of F^n.

    Exact with no degree hypothesis; finite fields only, and the point count
    must stay under ``cap``.
    """
    spec, n = P.spec, P.nvars
    if not spec.is_finite:
        raise ValueError("sampled route needs a finite field")
    total = spec.order ** n
    if total > cap:
        raise UndecidableError(
            "enumerating %d points exceeds the cap of %d" % (total, cap))
    import itertools
    builder = SpanBuilder(spec, n)
    witnesses = []
    for point in itertools.product(spec.elements(), repeat=n):
        if builder.add(gradient_at(P, point)):
            witnesses.append(point)
    subspace = Subspace.from_vectors(spec, n, builder.vectors(), side="dual")
    return GradientBasis(P, subspace, witnesses)
