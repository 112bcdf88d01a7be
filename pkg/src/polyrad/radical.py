"""The radical of a polynomial function and the induced quotient data.

The radical of P is the set of directions w with P(v + t w) = P(v) for every
point v and scalar t; it is always a subspace.  Every gradient functional
vanishes on it whenever deg(P) < |F|, so the radical sits inside the
annihilator of the gradient span.  The computation here goes through that
annihilator: enumerate its elements (exponential only in its usually tiny
dimension), keep the ones that pass the membership test, and span them.
When the enumeration would blow past the cap, membership of the basis
vectors alone is decisive in one direction: if every basis vector of the
annihilator is in the radical then the whole annihilator is (the radical is
a subspace), while a failing basis vector only proves the inclusion strict,
in which case the report is flagged inconclusive.

Over the rationals the annihilator itself is the radical and no filtering is
needed.  For polynomials with deg(P) >= |F| none of the above applies and
only a clearly labeled exhaustive sweep of F^n is offered.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional

from .errors import InconsistencyError, PreconditionError, UndecidableError
from .gradspace import (DEFAULT_SEED, GradientBasis, gradient_span_sampled,
                        gradient_span_symbolic)
from .linalg import QuotientContext, SpanBuilder, Subspace, annihilator, quotient_coords
from .poly import DEFAULT_ZERO_CAP, MultiPoly, UNDECIDABLE, ZERO

DEFAULT_ENUM_CAP = 10 ** 6


def is_radical_member(P: MultiPoly, v, cap: int = DEFAULT_ZERO_CAP) -> bool:
    """Whether P(x + t v) = P(x) holds for all x and t, as functions.

    Decided through the zero-function test on P(x + t v) - P(x) in n+1
    variables; raises UndecidableError when neither the symbolic route nor
    the exhaustive fallback applies within ``cap``.
    """
    spec, n = P.spec, P.nvars
    v = [spec.scalar(x) for x in v]
    t = MultiPoly.variable(spec, n + 1, n)
    images = []
    for i in range(n):
        img = MultiPoly.variable(spec, n + 1, i)
        if not v[i].is_zero():
            img = img + t * v[i]
        images.append(img)
    shifted = P.substitute(images)
    diff = shifted - P.embed(n + 1, 0)
    verdict = diff.is_zero_function(cap)
    if verdict == UNDECIDABLE:
        raise UndecidableError(
            "radical membership undecidable within cap %d" % cap)
    return verdict == ZERO


def shift_equivalence_condition(P: MultiPoly, x,
                                cap: int = DEFAULT_ENUM_CAP) -> bool:
    """Whether adding any nonzero multiple of x changes P exactly as adding
    x itself: P(a + t x) = P(a + x) for all a and all t != 0.

    Over a field with more than two elements this condition forces x into
    the radical; with |F| = 2 it is vacuous, so that case is refused.
    """
    spec, n = P.spec, P.nvars
    if not spec.is_finite:
        raise UndecidableError("the condition quantifies over an infinite field")
    if spec.order <= 2:
        raise PreconditionError("|F| > 2", "the condition is vacuous over GF(2)")
    total = spec.order ** n * (spec.order - 1)
    if total > cap:
        raise UndecidableError(
            "sweeping %d pairs exceeds the cap of %d" % (total, cap))
    x = [spec.scalar(c) for c in x]
    elems = spec.elements()
    nonzero = [t for t in elems if not t.is_zero()]
    for a in itertools.product(elems, repeat=n):
        shifted = [ai + xi for ai, xi in zip(a, x)]
        reference = P.evaluate(shifted)
        for t in nonzero:
            point = [ai + t * xi for ai, xi in zip(a, x)]
            if P.evaluate(point) != reference:
                return False
    return True


def induced_on_quotient(P: MultiPoly, quotient: QuotientContext,
                        samples: int = 25, seed: int = DEFAULT_SEED) -> MultiPoly:
    """The polynomial on quotient coordinates with P = induced . projection.

    Built by substituting the section's linear forms into P, then
    spot-verified on sample points; a mismatch means the quotient was not
    taken by a genuine radical subspace.
    """
    spec, n = P.spec, P.nvars
    qdim = quotient.dim
    images = []
    for i in range(n):
        row = quotient.section.rows[i]
        terms = {}
        for r in range(qdim):
            if not row[r].is_zero():
                exps = tuple(1 if j == r else 0 for j in range(qdim))
                terms[exps] = row[r]
        images.append(MultiPoly(spec, qdim, terms))
    induced = P.substitute(images) if n else MultiPoly.zero(spec, qdim)
    for point in _sample_points(spec, n, samples, seed):
        if induced.evaluate(quotient.project(point)) != P.evaluate(point):
            raise InconsistencyError(
                "induced polynomial disagrees with P at %r; "
                "the supplied subspace is not the radical" % (point,))
    return induced


def _sample_points(spec, n, samples, seed):
    if n == 0:
        return [()]
    if spec.is_finite and spec.order ** n <= max(samples, 256):
        return list(itertools.product(spec.elements(), repeat=n))
    rng = random.Random(seed)
    points = []
    if spec.is_finite:
        elems = spec.elements()
        for _ in range(samples):
            points.append(tuple(rng.choice(elems) for _ in range(n)))
    else:
        for _ in range(samples):
            points.append(tuple(spec.from_int(rng.randint(-25, 25))
                                for _ in range(n)))
    return points


@dataclass
class RadicalReport:
    """Everything the radical computation established about P."""

    radical: Subspace
    span: GradientBasis
    dim_condition_holds: bool
    method: str
    quotient: Optional[QuotientContext]
    induced: Optional[MultiPoly]
    inconclusive: bool = False


def compute_radical(P: MultiPoly,
                    member_cap: int = DEFAULT_ZERO_CAP,
                    enum_cap: int = DEFAULT_ENUM_CAP,
                    point_cap: int = DEFAULT_ENUM_CAP,
                    seed: int = DEFAULT_SEED) -> RadicalReport:
    """Compute the radical subspace, the dimension condition, and the
    quotient data (projection, section, induced polynomial).

    Route selection: rationals go straight through the annihilator of the
    gradient span; finite fields with deg(P) < |F| filter the annihilator by
    membership; anything else falls back to the labeled exhaustive sweep.
    """
    spec, n = P.spec, P.nvars
    degree = P.total_degree()

    if degree is None or degree == 0:
        # constants are invariant in every direction
        span = gradient_span_symbolic(P, seed=seed)
        radical = Subspace.full_space(spec, n, "primal")
        method = "char0-annihilator" if not spec.is_finite else "annihilator+filter"
        return _finish(P, radical, span, method, False, seed)

    if not spec.is_finite:
        span = gradient_span_symbolic(P, seed=seed)
        radical = annihilator(span.subspace)
        return _finish(P, radical, span, "char0-annihilator", False, seed)

    q = spec.order
    if degree < q:
        span = gradient_span_symbolic(P, seed=seed)
        ann = annihilator(span.subspace)
        count = q ** ann.dim
        if count <= enum_cap:
            builder = SpanBuilder(spec, n)
            for v in ann.iter_elements():
                if builder.contains(v):
                    continue
                if is_radical_member(P, v, member_cap):
                    builder.add(v)
            radical = Subspace.from_vectors(spec, n, builder.vectors(), "primal")
            return _finish(P, radical, span, "annihilator+filter", False, seed)
        basis_ok = all(is_radical_member(P, v, member_cap)
                       for v in ann.basis_vectors())
        if basis_ok:
            # the radical is a subspace squeezed between the basis span and
            # the annihilator, so it equals the annihilator exactly
            return _finish(P, ann, span, "annihilator+filter", False, seed)
        builder = SpanBuilder(spec, n)
        for v in itertools.islice(ann.iter_elements(), enum_cap):
            if builder.contains(v):
                continue
            if is_radical_member(P, v, member_cap):
                builder.add(v)
        radical = Subspace.from_vectors(spec, n, builder.vectors(), "primal")
        return _finish(P, radical, span, "annihilator+filter", True, seed)

    # outside the degree hypothesis only the exhaustive definition is left
    span = gradient_span_sampled(P, cap=point_cap)
    if q ** n > enum_cap:
        raise UndecidableError(
            "deg(P) >= |F| and sweeping %d points exceeds the cap of %d"
            % (q ** n, enum_cap))
    builder = SpanBuilder(spec, n)
    for v in itertools.product(spec.elements(), repeat=n):
        if builder.contains(v):
            continue
        if is_radical_member(P, v, member_cap):
            builder.add(v)
    radical = Subspace.from_vectors(spec, n, builder.vectors(), "primal")
    return _finish(P, radical, span, "exhaustive", False, seed)


def _finish(P, radical, span, method, inconclusive, seed):
    n = P.nvars
    if inconclusive:
        return RadicalReport(radical, span, False, method, None, None, True)
    holds = span.dim + radical.dim == n
    if __debug__ and method != "exhaustive":
        ann = annihilator(span.subspace)
        assert (radical == ann) == holds, \
            "dimension condition disagrees with structural equality"
    quotient = quotient_coords(radical)
    induced = induced_on_quotient(P, quotient, seed=seed)
    return RadicalReport(radical, span, holds, method, quotient, induced, False)
