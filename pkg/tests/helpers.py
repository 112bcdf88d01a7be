"""Independent brute-force oracles and small test utilities.

Everything here recomputes results from first principles, without reusing
the code paths under test: determinants from the permutation sum, echelon
forms by naive forward-then-back elimination, radicals straight from the
defining sweep, and gradient spans from pointwise gradients.
"""

import itertools

from polyrad.linalg import Matrix, Subspace


_SIGNED_PERMS = {}


def _signed_perms(n):
    if n not in _SIGNED_PERMS:
        out = []
        for perm in itertools.permutations(range(n)):
            inv = sum(1 for a in range(n) for b in range(a + 1, n)
                      if perm[a] > perm[b])
            out.append((perm, 1 if inv % 2 == 0 else -1))
        _SIGNED_PERMS[n] = out
    return _SIGNED_PERMS[n]


def perm_det(matrix):
    """Classical determinant as the signed permutation sum.

    Prime fields and the rationals run on raw integers and fractions, a
    representation independent of the Scalar arithmetic under test."""
    spec = matrix.spec
    n = matrix.nrows
    if spec.kind in ("prime", "rationals"):
        rows = [[x.value for x in row] for row in matrix.rows]
        total = 0
        for perm, sign in _signed_perms(n):
            term = sign
            for i in range(n):
                term *= rows[i][perm[i]]
            total += term
        return spec.scalar(total)
    acc = spec.zero()
    for perm, sign in _signed_perms(n):
        term = spec.one()
        for i in range(n):
            term = term * matrix[i, perm[i]]
        acc = acc + term if sign > 0 else acc - term
    return acc


def naive_cullis(ctx, X):
    """Cullis determinant straight from the definition, with perm_det minors."""
    acc = ctx.spec.zero()
    base = ctx.k * (ctx.k - 1) // 2
    for combo in itertools.combinations(range(ctx.n), ctx.k):
        minor = Matrix(ctx.spec, [X.rows[r] for r in combo])
        d = perm_det(minor)
        acc = acc + d if (sum(combo) - base) % 2 == 0 else acc - d
    return acc


def naive_rref(matrix):
    """Textbook forward elimination followed by back substitution."""
    rows = [list(r) for r in matrix.rows]
    nrows, ncols = matrix.nrows, matrix.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if not rows[i][c].is_zero()), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(r + 1, nrows):
            if not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        for i in range(idx):
            if not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[idx])]
    return Matrix.from_rows(matrix.spec, rows, ncols=ncols), len(pivots), pivots


def brute_force_radical(P):
    """Every direction tested against the raw radical definition, by a full
    sweep over (point, scale) pairs; finite fields only."""
    spec, n = P.spec, P.nvars
    elems = spec.elements()
    members = []
    for v in itertools.product(elems, repeat=n):
        ok = True
        for a in itertools.product(elems, repeat=n):
            base = P.evaluate(a)
            for lam in elems:
                if P.evaluate([x + lam * y for x, y in zip(a, v)]) != base:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            members.append(v)
    return Subspace.from_vectors(spec, n, members, "primal")


def brute_force_gradient_span(P):
    """Span of pointwise gradients over all of F^n, via partial evaluations."""
    spec, n = P.spec, P.nvars
    parts = [P.partial(i) for i in range(n)]
    rows = []
    for a in itertools.product(spec.elements(), repeat=n):
        rows.append(tuple(p.evaluate(a) for p in parts))
    return Subspace.from_vectors(spec, n, rows, "dual")


def random_scalar(rng, spec):
    if spec.is_finite:
        return spec.elements()[rng.randrange(spec.order)]
    return spec.from_int(rng.randint(-9, 9))


def random_vector(rng, spec, n):
    return tuple(random_scalar(rng, spec) for _ in range(n))


def random_matrix(rng, spec, nrows, ncols):
    return Matrix(spec, [[random_scalar(rng, spec) for _ in range(ncols)]
                         for _ in range(nrows)])


def random_poly(rng, spec, nvars, max_degree, max_terms=6):
    """A random polynomial of total degree at most max_degree."""
    from polyrad.poly import MultiPoly
    terms = {}
    for _ in range(rng.randrange(1, max_terms + 1)):
        while True:
            exps = tuple(rng.randrange(max_degree + 1) for _ in range(nvars))
            if sum(exps) <= max_degree:
                break
        terms[exps] = random_scalar(rng, spec)
    return MultiPoly(spec, nvars, terms)
