"""The Cullis determinant of rectangular matrices and its apparatus.

For an n x k matrix with n >= k, the determinant is the alternating sum of
all maximal k x k minors: the selection of rows i_1 < ... < i_k contributes
with sign (-1)^((i_1 + ... + i_k) - (1 + ... + k)).  For n = k it reduces to
the classical determinant.

Matrices bridge to the general vector-space theory through a fixed row-major
flattening of the nk entries; that convention lives here and is asserted by
round-trip tests.  Small instances are evaluated straight from the
definition; larger ones use a column Laplace recursion memoized on the set
of surviving rows.
"""

from __future__ import annotations

import itertools

from .field import FieldSpec, Scalar
from .linalg import Matrix, Subspace
from .poly import MultiPoly, UniPoly
from .preserver import VectorMap

_DEFINITION_SUM_MAX_K = 3

# test hook: deliberately corrupts the sign convention so the self-test's
# sensitivity can be demonstrated; never set outside tests
_SIGN_FLIP_DEBUG = False


class CullisContext:
    """Shape (n, k), field, parity of n + k, and the flattening convention."""

    __slots__ = ("n", "k", "spec", "_poly")

    def __init__(self, n: int, k: int, spec: FieldSpec):
        if not 1 <= k <= n:
            raise ValueError("need n >= k >= 1, got n=%d k=%d" % (n, k))
        self.n = n
        self.k = k
        self.spec = spec
        self._poly = None

    @property
    def parity(self) -> str:
        return "even" if (self.n + self.k) % 2 == 0 else "odd"

    def var_index(self, i: int, j: int) -> int:
        """Flat variable index of entry (i, j), zero-based, row-major."""
        if not (0 <= i < self.n and 0 <= j < self.k):
            raise ValueError("entry (%d, %d) outside %dx%d" % (i, j, self.n, self.k))
        return i * self.k + j

    def flatten(self, m: Matrix):
        self._check_shape(m)
        return tuple(x for row in m.rows for x in row)

    def unflatten(self, vector) -> Matrix:
        if len(vector) != self.n * self.k:
            raise ValueError("vector length %d, expected %d"
                             % (len(vector), self.n * self.k))
        rows = [vector[i * self.k:(i + 1) * self.k] for i in range(self.n)]
        return Matrix(self.spec, rows)

    def _check_shape(self, m: Matrix):
        if m.spec != self.spec:
            raise ValueError("matrix over %s, context over %s" % (m.spec, self.spec))
        if (m.nrows, m.ncols) != (self.n, self.k):
            raise ValueError("matrix is %dx%d, context is %dx%d"
                             % (m.nrows, m.ncols, self.n, self.k))

    @property
    def as_poly(self) -> MultiPoly:
        """The determinant as a polynomial in the nk flattened variables.

        Homogeneous of degree k with C(n,k) * k! monomials; built lazily
        because it is the expensive representation.
        """
        if self._poly is None:
            terms = {}
            nvars = self.n * self.k
            one = self.spec.one()
            base = self.k * (self.k - 1) // 2
            for combo in itertools.combinations(range(self.n), self.k):
                combo_exp = sum(combo) - base
                for perm in itertools.permutations(range(self.k)):
                    exps = [0] * nvars
                    for t, row in enumerate(combo):
                        exps[self.var_index(row, perm[t])] = 1
                    total = combo_exp + _inversions(perm)
                    terms[tuple(exps)] = one if total % 2 == 0 else -one
            self._poly = MultiPoly(self.spec, nvars, terms)
        return self._poly

    def __repr__(self):
        return "CullisContext(%dx%d over %s, %s parity)" % (
            self.n, self.k, self.spec, self.parity)


def _inversions(perm):
    count = 0
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                count += 1
    return count


def classical_det(m: Matrix) -> Scalar:
    """Determinant of a square matrix by exact Gaussian elimination."""
    if m.nrows != m.ncols:
        raise ValueError("classical determinant needs a square matrix")
    n = m.nrows
    spec = m.spec
    rows = [list(r) for r in m.rows]
    det = spec.one()
    for c in range(n):
        pivot = None
        for r in range(c, n):
            if not rows[r][c].is_zero():
                pivot = r
                break
        if pivot is None:
            return spec.zero()
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            det = -det
        det = det * rows[c][c]
        inv = rows[c][c].inverse()
        for r in range(c + 1, n):
            if rows[r][c].is_zero():
                continue
            f = rows[r][c] * inv
            rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return det


def _det_definition(ctx: CullisContext, X: Matrix) -> Scalar:
    acc = ctx.spec.zero()
    base = ctx.k * (ctx.k - 1) // 2
    for combo in itertools.combinations(range(ctx.n), ctx.k):
        minor = Matrix(ctx.spec, [X.rows[r] for r in combo])
        d = classical_det(minor)
        if (sum(combo) - base) % 2 == 0:
            acc = acc + d
        else:
            acc = acc - d
    return acc


def _det_laplace_memo(ctx: CullisContext, X: Matrix) -> Scalar:
    """Expansion along the leading column, memoized on the surviving rows."""
    spec = ctx.spec
    zero, one = spec.zero(), spec.one()
    k = ctx.k
    memo = {}

    def rec(rows, col):
        if col == k:
            return one
        val = memo.get(rows)
        if val is not None:
            return val
        acc = zero
        for pos, r in enumerate(rows):
            entry = X[r, col]
            if entry.is_zero():
                continue
            sub = rec(rows[:pos] + rows[pos + 1:], col + 1)
            term = entry * sub
            acc = acc + term if pos % 2 == 0 else acc - term
        memo[rows] = acc
        return acc

    return rec(tuple(range(ctx.n)), 0)


def cullis_det(ctx: CullisContext, X: Matrix) -> Scalar:
    """The alternating sum of all maximal minors of X."""
    ctx._check_shape(X)
    if ctx.k <= _DEFINITION_SUM_MAX_K:
        value = _det_definition(ctx, X)
    else:
        value = _det_laplace_memo(ctx, X)
    if _SIGN_FLIP_DEBUG:
        value = -value
    return value


def cullis_laplace(ctx: CullisContext, X: Matrix, col: int) -> Scalar:
    """One Laplace expansion along the chosen column (1-based)."""
    ctx._check_shape(X)
    if not 1 <= col <= ctx.k:
        raise ValueError("column %d out of range 1..%d" % (col, ctx.k))
    acc = ctx.spec.zero()
    c = col - 1
    for i in range(ctx.n):
        entry = X[i, c]
        if entry.is_zero():
            continue
        rows = [[X[r, cc] for cc in range(ctx.k) if cc != c]
                for r in range(ctx.n) if r != i]
        if ctx.k == 1:
            minor = ctx.spec.one()
        else:
            sub_ctx = CullisContext(ctx.n - 1, ctx.k - 1, ctx.spec)
            minor = cullis_det(sub_ctx, Matrix(ctx.spec, rows))
        term = entry * minor
        acc = acc + term if (i + 1 + col) % 2 == 0 else acc - term
    return acc


def shift_map(ctx: CullisContext, i: int, j: int, parity=None) -> VectorMap:
    """The invertible determinant-preserving linear map built from a row
    cycle, a column swap and parity-dependent sign changes.

    Operation sequence on X (1-based i, j): cycle rows so row i comes first;
    for even parity negate the bottom i-1 rows; swap columns 1 and j; scale
    the new first column by (-1)^(1 - delta_{1j}); finally scale everything
    by (-1)^(n-i) for even parity or (-1)^(i+1) for odd.
    """
    if parity is not None and parity != ctx.parity:
        raise ValueError("parity %r does not match the context (%s)"
                         % (parity, ctx.parity))
    if not (1 <= i <= ctx.n and 1 <= j <= ctx.k):
        raise ValueError("shift indices out of range")
    n, k, spec = ctx.n, ctx.k, ctx.spec

    def act(m: Matrix) -> Matrix:
        rows = [list(m.rows[(i - 1 + r) % n]) for r in range(n)]
        if ctx.parity == "even":
            for r in range(n - (i - 1), n):
                rows[r] = [-x for x in rows[r]]
        if j != 1:
            for row in rows:
                row[0], row[j - 1] = row[j - 1], row[0]
                row[0] = -row[0]
        g = (n - i) if ctx.parity == "even" else (i + 1)
        if g % 2 == 1:
            rows = [[-x for x in row] for row in rows]
        return Matrix(spec, rows)

    return _linear_from_action(ctx, act)


def _linear_from_action(ctx, act):
    """Matrix of a linear action on n x k matrices, in flat coordinates."""
    spec = ctx.spec
    nk = ctx.n * ctx.k
    zero, one = spec.zero(), spec.one()
    columns = []
    for r in range(ctx.n):
        for s in range(ctx.k):
            basis = Matrix.zero(spec, ctx.n, ctx.k)
            rows = [list(row) for row in basis.rows]
            rows[r][s] = one
            columns.append(ctx.flatten(act(Matrix(spec, rows))))
    entries = [[columns[c][t] for c in range(nk)] for t in range(nk)]
    return VectorMap.linear(Matrix(spec, entries))


def binom_expansion(ctx: CullisContext, A: Matrix, B: Matrix) -> UniPoly:
    """det(A + t B) as a polynomial in t, degree at most k.

    The t^d coefficient sums the determinants of A with each d-subset of its
    columns replaced by the matching columns of B; in particular the
    constant term is det(A) and the t^k coefficient det(B).
    """
    ctx._check_shape(A)
    ctx._check_shape(B)
    spec = ctx.spec
    coeffs = []
    for d in range(ctx.k + 1):
        total = spec.zero()
        for subset in itertools.combinations(range(ctx.k), d):
            chosen = set(subset)
            rows = [[(B if c in chosen else A)[r, c] for c in range(ctx.k)]
                    for r in range(ctx.n)]
            total = total + cullis_det(ctx, Matrix(spec, rows))
        coeffs.append(total)
    return UniPoly(spec, coeffs)


def column_selection(A: Matrix, selection) -> Matrix:
    """The n x k matrix of the chosen columns of A (zero-based indices)."""
    return Matrix(A.spec, [[row[c] for c in selection] for row in A.rows])


def ab_sign_condition(ctx: CullisContext, A: Matrix, B: Matrix) -> bool:
    """The exact criterion for X -> AXB to preserve the determinant:
    det_{n,k}(selected columns of A) * det(B) must equal the selection's
    alternating sign for every increasing choice of k columns of A.
    """
    if (A.nrows, A.ncols) != (ctx.n, ctx.n):
        raise ValueError("A must be %dx%d" % (ctx.n, ctx.n))
    if (B.nrows, B.ncols) != (ctx.k, ctx.k):
        raise ValueError("B must be %dx%d" % (ctx.k, ctx.k))
    spec = ctx.spec
    det_b = classical_det(B)
    one = spec.one()
    base = ctx.k * (ctx.k - 1) // 2
    for selection in itertools.combinations(range(ctx.n), ctx.k):
        d = cullis_det(ctx, column_selection(A, selection))
        want = one if (sum(selection) - base) % 2 == 0 else -one
        if d * det_b != want:
            return False
    return True


class EqualRowsSpace:
    """The k-dimensional space of n x k matrices all of whose rows are equal,
    embedded in flat coordinates."""

    __slots__ = ("ctx", "subspace")

    def __init__(self, ctx: CullisContext):
        self.ctx = ctx
        spec = ctx.spec
        zero, one = spec.zero(), spec.one()
        nk = ctx.n * ctx.k
        vectors = []
        for j in range(ctx.k):
            vec = [zero] * nk
            for i in range(ctx.n):
                vec[ctx.var_index(i, j)] = one
            vectors.append(tuple(vec))
        self.subspace = Subspace.from_vectors(spec, nk, vectors, "primal")

    @property
    def dim(self):
        return self.subspace.dim

    def matrix_from(self, ys) -> Matrix:
        """The member whose every row is ys."""
        if len(ys) != self.ctx.k:
            raise ValueError("need %d row values" % self.ctx.k)
        ys = [self.ctx.spec.scalar(y) for y in ys]
        return Matrix(self.ctx.spec, [list(ys) for _ in range(self.ctx.n)])


def equal_rows_space(ctx: CullisContext) -> EqualRowsSpace:
    return EqualRowsSpace(ctx)


def equal_rows_map(ctx: CullisContext, column_polys) -> VectorMap:
    """The map X -> (matrix with every row (f_1(X), ..., f_k(X))) as a
    polymap in flat coordinates; with degree-one components this is a linear
    map into the equal-rows space."""
    if len(column_polys) != ctx.k:
        raise ValueError("need %d column polynomials" % ctx.k)
    nk = ctx.n * ctx.k
    for f in column_polys:
        if f.nvars != nk or f.spec != ctx.spec:
            raise ValueError("column polynomials must live in the %d flat "
                             "variables over %s" % (nk, ctx.spec))
    components = [None] * nk
    for i in range(ctx.n):
        for j in range(ctx.k):
            components[ctx.var_index(i, j)] = column_polys[j]
    return VectorMap.polymap(components)


def axb_map(ctx: CullisContext, A: Matrix, B: Matrix) -> VectorMap:
    """X -> A X B as a linear map in flat coordinates."""
    if (A.nrows, A.ncols) != (ctx.n, ctx.n):
        raise ValueError("A must be %dx%d" % (ctx.n, ctx.n))
    if (B.nrows, B.ncols) != (ctx.k, ctx.k):
        raise ValueError("B must be %dx%d" % (ctx.k, ctx.k))
    return _linear_from_action(ctx, lambda m: A * m * B)
