"""Exact linear algebra over a FieldSpec: echelon forms, spans, annihilators,
dual-basis extension and quotient-space coordinates.

Subspaces are kept in reduced row echelon form, which makes the
representation canonical: two subspaces are equal exactly when their basis
matrices are identical.
"""

from __future__ import annotations

from .errors import FieldMismatchError
from .field import FieldSpec, Scalar


class Matrix:
    """Dense matrix of scalars over one field.  Zero-sized shapes are legal;
    quotient projections out of the full space are 0 x n."""

    __slots__ = ("spec", "nrows", "ncols", "rows")

    def __init__(self, spec: FieldSpec, rows):
        self.spec = spec
        self.rows = [tuple(spec.scalar(x) for x in row) for row in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for row in self.rows:
            if len(row) != self.ncols:
                raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, spec, rows, ncols=None):
        m = cls(spec, rows)
        if not m.rows and ncols is not None:
            m.ncols = ncols
        return m

    @classmethod
    def identity(cls, spec, n):
        one, zero = spec.one(), spec.zero()
        return cls(spec, [[one if i == j else zero for j in range(n)]
                          for i in range(n)])

    @classmethod
    def zero(cls, spec, nrows, ncols):
        z = spec.zero()
        m = cls(spec, [[z] * ncols for _ in range(nrows)])
        m.ncols = ncols
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def col(self, j):
        return tuple(row[j] for row in self.rows)

    def transpose(self) -> "Matrix":
        m = Matrix(self.spec, [self.col(j) for j in range(self.ncols)])
        m.ncols = self.nrows
        return m

    def __add__(self, other):
        self._check(other)
        return Matrix(self.spec, [[a + b for a, b in zip(r, s)]
                                  for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._check(other)
        return Matrix(self.spec, [[a - b for a, b in zip(r, s)]
                                  for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.spec, [[-a for a in r] for r in self.rows])

    def scale(self, c: Scalar) -> "Matrix":
        return Matrix(self.spec, [[c * a for a in r] for r in self.rows])

    def __mul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.spec != other.spec:
            raise FieldMismatchError("matrix product across fields")
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch %dx%d . %dx%d"
                             % (self.nrows, self.ncols, other.nrows, other.ncols))
        zero = self.spec.zero()
        cols = [other.col(j) for j in range(other.ncols)]
        out = Matrix.zero(self.spec, self.nrows, other.ncols)
        out.rows = [
            tuple(_dot(row, c, zero) for c in cols)
            for row in self.rows
        ]
        return out

    def apply(self, vector):
        """Matrix times column vector, as a tuple of scalars."""
        if len(vector) != self.ncols:
            raise ValueError("vector length %d, expected %d" % (len(vector), self.ncols))
        zero = self.spec.zero()
        return tuple(_dot(row, vector, zero) for row in self.rows)

    def _check(self, other):
        if self.spec != other.spec:
            raise FieldMismatchError("mixed fields in matrix arithmetic")
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.spec == other.spec
                and self.nrows == other.nrows and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.spec, self.nrows, self.ncols, tuple(self.rows)))

    def __str__(self):
        return ";".join(",".join(str(x) for x in row) for row in self.rows)

    def __repr__(self):
        return "Matrix(%s, %dx%d, %s)" % (self.spec, self.nrows, self.ncols, self)


def _dot(u, v, zero):
    acc = zero
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        acc = acc + a * b
    return acc


def rref(matrix: Matrix):
    """Reduced row echelon form.

    Returns (rref_matrix, rank, pivot_columns).  The result is the unique
    RREF of the input, computed by exact Gauss-Jordan elimination.
    """
    rows = [list(r) for r in matrix.rows]
    nrows, ncols = matrix.nrows, matrix.ncols
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not rows[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = rows[r][c].inverse()
        rows[r] = [inv * x for x in rows[r]]
        for i in range(nrows):
            if i != r and not rows[i][c].is_zero():
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = Matrix.from_rows(matrix.spec, rows, ncols=ncols)
    return out, len(pivots), pivots


def null_space(matrix: Matrix):
    """Basis vectors of {x : matrix . x = 0}, one per free column."""
    red, rank, pivots = rref(matrix)
    spec = matrix.spec
    n = matrix.ncols
    free = [c for c in range(n) if c not in pivots]
    zero, one = spec.zero(), spec.one()
    basis = []
    for f in free:
        vec = [zero] * n
        vec[f] = one
        for r, p in enumerate(pivots):
            vec[p] = -red.rows[r][f]
        basis.append(tuple(vec))
    return basis


class SpanBuilder:
    """Incremental span with exact rank tracking.

    Feeds vectors one at a time; ``add`` reports whether the vector enlarged
    the span.  Used for greedy witness collection and radical filtering.
    """

    def __init__(self, spec, n):
        self.spec = spec
        self.n = n
        self._echelon = []  # rows with strictly increasing leading columns

    @property
    def rank(self):
        return len(self._echelon)

    def reduce(self, vector):
        v = list(vector)
        for lead, row in self._echelon:
            if not v[lead].is_zero():
                f = v[lead]
                v = [x - f * y for x, y in zip(v, row)]
        return v

    def contains(self, vector) -> bool:
        return all(x.is_zero() for x in self.reduce(vector))

    def add(self, vector) -> bool:
        v = self.reduce(vector)
        for lead in range(self.n):
            if not v[lead].is_zero():
                inv = v[lead].inverse()
                row = tuple(inv * x for x in v)
                self._echelon.append((lead, row))
                self._echelon.sort(key=lambda t: t[0])
                return True
        return False

    def vectors(self):
        return [row for _, row in self._echelon]


class Subspace:
    """A subspace of F^n or of its dual, with a canonical RREF basis.

    ``side`` is "primal" for subspaces of F^n and "dual" for spaces of linear
    functionals stored as coefficient rows.
    """

    __slots__ = ("spec", "n", "side", "basis")

    def __init__(self, spec, n, side, basis: Matrix):
        if side not in ("primal", "dual"):
            raise ValueError("side must be primal or dual")
        self.spec = spec
        self.n = n
        self.side = side
        self.basis = basis  # already reduced; rows are the basis vectors

    @classmethod
    def from_vectors(cls, spec, n, vectors, side="primal"):
        for v in vectors:
            if len(v) != n:
                raise ValueError("vector of length %d in ambient dimension %d"
                                 % (len(v), n))
        m = Matrix.from_rows(spec, list(vectors), ncols=n)
        red, rank, _ = rref(m)
        basis = Matrix.from_rows(spec, red.rows[:rank], ncols=n)
        return cls(spec, n, side, basis)

    @classmethod
    def zero_subspace(cls, spec, n, side="primal"):
        return cls(spec, n, side, Matrix.from_rows(spec, [], ncols=n))

    @classmethod
    def full_space(cls, spec, n, side="primal"):
        return cls(spec, n, side, Matrix.identity(spec, n))

    @property
    def dim(self):
        return self.basis.nrows

    def basis_vectors(self):
        return list(self.basis.rows)

    def contains(self, vector) -> bool:
        if len(vector) != self.n:
            return False
        b = SpanBuilder(self.spec, self.n)
        for row in self.basis.rows:
            b.add(row)
        return b.contains(vector)

    def __le__(self, other):
        return (self.n == other.n and self.side == other.side
                and all(other.contains(v) for v in self.basis.rows))

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.spec == other.spec
                and self.n == other.n and self.side == other.side
                and self.basis == other.basis)

    def __hash__(self):
        return hash((self.spec, self.n, self.side, self.basis))

    def __repr__(self):
        return "Subspace(%s^%d, %s, dim=%d)" % (self.spec, self.n, self.side, self.dim)

    def iter_elements(self):
        """Lazily enumerate the q^dim elements over a finite field."""
        if not self.spec.is_finite:
            raise ValueError("cannot enumerate a subspace over %s" % self.spec)
        import itertools
        scalars = self.spec.elements()
        zero = self.spec.zero()
        for coeffs in itertools.product(scalars, repeat=self.dim):
            vec = [zero] * self.n
            for c, row in zip(coeffs, self.basis.rows):
                if c.is_zero():
                    continue
                vec = [x + c * y for x, y in zip(vec, row)]
            yield tuple(vec)

    def elements(self, cap=None):
        """All q^dim elements of a subspace over a finite field."""
        count = self.spec.order ** self.dim if self.spec.is_finite else None
        if cap is not None and count is not None and count > cap:
            raise ValueError("subspace has %d elements, cap is %d" % (count, cap))
        return list(self.iter_elements())


def span(spec, n, vectors, side="primal") -> Subspace:
    """Canonical subspace spanned by the given vectors."""
    return Subspace.from_vectors(spec, n, vectors, side)


def annihilator(s: Subspace) -> Subspace:
    """The annihilator on the opposite side.

    For a dual subspace L this is {v : l(v) = 0 for all l in L}; for a primal
    subspace it is the space of functionals vanishing on it.  Dimensions are
    complementary and the double annihilator returns the original subspace.
    """
    other_side = "dual" if s.side == "primal" else "primal"
    if s.dim == 0:
        return Subspace.full_space(s.spec, s.n, other_side)
    vectors = null_space(s.basis)
    return Subspace.from_vectors(s.spec, s.n, vectors, other_side)


def dual_extend(spec, functionals):
    """Vectors e_1..e_d with l_i(e_j) exactly the Kronecker delta.

    ``functionals`` are independent coefficient rows of linear forms on F^n.
    The canonical solution is supported on the pivot columns of the RREF of
    the functional matrix.
    """
    funcs = Matrix.from_rows(spec, list(functionals))
    d, n = funcs.nrows, funcs.ncols
    augmented = Matrix.from_rows(
        spec,
        [tuple(funcs.rows[i]) + tuple(Matrix.identity(spec, d).rows[i])
         for i in range(d)],
        ncols=n + d)
    red, rank, pivots = rref(augmented)
    pivots = [p for p in pivots if p < n]
    if rank != d or len(pivots) != d:
        raise ValueError("functionals are not linearly independent")
    zero = spec.zero()
    out = []
    for j in range(d):
        vec = [zero] * n
        for r, p in enumerate(pivots):
            vec[p] = red.rows[r][n + j]
        out.append(tuple(vec))
    if __debug__:
        for i in range(d):
            for j in range(d):
                got = _dot(funcs.rows[i], out[j], zero)
                want = spec.one() if i == j else zero
                assert got == want, "dual_extend delta property failed"
    return out


class QuotientContext:
    """Coordinates on F^n modulo a primal subspace w.

    ``projection`` is the (n-d) x n matrix of the canonical projection onto
    the non-pivot coordinate complement, ``section`` a linear right inverse
    with projection . section = identity and projection . w = 0.
    """

    __slots__ = ("subspace", "projection", "section", "dim", "coords")

    def __init__(self, subspace, projection, section, coords):
        self.subspace = subspace
        self.projection = projection
        self.section = section
        self.dim = projection.nrows
        self.coords = coords

    def project(self, vector):
        return self.projection.apply(vector)

    def lift(self, vector):
        return self.section.apply(vector)

    def __repr__(self):
        return "QuotientContext(dim=%d of %d)" % (self.dim, self.subspace.n)


def quotient_coords(w: Subspace) -> QuotientContext:
    """Quotient data for F^n / w.

    Quotient coordinates are the non-pivot columns of the RREF basis of w;
    the section re-inserts zeros at the pivot positions.
    """
    if w.side != "primal":
        raise ValueError("quotient is taken by a primal subspace")
    spec, n = w.spec, w.n
    _, _, pivots = rref(w.basis)
    pivots = list(pivots)
    coords = [c for c in range(n) if c not in pivots]
    zero, one = spec.zero(), spec.one()
    proj_rows = []
    for q in coords:
        row = [zero] * n
        row[q] = one
        for r, p in enumerate(pivots):
            row[p] = -w.basis.rows[r][q]
        proj_rows.append(row)
    projection = Matrix.from_rows(spec, proj_rows, ncols=n)
    sec_rows = []
    for i in range(n):
        row = [zero] * len(coords)
        if i in coords:
            row[coords.index(i)] = one
        sec_rows.append(row)
    section = Matrix.from_rows(spec, sec_rows, ncols=len(coords))
    if __debug__:
        prod = projection * section
        assert prod == Matrix.identity(spec, len(coords)), "projection . section != I"
        for v in w.basis.rows:
            assert all(x.is_zero() for x in projection.apply(v)), \
                "projection does not annihilate the subspace"
    return QuotientContext(w, projection, section, coords)


def parse_matrix(text: str, spec) -> Matrix:
    """Parse the CLI matrix format: rows split by ";", entries by ",".

    Entries are integers, fractions "a/b", or (over extension fields)
    polynomials in u such as "u+1".
    """
    from .poly import parse_scalar
    rows = []
    for chunk in text.strip().split(";"):
        row = [parse_scalar(cell, spec) for cell in chunk.split(",")]
        rows.append(row)
    return Matrix(spec, rows)
