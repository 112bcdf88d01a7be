"""Exact arithmetic over prime fields GF(p), small extension fields GF(p^m),
and the rationals.

Scalars are immutable values in canonical form: residues in [0, p) for prime
fields, reduced fractions for the rationals, coefficient tuples in the power
basis 1, u, ..., u^(m-1) for extension fields.  Equality is structural on the
canonical form and every operation is pure, so scalars are safe to share,
hash and enumerate.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import FieldMismatchError, ParseError

MAX_EXTENSION_DEGREE = 4
MAX_EXTENSION_ORDER = 64


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# dense univariate polynomials over GF(p), as integer tuples (c0, c1, ...);
# used only for extension-field moduli and element arithmetic.

def _poly_trim(cs):
    n = len(cs)
    while n > 0 and cs[n - 1] == 0:
        n -= 1
    return tuple(cs[:n])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, mod, p):
    # mod is monic
    a = list(a)
    dm = len(mod) - 1
    while len(a) > dm:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - lead * mod[i]) % p
        a.pop()
    return _poly_trim(a)


def _monic_polys(p, degree):
    """All monic polynomials of the given degree over GF(p), ascending."""
    total = p ** degree
    for code in range(total):
        coeffs = []
        c = code
        for _ in range(degree):
            coeffs.append(c % p)
            c //= p
        yield tuple(coeffs) + (1,)


def _poly_is_irreducible(mod, p):
    """Exhaustive trial division, adequate for the supported tiny fields."""
    m = len(mod) - 1
    if m < 1:
        return False
    if mod[0] == 0:  # divisible by x
        return m == 1
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(p, d):
            if not _poly_mod(mod, g, p):
                return False
    return True


def _default_modulus(p, m):
    """First monic irreducible of degree m over GF(p) in a fixed order."""
    for cand in _monic_polys(p, m):
        if _poly_is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


# ---------------------------------------------------------------------------


class FieldSpec:
    """Descriptor of a supported field: GF(p), GF(p^m) or the rationals.

    Construct through :func:`prime_field`, :func:`extension_field` or the
    :data:`QQ` singleton.
    """

    __slots__ = ("kind", "p", "m", "modulus", "characteristic", "order")

    def __init__(self, kind, p=0, m=1, modulus=None):
        self.kind = kind
        if kind == "rationals":
            self.p = 0
            self.m = 1
            self.modulus = None
            self.characteristic = 0
            self.order = None  # infinite
            return
        if not _is_prime(p):
            raise ValueError("characteristic must be prime, got %r" % (p,))
        self.p = p
        self.m = m
        self.characteristic = p
        self.order = p ** m
        if kind == "prime":
            if m != 1:
                raise ValueError("prime field must have m = 1")
            self.modulus = None
        elif kind == "extension":
            if m < 2 or m > MAX_EXTENSION_DEGREE or p ** m > MAX_EXTENSION_ORDER:
                raise ValueError(
                    "extension fields are supported for m <= %d and order <= %d"
                    % (MAX_EXTENSION_DEGREE, MAX_EXTENSION_ORDER))
            if modulus is None:
                modulus = _default_modulus(p, m)
            modulus = _poly_trim(tuple(c % p for c in modulus))
            if len(modulus) != m + 1 or modulus[m] != 1:
                raise ValueError("modulus must be monic of degree m")
            if not _poly_is_irreducible(modulus, p):
                raise ValueError("modulus polynomial is reducible over GF(%d)" % p)
            self.modulus = modulus
        else:
            raise ValueError("unknown field kind %r" % (kind,))

    # -- identity ----------------------------------------------------------

    def _key(self):
        return (self.kind, self.p, self.m, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return "FieldSpec(%s)" % (self,)

    def __str__(self):
        if self.kind == "rationals":
            return "QQ"
        return "GF(%d)" % self.order

    @property
    def is_finite(self):
        return self.kind != "rationals"

    # -- scalar construction ------------------------------------------------

    def scalar(self, value) -> "Scalar":
        """Canonicalize ``value`` into a scalar of this field."""
        if isinstance(value, Scalar):
            if value.spec != self:
                raise FieldMismatchError("scalar belongs to %s, not %s" % (value.spec, self))
            return value
        if self.kind == "prime":
            if isinstance(value, int):
                return Scalar(self, value % self.p)
        elif self.kind == "rationals":
            if isinstance(value, (int, Fraction)):
                return Scalar(self, Fraction(value))
        else:
            if isinstance(value, int):
                return Scalar(self, self._embed_int(value))
            if isinstance(value, (tuple, list)):
                coeffs = tuple(c % self.p for c in value)
                coeffs = coeffs[:self.m] + (0,) * (self.m - len(coeffs))
                return Scalar(self, coeffs)
        raise TypeError("cannot make a %s scalar from %r" % (self, value))

    def _embed_int(self, value):
        return (value % self.p,) + (0,) * (self.m - 1)

    def from_int(self, value: int) -> "Scalar":
        if self.kind == "rationals":
            return Scalar(self, Fraction(value))
        if self.kind == "prime":
            return Scalar(self, value % self.p)
        return Scalar(self, self._embed_int(value))

    def zero(self) -> "Scalar":
        return self.from_int(0)

    def one(self) -> "Scalar":
        return self.from_int(1)

    def generator(self) -> "Scalar":
        """The adjoined root u of an extension field."""
        if self.kind != "extension":
            raise ValueError("only extension fields have a generator u")
        return Scalar(self, (0, 1) + (0,) * (self.m - 2))

    def elements(self):
        """All field elements, deterministically ordered with 0 first.

        Raises on infinite fields.
        """
        if not self.is_finite:
            raise ValueError("cannot enumerate the infinite field %s" % self)
        if self.kind == "prime":
            return [Scalar(self, v) for v in range(self.p)]
        out = []
        for code in range(self.order):
            coeffs = []
            c = code
            for _ in range(self.m):
                coeffs.append(c % self.p)
                c //= self.p
            out.append(Scalar(self, tuple(coeffs)))
        return out

    # -- arithmetic on raw canonical values ----------------------------------

    def _add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        if self.kind == "rationals":
            return a + b
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def _sub(self, a, b):
        if self.kind == "prime":
            return (a - b) % self.p
        if self.kind == "rationals":
            return a - b
        return tuple((x - y) % self.p for x, y in zip(a, b))

    def _neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        if self.kind == "rationals":
            return -a
        return tuple((-x) % self.p for x in a)

    def _mul(self, a, b):
        if self.kind == "prime":
            return (a * b) % self.p
        if self.kind == "rationals":
            return a * b
        prod = _poly_mod(_poly_mul(_poly_trim(a), _poly_trim(b), self.p),
                         self.modulus, self.p)
        return prod + (0,) * (self.m - len(prod))

    def _inv(self, a):
        if self.kind == "prime":
            if a == 0:
                raise ZeroDivisionError("inverse of zero in %s" % self)
            return pow(a, self.p - 2, self.p)
        if self.kind == "rationals":
            if a == 0:
                raise ZeroDivisionError("inverse of zero in QQ")
            return 1 / a
        if not any(a):
            raise ZeroDivisionError("inverse of zero in %s" % self)
        # brute-force search; the supported extension fields have order <= 64
        one = (1,) + (0,) * (self.m - 1)
        for cand in self.elements():
            if self._mul(a, cand.value) == one:
                return cand.value
        raise AssertionError("no inverse found in a field")  # unreachable


def prime_field(p: int) -> FieldSpec:
    return FieldSpec("prime", p)


def extension_field(p: int, m: int, modulus=None) -> FieldSpec:
    return FieldSpec("extension", p, m, modulus)


QQ = FieldSpec("rationals")


def GF(order: int, modulus=None) -> FieldSpec:
    """GF(q) for a prime or supported prime-power order q."""
    if _is_prime(order):
        return prime_field(order)
    for p in range(2, order):
        if not _is_prime(p):
            continue
        m, q = 1, p
        while q < order:
            q *= p
            m += 1
        if q == order:
            return extension_field(p, m, modulus)
    raise ValueError("GF(%d): order is not a prime power" % order)


def parse_field(text: str) -> FieldSpec:
    """Parse a field descriptor: "GF(7)", "GF(4)" or "QQ"."""
    t = text.strip()
    if t in ("QQ", "Q"):
        return QQ
    if t.startswith("GF(") and t.endswith(")"):
        body = t[3:-1].strip()
        if not body.isdigit():
            raise ParseError("bad field order in %r" % text)
        try:
            return GF(int(body))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError("unrecognized field descriptor %r" % text)


class Scalar:
    """An immutable field element in canonical form."""

    __slots__ = ("spec", "value")

    def __init__(self, spec, value):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.spec != self.spec:
                raise FieldMismatchError(
                    "mixed fields %s and %s" % (self.spec, other.spec))
            return other
        if isinstance(other, int) or (self.spec.kind == "rationals"
                                      and isinstance(other, Fraction)):
            return self.spec.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.spec, self.spec._add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.spec, self.spec._sub(self.value, o.value))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.spec, self.spec._sub(o.value, self.value))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Scalar(self.spec, self.spec._mul(self.value, o.value))

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.spec, self.spec._neg(self.value))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def inverse(self) -> "Scalar":
        return Scalar(self.spec, self.spec._inv(self.value))

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = self.spec.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        if self.spec.kind == "extension":
            return not any(self.value)
        return self.value == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.spec == other.spec and self.value == other.value

    def __hash__(self):
        return hash((self.spec, self.value))

    def __repr__(self):
        return "<%s in %s>" % (self, self.spec)

    def __str__(self):
        if self.spec.kind == "prime":
            return str(self.value)
        if self.spec.kind == "rationals":
            return str(self.value)
        return _format_extension(self.value)


def _format_extension(coeffs):
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        if k == 0:
            parts.append(str(c))
        else:
            mono = "u" if k == 1 else "u^%d" % k
            parts.append(mono if c == 1 else "%d*%s" % (c, mono))
    return "+".join(parts) if parts else "0"
