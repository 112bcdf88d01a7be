"""Sparse multivariate polynomials over an exact field.

Terms map exponent tuples to nonzero coefficients; the canonical printing
order is graded-lexicographic.  The zero polynomial has no terms and its
total degree is reported as None, a distinguished marker, never -1.

Besides arithmetic this module provides the univariate restriction of a
polynomial to a line, directional derivatives (the coefficient of t in
P(a + t v), which coincides with the gradient pairing), substitution, and an
exact zero-function decision: over the rationals, or over a finite field
when every per-variable degree stays below the field size, a polynomial
vanishes as a function exactly when it is the zero polynomial; otherwise an
exhaustive sweep is used up to a configurable cap.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import FieldMismatchError, ParseError
from .field import FieldSpec, Scalar

DEFAULT_ZERO_CAP = 10 ** 6

ZERO = "zero"
NONZERO = "nonzero"
UNDECIDABLE = "undecidable-symbolically"


class MultiPoly:
    """Sparse polynomial in variables x1..x(nvars) over one field."""

    __slots__ = ("spec", "nvars", "terms", "_partials")

    def __init__(self, spec: FieldSpec, nvars: int, terms=None):
        self.spec = spec
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, coeff in terms.items():
                exps = tuple(exps)
                if len(exps) != nvars or any(e < 0 for e in exps):
                    raise ValueError("bad exponent vector %r" % (exps,))
                c = spec.scalar(coeff)
                if not c.is_zero():
                    if exps in clean:
                        c = clean[exps] + c
                        if c.is_zero():
                            del clean[exps]
                            continue
                    clean[exps] = c
        self.terms = clean
        self._partials = None

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec, nvars):
        return cls(spec, nvars, {})

    @classmethod
    def constant(cls, spec, nvars, value):
        return cls(spec, nvars, {(0,) * nvars: spec.scalar(value)})

    @classmethod
    def variable(cls, spec, nvars, index):
        """The monomial x(index+1); ``index`` is zero-based."""
        if not 0 <= index < nvars:
            raise ValueError("variable index %d out of range" % index)
        exps = tuple(1 if i == index else 0 for i in range(nvars))
        return cls(spec, nvars, {exps: spec.one()})

    # -- structure ------------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Maximum exponent sum, or None for the zero polynomial."""
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def per_variable_degrees(self):
        degs = [0] * self.nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                if e > degs[i]:
                    degs[i] = e
        return tuple(degs)

    def is_homogeneous(self):
        """(flag, common degree); the zero polynomial is degenerate (True, None)."""
        if not self.terms:
            return True, None
        degrees = {sum(e) for e in self.terms}
        if len(degrees) == 1:
            return True, degrees.pop()
        return False, None

    def coefficient(self, exps):
        return self.terms.get(tuple(exps), self.spec.zero())

    # -- arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.spec != self.spec:
                raise FieldMismatchError("polynomials over different fields")
            if other.nvars != self.nvars:
                raise ValueError("polynomials in different variable counts")
            return other
        if isinstance(other, (int, Scalar)):
            return MultiPoly.constant(self.spec, self.nvars, self.spec.scalar(other))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self.terms)
        for exps, c in o.terms.items():
            acc = terms.get(exps)
            s = c if acc is None else acc + c
            if s.is_zero():
                terms.pop(exps, None)
            else:
                terms[exps] = s
        return MultiPoly(self.spec, self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.spec, self.nvars,
                         {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Scalar)):
            c = self.spec.scalar(other)
            if c.is_zero():
                return MultiPoly.zero(self.spec, self.nvars)
            return MultiPoly(self.spec, self.nvars,
                             {e: c * v for e, v in self.terms.items()})
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                key = tuple(a + b for a, b in zip(e1, e2))
                prod = c1 * c2
                acc = terms.get(key)
                s = prod if acc is None else acc + prod
                if s.is_zero():
                    terms.pop(key, None)
                else:
                    terms[key] = s
        return MultiPoly(self.spec, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative polynomial power")
        result = MultiPoly.constant(self.spec, self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return (self.spec == other.spec and self.nvars == other.nvars
                    and self.terms == other.terms)
        return NotImplemented

    # -- evaluation and calculus ----------------------------------------------

    def evaluate(self, point) -> Scalar:
        if len(point) != self.nvars:
            raise ValueError("point length %d, expected %d" % (len(point), self.nvars))
        point = [self.spec.scalar(x) for x in point]
        maxdeg = self.per_variable_degrees()
        powers = [_power_table(point[i], maxdeg[i]) for i in range(self.nvars)]
        acc = self.spec.zero()
        for exps, c in self.terms.items():
            term = c
            for i, e in enumerate(exps):
                if e:
                    term = term * powers[i][e]
            acc = acc + term
        return acc

    def partial(self, index: int) -> "MultiPoly":
        """Formal partial derivative in variable ``index`` (zero-based).

        Characteristic-p coefficient collapse applies term by term.
        """
        terms = {}
        for exps, c in self.terms.items():
            e = exps[index]
            if e == 0:
                continue
            coeff = c * e
            if coeff.is_zero():
                continue
            key = exps[:index] + (e - 1,) + exps[index + 1:]
            acc = terms.get(key)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return MultiPoly(self.spec, self.nvars, terms)

    def partials(self):
        if self._partials is None:
            self._partials = tuple(self.partial(i) for i in range(self.nvars))
        return self._partials

    def restrict_line(self, a, v) -> "UniPoly":
        """The univariate polynomial P(a + t v) in t."""
        if len(a) != self.nvars or len(v) != self.nvars:
            raise ValueError("vectors must have length %d" % self.nvars)
        a = [self.spec.scalar(x) for x in a]
        v = [self.spec.scalar(x) for x in v]
        acc = UniPoly(self.spec, [])
        for exps, c in self.terms.items():
            factor = UniPoly(self.spec, [c])
            for i, e in enumerate(exps):
                if e:
                    factor = factor * _binomial_power(self.spec, a[i], v[i], e)
            acc = acc + factor
        return acc

    def dir_derivative(self, a, v) -> Scalar:
        """Directional derivative at a along v: the t-coefficient of P(a + t v)."""
        line = self.restrict_line(a, v)
        value = line.coefficient(1)
        if __debug__:
            a_s = [self.spec.scalar(x) for x in a]
            v_s = [self.spec.scalar(x) for x in v]
            grad = self.spec.zero()
            for i, part in enumerate(self.partials()):
                if v_s[i].is_zero():
                    continue
                grad = grad + part.evaluate(a_s) * v_s[i]
            assert grad == value, "directional derivative routes disagree"
        return value

    # -- substitution -----------------------------------------------------------

    def substitute(self, images) -> "MultiPoly":
        """Exact composition: replace variable i by ``images[i]``.

        The images must be polynomials over the same field in a common
        (possibly larger) variable set.
        """
        if len(images) != self.nvars:
            raise ValueError("need %d images, got %d" % (self.nvars, len(images)))
        if self.nvars == 0:
            out_nvars = 0
            spec = self.spec
        else:
            spec = images[0].spec
            out_nvars = images[0].nvars
            for img in images:
                if img.spec != spec:
                    raise FieldMismatchError("images over mixed fields")
                if img.nvars != out_nvars:
                    raise ValueError("images in mixed variable counts")
            if spec != self.spec:
                raise FieldMismatchError("images over a different field")
        maxdeg = self.per_variable_degrees()
        powers = []
        for i in range(self.nvars):
            table = [MultiPoly.constant(spec, out_nvars, 1)]
            for _ in range(maxdeg[i]):
                table.append(table[-1] * images[i])
            powers.append(table)
        acc = MultiPoly.zero(spec, out_nvars)
        for exps, c in self.terms.items():
            term = MultiPoly.constant(spec, out_nvars, c)
            for i, e in enumerate(exps):
                if e:
                    term = term * powers[i][e]
            acc = acc + term
        return acc

    def substitute_var(self, index: int, value) -> "MultiPoly":
        """Specialize one variable to a scalar; the variable count is kept."""
        value = self.spec.scalar(value)
        maxdeg = self.per_variable_degrees()[index]
        powers = _power_table(value, maxdeg)
        terms = {}
        for exps, c in self.terms.items():
            e = exps[index]
            coeff = c * powers[e] if e else c
            if coeff.is_zero():
                continue
            key = exps[:index] + (0,) + exps[index + 1:]
            acc = terms.get(key)
            s = coeff if acc is None else acc + coeff
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        return MultiPoly(self.spec, self.nvars, terms)

    def embed(self, nvars: int, offset: int = 0) -> "MultiPoly":
        """The same polynomial viewed inside a larger variable set."""
        if offset < 0 or offset + self.nvars > nvars:
            raise ValueError("embedding does not fit")
        terms = {}
        for exps, c in self.terms.items():
            key = (0,) * offset + exps + (0,) * (nvars - offset - self.nvars)
            terms[key] = c
        return MultiPoly(self.spec, nvars, terms)

    # -- zero-function decision ---------------------------------------------------

    def is_zero_function(self, cap: int = DEFAULT_ZERO_CAP) -> str:
        """Decide whether the polynomial vanishes everywhere as a function.

        Returns ZERO, NONZERO or UNDECIDABLE.  The symbolic route applies
        whenever each per-variable degree is below the field size (always,
        over the rationals); otherwise all |F|^nvars points are swept when
        that count fits under ``cap``.
        """
        if not self.terms:
            return ZERO
        if not self.spec.is_finite:
            return NONZERO
        q = self.spec.order
        if all(d < q for d in self.per_variable_degrees()):
            return NONZERO
        if q ** self.nvars <= cap:
            for point in itertools.product(self.spec.elements(), repeat=self.nvars):
                if not self.evaluate(point).is_zero():
                    return NONZERO
            return ZERO
        return UNDECIDABLE

    def defines_same_function(self, other, cap: int = DEFAULT_ZERO_CAP) -> str:
        return (self - other).is_zero_function(cap)

    # -- printing -------------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending graded-lexicographic order."""
        return sorted(self.terms.items(),
                      key=lambda item: (-sum(item[0]),
                                        tuple(-e for e in item[0])))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for exps, coeff in self.sorted_terms():
            sign = "+"
            if self.spec.kind == "rationals" and coeff.value < 0:
                sign = "-"
                coeff = -coeff
            pieces.append((sign, _term_str(coeff, exps)))
        first_sign, first_body = pieces[0]
        text = ("-" + first_body) if first_sign == "-" else first_body
        for sign, body in pieces[1:]:
            text += " %s %s" % (sign, body)
        return text

    def __repr__(self):
        return "MultiPoly(%s, %d vars: %s)" % (self.spec, self.nvars, self)


def _power_table(base: Scalar, maxexp: int):
    table = [base.spec.one()]
    for _ in range(maxexp):
        table.append(table[-1] * base)
    return table


def _binomial_power(spec, a, v, e):
    """(a + v t)^e as a univariate polynomial in t."""
    coeffs = []
    apow = _power_table(a, e)
    vpow = _power_table(v, e)
    for j in range(e + 1):
        c = spec.from_int(math.comb(e, j)) * apow[e - j] * vpow[j]
        coeffs.append(c)
    return UniPoly(spec, coeffs)


def _term_str(coeff, exps):
    vars_part = "*".join(
        ("x%d" % (i + 1)) if e == 1 else ("x%d^%d" % (i + 1, e))
        for i, e in enumerate(exps) if e)
    if not vars_part:
        return _scalar_literal(coeff)
    if coeff == coeff.spec.one():
        return vars_part
    return "%s*%s" % (_scalar_literal(coeff), vars_part)


def _scalar_literal(coeff):
    s = str(coeff)
    if "+" in s or s.startswith("-"):
        return "(%s)" % s
    return s


class UniPoly:
    """Univariate polynomial in t, canonical dense coefficient list."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec, coeffs):
        coeffs = [spec.scalar(c) for c in coeffs]
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.spec = spec
        self.coeffs = tuple(coeffs)

    @property
    def degree(self):
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def coefficient(self, k):
        if k < len(self.coeffs):
            return self.coeffs[k]
        return self.spec.zero()

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.spec,
                       [self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __sub__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(self.spec,
                       [self.coefficient(i) - other.coefficient(i) for i in range(n)])

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return UniPoly(self.spec, [])
        out = [self.spec.zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(self.spec, out)

    def evaluate(self, t) -> Scalar:
        t = self.spec.scalar(t)
        acc = self.spec.zero()
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def derivative(self) -> "UniPoly":
        return UniPoly(self.spec,
                       [self.coeffs[k] * k for k in range(1, len(self.coeffs))])

    def __eq__(self, other):
        return (isinstance(other, UniPoly) and self.spec == other.spec
                and self.coeffs == other.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            mono = "" if k == 0 else ("t" if k == 1 else "t^%d" % k)
            lit = _scalar_literal(c)
            if mono and c == self.spec.one():
                parts.append(mono)
            elif mono:
                parts.append("%s*%s" % (lit, mono))
            else:
                parts.append(lit)
        return " + ".join(parts)

    def __repr__(self):
        return "UniPoly(%s, %s)" % (self.spec, self)


# ---------------------------------------------------------------------------
# parser: integer and a/b literals, variables x1..xN (and the generator u over
# extension fields), operators + - * ^ and parentheses; ^ binds tightest, no
# implicit multiplication.

def tokenize(text):
    tokens = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(("int", int(text[i:j]), i))
            i = j
            continue
        if ch == "x":
            j = i + 1
            while j < n and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise ParseError("variable name needs an index", i)
            tokens.append(("var", int(text[i + 1:j]), i))
            i = j
            continue
        if ch == "u":
            tokens.append(("gen", None, i))
            i += 1
            continue
        if ch in "+-*^/()":
            tokens.append((ch, None, i))
            i += 1
            continue
        raise ParseError("unexpected character %r" % ch, i)
    tokens.append(("end", None, n))
    return tokens


class _Parser:
    def __init__(self, text, nvars, spec):
        self.tokens = tokenize(text)
        self.pos = 0
        self.nvars = nvars
        self.spec = spec

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError("expected %s" % kind, tok[2])
        return tok

    def parse(self):
        poly = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected trailing input", tok[2])
        return poly

    def expr(self):
        negate = False
        if self.peek()[0] in ("+", "-"):
            negate = self.advance()[0] == "-"
        poly = self.term()
        if negate:
            poly = -poly
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            rhs = self.term()
            poly = poly + rhs if op == "+" else poly - rhs
        return poly

    def term(self):
        poly = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            poly = poly * self.factor()
        return poly

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("int")
            return base ** tok[1]
        return base

    def atom(self):
        tok = self.advance()
        kind, value, pos = tok
        if kind == "int":
            if self.peek()[0] == "/":
                self.advance()
                den = self.expect("int")
                return self._fraction(value, den[1], pos)
            return MultiPoly.constant(self.spec, self.nvars, value)
        if kind == "var":
            index = value - 1
            if not 0 <= index < self.nvars:
                raise ParseError("variable x%d out of range 1..%d"
                                 % (value, self.nvars), pos)
            return MultiPoly.variable(self.spec, self.nvars, index)
        if kind == "gen":
            if self.spec.kind != "extension":
                raise ParseError("u is only defined over extension fields", pos)
            return MultiPoly.constant(self.spec, self.nvars, self.spec.generator())
        if kind == "(":
            poly = self.expr()
            self.expect(")")
            return poly
        raise ParseError("unexpected token", pos)

    def _fraction(self, num, den, pos):
        if self.spec.kind == "rationals":
            return MultiPoly.constant(self.spec, self.nvars, Fraction(num, den))
        den_s = self.spec.from_int(den)
        if den_s.is_zero():
            raise ParseError("coefficient %d/%d is not in %s"
                             % (num, den, self.spec), pos)
        return MultiPoly.constant(self.spec, self.nvars,
                                  self.spec.from_int(num) / den_s)


def parse_poly(text: str, nvars: int, spec: FieldSpec) -> MultiPoly:
    """Parse the polynomial grammar; parse-print-parse is a fixed point."""
    return _Parser(text, nvars, spec).parse()


def parse_scalar(text: str, spec: FieldSpec) -> Scalar:
    """Parse a single field element: "7", "-3/2" or "u+1"."""
    poly = _Parser(text, 0, spec).parse()
    return poly.coefficient(())
