"""The exact scalar tower Q(zeta_N)(t_1, ..., t_m).

A Scalar is a fraction of Laurent polynomials in the declared formal
parameters, with coefficients in Q(zeta_N).  Every Scalar is kept in a unique
canonical form:

  * numerator and denominator share no polynomial factor (exact gcd),
  * the denominator is a true polynomial (min exponent 0 in each variable)
    and is monic: its lexicographically leading term has coefficient exactly
    1 (which subsumes the positive-leading-rational convention),
  * the numerator absorbs all remaining Laurent-monomial units.

Equality of Scalars is therefore literal equality of representations.
Square roots are never computed: callers declare a parameter (or an explicit
scalar) r with q = r^2 when a square root is needed.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .cyclotomic import CyclotomicField, get_field
from . import laurent as L


class ScalarError(Exception):
    pass


class ZeroScalar(ScalarError):
    """Division by zero, inversion of zero, or order of zero."""


class DenominatorVanishes(ScalarError):
    """A specialization sent a denominator (or a negative power's base) to 0."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class FieldSpec:
    """Declares the scalar tower: cyclotomic order N and parameter names.

    Parameters are formal and invertible; 'z' is reserved for the primitive
    N-th root of unity."""

    def __init__(self, cyclotomic_order: int = 1, parameters=()):
        if cyclotomic_order < 1:
            raise ValueError("cyclotomic order must be >= 1")
        params = tuple(parameters)
        seen = set()
        for name in params:
            if not _NAME_RE.fullmatch(name) or name == "z":
                raise ValueError(f"bad parameter name {name!r}")
            if name in seen:
                raise ValueError(f"duplicate parameter {name!r}")
            seen.add(name)
        self.cyclotomic_order = cyclotomic_order
        self.parameters = params
        self.K: CyclotomicField = get_field(cyclotomic_order)
        self._index = {name: i for i, name in enumerate(params)}
        self._zero_mono = (0,) * len(params)
        self.zero = Scalar._make(self, {}, {self._zero_mono: self.K.one})
        self.one = Scalar._make(self, {self._zero_mono: self.K.one},
                                 {self._zero_mono: self.K.one})

    def __eq__(self, other):
        return (isinstance(other, FieldSpec)
                and self.cyclotomic_order == other.cyclotomic_order
                and self.parameters == other.parameters)

    def __hash__(self):
        return hash((self.cyclotomic_order, self.parameters))

    def __repr__(self):
        return f"FieldSpec(N={self.cyclotomic_order}, params={list(self.parameters)})"

    def nvars(self):
        return len(self.parameters)

    def from_fraction(self, c) -> "Scalar":
        c = Fraction(c)
        if c == 0:
            return self.zero
        return Scalar._new(self, {self._zero_mono: self.K.from_fraction(c)},
                           {self._zero_mono: self.K.one})

    def zeta(self, power: int = 1) -> "Scalar":
        return Scalar._new(self, {self._zero_mono: self.K.reduce_power(power)},
                           {self._zero_mono: self.K.one})

    def param(self, name: str) -> "Scalar":
        i = self._index[name]
        mono = tuple(1 if j == i else 0 for j in range(self.nvars()))
        return Scalar._new(self, {mono: self.K.one}, {self._zero_mono: self.K.one})

    def scalar(self, expr) -> "Scalar":
        """Coerce an int/Fraction/str/Scalar into this field."""
        if isinstance(expr, Scalar):
            if expr.field != self:
                raise ValueError("scalar belongs to a different field")
            return expr
        if isinstance(expr, (int, Fraction)):
            return self.from_fraction(expr)
        if isinstance(expr, str):
            return _Parser(self, expr).parse()
        raise TypeError(f"cannot coerce {type(expr).__name__} to Scalar")


class Scalar:
    """Element of Q(zeta_N)(t_1,...,t_m) in canonical fraction form."""

    __slots__ = ("field", "num", "den", "_hash")

    @staticmethod
    def _make(field, num, den):
        # trusted constructor: inputs already canonical
        s = object.__new__(Scalar)
        s.field = field
        s.num = num
        s.den = den
        s._hash = None
        return s

    @staticmethod
    def _new(field, num, den):
        """Normalize num/den to canonical form."""
        K = field.K
        if not den:
            raise ZeroScalar("zero denominator")
        one_den = {field._zero_mono: K.one}
        if not num:
            return Scalar._make(field, {}, one_den)
        if den == one_den:
            return Scalar._make(field, num, den)
        # single-term denominator: a unit; fold into the numerator
        if len(den) == 1:
            (dm, dc), = den.items()
            shift = tuple(-e for e in dm)
            num = L.p_mul_mono(K, num, shift, K.inv(dc))
            return Scalar._make(field, num, one_den)
        nshift, num0 = L.p_shift_to_poly(num)
        dshift, den0 = L.p_shift_to_poly(den)
        # num/den = t^net * num0/den0 with both parts true polynomials
        net = tuple(n - d for n, d in zip(nshift, dshift))
        g = L.p_gcd(K, num0, den0)
        if len(g) > 1 or any(next(iter(g))):
            num0 = L.p_divexact(K, num0, g)
            den0 = L.p_divexact(K, den0, g)
        if len(den0) == 1:
            (dm, dc), = den0.items()
            shift = tuple(n - e for n, e in zip(net, dm))
            num = L.p_mul_mono(K, num0, shift, K.inv(dc))
            return Scalar._make(field, num, one_den)
        _, lc = L.p_leading(den0)
        if lc != K.one:
            c = K.inv(lc)
            num0 = L.p_scale(K, c, num0)
            den0 = L.p_scale(K, c, den0)
        num = L.p_mul_mono(K, num0, net) if any(net) else num0
        return Scalar._make(field, num, den0)

    # ---- basic predicates ----------------------------------------

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self == self.field.one

    def is_constant(self):
        zm = self.field._zero_mono
        return (self.den == {zm: self.field.K.one}
                and (not self.num or set(self.num) == {zm}))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant scalar")
        if not self.num:
            return self.field.K.zero
        return self.num[self.field._zero_mono]

    def is_monomial(self):
        """True for c * t^alpha with c != 0."""
        zm = self.field._zero_mono
        return len(self.num) == 1 and self.den == {zm: self.field.K.one}

    def monomial_parts(self):
        if not self.is_monomial():
            raise ValueError("not a monomial scalar")
        (m, c), = self.num.items()
        return c, m

    def is_laurent_polynomial(self):
        """Denominator 1 after canonicalization."""
        return self.den == {self.field._zero_mono: self.field.K.one}

    # ---- arithmetic ----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise ValueError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_fraction(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.field.K
        if self.den == o.den:
            return Scalar._new(self.field, L.p_add(K, self.num, o.num), self.den)
        num = L.p_add(K, L.p_mul(K, self.num, o.den), L.p_mul(K, o.num, self.den))
        return Scalar._new(self.field, num, L.p_mul(K, self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._make(self.field, L.p_neg(self.field.K, self.num), self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        K = self.field.K
        return Scalar._new(self.field, L.p_mul(K, self.num, o.num),
                           L.p_mul(K, self.den, o.den))

    __rmul__ = __mul__

    def inv(self):
        if not self.num:
            raise ZeroScalar("inverse of zero")
        return Scalar._new(self.field, self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        acc, base = self.field.one, self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.field.from_fraction(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return (self.field == other.field and self.num == other.num
                and self.den == other.den)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field,
                               tuple(sorted(self.num.items())),
                               tuple(sorted(self.den.items()))))
        return self._hash

    def normalized(self):
        """Canonical form; the representation is always canonical, so this
        is the identity (kept as the documented idempotent hook)."""
        return self

    def __repr__(self):
        return scalar_str(self)

    __str__ = __repr__


# ---- operations of the module API -------------------------------------


def multiplicative_order(s: Scalar):
    """Smallest m >= 1 with s^m = 1, or None when no such m exists.

    Any scalar with genuine parameter dependence has infinite order; constant
    scalars are checked against the torsion bound lcm(2, N) of Q(zeta_N)^x.
    """
    if s.is_zero():
        raise ZeroScalar("multiplicative order of zero")
    if not s.is_constant():
        return None
    return s.field.K.order_of(s.constant_value())


def specialize(s: Scalar, assignment: dict, target: FieldSpec) -> Scalar:
    """Apply the ring homomorphism sending each parameter to the assigned
    Scalar over `target` (zeta_N maps along the canonical embedding).
    Parameters absent from `assignment` but declared in `target` map to
    themselves.  Raises DenominatorVanishes when the image denominator is 0.
    """
    src = s.field
    values = []
    for name in src.parameters:
        if name in assignment:
            values.append(target.scalar(assignment[name]))
        elif name in target.parameters:
            values.append(target.param(name))
        else:
            raise ValueError(f"no assignment for parameter {name!r}")

    def eval_poly(p):
        acc = target.zero
        for mono, coeff in sorted(p.items()):
            term = Scalar._new(target, {target._zero_mono:
                                        src.K.embed(coeff, target.K)},
                               {target._zero_mono: target.K.one})
            for val, e in zip(values, mono):
                if e == 0:
                    continue
                if val.is_zero() and e < 0:
                    raise DenominatorVanishes(
                        "negative power of a parameter specialized to zero")
                term = term * val ** e
            acc = acc + term
        return acc

    den_val = eval_poly(s.den)
    if den_val.is_zero():
        raise DenominatorVanishes("denominator specializes to zero")
    return eval_poly(s.num) / den_val


# ---- literal grammar ---------------------------------------------------
#
#   expr   := term (('+'|'-') term)*
#   term   := factor (('*'|'/') factor)*
#   factor := '-'* atom ('^' ('-')? digits)?
#   atom   := digits | name | 'z' | '(' expr ')'

_TOKEN_RE = re.compile(r"\s*(\d+|[A-Za-z_][A-Za-z_0-9]*|\*|/|\+|-|\^|\(|\))")


class _Parser:
    def __init__(self, field: FieldSpec, text: str):
        self.field = field
        self.text = text
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if not m:
                if text[pos:].strip():
                    raise ValueError(f"bad character in scalar literal: {text[pos:]!r}")
                break
            self.toks.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def next(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Scalar:
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"trailing tokens in scalar literal: {self.text!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.next()
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.factor()
        while self.peek() in ("*", "/"):
            op = self.next()
            w = self.factor()
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ZeroScalar(f"division by zero in literal {self.text!r}")
                v = v / w
        return v

    def factor(self):
        sign = 1
        while self.peek() == "-":
            self.next()
            sign = -sign
        v = self.atom()
        if self.peek() == "^":
            self.next()
            esign = 1
            if self.peek() == "-":
                self.next()
                esign = -1
            t = self.next()
            if t is None or not t.isdigit():
                raise ValueError(f"bad exponent in scalar literal {self.text!r}")
            v = v ** (esign * int(t))
        return v if sign == 1 else -v

    def atom(self):
        t = self.next()
        if t is None:
            raise ValueError(f"unexpected end of scalar literal {self.text!r}")
        if t == "(":
            v = self.expr()
            if self.next() != ")":
                raise ValueError(f"unbalanced parens in scalar literal {self.text!r}")
            return v
        if t.isdigit():
            return self.field.from_fraction(int(t))
        if t == "z":
            return self.field.zeta()
        if t in self.field._index:
            return self.field.param(t)
        raise ValueError(f"unknown name {t!r} in scalar literal")


# ---- canonical formatting ----------------------------------------------


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_cyc(K, c):
    """Format a cyclotomic coefficient; returns (sign, body) where sign is
    +1/-1 and body never starts with '-'.  Multi-term coefficients are
    parenthesized so they can prefix a monomial."""
    terms = [(i, x) for i, x in enumerate(c) if x]
    if len(terms) == 1:
        i, x = terms[0]
        sign = 1 if x > 0 else -1
        x = abs(x)
        if i == 0:
            return sign, _fmt_fraction(x)
        zpart = "z" if i == 1 else f"z^{i}"
        if x == 1:
            return sign, zpart
        return sign, f"{_fmt_fraction(x)}*{zpart}"
    parts = []
    for i, x in terms:
        s, body = _fmt_cyc(K, tuple(x if j == i else 0 for j in range(len(c))))
        parts.append((s, body))
    out = parts[0][1] if parts[0][0] > 0 else "-" + parts[0][1]
    for s, body in parts[1:]:
        out += ("+" if s > 0 else "-") + body
    return 1, f"({out})"


def _fmt_poly(field: FieldSpec, p) -> str:
    if not p:
        return "0"
    K = field.K
    pieces = []
    for mono in sorted(p, reverse=True):
        sign, cbody = _fmt_cyc(K, p[mono])
        vparts = []
        for name, e in zip(field.parameters, mono):
            if e == 0:
                continue
            vparts.append(name if e == 1 else f"{name}^{e}")
        if vparts:
            body = "*".join(vparts) if cbody == "1" else cbody + "*" + "*".join(vparts)
        else:
            body = cbody
        pieces.append((sign, body))
    out = pieces[0][1] if pieces[0][0] > 0 else "-" + pieces[0][1]
    for sign, body in pieces[1:]:
        out += (" + " if sign > 0 else " - ") + body
    return out


def scalar_str(s: Scalar) -> str:
    """Canonical string; parsing it back yields an equal Scalar."""
    num = _fmt_poly(s.field, s.num)
    if s.is_laurent_polynomial():
        return num
    den = _fmt_poly(s.field, s.den)
    return f"({num})/({den})"
