"""Exact arithmetic in Q(zeta_N).

Field elements are coefficient tuples of length deg(Phi_N) over Q, i.e.
residues modulo the N-th cyclotomic polynomial.  All arithmetic is exact;
nothing here ever touches floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

F0 = Fraction(0)
F1 = Fraction(1)


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                if cb:
                    out[i + j] += ca * cb
    return _trim(out)


def _poly_sub(a, b):
    out = [F0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _trim(out)


def _poly_divmod(a, b):
    # dense ascending coefficients over Q, b != 0
    a = _trim(list(a))
    q = [F0] * max(len(a) - len(b) + 1, 0)
    inv_lead = F1 / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv_lead
        k = len(a) - len(b)
        q[k] = c
        for j, cb in enumerate(b):
            a[k + j] -= c * cb
        _trim(a)
    return _trim(q), a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple:
    """Ascending integer coefficients of Phi_n, by exact division of
    x^n - 1 through the proper cyclotomic factors."""
    if n < 1:
        raise ValueError("cyclotomic order must be >= 1")
    poly = [Fraction(-1)] + [F0] * (n - 1) + [F1]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(poly, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not r
            poly = q
    assert all(c.denominator == 1 for c in poly)
    return tuple(int(c) for c in poly)


class CyclotomicField:
    """Q(zeta_n) with elements as dense Fraction tuples mod Phi_n.

    For n <= 2 the field is just Q (zeta_1 = 1, zeta_2 = -1) and elements
    are 1-tuples.
    """

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_polynomial(n)
        self.degree = len(self.phi) - 1
        self.zero = tuple([F0] * self.degree)
        one = [F0] * self.degree
        one[0] = F1
        self.one = tuple(one)
        # rows[k] = coefficients of x^(degree+k) mod Phi, k = 0 .. degree-2
        self._rows = []
        row = [Fraction(-c) for c in self.phi[:-1]]  # Phi is monic
        self._rows.append(tuple(row))
        for _ in range(max(self.degree - 2, 0)):
            top = row[-1]
            row = [F0] + row[:-1]
            if top:
                for i in range(self.degree):
                    row[i] += top * self._rows[0][i]
            self._rows.append(tuple(row))
        if self.degree >= 2:
            z = [F0] * self.degree
            z[1] = F1
            self.zeta = tuple(z)
        else:
            self.zeta = (self._rows[0][0],)  # n=1 -> 1, n=2 -> -1
        # torsion subgroup of Q(zeta_n)^x is cyclic of order lcm(2, n)
        self.torsion_order = n if n % 2 == 0 else 2 * n

    def reduce_power(self, k: int):
        """zeta^k as a field element, any integer k."""
        k %= self.n
        if k < self.degree and self.degree > 1:
            e = [F0] * self.degree
            e[k] = F1
            return tuple(e)
        return self.pow(self.zeta, k)

    def from_fraction(self, c) -> tuple:
        e = [F0] * self.degree
        e[0] = Fraction(c)
        return tuple(e)

    def is_rational(self, a) -> bool:
        return all(c == 0 for c in a[1:])

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def scale(self, c, a):
        if not c:
            return self.zero
        return tuple(c * x for x in a)

    def mul(self, a, b):
        d = self.degree
        if d == 1:
            return (a[0] * b[0],)
        conv = [F0] * (2 * d - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        conv[i + j] += ca * cb
        out = conv[:d]
        for k in range(d, 2 * d - 1):
            ck = conv[k]
            if ck:
                row = self._rows[k - d]
                for i in range(d):
                    out[i] += ck * row[i]
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.is_rational(a):
            return self.from_fraction(F1 / a[0])
        # extended Euclid: find s with s*a + t*Phi = gcd = const
        phi = [Fraction(c) for c in self.phi]
        r0, r1 = _trim(list(a)), phi
        s0, s1 = [F1], []
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        assert len(r0) == 1, "nonzero residue must be coprime to Phi_n"
        c = F1 / r0[0]
        s0 = [x * c for x in s0]
        # reduce s0 mod Phi (its degree can reach deg Phi - 1 already, but be safe)
        if len(s0) > self.degree:
            _, s0 = _poly_divmod(s0, phi)
        s0 = s0 + [F0] * (self.degree - len(s0))
        return tuple(s0[: self.degree])

    def pow(self, a, k: int):
        if k < 0:
            return self.pow(self.inv(a), -k)
        acc, base = self.one, a
        while k:
            if k & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            k >>= 1
        return acc

    def order_of(self, a):
        """Multiplicative order of a, or None if a is not a root of unity.

        Roots of unity in Q(zeta_n) all lie in the cyclic group generated by
        -zeta_n, of order lcm(2, n); a bounded incremental check suffices.
        """
        if a == self.zero:
            raise ZeroDivisionError("order of zero")
        acc = a
        for m in range(1, self.torsion_order + 1):
            if acc == self.one:
                return m
            acc = self.mul(acc, a)
        return None

    def torsion_units(self):
        """All roots of unity in the field, deterministic order."""
        gen = self.neg(self.zeta) if self.n % 2 else self.zeta
        out, acc = [], self.one
        for _ in range(self.torsion_order):
            out.append(acc)
            acc = self.mul(acc, gen)
        return out

    def embed(self, a, other: "CyclotomicField"):
        """Image of a under zeta_n -> zeta_m^(m/n); requires n | m
        (trivial for n <= 2 since the element is rational)."""
        if self.is_rational(a):
            return other.from_fraction(a[0])
        if other.n % self.n != 0:
            raise ValueError(f"Q(zeta_{self.n}) does not embed in Q(zeta_{other.n})")
        step = other.n // self.n
        res = other.zero
        for i, c in enumerate(a):
            if c:
                res = other.add(res, other.scale(c, other.reduce_power(i * step)))
        return res


@lru_cache(maxsize=None)
def get_field(n: int) -> CyclotomicField:
    return CyclotomicField(n)
