"""Multivariate Laurent polynomials over a cyclotomic field.

A polynomial is a dict mapping exponent tuples (ints, negatives allowed) to
nonzero coefficients of the given CyclotomicField; the zero polynomial is the
empty dict.  Monomial order is plain lexicographic tuple comparison, which is
multiplicative, so leading terms behave.  The fraction/normalization policy
lives in scalars.py; this module only supplies ring operations, exact
division and gcd (primitive PRS, recursing on the main variable).
"""

from __future__ import annotations


def p_zero():
    return {}


def p_const(K, c, nvars):
    if c == K.zero:
        return {}
    return {(0,) * nvars: c}


def p_is_zero(p):
    return not p


def p_is_const(p):
    return not p or (len(p) == 1 and not any(next(iter(p))))


def p_add(K, a, b):
    out = dict(a)
    for m, c in b.items():
        s = K.add(out[m], c) if m in out else c
        if s == K.zero:
            out.pop(m, None)
        else:
            out[m] = s
    return out


def p_neg(K, a):
    return {m: K.neg(c) for m, c in a.items()}


def p_sub(K, a, b):
    return p_add(K, a, p_neg(K, b))


def p_scale(K, c, a):
    if c == K.zero:
        return {}
    return {m: K.mul(c, x) for m, x in a.items()}


def p_mul_mono(K, a, shift, coeff=None):
    out = {}
    for m, c in a.items():
        key = tuple(x + y for x, y in zip(m, shift))
        out[key] = c if coeff is None else K.mul(coeff, c)
    return out


def p_mul(K, a, b):
    if not a or not b:
        return {}
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            key = tuple(x + y for x, y in zip(ma, mb))
            c = K.mul(ca, cb)
            if key in out:
                c = K.add(out[key], c)
            if c == K.zero:
                out.pop(key, None)
            else:
                out[key] = c
    return out


def p_leading(p):
    m = max(p)
    return m, p[m]


def p_min_exps(p):
    it = iter(p)
    mins = list(next(it))
    for m in it:
        for i, e in enumerate(m):
            if e < mins[i]:
                mins[i] = e
    return tuple(mins)


def p_shift_to_poly(p):
    """Factor p = t^shift * q with q a true polynomial, min exponent 0 in
    every variable.  Returns (shift, q)."""
    mins = p_min_exps(p)
    if not any(mins):
        return mins, p
    neg = tuple(-e for e in mins)
    return mins, {tuple(x + y for x, y in zip(m, neg)): c for m, c in p.items()}


def p_vars_used(p):
    used = set()
    for m in p:
        for i, e in enumerate(m):
            if e:
                used.add(i)
    return used


def p_divexact(K, a, b):
    """Exact division a / b; raises ArithmeticError when not exact."""
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    if not a:
        return {}
    lead_b = max(b)
    cb_inv = K.inv(b[lead_b])
    r = dict(a)
    out = {}
    while r:
        lead_r = max(r)
        diff = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(e < 0 for e in diff):
            raise ArithmeticError("non-exact polynomial division")
        c = K.mul(r[lead_r], cb_inv)
        out[diff] = c
        r = p_sub(K, r, p_mul_mono(K, b, diff, c))
    return out


def _one(K, nvars):
    return {(0,) * nvars: K.one}


def _to_univar(p, v):
    """Split along variable v: dict exp -> coefficient polynomial (with the
    v-slot zeroed in its monomials)."""
    out = {}
    for m, c in p.items():
        e = m[v]
        key = m[:v] + (0,) + m[v + 1:]
        out.setdefault(e, {})[key] = c
    return out


def _from_univar(K, d, v):
    out = {}
    for e, poly in d.items():
        for m, c in poly.items():
            out[m[:v] + (e,) + m[v + 1:]] = c
    return out


def _dense(d):
    deg = max(d)
    return [d.get(i, {}) for i in range(deg + 1)]


def _dtrim(L):
    while L and not L[-1]:
        L.pop()
    return L


def _content(K, polys, nvars):
    g = None
    for p in polys:
        if not p:
            continue
        g = p if g is None else p_gcd(K, g, p)
        if p_is_const(g):
            return _one(K, nvars)
    return g if g is not None else {}


def _prem(K, A, B):
    """Pseudo-remainder of dense coefficient lists (coefficients are
    polynomials in the remaining variables)."""
    R = list(A)
    lb = B[-1]
    while _dtrim(R) and len(R) >= len(B):
        lr = R[-1]
        k = len(R) - len(B)
        newR = [p_mul(K, lb, c) for c in R]
        for i, c in enumerate(B):
            newR[k + i] = p_sub(K, newR[k + i], p_mul(K, lr, c))
        R = newR
        _dtrim(R)
    return R


def _primitive(K, L, nvars):
    cont = _content(K, [c for c in L if c], nvars)
    if not cont or p_is_const(cont):
        return L
    return [p_divexact(K, c, cont) if c else {} for c in L]


def p_gcd(K, a, b):
    """gcd in the Laurent ring: defined up to units (monomials and scalars);
    the result is returned canonical -- a true polynomial with min exponent 0
    per variable and lex-leading coefficient 1."""
    if not a:
        return _make_monic(K, p_shift_to_poly(b)[1]) if b else {}
    if not b:
        return _make_monic(K, p_shift_to_poly(a)[1])
    nvars = len(next(iter(a)))
    _, a = p_shift_to_poly(a)
    _, b = p_shift_to_poly(b)
    if len(a) == 1 or len(b) == 1:
        return _one(K, nvars)
    if a == b:
        return _make_monic(K, a)
    used = sorted(p_vars_used(a) | p_vars_used(b))
    if not used:
        return _one(K, nvars)
    g = _gcd_rec(K, a, b, used, nvars)
    return _make_monic(K, g)


def _gcd_rec(K, a, b, used, nvars):
    if len(used) == 1:
        return _gcd_univar(K, a, b, used[0], nvars)
    v = used[-1]
    A, B = _to_univar(a, v), _to_univar(b, v)
    contA = _content(K, A.values(), nvars)
    contB = _content(K, B.values(), nvars)
    ppA = {e: p_divexact(K, c, contA) for e, c in A.items()}
    ppB = {e: p_divexact(K, c, contB) for e, c in B.items()}
    r0, r1 = _dense(ppA), _dense(ppB)
    if len(r0) < len(r1):
        r0, r1 = r1, r0
    while r1:
        r = _prem(K, r0, r1)
        r0, r1 = r1, _primitive(K, _dtrim(r), nvars)
    if len(r0) == 1:
        # PRS ended at main-degree 0: the primitive parts are coprime
        g_main = _one(K, nvars)
    else:
        g_main = _from_univar(K, dict(enumerate(_primitive(K, r0, nvars))), v)
    cont_g = p_gcd(K, contA, contB)
    return p_mul(K, cont_g, g_main)


def _gcd_univar(K, a, b, v, nvars):
    def todense(p):
        d = {}
        for m, c in p.items():
            d[m[v]] = c
        deg = max(d)
        return [d.get(i, K.zero) for i in range(deg + 1)]

    A, B = todense(a), todense(b)
    if len(A) < len(B):
        A, B = B, A
    while B:
        # monic remainder over the field
        inv_lead = K.inv(B[-1])
        R = list(A)
        while R and len(R) >= len(B):
            c = K.mul(R[-1], inv_lead)
            k = len(R) - len(B)
            for j, cb in enumerate(B):
                R[k + j] = K.sub(R[k + j], K.mul(c, cb))
            while R and R[-1] == K.zero:
                R.pop()
        A, B = B, R
    out = {}
    for i, c in enumerate(A):
        if c != K.zero:
            m = [0] * nvars
            m[v] = i
            out[tuple(m)] = c
    return out


def _make_monic(K, p):
    if not p:
        return p
    _, p = p_shift_to_poly(p)
    _, lc = p_leading(p)
    if lc == K.one:
        return p
    return p_scale(K, K.inv(lc), p)
