"""Exact arithmetic in the double: elements are finite linear combinations
of ordered monomials (v-word, group element, f-word).  Products are computed
by a confluent rewriting system on token sequences; on top of that sit the
coproduct, counit and antipode, and the report-style verifiers for the
bialgebra axioms, the antipode axioms, the module-compatibility condition on
the commutator coefficients, and the triangularity of the relation ideals."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as iproduct

from .scalars import Scalar
from .double import DoubleData
from .nichols import (TensorVector, nichols_relations, words_of_content,
                      content_of)
from .linalg import rref, in_span
from .braiding import DiagonalBraiding

# A normal term is (vword, group vector, fword); its coefficient is a Scalar.
# Tokens are ('v', i), ('f', i) or ('g', vector); normal order is all v
# tokens, then one group token, then all f tokens, with no ordering imposed
# inside the v-word or the f-word.

_RANK = {"v": 0, "g": 1, "f": 2}


class NormalFormElement:
    """Finite Scalar-linear combination of ordered monomials."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        data = {}
        if terms:
            for term, coeff in terms.items():
                c = field.scalar(coeff)
                if not c.is_zero():
                    data[term] = data[term] + c if term in data else c
                    if data[term].is_zero():
                        del data[term]
        self.terms = data

    # -- constructors --

    @staticmethod
    def zero(field):
        return NormalFormElement(field)

    @staticmethod
    def unit(field, group):
        return NormalFormElement(field, {((), group.identity(), ()): field.one})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, NormalFormElement)
                and self.field is other.field and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "NF(0)"
        bits = [f"{coeff}*{term}" for term, coeff in self.sorted_terms()]
        return "NF(" + " + ".join(bits) + ")"

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    # -- linear structure --

    def add(self, other):
        out = dict(self.terms)
        for term, c in other.terms.items():
            s = out.get(term)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(term, None)
            else:
                out[term] = s
        res = NormalFormElement(self.field)
        res.terms = out
        return res

    def scale(self, c):
        c = self.field.scalar(c)
        res = NormalFormElement(self.field)
        if c.is_zero():
            return res
        res.terms = {term: coeff * c for term, coeff in self.terms.items()}
        return res

    def sub(self, other):
        return self.add(other.scale(-1))

    def degrees(self):
        """Set of degrees (deg v = +1, deg f = -1, deg g = 0) present."""
        return {len(t[0]) - len(t[2]) for t in self.terms}


def nf_term(field, term, coeff=1):
    return NormalFormElement(field, {term: coeff})


def nf_v(data: DoubleData, i: int, coeff=1):
    return nf_term(data.field, ((i,), data.group.identity(), ()), coeff)


def nf_f(data: DoubleData, i: int, coeff=1):
    return nf_term(data.field, ((), data.group.identity(), (i,)), coeff)


def nf_group(data: DoubleData, vec, coeff=1):
    return nf_term(data.field, ((), data.group.reduce(vec), ()), coeff)


def nf_unit(data: DoubleData):
    return NormalFormElement.unit(data.field, data.group)


# ---- the rewriting system --------------------------------------------------


def _tokens_of(data, term):
    vw, gvec, fw = term
    toks = [("v", i) for i in vw]
    if not data.group.is_identity(gvec):
        toks.append(("g", gvec))
    toks.extend(("f", i) for i in fw)
    return toks


def _first_violation(toks):
    for k in range(len(toks) - 1):
        a, b = toks[k][0], toks[k + 1][0]
        if _RANK[a] > _RANK[b] or (a == "g" and b == "g"):
            return k
    return None


def _assemble(data, toks):
    vw, fw = [], []
    gvec = data.group.identity()
    for kind, payload in toks:
        if kind == "v":
            vw.append(payload)
        elif kind == "f":
            fw.append(payload)
        else:
            gvec = data.group.multiply(gvec, payload)
    return (tuple(vw), gvec, tuple(fw))


def rewrite_tokens(data: DoubleData, tokens, coeff) -> NormalFormElement:
    """Normalize one token sequence, resolving the leftmost violation at
    each step:

        g * g'   ->  (g g')
        g * v_i  ->  lambda_i(g) v_i * g
        f_i * g  ->  lambda_i(g) g * f_i
        f_i * v_j ->  v_j * f_i + gamma_ij k_j - gamma_ij l_i
    """
    field = data.field
    real = data.realization
    group = data.group
    out = {}
    work = [(list(tokens), field.scalar(coeff))]
    while work:
        toks, c = work.pop()
        if c.is_zero():
            continue
        k = _first_violation(toks)
        if k is None:
            term = _assemble(data, toks)
            s = out.get(term)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(term, None)
            else:
                out[term] = s
            continue
        (ka, pa), (kb, pb) = toks[k], toks[k + 1]
        if ka == "g" and kb == "g":
            merged = group.multiply(pa, pb)
            work.append((toks[:k] + [("g", merged)] + toks[k + 2:], c))
        elif ka == "g" and kb == "v":
            lam = real.characters[pb](pa)
            work.append((toks[:k] + [toks[k + 1], toks[k]] + toks[k + 2:],
                         c * lam))
        elif ka == "f" and kb == "g":
            lam = real.characters[pa](pb)
            work.append((toks[:k] + [toks[k + 1], toks[k]] + toks[k + 2:],
                         c * lam))
        else:  # f_i then v_j
            i, j = pa, pb
            rest = toks[k + 2:]
            work.append((toks[:k] + [toks[k + 1], toks[k]] + rest, c))
            gamma = data.gamma[i][j]
            if not gamma.is_zero():
                k_j = group.reduce(real.degrees_k[j])
                l_i = group.reduce(real.degrees_l[i])
                work.append((toks[:k] + [("g", k_j)] + rest, c * gamma))
                work.append((toks[:k] + [("g", l_i)] + rest,
                             c * gamma * field.scalar(-1)))
    res = NormalFormElement(field)
    res.terms = out
    return res


def multiply(data: DoubleData, x: NormalFormElement,
             y: NormalFormElement) -> NormalFormElement:
    acc = NormalFormElement(data.field)
    for t1, c1 in x.terms.items():
        toks1 = _tokens_of(data, t1)
        for t2, c2 in y.terms.items():
            piece = rewrite_tokens(data, toks1 + _tokens_of(data, t2),
                                   c1 * c2)
            acc = acc.add(piece)
    return acc


def nf_power(data: DoubleData, x: NormalFormElement, e: int):
    acc = nf_unit(data)
    for _ in range(e):
        acc = multiply(data, acc, x)
    return acc


def counit(data: DoubleData, x: NormalFormElement) -> Scalar:
    total = data.field.zero
    for (vw, _gvec, fw), c in x.terms.items():
        if not vw and not fw:
            total = total + c
    return total


# ---- tensor squares and the coproduct --------------------------------------


class TensorSquareElement:
    """Linear combination of pairs of ordered monomials (legs kept in normal
    form)."""

    __slots__ = ("field", "terms")

    def __init__(self, field, terms=None):
        self.field = field
        data = {}
        if terms:
            for key, coeff in terms.items():
                c = field.scalar(coeff)
                if not c.is_zero():
                    data[key] = data[key] + c if key in data else c
                    if data[key].is_zero():
                        del data[key]
        self.terms = data

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, TensorSquareElement)
                and self.field is other.field and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "TS(0)"
        bits = [f"{c}*{a}(x){b}"
                for (a, b), c in sorted(self.terms.items(),
                                        key=lambda kv: kv[0])]
        return "TS(" + " + ".join(bits) + ")"

    def add(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        res = TensorSquareElement(self.field)
        res.terms = out
        return res

    def scale(self, c):
        c = self.field.scalar(c)
        res = TensorSquareElement(self.field)
        if not c.is_zero():
            res.terms = {k: v * c for k, v in self.terms.items()}
        return res


def ts_unit(data: DoubleData):
    e = ((), data.group.identity(), ())
    return TensorSquareElement(data.field, {(e, e): data.field.one})


def ts_multiply(data: DoubleData, a: TensorSquareElement,
                b: TensorSquareElement) -> TensorSquareElement:
    """(x (x) y) * (x' (x) y') = xx' (x) yy', each leg renormalized."""
    acc = TensorSquareElement(data.field)
    for (a1, a2), c in a.terms.items():
        for (b1, b2), d in b.terms.items():
            left = multiply(data, nf_term(data.field, a1),
                            nf_term(data.field, b1))
            right = multiply(data, nf_term(data.field, a2),
                             nf_term(data.field, b2))
            cd = c * d
            add = {}
            for tl, cl in left.terms.items():
                for tr, cr in right.terms.items():
                    key = (tl, tr)
                    val = cd * cl * cr
                    add[key] = add[key] + val if key in add else val
            acc = acc.add(TensorSquareElement(data.field, add))
    return acc


def _generator_coproduct(data: DoubleData, token) -> TensorSquareElement:
    field = data.field
    group = data.group
    e = group.identity()
    kind, payload = token
    if kind == "v":
        i = payload
        k_i = group.reduce(data.realization.degrees_k[i])
        return TensorSquareElement(field, {
            (((i,), e, ()), ((), k_i, ())): field.one,
            (((), e, ()), ((i,), e, ())): field.one,
        })
    if kind == "f":
        i = payload
        l_i = group.reduce(data.realization.degrees_l[i])
        return TensorSquareElement(field, {
            (((), e, (i,)), ((), e, ())): field.one,
            (((), l_i, ()), ((), e, (i,))): field.one,
        })
    g = group.reduce(payload)
    return TensorSquareElement(field, {
        (((), g, ()), ((), g, ())): field.one,
    })


def coproduct_nf(data: DoubleData, x: NormalFormElement) -> TensorSquareElement:
    """Multiplicative extension of the coproduct on generators:
    v_i -> v_i (x) k_i + 1 (x) v_i, f_i -> f_i (x) 1 + l_i (x) f_i,
    g -> g (x) g."""
    acc = TensorSquareElement(data.field)
    for term, c in x.terms.items():
        piece = ts_unit(data)
        for token in _tokens_of(data, term):
            piece = ts_multiply(data, piece, _generator_coproduct(data, token))
        acc = acc.add(piece.scale(c))
    return acc


def antipode_nf(data: DoubleData, x: NormalFormElement) -> NormalFormElement:
    """Anti-multiplicative extension of S(v_i) = -v_i k_i^{-1},
    S(f_i) = -l_i^{-1} f_i, S(g) = g^{-1}."""
    field = data.field
    group = data.group
    acc = NormalFormElement(field)
    for term, c in x.terms.items():
        piece = nf_unit(data)
        for token in reversed(_tokens_of(data, term)):
            kind, payload = token
            if kind == "v":
                i = payload
                kinv = group.inverse(data.realization.degrees_k[i])
                factor = nf_term(field, ((i,), kinv, ()), -1)
            elif kind == "f":
                i = payload
                linv = group.inverse(data.realization.degrees_l[i])
                factor = nf_term(field, ((), linv, (i,)), -1)
            else:
                factor = nf_term(field, ((), group.inverse(payload), ()))
            piece = multiply(data, piece, factor)
        acc = acc.add(piece.scale(c))
    return acc


# ---- verification reports ---------------------------------------------------


@dataclass
class VerificationReport:
    name: str
    passed: bool
    checked: int
    failures: list = dc_field(default_factory=list)
    note: str = ""

    def first_failure(self):
        return self.failures[0] if self.failures else None


def _generator_tokens(data: DoubleData):
    toks = [("v", i) for i in range(data.n)]
    toks += [("f", i) for i in range(data.n)]
    toks += [("g", data.group.generator(t))
             for t in range(data.group.num_generators)]
    return toks


def _token_name(token):
    kind, payload = token
    if kind == "g":
        return f"g{payload}"
    return f"{kind}{payload + 1}"


def _token_nf(data, token):
    kind, payload = token
    if kind == "v":
        return nf_v(data, payload)
    if kind == "f":
        return nf_f(data, payload)
    return nf_group(data, payload)


def verify_bialgebra(data: DoubleData) -> VerificationReport:
    """Multiplicativity of the coproduct on every ordered pair of
    generators."""
    gens = _generator_tokens(data)
    failures = []
    checked = 0
    for ta in gens:
        a = _token_nf(data, ta)
        da = coproduct_nf(data, a)
        for tb in gens:
            b = _token_nf(data, tb)
            checked += 1
            lhs = coproduct_nf(data, multiply(data, a, b))
            rhs = ts_multiply(data, da, coproduct_nf(data, b))
            if lhs != rhs:
                failures.append({
                    "pair": (_token_name(ta), _token_name(tb)),
                    "lhs": lhs, "rhs": rhs,
                })
    return VerificationReport("bialgebra", not failures, checked, failures,
                              note="coproduct multiplicativity on ordered "
                                   "generator pairs")


def verify_antipode(data: DoubleData) -> VerificationReport:
    """Antipode axiom m(S (x) id)Delta(a) = eps(a) 1 = m(id (x) S)Delta(a) on
    every generator, plus anti-multiplicativity on ordered pairs."""
    gens = _generator_tokens(data)
    failures = []
    checked = 0
    unit = nf_unit(data)
    for ta in gens:
        a = _token_nf(data, ta)
        da = coproduct_nf(data, a)
        eps = counit(data, a)
        target = unit.scale(eps)
        left = NormalFormElement(data.field)
        right = NormalFormElement(data.field)
        for (t1, t2), c in da.terms.items():
            s1 = antipode_nf(data, nf_term(data.field, t1))
            left = left.add(
                multiply(data, s1, nf_term(data.field, t2)).scale(c))
            s2 = antipode_nf(data, nf_term(data.field, t2))
            right = right.add(
                multiply(data, nf_term(data.field, t1), s2).scale(c))
        checked += 1
        if left != target or right != target:
            failures.append({"generator": _token_name(ta),
                             "left": left, "right": right,
                             "target": target})
    for ta in gens:
        a = _token_nf(data, ta)
        for tb in gens:
            b = _token_nf(data, tb)
            checked += 1
            lhs = antipode_nf(data, multiply(data, a, b))
            rhs = multiply(data, antipode_nf(data, b), antipode_nf(data, a))
            if lhs != rhs:
                failures.append({
                    "pair": (_token_name(ta), _token_name(tb)),
                    "antimultiplicativity": (lhs, rhs),
                })
    return VerificationReport("antipode", not failures, checked, failures,
                              note="axiom on generators and "
                                   "anti-multiplicativity on pairs")


def verify_quasi_yd(data: DoubleData) -> VerificationReport:
    """Whenever gamma_ij != 0 the characters of the two indices must agree
    (their group grading already commutes, the group being abelian)."""
    failures = []
    checked = 0
    chars = data.realization.characters
    group = data.group
    for i in range(data.n):
        for j in range(data.n):
            if data.gamma[i][j].is_zero():
                continue
            checked += 1
            if chars[i] != chars[j]:
                witness = next(
                    t for t in range(group.num_generators)
                    if chars[i](group.generator(t)) != chars[j](group.generator(t)))
                failures.append({"pair": (i, j),
                                 "generator_index": witness,
                                 "lambda_i": chars[i](group.generator(witness)),
                                 "lambda_j": chars[j](group.generator(witness))})
    return VerificationReport(
        "quasi-yd", not failures, checked, failures,
        note="group centrality is automatic over an abelian group; only the "
             "character match is a real condition")


# ---- triangularity of the relation ideals ----------------------------------


def _padded_relation_rows(field, n, gens, degree):
    """Rows spanning the two-sided ideal layer of the given degree in the
    free algebra, grouped by content."""
    rows = {}
    for r in gens:
        e = r.degree
        if e is None or e > degree:
            continue
        for p in range(degree - e + 1):
            s = degree - e - p
            for u in iproduct(range(n), repeat=p):
                for w in iproduct(range(n), repeat=s):
                    tv = r
                    for letter in reversed(u):
                        tv = tv.concat_letter(letter, left=True)
                    for letter in w:
                        tv = tv.concat_letter(letter, left=False)
                    content = tv.content
                    words = words_of_content(content)
                    index = {word: t for t, word in enumerate(words)}
                    row = [field.zero] * len(words)
                    for word, c in tv.terms.items():
                        row[index[word]] = c
                    rows.setdefault(content, []).append(row)
    return rows


@dataclass
class TriangularReport:
    passed: bool
    max_degree: int
    checked: int
    failures: list = dc_field(default_factory=list)
    note: str = ""


def verify_triangular(data: DoubleData, D: int = 4) -> TriangularReport:
    """Commuting each f past each positive relation (and each v past each
    negative relation) must land inside the lower-degree layers of the same
    relation ideal, with any group factor allowed.

    Concretely, for a positive relation r of degree d the normal form of
    f_i r - r f_i consists of v-words of degree d-1, each carrying one group
    element and no f letters; grouped by that group element and by content,
    every residue must lie in the degree-(d-1) span of the positive
    relations.  The mirrored check runs for the negative relations."""
    field = data.field
    n = data.n
    # build the braiding matrix directly from the characters (the rewriting
    # rules do the same), so sabotaged data still reaches the verifier
    real = data.realization
    qm = tuple(tuple(real.characters[j](real.degrees_k[i]) for j in range(n))
               for i in range(n))
    b = DiagonalBraiding(field, qm)
    b_neg = b.inverse_braiding()
    pos = []
    neg = []
    for d in range(2, D + 1):
        pos.extend(nichols_relations(b, d))
        neg.extend(nichols_relations(b_neg, d))

    failures = []
    checked = 0

    def run(side, gens, make_rel_nf, make_gen_nf, word_slot):
        nonlocal checked
        span_cache = {}
        for idx, r in enumerate(gens):
            d = r.degree
            rel = make_rel_nf(r)
            for i in range(n):
                checked += 1
                gen = make_gen_nf(i)
                z = multiply(data, gen, rel).sub(multiply(data, rel, gen))
                buckets = {}
                bad_shape = []
                for (vw, gvec, fw), c in z.terms.items():
                    word = (vw, fw)[word_slot]
                    other = (fw, vw)[word_slot]
                    if other or len(word) != d - 1:
                        bad_shape.append(((vw, gvec, fw), c))
                        continue
                    buckets.setdefault((gvec, content_of(word, n)),
                                       {})[word] = c
                if bad_shape:
                    failures.append({"side": side, "relation": idx,
                                     "generator": i,
                                     "unexpected_terms": bad_shape})
                    continue
                for (gvec, content), wordmap in buckets.items():
                    key = (d - 1, content)
                    if key not in span_cache:
                        all_rows = _padded_relation_rows(field, n, gens, d - 1)
                        for cont, rws in all_rows.items():
                            red, piv = rref(field, rws,
                                            len(words_of_content(cont)))
                            span_cache[(d - 1, cont)] = (red, piv)
                        span_cache.setdefault(key, ([], []))
                    red, piv = span_cache[key]
                    words = words_of_content(content)
                    vec = [wordmap.get(w, field.zero) for w in words]
                    if any(not c.is_zero() for c in vec) and \
                            not in_span(field, red, piv, vec):
                        failures.append({
                            "side": side, "relation": idx, "generator": i,
                            "group_element": gvec,
                            "residue": TensorVector(field, n, dict(wordmap)),
                        })
    run("positive", pos,
        lambda r: NormalFormElement(field, {
            (w, data.group.identity(), ()): c for w, c in r.terms.items()}),
        lambda i: nf_f(data, i), 0)
    run("negative", neg,
        lambda r: NormalFormElement(field, {
            ((), data.group.identity(), w): c for w, c in r.terms.items()}),
        lambda i: nf_v(data, i), 1)

    return TriangularReport(
        passed=not failures, max_degree=D, checked=checked, failures=failures,
        note="residues of commuting generators across the opposite relation "
             "layer must stay inside the relation ideal")
