"""Integral form of a separable non-degenerate double: t-generators with
their relation layer (all coefficients Laurent in the declared square
roots), the specializability verdict for sending the square-root parameters
to 1, the classical-limit bracket table, and the per-index sl(2)-triple
verification."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .scalars import (FieldSpec, Scalar, DenominatorVanishes, specialize,
                      scalar_str)
from .double import (DoubleData, DoublePresentation, ValidationFailed,
                     validate, build_presentation)
from .normalform import (NormalFormElement, nf_term, nf_v, nf_f, multiply,
                         coproduct_nf, TensorSquareElement)


class IntegralFormError(Exception):
    """A precondition or verified identity of the integral form failed."""


class MissingSquareRoot(IntegralFormError):
    """No declared r_i, or r_i^2 != q_ii."""


class NotNonDegenerate(IntegralFormError):
    """Some gamma_ii vanishes."""


class NotSeparable(IntegralFormError):
    """The characters are not pairwise distinct (or gamma is not
    diagonal)."""


class NotSpecializable(Exception):
    """classical_limit called although check_specializable is not Ok; carries
    the verdict as args[0]."""


@dataclass
class Ok:
    kind: str = "ok"


@dataclass
class CyclotomicObstruction:
    witness: str
    kind: str = "cyclotomic"


@dataclass
class DenominatorObstruction:
    witness: str
    kind: str = "denominator"


@dataclass
class IntegralPresentation:
    presentation: DoublePresentation
    data: DoubleData
    sqrt_scalars: dict
    t_elements: list  # NormalFormElement gamma_ii (k_i - l_i)
    verified: dict  # relation family name -> True
    ft_sums: dict  # (i, j) -> Scalar: [f_i, t_j] = sum * (group->1) f_i
    vt_sums: dict  # (i, j) -> Scalar: [v_i, t_j] = sum * (group->1) v_i

    @property
    def field(self) -> FieldSpec:
        return self.data.field

    def structure_constants(self):
        """Labeled scalars that must survive any further specialization."""
        out = []
        q = self.presentation.braiding.q
        for i, r in sorted(self.sqrt_scalars.items()):
            out.append((f"r_{i + 1}", r))
            out.append((f"r_{i + 1}^-1", r ** -1))
            out.append((f"q_{i + 1}{i + 1} - 1", q[i][i] - 1))
        for tv in self.presentation.positive_relations:
            for word, c in tv.sorted_terms():
                out.append((f"positive relation degree {len(word)}", c))
        for tv in self.presentation.negative_relations:
            for word, c in tv.sorted_terms():
                out.append((f"negative relation degree {len(word)}", c))
        for rel in self.presentation.bosonization:
            out.append(("bosonization", rel.coefficient))
        for (i, j), s in sorted(self.ft_sums.items()):
            out.append((f"[f_{i + 1}, t_{j + 1}]", s))
        for (i, j), s in sorted(self.vt_sums.items()):
            out.append((f"[v_{i + 1}, t_{j + 1}]", s))
        return out


def _nf_group_delta(data, i):
    """t_i = gamma_ii (k_i - l_i) as a normal-form element."""
    g = data.group
    k_i = g.reduce(data.realization.degrees_k[i])
    l_i = g.reduce(data.realization.degrees_l[i])
    gamma = data.gamma[i][i]
    return NormalFormElement(data.field, {((), k_i, ()): gamma,
                                          ((), l_i, ()): -gamma})


def integral_presentation(data: DoubleData, sqrt_names,
                          D: int = 4) -> IntegralPresentation:
    """Adjoin t_i := [f_i, v_i] and mechanically verify the t-relation layer.

    sqrt_names maps each 0-based index i to a scalar expression r_i with
    r_i^2 = q_ii; the pairing (and the commutator coefficient) must be the
    normalized 1/(r_i - r_i^{-1})."""
    report = validate(data)
    if not report.passed:
        raise ValidationFailed(report)
    if not report.separable:
        raise NotSeparable("integral form needs pairwise distinct characters")
    if not report.non_degenerate:
        raise NotNonDegenerate("integral form needs gamma_ii != 0 for all i")
    field = data.field
    n = data.n
    pres = build_presentation(data, D)
    q = pres.braiding.q

    roots = {}
    for i in range(n):
        if i not in sqrt_names:
            raise MissingSquareRoot(f"no square root declared for index {i}")
        r = field.scalar(sqrt_names[i])
        if r * r != q[i][i]:
            raise MissingSquareRoot(
                f"r_{i + 1}^2 = {scalar_str(r * r)} != q_{i + 1}{i + 1} "
                f"= {scalar_str(q[i][i])}")
        roots[i] = r

    for i in range(n):
        want = (roots[i] - roots[i] ** -1) ** -1
        if data.pairing[i][i] != want:
            raise IntegralFormError(
                f"pairing <f_{i + 1}, v_{i + 1}> must be normalized to "
                f"1/(r - r^-1) = {scalar_str(want)}, got "
                f"{scalar_str(data.pairing[i][i])}")
        if data.gamma[i][i] != want:
            raise IntegralFormError(
                f"commutator coefficient gamma_{i + 1}{i + 1} must equal the "
                f"normalized pairing {scalar_str(want)}")

    group = data.group
    t_elems = [_nf_group_delta(data, i) for i in range(n)]
    verified = {}

    def commutator(x, y):
        return multiply(data, x, y).sub(multiply(data, y, x))

    # (tirel1): [f_i, t_i] = r_i k_i f_i + r_i^-1 l_i f_i
    for i in range(n):
        k_i = group.reduce(data.realization.degrees_k[i])
        l_i = group.reduce(data.realization.degrees_l[i])
        r = roots[i]
        got = commutator(nf_f(data, i), t_elems[i])
        want = NormalFormElement(field, {((), k_i, (i,)): r,
                                         ((), l_i, (i,)): r ** -1})
        if got != want:
            raise IntegralFormError(f"(tirel1) failed at index {i + 1}")
    verified["tirel1"] = True

    # (tirel2): [v_i, t_i] = -(r_i v_i k_i + r_i^-1 v_i l_i)
    for i in range(n):
        k_i = group.reduce(data.realization.degrees_k[i])
        l_i = group.reduce(data.realization.degrees_l[i])
        r = roots[i]
        got = commutator(nf_v(data, i), t_elems[i])
        want = NormalFormElement(field, {((i,), k_i, ()): -r,
                                         ((i,), l_i, ()): -(r ** -1)})
        if got != want:
            raise IntegralFormError(f"(tirel2) failed at index {i + 1}")
    verified["tirel2"] = True

    # (intrel2): r_i (k_i - l_i) = (q_ii - 1) t_i
    for i in range(n):
        k_i = group.reduce(data.realization.degrees_k[i])
        l_i = group.reduce(data.realization.degrees_l[i])
        r = roots[i]
        lhs = NormalFormElement(field, {((), k_i, ()): r, ((), l_i, ()): -r})
        rhs = t_elems[i].scale(q[i][i] - 1)
        if lhs != rhs:
            raise IntegralFormError(f"(intrel2) failed at index {i + 1}")
    verified["intrel2"] = True

    # (intrel3): [f_i, v_j] = delta_ij t_i
    for i in range(n):
        for j in range(n):
            got = commutator(nf_f(data, i), nf_v(data, j))
            want = t_elems[i] if i == j else NormalFormElement(field)
            if got != want:
                raise IntegralFormError(
                    f"(intrel3) failed at indices {i + 1}, {j + 1}")
    verified["intrel3"] = True

    # the t's commute (they live in the abelian group algebra)
    for i in range(n):
        for j in range(i + 1, n):
            if not commutator(t_elems[i], t_elems[j]).is_zero():
                raise IntegralFormError(
                    f"[t_{i + 1}, t_{j + 1}] != 0")
    verified["t-commute"] = True

    # Delta(t_i) = t_i (x) k_i + l_i (x) t_i
    for i in range(n):
        k_i = group.reduce(data.realization.degrees_k[i])
        l_i = group.reduce(data.realization.degrees_l[i])
        got = coproduct_nf(data, t_elems[i])
        want = TensorSquareElement(field)
        for term, c in t_elems[i].terms.items():
            want = want.add(TensorSquareElement(
                field, {(term, ((), k_i, ())): c}))
            want = want.add(TensorSquareElement(
                field, {(((), l_i, ()), term): c}))
        if got != want:
            raise IntegralFormError(f"coproduct of t_{i + 1} failed")
    verified["coproduct-t"] = True

    # [f_i, t_j] and [v_i, t_j] reduce to a single generator with a group
    # factor; record the summed coefficients for the classical limit
    ft_sums, vt_sums = {}, {}
    for i in range(n):
        for j in range(n):
            z = commutator(nf_f(data, i), t_elems[j])
            total = field.zero
            for (vw, _g, fw), c in z.terms.items():
                if vw or fw != (i,):
                    raise IntegralFormError(
                        f"[f_{i + 1}, t_{j + 1}] is not a multiple of f")
                total = total + c
            ft_sums[(i, j)] = total
            z = commutator(nf_v(data, i), t_elems[j])
            total = field.zero
            for (vw, _g, fw), c in z.terms.items():
                if fw or vw != (i,):
                    raise IntegralFormError(
                        f"[v_{i + 1}, t_{j + 1}] is not a multiple of v")
                total = total + c
            vt_sums[(i, j)] = total

    ipres = IntegralPresentation(
        presentation=pres, data=data, sqrt_scalars=roots,
        t_elements=t_elems, verified=verified, ft_sums=ft_sums,
        vt_sums=vt_sums)

    # integrality: every emitted coefficient is Laurent (denominator 1)
    for label, s in ipres.structure_constants():
        if not s.is_laurent_polynomial():
            raise IntegralFormError(
                f"non-Laurent structure constant in {label}: {scalar_str(s)}")
    return ipres


# ---- specializability -------------------------------------------------------


def _phi_at_one_witness(K):
    """Human-readable contradiction from zeta -> 1: the minimal polynomial
    evaluated at 1."""
    phi = K.phi  # ascending coefficients, monic
    terms = []
    for e in range(len(phi) - 1, -1, -1):
        c = phi[e]
        if c == 0:
            continue
        if e == 0:
            body = f"{abs(c)}"
        elif e == 1:
            body = "z" if abs(c) == 1 else f"{abs(c)}*z"
        else:
            body = f"z^{e}" if abs(c) == 1 else f"{abs(c)}*z^{e}"
        if not terms:
            terms.append(body if c > 0 else f"-{body}")
        else:
            terms.append(f"+ {body}" if c > 0 else f"- {body}")
    value = sum(phi)
    return f"{' '.join(terms)} = 0 specializes to {value} = 0"


def check_specializable(pres: IntegralPresentation):
    """Ok iff the coefficient field has no root of unity beyond +-1 and every
    structure constant survives sending all parameters to 1."""
    field = pres.field
    if field.K.n > 2:
        return CyclotomicObstruction(_phi_at_one_witness(field.K))
    target = FieldSpec(cyclotomic_order=field.K.n)
    assignment = {name: 1 for name in field.parameters}
    for label, s in pres.structure_constants():
        try:
            specialize(s, assignment, target)
        except DenominatorVanishes:
            return DenominatorObstruction(
                f"{label}: {scalar_str(s)} has a denominator vanishing at 1")
    return Ok()


# ---- the classical limit ----------------------------------------------------


@dataclass
class LieBracketTable:
    """Bracket table on the generator names; entries are stored once per
    unordered pair in index order and read antisymmetrically.  A pair absent
    from the table is not expressible in the generators (the bracket is a new
    element)."""
    names: tuple
    brackets: dict  # (name_a, name_b) with index(a) < index(b) -> {name: Fraction}
    constraints: tuple = ()
    non_lie: tuple = ()

    def bracket(self, a, b):
        if a == b:
            return {}
        if (a, b) in self.brackets:
            return dict(self.brackets[(a, b)])
        if (b, a) in self.brackets:
            return {k: -v for k, v in self.brackets[(b, a)].items()}
        return None

    def is_antisymmetric(self):
        seen = set()
        for a, b in self.brackets:
            if (b, a) in self.brackets or (a, b) in seen or a == b:
                return False
            seen.add((a, b))
        return True

    def bracket_combo(self, combo, name):
        """[sum_c combo[c]*c, name] via table lookups; None if any needed
        bracket is absent."""
        out = {}
        for gen, coeff in combo.items():
            if coeff == 0:
                continue
            br = self.bracket(gen, name)
            if br is None:
                return None
            for tgt, val in br.items():
                out[tgt] = out.get(tgt, Fraction(0)) + coeff * val
        return {k: v for k, v in out.items() if v != 0}


def _spec1(field, s):
    """Value of s at all parameters -> 1, as a Fraction."""
    target = FieldSpec(cyclotomic_order=field.K.n)
    out = specialize(s, {name: 1 for name in field.parameters}, target)
    return out.constant_value()[0]


def _lie_degree3_analysis(words, vec, letter_names):
    """Is `vec` (a nonzero dict word -> Fraction on a degree-3 content block)
    a linear combination of Lie monomials?  Returns a constraint string or
    None."""
    letters = sorted({x for w in words for x in w})
    if len(letters) == 1:
        return None  # x^3 is never a Lie element
    if len(letters) == 2:
        counts = {x: sum(w.count(x) for w in words) // len(words)
                  for x in letters}
        a = max(letters, key=lambda x: (counts[x], -x))
        bchoices = [x for x in letters if x != a]
        b = bchoices[0]
        if counts[a] != 2:
            return None
        base = {(a, a, b): Fraction(1), (a, b, a): Fraction(-2),
                (b, a, a): Fraction(1)}
        ref = next((w for w in words if vec.get(w)), None)
        if ref is None or ref not in base or base[ref] == 0:
            return None
        c = vec[ref] / base[ref]
        if all(vec.get(w, Fraction(0)) == c * base.get(w, Fraction(0))
               for w in words):
            na, nb = letter_names[a], letter_names[b]
            return f"[{na}, [{na}, {nb}]] = 0"
        return None
    a, b, c3 = letters
    L1 = {(a, b, c3): Fraction(1), (a, c3, b): Fraction(-1),
          (b, c3, a): Fraction(-1), (c3, b, a): Fraction(1)}
    L2 = {(b, a, c3): Fraction(1), (b, c3, a): Fraction(-1),
          (a, c3, b): Fraction(-1), (c3, a, b): Fraction(1)}
    c1 = vec.get((a, b, c3), Fraction(0))
    c2 = vec.get((b, a, c3), Fraction(0))
    ok = all(vec.get(w, Fraction(0)) ==
             c1 * L1.get(w, Fraction(0)) + c2 * L2.get(w, Fraction(0))
             for w in words)
    if not ok or (c1 == 0 and c2 == 0):
        return None
    na, nb, nc = letter_names[a], letter_names[b], letter_names[c3]
    bits = []
    if c1:
        bits.append(f"{c1}*[{na}, [{nb}, {nc}]]")
    if c2:
        bits.append(f"{c2}*[{nb}, [{na}, {nc}]]")
    return " + ".join(bits) + " = 0"


def classical_limit(pres: IntegralPresentation) -> LieBracketTable:
    """Bracket table at parameters -> 1 and group elements -> 1."""
    verdict = check_specializable(pres)
    if not isinstance(verdict, Ok):
        raise NotSpecializable(verdict)
    field = pres.field
    n = pres.data.n
    vnames = [f"v{i + 1}" for i in range(n)]
    fnames = [f"f{i + 1}" for i in range(n)]
    tnames = [f"t{i + 1}" for i in range(n)]
    names = tuple(vnames + fnames + tnames)
    brackets = {}

    # [v_i, f_j] = -delta_ij t_i (exact, from (intrel3))
    for i in range(n):
        for j in range(n):
            key = (vnames[i], fnames[j])
            brackets[key] = {tnames[i]: Fraction(-1)} if i == j else {}
    # [v_i, t_j] and [f_i, t_j] from the recorded coefficient sums
    for i in range(n):
        for j in range(n):
            val = _spec1(field, pres.vt_sums[(i, j)])
            brackets[(vnames[i], tnames[j])] = \
                {vnames[i]: val} if val else {}
            val = _spec1(field, pres.ft_sums[(i, j)])
            brackets[(fnames[i], tnames[j])] = \
                {fnames[i]: val} if val else {}
    # the t's commute
    for i in range(n):
        for j in range(i + 1, n):
            brackets[(tnames[i], tnames[j])] = {}

    constraints = []
    non_lie = []

    def analyze(relations, letter_names, kind):
        for tv in relations:
            d = tv.degree
            spec_terms = {}
            for word, coeff in tv.sorted_terms():
                val = _spec1(field, coeff)
                if val:
                    spec_terms[word] = val
            if not spec_terms:
                continue
            if d == 2:
                words = sorted(spec_terms)
                letters = sorted({x for w in words for x in w})
                if len(letters) == 2:
                    a, b = letters
                    alpha = spec_terms.get((a, b), Fraction(0))
                    beta = spec_terms.get((b, a), Fraction(0))
                    if alpha == -beta and alpha != 0:
                        key = (letter_names[a], letter_names[b])
                        brackets[key] = {}
                        continue
                non_lie.append(f"non-Lie constraint (degree 2, {kind})")
            elif d == 3:
                from .nichols import words_of_content
                words = words_of_content(tv.content)
                constraint = _lie_degree3_analysis(words, spec_terms,
                                                   letter_names)
                if constraint is not None:
                    constraints.append(constraint)
                else:
                    non_lie.append(f"non-Lie constraint (degree 3, {kind})")
            else:
                non_lie.append(f"non-Lie constraint (degree {d}, {kind})")

    analyze(pres.presentation.positive_relations, vnames, "v")
    analyze(pres.presentation.negative_relations, fnames, "f")

    return LieBracketTable(names=names, brackets=brackets,
                           constraints=tuple(constraints),
                           non_lie=tuple(non_lie))


# ---- sl(2) triples ----------------------------------------------------------


@dataclass
class Sl2TripleReport:
    passed: bool
    triples: int
    failures: list = dc_field(default_factory=list)
    note: str = ""


def verify_sl2_triples(table: LieBracketTable) -> Sl2TripleReport:
    """Per index: [f,v] = t, [f,t] = 2f, [v,t] = -2v, and the Jacobi identity
    on the triple."""
    n = sum(1 for name in table.names if name.startswith("v"))
    failures = []
    for i in range(n):
        v, f, t = f"v{i + 1}", f"f{i + 1}", f"t{i + 1}"
        checks = [
            ("[f,v] = t", table.bracket(f, v), {t: Fraction(1)}),
            ("[f,t] = 2f", table.bracket(f, t), {f: Fraction(2)}),
            ("[v,t] = -2v", table.bracket(v, t), {v: Fraction(-2)}),
        ]
        for label, got, want in checks:
            if got != want:
                failures.append({"index": i, "check": label,
                                 "got": got, "want": want})
        # Jacobi: [[f,v],t] + [[v,t],f] + [[t,f],v] = 0
        parts = []
        for x, y, z in ((f, v, t), (v, t, f), (t, f, v)):
            inner = table.bracket(x, y)
            if inner is None:
                parts = None
                break
            outer = table.bracket_combo(inner, z)
            if outer is None:
                parts = None
                break
            parts.append(outer)
        if parts is None:
            failures.append({"index": i, "check": "jacobi",
                             "got": "bracket missing from table"})
        else:
            total = {}
            for p in parts:
                for k, val in p.items():
                    total[k] = total.get(k, Fraction(0)) + val
            total = {k: val for k, val in total.items() if val != 0}
            if total:
                failures.append({"index": i, "check": "jacobi",
                                 "got": total, "want": {}})
    return Sl2TripleReport(passed=not failures, triples=n, failures=failures,
                           note="each index carries one sl(2) triple "
                                "(f_i, v_i, t_i)")
