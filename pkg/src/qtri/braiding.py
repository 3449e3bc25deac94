"""Diagonal braidings, their realizations over abelian groups, and their
classification: generic / positive / Cartan / symmetrizable-with-base
("DJ") data, finite-type recognition, and twist equivalence with explicit
cocycles."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd

from .scalars import FieldSpec, Scalar, multiplicative_order
from .groups import AbelianGroupSpec, Character


class CompatibilityViolated(Exception):
    """The defining character identity lambda_j(k_i) * lambda_i(l_j) = 1
    fails; args carry the offending (i, j)."""


class NotDetermined(Exception):
    """Exponent search was inconclusive within the configured bound."""


class NotSymmetrizable(Exception):
    """No positive integers d_i with d_i a_ij = d_j a_ji exist."""


class RankMismatch(Exception):
    """Two braidings of different rank were compared."""


class YDRealization:
    """Rank-n realization: group elements k_i, l_i and characters lambda_i
    describing the two-sided action/coaction data of a diagonal braiding."""

    def __init__(self, field: FieldSpec, group: AbelianGroupSpec,
                 degrees_k, degrees_l, characters):
        degrees_k = [group.reduce(v) for v in degrees_k]
        degrees_l = [group.reduce(v) for v in degrees_l]
        characters = list(characters)
        n = len(degrees_k)
        if len(degrees_l) != n or len(characters) != n:
            raise ValueError("degrees_k, degrees_l, characters must have equal length")
        for ch in characters:
            if ch.field != field or ch.group != group:
                raise ValueError("character field/group mismatch")
        self.field = field
        self.group = group
        self.n = n
        self.degrees_k = degrees_k
        self.degrees_l = degrees_l
        self.characters = characters

    def compatibility_violations(self):
        """All (i, j) where lambda_j(k_i) * lambda_i(l_j) != 1."""
        bad = []
        for i in range(self.n):
            for j in range(self.n):
                if not (self.characters[j](self.degrees_k[i])
                        * self.characters[i](self.degrees_l[j])).is_one():
                    bad.append((i, j))
        return bad


class DiagonalBraiding:
    """Braiding v_i (x) v_j -> q_ij v_j (x) v_i given by a matrix of nonzero
    Scalars, optionally remembering the realization it came from."""

    def __init__(self, field: FieldSpec, q, realization: YDRealization | None = None):
        n = len(q)
        rows = []
        for i, row in enumerate(q):
            row = tuple(field.scalar(x) for x in row)
            if len(row) != n:
                raise ValueError("braiding matrix must be square")
            for j, x in enumerate(row):
                if x.is_zero():
                    raise ValueError(f"braiding entry ({i + 1},{j + 1}) is zero")
            rows.append(row)
        self.field = field
        self.n = n
        self.q = tuple(rows)
        self.realization = realization

    def inverse_braiding(self) -> "DiagonalBraiding":
        """The matrix q'_ij = q_ji^{-1} (the inverse braiding, used for the
        negative half of a double)."""
        n = self.n
        return DiagonalBraiding(
            self.field,
            [[self.q[j][i].inv() for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return (isinstance(other, DiagonalBraiding)
                and self.field == other.field and self.q == other.q)

    def __repr__(self):
        return ("DiagonalBraiding(["
                + ", ".join("[" + ", ".join(str(x) for x in row) + "]"
                            for row in self.q) + "])")


def braiding_from_realization(real: YDRealization) -> DiagonalBraiding:
    """q_ij := lambda_j(k_i).  Raises CompatibilityViolated if the character
    identity fails for some pair."""
    bad = real.compatibility_violations()
    if bad:
        raise CompatibilityViolated(bad[0])
    q = [[real.characters[j](real.degrees_k[i]) for j in range(real.n)]
         for i in range(real.n)]
    return DiagonalBraiding(real.field, q, realization=real)


def realization_from_braiding(b: DiagonalBraiding) -> YDRealization:
    """Standard realization over the free abelian group of rank 2n:
    k_i = e_i, l_i = e_{n+i}, with characters lambda_j(e_i) = q_ij and
    lambda_j(e_{n+i}) = q_ji^{-1}; the character identity holds by
    construction."""
    n = b.n
    group = AbelianGroupSpec(free_rank=2 * n)
    chars = []
    for j in range(n):
        values = [b.q[i][j] for i in range(n)] \
            + [b.q[j][i].inv() for i in range(n)]
        chars.append(Character(b.field, group, values))
    degrees_k = [group.generator(i) for i in range(n)]
    degrees_l = [group.generator(n + i) for i in range(n)]
    return YDRealization(b.field, group, degrees_k, degrees_l, chars)


@dataclass
class CartanData:
    """Generalized Cartan matrix extracted from a braiding, with optional
    symmetrizers d_i and per-component base scalars."""
    a: tuple  # n x n integers, rows as tuples
    components: tuple = ()  # partition of 0..n-1, each a sorted tuple
    d: tuple | None = None  # symmetrizers, one per index
    q_bases: dict | None = None  # component tuple -> Scalar

    def __post_init__(self):
        n = len(self.a)
        self.a = tuple(tuple(int(x) for x in row) for row in self.a)
        for i in range(n):
            if len(self.a[i]) != n:
                raise ValueError("Cartan matrix must be square")
            if self.a[i][i] != 2:
                raise ValueError(f"diagonal entry ({i + 1},{i + 1}) must be 2")
            for j in range(n):
                if i != j and self.a[i][j] > 0:
                    raise ValueError(f"off-diagonal entry ({i + 1},{j + 1}) must be <= 0")
                if (self.a[i][j] == 0) != (self.a[j][i] == 0):
                    raise ValueError(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together")
        if not self.components:
            self.components = connected_components(self.a)

    @property
    def n(self):
        return len(self.a)


def connected_components(a) -> tuple:
    """Partition of indices under the graph with edges a_ij != 0 (i != j)."""
    n = len(a)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            i = stack.pop()
            comp.append(i)
            for j in range(n):
                if j != i and not seen[j] and a[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(tuple(sorted(comp)))
    return tuple(comps)


@dataclass
class ClassificationReport:
    generic: bool
    positive: bool
    cartan: CartanData | None
    dj: tuple | None  # (d: tuple of ints, q_bases: dict component -> Scalar)
    notes: list = dc_field(default_factory=list)


def _is_positive_monomial(s: Scalar, positive_params, field: FieldSpec) -> bool:
    if not s.is_monomial():
        return False
    coeff, mono = s.monomial_parts()
    K = field.K
    if not K.is_rational(coeff):
        return False
    if coeff[0] <= 0:
        return False
    for name, e in zip(field.parameters, mono):
        if e != 0 and name not in positive_params:
            return False
    return True


def _solve_exponent(qii: Scalar, target: Scalar, amax: int, where: str):
    """Integer a with qii^a == target, or None when provably none exists.

    Raises NotDetermined when the bounded search is inconclusive."""
    field = qii.field
    if target.is_one():
        return 0
    order = multiplicative_order(qii) if qii.is_constant() else None
    if order is not None:
        # root of unity: the window 0 <= -a < order contains at most one hit
        power = field.one
        for k in range(order):
            if power == target:
                return -k if k else 0
            power = power * qii.inv()
        return None
    if qii.is_monomial() and not qii.is_constant():
        # nonconstant monomial: compare exponent vectors exactly
        if not target.is_monomial():
            return None
        _, alpha = qii.monomial_parts()
        _, beta = target.monomial_parts()
        pivot = next(s for s, e in enumerate(alpha) if e)
        if beta[pivot] % alpha[pivot] != 0:
            return None
        a = beta[pivot] // alpha[pivot]
        return a if qii**a == target else None
    # infinite multiplicative order, no exact handle: bounded search
    for a in range(0, -amax - 1, -1):
        if qii**a == target:
            return a
    for a in range(1, amax + 1):
        if qii**a == target:
            return a
    raise NotDetermined(
        f"no exponent a with |a| <= {amax} solves the Cartan identity at {where}; "
        f"raise the bound to decide")


def _integer_nth_root(x: int, g: int):
    if x < 0:
        return None
    if x in (0, 1):
        return x
    lo, hi = 1, 1 << ((x.bit_length() + g - 1) // g + 1)
    while lo < hi:
        mid = (lo + hi) // 2
        if mid**g < x:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo**g == x else None


def _monomial_root(s: Scalar, g: int) -> Scalar | None:
    """A g-th root of a monomial scalar of the shape (positive rational) x
    (root of unity) x t^alpha, if one exists of that same shape."""
    if g == 1:
        return s
    if not s.is_monomial():
        return None
    coeff, mono = s.monomial_parts()
    if any(e % g for e in mono):
        return None
    beta = tuple(e // g for e in mono)
    field = s.field
    K = field.K
    for omega in K.torsion_units():
        val = K.mul(coeff, K.inv(K.pow(omega, g)))
        if not K.is_rational(val) or val[0] <= 0:
            continue
        fr = Fraction(val[0])
        pnum = _integer_nth_root(fr.numerator, g)
        pden = _integer_nth_root(fr.denominator, g)
        if pnum is None or pden is None:
            continue
        root_coeff = K.scale(Fraction(pnum, pden), omega)
        num = {beta: root_coeff}
        return Scalar._new(field, num, {field._zero_mono: K.one})
    return None


def _component_symmetrizers(a, comp):
    """Minimal positive integers d_i (i in comp) with d_i a_ij = d_j a_ji,
    or None when the component is not symmetrizable."""
    d = {comp[0]: Fraction(1)}
    queue = [comp[0]]
    while queue:
        i = queue.pop()
        for j in comp:
            if j in d or a[i][j] == 0:
                continue
            d[j] = d[i] * Fraction(a[i][j], a[j][i])
            queue.append(j)
    for i in comp:
        for j in comp:
            if d[i] * a[i][j] != d[j] * a[j][i]:
                return None
    denom_lcm = 1
    for v in d.values():
        denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
    ints = {i: int(v * denom_lcm) for i, v in d.items()}
    if any(v <= 0 for v in ints.values()):
        return None
    common = 0
    for v in ints.values():
        common = gcd(common, v)
    return {i: v // common for i, v in ints.items()}


def _extgcd(x: int, y: int):
    """(g, s, t) with s*x + t*y = g = gcd(x, y) >= 0."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        qq = old_r // r
        old_r, r = r, old_r - qq * r
        old_s, s = s, old_s - qq * s
        old_t, t = t, old_t - qq * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def _component_base(b: DiagonalBraiding, comp, d, a):
    """Scalar Q with q_ij = Q^{d_i a_ij} for all i in comp, j in 1..n,
    or None.  Found by a Bezout combination of the exponents."""
    n = b.n
    items = []  # (exponent, i, j)
    for i in comp:
        for j in range(n):
            e = d[i] * a[i][j]
            if e:
                items.append((e, i, j))
    if not items:
        return None
    g, combo = items[0][0], {(items[0][1], items[0][2]): 1}
    if g < 0:
        g, combo = -g, {k: -c for k, c in combo.items()}
    for e, i, j in items[1:]:
        g2, s, t = _extgcd(g, e)
        combo = {k: c * s for k, c in combo.items() if c * s}
        combo[(i, j)] = combo.get((i, j), 0) + t
        g = g2
    base_power = b.field.one
    for (i, j), c in combo.items():
        base_power = base_power * b.q[i][j] ** c
    q_base = _monomial_root(base_power, g) if g > 1 else base_power
    if q_base is None:
        return None
    for i in comp:
        for j in range(n):
            if b.q[i][j] != q_base ** (d[i] * a[i][j]):
                return None
    return q_base


def classify(b: DiagonalBraiding, positivity_assumptions=frozenset(),
             amax: int = 8) -> ClassificationReport:
    """Classification flags for a diagonal braiding: generic (no q_ii a root
    of unity), positive (all entries positive monomials under the declared
    positivity assumptions), Cartan data when the exponents a_ij exist, and
    symmetrized base data (d_i, q per component) when the braiding is of
    that stricter shape."""
    n = b.n
    notes = []
    generic = True
    for i in range(n):
        if b.q[i][i].is_constant() and multiplicative_order(b.q[i][i]) is not None:
            generic = False
            notes.append(
                f"q_{i + 1}{i + 1} is a root of unity of order "
                f"{multiplicative_order(b.q[i][i])}")
            break

    positive = True
    for i in range(n):
        for j in range(n):
            if not _is_positive_monomial(b.q[i][j], positivity_assumptions, b.field):
                positive = False
                notes.append(
                    f"positivity unknown for q_{i + 1}{j + 1} = {b.q[i][j]} "
                    f"under assumptions {sorted(positivity_assumptions)}")
                break
        if not positive:
            break

    cartan = None
    dj = None
    bad = None
    for i in range(n):
        if b.q[i][i].is_one():
            bad = f"q_{i + 1}{i + 1} = 1 admits no Cartan datum"
            break
    if bad is None:
        a = [[2] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                target = b.q[i][j] * b.q[j][i]
                aij = _solve_exponent(b.q[i][i], target,
                                      amax, f"({i + 1},{j + 1})")
                if aij is None:
                    bad = (f"q_{i + 1}{j + 1} q_{j + 1}{i + 1} is not a power "
                           f"of q_{i + 1}{i + 1}")
                    break
                if aij > 0:
                    bad = (f"the exponent at ({i + 1},{j + 1}) is {aij} > 0, "
                           f"not a Cartan datum")
                    break
                a[i][j] = aij
            if bad:
                break
        if not bad:
            zero_sym = all((a[i][j] == 0) == (a[j][i] == 0)
                           for i in range(n) for j in range(n))
            if not zero_sym:
                bad = "a_ij = 0 iff a_ji = 0 fails"
            else:
                cartan = CartanData(tuple(tuple(row) for row in a))
    if bad:
        notes.append(bad)

    if cartan is not None:
        d_all = {}
        ok = True
        for comp in cartan.components:
            dd = _component_symmetrizers(cartan.a, comp)
            if dd is None:
                notes.append(f"component {tuple(i + 1 for i in comp)} is not symmetrizable")
                ok = False
                break
            d_all.update(dd)
        if ok:
            q_bases = {}
            for comp in cartan.components:
                base = _component_base(b, comp, d_all, cartan.a)
                if base is None:
                    notes.append(
                        f"no base scalar exists for component "
                        f"{tuple(i + 1 for i in comp)}")
                    ok = False
                    break
                q_bases[comp] = base
            if ok:
                d = tuple(d_all[i] for i in range(n))
                cartan.d = d
                cartan.q_bases = q_bases
                dj = (d, q_bases)

    return ClassificationReport(generic=generic, positive=positive,
                                cartan=cartan, dj=dj, notes=notes)


# ---- finite-type recognition -------------------------------------------


@dataclass
class FiniteType:
    types: tuple  # one (family, rank) per component, in component order
    note: str = "finite GK-dimension predicted"

    def names(self):
        return tuple(f"{fam}{rk}" for fam, rk in self.types)


@dataclass
class NotFinite:
    reason: str


def _int_det(m):
    """Exact determinant of a small integer matrix (Bareiss)."""
    n = len(m)
    m = [list(map(int, row)) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _name_component(a, comp):
    """Name a connected positive-definite component: (family, rank) or None."""
    idx = list(comp)
    r = len(idx)
    if r == 1:
        return ("A", 1)
    prod = {}
    adj = {i: [] for i in idx}
    for s in range(r):
        for t in range(s + 1, r):
            i, j = idx[s], idx[t]
            if a[i][j] != 0:
                p = a[i][j] * a[j][i]
                prod[(i, j)] = p
                adj[i].append(j)
                adj[j].append(i)
    if len(prod) != r - 1:
        return None  # cycles cannot be positive definite; safety net
    heavy = [(e, p) for e, p in prod.items() if p > 1]
    degrees = {i: len(adj[i]) for i in idx}
    if any(dg > 3 for dg in degrees.values()):
        return None
    branch = [i for i in idx if degrees[i] == 3]
    if not heavy:
        if not branch:
            return ("A", r)
        if len(branch) > 1:
            return None
        # arm lengths from the unique branch node
        arms = []
        for start in adj[branch[0]]:
            length, prev, cur = 1, branch[0], start
            while True:
                nxt = [x for x in adj[cur] if x != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                length += 1
            arms.append(length)
        arms.sort()
        if arms[:2] == [1, 1]:
            return ("D", arms[2] + 3)
        if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
            return ("E", {2: 6, 3: 7, 4: 8}[arms[2]])
        return None
    if branch:
        return None
    if len(heavy) > 1:
        return None
    (u, v), p = heavy[0]
    if p == 3:
        return ("G", 2) if r == 2 else None
    if p != 2:
        return None
    if r == 2:
        return ("B", 2)
    ends = [i for i in idx if degrees[i] == 1]
    if u in ends or v in ends:
        end = u if u in ends else v
        other = v if end == u else u
        # the short simple root's row carries the -2
        return ("B", r) if a[end][other] == -2 else ("C", r)
    # interior double edge: F4 is the only finite shape
    return ("F", 4) if r == 4 else None


def finite_cartan_type(cd: CartanData):
    """FiniteType naming each component, or NotFinite.  Raises
    NotSymmetrizable when no symmetrizers d_i exist at all."""
    a = cd.a
    d_all = {}
    for comp in cd.components:
        dd = _component_symmetrizers(a, comp)
        if dd is None:
            raise NotSymmetrizable(
                f"component {tuple(i + 1 for i in comp)} has no symmetrizers")
        d_all.update(dd)
    types = []
    for comp in cd.components:
        idx = list(comp)
        sym = [[d_all[i] * a[i][j] for j in idx] for i in idx]
        for k in range(1, len(idx) + 1):
            minor = [row[:k] for row in sym[:k]]
            if _int_det(minor) <= 0:
                return NotFinite(
                    f"symmetrized matrix of component "
                    f"{tuple(i + 1 for i in comp)} is not positive definite")
        name = _name_component(a, comp)
        if name is None:
            return NotFinite(
                f"component {tuple(i + 1 for i in comp)} matches no finite type")
        types.append(name)
    return FiniteType(tuple(types))


# ---- twist equivalence ---------------------------------------------------


@dataclass
class TwistResult:
    equivalent: bool
    sigma: tuple | None = None  # n x n Scalars, nontrivial above the diagonal
    witness: tuple | None = None  # first failing (i, j), 0-based


def is_twist_equivalent(b: DiagonalBraiding, b2: DiagonalBraiding) -> TwistResult:
    """Two braidings are twist equivalent iff q_ii = q'_ii and
    q_ij q_ji = q'_ij q'_ji; on success the witnessing cocycle is
    sigma_ij = q'_ij / q_ij above the diagonal and 1 elsewhere."""
    if b.n != b2.n:
        raise RankMismatch(f"ranks {b.n} and {b2.n} differ")
    if b.field != b2.field:
        raise ValueError("braidings live over different scalar fields")
    n = b.n
    for i in range(n):
        if b.q[i][i] != b2.q[i][i]:
            return TwistResult(False, witness=(i, i))
    for i in range(n):
        for j in range(i + 1, n):
            if b.q[i][j] * b.q[j][i] != b2.q[i][j] * b2.q[j][i]:
                return TwistResult(False, witness=(i, j))
    one = b.field.one
    sigma = tuple(tuple(b2.q[i][j] / b.q[i][j] if i < j else one
                        for j in range(n)) for i in range(n))
    return TwistResult(True, sigma=sigma)


def twist_braiding(b: DiagonalBraiding, sigma) -> DiagonalBraiding:
    """Apply a cocycle given above the diagonal: q_ij -> q_ij * sigma_ij for
    i < j and q_ij -> q_ij / sigma_ji for i > j, preserving the diagonal and
    every product q_ij q_ji."""
    n = b.n
    new = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                new[i][j] = b.q[i][j]
            elif i < j:
                new[i][j] = b.q[i][j] * sigma[i][j]
            else:
                new[i][j] = b.q[i][j] / sigma[j][i]
    return DiagonalBraiding(b.field, new)
