"""Built-in example data: Drinfeld-Jimbo doubles for the finite Cartan
types, the rank-(n-1) multiparameter quantum-gl family, rank-1 cyclic-group
doubles, a generic Cartan braiding that is not of DJ type, and a two-letter
example mixing a free and a p-torsion direction."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .scalars import FieldSpec
from .groups import AbelianGroupSpec, Character
from .braiding import YDRealization
from .double import DoubleData


class UnknownEntry(Exception):
    """No catalog entry with that name."""


class BadParams(Exception):
    """Entry parameters outside the schema; the message carries the schema."""


# ---- Cartan matrices of the finite types -----------------------------------


def cartan_matrix(kind: str, rank: int):
    """(matrix, symmetrizers) for the finite type kind_rank.  Short roots sit
    at the high end of the numbering; the branch node of D/E sits inside the
    chain."""
    kind = kind.upper()
    if kind == "A":
        if rank < 1:
            raise BadParams("type A needs rank >= 1")
    elif kind in ("B", "C"):
        if rank < 2:
            raise BadParams(f"type {kind} needs rank >= 2")
    elif kind == "D":
        if rank < 3:
            raise BadParams("type D needs rank >= 3")
    elif kind == "E":
        if rank not in (6, 7, 8):
            raise BadParams("type E needs rank in {6, 7, 8}")
    elif kind == "F":
        if rank != 4:
            raise BadParams("type F needs rank = 4")
    elif kind == "G":
        if rank != 2:
            raise BadParams("type G needs rank = 2")
    else:
        raise BadParams(f"unknown Cartan type {kind!r}")

    n = rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def join(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    d = [1] * n
    if kind == "A":
        for i in range(n - 1):
            join(i, i + 1)
    elif kind == "B":
        for i in range(n - 1):
            join(i, i + 1)
        a[n - 1][n - 2] = -2
        d = [2] * (n - 1) + [1]
    elif kind == "C":
        for i in range(n - 1):
            join(i, i + 1)
        a[n - 2][n - 1] = -2
        d = [1] * (n - 1) + [2]
    elif kind == "D":
        # chain 0 .. n-3 with both of n-2, n-1 attached to its end
        for i in range(n - 3):
            join(i, i + 1)
        join(n - 3, n - 2)
        join(n - 3, n - 1)
    elif kind == "E":
        # chain c_0 .. c_{n-2}, extra node n-1 attached to the chain's third
        for i in range(n - 2):
            join(i, i + 1)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        join(2, n - 1)
    elif kind == "F":
        join(0, 1)
        join(1, 2, -1, -2)
        join(2, 3)
        d = [2, 2, 1, 1]
    elif kind == "G":
        join(0, 1, -1, -3)
        d = [3, 1]
    return tuple(tuple(row) for row in a), tuple(d)


# ---- entries ----------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    params: dict
    data: DoubleData
    sqrt_scalars: dict | None  # i -> expression string, when integral-ready
    description: str
    notes: dict = dc_field(default_factory=dict)


def _build_dj(params):
    kind = str(params.get("type", "A"))
    rank = int(params.get("rank", 2))
    a, d = cartan_matrix(kind, rank)
    n = rank
    F = FieldSpec(parameters=("r",))
    r = F.param("r")
    G = AbelianGroupSpec(free_rank=n)
    chars = []
    for j in range(n):
        chars.append(Character(
            F, G, tuple(r ** (2 * d[i] * a[i][j]) for i in range(n))))
    e = [tuple(1 if t == i else 0 for t in range(n)) for i in range(n)]
    ei = [tuple(-1 if t == i else 0 for t in range(n)) for i in range(n)]
    real = YDRealization(F, G, tuple(e), tuple(ei), tuple(chars))
    gamma = [[F.zero] * n for _ in range(n)]
    for i in range(n):
        gamma[i][i] = (r ** (2 * d[i]) - r ** (-2 * d[i])) ** -1
    data = DoubleData(real, gamma, gamma)
    roots = {i: f"r^{2 * d[i]}" for i in range(n)}
    return CatalogEntry(
        name="dj", params={"type": kind.upper(), "rank": rank}, data=data,
        sqrt_scalars=roots,
        description=f"Drinfeld-Jimbo double of type {kind.upper()}{rank} "
                    "with formal base q = r^2",
        notes={"cartan": a, "symmetrizers": d})


def _build_gl(params):
    n = int(params.get("n", 2))
    if not 2 <= n <= 9:
        raise BadParams("multiparameter-gl needs 2 <= n <= 9")
    pnames = [f"p{i}{j}" for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    F = FieldSpec(parameters=tuple(["lam"] + pnames))
    lam = F.param("lam")

    def kappa(i, j):  # 1-based gl indices
        if i < j:
            return F.param(f"p{i}{j}")
        if i == j:
            return lam
        return lam / F.param(f"p{j}{i}")

    def lamtab(i, j):
        if i < j:
            return lam / F.param(f"p{i}{j}")
        if i == j:
            return lam
        return F.param(f"p{j}{i}")

    rank = n - 1
    G = AbelianGroupSpec(free_rank=2 * rank)
    chars = []
    for j in range(1, rank + 1):
        on_k = [lamtab(i, j + 1) * lamtab(i + 1, j)
                / (lamtab(i, j) * lamtab(i + 1, j + 1))
                for i in range(1, rank + 1)]
        on_l = [kappa(i, j) * kappa(i + 1, j + 1)
                / (kappa(i, j + 1) * kappa(i + 1, j))
                for i in range(1, rank + 1)]
        chars.append(Character(F, G, tuple(on_k + on_l)))
    ks = [tuple(1 if t == i else 0 for t in range(2 * rank))
          for i in range(rank)]
    ls = [tuple(1 if t == rank + i else 0 for t in range(2 * rank))
          for i in range(rank)]
    real = YDRealization(F, G, tuple(ks), tuple(ls), tuple(chars))
    gamma = [[F.zero] * rank for _ in range(rank)]
    for i in range(rank):
        gamma[i][i] = F.one - lam
    data = DoubleData(real, gamma, gamma)
    return CatalogEntry(
        name="multiparameter-gl", params={"n": n}, data=data,
        sqrt_scalars=None,
        description=f"rank-{rank} multiparameter quantum-gl({n}) double "
                    "with parameters lam and p_ij")


def _build_radford(params):
    r = int(params.get("r", 3))
    if r < 2:
        raise BadParams("radford needs r >= 2")
    F = FieldSpec(cyclotomic_order=r)
    G = AbelianGroupSpec(torsion_orders=(r,))
    lam = Character(F, G, (F.zeta(),))
    real = YDRealization(F, G, ((1,),), ((r - 1,),), (lam,))
    gamma = [[F.zero if r == 2 else F.one]]
    data = DoubleData(real, gamma, gamma)
    return CatalogEntry(
        name="radford", params={"r": r}, data=data, sqrt_scalars=None,
        description=f"rank-1 double over the cyclic group of order {r} with "
                    "q11 a primitive root of unity",
        notes={"degenerate": r == 2})


def _build_cartan_not_dj(params):
    if params:
        raise BadParams("cartan-not-dj takes no parameters")
    F = FieldSpec(cyclotomic_order=4, parameters=("r",))
    G = AbelianGroupSpec(free_rank=2)
    lam1 = Character(F, G, (F.scalar("r^2"), F.scalar("r^-2")))
    lam2 = Character(F, G, (F.scalar("r^-2"), F.scalar("-r^2")))
    real = YDRealization(F, G, ((1, 0), (0, 1)), ((-1, 0), (0, -1)),
                         (lam1, lam2))
    gamma = [[F.scalar("1") / F.scalar("r - r^-1"), F.zero],
             [F.zero, F.scalar("1") / F.scalar("z*r + z*r^-1")]]
    data = DoubleData(real, gamma, gamma)
    return CatalogEntry(
        name="cartan-not-dj", params={}, data=data,
        sqrt_scalars={0: "r", 1: "z*r"},
        description="rank-2 generic braiding of Cartan type [[2,-2],[-2,2]] "
                    "that is not rescalable to a DJ form")


def _is_odd_prime(p):
    if p < 3 or p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def _build_mixed(params):
    p = int(params.get("p", 3))
    if not _is_odd_prime(p):
        raise BadParams("mixed needs an odd prime p >= 3")
    F = FieldSpec(cyclotomic_order=p, parameters=("s",))
    z = F.zeta()
    s = F.param("s")
    # generators: g_inf, h_inf free; g_p, h_p of order p
    G = AbelianGroupSpec(free_rank=2, torsion_orders=(p, p))
    lam_p = Character(F, G, (z ** -1, z ** -1, z, z ** -1))
    lam_inf = Character(F, G, (s ** 2, s ** -2, z, z))
    k_p, k_inf = (0, 0, 1, 0), (1, 0, 0, 0)
    l_p, l_inf = (0, 0, 0, 1), (0, 1, 0, 0)
    real = YDRealization(F, G, (k_p, k_inf), (l_p, l_inf), (lam_p, lam_inf))
    half = (p + 1) // 2
    gamma = [[(z ** half - z ** -half) ** -1, F.zero],
             [F.zero, (s - s ** -1) ** -1]]
    data = DoubleData(real, gamma, gamma)
    return CatalogEntry(
        name="mixed", params={"p": p}, data=data,
        sqrt_scalars={0: f"z^{half}", 1: "s"},
        description="two letters mixing a p-torsion direction (q11 a "
                    "primitive p-th root) with a free direction (q22 = s^2)")


_BUILDERS = {
    "dj": (_build_dj, {"type": "A|B|C|D|E|F|G (default A)",
                       "rank": "positive integer matching the type"}),
    "multiparameter-gl": (_build_gl, {"n": "2..9 (default 2)"}),
    "radford": (_build_radford, {"r": "integer >= 2 (default 3)"}),
    "cartan-not-dj": (_build_cartan_not_dj, {}),
    "mixed": (_build_mixed, {"p": "odd prime >= 3 (default 3)"}),
}


def available():
    return {name: {"params": schema, }
            for name, (_fn, schema) in sorted(_BUILDERS.items())}


def catalog_build(name: str, params: dict | None = None) -> CatalogEntry:
    if name not in _BUILDERS:
        raise UnknownEntry(
            f"unknown entry {name!r}; available: {', '.join(sorted(_BUILDERS))}")
    fn, schema = _BUILDERS[name]
    try:
        return fn(dict(params or {}))
    except BadParams as exc:
        raise BadParams(f"{name}: {exc}; schema: {schema}") from None
    except (TypeError, ValueError) as exc:
        raise BadParams(f"{name}: {exc}; schema: {schema}") from None
