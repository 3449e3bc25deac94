"""The symmetrizer engine.

Tensor powers of a diagonally braided vector space split into content blocks
(words with a fixed multiset of letters).  On each block the braid group
acts by monomial matrices; the degree-d quantum symmetrizer is the sum of
the lifts of all d! permutations along reduced words.  Its kernel is the
degree-d piece of the maximal ideal defining the Nichols algebra: kernel
bases are relation candidates, ranks are Hilbert-series dimensions.

Letters are 0-based integers in Python APIs; slots (tensor positions) are
1-based.  Environment variable QTRI_WORKERS > 1 enables process-parallel
block computation with a deterministic merge.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

from .scalars import FieldSpec, Scalar
from .braiding import DiagonalBraiding, CartanData
from .linalg import rref, kernel_basis, reduce_vector


class SlotOutOfRange(Exception):
    """Braid generator index outside 1..len(word)-1."""


class SameIndex(Exception):
    """A Serre element needs two distinct letters."""


# ---- words, contents, blocks ---------------------------------------------


def content_of(word, n: int) -> tuple:
    gamma = [0] * n
    for letter in word:
        gamma[letter] += 1
    return tuple(gamma)


def contents_of_degree(n: int, d: int):
    """All content vectors of length n summing to d, in lexicographic order."""
    if n == 1:
        yield (d,)
        return
    for first in range(d + 1):
        for rest in contents_of_degree(n - 1, d - first):
            yield (first,) + rest


def words_of_content(content) -> tuple:
    """All distinct words with the given letter multiplicities, in
    lexicographic order."""
    total = sum(content)
    out = []

    def rec(prefix, remaining):
        if len(prefix) == total:
            out.append(tuple(prefix))
            return
        for letter, cnt in enumerate(remaining):
            if cnt:
                remaining[letter] -= 1
                prefix.append(letter)
                rec(prefix, remaining)
                prefix.pop()
                remaining[letter] += 1

    rec([], list(content))
    return tuple(out)


class ContentBlock:
    def __init__(self, content):
        self.content = tuple(content)
        self.degree = sum(self.content)
        self.words = words_of_content(self.content)
        self.index = {w: i for i, w in enumerate(self.words)}

    def __len__(self):
        return len(self.words)

    def __repr__(self):
        return f"ContentBlock(content={self.content}, size={len(self.words)})"


class TensorVector:
    """Sparse element of one content block of a tensor power: word -> Scalar,
    zero coefficients dropped, all words sharing one content."""

    def __init__(self, field: FieldSpec, n: int, terms):
        clean = {}
        content = None
        for word, coeff in dict(terms).items():
            word = tuple(word)
            if coeff.is_zero():
                continue
            c = content_of(word, n)
            if content is None:
                content = c
            elif c != content:
                raise ValueError(
                    f"mixed contents {content} and {c} in one tensor vector")
            clean[word] = coeff
        self.field = field
        self.n = n
        self.terms = clean
        self.content = content  # None for the zero vector

    def is_zero(self):
        return not self.terms

    @property
    def degree(self):
        return sum(self.content) if self.content else 0

    def scale(self, c: Scalar) -> "TensorVector":
        return TensorVector(self.field, self.n,
                            {w: c * x for w, x in self.terms.items()})

    def add(self, other: "TensorVector") -> "TensorVector":
        acc = dict(self.terms)
        for w, x in other.terms.items():
            y = acc.get(w)
            acc[w] = x if y is None else y + x
        return TensorVector(self.field, self.n, acc)

    def concat_letter(self, letter: int, left: bool) -> "TensorVector":
        if left:
            terms = {(letter,) + w: c for w, c in self.terms.items()}
        else:
            terms = {w + (letter,): c for w, c in self.terms.items()}
        return TensorVector(self.field, self.n, terms)

    def sorted_terms(self):
        return sorted(self.terms.items())

    def __eq__(self, other):
        return (isinstance(other, TensorVector) and self.field == other.field
                and self.n == other.n and self.terms == other.terms)

    def __repr__(self):
        if not self.terms:
            return "TensorVector(0)"
        bits = [f"{c} * x{'·x'.join(str(l + 1) for l in w)}"
                for w, c in self.sorted_terms()]
        return "TensorVector(" + " + ".join(bits) + ")"


def letter_vector(b: DiagonalBraiding, i: int) -> TensorVector:
    return TensorVector(b.field, b.n, {(i,): b.field.one})


# ---- braid group action ---------------------------------------------------


def braid_generator_action(b: DiagonalBraiding, i: int, w):
    """Apply the i-th braid generator (1-based slot) to a word: swap slots
    i, i+1 and emit the scalar q[a][c] for the letters a, c being swapped."""
    w = tuple(w)
    if not 1 <= i < len(w):
        raise SlotOutOfRange(f"slot {i} not in 1..{len(w) - 1}")
    a, c = w[i - 1], w[i]
    swapped = w[:i - 1] + (c, a) + w[i + 1:]
    return swapped, b.q[a][c]


@lru_cache(maxsize=None)
def _sd_bfs(d: int):
    """BFS of the symmetric group S_d along the weak order.

    Returns a list of (perm, parent_index, slot) in visit order; entry 0 is
    the identity with parent -1.  perm[k] < perm[k+1] iff appending s_{k+1}
    increases length, which drives the reduced-word tree."""
    ident = tuple(range(d))
    order = [(ident, -1, 0)]
    seen = {ident: 0}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            pi = seen[p]
            for slot in range(1, d):
                if p[slot - 1] < p[slot]:
                    p2 = p[:slot - 1] + (p[slot], p[slot - 1]) + p[slot + 1:]
                    if p2 not in seen:
                        seen[p2] = len(order)
                        order.append((p2, pi, slot))
                        nxt.append(p2)
        frontier = nxt
    return order


def _psi_map(b: DiagonalBraiding, block: ContentBlock, slot: int):
    """Monomial map of the braid generator at a slot on a block:
    parallel arrays (image index, coefficient)."""
    img = []
    coeff = []
    for w in block.words:
        w2, c = braid_generator_action(b, slot, w)
        img.append(block.index[w2])
        coeff.append(c)
    return img, coeff


def _compose_after(parent, psi):
    """Monomial map 'apply psi, then parent'."""
    pimg, pcoe = parent
    simg, scoe = psi
    img = [pimg[k] for k in simg]
    coeff = [scoe[u] * pcoe[simg[u]] for u in range(len(simg))]
    return img, coeff


def _block_lifts(b: DiagonalBraiding, block: ContentBlock):
    """All braid lifts T_w on a block, indexed like _sd_bfs(degree)."""
    d = block.degree
    size = len(block)
    psis = {slot: _psi_map(b, block, slot) for slot in range(1, d)}
    ident = (list(range(size)), [b.field.one] * size)
    maps = [ident]
    for perm, parent, slot in _sd_bfs(d)[1:]:
        maps.append(_compose_after(maps[parent], psis[slot]))
    return maps


def braid_lift(b: DiagonalBraiding, perm, block: ContentBlock):
    """Matrix (rows over the block basis) of the lift of a permutation,
    computed along a reduced word; well defined by the braid relations."""
    perm = tuple(perm)
    d = block.degree
    order = _sd_bfs(d)
    maps = _block_lifts(b, block)
    for (p, _, _), m in zip(order, maps):
        if p == perm:
            return _map_to_matrix(b.field, m, len(block))
    raise ValueError(f"{perm} is not a permutation of 0..{d - 1}")


def _map_to_matrix(field: FieldSpec, m, size: int):
    img, coeff = m
    rows = [[field.zero] * size for _ in range(size)]
    for u in range(size):
        rows[img[u]][u] = coeff[u]
    return rows


def woronowicz_symmetrizer(b: DiagonalBraiding, block: ContentBlock):
    """Sum of all braid lifts of S_d on the block: the degree-d quantum
    symmetrizer, whose kernel is the relation space of this content."""
    size = len(block)
    rows = [[b.field.zero] * size for _ in range(size)]
    for img, coeff in _block_lifts(b, block):
        for u in range(size):
            r = img[u]
            rows[r][u] = rows[r][u] + coeff[u]
    return rows


# ---- relations, dimensions ------------------------------------------------


def _block_kernel(b: DiagonalBraiding, block: ContentBlock):
    """(rank, kernel basis vectors) of the symmetrizer on one block."""
    wor = woronowicz_symmetrizer(b, block)
    basis = kernel_basis(b.field, wor, len(block))
    return len(block) - len(basis), basis


def _degree_blocks(n: int, d: int):
    return [ContentBlock(c) for c in contents_of_degree(n, d)]


def _worker_count():
    try:
        w = int(os.environ.get("QTRI_WORKERS", "1"))
    except ValueError:
        return 1
    return max(w, 1)


def _block_job(args):
    b, content = args
    block = ContentBlock(content)
    rank_, basis = _block_kernel(b, block)
    return content, rank_, basis


def _kernels_by_content(b: DiagonalBraiding, d: int):
    """[(content, block, rank, kernel basis)] for every block of degree d,
    merged in content order regardless of scheduling."""
    blocks = _degree_blocks(b.n, d)
    workers = _worker_count()
    if workers > 1 and len(blocks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_block_job,
                                    [(b, blk.content) for blk in blocks]))
        results.sort(key=lambda r: r[0])
        return [(content, ContentBlock(content), rank_, basis)
                for content, rank_, basis in results]
    out = []
    for blk in blocks:
        rank_, basis = _block_kernel(b, blk)
        out.append((blk.content, blk, rank_, basis))
    return out


def nichols_relations(b: DiagonalBraiding, d: int) -> list:
    """Deterministic kernel basis of the degree-d symmetrizer, as
    TensorVectors, ordered by content then by basis position."""
    if d < 2:
        raise ValueError("relations start at degree 2")
    rels = []
    for _, block, _, basis in _kernels_by_content(b, d):
        for vec in basis:
            rels.append(TensorVector(
                b.field, b.n,
                {block.words[k]: c for k, c in enumerate(vec)}))
    return rels


def hilbert_dims(b: DiagonalBraiding, D: int) -> list:
    """Dimensions of the symmetrizer images for degrees 0..D (the graded
    dimensions of the quotient algebra through degree D)."""
    if D < 0:
        raise ValueError("max degree must be >= 0")
    dims = [1]
    if D >= 1:
        dims.append(b.n)
    for d in range(2, D + 1):
        dims.append(sum(rank_ for _, _, rank_, _ in _kernels_by_content(b, d)))
    return dims


# ---- adjoints and Serre elements ------------------------------------------


def braided_adjoint(b: DiagonalBraiding, i: int, u: TensorVector) -> TensorVector:
    """x_i * u - (prod_j q_ij^{gamma_j}) * u * x_i for u homogeneous of
    content gamma."""
    if u.is_zero():
        return u
    gamma = u.content
    factor = b.field.one
    for j, e in enumerate(gamma):
        if e:
            factor = factor * b.q[i][j] ** e
    left = u.concat_letter(i, left=True)
    right = u.concat_letter(i, left=False).scale(-factor)
    return left.add(right)


def serre_element(b: DiagonalBraiding, cartan: CartanData, i: int, j: int) -> TensorVector:
    """braided_adjoint applied (1 - a_ij) times to x_j."""
    if i == j:
        raise SameIndex("Serre elements need distinct letters")
    u = letter_vector(b, j)
    for _ in range(1 - cartan.a[i][j]):
        u = braided_adjoint(b, i, u)
    return u


# ---- ideal vs kernel comparison -------------------------------------------


@dataclass
class IdealDegreeReport:
    degree: int
    verdict: str  # equal | ideal < kernel | kernel < ideal | incomparable
    ideal_rank: int
    kernel_rank: int
    union_rank: int
    certificate: TensorVector | None = None


@dataclass
class IdealComparisonReport:
    max_degree: int
    per_degree: dict  # degree -> IdealDegreeReport
    overall: str

    def is_equal(self):
        return self.overall == "equal"


def _all_words(n: int, length: int):
    if length == 0:
        yield ()
        return
    for w in _all_words(n, length - 1):
        for letter in range(n):
            yield w + (letter,)


def verify_ideal_equality(b: DiagonalBraiding, gens, D: int) -> IdealComparisonReport:
    """Compare the two-sided span of the generators with the symmetrizer
    kernels degree by degree (2..D), reporting exact ranks and a certificate
    element exhibiting any strict difference."""
    n = b.n
    field = b.field
    gens = [g for g in gens if not g.is_zero()]
    for g in gens:
        if g.degree < 2:
            raise ValueError("generators must have degree >= 2")
    per_degree = {}
    for d in range(2, D + 1):
        # ideal layer: x_u * g * x_w grouped by content
        by_content = {}
        for g in gens:
            e = g.degree
            if e > d:
                continue
            for p in range(d - e + 1):
                for u in _all_words(n, p):
                    for w in _all_words(n, d - e - p):
                        terms = {u + t + w: c for t, c in g.terms.items()}
                        tv = TensorVector(field, n, terms)
                        by_content.setdefault(tv.content, []).append(tv)
        i_rank = k_rank = u_rank = 0
        verdict_ik = True  # ideal subset of kernel
        verdict_ki = True  # kernel subset of ideal
        cert_ik = None  # ideal element outside the kernel
        cert_ki = None  # kernel element outside the ideal
        for content, block, rk, kbasis in _kernels_by_content(b, d):
            ideal_vecs = [[tv.terms.get(w, field.zero) for w in block.words]
                          for tv in by_content.get(content, [])]
            kdim = len(kbasis)
            red_i, piv_i = rref(field, ideal_vecs, len(block))
            red_k, piv_k = rref(field, kbasis, len(block))
            r_i, r_k = len(piv_i), len(piv_k)
            red_u, piv_u = rref(field, red_i + red_k, len(block))
            r_u = len(piv_u)
            i_rank += r_i
            k_rank += r_k
            u_rank += r_u
            if r_u != r_k:
                verdict_ik = False
                if cert_ik is None:
                    for vec in ideal_vecs:
                        res = reduce_vector(field, red_k, piv_k, vec)
                        if any(not x.is_zero() for x in res):
                            cert_ik = TensorVector(
                                field, n,
                                {block.words[k]: c for k, c in enumerate(vec)})
                            break
            if r_u != r_i:
                verdict_ki = False
                if cert_ki is None:
                    for vec in kbasis:
                        res = reduce_vector(field, red_i, piv_i, vec)
                        if any(not x.is_zero() for x in res):
                            cert_ki = TensorVector(
                                field, n,
                                {block.words[k]: c for k, c in enumerate(vec)})
                            break
        if verdict_ik and verdict_ki:
            verdict, cert = "equal", None
        elif verdict_ik:
            verdict, cert = "ideal < kernel", cert_ki
        elif verdict_ki:
            verdict, cert = "kernel < ideal", cert_ik
        else:
            verdict, cert = "incomparable", cert_ik or cert_ki
        per_degree[d] = IdealDegreeReport(
            degree=d, verdict=verdict, ideal_rank=i_rank,
            kernel_rank=k_rank, union_rank=u_rank, certificate=cert)
    overall = ("equal" if all(r.verdict == "equal"
                              for r in per_degree.values()) else "different")
    return IdealComparisonReport(max_degree=D, per_degree=per_degree,
                                 overall=overall)


def kernel_dims_by_degree(b: DiagonalBraiding, D: int) -> list:
    """Total kernel dimension per degree 0..D (0, 0 for degrees 0, 1)."""
    out = [0, 0][: max(D + 1, 0)]
    for d in range(2, D + 1):
        out.append(sum(len(basis)
                       for _, _, _, basis in _kernels_by_content(b, d)))
    return out
