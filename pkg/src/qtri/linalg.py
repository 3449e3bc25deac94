"""Exact linear algebra over the scalar tower (reduced row echelon form,
rank, kernel bases, span membership) plus Smith normal form over the
integers for subgroup-index computations."""

from __future__ import annotations

from .scalars import FieldSpec


def rref(field: FieldSpec, rows, ncols):
    """Reduced row echelon form with pivots in natural column order.

    Returns (reduced_rows, pivot_columns); reduced_rows has one row per
    pivot, each with a leading 1 in its pivot column."""
    work = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(work)) if not work[i][c].is_zero()),
                  None)
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = work[r][c].inv()
        work[r] = [x * inv for x in work[r]]
        lead = work[r]
        for i in range(len(work)):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], lead)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank(field: FieldSpec, rows, ncols) -> int:
    return len(rref(field, rows, ncols)[1])


def kernel_basis(field: FieldSpec, rows, ncols):
    """Basis of the right kernel {v : M v = 0}, one vector per free column:
    the free column carries 1, pivot columns carry the negated reduced
    entries.  Deterministic given the column order."""
    red, pivots = rref(field, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for r, pc in enumerate(pivots):
            v[pc] = -red[r][free]
        basis.append(v)
    return basis


def reduce_vector(field: FieldSpec, red, pivots, v):
    """Residual of v after elimination against an RREF basis (a copy)."""
    v = list(v)
    for r, pc in enumerate(pivots):
        f = v[pc]
        if not f.is_zero():
            v = [a - f * b for a, b in zip(v, red[r])]
    return v


def in_span(field: FieldSpec, red, pivots, v) -> bool:
    return all(x.is_zero() for x in reduce_vector(field, red, pivots, v))


def matmul(field: FieldSpec, a, b):
    nr = len(a)
    inner = len(b)
    nc = len(b[0]) if inner else 0
    out = [[field.zero] * nc for _ in range(nr)]
    for i in range(nr):
        arow = a[i]
        orow = out[i]
        for k in range(inner):
            f = arow[k]
            if f.is_zero():
                continue
            brow = b[k]
            for j in range(nc):
                if not brow[j].is_zero():
                    orow[j] = orow[j] + f * brow[j]
    return out


def matvec(field: FieldSpec, rows, v):
    out = []
    for row in rows:
        acc = field.zero
        for a, b in zip(row, v):
            if not a.is_zero() and not b.is_zero():
                acc = acc + a * b
        out.append(acc)
    return out


# ---- integer Smith normal form ------------------------------------------


def smith_normal_form(mat):
    """Invariant factors d_1 | d_2 | ... of an integer matrix (nonnegative,
    padded with zeros up to min(rows, cols))."""
    m = [list(map(int, row)) for row in mat]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        # find a nonzero pivot with smallest absolute value
        best = None
        for i in range(t, nr):
            for j in range(t, nc):
                if m[i][j] and (best is None
                                or abs(m[i][j]) < abs(m[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        m[t], m[bi] = m[bi], m[t]
        for row in m:
            row[t], row[bj] = row[bj], row[t]
        # clear row and column t by repeated remainder steps
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nr):
                if m[i][t]:
                    qq = m[i][t] // m[t][t]
                    for j in range(t, nc):
                        m[i][j] -= qq * m[t][j]
                    if m[i][t]:
                        m[t], m[i] = m[i], m[t]
                        dirty = True
            for j in range(t + 1, nc):
                if m[t][j]:
                    qq = m[t][j] // m[t][t]
                    for i in range(t, nr):
                        m[i][j] -= qq * m[i][t]
                    if m[t][j]:
                        for i in range(t, nr):
                            m[i][t], m[i][j] = m[i][j], m[i][t]
                        dirty = True
        # enforce divisibility d_t | every remaining entry
        p = abs(m[t][t])
        fixed = False
        for i in range(t + 1, nr):
            for j in range(t + 1, nc):
                if m[i][j] % p:
                    for jj in range(t, nc):
                        m[t][jj] += m[i][jj]
                    fixed = True
                    break
            if fixed:
                break
        if fixed:
            continue
        diag.append(p)
        t += 1
    while len(diag) < min(nr, nc):
        diag.append(0)
    return diag
