"""Exact dense linear algebra over a field (lists of rows)."""

from __future__ import annotations


def rref(K, rows, ncols=None):
    """Reduced row echelon form.

    Returns ``(R, pivots)`` where ``R`` holds only the nonzero rows.  Pivot
    search is deterministic: leftmost column first, then topmost row.
    """
    A = [list(r) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    z = K.zero
    pivots = []
    r = 0
    nrows = len(A)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if A[i][c] != z), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = K.inv(A[r][c])
        if inv != K.one:
            A[r] = [K.mul(inv, v) for v in A[r]]
        pr = A[r]
        for i in range(nrows):
            if i != r:
                f = A[i][c]
                if f != z:
                    row = A[i]
                    A[i] = [K.sub(a, K.mul(f, b)) if b != z else a for a, b in zip(row, pr)]
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(K, rows, ncols=None):
    return len(rref(K, rows, ncols)[1])


def transpose(rows, ncols=None):
    if not rows:
        return [[] for _ in range(ncols or 0)]
    return [list(c) for c in zip(*rows)]


def nullspace(K, rows, ncols):
    """Basis of ``{v : rows * v = 0}``, itself in reduced row echelon form."""
    R, piv = rref(K, rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [K.zero] * ncols
        v[f] = K.one
        for i, pc in enumerate(piv):
            v[pc] = K.neg(R[i][f])
        basis.append(v)
    return rref(K, basis, ncols)[0]


def left_nullspace(K, rows, nrows, ncols):
    """Reduced echelon basis of ``{u : u * rows = 0}`` (``u`` of length ``nrows``)."""
    if ncols == 0:
        return [[K.one if i == j else K.zero for j in range(nrows)] for i in range(nrows)]
    return nullspace(K, transpose(rows), nrows)


def row_space(K, rows, ncols):
    return rref(K, rows, ncols)[0]


def matmul(K, A, B):
    n = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [K.zero] * n
        for a, brow in zip(row, B):
            if a != K.zero:
                acc = [K.add(x, K.mul(a, b)) for x, b in zip(acc, brow)]
        out.append(acc)
    return out


def vecmat(K, v, M, ncols):
    acc = [K.zero] * ncols
    for a, row in zip(v, M):
        if a != K.zero:
            acc = [K.add(x, K.mul(a, b)) for x, b in zip(acc, row)]
    return acc


def solve(K, A, b):
    """One solution of ``A x = b`` or ``None`` if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [v] for r, v in zip(A, b)]
    R, piv = rref(K, aug, n + 1)
    if n in piv:
        return None
    x = [K.zero] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return x


def inverse(K, A):
    n = len(A)
    aug = [list(r) + [K.one if i == j else K.zero for j in range(n)] for i, r in enumerate(A)]
    R, piv = rref(K, aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n or piv[n - 1] != n - 1:
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in R]


def determinant(K, A):
    n = len(A)
    M = [list(r) for r in A]
    det = K.one
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != K.zero), None)
        if piv is None:
            return K.zero
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = K.neg(det)
        det = K.mul(det, M[c][c])
        inv = K.inv(M[c][c])
        for i in range(c + 1, n):
            f = K.mul(M[i][c], inv)
            if f != K.zero:
                M[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(M[i], M[c])]
    return det


def same_row_space(K, A, B, ncols):
    return rref(K, A, ncols)[0] == rref(K, B, ncols)[0]
