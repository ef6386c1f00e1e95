"""Exact integer linear algebra: Hermite and Smith normal forms.

Everything here works on small dense matrices given as lists of rows of
Python ints, so there is no overflow anywhere.  The Hermite normal form is
the canonical representative used for subgroup identity; the Smith normal
form (with column transforms) produces invariant-factor generators.
"""


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def row_hnf_with_transform(rows, ncols):
    """Row-style Hermite normal form with a unimodular row transform.

    Returns (hnf_rows, pivot_cols, transform) where transform * rows stacks
    hnf_rows on top of zero rows.  The form is canonical: pivots positive,
    entries above a pivot reduced into [0, pivot).
    """
    A = [list(r) for r in rows]
    m = len(A)
    for r in A:
        if len(r) != ncols:
            raise ValueError("row length mismatch")
    U = _identity(m)
    rank = 0
    for col in range(ncols):
        # Euclidean elimination below position `rank` in this column.
        while True:
            piv, pval = None, None
            for i in range(rank, m):
                v = A[i][col]
                if v and (pval is None or abs(v) < pval):
                    piv, pval = i, abs(v)
            if piv is None:
                break
            if piv != rank:
                A[rank], A[piv] = A[piv], A[rank]
                U[rank], U[piv] = U[piv], U[rank]
            done = True
            p = A[rank][col]
            for i in range(rank + 1, m):
                v = A[i][col]
                if v:
                    q = v // p
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[rank])]
                        U[i] = [a - q * b for a, b in zip(U[i], U[rank])]
                    if A[i][col]:
                        done = False
            if done:
                break
        if rank < m and A[rank][col]:
            if A[rank][col] < 0:
                A[rank] = [-a for a in A[rank]]
                U[rank] = [-a for a in U[rank]]
            p = A[rank][col]
            for i in range(rank):
                q = A[i][col] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[rank])]
                    U[i] = [a - q * b for a, b in zip(U[i], U[rank])]
            rank += 1
    pivots = []
    for i in range(rank):
        for j in range(ncols):
            if A[i][j]:
                pivots.append(j)
                break
    return A[:rank], pivots, U


def row_hnf(rows, ncols):
    """Canonical Hermite normal form; returns (hnf_rows, pivot_cols)."""
    hnf, pivots, _ = row_hnf_with_transform(rows, ncols)
    return hnf, pivots


def left_kernel(rows, ncols):
    """Basis of the integer left kernel: all u with u * rows == 0."""
    hnf, _, transform = row_hnf_with_transform(rows, ncols)
    return transform[len(hnf):]


def solve_in_rowspace(hnf_rows, pivot_cols, target):
    """Express `target` as an integer combination of HNF rows.

    Returns the coefficient list, or None when target is outside the
    lattice spanned by the rows.
    """
    v = list(target)
    coeffs = []
    for row, pc in zip(hnf_rows, pivot_cols):
        if v[pc] % row[pc] != 0:
            return None
        c = v[pc] // row[pc]
        if c:
            v = [a - c * b for a, b in zip(v, row)]
        coeffs.append(c)
    if any(v):
        return None
    return coeffs


def smith_normal_form(rows, ncols):
    """Smith normal form tracking only the column transform.

    Returns (diag, V, W) such that U * rows * V is diagonal with entries
    `diag` (each dividing the next, 1s included) for some unimodular U,
    with W = V^{-1}.  Row operations are untracked: only the column basis
    change matters for quotient-group generators.
    """
    A = [list(r) for r in rows]
    m, n = len(A), ncols
    V = _identity(n)
    W = _identity(n)

    def col_swap(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        W[i], W[j] = W[j], W[i]

    def col_addmul(dst, src, q):
        # column dst += q * column src;  W gets the inverse row operation.
        for row in A:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        W[src] = [a - q * b for a, b in zip(W[src], W[dst])]

    t = 0
    while True:
        # Smallest nonzero entry of the trailing submatrix becomes the pivot.
        pos, best = None, None
        for i in range(t, m):
            row = A[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    pos, best = (i, j), abs(v)
        if pos is None:
            break
        i, j = pos
        if i != t:
            A[t], A[i] = A[i], A[t]
        if j != t:
            col_swap(t, j)
        while True:
            # Clear column t below the pivot with row operations.
            for i in range(t + 1, m):
                while A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
            # Clear row t to the right with column operations.
            for j in range(t + 1, n):
                while A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        col_addmul(j, t, -q)
                    if A[t][j]:
                        col_swap(t, j)
            if all(A[i][t] == 0 for i in range(t + 1, m)):
                if all(A[t][j] == 0 for j in range(t + 1, n)):
                    break
        # Divisibility fix: pivot must divide every remaining entry.
        p = A[t][t]
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            A[t] = [a + b for a, b in zip(A[t], A[offender])]
            continue
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
        t += 1
    diag = [A[i][i] for i in range(t)]
    return diag, V, W


def mat_mul(A, B):
    """Product of two integer matrices (lists of rows)."""
    if not A:
        return []
    cols = len(B[0]) if B else 0
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] or [0] * cols
            for row in A]
