"""Integer row reduction, pure Python reference implementation.

The compiled twin in _rrefc.pyx implements the same algorithm with the
same pivot rule; both must produce bit-identical output.  All exact
linear algebra in the package (normal forms, filtration spans, lifting
systems) funnels through rref(), so this loop is the hot path.
"""

from math import gcd

# Pivot rule: at each column pick the unprocessed row whose entry there
# has the smallest absolute value (ties: lowest row index).  Keeps the
# integers small without changing the canonical output.


def _content(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return 1
    return g


def _make_primitive(row, sign_col):
    g = _content(row)
    if g == 0:
        return
    if row[sign_col] < 0:
        g = -g
    if g != 1:
        for j in range(len(row)):
            row[j] //= g


def rref(rows, ncols):
    """Reduce integer rows to the canonical echelon basis of their span.

    rows: iterable of int lists, each of length ncols (not mutated).
    Returns (basis, pivots): basis rows are primitive integer vectors
    with positive pivot entry and zeros in every other pivot column,
    ordered by pivot column.  This is the Q-RREF rescaled to primitive
    integers, so equal row spans over Q give identical output.
    """
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivots = []
    rank = 0
    for col in range(ncols):
        best = -1
        best_abs = 0
        for i in range(rank, nrows):
            v = mat[i][col]
            if v:
                a = -v if v < 0 else v
                if best < 0 or a < best_abs:
                    best = i
                    best_abs = a
        if best < 0:
            continue
        mat[rank], mat[best] = mat[best], mat[rank]
        piv = mat[rank]
        _make_primitive(piv, col)
        p = piv[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = mat[i]
            v = row[col]
            if not v:
                continue
            g = gcd(p, v)
            a = p // g
            b = v // g
            if a == 1:
                # rows below rank are zero left of col; pivot rows keep
                # their earlier entries untouched since piv is zero there
                for j in range(col, ncols):
                    row[j] -= b * piv[j]
            else:
                for j in range(col):
                    row[j] *= a
                for j in range(col, ncols):
                    row[j] = a * row[j] - b * piv[j]
            g2 = _content(row)
            if g2 > 1:
                for j in range(ncols):
                    row[j] //= g2
        pivots.append(col)
        rank += 1
        if rank == nrows:
            break
    basis = mat[:rank]
    for k in range(rank):
        _make_primitive(basis[k], pivots[k])
    return basis, pivots
