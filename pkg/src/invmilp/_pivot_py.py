"""Pure-Python fraction-free tableau kernels.

The tableau is a list of integer rows sharing one positive denominator
``det``; entry ``rows[i][j] / det`` is the rational tableau value. Rows
``0..m-1`` are constraint rows, any further rows are objective rows, and
the last column of every row is the right-hand side.
"""


def pivot(rows, r, s, det):
    """Exchange the basic variable of row ``r`` with nonbasic column ``s``.

    Updates ``rows`` in place and returns the new common denominator.
    All divisions are exact (entries stay subdeterminants of the
    initial integer tableau).
    """
    prow = rows[r]
    p = prow[s]
    for i in range(len(rows)):
        if i == r:
            continue
        row = rows[i]
        f = row[s]
        if f:
            new = [(a * p - f * b) // det for a, b in zip(row, prow)]
        elif p != det:
            new = [a * p // det for a in row]
        else:
            new = row
        new[s] = -f
        rows[i] = new
    prow[s] = det
    if p < 0:
        for i in range(len(rows)):
            rows[i] = [-a for a in rows[i]]
        return -p
    return p


def ratio_test(rows, m, s, basis):
    """Bland ratio test on column ``s`` over the first ``m`` rows.

    Returns the row index minimising rhs/entry among positive entries,
    ties broken by the smallest basic variable index, or -1 when the
    column has no positive entry.
    """
    best = -1
    bnum = bden = 0
    for i in range(m):
        row = rows[i]
        a = row[s]
        if a > 0:
            q = row[-1]
            if best < 0:
                best, bnum, bden = i, q, a
                continue
            lhs = q * bden
            rhs = bnum * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[best]):
                best, bnum, bden = i, q, a
    return best
