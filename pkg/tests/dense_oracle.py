"""Textbook dense Gaussian elimination over Fraction, kept deliberately
independent of the package's sparse elimination so the two can check each
other."""

from fractions import Fraction


def dense_rank(rows):
    m = [[Fraction(v) for v in row] for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank = 0
    pivot_row = 0
    for col in range(ncols):
        chosen = None
        for r in range(pivot_row, nrows):
            if m[r][col] != 0:
                chosen = r
                break
        if chosen is None:
            continue
        m[pivot_row], m[chosen] = m[chosen], m[pivot_row]
        pv = m[pivot_row][col]
        for r in range(pivot_row + 1, nrows):
            if m[r][col] == 0:
                continue
            f = m[r][col] / pv
            for c in range(col, ncols):
                m[r][c] -= f * m[pivot_row][c]
        pivot_row += 1
        rank += 1
        if pivot_row == nrows:
            break
    return rank


def dense_kernel_dim(rows, ncols):
    return ncols - dense_rank(rows)
