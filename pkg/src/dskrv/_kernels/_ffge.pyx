# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled fraction-free row reduction; same contract as pure.py.

Rows hold arbitrary Python ints.  Row updates take a C int64 fast path
while every entry of both rows is comfortably small, and fall back to
object arithmetic (exact big integers) otherwise.
"""

IMPLEMENTATION = "cython"

DEF BOUND = 2147483648  # 2**31; products of two bounded entries fit in int64


cdef bint _row_small(list row, Py_ssize_t start, Py_ssize_t ncols):
    cdef Py_ssize_t j
    cdef long long a
    for j in range(start, ncols):
        try:
            a = row[j]
        except OverflowError:
            return False
        if a >= BOUND or a <= -BOUND:
            return False
    return True


cdef _update_obj(list row, list prow, object p, object v, object denom,
                 Py_ssize_t start, Py_ssize_t ncols):
    cdef Py_ssize_t j
    for j in range(start, ncols):
        q, r = divmod(p * row[j] - v * prow[j], denom)
        if r:
            raise ArithmeticError("fraction-free elimination lost exactness")
        row[j] = q


cdef _update_c(list row, list prow, long long p, long long v, long long denom,
               Py_ssize_t start, Py_ssize_t ncols):
    cdef Py_ssize_t j
    cdef long long a, b, t
    for j in range(start, ncols):
        a = row[j]
        b = prow[j]
        t = p * a - v * b
        if t % denom != 0:
            raise ArithmeticError("fraction-free elimination lost exactness")
        row[j] = t // denom


cdef _scale_obj(list row, object p, object denom, Py_ssize_t start, Py_ssize_t ncols):
    cdef Py_ssize_t j
    for j in range(start, ncols):
        if row[j] != 0:
            q, r = divmod(p * row[j], denom)
            if r:
                raise ArithmeticError("fraction-free elimination lost exactness")
            row[j] = q


cdef _scale_c(list row, long long p, long long denom, Py_ssize_t start, Py_ssize_t ncols):
    cdef Py_ssize_t j
    cdef long long a, t
    for j in range(start, ncols):
        a = row[j]
        if a != 0:
            t = p * a
            if t % denom != 0:
                raise ArithmeticError("fraction-free elimination lost exactness")
            row[j] = t // denom


def row_echelon(rows, ncols_in):
    """Reduce integer rows to echelon form; returns (pivot_rows, pivot_cols).

    Deterministic: columns left to right, first remaining row with a
    nonzero entry as pivot.  Input rows are not modified.
    """
    cdef Py_ssize_t ncols = ncols_in
    cdef list mat = [list(r) for r in rows]
    cdef Py_ssize_t nr = len(mat)
    cdef list pivots = []
    cdef Py_ssize_t piv = 0, col, i, sel
    cdef list prow, row
    cdef long long pc, vc, dc
    cdef bint pivot_small
    denom = 1
    for col in range(ncols):
        if piv >= nr:
            break
        sel = -1
        for i in range(piv, nr):
            if (<list>mat[i])[col] != 0:
                sel = i
                break
        if sel < 0:
            continue
        if sel != piv:
            mat[piv], mat[sel] = mat[sel], mat[piv]
        prow = <list>mat[piv]
        p = prow[col]
        pivot_small = False
        if -BOUND < denom < BOUND and -BOUND < p < BOUND:
            pivot_small = _row_small(prow, col, ncols)
        if pivot_small:
            pc = p
            dc = denom
        for i in range(piv + 1, nr):
            row = <list>mat[i]
            v = row[col]
            if v != 0:
                if pivot_small and -BOUND < v < BOUND and _row_small(row, col, ncols):
                    vc = v
                    _update_c(row, prow, pc, vc, dc, col, ncols)
                else:
                    _update_obj(row, prow, p, v, denom, col, ncols)
            elif p != denom:
                if pivot_small and _row_small(row, col + 1, ncols):
                    _scale_c(row, pc, dc, col + 1, ncols)
                else:
                    _scale_obj(row, p, denom, col + 1, ncols)
        denom = p
        pivots.append(col)
        piv += 1
    return mat[:piv], pivots
