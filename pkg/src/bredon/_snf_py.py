"""Reference Smith normal form kernel on Python integers.

Operates on a list of rows and returns ``(D, U, V)`` with ``U @ A @ V == D``.
``U`` and ``V`` are ``None`` unless requested.  Pivots are chosen with minimal
absolute value and quotients are rounded to the nearest integer, which keeps
intermediate entries small in practice.
"""

from __future__ import annotations


def _eye(k: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(k)] for i in range(k)]


def _nearest_quotient(v: int, p: int) -> int:
    q = v // p
    if 2 * abs(v - q * p) > abs(p):
        q += 1
    return q


def smith(rows: list[list[int]], ncols: int, want_u: bool = False, want_v: bool = False):
    nrows = len(rows)
    a = [list(r) for r in rows]
    u = _eye(nrows) if want_u else None
    v = _eye(ncols) if want_v else None
    lim = min(nrows, ncols)
    t = 0
    while t < lim:
        best = 0
        bi = bj = -1
        for i in range(t, nrows):
            row = a[i]
            for j in range(t, ncols):
                x = row[j]
                if x:
                    ax = x if x > 0 else -x
                    if bi < 0 or ax < best:
                        best, bi, bj = ax, i, j
                        if ax == 1:
                            break
            if best == 1 and bi >= 0:
                break
        if bi < 0:
            break
        _swap_rows(a, u, t, bi)
        _swap_cols(a, v, t, bj)
        while True:
            p = a[t][t]
            rt = a[t]
            dirty = False
            for i in range(t + 1, nrows):
                x = a[i][t]
                if x:
                    q = _nearest_quotient(x, p)
                    if q:
                        ri = a[i]
                        for j in range(t, ncols):
                            if rt[j]:
                                ri[j] -= q * rt[j]
                        if u is not None:
                            ui, ut = u[i], u[t]
                            for j in range(nrows):
                                if ut[j]:
                                    ui[j] -= q * ut[j]
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, ncols):
                x = rt[j]
                if x:
                    q = _nearest_quotient(x, p)
                    if q:
                        for i in range(t, nrows):
                            y = a[i][t]
                            if y:
                                a[i][j] -= q * y
                        if v is not None:
                            for r in v:
                                if r[t]:
                                    r[j] -= q * r[t]
                    if rt[j]:
                        dirty = True
            if dirty:
                best = abs(p)
                bi, bj = t, t
                for i in range(t + 1, nrows):
                    x = a[i][t]
                    if x and abs(x) < best:
                        best, bi, bj = abs(x), i, t
                for j in range(t + 1, ncols):
                    x = rt[j]
                    if x and abs(x) < best:
                        best, bi, bj = abs(x), t, j
                _swap_rows(a, u, t, bi)
                _swap_cols(a, v, t, bj)
                continue
            # pivot row and column are clear; enforce divisibility of the rest
            bad = -1
            for i in range(t + 1, nrows):
                ri = a[i]
                for j in range(t + 1, ncols):
                    if ri[j] % p:
                        bad = i
                        break
                if bad >= 0:
                    break
            if bad < 0:
                break
            rb = a[bad]
            for j in range(t, ncols):
                rt[j] += rb[j]
            if u is not None:
                ut, ub = u[t], u[bad]
                for j in range(nrows):
                    ut[j] += ub[j]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if u is not None:
                u[t] = [-x for x in u[t]]
        t += 1
    return a, u, v


def _swap_rows(a, u, i, j):
    if i != j:
        a[i], a[j] = a[j], a[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]


def _swap_cols(a, v, i, j):
    if i != j:
        for r in a:
            r[i], r[j] = r[j], r[i]
        if v is not None:
            for r in v:
                r[i], r[j] = r[j], r[i]
