"""Exact normal forms for integer matrices.

Everything here runs on plain Python ints, so ranks and torsion
coefficients stay exact no matter how the elementary operations grow
intermediate entries.  Matrices are sequences of row sequences; callers
pass the column count explicitly so empty matrices keep their shape.
"""

from __future__ import annotations


def _checked(rows, n_cols):
    a = [list(r) for r in rows]
    n = n_cols if n_cols is not None else (len(a[0]) if a else 0)
    for r in a:
        if len(r) != n:
            raise ValueError("ragged matrix")
    return a, n


def smith_diagonal(rows, n_cols: int | None = None) -> list[int]:
    """Nonnegative diagonal of the Smith normal form, divisibility-chained.

    Returns [d_1, d_2, ...] with d_1 | d_2 | ..., zeros trimmed, so the
    length is the rank of the matrix over the rationals.
    """
    a, n = _checked(rows, n_cols)
    m = len(a)
    diag = []
    t = 0
    while True:
        if not any(a[i][j] for i in range(t, m) for j in range(t, n)):
            break
        while True:
            # clean column t: bring a minimal entry to the pivot, reduce below
            while True:
                nz = [i for i in range(t, m) if a[i][t]]
                if not nz:
                    # pull some nonzero column into position t
                    j0 = next(j for j in range(t + 1, n)
                              if any(a[i][j] for i in range(t, m)))
                    for r in a:
                        r[t], r[j0] = r[j0], r[t]
                    continue
                imin = min(nz, key=lambda i: abs(a[i][t]))
                a[t], a[imin] = a[imin], a[t]
                clean = True
                for i in range(t + 1, m):
                    if a[i][t]:
                        q = a[i][t] // a[t][t]
                        for j in range(t, n):
                            a[i][j] -= q * a[t][j]
                        if a[i][t]:
                            clean = False
                if clean:
                    break
            # clean row t with column operations; swaps may dirty the column
            swapped = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(t, m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for r in a:
                            r[t], r[j] = r[j], r[t]
                        swapped = True
            if not swapped:
                break
        # the pivot must divide the remaining block; fold an offender in
        piv = a[t][t]
        offender = next((i for i in range(t + 1, m)
                         if any(a[i][j] % piv for j in range(t + 1, n))), None)
        if offender is not None:
            for j in range(t, n):
                a[t][j] += a[offender][j]
            continue
        diag.append(abs(piv))
        t += 1
    return diag


def integer_rank(rows, n_cols: int | None = None) -> int:
    return len(smith_diagonal(rows, n_cols))


def torsion_from_diagonal(diag) -> list[int]:
    """The entries > 1, i.e. orders of the finite cyclic summands."""
    return [d for d in diag if d > 1]


def hermite_rows(rows, n_cols: int) -> tuple[tuple[int, ...], ...]:
    """Row-style Hermite normal form of the lattice spanned by the rows.

    Output rows are in echelon order with positive pivots and the entries
    above each pivot reduced into [0, pivot); zero rows are dropped.  This
    is the unique canonical basis of the integer row span, so tuple
    equality of the results decides lattice equality.
    """
    a, n = _checked(rows, n_cols)
    a = [r for r in a if any(r)]
    pivots: list[list[int]] = []
    for col in range(n):
        live = [r for r in a if r[col]]
        if not live:
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            base = live[0]
            nxt = [base]
            for r in live[1:]:
                q = r[col] // base[col]
                for j in range(col, n):
                    r[j] -= q * base[j]
                if r[col]:
                    nxt.append(r)
            live = nxt
        base = live[0]
        if base[col] < 0:
            for j in range(col, n):
                base[j] = -base[j]
        pivots.append(base)
        a = [r for r in a if r is not base and any(r)]
    # Reduce above-pivot entries in increasing pivot order: clearing with a
    # lower pivot only dirties columns that a later, lower pivot still owns.
    for i, upper in enumerate(pivots):
        for row in pivots[i + 1 :]:
            pcol = next(j for j in range(n) if row[j])
            q = upper[pcol] // row[pcol]
            if q:
                for j in range(pcol, n):
                    upper[j] -= q * row[j]
    return tuple(tuple(r) for r in pivots)
