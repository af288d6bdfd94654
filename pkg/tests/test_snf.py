import random
from math import prod

import pytest

from qcat.snf import (
    hermite_rows,
    integer_rank,
    smith_diagonal,
    torsion_from_diagonal,
)

sympy = pytest.importorskip("sympy")


def sympy_smith(rows, n_cols):
    from sympy.matrices.normalforms import smith_normal_form

    m = sympy.Matrix(len(rows), n_cols, [x for r in rows for x in r])
    d = smith_normal_form(m)
    out = [abs(int(d[i, i])) for i in range(min(d.rows, d.cols))]
    return [x for x in out if x]


def test_smith_known_values():
    assert smith_diagonal([[2, 0], [0, 3]], 2) == [1, 6]
    assert smith_diagonal([[2, 4, 4], [-6, 6, 12], [10, -4, -16]], 3) == [2, 6, 12]
    assert smith_diagonal([], 3) == []
    assert smith_diagonal([[0, 0], [0, 0]], 2) == []


def test_smith_classic_divisibility_example():
    d = smith_diagonal([[12, 6, 4], [3, 9, 6], [2, 16, 14]], 3)
    nonzero = [x for x in d if x]
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0


def test_smith_matches_sympy_on_random_matrices():
    rng = random.Random(20260816)
    for _ in range(150):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        assert smith_diagonal(rows, n) == sympy_smith(rows, n), rows


def test_torsion_and_rank_helpers():
    d = smith_diagonal([[2, 0, 0], [0, 6, 0]], 3)
    assert torsion_from_diagonal(d) == [2, 6]
    assert integer_rank([[1, 2], [2, 4]], 2) == 1
    assert integer_rank([[1, 0], [0, 1]], 2) == 2


def test_hermite_known_value():
    h = hermite_rows([[3, -5, 3], [-4, -3, -4], [6, 1, -1]], 3)
    assert h == ((1, 0, 43), (0, 1, 147), (0, 0, 203))


def test_hermite_structure_and_lattice_invariance():
    # The output must be a canonical basis: unchanged under any
    # lattice-preserving shuffle of the generating rows.
    rng = random.Random(99)
    for _ in range(300):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        rows = [[rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)]
        h = hermite_rows(rows, n)

        rows2 = [list(r) for r in rows]
        rng.shuffle(rows2)
        for _ in range(6):
            i = rng.randrange(m)
            j = rng.randrange(m)
            if i == j:
                rows2[i] = [-x for x in rows2[i]]
            else:
                c = rng.randrange(-3, 4)
                rows2[i] = [a + c * b for a, b in zip(rows2[i], rows2[j])]
        assert hermite_rows(rows2, n) == h, (rows, rows2)

        pcols = [next(k for k in range(n) if r[k]) for r in h]
        assert pcols == sorted(pcols)
        assert len(set(pcols)) == len(pcols)
        for r, pc in zip(h, pcols):
            assert r[pc] > 0
            assert all(r[k] == 0 for k in range(pc))
        for lower, pc in enumerate(pcols):
            for upper in range(lower):
                assert 0 <= h[upper][pc] < h[lower][pc]


def test_hermite_pivot_product_matches_smith_in_full_rank_square_case():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randrange(1, 4)
        rows = [[rng.randrange(-6, 7) for _ in range(n)] for _ in range(n)]
        d = [x for x in smith_diagonal(rows, n) if x]
        h = hermite_rows(rows, n)
        if len(d) < n:
            continue
        pivs = [r[next(k for k in range(n) if r[k])] for r in h]
        assert prod(pivs) == prod(d)


def test_hermite_rejects_ragged_input():
    with pytest.raises(ValueError):
        hermite_rows([[1, 2], [3]], 2)
