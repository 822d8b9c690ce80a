import random
from fractions import Fraction

import numpy as np

from lamcoh.exactla import (SignedIntMatrix, kernel_gf2, kernel_q, rank_gf2,
                            rank_q, solve_gf2, solve_q, span_completion_gf2,
                            span_completion_q)


def random_matrix(rng, nrows, ncols, density=0.5):
    entries = {}
    for r in range(nrows):
        for c in range(ncols):
            if rng.random() < density:
                entries[(r, c)] = rng.randint(-3, 3)
    return SignedIntMatrix(nrows, ncols, entries)


def test_rank_matches_numpy():
    rng = random.Random(0)
    for _ in range(40):
        m = random_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        assert rank_q(m.q_rows()) == np.linalg.matrix_rank(m.to_numpy())


def test_kernel_vectors_annihilate():
    rng = random.Random(1)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 8), rng.randint(1, 8)
        m = random_matrix(rng, nrows, ncols)
        basis = kernel_q(m.q_rows(), ncols)
        assert len(basis) == ncols - rank_q(m.q_rows())
        for v in basis:
            assert not any(m.apply(v, "q"))


def test_kernel_gf2_annihilates():
    rng = random.Random(2)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 10), rng.randint(1, 10)
        m = random_matrix(rng, nrows, ncols)
        basis = kernel_gf2(m.gf2_rows(), ncols)
        assert len(basis) == ncols - rank_gf2(m.gf2_rows())
        for v in basis:
            assert not any(m.apply(v, "z2"))


def test_solve_roundtrip():
    rng = random.Random(3)
    for _ in range(30):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 7)
        m = random_matrix(rng, nrows, ncols)
        x = [Fraction(rng.randint(-2, 2)) for _ in range(ncols)]
        rhs = m.apply(x, "q")
        sol = solve_q(m.q_rows(), ncols, rhs)
        assert sol is not None
        assert m.apply(sol, "q") == rhs


def test_solve_detects_inconsistency():
    rows = [{0: Fraction(1)}, {0: Fraction(1)}]
    assert solve_q(rows, 1, [Fraction(1), Fraction(2)]) is None
    assert solve_gf2([1, 1], 1, [1, 0]) is None


def test_span_completion_counts():
    rng = random.Random(4)
    for _ in range(30):
        ncols = rng.randint(2, 8)
        base = [[Fraction(rng.randint(-2, 2)) for _ in range(ncols)]
                for _ in range(rng.randint(0, 3))]
        cands = [[Fraction(rng.randint(-2, 2)) for _ in range(ncols)]
                 for _ in range(rng.randint(1, 4))]
        chosen = span_completion_q(base, cands, ncols)
        all_rank = rank_q([{i: v for i, v in enumerate(vec) if v}
                           for vec in base + cands])
        base_rank = rank_q([{i: v for i, v in enumerate(vec) if v}
                            for vec in base])
        assert len(chosen) == all_rank - base_rank


def test_span_completion_gf2_counts():
    rng = random.Random(5)
    for _ in range(30):
        ncols = rng.randint(2, 8)
        base = [[rng.randint(0, 1) for _ in range(ncols)]
                for _ in range(rng.randint(0, 3))]
        cands = [[rng.randint(0, 1) for _ in range(ncols)]
                 for _ in range(rng.randint(1, 4))]
        chosen = span_completion_gf2(base, cands, ncols)
        def mrank(vecs):
            masks = []
            for v in vecs:
                m = 0
                for i, x in enumerate(v):
                    if x % 2:
                        m |= 1 << i
                masks.append(m)
            return rank_gf2(masks)
        assert len(chosen) == mrank(base + cands) - mrank(base)


def test_matmul_and_transpose():
    a = SignedIntMatrix(2, 3, {(0, 0): 1, (0, 2): -1, (1, 1): 2})
    b = SignedIntMatrix(3, 2, {(0, 0): 1, (2, 0): 1, (1, 1): -1})
    c = a.matmul(b)
    assert c.entries == {(1, 1): -2}
    assert a.transpose().entries == {(0, 0): 1, (2, 0): -1, (1, 1): 2}
