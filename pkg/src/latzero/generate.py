"""Seeded random instance generators shared by ``verify``, ``bench`` and the tests."""
from __future__ import annotations

import random

from .intmat import IntMatrix, det_exact
from .lattice import Lattice, SublatticeSystem
from .quadratic import QuadraticPolynomial, is_regular


def random_unimodular(rng: random.Random, k: int, steps: int = 6, spread: int = 2) -> IntMatrix:
    rows = [[int(i == j) for j in range(k)] for i in range(k)]
    if k == 1:
        return IntMatrix([[rng.choice((1, -1))]])
    for _ in range(steps):
        i, j = rng.sample(range(k), 2)
        c = rng.randint(-spread, spread)
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    rng.shuffle(rows)
    return IntMatrix(rows)


def random_relation(rng: random.Random, k: int, max_index: int, min_index: int = 2) -> IntMatrix:
    """Random lower-triangular normal-form matrix with determinant in [min_index, max_index]."""
    while True:
        diag = [1] * k
        target = rng.randint(min_index, max_index)
        rest = target
        for i in rng.sample(range(k), k):
            divs = [d for d in range(1, rest + 1) if rest % d == 0]
            diag[i] = rng.choice(divs)
            rest //= diag[i]
        diag[rng.randrange(k)] *= rest
        rows = [[0] * k for _ in range(k)]
        for i in range(k):
            rows[i][i] = diag[i]
            for j in range(i):
                rows[i][j] = rng.randrange(diag[j])
        m = IntMatrix(rows)
        if min_index <= det_exact(m) <= max_index:
            return m


def random_sublattice(rng: random.Random, k: int, max_index: int, min_index: int = 2) -> IntMatrix:
    """Scrambled generator rows of a random sublattice with index in [min_index, max_index]."""
    return random_unimodular(rng, k) @ random_relation(rng, k, max_index, min_index)


def random_lattice(rng: random.Random, n: int, k: int, bound: int = 2) -> Lattice:
    while True:
        cols = [[rng.randint(-bound, bound) for _ in range(n)] for _ in range(k)]
        b = IntMatrix.from_columns(cols)
        if det_exact(b.T @ b) != 0:
            return Lattice(b)


def random_system(rng: random.Random, lattice: Lattice, m: int, max_index: int) -> SublatticeSystem:
    k = lattice.rank
    return SublatticeSystem(lattice, tuple(random_sublattice(rng, k, max_index) for _ in range(m)))


def random_poly(rng: random.Random, n: int, max_height: int, regular: bool = True) -> QuadraticPolynomial:
    while True:
        f = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                f[i][j] = f[j][i] = rng.randint(-max_height, max_height)
        q = QuadraticPolynomial(
            IntMatrix(f),
            tuple(rng.randint(-max_height, max_height) for _ in range(n)),
            rng.randint(-max_height, max_height),
        )
        if not regular or is_regular(q):
            return q
