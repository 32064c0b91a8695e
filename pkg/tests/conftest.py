"""Shared seeded generators for rational matrices and representation
families over the stock algebras."""

import random

import pytest

from dmodclass.borel import borel_algebra
from dmodclass.lie import Representation, abelian, filiform4, heisenberg
from dmodclass.matrix import Matrix
from dmodclass.scalars import gr


def rng_for(name: str, seed: int = 0) -> random.Random:
    return random.Random(f"{name}:{seed}")


def elementary(n: int, i: int, j: int) -> Matrix:
    """E_ij as an exact n x n matrix, 0-based."""
    return Matrix(
        n,
        n,
        [gr(1) if (r, c) == (i, j) else gr(0) for r in range(n) for c in range(n)],
    )


def random_matrix(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix.from_rows([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])


def random_unimodular(rng: random.Random, n: int, shears: int = None) -> Matrix:
    """Random integer matrix with determinant +-1 (product of shears)."""
    m = Matrix.identity(n, "exact")
    for _ in range(shears if shears is not None else 3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = gr(rng.randint(-2, 2))
        rows = [
            [m[r, cc] + (c * m[j, cc] if r == i else gr(0)) for cc in range(n)]
            for r in range(n)
        ]
        m = Matrix.from_rows(rows)
    return m


def conjugate_rep(rep: Representation, g: Matrix) -> Representation:
    gi = g.inverse()
    return Representation(rep.algebra, rep.rank, tuple(g * a * gi for a in rep.images))


# ---------------------------------------------------------------------------
# representation families over nilpotent algebras


def h3_rep(rng: random.Random) -> Representation:
    """Strictly-upper 3x3 representation of the Heisenberg algebra plus
    scalar shifts: images commute into the center correctly by construction."""
    h3 = heisenberg()
    u1, v1 = rng.randint(-2, 2), rng.randint(-2, 2)
    u2, v2 = rng.randint(-2, 2), rng.randint(-2, 2)
    lx, ly = rng.randint(-1, 1), rng.randint(-1, 1)
    e12, e23, e13 = elementary(3, 0, 1), elementary(3, 1, 2), elementary(3, 0, 2)
    one = Matrix.identity(3, "exact")
    x = one.scale(gr(lx)) + e12.scale(gr(u1)) + e23.scale(gr(v1))
    y = one.scale(gr(ly)) + e12.scale(gr(u2)) + e23.scale(gr(v2))
    z = e13.scale(gr(u1 * v2 - v1 * u2))
    return Representation(h3, 3, (x, y, z))


def abelian_rep(rng: random.Random, l: int, rank: int) -> Representation:
    """Commuting tuple: scalar parts plus multiples of one nilpotent E_01."""
    alg = abelian(l)
    images = []
    for _ in range(l):
        m = Matrix.identity(rank, "exact").scale(gr(rng.randint(-2, 2)))
        if rank >= 2:
            m = m + elementary(rank, 0, 1).scale(gr(rng.randint(-2, 2)))
        images.append(m)
    return Representation(alg, rank, tuple(images))


def abelian_diag_rep(rng: random.Random, l: int, rank: int) -> Representation:
    alg = abelian(l)
    images = []
    for _ in range(l):
        rows = [
            [gr(rng.randint(-2, 2)) if r == c else gr(0) for c in range(rank)]
            for r in range(rank)
        ]
        images.append(Matrix.from_rows(rows))
    return Representation(alg, rank, tuple(images))


def filiform_adjoint() -> Representation:
    """The adjoint representation of the 4-dimensional filiform algebra."""
    alg = filiform4()
    images = []
    for i in range(4):
        cols = []
        for j in range(4):
            cols.append(alg.bracket(alg.basis_coords(i), alg.basis_coords(j)))
        images.append(Matrix.from_rows([[cols[j][r] for j in range(4)] for r in range(4)]))
    return Representation(alg, 4, tuple(images))


def nilpotent_rep_pool(seed: int = 0) -> list:
    """A reproducible pool across h3, abelian, and filiform families."""
    rng = rng_for("nilpotent-pool", seed)
    pool = []
    for _ in range(6):
        pool.append(h3_rep(rng))
    for l in (1, 2, 3):
        for rank in (1, 2, 3, 4):
            pool.append(abelian_rep(rng, l, rank))
            pool.append(abelian_diag_rep(rng, l, rank))
    pool.append(filiform_adjoint())
    out = []
    for rep in pool:
        out.append(rep)
        g = random_unimodular(rng, rep.rank)
        out.append(conjugate_rep(rep, g))
    return out


# ---------------------------------------------------------------------------
# Borel representation families


def borel_character(l: int, weights) -> Representation:
    """Rank-1 representation: E_ii acts by weights[i], off-diagonal by 0."""
    b = borel_algebra(l)
    images = []
    for (i, j) in b.pairs:
        if i == j:
            images.append(Matrix.from_rows([[gr(weights[i - 1])]]))
        else:
            images.append(Matrix.zeros(1, 1, "exact"))
    return Representation(b.algebra, 1, tuple(images))


def borel_defining(l: int) -> Representation:
    b = borel_algebra(l)
    images = tuple(elementary(l, i - 1, j - 1) for (i, j) in b.pairs)
    return Representation(b.algebra, l, images)


def borel_adjoint(l: int) -> Representation:
    b = borel_algebra(l)
    dim = b.dim
    images = []
    for a in range(dim):
        cols = [b.algebra.bracket(b.algebra.basis_coords(a), b.algebra.basis_coords(j)) for j in range(dim)]
        images.append(Matrix.from_rows([[cols[j][r] for j in range(dim)] for r in range(dim)]))
    return Representation(b.algebra, dim, tuple(images))


def borel_twist(rep: Representation, l: int, shifts) -> Representation:
    """Add shifts[i] * I to the image of E_ii (a central character twist)."""
    b = borel_algebra(l)
    images = list(rep.images)
    one = Matrix.identity(rep.rank, "exact")
    for idx, (i, j) in enumerate(b.pairs):
        if i == j:
            images[idx] = images[idx] + one.scale(gr(shifts[i - 1]))
    return Representation(rep.algebra, rep.rank, tuple(images))


def borel_rep_pool(seed: int = 0) -> list:
    """Valid representations over borel_algebra(2) and borel_algebra(3),
    rank at most 3, returned as (l, rep) pairs."""
    rng = rng_for("borel-pool", seed)
    pool = []
    for l in (2, 3):
        for _ in range(3):
            pool.append((l, borel_character(l, [rng.randint(-2, 2) for _ in range(l)])))
    pool.append((2, borel_defining(2)))
    pool.append((3, borel_defining(3)))
    pool.append((2, borel_adjoint(2)))
    pool.append((2, borel_twist(borel_defining(2), 2, [1, -1])))
    pool.append((3, borel_twist(borel_defining(3), 3, [2, 0, -1])))
    out = []
    for l, rep in pool:
        out.append((l, rep))
        g = random_unimodular(rng, rep.rank)
        out.append((l, conjugate_rep(rep, g)))
    return out


@pytest.fixture(scope="session")
def nilpotent_pool():
    return nilpotent_rep_pool()


@pytest.fixture(scope="session")
def borel_pool():
    return borel_rep_pool()
