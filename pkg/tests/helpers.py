"""Shared builders for representation test suites.

Random per-cover matrices almost never satisfy the diamond condition, so
the suites are built from functor-shaped data that commutes by
construction while still letting individual maps be singular:

* rank functors: the space depends only on the cell rank, every cover at
  that rank carries the same matrix;
* size functors: the space depends only on the row count p, horizontal
  covers carry a matrix H_p, vertical covers a scalar multiple of the
  identity; the two kinds commute because scalars do.
"""

import random
from fractions import Fraction

from stochastihedron.contingency import HORIZONTAL, build_poset
from stochastihedron.sheaf import PosetRepresentation


def random_matrix(rng, rows, cols, singular=False):
    """A rows x cols Fraction matrix; optionally forced non-invertible."""
    if singular and rows == cols and rows > 0:
        # rank-deficient: last row a multiple of the first
        m = [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]
        scale = Fraction(rng.randint(-2, 2))
        m[-1] = [scale * x for x in m[0]]
        return m
    if rows == cols:
        # random invertible: start from identity, apply shear rows
        m = [
            [Fraction(1) if i == j else Fraction(0) for j in range(cols)]
            for i in range(rows)
        ]
        for _ in range(rows * 2):
            i, j = rng.randrange(rows), rng.randrange(rows)
            if i != j:
                factor = Fraction(rng.randint(-2, 2))
                m[i] = [x + factor * y for x, y in zip(m[i], m[j])]
        return m
    return [[Fraction(rng.randint(-3, 3)) for _ in range(cols)] for _ in range(rows)]


def rank_functor(poset, rng, dims=None):
    """Space dimension depends only on the rank; one matrix per rank step."""
    n = poset.n
    top_rank = 2 * n - 2
    if dims is None:
        dims = [rng.randint(0, 3) for _ in range(top_rank + 1)]
    steps = {}
    for r in range(top_rank):
        steps[r] = random_matrix(
            rng, dims[r + 1], dims[r], singular=rng.random() < 0.3
        )
    maps = {}
    for child, parent, _, _ in poset.covers:
        maps[(child, parent)] = steps[poset.rank(child)]
    return PosetRepresentation(
        poset, [dims[poset.rank(i)] for i in range(len(poset))], maps
    )


def size_functor(poset, rng):
    """Space dimension depends only on the row count p; horizontal covers
    carry H_p, vertical covers a scalar.  Lets one stratification fail
    while the other passes."""
    n = poset.n
    dims = {p: rng.randint(1, 3) for p in range(1, n + 1)}
    h_maps = {
        p: random_matrix(rng, dims[p - 1], dims[p], singular=rng.random() < 0.4)
        for p in range(2, n + 1)
    }
    v_scalars = {q: Fraction(rng.choice((0, 1, 2, -1))) for q in range(2, n + 1)}
    maps = {}
    for child, parent, kind, _ in poset.covers:
        m = poset.elements[child]
        if kind == HORIZONTAL:
            maps[(child, parent)] = h_maps[m.p]
        else:
            scalar = v_scalars[m.q]
            maps[(child, parent)] = [
                [scalar if i == j else Fraction(0) for j in range(dims[m.p])]
                for i in range(dims[m.p])
            ]
    return PosetRepresentation(
        poset, [dims[poset.elements[i].p] for i in range(len(poset))], maps
    )


def representation_suite(count, max_n=4, seed=20240901):
    """A deterministic mixed suite of functorial representations."""
    rng = random.Random(seed)
    posets = {n: build_poset(n) for n in range(1, max_n + 1)}
    suite = []
    while len(suite) < count:
        n = rng.randint(1, max_n)
        poset = posets[n]
        if rng.random() < 0.5:
            suite.append(rank_functor(poset, rng))
        else:
            suite.append(size_functor(poset, rng))
    return suite
