"""Order complexes of finite posets and their reduced integral homology.

The homology pipeline is built for the lower intervals of the contraction
poset, whose order complexes are barycentric subdivisions of cells and
spheres: a chain of weight n can involve up to 2n-1 matrices, and the
full interval below the 1x1 matrix has tens of thousands of simplices
already at n = 4.  Plain Smith normal form on boundary matrices of that
size is hopeless, so ``homology`` first shrinks the complex by cancelling
homology-neutral cell pairs:

* a *free pair* (a, b): a has exactly one remaining coface b;
* a *coreduction pair* (a, b): b has exactly one remaining face a.

Both removals leave every other boundary coefficient untouched, so during
this phase the current boundary of a cell is just its original face list
restricted to the surviving cells - no matrix arithmetic at all.  The
leftover complex (usually a handful of cells, empty for contractible
inputs) is finished off by exact sparse elimination on unit pivots and
dense Smith normal form over the integers.

Reduced homology conventions: the empty simplex is a genuine cell in
degree -1, the empty complex is the (-1)-sphere with betti(-1) = 1, and a
cone (any poset with a maximum or minimum) is acyclic.
"""

from dataclasses import dataclass

from . import contingency
from .errors import DomainError
from .exactlinalg import smith_normal_form
from .limits import SPHERICITY_CAP, guard


# ---------------------------------------------------------------------------
# homology profiles

@dataclass(frozen=True)
class HomologyProfile:
    """Reduced integral homology: nonzero Betti numbers and torsion factors
    per degree, degrees from -1 up."""

    betti: tuple      # sorted tuple of (degree, rank), rank > 0
    torsion: tuple    # sorted tuple of (degree, (factors > 1, ...))

    @classmethod
    def make(cls, betti_by_degree, torsion_by_degree):
        betti = tuple(sorted((d, b) for d, b in betti_by_degree.items() if b))
        torsion = tuple(
            sorted((d, tuple(f)) for d, f in torsion_by_degree.items() if f)
        )
        return cls(betti, torsion)

    @classmethod
    def sphere(cls, d):
        """S^d: one Z in degree d; S^(-1) is the empty complex."""
        if d < -1:
            raise DomainError(f"sphere dimension must be >= -1, got {d}")
        return cls.make({d: 1}, {})

    @classmethod
    def trivial(cls):
        return cls.make({}, {})

    def betti_number(self, d):
        return dict(self.betti).get(d, 0)

    def torsion_factors(self, d):
        return dict(self.torsion).get(d, ())

    def to_json(self):
        degrees = sorted(set(dict(self.betti)) | set(dict(self.torsion)))
        return [
            {
                "degree": d,
                "betti": self.betti_number(d),
                "torsion": list(self.torsion_factors(d)),
            }
            for d in degrees
        ]


# ---------------------------------------------------------------------------
# finite posets and simplicial complexes

def _bits(mask):
    while mask:
        lsb = mask & -mask
        yield lsb.bit_length() - 1
        mask ^= lsb


class FinitePoset:
    """A finite strict order on labels, encoded by 'strictly above' bitmasks
    over local indices.  Used for lower intervals of the contraction poset
    and for the ad-hoc posets in tests."""

    def __init__(self, labels, above):
        self.labels = tuple(labels)
        self.above = tuple(above)
        if len(self.labels) != len(self.above):
            raise DomainError("labels and above-masks must have equal length")

    def __len__(self):
        return len(self.labels)

    @classmethod
    def from_leq(cls, labels, leq):
        """Build from a <= predicate (reflexivity ignored); quadratic scan,
        intended for small explicit posets."""
        labels = tuple(labels)
        m = len(labels)
        above = []
        for i in range(m):
            mask = 0
            for j in range(m):
                if i != j and leq(labels[i], labels[j]):
                    if leq(labels[j], labels[i]):
                        raise DomainError(
                            f"antisymmetry fails on {labels[i]!r}, {labels[j]!r}"
                        )
                    mask |= 1 << j
            above.append(mask)
        for i in range(m):
            acc = above[i]
            for j in _bits(above[i]):
                acc |= above[j]
            if acc != above[i]:
                raise DomainError("relation is not transitive")
        return cls(labels, above)


class SimplicialComplex:
    """Vertices plus simplices grouped by dimension.

    Simplices are strictly increasing tuples of vertex indices; the family
    must be closed under taking faces.
    """

    def __init__(self, vertices, simplices_by_dim, check=True):
        self.vertices = tuple(vertices)
        self.simplices = tuple(
            tuple(tuple(s) for s in level) for level in simplices_by_dim
        )
        while self.simplices and not self.simplices[-1]:
            self.simplices = self.simplices[:-1]
        if check:
            self._check()

    def _check(self):
        nv = len(self.vertices)
        seen = [set(level) for level in self.simplices]
        if nv and not self.simplices:
            raise DomainError("vertices present but no dimension-0 simplices")
        if self.simplices and sorted(self.simplices[0]) != [(i,) for i in range(nv)]:
            raise DomainError("dimension-0 simplices must list every vertex once")
        for d, level in enumerate(self.simplices):
            for s in level:
                if len(s) != d + 1:
                    raise DomainError(f"simplex {s} listed in dimension {d}")
                if any(not 0 <= v < nv for v in s):
                    raise DomainError(f"vertex index out of range in {s}")
                if any(a >= b for a, b in zip(s, s[1:])):
                    raise DomainError(f"simplex {s} is not strictly increasing")
                if d > 0:
                    for k in range(d + 1):
                        if s[:k] + s[k + 1 :] not in seen[d - 1]:
                            raise DomainError(f"face of {s} is missing")

    @property
    def dimension(self):
        return len(self.simplices) - 1

    def f_vector(self):
        return {d: len(level) for d, level in enumerate(self.simplices)}

    def simplex_count(self):
        return sum(len(level) for level in self.simplices)

    @classmethod
    def from_simplices(cls, vertex_count, simplices):
        """Close an arbitrary family of simplices (vertex-index tuples)
        under faces; vertices not covered stay as isolated 0-simplices."""
        levels = {}
        stack = [tuple(sorted(set(s))) for s in simplices]
        stack.extend((v,) for v in range(vertex_count))
        seen = set()
        while stack:
            s = stack.pop()
            if s in seen or not s:
                continue
            seen.add(s)
            levels.setdefault(len(s) - 1, set()).add(s)
            if len(s) > 1:
                stack.extend(s[:k] + s[k + 1 :] for k in range(len(s)))
        top = max(levels) if levels else -1
        by_dim = [sorted(levels.get(d, ())) for d in range(top + 1)]
        return cls(tuple(range(vertex_count)), by_dim)


def order_complex(poset):
    """The complex of chains of a finite poset: r-simplices are chains of
    r+1 distinct comparable elements."""
    m = len(poset)
    # linear extension: anything above i has a strictly smaller above-set
    order = sorted(range(m), key=lambda i: (-poset.above[i].bit_count(), i))
    pos = [0] * m
    for new, old in enumerate(order):
        pos[old] = new
    vertices = tuple(poset.labels[old] for old in order)
    up = [sorted(pos[j] for j in _bits(poset.above[old])) for old in order]

    levels = []

    def extend(chain, last):
        d = len(chain) - 1
        if d == len(levels):
            levels.append([])
        levels[d].append(chain)
        for v in up[last]:
            extend(chain + (v,), v)

    for v0 in range(m):
        extend((v0,), v0)
    return SimplicialComplex(vertices, levels, check=False)


# ---------------------------------------------------------------------------
# homology

def homology(complex_):
    """Reduced integral homology via pair cancellation plus exact SNF.

    Raises RuntimeError if the Euler characteristics of the input and of
    the computed profile disagree (an internal consistency cross-check).
    """
    simplices = complex_.simplices

    # global cell ids; id 0 is the empty simplex in degree -1
    dim_of = [-1]
    cells = [()]
    index_by_dim = []
    for d, level in enumerate(simplices):
        idx = {}
        for s in level:
            idx[s] = len(cells)
            dim_of.append(d)
            cells.append(s)
        index_by_dim.append(idx)

    n_cells = len(cells)
    faces = [()] * n_cells
    cofaces = [[] for _ in range(n_cells)]
    for g in range(1, n_cells):
        s = cells[g]
        d = dim_of[g]
        if d == 0:
            fs = (0,)
        else:
            lookup = index_by_dim[d - 1]
            fs = tuple(lookup[s[:k] + s[k + 1 :]] for k in range(d + 1))
        faces[g] = fs
        for f in fs:
            cofaces[f].append(g)

    live = bytearray([1]) * n_cells
    nface = [len(faces[g]) for g in range(n_cells)]
    ncoface = [len(cofaces[g]) for g in range(n_cells)]

    from collections import deque

    queue = deque(g for g in range(n_cells) if nface[g] == 1 or ncoface[g] == 1)

    def retire(g):
        live[g] = 0
        for e in cofaces[g]:
            if live[e]:
                nface[e] -= 1
                if nface[e] == 1:
                    queue.append(e)
        for f in faces[g]:
            if live[f]:
                ncoface[f] -= 1
                if ncoface[f] == 1:
                    queue.append(f)

    while queue:
        g = queue.popleft()
        if not live[g]:
            continue
        if nface[g] == 1:
            partner = next(f for f in faces[g] if live[f])
            live_pair = (partner, g)
        elif ncoface[g] == 1:
            partner = next(e for e in cofaces[g] if live[e])
            live_pair = (g, partner)
        else:
            continue
        a, b = live_pair
        retire(b)
        retire(a)

    # remaining cells: explicit sparse boundary with original signs
    rows = {}  # face -> {cell: coeff}
    cols = {}  # cell -> {face: coeff}
    remaining = [g for g in range(n_cells) if live[g]]
    for g in remaining:
        col = {}
        for k, f in enumerate(faces[g]):
            if live[f]:
                col[f] = 1 if k % 2 == 0 else -1
        cols[g] = col
        for f, v in col.items():
            rows.setdefault(f, {})[g] = v
    for g in remaining:
        rows.setdefault(g, {})

    def eliminate(a, b):
        u = cols[b].pop(a)
        rows[a].pop(b)
        bcol = list(cols[b].items())
        for c in list(rows[a].keys()):
            lam = cols[c].pop(a)
            rows[a].pop(c)
            factor = lam * u
            if bcol:
                col_c = cols[c]
                for f, v in bcol:
                    new = col_c.get(f, 0) - factor * v
                    if new:
                        col_c[f] = new
                        rows[f][c] = new
                    else:
                        col_c.pop(f, None)
                        rows[f].pop(c, None)
        # drop a entirely (its own boundary too) and b's appearances above
        for f in cols.pop(a, {}):
            rows[f].pop(a, None)
        rows.pop(a, None)
        for e in rows.pop(b, {}):
            cols[e].pop(b, None)
        for f in cols.pop(b, {}):
            rows[f].pop(b, None)
        dead.add(a)
        dead.add(b)

    dead = set()
    while True:
        best = None
        for b, col in cols.items():
            for a, v in col.items():
                if v == 1 or v == -1:
                    fill = (len(rows[a]) - 1) * (len(col) - 1)
                    if best is None or fill < best[0]:
                        best = (fill, a, b)
                        if fill == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        eliminate(best[1], best[2])

    # dense Smith normal form on whatever survived
    final = [g for g in remaining if g not in dead]
    by_dim = {}
    for g in final:
        by_dim.setdefault(dim_of[g], []).append(g)
    ranks = {}
    torsion_by_degree = {}
    for d, cells_d in sorted(by_dim.items()):
        below = by_dim.get(d - 1, [])
        if not below:
            ranks[d] = 0
            continue
        row_pos = {f: i for i, f in enumerate(below)}
        matrix = [[0] * len(cells_d) for _ in below]
        for j, g in enumerate(cells_d):
            for f, v in cols[g].items():
                matrix[row_pos[f]][j] = v
        factors = smith_normal_form(matrix)
        ranks[d] = len(factors)
        big = [f for f in factors if f > 1]
        if big:
            torsion_by_degree[d - 1] = big

    betti = {}
    for d, cells_d in by_dim.items():
        betti[d] = len(cells_d) - ranks.get(d, 0) - ranks.get(d + 1, 0)

    euler_complex = -1 + sum(
        (-1) ** d * len(level) for d, level in enumerate(simplices)
    )
    euler_homology = sum((-1) ** d * b for d, b in betti.items())
    if euler_complex != euler_homology:
        raise RuntimeError(
            f"Euler characteristic mismatch: complex {euler_complex}, "
            f"homology {euler_homology}"
        )
    return HomologyProfile.make(betti, torsion_by_degree)


# ---------------------------------------------------------------------------
# intervals of the contraction poset

def lower_interval(poset, matrix, strict=True):
    """The induced sub-poset on everything below a matrix in CM_n.

    Labels are the canonical element indices of the ambient poset.
    """
    i = poset.element_index(matrix) if not isinstance(matrix, int) else matrix
    mask = poset.below_mask(i)
    if not strict:
        mask |= 1 << i
    members = list(_bits(mask))
    pos = {g: k for k, g in enumerate(members)}
    above_all = poset._above_masks(contingency.KINDS)
    above = []
    for g in members:
        sub = above_all[g] & mask
        acc = 0
        for j in _bits(sub):
            acc |= 1 << pos[j]
        above.append(acc)
    return FinitePoset(tuple(members), above)


def cm_order_poset(poset):
    """The whole of CM_n as a FinitePoset (for the global ball check)."""
    full = (1 << len(poset)) - 1
    above_all = poset._above_masks(contingency.KINDS)
    return FinitePoset(tuple(range(len(poset))), tuple(above_all[g] & full for g in range(len(poset))))


def expected_sphere_dimension(n, matrix):
    return 2 * n - (matrix.p + matrix.q) - 1


def verify_sphericity(n, jobs=1):
    """Check, for every M in CM_n, that the strict lower interval has the
    reduced homology of a sphere of dimension 2n-(p+q)-1 and that the
    non-strict interval is acyclic."""
    guard(n, SPHERICITY_CAP, "sphericity verification")
    poset = contingency.build_poset(n)
    results = []
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(_sphericity_cell, [(n, i) for i in range(len(poset))])
            )
    else:
        for i in range(len(poset)):
            results.append(_check_cell(poset, i))
    violations = [r for r in results if not r["pass"]]
    return {
        "n": n,
        "cells_checked": len(results),
        "cells": results,
        "violations": violations,
        "pass": not violations,
    }


def _check_cell(poset, i):
    matrix = poset.elements[i]
    d_exp = expected_sphere_dimension(poset.n, matrix)
    strict_profile = homology(order_complex(lower_interval(poset, i, strict=True)))
    closed_profile = homology(order_complex(lower_interval(poset, i, strict=False)))
    sphere_ok = strict_profile == HomologyProfile.sphere(d_exp)
    acyclic_ok = closed_profile == HomologyProfile.trivial()
    return {
        "element": matrix.to_json(),
        "expected_sphere_dim": d_exp,
        "homology": strict_profile.to_json(),
        "closed_acyclic": acyclic_ok,
        "pass": sphere_ok and acyclic_ok,
    }


_WORKER_POSETS = {}


def _sphericity_cell(args):
    n, i = args
    poset = _WORKER_POSETS.get(n)
    if poset is None:
        poset = contingency.build_poset(n)
        _WORKER_POSETS[n] = poset
    return _check_cell(poset, i)


def f_vector(n):
    """Cell census of the weight-n stochastihedron: how many matrices sit
    in each cell dimension 2n-(p+q)."""
    counts = contingency.count_cm_by_size(n)
    out = {}
    for (p, q), c in counts.items():
        d = 2 * n - (p + q)
        out[d] = out.get(d, 0) + c
    return dict(sorted(out.items()))
