"""Classifying exact point configurations into the four stratifications.

A point of the n-th symmetric product of the plane is a multiset of n
points with rational coordinates.  Reading off which real parts and which
imaginary parts coincide yields its contingency matrix; coarser labels
forget part of that information:

  contingency cell   the matrix itself                dimension p + q
  FNF cell           [beta : gamma], beta the column  dimension l(beta)
                     margin, gamma the compressed       + l(gamma)
                     columns (per imaginary line)
  dual FNF cell      same with the roles of the axes swapped
  complex stratum    the multiset of nonzero entries  complex dimension
                     (multiplicities of the points)     = number of points

Anodyne contractions never change the multiset of nonzero entries, and
chains of them sweep out exactly the fibers of these labels; the
``anodyne_classes`` and ``meet_check`` reports verify that combinatorially.

All coordinates are exact rationals: collision detection is equality of
fractions, never a floating-point tolerance.
"""

from dataclasses import dataclass
from fractions import Fraction

from .contingency import (
    HORIZONTAL,
    VERTICAL,
    ContingencyMatrix,
    contract,
    enumerate_cm,
    is_anodyne,
)
from .errors import DomainError, StructuralError
from .limits import ANODYNE_CAP, MEET_CAP, guard
from .partitions import OrderedPartition, as_partition


@dataclass(frozen=True)
class PointConfiguration:
    """A multiset of points (re, im) with exact rational coordinates."""

    points: tuple  # tuple of (Fraction, Fraction), stored sorted

    def __post_init__(self):
        pts = tuple(
            sorted((Fraction(re), Fraction(im)) for re, im in self.points)
        )
        if not pts:
            raise DomainError("a configuration needs at least one point")
        object.__setattr__(self, "points", pts)

    @property
    def size(self):
        return len(self.points)

    def to_json(self):
        return {
            "points": [
                {"re": str(re), "im": str(im)} for re, im in self.points
            ]
        }

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "points" not in data:
            raise StructuralError('configuration JSON must look like {"points": [...]}')
        pts = []
        for item in data["points"]:
            try:
                pts.append((Fraction(str(item["re"])), Fraction(str(item["im"]))))
            except (KeyError, TypeError, ValueError) as exc:
                raise StructuralError(f"bad point entry {item!r}: {exc}") from exc
        return cls(tuple(pts))


@dataclass(frozen=True)
class MultiplicityPartition:
    """Point multiplicities, sorted non-increasingly; labels a complex stratum."""

    parts: tuple

    def __post_init__(self):
        parts = tuple(int(a) for a in self.parts)
        if not parts or any(a < 1 for a in parts):
            raise DomainError(f"parts must be positive, got {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise DomainError(f"parts must be non-increasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def weight(self):
        return sum(self.parts)

    @property
    def length(self):
        return len(self.parts)

    def to_json(self):
        return list(self.parts)


@dataclass(frozen=True)
class FnfLabel:
    """[beta : gamma]: line multiplicities bottom-to-top, and the
    left-to-right coincidence pattern on each line."""

    beta: OrderedPartition
    gamma: tuple  # tuple of OrderedPartition, gamma[j].weight == beta.parts[j]

    def __post_init__(self):
        beta = as_partition(self.beta)
        gamma = tuple(as_partition(g) for g in self.gamma)
        if len(gamma) != beta.length:
            raise DomainError("need one pattern per line")
        for j, g in enumerate(gamma):
            if g.weight != beta.parts[j]:
                raise DomainError(
                    f"pattern {g.parts} on line {j} must have weight {beta.parts[j]}"
                )
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "gamma", gamma)

    @property
    def weight(self):
        return self.beta.weight

    @property
    def gamma_flat(self):
        """All patterns concatenated: a single partition refining beta."""
        parts = ()
        for g in self.gamma:
            parts += g.parts
        return OrderedPartition(parts)

    @property
    def dimension(self):
        return self.beta.length + sum(g.length for g in self.gamma)

    @property
    def sort_key(self):
        return (self.beta.parts, tuple(g.parts for g in self.gamma))

    def to_json(self):
        return {
            "beta": self.beta.to_json(),
            "gamma": [g.to_json() for g in self.gamma],
            "dimension": self.dimension,
        }


# ---------------------------------------------------------------------------
# label maps

def compress(values):
    """Drop zero components, keeping order: the op() of a count vector."""
    values = tuple(int(x) for x in values)
    if any(x < 0 for x in values):
        raise DomainError(f"counts must be nonnegative, got {values}")
    parts = tuple(x for x in values if x > 0)
    if not parts:
        raise DomainError("a count vector needs at least one positive entry")
    return OrderedPartition(parts)


def contingency_label(config):
    """The contingency matrix of a configuration: rows indexed by distinct
    real parts in increasing order, columns by distinct imaginary parts."""
    xs = sorted({re for re, _ in config.points})
    ys = sorted({im for _, im in config.points})
    xi = {x: i for i, x in enumerate(xs)}
    yi = {y: j for j, y in enumerate(ys)}
    grid = [[0] * len(ys) for _ in xs]
    for re, im in config.points:
        grid[xi[re]][yi[im]] += 1
    return ContingencyMatrix(grid, check=False)


def fnf_label(matrix):
    """[beta : gamma] containing the contingency cell: beta is the vertical
    margin, gamma[j] compresses column j in row order (left to right along
    the j-th line)."""
    beta = OrderedPartition(tuple(sum(col) for col in zip(*matrix.rows)))
    gamma = tuple(compress(matrix.column(j)) for j in range(matrix.q))
    return FnfLabel(beta, gamma)


def ifnf_label(matrix):
    """The dual label, i.e. the FNF label after swapping the two axes:
    the horizontal margin plus the compressed rows."""
    return fnf_label(matrix.transpose())


def multiplicity_partition(matrix):
    """Nonzero entries sorted non-increasingly: the complex-stratum label."""
    entries = sorted(
        (x for row in matrix.rows for x in row if x), reverse=True
    )
    return MultiplicityPartition(tuple(entries))


def cell_dimensions(matrix):
    """Real dimensions of the four cells/strata through a matrix's cell."""
    return {
        "contingency": matrix.p + matrix.q,
        "fnf": fnf_label(matrix).dimension,
        "ifnf": ifnf_label(matrix).dimension,
        "complex": 2 * multiplicity_partition(matrix).length,
    }


def classify(config):
    """Full classification bundle for one configuration."""
    matrix = contingency_label(config)
    return {
        "configuration": config.to_json(),
        "matrix": matrix.to_json(),
        "fnf": fnf_label(matrix).to_json(),
        "ifnf": ifnf_label(matrix).to_json(),
        "multiplicity": multiplicity_partition(matrix).to_json(),
        "dimensions": cell_dimensions(matrix),
    }


def _beta_blocks(coarse, fine):
    """Indices splitting fine.parts into consecutive blocks that sum to the
    parts of coarse, or None when coarse does not coarsen fine."""
    blocks = []
    k = 0
    for part in coarse.parts:
        start = k
        acc = 0
        while acc < part and k < len(fine.parts):
            acc += fine.parts[k]
            k += 1
        if acc != part:
            return None
        blocks.append((start, k))
    return blocks if k == len(fine.parts) else None


def _shuffle_merge_reachable(target, sources):
    """Whether `target` arises by interleaving the source sequences (each
    keeping its internal order) and then summing adjacent runs.

    When several lines merge, the points of different lines interleave
    freely along the merged line while the order within each line is
    preserved; clusters of the limit pattern are sums of consecutive runs
    of the interleaving.
    """
    sources = tuple(tuple(s) for s in sources)
    if sum(target) != sum(sum(s) for s in sources):
        return False
    ns = len(sources)
    memo = {}

    def consume(state, amount):
        """Pointer advances taking a consecutive run from each source's
        front, the run sums adding up to `amount`."""
        results = []

        def rec(t, remaining, new_positions):
            if t == ns:
                if remaining == 0:
                    results.append(tuple(new_positions))
                return
            src = sources[t]
            k = state[t]
            run = 0
            while True:
                new_positions.append(k)
                rec(t + 1, remaining - run, new_positions)
                new_positions.pop()
                if k == len(src):
                    break
                run += src[k]
                k += 1
                if run > remaining:
                    break

        rec(0, amount, [])
        return results

    def reachable(state, i):
        key = (state, i)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if i == len(target):
            out = all(state[t] == len(sources[t]) for t in range(ns))
        else:
            out = any(
                reachable(nxt, i + 1) for nxt in consume(state, target[i])
            )
        memo[key] = out
        return out

    return reachable((0,) * ns, 0)


def fnf_closure_leq(a, b):
    """Closure order on FNF labels, more degenerate labels smaller.

    a <= b iff a.beta coarsens b.beta by merging consecutive blocks of
    lines, and on each merged line a's pattern is a contraction of some
    shuffle of the patterns of the lines merged into it.  Plain refinement
    of the flattened patterns is not enough: merging lines interleaves
    their points.
    """
    if a.weight != b.weight:
        raise DomainError(f"weights differ: {a.weight} vs {b.weight}")
    blocks = _beta_blocks(a.beta, b.beta)
    if blocks is None:
        return False
    for j, (start, end) in enumerate(blocks):
        if not _shuffle_merge_reachable(
            a.gamma[j].parts, [g.parts for g in b.gamma[start:end]]
        ):
            return False
    return True


# ---------------------------------------------------------------------------
# anodyne equivalence classes and the meet/join reports

class _UnionFind:
    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, x, y):
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


KINDS_ALL = (HORIZONTAL, VERTICAL)

_FIBER_LABELS = {
    (HORIZONTAL, VERTICAL): ("multiplicity", multiplicity_partition),
    (HORIZONTAL,): ("fnf", fnf_label),
    (VERTICAL,): ("ifnf", ifnf_label),
}


def anodyne_classes(n, kinds=(HORIZONTAL, VERTICAL)):
    """Equivalence classes of CM_n under anodyne contractions of the given
    kinds, with the fiber comparison this class structure must reproduce:
    both kinds -> multiplicity partitions, horizontal only -> FNF labels,
    vertical only -> dual FNF labels.

    Classes are reported as tuples of canonical element indices.
    """
    guard(n, ANODYNE_CAP, "anodyne equivalence classes")
    kinds = tuple(sorted(set(kinds)))
    if kinds not in _FIBER_LABELS:
        raise DomainError(
            f"kinds must be horizontal, vertical, or both; got {kinds}"
        )
    fiber_name, fiber_map = _FIBER_LABELS[kinds]
    elements = enumerate_cm(n)
    index = {m.rows: i for i, m in enumerate(elements)}
    uf = _UnionFind(len(elements))
    for i, m in enumerate(elements):
        for kind in kinds:
            limit = m.p - 1 if kind == HORIZONTAL else m.q - 1
            for pos in range(limit):
                if is_anodyne(m, kind, pos):
                    uf.union(i, index[contract(m, kind, pos).rows])
    classes = {}
    for i in range(len(elements)):
        classes.setdefault(uf.find(i), []).append(i)
    class_list = [tuple(v) for _, v in sorted(classes.items())]

    fibers = {}
    for i, m in enumerate(elements):
        fibers.setdefault(fiber_map(m), []).append(i)
    fiber_list = sorted(tuple(v) for v in fibers.values())
    matches = sorted(class_list) == fiber_list
    return {
        "n": n,
        "kinds": list(kinds),
        "classes": class_list,
        "class_count": len(class_list),
        "fiber_label": fiber_name,
        "fiber_count": len(fiber_list),
        "classes_match_fibers": matches,
        "pass": matches,
    }


def meet_check(n):
    """Group CM_n by the pair (FNF label, dual FNF label) and verify that
    each group determines the matrix size (p, q); group sizes are reported
    as observed component counts of the pairwise intersections."""
    guard(n, MEET_CAP, "label-pair grouping")
    groups = {}
    for m in enumerate_cm(n):
        key = (fnf_label(m), ifnf_label(m))
        groups.setdefault(key, []).append(m)
    rows = []
    violations = []
    for (fnf, ifnf), members in sorted(
        groups.items(), key=lambda kv: (kv[0][0].sort_key, kv[0][1].sort_key)
    ):
        sizes = {(m.p, m.q) for m in members}
        expected = (ifnf.beta.length, fnf.beta.length)
        ok = sizes == {expected}
        row = {
            "fnf": fnf.to_json(),
            "ifnf": ifnf.to_json(),
            "component_count": len(members),
            "sizes": sorted(sizes),
            "expected_size": list(expected),
            "pass": ok,
        }
        rows.append(row)
        if not ok:
            violations.append(row)
    return {
        "n": n,
        "group_count": len(rows),
        "groups": rows,
        "violations": violations,
        "pass": not violations,
    }
