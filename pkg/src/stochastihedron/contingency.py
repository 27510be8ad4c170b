"""Contingency matrices of fixed weight and their contraction order.

A contingency matrix is a p x q grid of nonnegative integers with no zero
row and no zero column.  Adding two adjacent rows (a *horizontal*
contraction, it lowers p) or two adjacent columns (a *vertical* one, it
lowers q) yields another contingency matrix of the same weight.  CM_n is
made into a poset by declaring the contracted matrix larger, so the 1x1
matrix (n) is the unique maximum and the n! permutation matrices are the
minimal elements.

Axis convention: the first index runs over rows (distinct real parts of a
point configuration), the second over columns (distinct imaginary parts).
``kind="horizontal"`` merges adjacent rows, ``kind="vertical"`` merges
adjacent columns.  Canonical element order is lexicographic on
(p, q, row-flattened entries), which fixes every report byte-for-byte.
"""

import itertools
from math import factorial

from .errors import DomainError
from .limits import DOUBLE_COSET_CAP, ENUMERATION_CAP, POSET_CAP, guard
from .partitions import OrderedPartition, as_partition, enumerate_ordered_partitions

HORIZONTAL = "horizontal"
VERTICAL = "vertical"
KINDS = (HORIZONTAL, VERTICAL)


class ContingencyMatrix:
    """Immutable p x q nonnegative integer grid, no zero row or column."""

    __slots__ = ("rows", "p", "q", "weight")

    def __init__(self, rows, check=True):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if check:
            if not rows or not rows[0]:
                raise DomainError("matrix must have at least one row and column")
            width = len(rows[0])
            if any(len(row) != width for row in rows):
                raise DomainError("rows must all have the same length")
            if any(x < 0 for row in rows for x in row):
                raise DomainError("entries must be nonnegative")
            if any(not any(row) for row in rows):
                raise DomainError(f"zero row in {rows}")
            for j in range(width):
                if not any(row[j] for row in rows):
                    raise DomainError(f"zero column {j} in {rows}")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "p", len(rows))
        object.__setattr__(self, "q", len(rows[0]))
        object.__setattr__(self, "weight", sum(sum(row) for row in rows))

    def __setattr__(self, name, value):
        raise AttributeError("ContingencyMatrix is immutable")

    def __eq__(self, other):
        return isinstance(other, ContingencyMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ContingencyMatrix({[list(r) for r in self.rows]})"

    @property
    def sort_key(self):
        return (self.p, self.q, self.rows)

    def column(self, j):
        return tuple(row[j] for row in self.rows)

    def transpose(self):
        return ContingencyMatrix(tuple(zip(*self.rows)), check=False)

    def to_json(self):
        return {"rows": [list(r) for r in self.rows]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict) or "rows" not in data:
            raise DomainError('matrix JSON must look like {"rows": [[...]]}')
        return cls(data["rows"])


def margins(matrix):
    """(weight, horizontal margin = row sums, vertical margin = column sums)."""
    hor = OrderedPartition(tuple(sum(row) for row in matrix.rows))
    ver = OrderedPartition(tuple(sum(col) for col in zip(*matrix.rows)))
    return matrix.weight, hor, ver


def contract(matrix, kind, i):
    """Merge rows i, i+1 (horizontal) or columns i, i+1 (vertical)."""
    rows = matrix.rows
    if kind == HORIZONTAL:
        if not 0 <= i <= matrix.p - 2:
            raise DomainError(f"row merge index {i} out of range for p={matrix.p}")
        merged = tuple(a + b for a, b in zip(rows[i], rows[i + 1]))
        return ContingencyMatrix(rows[:i] + (merged,) + rows[i + 2 :], check=False)
    if kind == VERTICAL:
        if not 0 <= i <= matrix.q - 2:
            raise DomainError(f"column merge index {i} out of range for q={matrix.q}")
        return ContingencyMatrix(
            tuple(r[:i] + (r[i] + r[i + 1],) + r[i + 2 :] for r in rows),
            check=False,
        )
    raise DomainError(f"unknown contraction kind {kind!r}")


def is_anodyne(matrix, kind, i):
    """True iff the two merged slices have disjoint supports.

    An anodyne contraction preserves the multiset of nonzero entries, hence
    the complex stratum of every configuration in the cell.
    """
    rows = matrix.rows
    if kind == HORIZONTAL:
        if not 0 <= i <= matrix.p - 2:
            raise DomainError(f"row merge index {i} out of range for p={matrix.p}")
        return all(a == 0 or b == 0 for a, b in zip(rows[i], rows[i + 1]))
    if kind == VERTICAL:
        if not 0 <= i <= matrix.q - 2:
            raise DomainError(f"column merge index {i} out of range for q={matrix.q}")
        return all(r[i] == 0 or r[i + 1] == 0 for r in rows)
    raise DomainError(f"unknown contraction kind {kind!r}")


# ---------------------------------------------------------------------------
# enumeration

_COMP_MEMO = {}


def _bounded_compositions(total, budgets):
    """All tuples x with x[j] in [0, budgets[j]] and sum(x) == total.

    Generated in lexicographic order; memoized, since during a census the
    same (total, budgets) states recur across margin pairs.
    """
    capped = tuple(b if b < total else total for b in budgets)
    key = (total, capped)
    hit = _COMP_MEMO.get(key)
    if hit is not None:
        return hit
    if len(capped) == 1:
        result = ((total,),) if total <= capped[0] else ()
    else:
        rest = capped[1:]
        rest_sum = sum(rest)
        lo = total - rest_sum
        if lo < 0:
            lo = 0
        acc = []
        for x in range(lo, min(total, capped[0]) + 1):
            for tail in _bounded_compositions(total - x, rest):
                acc.append((x,) + tail)
        result = tuple(acc)
    _COMP_MEMO[key] = result
    return result


def _iter_fixed_margins(alpha, beta):
    """Raw matrices (tuples of row tuples) with the given margins.

    Row sums alpha and column sums beta force every row and column to be
    nonzero, so the fill is backtrack-free: each intermediate state extends
    to at least one matrix.
    """
    p = len(alpha)

    def rec(i, budgets, prefix):
        if i == p - 1:
            yield prefix + (budgets,)
            return
        ai = alpha[i]
        for row in _bounded_compositions(ai, budgets):
            rem = tuple(b - r for b, r in zip(budgets, row))
            yield from rec(i + 1, rem, prefix + (row,))

    yield from rec(0, tuple(beta), ())


def _count_fixed_margins(alpha, beta):
    """Number of matrices with the given margins, walking the same tree as
    _iter_fixed_margins but summing leaf counts instead of building rows."""
    p = len(alpha)
    if p == 1:
        return 1

    def rec(i, budgets):
        if i == p - 2:
            return len(_bounded_compositions(alpha[i], budgets))
        total = 0
        for row in _bounded_compositions(alpha[i], budgets):
            total += rec(i + 1, tuple(b - r for b, r in zip(budgets, row)))
        return total

    return rec(0, tuple(beta))


def _resolve_constraints(n, p, q, alpha, beta):
    if alpha is not None:
        alpha = as_partition(alpha)
        if p is not None and p != alpha.length:
            raise DomainError(f"p={p} contradicts len(alpha)={alpha.length}")
        p = alpha.length
        if n is not None and n != alpha.weight:
            raise DomainError(f"n={n} contradicts weight(alpha)={alpha.weight}")
        n = alpha.weight
    if beta is not None:
        beta = as_partition(beta)
        if q is not None and q != beta.length:
            raise DomainError(f"q={q} contradicts len(beta)={beta.length}")
        q = beta.length
        if n is not None and n != beta.weight:
            raise DomainError(f"n={n} contradicts weight(beta)={beta.weight}")
        n = beta.weight
    if n is None:
        raise DomainError("the weight n is not determined by the arguments")
    if n < 1:
        raise DomainError(f"weight must be positive, got {n}")
    for name, value in (("p", p), ("q", q)):
        if value is not None and not 1 <= value <= n:
            raise DomainError(f"{name} must satisfy 1 <= {name} <= {n}, got {value}")
    return n, p, q, alpha, beta


def _margin_pairs(n, p, q, alpha, beta):
    ps = (p,) if p is not None else tuple(range(1, n + 1))
    qs = (q,) if q is not None else tuple(range(1, n + 1))
    for pp in ps:
        alphas = (alpha,) if alpha is not None else enumerate_ordered_partitions(n, pp)
        for qq in qs:
            betas = (beta,) if beta is not None else enumerate_ordered_partitions(n, qq)
            yield pp, qq, alphas, betas


def enumerate_cm(n=None, p=None, q=None, alpha=None, beta=None):
    """All contingency matrices meeting the constraints, canonically ordered.

    Order is lexicographic on (p, q, row-flattened entries).  Margins may be
    given as OrderedPartition or plain tuples; n is inferred from them.
    """
    n, p, q, alpha, beta = _resolve_constraints(n, p, q, alpha, beta)
    guard(n, ENUMERATION_CAP, "contingency matrix enumeration")
    out = []
    for _, _, alphas, betas in _margin_pairs(n, p, q, alpha, beta):
        block = []
        for a in alphas:
            for b in betas:
                block.extend(_iter_fixed_margins(a.parts, b.parts))
        block.sort()
        out.extend(ContingencyMatrix(rows, check=False) for rows in block)
    return out


def count_cm(n=None, p=None, q=None, alpha=None, beta=None):
    """Census size |CM_n(p, q)| etc., by enumeration over margin pairs."""
    n, p, q, alpha, beta = _resolve_constraints(n, p, q, alpha, beta)
    guard(n, ENUMERATION_CAP, "contingency matrix enumeration")
    total = 0
    for _, _, alphas, betas in _margin_pairs(n, p, q, alpha, beta):
        for a in alphas:
            for b in betas:
                total += _count_fixed_margins(a.parts, b.parts)
    return total


def count_cm_by_size(n):
    """dict (p, q) -> |CM_n(p, q)|, by enumeration."""
    guard(n, ENUMERATION_CAP, "contingency matrix enumeration")
    counts = {}
    for pp in range(1, n + 1):
        alphas = enumerate_ordered_partitions(n, pp)
        for qq in range(1, n + 1):
            betas = enumerate_ordered_partitions(n, qq)
            counts[(pp, qq)] = sum(
                _count_fixed_margins(a.parts, b.parts) for a in alphas for b in betas
            )
    return counts


def colored_lift_count(matrix):
    """n! / prod (m_ij)!: the number of colored matrices over this one."""
    n = matrix.weight
    denom = 1
    for row in matrix.rows:
        for x in row:
            if x > 1:
                denom *= factorial(x)
    return factorial(n) // denom


def double_coset_count(alpha, beta):
    """|S_alpha \\ S_n / S_beta| by literal orbit enumeration inside S_n.

    This is the independent oracle for the double-coset description of
    CM_n(alpha, beta); it never consults the matrix enumeration.
    """
    alpha = as_partition(alpha)
    beta = as_partition(beta)
    if alpha.weight != beta.weight:
        raise DomainError(f"weights differ: {alpha.weight} vs {beta.weight}")
    n = alpha.weight
    guard(n, DOUBLE_COSET_CAP, "double-coset orbit enumeration")

    def block_transpositions(partition):
        gens = []
        offset = 0
        for part in partition.parts:
            for k in range(offset, offset + part - 1):
                t = list(range(n))
                t[k], t[k + 1] = t[k + 1], t[k]
                gens.append(tuple(t))
            offset += part
        return gens

    left = block_transpositions(alpha)
    right = block_transpositions(beta)
    seen = set()
    orbits = 0
    for g in itertools.permutations(range(n)):
        if g in seen:
            continue
        orbits += 1
        stack = [g]
        seen.add(g)
        while stack:
            h = stack.pop()
            for a in left:
                img = tuple(a[h[i]] for i in range(n))
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
            for b in right:
                img = tuple(h[b[i]] for i in range(n))
                if img not in seen:
                    seen.add(img)
                    stack.append(img)
    return orbits


# ---------------------------------------------------------------------------
# the contraction poset

class CmPoset:
    """CM_n with its covers (single contractions) and reachability orders.

    ``covers`` lists (child, parent, kind, position) with
    parent = contract(child, kind, position); the poset order makes the
    contracted (coarser) matrix the larger one.
    """

    def __init__(self, n, elements, covers):
        self.n = n
        self.elements = tuple(elements)
        self.covers = tuple(covers)
        self.index = {m.rows: i for i, m in enumerate(self.elements)}
        up = [[] for _ in self.elements]
        down = [[] for _ in self.elements]
        for child, parent, kind, pos in self.covers:
            up[child].append((parent, kind, pos))
            down[parent].append((child, kind, pos))
        self.up = tuple(tuple(x) for x in up)
        self.down = tuple(tuple(x) for x in down)
        self._above = {}
        self._below_all = None

    def __len__(self):
        return len(self.elements)

    def element_index(self, matrix):
        rows = matrix.rows if isinstance(matrix, ContingencyMatrix) else tuple(
            tuple(r) for r in matrix
        )
        try:
            return self.index[rows]
        except KeyError:
            raise DomainError(f"matrix {rows} is not an element of CM_{self.n}")

    def rank(self, i):
        m = self.elements[i]
        return 2 * self.n - (m.p + m.q)

    def _above_masks(self, kinds):
        """Bitmask per element of everything strictly above it, following
        covers of the given kinds only.  Canonical order lists parents
        before children, so one ascending sweep suffices."""
        key = kinds
        if key not in self._above:
            above = [0] * len(self.elements)
            for i in range(len(self.elements)):
                acc = 0
                for parent, kind, _ in self.up[i]:
                    if kind in kinds:
                        acc |= above[parent] | (1 << parent)
                above[i] = acc
            self._above[key] = above
        return self._above[key]

    def leq(self, i, j, kinds=KINDS):
        """Index-based order test: element i <= element j."""
        if i == j:
            return True
        return bool(self._above_masks(tuple(kinds))[i] & (1 << j))

    def cm_leq(self, small, large):
        """The order generated by contractions of both kinds."""
        return self.leq(self.element_index(small), self.element_index(large))

    def cm_leq_horizontal(self, small, large):
        return self.leq(
            self.element_index(small), self.element_index(large), (HORIZONTAL,)
        )

    def cm_leq_vertical(self, small, large):
        return self.leq(
            self.element_index(small), self.element_index(large), (VERTICAL,)
        )

    def below_mask(self, i):
        """Bitmask of elements strictly below element i (both kinds)."""
        if self._below_all is None:
            below = [0] * len(self.elements)
            above = self._above_masks(KINDS)
            for child, mask in enumerate(above):
                bit = 1 << child
                m = mask
                while m:
                    lsb = m & -m
                    below[lsb.bit_length() - 1] |= bit
                    m ^= lsb
            self._below_all = below
        return self._below_all[i]

    def maximum(self):
        """Index of the 1x1 matrix (n)."""
        return self.element_index(ContingencyMatrix(((self.n,),), check=False))

    def minimal_indices(self):
        return tuple(i for i in range(len(self.elements)) if not self.down[i])


def build_poset(n):
    """Enumerate CM_n and record every single-contraction cover."""
    guard(n, POSET_CAP, "contingency poset construction")
    elements = enumerate_cm(n)
    index = {m.rows: i for i, m in enumerate(elements)}
    covers = []
    for child, m in enumerate(elements):
        for kind, limit in ((HORIZONTAL, m.p - 1), (VERTICAL, m.q - 1)):
            for pos in range(limit):
                parent = index[contract(m, kind, pos).rows]
                covers.append((child, parent, kind, pos))
    return CmPoset(n, elements, covers)


def poset_to_json(poset):
    return {
        "n": poset.n,
        "elements": [m.to_json() for m in poset.elements],
        "covers": [
            {"from": child, "to": parent, "kind": kind, "pos": pos}
            for child, parent, kind, pos in poset.covers
        ],
    }


def poset_to_dot(poset):
    """Graphviz DOT of the Hasse diagram; arrows follow contractions."""
    lines = [f"digraph cm_{poset.n} {{", "  rankdir=LR;", "  node [shape=box];"]
    for i, m in enumerate(poset.elements):
        label = "|".join(" ".join(str(x) for x in row) for row in m.rows)
        lines.append(f'  e{i} [label="{label}"];')
    for child, parent, kind, pos in poset.covers:
        lines.append(f'  e{child} -> e{parent} [label="{kind[0]}{pos}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
