"""Walk through the census of contingency matrices of small weight.

A contingency matrix is a nonnegative integer grid with no zero row or
column; its weight is the sum of all entries.  This script enumerates
them, shows the margins and the contraction moves, and checks the census
against the double-coset count inside the symmetric group.
"""

from stochastihedron import (
    HORIZONTAL,
    VERTICAL,
    colored_lift_count,
    contract,
    count_cm,
    double_coset_count,
    enumerate_cm,
    enumerate_ordered_partitions,
    margins,
)


def show(matrix):
    return "[" + "; ".join(" ".join(str(x) for x in row) for row in matrix.rows) + "]"


print("All contingency matrices of weight 2:")
for m in enumerate_cm(2):
    weight, hor, ver = margins(m)
    print(f"  {show(m):24s} margins: rows={hor.parts} cols={ver.parts}")

print("\nContractions of the 2x2 identity matrix:")
m = enumerate_cm(2)[-1]
print(f"  start:            {show(m)}")
print(f"  merge rows 0,1:   {show(contract(m, HORIZONTAL, 0))}")
print(f"  merge cols 0,1:   {show(contract(m, VERTICAL, 0))}")

print("\nCensus sizes (matching the closed formulas, see demo 03):")
for n in range(1, 8):
    print(f"  weight {n}: {count_cm(n):>8,} matrices")

print("\nWith both margins fixed to (2,1) there are exactly two matrices,")
print("matching the number of double cosets of S_2 x S_1 in S_3:")
for m in enumerate_cm(alpha=(2, 1), beta=(2, 1)):
    print(f"  {show(m):16s} colored lifts: {colored_lift_count(m)}")
print(f"  double cosets: {double_coset_count((2, 1), (2, 1))}")

print("\nDouble-coset counts agree with the census for every margin pair (n=4):")
pairs = 0
for alpha in enumerate_ordered_partitions(4):
    for beta in enumerate_ordered_partitions(4):
        assert double_coset_count(alpha, beta) == len(
            enumerate_cm(alpha=alpha, beta=beta)
        )
        pairs += 1
print(f"  verified {pairs} margin pairs")
