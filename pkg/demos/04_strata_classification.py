"""Classifying point configurations into four nested stratifications.

A multiset of n rational points in the plane determines a contingency
matrix (which real parts and which imaginary parts coincide), an FNF
label (imaginary lines first, then the pattern on each line), the dual
FNF label (axes swapped), and a multiplicity partition (the complex
stratum).  Chains of anodyne contractions sweep out exactly the fibers of
these labels.
"""

from fractions import Fraction

from stochastihedron import (
    PointConfiguration,
    anodyne_classes,
    classify,
    fnf_closure_leq,
    fnf_label,
    ContingencyMatrix,
    meet_check,
)
from stochastihedron.contingency import HORIZONTAL, VERTICAL

print("Three weight-2 configurations and their labels:")
for pts, name in (
    (((0, 0), (0, 0)), "a double point"),
    (((-1, 0), (1, 0)), "two points on a horizontal line"),
    (((0, 1), (0, -1)), "two points on a vertical line"),
):
    out = classify(PointConfiguration(pts))
    print(f"  {name}:")
    print(f"    matrix {out['matrix']['rows']}  multiplicities {out['multiplicity']}")
    print(f"    fnf beta={out['fnf']['beta']} gamma={out['fnf']['gamma']}")
    print(f"    dimensions {out['dimensions']}")

print("\nExact collision detection (1/3 vs 0.33333333 stay distinct):")
z = PointConfiguration(((Fraction(1, 3), 0), (Fraction(33333333, 10**8), 0)))
print(f"  matrix {classify(z)['matrix']['rows']}")

print("\nClosure order on FNF labels sees the interleaving of merged lines:")
coarse = fnf_label(ContingencyMatrix([[2], [1]]))
fine = fnf_label(ContingencyMatrix([[0, 2], [1, 0]]))
print(f"  [(3):(2,1)] <= [(1,2):((1),(2))]: {fnf_closure_leq(coarse, fine)}")
print(f"  (the double point slides left of the simple one as the lines merge)")

print("\nAnodyne equivalence classes match the label fibers:")
for n in (2, 3, 4):
    both = anodyne_classes(n)
    hor = anodyne_classes(n, (HORIZONTAL,))
    ver = anodyne_classes(n, (VERTICAL,))
    print(
        f"  n={n}: both-kinds classes={both['class_count']} (= multiplicity fibers:"
        f" {both['pass']}), horizontal={hor['class_count']} (= fnf fibers:"
        f" {hor['pass']}), vertical={ver['class_count']} (= dual fibers: {ver['pass']})"
    )

print("\nGrouping by (fnf, dual-fnf) pairs determines the matrix size:")
for n in (3, 4):
    rep = meet_check(n)
    print(f"  n={n}: {rep['group_count']} groups, all sized consistently: {rep['pass']}")
