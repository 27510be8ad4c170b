import json
from fractions import Fraction

import pytest

from helpers import representation_suite, size_functor

import random

from stochastihedron.contingency import ContingencyMatrix, build_poset
from stochastihedron.errors import DomainError, StructuralError
from stochastihedron.sheaf import (
    PosetRepresentation,
    constant_sheaf,
    is_constructible,
    skyscraper,
    validate,
)


@pytest.fixture(scope="module")
def poset2():
    return build_poset(2)


def test_constant_sheaf_shape():
    rep = constant_sheaf(2, 1)
    assert rep.dims == (1, 1, 1, 1, 1)
    assert len(rep.cover_maps) == 6
    assert validate(rep)["pass"]
    for strat in ("cont", "fnf", "ifnf", "complex"):
        assert is_constructible(rep, strat) == (True, None)


def test_constant_sheaf_trivial_cases():
    rep = constant_sheaf(1, 3)
    assert rep.dims == (3,)
    assert not rep.cover_maps
    assert validate(rep)["pass"]
    zero = constant_sheaf(3, 0)
    assert validate(zero)["pass"]
    for strat in ("cont", "fnf", "ifnf", "complex"):
        assert is_constructible(zero, strat) == (True, None)


def test_unvalidated_rep_is_rejected():
    rep = constant_sheaf(2, 1)
    with pytest.raises(StructuralError):
        is_constructible(rep, "fnf")
    with pytest.raises(DomainError):
        validate(rep) and is_constructible(rep, "weird")


def test_broken_diamond_is_caught(poset2):
    rep = constant_sheaf(2, 1)
    maps = dict(rep.cover_maps)
    child = poset2.element_index(ContingencyMatrix([[1, 0], [0, 1]]))
    parent = poset2.element_index(ContingencyMatrix([[1, 1]]))
    maps[(child, parent)] = [[Fraction(2)]]
    broken = PosetRepresentation(poset2, [1] * 5, maps)
    report = validate(broken)
    assert not report["pass"]
    assert report["diamonds_failing"]
    bad = report["diamonds_failing"][0]
    assert bad["bottom"] == child
    assert bad["top"] == poset2.element_index(ContingencyMatrix([[2]]))


def test_zero_map_counterexample(poset2):
    # zero out the anodyne horizontal cover from the identity matrix, with
    # compensating zeros into the top so the diamonds still commute
    eye = [[Fraction(1)]]
    zero = [[Fraction(0)]]
    idx = poset2.element_index
    top = idx(ContingencyMatrix([[2]]))
    row2 = idx(ContingencyMatrix([[1, 1]]))
    col2 = idx(ContingencyMatrix([[1], [1]]))
    perm_id = idx(ContingencyMatrix([[1, 0], [0, 1]]))
    perm_swap = idx(ContingencyMatrix([[0, 1], [1, 0]]))
    maps = {
        (perm_id, row2): zero,
        (perm_swap, row2): eye,
        (perm_id, col2): eye,
        (perm_swap, col2): eye,
        (row2, top): zero,
        (col2, top): zero,
    }
    rep = PosetRepresentation(poset2, [1] * 5, maps)
    assert validate(rep)["pass"]

    ok, witness = is_constructible(rep, "fnf")
    assert not ok
    assert (witness["from"], witness["to"], witness["kind"]) == (
        perm_id,
        row2,
        "horizontal",
    )
    ok, _ = is_constructible(rep, "complex")
    assert not ok
    assert is_constructible(rep, "cont") == (True, None)
    assert is_constructible(rep, "ifnf") == (True, None)


def test_skyscraper_at_top_is_complex_constructible():
    for n in (2, 3):
        poset = build_poset(n)
        rep = skyscraper(poset, poset.maximum())
        assert validate(rep)["pass"]
        for strat in ("cont", "fnf", "ifnf", "complex"):
            assert is_constructible(rep, strat) == (True, None)


def test_skyscraper_elsewhere_can_fail():
    # weight 2: put the fiber on a permutation matrix; the anodyne covers
    # out of it get non-square maps (1 -> 0), so fnf must fail
    poset = build_poset(2)
    perm = poset.element_index(ContingencyMatrix([[1, 0], [0, 1]]))
    rep = skyscraper(poset, perm)
    assert validate(rep)["pass"]
    ok, witness = is_constructible(rep, "fnf")
    assert not ok and witness["from"] == perm
    assert is_constructible(rep, "cont") == (True, None)


def saturated_chain_composites(rep, bottom, top):
    """Oracle: compose cover maps along every saturated chain bottom..top."""
    poset = rep.poset
    out = []

    def walk(at, acc):
        if at == top:
            out.append(tuple(tuple(row) for row in acc))
            return
        for parent, _, _ in poset.up[at]:
            if parent == top or poset.leq(parent, top):
                matrix = rep.map_for(at, parent)
                composed = [
                    [
                        sum(
                            (matrix[i][k] * acc[k][j] for k in range(len(acc))),
                            Fraction(0),
                        )
                        for j in range(len(acc[0]) if acc else 0)
                    ]
                    for i in range(len(matrix))
                ]
                walk(parent, composed)

    identity = [
        [Fraction(1) if i == j else Fraction(0) for j in range(rep.dims[bottom])]
        for i in range(rep.dims[bottom])
    ]
    walk(bottom, identity)
    return out


def test_validate_equals_full_functoriality():
    rng = random.Random(7)
    for n in (2, 3):
        poset = build_poset(n)
        for _ in range(6):
            rep = size_functor(poset, rng)
            assert validate(rep)["pass"]
            for bottom in range(len(poset)):
                for top in range(len(poset)):
                    if bottom != top and poset.leq(bottom, top):
                        composites = set(
                            saturated_chain_composites(rep, bottom, top)
                        )
                        assert len(composites) == 1


def test_broken_rep_fails_both_validators(poset2):
    rep = constant_sheaf(2, 1)
    maps = dict(rep.cover_maps)
    child = poset2.element_index(ContingencyMatrix([[0, 1], [1, 0]]))
    parent = poset2.element_index(ContingencyMatrix([[1], [1]]))
    maps[(child, parent)] = [[Fraction(-1)]]
    broken = PosetRepresentation(poset2, [1] * 5, maps)
    assert not validate(broken)["pass"]
    composites = set(
        saturated_chain_composites(broken, child, poset2.maximum())
    )
    assert len(composites) > 1


def test_random_suite_equivalence():
    suite = representation_suite(40, max_n=3)
    outcomes = set()
    for rep in suite:
        assert validate(rep)["pass"]
        fnf_ok, _ = is_constructible(rep, "fnf")
        ifnf_ok, _ = is_constructible(rep, "ifnf")
        complex_ok, _ = is_constructible(rep, "complex")
        assert complex_ok == (fnf_ok and ifnf_ok)
        assert is_constructible(rep, "cont") == (True, None)
        outcomes.add((fnf_ok, ifnf_ok))
    assert len(outcomes) >= 3  # the suite genuinely varies


def test_shape_mismatch_is_structural():
    poset = build_poset(2)
    maps = {
        (child, parent): [[Fraction(1), Fraction(0)]]
        for child, parent, _, _ in poset.covers
    }
    rep = PosetRepresentation(poset, [1] * 5, maps)
    with pytest.raises(StructuralError):
        validate(rep)


def test_json_round_trip():
    rep = constant_sheaf(2, 2)
    data = rep.to_json()
    again = PosetRepresentation.from_json(json.loads(json.dumps(data)))
    assert again.dims == rep.dims
    assert again.cover_maps == rep.cover_maps

    sky = skyscraper(build_poset(2), 0)
    data = sky.to_json()
    data["maps"] = []  # zero-dimensional endpoints may omit their matrices
    again = PosetRepresentation.from_json(data)
    assert validate(again)["pass"]

    with pytest.raises(StructuralError):
        PosetRepresentation.from_json(
            {"n": 2, "spaces": {str(i): 1 for i in range(5)}, "maps": []}
        )
    with pytest.raises(StructuralError):
        PosetRepresentation.from_json({"spaces": {}})
