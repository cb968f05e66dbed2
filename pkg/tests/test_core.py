import random

import pytest

from oddcox import (
    INFINITY,
    SystemInvariant,
    canonical_star,
    classify,
    decide_isomorphic,
    diagram_gamma,
    diagram_v,
    invariants,
    merge_generators,
    path_system,
    star_form,
    system_from_json,
    system_to_json,
    validate_system,
)
from oddcox.core import random_tree_system, relabel
from oddcox.errors import (
    DiagonalNotOne,
    EvenOrSmallExponent,
    MalformedInvariant,
    NotAdjacentPair,
    NotInTW,
    NotStarForm,
    NotSymmetric,
    SystemFileError,
)
from conftest import star


def test_validate_smallest_odd_system():
    sys = validate_system([[1, 3], [3, 1]])
    assert sys.rank == 2
    assert sys.m(1, 2) == 3


def test_validate_rejects_even_exponent():
    with pytest.raises(EvenOrSmallExponent):
        validate_system([[1, 4], [4, 1]])


def test_validate_rank3_path_with_gap():
    sys = validate_system([[1, 3, INFINITY], [3, 1, 5], [INFINITY, 5, 1]])
    assert sys.finite_pairs() == [(1, 2, 3), (2, 3, 5)]


def test_validate_rejects_asymmetric_and_bad_diagonal():
    with pytest.raises(NotSymmetric):
        validate_system([[1, 3], [5, 1]])
    with pytest.raises(DiagonalNotOne):
        validate_system([[3, 3], [3, 1]])
    with pytest.raises(EvenOrSmallExponent):
        validate_system([[1, 1], [1, 1]])


def test_classify_star_triangle_disjoint():
    assert classify(star(3, 3).system) == classify(star(3, 3).system)
    c = classify(star(3, 3).system)
    assert (c.odd, c.connected, c.tree, c.in_tw) == (True, True, True, True)
    triangle = validate_system(
        [[1, 3, 3], [3, 1, 3], [3, 3, 1]]
    )
    c = classify(triangle)
    assert c.tree is False and c.in_tw is False
    two_edges = validate_system(
        [
            [1, 3, INFINITY, INFINITY],
            [3, 1, INFINITY, INFINITY],
            [INFINITY, INFINITY, 1, 3],
            [INFINITY, INFINITY, 3, 1],
        ]
    )
    c = classify(two_edges)
    assert c.connected is False and c.in_tw is False


def test_classify_rank_one_not_in_family():
    sys = validate_system([[1]])
    c = classify(sys)
    assert c.connected and c.tree and not c.in_tw


def test_invariants_examples():
    assert invariants(path_system([3, 5, 3])) == SystemInvariant(4, (3, 3, 5))
    assert invariants(star(3, 3, 3).system) == SystemInvariant(4, (3, 3, 3))
    assert invariants(validate_system([[1, 9], [9, 1]])) == SystemInvariant(2, (9,))


def test_invariants_rejects_non_family():
    with pytest.raises(NotInTW):
        invariants(validate_system([[1]]))


def test_canonical_star_blocks():
    s = canonical_star(SystemInvariant(4, (3, 3, 5)))
    assert s.t == (3, 3, 5)
    assert s.blocks == ((2, 3), (4,))
    assert s.distinct == (3, 5) and s.multiplicities == (2, 1)


def test_canonical_star_rank_two():
    s = canonical_star(SystemInvariant(2, (7,)))
    assert s.t == (7,)
    assert s.system.m(1, 2) == 7


def test_canonical_star_of_path_invariants():
    inv = invariants(path_system([3, 3, 3]))
    s = canonical_star(inv)
    assert s.t == (3, 3, 3)
    assert invariants(s.system) == inv


def test_canonical_star_rejects_malformed():
    with pytest.raises(MalformedInvariant):
        canonical_star(SystemInvariant(4, (3, 3)))
    with pytest.raises(MalformedInvariant):
        canonical_star(SystemInvariant(1, ()))


def test_decide_isomorphic_examples():
    assert decide_isomorphic(star(3, 5).system, path_system([5, 3])) is True
    assert decide_isomorphic(star(3, 3).system, star(3, 5).system) is False
    assert decide_isomorphic(star(3).system, star(5).system) is False


def test_decide_isomorphic_rejects_outside_family():
    with pytest.raises(NotInTW):
        decide_isomorphic(star(3).system, validate_system([[1]]))


def test_merge_leaf_pair_same_label():
    out, mapping = merge_generators(star(3, 3), 2, 3)
    assert invariants(out) == SystemInvariant(2, (3,))
    assert mapping == (1, 2, 2)


def test_merge_center_leaf():
    out, mapping = merge_generators(star(3, 3), 1, 2)
    assert invariants(out) == SystemInvariant(2, (3,))
    assert mapping == (1, 1, 2)


def test_merge_coprime_labels_collapses():
    out, mapping = merge_generators(star(3, 5), 2, 3)
    assert out.rank == 1
    assert mapping == (1, 1, 1)


def test_merge_rejects_bad_pair():
    with pytest.raises(NotAdjacentPair):
        merge_generators(star(3, 3), 2, 2)
    with pytest.raises(NotAdjacentPair):
        merge_generators(star(3, 3), 1, 4)


def test_merge_output_stays_in_family():
    rng = random.Random(7)
    for _ in range(40):
        ms = sorted(rng.choice((3, 5, 9, 15)) for _ in range(rng.randint(2, 4)))
        s = canonical_star(SystemInvariant(len(ms) + 1, tuple(ms)))
        i = rng.randint(1, s.rank)
        j = rng.choice([v for v in range(1, s.rank + 1) if v != i])
        out, mapping = merge_generators(s, i, j)
        assert len(mapping) == s.rank
        if out.rank >= 2:
            c = classify(out)
            assert c.in_tw
        else:
            assert out.rank == 1


def test_star_form_round_trip_and_rejections():
    s = star(3, 3, 5)
    again = star_form(s.system)
    assert again.t == s.t and again.blocks == s.blocks
    with pytest.raises(NotStarForm):
        star_form(path_system([3, 3, 3]))
    with pytest.raises(NotStarForm):
        star_form(validate_system([[1]]))


def test_diagrams():
    s = star(3, 5).system
    v = diagram_v(s)
    assert v.edges == ((1, 2, 3), (1, 3, 5))
    g = diagram_gamma(s)
    assert len(g.edges) == 3  # complete graph on 3 vertices
    labels = {(i, j): lab for i, j, lab in g.edges}
    assert labels[(1, 2)] is None and labels[(1, 3)] == 5
    assert labels[(2, 3)] == INFINITY


def test_json_round_trip_identity():
    rng = random.Random(11)
    for _ in range(30):
        sys = random_tree_system(rng, rng.randint(1, 6))
        again = system_from_json(system_to_json(sys))
        assert again == sys


def test_json_parse_errors_are_precise():
    with pytest.raises(SystemFileError, match=r"edges\[0\]: self-loop"):
        system_from_json('{"rank": 2, "edges": [{"u":1,"v":1,"m":3}]}')
    with pytest.raises(SystemFileError, match=r"edges\[1\]: duplicate edge 1-2"):
        system_from_json(
            '{"rank": 2, "edges": [{"u":1,"v":2,"m":3},{"u":2,"v":1,"m":5}]}'
        )
    with pytest.raises(SystemFileError, match=r"edges\[0\].m: label 4 is even"):
        system_from_json('{"rank": 2, "edges": [{"u":1,"v":2,"m":4}]}')
    with pytest.raises(SystemFileError, match=r"edges\[0\].v: vertex 9"):
        system_from_json('{"rank": 2, "edges": [{"u":1,"v":9,"m":3}]}')
    with pytest.raises(SystemFileError, match="missing field 'rank'"):
        system_from_json('{"edges": []}')


def test_isomorphism_is_equivalence_relation():
    rng = random.Random(23)
    pool = [random_tree_system(rng, rng.randint(2, 5)) for _ in range(12)]
    pool += [relabel(s, _random_perm(rng, s.rank)) for s in pool[:6]]
    for a in pool:
        assert decide_isomorphic(a, a)
        for b in pool:
            assert decide_isomorphic(a, b) == decide_isomorphic(b, a)
            for c in pool:
                if decide_isomorphic(a, b) and decide_isomorphic(b, c):
                    assert decide_isomorphic(a, c)


def _random_perm(rng, n):
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm


def test_canonical_star_preserves_invariants():
    rng = random.Random(31)
    for _ in range(25):
        sys = random_tree_system(rng, rng.randint(2, 6))
        inv = invariants(sys)
        s = canonical_star(inv)
        assert invariants(s.system) == inv


def test_merge_mapping_is_a_homomorphism():
    # the generator map must send equal words to equal quotient words
    from oddcox import equal, reduce_word

    rng = random.Random(57)
    for multiset in ((3, 3), (3, 5), (3, 3, 5), (3, 9)):
        s = star(*multiset)
        for i in range(1, s.rank + 1):
            for j in range(i + 1, s.rank + 1):
                quotient, mapping = merge_generators(s, i, j)
                for _ in range(10):
                    w = tuple(
                        rng.randint(1, s.rank) for _ in range(rng.randint(0, 8))
                    )
                    canon = reduce_word(s.system, w)
                    assert equal(
                        quotient,
                        tuple(mapping[letter - 1] for letter in w),
                        tuple(mapping[letter - 1] for letter in canon),
                    )
                merged_pair = (i, j)
                image = tuple(mapping[letter - 1] for letter in merged_pair)
                assert reduce_word(quotient, image) == ()
