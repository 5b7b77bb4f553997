import random
from fractions import Fraction

import pytest

from raagcheeger import (
    GF2,
    GF3,
    GF5,
    QQ,
    BudgetError,
    Budgets,
    PairingError,
    PairingTriple,
    SimplicialGraph,
    Subspace,
    apply_pairing,
    augment_triple,
    build_triple,
    cheeger_constant_coordinate,
    cheeger_constant_exhaustive,
    cheeger_graph_exact,
    cheeger_of_subspace,
    complete,
    cycle,
    edgeless,
    enumerate_subspaces,
    is_alternating,
    is_connected,
    is_pairing_connected_exhaustive,
    labeled_graphs,
    orthogonal_complement,
    path,
    q_valence_coordinate,
    q_valence_exhaustive,
    random_triple,
    star,
    zero_triple,
)


def p3_triple(field=GF2):
    return build_triple(path(3), field)


def span(field, n, *vectors):
    return Subspace.from_vectors(field, n, vectors)


# -- construction and validation ----------------------------------------------


def test_symmetry_is_validated():
    with pytest.raises(PairingError, match="symmetry violated"):
        PairingTriple.of(GF3, 2, 1, [[(0,), (1,)], [(1,), (0,)]], "antisymmetric")
    PairingTriple.of(GF3, 2, 1, [[(0,), (1,)], [(2,), (0,)]], "antisymmetric")
    PairingTriple.of(GF3, 2, 1, [[(0,), (1,)], [(1,), (0,)]], "symmetric")


def test_componentwise_needs_signs():
    with pytest.raises(PairingError, match="sign"):
        PairingTriple.of(GF2, 1, 1, [[(1,)]], "componentwise")
    PairingTriple.of(GF2, 1, 1, [[(1,)]], "componentwise", [1])
    with pytest.raises(PairingError):
        PairingTriple.of(GF2, 1, 1, [[(1,)]], "componentwise", [2])


def test_triple_json_round_trip():
    t = random_triple(3, 2, GF3, seed=5)
    assert PairingTriple.from_json_dict(t.to_json_dict()) == t
    aug = augment_triple(t, 1)
    assert PairingTriple.from_json_dict(aug.to_json_dict()) == aug


# -- apply_pairing ---------------------------------------------------------------


def test_pairing_of_zero_vector_vanishes():
    t = p3_triple()
    assert apply_pairing(t, (0, 0, 0), (1, 1, 0)) == (0, 0)


def test_pairing_on_edge_duals():
    t = build_triple(complete(2), GF2)
    assert apply_pairing(t, (1, 0), (0, 1)) == (1,)


def test_pairing_expands_bilinearly():
    # path a-b-c: q(a* + c*, b*) covers both edges
    t = p3_triple()
    assert apply_pairing(t, (1, 0, 1), (0, 1, 0)) == (1, 1)


def test_pairing_dimension_mismatch():
    with pytest.raises(PairingError):
        apply_pairing(p3_triple(), (1, 0), (0, 1, 0))


# -- orthogonal complements --------------------------------------------------------


def test_complement_under_zero_pairing_is_everything():
    t = zero_triple(4, 2, GF3)
    f = span(GF3, 4, (1, 2, 0, 1))
    assert orthogonal_complement(t, f) == Subspace.full(GF3, 4)


def test_complement_in_path_triple():
    t = p3_triple()
    assert orthogonal_complement(t, span(GF2, 3, (1, 0, 0))) == span(
        GF2, 3, (1, 0, 0), (0, 0, 1)
    )


def test_complement_in_edge_triple():
    t = build_triple(complete(2), GF2)
    assert orthogonal_complement(t, span(GF2, 2, (1, 0))) == span(GF2, 2, (1, 0))


def test_complement_is_monotone_decreasing():
    rng = random.Random(77)
    for _ in range(25):
        field = rng.choice([GF2, GF3])
        p = field.characteristic
        n = rng.randint(2, 5)
        t = random_triple(n, rng.randint(0, 3), field, seed=rng.randrange(2**32))
        vecs = [
            tuple(rng.randrange(p) for _ in range(n)) for _ in range(3)
        ]
        small = span(field, n, vecs[0])
        big = span(field, n, *vecs)
        c_small = orthogonal_complement(t, small)
        c_big = orthogonal_complement(t, big)
        for v in c_big.basis:
            assert c_small.contains(v)


def test_two_sided_complements_coincide():
    # q(f, v) = 0 for all f iff q(v, f) = 0 for all f, by (anti)symmetry
    rng = random.Random(13)
    for _ in range(10):
        t = random_triple(4, 2, GF3, seed=rng.randrange(2**32),
                          symmetry=rng.choice(["symmetric", "antisymmetric"]))
        f = span(GF3, 4, tuple(rng.randrange(3) for _ in range(4)))
        comp = orthogonal_complement(t, f)
        for v in comp.basis:
            for fv in f.basis:
                assert apply_pairing(t, v, fv) == (0, 0)
                assert apply_pairing(t, fv, v) == (0, 0)


# -- subspace Cheeger ---------------------------------------------------------------


def test_h_of_vertex_dual_in_path():
    t = p3_triple()
    assert cheeger_of_subspace(t, span(GF2, 3, (1, 0, 0))) == 1


def test_h_vanishes_for_zero_pairing():
    t = zero_triple(4, 1, GF2)
    assert cheeger_of_subspace(t, span(GF2, 4, (1, 0, 1, 0))) == 0


def test_h_of_two_ends_of_p4():
    t = build_triple(path(4), GF2)
    f = span(GF2, 4, (1, 0, 0, 0), (0, 0, 0, 1))
    assert cheeger_of_subspace(t, f) == 1


def test_h_precondition_enforced():
    t = p3_triple()
    with pytest.raises(PairingError):
        cheeger_of_subspace(t, Subspace.zero(GF2, 3))
    with pytest.raises(PairingError):
        # dim 2 > 3/2: not admissible
        cheeger_of_subspace(t, span(GF2, 3, (1, 0, 0), (0, 0, 1)))


def test_exhaustive_cheeger_p3():
    rep = cheeger_constant_exhaustive(p3_triple())
    assert rep.value == 1
    assert rep.subspaces_visited == 7  # the seven lines of GF(2)^3
    assert rep.minimizer == span(GF2, 3, (1, 0, 0))
    assert rep.method == "exhaustive"


def test_exhaustive_cheeger_zero_pairing():
    rep = cheeger_constant_exhaustive(zero_triple(4, 1, GF2))
    assert rep.value == 0


def test_exhaustive_cheeger_k2_gf3():
    rep = cheeger_constant_exhaustive(build_triple(complete(2), GF3))
    assert rep.value == 1
    assert rep.subspaces_visited == 4  # four lines in GF(3)^2


def test_cheeger_undefined_below_dim_two():
    rep = cheeger_constant_exhaustive(build_triple(edgeless(1), GF2))
    assert rep.value is None and rep.minimizer is None
    assert cheeger_constant_coordinate(build_triple(edgeless(1), GF2)).value is None


def test_exhaustive_cheeger_budget_message():
    t = zero_triple(4, 0, GF2)
    with pytest.raises(BudgetError, match="coordinate"):
        cheeger_constant_exhaustive(t, Budgets(subspace_dim=3))


def test_coordinate_cheeger_agrees_on_samples():
    for g in [path(3), cycle(4), star(3), edgeless(3),
              SimplicialGraph.of("abcd", [("a", "b"), ("c", "d")])]:
        t = build_triple(g, GF2)
        exh = cheeger_constant_exhaustive(t)
        coord = cheeger_constant_coordinate(t)
        assert coord.value == exh.value
        assert coord.method == "coordinate"
    disc = build_triple(SimplicialGraph.of("abcd", [("a", "b")]), GF2)
    assert cheeger_constant_coordinate(disc).value == 0


def test_cheeger_fused_path_matches_public_formula():
    # the oracle's in-loop h computation must agree with the public
    # complement + intersection route on every admissible subspace
    rng = random.Random(19)
    for _ in range(12):
        field = rng.choice([GF2, GF3])
        n = rng.randint(2, 4)
        t = random_triple(n, rng.randint(0, 3), field, seed=rng.randrange(2**32))
        rep = cheeger_constant_exhaustive(t)
        values = [
            cheeger_of_subspace(t, f)
            for f in enumerate_subspaces(n, range(1, n // 2 + 1), field)
        ]
        assert rep.value == min(values)


# -- q-valence -----------------------------------------------------------------------


def test_q_valence_zero_pairing():
    assert q_valence_exhaustive(zero_triple(3, 2, GF2)) == 0
    assert q_valence_coordinate(zero_triple(3, 2, GF2)) == 0


def test_q_valence_single_edge():
    t = build_triple(complete(2), GF2)
    assert q_valence_exhaustive(t) == 1
    assert q_valence_coordinate(t) == 1


def test_q_valence_path():
    t = p3_triple()
    assert q_valence_exhaustive(t) == 2
    assert q_valence_coordinate(t) == 2


def test_q_valence_star_coordinate():
    assert q_valence_coordinate(build_triple(star(3), GF2)) == 3


def test_q_valence_budget_error():
    t = build_triple(cycle(5), GF2)
    with pytest.raises(BudgetError, match="--budget-bases"):
        q_valence_exhaustive(t)


def test_q_valence_exhaustive_gf3():
    for g in [path(3), complete(3), edgeless(3)]:
        t = build_triple(g, GF3)
        from raagcheeger import max_valence

        assert q_valence_exhaustive(t) == max_valence(g)


# -- pairing-connectedness --------------------------------------------------------------


def test_dim_one_is_vacuously_connected():
    assert is_pairing_connected_exhaustive(build_triple(edgeless(1), GF2))


def test_two_isolated_vertices_disconnect():
    assert not is_pairing_connected_exhaustive(build_triple(edgeless(2), GF2))


def test_single_edge_is_connected():
    assert is_pairing_connected_exhaustive(build_triple(complete(2), GF2))


def test_pairing_connectivity_matches_graph_on_gf3():
    for g in labeled_graphs(3):
        t = build_triple(g, GF3)
        assert is_pairing_connected_exhaustive(t) == is_connected(g)


def test_positive_cheeger_implies_pairing_connected_small():
    rng = random.Random(2024)
    for _ in range(60):
        n = rng.randint(2, 4)
        t = random_triple(n, rng.randint(1, 3), GF2, seed=rng.randrange(2**32))
        rep = cheeger_constant_exhaustive(t)
        if rep.value is not None and rep.value > 0:
            assert is_pairing_connected_exhaustive(t)


# -- augmentation -----------------------------------------------------------------------


def test_augmented_edge_triple_entries():
    t = build_triple(complete(2), GF2)
    aug = augment_triple(t, 0)
    assert aug.dim_w == 2
    assert aug.tensor[0][0] == (0, 1)  # pivot pairs with itself in the new slot
    assert aug.tensor[1][1] == (0, 0)
    assert aug.tensor[0][1] == (1, 0)
    assert aug.symmetry == "componentwise"
    assert aug.signs == (-1, 1)
    # the pivot now touches one more basis vector than the graph valence
    assert q_valence_coordinate(aug) == q_valence_coordinate(t) + 1 == 2


def test_augment_pivot_range_checked():
    with pytest.raises(PairingError):
        augment_triple(p3_triple(), 3)


def test_augmentation_is_pointwise_monotone():
    # h_F never drops when the pairing gains a coordinate
    rng = random.Random(31)
    for _ in range(10):
        n = rng.randint(2, 5)
        t = random_triple(n, rng.randint(0, 2), GF2, seed=rng.randrange(2**32))
        aug = augment_triple(t, rng.randrange(n))
        for f in enumerate_subspaces(n, range(1, n // 2 + 1), GF2):
            assert cheeger_of_subspace(aug, f) >= cheeger_of_subspace(t, f)


def test_alternating_witness():
    for g in [path(3), cycle(4), star(3), edgeless(2)]:
        for field in (GF2, GF3, QQ):
            t = build_triple(g, field)
            assert is_alternating(t)
    assert not is_alternating(augment_triple(build_triple(cycle(4), GF2), 2))
    assert is_alternating(zero_triple(3, 1, GF5))


def test_alternating_detects_gf2_diagonal():
    t = PairingTriple.of(GF2, 2, 1, [[(1,), (1,)], [(1,), (0,)]], "symmetric")
    assert not is_alternating(t)


# -- sign insensitivity -------------------------------------------------------------------


def negated(t: PairingTriple) -> PairingTriple:
    f = t.field
    tensor = tuple(
        tuple(tuple(f.neg(x) for x in w) for w in row) for row in t.tensor
    )
    return PairingTriple.of(f, t.dim_v, t.dim_w, tensor, t.symmetry, t.signs)


def test_sign_convention_does_not_change_invariants():
    # decomposition counts explode with the field order, so the connectivity
    # oracle only runs where it stays in the thousands
    cases = [
        (path(4), GF3, True),
        (cycle(5), GF3, False),
        (star(3), GF3, True),
        (path(3), GF5, True),
        (path(4), GF5, False),
        (star(3), GF5, False),
    ]
    for g, field, check_connectivity in cases:
        t = build_triple(g, field).pairing
        flipped = negated(t)
        assert (
            cheeger_constant_exhaustive(t).value
            == cheeger_constant_exhaustive(flipped).value
        )
        assert q_valence_coordinate(t) == q_valence_coordinate(flipped)
        if check_connectivity:
            assert is_pairing_connected_exhaustive(t) == is_pairing_connected_exhaustive(
                flipped
            )


# -- random triples --------------------------------------------------------------------


def test_random_triple_is_deterministic_and_valid():
    a = random_triple(4, 3, GF3, seed=99)
    b = random_triple(4, 3, GF3, seed=99)
    assert a == b
    assert a.symmetry == "antisymmetric"
    assert all(x == (0, 0, 0) for x in (a.tensor[i][i] for i in range(4)))
    with pytest.raises(PairingError):
        random_triple(2, 1, QQ, seed=1)
