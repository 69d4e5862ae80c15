import random

import pytest

from shiftlab.algebra import catalog
from shiftlab.errors import (
    AlphabetMismatchError,
    GroupIsDedekindError,
    GroupMismatchError,
    GroupNotDedekindError,
    ObservableMissingError,
    SeedMismatchError,
)
from shiftlab.systems import (
    build_orbit_system,
    construct_phi_R,
    dedekind_witness_function,
    equivariant_isomorphism,
    is_furstenberg_system_of,
    partition_labels,
    phi_dedekind,
    product_flip_extension,
    set_partitions,
    shift,
)

CATALOG = catalog()
Z4 = CATALOG["z4"]
S3 = CATALOG["s3"]
BELL = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203, 7: 877, 8: 4140}


# -- shift --------------------------------------------------------------------

def test_right_shift_by_identity_is_identity():
    x = (3, 1, 4, 1)
    assert shift(Z4, x, Z4.identity, "right") == x


def test_z4_right_shift_by_one():
    assert shift(Z4, (0, 1, 2, 3), 1, "right") == (1, 2, 3, 0)


def test_left_shifts_compose_as_an_action_on_s3():
    # L_{h2} after L_{h1} equals L_{h2*h1} on sample configs
    random.seed(7)
    for _ in range(5):
        x = tuple(random.randrange(3) for _ in range(6))
        for h1 in S3.elements():
            for h2 in S3.elements():
                lhs = shift(S3, shift(S3, x, h1, "left"), h2, "left")
                assert lhs == shift(S3, x, S3.mul(h2, h1), "left")


def test_shift_rejects_wrong_length():
    with pytest.raises(AlphabetMismatchError):
        shift(Z4, (0, 1), 1, "right")


# -- orbit systems --------------------------------------------------------------

def test_z4_period_two_orbit_has_two_points():
    S = build_orbit_system(Z4, (0, 1, 0, 1), "R")
    assert len(S) == 2


def test_constant_function_gives_one_point_any_mode():
    for mode in ("R", "L", "Ltilde", "anti"):
        assert len(build_orbit_system(S3, (7,) * 6, mode)) == 1


def test_s3_witness_function_orbit_sizes():
    f = dedekind_witness_function(S3)
    assert len(build_orbit_system(S3, f, "R")) == 6
    assert len(build_orbit_system(S3, f, "Ltilde")) == 3


def test_action_laws_hold_exhaustively_on_catalog():
    for name, G in CATALOG.items():
        if G.order > 8:
            continue
        f = tuple(i % 3 for i in range(G.order))
        for mode in ("R", "L", "Ltilde", "anti"):
            S = build_orbit_system(G, f, mode)
            ok, witness = S.satisfies_action_law()
            assert ok, (name, mode, witness)


def test_mode_l_observable_reproduces_f_along_base():
    f = (0, 1, 2, 0, 1, 2)
    S = build_orbit_system(S3, f, "L")
    assert tuple(S.observable[S.act[g][S.base]] for g in S3.elements()) == f


# -- equivariant isomorphism ------------------------------------------------------

def test_self_isomorphism_exists():
    S = build_orbit_system(S3, (0, 0, 1, 2, 1, 2), "R")
    m = equivariant_isomorphism(S, S)
    assert m is not None and sorted(m) == list(range(len(S)))


def test_abelian_r_vs_naive_left_are_isomorphic():
    A = build_orbit_system(Z4, (0, 1, 2, 3), "R")
    B = build_orbit_system(Z4, (0, 1, 2, 3), "Ltilde")
    assert equivariant_isomorphism(A, B) is not None


def test_s3_witness_r_vs_naive_left_not_isomorphic():
    f = dedekind_witness_function(S3)
    A = build_orbit_system(S3, f, "R")
    B = build_orbit_system(S3, f, "Ltilde")
    assert equivariant_isomorphism(A, B) is None


def test_isomorphism_is_symmetric_and_rechecks():
    for f in [(0, 1, 0, 1), (0, 1, 2, 3), (0, 0, 1, 1)]:
        A = build_orbit_system(Z4, f, "R")
        B = build_orbit_system(Z4, f, "Ltilde")
        ab = equivariant_isomorphism(A, B)
        ba = equivariant_isomorphism(B, A)
        assert (ab is None) == (ba is None)
        if ab is not None:
            for g in Z4.elements():
                for i in range(len(A)):
                    assert ab[A.act[g][i]] == B.act[g][ab[i]]


def test_group_mismatch_raises():
    A = build_orbit_system(Z4, (0, 1, 0, 1), "R")
    B = build_orbit_system(S3, (0, 1, 0, 1, 0, 1), "R")
    with pytest.raises(GroupMismatchError):
        equivariant_isomorphism(A, B)


# -- Furstenberg property -----------------------------------------------------------

def test_right_orbit_system_is_a_furstenberg_system_by_construction():
    f = (0, 0, 1, 2, 1, 2)
    S = build_orbit_system(S3, f, "R")
    res = is_furstenberg_system_of(S, f)
    assert res.accepted
    assert tuple(res.observable[S.act[g][res.base]] for g in S3.elements()) == f


def test_relabeled_query_on_two_point_system():
    S = build_orbit_system(Z4, (0, 1, 0, 1), "R")
    assert is_furstenberg_system_of(S, (1, 0, 1, 0)).accepted


def test_s3_witness_naive_left_is_not_a_furstenberg_system():
    f = dedekind_witness_function(S3)
    S = build_orbit_system(S3, f, "Ltilde")
    res = is_furstenberg_system_of(S, f)
    assert not res.accepted and res.reasons


def test_anti_system_property_tested_not_assumed():
    # abelian: anti-mode orbit systems are Furstenberg systems for every partition
    for name in ("z2", "z3", "z4", "z5", "z2xz2"):
        G = CATALOG[name]
        for f in set_partitions(G.order):
            S = build_orbit_system(G, f, "anti")
            assert is_furstenberg_system_of(S, f).accepted, (name, f)
    # S3: some partition fails
    failing = [f for f in set_partitions(6)
               if not is_furstenberg_system_of(build_orbit_system(S3, f, "anti"), f).accepted]
    assert failing


# -- canonical map --------------------------------------------------------------------

def test_phi_r_on_the_orbit_system_itself_is_an_isomorphism():
    f = (0, 1, 2, 0, 1, 2)
    S = build_orbit_system(S3, f, "R")
    res = construct_phi_R(S, f)
    assert res.verdict == "isomorphism"
    assert res.mapping == list(range(len(S)))


def test_phi_r_on_product_extension_is_a_proper_factor():
    f = (0, 1, 0, 1)
    ext = product_flip_extension(Z4, f)
    res = construct_phi_R(ext, f)
    assert res.verdict == "factor"
    assert res.surjective and not res.injective
    assert len(ext) == 2 * len(res.target)


def test_phi_r_corrupted_observable_raises_seed_mismatch():
    f = (0, 1, 0, 1)
    S = build_orbit_system(Z4, f, "R")
    S.observable = [1 - v for v in S.observable]
    with pytest.raises(SeedMismatchError):
        construct_phi_R(S, f)


def test_phi_r_requires_observable():
    S = build_orbit_system(Z4, (0, 1, 0, 1), "Ltilde")
    with pytest.raises(ObservableMissingError):
        construct_phi_R(S, (0, 1, 0, 1))


# -- Dedekind machinery -----------------------------------------------------------------

def test_witness_function_for_s3_labels_three_cosets():
    f = dedekind_witness_function(S3)
    assert sorted(set(f)) == [1, 2, 3]
    assert all(sum(1 for v in f if v == i) == 2 for i in (1, 2, 3))


def test_witness_function_for_d4_labels_four_cosets():
    f = dedekind_witness_function(CATALOG["d4"])
    assert sorted(set(f)) == [1, 2, 3, 4]
    assert all(sum(1 for v in f if v == i) == 2 for i in (1, 2, 3, 4))


def test_witness_function_rejects_dedekind_groups():
    with pytest.raises(GroupIsDedekindError):
        dedekind_witness_function(Z4)


def test_phi_dedekind_z4_period_two():
    res = phi_dedekind(Z4, (0, 1, 0, 1))
    assert len(res.source) == len(res.target) == 2
    assert sorted(res.mapping) == [0, 1]


def test_phi_dedekind_rejects_s3():
    with pytest.raises(GroupNotDedekindError):
        phi_dedekind(S3, (0, 1, 0, 1, 0, 1))


def test_phi_dedekind_all_partitions_of_q8():
    q8 = CATALOG["q8"]
    count = 0
    for f in set_partitions(8):
        phi_dedekind(q8, f)  # raises on any verification failure
        count += 1
    assert count == BELL[8]


def test_dedekind_dichotomy_on_catalog():
    # all partitions accepted for the naive left system <=> the group is Dedekind
    for name, G in CATALOG.items():
        expected = G.is_dedekind().dedekind
        verdicts = []
        for f in set_partitions(G.order):
            S = build_orbit_system(G, f, "Ltilde")
            ok = is_furstenberg_system_of(S, f).accepted
            verdicts.append(ok)
            if not ok and not expected:
                break  # one failure settles the non-Dedekind direction
        assert all(verdicts) == expected, name


# -- partitions helper ---------------------------------------------------------------------

def test_system_dump_is_stable():
    S = build_orbit_system(Z4, (0, 1, 0, 1), "R")
    assert S.dump() == (
        "group z4 order 4 kind action\n"
        "points 2\n"
        "  p0 = 0,1,0,1\n"
        "  p1 = 1,0,1,0\n"
        "act g=0: 0,1\n"
        "act g=1: 1,0\n"
        "act g=2: 0,1\n"
        "act g=3: 1,0\n"
        "base p0\n"
        "observable 0,1"
    )


def test_set_partition_counts_are_bell_numbers():
    for n in range(1, 7):
        assert sum(1 for _ in set_partitions(n)) == BELL[n]


def test_partition_labels_canonicalizes():
    assert partition_labels((5, 5, 9, 5, 2)) == (0, 0, 1, 0, 2)
