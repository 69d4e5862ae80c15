from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from shiftlab.algebra import (
    QuadraticNumber,
    Z3B_IDENTITY,
    catalog,
    cyclic_group,
    frac_part,
    group_validate,
    is_dedekind,
    is_normal,
    parse_quadratic,
    qnum_compare,
    solve_hit,
    subgroups,
    z3b,
    z3b_f,
)
from shiftlab.errors import (
    MismatchedFieldError,
    NoInverseError,
    NotAssociativeError,
    NotClosedError,
    NoIdentityError,
    OrderBoundExceededError,
    RationalAlphaError,
    ScenarioError,
)

ALPHA = QuadraticNumber(-2, 1, 5)  # sqrt(5) - 2
CATALOG = catalog()


# -- independent oracles -------------------------------------------------------

def brute_force_subgroups(G):
    """Subset-closure oracle: check every subset of indices directly."""
    n = G.order
    out = []
    for mask in range(1 << n):
        S = [i for i in range(n) if mask >> i & 1]
        if G.identity not in S:
            continue
        sset = set(S)
        if all(G.mul(a, b) in sset for a in S for b in S) and all(G.inv(a) in sset for a in S):
            out.append(tuple(S))
    return sorted(out, key=lambda t: (len(t), t))


def decimal_value(x, prec=110):
    getcontext().prec = prec
    v = Decimal(x.u.numerator) / Decimal(x.u.denominator)
    if x.v:
        root = Decimal(x.d).sqrt()
        v += Decimal(x.v.numerator) / Decimal(x.v.denominator) * root
    return v


# -- group validation ----------------------------------------------------------

def test_trivial_group():
    G = group_validate([[0]])
    assert G.order == 1 and G.identity == 0 and G.inverse == (0,)


def test_z4_is_valid():
    G = group_validate([[(a + b) % 4 for b in range(4)] for a in range(4)])
    assert G.order == 4
    assert G.inverse == (0, 3, 2, 1)


def test_corrupted_z4_reports_broken_axiom():
    table = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    table[1][1] = 3
    with pytest.raises((NotAssociativeError, NoInverseError)) as exc:
        group_validate(table)
    assert exc.value.witness is not None


def test_not_closed_witness_is_row_major_first():
    with pytest.raises(NotClosedError) as exc:
        group_validate([[0, 1], [7, 0]])
    assert exc.value.witness == (1, 0, 7)


def test_no_identity():
    # constant table: total right-absorption, no identity
    with pytest.raises(NoIdentityError):
        group_validate([[0, 0], [0, 0]])


def test_every_catalog_group_revalidates():
    for name, G in CATALOG.items():
        H = group_validate(G.table, name=name)
        assert H.identity == G.identity and H.inverse == G.inverse


# -- subgroup enumeration --------------------------------------------------------

def test_trivial_group_subgroups():
    assert subgroups(CATALOG["z1"]) == [(0,)]


def test_z4_subgroups():
    assert subgroups(CATALOG["z4"]) == [(0,), (0, 2), (0, 1, 2, 3)]


def test_s3_subgroup_census():
    subs = subgroups(CATALOG["s3"])
    assert len(subs) == 6
    sizes = sorted(len(s) for s in subs)
    assert sizes == [1, 2, 2, 2, 3, 6]


def test_subgroups_match_subset_brute_force_for_whole_catalog():
    for name, G in CATALOG.items():
        assert subgroups(G) == brute_force_subgroups(G), name


def test_subgroups_order_bound():
    with pytest.raises(OrderBoundExceededError):
        subgroups(cyclic_group(17))


def test_derived_caches_agree_with_recomputation():
    G = CATALOG["d4"]
    assert G.subgroups() == subgroups(G)
    assert G.is_dedekind().dedekind == is_dedekind(G).dedekind


# -- Dedekind test ----------------------------------------------------------------

def test_abelian_groups_are_dedekind():
    for name in ("z1", "z2", "z3", "z4", "z5", "z6", "z7", "z8", "z2xz2", "z2xz4", "z2xz2xz2"):
        assert is_dedekind(CATALOG[name]).dedekind, name


def test_q8_is_dedekind():
    assert is_dedekind(CATALOG["q8"]).dedekind


@pytest.mark.parametrize("name", ["s3", "d4"])
def test_non_dedekind_witness_checks_out(name):
    G = CATALOG[name]
    res = is_dedekind(G)
    assert not res.dedekind
    H, a, b = res.witness
    assert not is_normal(G, H)
    assert b in H
    assert G.mul(b, a) not in {G.mul(a, h) for h in H}
    # lexicographically first non-normal subgroup in the canonical order
    first_bad = next(S for S in subgroups(G) if not is_normal(G, S))
    assert H == first_bad


def test_s3_witness_subgroup_is_order_two():
    H, a, b = is_dedekind(CATALOG["s3"]).witness
    assert len(H) == 2 and CATALOG["s3"].identity in H


# -- quadratic numbers ---------------------------------------------------------------

def test_compare_examples():
    assert qnum_compare(ALPHA, QuadraticNumber(Fraction(1, 7))) == 1
    assert qnum_compare(ALPHA, ALPHA) == 0
    assert qnum_compare(2 * ALPHA, QuadraticNumber(Fraction(1, 2))) == -1


def test_frac_part_examples():
    assert frac_part(QuadraticNumber(Fraction(3, 2))) == QuadraticNumber(Fraction(1, 2))
    assert frac_part(2 * ALPHA) == 2 * ALPHA
    assert frac_part(5 * ALPHA) == 5 * ALPHA - 1


def test_floor_near_integers():
    x = QuadraticNumber(3)
    assert x.floor() == 3
    assert (x - Fraction(1, 10**9)).floor() == 2
    assert QuadraticNumber(-2, 1, 5).floor() == 0
    assert (QuadraticNumber(0, 1, 2) * -1).floor() == -2  # -sqrt(2)


def test_mismatched_fields_rejected():
    with pytest.raises(MismatchedFieldError):
        QuadraticNumber(0, 1, 2) + QuadraticNumber(0, 1, 5)
    # rational embeddings mix with anything
    assert QuadraticNumber(1) + QuadraticNumber(0, 1, 5) == QuadraticNumber(1, 1, 5)


def test_non_squarefree_radicand_rejected():
    with pytest.raises(MismatchedFieldError):
        QuadraticNumber(0, 1, 8)


def test_solve_hit_examples():
    assert solve_hit(ALPHA, ALPHA) == 1
    assert solve_hit(ALPHA, QuadraticNumber(Fraction(1, 7))) is None
    assert solve_hit(ALPHA, QuadraticNumber(0)) == 0


def test_solve_hit_requires_irrational_alpha():
    with pytest.raises(RationalAlphaError):
        solve_hit(QuadraticNumber(Fraction(1, 3)), ALPHA)


def test_solve_hit_soundness_and_brute_force_completeness():
    points = [ALPHA, 2 * ALPHA, QuadraticNumber(Fraction(1, 7)), QuadraticNumber(Fraction(6, 7)),
              QuadraticNumber(0), 7 * ALPHA - 1]
    for p in points:
        n = solve_hit(ALPHA, p)
        if n is not None:
            assert frac_part(n * ALPHA) == frac_part(p)
        else:
            hits = [m for m in range(-10**4, 10**4 + 1) if frac_part(m * ALPHA) == frac_part(p)]
            assert hits == []


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@st.composite
def quadratics(draw):
    return QuadraticNumber(draw(rationals), draw(rationals), 5)


@given(quadratics(), quadratics(), quadratics())
@settings(max_examples=150)
def test_compare_is_a_total_order(x, y, z):
    assert qnum_compare(x, y) == -qnum_compare(y, x)
    if qnum_compare(x, y) <= 0 and qnum_compare(y, z) <= 0:
        assert qnum_compare(x, z) <= 0


@given(quadratics(), quadratics())
@settings(max_examples=150)
def test_compare_consistent_with_high_precision_decimal(x, y):
    dx, dy = decimal_value(x), decimal_value(y)
    if abs(dx - dy) > Decimal(10) ** -90:
        assert qnum_compare(x, y) == (1 if dx > dy else -1)


@given(quadratics())
@settings(max_examples=150)
def test_frac_reconstructs_and_lands_in_unit_interval(x):
    f = frac_part(x)
    assert f + x.floor() == x
    assert f.sign() >= 0
    assert qnum_compare(f, QuadraticNumber(1)) < 0


# -- quadratic expression grammar ----------------------------------------------------

def test_parse_quadratic_grammar():
    assert parse_quadratic("sqrt(5)-2") == ALPHA
    assert parse_quadratic("2*alpha", alpha=ALPHA) == 2 * ALPHA
    assert parse_quadratic("1/7") == QuadraticNumber(Fraction(1, 7))
    assert parse_quadratic("0") == QuadraticNumber(0)
    assert parse_quadratic("-1/2+sqrt(5)") == QuadraticNumber(Fraction(-1, 2), 1, 5)


def test_parse_quadratic_rejects_garbage():
    with pytest.raises(ScenarioError):
        parse_quadratic("sqrt(8)")
    with pytest.raises(ScenarioError):
        parse_quadratic("alpha")  # unbound
    with pytest.raises(ScenarioError):
        parse_quadratic("1+*2")


@given(quadratics())
@settings(max_examples=100)
def test_quadratic_string_round_trips(x):
    assert parse_quadratic(str(x)) == x


# -- Z/3Z (+) B -------------------------------------------------------------------

def test_z3b_f_pinned_values():
    assert z3b_f(Z3B_IDENTITY) == 0
    assert z3b_f(z3b(1, {1, 2})) == 1
    assert z3b_f(z3b(1, {1, 3})) == -1
    assert z3b_f(z3b(2, {1})) == 1
    assert z3b_f(z3b(2, {1, 2, 3})) == 1
    assert z3b_f(z3b(2, set())) == -1
    assert z3b_f(z3b(1, set())) == -1
    assert z3b_f(z3b(0, {1, 2})) == -1


z3b_elements = st.builds(
    z3b,
    st.integers(min_value=0, max_value=2),
    st.frozensets(st.integers(min_value=1, max_value=10), max_size=6),
)


@given(z3b_elements, z3b_elements, z3b_elements)
@settings(max_examples=200)
def test_z3b_group_laws(x, y, z):
    assert x.mul(y).mul(z) == x.mul(y.mul(z))
    assert x.mul(x.inv()) == Z3B_IDENTITY
    assert x.mul(Z3B_IDENTITY) == x


def test_z3b_b_part_is_self_inverse():
    x = z3b(0, {2, 5})
    assert x.mul(x) == Z3B_IDENTITY
