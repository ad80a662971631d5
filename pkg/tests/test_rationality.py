import pytest
from hypothesis import given
from hypothesis import strategies as st

from noether.algebra import lattice as L
from noether.algebra.cyclotomic import RootExponent
from noether.errors import NoetherError
from noether.groups import (GroupSpec, build_group, cyclic_group, dihedral_group, direct_product,
                            metacyclic_group, quaternion_group, structural_profile)
from noether.monomial import ActionAssignment, MonomialAutomorphism, MonomialMatrix
from noether.rationality import (NOT_RATIONAL, RATIONAL, UNKNOWN, FieldDescriptor, classify_group,
                                 classify_m_group, classify_monomial_action, exceptional_form,
                                 field_policy)

STD = [(0, 1, 0), (0, 0, 1), (-1, -1, -1)]  # images of z1, z2, z3 as exponent columns


def exceptional(c, m):
    """tau: z1 -> z2 -> z3 -> zeta_m^c / (z1 z2 z3)."""
    return MonomialAutomorphism.from_images([(STD[0], 0), (STD[1], 0), (STD[2], c)], m)


def field(roots=(), **flags):
    return FieldDescriptor.make(0, roots, **flags)


def verdict(asg, f):
    return classify_monomial_action(ActionAssignment({"t": asg}), f).status


# --- fields -----------------------------------------------------------------

def test_field_forced_flags():
    f = FieldDescriptor.cyclotomic(8)
    assert f.minus_one and f.two and f.minus_two
    assert f.has_root(4) and f.has_root(2)
    with pytest.raises(NoetherError):
        field([4], minus_one=False)
    with pytest.raises(NoetherError):
        FieldDescriptor.make(2, [4])


def test_field_json_roundtrip():
    f = field([6], two=True)
    assert FieldDescriptor.from_json(f.to_json()) == f


# --- groups -------------------------------------------------------------------

def test_g8_by_two_group_rule(g8_5):
    v = classify_group(g8_5, field_policy(5))
    assert v.status == RATIONAL
    assert any(t.rule == "Theorem 1.4" for t in v.trace)


def test_c3_c8_not_rational():
    G = metacyclic_group(3, 8, 2)
    assert classify_group(G, field([6])).status == NOT_RATIONAL


def test_trivial_group():
    assert classify_group(cyclic_group(1), FieldDescriptor.rationals()).status == RATIONAL


def test_d12_non_exceptional():
    G = dihedral_group(12)
    assert not structural_profile(G).is_cm_rtimes_c8
    assert classify_group(G, field([6])).status == RATIONAL


def test_abelian_by_lenstra():
    G = direct_product(direct_product(cyclic_group(2), cyclic_group(2)), cyclic_group(2))
    assert classify_group(G, FieldDescriptor.rationals()).status == RATIONAL


def test_no_rule_gives_unknown():
    # A4 over Q: order 4*3 but zeta_3 is missing
    G = build_group(GroupSpec.PermGenerators([[1, 2, 0, 3], [1, 0, 3, 2]]))
    assert G.order == 12
    assert classify_group(G, FieldDescriptor.rationals()).status == UNKNOWN


# --- monomial actions ------------------------------------------------------------

@pytest.mark.parametrize("flags,want", [({}, NOT_RATIONAL), ({"minus_one": True}, RATIONAL),
                                        ({"two": True}, RATIONAL), ({"minus_two": True}, RATIONAL)])
def test_exceptional_truth_table(flags, want):
    assert verdict(exceptional(1, 2), field([], **flags)) == want


def test_odd_coefficient_removable():
    assert verdict(exceptional(1, 3), field([3])) == RATIONAL


def test_identity_d3():
    assert verdict(MonomialAutomorphism.identity(3), FieldDescriptor.rationals()) == RATIONAL


def test_two_dimensional_always_rational():
    s = MonomialAutomorphism(2, [[-1, 0], [0, -1]], [1, 1], 2)
    assert verdict(s, FieldDescriptor.rationals()) == RATIONAL


# --- exceptional form ---------------------------------------------------------

def test_exceptional_form_examples():
    assert exceptional_form(exceptional(1, 2)).epsilon == -1
    assert exceptional_form(exceptional(0, 2)).epsilon == 1
    assert exceptional_form(MonomialAutomorphism.identity(3)) is None


UNIMOD = st.lists(st.lists(st.integers(-1, 1), min_size=3, max_size=3), min_size=3, max_size=3).filter(
    lambda P: abs(L.det(P)) == 1)


@given(UNIMOD, st.sampled_from([(0, 2), (1, 2), (2, 4), (0, 4), (1, 3), (2, 8)]), st.integers(0, 7))
def test_exceptional_form_invariance(P, cm, k):
    c, m = cm
    base = exceptional_form(exceptional(c, m))
    # z_j -> zeta^k z_j moves c by 4k
    rescaled = exceptional_form(exceptional(c + 4 * k, m))
    assert (rescaled.klass, rescaled.epsilon) == (base.klass, base.epsilon)
    moved = exceptional_form(exceptional(c, m).conjugate_by_basis(P))
    assert moved is not None
    assert (moved.klass, moved.epsilon) == (base.klass, base.epsilon)


# --- M-groups ---------------------------------------------------------------

REMARK = [MonomialMatrix((1, 2, 3, 0), (RootExponent(1, 0),) * 3 + (RootExponent(2, 1),))]


def test_m_group_with_sqrt_minus_one():
    assert classify_m_group(REMARK, field([4])).status == RATIONAL


def test_m_group_remark_over_q():
    assert classify_m_group(REMARK, FieldDescriptor.rationals()).status == NOT_RATIONAL


def test_m_group_signs_rational_over_q():
    mats = [MonomialMatrix((0, 1, 2, 3), tuple(RootExponent(2, int(i == j)) for j in range(4)))
            for i in range(4)]
    assert classify_m_group(mats, FieldDescriptor.rationals()).status == RATIONAL


def test_m_group_wrong_dimension():
    with pytest.raises(NoetherError):
        classify_m_group([MonomialMatrix.identity(3)], FieldDescriptor.rationals())


# --- monotonicity in the field -------------------------------------------------

def corpus():
    return [
        ("action", exceptional(1, 2)),
        ("action", exceptional(1, 3)),
        ("action", exceptional(2, 4)),
        ("group", metacyclic_group(3, 8, 2)),
        ("group", dihedral_group(12)),
        ("group", direct_product(cyclic_group(3), quaternion_group())),
        ("group", build_group(GroupSpec.Family(8, 5))),
        ("mgroup", REMARK),
    ]


CORPUS = corpus()
ROOTS = st.sets(st.sampled_from([3, 4, 6, 8, 12]), max_size=3)
FLAGS = st.fixed_dictionaries({k: st.sampled_from([None, True]) for k in ("minus_one", "two", "minus_two")})


def run(kind, obj, f):
    if kind == "action":
        return verdict(obj, f)
    if kind == "group":
        return classify_group(obj, f).status
    return classify_m_group(obj, f).status


@given(st.integers(0, len(CORPUS) - 1), ROOTS, ROOTS, FLAGS, FLAGS)
def test_field_monotonicity(i, r1, r2, f1, f2):
    small = field(r1, **f1)
    big = field(r1 | r2, **{k: (True if f1[k] or f2[k] else None) for k in f1})
    kind, obj = CORPUS[i]
    if run(kind, obj, small) == RATIONAL:
        assert run(kind, obj, big) != NOT_RATIONAL
