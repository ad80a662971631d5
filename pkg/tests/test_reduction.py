from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from noether.algebra import lattice as L
from noether.errors import NoetherError
from noether.groups import GroupSpec, build_group
from noether.monomial import ActionAssignment, MonomialAutomorphism
from noether.reduction import (RegularModule, check_faithful, eigenvector, eliminate_fibered_variable,
                               induce_variables, invariant_lattice_basis, invariant_sublattice,
                               reduce_to_injective, scalar_kernel)

def scalar(c, m):
    return MonomialAutomorphism(len(c), L.identity(len(c)), c, m)


def test_trivial_character_gives_orbit_sum(g8_5):
    R = RegularModule(g8_5, 4)
    X = eigenvector(R, list(g8_5.generators.values()), [0, 0])
    assert np.array_equal(X, sum(R.basis(g) for g in range(g8_5.order)))
    for g in range(g8_5.order):
        assert np.array_equal(R.act(g, X), X)


def test_one_dimensional_trivial_subspace(g8_5):
    R = RegularModule(g8_5, 4)
    X = eigenvector(R, list(g8_5.generators.values()), [0, 0])
    sub = induce_variables(R, [("x", X)])
    asg = sub.as_assignment()
    assert asg.d == 1 and all(a.is_identity() for a in asg.images.values())
    assert not check_faithful(sub)


def test_inconsistent_character_rejected(g8_5):
    R = RegularModule(g8_5, 4)
    # s^4 = t^4 in G8, so s -> zeta, t -> 1 cannot extend
    with pytest.raises(NoetherError):
        eigenvector(R, ["s", "t"], [1, 0])


def test_g1_induced_faithful():
    G = build_group(GroupSpec.Family(1, 5))
    R = RegularModule(G, 4)
    X = eigenvector(R, ["s^2", "t"], [1, 0])
    Y = eigenvector(R, ["s^2", "t"], [0, 1])  # t -> sqrt(-1) = zeta_4
    named = [("x0", X), ("x1", R.act_word("s", X)), ("y0", Y), ("y1", R.act_word("s", Y))]
    sub = induce_variables(R, named)
    m = sub.matrices["s"]
    assert m.perm[:2] == (1, 0)
    assert check_faithful(sub)


@pytest.mark.parametrize("n", [5, 6])
def test_u3_power_lattice(n):
    M = 2 ** (n - 3)
    B = invariant_lattice_basis([scalar([0, 0, -2, 0], M)], 4, M)
    k = 2 ** (n - 4)
    assert B == [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, k, 0], [0, 0, 0, 1]]


def test_trivial_subgroup_keeps_assignment():
    t = MonomialAutomorphism(2, [[0, 1], [1, 0]], [0, 1], 4)
    asg = ActionAssignment({"t": t})
    B, q = invariant_sublattice(asg, [MonomialAutomorphism.identity(2, 4)])
    assert B == L.identity(2)
    assert q.images["t"] == t


def test_zeta4_one_variable():
    B = invariant_lattice_basis([scalar([1], 4)], 1, 4)
    assert B == [[4]]
    fixed = [e for e in range(-4, 5) if e % 4 == 0]
    assert all(e % B[0][0] == 0 for e in fixed)


def test_scalar_kernel_examples():
    t = MonomialAutomorphism(2, [[0, 1], [1, 0]], [0, 0], 1)
    assert [h.is_identity() for h in scalar_kernel(ActionAssignment({"t": t}))] == [True]
    s = scalar([1, 3], 4)
    H = scalar_kernel(ActionAssignment({"s": s}))
    assert len(H) == 4


def test_reduce_to_injective_one_step():
    s = MonomialAutomorphism(2, [[-1, 0], [0, 1]], [0, 2], 4)
    cur, steps = reduce_to_injective(ActionAssignment({"s": s, "r": scalar([2, 0], 4)}))
    assert len(steps) == 1
    assert all(h.is_identity() for h in scalar_kernel(cur))


def test_eliminate_single_trivial_variable():
    step = eliminate_fibered_variable(ActionAssignment({"s": MonomialAutomorphism.identity(1)}), 0)
    assert step.after is None


def test_g8_drop_u0():
    from noether.cases.scripts import new_script, script_for
    S = new_script(8, 5)
    script_for(8)[0](S, 5)
    u = next(a for a in S.history if a.names[0] == "u0")
    step = eliminate_fibered_variable(u, "u0")
    assert step.after.names == ["u1", "u2", "u3"]
    assert step.justification == "Theorem 2.3"


@st.composite
def scalar_groups(draw):
    d = draw(st.integers(1, 4))
    m = draw(st.sampled_from([2, 3, 4, 6, 8]))
    hs = draw(st.lists(st.lists(st.integers(0, m - 1), min_size=d, max_size=d), min_size=1, max_size=3))
    return d, m, [scalar(c, m) for c in hs]


@given(scalar_groups())
def test_invariant_lattice_complete(data):
    d, m, H = data
    B = invariant_lattice_basis(H, d, m)
    # det B is the index: mZ^d sits inside the lattice, so count residues mod m
    fixed = sum(all(sum(c * x for c, x in zip(h.c, v)) % m == 0 for h in H)
                for v in product(range(m), repeat=d))
    assert abs(L.det(B)) * fixed == m ** d
    # each basis column is H-invariant
    for j in range(d):
        col = [B[i][j] for i in range(d)]
        assert all(sum(c * v for c, v in zip(h.c, col)) % m == 0 for h in H)
    # every invariant exponent vector in the box lies in the lattice
    Binv = L.inverse_rational(B)
    box = range(-m, m + 1) if d <= 3 else range(-2, 3)
    for v in product(box, repeat=d):
        inv = all(sum(c * x for c, x in zip(h.c, v)) % m == 0 for h in H)
        if inv:
            coords = [sum(Binv[i][k] * v[k] for k in range(d)) for i in range(d)]
            assert all(c.denominator == 1 for c in coords)
