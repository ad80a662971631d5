"""Groups of order 4n with n = 2m, m odd: replay of the three subcases.

Each subcase builds its order-8m group, induces from <sigma> with
sigma X = zeta_{2m} X, passes to v_i, reduces the scalar kernel and checks
the claimed terminal form before handing it to the rule engine.
"""

from __future__ import annotations

from ..errors import InvalidParameter
from ..groups import Group, cyclic_group, direct_product, metacyclic_group
from ..rationality import (NOT_RATIONAL, RATIONAL, FieldDescriptor, classify_monomial_action,
                           exceptional_form, has_exceptional_shape)
from ..reduction import induce_from_cyclic, matrices_to_assignment
from .engine import DIVERGENCE, PASS, Script, StepFailed


def subcase_group(subcase: int, m: int) -> tuple[Group, int]:
    """(group with generators s, t[, l], element sigma)."""
    if m < 3 or m % 2 == 0:
        raise InvalidParameter("m must be an odd integer >= 3")
    if subcase == 1:
        # (C_m x| C_4) x C_2, t inverting C_m, sigma = x t^2, l the C_2 factor
        A = metacyclic_group(m, 4, m - 1)
        G = direct_product(A, cyclic_group(2), name=f"(C{m}:C4)xC2")
        x, y = G.generators["a_x"], G.generators["a_y"]
        s = G.mul(x, G.power(y, 2))
        G.generators = {"s": s, "t": y, "l": G.generators["b_s"]}
        G.relations = (f"s^{2 * m}", "t^4", "l^2", f"t^2 = s^{m}", "t^-1 s t = s^-1",
                       "l^-1 s l = s", "l^-1 t l = t")
    elif subcase == 2:
        G = metacyclic_group(2 * m, 4, 2 * m - 1, name=f"C{2 * m}:C4")
        s = G.generators["x"]
        G.generators = {"s": s, "t": G.generators["y"]}
        G.relations = (f"s^{2 * m}", "t^4", "t^-1 s t = s^-1")
    elif subcase == 3:
        G = metacyclic_group(m, 8, m - 1, name=f"C{m}:C8")
        x, y = G.generators["x"], G.generators["y"]
        s = G.mul(x, G.power(y, 4))
        G.generators = {"s": s, "t": y}
        G.relations = (f"s^{2 * m}", f"t^4 = s^{m}", "t^-1 s t = s^-1")
    else:
        raise InvalidParameter("subcase must be 1, 2 or 3")
    return G, s


def _structure(S, subcase, m, s):
    G = S.group
    n = 2 * m
    C = G.subgroup([s])
    t = G.generators["t"]
    checks = {
        "order 8m": G.order == 8 * m,
        "ord(sigma) = n": len(C) == n,
        "<sigma> normal": G.is_normal(C),
        "sigma^m central": G.power(s, m) in G.center,
    }
    if subcase == 1:
        l = G.generators["l"]
        checks["sigma^m = tau^2"] = G.power(s, m) == G.power(t, 2)
        checks["G/<sigma> = C2 x C2"] = all(G.mul(g, g) in C for g in (t, l, G.mul(t, l)))
    elif subcase == 2:
        checks["<sigma> meets <tau> trivially"] = set(C) & set(G.subgroup([t])) == {0}
        checks["ord(tau) = 4"] = G.element_order(t) == 4
    else:
        checks["ord(tau) = 8"] = G.element_order(t) == 8
        checks["tau^4 = sigma^m"] = G.power(t, 4) == G.power(s, m)
    bad = [k for k, v in checks.items() if not v]
    if bad:
        S.fail("group structure", "Theorem 1.8 proof, Case 3, Step 4", bad)
    S.record("group structure", PASS, "Theorem 1.8 proof, Case 3, Step 4", None, checks=list(checks))


def run_theorem18_subcase(subcase: int, m: int, field: FieldDescriptor | None = None):
    G, s = subcase_group(subcase, m)
    n = 2 * m
    field = field or FieldDescriptor.cyclotomic(n)
    S = Script(f"Thm1.8-subcase{subcase}@m={m}", G, field, n, {"zeta": 1})
    ref = f"Theorem 1.8 proof, Subcase {subcase}"
    verdict = None
    try:
        if field.char == 2 or not field.has_root(n):
            S.fail("field hypotheses", "Theorem 1.8", {"char": field.char, "needs root": n})
        S.record("field hypotheses", PASS, "Theorem 1.8", None, root=n)
        _structure(S, subcase, m, s)
        t = G.generators["t"]
        if subcase == 1:
            l = G.generators["l"]
            trans = [0, t, l, G.mul(t, l)]
        else:
            trans = [0, t, G.power(t, 2), G.power(t, 3)]
        mats = induce_from_cyclic(G, s, trans, n)
        S.asg = matrices_to_assignment(mats, n, names=[f"u{i}" for i in range(4)])
        S.asg.relations = list(G.relations)
        S.record("induce from <sigma>", PASS, "Theorem 4.1, Step 1", None)
        S.relations()
        faithful = len(S.asg.image_group()) == G.order
        if not faithful:
            S.fail("faithful", "Theorem 4.1, Step 2", {"image order": len(S.asg.image_group())})
        S.record("faithful", PASS, "Theorem 4.1, Step 2", None)
        if subcase == 1:
            S.change([("u0", "u0"), ("v1", "u1/u0"), ("v2", "u2/u0"), ("v3", "u3/u0")], "Theorem 4.1, Step 3")
        else:
            S.record("text v_i = u_i/u_{j-1}", DIVERGENCE, ref,
                     {"printed": "v_i = u_i/u_{j-1}", "corrected": "v_i = u_i/u_{i-1}"})
            S.change([("u0", "u0"), ("v1", "u1/u0"), ("v2", "u2/u1"), ("v3", "u3/u2")], ref)
            sign = "" if subcase == 2 else "-"
            S.table({"t": {"v1": "v2", "v2": "v3", "v3": f"{sign}1/(v1 v2 v3)"}}, ref)
        S.drop("u0")
        a = S.asg.images["s"]
        if any(a.A[i][j] != (i == j) for i in range(3) for j in range(3)):
            S.fail("sigma acts by scalars", ref)
        S.record("sigma acts by scalars", PASS, ref, None, exponents=list(a.c))
        S.kernel_reduce(ref="[KPr, Lemma 2.8]")
        verdict = _terminal(S, subcase, ref)
    except StepFailed:
        pass
    rep = S.finish(verdict)
    if subcase == 3 and not (field.minus_one or field.two or field.minus_two):
        rep.expected = NOT_RATIONAL
    return rep


def _terminal(S, subcase, ref):
    asg = S.asg
    img = asg.image_group()
    if subcase == 1:
        if len(img) == 4 and any(g.order() == 4 for g in img):
            S.fail("quotient not cyclic of order 4", ref, {"image order": len(img)})
        S.record("quotient not cyclic of order 4", PASS, ref, None, image_order=len(img))
        return S.rule("classify")
    tau = asg.images["t"]
    if subcase == 2:
        if any(tau.c):
            S.fail("purely monomial tau", ref, {"c": list(tau.c)})
        S.record("purely monomial tau", PASS, ref, None)
        return S.rule("[HK2]")
    if not has_exceptional_shape(tau.A):
        S.fail("exceptional form", ref, {"A": [list(r) for r in tau.A]})
    form = exceptional_form(tau)
    if form is None or form.epsilon != -1:
        S.fail("exceptional form", ref, form.to_json() if form else None)
    S.record("exceptional form", PASS, ref, None, **form.to_json())
    S.extras["epsilon"] = form.epsilon
    v = classify_monomial_action(asg, S.field)
    S.record("rule Theorem 2.8", PASS, "Theorem 2.8", None, outcome=v.status)
    return v

