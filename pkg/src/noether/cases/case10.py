"""G15-G18, G24, G25.

The variable chains for these families are only cited, so they cannot be
replayed.  What is checked here: a faithful 4-dimensional monomial
representation induced from a character of an index-4 subgroup whose
values lie in <zeta_{2^(n-3)}> (so only that root of unity is used), then
the two-variable drop and the four-variable M-group rule.  The cited chain
itself is an unknown step.
"""

from __future__ import annotations

from itertools import combinations, product

from ..errors import NoetherError
from ..reduction import _character_on_subgroup, eigenvector
from .engine import PASS, UNKNOWN_STEP


def _core(G, sub):
    core = set(sub)
    for g in range(G.order):
        gi = G.inv(g)
        core &= {G.mul(G.mul(g, h), gi) for h in sub}
    return core


def find_induced_character(G, M):
    """(generators of H, character exponents, transversal) with the induced
    representation faithful, or None.  Deterministic: smallest generating
    tuples first."""
    target = G.order // 4
    seen = set()
    subgroups = []
    for k in (1, 2, 3):
        for gens in combinations(range(1, G.order), k):
            H = G.subgroup(gens)
            if len(H) != target or H in seen:
                continue
            seen.add(H)
            subgroups.append((H, gens))
        if subgroups and k >= 2:
            break
    for H, gens in subgroups:
        for chi in product(range(M), repeat=len(gens)):
            try:
                vals = _character_on_subgroup(G, gens, chi, M)
            except NoetherError:
                continue
            ker = [h for h in H if vals[h] == 0]
            if _core(G, ker) != {0}:
                continue
            trans, covered = [], set()
            for g in range(G.order):
                if g not in covered:
                    trans.append(g)
                    covered |= {G.mul(g, h) for h in H}
            return list(gens), list(chi), trans
    return None


def case10(S, n):
    G = S.group
    ref = "Case 10"
    found = find_induced_character(G, S.M)
    if found is None:
        S.fail("faithful induced character", ref, {"problem": "no index-4 character with values in <zeta>"})
    gens, chi, trans = found
    S.record("faithful induced character", PASS, ref, None,
             subgroup=[G.labels[g] for g in gens], character=chi,
             transversal=[G.labels[t] for t in trans])
    X = eigenvector(S.module, gens, chi)
    S.vectors["X"] = X
    for i, t in enumerate(trans):
        S.vectors[f"x{i}"] = S.module.act(t, X)
    S.induce([(f"x{i}", "", f"x{i}") for i in range(4)], ref)
    S.faithful(ref=ref)
    S.record("cited variable chain", UNKNOWN_STEP, "[Ka4, Section 5]",
             {"note": "the chain is not printed here and is not replayed"})
    return S.rule("Theorem 4.4")
