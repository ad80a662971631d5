"""Regular representation, induced variables and the scalar-kernel reduction.

Vectors of the regular module are integer arrays of shape (|G|, w): row g
holds the coefficient of x(g) in the power basis 1, zeta, ..., zeta^(w-1)
of Z[zeta_M] (w = M/2, zeta^w = -1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import lattice
from .algebra.cyclotomic import CyclotomicInt, RootExponent
from .errors import (ClosureTooLarge, InvalidParameter, NotAnEigenvector, NotClosed, NotScalar,
                     ShapeViolation)
from .groups import Group, parse_word
from .monomial import (ActionAssignment, MonomialAutomorphism, MonomialMatrix, closure, compose,
                       matrix_closure)


# ----------------------------------------------------------------------------
# regular module

class RegularModule:
    """V* = sum_g k x(g) with h . x(g) = x(hg), coefficients in Z[zeta_M]."""

    def __init__(self, group: Group, conductor: int):
        if conductor < 4 or conductor & (conductor - 1):
            raise InvalidParameter("conductor must be a power of two >= 4")
        self.group = group
        self.M = conductor
        self.w = conductor // 2

    def zero(self) -> np.ndarray:
        return np.zeros((self.group.order, self.w), dtype=np.int64)

    def basis(self, g: int, k: int = 0) -> np.ndarray:
        """zeta^k x(g)."""
        v = self.zero()
        k %= self.M
        if k < self.w:
            v[g, k] = 1
        else:
            v[g, k - self.w] = -1
        return v

    def scale(self, v: np.ndarray, k: int) -> np.ndarray:
        """zeta^k v (negacyclic shift of the coefficient axis)."""
        k %= self.M
        sign = 1
        if k >= self.w:
            k -= self.w
            sign = -1
        if k == 0:
            return sign * v
        out = np.empty_like(v)
        out[:, k:] = v[:, :self.w - k]
        out[:, :k] = -v[:, self.w - k:]
        return sign * out

    def act(self, h: int, v: np.ndarray) -> np.ndarray:
        out = np.empty_like(v)
        out[self.group.table[h]] = v
        return out

    def act_word(self, word, v):
        g = self.group.eval_word(word)
        return self.act(g, v)

    def root(self, modulus: int, exponent: int) -> int:
        """Exponent k with zeta_M^k = zeta_modulus^exponent."""
        r = RootExponent(modulus, exponent).reduced()
        if self.M % r.modulus:
            raise InvalidParameter(f"zeta_{r.modulus} is not available in conductor {self.M}")
        return r.exponent * (self.M // r.modulus)

    def ratio(self, a: np.ndarray, b: np.ndarray):
        """k with a = zeta^k b, or None."""
        if not b.any():
            return None
        for k in range(self.M):
            if np.array_equal(a, self.scale(b, k)):
                return k
        return None


def pattern_sum(module: RegularModule, terms) -> np.ndarray:
    """sum of zeta^k x(g) over terms (g, k); g may be an index or a word."""
    v = module.zero()
    for g, k in terms:
        if not isinstance(g, (int, np.integer)):
            g = module.group.eval_word(g)
        v = v + module.basis(int(g), k)
    return v


def _character_on_subgroup(group: Group, gens, character, M):
    """Extend a character (generator -> zeta_M exponent) over <gens> by BFS."""
    vals = {0: 0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g, e in zip(gens, character):
                y = group.mul(g, x)
                val = (vals[x] + e) % M
                if y in vals:
                    if vals[y] != val:
                        raise NotAnEigenvector("character is inconsistent on the subgroup")
                else:
                    vals[y] = val
                    nxt.append(y)
        frontier = nxt
    return vals


def eigenvector(module: RegularModule, subgroup_gens, character, terms=None) -> np.ndarray:
    """A vector X with g X = chi(g) X for the given generators.

    ``character`` lists zeta_M exponents (or RootExponent values) for each
    generator.  Without ``terms`` the vector is sum_{h in H} chi(h)^-1 x(h);
    with ``terms`` (an explicit summation pattern) that sum is used and
    only checked.
    """
    grp = module.group
    gens = [g if isinstance(g, (int, np.integer)) else grp.eval_word(g) for g in subgroup_gens]
    chars = [module.root(c.modulus, c.exponent) if isinstance(c, RootExponent) else int(c) % module.M
             for c in character]
    if terms is None:
        vals = _character_on_subgroup(grp, gens, chars, module.M)
        X = module.zero()
        for h, e in vals.items():
            X = X + module.basis(h, -e)
    else:
        X = pattern_sum(module, terms)
    if not X.any():
        raise NotAnEigenvector("the summation vanishes identically")
    for g, e in zip(gens, chars):
        if not np.array_equal(module.act(g, X), module.scale(X, e)):
            raise NotAnEigenvector(f"generator {grp.labels[g]} does not act by zeta^{e}")
    return X


@dataclass
class InducedSubspace:
    module: RegularModule
    names: list
    vectors: list
    matrices: dict  # generator name -> MonomialMatrix

    @property
    def d(self) -> int:
        return len(self.vectors)

    def as_assignment(self) -> ActionAssignment:
        M = self.module.M
        images = {}
        for gname, mat in self.matrices.items():
            A = [[0] * self.d for _ in range(self.d)]
            c = []
            for j in range(self.d):
                A[mat.perm[j]][j] = 1
                c.append(mat.coeffs[j].lift(M).exponent if M % mat.coeffs[j].modulus == 0 else 0)
            images[gname] = MonomialAutomorphism(self.d, A, c, M)
        return ActionAssignment(images, self.module.group, names=self.names)

    def image(self, gname: str, j: int):
        """(target index, zeta_M exponent) of generator on variable j."""
        mat = self.matrices[gname]
        return mat.perm[j], mat.coeffs[j].lift(self.module.M).exponent


def induce_variables(module: RegularModule, named_vectors, generators=None) -> InducedSubspace:
    """Generator matrices on the span of the given vectors (must be monomial)."""
    grp = module.group
    gens = generators if generators is not None else grp.generators
    names = [n for n, _ in named_vectors]
    vecs = [v for _, v in named_vectors]
    for i, v in enumerate(vecs):
        if not v.any():
            raise NotClosed(f"vector {names[i]} is zero")
    mats = {}
    for gname, g in gens.items():
        perm, coeffs = [], []
        for j, v in enumerate(vecs):
            gv = module.act(g, v)
            hit = None
            for i, w in enumerate(vecs):
                k = module.ratio(gv, w)
                if k is not None:
                    hit = (i, k)
                    break
            if hit is None:
                raise NotClosed(f"{gname}({names[j]}) is not a root-of-unity multiple of a listed vector")
            perm.append(hit[0])
            coeffs.append(RootExponent(module.M, hit[1]))
        mats[gname] = MonomialMatrix(tuple(perm), tuple(coeffs))
    return InducedSubspace(module, names, vecs, mats)


def check_faithful(sub: InducedSubspace, guard: int = 2 ** 13) -> bool:
    try:
        size = len(matrix_closure(sub.matrices.values(), guard=guard))
    except Exception as exc:
        raise ClosureTooLarge(str(exc)) from exc
    return size == sub.module.group.order


def induce_from_cyclic(group: Group, sigma: int, transversal, n: int | None = None):
    """Monomial matrices of the induced representation from <sigma> with sigma X = zeta_n X.

    x_i = t_i X for the transversal t_0, ..., t_{r-1}; g x_i = zeta^c x_j when
    g t_i = t_j sigma^c.  Generators are the group's named generators.
    """
    n = n or group.element_order(sigma)
    powers = {}
    x = 0
    for c in range(n):
        powers[x] = c
        x = group.mul(x, sigma)
    trans = [t if isinstance(t, (int, np.integer)) else group.eval_word(t) for t in transversal]
    inv = [group.inv(t) for t in trans]

    def locate(h):
        for j, (t, ti) in enumerate(zip(trans, inv)):
            r = group.mul(ti, h)
            if r in powers:
                return j, powers[r]
        raise NotClosed("transversal does not cover the cosets")

    mats = {}
    for gname, g in group.generators.items():
        perm, coeffs = [], []
        for t in trans:
            j, c = locate(group.mul(g, t))
            perm.append(j)
            coeffs.append(RootExponent(n, c))
        mats[gname] = MonomialMatrix(tuple(perm), tuple(coeffs))
    return mats


def matrices_to_assignment(mats: dict, modulus: int, group=None, names=None) -> ActionAssignment:
    images = {}
    for gname, mat in mats.items():
        d = mat.d
        A = [[0] * d for _ in range(d)]
        c = []
        for j in range(d):
            A[mat.perm[j]][j] = 1
            c.append(mat.coeffs[j].lift(modulus).exponent)
        images[gname] = MonomialAutomorphism(d, A, c, modulus)
    return ActionAssignment(images, group, names=names)


# ----------------------------------------------------------------------------
# scalar kernel and invariant sublattice

@dataclass
class ReductionStep:
    kind: str                   # ScalarKernel | FiberedVariableDrop | LinearSplit
    before: ActionAssignment
    after: ActionAssignment
    justification: str
    detail: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "justification": self.justification, "detail": self.detail,
                "before": self.before.to_json(), "after": self.after.to_json()}


def scalar_kernel(assignment: ActionAssignment) -> list:
    """Image-group elements acting by pure scalars (identity exponent matrix)."""
    H = [a for a in assignment.image_group() if a.is_identity_matrix()]
    # normality: conjugates by the generators stay in H
    Hs = set(H)
    for g in assignment.images.values():
        gi = g.inverse()
        for h in H:
            if compose(compose(g, h), gi) not in Hs:
                raise NotScalar("scalar kernel is not normal (not a homomorphic image?)")
    return H


def scalar_kernel_elements(assignment: ActionAssignment) -> tuple:
    """Group elements (indices) whose automorphism has identity matrix."""
    imgs = assignment.element_images()
    return tuple(i for i, a in imgs.items() if a.is_identity_matrix())


def invariant_lattice_basis(H, d: int, m: int) -> list:
    """Columns B (as a d x d matrix) spanning {v : <v, c(h)> = 0 mod m for h in H}."""
    for h in H:
        if not h.is_identity_matrix():
            raise NotScalar("subgroup does not act by scalars")
    rows = [list(h.c) for h in H if any(h.c)]
    basis_rows = lattice.congruence_lattice(rows, m, d)
    return lattice.transpose(basis_rows)


def invariant_sublattice(assignment: ActionAssignment, H=None):
    """(B, quotient assignment) for the monomials fixed by the scalar subgroup H."""
    if H is None:
        H = scalar_kernel(assignment)
    B = invariant_lattice_basis(H, assignment.d, assignment.m)
    images = {k: a.conjugate_by_basis(B) for k, a in assignment.images.items()}
    names = [monomial_name(assignment.names, [B[i][j] for i in range(assignment.d)])
             for j in range(assignment.d)]
    return B, assignment.relabel(images, names)


def monomial_name(names, exps) -> str:
    parts = []
    for nm, e in zip(names, exps):
        if e == 1:
            parts.append(nm)
        elif e:
            parts.append(f"{nm}^{e}")
    return "*".join(parts) or "1"


def change_basis(assignment: ActionAssignment, B, names=None) -> ActionAssignment:
    """Monomial change of variables z_j = prod_i x_i^{B[i][j]} (B need not be unimodular)."""
    images = {k: a.conjugate_by_basis(B) for k, a in assignment.images.items()}
    if names is None:
        names = [monomial_name(assignment.names, [B[i][j] for i in range(assignment.d)])
                 for j in range(assignment.d)]
    return assignment.relabel(images, names)


def reduce_to_injective(assignment: ActionAssignment, max_steps: int = 8):
    """Iterate scalar kernel + invariant sublattice until rho is injective."""
    steps = []
    cur = assignment
    for _ in range(max_steps):
        H = scalar_kernel(cur)
        if all(h.is_identity() for h in H):
            return cur, steps
        B, nxt = invariant_sublattice(cur, H)
        steps.append(ReductionStep("ScalarKernel", cur, nxt, "Theorem 2.7 proof ([KPr, Lemma 2.8])",
                                   {"kernel_size": len(H), "basis": B,
                                    "index": abs(lattice.det(B))}))
        cur = nxt
    raise NotScalar("reduction did not terminate")


# ----------------------------------------------------------------------------
# eliminations

def _restrict(assignment: ActionAssignment, keep) -> ActionAssignment:
    images = {}
    for k, a in assignment.images.items():
        A = [[a.A[i][j] for j in keep] for i in keep]
        images[k] = MonomialAutomorphism(len(keep), A, [a.c[j] for j in keep], a.m)
    return assignment.relabel(images, [assignment.names[j] for j in keep])


def eliminate_fibered_variable(assignment: ActionAssignment, var) -> ReductionStep:
    """Drop x_v when every g sends x_v to (monomial in the others) * x_v and no
    other image involves x_v."""
    v = assignment.names.index(var) if isinstance(var, str) else int(var)
    d = assignment.d
    for gname, a in assignment.images.items():
        if a.A[v][v] != 1:
            raise ShapeViolation(f"{gname}({assignment.names[v]}) is not a multiplicative translate")
        for j in range(d):
            if j != v and a.A[v][j]:
                raise ShapeViolation(f"{gname}({assignment.names[j]}) involves {assignment.names[v]}")
    keep = [j for j in range(d) if j != v]
    if not keep:
        after = None
    else:
        after = _restrict(assignment, keep)
    return ReductionStep("FiberedVariableDrop", assignment, after, "Theorem 2.3",
                         {"dropped": assignment.names[v]})


def linear_split(assignment: ActionAssignment, drop, group_order: int | None = None) -> ReductionStep:
    """Drop a block of variables permuted (with scalars) among themselves,
    provided the images of the kept variables avoid them and the action on
    the kept variables stays faithful."""
    idx = [assignment.names.index(x) if isinstance(x, str) else int(x) for x in drop]
    keep = [j for j in range(assignment.d) if j not in idx]
    for gname, a in assignment.images.items():
        for j in idx:
            col = a.column(j)
            nz = [i for i, e in enumerate(col) if e]
            if len(nz) != 1 or col[nz[0]] != 1 or nz[0] not in idx:
                raise ShapeViolation(f"{gname}({assignment.names[j]}) is not linear in the dropped block")
        for j in keep:
            if any(a.A[i][j] for i in idx):
                raise ShapeViolation(f"{gname}({assignment.names[j]}) involves a dropped variable")
    after = _restrict(assignment, keep)
    full = group_order or len(assignment.image_group())
    kept_size = len(after.image_group())
    if kept_size != full:
        raise ShapeViolation(f"action on kept variables is not faithful ({kept_size} != {full})")
    return ReductionStep("LinearSplit", assignment, after, "Theorem 2.2",
                         {"dropped": [assignment.names[j] for j in idx]})
