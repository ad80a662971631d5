"""Monomial automorphisms of k(x_1, ..., x_d) and linear monomial matrices.

A ``MonomialAutomorphism`` acts by x_j -> zeta_m^{c_j} * prod_i x_i^{A[i][j]}
(column j of A is the exponent vector of the image of x_j).  Composition is
field-automorphism composition, (T o S)(x_j) = T(S(x_j)), which gives

    A_{T o S} = A_T A_S,    c_{T o S, j} = c_{S, j} + sum_i A_S[i][j] c_{T, i}  (mod m).

A ``MonomialMatrix`` is a linear map x_j -> a_j x_{perm[j]} (one nonzero
entry per column) with root-of-unity coefficients a_j.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, lcm

from .algebra import lattice
from .algebra.cyclotomic import RootExponent
from .algebra.laurent import LaurentFraction, fraction_substitute
from .errors import (ClosureTooLarge, DimMismatch, InvalidParameter, ModulusMismatch, NotAGroup,
                     NotMonomial)
from .groups import Group, parse_relation, parse_word

CLOSURE_GUARD = 2 ** 13


@dataclass(frozen=True)
class MonomialAutomorphism:
    d: int
    A: tuple
    c: tuple
    m: int = 1

    def __post_init__(self):
        A = tuple(tuple(int(x) for x in row) for row in self.A)
        if len(A) != self.d or any(len(r) != self.d for r in A):
            raise DimMismatch(f"matrix is not {self.d}x{self.d}")
        if self.m < 1:
            raise InvalidParameter("modulus must be positive")
        c = tuple(int(x) % self.m for x in self.c)
        if len(c) != self.d:
            raise DimMismatch("coefficient vector has wrong length")
        if self.d and abs(lattice.det(A)) != 1:
            raise InvalidParameter("exponent matrix is not in GL_d(Z)")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "c", c)

    # constructors ------------------------------------------------------
    @classmethod
    def identity(cls, d: int, m: int = 1) -> "MonomialAutomorphism":
        return cls(d, lattice.identity(d), [0] * d, m)

    @classmethod
    def from_images(cls, images, m: int) -> "MonomialAutomorphism":
        """images[j] = (exponent vector, coefficient exponent) of x_j's image."""
        d = len(images)
        A = [[images[j][0][i] for j in range(d)] for i in range(d)]
        return cls(d, A, [img[1] for img in images], m)

    @classmethod
    def from_json(cls, obj) -> "MonomialAutomorphism":
        return cls(int(obj["d"]), obj["A"], obj["c"], int(obj["m"]))

    def to_json(self):
        return {"d": self.d, "m": self.m, "A": [list(r) for r in self.A], "c": list(self.c)}

    # structure -----------------------------------------------------------
    def column(self, j: int) -> tuple:
        return tuple(self.A[i][j] for i in range(self.d))

    def lift(self, m: int) -> "MonomialAutomorphism":
        if m % self.m:
            raise ModulusMismatch(f"{self.m} does not divide {m}")
        k = m // self.m
        return MonomialAutomorphism(self.d, self.A, [x * k for x in self.c], m)

    def reduced(self) -> "MonomialAutomorphism":
        """Same automorphism over the smallest modulus holding its coefficients."""
        g = self.m
        for x in self.c:
            g = gcd(g, x)
        if g in (0, self.m):
            return MonomialAutomorphism(self.d, self.A, [0] * self.d, 1)
        return MonomialAutomorphism(self.d, self.A, [x // g for x in self.c], self.m // g)

    def is_identity_matrix(self) -> bool:
        return all(self.A[i][j] == int(i == j) for i in range(self.d) for j in range(self.d))

    def is_identity(self) -> bool:
        return self.is_identity_matrix() and not any(self.c)

    def is_purely_monomial(self) -> bool:
        return not any(self.c)

    def inverse(self) -> "MonomialAutomorphism":
        Ainv = lattice.inverse_unimodular(self.A)
        # c_inv solves A^T c_inv = -c
        cinv = [-sum(Ainv[j][i] * self.c[j] for j in range(self.d)) for i in range(self.d)]
        return MonomialAutomorphism(self.d, Ainv, cinv, self.m)

    def __pow__(self, k: int) -> "MonomialAutomorphism":
        base = self if k >= 0 else self.inverse()
        out = MonomialAutomorphism.identity(self.d, self.m)
        for _ in range(abs(k)):
            out = compose(out, base)
        return out

    def order(self, guard: int = 4096) -> int:
        x = self
        for k in range(1, guard + 1):
            if x.is_identity():
                return k
            x = compose(x, self)
        raise ClosureTooLarge("automorphism order exceeds guard")

    def conjugate_by_basis(self, B) -> "MonomialAutomorphism":
        """Action in the variables z_j = prod_i x_i^{B[i][j]} (columns of B)."""
        from .errors import NonIntegralConjugate
        inv = lattice.inverse_rational(B)
        AB = lattice.matmul(self.A, B)
        new = [[sum(inv[i][k] * AB[k][j] for k in range(self.d)) for j in range(self.d)]
               for i in range(self.d)]
        if any(x.denominator != 1 for row in new for x in row):
            raise NonIntegralConjugate("B^-1 A B is not integral")
        c = [sum(self.c[i] * B[i][j] for i in range(self.d)) for j in range(self.d)]
        return MonomialAutomorphism(self.d, [[int(x) for x in row] for row in new], c, self.m)

    # field level -----------------------------------------------------------
    def image_fractions(self) -> list[LaurentFraction]:
        out = []
        for j in range(self.d):
            coeff = RootExponent(self.m, self.c[j]).to_cyclotomic()
            out.append(LaurentFraction.monomial(self.column(j), coeff))
        return out

    def apply(self, f: LaurentFraction) -> LaurentFraction:
        if f.d != self.d:
            raise DimMismatch(f"{f.d} != {self.d}")
        return fraction_substitute(f, dict(enumerate(self.image_fractions())))

    def __repr__(self):
        parts = []
        for j in range(self.d):
            mono = " ".join(f"x{i}^{e}" if e != 1 else f"x{i}" for i, e in enumerate(self.column(j)) if e)
            coef = f"z{self.m}^{self.c[j]} " if self.c[j] else ""
            parts.append(f"x{j}->{coef}{mono or '1'}")
        return "MA(" + ", ".join(parts) + ")"


def compose(t: MonomialAutomorphism, s: MonomialAutomorphism) -> MonomialAutomorphism:
    """T o S: first S, then T."""
    if t.d != s.d:
        raise DimMismatch(f"{t.d} != {s.d}")
    if t.m != s.m:
        raise ModulusMismatch(f"{t.m} != {s.m}")
    d = t.d
    A = lattice.matmul(t.A, s.A)
    c = [s.c[j] + sum(s.A[i][j] * t.c[i] for i in range(d)) for j in range(d)]
    return MonomialAutomorphism(d, A, c, t.m)


def apply(a: MonomialAutomorphism, f: LaurentFraction) -> LaurentFraction:
    return a.apply(f)


def common_modulus(autos) -> list[MonomialAutomorphism]:
    autos = list(autos)
    if not autos:
        return autos
    m = lcm(*[a.m for a in autos])
    return [a.lift(m) for a in autos]


def closure(gens, guard: int = CLOSURE_GUARD) -> list:
    """All products of the generators (the generated finite group), BFS order."""
    gens = list(gens)
    if not gens:
        return []
    ident = MonomialAutomorphism.identity(gens[0].d, gens[0].m)
    seen = {ident}
    out = [ident]
    i = 0
    while i < len(out):
        x = out[i]
        for g in gens:
            y = compose(g, x)
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > guard:
                    raise ClosureTooLarge(f"closure exceeds {guard} elements")
        i += 1
    return out


# ----------------------------------------------------------------------------
# assignments

class ActionAssignment:
    """Named generator images, optionally tied to a group and its relations."""

    def __init__(self, images: dict, group: Group | None = None, relations=None, names=None):
        if not images:
            raise InvalidParameter("empty assignment")
        keys = list(images)
        autos = common_modulus(images[k] for k in keys)
        ds = {a.d for a in autos}
        if len(ds) != 1:
            raise DimMismatch("images have different dimensions")
        self.images = dict(zip(keys, autos))
        self.d = ds.pop()
        self.m = autos[0].m
        self.group = group
        if relations is None and group is not None and getattr(group, "family", None) is not None:
            relations = group.family.relations
        self.relations = list(relations) if relations is not None else []
        self.names = list(names) if names else [f"x{i}" for i in range(self.d)]

    def __repr__(self):
        return f"ActionAssignment(d={self.d}, m={self.m}, gens={list(self.images)})"

    def word(self, word) -> MonomialAutomorphism:
        if isinstance(word, str):
            word = parse_word(word)
        out = MonomialAutomorphism.identity(self.d, self.m)
        for name, e in word:
            out = compose(out, self.images[name] ** e)
        return out

    def relabel(self, images: dict, names=None) -> "ActionAssignment":
        return ActionAssignment(images, self.group, self.relations, names)

    def element_images(self) -> dict:
        """group element index -> automorphism (needs an attached group)."""
        if self.group is None:
            raise InvalidParameter("assignment has no group attached")
        return {i: self.word(w) for i, w in enumerate(self.group.words())}

    def image_group(self) -> list:
        return closure(self.images.values())

    def to_json(self):
        out = {"d": self.d, "m": self.m,
               "generators": {k: {"A": [list(r) for r in a.A], "c": list(a.c)} for k, a in self.images.items()}}
        if self.relations:
            out["relations"] = list(self.relations)
        if self.group is not None and self.group.spec is not None:
            out["group"] = self.group.spec.to_json()
        return out

    @classmethod
    def from_json(cls, obj) -> "ActionAssignment":
        d = int(obj["d"])
        m = int(obj.get("m", 1))
        images = {k: MonomialAutomorphism(d, v["A"], v["c"], int(v.get("m", m)))
                  for k, v in obj["generators"].items()}
        group = None
        if "group" in obj:
            from .groups import GroupSpec, build_group
            group = build_group(GroupSpec.from_json(obj["group"]))
        return cls(images, group, obj.get("relations"))


@dataclass
class RelationCheck:
    relation: str
    passed: bool
    lhs: MonomialAutomorphism | None = None
    rhs: MonomialAutomorphism | None = None

    def to_json(self):
        out = {"relation": self.relation, "passed": self.passed}
        if not self.passed:
            out["lhs"] = self.lhs.to_json()
            out["rhs"] = self.rhs.to_json()
        return out


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failed(self) -> list:
        return [c.relation for c in self.checks if not c.passed]

    def to_json(self):
        return {"passed": self.passed, "relations": [c.to_json() for c in self.checks]}


def verify_homomorphism(assignment: ActionAssignment) -> VerificationReport:
    report = VerificationReport()
    for rel in assignment.relations:
        lhs, rhs = parse_relation(rel)
        a, b = assignment.word(lhs), assignment.word(rhs)
        report.checks.append(RelationCheck(rel, a == b, a, b))
    return report


# ----------------------------------------------------------------------------
# linear monomial matrices (M-groups)

@dataclass(frozen=True)
class MonomialMatrix:
    """x_j -> coeffs[j] * x_{perm[j]}."""

    perm: tuple
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "coeffs", tuple(c.reduced() for c in self.coeffs))
        if sorted(self.perm) != list(range(len(self.perm))):
            raise NotMonomial("column targets do not form a permutation")

    @property
    def d(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, d: int) -> "MonomialMatrix":
        return cls(tuple(range(d)), (RootExponent(1, 0),) * d)

    @classmethod
    def from_dense(cls, rows) -> "MonomialMatrix":
        """rows[i][j] is None (zero) or a RootExponent / [modulus, exponent] pair."""
        d = len(rows)
        perm, coeffs = [], []
        for j in range(d):
            nz = [(i, rows[i][j]) for i in range(d) if rows[i][j] is not None]
            if len(nz) != 1:
                raise NotMonomial(f"column {j} has {len(nz)} nonzero entries")
            i, v = nz[0]
            if not isinstance(v, RootExponent):
                v = RootExponent(int(v[0]), int(v[1]))
            perm.append(i)
            coeffs.append(v)
        return cls(tuple(perm), tuple(coeffs))

    @classmethod
    def from_json(cls, obj) -> "MonomialMatrix":
        if "perm" in obj:
            return cls(tuple(obj["perm"]), tuple(RootExponent(int(m), int(e)) for m, e in obj["coeffs"]))
        return cls.from_dense(obj["rows"])

    def to_json(self):
        return {"perm": list(self.perm), "coeffs": [[c.modulus, c.exponent] for c in self.coeffs]}

    def __matmul__(self, other: "MonomialMatrix") -> "MonomialMatrix":
        """self o other: first other, then self."""
        perm = tuple(self.perm[other.perm[j]] for j in range(self.d))
        coeffs = tuple(other.coeffs[j] * self.coeffs[other.perm[j]] for j in range(self.d))
        return MonomialMatrix(perm, coeffs)

    def rescaled(self, b) -> "MonomialMatrix":
        """The matrix in the variables y_i = b_i x_i."""
        # g(y_j) = b_j a_j x_p = (b_j a_j / b_p) y_p
        coeffs = tuple(b[j] * self.coeffs[j] * b[self.perm[j]].inverse() for j in range(self.d))
        return MonomialMatrix(self.perm, coeffs)


def matrix_closure(gens, guard: int = CLOSURE_GUARD) -> list:
    gens = list(gens)
    d = gens[0].d
    ident = MonomialMatrix.identity(d)
    seen = {ident}
    out = [ident]
    i = 0
    while i < len(out):
        for g in gens:
            y = g @ out[i]
            if y not in seen:
                seen.add(y)
                out.append(y)
                if len(out) > guard:
                    raise NotAGroup("closure does not terminate within the guard (infinite order?)")
        i += 1
    return out


def normalize_coefficients(matrices) -> tuple[list, int]:
    """Rescaling b and modulus m so that in y_i = b_i x_i all coefficients lie in <zeta_m>.

    Per orbit of variables: x_r is the lowest-index member, tau_i is the first
    group element (closure order) with tau_i(x_r) = b_i x_i, and the orbit's
    contribution to m is the order of the coefficient group of the stabilizer
    of the line k x_r.
    """
    mats = [m if isinstance(m, MonomialMatrix) else MonomialMatrix.from_dense(m) for m in matrices]
    if not mats:
        raise InvalidParameter("no matrices")
    d = mats[0].d
    if any(g.d != d for g in mats):
        raise DimMismatch("matrices of different sizes")
    group = matrix_closure(mats)
    b: list = [None] * d
    m = 1
    for r in range(d):
        if b[r] is not None:
            continue
        b[r] = RootExponent(1, 0)
        stab_order = 1
        for g in group:
            i = g.perm[r]
            if b[i] is None:
                b[i] = g.coeffs[r]
            if i == r:
                stab_order = lcm(stab_order, g.coeffs[r].order())
        m = lcm(m, stab_order)
    return b, m


def rescale_all(matrices, b) -> list:
    return [g.rescaled(b) for g in matrices]
