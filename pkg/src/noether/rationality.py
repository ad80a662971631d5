"""Rule engine: cited rationality verdicts for groups and monomial actions."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, lcm

from .algebra import lattice
from .algebra.cyclotomic import RootExponent
from .errors import DimUnsupported, InvalidField, InvalidParameter, TooLarge
from .groups import Group, cm_rtimes_c8, max_order
from .monomial import (ActionAssignment, MonomialAutomorphism, MonomialMatrix, closure, compose,
                       matrix_closure, normalize_coefficients, rescale_all)
from .reduction import change_basis, eliminate_fibered_variable, reduce_to_injective

RATIONAL = "Rational"
NOT_RATIONAL = "NotRational"
CONDITIONAL = "ConditionallyRational"
UNKNOWN = "Unknown"

SQUARE_CONDITION = "-1, 2, or -2 is a square in k"


# ----------------------------------------------------------------------------
# fields

def _divisors(m: int):
    return [d for d in range(1, m + 1) if m % d == 0]


def _is_prime(p: int) -> bool:
    return p > 1 and all(p % q for q in range(2, int(p ** 0.5) + 1))


@dataclass(frozen=True)
class FieldDescriptor:
    """char, the set of m with zeta_m in k, and whether -1, 2, -2 are squares.

    A square flag may be None (undecided); verdicts that hinge on it come
    back as ConditionallyRational.
    """

    char: int = 0
    roots: frozenset = frozenset({1, 2})
    minus_one: bool | None = False
    two: bool | None = False
    minus_two: bool | None = False
    finite: bool = False

    @classmethod
    def make(cls, char=0, roots=(), minus_one=None, two=None, minus_two=None, finite=False):
        char = int(char)
        if char and not _is_prime(char):
            raise InvalidField(f"characteristic {char} is not 0 or a prime")
        rs = {int(r) for r in roots}
        if any(r < 1 for r in rs):
            raise InvalidField("roots of unity orders must be positive")
        if char != 2:
            rs |= {1, 2}
        else:
            rs |= {1}
        if minus_one and char != 2:
            rs.add(4)
        for r in list(rs):
            rs.update(_divisors(r))
        if char:
            bad = [r for r in rs if r % char == 0]
            if bad:
                raise InvalidField(f"char {char} divides root order {min(bad)}")
        # square flags forced by roots of unity
        forced = {}
        if 4 in rs or char == 2:
            forced["minus_one"] = True
        if 8 in rs or char == 2:
            forced = {"minus_one": True, "two": True, "minus_two": True}
        given = {"minus_one": minus_one, "two": two, "minus_two": minus_two}
        flags = {}
        for k, v in given.items():
            if k in forced:
                if v is False:
                    raise InvalidField(f"square flag {k} contradicts the roots of unity")
                flags[k] = True
            else:
                flags[k] = False if v is None and not finite else v
        if finite and char != 2:
            if all(flags[k] is False for k in flags):
                raise InvalidField("in a finite field one of -1, 2, -2 is a square")
        return cls(char, frozenset(rs), flags["minus_one"], flags["two"], flags["minus_two"], bool(finite))

    @classmethod
    def cyclotomic(cls, m: int, **kw):
        """The minimal descriptor for Q(zeta_m) (flags implied by the roots)."""
        return cls.make(0, [m], **kw)

    @classmethod
    def rationals(cls):
        return cls.make(0, [2])

    def has_root(self, m: int) -> bool:
        return m in self.roots

    @property
    def sqrt_minus_one(self) -> bool:
        return bool(self.minus_one) or self.char == 2

    def square_verdict(self):
        """True / False / None: is one of -1, 2, -2 a square."""
        flags = (self.minus_one, self.two, self.minus_two)
        if any(f is True for f in flags):
            return True
        if all(f is False for f in flags):
            return False
        return None

    def to_json(self):
        return {"char": self.char, "roots": sorted(self.roots),
                "squares": {"minus_one": self.minus_one, "two": self.two, "minus_two": self.minus_two},
                "finite": self.finite}

    @classmethod
    def from_json(cls, obj):
        sq = obj.get("squares", {})
        return cls.make(obj.get("char", 0), obj.get("roots", []), sq.get("minus_one"), sq.get("two"),
                        sq.get("minus_two"), obj.get("finite", False))


def field_policy(n: int) -> FieldDescriptor:
    """Minimal field for the 2-group setting: char 0 with zeta_{2^(n-3)}."""
    return FieldDescriptor.cyclotomic(max(2, 2 ** (n - 3)))


# ----------------------------------------------------------------------------
# verdicts

@dataclass
class TraceEntry:
    rule: str
    hypotheses: dict
    outcome: str

    def to_json(self):
        return {"rule": self.rule, "hypotheses": self.hypotheses, "outcome": self.outcome}


@dataclass
class Verdict:
    status: str
    trace: list = field(default_factory=list)
    condition: str | None = None

    def to_json(self):
        out = {"status": self.status, "trace": [t.to_json() for t in self.trace]}
        if self.condition:
            out["condition"] = self.condition
        return out

    def __repr__(self):
        last = self.trace[-1].rule if self.trace else "-"
        return f"Verdict({self.status}, by {last})"


def _resolve_square(field: FieldDescriptor, trace, rule, hyp) -> Verdict:
    sq = field.square_verdict()
    hyp = dict(hyp, squares={"minus_one": field.minus_one, "two": field.two, "minus_two": field.minus_two})
    if sq is True:
        trace.append(TraceEntry(rule, hyp, RATIONAL))
        return Verdict(RATIONAL, trace)
    if sq is False:
        trace.append(TraceEntry(rule, hyp, NOT_RATIONAL))
        return Verdict(NOT_RATIONAL, trace)
    trace.append(TraceEntry(rule, hyp, CONDITIONAL))
    return Verdict(CONDITIONAL, trace, SQUARE_CONDITION)


# ----------------------------------------------------------------------------
# groups

def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0 and n > 1:
        n //= p
    return n == 1


def _normal_subgroups(grp: Group) -> list:
    """All normal subgroups, as joins of normal closures of single elements."""
    def ncl(gens):
        cur = set(grp.subgroup(gens))
        while True:
            conj = {grp.mul(grp.mul(grp.inv(g), h), g) for g in grp.generators.values() for h in cur}
            if conj <= cur:
                return tuple(sorted(cur))
            cur = set(grp.subgroup(sorted(cur | conj)))

    basic = {ncl([g]) for g in range(grp.order)}
    subs = set(basic)
    frontier = set(basic)
    while frontier:
        new = set()
        for a in frontier:
            for b in basic:
                j = tuple(sorted(set(grp.subgroup(sorted(set(a) | set(b))))))
                if j not in subs:
                    new.add(j)
        subs |= new
        frontier = new
    return sorted(subs, key=len)


def direct_decomposition(grp: Group):
    """(A, B) with G = A x B and both nontrivial, or None."""
    n = grp.order
    subs = [s for s in _normal_subgroups(grp) if 1 < len(s) < n]
    by_size = {}
    for s in subs:
        by_size.setdefault(len(s), []).append(s)
    for a in subs:
        for b in by_size.get(n // len(a), []):
            if len(a) * len(b) == n and set(a) & set(b) == {0}:
                return a, b
    return None


def classify_group(grp: Group, field: FieldDescriptor, _depth: int = 0) -> Verdict:
    if grp.order > max_order():
        raise TooLarge(f"|G| = {grp.order} exceeds the scan guard")
    trace = []
    N = grp.order
    p = field.char

    if p and _is_power_of(N, p):
        trace.append(TraceEntry("Kuniyoshi's Theorem", {"char": p, "order": N}, RATIONAL))
        return Verdict(RATIONAL, trace)
    if N == 1:
        trace.append(TraceEntry("trivial group", {"order": 1}, RATIONAL))
        return Verdict(RATIONAL, trace)

    e_val = grp.exponent
    if N >= 16 and _is_power_of(N, 2):
        n = N.bit_length() - 1
        e = e_val.bit_length() - 1
        if e >= n - 2 and (p == 2 or field.has_root(2 ** (e - 1))):
            trace.append(TraceEntry("Theorem 1.4", {"order": f"2^{n}", "exponent": f"2^{e}",
                                                    "root": 2 ** (e - 1)}, RATIONAL))
            return Verdict(RATIONAL, trace)
        if not grp.is_abelian() and e >= n - 2 and (p == 2 or field.has_root(2 ** (n - 2))):
            trace.append(TraceEntry("Theorem 1.3", {"order": f"2^{n}", "max element order": e_val,
                                                    "root": 2 ** (n - 2)}, RATIONAL))
            return Verdict(RATIONAL, trace)

    if grp.is_abelian() and field.has_root(e_val) and (not p or N % p):
        trace.append(TraceEntry("Lenstra's Theorem (abelian, zeta_exp in k)", {"exponent": e_val}, RATIONAL))
        return Verdict(RATIONAL, trace)

    orders = grp.element_orders
    if N % 4 == 0 and p != 2:
        n = N // 4
        has_n = bool((orders == n).any())
        if has_n and field.has_root(n) and field.sqrt_minus_one:
            trace.append(TraceEntry("Theorem 4.1", {"order": N, "cyclic subgroup order": n,
                                                    "zeta_n": True, "sqrt(-1)": True}, RATIONAL))
            return Verdict(RATIONAL, trace)
        if has_n and field.has_root(n):
            hyp = {"order": N, "element of order": n, "zeta_n": True}
            m = n // 2
            if n % 2 == 0 and m % 2 == 1 and cm_rtimes_c8(grp) == m and len(grp.center) % 2 == 0:
                hyp.update({"exceptional": f"C_{m} x| C_8", "center order": len(grp.center)})
                return _resolve_square(field, trace, "Theorem 1.8 (exceptional case)", hyp)
            trace.append(TraceEntry("Theorem 1.8", hyp, RATIONAL))
            return Verdict(RATIONAL, trace)

    if N <= 2 ** 8:
        dec = direct_decomposition(grp)
        if dec is not None:
            A, B = (grp.as_group(s) for s in dec)
            va = classify_group(A, field, _depth + 1)
            vb = classify_group(B, field, _depth + 1)
            hyp = {"factors": [A.order, B.order], "left": va.status, "right": vb.status}
            if va.status == RATIONAL and vb.status == RATIONAL:
                trace.extend(va.trace + vb.trace)
                trace.append(TraceEntry("Theorem 2.6", hyp, RATIONAL))
                return Verdict(RATIONAL, trace)
            trace.append(TraceEntry("Theorem 2.6", hyp, "not applicable"))

    trace.append(TraceEntry("no rule", {"order": N, "exponent": e_val}, UNKNOWN))
    return Verdict(UNKNOWN, trace)


# ----------------------------------------------------------------------------
# exceptional C4 form

A_STD = ((0, 0, -1), (1, 0, -1), (0, 1, -1))


@dataclass(frozen=True)
class ExceptionalForm:
    coefficient: int        # c with tau: w1 -> w2 -> w3 -> zeta_m^c/(w1 w2 w3)
    modulus: int
    klass: int              # c modulo gcd(4, m): the class modulo fourth powers
    epsilon: int | None     # +1 / -1 when the class is a sign
    conjugator: tuple = ()

    def to_json(self):
        return {"c": self.coefficient, "m": self.modulus, "class": self.klass, "epsilon": self.epsilon}


def _mat_pow(A, k):
    out = lattice.identity(len(A))
    for _ in range(k):
        out = lattice.matmul(A, out)
    return out


def has_exceptional_shape(A) -> bool:
    """Order 4 with characteristic polynomial x^3 + x^2 + x + 1."""
    A = [list(r) for r in A]
    if len(A) != 3:
        return False
    I = lattice.identity(3)
    A2 = _mat_pow(A, 2)
    A3 = lattice.matmul(A, A2)
    s = [[A3[i][j] + A2[i][j] + A[i][j] + I[i][j] for j in range(3)] for i in range(3)]
    return all(x == 0 for r in s for x in r) and A2 != I


def _shells(radius: int):
    """Nonzero integer vectors of length 3, by increasing sup-norm."""
    for b in range(1, radius + 1):
        for p in itertools.product(range(-b, b + 1), repeat=3):
            if max(map(abs, p)) == b:
                yield p


def exceptional_form(action: MonomialAutomorphism, bound: int = 2):
    """epsilon-class of an order-4 action in the exceptional shape, or None."""
    if action.d != 3 or not has_exceptional_shape(action.A):
        return None
    A = [list(r) for r in action.A]
    A2 = _mat_pow(A, 2)
    for p in _shells(max(bound, max(abs(x) for r in A for x in r) + 2)):
        c1 = list(p)
        c2 = lattice.matvec(A, c1)
        c3 = lattice.matvec(A2, c1)
        P = [[c1[i], c2[i], c3[i]] for i in range(3)]
        if abs(lattice.det(P)) != 1:
            continue
        std = action.conjugate_by_basis(P)
        assert [list(r) for r in std.A] == [list(r) for r in A_STD]
        a1, a2, a3 = std.c
        m = std.m
        c = (3 * a1 + 2 * a2 + a3) % m
        g = gcd(4, m)
        klass = c % g
        if klass == 0:
            eps = 1
        elif g == 2:
            eps = -1
        else:
            eps = None
        return ExceptionalForm(c, m, klass, eps, tuple(map(tuple, P)))
    return None


# ----------------------------------------------------------------------------
# two-generator sign pattern in dimension 3

def match_theorem24(assignment: ActionAssignment):
    """Roles (s, t, x, y, z) with s: x->a/x, y->a/y, z->eps z; t: x<->y, z->b/z."""
    if assignment.d != 3:
        return None
    gens = {k: a for k, a in assignment.images.items() if not a.is_identity()}
    if not 1 <= len(gens) <= 2:
        # more generators: any pair generating the same image group will do
        full = len(assignment.image_group())
        pairs = [(a, b) for a, b in itertools.permutations(gens, 2)
                 if len(closure([gens[a], gens[b]])) == full]
    else:
        pairs = list(itertools.permutations(gens, 2))
    m = assignment.m
    for sname, tname in pairs:
        s, t = gens[sname], gens[tname]
        for x, y, z in itertools.permutations(range(3)):
            def col(a, j):
                return a.column(j)

            e = [0, 0, 0]
            ex = list(e); ex[x] = -1
            ey = list(e); ey[y] = -1
            ez = list(e); ez[z] = 1
            if not (list(col(s, x)) == ex and list(col(s, y)) == ey and list(col(s, z)) == ez):
                continue
            if s.c[x] != s.c[y] or s.c[z] not in (0, (m // 2) if m % 2 == 0 else -1):
                continue
            tx = list(e); tx[y] = 1
            ty = list(e); ty[x] = 1
            tz = list(e); tz[z] = -1
            if not (list(col(t, x)) == tx and list(col(t, y)) == ty and list(col(t, z)) == tz):
                continue
            if t.c[x] or t.c[y]:
                continue
            names = assignment.names
            return {"sigma": sname, "tau": tname, "x": names[x], "y": names[y], "z": names[z],
                    "a": [s.c[x], m], "epsilon": 1 if s.c[z] == 0 else -1, "b": [t.c[z], m]}
    return None


# ----------------------------------------------------------------------------
# monomial actions

def coefficient_order(assignment: ActionAssignment) -> int:
    m = assignment.m
    out = 1
    for a in assignment.images.values():
        for c in a.c:
            out = lcm(out, m // gcd(m, c))
    return out


def classify_monomial_action(assignment: ActionAssignment, field: FieldDescriptor) -> Verdict:
    d = assignment.d
    if d > 3:
        raise DimUnsupported(f"monomial actions of dimension {d} are outside the rule set")
    trace = []
    mc = coefficient_order(assignment)
    if not field.has_root(mc):
        trace.append(TraceEntry("coefficient check", {"coefficient order": mc, "in k": False}, UNKNOWN))
        return Verdict(UNKNOWN, trace)
    if d <= 1:
        trace.append(TraceEntry("Lüroth's Theorem", {"d": d}, RATIONAL))
        return Verdict(RATIONAL, trace)
    if d == 2:
        trace.append(TraceEntry("Theorem 2.5", {"d": 2}, RATIONAL))
        return Verdict(RATIONAL, trace)
    if field.char == 2:
        trace.append(TraceEntry("char 2", {"d": 3}, UNKNOWN))
        return Verdict(UNKNOWN, trace)
    if field.sqrt_minus_one:
        trace.append(TraceEntry("Theorem 2.7", {"d": 3, "sqrt(-1)": True, "coefficient order": mc}, RATIONAL))
        return Verdict(RATIONAL, trace)
    return classify_injective(assignment, field, trace)


def classify_injective(assignment: ActionAssignment, field: FieldDescriptor, trace=None) -> Verdict:
    """d = 3 without sqrt(-1): reduce to injective rho and inspect the quotient."""
    trace = trace if trace is not None else []
    cur, steps = reduce_to_injective(assignment)
    for st in steps:
        trace.append(TraceEntry(st.justification, {"kernel_size": st.detail["kernel_size"],
                                                   "index": st.detail["index"]}, "reduced"))
    if all(not any(a.c) for a in cur.images.values()):
        trace.append(TraceEntry("[HK2] purely monomial", {"d": 3}, RATIONAL))
        return Verdict(RATIONAL, trace)
    m24 = match_theorem24(cur)
    if m24 is not None:
        trace.append(TraceEntry("Theorem 2.4", m24, RATIONAL))
        return Verdict(RATIONAL, trace)
    img = cur.image_group()
    gen4 = [a for a in img if len(img) == 4 and a.order() == 4]
    if gen4 and has_exceptional_shape(gen4[0].A):
        form = exceptional_form(gen4[0])
        if form is None:
            trace.append(TraceEntry("Theorem 2.8", {"quotient": "C4", "conjugator": "not found in bound"},
                                    UNKNOWN))
            return Verdict(UNKNOWN, trace)
        hyp = {"quotient": "C4", "exceptional": form.to_json()}
        if form.epsilon == 1:
            trace.append(TraceEntry("Theorem 2.8 (c = d^4, then [HK2])", hyp, RATIONAL))
            return Verdict(RATIONAL, trace)
        if form.epsilon == -1:
            return _resolve_square(field, trace, "Theorem 2.8 (exceptional case)", hyp)
        trace.append(TraceEntry("Theorem 2.8", hyp, UNKNOWN))
        return Verdict(UNKNOWN, trace)
    trace.append(TraceEntry("Theorem 2.8", {"quotient order": len(img), "exceptional": False}, RATIONAL))
    return Verdict(RATIONAL, trace)


# ----------------------------------------------------------------------------
# M-groups

def m_group_assignment(matrices):
    """Rescale coefficients into one <zeta_m>, then the monomial action on y_1..y_d."""
    mats = [g if isinstance(g, MonomialMatrix) else MonomialMatrix.from_json(g)
            if isinstance(g, dict) else MonomialMatrix.from_dense(g) for g in matrices]
    b, m = normalize_coefficients(mats)
    resc = rescale_all(mats, b)
    images = {}
    for k, g in enumerate(resc):
        d = g.d
        A = [[0] * d for _ in range(d)]
        for j in range(d):
            A[g.perm[j]][j] = 1
        images[f"g{k}"] = MonomialAutomorphism(d, A, [c.lift(m).exponent if m % c.modulus == 0
                                                      else _exp_in(c, m) for c in g.coeffs], m)
    names = [f"y{i + 1}" for i in range(mats[0].d)]
    return ActionAssignment(images, names=names), b, m


def _exp_in(c: RootExponent, m: int) -> int:
    r = c.reduced()
    if m % r.modulus:
        raise InvalidParameter(f"coefficient {r} is not in <zeta_{m}>")
    return r.exponent * (m // r.modulus)


def classify_m_group(matrices, field: FieldDescriptor) -> Verdict:
    asg, b, m = m_group_assignment(matrices)
    d = asg.d
    if d != 4:
        raise DimUnsupported("the M-group pipeline is for GL_4")
    trace = [TraceEntry("Lemma 4.3", {"m": m, "rescaling": [[x.modulus, x.exponent] for x in b]}, "normalized")]
    if not field.has_root(m):
        trace.append(TraceEntry("coefficient check", {"m": m, "in k": False}, UNKNOWN))
        return Verdict(UNKNOWN, trace)
    # z_i = y_i / y_4, keep y_4 as the fibered variable
    B = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-1, -1, -1, 1]]
    zs = change_basis(asg, B, names=["z1", "z2", "z3", "y4"])
    step = eliminate_fibered_variable(zs, "y4")
    trace.append(TraceEntry("Theorem 2.3", {"dropped": "y4", "z_i": "y_i/y_4"}, "reduced"))
    if field.sqrt_minus_one:
        trace.append(TraceEntry("Theorem 4.4", {"sqrt(-1)": True, "m": m}, RATIONAL))
        return Verdict(RATIONAL, trace)
    rest = classify_monomial_action(step.after, field)
    return Verdict(rest.status, trace + rest.trace, rest.condition)
