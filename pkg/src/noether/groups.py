"""Finite groups: the 26 two-group families with a cyclic subgroup of index 4,
plus groups given by Cayley tables or permutation generators.

Family groups are realized by normal-form rewriting.  An element is the
word s^a t^b l^c (s = sigma, t = tau, l = lambda) with 0 <= a < 2^(n-2),
0 <= b < T, 0 <= c < L.  Right multiplication by a single generator is
computed by moving the new letter leftwards with per-family swap rules;
overflowing powers fold back through the power relations.  Nothing about
the result is trusted: ``build_group`` re-checks every defining relation,
the group order and (for small groups) associativity on the full table.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, lcm

import numpy as np

from .errors import InvalidParameter, MixedGroups, NotAGroup, TooLarge

DEFAULT_MAX_ORDER = 2 ** 12


def max_order() -> int:
    return int(os.environ.get("NOETHER_MAX_ORDER", DEFAULT_MAX_ORDER))


# ----------------------------------------------------------------------------
# words

GEN_ALIASES = {"s": "s", "sigma": "s", "σ": "s", "t": "t", "tau": "t", "τ": "t",
               "l": "l", "lambda": "l", "λ": "l"}

_TOKEN = re.compile(r"([A-Za-zστλ_][A-Za-z0-9_]*|[στλ])(?:\^\{?(-?\d+)\}?)?")


def parse_word(text: str) -> list[tuple[str, int]]:
    """'t^-1 s t' -> [('t', -1), ('s', 1), ('t', 1)]; '1' is the empty word."""
    text = text.strip()
    if text in ("", "1", "e"):
        return []
    out = []
    pos = 0
    for m in _TOKEN.finditer(text):
        gap = text[pos:m.start()].strip().strip("*")
        if gap:
            raise ValueError(f"cannot parse word {text!r} near {gap!r}")
        name = GEN_ALIASES.get(m.group(1), m.group(1))
        out.append((name, int(m.group(2)) if m.group(2) else 1))
        pos = m.end()
    if text[pos:].strip():
        raise ValueError(f"cannot parse word {text!r}")
    return out


def parse_relation(text: str) -> tuple[list, list]:
    if "=" in text:
        lhs, rhs = text.split("=")
        return parse_word(lhs), parse_word(rhs)
    return parse_word(text), []


# ----------------------------------------------------------------------------
# family catalog

@dataclass(frozen=True)
class FamilyData:
    fid: int
    s: int                      # order of sigma
    T: int                      # normal-form bound for tau
    L: int                      # normal-form bound for lambda (1 = absent)
    tau_pow: tuple              # tau^T as (x, y, z)
    lam_pow: tuple              # lambda^L
    tau_sigma: tuple            # tau*sigma
    lam_sigma: tuple            # lambda*sigma
    lam_tau: tuple              # lambda*tau
    relations: tuple[str, ...]  # the printed presentation
    tau_b_sigma: tuple | None = None  # tau^b * sigma for b = 0..T-1, when sigma normalizes <tau>


FAMILY_GROUPS = {
    "I": range(1, 6),
    "II": range(6, 19),
    "III": range(19, 26),
    "IV": range(26, 27),
}


def family_class(fid: int) -> str:
    for name, ids in FAMILY_GROUPS.items():
        if fid in ids:
            return name
    raise InvalidParameter(f"no family G{fid}")


def valid_n(fid: int, n: int) -> bool:
    cls = family_class(fid)
    return {"I": n >= 4, "II": n >= 5, "III": n >= 6, "IV": n == 5}[cls]


def families_at(n: int) -> list[int]:
    return [f for f in range(1, 27) if valid_n(f, n)]


def parse_family_id(fid) -> int:
    if isinstance(fid, int):
        k = fid
    else:
        m = re.fullmatch(r"[Gg]?_?(\d+)", str(fid).strip())
        if not m:
            raise InvalidParameter(f"bad family id {fid!r}")
        k = int(m.group(1))
    if not 1 <= k <= 26:
        raise InvalidParameter(f"family id out of range: {fid!r}")
    return k


def family_data(fid: int, n: int) -> FamilyData:
    if not valid_n(fid, n):
        raise InvalidParameter(f"G{fid} is not defined for n={n}")
    s = 2 ** (n - 2)
    h = 2 ** (n - 3)
    q = 2 ** (n - 4)

    def inv(r):
        # rows for other families are built too; only the requested one is used
        return pow(r % s, -1, s) if r % 2 else 0

    one = (0, 0, 0)
    central_l = dict(L=2, lam_pow=one, lam_sigma=(1, 0, 1), lam_tau=(0, 1, 1))
    S = f"s^{s}"
    table = {
        1: dict(T=4, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0),
                rel=(S, "t^4", f"t^-1 s t = s^{1 + h}")),
        2: dict(T=2, tau_pow=(h, 0, 0), tau_sigma=(s - 1, 1, 0), **central_l,
                rel=(S, "l^2", f"s^{h} = t^2", "t^-1 s t = s^-1", "s l = l s", "t l = l t")),
        3: dict(T=2, tau_pow=one, tau_sigma=(s - 1, 1, 0), **central_l,
                rel=(S, "t^2", "l^2", "t^-1 s t = s^-1", "s l = l s", "t l = l t")),
        4: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=one,
                lam_sigma=(1, 0, 1), lam_tau=(h, 1, 1),
                rel=(S, "t^2", "l^2", "s t = t s", "s l = l s", f"l^-1 t l = s^{h} t")),
        5: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=one,
                lam_sigma=(1, 1, 1), lam_tau=(0, 1, 1),
                rel=(S, "t^2", "l^2", "s t = t s", "l^-1 s l = s t", "t l = l t")),
        6: dict(T=4, tau_pow=one, tau_sigma=(s - 1, 1, 0),
                rel=(S, "t^4", "t^-1 s t = s^-1")),
        7: dict(T=4, tau_pow=one, tau_sigma=(inv(h - 1), 1, 0),
                rel=(S, "t^4", f"t^-1 s t = s^{h - 1}")),
        8: dict(T=4, tau_pow=(h, 0, 0), tau_sigma=(s - 1, 1, 0),
                rel=(S, f"s^{h} = t^4", "t^-1 s t = s^-1")),
        9: dict(T=4, tau_pow=one, tau_sigma=(1, 3, 0),
                rel=(S, "t^4", "s^-1 t s = t^-1")),
        10: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), **central_l,
                 rel=(S, "t^2", "l^2", f"t^-1 s t = s^{1 + h}", "s l = l s", "t l = l t")),
        11: dict(T=2, tau_pow=one, tau_sigma=(inv(h - 1), 1, 0), **central_l,
                 rel=(S, "t^2", "l^2", f"t^-1 s t = s^{h - 1}", "s l = l s", "t l = l t")),
        12: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=one,
                 lam_sigma=(s - 1, 0, 1), lam_tau=(h, 1, 1),
                 rel=(S, "t^2", "l^2", "s t = t s", "l^-1 s l = s^-1", f"l^-1 t l = s^{h} t")),
        13: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=one,
                 lam_sigma=(s - 1, 1, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", "l^2", "s t = t s", "l^-1 s l = s^-1 t", "t l = l t")),
        14: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=(h, 0, 0),
                 lam_sigma=(s - 1, 1, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", f"s^{h} = l^2", "s t = t s", "l^-1 s l = s^-1 t", "t l = l t")),
        15: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), L=2, lam_pow=one,
                 lam_sigma=(h - 1, 0, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", "l^2", f"t^-1 s t = s^{1 + h}", f"l^-1 s l = s^{h - 1}", "t l = l t")),
        16: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), L=2, lam_pow=one,
                 lam_sigma=(h - 1, 0, 1), lam_tau=(h, 1, 1),
                 rel=(S, "t^2", "l^2", f"t^-1 s t = s^{1 + h}", f"l^-1 s l = s^{h - 1}",
                      f"l^-1 t l = s^{h} t")),
        17: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), L=2, lam_pow=one,
                 lam_sigma=(1, 1, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", "l^2", f"t^-1 s t = s^{1 + h}", "l^-1 s l = s t", "t l = l t")),
        # lambda^2 = tau: conjugation by lambda^-1 is worked out from the
        # presentation as sigma -> sigma^(h-1) tau; certification re-checks it.
        18: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), L=2, lam_pow=(0, 1, 0),
                 lam_sigma=(h - 1, 1, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", "l^2 = t", f"t^-1 s t = s^{1 + h}", "l^-1 s l = s^-1 t")),
        19: dict(T=4, tau_pow=one, tau_sigma=(inv(1 + q), 1, 0),
                 rel=(S, "t^4", f"t^-1 s t = s^{1 + q}")),
        20: dict(T=4, tau_pow=one, tau_sigma=(inv(q - 1), 1, 0),
                 rel=(S, "t^4", f"t^-1 s t = s^{q - 1}")),
        # sigma inverts tau, so tau^b sigma = sigma tau^-b = sigma^(1+h) tau^(4-b)
        21: dict(T=4, tau_pow=(h, 0, 0), tau_sigma=(1 + h, 3, 0),
                 tbs=(None, (1 + h, 3, 0), (1 + h, 2, 0), (1 + h, 1, 0)),
                 rel=(S, f"s^{h} = t^4", "s^-1 t s = t^-1")),
        22: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=one,
                 lam_sigma=(1 + q, 1, 1), lam_tau=(h, 1, 1),
                 rel=(S, "t^2", "l^2", "s t = t s", f"l^-1 s l = s^{1 + q} t", f"l^-1 t l = s^{h} t")),
        23: dict(T=2, tau_pow=one, tau_sigma=(1, 1, 0), L=2, lam_pow=one,
                 lam_sigma=(q - 1, 1, 1), lam_tau=(h, 1, 1),
                 rel=(S, "t^2", "l^2", "s t = t s", f"l^-1 s l = s^{q - 1} t", f"l^-1 t l = s^{h} t")),
        24: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), L=2, lam_pow=one,
                 lam_sigma=(q - 1, 1, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", "l^2", f"t^-1 s t = s^{1 + h}", f"l^-1 s l = s^{q - 1} t", "t l = l t")),
        25: dict(T=2, tau_pow=one, tau_sigma=(inv(1 + h), 1, 0), L=2, lam_pow=(h, 0, 0),
                 lam_sigma=(q - 1, 1, 1), lam_tau=(0, 1, 1),
                 rel=(S, "t^2", f"s^{h} = l^2", f"t^-1 s t = s^{1 + h}", f"l^-1 s l = s^{q - 1} t",
                      "t l = l t")),
        26: dict(T=2, tau_pow=one, tau_sigma=(5, 1, 0), L=2, lam_pow=(4, 0, 0),
                 lam_sigma=(1, 1, 1), lam_tau=(0, 1, 1),
                 rel=("s^8", "t^2", "s^4 = l^2", "t^-1 s t = s^5", "l^-1 s l = s t", "t l = l t")),
    }
    d = table[fid]
    return FamilyData(
        fid=fid, s=s, T=d["T"], L=d.get("L", 1), tau_pow=d["tau_pow"],
        lam_pow=d.get("lam_pow", one), tau_sigma=d["tau_sigma"],
        lam_sigma=d.get("lam_sigma", (1, 0, 0)), lam_tau=d.get("lam_tau", (0, 1, 0)),
        relations=d["rel"], tau_b_sigma=d.get("tbs"),
    )


class _Collector:
    """Right multiplication of normal forms by single generators."""

    def __init__(self, fam: FamilyData):
        self.f = fam
        self.memo: dict = {}

    def word(self, nf, w):
        x, y, z = w
        for _ in range(x):
            nf = self.letter(nf, "s")
        for _ in range(y):
            nf = self.letter(nf, "t")
        for _ in range(z):
            nf = self.letter(nf, "l")
        return nf

    def letter(self, nf, g):
        key = (nf, g)
        if key in self.memo:
            return self.memo[key]
        f = self.f
        a, b, c = nf
        if g == "l":
            out = (a, b, c + 1) if c + 1 < f.L else self.word((a, b, 0), f.lam_pow)
        elif g == "t":
            if c:
                out = self.word((a, b, 0), f.lam_tau)
            elif b + 1 < f.T:
                out = (a, b + 1, 0)
            else:
                out = self.word((a, 0, 0), f.tau_pow)
        else:
            if c:
                out = self.word((a, b, 0), f.lam_sigma)
            elif b and f.tau_b_sigma:
                out = self.word((a, 0, 0), f.tau_b_sigma[b])
            elif b:
                out = self.word((a, b - 1, 0), f.tau_sigma)
            else:
                out = ((a + 1) % f.s, 0, 0)
        self.memo[key] = out
        return out


# ----------------------------------------------------------------------------
# group objects

@dataclass(frozen=True)
class GroupSpec:
    """One of: Family(id, n), CayleyTable(table), PermGenerators(generators)."""

    kind: str
    family: int | None = None
    n: int | None = None
    table: tuple | None = None
    generators: tuple | None = None
    degree: int | None = None

    @classmethod
    def Family(cls, fid, n: int) -> "GroupSpec":
        return cls("family", family=parse_family_id(fid), n=int(n))

    @classmethod
    def CayleyTable(cls, table) -> "GroupSpec":
        return cls("cayley", table=tuple(tuple(int(x) for x in row) for row in table))

    @classmethod
    def PermGenerators(cls, generators, degree: int | None = None) -> "GroupSpec":
        gens = tuple(tuple(int(x) for x in g) for g in generators)
        deg = degree if degree is not None else (len(gens[0]) if gens else 0)
        return cls("perm", generators=gens, degree=deg)

    @classmethod
    def from_json(cls, obj) -> "GroupSpec":
        if "family" in obj:
            return cls.Family(obj["family"], obj["n"])
        if "table" in obj:
            if "order" in obj and int(obj["order"]) != len(obj["table"]):
                raise NotAGroup("declared order does not match the table")
            return cls.CayleyTable(obj["table"])
        if "generators" in obj:
            return cls.PermGenerators(obj["generators"], obj.get("degree"))
        raise InvalidParameter("unrecognised group spec")

    def to_json(self):
        if self.kind == "family":
            return {"family": f"G{self.family}", "n": self.n}
        if self.kind == "cayley":
            return {"order": len(self.table), "table": [list(r) for r in self.table]}
        return {"degree": self.degree, "generators": [list(g) for g in self.generators]}


class Group:
    """A finite group as a Cayley table; element 0 is the identity.

    ``labels[i]`` is a human-readable name (a normal form for families) and
    ``generators`` maps generator names to element indices.
    """

    def __init__(self, table, labels=None, generators=None, name="G", spec=None):
        self.table = np.asarray(table, dtype=np.int64)
        self.order = len(self.table)
        self.labels = list(labels) if labels is not None else list(range(self.order))
        self.generators = dict(generators) if generators else {}
        self.name = name
        self.spec = spec
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def __repr__(self):
        return f"Group({self.name}, order={self.order})"

    # basic arithmetic on indices ---------------------------------------
    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    @cached_property
    def inverses(self) -> np.ndarray:
        return np.argmax(self.table == 0, axis=1)

    def inv(self, i: int) -> int:
        return int(self.inverses[i])

    def power(self, i: int, k: int) -> int:
        if k < 0:
            i, k = self.inv(i), -k
        out = 0
        for _ in range(k):
            out = self.mul(out, i)
        return out

    def element(self, label) -> "GroupElement":
        return GroupElement(self, self._index[label])

    def elem(self, i: int) -> "GroupElement":
        return GroupElement(self, i)

    def gen(self, name: str) -> "GroupElement":
        return GroupElement(self, self.generators[GEN_ALIASES.get(name, name)])

    @property
    def identity(self) -> "GroupElement":
        return GroupElement(self, 0)

    def eval_word(self, word) -> int:
        if isinstance(word, str):
            word = parse_word(word)
        out = 0
        for name, e in word:
            out = self.mul(out, self.power(self.generators[name], e))
        return out

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        for i in range(self.order):
            k, x = 1, i
            while x != 0:
                x = self.mul(x, i)
                k += 1
            orders[i] = k
        return orders

    def element_order(self, i: int) -> int:
        return int(self.element_orders[i])

    @cached_property
    def exponent(self) -> int:
        return int(lcm(*map(int, self.element_orders)))

    @cached_property
    def center(self) -> list[int]:
        T = self.table
        return [i for i in range(self.order) if np.array_equal(T[i, :], T[:, i])]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    # subgroups -----------------------------------------------------------
    def subgroup(self, gens) -> tuple[int, ...]:
        """Elements of the subgroup generated by ``gens`` (sorted)."""
        elems = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    def is_normal(self, sub) -> bool:
        s = set(sub)
        for g in range(self.order):
            gi = self.inv(g)
            for h in sub:
                if self.mul(self.mul(gi, h), g) not in s:
                    return False
        return True

    def as_group(self, sub, name=None) -> "Group":
        """Re-index a subgroup (given as a list of elements) as a standalone group."""
        sub = sorted(set(int(x) for x in sub))
        if sub[0] != 0:
            raise NotAGroup("subgroup must contain the identity")
        pos = {x: k for k, x in enumerate(sub)}
        tab = [[pos[self.mul(a, b)] for b in sub] for a in sub]
        return Group(tab, labels=[self.labels[x] for x in sub], name=name or f"sub({self.name})")

    def words(self) -> list[list[tuple[str, int]]]:
        """A word in the named generators for every element (BFS, shortest first)."""
        out: list = [None] * self.order
        out[0] = []
        frontier = [0]
        names = list(self.generators)
        while frontier:
            nxt = []
            for x in frontier:
                for nm in names:
                    y = self.mul(x, self.generators[nm])
                    if out[y] is None:
                        out[y] = out[x] + [(nm, 1)]
                        nxt.append(y)
            frontier = nxt
        if any(w is None for w in out):
            raise NotAGroup("named generators do not generate the group")
        return out


@dataclass(frozen=True)
class GroupElement:
    group: Group = field(compare=False)
    index: int

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.group is other.group and self.index == other.index

    def __hash__(self):
        return hash((id(self.group), self.index))

    @property
    def label(self):
        return self.group.labels[self.index]

    def __mul__(self, other):
        return multiply(self, other)

    def __pow__(self, k: int):
        return GroupElement(self.group, self.group.power(self.index, k))

    def inverse(self):
        return GroupElement(self.group, self.group.inv(self.index))

    def __repr__(self):
        return f"<{self.group.name}:{self.label}>"


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.group is not h.group:
        raise MixedGroups("elements belong to different groups")
    return GroupElement(g.group, g.group.mul(g.index, h.index))


def element_order(g: GroupElement) -> int:
    return g.group.element_order(g.index)


# ----------------------------------------------------------------------------
# construction

def _check_axioms(table: np.ndarray) -> None:
    n = len(table)
    if table.shape != (n, n) or n == 0:
        raise NotAGroup("table must be a nonempty square array")
    if table.min() < 0 or table.max() >= n:
        raise NotAGroup("table entries out of range")
    ar = np.arange(n)
    if not (np.array_equal(table[0], ar) and np.array_equal(table[:, 0], ar)):
        raise NotAGroup("element 0 is not a two-sided identity")
    for row in table:
        if len(set(row.tolist())) != n:
            raise NotAGroup("some row is not a permutation (no inverses / cancellation)")
    if n <= 128:
        lhs = table[table[:, :, None], ar[None, None, :]]  # (ab)c
        rhs = table[ar[:, None, None], table[None, :, :]]  # a(bc)
        if not np.array_equal(lhs, rhs):
            raise NotAGroup("multiplication is not associative")
    else:
        rng = np.random.default_rng(0)
        a, b, c = rng.integers(0, n, size=(3, 20000))
        if not np.array_equal(table[table[a, b], c], table[a, table[b, c]]):
            raise NotAGroup("multiplication is not associative")


def _build_family(fid: int, n: int) -> Group:
    fam = family_data(fid, n)
    labels = [(a, b, c) for a in range(fam.s) for b in range(fam.T) for c in range(fam.L)]
    index = {lab: i for i, lab in enumerate(labels)}
    N = len(labels)
    if N > max_order():
        raise TooLarge(f"|G{fid}| = {N} exceeds the scan guard")
    col = _Collector(fam)
    right = {g: np.array([index[col.letter(lab, g)] for lab in labels]) for g in "stl"}
    table = np.zeros((N, N), dtype=np.int64)
    ar = np.arange(N)
    pa = ar.copy()
    for a in range(fam.s):
        pb = pa.copy()
        for b in range(fam.T):
            pc = pb.copy()
            for c in range(fam.L):
                table[:, index[(a, b, c)]] = pc
                pc = right["l"][pc]
            pb = right["t"][pb]
        pa = right["s"][pa]
    gens = {"s": index[(1 % fam.s, 0, 0)]}
    gens["t"] = index[col.letter((0, 0, 0), "t")]
    if fam.L > 1:
        gens["l"] = index[(0, 0, 1)]
    grp = Group(table, labels=labels, generators=gens, name=f"G{fid}(n={n})",
                spec=GroupSpec.Family(fid, n))
    grp.family = fam
    return grp


def _build_perm(gens, degree) -> Group:
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    for g in gens:
        if sorted(g) != list(ident):
            raise NotAGroup(f"{g} is not a permutation of 0..{degree - 1}")
    elems = [ident]
    seen = {ident: 0}
    i = 0
    while i < len(elems):
        x = elems[i]
        for g in gens:
            y = tuple(g[x[k]] for k in range(degree))  # apply x then g
            if y not in seen:
                seen[y] = len(elems)
                elems.append(y)
                if len(elems) > max_order():
                    raise TooLarge("permutation group exceeds the scan guard")
        i += 1
    # product p*q = "apply q then p" so that composition matches left actions
    table = [[seen[tuple(p[q[k]] for k in range(degree))] for q in elems] for p in elems]
    names = {f"g{k}": seen[g] for k, g in enumerate(gens)}
    return Group(table, labels=elems, generators=names, name=f"Perm(deg={degree})")


def build_group(spec: GroupSpec) -> Group:
    if spec.kind == "family":
        grp = _build_family(spec.family, spec.n)
        certify_family(grp)
        return grp
    if spec.kind == "cayley":
        table = np.asarray(spec.table, dtype=np.int64)
        if table.ndim != 2:
            raise NotAGroup("table must be two-dimensional")
        if len(table) > max_order():
            raise TooLarge("table exceeds the scan guard")
        _check_axioms(table)
        grp = Group(table, name=f"Cayley({len(table)})", spec=spec)
        grp.generators = {f"g{k}": g for k, g in enumerate(minimal_generators(grp))}
        return grp
    if spec.kind == "perm":
        grp = _build_perm(spec.generators, spec.degree)
        grp.spec = spec
        return grp
    raise InvalidParameter(spec.kind)


def certify_family(grp: Group) -> None:
    """Every printed relation holds, |G| = 2^n and the table is a group."""
    fam = grp.family
    n = grp.spec.n
    if grp.order != 2 ** n:
        raise NotAGroup(f"{grp.name}: order {grp.order} != 2^{n}")
    for rel in fam.relations:
        lhs, rhs = parse_relation(rel)
        if grp.eval_word(lhs) != grp.eval_word(rhs):
            raise NotAGroup(f"{grp.name}: relation {rel} fails")
    if grp.order <= 128:
        _check_axioms(grp.table)
    if len(grp.subgroup(grp.generators.values())) != grp.order:
        raise NotAGroup(f"{grp.name}: generators do not generate")


def minimal_generators(grp: Group) -> list[int]:
    """Greedy generating set, scanning elements in index order."""
    gens: list[int] = []
    sub = {0}
    for i in range(grp.order):
        if i not in sub:
            gens.append(i)
            sub = set(grp.subgroup(gens))
            if len(sub) == grp.order:
                break
    return gens


# ----------------------------------------------------------------------------
# concrete small groups used as fixtures and by the order-4n constructions

def cyclic_group(n: int) -> Group:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return Group(table, name=f"C{n}", generators={"s": 1 % n} if n > 1 else {})


def metacyclic_group(m: int, k: int, r: int, name=None) -> Group:
    """C_m x| C_k with the generator of C_k acting by x -> x^r.

    Elements are pairs (a, b) = x^a y^b with y^-1 x y = x^r... concretely
    (a1, b1)(a2, b2) = (a1 + r^{-b1}... ) is avoided: we use y x y^-1 = x^r,
    so (a1, b1)(a2, b2) = (a1 + r^b1 * a2, b1 + b2).
    """
    if pow(r, k, m) != 1 % m:
        raise InvalidParameter("r^k must be 1 mod m")
    labels = [(a, b) for a in range(m) for b in range(k)]
    index = {lab: i for i, lab in enumerate(labels)}
    table = [[index[((a1 + pow(r, b1, m) * a2) % m, (b1 + b2) % k)] for (a2, b2) in labels]
             for (a1, b1) in labels]
    gens = {}
    if m > 1:
        gens["x"] = index[(1, 0)]
    if k > 1:
        gens["y"] = index[(0, 1 % k)]
    return Group(table, labels=labels, generators=gens, name=name or f"C{m}:C{k}")


def direct_product(A: Group, B: Group, name=None) -> Group:
    labels = [(a, b) for a in range(A.order) for b in range(B.order)]
    index = {lab: i for i, lab in enumerate(labels)}
    table = [[index[(A.mul(a1, a2), B.mul(b1, b2))] for (a2, b2) in labels] for (a1, b1) in labels]
    gens = {f"a_{k}": index[(v, 0)] for k, v in A.generators.items()}
    gens.update({f"b_{k}": index[(0, v)] for k, v in B.generators.items()})
    return Group(table, labels=labels, generators=gens, name=name or f"{A.name}x{B.name}")


def dihedral_group(n: int) -> Group:
    """Dihedral group of order 2n."""
    return metacyclic_group(n, 2, n - 1, name=f"D{2 * n}")


def quaternion_group() -> Group:
    # Q8 from the quaternion units
    units = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
    base = {("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
            ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j"}

    def mul(x, y):
        sx = x.startswith("-")
        sy = y.startswith("-")
        x, y = x.lstrip("-"), y.lstrip("-")
        sign = sx ^ sy
        if x == "1":
            r = y
        elif y == "1":
            r = x
        elif x == y:
            r, sign = "1", not sign
        else:
            r = base[(x, y)]
            if r.startswith("-"):
                r, sign = r[1:], not sign
        return ("-" if sign else "") + r

    table = [[units.index(mul(x, y)) for y in units] for x in units]
    return Group(table, labels=units, generators={"i": 1, "j": 2}, name="Q8")


# ----------------------------------------------------------------------------
# structural profile

@dataclass(frozen=True)
class StructuralProfile:
    order: int
    exponent: int
    center_order: int
    sylow2_type: str
    max_cyclic_index: int
    is_cm_rtimes_c8: bool
    m: int | None = None

    def to_json(self):
        return dict(self.__dict__)


def sylow2_subgroup(grp: Group) -> tuple[int, ...]:
    """A Sylow 2-subgroup grown greedily over 2-elements in index order."""
    n = grp.order
    target = n & -n
    two_elems = [i for i in range(n) if grp.element_order(i) & (grp.element_order(i) - 1) == 0]
    P: tuple[int, ...] = (0,)
    changed = True
    while len(P) < target and changed:
        changed = False
        for g in two_elems:
            if g in P:
                continue
            Q = grp.subgroup(list(P) + [g])
            if len(Q) & (len(Q) - 1) == 0:
                P = Q
                changed = True
                if len(P) == target:
                    break
    # a proper 2-subgroup always sits inside a larger one, so greedy cannot stall
    assert len(P) == target
    return P


def _classify_sylow(grp: Group, P) -> str:
    sub = grp.as_group(P)
    orders = sorted(int(o) for o in sub.element_orders)
    if sub.order == 8 and sub.is_abelian():
        if max(orders) == 8:
            return "C8"
        if max(orders) == 4:
            return "C4xC2"
    kind = "abelian" if sub.is_abelian() else "nonabelian"
    return f"other(order {sub.order}, {kind}, exponent {sub.exponent})"


def cm_rtimes_c8(grp: Group) -> int | None:
    """m if |G| = 8m (m odd), G has a normal cyclic subgroup of order m and an element of order 8."""
    n = grp.order
    if n % 8 or (n // 8) % 2 == 0:
        return None
    m = n // 8
    orders = grp.element_orders
    if not (orders == 8).any():
        return None
    for i in range(n):
        if orders[i] == m:
            C = grp.subgroup([i])
            if grp.is_normal(C):
                return m
    return None


def structural_profile(grp: Group) -> StructuralProfile:
    if grp.order > max_order():
        raise TooLarge(f"|G| = {grp.order} exceeds the scan guard")
    P = sylow2_subgroup(grp)
    m = cm_rtimes_c8(grp)
    return StructuralProfile(
        order=grp.order,
        exponent=grp.exponent,
        center_order=len(grp.center),
        sylow2_type=_classify_sylow(grp, P),
        max_cyclic_index=grp.order // int(grp.element_orders.max()),
        is_cm_rtimes_c8=m is not None,
        m=m,
    )


def has_cyclic_subgroup_of_index(grp: Group, k: int) -> bool:
    return grp.order % k == 0 and bool((grp.element_orders == grp.order // k).any())
