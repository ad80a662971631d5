"""Case-script engine: replay a construction step by step and compare against
the printed tables.

Each printed table is data (strings such as ``"zeta^-2 u1 u2 u3"`` or
``"i/(u1 u2 u3)"``); the derivation never reads them.  Known misprints are
declared as errata next to the table and reported as divergences.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from math import gcd, lcm

import numpy as np

from ..algebra import lattice
from ..algebra.laurent import LaurentFraction, LaurentPoly, fraction_equal, fraction_substitute
from ..errors import NoetherError, ShapeViolation
from ..groups import Group
from ..monomial import ActionAssignment, MonomialAutomorphism, verify_homomorphism
from ..rationality import (RATIONAL, FieldDescriptor, TraceEntry, Verdict, classify_monomial_action,
                           match_theorem24)
from ..reduction import (InducedSubspace, RegularModule, change_basis, check_faithful, eigenvector,
                         eliminate_fibered_variable, induce_variables, invariant_lattice_basis,
                         linear_split, pattern_sum, reduce_to_injective)

PASS = "pass"
FAIL = "fail"
DIVERGENCE = "divergence"
UNKNOWN_STEP = "unknown"


# ----------------------------------------------------------------------------
# monomial expression parser

_TOK = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class MonomialExpr:
    """c * prod v^e with c a power of zeta_M; parsed from the printed notation."""

    def __init__(self, coef: int, exps: dict, M: int):
        self.M = M
        self.coef = coef % M
        self.exps = {k: v for k, v in exps.items() if v}

    def __mul__(self, other):
        e = dict(self.exps)
        for k, v in other.exps.items():
            e[k] = e.get(k, 0) + v
        return MonomialExpr(self.coef + other.coef, e, self.M)

    def __pow__(self, k: int):
        return MonomialExpr(self.coef * k, {v: e * k for v, e in self.exps.items()}, self.M)

    def inv(self):
        return self ** -1

    def vector(self, names):
        extra = set(self.exps) - set(names)
        if extra:
            raise ValueError(f"unknown variables {sorted(extra)}")
        return [self.exps.get(n, 0) for n in names]


def parse_monomial(text: str, M: int, symbols: dict) -> MonomialExpr:
    """Parse e.g. ``-i/(u1 u2 u3)``, ``zeta^-2 u1 u2 u3``, ``(u1 u2)^4 u5``.

    ``symbols`` maps constant names (zeta, i, eps, ...) to zeta_M exponents.
    A '/' divides by everything to its right.
    """
    toks = []
    for num, name, sym in _TOK.findall(text):
        toks.append(("num", int(num)) if num else ("name", name) if name else ("sym", sym))
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        t = toks[pos]
        pos += 1
        return t

    def unit():
        return MonomialExpr(0, {}, M)

    def atom():
        kind, val = take()
        if kind == "sym" and val == "(":
            e = expr()
            if take() != ("sym", ")"):
                raise ValueError(f"unbalanced parentheses in {text!r}")
            return e
        if kind == "num":
            if val != 1:
                raise ValueError(f"only the constant 1 is allowed, got {val}")
            return unit()
        if kind == "name":
            if val in symbols:
                return MonomialExpr(symbols[val], {}, M)
            return MonomialExpr(0, {val: 1}, M)
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    def factor():
        a = atom()
        if peek() == ("sym", "^"):
            take()
            sign = 1
            if peek() == ("sym", "-"):
                take()
                sign = -1
            kind, val = take()
            if kind != "num":
                raise ValueError(f"bad exponent in {text!r}")
            a = a ** (sign * val)
        return a

    def product():
        out = unit()
        while True:
            kind, val = peek()
            if kind is None or (kind == "sym" and val in ")/"):
                return out
            if kind == "sym" and val == "*":
                take()
                continue
            if kind == "sym" and val == "-":
                take()
                out = out * MonomialExpr(M // 2, {}, M)
                continue
            out = out * factor()

    def expr():
        num = product()
        if peek() == ("sym", "/"):
            take()
            num = num * expr().inv()
        return num

    out = expr()
    if pos != len(toks):
        raise ValueError(f"trailing input in {text!r}")
    return out


def format_monomial(coef: int, M: int, exps, names, symbols=None) -> str:
    coef %= M
    parts = []
    if coef:
        if M % 2 == 0 and coef == M // 2:
            parts.append("-1")
        elif M % 4 == 0 and coef == M // 4:
            parts.append("i")
        elif M % 4 == 0 and coef == 3 * M // 4:
            parts.append("-i")
        else:
            parts.append(f"z{M}^{coef}")
    for nm, e in zip(names, exps):
        if e == 1:
            parts.append(nm)
        elif e:
            parts.append(f"{nm}^{e}")
    return " ".join(parts) or "1"


# ----------------------------------------------------------------------------
# reports

@dataclass
class StepResult:
    name: str
    status: str
    expected_ref: str = ""
    diff: object = None
    detail: dict = field(default_factory=dict)

    def to_json(self):
        out = {"name": self.name, "status": self.status, "expected_ref": self.expected_ref, "diff": self.diff}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class CaseReport:
    case: str
    steps: list = field(default_factory=list)
    verdict: Verdict | None = None
    wall_time: float = 0.0
    entries: int = 0
    error: str | None = None
    expected: str = RATIONAL    # the verdict the construction claims
    extras: dict = field(default_factory=dict)   # derived values such as epsilon

    @property
    def passed(self) -> bool:
        return (self.error is None and all(s.status != FAIL for s in self.steps)
                and self.verdict is not None and self.verdict.status == self.expected)

    @property
    def status(self) -> str:
        return "passed" if self.passed else "failed"

    def failed_steps(self):
        return [s for s in self.steps if s.status == FAIL]

    def step(self, name):
        return next(s for s in self.steps if s.name == name)

    def to_json(self):
        out = {"case": self.case, "status": self.status,
               "steps": [s.to_json() for s in self.steps],
               "verdict": self.verdict.to_json() if self.verdict else None,
               "expected_verdict": self.expected,
               "extras": self.extras,
               "wall_time": round(self.wall_time, 4)}
        if self.error:
            out["error"] = self.error
        return out

    def summary(self) -> str:
        lines = [f"{self.case}: {self.status}"]
        for s in self.steps:
            ref = f" [{s.expected_ref}]" if s.expected_ref else ""
            lines.append(f"  {s.status:10s} {s.name}{ref}")
        if self.verdict:
            lines.append(f"  verdict: {self.verdict.status}")
        if self.error:
            lines.append(f"  error: {self.error}")
        return "\n".join(lines)


class StepFailed(Exception):
    """Raised inside a script to abort after a failed step."""


# ----------------------------------------------------------------------------
# script state

class Script:
    """Mutable replay state for one case run.

    ``mutation`` (optional) is the index of a printed table entry whose
    coefficient is shifted by one power of zeta_M before comparison.
    """

    def __init__(self, case_id: str, group: Group, field: FieldDescriptor, conductor: int,
                 symbols: dict, mutation: int | None = None):
        self.report = CaseReport(case_id)
        self.group = group
        self.field = field
        self.M = conductor
        self.module = RegularModule(group, conductor) if conductor >= 4 and not conductor & (conductor - 1) else None
        self.symbols = dict(symbols)
        self.mutation = mutation
        self.counter = 0
        self.vectors: dict = {}
        self.subspace: InducedSubspace | None = None
        self.history: list = []
        self._asg: ActionAssignment | None = None
        self.extras: dict = {}
        self._t0 = time.perf_counter()

    @property
    def asg(self) -> ActionAssignment | None:
        return self._asg

    @asg.setter
    def asg(self, value):
        self._asg = value
        if value is not None:
            self.history.append(value)

    # bookkeeping ---------------------------------------------------------
    def record(self, name, status, ref="", diff=None, **detail) -> StepResult:
        st = StepResult(name, status, ref, diff, detail)
        self.report.steps.append(st)
        return st

    def fail(self, name, ref="", diff=None, **detail):
        self.record(name, FAIL, ref, diff, **detail)
        raise StepFailed(name)

    def finish(self, verdict: Verdict | None):
        # every intermediate assignment must still respect the relations of G
        if self.history:
            bad = []
            for k, a in enumerate(self.history):
                if a.relations:
                    bad += [(k, r) for r in verify_homomorphism(a).failed()]
            self.record("relations (all assignments)", FAIL if bad else PASS, "", bad or None,
                        assignments=len(self.history))
        self.report.verdict = verdict
        self.report.extras = self.extras
        self.report.wall_time = time.perf_counter() - self._t0
        self.report.entries = self.counter
        return self.report

    # vectors ---------------------------------------------------------------
    def eigen(self, name, gens, character, terms=None, ref="", erratum=None):
        """Build an eigenvector; ``erratum`` = (note, corrected gens, corrected character)."""
        try:
            v = eigenvector(self.module, gens, character, terms)
            if erratum is not None:
                self.fail(f"eigenvector {name}", ref, {"erratum": erratum[0], "printed": "holds"})
            self.vectors[name] = v
            self.record(f"eigenvector {name}", PASS, ref, None, support=int((v != 0).any(axis=1).sum()))
            return v
        except NoetherError as exc:
            if erratum is None:
                self.fail(f"eigenvector {name}", ref, str(exc))
            note, g2, c2 = erratum
            v = eigenvector(self.module, g2, c2) if g2 is not None else None
            if v is not None:
                self.vectors[name] = v
            self.record(f"eigenvector {name}", DIVERGENCE, ref,
                        {"printed": str(exc), "erratum": note})
            return v

    def induce(self, spec, ref="", name="induce variables"):
        """spec: list of (variable name, word, vector name)."""
        named = []
        for vname, word, seed in spec:
            v = self.vectors[seed]
            named.append((vname, self.module.act_word(word, v) if word else v))
        try:
            self.subspace = induce_variables(self.module, named)
        except NoetherError as exc:
            self.fail(name, ref, str(exc))
        self.named = dict(named)
        self.asg = self.subspace.as_assignment()
        self.record(name, PASS, ref, None, names=list(self.asg.names))
        self.relations("relations on induced variables")

    def combine(self, defs, keep=(), ref=""):
        """Replace the variables by linear combinations ``defs = [(name, {var: coeff})]``."""
        named = [(k, self.named[k]) for k in keep]
        for nm, combo in defs:
            v = self.module.zero()
            for var, c in combo.items():
                v = v + c * self.named[var]
            named.append((nm, v))
        self.vectors.update(dict(named))
        self.induce([(nm, "", nm) for nm, _ in named], ref,
                    name="linear change " + ", ".join(n for n, _ in defs))

    def faithful(self, expect=True, ref="", name="faithful"):
        ok = check_faithful(self.subspace)
        if ok != expect:
            self.fail(name, ref, {"faithful": ok, "expected": expect})
        self.record(name, PASS, ref, None, faithful=ok)

    def relations(self, name="relations"):
        rep = verify_homomorphism(self.asg)
        if not rep.passed:
            self.fail(name, "", rep.failed())
        self.record(name, PASS, "", None, checked=len(rep.checks))

    # tables ----------------------------------------------------------------
    def expected_entry(self, text):
        e = parse_monomial(text, self.M, self.symbols)
        if self.mutation is not None and self.counter == self.mutation:
            e = MonomialExpr(e.coef + 1, e.exps, e.M)
        self.counter += 1
        return e

    def table(self, expected: dict, ref="", errata=None, name=None):
        """Compare every listed image against the current assignment.

        ``errata`` maps (gen, var) -> (printed text, note); the printed text is
        checked to differ from the derivation while the table entry carries the
        corrected reading.
        """
        name = name or f"table {ref}".strip()
        asg = self.asg
        M = lcm(self.M, asg.m)
        diffs = []
        notes = []
        for gname, row in expected.items():
            a = asg.images[gname]
            for var, text in row.items():
                j = asg.names.index(var)
                exp = self.expected_entry(text)
                actual_vec = list(a.column(j))
                actual_c = a.c[j] * (M // asg.m) % M
                want_vec = exp.vector(asg.names)
                want_c = exp.coef * (M // self.M) % M
                if actual_vec != want_vec or actual_c != want_c:
                    diffs.append({"gen": gname, "var": var, "expected": text,
                                  "actual": format_monomial(actual_c, M, actual_vec, asg.names)})
                if errata and (gname, var) in errata:
                    printed, note = errata[(gname, var)]
                    try:
                        pe = parse_monomial(printed, self.M, self.symbols)
                        same = pe.vector(asg.names) == actual_vec and pe.coef * (M // self.M) % M == actual_c
                    except ValueError:
                        same = False
                    if same:
                        diffs.append({"gen": gname, "var": var, "erratum": note, "printed": printed,
                                      "problem": "printed entry already matches"})
                    notes.append({"gen": gname, "var": var, "printed": printed, "derived": text, "note": note})
        if diffs:
            self.fail(name, ref, diffs)
        self.record(name, DIVERGENCE if notes else PASS, ref, notes or None)

    def show(self):
        """Current table in the printed notation (for script authoring)."""
        asg = self.asg
        out = {}
        for g, a in asg.images.items():
            out[g] = {nm: format_monomial(a.c[j], asg.m, a.column(j), asg.names)
                      for j, nm in enumerate(asg.names)}
        return out

    # changes of variables ----------------------------------------------------
    def change(self, defs, ref="", invariants_of=None, name=None):
        """New monomial variables ``defs = [(name, formula), ...]``.

        Without ``invariants_of`` the change must be unimodular; with a list of
        words the new variables must span exactly the invariant lattice of the
        subgroup generated by them (which must act by scalars).
        """
        asg = self.asg
        name = name or "change of variables " + ", ".join(n for n, _ in defs)
        cols = []
        for nm, text in defs:
            e = parse_monomial(text, self.M, {})
            if e.coef:
                self.fail(name, ref, f"{nm} has a scalar factor")
            cols.append(e.vector(asg.names))
        B = lattice.transpose(cols)
        det = lattice.det(B)
        detail = {"det": det}
        if invariants_of is None:
            if abs(det) != 1:
                self.fail(name, ref, {"det": det, "problem": "not unimodular"})
        else:
            H = [asg.word(w) for w in invariants_of]
            try:
                L = invariant_lattice_basis(H, asg.d, asg.m)
            except NoetherError as exc:
                self.fail(name, ref, str(exc))
            want, _ = lattice.hermite_normal_form(lattice.transpose(L))
            got, _ = lattice.hermite_normal_form(cols)
            if [r for r in want if any(r)] != [r for r in got if any(r)]:
                self.fail(name, ref, {"problem": "not the invariant lattice", "invariant_basis": want,
                                      "given": cols})
            detail["invariants_of"] = list(invariants_of)
        try:
            new = change_basis(asg, B, names=[n for n, _ in defs])
        except NoetherError as exc:
            self.fail(name, ref, str(exc))
        # replay on one generator with rational functions (independent check)
        g0 = next(iter(asg.images))
        self._replay_change(asg, new, g0, cols)
        self.asg = new
        self.record(name, PASS, ref, None, **detail)

    def _replay_change(self, old, new, gname, cols):
        """g(new_j) computed by substitution in the old variables must equal the
        image recorded in the new coordinates, expressed back in old variables."""
        d = old.d
        a_old = old.images[gname]
        a_new = new.images[gname]
        m = old.m
        for j, col in enumerate(cols):
            # exponent vector of g(new_j) in old variables, with coefficient
            img_vec = [0] * d
            coef = 0
            for i, e in enumerate(col):
                if e:
                    img_vec = [x + e * y for x, y in zip(img_vec, a_old.column(i))]
                    coef += e * a_old.c[i]
            back = [0] * d
            for i, e in enumerate(a_new.column(j)):
                back = [x + e * y for x, y in zip(back, cols[i])]
            if back != img_vec or (coef - a_new.c[j] * (m // new.m)) % m:
                raise ShapeViolation("change-of-variables replay disagrees")

    # eliminations ------------------------------------------------------------
    def drop(self, var, ref="Theorem 2.3"):
        try:
            st = eliminate_fibered_variable(self.asg, var)
        except NoetherError as exc:
            self.fail(f"drop {var}", ref, str(exc))
        self.asg = st.after
        self.record(f"drop {var}", PASS, ref, None)

    def split(self, variables, ref="Theorem 2.2", expect_ok=True, note=None):
        name = "split " + ", ".join(variables)
        try:
            st = linear_split(self.asg, variables, self.group.order)
        except NoetherError as exc:
            if expect_ok:
                self.fail(name, ref, str(exc))
            self.record(name, DIVERGENCE, ref, {"printed": "hypothesis holds", "derived": str(exc),
                                                "erratum": note})
            return False
        if not expect_ok:
            self.fail(name, ref, {"erratum": note, "problem": "hypothesis actually holds"})
        self.asg = st.after
        self.record(name, PASS, ref, None)
        return True

    def mobius(self, var, new_name, signs: dict, ref="Theorem 2.3"):
        """w = (1 - v)/(1 + v) for a variable with v -> v^{+-1}; check g(w) = signs[g] w and drop it."""
        asg = self.asg
        j = asg.names.index(var)
        d = asg.d
        name = f"mobius {new_name} = (1-{var})/(1+{var})"
        v = LaurentFraction.var(d, j)
        one = LaurentFraction.const(d, 1)
        w = (one - v) / (one + v)
        for gname, a in asg.images.items():
            col = a.column(j)
            if a.c[j] or any(col[i] for i in range(d) if i != j) or abs(col[j]) != 1:
                self.fail(name, ref, f"{gname}({var}) is not {var}^(+-1)")
            if any(a.A[j][k] for k in range(d) if k != j):
                self.fail(name, ref, f"{gname} mixes {var} into other images")
            gw = fraction_substitute(w, {j: LaurentFraction.monomial(list(col), 1)})
            s = signs.get(gname, 1)
            if not fraction_equal(gw, w * LaurentFraction.const(d, s)):
                self.fail(name, ref, {"gen": gname, "expected_sign": s})
        keep = [k for k in range(d) if k != j]
        from ..reduction import _restrict
        self.asg = _restrict(asg, keep)
        self.record(name, PASS, ref, None)

    def kernel_reduce(self, ref="Theorem 2.7 proof ([KPr, Lemma 2.8])", max_steps=3):
        cur, steps = reduce_to_injective(self.asg)
        if len(steps) > max_steps:
            self.fail("scalar-kernel reduction", ref, {"steps": len(steps)})
        self.asg = cur
        self.record("scalar-kernel reduction", PASS, ref, None, steps=len(steps),
                    kernels=[s.detail["kernel_size"] for s in steps])
        return steps

    # terminal rules ------------------------------------------------------------
    def rule(self, name) -> Verdict:
        asg = self.asg
        trace = []
        ok = False
        hyp = {"d": asg.d if asg is not None else 0}
        if name == "Theorem 2.4":
            m = match_theorem24(asg)
            ok = m is not None
            hyp.update(m or {})
        elif name == "Theorem 2.5":
            ok = asg.d == 2
        elif name == "Theorem 2.7":
            ok = asg.d == 3 and self.field.sqrt_minus_one
        elif name == "[HK2]":
            ok = asg.d == 3 and all(not any(a.c) for a in asg.images.values())
        elif name == "Theorem 4.4":
            ok = (asg.d == 4 and self.field.sqrt_minus_one
                  and all(sorted(map(abs, sum(a.A, ()))).count(1) == 4 and all(x >= 0 for x in sum(a.A, ()))
                          for a in asg.images.values()))
        elif name == "classify":
            v = classify_monomial_action(asg, self.field)
            ok = v.status == RATIONAL
            trace = v.trace
        else:
            raise ValueError(f"unknown rule {name}")
        if not ok:
            self.record(f"rule {name}", FAIL, name, hyp)
            return Verdict("Unknown", [TraceEntry(name, hyp, "did not fire")])
        self.record(f"rule {name}", PASS, name, None, **hyp)
        return Verdict(RATIONAL, trace + [TraceEntry(name, hyp, RATIONAL)])
