"""Sparse Laurent polynomials and their quotients over Z[zeta_M]."""

from __future__ import annotations

from typing import Mapping

from ..errors import DimMismatch, ZeroDenominator
from .cyclotomic import CyclotomicInt


class LaurentPoly:
    """Mapping exponent vector -> nonzero CyclotomicInt coefficient."""

    __slots__ = ("d", "terms")

    def __init__(self, d: int, terms: Mapping | None = None):
        self.d = d
        clean = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != d:
                raise DimMismatch(f"exponent vector {exps} has length != {d}")
            if isinstance(c, int):
                c = CyclotomicInt.from_int(c)
            if exps in clean:
                c = clean[exps] + c
            if c.is_zero():
                clean.pop(exps, None)
            else:
                clean[exps] = c
        self.terms = clean

    @classmethod
    def const(cls, d: int, c) -> "LaurentPoly":
        return cls(d, {(0,) * d: c})

    @classmethod
    def monomial(cls, exps, coeff=1) -> "LaurentPoly":
        exps = tuple(exps)
        return cls(len(exps), {exps: coeff})

    @classmethod
    def var(cls, d: int, i: int) -> "LaurentPoly":
        e = [0] * d
        e[i] = 1
        return cls.monomial(e)

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.d != other.d:
            raise DimMismatch(f"{self.d} != {other.d}")

    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.d, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return LaurentPoly(self.d, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.d, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.d, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly.const(self.d, other)
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out[e] + c1 * c2 if e in out else c1 * c2
        return LaurentPoly(self.d, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials live in LaurentFraction")
        out = LaurentPoly.const(self.d, 1)
        for _ in range(k):
            out = out * self
        return out

    def as_monomial(self):
        """(exps, coeff) if this is a single term, else None."""
        if len(self.terms) != 1:
            return None
        (e, c), = self.terms.items()
        return e, c

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.d == other.d and (self - other).is_zero()

    def __hash__(self):
        return hash((self.d, frozenset(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items()):
            mono = "*".join(f"x{i}^{k}" if k != 1 else f"x{i}" for i, k in enumerate(e) if k)
            parts.append(f"({c})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def to_json(self):
        return [{"exps": list(e), "coeff": c.to_json()} for e, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, d: int, obj):
        return cls(d, {tuple(t["exps"]): CyclotomicInt.from_json(t["coeff"]) for t in obj})


class LaurentFraction:
    """numerator / denominator; equality by cross-multiplication, no gcds."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None):
        if den is None:
            den = LaurentPoly.const(num.d, 1)
        if den.is_zero():
            raise ZeroDenominator("denominator is identically zero")
        if num.d != den.d:
            raise DimMismatch(f"{num.d} != {den.d}")
        # a monomial denominator is folded into the numerator
        mono = den.as_monomial()
        if mono is not None and mono[1].root_exponent() is not None:
            e, c = mono
            inv = LaurentPoly.monomial([-x for x in e], c ** -1)
            num, den = num * inv, LaurentPoly.const(num.d, 1)
        self.num = num
        self.den = den

    @property
    def d(self) -> int:
        return self.num.d

    @classmethod
    def var(cls, d: int, i: int) -> "LaurentFraction":
        return cls(LaurentPoly.var(d, i))

    @classmethod
    def const(cls, d: int, c) -> "LaurentFraction":
        return cls(LaurentPoly.const(d, c))

    @classmethod
    def monomial(cls, exps, coeff=1) -> "LaurentFraction":
        return cls(LaurentPoly.monomial(exps, coeff))

    def _lift(self, other):
        if isinstance(other, LaurentFraction):
            return other
        if isinstance(other, LaurentPoly):
            return LaurentFraction(other)
        return LaurentFraction.const(self.d, other)

    def __add__(self, other):
        o = self._lift(other)
        return LaurentFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return LaurentFraction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return LaurentFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDenominator("division by zero")
        return LaurentFraction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return LaurentFraction.const(self.d, 1) / (self ** -k)
        return LaurentFraction(self.num ** k, self.den ** k)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def as_monomial(self):
        """(exps, coeff) when the fraction is a single Laurent monomial."""
        if self.den.as_monomial() is None:
            return None
        return self.num.as_monomial() if self.den.terms == {(0,) * self.d: CyclotomicInt.from_int(1)} else None

    def __eq__(self, other):
        if not isinstance(other, LaurentFraction):
            return NotImplemented
        return fraction_equal(self, other)

    def __hash__(self):
        raise TypeError("LaurentFraction is unhashable (no canonical form)")

    def __repr__(self):
        if self.den.as_monomial() and self.den.as_monomial()[0] == (0,) * self.d:
            return repr(self.num)
        return f"({self.num}) / ({self.den})"

    def to_json(self):
        return {"d": self.d, "num": self.num.to_json(), "den": self.den.to_json()}


def fraction_equal(a: LaurentFraction, b: LaurentFraction) -> bool:
    if a.d != b.d:
        raise DimMismatch(f"{a.d} != {b.d}")
    return a.num * b.den == b.num * a.den


def _eval_poly(p: LaurentPoly, images, d_out: int) -> LaurentFraction:
    total = LaurentFraction.const(d_out, 0)
    # cache powers: many terms share variables
    cache: dict = {}
    for exps, c in p.terms.items():
        term = LaurentFraction.const(d_out, c)
        for i, k in enumerate(exps):
            if k:
                key = (i, k)
                if key not in cache:
                    cache[key] = images[i] ** k
                term = term * cache[key]
        total = total + term
    return total


def fraction_substitute(f: LaurentFraction, mapping: Mapping[int, LaurentFraction]) -> LaurentFraction:
    """Simultaneously replace variable i by mapping[i].

    Variables missing from ``mapping`` are left in place only if the images
    live in the same number of variables; otherwise every occurring variable
    must be mapped.
    """
    some = next(iter(mapping.values()), None)
    d_out = some.d if some is not None else f.d
    images = []
    for i in range(f.d):
        if i in mapping:
            images.append(mapping[i])
        else:
            used = any(e[i] for e in f.num.terms) or any(e[i] for e in f.den.terms)
            if used and d_out != f.d:
                raise KeyError(f"variable {i} occurs but is not mapped")
            images.append(LaurentFraction.var(d_out, i) if d_out == f.d else LaurentFraction.const(d_out, 1))
    num = _eval_poly(f.num, images, d_out)
    den = _eval_poly(f.den, images, d_out)
    if den.is_zero():
        raise ZeroDenominator("substitution makes the denominator vanish")
    return num / den
