"""Exact roots of unity.

``CyclotomicInt`` is a dense element of Z[zeta_M] for M a power of two,
stored in the basis 1, zeta, ..., zeta^(M/2 - 1) of Z[x]/(x^(M/2) + 1).
``RootExponent`` is the sparse model zeta_m^c used for arbitrary m.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from ..errors import ConductorMismatch, InvalidParameter


def _is_pow2(m: int) -> bool:
    return m >= 1 and m & (m - 1) == 0


def _width(conductor: int) -> int:
    return conductor // 2 if conductor >= 4 else 1


class CyclotomicInt:
    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        if not _is_pow2(conductor):
            raise InvalidParameter(f"conductor must be a power of 2, got {conductor}")
        coeffs = tuple(int(c) for c in coeffs)
        w = _width(conductor)
        if len(coeffs) > w:
            # fold higher powers using zeta^w = -1 (or zeta = -1 when M = 2)
            folded = [0] * w
            for k, c in enumerate(coeffs):
                if conductor >= 4:
                    q, r = divmod(k, w)
                else:
                    q, r = (k if conductor == 2 else 0), 0
                folded[r] += -c if q % 2 else c
            coeffs = tuple(folded)
        elif len(coeffs) < w:
            coeffs = coeffs + (0,) * (w - len(coeffs))
        self.conductor = conductor
        self.coeffs = coeffs

    # constructors -----------------------------------------------------
    @classmethod
    def zero(cls, conductor: int = 1) -> "CyclotomicInt":
        return cls(conductor, ())

    @classmethod
    def from_int(cls, value: int, conductor: int = 1) -> "CyclotomicInt":
        return cls(conductor, (value,))

    @classmethod
    def zeta(cls, conductor: int, k: int = 1) -> "CyclotomicInt":
        """zeta_M^k."""
        k %= conductor
        if conductor <= 2:
            return cls(conductor, (-1 if k else 1,) if conductor == 2 else (1,))
        w = conductor // 2
        coeffs = [0] * w
        if k < w:
            coeffs[k] = 1
        else:
            coeffs[k - w] = -1
        return cls(conductor, coeffs)

    # conductor handling -----------------------------------------------
    def up(self, conductor: int) -> "CyclotomicInt":
        if conductor == self.conductor:
            return self
        if not _is_pow2(conductor) or conductor % self.conductor:
            raise ConductorMismatch(f"cannot embed conductor {self.conductor} into {conductor}")
        if self.conductor <= 2:
            return CyclotomicInt(conductor, (self.coeffs[0],))
        step = conductor // self.conductor
        out = [0] * (conductor // 2)
        for k, c in enumerate(self.coeffs):
            out[k * step] = c
        return CyclotomicInt(conductor, out)

    def minimal(self) -> "CyclotomicInt":
        """Same element at the smallest conductor that holds it."""
        x = self
        while x.conductor >= 4:
            odd = x.coeffs[1::2]
            if any(odd):
                break
            half = x.conductor // 2
            x = CyclotomicInt(half, x.coeffs[::2] if half >= 4 else x.coeffs[:1])
        return x

    @staticmethod
    def common(a: "CyclotomicInt", b: "CyclotomicInt"):
        m = max(a.conductor, b.conductor)
        return a.up(m), b.up(m)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(other, self.conductor)
        a, b = CyclotomicInt.common(self, other)
        return CyclotomicInt(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicInt(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other if isinstance(other, CyclotomicInt) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return CyclotomicInt(self.conductor, [other * c for c in self.coeffs])
        a, b = CyclotomicInt.common(self, other)
        return cyclo_mul(a, b)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            k = self.root_exponent()
            if k is None:
                raise ValueError("only roots of unity are invertible here")
            return CyclotomicInt.zeta(self.conductor, -k * -e)
        out = CyclotomicInt.from_int(1, self.conductor)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def root_exponent(self):
        """k with self == zeta_M^k, or None if self is not a root of unity."""
        nz = [(i, c) for i, c in enumerate(self.coeffs) if c]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            return None
        i, c = nz[0]
        if self.conductor <= 2:
            return 0 if c == 1 else (1 if self.conductor == 2 else None)
        return i if c == 1 else i + self.conductor // 2

    def __eq__(self, other):
        if isinstance(other, int):
            other = CyclotomicInt.from_int(other)
        if not isinstance(other, CyclotomicInt):
            return NotImplemented
        a, b = CyclotomicInt.common(self, other)
        return a.coeffs == b.coeffs

    def __hash__(self):
        m = self.minimal()
        return hash((m.conductor, m.coeffs))

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "1" if k == 0 else (f"z{self.conductor}" if k == 1 else f"z{self.conductor}^{k}")
            terms.append(f"{c}*{mono}" if mono != "1" else str(c))
        return " + ".join(terms) if terms else "0"

    def to_json(self):
        return {"M": self.conductor, "c": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["M"]), obj["c"])


def cyclo_mul(a: CyclotomicInt, b: CyclotomicInt) -> CyclotomicInt:
    """Product in Z[zeta_M]; both operands must share the conductor."""
    if a.conductor != b.conductor:
        raise ConductorMismatch(f"{a.conductor} != {b.conductor}")
    w = len(a.coeffs)
    if a.conductor <= 2:
        return CyclotomicInt(a.conductor, (a.coeffs[0] * b.coeffs[0],))
    out = [0] * w
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            k = i + j
            if k >= w:
                out[k - w] -= x * y
            else:
                out[k] += x * y
    return CyclotomicInt(a.conductor, out)


@dataclass(frozen=True)
class RootExponent:
    """The root of unity zeta_modulus^exponent, kept reduced."""

    modulus: int
    exponent: int = 0

    def __post_init__(self):
        if self.modulus < 1:
            raise InvalidParameter("modulus must be positive")
        object.__setattr__(self, "exponent", self.exponent % self.modulus)

    def __mul__(self, other: "RootExponent") -> "RootExponent":
        m = lcm(self.modulus, other.modulus)
        return RootExponent(m, self.exponent * (m // self.modulus) + other.exponent * (m // other.modulus))

    def __pow__(self, e: int) -> "RootExponent":
        return RootExponent(self.modulus, self.exponent * e)

    def inverse(self) -> "RootExponent":
        return RootExponent(self.modulus, -self.exponent)

    def order(self) -> int:
        return self.modulus // gcd(self.modulus, self.exponent)

    def lift(self, modulus: int) -> "RootExponent":
        if modulus % self.modulus:
            raise InvalidParameter(f"{self.modulus} does not divide {modulus}")
        return RootExponent(modulus, self.exponent * (modulus // self.modulus))

    def reduced(self) -> "RootExponent":
        """Same root written over its own order."""
        o = self.order()
        return RootExponent(o, self.exponent // (self.modulus // o))

    def is_one(self) -> bool:
        return self.exponent == 0

    def to_cyclotomic(self) -> CyclotomicInt:
        r = self.reduced()
        if not _is_pow2(r.modulus):
            raise InvalidParameter(f"zeta_{r.modulus} is not in a 2-power cyclotomic ring")
        return CyclotomicInt.zeta(max(r.modulus, 1), r.exponent)

    def __eq__(self, other):
        if not isinstance(other, RootExponent):
            return NotImplemented
        a, b = self.reduced(), other.reduced()
        return a.modulus == b.modulus and a.exponent == b.exponent

    def __hash__(self):
        r = self.reduced()
        return hash((r.modulus, r.exponent))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)
