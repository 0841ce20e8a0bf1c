"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are residues modulo the n-th cyclotomic polynomial with rational
coefficients, stored in canonical reduced form, so equality is coefficient
equality and all arithmetic is exact.  Complex conjugation acts by
zeta |-> zeta^(n-1).
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import InputError

Rational = Union[int, Fraction]


def _poly_trim(p: List[int]) -> List[int]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod_int(num: List[int], den: List[int]
                     ) -> Tuple[List[int], List[int]]:
    """Division of integer polynomials with monic (degree-leading 1 or -1)
    divisor; used only where the division is known to be exact over Z."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q, r = divmod(num[len(den) - 1 + k], lead)
        if r:
            raise AssertionError("inexact cyclotomic polynomial division")
        out[k] = q
        if q:
            for i, c in enumerate(den):
                num[k + i] -= q * c
    return out, _poly_trim(num)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_n, ascending; computed by dividing x^n - 1
    by the cyclotomic polynomials of the proper divisors of n."""
    if n < 1:
        raise InputError("cyclotomic polynomials are indexed by n >= 1")
    poly = [-1] + [0] * (n - 1) + [1]  # x^n - 1
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod_int(poly, list(cyclotomic_polynomial(d)))
            if rem:
                raise AssertionError("x^n - 1 not divisible by Phi_d")
    return tuple(poly)


class CyclotomicField:
    """Arithmetic context for Q(zeta_n): reduction data shared by elements."""

    _instances: Dict[int, "CyclotomicField"] = {}

    def __new__(cls, n: int):
        n = int(n)
        if n < 1:
            raise InputError("cyclotomic field conductor must be >= 1")
        inst = cls._instances.get(n)
        if inst is None:
            inst = super().__new__(cls)
            inst._init(n)
            cls._instances[n] = inst
        return inst

    def _init(self, n: int) -> None:
        self.conductor = n
        self.polynomial = cyclotomic_polynomial(n)
        self.degree = len(self.polynomial) - 1
        d = self.degree
        # coordinates of zeta^k for 0 <= k < max(n, 2d-1), ascending powers
        table: List[Tuple[Fraction, ...]] = []
        for k in range(d):
            table.append(tuple(Fraction(int(i == k)) for i in range(d)))
        top = tuple(Fraction(-c) for c in self.polynomial[:d])  # zeta^d
        for k in range(d, max(n, 2 * d - 1)):
            prev = table[k - 1]
            shifted = [Fraction(0)] + list(prev[:d - 1])
            lead = prev[d - 1]
            if lead:
                shifted = [s + lead * t for s, t in zip(shifted, top)]
            table.append(tuple(shifted))
        self._powers = table

    # ---- element constructors ----

    def element(self, coeffs: Sequence[Rational]) -> "CyclotomicNumber":
        """The element sum coeffs[k] * zeta^k (any length, folded down)."""
        acc = [Fraction(0)] * self.degree
        for k, c in enumerate(coeffs):
            c = Fraction(c)
            if not c:
                continue
            pw = self._powers[k % self.conductor] if k >= len(self._powers) \
                else self._powers[k]
            for i, p in enumerate(pw):
                if p:
                    acc[i] += c * p
        return CyclotomicNumber(self, tuple(acc))

    def zero(self) -> "CyclotomicNumber":
        return CyclotomicNumber(self, tuple([Fraction(0)] * self.degree))

    def one(self) -> "CyclotomicNumber":
        return self.from_rational(1)

    def from_rational(self, q: Rational) -> "CyclotomicNumber":
        coeffs = [Fraction(0)] * self.degree
        coeffs[0] = Fraction(q)
        return CyclotomicNumber(self, tuple(coeffs))

    def zeta(self, k: int = 1) -> "CyclotomicNumber":
        """zeta_n^k for any integer k."""
        return CyclotomicNumber(self, self._powers[k % self.conductor])

    def roots_of_unity(self) -> List["CyclotomicNumber"]:
        """All roots of unity in the field: +-zeta^k (a cyclic group of
        order lcm(2, n))."""
        out = []
        seen = set()
        for sign in (1, -1):
            for k in range(self.conductor):
                x = self.zeta(k) if sign == 1 else -self.zeta(k)
                if x.coeffs not in seen:
                    seen.add(x.coeffs)
                    out.append(x)
        return out

    def coerce(self, value) -> "CyclotomicNumber":
        if isinstance(value, CyclotomicNumber):
            if value.field is not self:
                raise InputError("element from a different cyclotomic field")
            return value
        if isinstance(value, (int, Fraction)):
            return self.from_rational(value)
        raise InputError(f"cannot interpret {value!r} as a field element")

    def __repr__(self) -> str:
        return f"CyclotomicField({self.conductor})"


def cyclotomic_field(n: int) -> CyclotomicField:
    """The arithmetic context for Q(zeta_n)."""
    return CyclotomicField(n)


class CyclotomicNumber:
    """An element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CyclotomicField, coeffs: Tuple[Fraction, ...]):
        self.field = field
        self.coeffs = coeffs

    # ---- ring structure ----

    def _same_field(self, other) -> "CyclotomicNumber":
        if isinstance(other, CyclotomicNumber):
            if other.field is not self.field:
                raise InputError("mixed cyclotomic fields in arithmetic")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicNumber(
            self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return NotImplemented
        return CyclotomicNumber(
            self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return NotImplemented
        d = self.field.degree
        a, b = self.coeffs, other.coeffs
        acc = [Fraction(0)] * (2 * d - 1)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    acc[i + j] += ai * bj
        out = list(acc[:d])
        powers = self.field._powers
        for k in range(d, 2 * d - 1):
            c = acc[k]
            if c:
                pw = powers[k]
                for i, p in enumerate(pw):
                    if p:
                        out[i] += c * p
        return CyclotomicNumber(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNumber":
        """Multiplicative inverse via the extended Euclidean algorithm in
        Q[x] against the cyclotomic polynomial."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        # r0 = Phi_n, r1 = self; track s with s * self = r (mod Phi_n)
        r0 = [Fraction(c) for c in self.field.polynomial]
        r1 = list(self.coeffs)
        _poly_trim_f(r1)
        s0: List[Fraction] = []
        s1: List[Fraction] = [Fraction(1)]
        while True:
            if len(r1) == 1:
                inv = [c / r1[0] for c in s1]
                return self.field.element(inv)
            q, r = _poly_divmod_f(r0, r1)
            r0, r1 = r1, r
            if not r1:
                raise AssertionError(
                    "cyclotomic polynomial shares a factor with a nonzero "
                    "element")
            s0, s1 = s1, _poly_sub_f(s0, _poly_mul_f(q, s1))

    def __truediv__(self, other):
        other = self._same_field(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> "CyclotomicNumber":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "CyclotomicNumber":
        """The image under zeta |-> zeta^(-1) (complex conjugation)."""
        n = self.field.conductor
        powers = self.field._powers
        out = [Fraction(0)] * self.field.degree
        for k, c in enumerate(self.coeffs):
            if c:
                pw = powers[(n - k) % n]
                for i, p in enumerate(pw):
                    if p:
                        out[i] += c * p
        return CyclotomicNumber(self.field, tuple(out))

    # ---- predicates ----

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise InputError("element is not rational")
        return self.coeffs[0]

    def multiplicative_order(self, cap: int = 10000) -> Optional[int]:
        """The least k >= 1 with self^k = 1, or None if none up to the cap."""
        x = self
        for k in range(1, cap + 1):
            if x.is_one():
                return k
            x = x * self
        return None

    # ---- comparisons, hashing, display ----

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.field.from_rational(other)
        return (isinstance(other, CyclotomicNumber)
                and self.field.conductor == other.field.conductor
                and self.coeffs == other.coeffs)

    def __hash__(self) -> int:
        return hash((self.field.conductor, self.coeffs))

    def key(self) -> Tuple:
        """Hashable canonical key (integer pairs, faster than Fractions)."""
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    def __repr__(self) -> str:
        n = self.field.conductor
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                z = f"z{n}" if k == 1 else f"z{n}^{k}"
                terms.append(z if c == 1 else f"-{z}" if c == -1
                             else f"{c}*{z}")
        if not terms:
            return "0"
        return " + ".join(terms).replace("+ -", "- ")

    # ---- serialization ----

    def to_coeff_list(self) -> List[List[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]


def number_from_coeff_list(field: CyclotomicField,
                           data: Sequence) -> CyclotomicNumber:
    """Inverse of CyclotomicNumber.to_coeff_list."""
    if len(data) > max(field.degree, field.conductor):
        raise InputError("coefficient vector longer than the field degree")
    coeffs = []
    for item in data:
        if isinstance(item, int):
            coeffs.append(Fraction(item))
        elif (isinstance(item, (list, tuple)) and len(item) == 2
                and all(isinstance(x, int) for x in item)):
            if item[1] == 0:
                raise InputError("zero denominator in coefficient")
            coeffs.append(Fraction(item[0], item[1]))
        else:
            raise InputError(f"bad rational coefficient {item!r}")
    return field.element(coeffs)


# ---- Fraction polynomial helpers (ascending coefficients) ----

def _poly_trim_f(p: List[Fraction]) -> List[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod_f(num: List[Fraction], den: List[Fraction]
                   ) -> Tuple[List[Fraction], List[Fraction]]:
    num = list(num)
    if len(num) < len(den):
        return [], _poly_trim_f(num)
    out = [Fraction(0)] * (len(num) - len(den) + 1)
    lead = den[-1]
    for k in range(len(out) - 1, -1, -1):
        q = num[len(den) - 1 + k] / lead
        out[k] = q
        if q:
            for i, c in enumerate(den):
                num[k + i] -= q * c
    return _poly_trim_f(out), _poly_trim_f(num)


def _poly_mul_f(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim_f(out)


def _poly_sub_f(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim_f(out)
