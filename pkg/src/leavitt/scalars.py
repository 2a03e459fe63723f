"""Exact coefficient fields, dense univariate polynomials and K[x]/(f).

Two fields are supported: the rationals (backed by :class:`fractions.Fraction`)
and prime fields GF(p) (backed by :class:`GF`).  A :class:`Field` converts
Python numbers into field elements; the elements themselves carry ordinary
arithmetic operators.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import MathDomainError, ParseError


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


@total_ordering
class GF:
    """Residue class modulo a prime ``p``."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        self.value = value % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, GF):
            if other.p != self.p:
                raise MathDomainError(f"mixing GF({self.p}) and GF({other.p})")
            return other
        if isinstance(other, int):
            return GF(other, self.p)
        if isinstance(other, Fraction):
            return GF(other.numerator, self.p) / GF(other.denominator, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GF(self.value + other.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GF(self.value - other.value, self.p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return GF(self.value * other.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.p})")
        return GF(self.value * pow(other.value, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __neg__(self):
        return GF(-self.value, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return (1 / self) ** (-k)
        return GF(pow(self.value, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, GF):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __lt__(self, other):
        # only used for deterministic ordering, not field structure
        return self.value < self._coerce(other).value

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"GF({self.value}, {self.p})"

    def __str__(self):
        return str(self.value)


class Field:
    """The coefficient field of a session: ``Field()`` is Q, ``Field(p)`` is GF(p)."""

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise MathDomainError(f"{characteristic} is not prime")
        self.characteristic = characteristic

    @classmethod
    def parse(cls, text: str) -> "Field":
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls()
        m = re.fullmatch(r"(?:Fp|GF|F):(\d+)", text)
        if not m:
            raise ParseError(f"unknown field {text!r}; use Q or Fp:<prime>")
        return cls(int(m.group(1)))

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "Field(Q)" if not self.characteristic else f"Field(GF({self.characteristic}))"

    def __str__(self):
        return "Q" if not self.characteristic else f"Fp:{self.characteristic}"

    def __call__(self, value):
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if not p:
            if isinstance(value, GF):
                raise MathDomainError("cannot read a GF(p) element as a rational")
            return Fraction(value)
        if isinstance(value, GF):
            if value.p != p:
                raise MathDomainError(f"element of GF({value.p}) used over GF({p})")
            return value
        value = Fraction(value)
        if value.denominator % p == 0:
            raise MathDomainError(f"denominator {value.denominator} vanishes mod {p}")
        return GF(value.numerator, p) / GF(value.denominator, p)

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def elements(self):
        """All elements of a prime field (raises for Q)."""
        if not self.characteristic:
            raise MathDomainError("Q is infinite")
        return [GF(i, self.characteristic) for i in range(self.characteristic)]

    @staticmethod
    def split_sign(c) -> tuple[bool, object]:
        """(negative?, magnitude) used when printing signed sums."""
        if isinstance(c, Fraction) and c < 0:
            return True, -c
        return False, c


# -- polynomials ----------------------------------------------------------


class Poly:
    """Dense polynomial over a :class:`Field`; ``coeffs[i]`` multiplies ``x^i``."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: Field) -> "Poly":
        return cls(field, (0, 1))

    @classmethod
    def const(cls, field: Field, c) -> "Poly":
        return cls(field, (c,))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __getitem__(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction, GF)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise MathDomainError("polynomials over different fields")
            return other
        return Poly.const(self.field, other)

    def __add__(self, other):
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        other = self._lift(other)
        if not self or not other:
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = Poly.const(self.field, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other):
        other = self._lift(other)
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = len(rem) - len(other.coeffs)
        quot = [self.field.zero] * max(dq + 1, 0)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] / lead
            quot[k] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k + j] -= c * b
        return Poly(self.field, quot), Poly(self.field, rem[: max(len(other.coeffs) - 1, 0)])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, value):
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def monic(self) -> "Poly":
        if not self:
            return self
        lead = self.coeffs[-1]
        return Poly(self.field, [c / lead for c in self.coeffs])

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        return format_poly(self)


def poly_arith(op: str, a: Poly, b: Poly):
    """Dispatch ``add``/``sub``/``mul``/``divmod`` on two polynomials."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "divmod":
        return divmod(a, b)
    raise ValueError(f"unknown polynomial operation {op!r}")


def poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, a % b
    return a.monic()


def poly_xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g`` and ``g`` monic."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.const(field, 1), Poly(field)
    t0, t1 = Poly(field), Poly.const(field, 1)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if not r0:
        return r0, s0, t0
    lead = r0.coeffs[-1]
    return r0.monic(), s0 * (1 / lead), t0 * (1 / lead)


def _pow_mod(base: Poly, k: int, mod: Poly) -> Poly:
    result = Poly.const(base.field, 1)
    base = base % mod
    while k:
        if k & 1:
            result = (result * base) % mod
        base = (base * base) % mod
        k >>= 1
    return result


class Irreducibility(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNDECIDED = "undecided"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.extend({i, n // i})
        i += 1
    return out


def rational_roots(f: Poly) -> list[Fraction]:
    """All rational roots of a polynomial over Q."""
    if f.degree < 1:
        return []
    roots = []
    cs = list(f.coeffs)
    if cs[0] == 0:
        roots.append(Fraction(0))
        while cs[0] == 0:
            cs.pop(0)
    den = 1
    for c in cs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in cs]
    for r in _divisors(ints[0]):
        for s in _divisors(ints[-1]):
            for cand in (Fraction(r, s), Fraction(-r, s)):
                if cand not in roots and f(cand) == 0:
                    roots.append(cand)
    return roots


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


def is_irreducible(f: Poly) -> Irreducibility:
    """Decide irreducibility where it is cheap to do so exactly.

    Over GF(p) the answer is always exact: ``f`` of degree ``n`` is irreducible
    iff ``gcd(f, x^(p^d) - x) == 1`` for every ``d <= n // 2``.  Over Q
    polynomials of degree at most 3 are decided by the rational root test;
    higher degrees are reported reducible when a rational root exists and
    undecided otherwise.
    """
    if f.degree < 1:
        raise MathDomainError("constant polynomials are not irreducible candidates")
    n = f.degree
    if n == 1:
        return Irreducibility.YES
    p = f.field.characteristic
    if p:
        x = Poly.x(f.field)
        h = x
        for _ in range(n // 2):
            h = _pow_mod(h, p, f)
            if poly_gcd(f, h - x).degree > 0:
                return Irreducibility.NO
        return Irreducibility.YES
    if rational_roots(f):
        return Irreducibility.NO
    return Irreducibility.YES if n <= 3 else Irreducibility.UNDECIDED


@dataclass(frozen=True)
class IrrPoly:
    """An irreducible ``f = 1 - a_1 x - ... - a_n x^n`` with ``n >= 1``.

    ``asserted`` records that irreducibility was taken on the caller's word
    rather than proved.
    """

    poly: Poly
    asserted: bool = False

    @classmethod
    def make(cls, f: Poly, assume_irreducible: bool = False) -> "IrrPoly":
        if f.degree < 1:
            raise MathDomainError(f"{f} must have degree at least 1")
        if f[0] != 1:
            raise MathDomainError(f"{f} must have constant term 1")
        verdict = is_irreducible(f)
        if verdict is Irreducibility.NO:
            raise MathDomainError(f"{f} is reducible")
        if verdict is Irreducibility.UNDECIDED and not assume_irreducible:
            raise MathDomainError(
                f"cannot decide irreducibility of {f}; pass --assume-irreducible")
        return cls(f, asserted=verdict is Irreducibility.UNDECIDED)

    @property
    def field(self) -> Field:
        return self.poly.field

    @property
    def degree(self) -> int:
        return self.poly.degree

    def coefficients_a(self) -> list:
        """``[a_1, ..., a_n]``."""
        return [-c for c in self.poly.coeffs[1:]]

    def __str__(self):
        return str(self.poly)


def split_f1(f) -> Poly:
    """The ``f_1`` with ``f = 1 - x*f_1``, i.e. ``a_1 + a_2 x + ... + a_n x^(n-1)``."""
    poly = f.poly if isinstance(f, IrrPoly) else f
    if poly[0] != 1:
        raise MathDomainError(f"{poly} does not have constant term 1")
    f1 = Poly(poly.field, [-c for c in poly.coeffs[1:]])
    assert 1 - Poly.x(poly.field) * f1 == poly
    return f1


class Residue:
    """Element of the field K[x]/(f) for an :class:`IrrPoly` ``f``."""

    __slots__ = ("poly", "modulus")

    def __init__(self, poly, modulus: IrrPoly):
        if not isinstance(poly, Poly):
            poly = Poly.const(modulus.field, poly)
        self.poly = poly % modulus.poly
        self.modulus = modulus

    @classmethod
    def x(cls, modulus: IrrPoly) -> "Residue":
        return cls(Poly.x(modulus.field), modulus)

    def _lift(self, other) -> "Residue":
        if isinstance(other, Residue):
            if other.modulus.poly != self.modulus.poly:
                raise MathDomainError("residues modulo different polynomials")
            return other
        return Residue(other, self.modulus)

    def __add__(self, other):
        return Residue(self.poly + self._lift(other).poly, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return Residue(self.poly - self._lift(other).poly, self.modulus)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return Residue(-self.poly, self.modulus)

    def __mul__(self, other):
        return Residue(self.poly * self._lift(other).poly, self.modulus)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return Residue(_pow_mod(self.poly, k, self.modulus.poly), self.modulus)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def inverse(self) -> "Residue":
        return residue_inverse(self)

    def __eq__(self, other):
        if isinstance(other, Residue):
            return self.modulus.poly == other.modulus.poly and self.poly == other.poly
        if isinstance(other, (int, Fraction, GF)):
            return self.poly == other
        return NotImplemented

    def __hash__(self):
        return hash((self.poly, self.modulus.poly))

    def __bool__(self):
        return bool(self.poly)

    def __repr__(self):
        return f"Residue({self.poly} mod {self.modulus})"

    def __str__(self):
        return str(self.poly)


def residue_inverse(u: Residue) -> Residue:
    """Inverse in K[x]/(f) by the extended Euclidean algorithm."""
    if not u:
        raise ZeroDivisionError("the zero residue has no inverse")
    g, s, _ = poly_xgcd(u.poly, u.modulus.poly)
    if g.degree != 0:
        raise MathDomainError(f"{u.modulus} is reducible: shares factor {g} with {u.poly}")
    return Residue(s, u.modulus)


# -- text form ------------------------------------------------------------

_POLY_TERM = re.compile(
    r"\s*([+-])?\s*(?:(\d+)(?:\s*/\s*(\d+))?)?\s*(\*)?\s*(x(?:\s*\^\s*(\d+))?)?\s*")


def parse_poly(text: str, field: Field) -> Poly:
    """Parse ``1 - x - x^2``, ``1 - 2/3*x``, ``3x^2 + 1`` and similar."""
    pos = 0
    text = text.strip()
    if not text:
        raise ParseError("empty polynomial")
    terms = {}
    first = True
    while pos < len(text):
        m = _POLY_TERM.match(text, pos)
        sign, num, den, star, xpart, exp = m.groups()
        if m.end() == pos or (num is None and xpart is None):
            raise ParseError(f"cannot parse polynomial {text!r}", pos)
        if sign is None and not first:
            raise ParseError(f"expected '+' or '-' in {text!r}", pos)
        if star and (num is None or xpart is None):
            raise ParseError(f"misplaced '*' in {text!r}", pos)
        if den is not None and int(den) == 0:
            raise ParseError("zero denominator", pos)
        if num and xpart and not star and m.start(5) > m.end(3 if den else 2):
            raise ParseError(f"write '*' between coefficient and x in {text!r}", pos)
        coeff = Fraction(int(num), int(den) if den else 1) if num else Fraction(1)
        if sign == "-":
            coeff = -coeff
        k = 0 if xpart is None else (int(exp) if exp else 1)
        terms[k] = terms.get(k, field.zero) + field(coeff)
        pos = m.end()
        first = False
    n = max(terms) + 1
    return Poly(field, [terms.get(i, 0) for i in range(n)])


def format_poly(f: Poly) -> str:
    if not f:
        return "0"
    parts = []
    for k, c in enumerate(f.coeffs):
        if not c:
            continue
        neg, mag = Field.split_sign(c)
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)
