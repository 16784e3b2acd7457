"""Exact scalars and univariate polynomials over a prime field or the rationals.

Field elements are plain Python values: ``int`` in ``range(p)`` for GF(p),
``gmpy2.mpq`` for Q.  A :class:`Field` knows how to coerce, reduce and invert
them; every polynomial-like object carries its field.

Polynomials are dense coefficient tuples, lowest degree first, with trailing
zeros stripped.  Laurent polynomials are a dense window ``t^lo * (c0 + c1 t + ...)``.
Rational functions are kept as ``num/den`` with ``den`` monic and coprime to ``num``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from gmpy2 import mpq

NEG_INF = -math.inf
"""Degree of the zero polynomial.  Never an ordinary integer."""


class FieldMismatch(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


class Field:
    """GF(p) for a prime ``p``, or Q when ``p`` is None."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if isinstance(p, bool) or not isinstance(p, int) or not _is_prime(p):
                raise ValueError(f"{p!r} is not prime")
        self.p = p

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls(p)

    @classmethod
    def rational(cls) -> Field:
        return cls(None)

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    @property
    def zero(self):
        return 0 if self.p else mpq(0)

    @property
    def one(self):
        return 1 if self.p else mpq(1)

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, mpq or decimal string) into this field."""
        p = self.p
        if isinstance(x, str):
            m = _RATIONAL_RE.match(x)
            if not m:
                raise ValueError(f"malformed coefficient {x!r}")
            num, den = int(m.group(1)), int(m.group(2) or 1)
            if den == 0:
                raise ValueError(f"zero denominator in {x!r}")
            if p and m.group(2) is not None:
                raise ValueError(f"fractional coefficient {x!r} in {self!r}")
            x = mpq(num, den) if p is None else num
        if p is None:
            return mpq(x)
        if isinstance(x, int):
            return x % p
        if isinstance(x, (Fraction, mpq)):
            n, d = int(x.numerator), int(x.denominator)
            return n * pow(d, -1, p) % p
        raise TypeError(f"cannot coerce {x!r} into {self!r}")

    def reduce(self, x):
        return x % self.p if self.p else x

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p) if self.p else 1 / a

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def elements(self):
        """Yield field elements: all of GF(p), or 0, 1, -1, 2, -2, ... for Q."""
        if self.p:
            yield from range(self.p)
            return
        yield mpq(0)
        k = 1
        while True:
            yield mpq(k)
            yield mpq(-k)
            k += 1

    def random_element(self, rng, nonzero: bool = False, bound: int = 5):
        """Random element; rationals are drawn as a/b with small a, b."""
        while True:
            if self.p:
                a = rng.randrange(self.p)
            else:
                a = mpq(rng.randint(-bound, bound), rng.randint(1, 3))
            if a or not nonzero:
                return a

    def format(self, a) -> str:
        if self.p:
            return str(int(a))
        a = mpq(a)
        if a.denominator == 1:
            return str(int(a.numerator))
        return f"{int(a.numerator)}/{int(a.denominator)}"

    def to_json(self) -> dict:
        if self.p is None:
            return {"kind": "rational"}
        return {"kind": "prime", "p": self.p}


def _strip(coeffs) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def _check_same(a, b):
    if a.field != b.field:
        raise FieldMismatch(f"{a.field!r} vs {b.field!r}")


def _mul_raw(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    if p:
        out = [c % p for c in out]
    return out


class Polynomial:
    """Dense univariate polynomial in ``t`` over a :class:`Field`."""

    __slots__ = ("field", "coeffs", "_hash")

    def __init__(self, field: Field, coeffs=(), _raw: bool = False):
        self.field = field
        if not _raw:
            coeffs = [field(c) for c in coeffs]
        self.coeffs = _strip(coeffs)
        self._hash = None

    @classmethod
    def _make(cls, field, coeffs):
        # coeffs already reduced; only strip
        obj = cls.__new__(cls)
        obj.field = field
        obj.coeffs = _strip(coeffs)
        obj._hash = None
        return obj

    @classmethod
    def t(cls, field: Field) -> Polynomial:
        return cls._make(field, [field.zero, field.one])

    @classmethod
    def constant(cls, field: Field, c) -> Polynomial:
        return cls._make(field, [field(c)])

    @classmethod
    def monomial(cls, field: Field, k: int, c=1) -> Polynomial:
        return cls._make(field, [field.zero] * k + [field(c)])

    @classmethod
    def zero(cls, field: Field) -> Polynomial:
        return cls._make(field, ())

    @classmethod
    def one(cls, field: Field) -> Polynomial:
        return cls._make(field, [field.one])

    @property
    def degree(self):
        """Degree; ``NEG_INF`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (self.field.one,)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zero

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Polynomial.constant(self.field, other).coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, self.coeffs))
        return self._hash

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            _check_same(self, other)
            return other
        if isinstance(other, (int, Fraction, mpq)):
            return Polynomial.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] += y
        return Polynomial._make(self.field, [self.field.reduce(c) for c in out])

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return Polynomial._make(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Polynomial._make(self.field, _mul_raw(self.coeffs, other.coeffs, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result = Polynomial.one(self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale(self, c) -> Polynomial:
        F = self.field
        c = F(c)
        return Polynomial._make(F, [F.reduce(x * c) for x in self.coeffs])

    def shift(self, k: int) -> Polynomial:
        """Multiply by ``t^k`` (k >= 0)."""
        if not self.coeffs:
            return self
        return Polynomial._make(self.field, [self.field.zero] * k + list(self.coeffs))

    def monic(self) -> Polynomial:
        if not self.coeffs or self.coeffs[-1] == self.field.one:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        p = F.p
        r = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(r) - 1 < db:
            return Polynomial.zero(F), self
        inv_lc = F.inv(other.coeffs[-1])
        b = other.coeffs
        q = [F.zero] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            c = r[k + db]
            if p:
                c %= p
            if not c:
                continue
            c = c * inv_lc
            if p:
                c %= p
            q[k] = c
            for j in range(db + 1):
                r[k + j] -= c * b[j]
        r = r[:db]
        if p:
            r = [x % p for x in r]
        return Polynomial._make(F, q), Polynomial._make(F, r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Polynomial:
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def divides(self, other) -> bool:
        return not (other % self)

    def __call__(self, x):
        """Evaluate at a field element (Horner)."""
        F = self.field
        x = F(x)
        acc = F.zero
        for c in reversed(self.coeffs):
            acc = F.reduce(acc * x + c)
        return acc

    def derivative(self) -> Polynomial:
        F = self.field
        return Polynomial._make(F, [F.reduce(i * c) for i, c in enumerate(self.coeffs)][1:])

    def reverse(self, n: int | None = None) -> Polynomial:
        """``t^n * self(1/t)``; ``n`` defaults to the degree."""
        if n is None:
            n = len(self.coeffs) - 1
        if n < len(self.coeffs) - 1:
            raise ValueError("reversal length below degree")
        c = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return Polynomial._make(self.field, c[::-1])

    def valuation_at_zero(self) -> int:
        """Largest k with t^k dividing self (self nonzero)."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        raise ValueError("valuation of zero polynomial")

    def sort_key(self):
        """Total order: degree, then coefficients from the top down."""
        F = self.field
        if F.p:
            return (len(self.coeffs), tuple(reversed(self.coeffs)))
        return (len(self.coeffs), tuple(Fraction(int(c.numerator), int(c.denominator))
                                        for c in reversed(self.coeffs)))

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Polynomial({self.field!r}, {format_poly(self)!r})"


def format_poly(f: Polynomial, var: str = "t") -> str:
    """Render as ``t^2+3*t-1`` style text (parseable by :func:`parse_poly`)."""
    F = f.field
    if not f.coeffs:
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        if F.p:
            s = str(int(c))
            neg = False
        else:
            neg = c < 0
            s = F.format(-c if neg else c)
        if k == 0:
            term = s
        else:
            mono = var if k == 1 else f"{var}^{k}"
            term = mono if s == "1" else f"{s}*{mono}"
        if parts:
            parts.append(("-" if neg else "+") + term)
        else:
            parts.append(("-" if neg else "") + term)
    return "".join(parts)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd; ``gcd(0, 0) == 0``."""
    _check_same(a, b)
    if a.field.p:
        while b:
            a, b = b, a % b
    else:
        # monic remainders keep rational coefficients from growing
        while b:
            a, b = b, (a % b).monic()
    return a.monic()


def poly_xgcd(a: Polynomial, b: Polynomial):
    """Return ``(g, s, u)`` with ``s*a + u*b == g`` and ``g`` monic."""
    _check_same(a, b)
    F = a.field
    r0, r1 = a, b
    s0, s1 = Polynomial.one(F), Polynomial.zero(F)
    u0, u1 = Polynomial.zero(F), Polynomial.one(F)
    while r1:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        u0, u1 = u1, u0 - q * u1
    if not r0:
        return r0, s0, u0
    c = F.inv(r0.lc)
    return r0.scale(c), s0.scale(c), u0.scale(c)


def poly_lcm(a: Polynomial, b: Polynomial) -> Polynomial:
    if not a or not b:
        return Polynomial.zero(a.field)
    return (a * b).exact_div(poly_gcd(a, b)).monic()


class LaurentPolynomial:
    """Element of k[t, 1/t] stored as ``t^lo * (c0 + c1*t + ... )`` with c0, c_last nonzero."""

    __slots__ = ("field", "lo", "coeffs")

    def __init__(self, field: Field, terms=None):
        """``terms``: mapping or iterable of (exponent, coefficient); repeats are summed."""
        self.field = field
        acc: dict[int, object] = {}
        items = terms.items() if isinstance(terms, dict) else (terms or ())
        for e, c in items:
            acc[int(e)] = acc.get(int(e), field.zero) + field(c)
        acc = {e: field.reduce(c) for e, c in acc.items()}
        acc = {e: c for e, c in acc.items() if c}
        if not acc:
            self.lo, self.coeffs = 0, ()
            return
        lo, hi = min(acc), max(acc)
        self.lo = lo
        self.coeffs = tuple(acc.get(e, field.zero) for e in range(lo, hi + 1))

    @classmethod
    def _make(cls, field, lo, coeffs):
        obj = cls.__new__(cls)
        obj.field = field
        coeffs = list(coeffs)
        n = len(coeffs)
        while n and not coeffs[n - 1]:
            n -= 1
        start = 0
        while start < n and not coeffs[start]:
            start += 1
        obj.lo = lo + start if start < n else 0
        obj.coeffs = tuple(coeffs[start:n])
        return obj

    @classmethod
    def from_poly(cls, f: Polynomial, shift: int = 0) -> LaurentPolynomial:
        return cls._make(f.field, shift, f.coeffs)

    @classmethod
    def monomial(cls, field: Field, k: int, c=1) -> LaurentPolynomial:
        return cls._make(field, k, [field(c)])

    @classmethod
    def zero(cls, field: Field) -> LaurentPolynomial:
        return cls._make(field, 0, ())

    @classmethod
    def one(cls, field: Field) -> LaurentPolynomial:
        return cls._make(field, 0, [field.one])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    @property
    def hi(self) -> int:
        if not self.coeffs:
            raise ValueError("hi of zero Laurent polynomial")
        return self.lo + len(self.coeffs) - 1

    def terms(self) -> dict:
        return {self.lo + i: c for i, c in enumerate(self.coeffs) if c}

    def coeff(self, e: int):
        i = e - self.lo
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def is_monomial(self) -> bool:
        return len(self.coeffs) == 1

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.field == other.field and self.lo == other.lo and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == LaurentPolynomial.monomial(self.field, 0, other) if other else not self.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.lo, self.coeffs))

    def _coerce(self, other):
        if isinstance(other, LaurentPolynomial):
            _check_same(self, other)
            return other
        if isinstance(other, Polynomial):
            _check_same(self, other)
            return LaurentPolynomial.from_poly(other)
        if isinstance(other, (int, Fraction, mpq)):
            return LaurentPolynomial.monomial(self.field, 0, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        F = self.field
        lo = min(self.lo, other.lo)
        hi = max(self.hi, other.hi)
        out = [0] * (hi - lo + 1)
        for i, c in enumerate(self.coeffs):
            out[self.lo - lo + i] += c
        for i, c in enumerate(other.coeffs):
            out[other.lo - lo + i] += c
        return LaurentPolynomial._make(F, lo, [F.reduce(c) for c in out])

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return LaurentPolynomial._make(F, self.lo, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return LaurentPolynomial._make(self.field, self.lo + other.lo,
                                       _mul_raw(self.coeffs, other.coeffs, self.field.p))

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ArithmeticError("only monomials are units of k[t, 1/t]")
            F = self.field
            return LaurentPolynomial._make(F, self.lo * k, [pow(self.coeffs[0], k, F.p) if F.p
                                                            else self.coeffs[0] ** k])
        result = LaurentPolynomial.one(self.field)
        for _ in range(k):
            result = result * self
        return result

    def shift(self, k: int) -> LaurentPolynomial:
        if not self.coeffs:
            return self
        return LaurentPolynomial._make(self.field, self.lo + k, self.coeffs)

    def invert_variable(self) -> LaurentPolynomial:
        """Substitute t -> 1/t."""
        if not self.coeffs:
            return self
        return LaurentPolynomial._make(self.field, -self.hi, self.coeffs[::-1])

    def is_polynomial(self) -> bool:
        return not self.coeffs or self.lo >= 0

    def to_poly(self) -> Polynomial:
        if not self.is_polynomial():
            raise ValueError("negative exponents present")
        return Polynomial._make(self.field, [self.field.zero] * self.lo + list(self.coeffs))

    def to_rational(self) -> RationalFunction:
        F = self.field
        core = Polynomial._make(F, self.coeffs)
        if self.lo >= 0:
            return RationalFunction._make(core.shift(self.lo), Polynomial.one(F))
        return RationalFunction._make(core, Polynomial.monomial(F, -self.lo))

    def __repr__(self):
        return f"LaurentPolynomial({self.field!r}, {self.terms()!r})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        F = self.field
        parts = []
        for e, c in sorted(self.terms().items(), reverse=True):
            parts.append(f"{F.format(c)}*t^{e}")
        return " + ".join(parts)


class RationalFunction:
    """Element of k(t) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, LaurentPolynomial):
            r = num.to_rational()
            num = r.num
            if den is None:
                den = r.den
            else:
                den = den * r.den
        if den is None:
            den = Polynomial.one(num.field)
        if isinstance(den, LaurentPolynomial):
            r = den.to_rational()
            num, den = num * r.den, r.num
        _check_same(num, den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = poly_gcd(num, den)
        if not g.is_one():
            num, den = num.exact_div(g), den.exact_div(g)
        F = num.field
        c = den.lc
        if c != F.one:
            ci = F.inv(c)
            num, den = num.scale(ci), den.scale(ci)
        self.num, self.den = num, den

    @classmethod
    def _make(cls, num, den):
        obj = cls.__new__(cls)
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def from_poly(cls, f: Polynomial) -> RationalFunction:
        return cls._make(f, Polynomial.one(f.field))

    @classmethod
    def constant(cls, field: Field, c) -> RationalFunction:
        return cls._make(Polynomial.constant(field, c), Polynomial.one(field))

    @classmethod
    def zero(cls, field: Field) -> RationalFunction:
        return cls._make(Polynomial.zero(field), Polynomial.one(field))

    @classmethod
    def one(cls, field: Field) -> RationalFunction:
        return cls._make(Polynomial.one(field), Polynomial.one(field))

    @classmethod
    def t(cls, field: Field) -> RationalFunction:
        return cls._make(Polynomial.t(field), Polynomial.one(field))

    @property
    def field(self) -> Field:
        return self.num.field

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, int)):
            return self.den.is_one() and self.num == other
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            _check_same(self.num, other.num)
            return other
        if isinstance(other, Polynomial):
            _check_same(self.num, other)
            return RationalFunction.from_poly(other)
        if isinstance(other, LaurentPolynomial):
            _check_same(self.num, other)
            return other.to_rational()
        if isinstance(other, (int, Fraction, mpq)):
            return RationalFunction.constant(self.field, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._make(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.num or not other.num:
            return RationalFunction.zero(self.field)
        if self.den.is_one() and other.den.is_one():
            return RationalFunction._make(self.num * other.num, self.den)
        # cross-cancel before multiplying
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        c = den.lc
        if c != self.field.one:
            ci = self.field.inv(c)
            num, den = num.scale(ci), den.scale(ci)
        return RationalFunction._make(num, den)

    __rmul__ = __mul__

    def inverse(self) -> RationalFunction:
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        F = self.field
        ci = F.inv(self.num.lc)
        return RationalFunction._make(self.den.scale(ci), self.num.scale(ci))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction._make(self.num ** k, self.den ** k)

    def valuation_at_infinity(self) -> int:
        if not self.num:
            raise ValueError("valuation of zero")
        return self.den.degree - self.num.degree

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("pole at evaluation point")
        return self.field.reduce(self.num(x) * self.field.inv(d))

    def value_at_infinity(self):
        """Value at t = infinity; requires valuation there to be >= 0."""
        v = self.valuation_at_infinity()
        if v < 0:
            raise ZeroDivisionError("pole at infinity")
        if v > 0:
            return self.field.zero
        return self.field.reduce(self.num.lc * self.field.inv(self.den.lc))

    def invert_variable(self) -> RationalFunction:
        """Substitute t -> 1/t."""
        if not self.num:
            return self
        dn, dd = self.num.degree, self.den.degree
        n = max(dn, dd)
        return RationalFunction(self.num.reverse(n), self.den.reverse(n))

    def to_laurent(self) -> LaurentPolynomial:
        """Convert when the denominator is a power of t."""
        d = self.den
        if len(d.coeffs) - 1 != d.valuation_at_zero():
            raise ValueError("denominator is not a power of t")
        return LaurentPolynomial._make(self.field, -(len(d.coeffs) - 1), self.num.coeffs)

    def __str__(self):
        if self.den.is_one():
            return format_poly(self.num)
        return f"({format_poly(self.num)})/({format_poly(self.den)})"

    def __repr__(self):
        return f"RationalFunction({self})"
