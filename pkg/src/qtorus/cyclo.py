"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element of Q(zeta_n) is stored as an integer coefficient vector over the
power basis 1, zeta, ..., zeta^(phi(n)-1) together with a positive common
denominator.  Products are reduced modulo the n-th cyclotomic polynomial, so
the representation is canonical inside a fixed conductor and zero testing is
exact.  Binary operations promote both operands to the lcm of the conductors.
"""
from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Union

Number = Union[int, Fraction, "Cyclo"]


def _polymul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polydiv_exact(a: list[int], b: list[int]) -> list[int]:
    # b monic, division exact
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for d in range(len(a) - len(b), -1, -1):
        c = a[d + len(b) - 1]
        q[d] = c
        if c:
            for j, y in enumerate(b):
                a[d + j] -= c * y
    assert not any(a), "inexact polynomial division"
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def totient(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row e holds the coordinates of zeta_n^e, for 0 <= e < n."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    rows = []
    cur = [0] * phi
    cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x, reduce x^phi = -(poly[0] + ... + poly[phi-1] x^(phi-1))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for k in range(phi):
                cur[k] -= top * poly[k]
    return tuple(rows)


def _reduce(coeffs: list[int], n: int) -> list[int]:
    """Reduce a polynomial in zeta_n (any degree) modulo Phi_n."""
    phi = totient(n)
    poly = cyclotomic_poly(n)
    c = list(coeffs)
    for d in range(len(c) - 1, phi - 1, -1):
        top = c[d]
        if top:
            base = d - phi
            for k in range(phi):
                c[base + k] -= top * poly[k]
        c.pop()
    c.extend([0] * (phi - len(c)))
    return c


class Cyclo:
    """An exact element of Q(zeta_n)."""

    __slots__ = ("n", "num", "den")
    __hash__ = None  # equality crosses conductors; no canonical hash

    def __init__(self, n: int, num, den: int = 1):
        num = tuple(int(x) for x in num)
        if len(num) != totient(n):
            raise ValueError(f"expected {totient(n)} coefficients for conductor {n}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = tuple(-x for x in num), -den
        g = den
        for x in num:
            g = math.gcd(g, x)
            if g == 1:
                break
        if not any(num):
            num, den = (0,) * len(num), 1
        elif g > 1:
            num, den = tuple(x // g for x in num), den // g
        self.n = n
        self.num = num
        self.den = den

    # construction -----------------------------------------------------
    @classmethod
    def rational(cls, q: int | Fraction, n: int = 1) -> Cyclo:
        q = Fraction(q)
        num = [0] * totient(n)
        num[0] = q.numerator
        return cls(n, num, q.denominator)

    @classmethod
    def zeta(cls, n: int, k: int = 1) -> Cyclo:
        return cls(n, _power_table(n)[k % n])

    @classmethod
    def zero(cls) -> Cyclo:
        return cls.rational(0)

    @classmethod
    def one(cls) -> Cyclo:
        return cls.rational(1)

    @property
    def conductor(self) -> int:
        return self.n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    # conductor handling -------------------------------------------------
    def promote(self, m: int) -> Cyclo:
        """Embed into Q(zeta_m); requires n | m."""
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot embed conductor {self.n} into {m}")
        t = m // self.n
        table = _power_table(m)
        out = [0] * totient(m)
        for k, c in enumerate(self.num):
            if c:
                row = table[k * t]
                for j, r in enumerate(row):
                    if r:
                        out[j] += c * r
        return Cyclo(m, out, self.den)

    def _common(self, other) -> tuple[Cyclo, Cyclo]:
        other = _coerce(other)
        if other.n == self.n:
            return self, other
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.promote(m), other.promote(m)

    # arithmetic ---------------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        num = [x * b.den + y * a.den for x, y in zip(a.num, b.num)]
        return Cyclo(a.n, num, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.n, [-x for x in self.num], self.den)

    def __sub__(self, other):
        try:
            return self + (-_coerce(other))
        except TypeError:
            return NotImplemented

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if a.is_zero() or b.is_zero():
            return Cyclo(a.n, [0] * len(a.num))
        return Cyclo(a.n, _reduce(_polymul(list(a.num), list(b.num)), a.n), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, e: int) -> Cyclo:
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclo.rational(1, self.n)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def galois(self, a: int) -> Cyclo:
        """Apply the automorphism zeta_n -> zeta_n^a (gcd(a, n) = 1)."""
        if math.gcd(a, self.n) != 1:
            raise ValueError("exponent must be a unit mod n")
        table = _power_table(self.n)
        out = [0] * len(self.num)
        for k, c in enumerate(self.num):
            if c:
                for j, r in enumerate(table[(a * k) % self.n]):
                    if r:
                        out[j] += c * r
        return Cyclo(self.n, out, self.den)

    def conj(self) -> Cyclo:
        """Complex conjugation, zeta_n -> zeta_n^-1."""
        return self.galois(-1 % self.n) if self.n > 2 else self

    def norm(self) -> Fraction:
        """Field norm to Q: product of all Galois conjugates."""
        prod = self
        for a in range(2, self.n):
            if math.gcd(a, self.n) == 1:
                prod = prod * self.galois(a)
        return prod.as_rational()

    def inverse(self) -> Cyclo:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        others = Cyclo.rational(1, self.n)
        for a in range(2, self.n):
            if math.gcd(a, self.n) == 1:
                others = others * self.galois(a)
        nrm = (self * others).as_rational()
        return others * Cyclo.rational(1 / nrm)

    # predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self.num[0], self.den)

    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a.den == b.den and a.num == b.num

    def __bool__(self):
        return not self.is_zero()

    # display ------------------------------------------------------------
    def to_complex(self) -> complex:
        """Floating-point shadow value, for reports only."""
        z = cmath.exp(2j * math.pi / self.n)
        return sum(c * z**k for k, c in enumerate(self.num)) / self.den

    def __repr__(self):
        return f"Cyclo({self.n}, {self.num}, {self.den})"

    def __str__(self):
        return format_cyclo(self)


def _coerce(x) -> Cyclo:
    if isinstance(x, Cyclo):
        return x
    if isinstance(x, (int, Fraction)):
        return Cyclo.rational(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to Cyclo")


def cyclo(x: Number) -> Cyclo:
    return _coerce(x)


def zeta(n: int, k: int = 1) -> Cyclo:
    return Cyclo.zeta(n, k)


def format_cyclo(x: Cyclo) -> str:
    """Render in the scalar literal grammar (parse_scalar reads it back)."""
    if x.is_zero():
        return "0"
    parts = []
    for k, c in enumerate(x.num):
        if not c:
            continue
        q = Fraction(c, x.den)
        mag = abs(q)
        coef = str(mag) if mag != 1 or k == 0 else ""
        if k == 0:
            term = coef
        elif coef:
            term = f"{coef}*z({x.n},{k})"
        else:
            term = f"z({x.n},{k})"
        sign = "-" if q < 0 else "+"
        parts.append((sign, term))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, term in parts[1:]:
        out += f" {sign} {term}"
    return out


# square roots -------------------------------------------------------------

def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _legendre(a: int, p: int) -> int:
    r = pow(a, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def _sqrt_prime(p: int) -> Cyclo:
    if p == 2:
        return zeta(8, 1) + zeta(8, 7)
    gauss = Cyclo.zero()
    for a in range(1, p):
        gauss = gauss + _legendre(a, p) * zeta(p, a)
    if p % 4 == 3:
        gauss = gauss * zeta(4, 3)  # g^2 = -p, so (-i g)^2 = p
    if gauss.to_complex().real < 0:
        gauss = -gauss
    return gauss


@lru_cache(maxsize=None)
def _sqrt_int_cached(N: int) -> Cyclo:
    square, free = 1, []
    for p, e in _prime_factors(N).items():
        square *= p ** (e // 2)
        if e % 2:
            free.append(p)
    s = Cyclo.rational(square)
    for p in free:
        s = s * _sqrt_prime(p)
    if s * s != N:
        raise ArithmeticError(f"square root construction failed for {N}")
    return s


def sqrt_int(N: int) -> Cyclo:
    """Positive square root of a positive integer, as a cyclotomic element."""
    if N < 1:
        raise ValueError("sqrt_int needs a positive integer")
    return _sqrt_int_cached(N)


# scalar literal parser ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(z|sqrt|i)\b|(.))")


class ScalarSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        tok = m.group(1) or m.group(2) or m.group(3)
        if tok is None or tok.isspace():
            pos = m.end()
            continue
        tokens.append(tok)
        pos = m.end()
    return tokens


class _ScalarParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ScalarSyntaxError(f"expected {expected or 'token'} in {self.text!r}")
        self.pos += 1
        return tok

    def expr(self) -> Cyclo:
        val = self.term()
        while self.peek() in ("+", "-"):
            if self.take() == "+":
                val = val + self.term()
            else:
                val = val - self.term()
        return val

    def term(self) -> Cyclo:
        val = self.factor()
        while self.peek() in ("*", "/"):
            if self.take() == "*":
                val = val * self.factor()
            else:
                val = val / self.factor()
        return val

    def factor(self) -> Cyclo:
        tok = self.peek()
        if tok == "-":
            self.take()
            return -self.factor()
        if tok == "+":
            self.take()
            return self.factor()
        return self.atom()

    def integer(self) -> int:
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ScalarSyntaxError(f"expected integer in {self.text!r}")
        return sign * int(tok)

    def atom(self) -> Cyclo:
        tok = self.take()
        if tok.isdigit():
            return Cyclo.rational(int(tok))
        if tok == "i":
            return zeta(4, 1)
        if tok == "z":
            self.take("(")
            n = self.integer()
            self.take(",")
            k = self.integer()
            self.take(")")
            if n < 1:
                raise ScalarSyntaxError("root of unity order must be positive")
            return zeta(n, k)
        if tok == "sqrt":
            self.take("(")
            n = self.integer()
            self.take(")")
            if n < 1:
                raise ScalarSyntaxError("sqrt needs a positive integer")
            return sqrt_int(n)
        if tok == "(":
            val = self.expr()
            self.take(")")
            return val
        raise ScalarSyntaxError(f"unexpected {tok!r} in {self.text!r}")


def parse_scalar(text: str) -> Cyclo:
    """Parse `p/q`, `z(n,k)`, `sqrt(N)`, `i`, with + - * / and parentheses."""
    parser = _ScalarParser(text)
    if not parser.tokens:
        raise ScalarSyntaxError("empty scalar literal")
    try:
        val = parser.expr()
    except ZeroDivisionError as exc:
        raise ScalarSyntaxError(f"division by zero in {text!r}") from exc
    if parser.peek() is not None:
        raise ScalarSyntaxError(f"trailing input {parser.peek()!r} in {text!r}")
    return val
