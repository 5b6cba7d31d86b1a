"""Exact scalars: rationals and rational functions in one variable ``t``.

Rationals are plain :class:`fractions.Fraction` values.  Rational functions
are :class:`RatFunc` objects kept in canonical form: coprime numerator and
denominator, denominator monic, zero stored as ``0/1``.

Every matrix in the package carries a field tag, ``"Q"`` or ``"Q(t)"``, and
all of its entries are of the matching type.  Plain ``int`` literals are
accepted by ``RatFunc`` arithmetic for convenience; mixing a ``Fraction``
with a ``RatFunc`` raises :class:`FieldMismatchError`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence, Tuple, Union

Rational = Fraction
Poly = Tuple[Fraction, ...]

QQ = "Q"
QT = "Q(t)"
FIELDS = (QQ, QT)


class FieldError(ValueError):
    pass


class MalformedScalarError(FieldError):
    pass


class FieldMismatchError(FieldError, TypeError):
    pass


class DivisionByZeroError(FieldError, ZeroDivisionError):
    pass


class PoleError(FieldError):
    """Raised when a rational function is evaluated at a root of its denominator."""


# ---------------------------------------------------------------------------
# dense univariate polynomials over Q, coefficient tuples low -> high degree

_ZERO: Poly = ()
_ONE: Poly = (Fraction(1),)


def ptrim(p: Sequence[Fraction]) -> Poly:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return tuple(Fraction(c) for c in p)


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    while out and not out[-1]:
        out.pop()
    return tuple(out)


def pneg(a: Poly) -> Poly:
    return tuple(-c for c in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pscale(a: Poly, c: Fraction) -> Poly:
    if not c:
        return _ZERO
    return tuple(x * c for x in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return _ZERO
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] += x * y
    return tuple(out)


def pdivmod(a: Poly, b: Poly) -> Tuple[Poly, Poly]:
    if not b:
        raise DivisionByZeroError("polynomial division by zero")
    if len(a) < len(b):
        return _ZERO, a
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    quot = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = rem[k]
        if not c:
            continue
        q = c / lead
        quot[k - db] = q
        for j in range(db + 1):
            rem[k - db + j] -= q * b[j]
    return ptrim(quot), ptrim(rem[:db])


def pmonic(a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    lead = a[-1]
    return tuple(c / lead for c in a)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm over Q."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def peval(a: Poly, x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pderiv(a: Poly) -> Poly:
    return ptrim([i * c for i, c in enumerate(a)][1:])


def pdeg(a: Poly) -> int:
    return len(a) - 1


def _canon(num: Poly, den: Poly) -> Tuple[Poly, Poly]:
    if not den:
        raise MalformedScalarError("rational function with zero denominator")
    if not num:
        return _ZERO, _ONE
    if len(den) > 1:
        g = pgcd(num, den)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = tuple(c / lead for c in num)
        den = tuple(c / lead for c in den)
    return num, den


class RatFunc:
    """Element of Q(t) in canonical form (immutable)."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=(1,), *, _canonical: bool = False):
        if isinstance(num, (int, Fraction)):
            num = (Fraction(num),)
        if isinstance(den, (int, Fraction)):
            den = (Fraction(den),)
        num, den = ptrim(num), ptrim(den)
        if not _canonical:
            num, den = _canon(num, den)
        self.num: Poly = num
        self.den: Poly = den
        self._hash = None

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFunc":
        obj = cls.__new__(cls)
        obj.num, obj.den, obj._hash = num, den, None
        return obj

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls._raw((c,) if c else _ZERO, _ONE)

    @classmethod
    def poly(cls, coeffs: Sequence) -> "RatFunc":
        return cls._raw(ptrim(coeffs), _ONE)

    # -- predicates -------------------------------------------------------
    def is_polynomial(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise FieldError(f"{self} is not constant")
        return self.num[0] if self.num else Fraction(0)

    def is_canonical(self) -> bool:
        if not self.den or self.den[-1] != 1:
            return False
        if self.num and self.num[-1] == 0:
            return False
        if not self.num:
            return self.den == _ONE
        return pgcd(self.num, self.den) == _ONE

    def __bool__(self):
        return bool(self.num)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.const(other)
        raise FieldMismatchError(
            f"cannot combine Q(t) scalar with {type(other).__name__}"
        )

    def __add__(self, other):
        o = self._coerce(other)
        if not o.num:
            return self
        if not self.num:
            return o
        if self.den == o.den:
            if len(self.den) == 1:
                return RatFunc._raw(padd(self.num, o.num), _ONE)
            return RatFunc(padd(self.num, o.num), self.den)
        return RatFunc(
            padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den)
        )

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.num or not o.num:
            return RatFunc._raw(_ZERO, _ONE)
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc._raw(pmul(self.num, o.num), _ONE)
        # cross-cancel first so the gcds stay small
        g1 = pgcd(self.num, o.den)
        g2 = pgcd(o.num, self.den)
        n1, d2 = (pdivmod(self.num, g1)[0], pdivmod(o.den, g1)[0]) if len(g1) > 1 else (self.num, o.den)
        n2, d1 = (pdivmod(o.num, g2)[0], pdivmod(self.den, g2)[0]) if len(g2) > 1 else (o.num, self.den)
        num, den = pmul(n1, n2), pmul(d1, d2)
        lead = den[-1]
        if lead != 1:
            num, den = pscale(num, 1 / lead), pscale(den, 1 / lead)
        return RatFunc._raw(num, den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZeroError("division by zero in Q(t)")
        lead = self.num[-1]
        return RatFunc._raw(pscale(self.den, 1 / lead), pscale(self.num, 1 / lead))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = RatFunc.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, int):
            return self.den == _ONE and self.num == ((Fraction(other),) if other else _ZERO)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __call__(self, p) -> Fraction:
        return evaluate(self, p)

    def __repr__(self):
        return f"RatFunc({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


FieldScalar = Union[Fraction, RatFunc]

T = RatFunc.poly((0, 1))


def tag_of(s) -> str:
    if isinstance(s, RatFunc):
        return QT
    if isinstance(s, (Fraction, int)):
        return QQ
    raise FieldMismatchError(f"not a field scalar: {s!r}")


def rational(num, den=1) -> Fraction:
    if den == 0:
        raise MalformedScalarError("rational with zero denominator")
    return Fraction(num, den)


def normalize(s):
    """Canonical form of a scalar; idempotent."""
    if isinstance(s, RatFunc):
        return RatFunc(s.num, s.den)
    if isinstance(s, Fraction):
        return Fraction(s.numerator, s.denominator)
    if isinstance(s, int):
        return Fraction(s)
    raise FieldMismatchError(f"not a field scalar: {s!r}")


def arith(a, b, op: str):
    """Exact ``a op b`` for ``op`` in add/sub/mul/div; tags must agree."""
    if tag_of(a) != tag_of(b):
        raise FieldMismatchError(f"tag mismatch: {tag_of(a)} vs {tag_of(b)}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if not b:
            raise DivisionByZeroError("division by zero")
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def evaluate(f: RatFunc, p) -> Fraction:
    p = Fraction(p)
    d = peval(f.den, p)
    if not d:
        raise PoleError(f"{f} has a pole at t={p}")
    return peval(f.num, p) / d


def zero(field: str):
    return RatFunc.const(0) if field == QT else Fraction(0)


def one(field: str):
    return RatFunc.const(1) if field == QT else Fraction(1)


def coerce(value, field: str):
    """Bring an int/Fraction (or constant RatFunc) into ``field``."""
    if field == QT:
        if isinstance(value, RatFunc):
            return value
        return RatFunc.const(value)
    if field == QQ:
        if isinstance(value, RatFunc):
            return value.constant_value()
        return Fraction(value)
    raise FieldError(f"unknown field {field!r}")


# ---------------------------------------------------------------------------
# text grammar

_TOKEN = re.compile(r"\s*(?:(\d+)|(t)|(.))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, var, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif var is not None:
            tokens.append(("t", None))
        elif sym.strip():
            if sym not in "+-*/^()":
                raise MalformedScalarError(f"unexpected character {sym!r} in {text!r}")
            tokens.append((sym, None))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, field: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.field = field

    def peek(self):
        return self.tokens[self.i][0] if self.i < len(self.tokens) else None

    def take(self, kind=None):
        if self.i >= len(self.tokens):
            raise MalformedScalarError(f"unexpected end of {self.text!r}")
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            raise MalformedScalarError(f"expected {kind!r} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.tokens:
            raise MalformedScalarError("empty scalar")
        value = self.expr()
        if self.i != len(self.tokens):
            raise MalformedScalarError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs:
                    raise MalformedScalarError(f"zero denominator in {self.text!r}")
                value = value / rhs
        return value

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            neg = False
            if self.peek() == "-":
                self.take()
                neg = True
            _, k = self.take("num")
            if neg:
                if not base:
                    raise MalformedScalarError(f"zero to negative power in {self.text!r}")
                return base ** (-k)
            return base ** k
        return base

    def atom(self):
        kind = self.peek()
        if kind == "num":
            return coerce(self.take()[1], self.field)
        if kind == "t":
            self.take()
            if self.field != QT:
                raise MalformedScalarError(f"variable t not allowed over Q: {self.text!r}")
            return T
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        raise MalformedScalarError(f"unexpected token in {self.text!r}")


def parse_scalar(text: str, field: str = QT):
    """Parse ``-3``, ``3/4``, ``t^2 - 2*t + 1``, ``(t+1)/(t^2+1)`` and friends."""
    if field not in FIELDS:
        raise FieldError(f"unknown field {field!r}")
    return _Parser(str(text), field).parse()


def _format_frac(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: Poly) -> str:
    if not p:
        return "0"
    parts = []
    for k in range(len(p) - 1, -1, -1):
        c = p[k]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        if not mono:
            body = _format_frac(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_frac(a)}*{mono}"
        parts.append((sign, body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _needs_parens(p: Poly) -> bool:
    nonzero = [c for c in p if c]
    if len(nonzero) > 1:
        return True
    return bool(nonzero) and nonzero[0].denominator != 1


def format_scalar(s) -> str:
    """Canonical text for a scalar; ``parse_scalar`` inverts it."""
    if isinstance(s, RatFunc):
        if s.den == _ONE:
            return format_poly(s.num)
        num = format_poly(s.num)
        den = format_poly(s.den)
        if _needs_parens(s.num):
            num = f"({num})"
        if _needs_parens(s.den):
            den = f"({den})"
        return f"{num}/{den}"
    if isinstance(s, (Fraction, int)):
        return _format_frac(Fraction(s))
    raise FieldMismatchError(f"not a field scalar: {s!r}")
