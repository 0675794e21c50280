"""Exact commutative rings with unity: integers, rationals, integers mod m.

A ring context owns the arithmetic for one coefficient ring and knows how to
parse, format and canonicalize raw coefficient values:

* ``ZZ``       -- arbitrary-precision integers (raw value: ``int``)
* ``QQ``       -- rationals in lowest terms (raw value: ``Fraction``)
* ``Zmod(m)``  -- residues reduced into ``[0, m)`` (raw value: ``int``)

Raw values are what the series and matrix layers push through their inner
loops.  :class:`RingElem` is the thin user-facing wrapper that pairs a raw
value with its context and refuses to mix contexts.  :func:`solve_scalar`
solves the scalar equation ``n*x = y``, which is the step every coefficient
recursion in this package reduces to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import ContextMismatch, NotAUnit

# Solution sets larger than this are truncated and marked incomplete.
DEFAULT_SOLUTION_LIMIT = 2**16


class RingCtx:
    """A commutative ring with unity.

    Instances are stateless and immutable; the two infinite rings are module
    singletons and ``Zmod(m)`` is cached per modulus, so contexts may be
    compared with ``==`` (or ``is``) and shared between threads freely.
    """

    name: str
    characteristic: int
    is_finite: bool = False

    zero = None
    one = None

    # -- raw-value protocol -------------------------------------------------

    def coerce(self, x):
        """Turn ``x`` (int, str, Fraction or same-context RingElem) into a raw value."""
        raise NotImplementedError

    def reduce(self, v):
        """Canonicalize the result of raw arithmetic (no-op except mod m)."""
        return v

    def is_unit(self, v) -> bool:
        raise NotImplementedError

    def inv(self, v):
        """Multiplicative inverse of a unit; raises NotAUnit otherwise."""
        raise NotImplementedError

    def format(self, v) -> str:
        return str(v)

    def elements(self) -> Iterator:
        """All raw values of a finite ring, ascending."""
        raise ContextMismatch(f"{self.name} is not a finite ring")

    def solve_linear_raw(self, n: int, y, limit: int) -> tuple[str, list, bool]:
        """Solve n*x = y over raw values.

        Returns ``(status, solutions, complete)`` with status one of
        ``"unique"``, ``"none"``, ``"many"``; solutions are sorted.
        """
        raise NotImplementedError

    # -- conveniences ---------------------------------------------------------

    def element(self, x) -> "RingElem":
        return RingElem(self, self.coerce(x))

    def series_label(self) -> str:
        return self.name

    def __repr__(self):
        return self.name


class IntegerRing(RingCtx):
    name = "Z"
    characteristic = 0
    zero = 0
    one = 1

    def coerce(self, x):
        if isinstance(x, RingElem):
            if x.ctx != self:
                raise ContextMismatch(f"cannot use a {x.ctx.name} element in {self.name}")
            return x.value
        if isinstance(x, bool):
            return int(x)
        if isinstance(x, int):
            return x
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator
        if isinstance(x, str):
            return int(x.strip())
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def is_unit(self, v) -> bool:
        return v in (1, -1)

    def inv(self, v):
        if v in (1, -1):
            return v
        raise NotAUnit(f"{v} is not invertible in {self.name}")

    def solve_linear_raw(self, n, y, limit):
        if y % n == 0:
            return "unique", [y // n], True
        return "none", [], True

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash(("ring", "Z"))


class RationalRing(RingCtx):
    name = "Q"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, RingElem):
            if x.ctx != self:
                raise ContextMismatch(f"cannot use a {x.ctx.name} element in {self.name}")
            return x.value
        if isinstance(x, bool):
            return Fraction(int(x))
        if isinstance(x, (int, Fraction)):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x.strip())
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def is_unit(self, v) -> bool:
        return v != 0

    def inv(self, v):
        if v == 0:
            raise NotAUnit(f"0 is not invertible in {self.name}")
        return 1 / Fraction(v)

    def solve_linear_raw(self, n, y, limit):
        return "unique", [Fraction(y) / n], True

    def __eq__(self, other):
        return isinstance(other, RationalRing)

    def __hash__(self):
        return hash(("ring", "Q"))


class ModRing(RingCtx):
    """Integers modulo m, for any m >= 2 (m need not be prime)."""

    is_finite = True
    zero = 0
    one = 1

    def __init__(self, modulus: int):
        if not isinstance(modulus, int) or modulus < 2:
            raise ValueError("modulus must be an integer >= 2")
        self.modulus = modulus
        self.characteristic = modulus
        self.name = f"Zmod:{modulus}"

    def coerce(self, x):
        if isinstance(x, RingElem):
            if x.ctx != self:
                raise ContextMismatch(f"cannot use a {x.ctx.name} element in {self.name}")
            return x.value
        if isinstance(x, bool):
            return int(x) % self.modulus
        if isinstance(x, int):
            return x % self.modulus
        if isinstance(x, Fraction):
            if x.denominator != 1:
                raise ValueError(f"{x} is not an integer")
            return x.numerator % self.modulus
        if isinstance(x, str):
            return int(x.strip()) % self.modulus
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def reduce(self, v):
        return v % self.modulus

    def is_unit(self, v) -> bool:
        return math.gcd(v, self.modulus) == 1

    def inv(self, v):
        g, a, _ = _xgcd(v % self.modulus, self.modulus)
        if g != 1:
            raise NotAUnit(f"{v} is not invertible in {self.name}")
        return a % self.modulus

    def elements(self):
        return iter(range(self.modulus))

    def solve_linear_raw(self, n, y, limit):
        m = self.modulus
        y %= m
        d = math.gcd(n, m)
        if d == 1:
            return "unique", [(y * self.inv(n % m)) % m], True
        if y % d != 0:
            return "none", [], True
        # All solutions differ by multiples of m/d; there are exactly d of them.
        step = m // d
        base = ((y // d) * _modinv((n // d) % step, step)) % step if step > 1 else 0
        count = min(d, limit)
        sols = [base + t * step for t in range(count)]
        return "many", sols, count == d

    def __eq__(self, other):
        return isinstance(other, ModRing) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("ring", "Zmod", self.modulus))


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def _modinv(a: int, m: int) -> int:
    g, x, _ = _xgcd(a % m, m)
    if g != 1:
        raise NotAUnit(f"{a} is not invertible mod {m}")
    return x % m


ZZ = IntegerRing()
QQ = RationalRing()

_mod_cache: dict[int, ModRing] = {}


def Zmod(modulus: int) -> ModRing:
    """The ring of integers modulo ``modulus`` (cached per modulus)."""
    ring = _mod_cache.get(modulus)
    if ring is None:
        ring = _mod_cache[modulus] = ModRing(modulus)
    return ring


def parse_ring(spec: str) -> RingCtx:
    """Parse a ring selection string: "Z", "Q" or "Zmod:<m>"."""
    spec = spec.strip()
    if spec == "Z":
        return ZZ
    if spec == "Q":
        return QQ
    if spec.startswith("Zmod:"):
        return Zmod(int(spec[len("Zmod:"):]))
    raise ValueError(f"unknown ring {spec!r}; expected Z, Q or Zmod:<m>")


class RingElem:
    """One exact ring element bound to its context.

    Arithmetic mixes only with same-context elements and with plain ``int``
    (the canonical image of the integers in any ring); anything else is a
    hard :class:`ContextMismatch`.
    """

    __slots__ = ("ctx", "value")

    def __init__(self, ctx: RingCtx, value):
        self.ctx = ctx
        self.value = value

    def _other(self, x):
        if isinstance(x, RingElem):
            if x.ctx != self.ctx:
                raise ContextMismatch(
                    f"cannot combine elements of {self.ctx.name} and {x.ctx.name}"
                )
            return x.value
        if isinstance(x, (int, Fraction)):
            return self.ctx.coerce(x)
        return None

    def __add__(self, x):
        v = self._other(x)
        if v is None:
            return NotImplemented
        return RingElem(self.ctx, self.ctx.reduce(self.value + v))

    __radd__ = __add__

    def __sub__(self, x):
        v = self._other(x)
        if v is None:
            return NotImplemented
        return RingElem(self.ctx, self.ctx.reduce(self.value - v))

    def __rsub__(self, x):
        v = self._other(x)
        if v is None:
            return NotImplemented
        return RingElem(self.ctx, self.ctx.reduce(v - self.value))

    def __mul__(self, x):
        v = self._other(x)
        if v is None:
            return NotImplemented
        return RingElem(self.ctx, self.ctx.reduce(self.value * v))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElem(self.ctx, self.ctx.reduce(-self.value))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        if isinstance(self.ctx, ModRing):
            return RingElem(self.ctx, pow(self.value, k, self.ctx.modulus))
        return RingElem(self.ctx, self.value**k)

    def __eq__(self, x):
        if isinstance(x, RingElem):
            return x.ctx == self.ctx and x.value == self.value
        try:
            return self.ctx.coerce(x) == self.value
        except (TypeError, ValueError, ContextMismatch):
            return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def __bool__(self):
        return self.value != self.ctx.zero

    def __str__(self):
        return self.ctx.format(self.value)

    def __repr__(self):
        return f"RingElem({self.ctx.name}, {self.ctx.format(self.value)})"


@dataclass(frozen=True)
class SolveOutcome:
    """The full solution set of a scalar equation n*x = y in one ring.

    ``status`` is ``"unique"``, ``"none"`` or ``"many"``.  ``many`` only
    occurs over finite rings; ``complete`` is False when the solution set
    was truncated at the configured limit.
    """

    status: str
    solutions: tuple
    complete: bool = True

    @classmethod
    def unique(cls, x: RingElem) -> "SolveOutcome":
        return cls("unique", (x,))

    @classmethod
    def none(cls) -> "SolveOutcome":
        return cls("none", ())

    @classmethod
    def many(cls, xs, complete: bool = True) -> "SolveOutcome":
        return cls("many", tuple(xs), complete)

    @property
    def solution(self) -> RingElem:
        if self.status != "unique":
            raise ValueError(f"no single solution in a {self.status!r} outcome")
        return self.solutions[0]


def solve_scalar(ctx: RingCtx, n: int, y, *, limit: int = DEFAULT_SOLUTION_LIMIT) -> SolveOutcome:
    """Solve n*x = y in ``ctx``, returning the complete solution set.

    Over Q this is always unique; over Z it requires n | y; over Z/mZ the
    usual gcd analysis applies and multiple solutions are enumerated in
    ascending order (at most ``limit`` of them).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if isinstance(y, RingElem) and y.ctx != ctx:
        raise ContextMismatch(f"right-hand side lives in {y.ctx.name}, not {ctx.name}")
    raw = ctx.coerce(y)
    status, sols, complete = ctx.solve_linear_raw(n, raw, limit)
    elems = tuple(RingElem(ctx, s) for s in sols)
    if status == "unique":
        return SolveOutcome.unique(elems[0])
    if status == "none":
        return SolveOutcome.none()
    return SolveOutcome.many(elems, complete)


def characteristic(ctx: RingCtx) -> int:
    """0 for Z and Q; m for Z/mZ."""
    return ctx.characteristic


_ARITH_OPS = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "neg": lambda a, b: -a,
}


def arith(op: str, a: RingElem, b: RingElem | None = None) -> RingElem:
    """Apply a named ring operation ("add", "sub", "mul", "neg") exactly."""
    try:
        fn = _ARITH_OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    if op != "neg" and not isinstance(b, RingElem):
        b = a.ctx.element(b)
    out = fn(a, b)
    if out is NotImplemented:
        raise ContextMismatch("operands are not combinable")
    return out
