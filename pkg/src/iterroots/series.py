"""Truncated formal power series with exact coefficients.

A :class:`TruncSeries` holds the coefficients ``c_0 .. c_m`` of a power
series truncated at order ``m``.  The order is a property of the value,
fixed at construction; binary operations demand equal orders instead of
silently truncating, so results are reproducible bit for bit.

    >>> from iterroots.rings import QQ
    >>> f = TruncSeries(QQ, ["0", "1", "1"])      # x + x^2, order 2
    >>> print(f * f)
    x^2 + 2*x^4 ...  (truncated)

Series with zero constant term and unit linear term ("substitution-group
elements") compose into each other and have compositional inverses and
iterates; those are the inputs the root solvers in :mod:`iterroots.subst_roots`
work on.  Everything is exact: coefficients are arbitrary-precision integers,
reduced fractions, or canonical residues, never floats.
"""

from __future__ import annotations

import math
from math import factorial

from . import backend
from .errors import (
    CompositionDomain,
    ContextMismatch,
    NotInSubstitutionGroup,
    OrderMismatch,
)
from .rings import QQ, RingCtx, RingElem

PRESET_NAMES = ("sin", "tan", "expm1", "geom1", "xover1mx2")


def _kernel_mod(ctx):
    """Modulus to hand to the fixed-width kernels, or None for the generic path."""
    m = getattr(ctx, "modulus", None)
    if m is not None and m <= backend.KERNEL_MOD_MAX:
        return m
    return None


# ---------------------------------------------------------------------------
# raw-coefficient arithmetic (lists of raw ring values, equal lengths)
# ---------------------------------------------------------------------------


def _mul_len(ctx, a, b, out_len):
    """Cauchy product truncated to ``out_len`` coefficients, skipping zeros."""
    zero = ctx.zero
    out = [zero] * out_len
    len_b = len(b)
    for i, ai in enumerate(a):
        if i >= out_len:
            break
        if ai:
            for j in range(min(len_b, out_len - i)):
                bj = b[j]
                if bj:
                    out[i + j] = out[i + j] + ai * bj
    reduce = ctx.reduce
    return [reduce(v) for v in out]


def _mul_raw(ctx, a, b):
    mod = _kernel_mod(ctx)
    if mod is not None:
        return backend.mul_mod(list(a), list(b), mod)
    return _mul_len(ctx, a, b, len(a))


def _compose_raw(ctx, outer, inner):
    # caller guarantees inner[0] == 0
    mod = _kernel_mod(ctx)
    if mod is not None:
        return backend.compose_mod(list(outer), list(inner), mod)
    n = len(outer)
    # Horner from the top; since inner has valuation 1, the partial result
    # consumed at step k only matters up to degree n - 1 - k
    res = [outer[n - 1]]
    for k in range(n - 2, -1, -1):
        res = _mul_len(ctx, res, inner, n - k)
        res[0] = outer[k]
    return res


def _iterate_raw(ctx, g, n):
    mod = _kernel_mod(ctx)
    if mod is not None:
        return backend.iterate_mod(list(g), n, mod)
    size = len(g)
    res = [ctx.zero] * size
    if size > 1:
        res[1] = ctx.one
    base = list(g)
    k = n
    while k:
        if k & 1:
            res = _compose_raw(ctx, res, base)
        k >>= 1
        if k:
            base = _compose_raw(ctx, base, base)
    return res


def _recip_raw(ctx, a):
    inv0 = ctx.inv(a[0])
    out = [inv0]
    for k in range(1, len(a)):
        acc = sum(a[i] * out[k - i] for i in range(1, k + 1))
        out.append(ctx.reduce(-inv0 * acc))
    return out


# ---------------------------------------------------------------------------


class TruncSeries:
    """Coefficients c_0..c_m of a formal power series, truncated at order m."""

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx: RingCtx, coeffs, order: int | None = None):
        raw = [ctx.coerce(c) for c in coeffs]
        if order is not None:
            if len(raw) > order + 1:
                raise OrderMismatch(
                    f"{len(raw)} coefficients exceed requested order {order}"
                )
            raw.extend([ctx.zero] * (order + 1 - len(raw)))
        if not raw:
            raise ValueError("a series needs at least its constant coefficient")
        self.ctx = ctx
        self._c = tuple(raw)

    # -- constructors ---------------------------------------------------------

    @classmethod
    def x(cls, ctx: RingCtx, order: int) -> "TruncSeries":
        """The identity substitution x."""
        return cls(ctx, [0, 1] if order >= 1 else [0], order=order)

    @classmethod
    def zero(cls, ctx: RingCtx, order: int) -> "TruncSeries":
        return cls(ctx, [0], order=order)

    @classmethod
    def one(cls, ctx: RingCtx, order: int) -> "TruncSeries":
        return cls(ctx, [1], order=order)

    @classmethod
    def _from_raw(cls, ctx, raw) -> "TruncSeries":
        self = object.__new__(cls)
        self.ctx = ctx
        self._c = tuple(raw)
        return self

    # -- basic accessors --------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._c) - 1

    @property
    def coeffs(self) -> tuple:
        """All coefficients as RingElem, index = power of x."""
        return tuple(RingElem(self.ctx, v) for v in self._c)

    def __getitem__(self, k: int) -> RingElem:
        return RingElem(self.ctx, self._c[k])

    def raw(self) -> tuple:
        """The raw coefficient values (ints / Fractions), index = power of x."""
        return self._c

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch(
                f"cannot compare series over {self.ctx.name} and {other.ctx.name}"
            )
        if other.order != self.order:
            raise OrderMismatch(
                f"cannot compare series of orders {self.order} and {other.order}"
            )
        return self._c == other._c

    __hash__ = None  # mutable-free but equality is strict; not a dict key

    def _compat(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            raise TypeError(f"expected a TruncSeries, got {type(other).__name__}")
        if other.ctx != self.ctx:
            raise ContextMismatch(
                f"operands over {self.ctx.name} and {other.ctx.name}"
            )
        if other.order != self.order:
            raise OrderMismatch(
                f"operands of orders {self.order} and {other.order}"
            )
        return other

    # -- ring operations ---------------------------------------------------------

    def __add__(self, other):
        other = self._compat(other)
        red = self.ctx.reduce
        return TruncSeries._from_raw(
            self.ctx, [red(a + b) for a, b in zip(self._c, other._c)]
        )

    def __sub__(self, other):
        other = self._compat(other)
        red = self.ctx.reduce
        return TruncSeries._from_raw(
            self.ctx, [red(a - b) for a, b in zip(self._c, other._c)]
        )

    def __neg__(self):
        red = self.ctx.reduce
        return TruncSeries._from_raw(self.ctx, [red(-a) for a in self._c])

    def __mul__(self, other):
        if isinstance(other, TruncSeries):
            other = self._compat(other)
            return TruncSeries._from_raw(
                self.ctx, _mul_raw(self.ctx, self._c, other._c)
            )
        # scalar multiple
        s = self.ctx.coerce(other)
        red = self.ctx.reduce
        return TruncSeries._from_raw(self.ctx, [red(s * a) for a in self._c])

    def __rmul__(self, other):
        return self.__mul__(other)

    def mul(self, other) -> "TruncSeries":
        return self.__mul__(other)

    # -- composition-group operations ---------------------------------------------

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(x)) truncated at the common order; inner needs inner[0] = 0."""
        inner = self._compat(inner)
        if inner._c[0] != self.ctx.zero:
            raise CompositionDomain("inner series has a nonzero constant term")
        return TruncSeries._from_raw(
            self.ctx, _compose_raw(self.ctx, self._c, inner._c)
        )

    __call__ = compose

    def recip(self) -> "TruncSeries":
        """Multiplicative inverse; the constant term must be a unit."""
        return TruncSeries._from_raw(self.ctx, _recip_raw(self.ctx, self._c))

    def is_substitution(self) -> bool:
        """True when the series is x + c2*x^2 + ... (composable group element)."""
        if self.order < 1:
            return False
        return self._c[0] == self.ctx.zero and self._c[1] == self.ctx.one

    def _require_substitution(self):
        if not self.is_substitution():
            raise NotInSubstitutionGroup(
                "series must start 0, 1, ... (x + higher-order terms)"
            )

    def comp_inverse(self) -> "TruncSeries":
        """The compositional inverse h with self(h(x)) = h(self(x)) = x."""
        self._require_substitution()
        ctx = self.ctx
        m = self.order
        inv = [ctx.zero, ctx.one]
        for k in range(2, m + 1):
            # with inv_k provisionally 0, the x^k coefficient of self(inv) is
            # inv_k plus terms that only involve lower coefficients
            cand = inv + [ctx.zero] * (k + 1 - len(inv))
            val = _compose_raw(ctx, self._c[: k + 1], cand)[k]
            inv.append(ctx.reduce(-val))
        return TruncSeries._from_raw(ctx, inv + [ctx.zero] * (m + 1 - len(inv)))

    def iterate(self, n: int) -> "TruncSeries":
        """n-fold self-composition; n = 0 gives the identity x."""
        if not isinstance(n, int) or n < 0:
            raise ValueError("iteration count must be a non-negative integer")
        self._require_substitution()
        return TruncSeries._from_raw(self.ctx, _iterate_raw(self.ctx, self._c, n))

    def multiplicity(self):
        """Smallest k >= 2 with c_k != 0, or math.inf when none exists up to the order."""
        self._require_substitution()
        for k in range(2, self.order + 1):
            if self._c[k] != self.ctx.zero:
                return k
        return math.inf

    # -- reshaping -----------------------------------------------------------------

    def truncate(self, order: int) -> "TruncSeries":
        """Drop coefficients above ``order`` (which must not exceed the current order)."""
        if order > self.order or order < 0:
            raise OrderMismatch(
                f"cannot truncate an order-{self.order} series to order {order}"
            )
        return TruncSeries._from_raw(self.ctx, self._c[: order + 1])

    def shift_down(self, k: int = 1) -> "TruncSeries":
        """Divide by x^k; the first k coefficients must vanish.  Order drops by k."""
        if k < 0 or k > self.order:
            raise OrderMismatch(f"cannot shift an order-{self.order} series down by {k}")
        if any(v != self.ctx.zero for v in self._c[:k]):
            raise ValueError("series is not divisible by x^k")
        return TruncSeries._from_raw(self.ctx, self._c[k:])

    # -- serialization ---------------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "ring": self.ctx.name,
            "order": self.order,
            "coeffs": [self.ctx.format(v) for v in self._c],
        }

    @classmethod
    def from_json_dict(cls, data: dict, ctx: RingCtx | None = None) -> "TruncSeries":
        from .rings import parse_ring

        if ctx is None:
            ctx = parse_ring(data["ring"])
        return cls(ctx, data["coeffs"], order=data.get("order"))

    # -- display ----------------------------------------------------------------------

    def __str__(self):
        terms = []
        for k, v in enumerate(self._c):
            if v == self.ctx.zero:
                continue
            c = self.ctx.format(v)
            if k == 0:
                terms.append(c)
            elif k == 1:
                terms.append("x" if c == "1" else f"{c}*x")
            else:
                terms.append(f"x^{k}" if c == "1" else f"{c}*x^{k}")
        body = " + ".join(terms) if terms else "0"
        return body

    def __repr__(self):
        coeffs = ", ".join(self.ctx.format(v) for v in self._c)
        return f"TruncSeries({self.ctx.name}, [{coeffs}])"


# ---------------------------------------------------------------------------
# stock series
# ---------------------------------------------------------------------------


def geometric(ratio: RingElem, order: int) -> TruncSeries:
    """x + r*x^2 + r^2*x^3 + ... = x/(1 - r*x), truncated at ``order``.

    These series form a subgroup under composition, and composing two of
    them adds their ratios.
    """
    if not isinstance(ratio, RingElem):
        raise TypeError("ratio must be a RingElem (its ring fixes the series ring)")
    ctx = ratio.ctx
    coeffs = [ctx.zero]
    power = ctx.one
    for _ in range(order):
        coeffs.append(power)
        power = ctx.reduce(power * ratio.value)
    return TruncSeries._from_raw(ctx, coeffs[: order + 1])


def _sin_raw(order):
    out = []
    for k in range(order + 1):
        if k % 2 == 1:
            j = (k - 1) // 2
            out.append(QQ.coerce((-1) ** j) / factorial(k))
        else:
            out.append(QQ.zero)
    return out


def _cos_raw(order):
    out = []
    for k in range(order + 1):
        if k % 2 == 0:
            out.append(QQ.coerce((-1) ** (k // 2)) / factorial(k))
        else:
            out.append(QQ.zero)
    return out


def preset(name: str, order: int) -> TruncSeries:
    """Exact Taylor coefficients of a stock series over the rationals.

    Available: ``sin``, ``tan`` (computed as sin/cos, not hard-coded),
    ``expm1`` (e^x - 1), ``geom1`` (x/(1-x)), ``xover1mx2`` (x/(1-x)^2).
    """
    if name == "sin":
        return TruncSeries._from_raw(QQ, _sin_raw(order))
    if name == "tan":
        sin = TruncSeries._from_raw(QQ, _sin_raw(order))
        cos = TruncSeries._from_raw(QQ, _cos_raw(order))
        return sin * cos.recip()
    if name == "expm1":
        return TruncSeries._from_raw(
            QQ, [QQ.zero] + [QQ.coerce(1) / factorial(k) for k in range(1, order + 1)]
        )
    if name == "geom1":
        return geometric(QQ.element(1), order)
    if name == "xover1mx2":
        one_minus_x = TruncSeries(QQ, [1, -1], order=order)
        return TruncSeries.x(QQ, order) * (one_minus_x * one_minus_x).recip()
    raise ValueError(f"unknown preset {name!r}; expected one of {PRESET_NAMES}")
