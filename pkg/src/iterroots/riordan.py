"""Finite Riordan matrices with unit diagonal.

``RiordanMat.build(f, g)`` produces the (m+1) x (m+1) lower-triangular
matrix whose column j holds the coefficients of ``f * g**j``, for a
generating pair with f(0) = 1 and g = x + g2*x^2 + ....  The pair is stored
alongside the entries and the two views are cross-checked whenever a matrix
is constructed from independently computed entries (products, deletions,
extraction), so any internal disagreement surfaces immediately.

Key facts used throughout:

* matrix-vector action: ``R(f,g) . coeffs(H) = coeffs(f * H(g))``;
* product law: ``R(d,h) . R(f,g) = R(d * f(h), g(h))``;
* deleting row 0 and column 0 of ``R(f,g)`` leaves ``R(f*g/x, g)``.
"""

from __future__ import annotations

from .errors import (
    ContextMismatch,
    InternalInconsistency,
    NotRiordan,
    NotRiordanPair,
    OrderMismatch,
)
from .rings import RingCtx, RingElem
from .series import TruncSeries, _mul_raw


def _check_pair(f: TruncSeries, g: TruncSeries):
    if f.ctx != g.ctx:
        raise ContextMismatch(f"pair over {f.ctx.name} and {g.ctx.name}")
    if f.order != g.order:
        raise OrderMismatch(f"pair of orders {f.order} and {g.order}")
    ctx = f.ctx
    if f.raw()[0] != ctx.one:
        raise NotRiordanPair("f must have constant term 1")
    if g.raw()[0] != ctx.zero or (g.order >= 1 and g.raw()[1] != ctx.one):
        raise NotRiordanPair("g must be x + higher-order terms")


def _columns_from_pair(f: TruncSeries, g: TruncSeries):
    ctx = f.ctx
    cols = [list(f.raw())]
    for _ in range(f.order):
        cols.append(_mul_raw(ctx, cols[-1], g.raw()))
    return cols


class RiordanMat:
    """A unit-diagonal Riordan matrix of order m with its generating pair."""

    __slots__ = ("ctx", "f", "g", "_rows")

    def __init__(self, f: TruncSeries, g: TruncSeries, entries=None):
        _check_pair(f, g)
        ctx = f.ctx
        m = f.order
        cols = _columns_from_pair(f, g)
        rows = tuple(tuple(cols[j][i] for j in range(m + 1)) for i in range(m + 1))
        if entries is not None:
            for i in range(m + 1):
                for j in range(m + 1):
                    if ctx.reduce(entries[i][j]) != rows[i][j]:
                        raise InternalInconsistency(
                            f"entry ({i}, {j}) disagrees with the generating pair"
                        )
        self.ctx = ctx
        self.f = f
        self.g = g
        self._rows = rows

    # -- constructors -----------------------------------------------------------

    @classmethod
    def build(cls, f: TruncSeries, g: TruncSeries, order: int | None = None) -> "RiordanMat":
        """Matrix of the pair (f, g); ``order`` defaults to the pair's order."""
        if order is not None:
            if order > f.order or order > g.order:
                raise OrderMismatch(
                    f"pair only known to order {min(f.order, g.order)}, need {order}"
                )
            f = f.truncate(order)
            g = g.truncate(order)
        return cls(f, g)

    @classmethod
    def identity(cls, ctx: RingCtx, order: int) -> "RiordanMat":
        return cls(TruncSeries.one(ctx, order), TruncSeries.x(ctx, order))

    # -- accessors -----------------------------------------------------------------

    @property
    def order(self) -> int:
        return len(self._rows) - 1

    @property
    def pair(self) -> tuple[TruncSeries, TruncSeries]:
        return (self.f, self.g)

    def entry(self, i: int, j: int) -> RingElem:
        return RingElem(self.ctx, self._rows[i][j])

    def row(self, i: int) -> tuple:
        return tuple(RingElem(self.ctx, v) for v in self._rows[i])

    def raw_rows(self) -> tuple:
        return self._rows

    def __eq__(self, other):
        if not isinstance(other, RiordanMat):
            return NotImplemented
        if other.ctx != self.ctx:
            raise ContextMismatch("matrices over different rings")
        if other.order != self.order:
            raise OrderMismatch("matrices of different orders")
        return self._rows == other._rows

    __hash__ = None

    def __repr__(self):
        return (
            f"RiordanMat({self.ctx.name}, order={self.order}, "
            f"f={self.f!r}, g={self.g!r})"
        )

    # -- serialization ----------------------------------------------------------------

    def to_json_dict(self) -> dict:
        fmt = self.ctx.format
        return {
            "ring": self.ctx.name,
            "order": self.order,
            "rows": [[fmt(v) for v in row] for row in self._rows],
        }


def mat_mul(a: RiordanMat, b: RiordanMat) -> RiordanMat:
    """Matrix product; the resulting pair is recomputed from the product law
    and cross-checked against the entry-wise product."""
    if a.ctx != b.ctx:
        raise ContextMismatch("matrices over different rings")
    if a.order != b.order:
        raise OrderMismatch("matrices of different orders")
    ctx = a.ctx
    m = a.order
    ra, rb = a.raw_rows(), b.raw_rows()
    reduce = ctx.reduce
    entries = [
        [
            reduce(sum(ra[i][k] * rb[k][j] for k in range(j, i + 1)))
            if j <= i
            else ctx.zero
            for j in range(m + 1)
        ]
        for i in range(m + 1)
    ]
    new_f = a.f * b.f.compose(a.g)
    new_g = b.g.compose(a.g)
    return RiordanMat(new_f, new_g, entries=entries)


def apply_vector(a: RiordanMat, v) -> tuple:
    """The matrix-vector product a . v, as a tuple of RingElem.

    ``v`` may be a TruncSeries or any sequence of coercible coefficients of
    length order + 1.
    """
    ctx = a.ctx
    if isinstance(v, TruncSeries):
        if v.ctx != ctx:
            raise ContextMismatch("vector over a different ring")
        raw = v.raw()
    else:
        raw = [ctx.coerce(c) for c in v]
    if len(raw) != a.order + 1:
        raise OrderMismatch(
            f"vector of length {len(raw)} against an order-{a.order} matrix"
        )
    rows = a.raw_rows()
    reduce = ctx.reduce
    return tuple(
        RingElem(ctx, reduce(sum(rows[i][j] * raw[j] for j in range(i + 1))))
        for i in range(a.order + 1)
    )


def extract(ctx: RingCtx, rows) -> tuple[TruncSeries, TruncSeries]:
    """Recover the generating pair of a lower-triangular unit-diagonal matrix.

    Succeeds exactly when rebuilding from the candidate pair reproduces every
    entry; otherwise raises :class:`NotRiordan` carrying the first offending
    (row, column) position.
    """
    grid = [[ctx.coerce(v) for v in row] for row in rows]
    m = len(grid) - 1
    for i, row in enumerate(grid):
        if len(row) != m + 1:
            raise NotRiordan(f"row {i} has length {len(row)}, expected {m + 1}")
    for i in range(m + 1):
        if grid[i][i] != ctx.one:
            raise NotRiordan(f"diagonal entry ({i}, {i}) is not 1", position=(i, i))
        for j in range(i + 1, m + 1):
            if grid[i][j] != ctx.zero:
                raise NotRiordan(
                    f"entry ({i}, {j}) above the diagonal is nonzero", position=(i, j)
                )
    f = TruncSeries(ctx, [grid[i][0] for i in range(m + 1)])
    if m >= 1:
        col1 = TruncSeries(ctx, [grid[i][1] for i in range(m + 1)])
        g = col1 * f.recip()
    else:
        g = TruncSeries.x(ctx, 0)
    try:
        rebuilt = RiordanMat(f, g)
    except NotRiordanPair as exc:
        raise NotRiordan(f"column data does not form a valid pair: {exc}") from exc
    got = rebuilt.raw_rows()
    for i in range(m + 1):
        for j in range(m + 1):
            if got[i][j] != grid[i][j]:
                raise NotRiordan(
                    f"entry ({i}, {j}) is not reproduced by any pair", position=(i, j)
                )
    return (f, g)


def delete_row_col(a: RiordanMat) -> RiordanMat:
    """Delete row 0 and column 0; the result is the matrix of (f*g/x, g)."""
    if a.order < 1:
        raise OrderMismatch("cannot delete from an order-0 matrix")
    m = a.order
    new_f = a.f.truncate(m - 1) * a.g.shift_down()
    new_g = a.g.truncate(m - 1)
    entries = [row[1:] for row in a.raw_rows()[1:]]
    return RiordanMat(new_f, new_g, entries=entries)
