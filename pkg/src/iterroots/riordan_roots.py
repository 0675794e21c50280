"""Roots of unit-diagonal Riordan matrices.

``R(a, w)`` is an order-n root of ``R(f, g)`` exactly when w is an order-n
iterative root of g and the first components satisfy the product equation

    a * a(w) * a(w(w)) * ... * a(w iterated n-1 times) = f.

The solver therefore runs in two stages: first the series root w (via
:mod:`iterroots.subst_roots`), then the cofactor a, coefficient by
coefficient.  Since every iterate of w has unit linear term and a(0) = 1,
the unknown a_k enters the degree-k coefficient of the product exactly n
times with unit multiplier, so each step is again a scalar equation
``n*a_k = rhs``.  Results are re-verified by raising the candidate back to
the n-th power (by repeated matrix products *and* by the product-law
series formula, which must agree) before they are returned.

The stabilizer view is provided as an independent predicate: ``R(f, g)``
stabilizes a coefficient column v when the matrix fixes v, and for any g
and any v with v_0 = 1 there is exactly one series d with d(0) = 1 such
that ``R(d, g)`` stabilizes v, namely d = H / H(g) for the series H carried
by v.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ContextMismatch,
    InternalInconsistency,
    NotRiordanPair,
    OrderMismatch,
)
from .rings import RingElem
from .riordan import RiordanMat, apply_vector, mat_mul
from .series import TruncSeries, _compose_raw, _mul_raw
from .subst_roots import DEFAULT_BRANCH_CAP, _solve_limit, iter_root


@dataclass(frozen=True)
class RiordanRootResult:
    """Outcome of a Riordan matrix root extraction.

    ``stage`` tells where an obstruction arose: solving the series root
    ("omega") or solving the cofactor product equation ("alpha").
    Branch results hold (alpha, omega) pairs.
    """

    status: str
    alpha: TruncSeries | None = None
    omega: TruncSeries | None = None
    stage: str | None = None
    at_index: int | None = None
    rhs: RingElem | None = None
    branches: tuple = ()
    complete: bool | None = None

    @classmethod
    def unique(cls, alpha, omega) -> "RiordanRootResult":
        return cls("unique", alpha=alpha, omega=omega)

    @classmethod
    def no_solution(cls, stage, at_index, rhs) -> "RiordanRootResult":
        return cls("no_solution", stage=stage, at_index=at_index, rhs=rhs)

    @classmethod
    def branched(cls, pairs, complete) -> "RiordanRootResult":
        return cls("branches", branches=tuple(pairs), complete=complete)

    @property
    def is_unique(self) -> bool:
        return self.status == "unique"


def _check_inputs(f: TruncSeries, g: TruncSeries, n: int):
    if f.ctx != g.ctx:
        raise ContextMismatch(f"pair over {f.ctx.name} and {g.ctx.name}")
    if f.order != g.order:
        raise OrderMismatch(f"pair of orders {f.order} and {g.order}")
    if f.raw()[0] != f.ctx.one:
        raise NotRiordanPair("f must have constant term 1")
    g._require_substitution()
    if not isinstance(n, int) or n < 1:
        raise ValueError("power/root order n must be a positive integer")


# ---------------------------------------------------------------------------
# powers
# ---------------------------------------------------------------------------


def riordan_power(f: TruncSeries, g: TruncSeries, n: int) -> tuple[TruncSeries, TruncSeries]:
    """The generating pair of the n-th power of the matrix of (f, g).

    Computed twice: by repeated matrix products and by the series formula
    (product of f composed with the iterates of g, together with the n-fold
    iterate of g).  The two must agree exactly.
    """
    if n == 0:
        _check_inputs(f, g, 1)
        ctx = f.ctx
        return (TruncSeries.one(ctx, f.order), TruncSeries.x(ctx, f.order))
    _check_inputs(f, g, n)
    ctx = f.ctx
    m = f.order
    mat = RiordanMat.build(f, g)
    power = RiordanMat.identity(ctx, m)
    for _ in range(n):
        power = mat_mul(power, mat)
    series_g = g.iterate(n)
    series_f = TruncSeries.one(ctx, m)
    iterate_j = TruncSeries.x(ctx, m)
    for _ in range(n):
        series_f = series_f * f.compose(iterate_j)
        iterate_j = g.compose(iterate_j)
    if power.f != series_f or power.g != series_g:
        raise InternalInconsistency("matrix power and series power disagree")
    return (series_f, series_g)


# ---------------------------------------------------------------------------
# cofactor equation
# ---------------------------------------------------------------------------


def _alpha_rhs(ctx, f_raw, omega_iters, prefix, k, n):
    """f_k minus the degree-k coefficient of the stage-2 product with the
    unknown cofactor coefficient set to zero."""
    cand = list(prefix) + [ctx.zero] * (k + 1 - len(prefix))
    acc = cand
    for j in range(1, n):
        factor = _compose_raw(ctx, cand, omega_iters[j][: k + 1])
        acc = _mul_raw(ctx, acc, factor)
    return ctx.reduce(f_raw[k] - acc[k])


class _AlphaCap(Exception):
    pass


def _solve_alpha(f: TruncSeries, omega: TruncSeries, n, collect, cap):
    """Walk the cofactor recursion, appending raw coefficient tuples of every
    solution to ``collect`` (branching over multi-solution scalar steps).

    Returns ``(obstruction, branched)``: obstruction is the (index, rhs) of
    the first unsolvable step on a never-branched walk (None otherwise), and
    branched tells whether any step had several solutions.  Raises
    :class:`_AlphaCap` when more than ``cap`` solutions would be collected.
    """
    ctx = f.ctx
    m = f.order
    f_raw = list(f.raw())
    omega_iters = [list(TruncSeries.x(ctx, m).raw())]
    for _ in range(1, n):
        omega_iters.append(_compose_raw(ctx, omega.raw(), omega_iters[-1]))
    limit = _solve_limit()
    state = {"branched": False}

    def walk(prefix, k):
        if k > m:
            if len(collect) >= cap:
                raise _AlphaCap()
            collect.append(tuple(prefix))
            return None
        rhs = _alpha_rhs(ctx, f_raw, omega_iters, prefix, k, n)
        status, sols, _complete = ctx.solve_linear_raw(n, rhs, limit)
        if status == "none":
            return (k, RingElem(ctx, rhs))
        if status == "unique":
            return walk(prefix + [sols[0]], k + 1)
        state["branched"] = True
        for s in sols:
            walk(prefix + [s], k + 1)
        return None

    obstruction = walk([ctx.one], 1)
    if state["branched"]:
        obstruction = None
    return obstruction, state["branched"]


# ---------------------------------------------------------------------------
# root extraction
# ---------------------------------------------------------------------------


def riordan_root(
    f: TruncSeries,
    g: TruncSeries,
    n: int,
    *,
    branch: bool = True,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> RiordanRootResult:
    """Order-n root of the Riordan matrix of (f, g).

    Stage 1 extracts the series root of g; stage 2 solves the cofactor
    product equation.  Unique results are verified by squaring (etc.) back
    to the input pair before they are returned; over finite rings both
    stages branch and all verified (alpha, omega) pairs are collected.
    """
    _check_inputs(f, g, n)
    if n < 2:
        raise ValueError("root order n must be an integer >= 2")
    ctx = f.ctx

    stage1 = iter_root(g, n, branch=branch, branch_cap=branch_cap)
    if stage1.status == "no_solution":
        return RiordanRootResult.no_solution("omega", stage1.at_index, stage1.rhs)
    omegas = (stage1.root,) if stage1.is_unique else stage1.branches

    pairs: list = []
    capped = False
    obstruction = None
    any_branching = not stage1.is_unique
    try:
        for omega in omegas:
            collected: list = []
            obs, branched = _solve_alpha(f, omega, n, collected, cap=branch_cap)
            any_branching = any_branching or branched
            if obs is not None and obstruction is None:
                obstruction = obs
            for a_raw in sorted(collected):
                if len(pairs) >= branch_cap:
                    raise _AlphaCap()
                alpha = TruncSeries._from_raw(ctx, a_raw)
                _verify_pair(alpha, omega, f, g, n)
                pairs.append((alpha, omega))
    except _AlphaCap:
        capped = True

    if not any_branching:
        # every scalar step had at most one solution
        if not pairs:
            return RiordanRootResult.no_solution("alpha", *obstruction)
        return RiordanRootResult.unique(pairs[0][0], pairs[0][1])
    complete = (stage1.is_unique or bool(stage1.complete)) and not capped
    return RiordanRootResult.branched(tuple(pairs), complete)


def _verify_pair(alpha, omega, f, g, n):
    got_f, got_g = riordan_power(alpha, omega, n)
    if got_f != f or got_g != g:
        raise InternalInconsistency("candidate root fails the power check")


# ---------------------------------------------------------------------------
# stabilizers
# ---------------------------------------------------------------------------


def _column_raws(ctx, v):
    if isinstance(v, TruncSeries):
        if v.ctx != ctx:
            raise ContextMismatch("column vector over a different ring")
        return list(v.raw())
    return [ctx.coerce(c) for c in v]


def stabilizes(f: TruncSeries, g: TruncSeries, v) -> bool:
    """True when the matrix of (f, g) fixes the coefficient column v."""
    _check_inputs(f, g, 1)
    ctx = f.ctx
    raw = _column_raws(ctx, v)
    if len(raw) != f.order + 1:
        raise OrderMismatch(
            f"column of length {len(raw)} against order {f.order}"
        )
    image = apply_vector(RiordanMat.build(f, g), raw)
    return all(e.value == c for e, c in zip(image, raw))


def stabilizer_cofactor(g: TruncSeries, v) -> TruncSeries:
    """The unique series d with d(0) = 1 making the matrix of (d, g) fix v.

    Requires v_0 = 1; computed as d = H / H(g) where H is the series whose
    coefficients are v, and checked against the fixed-column predicate
    before returning.
    """
    g._require_substitution()
    ctx = g.ctx
    raw = _column_raws(ctx, v)
    if len(raw) != g.order + 1:
        raise OrderMismatch(f"column of length {len(raw)} against order {g.order}")
    if raw[0] != ctx.one:
        raise ValueError("the column must have leading entry 1")
    series_h = TruncSeries._from_raw(ctx, raw)
    d = series_h * series_h.compose(g).recip()
    if not stabilizes(d, g, raw):
        raise InternalInconsistency("computed cofactor does not fix the column")
    return d
