"""Iterative roots in the substitution group of formal power series.

An order-n root of ``g = x + g2*x^2 + ...`` is a series ``w`` in the same
group whose n-fold composition equals g.  Writing ``w = x + w2*x^2 + ...``,
the x^k coefficient of the n-fold iterate is ``n*w_k`` plus a polynomial in
``w_2 .. w_{k-1}``, so roots are computed one coefficient at a time by
solving the scalar equation ``n*w_k = rhs_k`` in the coefficient ring.

Two independent evaluators of ``rhs_k`` are provided and must agree:

* :func:`iter_root` reads the right-hand side off triangular matrix data
  attached to the partial root: the row and column slices of its associated
  matrix together with a weighted sum of powers of the trailing submatrix
  obtained by twice deleting the leading row and column (the weights run
  1, 2, ..., n-1, ending at n-1 times the identity);
* :func:`iter_root_substitution` zeroes the unknown coefficient and
  substitutes the partial root into the n-fold composition directly.

Over a field of characteristic 0 every scalar step has exactly one solution,
so every series has exactly one root of each order.  Over the integers a
step can be obstructed (reported with its index); over Z/mZ a step can have
several solutions, in which case the solvers enumerate branches depth-first,
smallest residue first, up to a cap.  Every root returned by any solver is
re-verified against the n-fold composition before it is handed back.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import backend
from .errors import (
    BranchingUnsupported,
    ContextMismatch,
    EnumerationBoundExceeded,
    InternalInconsistency,
)
from .rings import DEFAULT_SOLUTION_LIMIT, ZZ, RingElem, Zmod
from .series import TruncSeries, _iterate_raw, _mul_raw

DEFAULT_BRANCH_CAP = 4096
MOD2_ENUMERATION_MAX_ORDER = 16


@dataclass(frozen=True)
class RootResult:
    """Outcome of a root extraction in the substitution group.

    ``status`` is ``"unique"`` (one verified root), ``"no_solution"`` (the
    recursion hit an unsolvable scalar step at ``at_index`` with right-hand
    side ``rhs``), or ``"branches"`` (finite-ring enumeration; ``complete``
    tells whether the whole branch tree was explored).
    """

    status: str
    root: TruncSeries | None = None
    at_index: int | None = None
    rhs: RingElem | None = None
    branches: tuple = ()
    complete: bool | None = None

    @classmethod
    def unique(cls, root: TruncSeries) -> "RootResult":
        return cls("unique", root=root)

    @classmethod
    def no_solution(cls, at_index: int, rhs: RingElem) -> "RootResult":
        return cls("no_solution", at_index=at_index, rhs=rhs)

    @classmethod
    def branched(cls, roots, complete: bool) -> "RootResult":
        return cls("branches", branches=tuple(roots), complete=complete)

    @property
    def is_unique(self) -> bool:
        return self.status == "unique"


@dataclass(frozen=True)
class FeasibilityStep:
    """One step of the integer square-root recursion: can 2*w_k = rhs be solved?"""

    index: int
    rhs: RingElem
    solvable: bool
    chosen: RingElem | None


@dataclass(frozen=True)
class FeasibilityLedger:
    """Per-index solvability of the square-root recursion over the integers.

    ``overall`` is True exactly when every index up to the truncation order
    is solvable.  ``all_divisible_by_four`` reports the separate sufficient
    condition that every coefficient g_2..g_m is divisible by 4 (which
    forces an integer root with all-even coefficients).
    """

    steps: tuple
    overall: bool
    all_divisible_by_four: bool


# ---------------------------------------------------------------------------
# right-hand-side evaluators (raw values; prefix = [0, 1, w2, ..., w_{k-1}])
# ---------------------------------------------------------------------------


def _power_table(ctx, prefix, k):
    """pows[j][i] = x^i coefficient of w^j for the padded partial root,
    for j up to k - 1.

    Entries with i - j + 1 <= len(prefix) - 1 only involve known
    coefficients; the callers below never read beyond that range.
    """
    from .series import _kernel_mod

    padded = list(prefix) + [ctx.zero] * (k + 1 - len(prefix))
    mod = _kernel_mod(ctx)
    if mod is not None:
        return [None, padded] + backend.pow_table_mod(padded, k - 1, mod)
    pows = [None, padded]
    for _ in range(2, k):
        pows.append(_mul_raw(ctx, pows[-1], padded))
    return pows


def _rhs_from_slices(ctx, g_raw, prefix, k, n, entry):
    """g_k minus the known part of the x^k coefficient of the n-fold
    iterate, assembled from matrix slices of the partial root.

    ``entry(j, i)`` must return the x^i coefficient of the j-th power of the
    partial root, for 2 <= j <= k - 1 and i <= k.
    """
    col = prefix[2:k]
    row = [entry(j, k) for j in range(2, k)]
    size = k - 2
    sub = [[entry(j + 2, i + 2) for j in range(size)] for i in range(size)]
    reduce = ctx.reduce
    # weighted sum over powers of the submatrix applied to col:
    # weight n-1 on the identity, down to weight 1 on the (n-2)-nd power
    total = [reduce((n - 1) * c) for c in col]
    vec = col
    for s in range(1, n - 1):
        vec = [
            reduce(sum(sub[i][j] * vec[j] for j in range(size))) for i in range(size)
        ]
        weight = n - 1 - s
        total = [reduce(t + weight * v) for t, v in zip(total, vec)]
    acc = sum(r * t for r, t in zip(row, total))
    return reduce(g_raw[k] - acc)


def _rhs_matrix(ctx, g_raw, prefix, k, n):
    """Stateless matrix-slice evaluator (used by the branch search, whose
    prefixes change non-monotonically)."""
    if k == 2:
        return g_raw[2]
    pows = _power_table(ctx, prefix, k)
    return _rhs_from_slices(ctx, g_raw, prefix, k, n, lambda j, i: pows[j][i])


def _matrix_walk_rhs(ctx, order):
    """Incremental matrix-slice evaluator for a single linear walk.

    The linear walk only ever appends to its prefix, so the power table can
    grow in place: each power's x^i coefficient depends on root coefficients
    up to index i - j + 1, all of which are settled before step i.
    """
    table: dict[int, list] = {}
    zero = ctx.zero

    def fill(w, j, upto):
        prev = table.get(j - 1) if j > 2 else w
        coeffs = table.setdefault(j, [zero] * j + [ctx.one])
        for i in range(len(coeffs), upto + 1):
            if i < j:
                coeffs.append(zero)
                continue
            acc = zero
            for t in range(j - 1, i):
                pt = prev[t]
                if pt:
                    ws = w[i - t]
                    if ws:
                        acc = acc + pt * ws
            coeffs.append(ctx.reduce(acc))

    def rhs(ctx2, g_raw, prefix, k, n):
        if k == 2:
            return g_raw[2]
        for j in range(2, k):
            fill(prefix, j, k)
        return _rhs_from_slices(
            ctx, g_raw, prefix, k, n, lambda j, i: table[j][i]
        )

    return rhs


def _rhs_subst(ctx, g_raw, prefix, k, n):
    """g_k minus the x^k coefficient of the n-fold iterate of the partial
    root with the unknown coefficient set to zero."""
    cand = list(prefix) + [ctx.zero] * (k + 1 - len(prefix))
    t = _iterate_raw(ctx, cand, n)[k]
    return ctx.reduce(g_raw[k] - t)


# ---------------------------------------------------------------------------
# solver core
# ---------------------------------------------------------------------------


def _verify_root(w_raw, n, g: TruncSeries) -> bool:
    return _iterate_raw(g.ctx, w_raw, n) == list(g.raw())


def _checked_unique(ctx, w_raw, n, g) -> RootResult:
    if not _verify_root(w_raw, n, g):
        raise InternalInconsistency("solved root fails the n-fold composition check")
    return RootResult.unique(TruncSeries._from_raw(ctx, w_raw))


class _CapReached(Exception):
    pass


def _branch_dfs(g: TruncSeries, n, cap, rhs_fn, solve_limit) -> RootResult:
    ctx = g.ctx
    m = g.order
    g_raw = list(g.raw())
    found: list[tuple] = []
    state = {"complete": True}

    def walk(prefix, k):
        if k > m:
            if not _verify_root(prefix, n, g):
                raise InternalInconsistency(
                    "branch candidate fails the n-fold composition check"
                )
            if len(found) >= cap:
                state["complete"] = False
                raise _CapReached()
            found.append(tuple(prefix))
            return
        rhs = rhs_fn(ctx, g_raw, prefix, k, n)
        status, sols, complete = ctx.solve_linear_raw(n, rhs, solve_limit)
        if not complete:
            state["complete"] = False
        for s in sols:
            walk(prefix + [s], k + 1)

    try:
        walk([ctx.zero, ctx.one], 2)
    except _CapReached:
        pass
    roots = tuple(TruncSeries._from_raw(ctx, w) for w in sorted(found))
    return RootResult.branched(roots, state["complete"])


def _solve(g: TruncSeries, n, walk_rhs, dfs_rhs, branch, cap, solve_limit) -> RootResult:
    g._require_substitution()
    if not isinstance(n, int) or n < 2:
        raise ValueError("root order n must be an integer >= 2")
    ctx = g.ctx
    m = g.order
    g_raw = list(g.raw())
    prefix = [ctx.zero, ctx.one]
    for k in range(2, m + 1):
        rhs = walk_rhs(ctx, g_raw, prefix, k, n)
        status, sols, _complete = ctx.solve_linear_raw(n, rhs, solve_limit)
        if status == "none":
            return RootResult.no_solution(k, RingElem(ctx, rhs))
        if status == "many":
            if not branch:
                return RootResult.branched((), complete=False)
            return _branch_dfs(g, n, cap, dfs_rhs, solve_limit)
        prefix.append(sols[0])
    return _checked_unique(ctx, prefix, n, g)


def iter_root(
    g: TruncSeries,
    n: int,
    *,
    branch: bool = True,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> RootResult:
    """Order-n root of g, solving each coefficient from matrix slice data.

    Over Q the result is always unique; over Z the first obstructed index is
    reported; over a finite ring a scalar step with several solutions
    switches to depth-first branch enumeration (or, with ``branch=False``,
    returns an empty incomplete branch result).
    """
    walk_rhs = _matrix_walk_rhs(g.ctx, g.order)
    return _solve(g, n, walk_rhs, _rhs_matrix, branch, branch_cap, _solve_limit())


def iter_root_substitution(
    g: TruncSeries,
    n: int,
    *,
    branch: bool = True,
    branch_cap: int = DEFAULT_BRANCH_CAP,
) -> RootResult:
    """Order-n root of g, solving each coefficient by direct substitution.

    Independent of :func:`iter_root` (no shared right-hand-side code); the
    two must produce identical outcomes on every input.
    """
    return _solve(g, n, _rhs_subst, _rhs_subst, branch, branch_cap, _solve_limit())


def branch_roots(g: TruncSeries, n: int, cap: int) -> RootResult:
    """All order-n roots of g over a finite ring, by depth-first search over
    every solvable scalar branch; stops with ``complete=False`` past ``cap``."""
    if not g.ctx.is_finite:
        raise BranchingUnsupported(f"{g.ctx.name} is not a finite ring")
    g._require_substitution()
    if not isinstance(n, int) or n < 2:
        raise ValueError("root order n must be an integer >= 2")
    if not isinstance(cap, int) or cap < 1:
        raise ValueError("cap must be a positive integer")
    return _branch_dfs(g, n, cap, _rhs_matrix, _solve_limit())


def _solve_limit() -> int:
    return DEFAULT_SOLUTION_LIMIT


# ---------------------------------------------------------------------------
# integer feasibility and mod-2 classification
# ---------------------------------------------------------------------------


def zroot_feasibility(g: TruncSeries) -> FeasibilityLedger:
    """Run the integer square-root recursion, recording per-index solvability.

    Stops at the first odd right-hand side (later indices depend on earlier
    choices, so a single obstruction already settles infeasibility).
    """
    if g.ctx != ZZ:
        raise ContextMismatch("feasibility analysis runs over the integer ring")
    g._require_substitution()
    m = g.order
    g_raw = list(g.raw())
    steps = []
    prefix = [0, 1]
    feasible_so_far = True
    walk_rhs = _matrix_walk_rhs(ZZ, m)
    for k in range(2, m + 1):
        rhs = walk_rhs(ZZ, g_raw, prefix, k, 2)
        solvable = rhs % 2 == 0
        chosen = RingElem(ZZ, rhs // 2) if solvable else None
        steps.append(FeasibilityStep(k, RingElem(ZZ, rhs), solvable, chosen))
        if not solvable:
            feasible_so_far = False
            break
        prefix.append(rhs // 2)
    overall = feasible_so_far and (len(steps) == max(m - 1, 0))
    mod4 = all(g_raw[k] % 4 == 0 for k in range(2, m + 1))
    return FeasibilityLedger(tuple(steps), overall, mod4)


def mod2_square_root_classes(
    order: int, *, max_order: int = MOD2_ENUMERATION_MAX_ORDER
) -> dict:
    """Exhaustive square classification over Z/2Z at the given order.

    Every candidate w = x + w2*x^2 + ... + w_m*x^m (2^(m-1) of them) is
    squared under composition; the result maps each reachable coefficient
    tuple (g2, ..., g_m) to the sorted tuple of its square roots
    (w2, ..., w_m).  Keys are sorted, so the table is deterministic.
    """
    if not isinstance(order, int) or order < 1:
        raise ValueError("order must be a positive integer")
    if order > max_order:
        raise EnumerationBoundExceeded(
            f"order {order} needs 2^{order - 1} candidates; bound is {max_order}"
        )
    free = order - 1
    table: dict[tuple, list] = {}
    for bits in range(2**free):
        w = [0, 1] + [(bits >> i) & 1 for i in range(free)]
        sq = backend.compose_mod(w, w, 2)
        table.setdefault(tuple(sq[2:]), []).append(tuple(w[2:]))
    return {key: tuple(sorted(table[key])) for key in sorted(table)}


def mod2_series(bits, order: int) -> TruncSeries:
    """Helper: the Z/2Z series x + sum(bits[i] * x^(i+2)) at the given order."""
    return TruncSeries(Zmod(2), [0, 1, *bits], order=order)
