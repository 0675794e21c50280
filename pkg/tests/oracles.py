"""Independent brute-force reference implementations used as test oracles.

These deliberately avoid the library's algorithm choices: multiplication is
the direct double loop, composition accumulates explicit powers of the inner
series term by term (no Horner), iteration composes sequentially (no binary
powering), scalar equations are solved by scanning the whole ring, and
matrix products are plain triple loops.
"""

from fractions import Fraction

from iterroots.rings import QQ, ZZ, ModRing


def naive_mul(ctx, a, b):
    n = len(a)
    out = [ctx.zero] * n
    for i in range(n):
        for j in range(n - i):
            out[i + j] = ctx.reduce(out[i + j] + a[i] * b[j])
    return out


def naive_compose(ctx, outer, inner):
    assert inner[0] == ctx.zero
    n = len(outer)
    out = [ctx.zero] * n
    out[0] = outer[0]
    power = [ctx.zero] * n
    power[0] = ctx.one
    for k in range(1, n):
        power = naive_mul(ctx, power, inner)
        for i in range(n):
            out[i] = ctx.reduce(out[i] + outer[k] * power[i])
    return out


def naive_iterate(ctx, g, n):
    res = [ctx.zero] * len(g)
    if len(g) > 1:
        res[1] = ctx.one
    for _ in range(n):
        res = naive_compose(ctx, res, g)
    return res


def brute_solve(ctx, n, y):
    """All x in a finite ring with n*x = y, by exhaustive scan."""
    y = ctx.reduce(y)
    return sorted(x for x in ctx.elements() if ctx.reduce(n * x) == y)


def naive_pair_columns(ctx, f_raw, g_raw):
    """Columns of the matrix of (f, g): column j holds f * g**j."""
    cols = [list(f_raw)]
    for _ in range(len(f_raw) - 1):
        cols.append(naive_mul(ctx, cols[-1], g_raw))
    return cols


def naive_mat_mul(ctx, rows_a, rows_b):
    n = len(rows_a)
    return [
        [
            ctx.reduce(sum(rows_a[i][k] * rows_b[k][j] for k in range(n)))
            for j in range(n)
        ]
        for i in range(n)
    ]


# ---------------------------------------------------------------------------
# random instances
# ---------------------------------------------------------------------------


def rand_raw(ctx, rng, span=3):
    if isinstance(ctx, ModRing):
        return rng.randrange(ctx.modulus)
    if ctx == QQ:
        return Fraction(rng.randint(-span, span), rng.randint(1, 3))
    if ctx == ZZ:
        return rng.randint(-span - 1, span + 1)
    raise AssertionError(ctx)


def rand_series(ctx, rng, order, *, group=True, span=3):
    from iterroots.series import TruncSeries

    if group:
        coeffs = [ctx.zero, ctx.one]
        start = 2
    else:
        coeffs = []
        start = 0
    for _ in range(start, order + 1):
        coeffs.append(ctx.coerce(rand_raw(ctx, rng, span)))
    return TruncSeries(ctx, coeffs, order=order)


def rand_unit_series(ctx, rng, order, span=3):
    """A random series with constant term 1 (a valid Riordan first component)."""
    from iterroots.series import TruncSeries

    coeffs = [ctx.one]
    for _ in range(order):
        coeffs.append(ctx.coerce(rand_raw(ctx, rng, span)))
    return TruncSeries(ctx, coeffs, order=order)
