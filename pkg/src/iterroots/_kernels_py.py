"""Pure-Python kernels for truncated series arithmetic over Z/mZ.

Coefficient lists are plain ints reduced into [0, m).  These are the
fallback for (and the reference implementation of) the compiled kernels in
``_kernels_c``; both must produce identical results.
"""


def mul_mod(a, b, mod):
    """Truncated Cauchy product of equal-length coefficient lists."""
    n = len(a)
    out = [0] * n
    for i in range(n):
        ai = a[i]
        if ai:
            for j in range(n - i):
                out[i + j] = (out[i + j] + ai * b[j]) % mod
    return out


def compose_mod(outer, inner, mod):
    """Horner evaluation of outer(inner(x)); requires inner[0] == 0."""
    n = len(outer)
    res = [0] * n
    res[0] = outer[n - 1]
    for k in range(n - 2, -1, -1):
        res = mul_mod(res, inner, mod)
        # inner has no constant term, so res[0] is 0 after the product
        res[0] = outer[k] % mod
    return res


def iterate_mod(g, n, mod):
    """n-fold self-composition of g (g[0] == 0, any g[1]); n = 0 gives x."""
    size = len(g)
    res = [0] * size
    if size > 1:
        res[1] = 1
    base = list(g)
    k = n
    while k:
        if k & 1:
            res = compose_mod(res, base, mod)
        k >>= 1
        if k:
            base = compose_mod(base, base, mod)
    return res


def pow_table_mod(w, top, mod):
    """[w^2, w^3, ..., w^top], each truncated to len(w) coefficients."""
    out = []
    current = list(w)
    for _ in range(2, top + 1):
        current = mul_mod(current, w, mod)
        out.append(current)
    return out
