"""Vectorized field arithmetic on numpy arrays of element codes.

The enumeration cores (point counts, line counts, automorphism loops) are
the only hot paths in the package; everything here mirrors the scalar ops
of :class:`qbic.gf.FieldCtx` on int64 arrays so those loops stay exact
while running at numpy speed.
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx


def vmul(ctx: FieldCtx, a, b):
    n1 = ctx.order - 1
    out = np.mod((a - 1) + (b - 1), n1) + 1
    return np.where((a == 0) | (b == 0), 0, out)


def vadd(ctx: FieldCtx, a, b):
    n1 = ctx.order - 1
    d = np.mod(b - a, n1)
    z = ctx.zech[d]
    out = np.where(z == 0, 0, np.mod((a - 1) + (z - 1), n1) + 1)
    out = np.where(a == 0, b, out)
    return np.where(b == 0, a, out)


def vfrob(ctx: FieldCtx, a, q: int, k: int = 1):
    e = ctx.frob_exponent(q, k)
    out = np.mod((a - 1) * e, ctx.order - 1) + 1
    return np.where(a == 0, 0, out)


def vscale(ctx: FieldCtx, a, c: int):
    """Multiply an array by the scalar code c."""
    if c == 0:
        return np.zeros_like(a)
    out = np.mod((a - 1) + (c - 1), ctx.order - 1) + 1
    return np.where(a == 0, 0, out)


def vsum(ctx: FieldCtx, terms):
    """Field sum of a list of arrays."""
    acc = None
    for t in terms:
        acc = t if acc is None else vadd(ctx, acc, t)
    if acc is None:
        raise ValueError("empty sum")
    return acc


def digit_grid(n_values: int, n_digits: int, count: int | None = None):
    """All base-`n_values` digit tuples as an array of shape (count, n_digits).

    Row r holds the digits of r, most significant first, so rows come out in
    lexicographic order.
    """
    total = n_values**n_digits
    if count is None:
        count = total
    r = np.arange(count, dtype=np.int64)
    cols = []
    for k in range(n_digits - 1, -1, -1):
        cols.append((r // n_values**k) % n_values)
    return np.stack(cols, axis=1) if cols else np.zeros((count, 0), dtype=np.int64)
