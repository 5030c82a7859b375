"""Builtin form library, so tests and the CLI never depend on external files.

Names accepted by :func:`builtin_form`:

* ``fermat`` -- identity Gram of dimension n+1 (the Fermat / Hermitian
  smooth model);
* ``hermitian-curve`` -- Gram of x0^q x1 + x0 x1^q - x2^(q+1);
* ``hermitian-surface`` -- Gram of x0^q x1 + x0 x1^q + x2^q x3 + x2 x3^q;
* ``standard:<sig>`` -- any standard type, e.g. ``standard:N2+1+1``;
* ``family:n2-degeneration:t=<v>`` -- Gram [[0,1],[t,0]];
* ``family:n4-degeneration:t=<v>`` -- the 4x4 one-parameter family
  [[0,1,t,0],[0,0,1,t],[0,0,0,1],[0,0,0,0]].

Scalars for ``t`` are written ``0``, an integer (prime-field value), or
``g^k`` (a power of the field generator).  Forms live over GF(q^4) by
default, large enough for every classification use.
"""

from __future__ import annotations

from .errors import GramParseError
from .forms import QBicForm, TypeSignature, standard_gram
from .gf import FieldCtx, make_field
from .linalg import MatrixGF


def default_ctx(p: int, e: int, m: int = 2) -> FieldCtx:
    return make_field(p, 2 * e * m)


def parse_scalar(ctx: FieldCtx, text: str) -> int:
    text = text.strip()
    if text.startswith("g^"):
        try:
            k = int(text[2:])
        except ValueError as exc:
            raise GramParseError(f"bad scalar {text!r}") from exc
        return ctx.pow_(ctx.generator, k)
    if text == "g":
        return ctx.generator
    try:
        return ctx.from_int(int(text))
    except ValueError as exc:
        raise GramParseError(f"bad scalar {text!r}") from exc


def fermat_form(p: int, e: int, n: int, m: int = 2) -> QBicForm:
    ctx = default_ctx(p, e, m)
    return QBicForm(ctx, e, MatrixGF.identity(ctx, n + 1))


def hermitian_curve_form(p: int, e: int, m: int = 2) -> QBicForm:
    ctx = default_ctx(p, e, m)
    B = MatrixGF.zeros(ctx, 3, 3)
    B.data[0][1] = 1
    B.data[1][0] = 1
    B.data[2][2] = ctx.neg(1)
    return QBicForm(ctx, e, B)


def hermitian_surface_form(p: int, e: int, m: int = 2) -> QBicForm:
    ctx = default_ctx(p, e, m)
    B = MatrixGF.zeros(ctx, 4, 4)
    for i in (0, 2):
        B.data[i][i + 1] = 1
        B.data[i + 1][i] = 1
    return QBicForm(ctx, e, B)


def n2_degeneration_form(p: int, e: int, t_code: int, ctx: FieldCtx | None = None) -> QBicForm:
    ctx = ctx or default_ctx(p, e)
    B = MatrixGF.zeros(ctx, 2, 2)
    B.data[0][1] = 1
    B.data[1][0] = t_code
    return QBicForm(ctx, e, B)


def n4_degeneration_form(p: int, e: int, t_code: int, ctx: FieldCtx | None = None) -> QBicForm:
    ctx = ctx or default_ctx(p, e)
    B = MatrixGF.zeros(ctx, 4, 4)
    B.data[0][1] = 1
    B.data[0][2] = t_code
    B.data[1][2] = 1
    B.data[1][3] = t_code
    B.data[2][3] = 1
    return QBicForm(ctx, e, B)


def builtin_form(name: str, p: int, e: int, n: int | None = None, m: int = 2) -> QBicForm:
    name = name.strip()
    if name == "fermat":
        if n is None:
            raise GramParseError("builtin 'fermat' needs n")
        return fermat_form(p, e, n, m)
    if name == "hermitian-curve":
        return hermitian_curve_form(p, e, m)
    if name == "hermitian-surface":
        return hermitian_surface_form(p, e, m)
    if name.startswith("standard:"):
        sig = TypeSignature.parse(name.partition(":")[2])
        return standard_gram(sig, default_ctx(p, e, m), e)
    if name.startswith("family:"):
        _, _, rest = name.partition(":")
        fam, _, arg = rest.partition(":")
        if not arg.startswith("t="):
            raise GramParseError(f"family builtin needs a parameter, got {name!r}")
        ctx = default_ctx(p, e, m)
        t = parse_scalar(ctx, arg[2:])
        if fam == "n2-degeneration":
            return n2_degeneration_form(p, e, t, ctx)
        if fam == "n4-degeneration":
            return n4_degeneration_form(p, e, t, ctx)
        raise GramParseError(f"unknown family {fam!r}")
    raise GramParseError(f"unknown builtin {name!r}")
