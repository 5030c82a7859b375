"""Gram-matrix file format (JSON).

A form is stored as ``{"field": {"p", "s", "modulus"}, "e", "dim",
"gram": [[...]]}`` with every scalar a length-s coefficient vector over
GF(p), constant term first.  The modulus (constant term first, monic)
must match the canonical one for (p, s), which keeps files reproducible
across machines.
"""

from __future__ import annotations

import json

from .errors import GramParseError
from .forms import QBicForm
from .gf import make_field
from .linalg import MatrixGF


def form_to_dict(f: QBicForm) -> dict:
    ctx = f.ctx
    return {
        "field": ctx.descriptor(),
        "e": f.e,
        "dim": f.dim,
        "gram": [[list(ctx.coeffs(a)) for a in row] for row in f.gram.data],
    }


def form_from_dict(data: dict) -> QBicForm:
    try:
        fd = data["field"]
        p, s, modulus = int(fd["p"]), int(fd["s"]), [int(c) for c in fd["modulus"]]
        e, dim = int(data["e"]), int(data["dim"])
        gram = data["gram"]
    except (KeyError, TypeError, ValueError) as exc:
        raise GramParseError(f"malformed Gram file: {exc}") from exc
    ctx = make_field(p, s)
    if tuple(modulus) != ctx.modulus:
        raise GramParseError(
            f"modulus {modulus} is not the canonical modulus {list(ctx.modulus)} for GF({p}^{s})"
        )
    if len(gram) != dim or any(len(row) != dim for row in gram):
        raise GramParseError("gram matrix has wrong shape")
    try:
        rows = [[ctx.from_coeffs([int(c) for c in entry]) for entry in row] for row in gram]
    except Exception as exc:
        raise GramParseError(f"bad scalar encoding: {exc}") from exc
    try:
        return QBicForm(ctx, e, MatrixGF(ctx, rows))
    except Exception as exc:
        raise GramParseError(str(exc)) from exc


def save_form(f: QBicForm, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(form_to_dict(f), fh, sort_keys=True, separators=(",", ":"))
        fh.write("\n")


def load_form(path) -> QBicForm:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise GramParseError(f"cannot read Gram file {path}: {exc}") from exc
    return form_from_dict(data)
