"""Workspace documents: the JSON format the CLI ingests and emits.

A document carries one algebra (and optionally a second), optional bimodule
action data, named operator matrices, and an optional deformation generator.
Rationals are bare integers or "p/q" strings.  Parsing is strict: unknown
keys, inconsistent dimensions, duplicate labels and malformed rationals are
all errors naming the offending path.  Rendering is canonical, so documents
written by render round-trip byte-identically.
"""

from __future__ import annotations

import json
from typing import Optional, Sequence

from .algebra import Algebra
from .linalg import (LinAlgError, Matrix, MultiMap, parse_rational,
                     render_rational)

__all__ = [
    "DocumentError",
    "WorkspaceDocument",
    "AlgebraSection",
    "BimoduleSection",
    "DeformationSection",
    "parse_document",
    "render_document",
    "load_document",
]


class DocumentError(ValueError):
    """Malformed workspace document; the message names the offending path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _require_keys(obj: dict, path: str, required: Sequence[str],
                  optional: Sequence[str] = ()):
    if not isinstance(obj, dict):
        raise DocumentError(path, f"expected an object, got {type(obj).__name__}")
    for key in required:
        if key not in obj:
            raise DocumentError(path, f"missing required key {key!r}")
    allowed = set(required) | set(optional)
    for key in obj:
        if key not in allowed:
            raise DocumentError(f"{path}.{key}", "unknown key")


def _parse_rat(value, path: str):
    try:
        return parse_rational(value)
    except LinAlgError as exc:
        raise DocumentError(path, str(exc)) from None


def _parse_matrix(value, path: str, rows: Optional[int] = None,
                  cols: Optional[int] = None) -> Matrix:
    if not isinstance(value, list) or not value or not all(
            isinstance(r, list) for r in value):
        raise DocumentError(path, "expected a non-empty list of rows")
    ncols = len(value[0])
    data = []
    for i, row in enumerate(value):
        if len(row) != ncols:
            raise DocumentError(f"{path}[{i}]", "ragged row")
        for j, entry in enumerate(row):
            data.append(_parse_rat(entry, f"{path}[{i}][{j}]"))
    m = Matrix(len(value), ncols, data)
    if rows is not None and m.rows != rows:
        raise DocumentError(path, f"expected {rows} rows, got {m.rows}")
    if cols is not None and m.cols != cols:
        raise DocumentError(path, f"expected {cols} columns, got {m.cols}")
    return m


class AlgebraSection:
    """Parsed algebra data: dimension, labels, and the product tensor."""

    def __init__(self, dim: int, basis: tuple, algebra: Algebra):
        self.dim = dim
        self.basis = basis
        self.algebra = algebra


class BimoduleSection:
    """Raw action data; bimodule axioms are checked by commands, not here."""

    def __init__(self, mdim: int, left: tuple, right: tuple):
        self.mdim = mdim
        self.left = left
        self.right = right


class DeformationSection:
    def __init__(self, omega: MultiMap, phi: tuple, psi: tuple):
        self.omega = omega
        self.phi = phi
        self.psi = psi


class WorkspaceDocument:
    def __init__(self, field: str, algebra: AlgebraSection,
                 algebra2: Optional[AlgebraSection],
                 bimodule: Optional[BimoduleSection],
                 bimodule2: Optional[BimoduleSection],
                 operators: dict,
                 deformation: Optional[DeformationSection]):
        self.field = field
        self.algebra = algebra
        self.algebra2 = algebra2
        self.bimodule = bimodule
        self.bimodule2 = bimodule2
        self.operators = operators
        self.deformation = deformation


def _parse_sparse_bilinear(obj, path: str, basis: Sequence[str]) -> MultiMap:
    """{"ei,ej": {"ek": coeff}} -> arity-2 tensor; absent entries are zero."""
    dim = len(basis)
    index = {label: i for i, label in enumerate(basis)}
    flat = [0] * (dim ** 3)
    if not isinstance(obj, dict):
        raise DocumentError(path, "expected an object of sparse products")
    for pair_key in sorted(obj):
        parts = pair_key.split(",")
        if len(parts) != 2 or parts[0] not in index or parts[1] not in index:
            raise DocumentError(f"{path}.{pair_key}",
                                "key must be two basis labels joined by a comma")
        i, j = index[parts[0]], index[parts[1]]
        img = obj[pair_key]
        if not isinstance(img, dict):
            raise DocumentError(f"{path}.{pair_key}", "expected an object")
        for out_label in sorted(img):
            if out_label not in index:
                raise DocumentError(f"{path}.{pair_key}.{out_label}",
                                    "unknown basis label")
            k = index[out_label]
            flat[(i * dim + j) * dim + k] = _parse_rat(
                img[out_label], f"{path}.{pair_key}.{out_label}")
    return MultiMap(2, dim, flat)


def _render_sparse_bilinear(mul: MultiMap, basis: Sequence[str]) -> dict:
    out = {}
    dim = mul.dim
    for i in range(dim):
        for j in range(dim):
            val = mul.value((i, j))
            img = {basis[k]: render_rational(val[k])
                   for k in range(dim) if val[k] != 0}
            if img:
                out[f"{basis[i]},{basis[j]}"] = img
    return out


def _parse_algebra(obj, path: str) -> AlgebraSection:
    _require_keys(obj, path, ["dim", "basis", "products"])
    dim = obj["dim"]
    if not isinstance(dim, int) or dim < 0:
        raise DocumentError(f"{path}.dim", "expected a nonnegative integer")
    basis = obj["basis"]
    if (not isinstance(basis, list) or len(basis) != dim
            or not all(isinstance(b, str) for b in basis)):
        raise DocumentError(f"{path}.basis", f"expected {dim} string labels")
    if len(set(basis)) != dim:
        raise DocumentError(f"{path}.basis", "duplicate basis label")
    mul = _parse_sparse_bilinear(obj["products"], f"{path}.products", basis)
    return AlgebraSection(dim, tuple(basis), Algebra(mul, basis))


def _parse_bimodule(obj, path: str, dim: int) -> BimoduleSection:
    _require_keys(obj, path, ["mdim", "l", "r"])
    mdim = obj["mdim"]
    if not isinstance(mdim, int) or mdim < 0:
        raise DocumentError(f"{path}.mdim", "expected a nonnegative integer")
    actions = {}
    for key in ("l", "r"):
        mats = obj[key]
        if not isinstance(mats, list) or len(mats) != dim:
            raise DocumentError(f"{path}.{key}",
                                f"expected {dim} matrices (one per basis element)")
        actions[key] = tuple(_parse_matrix(m, f"{path}.{key}[{i}]", mdim, mdim)
                             for i, m in enumerate(mats))
    return BimoduleSection(mdim, actions["l"], actions["r"])


def _parse_deformation(obj, path: str, basis: Sequence[str], dim: int,
                       mdim: int) -> DeformationSection:
    _require_keys(obj, path, ["omega", "phi", "psi"])
    omega = _parse_sparse_bilinear(obj["omega"], f"{path}.omega", basis)
    mats = {}
    for key in ("phi", "psi"):
        lst = obj[key]
        if not isinstance(lst, list) or len(lst) != dim:
            raise DocumentError(f"{path}.{key}", f"expected {dim} matrices")
        mats[key] = tuple(_parse_matrix(m, f"{path}.{key}[{i}]", mdim, mdim)
                          for i, m in enumerate(lst))
    return DeformationSection(omega, mats["phi"], mats["psi"])


def parse_document(text: str) -> WorkspaceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError("$", f"invalid JSON: {exc}") from None
    _require_keys(raw, "$", ["field", "algebra"],
                  ["algebra2", "bimodule", "bimodule2", "operators", "deformation"])
    if raw["field"] != "Q":
        raise DocumentError("$.field", "only the rational field 'Q' is supported")
    algebra = _parse_algebra(raw["algebra"], "$.algebra")
    algebra2 = (_parse_algebra(raw["algebra2"], "$.algebra2")
                if "algebra2" in raw else None)
    bimodule = (_parse_bimodule(raw["bimodule"], "$.bimodule", algebra.dim)
                if "bimodule" in raw else None)
    if "bimodule2" in raw:
        if algebra2 is None:
            raise DocumentError("$.bimodule2", "bimodule2 requires algebra2")
        bimodule2 = _parse_bimodule(raw["bimodule2"], "$.bimodule2", algebra2.dim)
    else:
        bimodule2 = None
    operators = {}
    if "operators" in raw:
        if not isinstance(raw["operators"], dict):
            raise DocumentError("$.operators", "expected an object")
        for name in sorted(raw["operators"]):
            operators[name] = _parse_matrix(raw["operators"][name],
                                            f"$.operators.{name}")
    deformation = None
    if "deformation" in raw:
        if bimodule is None:
            raise DocumentError("$.deformation", "deformation requires a bimodule")
        deformation = _parse_deformation(raw["deformation"], "$.deformation",
                                         algebra.basis, algebra.dim,
                                         bimodule.mdim)
    return WorkspaceDocument("Q", algebra, algebra2, bimodule, bimodule2,
                             operators, deformation)


def _render_matrix(m: Matrix) -> list:
    return [[render_rational(x) for x in m.row(i)] for i in range(m.rows)]


def _render_algebra(section: AlgebraSection) -> dict:
    return {
        "dim": section.dim,
        "basis": list(section.basis),
        "products": _render_sparse_bilinear(section.algebra.mul, section.basis),
    }


def render_document(doc: WorkspaceDocument) -> str:
    out = {"field": doc.field, "algebra": _render_algebra(doc.algebra)}
    if doc.algebra2 is not None:
        out["algebra2"] = _render_algebra(doc.algebra2)
    if doc.bimodule is not None:
        out["bimodule"] = {
            "mdim": doc.bimodule.mdim,
            "l": [_render_matrix(m) for m in doc.bimodule.left],
            "r": [_render_matrix(m) for m in doc.bimodule.right],
        }
    if doc.bimodule2 is not None:
        out["bimodule2"] = {
            "mdim": doc.bimodule2.mdim,
            "l": [_render_matrix(m) for m in doc.bimodule2.left],
            "r": [_render_matrix(m) for m in doc.bimodule2.right],
        }
    if doc.operators:
        out["operators"] = {name: _render_matrix(m)
                            for name, m in sorted(doc.operators.items())}
    if doc.deformation is not None:
        out["deformation"] = {
            "omega": _render_sparse_bilinear(doc.deformation.omega,
                                             doc.algebra.basis),
            "phi": [_render_matrix(m) for m in doc.deformation.phi],
            "psi": [_render_matrix(m) for m in doc.deformation.psi],
        }
    return json.dumps(out, indent=2, sort_keys=False) + "\n"


def load_document(path: str) -> WorkspaceDocument:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_document(handle.read())
