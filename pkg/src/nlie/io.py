"""JSON problem files: parsing, validation, emission.

Indices are 1-based in files (and sorted), 0-based inside the engine; the
parser is the only place that converts.  Rationals travel as strings
"p/q" or JSON integers — floats are rejected so nothing inexact can leak
into the computation.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Union

from .core import NLieAlgebra, Representation
from .linalg import Matrix, Vec, vector
from .multilinear import BlockMap, SpaceSpec
from .rota_baxter import RBOperator

SCHEMA_VERSION = "1"


class ProblemFileError(ValueError):
    """Input problems: malformed JSON, bad indices, inexact numbers."""


def _rat(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise ProblemFileError(f"{where}: numbers must be exact (int or 'p/q' string)")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as e:
            raise ProblemFileError(f"{where}: bad rational {x!r}: {e}") from None
    raise ProblemFileError(f"{where}: bad rational {x!r}")


def _rat_str(x: Fraction) -> Union[int, str]:
    if x.denominator == 1:
        return int(x)
    return f"{x.numerator}/{x.denominator}"


def _indices(raw: Any, size: int, dim: int, where: str) -> tuple[int, ...]:
    if not isinstance(raw, list) or len(raw) != size:
        raise ProblemFileError(f"{where}: expected {size} indices")
    out = []
    for i in raw:
        if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= dim:
            raise ProblemFileError(f"{where}: index {i!r} out of range 1..{dim}")
        out.append(i - 1)
    if any(a >= b for a, b in zip(out, out[1:])):
        raise ProblemFileError(f"{where}: indices must be strictly increasing")
    return tuple(out)


def _sparse_vec(raw: Any, dim: int, where: str) -> Vec:
    if not isinstance(raw, dict):
        raise ProblemFileError(f"{where}: expected an index->rational map")
    out = [Fraction(0)] * dim
    for k, v in raw.items():
        try:
            i = int(k)
        except ValueError:
            raise ProblemFileError(f"{where}: bad index key {k!r}") from None
        if not 1 <= i <= dim:
            raise ProblemFileError(f"{where}: index {i} out of range 1..{dim}")
        out[i - 1] = _rat(v, where)
    return tuple(out)


def _matrix(raw: Any, rows: int, cols: int, where: str) -> Matrix:
    if not isinstance(raw, list) or len(raw) != rows or \
            any(not isinstance(r, list) or len(r) != cols for r in raw):
        raise ProblemFileError(f"{where}: expected a {rows}x{cols} matrix")
    return Matrix([[_rat(x, where) for x in r] for r in raw])


@dataclass
class Problem:
    """Parsed problem file: the pair plus whatever optional data came along."""
    n: int
    algebra: NLieAlgebra
    rep: Representation
    operator: Optional[Matrix] = None
    covector: Optional[Vec] = None
    omega: Optional[Matrix] = None
    deformation: list[Matrix] = field(default_factory=list)
    deformation_prime: list[Matrix] = field(default_factory=list)
    x0: Optional[Vec] = None
    cochains: list[tuple[str, BlockMap]] = field(default_factory=list)

    @property
    def dim_g(self) -> int:
        return self.algebra.dim

    @property
    def dim_v(self) -> int:
        return self.rep.dim_v

    def rb_operator(self) -> Optional[RBOperator]:
        if self.operator is None:
            return None
        return RBOperator(self.rep, self.operator)


def _parse_cochain(raw: Any, n: int, dim_g: int, dim_v: int, idx: int) -> tuple[str, BlockMap]:
    where = f"cochains[{idx}]"
    if not isinstance(raw, dict):
        raise ProblemFileError(f"{where}: expected an object")
    space = raw.get("space")
    if space not in ("pair", "operator"):
        raise ProblemFileError(f"{where}: space must be 'pair' or 'operator'")
    degree = raw.get("degree")
    if not isinstance(degree, int) or degree < 1:
        raise ProblemFileError(f"{where}: degree must be a positive integer")
    blocks = degree - 1
    if space == "pair":
        sdim, tdim = dim_g, dim_v
        src, tgt = SpaceSpec(dim_g, "g"), SpaceSpec(dim_v, "V")
    else:
        sdim, tdim = dim_v, dim_g
        src, tgt = SpaceSpec(dim_v, "V"), SpaceSpec(dim_g, "g")
    table = {}
    for e in raw.get("entries", []):
        braw = e.get("blocks", [])
        if not isinstance(braw, list) or len(braw) != blocks:
            raise ProblemFileError(f"{where}: expected {blocks} blocks per entry")
        key_blocks = tuple(_indices(b, n - 1, sdim, where) for b in braw)
        tail = e.get("tail")
        if not isinstance(tail, int) or not 1 <= tail <= sdim:
            raise ProblemFileError(f"{where}: tail out of range")
        table[key_blocks + (tail - 1,)] = _sparse_vec(e.get("value", {}), tdim, where)
    return space, BlockMap(n, blocks, src, tgt, table)


def parse_problem(text: str) -> Problem:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemFileError(f"JSON parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None
    if not isinstance(raw, dict):
        raise ProblemFileError("top level must be an object")
    version = raw.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        raise ProblemFileError(f"unsupported schema_version {version!r}")
    n = raw.get("n")
    if not isinstance(n, int) or n < 2:
        raise ProblemFileError("n must be an integer >= 2")
    g = raw.get("g")
    if not isinstance(g, dict) or not isinstance(g.get("dim"), int) or g["dim"] < 1:
        raise ProblemFileError("g.dim must be a positive integer")
    dim_g = g["dim"]
    structure = {}
    for i, item in enumerate(g.get("bracket", [])):
        where = f"g.bracket[{i}]"
        args = _indices(item.get("args"), n, dim_g, where)
        structure[args] = _sparse_vec(item.get("value", {}), dim_g, where)
    algebra = NLieAlgebra(n, SpaceSpec(dim_g, "g"), structure)
    v = raw.get("V")
    if not isinstance(v, dict) or not isinstance(v.get("dim"), int) or v["dim"] < 0:
        raise ProblemFileError("V.dim must be a nonnegative integer")
    dim_v = v["dim"]
    action = {}
    for i, item in enumerate(raw.get("rho", [])):
        where = f"rho[{i}]"
        block = _indices(item.get("block"), n - 1, dim_g, where)
        action[block] = _matrix(item.get("matrix"), dim_v, dim_v, where)
    rep = Representation(algebra, SpaceSpec(dim_v, "V"), action)
    prob = Problem(n, algebra, rep)
    if "T" in raw:
        prob.operator = _matrix(raw["T"], dim_g, dim_v, "T")
    if "f" in raw:
        fr = raw["f"]
        if not isinstance(fr, list) or len(fr) != dim_g:
            raise ProblemFileError("f must be a list of dim(g) rationals")
        prob.covector = vector([_rat(x, "f") for x in fr])
    if "omega" in raw:
        prob.omega = _matrix(raw["omega"], dim_g, dim_g, "omega")
    for name in ("deformation", "deformation_prime"):
        for i, m in enumerate(raw.get(name, [])):
            getattr(prob, name).append(_matrix(m, dim_g, dim_v, f"{name}[{i}]"))
    if "x0" in raw:
        x0 = raw["x0"]
        if not isinstance(x0, list) or len(x0) != dim_g + dim_v:
            raise ProblemFileError("x0 must be a list of dim(g)+dim(V) rationals")
        prob.x0 = vector([_rat(x, "x0") for x in x0])
    for i, c in enumerate(raw.get("cochains", [])):
        prob.cochains.append(_parse_cochain(c, n, dim_g, dim_v, i))
    return prob


def load_problem(path: str) -> Problem:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_problem(fh.read())


def emit_problem(prob: Problem) -> str:
    """Serialize back to the file schema, stable-ordered."""
    alg = prob.algebra
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "n": prob.n,
        "g": {
            "dim": alg.dim,
            "bracket": [
                {"args": [i + 1 for i in key],
                 "value": {str(i + 1): _rat_str(x) for i, x in enumerate(val) if x != 0}}
                for key, val in sorted(alg.structure.items())
            ],
        },
        "V": {"dim": prob.dim_v},
        "rho": [
            {"block": [i + 1 for i in key],
             "matrix": [[_rat_str(x) for x in row] for row in mat.entries]}
            for key, mat in sorted(prob.rep.action.items())
        ],
    }
    if prob.operator is not None:
        out["T"] = [[_rat_str(x) for x in row] for row in prob.operator.entries]
    if prob.covector is not None:
        out["f"] = [_rat_str(x) for x in prob.covector]
    if prob.omega is not None:
        out["omega"] = [[_rat_str(x) for x in row] for row in prob.omega.entries]
    if prob.deformation:
        out["deformation"] = [[[_rat_str(x) for x in row] for row in m.entries]
                              for m in prob.deformation]
    if prob.deformation_prime:
        out["deformation_prime"] = [[[_rat_str(x) for x in row] for row in m.entries]
                                    for m in prob.deformation_prime]
    if prob.x0 is not None:
        out["x0"] = [_rat_str(x) for x in prob.x0]
    if prob.cochains:
        out["cochains"] = [
            {"space": space, "degree": bm.blocks + 1,
             "entries": [
                 {"blocks": [[i + 1 for i in blk] for blk in key[:-1]],
                  "tail": key[-1] + 1,
                  "value": {str(i + 1): _rat_str(x) for i, x in enumerate(val) if x != 0}}
                 for key, val in sorted(bm.table.items())
             ]}
            for space, bm in prob.cochains
        ]
    return json.dumps(out, indent=2, sort_keys=True) + "\n"
