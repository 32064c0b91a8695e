"""JSON serialization of algebras, representations, and classification
reports.

All documents carry a top-level {"schema": "dmod/v1"}.  Exact scalars are
encoded as gcd-reduced fraction strings ("a/b" or "a/b+c/di"), approx
scalars as [re, im] number pairs; output is emitted with sorted keys so that
exact-mode results are byte-stable across runs and platforms."""

from __future__ import annotations

import json
from pathlib import Path

from .borel import BorelAlgebra, borel_algebra
from .errors import InputError
from .lie import LieAlgebraData, Representation
from .matrix import Matrix
from .scalars import GaussianRational, encode_scalar, gr, parse_scalar
from .torus import TorusRep
from .unipotent import CanonicalClass

SCHEMA = "dmod/v1"

__all__ = [
    "SCHEMA",
    "dumps_canonical",
    "encode_matrix",
    "parse_matrix",
    "lie_algebra_to_json",
    "lie_algebra_from_json",
    "representation_to_json",
    "representation_from_json",
    "torus_rep_to_json",
    "torus_rep_from_json",
    "borel_rep_to_json",
    "borel_rep_from_json",
    "canonical_class_to_json",
    "load_document",
]


def dumps_canonical(obj) -> str:
    """Deterministic JSON text: sorted keys, no superfluous whitespace."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def _check_schema(obj: dict):
    if not isinstance(obj, dict):
        raise InputError("document must be a JSON object")
    tag = obj.get("schema", SCHEMA)
    if tag != SCHEMA:
        raise InputError(f"unsupported schema {tag!r}; expected {SCHEMA!r}")


def load_document(path: str | Path) -> dict:
    p = Path(path)
    if not p.exists():
        raise InputError(f"no such file: {p}")
    try:
        obj = json.loads(p.read_text())
    except json.JSONDecodeError as e:
        raise InputError(f"{p}: invalid JSON: {e}") from None
    _check_schema(obj)
    return obj


# ---------------------------------------------------------------------------
# matrices


def encode_matrix(m: Matrix) -> list:
    return [
        [encode_scalar(m[i, j]) for j in range(m.cols)] for i in range(m.rows)
    ]


def parse_matrix(obj) -> Matrix:
    if not isinstance(obj, list) or not obj or not all(isinstance(r, list) for r in obj):
        raise InputError("matrix must be a non-empty list of rows")
    cols = len(obj[0])
    if any(len(r) != cols for r in obj):
        raise InputError("ragged matrix rows")
    entries = [parse_scalar(v) for row in obj for v in row]
    if any(isinstance(e, complex) for e in entries):
        entries = [
            e.to_complex() if isinstance(e, GaussianRational) else e for e in entries
        ]
    return Matrix(len(obj), cols, entries)


# ---------------------------------------------------------------------------
# lie_algebra


def lie_algebra_to_json(L: LieAlgebraData) -> dict:
    brackets = []
    for (i, j) in sorted(L.structure):
        cs = L.structure[(i, j)]
        brackets.append(
            {
                "i": i,
                "j": j,
                "c": {str(k): encode_scalar(c) for k, c in sorted(cs.items())},
            }
        )
    return {
        "schema": SCHEMA,
        "dim": L.dim,
        "basis": list(L.basis_names),
        "brackets": brackets,
    }


def lie_algebra_from_json(obj: dict) -> LieAlgebraData:
    _check_schema(obj)
    try:
        dim = int(obj["dim"])
        basis = tuple(str(b) for b in obj["basis"])
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad lie_algebra document: {e}") from None
    structure = {}
    for b in obj.get("brackets", []):
        try:
            i, j = int(b["i"]), int(b["j"])
            cs = {
                int(k): _exact_only(parse_scalar(v)) for k, v in b["c"].items()
            }
        except (KeyError, TypeError, ValueError) as e:
            raise InputError(f"bad bracket entry: {e}") from None
        structure[(i, j)] = cs
    return LieAlgebraData(dim, basis, structure)


def _exact_only(v):
    if not isinstance(v, GaussianRational):
        raise InputError("structure constants must be exact scalars")
    return v


# ---------------------------------------------------------------------------
# representation


def representation_to_json(rho: Representation) -> dict:
    return {
        "schema": SCHEMA,
        "algebra": lie_algebra_to_json(rho.algebra),
        "rank": rho.rank,
        "matrices": [encode_matrix(m) for m in rho.images],
    }


def representation_from_json(obj: dict, base_dir: str | Path = ".") -> Representation:
    _check_schema(obj)
    alg = obj.get("algebra")
    if isinstance(alg, str):
        alg = load_document(Path(base_dir) / alg)
    if not isinstance(alg, dict):
        raise InputError("representation needs an algebra object or file ref")
    L = lie_algebra_from_json(alg)
    try:
        rank = int(obj["rank"])
        mats = obj["matrices"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad representation document: {e}") from None
    images = tuple(parse_matrix(m) for m in mats)
    if any(m.rows != rank or m.cols != rank for m in images):
        raise InputError("matrix size does not match rank")
    return Representation(L, rank, images)


# ---------------------------------------------------------------------------
# torus and borel representations


def torus_rep_to_json(rho: TorusRep) -> dict:
    return {
        "schema": SCHEMA,
        "l": rho.l,
        "rank": rho.rank,
        "matrices": [encode_matrix(m) for m in rho.matrices],
    }


def torus_rep_from_json(obj: dict) -> TorusRep:
    _check_schema(obj)
    try:
        l = int(obj["l"])
        mats = obj["matrices"]
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad torus_rep document: {e}") from None
    return TorusRep(l, tuple(parse_matrix(m) for m in mats))


def borel_rep_to_json(rho: Representation, borel: BorelAlgebra) -> dict:
    images = {}
    for idx, (i, j) in enumerate(borel.pairs):
        m = rho.images[idx]
        if not m.is_zero(0.0 if m.mode == "exact" else 1e-15):
            images[f"E_{i}_{j}"] = encode_matrix(m)
    return {
        "schema": SCHEMA,
        "l": borel.l,
        "rank": rho.rank,
        "images": images,
    }


def borel_rep_from_json(obj: dict) -> tuple:
    """Returns (Representation, BorelAlgebra)."""
    _check_schema(obj)
    try:
        l = int(obj["l"])
        rank = int(obj["rank"])
        imgs = obj.get("images", {})
    except (KeyError, TypeError, ValueError) as e:
        raise InputError(f"bad borel_rep document: {e}") from None
    borel = borel_algebra(l)
    images = []
    for (i, j) in borel.pairs:
        key = f"E_{i}_{j}"
        if key in imgs:
            m = parse_matrix(imgs[key])
            if m.rows != rank or m.cols != rank:
                raise InputError(f"image {key} size does not match rank")
            images.append(m)
        else:
            images.append(Matrix.zeros(rank, rank, "exact"))
    unknown = set(imgs) - {f"E_{i}_{j}" for i, j in borel.pairs}
    if unknown:
        raise InputError(f"unknown image keys: {sorted(unknown)}")
    return Representation(borel.algebra, rank, tuple(images)), borel


# ---------------------------------------------------------------------------
# canonical class


def canonical_class_to_json(cls: CanonicalClass) -> dict:
    return {
        "schema": SCHEMA,
        "l": cls.l,
        "n": cls.n,
        "points": [[encode_scalar(v) for v in pt] for pt in cls.points],
    }
