"""Model files (JSON in) and result documents (JSON out).

Model file kinds::

    polytope        vertices + points
    classical       probability vectors (dimension = number of outcomes)
    square          points of the unit square
    quantum-qubit   Bloch vectors
    quantum-matrix  density matrices as row-major grids of [re, im] pairs

Every kind carries ``states`` and ``priors``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from .discrimination import DiscriminationInstance, Effect, Observable
from .errors import ValidationError
from .geometry import ConvexStateSpace
from .models import classical_space, classical_state, square_space
from .quantum import bloch_to_density, density_matrix

KINDS = ("polytope", "classical", "square", "quantum-qubit", "quantum-matrix")

_number = {"type": "number"}
_vector = {"type": "array", "items": _number, "minItems": 1}
_complex = {"type": "array", "items": _number, "minItems": 2, "maxItems": 2}
_cmatrix = {"type": "array", "minItems": 1,
            "items": {"type": "array", "minItems": 1, "items": _complex}}

MODEL_SCHEMA = {
    "type": "object",
    "required": ["kind", "states", "priors"],
    "properties": {
        "kind": {"enum": list(KINDS)},
        "dimension": {"type": "integer", "minimum": 1},
        "vertices": {"type": "array", "items": _vector, "minItems": 1},
        "priors": {"type": "array", "items": _number, "minItems": 2},
        "states": {"type": "array", "minItems": 2},
        "name": {"type": "string"},
    },
    "allOf": [
        {"if": {"properties": {"kind": {"const": "polytope"}}},
         "then": {"required": ["vertices"],
                  "properties": {"states": {"items": _vector}}}},
        {"if": {"properties": {"kind": {"enum": ["classical", "square"]}}},
         "then": {"properties": {"states": {"items": _vector}}}},
        {"if": {"properties": {"kind": {"const": "quantum-qubit"}}},
         "then": {"properties": {"states": {
             "items": {"type": "array", "items": _number, "minItems": 3, "maxItems": 3}}}}},
        {"if": {"properties": {"kind": {"const": "quantum-matrix"}}},
         "then": {"properties": {"states": {"items": _cmatrix}}}},
    ],
}


def _path(error) -> str:
    out = ""
    for part in error.absolute_path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out or "<root>"


def check_schema(doc) -> None:
    validator = jsonschema.Draft202012Validator(MODEL_SCHEMA)
    errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        raise ValidationError(f"{_path(e)}: {e.message}")


def matrix_from_json(grid) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in grid])


def matrix_to_json(M) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(M, complex)]


@dataclass
class Model:
    """A parsed model file."""

    kind: str
    priors: np.ndarray
    raw: dict
    instance: DiscriminationInstance | None = None
    densities: list = field(default_factory=list)
    bloch: np.ndarray | None = None

    @property
    def quantum(self) -> bool:
        return self.kind.startswith("quantum")

    @property
    def n(self) -> int:
        return len(self.priors)


def parse_model(doc: dict) -> Model:
    check_schema(doc)
    kind = doc["kind"]
    priors = np.asarray(doc["priors"], dtype=float)
    states = doc["states"]
    if len(states) != len(priors):
        raise ValidationError(f"priors: {len(priors)} entries for {len(states)} states")
    dim = doc.get("dimension")
    if kind == "polytope":
        V = doc["vertices"]
        if dim is not None and any(len(v) != dim for v in V):
            raise ValidationError(f"vertices: every vertex must have length {dim}")
        space = ConvexStateSpace(V, name=doc.get("name"))
        return Model(kind, priors, doc, DiscriminationInstance(space, states, priors))
    if kind == "classical":
        d = dim if dim is not None else len(states[0])
        for i, s in enumerate(states):
            try:
                classical_state(s, d)
            except ValidationError as exc:
                raise ValidationError(f"states[{i}]: {exc}") from None
        return Model(kind, priors, doc,
                     DiscriminationInstance(classical_space(d), states, priors))
    if kind == "square":
        return Model(kind, priors, doc, DiscriminationInstance(square_space(), states, priors))
    _check_quantum_priors(priors)
    if kind == "quantum-qubit":
        bloch = np.asarray(states, dtype=float)
        dens = []
        for i, b in enumerate(bloch):
            try:
                dens.append(bloch_to_density(b))
            except ValidationError as exc:
                raise ValidationError(f"states[{i}]: {exc}") from None
        return Model(kind, priors, doc, densities=dens, bloch=bloch)
    dens = []
    for i, grid in enumerate(states):
        try:
            rho = density_matrix(matrix_from_json(grid))
        except (ValidationError, ValueError) as exc:
            raise ValidationError(f"states[{i}]: {exc}") from None
        if dim is not None and rho.shape[0] != dim:
            raise ValidationError(f"states[{i}]: expected a {dim}x{dim} matrix")
        dens.append(rho)
    return Model(kind, priors, doc, densities=dens)


def _check_quantum_priors(priors):
    if np.any(priors <= 0) or np.any(priors >= 1):
        raise ValidationError("priors: every prior must lie strictly between 0 and 1")
    if abs(priors.sum() - 1.0) > 1e-9:
        raise ValidationError(f"priors: must sum to 1, got {priors.sum():.12g}")


def read_json(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def load_model(path) -> Model:
    return parse_model(read_json(path))


def effect_to_json(e: Effect) -> dict:
    return {"linear": [float(a) for a in e.linear], "offset": float(e.offset)}


def observable_to_json(obs: Observable) -> list:
    return [effect_to_json(e) for e in obs]


def observable_from_json(items) -> Observable:
    try:
        return Observable([Effect(it["linear"], it["offset"]) for it in items])
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"observable: malformed effect record ({exc})") from None


def dumps(doc) -> str:
    """Serialize with shortest round-trip float representations."""
    return json.dumps(_plain(doc), indent=2, allow_nan=False)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer, int)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        return float(x)
    return x
