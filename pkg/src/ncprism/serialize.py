"""JSON wire formats for matrices and the structured results.

A matrix is {"rows": n, "cols": m, "data": [[re, im], ...]} with the
entries flattened row-major; complex scalars are [re, im] pairs. Floats
pass through ``json`` using Python's shortest round-trip repr, so decimal
literals survive a round trip bit-exactly up to 17 significant digits.
"""

from __future__ import annotations

import numpy as np

from .dilation import DilationResult, Povm
from .errors import ShapeMismatchError
from .matkernel import as_matrix
from .opsys import Certified, DiagTuple, DualTuple, PrismElement, Refuted, Unknown
from .reps import RepPair, SymmetryTuple

__all__ = [
    "matrix_to_json",
    "matrix_from_json",
    "tuple_to_json",
    "tuple_from_json",
    "complex_to_json",
    "complex_from_json",
    "rep_pair_to_json",
    "rep_pair_from_json",
    "symmetry_tuple_to_json",
    "dilation_result_to_json",
    "povm_to_json",
    "prism_element_to_json",
    "prism_element_from_json",
    "diag_tuple_to_json",
    "diag_tuple_from_json",
    "dual_tuple_to_json",
    "verdict_to_json",
]


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(pair) -> complex:
    re, im = pair
    return complex(float(re), float(im))


def matrix_to_json(a) -> dict:
    a = as_matrix(a)
    rows, cols = a.shape
    data = [[float(z.real), float(z.imag)] for z in a.ravel()]
    return {"rows": rows, "cols": cols, "data": data}


def matrix_from_json(obj) -> np.ndarray:
    rows, cols = int(obj["rows"]), int(obj["cols"])
    data = obj["data"]
    if len(data) != rows * cols:
        raise ShapeMismatchError(
            f"matrix JSON declares {rows}x{cols} but carries {len(data)} entries"
        )
    flat = np.array([complex_from_json(pair) for pair in data], dtype=complex)
    return as_matrix(flat.reshape(rows, cols))


def tuple_to_json(mats) -> dict:
    return {"tuple": [matrix_to_json(m) for m in mats]}


def tuple_from_json(obj) -> list[np.ndarray]:
    return [matrix_from_json(m) for m in obj["tuple"]]


def rep_pair_to_json(pair: RepPair) -> dict:
    return {
        "k": pair.k,
        "W": matrix_to_json(pair.w),
        "V": matrix_to_json(pair.v),
        "provenance": pair.provenance,
        "commutant_dim": pair.commutant_dim,
    }


def rep_pair_from_json(obj) -> RepPair:
    return RepPair(
        matrix_from_json(obj["W"]),
        matrix_from_json(obj["V"]),
        int(obj["k"]),
        provenance=str(obj.get("provenance", "")),
        commutant_dim=obj.get("commutant_dim"),
    )


def symmetry_tuple_to_json(st: SymmetryTuple) -> dict:
    out = tuple_to_json(st.mats)
    out["provenance"] = st.provenance
    return out


def dilation_result_to_json(result: DilationResult) -> dict:
    return {
        "isometry": matrix_to_json(result.isometry),
        "operators": [matrix_to_json(op) for op in result.operators],
        "labels": list(result.labels),
    }


def povm_to_json(povm: Povm) -> dict:
    return {
        "effects": [matrix_to_json(h) for h in povm.effects],
        "outcome_labels": [complex_to_json(z) for z in povm.outcome_labels],
    }


def prism_element_to_json(e: PrismElement) -> dict:
    return {
        "k": e.k,
        "q": e.q,
        "c": [matrix_to_json(block) for block in e.c],
        "g": matrix_to_json(e.g),
    }


def prism_element_from_json(obj) -> PrismElement:
    return PrismElement(
        int(obj["k"]),
        int(obj["q"]),
        [matrix_from_json(block) for block in obj["c"]],
        matrix_from_json(obj["g"]),
    )


def diag_tuple_to_json(x: DiagTuple) -> dict:
    return {"k": x.k, "q": x.q, "blocks": [matrix_to_json(b) for b in x.blocks]}


def diag_tuple_from_json(obj) -> DiagTuple:
    return DiagTuple(
        int(obj["k"]), int(obj["q"]), [matrix_from_json(b) for b in obj["blocks"]]
    )


def dual_tuple_to_json(z: DualTuple) -> dict:
    return {"k": z.k, "z": [complex_to_json(val) for val in z.z]}


def verdict_to_json(verdict) -> dict:
    if isinstance(verdict, Refuted):
        return {
            "verdict": "refuted",
            "witness": rep_pair_to_json(verdict.witness),
            "min_eigenvalue": verdict.min_eigenvalue,
        }
    if isinstance(verdict, Certified):
        return {
            "verdict": "certified",
            "lift": diag_tuple_to_json(verdict.lift),
            "min_block_eigenvalue": verdict.min_block_eigenvalue,
            "residual": verdict.residual,
        }
    if isinstance(verdict, Unknown):
        return {"verdict": "unknown", "reason": verdict.reason, "residual": verdict.residual}
    raise TypeError(f"not a positivity verdict: {type(verdict)!r}")
