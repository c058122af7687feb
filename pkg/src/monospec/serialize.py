"""JSON serialization for scalars, matrices, groups, and reports.

Scalar grammar: a scalar is an array of terms [numerator, denominator,
power], meaning the sum of (num/den) * zeta_N^power with N the document
conductor.  Scalars canonicalize on load.  Monomial matrices carry 1-based
permutation images on the wire; everything is 0-based in memory.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cyclotomic import Cyclotomic
from .groups import FiniteMatrixGroup
from .matrices import DenseMatrix, DiagonalSign, MonomialMatrix


def scalar_to_json(value: Cyclotomic, conductor: int) -> list:
    """Terms of the scalar relative to the document conductor."""
    lifted = value.lift(conductor) if value.conductor != conductor else value
    return [
        [c.numerator, c.denominator, power]
        for power, c in enumerate(lifted.coeffs)
        if c != 0
    ]


def scalar_from_json(terms, conductor: int) -> Cyclotomic:
    if terms and isinstance(terms[0], int):
        terms = [terms]  # accept a bare [num, den, power] term
    return Cyclotomic.from_terms(
        conductor, [(int(t[0]), int(t[1]), int(t[2])) for t in terms]
    )


def monomial_to_json(matrix: MonomialMatrix, conductor: int) -> dict:
    return {
        "perm": [p + 1 for p in matrix.perm],
        "weights": [scalar_to_json(w, conductor) for w in matrix.weights],
    }


def monomial_from_json(doc: dict, conductor: int) -> MonomialMatrix:
    perm = [int(p) - 1 for p in doc["perm"]]
    weights = [scalar_from_json(t, conductor) for t in doc["weights"]]
    return MonomialMatrix(perm, weights)


def dense_to_json(matrix: DenseMatrix, conductor: int) -> dict:
    return {
        "entries": [[scalar_to_json(e, conductor) for e in row] for row in matrix.rows]
    }


def dense_from_json(doc: dict, conductor: int) -> DenseMatrix:
    return DenseMatrix(
        [[scalar_from_json(t, conductor) for t in row] for row in doc["entries"]]
    )


def matrix_to_json(matrix, conductor: int) -> dict:
    if isinstance(matrix, MonomialMatrix):
        return monomial_to_json(matrix, conductor)
    return dense_to_json(matrix, conductor)


def matrix_from_json(doc: dict, conductor: int):
    if "perm" in doc:
        return monomial_from_json(doc, conductor)
    if "entries" in doc:
        return dense_from_json(doc, conductor)
    raise ValueError("matrix document needs 'perm' or 'entries'")


def group_to_json(group: FiniteMatrixGroup, conductor: int | None = None) -> dict:
    conductor = conductor or group.conductor()
    return {
        "conductor": conductor,
        "n": group.n,
        "generators": [matrix_to_json(g, conductor) for g in group.generators],
        "cap": group.cap,
    }


def group_from_json(doc: dict, default_cap: int = 1_000_000) -> FiniteMatrixGroup:
    conductor = int(doc.get("conductor", 1))
    cap = int(doc.get("cap", default_cap))
    generators = [matrix_from_json(g, conductor) for g in doc["generators"]]
    n = int(doc["n"])
    if any(g.n != n for g in generators):
        raise ValueError("generator dimension does not match the document header")
    return FiniteMatrixGroup.close(generators, cap=cap)


def poly_to_json(coeffs, conductor: int) -> dict:
    out = []
    for c in coeffs:
        if isinstance(c, Cyclotomic):
            out.append(scalar_to_json(c, conductor))
        else:
            q = Fraction(c)
            out.append([[q.numerator, q.denominator, 0]] if q else [])
    return {"coeffs": out}


def sign_to_json(sign: DiagonalSign) -> list[int]:
    return list(sign.vector())


def sign_from_json(vector) -> DiagonalSign:
    return DiagonalSign.from_vector([int(v) for v in vector])


def similarity_to_json(similarity, conductor: int) -> dict:
    return {
        "kind": similarity.kind,
        "matrix": dense_to_json(similarity.matrix, conductor),
        "inverse": dense_to_json(similarity.inverse, conductor),
    }


def dumps(document: dict) -> str:
    """Deterministic single-document rendering used by the CLI."""
    return json.dumps(document, sort_keys=True, separators=(",", ":")) + "\n"
