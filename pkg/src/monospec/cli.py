"""Command-line front end: JSON in, JSON out, deterministic exit codes.

Exit codes: 0 when the queried property holds, 1 when it fails (with a
certificate in the output), 2 for invalid input, 3 when a resource cap is
exceeded.  Identical invocations produce byte-identical output; sampling
subcommands require an explicit seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import serialize
from .errors import (
    CapExceeded,
    MonospecError,
    NotDivisible,
    NotInJn,
    ScalarD,
    EvenN,
    SplitImpossible,
)
from .groups import FiniteMatrixGroup
from .jfamily import build_main_group, cyclic_group, j_cardinality, j_plus
from .matrices import DiagonalSign, DenseMatrix, MonomialMatrix
from .cyclotomic import euler_phi
from .spectra import all_commutators_real, char_poly, has_all_real_roots, is_nilpotent
from .structure import (
    monomialize_abelian,
    recover_structure,
    split_scalars,
    verify_theorem,
)

ENV_CAP = "MONOSPEC_CAP"

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INVALID = 2
EXIT_CAP = 3


def _default_cap() -> int:
    raw = os.environ.get(ENV_CAP)
    if raw:
        try:
            return int(raw)
        except ValueError:
            pass
    return 1_000_000


def _emit(document: dict, human: bool) -> None:
    if human:
        sys.stdout.write(json.dumps(document, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(serialize.dumps(document))


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_group(path: str, cap: int) -> FiniteMatrixGroup:
    return serialize.group_from_json(_load_json(path), default_cap=cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monospec",
        description="Exact decisions about monomial matrix groups and commutator spectra.",
    )
    parser.add_argument("--cap", type=int, default=None, help="element-count cap for closures")
    parser.add_argument(
        "--format", choices=["json", "human"], default="json", help="output rendering"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("jgroup", help="sign family of the n-cycle group")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", action="store_true", help="report the order (default)")
    p.add_argument("--members", action="store_true", help="list members as GF(2) vectors")

    p = sub.add_parser("verify", help="build the cycle-times-signs group and scan commutators")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d-file", type=str, default=None,
                   help="JSON {'n':..,'d_generators':[[0,1,...],...]}; defaults to the full family")
    p.add_argument("--sample", type=int, default=None, help="scan this many seeded pairs")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("recover", help="recover the normal form of a group file")
    p.add_argument("--file", type=str, required=True)

    p = sub.add_parser("monomialize", help="monomialize an abelian monomial group file")
    p.add_argument("--file", type=str, required=True)

    p = sub.add_parser("spectrum", help="characteristic polynomial and real-spectrum verdict")
    p.add_argument("--file", type=str, required=True)
    p.add_argument("--numeric-fallback", action="store_true")
    p.add_argument("--tolerance", type=float, default=1e-10)

    p = sub.add_parser("commutators", help="scan ring commutators of a group file")
    p.add_argument("--file", type=str, required=True)
    p.add_argument("--sample", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--recheck", action="store_true", help="re-validate the certificate")

    p = sub.add_parser("split", help="scalar splitting of a monomial group file")
    p.add_argument("--file", type=str, required=True)
    p.add_argument("--x-order", type=int, required=True)
    p.add_argument("--y-order", type=int, required=True)
    return parser


def _cmd_jgroup(args, cap: int) -> tuple[dict, int]:
    order = j_cardinality(args.n)
    space = j_plus(cyclic_group(args.n), mode="rank")
    doc = {
        "n": args.n,
        "j_plus_order": order,
        "gf2_rank": space.rank,
        "phi": euler_phi(args.n),
    }
    if args.members:
        doc["members"] = [list(m.vector()) for m in space.members()]
    return doc, EXIT_OK


def _read_d_generators(path: str | None, n: int):
    if path is None:
        plus = j_plus(cyclic_group(n), mode="rank")
        gens = [DiagonalSign(n, b) for b in plus.basis]
        gens.append(DiagonalSign(n, (1 << n) - 1))
        return gens
    doc = _load_json(path)
    if int(doc.get("n", n)) != n:
        raise ValueError("d-file dimension does not match --n")
    return [serialize.sign_from_json(v) for v in doc["d_generators"]]


def _cmd_verify(args, cap: int) -> tuple[dict, int]:
    if args.sample is not None and args.seed is None:
        raise ValueError("--sample requires an explicit --seed")
    gens = _read_d_generators(args.d_file, args.n)
    report = verify_theorem(args.n, gens, sample=args.sample, seed=args.seed)
    doc = {
        "n": args.n,
        "group_order": report.group_order,
        "pairs_checked": report.pairs_checked,
        "diagonal_pairs": report.diagonal_pairs,
        "nondiagonal_pairs": report.nondiagonal_pairs,
        "verdict": report.verdict,
    }
    if report.verdict != "yes":
        conductor = 1
        doc["witness"] = {
            "a": serialize.matrix_to_json(report.witness[0], conductor),
            "b": serialize.matrix_to_json(report.witness[1], conductor),
        }
        doc["char_poly"] = serialize.poly_to_json(report.witness_char_poly, conductor)
        return doc, EXIT_FAIL
    return doc, EXIT_OK


def _cmd_recover(args, cap: int) -> tuple[dict, int]:
    group = _load_group(args.file, cap)
    conductor = group.conductor()
    report = recover_structure(group)
    doc: dict = {"outcome": report.outcome, "n": report.n_odd}
    if report.outcome == "theorem_form":
        doc["d_order"] = report.d_space.order
        doc["d_basis"] = [list(DiagonalSign(report.n_odd, b).vector()) for b in report.d_space.basis]
        doc["similarity"] = serialize.similarity_to_json(report.similarity, conductor)
        doc["details"] = report.details
        return doc, EXIT_OK
    if report.outcome == "counterexample":
        a, b = report.certificate["witness"]
        doc["witness"] = {
            "a": serialize.matrix_to_json(a, conductor),
            "b": serialize.matrix_to_json(b, conductor),
        }
        doc["char_poly"] = serialize.poly_to_json(report.certificate["char_poly"], conductor)
    elif report.outcome == "not_irreducible":
        doc["certificate"] = report.certificate
    return doc, EXIT_FAIL


def _cmd_monomialize(args, cap: int) -> tuple[dict, int]:
    group = _load_group(args.file, cap)
    conductor = group.conductor()
    similarity, orders = monomialize_abelian(group)
    doc = {
        "orders": orders,
        "similarity": serialize.similarity_to_json(similarity, conductor),
    }
    return doc, EXIT_OK


def _cmd_spectrum(args, cap: int) -> tuple[dict, int]:
    doc_in = _load_json(args.file)
    conductor = int(doc_in.get("conductor", 1))
    matrix = serialize.matrix_from_json(doc_in, conductor)
    coeffs = char_poly(matrix)
    verdict = has_all_real_roots(coeffs)
    if verdict == "real_irrational_coeffs" and args.numeric_fallback:
        from .spectra import has_real_spectrum

        sv = has_real_spectrum(matrix, numeric_fallback=True, tolerance=args.tolerance)
        out = {
            "char_poly": serialize.poly_to_json(coeffs, conductor),
            "verdict": sv.status,
            "exact": False,
            "tolerance": args.tolerance,
        }
        return out, EXIT_OK if sv.status == "yes" else EXIT_FAIL
    out = {
        "char_poly": serialize.poly_to_json(coeffs, conductor),
        "verdict": verdict,
        "exact": True,
        "nilpotent": is_nilpotent(matrix),
    }
    return out, EXIT_OK if verdict == "yes" else EXIT_FAIL


def _cmd_commutators(args, cap: int) -> tuple[dict, int]:
    if args.sample is not None and args.seed is None:
        raise ValueError("--sample requires an explicit --seed")
    group = _load_group(args.file, cap)
    conductor = group.conductor()
    mode = "exhaustive" if args.sample is None else "sample"
    result = all_commutators_real(group, mode=mode, sample=args.sample, seed=args.seed)
    doc = {
        "group_order": group.order,
        "pairs_checked": result.pairs_checked,
        "verdict": result.verdict,
        "exact": result.exact,
    }
    if result.verdict == "no":
        a, b = result.witness
        doc["witness"] = {
            "a": serialize.matrix_to_json(a, conductor),
            "b": serialize.matrix_to_json(b, conductor),
        }
        doc["char_poly"] = serialize.poly_to_json(result.witness_char_poly, conductor)
        if args.recheck:
            doc["recheck"] = "ok" if _recheck_witness(a, b, result.witness_char_poly) else "failed"
        return doc, EXIT_FAIL
    return doc, EXIT_OK


def _recheck_witness(a, b, claimed_poly) -> bool:
    from .spectra import ring_commutator

    comm = ring_commutator(a, b)
    coeffs = char_poly(comm)
    if len(coeffs) != len(claimed_poly) or any(
        x != y for x, y in zip(coeffs, claimed_poly)
    ):
        return False
    return has_all_real_roots(coeffs) == "no"


def _cmd_split(args, cap: int) -> tuple[dict, int]:
    group = _load_group(args.file, cap)
    conductor = group.conductor()
    report = split_scalars(group, args.x_order, args.y_order)
    doc = {
        "y_split": "ok",
        "y_similarity": serialize.similarity_to_json(report.y_similarity, conductor),
        "pattern_attempted": report.pattern_attempted,
    }
    if report.pattern_attempted:
        doc["pattern_embedded"] = report.pattern_embedded
        if report.pattern_similarity is not None:
            doc["pattern_similarity"] = serialize.similarity_to_json(
                report.pattern_similarity, conductor
            )
    return doc, EXIT_OK


_HANDLERS = {
    "jgroup": _cmd_jgroup,
    "verify": _cmd_verify,
    "recover": _cmd_recover,
    "monomialize": _cmd_monomialize,
    "spectrum": _cmd_spectrum,
    "commutators": _cmd_commutators,
    "split": _cmd_split,
}


def _split_certificate_to_json(certificate: dict, conductor: int) -> dict:
    out: dict = {}
    y_part = certificate.get("y_split")
    if y_part:
        entry = {"reason": y_part.get("reason", "")}
        witness = y_part.get("witness_diagonal") or y_part.get("witness_power")
        if witness is not None:
            entry["witness"] = serialize.matrix_to_json(witness, conductor)
        out["y_split"] = entry
    p_part = certificate.get("pattern_subgroup")
    if p_part:
        entry = {
            "reason": p_part.get("reason", ""),
            "identity_attainable": p_part.get("identity_attainable"),
        }
        if "pattern_perm" in p_part:
            entry["pattern_perm"] = [p + 1 for p in p_part["pattern_perm"]]
            entry["pattern_order"] = p_part["pattern_order"]
        if "power_values" in p_part:
            entry["power_values"] = [
                serialize.matrix_to_json(m, conductor) for m in p_part["power_values"]
            ]
        out["pattern_subgroup"] = entry
    return out


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    cap = args.cap if args.cap is not None else _default_cap()
    human = args.format == "human"
    try:
        doc, code = _HANDLERS[args.command](args, cap)
    except CapExceeded as exc:
        _emit({"error": "cap_exceeded", "message": str(exc)}, human)
        return EXIT_CAP
    except SplitImpossible as exc:
        conductor = 1
        try:
            conductor = _load_group(args.file, cap).conductor()
        except Exception:
            pass
        _emit(
            {
                "error": "split_impossible",
                "message": str(exc),
                "certificate": _split_certificate_to_json(exc.certificate or {}, conductor),
            },
            human,
        )
        return EXIT_FAIL
    except (NotDivisible, NotInJn, ScalarD, EvenN) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, human)
        return EXIT_INVALID
    except (MonospecError, ValueError, OSError, json.JSONDecodeError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, human)
        return EXIT_INVALID
    _emit(doc, human)
    return code


if __name__ == "__main__":
    sys.exit(main())
