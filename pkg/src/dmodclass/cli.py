"""Command-line front end.

Exit codes: 0 success / verdict true, 1 verdict false (equiv family),
2 input error, 3 numerical failure."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .borel import borel_gauge, diagonal_reduction, verify_intertwining
from .dmod import InvariantDModule, hom_dimension, sl2_adjoint_fixture
from .errors import DmodError, IllConditioned, InputError
from .io import (
    SCHEMA,
    borel_rep_from_json,
    borel_rep_to_json,
    canonical_class_to_json,
    dumps_canonical,
    encode_matrix,
    lie_algebra_from_json,
    load_document,
    representation_from_json,
    torus_rep_from_json,
)
from .lie import validate_lie_algebra, validate_representation
from .scalars import DEFAULT_TOLERANCE, ToleranceConfig, encode_scalar
from .torus import torus_gauge_equivalent
from .unipotent import canonical_class, gauge_equivalent, trace_word_invariants

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=None, help="comparison epsilon")
    common.add_argument("--cluster", type=float, default=None, help="eigenvalue clustering epsilon")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized certificates")
    common.add_argument("--max-word-len", type=int, default=None, help="trace word length bound")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--output", type=Path, default=None, help="write result here instead of stdout")
    p = argparse.ArgumentParser(
        prog="dmodclass",
        description="Classify invariant differential modules on unipotent "
        "groups, tori, and Borel subgroups.",
        parents=[common],
    )
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("check", parents=[common], help="validate an algebra or representation file").add_argument("file")
    sub.add_parser("canonical", parents=[common], help="canonical class of a unipotent representation").add_argument("file")
    eq = sub.add_parser("equiv", parents=[common], help="gauge equivalence of two unipotent representations")
    eq.add_argument("file1")
    eq.add_argument("file2")
    te = sub.add_parser("torus-equiv", parents=[common], help="gauge equivalence of two torus representations")
    te.add_argument("file1")
    te.add_argument("file2")
    br = sub.add_parser("borel-reduce", parents=[common], help="diagonal reduction and gauge verification")
    br.add_argument("file")
    br.add_argument("--samples", type=int, default=100)
    hd = sub.add_parser("hom-dim", parents=[common], help="Hom-space dimension between unipotent modules")
    hd.add_argument("file1")
    hd.add_argument("file2")
    tr = sub.add_parser("traces", parents=[common], help="trace-word table of a representation")
    tr.add_argument("file")
    sub.add_parser("fixture-sl2", parents=[common], help="run the exact rank-3 verification over SL_2")
    return p


def _config(args) -> ToleranceConfig:
    seed = args.seed
    if seed is None:
        env = os.environ.get("DMOD_SEED")
        seed = int(env) if env else DEFAULT_TOLERANCE.rng_seed
    return ToleranceConfig(
        eps=args.tolerance if args.tolerance is not None else DEFAULT_TOLERANCE.eps,
        cluster_eps=args.cluster if args.cluster is not None else DEFAULT_TOLERANCE.cluster_eps,
        rng_seed=seed,
        pit_trials=DEFAULT_TOLERANCE.pit_trials,
    )


def _emit(args, doc: dict) -> None:
    if args.format == "json":
        text = dumps_canonical(doc)
    else:
        text = "\n".join(f"{k}: {doc[k]}" for k in sorted(doc))
    if args.output:
        args.output.write_text(text + "\n")
    else:
        print(text)


def _certificate_doc(cert) -> dict:
    doc = {
        "schema": SCHEMA,
        "verdict": cert.verdict,
        "used_randomized": cert.used_randomized,
    }
    if cert.conjugator is not None:
        doc["conjugator"] = encode_matrix(cert.conjugator)
        doc["mode"] = cert.conjugator.mode
    if cert.trace_crosscheck is not None:
        doc["trace_crosscheck"] = cert.trace_crosscheck
    return doc


def _cmd_check(args, cfg) -> int:
    obj = load_document(args.file)
    if "matrices" in obj or "images" in obj:
        if "images" in obj:
            rho, _ = borel_rep_from_json(obj)
        else:
            rho = representation_from_json(obj, Path(args.file).parent)
        report = validate_representation(rho)
        kind = "representation"
    else:
        L = lie_algebra_from_json(obj)
        report = validate_lie_algebra(L)
        kind = "lie_algebra"
    doc = {
        "schema": SCHEMA,
        "kind": kind,
        "valid": report.valid,
        "failures": [str(f) for f in report.failures],
    }
    _emit(args, doc)
    return EXIT_OK if report.valid else EXIT_INPUT


def _cmd_canonical(args, cfg) -> int:
    rho = representation_from_json(load_document(args.file), Path(args.file).parent)
    cls = canonical_class(rho, cfg)
    doc = canonical_class_to_json(cls)
    doc["mode"] = rho.mode
    _emit(args, doc)
    return EXIT_OK


def _cmd_equiv(args, cfg) -> int:
    base1, base2 = Path(args.file1).parent, Path(args.file2).parent
    r1 = representation_from_json(load_document(args.file1), base1)
    r2 = representation_from_json(load_document(args.file2), base2)
    cert = gauge_equivalent(r1, r2, cfg)
    doc = _certificate_doc(cert)
    doc.setdefault("mode", r1.mode)
    _emit(args, doc)
    return EXIT_OK if cert.verdict else EXIT_FALSE


def _cmd_torus_equiv(args, cfg) -> int:
    r1 = torus_rep_from_json(load_document(args.file1))
    r2 = torus_rep_from_json(load_document(args.file2))
    cert = torus_gauge_equivalent(r1, r2, cfg)
    doc = _certificate_doc(cert)
    doc.setdefault("mode", r1.mode)
    _emit(args, doc)
    return EXIT_OK if cert.verdict else EXIT_FALSE


def _cmd_borel_reduce(args, cfg) -> int:
    rho, borel = borel_rep_from_json(load_document(args.file))
    reduced = diagonal_reduction(rho, borel, cfg)
    gauge = borel_gauge(rho, borel, cfg)
    report = verify_intertwining(gauge, rho, reduced, args.samples, cfg)
    doc = borel_rep_to_json(reduced, borel)
    doc["verification"] = {
        "samples": report.samples,
        "max_residual": report.max_residual,
        "passed": report.passed,
        "tolerance": report.tolerance,
    }
    doc["mode"] = rho.mode
    _emit(args, doc)
    return EXIT_OK if report.passed else EXIT_FALSE


def _cmd_hom_dim(args, cfg) -> int:
    base1, base2 = Path(args.file1).parent, Path(args.file2).parent
    r1 = representation_from_json(load_document(args.file1), base1)
    r2 = representation_from_json(load_document(args.file2), base2)
    hs = hom_dimension(
        InvariantDModule(r1, "unipotent"), InvariantDModule(r2, "unipotent"), cfg
    )
    doc = {
        "schema": SCHEMA,
        "dimension": hs.dimension,
        "matches": [
            {
                "functional": [encode_scalar(v) for v in key],
                "mult_source": ms,
                "mult_target": mt,
            }
            for key, ms, mt in hs.block_matches
        ],
        "mode": r1.mode,
    }
    _emit(args, doc)
    return EXIT_OK


def _cmd_traces(args, cfg) -> int:
    rho = representation_from_json(load_document(args.file), Path(args.file).parent)
    max_len = args.max_word_len if args.max_word_len is not None else rho.rank ** 2
    table = trace_word_invariants(rho, max_len)
    doc = {
        "schema": SCHEMA,
        "max_word_len": max_len,
        "traces": {
            ",".join(str(i) for i in word): encode_scalar(v)
            for word, v in sorted(table.items())
        },
        "mode": rho.mode,
    }
    _emit(args, doc)
    return EXIT_OK


def _cmd_fixture(args, cfg) -> int:
    report = sl2_adjoint_fixture()
    doc = {
        "schema": SCHEMA,
        "bracket_checks": {name: ok for name, ok in report.bracket_checks},
        "pde_checks": {name: ok for name, ok in report.pde_checks},
        "identity_is_unit": report.identity_is_unit,
        "passed": report.passed,
        "mode": "exact",
    }
    _emit(args, doc)
    return EXIT_OK if report.passed else EXIT_FALSE


_COMMANDS = {
    "check": _cmd_check,
    "canonical": _cmd_canonical,
    "equiv": _cmd_equiv,
    "torus-equiv": _cmd_torus_equiv,
    "borel-reduce": _cmd_borel_reduce,
    "hom-dim": _cmd_hom_dim,
    "traces": _cmd_traces,
    "fixture-sl2": _cmd_fixture,
}


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        cfg = _config(args)
    except (DmodError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    try:
        return _COMMANDS[args.command](args, cfg)
    except IllConditioned as e:
        print(f"numerical failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except DmodError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
