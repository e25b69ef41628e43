"""Command-line front end: every subcommand is one library call.

Exit codes: 0 success, 1 domain-invalid input or failed check (a JSON
report still goes to stdout where one exists), 2 malformed input or
usage.  All diagnostics are JSON on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import FHError, InternalError, MalformedInput
from .fhs import (
    FHS1Morphism,
    check_exact,
    dual_fhs,
    etale_part,
    fhs_cokernel,
    fhs_kernel,
    hom_group,
    pi_connected,
    special_part,
)
from .generator import gen
from .mhs import MHSMorphism, ihom_tate, mhs_cokernel, mhs_kernel
from .motives import (
    MotiveMorphism,
    cartier_dual,
    connected_part,
    etale_motive,
    hom_motive,
    universal_vector_extension,
)
from .realize import (
    arrow,
    check_exact_motives,
    cokernel_motive,
    kernel_motive,
    roundtrip_fm,
    roundtrip_mf,
    t_formal,
    t_hodge,
)
from .serialize import (
    SequenceDoc,
    dumps_document,
    loads_document,
    morphism_payload,
)
from .suite import run_suite


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        print(json.dumps({"error": "usage", "message": message}), file=sys.stderr)
        raise SystemExit(2)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise MalformedInput(f"cannot read {path}: {exc}") from exc


def _load(path: str):
    return loads_document(_read(path))


def _write(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)


def _report(data: dict, output: str | None) -> None:
    _write(json.dumps(data, sort_keys=True, indent=2) + "\n", output)


def _ranks(kind: str, obj) -> dict:
    if kind in ("fhs1", "motive"):
        return obj.ranks()
    if kind == "mhs1":
        return obj.gr_ranks()
    return {}


# -- subcommand bodies ---------------------------------------------------------


def _cmd_validate(args) -> int:
    kind, obj = _load(args.file)
    info = {"ok": True, "kind": kind}
    ranks = _ranks(kind, obj)
    if ranks:
        info["ranks"] = ranks
    if kind == "sequence":
        info["length"] = len(obj.morphisms)
        info["category"] = obj.category
    _report(info, args.output)
    return 0


_TRANSFORMS = {
    ("etale", "fhs1"): etale_part,
    ("etale", "motive"): etale_motive,
    ("connected", "fhs1"): pi_connected,
    ("connected", "motive"): connected_part,
    ("special-part", "fhs1"): special_part,
    ("special-part", "motive"): connected_part,
    ("dual", "fhs1"): dual_fhs,
    ("dual", "motive"): cartier_dual,
    ("dual", "mhs1"): ihom_tate,
    ("realize", "motive"): t_formal,
    ("arrow", "fhs1"): arrow,
    ("hodge", "motive"): t_hodge,
    ("univ-ext", "motive"): universal_vector_extension,
}


def _cmd_transform(name: str, args) -> int:
    kind, obj = _load(args.file)
    op = _TRANSFORMS.get((name, kind))
    if op is None:
        raise MalformedInput(f"subcommand {name} does not accept kind {kind!r}")
    _write(dumps_document(op(obj)), args.output)
    return 0


def _cmd_kernel(args, which: str) -> int:
    kind, phi = _load(args.file)
    if kind != "morphism":
        raise MalformedInput(f"{which} needs a morphism document")
    if isinstance(phi, FHS1Morphism):
        _, out = fhs_kernel(phi) if which == "kernel" else fhs_cokernel(phi)
    elif isinstance(phi, MotiveMorphism):
        _, out = kernel_motive(phi) if which == "kernel" else cokernel_motive(phi)
    elif isinstance(phi, MHSMorphism):
        _, out = mhs_kernel(phi) if which == "kernel" else mhs_cokernel(phi)
    else:
        raise MalformedInput("unsupported morphism category")
    _write(dumps_document(out), args.output)
    return 0


def _cmd_check_exact(args) -> int:
    kind, seq = _load(args.file)
    if kind != "sequence":
        raise MalformedInput("check-exact needs a sequence document")
    if seq.category == "fhs1":
        out = check_exact(list(seq.morphisms), short=seq.short)
    elif seq.category == "motive":
        out = check_exact_motives(list(seq.morphisms), short=seq.short)
    else:
        raise MalformedInput("check-exact supports fhs1 and motive sequences")
    _report(out, args.output)
    return 0 if out["exact"] else 1


def _cmd_hom(args) -> int:
    kind_x, x = _load(args.source)
    kind_y, y = _load(args.target)
    if kind_x != kind_y:
        raise MalformedInput("hom needs two documents of the same kind")
    if kind_x == "fhs1":
        hs = hom_group(x, y)
        out = {
            "category": "fhs1",
            "z_rank": hs.z_rank,
            "k_dim": hs.k_dim,
            "z_basis": [morphism_payload(p) for p in hs.z_basis],
            "k_basis": [morphism_payload(p) for p in hs.k_basis],
        }
    elif kind_x == "motive":
        zb, kb = hom_motive(x, y)
        out = {
            "category": "motive",
            "z_rank": len(zb),
            "k_dim": len(kb),
            "z_basis": [morphism_payload(p) for p in zb],
            "k_basis": [morphism_payload(p) for p in kb],
        }
    else:
        raise MalformedInput("hom supports fhs1 and motive documents")
    _report(out, args.output)
    return 0


def _cmd_roundtrip(args) -> int:
    kind, obj = _load(args.file)
    if kind == "fhs1":
        iso = roundtrip_fm(obj)
    elif kind == "motive":
        iso = roundtrip_mf(obj)
    else:
        raise MalformedInput("roundtrip needs an fhs1 or motive document")
    _report(
        {"ok": True, "kind": kind, "forward": morphism_payload(iso.forward)},
        args.output,
    )
    return 0


def _cmd_gen(args) -> int:
    obj = gen(args.profile, args.seed)
    _write(dumps_document(obj), args.output)
    return 0


def _cmd_suite(args) -> int:
    out = run_suite(args.seeds)
    _report(out, args.output)
    return 0 if out["ok"] else 1


# -- dispatch ------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="fhodge", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("--output", "-o", default=None)
        return p

    add("validate", help="validate a document").add_argument("file")
    for name in (
        "etale",
        "connected",
        "special-part",
        "dual",
        "realize",
        "arrow",
        "hodge",
        "univ-ext",
        "kernel",
        "cokernel",
        "roundtrip",
    ):
        add(name).add_argument("file")
    add("check-exact").add_argument("file")
    hom = add("hom")
    hom.add_argument("source")
    hom.add_argument("target")
    g = add("gen")
    g.add_argument("--profile", required=True)
    g.add_argument("--seed", type=int, required=True)
    s = add("suite")
    s.add_argument("--seeds", type=int, required=True)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    cmd = args.command
    try:
        if cmd == "validate":
            return _cmd_validate(args)
        if cmd in ("kernel", "cokernel"):
            return _cmd_kernel(args, cmd)
        if cmd == "check-exact":
            return _cmd_check_exact(args)
        if cmd == "hom":
            return _cmd_hom(args)
        if cmd == "roundtrip":
            return _cmd_roundtrip(args)
        if cmd == "gen":
            return _cmd_gen(args)
        if cmd == "suite":
            return _cmd_suite(args)
        return _cmd_transform(cmd, args)
    except MalformedInput as exc:
        print(json.dumps(exc.report(), sort_keys=True), file=sys.stderr)
        return 2
    except InternalError as exc:
        print(json.dumps(exc.report(), sort_keys=True), file=sys.stderr)
        return 1
    except FHError as exc:
        print(json.dumps(exc.report(), sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
