"""Command-line front end.

Reports go to stdout as JSON (or a plain text rendering); diagnostics go to
stderr.  Exit codes: 0 success, 1 failed check or constructor precondition,
2 bad input.
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import sys

from .charalg import CharacterError, LMonomial, QChar, SpectralPoint, is_dominant
from .grothendieck import DEFAULT_DEPTH, tq_report_json, verify_tq_identity
from .qcharlib import (
    barchi,
    eval_module_char_slN,
    fundamental_top_terms,
    lift_example_char,
    mminus_char,
    mplus_char,
    nplus_char,
    parabolic_verma_char_slN,
    sl2_string_char,
)
from .rootdata import RootDataError, build_root_data

QCHAR_KINDS = ("eval", "verma", "mplus", "mminus", "nplus", "barchi", "top", "string", "lift")
VERIFY_KINDS = ("tq", "f-identity", "dominance", "spectrum")


class BadInput(Exception):
    pass


def _emit(obj, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        sys.stdout.write(_render_text(obj) + "\n")


def _render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k in sorted(obj):
            v = obj[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(_render_text(v, indent) if isinstance(v, (dict, list)) else f"{pad}- {v}" for v in obj)
    return f"{pad}{obj}"


def _qchar_payload(x: QChar) -> dict:
    out = x.to_json()
    out["type"] = x.rd.type_label
    out["conjectural"] = bool(x.conjectural)
    out["finiteness"] = x.finiteness()
    return out


def _point(base: str, qexp: int) -> SpectralPoint:
    return SpectralPoint(base, qexp)


def cmd_qchar(args) -> int:
    rd = build_root_data(args.type)
    a = _point(args.base, args.qexp)
    depth = args.depth
    kind = args.kind
    if kind == "eval":
        if not args.lam:
            raise BadInput("--lambda is required")
        x = eval_module_char_slN(tuple(args.lam), a, rd)
    elif kind == "verma":
        x = parabolic_verma_char_slN(args.i, a, rd, depth, args.k_tag)
    elif kind == "mminus":
        x = mminus_char(args.i, a, rd, depth, args.k_tag)
    elif kind == "mplus":
        x = mplus_char(args.i, a, rd, depth)
    elif kind == "nplus":
        x = nplus_char(args.i, a, rd, depth)
    elif kind == "barchi":
        x = barchi(args.i, rd, depth)
    elif kind == "top":
        x = fundamental_top_terms(args.i, a, rd)
    elif kind == "string":
        if rd.type_label != "A1":
            raise CharacterError("sl2 strings live in type A1")
        tail = _point(args.tail_base or args.base, args.tail_qexp)
        x = sl2_string_char(a, tail, depth, finite=args.finite or None)
    else:
        params = {"a": a, "depth": depth, "i": args.i, "n": rd.rank, "s": args.s, "variant": args.variant}
        x = lift_example_char(args.lift, params)
    _emit(_qchar_payload(x), args.format)
    return 0


def _load_chain(spec: str | None):
    from .bethe.chain import ChainError, ChainSpec, default_chain

    if spec is None:
        return default_chain(4)
    try:
        data = json.loads(spec) if spec.lstrip().startswith("{") else json.load(open(spec, encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise BadInput(f"cannot read chain spec: {exc}") from exc
    try:
        return ChainSpec.from_json(data)
    except ChainError as exc:
        raise BadInput(str(exc)) from exc


def cmd_verify(args) -> int:
    kind = args.kind
    if kind == "tq":
        rd = build_root_data(args.type)
        nodes = [args.i] if args.i else list(rd.nodes)
        a = _point(args.base, args.qexp)
        reports = [tq_report_json(rd, i, args.depth, verify_tq_identity(rd, i, a, args.depth)) for i in nodes]
        ok = all(r["exact_equal"] for r in reports)
        _emit({"reports": reports, "ok": ok}, args.format)
        return 0 if ok else 1
    if kind == "dominance":
        if not args.monomial:
            raise BadInput("--monomial is required")
        try:
            m = LMonomial.from_json(json.loads(args.monomial))
        except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise BadInput(f"bad monomial: {exc}") from exc
        rd = build_root_data(args.type)
        res = is_dominant(m, rd)
        out = {"dominant": res.dominant}
        if res.dominant:
            out["witness"] = {
                "Y": [{"node": i, "base": p.base, "qexp": p.qexp, "exp": e} for (i, p), e in sorted(res.y_witness.items())],
                "X": [{"node": i, "base": p.base, "qexp": p.qexp, "exp": e} for (i, p), e in sorted(res.x_witness.items())],
                "y": [{"ynode": i, "num": b.numerator, "den": b.denominator} for i, b in m.y_items()],
            }
        else:
            out["failing_node"] = res.failing_node
        _emit(out, args.format)
        return 0
    chain = _load_chain(args.chain)
    if args.seed is not None:
        chain = dataclasses.replace(chain, seed=args.seed)
    if kind == "f-identity":
        from .bethe.fseries import verify_f_identity

        tol = args.tol if args.tol is not None else 1e-10
        nodes = [args.i] if args.i else list(chain.rd.nodes)
        errs = {str(i): verify_f_identity(chain, i, args.depth) for i in nodes}
        ok = all(e < tol for e in errs.values())
        _emit({"max_error": errs, "depth": args.depth, "tolerance": tol, "ok": ok}, args.format)
        return 0 if ok else 1
    from .bethe.spectrum import spectrum_report

    rep = spectrum_report(chain, n_starts=args.starts)
    _emit(rep, args.format)
    return 0 if rep["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="borelq", description="q-characters, TQ identities and Bethe ansatz checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--type", default="A1", help="Lie type label such as A2, B2, G2 (default A1)")
        p.add_argument("--i", type=int, default=None, help="node (1-based)")
        p.add_argument("--base", default="a", help="symbolic base of the spectral point (default a)")
        p.add_argument("--qexp", type=int, default=0, help="q-power of the spectral point (default 0)")
        p.add_argument("--format", choices=("json", "text"), default="json")

    q = sub.add_parser("qchar", help="compute a q-character")
    q.add_argument("kind", choices=QCHAR_KINDS)
    common(q)
    q.add_argument("--depth", type=int, default=4, help="truncation depth (default 4)")
    q.add_argument("--lambda", dest="lam", type=int, nargs="+", help="partition parts for eval")
    q.add_argument("--k-tag", default="K", help="opaque tag for the generic K of verma/mminus")
    q.add_argument("--tail-base", default=None, help="tail base for string (default: --base)")
    q.add_argument("--tail-qexp", type=int, default=0, help="tail q-power for string")
    q.add_argument("--finite", action="store_true", help="require a finite string")
    q.add_argument("--lift", choices=("slN_string_lift", "sl3_example"), default="slN_string_lift")
    q.add_argument("--s", type=int, default=1, help="string length for slN_string_lift")
    q.add_argument("--variant", type=int, choices=(3, 5), default=5, help="sl3_example module")
    q.set_defaults(func=cmd_qchar)

    v = sub.add_parser("verify", help="run a verification")
    v.add_argument("kind", choices=VERIFY_KINDS)
    common(v)
    v.add_argument("--depth", type=int, default=None, help="truncation depth (tq default 5, f-identity 6)")
    v.add_argument("--chain", default=None, help="chain spec JSON file or inline JSON (default L=4 chain)")
    v.add_argument("--monomial", default=None, help="LMonomial JSON for dominance")
    v.add_argument("--tol", type=float, default=None, help="tolerance override for f-identity")
    v.add_argument("--seed", type=int, default=None, help="override the chain seed for random Newton starts")
    v.add_argument("--starts", type=int, default=200, help="random Newton starts per sector")
    v.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "qchar" and args.kind in ("verma", "mminus", "mplus", "nplus", "barchi", "top") and args.i is None:
        args.i = 1
    if args.command == "verify" and args.depth is None:
        args.depth = DEFAULT_DEPTH if args.kind == "tq" else 6
    from .bethe.chain import ChainError

    try:
        return args.func(args)
    except (BadInput, RootDataError, ChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CharacterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
