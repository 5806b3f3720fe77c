"""Command line entry point.

Exit codes: 0 ok, 1 parse or type error, 2 domain error, 3 verification
failure (including internal consistency errors).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Any

from .. import analysis, group, onedim, rep, verify
from ..errors import DomainError, ExprSyntaxError, HeisrepError
from ..scalar import GENERIC_LABEL
from .ast import to_json as ast_json
from .ast import to_source
from .evaluate import Config, evaluate, numeric_json, render_value, typecheck, value_json
from .parser import parse_expr

SCHEMA_VERSION = "1.0"
ENV_PREFIX = "HEISREP_"
ROUNDING_NOTE = "bound covers series truncation only; floating-point rounding is not tracked"


class VerificationFailed(Exception):
    def __init__(self, value):
        super().__init__("verification failed")
        self.value = value


def parse_q(text: str) -> Fraction | float:
    try:
        return Fraction(text)
    except ValueError:
        return float(text)


def parse_alpha(text: str) -> Fraction | complex:
    try:
        return Fraction(text)
    except ValueError:
        return complex(text.replace(" ", "").replace("i", "j"))


def _config(args: argparse.Namespace) -> Config:
    def pick(name: str):
        val = getattr(args, name, None)
        if val is None:
            val = os.environ.get(ENV_PREFIX + name.upper())
        return val

    q, alpha, tol = pick("q"), pick("alpha"), pick("tol")
    return Config(
        q=parse_q(q) if q is not None else None,
        alpha=parse_alpha(alpha) if alpha is not None else None,
        tol=float(tol) if tol is not None else 1e-10,
    )


def _config_json(cfg: Config) -> dict:
    return {
        "q": None if cfg.q is None else str(cfg.q),
        "alpha": None if cfg.alpha is None else str(cfg.alpha),
        "tol": cfg.tol,
    }


# command handlers: each returns (value_json, rendering, extra fields) -----


def _eval_expr(text: str, cfg: Config):
    node = parse_expr(text)
    kind = typecheck(node)
    value = evaluate(node, cfg)
    return value_json(value), render_value(value), {"type": kind, "numeric": numeric_json(value, cfg)}


def cmd_eval(words: list[str], cfg: Config):
    return _eval_expr(" ".join(words), cfg)


def cmd_parse(words: list[str], cfg: Config):
    node = parse_expr(" ".join(words))
    return {"ast": ast_json(node)}, to_source(node), {"type": typecheck(node)}


def cmd_group(words: list[str], cfg: Config):
    if words == ["class3"]:
        xy, xyz = group.class3_witness()
        value = {
            "x": group.CLASS3_X.to_json(),
            "y": group.CLASS3_Y.to_json(),
            "z": group.CLASS3_Z.to_json(),
            "comm_xy": xy.to_json(),
            "comm_xy_z": xyz.to_json(),
        }
        return value, xyz.render(), {}
    return cmd_eval(words, cfg)


def _single_label(text: str, cfg: Config):
    value = evaluate(parse_expr(text), cfg)
    if not isinstance(value, onedim.OneDimDistribution) or len(value.terms) != 1:
        raise DomainError(f"{text!r} is not a single g[label] atom")
    return next(iter(value.terms))


def cmd_onedim(words: list[str], cfg: Config):
    action, rest = (words[0], words[1:]) if words else ("", [])
    if action == "gentries":
        if len(rest) != 3:
            raise DomainError("usage: onedim gentries LABEL LEVEL DEPTH")
        w = onedim.g_entries(_single_label(rest[0], cfg), int(rest[1]), int(rest[2]))
        return w.to_json(), None, {}
    if action == "witness":
        f = evaluate(parse_expr(" ".join(rest)), cfg)
        if not isinstance(f, onedim.TestSequence):
            raise DomainError("witness expects a test sequence")
        q0 = cfg.q if isinstance(cfg.q, Fraction) else Fraction(2)
        a0 = cfg.alpha if isinstance(cfg.alpha, Fraction) else Fraction(3)
        w = onedim.proper_invariant_witness(f, q0, a0)
        return w.to_json(), w.generator_sequence.render(), {}
    if action == "laurent":
        f = evaluate(parse_expr(" ".join(rest)), cfg)
        if not isinstance(f, onedim.TestSequence):
            raise DomainError("laurent expects a test sequence")
        poly = onedim.ts_to_laurent(f)
        return {str(n): c.to_json() for n, c in poly.items()}, None, {}
    if action == "eigen":
        depth = int(rest[0]) if rest else 3
        levels = int(rest[1]) if len(rest) > 1 else 3
        if not isinstance(cfg.q, Fraction) or not isinstance(cfg.alpha, Fraction):
            raise DomainError("onedim eigen needs rational --q and --alpha")
        windows = onedim.eigen_solve(cfg.q, cfg.alpha, depth, levels)
        return {"rank": 1, "windows": [w.to_json() for w in windows]}, None, {}
    return cmd_eval(words, cfg)


def cmd_rep(words: list[str], cfg: Config):
    if words and words[0] == "kernel":
        x = evaluate(parse_expr(" ".join(words[1:])), cfg)
        if not isinstance(x, rep.IndElement):
            raise DomainError("kernel expects an induced-module element")
        coords = rep.kernel_decompose(x)
        value = [{"m": m, "coeff": c.to_json()} for m, c in coords]
        text = " + ".join(f"({c.render()})*v_{m}" for m, c in coords) or "0*v_0"
        return value, text, {}
    return cmd_eval(words, cfg)


def cmd_trace(words: list[str], cfg: Config):
    params: dict[str, str] = {}
    for w in words:
        if "=" not in w:
            raise DomainError(f"expected key=value, got {w!r}")
        k, v = w.split("=", 1)
        params[k.strip()] = v.strip()
    unknown = set(params) - {"a", "b", "c", "d", "q", "alpha", "tol", "label"}
    if unknown:
        raise DomainError(f"unknown trace parameter(s): {', '.join(sorted(unknown))}")
    g = group.ExtHeisElement(*(int(params.get(k, 0)) for k in "abcd"))
    label = _single_label(params["label"], cfg) if "label" in params else GENERIC_LABEL
    q0 = parse_q(params["q"]) if "q" in params else cfg.q
    a0 = parse_alpha(params["alpha"]) if "alpha" in params else cfg.alpha
    tol = float(params["tol"]) if "tol" in params else cfg.tol
    if q0 is None:
        raise DomainError("trace needs q")
    a0 = Fraction(1) if a0 is None else a0
    ts = analysis.trace_formal(g, label)
    if ts is None:
        value = {"value_re": 0.0, "value_im": 0.0, "bound": 0.0, "terms_used": 1, "zero": True}
        return value, "0", {}
    res = analysis.trace_eval(ts, float(q0), complex(a0), tol)
    value = res.to_json() | {"note": ROUNDING_NOTE}
    return value, f"{res.value.real:.15g}{res.value.imag:+.15g}j", {"numeric": None}


def cmd_classify(words: list[str], cfg: Config):
    if len(words) != 2:
        raise DomainError("usage: classify g[LABEL1] g[LABEL2]")
    l1, l2 = (_single_label(w, cfg) for w in words)
    q0 = cfg.q if isinstance(cfg.q, Fraction) else None
    res = analysis.classify_iso(l1, l2, q0)
    return res.to_json(), res.render(), {}


def cmd_analysis(words: list[str], cfg: Config):
    if words and words[0] == "trace" and all("=" in w for w in words[1:]):
        return cmd_trace(words[1:], cfg)
    if words and words[0] == "classify" and len(words) == 3:
        return cmd_classify(words[1:], cfg)
    return cmd_eval(words, cfg)


def cmd_oracle(args: argparse.Namespace, cfg: Config):
    report = verify.oracle_report(args.p, args.window)
    if not report["passed"]:
        raise VerificationFailed(report)
    return report, None, {}


def cmd_verify(words: list[str], cfg: Config):
    try:
        results = verify.run(words or ["all"])
    except KeyError as exc:
        raise DomainError(str(exc.args[0])) from exc
    value = {name: [c.to_json() for c in checks] for name, checks in results.items()}
    if not all(c.passed for checks in results.values() for c in checks):
        raise VerificationFailed(value)
    lines = [f"{name}: {'PASS' if all(c.passed for c in checks) else 'FAIL'}" for name, checks in results.items()]
    return value, "\n".join(lines), {}


EXPR_COMMANDS = {
    "eval": cmd_eval,
    "parse": cmd_parse,
    "group": cmd_group,
    "torsor": cmd_eval,
    "onedim": cmd_onedim,
    "rep": cmd_rep,
    "analysis": cmd_analysis,
    "trace": cmd_trace,
    "classify": cmd_classify,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", help="emit a JSON result object")
    common.add_argument("--q", help="residue field size q (rational or real)")
    common.add_argument("--alpha", help="value substituted for A (rational or complex)")
    common.add_argument("--tol", help="truncation tolerance for theta series")

    ap = argparse.ArgumentParser(prog="heisrep", parents=[common],
                                 description="Exact computations with the discrete Heisenberg group "
                                             "acting on distributions of two-dimensional local fields.")
    sub = ap.add_subparsers(dest="command", required=True)
    helps = {
        "eval": "evaluate an expression",
        "parse": "parse and re-print an expression (--json adds the syntax tree)",
        "group": "group arithmetic (or 'class3' for the nilpotency witness)",
        "torsor": "measure symbols and lifted elements",
        "onedim": "one-dimensional layer: expression, or gentries/witness/laurent/eigen",
        "rep": "Psi and the induced module: expression, or 'kernel EXPR'",
        "analysis": "traces, classification, Vandermonde and cyclic certificates",
        "trace": "numeric trace: a=.. c=.. d=.. q=.. alpha=.. tol=..",
        "classify": "decide whether two Psi_alpha are isomorphic",
        "verify": "run invariant suites ('all' or suite names)",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("words", nargs="*")
    p = sub.add_parser("oracle", parents=[common], help="finite-field oracle: 'verify --p P --window W'")
    p.add_argument("action", choices=["verify"])
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--window", type=int, default=2)
    return ap


def run_command(argv: list[str]) -> tuple[int, dict]:
    ap = build_parser()
    args = ap.parse_args(argv)
    envelope: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "ok": True,
        "command": args.command,
        "value": None,
        "rendering": None,
    }
    code = 0
    try:
        cfg = _config(args)
        envelope["config"] = _config_json(cfg)
        if args.command == "oracle":
            value, text, extra = cmd_oracle(args, cfg)
        else:
            value, text, extra = EXPR_COMMANDS[args.command](args.words, cfg)
        envelope.update(value=value, rendering=text)
        envelope.update({k: v for k, v in extra.items() if v is not None})
    except VerificationFailed as exc:
        code = 3
        envelope.update(ok=False, value=exc.value,
                        error={"code": "verification_failed", "message": "one or more checks failed"})
    except HeisrepError as exc:
        code = exc.exit_code
        err = {"code": exc.code, "message": str(exc)}
        if isinstance(exc, ExprSyntaxError):
            err.update(line=exc.line, column=exc.column, expected=list(exc.expected))
        envelope.update(ok=False, error=err)
    except (ValueError, ZeroDivisionError, IndexError, TypeError) as exc:
        code = 2
        envelope.update(ok=False, error={"code": "domain_error", "message": str(exc)})
    return code, envelope


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, envelope = run_command(argv)
    as_json = "--json" in argv
    if as_json:
        print(json.dumps(envelope, indent=2, default=str))
    elif envelope["ok"]:
        text = envelope["rendering"]
        print(text if text is not None else json.dumps(envelope["value"], indent=2, default=str))
    else:
        err = envelope["error"]
        print(f"error [{err['code']}]: {err['message']}", file=sys.stderr)
        if err["code"] == "verification_failed":
            print(json.dumps(envelope["value"], indent=2, default=str), file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
