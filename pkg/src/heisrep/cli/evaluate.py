"""Static type checking and evaluation of parsed expressions."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .. import analysis, group, onedim, rep, torsor
from ..errors import DomainError, ExprTypeError
from ..scalar import DELTA_LABEL, HAAR_LABEL, A, AlphaLabel, ONE, Q, SymScalar
from .ast import TS, Atom, BinOp, Call, GroupLit, KernelVec, Mu, Named, Neg, Node, Num, Pow, Sym

ADDITIVE = {"scalar", "ts", "dist", "psi", "ind"}
SCALABLE = ADDITIVE | {"measure"}
GROUPS = {"heis", "ext"}


@dataclass(frozen=True)
class Config:
    q: Fraction | float | None = None
    alpha: Fraction | complex | None = None
    tol: float = 1e-10


@dataclass(frozen=True)
class ZeroTrace:
    """The trace of an element with b != 0, which vanishes identically."""

    def render(self) -> str:
        return f"trace(HE(0,1,0,0), g[{DELTA_LABEL.render()}])"

    def to_json(self) -> dict:
        return {"zero": True, "text": "0"}


# type checking -----------------------------------------------------------


def _group_join(x: str, y: str) -> str:
    return "ext" if "ext" in (x, y) else "heis"


def _is_int_literal(node: Node) -> bool:
    return isinstance(node, Num) or (isinstance(node, Neg) and isinstance(node.operand, Num))


def typecheck(node: Node) -> str:
    if isinstance(node, (Num, Sym)):
        return "scalar"
    if isinstance(node, Neg):
        t = typecheck(node.operand)
        if t not in ADDITIVE:
            raise ExprTypeError(f"cannot negate a value of type {t}")
        return t
    if isinstance(node, BinOp):
        lt, rt = typecheck(node.left), typecheck(node.right)
        if node.op in "+-":
            if lt != rt or lt not in ADDITIVE:
                raise ExprTypeError(f"cannot apply {node.op!r} to {lt} and {rt}")
            return lt
        if node.op == "*":
            if lt == "scalar" and rt in SCALABLE:
                return rt
            if rt == "scalar" and lt in SCALABLE:
                return lt
            if lt in GROUPS and rt in GROUPS:
                return _group_join(lt, rt)
            if lt == rt and lt in ("measure", "lift"):
                return lt
            raise ExprTypeError(f"cannot multiply {lt} by {rt}")
        if rt != "scalar" or lt not in SCALABLE:
            raise ExprTypeError(f"cannot divide {lt} by {rt}")
        return lt
    if isinstance(node, Pow):
        t = typecheck(node.base)
        if t not in ("scalar", "heis", "ext"):
            raise ExprTypeError(f"cannot raise {t} to a power")
        return t
    if isinstance(node, GroupLit):
        return {"H": "heis", "HE": "ext", "lift": "lift"}[node.kind]
    if isinstance(node, Atom):
        if typecheck(node.label) != "scalar":
            raise ExprTypeError("labels must be scalar expressions")
        return {"psi": "psi", "ind": "ind", "g": "dist"}[node.kind]
    if isinstance(node, Named):
        return "dist"
    if isinstance(node, KernelVec):
        return "ind"
    if isinstance(node, TS):
        for item in node.items:
            if typecheck(item) != "scalar":
                raise ExprTypeError("test sequence entries must be scalars")
        return "ts"
    if isinstance(node, Mu):
        return "measure"
    if isinstance(node, Call):
        return _typecheck_call(node)
    raise ExprTypeError(f"unknown node {node!r}")


def _typecheck_call(node: Call) -> str:
    name = node.name
    if name in ("rd", "shift") or name == "vandermonde":
        int_args = node.args if name == "vandermonde" else node.args[:1] if name == "rd" else node.args[1:]
        for arg in int_args:
            if not _is_int_literal(arg):
                raise ExprTypeError(f"{name} expects integer literals")
    types = [typecheck(a) if not _is_int_literal(a) else "int" for a in node.args]

    def want(ok: bool, msg: str):
        if not ok:
            raise ExprTypeError(f"{name}: {msg}, got {', '.join(types)}")

    if name == "act":
        g, x = types
        want(g in GROUPS, "first argument must be a group element")
        want(x in ("psi", "ind", "measure"), "second argument must be psi, ind or measure")
        if x == "measure":
            want(g == "heis", "only H(...) acts on measure symbols")
        return x
    if name == "fourier":
        want(types[0] in ("dist", "psi"), "argument must be a distribution or psi")
        return types[0]
    if name == "beta":
        want(types[0] == "ind", "argument must be an induced-module element")
        return "psi"
    if name == "pair":
        want(types == ["ts", "dist"], "expects (test sequence, distribution)")
        return "scalar"
    if name == "trace":
        want(types[0] in GROUPS and types[1] == "dist", "expects (group element, g[label])")
        return "trace"
    if name == "classify":
        want(types == ["dist", "dist"], "expects two g[label] atoms")
        return "classification"
    if name == "vandermonde":
        return "vandermonde"
    if name == "cyclic":
        want(types[0] == "ind", "argument must be a kernel element")
        return "cyclic"
    if name == "rd":
        want(types[1] in ("heis", "lift"), "second argument must be H(...) or lift(...)")
        return types[1]
    if name == "comm":
        want(types[0] in GROUPS and types[1] in GROUPS, "expects two group elements")
        return _group_join(*types)
    if name == "inv":
        want(types[0] in GROUPS, "expects a group element")
        return types[0]
    if name == "shift":
        want(types[0] == "ts", "first argument must be a test sequence")
        return "ts"
    raise ExprTypeError(f"unknown function {name}")


# evaluation --------------------------------------------------------------


def _int_literal(node: Node) -> int:
    if isinstance(node, Num):
        return node.value
    return -node.operand.value


def _as_label(x: SymScalar) -> AlphaLabel:
    try:
        return AlphaLabel.from_scalar(x)
    except DomainError as exc:
        raise DomainError(f"{x.render()} is not a label of the form r*q^e*A^s") from exc


def _single_label(d: onedim.OneDimDistribution) -> AlphaLabel:
    if len(d.terms) != 1 or next(iter(d.terms.values())) != ONE:
        raise DomainError("expected a single atom g[label]")
    return next(iter(d.terms))


def _promote(x) -> group.ExtHeisElement:
    return x.extend() if isinstance(x, group.HeisElement) else x


def _scale(k: SymScalar, x):
    if isinstance(x, SymScalar):
        return k * x
    return x.scale(k)


def _group_pow(x, n: int):
    identity = group.IDENTITY if isinstance(x, group.HeisElement) else group.EXT_IDENTITY
    base = x if n >= 0 else x.inv()
    out = identity
    for _ in range(abs(n)):
        out = out * base
    return out


def evaluate(node: Node, config: Config = Config()) -> Any:
    typecheck(node)
    return _eval(node, config)


def _eval(node: Node, cfg: Config) -> Any:
    if isinstance(node, Num):
        return SymScalar.const(node.value)
    if isinstance(node, Sym):
        return Q if node.name == "q" else A
    if isinstance(node, Neg):
        return -_eval(node.operand, cfg)
    if isinstance(node, BinOp):
        x, y = _eval(node.left, cfg), _eval(node.right, cfg)
        if node.op == "+":
            return x + y
        if node.op == "-":
            return x - y
        if node.op == "/":
            return _scale(y.inverse(), x) if not isinstance(x, SymScalar) else x / y
        if isinstance(x, SymScalar) and not isinstance(y, SymScalar):
            return _scale(x, y)
        if isinstance(y, SymScalar) and not isinstance(x, SymScalar):
            return _scale(y, x)
        if isinstance(x, torsor.MeasureSymbol):
            return torsor.measure_tensor(x, y)
        if isinstance(x, torsor.LiftElement):
            return torsor.lift_mul(x, y)
        if isinstance(x, (group.HeisElement, group.ExtHeisElement)) and type(x) is not type(y):
            return group.ext_mul(_promote(x), _promote(y))
        return x * y
    if isinstance(node, Pow):
        x = _eval(node.base, cfg)
        if isinstance(x, SymScalar):
            return x ** node.exp
        return _group_pow(x, node.exp)
    if isinstance(node, GroupLit):
        if node.kind == "H":
            return group.HeisElement(*node.args)
        if node.kind == "HE":
            return group.ExtHeisElement(*node.args)
        return torsor.LiftElement(*node.args)
    if isinstance(node, Atom):
        label = _as_label(_eval(node.label, cfg))
        if node.kind == "psi":
            return rep.PsiElement.atom(label, node.index)
        if node.kind == "ind":
            return rep.IndElement.atom(label, node.index)
        return onedim.OneDimDistribution.atom(label)
    if isinstance(node, Named):
        return onedim.OneDimDistribution.atom(DELTA_LABEL if node.name == "delta" else HAAR_LABEL)
    if isinstance(node, KernelVec):
        return rep.kernel_vector(node.m)
    if isinstance(node, TS):
        return onedim.TestSequence(node.start, [_eval(x, cfg) for x in node.items])
    if isinstance(node, Mu):
        return torsor.MeasureSymbol(node.r, node.s)
    if isinstance(node, Call):
        return _eval_call(node, cfg)
    raise ExprTypeError(f"unknown node {node!r}")


def _need_q(cfg: Config) -> Fraction:
    if cfg.q is None:
        raise DomainError("this operation needs a concrete --q")
    if not isinstance(cfg.q, Fraction):
        raise DomainError("this operation needs a rational --q")
    return cfg.q


def _eval_call(node: Call, cfg: Config) -> Any:
    name = node.name
    if name == "vandermonde":
        return analysis.vandermonde_certificate([_int_literal(a) for a in node.args], _need_q(cfg))
    if name == "rd":
        d = _int_literal(node.args[0])
        x = _eval(node.args[1], cfg)
        if isinstance(x, torsor.LiftElement):
            return torsor.lift_rd(d, x)
        return group.rd_auto(d, x)
    if name == "shift":
        return onedim.ts_shift(_eval(node.args[0], cfg), _int_literal(node.args[1]))
    args = [_eval(a, cfg) for a in node.args]
    if name == "act":
        g, x = args
        if isinstance(x, rep.PsiElement):
            return rep.act_psi(_promote(g), x)
        if isinstance(x, rep.IndElement):
            return rep.act_ind(g, x)
        a, b, c = g
        return torsor.monomial_act(a, b, x).scale(SymScalar.q_pow(-c))
    if name == "fourier":
        x = args[0]
        if isinstance(x, rep.PsiElement):
            return rep.fourier_psi(x)
        return rep.fourier_onedim(x)
    if name == "beta":
        return rep.beta_map(args[0])
    if name == "pair":
        return onedim.pair(args[0], args[1])
    if name == "trace":
        g = _promote(args[0])
        label = _single_label(args[1])
        ts = analysis.trace_formal(g, label)
        return ZeroTrace() if ts is None else ts
    if name == "classify":
        q0 = cfg.q if isinstance(cfg.q, Fraction) else None
        return analysis.classify_iso(_single_label(args[0]), _single_label(args[1]), q0)
    if name == "cyclic":
        coords = rep.kernel_decompose(args[0])
        terms = []
        for m, c in coords:
            if not c.is_const():
                raise DomainError("cyclic generation needs rational coefficients")
            terms.append((m + 1, c.as_fraction()))  # v_m = v~_{m+1}
        return analysis.cyclic_generation(terms, _need_q(cfg))
    if name == "comm":
        x, y = args
        if isinstance(x, group.HeisElement) and isinstance(y, group.HeisElement):
            return group.heis_comm(x, y)
        return group.ext_comm(_promote(x), _promote(y))
    if name == "inv":
        return args[0].inv()
    raise ExprTypeError(f"unknown function {name}")


# rendering values back to source ------------------------------------------


def render_value(value: Any) -> str:
    """Canonical source text that evaluates back to ``value``."""
    if isinstance(value, (analysis.Isomorphic, analysis.Distinct)):
        return _render_classification(value)
    if isinstance(value, analysis.VandermondeCertificate):
        return "vandermonde(" + ", ".join(str(m) for m in value.levels) + ")"
    if isinstance(value, analysis.CyclicReconstruction):
        x = rep.IndElement({})
        for m, c in zip(value.levels, value.coefficients):
            x = x + rep.shifted_kernel_vector(m).scale(SymScalar.const(c))
        return f"cyclic({x.render()})"
    return value.render()


def _render_classification(value) -> str:
    if isinstance(value, analysis.Isomorphic):
        return f"classify(g[{AlphaLabel(value.shift, 0, 1).render()}], g[1])"
    return "classify(g[A], g[A^-1])"


def value_json(value: Any) -> Any:
    if hasattr(value, "to_json"):
        return value.to_json()
    raise TypeError(f"no JSON form for {value!r}")


def numeric_json(value: Any, cfg: Config) -> dict | None:
    """Evaluated numbers for scalars and traces when q / alpha are configured."""
    if cfg.q is None:
        return None
    alpha = cfg.alpha if cfg.alpha is not None else Fraction(1)
    if isinstance(value, SymScalar):
        if isinstance(cfg.q, Fraction) and isinstance(alpha, Fraction):
            return {"exact": str(value.eval(cfg.q, alpha))}
        z = value.eval_c(float(cfg.q), complex(alpha))
        return {"value_re": z.real, "value_im": z.imag}
    if isinstance(value, analysis.TraceSeries) and value.d >= 1:
        q0 = float(cfg.q)
        t = analysis.trace_eval(value, q0, complex(alpha), cfg.tol)
        j = analysis.jacobi_eval(value, q0, complex(alpha), cfg.tol)
        return {"trace": t.to_json(), "jacobi": j.to_json()}
    return None
