"""Invariant suites run by ``heisrep verify``.

Each suite returns a list of ``Check`` records.  The suites are seeded and
sized to finish in a few seconds each; the pytest suite exercises the same
properties more exhaustively.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import analysis, group, onedim, oracle, rep, torsor
from .scalar import (
    DELTA_LABEL,
    GENERIC_LABEL,
    HAAR_LABEL,
    ONE,
    AlphaLabel,
    SymScalar,
)

SEED = 20240601


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _check(name: str, fn: Callable[[], bool | tuple[bool, str]]) -> Check:
    try:
        out = fn()
    except Exception as exc:  # a crash is a failed check, reported not raised
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    if isinstance(out, tuple):
        return Check(name, bool(out[0]), out[1])
    return Check(name, bool(out))


# random generators ---------------------------------------------------------


def random_scalar(rng: random.Random, terms: int = 3, den: int | None = None) -> SymScalar:
    num = {}
    for _ in range(rng.randint(0, terms)):
        num[(rng.randint(-3, 3), rng.randint(-2, 2))] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return SymScalar(num, rng.randint(0, 2) if den is None else den)


def random_label(rng: random.Random) -> AlphaLabel:
    return AlphaLabel(rng.randint(-3, 3), rng.choice([-1, 0, 1]), Fraction(rng.randint(1, 6), rng.randint(1, 4)))


def random_psi(rng: random.Random, size: int = 3) -> rep.PsiElement:
    x = rep.PsiElement({})
    for _ in range(rng.randint(1, size)):
        label = rng.choice([DELTA_LABEL, HAAR_LABEL, GENERIC_LABEL, random_label(rng)])
        x = x + rep.PsiElement.atom(label, rng.randint(-4, 4), random_scalar(rng, 2, 0) or ONE)
    return x


def random_ext(rng: random.Random, k: int = 3) -> group.ExtHeisElement:
    return group.ExtHeisElement(*(rng.randint(-k, k) for _ in range(4)))


def random_ts(rng: random.Random) -> onedim.TestSequence:
    return onedim.TestSequence(
        rng.randint(-3, 3), [random_scalar(rng, 2, 0) for _ in range(rng.randint(1, 5))]
    )


# suites --------------------------------------------------------------------


def suite_scalar() -> list[Check]:
    rng = random.Random(SEED)
    cases = [(random_scalar(rng), random_scalar(rng), random_scalar(rng)) for _ in range(200)]

    def ring():
        return all(
            (x + y) + z == x + (y + z) and (x * y) * z == x * (y * z)
            and x * (y + z) == x * y + x * z and x * y == y * x and x + y == y + x
            for x, y, z in cases
        )

    def hom():
        for x, y, _ in cases:
            q0 = Fraction(rng.choice([2, 3, 5, 7]), rng.choice([1, 2]))
            a0 = Fraction(rng.choice([-3, -1, 2, 5]), rng.choice([1, 3]))
            if q0 == 1:
                continue
            if (x * y).eval(q0, a0) != x.eval(q0, a0) * y.eval(q0, a0):
                return False
            if (x + y).eval(q0, a0) != x.eval(q0, a0) + y.eval(q0, a0):
                return False
        return True

    def canonical():
        return all(SymScalar(x.numerator, x.den_pow) == x for x, _, _ in cases)

    return [_check("ring axioms", ring), _check("eval homomorphism", hom), _check("canonical idempotent", canonical)]


def suite_group() -> list[Check]:
    rng = random.Random(SEED)
    r = range(-2, 3)
    trip = list(itertools.product(r, repeat=3))

    def assoc():
        sample = [tuple(group.HeisElement(*rng.choice(trip)) for _ in range(3)) for _ in range(2000)]
        return all(group.heis_mul(group.heis_mul(x, y), z) == group.heis_mul(x, group.heis_mul(y, z)) for x, y, z in sample)

    def matrix_oracle():
        for _ in range(2000):
            x, y = random_ext(rng, 5), random_ext(rng, 5)
            if group.matrix_embed(group.ext_mul(x, y)) != group.matmul(group.matrix_embed(x), group.matrix_embed(y)):
                return False
        return True

    def class3():
        xy, xyz = group.class3_witness()
        return xy == (1, 0, -1, 0) and xyz == (0, 0, 1, 0)

    def rd_conjugation():
        for a, b, c in trip:
            for d in range(-3, 4):
                conj = group.ext_mul(group.ext_mul((0, 0, 0, d), (a, b, c, 0)), (0, 0, 0, -d))
                if conj != group.embed(group.rd_auto(d, group.HeisElement(a, b, c))):
                    return False
        return True

    return [
        _check("heis associativity", assoc),
        _check("ext matrix oracle", matrix_oracle),
        _check("class-3 witness", class3),
        _check("rd agrees with conjugation", rd_conjugation),
    ]


def suite_torsor() -> list[Check]:
    r = range(-2, 3)
    elems = [group.HeisElement(*t) for t in itertools.product(r, repeat=3)]

    def oracle_law():
        for x in elems:
            for y in elems:
                lifted = torsor.lift_mul(torsor.from_heis(x), torsor.from_heis(y))
                if torsor.to_heis(lifted) != group.heis_mul(x, y):
                    return False
        return True

    def rd_law():
        for x in elems:
            for d in range(-2, 3):
                if torsor.to_heis(torsor.lift_rd(d, torsor.from_heis(x))) != group.rd_auto(d, x):
                    return False
        return True

    return [_check("lift_mul matches heis_mul", oracle_law), _check("lift_rd matches rd_auto", rd_law)]


def suite_onedim() -> list[Check]:
    rng = random.Random(SEED)
    labels = [DELTA_LABEL, HAAR_LABEL, GENERIC_LABEL, AlphaLabel(1, -1, 1)]

    def compat():
        return all(
            onedim.tower_transition(onedim.g_entries(lab, m + 1, d + 1)) == onedim.g_entries(lab, m, d)
            for lab in labels for m in range(0, 5) for d in range(0, 5)
        )

    def eigen():
        return all(
            onedim.tower_shift(onedim.g_entries(lab, m, d)) == onedim.g_entries(lab, m + 1, d).scale(lab.value())
            for lab in labels for m in range(0, 5) for d in range(0, 5)
        )

    def level_independent():
        for _ in range(50):
            f = random_ts(rng)
            phi = onedim.OneDimDistribution.atom(rng.choice(labels))
            if onedim.pair(f, phi) != onedim.pair(f, phi, extra=1):
                return False
        return True

    def normalized():
        return all(onedim.pair(onedim.CHAR_O, onedim.OneDimDistribution.atom(lab)) == ONE for lab in labels)

    def witness():
        for _ in range(20):
            f = random_ts(rng)
            if f.is_zero:
                continue
            try:
                if not onedim.proper_invariant_witness(f, 3, 2).proper:
                    return False
            except onedim.ZeroInput:
                continue
        return True

    def eigen_solver():
        for q0 in (2, 3):
            for a0 in (1, 2, Fraction(7, 2)):
                onedim.eigen_solve(q0, a0, 2, 2)
        return True

    return [
        _check("tower compatibility", compat),
        _check("eigen property", eigen),
        _check("pairing level independence", level_independent),
        _check("pair(char O, g) = 1", normalized),
        _check("proper invariant witness", witness),
        _check("eigen solver rank one", eigen_solver),
    ]


def suite_rep() -> list[Check]:
    rng = random.Random(SEED)

    def action():
        for _ in range(60):
            g, h, x = random_ext(rng), random_ext(rng), random_psi(rng)
            if rep.act_psi(group.ext_mul(g, h), x) != rep.act_psi(g, rep.act_psi(h, x)):
                return False
        return True

    def fourier():
        for _ in range(60):
            x = random_psi(rng)
            a, b, c = (rng.randint(-3, 3) for _ in range(3))
            if rep.fourier_psi(rep.fourier_psi(x)) != x:
                return False
            lhs = rep.act_psi(group.ExtHeisElement(a, b, c, 0), rep.fourier_psi(x))
            rhs = rep.fourier_psi(rep.act_psi(group.ExtHeisElement(-a, -b, c, 0), x))
            if lhs != rhs:
                return False
        return True

    def special():
        return all(
            rep.fourier_psi(rep.PsiElement.atom(HAAR_LABEL, k)) == rep.PsiElement.atom(HAAR_LABEL, -k)
            and rep.fourier_psi(rep.PsiElement.atom(DELTA_LABEL, k)) == rep.PsiElement.atom(DELTA_LABEL, -k - 2)
            for k in range(-5, 6)
        )

    def kernel():
        for _ in range(40):
            coords = {m: SymScalar.const(rng.randint(-4, 4)) for m in rng.sample(range(-5, 6), 3)}
            x = rep.IndElement({})
            for m, c in coords.items():
                x = x + rep.kernel_vector(m).scale(c)
            got = {m: c for m, c in rep.kernel_decompose(x)}
            if got != {m: c for m, c in coords.items() if c}:
                return False
        return rep.beta_map(rep.kernel_vector(0)).is_zero()

    def kernel_action():
        for a, b, c in itertools.product(range(-2, 3), repeat=3):
            for m in range(-3, 4):
                lhs = rep.act_ind(group.HeisElement(a, b, c), rep.shifted_kernel_vector(m))
                rhs = rep.shifted_kernel_vector(m + b).scale(SymScalar.q_pow(-c - a * m))
                if lhs != rhs:
                    return False
        return True

    return [
        _check("G~ action axiom", action),
        _check("Fourier involution and equivariance", fourier),
        _check("Fourier of delta and Haar atoms", special),
        _check("kernel decomposition round trip", kernel),
        _check("kernel action", kernel_action),
    ]


def suite_analysis() -> list[Check]:
    rng = random.Random(SEED)

    def vanish():
        return all(
            (analysis.trace_formal(group.ExtHeisElement(a, b, c, d), GENERIC_LABEL) is None) == (b != 0)
            for a, b, c, d in itertools.product(range(-2, 3), repeat=4)
        )

    def reference():
        ts = analysis.trace_formal(group.ExtHeisElement(0, 0, 0, 2), DELTA_LABEL)
        return abs(analysis.trace_eval(ts, 2, 1, 1e-12).value - 2.5317402) < 1e-7

    def agreement():
        for _ in range(20):
            ts = analysis.trace_formal(
                group.ExtHeisElement(rng.randint(-2, 2), 0, rng.randint(-2, 2), rng.randint(1, 3)), GENERIC_LABEL
            )
            q0 = rng.choice([2, 3, 2.5])
            a0 = complex(rng.uniform(0.5, 3), rng.uniform(-1, 1))
            t = analysis.trace_eval(ts, q0, a0, 1e-11)
            j = analysis.jacobi_eval(ts, q0, a0, 1e-11)
            if abs(t.value - j.value) > t.bound + j.bound + 1e-12 * max(1.0, abs(t.value)):
                return False
        return True

    def vandermonde():
        for n in range(1, 5):
            for levels in itertools.combinations(range(-3, 4), n):
                cert = analysis.vandermonde_certificate(levels, 2)
                if cert.det != cert.product or cert.det == 0:
                    return False
        return True

    def classify():
        a = AlphaLabel(0, 0, 3)
        return (
            analysis.classify_iso(AlphaLabel(0, 1, 1), AlphaLabel(3, 1, 1)) == analysis.Isomorphic(-3)
            and analysis.classify_iso(a, AlphaLabel(0, 0, 12), 2) == analysis.Isomorphic(-2)
            and analysis.classify_iso(AlphaLabel(0, 1, 1), AlphaLabel(0, -1, 1)) == analysis.Distinct()
        )

    return [
        _check("trace vanishes iff b != 0", vanish),
        _check("theta reference value", reference),
        _check("trace and Jacobi forms agree", agreement),
        _check("Vandermonde determinant", vandermonde),
        _check("classification table", classify),
    ]


def all_test_sequences(window: int, entries=(0, 1, 2)) -> list[onedim.TestSequence]:
    """Every sequence whose listed window lies inside [-window, window]."""
    seen = set()
    out = []
    for start in range(-window, window + 1):
        for length in range(1, window - start + 2):
            for vals in itertools.product(entries, repeat=length):
                f = onedim.TestSequence(start, [SymScalar.const(v) for v in vals])
                if f not in seen:
                    seen.add(f)
                    out.append(f)
    return out


def oracle_report(p: int, window: int) -> dict:
    """Compare the finite model of F_p((u)) with the symbolic layer."""
    labels = [AlphaLabel(0, 0, 1), AlphaLabel(1, 0, 1), AlphaLabel(2, 0, 1)]
    level = window
    pair_total = pair_fail = 0
    for f in all_test_sequences(window):
        for lab in labels:
            w = onedim.g_entries(lab, level, 2 * window)
            data = oracle.radial_from_window(w, p)
            brute = oracle.finite_pair(f, data, p, level)
            symbolic = onedim.pair(f, onedim.OneDimDistribution.atom(lab)).eval(p, 1)
            pair_total += 1
            pair_fail += brute != symbolic

    push_total = push_fail = 0
    rng = random.Random(SEED + p)
    for trial in range(20):
        top = window
        lo = -window
        entries = [Fraction(rng.randint(-3, 3)) for _ in range(top + 1 - lo + 1)]
        w = onedim.TowerWindow(top + 1, lo, tuple(SymScalar.const(x) for x in entries))
        data = oracle.radial_from_window(w, p)
        fn = oracle.distribution_function(data, p, -lo, top + 1)
        pushed = oracle.finite_pushforward(fn)
        expected = oracle.radial_from_window(onedim.tower_transition(w), p)
        push_total += 1
        push_fail += any(pushed.get(n, 0) != v for n, v in expected.items())

    char_o = oracle.finite_embed(onedim.CHAR_O, p, window, window)
    dual = oracle.finite_fourier(char_o)
    fourier_dev = max(abs(dual(x) - char_o(x)) for x in dual.points())

    return {
        "p": p,
        "window": window,
        "pair": {"cases": pair_total, "failures": pair_fail},
        "pushforward": {"cases": push_total, "failures": push_fail},
        "fourier_self_duality": {"max_deviation": fourier_dev, "passed": fourier_dev < 1e-9},
        "passed": pair_fail == 0 and push_fail == 0 and fourier_dev < 1e-9,
    }


def suite_oracle() -> list[Check]:
    checks = []
    for p in (2, 3):
        rep_ = oracle_report(p, 2)
        checks.append(Check(f"finite pair p={p}", rep_["pair"]["failures"] == 0, str(rep_["pair"])))
        checks.append(Check(f"finite pushforward p={p}", rep_["pushforward"]["failures"] == 0, str(rep_["pushforward"])))
        checks.append(Check(f"Fourier self-duality p={p}", rep_["fourier_self_duality"]["passed"],
                            str(rep_["fourier_self_duality"]["max_deviation"])))
    return checks


def suite_cli() -> list[Check]:
    from .cli import generate
    from .cli.ast import to_source
    from .cli.evaluate import Config, evaluate, render_value
    from .cli.parser import parse_expr

    rng = random.Random(SEED)
    cfg = Config(q=Fraction(2))

    def roundtrip():
        for _ in range(200):
            node = generate.expression(rng)
            if parse_expr(to_source(node)) != node:
                return False, to_source(node)
        return True

    def value_roundtrip():
        for _ in range(200):
            node = generate.expression(rng)
            value = evaluate(node, cfg)
            if evaluate(parse_expr(render_value(value)), cfg) != value:
                return False, to_source(node)
        return True

    return [_check("print/parse round trip", roundtrip), _check("value render round trip", value_roundtrip)]


SUITES: dict[str, Callable[[], list[Check]]] = {
    "scalar": suite_scalar,
    "group": suite_group,
    "torsor": suite_torsor,
    "onedim": suite_onedim,
    "rep": suite_rep,
    "analysis": suite_analysis,
    "oracle": suite_oracle,
    "cli": suite_cli,
}


def run(names: list[str] | None = None) -> dict[str, list[Check]]:
    names = list(SUITES) if not names or names == ["all"] else names
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {', '.join(unknown)}")
    return {name: SUITES[name]() for name in names}
