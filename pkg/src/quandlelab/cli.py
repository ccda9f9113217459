"""Command-line front end.

    quandlelab quandle analyze --spec dihedral:3
    quandlelab gl2 verify lemma-4.1 --l1 1 --l2 -1
    quandlelab catalog run --format text

Exit codes: 0 when every executed check passes, 1 when one fails (or a
search is inconclusive), 2 for usage errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Optional, Sequence

from . import acceptance, analysis, core
from .gl2 import lemmas
from .gl2.classes import DiagPair, Jordan, sample_members
from .gl2.matrix import DEFAULT_TOL, Mat2
from .gl2.witness import Status, WitnessReport, two_step_path

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    seed: int
    tol: Optional[float]
    samples: Optional[int]
    out: Optional[str]
    format: str

    def __post_init__(self):
        if self.tol is not None and not self.tol > 0:
            raise UsageError(f"--tol must be positive, got {self.tol}")
        if self.samples is not None and self.samples < 1:
            raise UsageError(f"--samples must be >= 1, got {self.samples}")

    def tol_or(self, default: float) -> float:
        return default if self.tol is None else self.tol

    def samples_or(self, default: int) -> int:
        return default if self.samples is None else self.samples


def parse_complex(text: str) -> complex:
    """Accepts ``2``, ``-1.5``, ``i``, ``-2i``, ``1+2i`` and the ``j`` spellings."""
    s = text.strip().replace(" ", "").replace("i", "j")
    s = re.sub(r"(^|[+-])j", r"\g<1>1j", s)
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def _int0(text: str) -> int:
    try:
        return int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


# -- output --------------------------------------------------------------

def _mat_text(m: Mat2) -> str:
    return "[[{}, {}], [{}, {}]]".format(*(_num_text(complex(z)) for z in m.to_complex().entries()))


def _num_text(z: complex) -> str:
    z = complex(z.real + 0.0, z.imag + 0.0)
    if z.imag == 0:
        return f"{z.real:.12g}"
    if z.real == 0:
        return f"{z.imag:.12g}i"
    return f"{z.real:.12g}{z.imag:+.12g}i"


def jsonable(v: Any, text: bool = False) -> Any:
    if isinstance(v, Mat2):
        return _mat_text(v) if text else v.to_json()
    if isinstance(v, Enum):
        return v.value
    if isinstance(v, bool) or v is None or isinstance(v, (int, str)):
        return v
    if isinstance(v, float):
        return v if math.isfinite(v) else str(v)
    if isinstance(v, complex):
        return _num_text(v) if text else [v.real + 0.0, v.imag + 0.0]
    if isinstance(v, dict):
        return {str(k): jsonable(x, text) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [jsonable(x, text) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return jsonable(v.item(), text)
    return str(v)


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            out += _flatten(v, f"{prefix}.{k}" if prefix else str(k))
        return out
    return [(prefix, obj)]


def render(payload: dict, fmt: str) -> str:
    data = jsonable(payload, text=fmt != "json")
    if fmt == "json":
        return json.dumps(data, sort_keys=True, indent=2) + "\n"
    records = data.get("criteria") if isinstance(data.get("criteria"), list) else None
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if records is not None:
            w.writerow(["criterion", "title", "passed"])
            for r in records:
                w.writerow([r["criterion"], r["title"], r["passed"]])
        else:
            w.writerow(["key", "value"])
            for k, v in _flatten(data):
                w.writerow([k, v if not isinstance(v, list) else json.dumps(v)])
        return buf.getvalue()
    if records is not None:
        lines = [f"[{'PASS' if r['passed'] else 'FAIL'}] {r['criterion']:2d}. {r['title']}" for r in records]
        lines.append(f"{sum(r['passed'] for r in records)}/{len(records)} criteria passed")
        return "\n".join(lines) + "\n"
    if "table_text" in data:
        return data["table_text"]
    return "".join(f"{k}: {json.dumps(v) if isinstance(v, (list, bool)) or v is None else v}\n"
                   for k, v in _flatten(data))


def emit(cfg: RunConfig, payload: dict) -> None:
    text = render(payload, cfg.format)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


# -- quandle subcommands -------------------------------------------------

def _load(spec: str, validate: bool = True) -> core.QuandleTable:
    try:
        parsed = core.parse_spec(spec)
        if isinstance(parsed, core.FromTable) and not validate:
            return core.load_table(parsed.path)
        return core.build(parsed)
    except (ValueError, OSError) as exc:
        raise UsageError(str(exc)) from None


def _require(args, name: str):
    v = getattr(args, name)
    if v is None:
        raise UsageError(f"--{name.replace('_', '-')} is required")
    return v


def cmd_quandle(args, cfg: RunConfig) -> int:
    t = _load(_require(args, "spec"), validate=args.action != "validate")
    if args.action == "build":
        emit(cfg, {"name": t.name, "size": t.size, "table": t.op.tolist(), "table_text": core.dumps_table(t)}
             if cfg.format != "json" else {"name": t.name, "size": t.size, "table": t.op.tolist()})
        return EXIT_OK
    if args.action == "validate":
        rep = core.validate(t, seed=cfg.seed)
        emit(cfg, {"name": t.name, "size": t.size, "ok": rep.ok, "exhaustive": rep.exhaustive,
                   "violations": {k: [list(w) for w in v] for k, v in rep.violations().items()}})
        return EXIT_OK if rep.ok else EXIT_FAIL
    if args.action == "analyze":
        emit(cfg, analysis.analyze(t).to_dict())
        return EXIT_OK
    if args.action == "iterate":
        n = _require(args, "n")
        if n < 1:
            raise UsageError("--n must be >= 1")
        it = core.iterate(t, n)
        payload = {"name": it.name, "size": it.size, "trivial": core.is_trivial(it), "table": it.op.tolist()}
        if cfg.format != "json":
            payload["table_text"] = core.dumps_table(it)
        emit(cfg, payload)
        return EXIT_OK
    other = _load(_require(args, "spec2"))
    budget = args.budget
    res = analysis.find_isomorphism(t, other, budget) if args.action == "iso" else analysis.embed(t, other, budget)
    emit(cfg, {"source": t.name, "target": other.name, "status": res.status,
               "mapping": list(res.mapping) if res.mapping is not None else None,
               "nodes_explored": res.nodes_explored})
    return EXIT_FAIL if res.inconclusive else EXIT_OK


# -- gl2 verify ----------------------------------------------------------

def _pair(args, l1: complex, l2: complex) -> tuple[complex, complex]:
    return (l1 if args.l1 is None else args.l1, l2 if args.l2 is None else args.l2)


def _witness_payload(rep: WitnessReport) -> dict:
    return {"status": rep.status, "matrices": list(rep.matrices), "residual": float(rep.residual),
            "refutation": rep.refutation, "solver_values": {k: complex(v) for k, v in rep.solver_values.items()}}


def verify_lemma_4_1(args, cfg):
    l1, l2 = _pair(args, 1, -1)
    rep = lemmas.swap_check(l1, l2, cfg.tol_or(DEFAULT_TOL))
    return rep.ok, {"expected_witness": rep.expected_witness, **_witness_payload(rep.report)}


def verify_lemma_4_2(args, cfg):
    l1, l2 = _pair(args, 2, 3)
    rep = lemmas.diagonalizing_witnesses(l1, l2, cfg.samples_or(100), cfg.seed, cfg.tol_or(DEFAULT_TOL))
    return rep.ok, {"samples": rep.samples, "failures": rep.failures, "max_residual": rep.max_residual}


def _class_from(args, l1: complex, l2: complex):
    if args.lam is not None:
        return Jordan(args.lam)
    return DiagPair(*_pair(args, l1, l2))


def verify_thm_4_6(args, cfg):
    cls = _class_from(args, 2, 3)
    tol = cfg.tol_or(1e-8)
    failures, worst, lengths = [], 0.0, {"1": 0, "2": 0}
    for i, A in enumerate(sample_members(cls, cfg.samples_or(200), cfg.seed)):
        rep = two_step_path(cls, A, tol)
        if not rep.ok:
            failures.append(i)
            continue
        worst = max(worst, rep.residual)
        lengths[str(rep.length)] += 1
    payload = {"class": str(cls), "failures": failures, "max_residual": worst, "lengths": lengths}
    if isinstance(cls, DiagPair):
        swap = two_step_path(cls, cls.swapped().base_point(), tol)
        payload["swap_point"] = {"length": swap.length, "status": swap.status, "residual": swap.residual}
        return not failures and swap.ok, payload
    return not failures, payload


def verify_lemma_5_3(args, cfg):
    lam = args.lam if args.lam is not None else 1
    n, m = args.n or 1, args.m or 1
    rep = lemmas.jordan_type_probe(lam, n, m, cfg.tol_or(1e-10))
    return rep.ok, {"result": rep.result, "expected": rep.expected, "residual": rep.residual,
                    "differs_from_base": rep.differs_from_base}


def verify_lemma_5_6(args, cfg):
    l1, l2 = _pair(args, 1j, 1)
    n = args.n or 4
    rep = lemmas.subquandle_order_test(DiagPair(l1, l2), n, cfg.samples_or(200), cfg.seed, cfg.tol_or(1e-8))
    payload = {"n": n, "predicted": rep.predicted, "samples": rep.samples, "agreements": rep.agreements,
               "max_residual": rep.max_residual}
    if rep.counterexample is not None:
        c = rep.counterexample
        payload["counterexample"] = {"A": c.A, "B": c.B, "got": c.got, "expected": c.expected, "deviation": c.deviation}
    return rep.ok, payload


def verify_prop_6_1(args, cfg):
    worst = lemmas.sample_transport(cfg.samples_or(100), args.n or 4, cfg.seed)
    tol = cfg.tol_or(1e-8)
    return worst <= tol, {"max_residual": worst, "tol": tol}


def verify_lemma_6_15(args, cfg):
    n = args.n or 4
    rep = lemmas.count_trivial_components_pgl(n, cfg.samples_or(50), cfg.seed, cfg.tol_or(1e-8))
    return rep.ok, {"n": n, "count": rep.count, "control_ratio": rep.control_ratio,
                    "control_failures": rep.control_failures,
                    "distinct_projective_classes": rep.distinct_projective_classes,
                    "per_class": [{"omega": w, "passed": p, "samples": s} for w, p, s in rep.per_class]}


def verify_lemma_7_5(args, cfg):
    l1, l2 = _pair(args, 2, 3)
    rep = lemmas.noncommuting_return_pair(l1, l2, cfg.tol_or(1e-8))
    trivial = lemmas.max_trivial_pair_check(l1, l2, cfg.samples_or(50), cfg.seed)
    return rep.ok and trivial.ok, {**_witness_payload(rep), "max_trivial_pair": trivial.ok}


def verify_thm_7_7(args, cfg):
    cls = _class_from(args, 1, 2)
    rep = lemmas.r3_probe(cls, cfg.tol_or(1e-10))
    expect_witness = isinstance(cls, DiagPair) and abs(cls.l1 + cls.l2) <= 1e-12
    ok = rep.status is (Status.WITNESS if expect_witness else Status.REFUTED)
    return ok, {"class": str(cls), "expected": "Witness" if expect_witness else "Refuted", **_witness_payload(rep)}


def verify_thm_7_8(args, cfg):
    lam = args.lam if args.lam is not None else 1
    tol = cfg.tol_or(1e-10)
    rep = lemmas.r3_probe(DiagPair(lam, -lam), tol)
    return rep.ok and rep.residual <= tol, {"class": str(DiagPair(lam, -lam)), **_witness_payload(rep)}


VERIFIERS: dict[str, Callable] = {
    "lemma-4.1": verify_lemma_4_1,
    "lemma-4.2": verify_lemma_4_2,
    "thm-4.6": verify_thm_4_6,
    "lemma-5.3": verify_lemma_5_3,
    "lemma-5.6": verify_lemma_5_6,
    "prop-6.1": verify_prop_6_1,
    "lemma-6.15": verify_lemma_6_15,
    "lemma-7.5": verify_lemma_7_5,
    "thm-7.7": verify_thm_7_7,
    "thm-7.8": verify_thm_7_8,
}


def cmd_gl2(args, cfg: RunConfig) -> int:
    try:
        ok, payload = VERIFIERS[args.lemma](args, cfg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    emit(cfg, {"check": args.lemma, "passed": ok, **payload})
    if not ok:
        print(f"check failed: {args.lemma}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_catalog(args, cfg: RunConfig) -> int:
    results = acceptance.run_all(seed=cfg.seed)
    payload = {"seed": cfg.seed, "passed": all(r.passed for r in results),
               "criteria": [r.to_dict() for r in results]}
    emit(cfg, payload)
    failed = [f"{r.number}. {r.title}" for r in results if not r.passed]
    for name in failed:
        print(f"check failed: {name}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    env_seed = os.environ.get("QF_SEED")
    env_tol = os.environ.get("QF_TOL")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_int0, default=_int0(env_seed) if env_seed else acceptance.DEFAULT_SEED)
    common.add_argument("--tol", type=float, default=float(env_tol) if env_tol else None)
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")

    p = argparse.ArgumentParser(prog="quandlelab", description="Finite quandles and GL(2, C) conjugation quandles.")
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("quandle", parents=[common], help="build and analyze finite quandles")
    q.add_argument("action", choices=("build", "validate", "analyze", "iterate", "iso", "embed"))
    q.add_argument("--spec")
    q.add_argument("--spec2")
    q.add_argument("--n", type=int)
    q.add_argument("--budget", type=int, default=analysis.DEFAULT_BUDGET)
    q.set_defaults(func=cmd_quandle)

    g = sub.add_parser("gl2", parents=[common], help="GL(2, C) lemma checks")
    g.add_argument("action", choices=("verify",))
    g.add_argument("lemma", choices=sorted(VERIFIERS))
    g.add_argument("--l1", type=parse_complex)
    g.add_argument("--l2", type=parse_complex)
    g.add_argument("--lam", type=parse_complex)
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.set_defaults(func=cmd_gl2)

    c = sub.add_parser("catalog", parents=[common], help="run the full acceptance suite")
    c.add_argument("action", choices=("run",))
    c.set_defaults(func=cmd_catalog)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        cfg = RunConfig(args.seed, args.tol, args.samples, args.out, args.format)
        return args.func(args, cfg)
    except UsageError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
