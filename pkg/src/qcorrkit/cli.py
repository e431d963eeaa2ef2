"""Command-line surface.

Subcommands: ``compute`` (any registered quantity on a state file),
``verify-kw`` (monogamy-identity suite), ``verify-activation`` (activation
suite), ``random-suite`` (randomized self-checks), ``validate`` (state file
check). Exit codes: 0 success, 2 invalid input state, 1 internal error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import activation, entanglement, entropy, monogamy, quantumness
from .optimize import OptimizerConfig
from .states import (
    DensityMatrix,
    InvalidStateError,
    PureState,
    RandomSource,
    load_state,
    partial_trace,
    random_density,
    random_pure,
    tensor,
)


@dataclass
class CorrelationReport:
    quantity: str
    value_bits: float
    diagnostics: dict
    input_digest: str
    seed: int
    wall_time_s: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def _as_density(state) -> DensityMatrix:
    return state.density() if isinstance(state, PureState) else state


def _as_pure(state) -> PureState:
    if not isinstance(state, PureState):
        raise InvalidStateError("this quantity requires a pure state (vector JSON)")
    return state


def _cut(args) -> tuple:
    return tuple(int(i) for i in args.cut.split(","))


def _config(args) -> OptimizerConfig:
    cfg = OptimizerConfig(seed=args.seed)
    if args.restarts is not None:
        cfg = OptimizerConfig(restarts=args.restarts, seed=args.seed)
    return cfg


def _opt(result):
    return float(result), {
        "method": result.method,
        "n_outcomes": result.n_outcomes,
        "best_restart": result.best_restart,
        "iterations": result.iterations,
        "restart_spread": result.spread,
        "optimal_parameters": list(np.asarray(result.params, dtype=float)),
    }


# name -> callable(state, args) -> (value_bits, diagnostics)
QUANTITIES = {
    "von-neumann-entropy": lambda s, a: (entropy.von_neumann(_as_density(s)), {}),
    "mutual-information": lambda s, a: (entropy.mutual_information(_as_density(s), _cut(a)), {}),
    "conditional-entropy": lambda s, a: (entropy.conditional_entropy(_as_density(s), _cut(a)), {}),
    "coherent-information": lambda s, a: (
        entropy.coherent_information(_as_density(s), _cut(a)), {}),
    "total-work": lambda s, a: (quantumness.total_work(_as_density(s)), {}),
    "entanglement-entropy": lambda s, a: (
        entanglement.entanglement_entropy(_as_pure(s), _cut(a)).bits, {"method": "pure_exact"}),
    "relative-entanglement-pure": lambda s, a: (
        entanglement.relative_entanglement_pure(_as_pure(s), _cut(a)).bits,
        {"method": "pure_exact"}),
    "concurrence": lambda s, a: (entanglement.concurrence(_as_density(s)), {}),
    "eof-two-qubits": lambda s, a: (
        entanglement.eof_two_qubits(_as_density(s)).bits, {"method": "wootters"}),
    "eof-ensemble": lambda s, a: (
        entanglement.eof_ensemble_opt(_as_density(s), config=_config(a), cut=_cut(a)).bits,
        {"method": "ensemble_opt"}),
    "negativity": lambda s, a: (entanglement.negativity(_as_density(s), _cut(a)).bits,
                                {"method": "negativity"}),
    "distillable-max-corr": lambda s, a: (
        entanglement.distillable_max_corr(_as_density(s), _cut(a)).bits, {"method": "hashing"}),
    "classical-correlations": lambda s, a: _opt(quantumness.classical_correlations(
        _as_density(s), a.side, _config(a), a.povm_outcomes)),
    "discord": lambda s, a: _opt(quantumness.discord(
        _as_density(s), a.side, _config(a), a.povm_outcomes)),
    "discord-two-sided": lambda s, a: _opt(
        quantumness.discord_two_sided(_as_density(s), _config(a))),
    "one-way-deficit": lambda s, a: _opt(
        quantumness.one_way_deficit(_as_density(s), a.side, _config(a))),
    "zero-way-deficit": lambda s, a: _opt(
        quantumness.zero_way_deficit(_as_density(s), _config(a))),
    "rel-ent-quantumness-qc": lambda s, a: _opt(quantumness.relative_entropy_of_quantumness(
        _as_density(s), "QC", a.side, _config(a))),
    "rel-ent-quantumness-cc": lambda s, a: _opt(quantumness.relative_entropy_of_quantumness(
        _as_density(s), "CC", a.side, _config(a))),
    "min-activated-negativity": lambda s, a: _opt(activation.min_activated_entanglement(
        _as_density(s), "negativity", _config(a))),
    "min-activated-ed": lambda s, a: _opt(activation.min_activated_entanglement(
        _as_density(s), "hashing", _config(a))),
}


def _digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _emit(text: str, args):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_compute(args) -> int:
    state = load_state(args.state)
    start = time.perf_counter()
    value, diagnostics = QUANTITIES[args.quantity](state, args)
    elapsed = time.perf_counter() - start
    report = CorrelationReport(
        quantity=args.quantity,
        value_bits=float(value),
        diagnostics=diagnostics,
        input_digest=_digest(args.state),
        seed=args.seed,
        wall_time_s=elapsed,
    )
    if args.format == "json":
        _emit(report.to_json(), args)
    elif args.format == "csv":
        _emit("quantity,value_bits,seed\n" + f"{report.quantity},{report.value_bits!r},{report.seed}", args)
    else:
        _emit(f"{report.quantity} = {report.value_bits:.6f} bits (seed {report.seed})", args)
    return 0


def _cmd_validate(args) -> int:
    state = load_state(args.state)  # raises InvalidStateError with a diagnostic
    kind = "pure" if isinstance(state, PureState) else "density"
    _emit(json.dumps({"valid": True, "kind": kind, "dims": list(state.dims)}), args)
    return 0


def _cmd_verify_kw(args) -> int:
    cfg = _config(args)
    reports = monogamy.kw_suite(args.samples, args.seed, cfg)
    if args.format == "csv":
        import csv as _csv
        import io

        buf = io.StringIO()
        fields = list(asdict(reports[0]).keys())
        writer = _csv.DictWriter(buf, fieldnames=fields)
        writer.writeheader()
        for r in reports:
            writer.writerow(asdict(r))
        _emit(buf.getvalue().rstrip("\n"), args)
    else:
        payload = {"summary": monogamy.summarize(reports), "rows": [asdict(r) for r in reports]}
        _emit(json.dumps(payload, sort_keys=True), args)
    return 0


def _cmd_verify_activation(args) -> int:
    cfg = _config(args)
    source = RandomSource(args.seed)
    rows = []
    for k in range(args.samples):
        rho = random_density((2, 2), 4, source.split())
        eq = activation.zero_way_equivalence(rho, cfg)
        verdict = activation.classicality_separability_test(rho, cfg)
        rows.append(
            {
                "seed": k,
                "zero_way_deficit": eq.deficit,
                "min_activated_ed": eq.activated_ed,
                "residual": eq.residual,
                "verdict": verdict,
            }
        )
    max_residual = max(r["residual"] for r in rows)
    _emit(json.dumps({"samples": rows, "max_residual": max_residual}, sort_keys=True), args)
    return 0


def _cmd_random_suite(args) -> int:
    """Randomized self-checks of the core identities; quick smoke verification."""
    source = RandomSource(args.seed)
    checks = {}

    worst = 0.0
    for _ in range(args.samples):
        rho = random_density((2, 2), 4, source.split())
        a = partial_trace(rho, (0,))
        b = partial_trace(rho, (1,))
        worst = max(worst, abs(entropy.von_neumann(tensor(a, b))
                               - entropy.von_neumann(a) - entropy.von_neumann(b)))
    checks["entropy_additivity"] = {"max_error": worst, "pass": worst <= 1e-10}

    worst = 0.0
    for _ in range(args.samples):
        psi = random_pure((2, 2), source.split())
        worst = max(worst, abs(entropy.mutual_information(psi, (0,))
                               - 2.0 * entropy.von_neumann(partial_trace(psi.density(), (0,)))))
    checks["pure_state_mutual_information"] = {"max_error": worst, "pass": worst <= 1e-10}

    worst = 0.0
    for _ in range(args.samples):
        rho = random_density((2, 2), 3, source.split())
        neg = entanglement.negativity(rho, (0,)).bits
        ppt = entanglement.is_ppt(rho, (0,))
        worst = max(worst, 0.0 if (neg <= 1e-10) == ppt else 1.0)
    checks["negativity_ppt_agreement"] = {"max_error": worst, "pass": worst == 0.0}

    ok = all(c["pass"] for c in checks.values())
    _emit(json.dumps({"checks": checks, "pass": ok}, sort_keys=True), args)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcorrkit",
        description="Entanglement and quantumness-of-correlations calculator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0, help="master seed (default 0)")
        p.add_argument("--restarts", type=int, default=None,
                       help="optimizer restarts (default 32)")
        p.add_argument("--out", default=None, help="write output to this path instead of stdout")
        p.add_argument("--format", choices=["json", "csv", "plain"], default="json",
                       help="output format (default json)")

    p = sub.add_parser("compute", help="compute one quantity on a state file")
    p.add_argument("--quantity", required=True, choices=sorted(QUANTITIES))
    p.add_argument("--state", required=True, help="path to a state JSON file")
    p.add_argument("--side", choices=["A", "B"], default="B",
                   help="measured side for one-sided quantities (default B)")
    p.add_argument("--cut", default="0",
                   help="comma-separated subsystem indices of side A (default '0')")
    p.add_argument("--povm-outcomes", type=int, default=None,
                   help="rank-1 POVM outcome count (default: projective)")
    common(p)
    p.set_defaults(func=_cmd_compute)

    p = sub.add_parser("validate", help="check a state file against the invariants")
    p.add_argument("--state", required=True)
    common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("verify-kw", help="run the monogamy-identity suite on random states")
    p.add_argument("--samples", type=int, default=100)
    common(p)
    p.set_defaults(func=_cmd_verify_kw)

    p = sub.add_parser("verify-activation", help="run the activation-equivalence suite")
    p.add_argument("--samples", type=int, default=20)
    common(p)
    p.set_defaults(func=_cmd_verify_activation)

    p = sub.add_parser("random-suite", help="randomized self-checks of core identities")
    p.add_argument("--samples", type=int, default=50)
    common(p)
    p.set_defaults(func=_cmd_random_suite)

    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidStateError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"invalid state: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # internal error
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
