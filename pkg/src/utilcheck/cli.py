"""Command-line driver: validate, recover, coincide, fixture.

Exit codes: 0 when everything passes, 1 when any check fails (witnesses are
printed so the failure can be rechecked by hand), 2 for input or usage
errors.  ``--json`` switches to the machine-readable report, whose field
order is fixed so reports diff cleanly.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from .coincidence import (
    COINCIDE,
    CONSTANT,
    HYPOTHESIS_CHECKS,
    HypothesisRecord,
    simplex_counterexample,
    sqrt_fixture,
    theorem3_pipeline,
)
from .harsanyi import recover_weights
from .harvey import harvey_recover
from .rationals import format_rational, parse_rational
from .societyfile import SocietyFileError, emit_society, parse_society

VALIDATE_CHECKS = ("pareto", "semi-separability", "matching", "axiom-i", "axiom-I")


def _rat(value: Fraction | None) -> str | None:
    return None if value is None else format_rational(value)


def _weights_payload(agents, weights) -> dict[str, str] | None:
    if weights is None:
        return None
    return {a: format_rational(w) for a, w in zip(agents, weights)}


def _load(path: str, max_states: int):
    soc = parse_society(path)
    if len(soc.space) > max_states:
        raise SocietyFileError(
            f"{len(soc.space)} states exceed --max-states {max_states}"
        )
    return soc


def _emit(payload: dict, as_json: bool, lines) -> None:
    if as_json:
        print(json.dumps(payload, indent=2))
    else:
        for line in lines:
            print(line)


def cmd_validate(args) -> int:
    soc = _load(args.file, args.max_states)
    by_name = dict(HYPOTHESIS_CHECKS)
    checks = [(name, by_name[name]) for name in VALIDATE_CHECKS]
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            futures = [pool.submit(fn, soc) for _, fn in checks]
            records: list[HypothesisRecord] = [f.result() for f in futures]
    else:
        records = [fn(soc) for _, fn in checks]
    all_passed = all(r.passed for r in records)
    payload = {
        "command": "validate",
        "title": soc.metadata.get("title", ""),
        "checks": [
            {"name": r.name, "verdict": "PASS" if r.passed else "FAIL", "detail": r.detail}
            for r in records
        ],
        "all_passed": all_passed,
    }
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else "")
        for r in records
    ]
    _emit(payload, args.json, lines)
    return 0 if all_passed else 1


def cmd_recover(args) -> int:
    soc = _load(args.file, args.max_states)
    if args.mode == "harsanyi":
        report = recover_weights(soc)
        payload = {
            "command": "recover",
            "mode": "harsanyi",
            "title": soc.metadata.get("title", ""),
            "success": report.success,
            "weights": _weights_payload(report.agents, report.weights),
            "constant": _rat(report.constant),
            "unique": report.unique,
            "residual_witness": report.residual_witness,
        }
        if report.success:
            lines = [
                "weights: "
                + ", ".join(f"{a}={format_rational(w)}" for a, w in zip(report.agents, report.weights)),
                f"constant: {format_rational(report.constant)}",
                f"unique: {str(report.unique).lower()}",
            ]
        else:
            lines = [f"FAIL recovery: no exact combination at state {report.residual_witness!r}"]
        _emit(payload, args.json, lines)
        return 0 if report.success else 1
    report = harvey_recover(soc)
    payload = {
        "command": "recover",
        "mode": "harvey",
        "title": soc.metadata.get("title", ""),
        "success": report.success,
        "weights": _weights_payload(report.agents, report.weights),
        "constant": _rat(report.constant),
        "constant_agents": list(report.constant_agents),
        "failed_stage": report.failed_stage,
        "witness": None if report.witness is None else str(report.witness),
    }
    if report.success:
        lines = [
            "weights: "
            + ", ".join(f"{a}={format_rational(w)}" for a, w in zip(report.agents, report.weights)),
            f"constant: {format_rational(report.constant)}",
        ]
        if report.constant_agents:
            lines.append("constant agents (slope fixed at 1): " + ", ".join(report.constant_agents))
    else:
        lines = [f"FAIL recovery at {report.failed_stage}: {report.witness}"]
    _emit(payload, args.json, lines)
    return 0 if report.success else 1


def _verdict_payload(verdict) -> dict:
    out: dict = {"name": verdict.agent, "verdict": verdict.kind.upper()}
    if verdict.kind == COINCIDE:
        out["alpha"] = format_rational(verdict.alpha)
        out["beta"] = format_rational(verdict.beta)
    elif verdict.kind == CONSTANT:
        pass
    else:
        w = verdict.witness
        out["witness"] = {
            "first_step": _step_payload(w.first),
            "second_step": _step_payload(w.second),
            "increments": [
                [format_rational(base), format_rational(starred)]
                for base, starred in w.increments
            ],
        }
    return out


def _step_payload(step) -> dict:
    return {
        "from": step.lo_state,
        "to": step.hi_state,
        "base_increment": format_rational(step.base_increment),
        "starred_increment": format_rational(step.starred_increment),
    }


def cmd_coincide(args) -> int:
    soc = _load(args.file, args.max_states)
    report = theorem3_pipeline(soc)
    payload = {
        "command": "coincide",
        "title": soc.metadata.get("title", ""),
        "status": report.status,
        "hypotheses": [
            {"name": r.name, "verdict": "PASS" if r.passed else "FAIL", "detail": r.detail}
            for r in report.hypotheses
        ],
        "failed_hypothesis": report.failed_hypothesis,
        "agents": [_verdict_payload(v) for v in report.agents],
        "normalization": None
        if report.normalization is None
        else {
            "alt_weights": _weights_payload(
                report.normalization.agents, report.normalization.alt_weights
            ),
            "alt_constant": _rat(report.normalization.alt_constant),
            "nm_weights": _weights_payload(
                report.normalization.agents, report.normalization.nm_weights
            ),
            "nm_constant": _rat(report.normalization.nm_constant),
            "slopes": None
            if report.normalization.slopes is None
            else {
                a: _rat(s)
                for a, s in zip(report.normalization.agents, report.normalization.slopes)
            },
        },
        "detail": report.detail,
    }
    lines = [f"status: {report.status}"]
    for r in report.hypotheses:
        lines.append(
            f"{'PASS' if r.passed else 'FAIL'} {r.name}" + (f": {r.detail}" if r.detail else "")
        )
    for v in report.agents:
        if v.kind == COINCIDE:
            lines.append(
                f"{v.agent}: coincide with alpha={format_rational(v.alpha)}, "
                f"beta={format_rational(v.beta)}"
            )
        elif v.kind == CONSTANT:
            lines.append(f"{v.agent}: constant on both scales")
        else:
            w = v.witness
            lines.append(
                f"{v.agent}: violation; step {w.first.lo_state}->{w.first.hi_state} "
                f"moves ({format_rational(w.first.base_increment)}, "
                f"{format_rational(w.first.starred_increment)}) but "
                f"{w.second.lo_state}->{w.second.hi_state} moves "
                f"({format_rational(w.second.base_increment)}, "
                f"{format_rational(w.second.starred_increment)})"
            )
    if report.detail:
        lines.append(report.detail)
    _emit(payload, args.json, lines)
    return 0 if report.status == COINCIDE else 1


def cmd_fixture(args) -> int:
    if args.kind == "sqrt":
        bundle = sqrt_fixture(args.k, parse_rational(args.eps), degenerate_second_agent=args.degenerate)
        text = emit_society(bundle.society)
    else:
        bundle = simplex_counterexample(parse_rational(args.resolution))
        text = emit_society(bundle.society)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="utilcheck",
        description="Exact verification of utilitarian aggregation on finite societies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("file", help="society JSON file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--max-states", type=int, default=64, help="brute-force state cap")
        p.add_argument("--threads", type=int, default=1, help="fan independent checks across threads")

    p_validate = sub.add_parser("validate", help="run the axiom battery")
    common(p_validate)
    p_validate.set_defaults(func=cmd_validate)

    p_recover = sub.add_parser("recover", help="recover aggregation weights")
    common(p_recover)
    p_recover.add_argument("--mode", choices=("harsanyi", "harvey"), required=True)
    p_recover.set_defaults(func=cmd_recover)

    p_coincide = sub.add_parser("coincide", help="run the coincidence pipeline")
    common(p_coincide)
    p_coincide.set_defaults(func=cmd_coincide)

    p_fixture = sub.add_parser("fixture", help="emit a built-in fixture as society JSON")
    fixture_sub = p_fixture.add_subparsers(dest="kind", required=True)
    p_sqrt = fixture_sub.add_parser("sqrt", help="square-root coincidence violation")
    p_sqrt.add_argument("--k", type=int, required=True, help="largest step index")
    p_sqrt.add_argument("--eps", required=True, help="second agent's gap, e.g. 1/2")
    p_sqrt.add_argument("--degenerate", action="store_true", help="make the second agent indifferent")
    p_sqrt.add_argument("--out", help="write to a file instead of stdout")
    p_sqrt.set_defaults(func=cmd_fixture)
    p_simplex = fixture_sub.add_parser("simplex", help="budget-line semi-separability failure")
    p_simplex.add_argument("--resolution", required=True, help="dyadic step, e.g. 1/4")
    p_simplex.add_argument("--out", help="write to a file instead of stdout")
    p_simplex.set_defaults(func=cmd_fixture)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SocietyFileError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
