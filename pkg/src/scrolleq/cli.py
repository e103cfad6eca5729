"""Command-line front end.

Commands: ``equations`` (print the defining system), ``verify`` (symbolic
checks plus optional finite-field comparison), ``enumerate`` (finite-field
variety comparison only), ``export`` (Macaulay2 / Singular scripts) and
``bench`` (phase timings).  Common flags may appear before or after the
command name.

Exit codes: 0 all checks passed, 1 a check failed, 2 usage error, 3 the
evaluation budget was exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, replace

from .export import cas_script
from .scroll import ScrollProfile, build_profile, equation_set
from .textio import poly_to_json
from .verify import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    check_bridge_determinant_power,
    check_bridge_scroll_vanishing,
    check_parametrization,
    compare_varieties,
    plucker_identity,
)

BUDGET_ENV = "SCROLLEQ_BUDGET"

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    profile: ScrollProfile
    command: str
    field: int | None
    fmt: str
    seed: int | None
    budget: int
    out: str | None


def _profile_arg(text: str) -> ScrollProfile:
    try:
        return build_profile(int(part) for part in text.split(","))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_common(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = argparse.SUPPRESS if suppress else None
    parser.add_argument("--profile", type=_profile_arg, default=default,
                        help="comma-separated block degrees, e.g. 2,2,3,4")
    parser.add_argument("--field", type=int, default=default, metavar="Q",
                        help="prime field size for enumeration")
    parser.add_argument("--format", dest="fmt", default=default,
                        choices=["plain", "json", "m2", "singular", "cas"],
                        help="output format (export: m2|singular, cas = m2)")
    parser.add_argument("--seed", type=int, default=default,
                        help="seed recorded in reports")
    parser.add_argument("--budget", type=int, default=default,
                        help=f"evaluation budget (default ${BUDGET_ENV} or {DEFAULT_BUDGET})")
    parser.add_argument("--out", default=default, metavar="PATH",
                        help="write output to a file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scrolleq",
        description="Defining equations for rational normal scrolls, with verification.",
    )
    _add_common(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_ in (
        ("equations", "print the N-2 defining polynomials"),
        ("verify", "run the symbolic check suite, plus enumeration when --field is given"),
        ("enumerate", "compare the system's zero set with the minors' over GF(q)"),
        ("export", "emit a computer-algebra script declaring both ideals"),
        ("bench", "time construction, symbolic checks and enumeration"),
    ):
        sp = sub.add_parser(name, help=help_)
        _add_common(sp, suppress=True)
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _config(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> RunConfig:
    if ns.profile is None:
        parser.error("--profile is required")
    budget = ns.budget
    if budget is None:
        budget = int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))
    fmt = ns.fmt
    if fmt is None:
        fmt = "m2" if ns.command == "export" else "plain"
    if fmt == "cas":
        fmt = "m2"
    return RunConfig(
        profile=ns.profile,
        command=ns.command,
        field=ns.field,
        fmt=fmt,
        seed=ns.seed,
        budget=budget,
        out=ns.out,
    )


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _rank_summary(eqset) -> str:
    profile = eqset.profile
    rank = eqset.claimed_arithmetic_rank
    if profile.d >= 2:
        return (
            f"arithmetic rank = {rank} = N-2 "
            "(upper bound constructive; lower bound cited)"
        )
    return f"arithmetic rank = {rank} (rational normal curve case)"


def cmd_equations(config: RunConfig) -> int:
    eqset = equation_set(config.profile)
    profile = config.profile
    if config.fmt == "json":
        doc = {
            "profile": list(profile.n),
            "d": profile.d,
            "N": profile.N,
            "system_size": eqset.system_size,
            "arithmetic_rank": eqset.claimed_arithmetic_rank,
            "generators": [
                {"label": label, "poly": poly_to_json(p)} for label, p in eqset.system()
            ],
            "minors": [poly_to_json(p) for p in eqset.minor_gens],
        }
        _emit(json.dumps(doc, indent=2) + "\n", config.out)
        return EXIT_OK
    lines = [
        f"# scroll profile {profile}: d={profile.d}, N={profile.N}, "
        f"system size {eqset.system_size}"
    ]
    lines.extend(f"{p}  # {label}" for label, p in eqset.system())
    lines.append(f"# {_rank_summary(eqset)}")
    _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK


def _run_checks(config: RunConfig):
    profile = config.profile
    eqset = equation_set(profile)
    checks = []
    for i in range(1, profile.d + 1):
        for j in range(i + 1, profile.d + 1):
            a, b = profile.n[i - 1], profile.n[j - 1]
            ok, residual = check_bridge_scroll_vanishing(a, b)
            checks.append((
                f"bridge-scroll-vanishing blocks ({i},{j})",
                ok,
                "" if ok else f"residual {residual}",
            ))
            ok = check_bridge_determinant_power(a, b)
            checks.append((f"bridge-determinant-power blocks ({i},{j})", ok, ""))
    param = check_parametrization(profile, eqset=eqset)
    total = len(param.checks)
    good = sum(1 for c in param.checks if c.ok)
    detail = f"{good}/{total} generators vanish"
    if not param.passed:
        detail += "; failing: " + ", ".join(c.label for c in param.failures()[:5])
    checks.append(("parametrization-vanishing", param.passed, detail))
    ok, failures = plucker_identity(profile.d)
    checks.append((
        f"plucker-identity d={profile.d}",
        ok,
        "" if ok else f"failing quadruples {failures[:3]}",
    ))
    report = None
    if config.field is not None:
        report = compare_varieties(
            profile, config.field, budget=config.budget, seed=config.seed, eqset=eqset
        )
        checks.append((
            f"variety-comparison q={config.field}",
            report.passed,
            f"count_J={report.count_j} count_P={report.count_p} "
            f"witnesses={len(report.witnesses)}",
        ))
    return eqset, checks, report


def cmd_verify(config: RunConfig) -> int:
    _, checks, report = _run_checks(config)
    passed = all(ok for _, ok, _ in checks)
    if config.fmt == "json":
        doc = {
            "profile": list(config.profile.n),
            "passed": passed,
            "checks": [
                {"name": name, "passed": ok, "detail": detail}
                for name, ok, detail in checks
            ],
            "variety": report.to_json() if report is not None else None,
        }
        _emit(json.dumps(doc, indent=2) + "\n", config.out)
    else:
        lines = []
        for name, ok, detail in checks:
            status = "PASS" if ok else "FAIL"
            lines.append(f"{status} {name}" + (f" ({detail})" if detail else ""))
        lines.append(("PASS" if passed else "FAIL") + f" suite for profile {config.profile}")
        _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK if passed else EXIT_CHECK_FAILED


def default_field(profile: ScrollProfile) -> int:
    """Default comparison field: 3, dropping to 2 for large ambient spaces."""
    return 2 if profile.N >= 12 else 3


def cmd_enumerate(config: RunConfig) -> int:
    q = config.field if config.field is not None else default_field(config.profile)
    report = compare_varieties(
        config.profile, q, budget=config.budget, seed=config.seed
    )
    if config.fmt == "json":
        _emit(json.dumps(report.to_json(), indent=2) + "\n", config.out)
    else:
        lines = [
            f"profile {config.profile} over GF({report.q}): "
            f"visited {report.visited} representatives",
            f"count_J = {report.count_j}, count_P = {report.count_p}, "
            f"witnesses = {len(report.witnesses)}",
        ]
        for w in report.witnesses[:10]:
            lines.append(f"witness {list(w)}")
        lines.append("PASS: point sets agree" if report.passed else "FAIL: point sets differ")
        _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_export(config: RunConfig, parser: argparse.ArgumentParser) -> int:
    if config.fmt not in ("m2", "singular"):
        parser.error(f"export needs --format m2|singular, got {config.fmt!r}")
    eqset = equation_set(config.profile)
    _emit(cas_script(eqset, config.fmt), config.out)
    return EXIT_OK


def cmd_bench(config: RunConfig) -> int:
    rows = []
    start = time.perf_counter()
    eqset = equation_set(config.profile)
    rows.append(("construct", (time.perf_counter() - start) * 1000))

    start = time.perf_counter()
    _run_checks(replace(config, field=None))
    rows.append(("symbolic", (time.perf_counter() - start) * 1000))

    if config.field is not None:
        start = time.perf_counter()
        compare_varieties(
            config.profile, config.field, budget=config.budget,
            seed=config.seed, eqset=eqset,
        )
        rows.append((f"enumerate q={config.field}", (time.perf_counter() - start) * 1000))

    if config.fmt == "json":
        doc = [{"phase": name, "ms": round(ms, 3)} for name, ms in rows]
        _emit(json.dumps(doc, indent=2) + "\n", config.out)
    else:
        lines = [f"{name}\t{ms:.3f} ms" for name, ms in rows]
        _emit("\n".join(lines) + "\n", config.out)
    return EXIT_OK


def run(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    config = _config(parser, ns)
    try:
        if config.command == "equations":
            return cmd_equations(config)
        if config.command == "verify":
            return cmd_verify(config)
        if config.command == "enumerate":
            return cmd_enumerate(config)
        if config.command == "export":
            return cmd_export(config, parser)
        return cmd_bench(config)
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
