"""Command-line interface.

One subcommand per subsystem: ``sphere``, ``groups``, ``verify``,
``profile``, ``search`` and ``certify``.  Every subcommand accepts
``--json`` for machine-readable output.  Exit codes: 0 success or accept,
1 reject or verification failure, 2 malformed input, 3 certification gap.

Group elements on the command line are semicolon-separated residue tuples
with comma-separated components, e.g. ``"0,0;1,2"``; one-component tuples
may drop the comma (``"0;1;12;5;8"``).  The factorization bound can be
overridden with the LEETILE_FACTOR_BOUND environment variable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional

from .abelian_groups import AbelianGroup, LatticeBasis, enumerate_groups
from .certify import certify as _certify
from .certify import certify_range as _certify_range
from .errors import LeeTileError
from .lee_geometry import sphere_points, sphere_size
from .profiles import check_identities_k2, check_identities_k4, profile
from .search_engine import SearchOptions, search_group
from .tiling_core import TilingCandidate, check_conditions, verify_lattice

EXIT_OK = 0
EXIT_REJECT = 1
EXIT_USAGE = 2
EXIT_GAP = 3

_ENV_FACTOR_BOUND = "LEETILE_FACTOR_BOUND"


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    output_mode: str  # "text" | "json"
    factor_bound: Optional[int]


def _factor_bound_from_env() -> Optional[int]:
    raw = os.environ.get(_ENV_FACTOR_BOUND)
    if raw is None:
        return None
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{_ENV_FACTOR_BOUND} must be an integer, got {raw!r}") from None


def parse_arm_string(group: AbelianGroup, text: str) -> tuple:
    """Parse ``"0,0;1,2;..."`` into a tuple of group elements."""
    arms = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            raise ValueError("empty tuple in element list")
        residues = tuple(int(tok) for tok in chunk.split(","))
        group.check_element(residues)
        arms.append(residues)
    return tuple(arms)


def _emit(data: dict, as_json: bool, text_lines):
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        for line in text_lines:
            print(line)


def _cmd_sphere(args, config: CliConfig) -> int:
    size = sphere_size(args.n, args.r)
    points = sphere_points(args.n, args.r) if args.list else None
    data = {"n": args.n, "r": args.r, "size": size}
    lines = [str(size)]
    if points is not None:
        data["points"] = [list(p) for p in points]
        lines.extend(" ".join(str(c) for c in p) for p in points)
    _emit(data, config.output_mode == "json", lines)
    return EXIT_OK


def _cmd_groups(args, config: CliConfig) -> int:
    groups = enumerate_groups(args.order, trial_bound=config.factor_bound)
    data = {
        "order": args.order,
        "count": len(groups),
        "groups": [g.spec_string() for g in groups],
        "invariant_factors": [list(g.invariant_factors) for g in groups],
    }
    _emit(data, config.output_mode == "json", [g.spec_string() for g in groups])
    return EXIT_OK


def _report_lines(report) -> list[str]:
    lines = [report.verdict]
    if not report.accepted:
        lines.append(f"failed condition: {report.failed_condition}")
        if report.witness:
            lines.append(f"witness: {report.witness}")
    return lines


def _cmd_verify(args, config: CliConfig) -> int:
    if (args.basis is None) == (args.group is None):
        raise ValueError("give exactly one of --basis or --group")
    if args.basis is not None:
        basis = LatticeBasis.from_file(args.basis)
        report = verify_lattice(basis, args.r)
    else:
        if args.n is None or args.t is None:
            raise ValueError("--group mode needs --n and --t")
        group = AbelianGroup.from_spec(args.group, trial_bound=config.factor_bound)
        arms = parse_arm_string(group, args.t)
        candidate = TilingCandidate.from_arm_set(group, args.n, arms)
        report = check_conditions(candidate)
    _emit(report.to_dict(), config.output_mode == "json", _report_lines(report))
    return EXIT_OK if report.accepted else EXIT_REJECT


def _cmd_profile(args, config: CliConfig) -> int:
    group = AbelianGroup.from_spec(args.group, trial_bound=config.factor_bound)
    arms = parse_arm_string(group, args.t)
    candidate = TilingCandidate.from_arm_set(group, args.n, arms)
    report = check_conditions(candidate)
    if not report.accepted:
        _emit(
            {"verification": report.to_dict()},
            config.output_mode == "json",
            ["candidate rejected, no profile computed"] + _report_lines(report),
        )
        return EXIT_REJECT
    prof = profile(candidate, args.k)
    data = {"verification": report.to_dict(), "profile": prof.to_dict()}
    lines = [f"profile of the power-{args.k} product over {group.spec_string()}"]
    lines.extend(
        f"  multiplicity {i}: {c} elements" for i, c in sorted(prof.histogram.items())
    )
    if args.k == 2:
        identities = check_identities_k2(prof)
    else:
        delta_report, identities = check_identities_k4(prof)
        data["delta"] = delta_report.to_dict()
        lines.append(
            f"delta = {delta_report.delta} (raw {delta_report.delta_raw}, bounds [{-2 * args.n}, 0])"
        )
    data["identities"] = identities.to_dict()
    for c in identities.checks:
        lines.append(
            f"  {'PASS' if c.passed else 'FAIL'} {c.name}: {c.lhs} {c.relation} {c.rhs}"
        )
    _emit(data, config.output_mode == "json", lines)
    return EXIT_OK if identities.all_passed else EXIT_REJECT


def _cmd_search(args, config: CliConfig) -> int:
    options = SearchOptions(
        use_automorphism_reduction=not args.no_reduction,
        worker_partitions=args.partitions,
        node_budget=args.budget,
    )
    if args.group is not None:
        groups = [AbelianGroup.from_spec(args.group, trial_bound=config.factor_bound)]
    else:
        order = 2 * args.n * args.n + 2 * args.n + 1
        groups = enumerate_groups(order, trial_bound=config.factor_bound)
    outcomes = [search_group(g, args.n, options) for g in groups]
    data = {"n": args.n, "outcomes": [o.to_dict() for o in outcomes]}
    lines = []
    for o in outcomes:
        lines.append(
            f"{o.group.spec_string()}: {len(o.solutions)} solution(s), "
            f"{o.nodes_explored} nodes, {'exhausted' if o.exhausted else 'budget hit'}"
        )
        for sol in o.solutions:
            lines.append("  " + ";".join(",".join(str(r) for r in g) for g in sol))
    _emit(data, config.output_mode == "json", lines)
    return EXIT_OK


def _certificate_lines(cert) -> list[str]:
    lines = [f"n={cert.n}: {cert.verdict} (justification: {cert.justification})"]
    if cert.branch_id:
        lines.append(f"  branch {cert.branch_id}" + (f" case {cert.branch_case}" if cert.branch_case else ""))
    if cert.justification == "inequality":
        lines.append(f"  requires {cert.inequality}, evaluated {cert.evaluated_value} > 0")
    if cert.note:
        lines.append(f"  note: {cert.note}")
    return lines


def _cmd_certify(args, config: CliConfig) -> int:
    if (args.n is None) == (args.range is None):
        raise ValueError("give exactly one of --n or --range")
    if args.n is not None:
        cert = _certify(args.n, search_fallback=args.search_fallback)
        _emit(cert.to_dict(), config.output_mode == "json", _certificate_lines(cert))
        return EXIT_OK
    try:
        lo_text, hi_text = args.range.split(":")
        lo, hi = int(lo_text), int(hi_text)
    except ValueError:
        raise ValueError(f"--range must look like LO:HI, got {args.range!r}") from None
    summary = _certify_range(lo, hi, search_fallback=args.search_fallback)
    lines = [
        f"certified {len(summary.certificates)} of {hi - lo + 1} dimensions in [{lo}, {hi}]",
        "counts: " + ", ".join(f"{k}={v}" for k, v in sorted(summary.counts.items())),
    ]
    if summary.gaps:
        lines.append(f"GAPS: {list(summary.gaps)}")
    _emit(summary.to_dict(), config.output_mode == "json", lines)
    return EXIT_OK if summary.complete else EXIT_GAP


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="leetile",
        description="Lee-sphere lattice tilings: verify, profile, search, certify.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("sphere", help="size (and points) of a Lee sphere")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print the points, one per line")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("groups", help="abelian groups of a given order")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="verify a basis (geometric) or a group candidate (algebraic)")
    p.add_argument("--basis", help="basis file: first line n, then n rows of n integers (columns generate)")
    p.add_argument("--r", type=int, default=2, help="radius for --basis mode (default 2)")
    p.add_argument("--group", help="group spec, e.g. Z13 or Z5xZ5 or 5,5")
    p.add_argument("--n", type=int, help="dimension for --group mode")
    p.add_argument("--t", help="arm set, e.g. \"0;1;12;5;8\"")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("profile", help="multiplicity profile and identity report")
    p.add_argument("--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--k", type=int, choices=(2, 4), required=True)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="exhaustive arm-set search")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--group", help="restrict to one group instead of all of order 2n^2+2n+1")
    p.add_argument("--partitions", type=int, default=1)
    p.add_argument("--budget", type=int, default=None, help="node budget (required for n >= 7)")
    p.add_argument("--no-reduction", action="store_true", help="disable automorphism reduction")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("certify", help="nonexistence certificates")
    p.add_argument("--n", type=int)
    p.add_argument("--range", help="LO:HI")
    p.add_argument("--search-fallback", action="store_true",
                   help="settle below-threshold dimensions by search instead of the table")
    p.add_argument("--json", action="store_true")

    return parser


_HANDLERS = {
    "sphere": _cmd_sphere,
    "groups": _cmd_groups,
    "verify": _cmd_verify,
    "profile": _cmd_profile,
    "search": _cmd_search,
    "certify": _cmd_certify,
}


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = CliConfig(
            subcommand=args.subcommand,
            output_mode="json" if getattr(args, "json", False) else "text",
            factor_bound=_factor_bound_from_env(),
        )
        return _HANDLERS[args.subcommand](args, config)
    except (ValueError, OSError, LeeTileError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
