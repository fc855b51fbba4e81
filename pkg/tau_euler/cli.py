"""Command line: tau-euler <subcommand> [flags].

Exit status is 0 on success, 1 on rejected input or usage errors and 2 when a
computed result contradicts a proven fact.
"""

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import Optional, Sequence

from .boundary_scan import cloud_summary, sigma_bound, zero_cloud
from .cache import angle_table, cache_tables, tau_table
from .character_ring import (
    DegreeTwoFamily,
    NonUnitaryResult,
    UnitaryResult,
    from_polynomial,
    unitarity_test,
)
from .chebyshev_gate import Unitary, classify, sup_norm
from .config import RunConfig, get_config
from .error import InconsistencyError, RejectedInputError, TableLookupError
from .euler_products import SIGNS, EulerProductSpec, truncated_product
from .euler_products.identities import (
    IDENTITIES,
    INDEXED,
    MAX_M,
    TRUNCATED_POINTS,
    verify_suite,
    verify_truncated,
)
from .output import (
    CharacterPayload,
    ClassifyPayload,
    VerifyRow,
    csv_text,
    emit,
    histogram_svg,
    json_array,
    scatter_svg,
    tau_rows,
)
from .polynomial import IntPolynomial
from .satotate import satotate_test

LOGGER = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INCONSISTENT = 2

SIGMA_SLACK = 1e-9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_REJECTED, f"{self.prog}: error: {message}\n")


def parse_s(text: str) -> complex:
    """RE[,IM]; always '.' as the decimal point, whatever the locale."""
    parts = text.split(",")
    try:
        if len(parts) > 2:
            raise ValueError(text)
        values = [float(part) for part in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE[,IM], got {text!r}") from None
    if not all(math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"s must be finite, got {text!r}")
    return complex(values[0], values[1] if len(values) == 2 else 0.0)


def parse_sign(text: str) -> int:
    try:
        return SIGNS[text]
    except KeyError:
        raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", type=Path, help="YAML run configuration")
    common.add_argument("--format", choices=("csv", "json", "svg"))
    common.add_argument("--out", type=Path, help="write the document here")
    common.add_argument("--cache-dir", type=Path)
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
    )

    parser = _Parser(prog="tau-euler", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    cmd = commands.add_parser("tau", parents=[common], help="tau(n) for n <= N")
    cmd.add_argument("--limit", type=int)

    cmd = commands.add_parser("angles", parents=[common], help="a(p), theta(p)")
    cmd.add_argument("--limit", type=int, help="prime cutoff P")

    cmd = commands.add_parser("satotate", parents=[common], help="angle histogram")
    cmd.add_argument("--limit", type=int, help="prime cutoff P")
    cmd.add_argument("--bins", type=int)
    cmd.add_argument("--svg", type=Path)

    cmd = commands.add_parser("character", parents=[common], help="SU(2) characters")
    cmd.add_argument("--poly", required=True)
    cmd.add_argument("--sign", type=parse_sign, default=1)
    cmd.add_argument("--decompose", action="store_true")
    cmd.add_argument("--unitary", action="store_true")

    cmd = commands.add_parser("classify", parents=[common], help="Chebyshev gate")
    cmd.add_argument("--poly", required=True)

    cmd = commands.add_parser("lfun", parents=[common], help="truncated product")
    cmd.add_argument("--spec", required=True)
    cmd.add_argument("--s", type=parse_s, required=True)
    cmd.add_argument("--cutoff", type=int)

    cmd = commands.add_parser("verify", parents=[common], help="identity suite")
    cmd.add_argument("--identity", choices=IDENTITIES + ("all",), default="all")
    cmd.add_argument("--cutoff", type=int)
    cmd.add_argument("--max-m", type=int, default=6)

    cmd = commands.add_parser("boundary", parents=[common], help="zero cloud")
    cmd.add_argument("--poly", required=True)
    cmd.add_argument("--sign", type=parse_sign, default=-1)
    cmd.add_argument("--cutoff", type=int)
    cmd.add_argument("--svg", type=Path)
    return parser


def _overrides(args) -> dict:
    limit = getattr(args, "limit", None)
    cutoff = getattr(args, "cutoff", None)
    if args.command in ("angles", "satotate"):
        cutoff = limit
    return {
        "tau": {"limit": limit if limit is not None else cutoff},
        "angles": {
            "cutoff": cutoff if cutoff is not None else limit,
            "bins": getattr(args, "bins", None),
        },
        "output": {
            "format": args.format,
            "path": args.out,
            "cache_dir": args.cache_dir,
        },
    }


def _format(config: RunConfig, allowed=("csv", "json")) -> str:
    if config.output.format not in allowed:
        raise RejectedInputError(
            f"format {config.output.format} not available here; use one of {allowed}"
        )
    return config.output.format


def _note(text: str):
    print(text, file=sys.stderr)


def run_tau(args, config: RunConfig) -> int:
    fmt = _format(config)
    rows = tau_rows(tau_table(config))
    text = json_array(rows) if fmt == "json" else csv_text(rows, ("n", "tau"))
    emit(text, config.output.path, sys.stdout)
    return EXIT_OK


def run_angles(args, config: RunConfig) -> int:
    fmt = _format(config)
    entries = angle_table(config).entries
    if fmt == "json":
        text = json_array(entries)
    else:
        text = csv_text(entries, ("p", "a", "theta"))
    emit(text, config.output.path, sys.stdout)
    return EXIT_OK


def run_satotate(args, config: RunConfig) -> int:
    fmt = _format(config, ("csv", "json", "svg"))
    report = satotate_test(angle_table(config), config.angles.bins)
    if fmt == "json":
        text = report.json()
    elif fmt == "svg":
        text = histogram_svg(report)
    else:
        text = csv_text(report.histogram, ("lower", "upper", "count", "model_mass"))
    emit(text, config.output.path, sys.stdout)
    if args.svg:
        emit(histogram_svg(report), args.svg, sys.stdout)
    _note(f"primes={report.count} sup_distance={report.sup_distance!r}")
    return EXIT_OK


def _unitarity_line(result) -> str:
    if isinstance(result, UnitaryResult):
        return f"UNITARY max|h|={result.max_abs!r} certified-by={result.certified_by}"
    label = "BOUNDARY-AMBIGUOUS"
    if isinstance(result, NonUnitaryResult):
        label = "NON-UNITARY"
    return f"{label} theta0={result.theta0!r} h(theta0)={result.value!r}"


def run_character(args, config: RunConfig) -> int:
    fmt = _format(config)
    f = IntPolynomial.parse(args.poly)
    h = from_polynomial(f)
    payload = CharacterPayload(
        poly=str(f),
        decomposition=str(h),
        coefficients={str(m): c for m, c in h.coeffs.items()},
    )
    lines = []
    if args.decompose or not args.unitary:
        lines.append(f"{f} = {h}")
    if args.unitary:
        result = unitarity_test(
            DegreeTwoFamily(sign=args.sign, h=h), config=config.unitarity
        )
        payload = payload.copy(update={"sign": args.sign, **result.dict()})
        lines.append(_unitarity_line(result))
    text = payload.to_json() if fmt == "json" else "\n".join(lines)
    emit(text, config.output.path, sys.stdout)
    return EXIT_OK


def run_classify(args, config: RunConfig) -> int:
    fmt = _format(config)
    f = IntPolynomial.parse(args.poly)
    verdict = classify(f)
    if isinstance(verdict, Unitary):
        m = verdict.m
        payload = ClassifyPayload(
            poly=str(f),
            verdict="unitary",
            m=m,
            product=f"Z^±(s,f)=Z_{m}^±(s)",
            consequence="meromorphic continuation to all of C",
        )
        lines = [f"UNITARY m={m}, {payload.product}", payload.consequence]
    else:
        witness = verdict.witness
        payload = ClassifyPayload(
            poly=str(f),
            verdict="non-unitary",
            witness_x0=str(witness.x0),
            witness_value=str(witness.value),
            consequence="natural boundary Re(s)=0",
        )
        lines = [
            f"NON-UNITARY witness={witness.x0} f({witness.x0})={witness.value}",
            payload.consequence,
        ]
    text = payload.to_json() if fmt == "json" else "\n".join(lines)
    emit(text, config.output.path, sys.stdout)
    return EXIT_OK


def run_lfun(args, config: RunConfig) -> int:
    fmt = _format(config)
    spec = EulerProductSpec.parse(args.spec)
    angles = angle_table(config)
    value = truncated_product(
        spec, args.s, config.angles.cutoff, angles, config.products, config.workers
    )
    if value.pole is not None:
        _note(f"local factor of {spec} vanishes at p={value.pole}")
    if fmt == "json":
        text = value.json()
    else:
        text = csv_text([value], tuple(value.__fields__))
    emit(text, config.output.path, sys.stdout)
    return EXIT_OK


def run_verify(args, config: RunConfig) -> int:
    fmt = _format(config)
    if not 1 <= args.max_m <= MAX_M:
        raise RejectedInputError(f"--max-m must lie in 1..{MAX_M}, got {args.max_m}")
    identity_ids = IDENTITIES if args.identity == "all" else (args.identity,)
    cutoff = config.angles.cutoff
    table, angles = cache_tables(config)

    rows = [
        VerifyRow(
            identity=row.identity,
            form="local",
            m=row.m,
            cutoff=cutoff,
            max_error=row.max_error,
            max_relative_error=row.max_relative_error,
            passed=row.passed,
        )
        for row in verify_suite(
            identity_ids, cutoff, args.max_m, angles, table, config.workers
        )
    ]
    for identity_id in identity_ids:
        if identity_id not in INDEXED:
            continue
        for m in range(1, args.max_m + 1):
            for s in TRUNCATED_POINTS:
                row = verify_truncated(identity_id, m, s, cutoff, angles)
                rows.append(
                    VerifyRow(
                        identity=identity_id,
                        form="truncated",
                        m=m,
                        s=row.s,
                        cutoff=cutoff,
                        max_error=row.relative_error,
                        passed=row.passed,
                    )
                )

    if fmt == "json":
        text = json_array(rows)
    else:
        text = csv_text(
            rows,
            (
                "identity",
                "form",
                "m",
                "s",
                "cutoff",
                "max_error",
                "max_relative_error",
                "passed",
            ),
        )
    emit(text, config.output.path, sys.stdout)
    failed = [row for row in rows if not row.passed]
    if failed:
        raise InconsistencyError(f"{len(failed)} of {len(rows)} identity checks failed")
    _note(f"{len(rows)} identity checks passed")
    return EXIT_OK


def run_boundary(args, config: RunConfig) -> int:
    fmt = _format(config, ("csv", "json", "svg"))
    f = IntPolynomial.parse(args.poly)
    cutoff = config.angles.cutoff
    points = zero_cloud(f, args.sign, cutoff, angle_table(config), config.workers)
    summary = cloud_summary(points)

    sup = sup_norm(f)
    for point in points:
        if abs(point.sigma) > sigma_bound(sup, point.p) + SIGMA_SLACK:
            raise InconsistencyError(
                f"sigma={point.sigma!r} at p={point.p} exceeds the bound for sup|f|={sup}"
            )

    title = f"Zero cloud of 1 {'+' if args.sign > 0 else '-'} ({f})T + T^2"
    if fmt == "json":
        text = json_array(points)
    elif fmt == "svg":
        text = scatter_svg(points, title)
    else:
        text = csv_text(points, ("p", "root_modulus", "sigma", "t"))
    emit(text, config.output.path, sys.stdout)
    if args.svg:
        emit(scatter_svg(points, title), args.svg, sys.stdout)
    _note(
        f"points={summary.count} off_axis={summary.count_offaxis} "
        f"min_positive_sigma={summary.min_positive_sigma!r} "
        f"max_sigma={summary.max_sigma!r} sup|f|={sup!r}"
    )
    return EXIT_OK


COMMANDS = {
    "tau": run_tau,
    "angles": run_angles,
    "satotate": run_satotate,
    "character": run_character,
    "classify": run_classify,
    "lfun": run_lfun,
    "verify": run_verify,
    "boundary": run_boundary,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = get_config(args.config, _overrides(args))
        return COMMANDS[args.command](args, config)
    except (RejectedInputError, TableLookupError) as err:
        _note(f"error: {err}")
        return EXIT_REJECTED
    except InconsistencyError as err:
        LOGGER.exception("Computation contradicts a proven fact")
        _note(f"inconsistency: {err}")
        return EXIT_INCONSISTENT
