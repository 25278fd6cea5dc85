from __future__ import absolute_import, annotations

import argparse
import json
import logging.config
import sys
from typing import List, Optional

import mpmath
import sentry_sdk
from sentry_sdk.integrations.logging import LoggingIntegration

from cli.pipeline import STAGES, Pipeline, PipelineConfig
from common.errors import CheckpointError, ConfigurationError, DomainError, ResourceCapError
from common.logging_config import get_logging_configuration
from common.utils import Utils
from excluder.certify import certify_exclusion
from excluder.norms import exclude_range
from jnum.moduli import ORACLE_LABEL, singular_moduli
from quadforms.analytic import class_number_analytic
from quadforms.forms import enumerate_reduced_forms
from scanner.config import PRESETS, ScanConfig
from scanner.scan import dump_counters, scan_range


logger = logging.getLogger("singular.cli.main")

EXIT_VERIFIED = 0
EXIT_NOT_VERIFIED = 1
EXIT_CONFIGURATION = 2
EXIT_RESOURCE_CAP = 3


def setup(service_name: str) -> None:
    logging.config.dictConfig(get_logging_configuration(service_name))
    sentry_logging = LoggingIntegration(
        level=logging.INFO,  # Capture info and above as breadcrumbs
        event_level=logging.ERROR  # Send errors as events
    )
    # inert unless SENTRY_DSN is set
    sentry_sdk.init(integrations=[sentry_logging], traces_sample_rate=1.0)


def _add_pipeline_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--threads", type=int, default=None, help="worker processes, default SINGULAR_THREADS")
    parser.add_argument("--block-size", type=int, default=None, help="scanner block size, default 2^26")
    parser.add_argument("--output-dir", default=None, help="certificate directory, default SINGULAR_OUTPUT_DIR")
    parser.add_argument("--csv", action="store_true", help="write the per discriminant exclusion CSV")
    parser.add_argument("--desk-scale", action="store_true", help="run the long stages on their desk sub-ranges")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="singular", description="Certify that there are no singular units")
    commands = parser.add_subparsers(dest="command", required=True)

    prove_all = commands.add_parser("prove-all", help="run every stage and write the summary certificate")
    _add_pipeline_options(prove_all)

    certify = commands.add_parser("certify", help="run the given stages only")
    certify.add_argument("stages", nargs="+", choices=STAGES)
    _add_pipeline_options(certify)

    verify_constants = commands.add_parser("verify-constants", help="certify the Robin and derived constants")
    _add_pipeline_options(verify_constants)

    scan = commands.add_parser("scan", help="bound C_eps over a range of |delta|")
    scan.add_argument("--x-min", type=lambda value: Utils.parse_integer(value), required=True)
    scan.add_argument("--x-max", type=lambda value: Utils.parse_integer(value), required=True)
    scan.add_argument("--eps", choices=sorted(PRESETS), required=True)
    scan.add_argument("--block-size", type=int, default=None)
    scan.add_argument("--threads", type=int, default=None)
    scan.add_argument("--checkpoint", default=None, help="JSON checkpoint to resume from and update")
    scan.add_argument("--json", action="store_true", help="print the scan report as JSON")
    scan.add_argument("--csv", default=None, help="write every counter of the range to this file")

    exclude = commands.add_parser("exclude", help="flag the discriminants whose norm bound is inconclusive")
    exclude.add_argument("--x-max", type=lambda value: Utils.parse_integer(value), required=True)
    exclude.add_argument("--threads", type=int, default=1)
    exclude.add_argument("--json", action="store_true", help="print the exclusion report as JSON")
    exclude.add_argument("--csv", default=None, help="write every bound to this file")

    forms = commands.add_parser("forms", help="list the reduced primitive forms of a discriminant")
    forms.add_argument("delta", type=int)

    class_number = commands.add_parser("class-number", help="class number by enumeration and analytic formula")
    class_number.add_argument("delta", type=int)

    j = commands.add_parser("j", help="numeric singular moduli of a discriminant")
    j.add_argument("delta", type=int)
    j.add_argument("--precision", type=int, default=30)
    return parser


def _run_pipeline(arguments: argparse.Namespace, stages: Optional[List[str]]) -> int:
    config = PipelineConfig.build_from_env(stages, arguments.threads, arguments.block_size, arguments.output_dir,
                                           arguments.csv, arguments.desk_scale)
    outcome = Pipeline(config).run()
    for certificate in outcome.certificates:
        print(f"{certificate.stage}: {'verified' if certificate.verified else 'NOT verified'}")
    if outcome.failed_stage is not None:
        print(f"failed stage: {outcome.failed_stage}")
    summary = outcome.certificate("summary")
    if summary is not None:
        for note in summary.notes:
            print(note)
    return outcome.exit_code


def _scan(arguments: argparse.Namespace) -> int:
    config = ScanConfig.build(arguments.x_min, arguments.x_max, arguments.eps, block_size=arguments.block_size,
                              threads=arguments.threads)
    if arguments.csv:
        rows = dump_counters(config, config.x_min, config.x_max, arguments.csv)
        logger.info(f"Wrote [{rows}] counters to [{arguments.csv}]")
    report = scan_range(config, arguments.checkpoint)
    if arguments.json:
        print(json.dumps(report.to_repr(), sort_keys=True, indent=2))
    else:
        print(f"global bound: {report.global_bound} over {report.blocks_processed} blocks")
    report.ensure_unsaturated()
    return EXIT_VERIFIED if report.complete else EXIT_NOT_VERIFIED


def _exclude(arguments: argparse.Namespace) -> int:
    report = exclude_range(arguments.x_max, arguments.threads, csv_path=arguments.csv)
    certificate = certify_exclusion(report)
    if arguments.json:
        print(json.dumps(report.to_repr(), sort_keys=True, indent=2))
    else:
        print(f"flagged: {report.flagged_deltas}")
    return EXIT_VERIFIED if certificate.verified else EXIT_NOT_VERIFIED


def _forms(arguments: argparse.Namespace) -> int:
    print(json.dumps([form.to_repr() for form in enumerate_reduced_forms(arguments.delta)]))
    return EXIT_VERIFIED


def _class_number(arguments: argparse.Namespace) -> int:
    enumerated = len(enumerate_reduced_forms(arguments.delta))
    analytic = class_number_analytic(arguments.delta)
    print(json.dumps({"delta": arguments.delta, "classNumber": enumerated, "analytic": analytic}))
    return EXIT_VERIFIED if enumerated == analytic else EXIT_NOT_VERIFIED


def _j(arguments: argparse.Namespace) -> int:
    values = singular_moduli(arguments.delta, arguments.precision)
    digits = arguments.precision + 5
    print(json.dumps({
        "delta": arguments.delta,
        "values": [{"re": mpmath.nstr(value.re, digits), "im": mpmath.nstr(value.im, digits),
                    "err": mpmath.nstr(value.err, 3)} for value in values],
        "label": ORACLE_LABEL,
    }, indent=2))
    return EXIT_VERIFIED


def main(argv: Optional[List[str]] = None) -> int:
    arguments = build_parser().parse_args(argv)
    setup(f"singular-{arguments.command}")
    logger.info(f"Running [{arguments.command}]")
    try:
        if arguments.command == "prove-all":
            return _run_pipeline(arguments, None)
        if arguments.command == "certify":
            return _run_pipeline(arguments, arguments.stages)
        if arguments.command == "verify-constants":
            return _run_pipeline(arguments, ["constants"])
        if arguments.command == "scan":
            return _scan(arguments)
        if arguments.command == "exclude":
            return _exclude(arguments)
        if arguments.command == "forms":
            return _forms(arguments)
        if arguments.command == "class-number":
            return _class_number(arguments)
        return _j(arguments)
    except (ConfigurationError, CheckpointError, DomainError) as e:
        logger.error(e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_CONFIGURATION
    except ResourceCapError as e:
        logger.error(e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_RESOURCE_CAP


if __name__ == "__main__":
    sys.exit(main())
