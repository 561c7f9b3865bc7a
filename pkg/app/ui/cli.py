#app/ui/cli.py

import sys
import logging
import argparse
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from app.common.report_writer import ReportWriter
from app.core.checker import hilbert_records, verify_config
from app.core.cohomology import LineBundle, cohomology_hypersurface, cohomology_projective, p1_cohomology
from app.core.geometry import UndecidedError, hom_table
from app.core.special_cases import check_p1
from app.models.equicore import ambient_weights
from app.models.report import Report
from app.models.run_spec import FORMATS, SPACES, RunSpec, UsageError
from utils.file_utils import write_text_file
from utils.performance import default_worker_count

# Set up logging
logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def build_parser() -> argparse.ArgumentParser:
    """Create the argument parser with one subcommand per operation."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="text", help="Output format")
    common.add_argument("--output", "-o", help="Write the report to this file instead of stdout")
    common.add_argument("--verbose", "-v", action="store_true", help="Show passing checks and debug logs")
    common.add_argument("--workers", type=int, help="Worker processes (default: SODCHECK_WORKERS or physical cores)")
    common.add_argument("--timing", action="store_true", help="Include wall time and memory in the report")
    common.add_argument("--config", dest="config_file", help="key=value file whose settings override flags")
    common.add_argument("--no-log-file", action="store_true", help="Log to the console only, without files under logs/")

    single = argparse.ArgumentParser(add_help=False)
    single.add_argument("-m", type=int, help="Number of x variables")
    single.add_argument("-n", type=int, help="Number of y variables")
    single.add_argument("-d", type=int, help="Degree and group order")

    parser = argparse.ArgumentParser(
        prog="sodcheck",
        description="Verify the semi-orthogonal decomposition of D[X/mu_d] for X = V(f + g)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common, single], help="Verify one (m, n, d)")
    verify.add_argument("--cutoff", type=int, help="Hilbert series cutoff (default 2d+4)")
    verify.add_argument("--reversed-order", action="store_true", help="Reverse the decomposition (expected to fail)")

    sweep = commands.add_parser("sweep", parents=[common], help="Verify every config up to --max-d")
    sweep.add_argument("--min-d", type=int, default=2, help="Smallest d")
    sweep.add_argument("--max-d", type=int, help="Largest d")
    sweep.add_argument("--cutoff", type=int, help="Hilbert series cutoff (default 2d+4 per config)")
    sweep.add_argument("--cyclic", action="store_true", help="Include the m = 1 configs")

    cohom = commands.add_parser("cohom", parents=[common, single], help="Cohomology of a line bundle")
    cohom.add_argument("-k", type=int, default=0, help="Degree of the line bundle")
    cohom.add_argument("-c", type=int, default=0, help="Character twist")
    cohom.add_argument("--space", choices=SPACES, default="hypersurface", help="Where the line bundle lives")

    ext = commands.add_parser("ext", parents=[common, single], help="Ext between two spanning objects")
    ext.add_argument("--later", help="Source object: LB:k:c, PF:c, PG:c or L:k:c, optional @site")
    ext.add_argument("--earlier", help="Target object, same syntax")

    hilbert = commands.add_parser("hilbert", parents=[common, single], help="Koszul and graded identities")
    hilbert.add_argument("--cutoff", type=int, help="Hilbert series cutoff (default 2d+4)")

    p1 = commands.add_parser("p1", parents=[common], help="Exceptional collection on the line")
    p1.add_argument("-d", type=int, help="A single d")
    p1.add_argument("--min-d", type=int, default=2, help="Smallest d")
    p1.add_argument("--max-d", type=int, help="Largest d")

    return parser


def emit(spec: RunSpec, text: str) -> None:
    """Send output to the requested file or to stdout."""
    if spec.output:
        if not write_text_file(spec.output, text):
            raise OSError(f"Could not write {spec.output}")
        logger.info(f"Report written to {spec.output}")
    else:
        sys.stdout.write(text)


def run_in_pool(func: Callable, items: Sequence, workers: Optional[int]) -> List:
    """Map func over items, in order, using a process pool when it helps."""
    count = min(default_worker_count(workers), len(items))
    if count <= 1:
        return [func(item) for item in items]
    logger.info(f"Running {len(items)} jobs on {count} workers")
    with ProcessPoolExecutor(max_workers=count) as executor:
        return list(executor.map(func, items))


def _verify_job(job) -> Report:
    cfg, cutoff = job
    return verify_config(cfg, cutoff)


def run_verify(spec: RunSpec) -> int:
    cfg = spec.config()
    report = verify_config(cfg, None if cfg.cyclic else spec.resolved_cutoff(cfg), spec.reversed_order)
    emit(spec, ReportWriter.render_report(report, spec.fmt, spec.verbose, spec.timing))
    return EXIT_PASS if report.passed else EXIT_FAILURE


def run_sweep(spec: RunSpec) -> int:
    configs = spec.sweep_configs()
    jobs = [(cfg, None if cfg.cyclic else spec.resolved_cutoff(cfg)) for cfg in configs]
    reports = run_in_pool(_verify_job, jobs, spec.workers)
    emit(spec, ReportWriter.render_sweep(reports, spec.fmt, spec.timing))
    failed = [report.label for report in reports if not report.passed]
    if failed:
        logger.warning(f"Sweep failures: {', '.join(failed)}")
    logger.info(f"Sweep finished: {len(reports) - len(failed)}/{len(reports)} configs pass")
    return EXIT_FAILURE if failed else EXIT_PASS


def run_cohom(spec: RunSpec) -> int:
    cfg = spec.config()
    if spec.space == "projective":
        table = cohomology_projective(LineBundle.on(ambient_weights(cfg), spec.k, spec.c))
        where = f"P^{cfg.ambient_dimension}"
    elif spec.space == "line":
        table = p1_cohomology(cfg.d, spec.k, spec.c)
        where = "join line"
    else:
        table = cohomology_hypersurface(cfg, spec.k, spec.c)
        where = "X"
    emit(spec, ReportWriter.render_table(f"H^*(O({spec.k}) chi^{spec.c}) on {where} for {cfg.label}", table, spec.fmt))
    return EXIT_PASS


def run_ext(spec: RunSpec) -> int:
    cfg = spec.config()
    later, earlier = spec.span_objects()
    try:
        table = hom_table(cfg, later, earlier)
    except ValueError as e:
        raise UsageError(str(e))
    except UndecidedError as e:
        logger.error(f"Ext query failed: {e}")
        return EXIT_FAILURE
    emit(spec, ReportWriter.render_table(f"Ext^*({later.label}, {earlier.label}) on {cfg.label}", table, spec.fmt))
    return EXIT_PASS


def run_hilbert(spec: RunSpec) -> int:
    cfg = spec.config()
    report = hilbert_records(cfg, spec.resolved_cutoff(cfg))
    emit(spec, ReportWriter.render_report(report, spec.fmt, spec.verbose))
    return EXIT_PASS if report.passed else EXIT_FAILURE


def run_p1(spec: RunSpec) -> int:
    reports = run_in_pool(check_p1, spec.p1_degrees(), spec.workers)
    emit(spec, ReportWriter.render_sweep(reports, spec.fmt))
    return EXIT_PASS if all(report.passed for report in reports) else EXIT_FAILURE


HANDLERS: Dict[str, Callable[[RunSpec], int]] = {
    "verify": run_verify,
    "sweep": run_sweep,
    "cohom": run_cohom,
    "ext": run_ext,
    "hilbert": run_hilbert,
    "p1": run_p1,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments, run the command and return its exit code.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 if every check passes, 1 on a check failure, 2 on a usage error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if e.code in (0, None) else EXIT_USAGE

    try:
        spec = RunSpec.from_namespace(args).validate()
        if spec.verbose:
            logging.getLogger().setLevel(logging.DEBUG)
        return HANDLERS[spec.command](spec)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
