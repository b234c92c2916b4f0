#!/usr/bin/env python3
"""
Discrete Exterior Calculus Tool

Loads simplicial complexes, cochains and vertex maps from JSON documents and
runs the exact-rational operators on them: the exterior derivative, the wedge
product (three combinatorial formulas plus the Whitney-form integral), cochain
pullback along simplicial maps, and a randomized verification suite.
Results are written to stdout (or -o FILE); diagnostics go to stderr.
"""

import sys
import argparse
import logging
from typing import Any, Dict, List, Optional, Sequence

from cochains.errors import DECError, MissingVertexImage, SimplexNotInComplex, SpanningViolation
from cochains.maps import pullback
from cochains.operators import WedgeMethod, d, wedge
from cochains.simplicial_core import Cochain, format_scalar
from cochains.verify import FAIL, PASS, SKIP, VerificationReport, run_verification
from cochains.whitney_oracle import wilson_product
from helpers.documents import (
    DocumentError,
    LabeledComplex,
    cochain_to_document,
    dump_document,
    load_cochain,
    load_complex,
    load_map,
    write_output,
)
from helpers.logger import (
    GREEN,
    RED,
    YELLOW,
    color_enabled,
    colorize,
    log_section_header,
    log_step,
    log_step_result,
    log_warning,
)

WEDGE_METHODS = [m.value for m in WedgeMethod] + ["whitney"]

EXIT_OK = 0
EXIT_DOCUMENT = 1
EXIT_VALIDATION = 2
EXIT_PROPERTY = 3


class ColoredFormatter(logging.Formatter):
    """Formatter that colors log levels in console output unless DEC_COLOR=0."""
    COLORS = {
        'ERROR': '\033[91m',  # Red
        'WARNING': '\033[93m',  # Yellow
        'INFO': '',  # Default color
        'DEBUG': '\033[94m',  # Blue
        'RESET': '\033[0m'  # Reset to default
    }

    def format(self, record):
        log_message = super().format(record)
        if not color_enabled():
            return log_message
        if record.levelname in ('ERROR', 'WARNING', 'DEBUG'):
            log_message = f"{self.COLORS[record.levelname]}{log_message}{self.COLORS['RESET']}"
        else:
            log_message = log_message.replace("FAILED", f"{self.COLORS['ERROR']}FAILED{self.COLORS['RESET']}")
        return log_message


class DecTool:
    """Class to run the command-line operations against JSON documents."""

    def __init__(self, debug: bool = False, log_file: Optional[str] = None):
        """
        Initialize the DecTool class.

        Args:
            debug: Enable debug logging (library modules included)
            log_file: Optional path of a plain-text log file
        """
        log_level = logging.DEBUG if debug else logging.INFO
        log_format = '%(asctime)s - %(levelname)s - %(message)s'
        date_format = '%Y-%m-%d %H:%M:%S'

        # Console handler writes to stderr so stdout carries only results
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(ColoredFormatter(log_format, date_format))
        console_handler.setLevel(log_level)
        handlers: List[logging.Handler] = [console_handler]

        if log_file:
            file_handler = logging.FileHandler(log_file, encoding="utf-8")
            file_handler.setFormatter(logging.Formatter(log_format, date_format))
            file_handler.setLevel(log_level)
            handlers.append(file_handler)

        self.logger = logging.getLogger("dec")
        # Library modules log under "cochains.*" at debug level
        for logger in (self.logger, logging.getLogger("cochains")):
            logger.setLevel(log_level)
            # Remove handlers left by an earlier session (avoid duplicate logs)
            for handler in list(logger.handlers):
                logger.removeHandler(handler)
                handler.close()
            for handler in handlers:
                logger.addHandler(handler)
            logger.propagate = False

    # --- error reporting -------------------------------------------------

    def describe_error(self, error: DECError, labeled: Optional[LabeledComplex]) -> str:
        """Render an error with vertex labels instead of internal vertex ids where possible."""
        if labeled is None:
            return str(error)
        try:
            if isinstance(error, SimplexNotInComplex):
                return f"Simplex {labeled.key(error.simplex)} is not in the complex"
            if isinstance(error, MissingVertexImage):
                return f"Vertex map has no image for source vertex {labeled.labels[error.vertex]}"
        except (IndexError, AttributeError):
            pass
        return str(error)

    def run(self, title: str, action, labeled_hint: Dict[str, Any]) -> int:
        """Run one command, mapping failures onto exit codes.

        ``labeled_hint`` is filled in by the command with the complexes it has
        loaded, so errors can be reported with vertex labels.
        """
        log_section_header(self.logger, title)
        try:
            code = action()
        except DocumentError as e:
            log_step_result(self.logger, False, "Invalid input document", str(e))
            log_program_completion(self.logger, success=False)
            return EXIT_DOCUMENT
        except SpanningViolation as e:
            source, target = labeled_hint.get("source"), labeled_hint.get("target")
            message = str(e)
            if source is not None and target is not None:
                message = (f"Simplex {source.key(e.simplex)} maps to {target.key(e.image)}, "
                           f"which is not a simplex of the target")
            log_step_result(self.logger, False, "Vertex map is not simplicial", message)
            log_program_completion(self.logger, success=False)
            return EXIT_VALIDATION
        except DECError as e:
            log_step_result(self.logger, False, "Validation failed",
                            self.describe_error(e, labeled_hint.get("source")))
            log_program_completion(self.logger, success=False)
            return EXIT_VALIDATION
        log_program_completion(self.logger, success=code == EXIT_OK)
        return code

    # --- commands ------------------------------------------------------------

    def _load_inputs(self, complex_path: str, cochain_paths: Sequence[str], expected: int,
                     command: str, hint: Dict[str, Any]):
        if len(cochain_paths) != expected:
            noun = "cochain" if expected == 1 else "cochains"
            raise DocumentError(f"{command} takes exactly {expected} {noun} (-x), got {len(cochain_paths)}")
        total = expected + 1
        log_step(self.logger, 1, total, f"Loading complex {complex_path}")
        labeled = load_complex(complex_path)
        hint["source"] = labeled
        log_step_result(self.logger, True, f"Complex of dimension {labeled.complex.dimension} loaded",
                        f"f-vector {list(labeled.complex.f_vector())}")
        cochains = []
        for i, path in enumerate(cochain_paths, 2):
            log_step(self.logger, i, total, f"Loading cochain {path}")
            cochain = load_cochain(path, labeled)
            log_step_result(self.logger, True, f"{cochain.degree}-cochain loaded",
                            f"{len(cochain.values)} nonzero values")
            cochains.append(cochain)
        return labeled, cochains

    def _emit(self, cochain: Cochain, labeled: LabeledComplex, output: Optional[str]) -> None:
        write_output(dump_document(cochain_to_document(cochain, labeled)), output)
        log_step_result(self.logger, True, f"{cochain.degree}-cochain written to {output or 'stdout'}")

    def cmd_d(self, complex_path: str, cochain_paths: Sequence[str], output: Optional[str] = None) -> int:
        """Apply the discrete exterior derivative to one cochain."""
        hint: Dict[str, Any] = {}

        def action():
            labeled, (a,) = self._load_inputs(complex_path, cochain_paths, 1, "d", hint)
            self._emit(d(a), labeled, output)
            return EXIT_OK

        return self.run("DEC - EXTERIOR DERIVATIVE", action, hint)

    def cmd_wedge(self, complex_path: str, cochain_paths: Sequence[str], method: str = "avg-left",
                  output: Optional[str] = None) -> int:
        """Wedge two cochains with one of the combinatorial formulas or the Whitney integral."""
        hint: Dict[str, Any] = {}

        def action():
            labeled, (a, b) = self._load_inputs(complex_path, cochain_paths, 2, "wedge", hint)
            if a.degree + b.degree > labeled.complex.dimension:
                log_warning(self.logger, f"Degrees {a.degree} + {b.degree} exceed the complex dimension "
                                         f"{labeled.complex.dimension}; the product is the zero cochain")
            self.logger.debug(f"Wedge method: {method}")
            if method == "whitney":
                product = wilson_product(a, b)
            else:
                product = wedge(a, b, WedgeMethod(method))
            self._emit(product, labeled, output)
            return EXIT_OK

        return self.run("DEC - WEDGE PRODUCT", action, hint)

    def cmd_pullback(self, source_path: str, target_path: str, map_path: str,
                     cochain_paths: Sequence[str], output: Optional[str] = None) -> int:
        """Pull a cochain on the target complex back to the source complex."""
        hint: Dict[str, Any] = {}

        def action():
            if len(cochain_paths) != 1:
                raise DocumentError(f"pullback takes exactly 1 cochain (-x), got {len(cochain_paths)}")
            log_step(self.logger, 1, 4, f"Loading source complex {source_path}")
            source = load_complex(source_path)
            hint["source"] = source
            log_step(self.logger, 2, 4, f"Loading target complex {target_path}")
            target = load_complex(target_path)
            hint["target"] = target
            log_step(self.logger, 3, 4, f"Loading and validating vertex map {map_path}")
            f = load_map(map_path, source, target)
            log_step_result(self.logger, True, "Vertex map is simplicial")
            log_step(self.logger, 4, 4, f"Loading cochain {cochain_paths[0]}")
            hint["source"] = target
            a = load_cochain(cochain_paths[0], target)
            hint["source"] = source
            self._emit(pullback(f, a), source, output)
            return EXIT_OK

        return self.run("DEC - PULLBACK", action, hint)

    def cmd_verify(self, complex_path: str, trials: int = 50, seed: int = 42,
                   max_degree: Optional[int] = None) -> int:
        """Run the randomized property suites and print the report."""
        hint: Dict[str, Any] = {}

        def action():
            log_step(self.logger, 1, 2, f"Loading complex {complex_path}")
            labeled = load_complex(complex_path)
            hint["source"] = labeled
            log_step(self.logger, 2, 2, f"Running property suites (trials={trials}, seed={seed})", header=True)
            report = run_verification(labeled.complex, trials=trials, seed=seed, max_degree=max_degree)
            for result in report.results:
                if result.status == FAIL:
                    log_step_result(self.logger, False, f"{result.name} FAILED", result.witness.detail)
                elif result.status == SKIP:
                    log_warning(self.logger, f"{result.name} skipped (vacuous on this complex)")
                else:
                    log_step_result(self.logger, True, f"{result.name}: {result.checks} checks passed")
            print(render_report(report, labeled), end="")
            if not report.passed:
                log_section_header(self.logger, f"VERIFY FAILED: {len(report.failures)} properties failed")
                return EXIT_PROPERTY
            return EXIT_OK

        return self.run("DEC - VERIFY", action, hint)

    def cmd_info(self, complex_path: str) -> int:
        """Print per-dimension simplex counts and the Euler characteristic."""
        hint: Dict[str, Any] = {}

        def action():
            labeled = load_complex(complex_path)
            hint["source"] = labeled
            complex_ = labeled.complex
            lines = [f"vertices: {len(labeled.labels)}", f"dimension: {complex_.dimension}"]
            for k, count in enumerate(complex_.f_vector()):
                lines.append(f"{k}-simplices: {count}")
            lines.append(f"euler characteristic: {complex_.euler_characteristic()}")
            print("\n".join(lines))
            return EXIT_OK

        return self.run("DEC - COMPLEX INFO", action, hint)


STATUS_COLORS = {PASS: GREEN, FAIL: RED, SKIP: YELLOW}


def _witness_document(cochain: Cochain, labeled: LabeledComplex) -> Dict[str, Any]:
    return {
        "degree": cochain.degree,
        "values": {labeled.key(s): format_scalar(v) for s, v in cochain.items()},
    }


def render_report(report: VerificationReport, labeled: LabeledComplex) -> str:
    """The verification table followed by one block per failing property.

    The text depends only on the complex, seed, trials and max degree.
    """
    width = max([len("PROPERTY")] + [len(r.name) for r in report.results])
    lines = [f"{'PROPERTY'.ljust(width)}  STATUS  CHECKS"]
    for result in report.results:
        status = colorize(result.status.ljust(6), STATUS_COLORS[result.status])
        lines.append(f"{result.name.ljust(width)}  {status}  {result.checks}")
    counts = {status: sum(r.status == status for r in report.results) for status in (PASS, FAIL, SKIP)}
    lines.append("")
    lines.append(f"seed {report.seed}, trials {report.trials}, max degree {report.max_degree}: "
                 f"{counts[PASS]} passed, {counts[FAIL]} failed, {counts[SKIP]} skipped")
    for result in report.failures:
        witness = result.witness
        lines.append("")
        lines.append(f"{colorize('FAIL', RED)} {result.name}: {witness.detail}")
        if witness.simplex:
            lines.append(f"  simplex: {labeled.key(witness.simplex)}")
        for i, cochain in enumerate(witness.inputs, 1):
            lines.append(f"  input {i}: {dump_document(_witness_document(cochain, labeled)).strip()}"
                         .replace("\n", "\n  "))
    return "\n".join(lines) + "\n"


def log_program_completion(logger, success: bool = True):
    """Add a footer to the log when the command completes."""
    status = "SUCCESSFULLY" if success else "WITH ERRORS"
    if success:
        logger.info(colorize(f"DEC - SESSION COMPLETED {status}", GREEN))
    else:
        logger.error(f"DEC - SESSION COMPLETED {status}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dec',
        description='Discrete Exterior Calculus Tool (exact rational arithmetic)',
        epilog='''
Examples:
  # Exterior derivative of a 0-cochain on an edge
  python3 dec.py d -c edge.json -x f.json

  # Wedge product of two cochains, choosing the formula
  python3 dec.py wedge -c triangle.json -x a.json -x b.json --method perm

  # Same product through the Whitney-form integral
  python3 dec.py wedge -c triangle.json -x a.json -x b.json --method whitney -o ab.json

  # Pull a cochain back along a simplicial map
  python3 dec.py pullback -c source.json -t target.json -m map.json -x a.json

  # Run the randomized property suites
  python3 dec.py verify -c tetrahedron.json --trials 50 --seed 42

  # Simplex counts and Euler characteristic
  python3 dec.py info -c tetrahedron.json

Exit codes: 0 success, 1 invalid document, 2 validation error, 3 property failure.
Set DEC_COLOR=0 to disable colored output.
''',
        formatter_class=argparse.RawDescriptionHelpFormatter
    )

    # Common arguments
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='store_true', help='Enable verbose debug logging')
    common.add_argument('--log-file', metavar='FILE', help='Also write the log to FILE (no colors)')

    subparsers = parser.add_subparsers(dest='command', metavar='COMMAND', required=True)

    d_parser = subparsers.add_parser('d', parents=[common], help='Discrete exterior derivative of a cochain')
    d_parser.add_argument('-c', '--complex', metavar='FILE', required=True, help='Complex document')
    d_parser.add_argument('-x', '--cochain', metavar='FILE', action='append', default=[], help='Cochain document')
    d_parser.add_argument('-o', '--output', metavar='FILE', help='Write the result to FILE instead of stdout')

    wedge_parser = subparsers.add_parser('wedge', parents=[common], help='Wedge product of two cochains')
    wedge_parser.add_argument('-c', '--complex', metavar='FILE', required=True, help='Complex document')
    wedge_parser.add_argument('-x', '--cochain', metavar='FILE', action='append', default=[],
                              help='Cochain document (give exactly two, left factor first)')
    wedge_parser.add_argument('--method', choices=WEDGE_METHODS, default=WedgeMethod.AverageOuterLeft.value,
                              help='Wedge formula (default: avg-left)')
    wedge_parser.add_argument('-o', '--output', metavar='FILE', help='Write the result to FILE instead of stdout')

    pullback_parser = subparsers.add_parser('pullback', parents=[common],
                                            help='Pull a cochain back along a simplicial map')
    pullback_parser.add_argument('-c', '--complex', metavar='FILE', required=True, help='Source complex document')
    pullback_parser.add_argument('-t', '--target-complex', metavar='FILE', required=True,
                                 help='Target complex document')
    pullback_parser.add_argument('-m', '--map', metavar='FILE', required=True, help='Vertex map document')
    pullback_parser.add_argument('-x', '--cochain', metavar='FILE', action='append', default=[],
                                 help='Cochain document on the target complex')
    pullback_parser.add_argument('-o', '--output', metavar='FILE', help='Write the result to FILE instead of stdout')

    verify_parser = subparsers.add_parser('verify', parents=[common], help='Run the randomized property suites')
    verify_parser.add_argument('-c', '--complex', metavar='FILE', required=True, help='Complex document')
    verify_parser.add_argument('--trials', type=int, default=50, help='Random cochains per degree pair (default: 50)')
    verify_parser.add_argument('--seed', type=int, default=42, help='Random seed (default: 42)')
    verify_parser.add_argument('--max-degree', type=int, default=None,
                               help='Largest cochain degree to test (default: complex dimension)')

    info_parser = subparsers.add_parser('info', parents=[common], help='Simplex counts and Euler characteristic')
    info_parser.add_argument('-c', '--complex', metavar='FILE', required=True, help='Complex document')

    return parser


def main(argv: Optional[Sequence[str]] = None):
    """Main entry point of the script."""
    args = build_parser().parse_args(argv)

    tool = DecTool(debug=args.verbose, log_file=args.log_file)

    if args.command == 'd':
        code = tool.cmd_d(args.complex, args.cochain, args.output)
    elif args.command == 'wedge':
        code = tool.cmd_wedge(args.complex, args.cochain, args.method, args.output)
    elif args.command == 'pullback':
        code = tool.cmd_pullback(args.complex, args.target_complex, args.map, args.cochain, args.output)
    elif args.command == 'verify':
        code = tool.cmd_verify(args.complex, args.trials, args.seed, args.max_degree)
    else:
        code = tool.cmd_info(args.complex)

    sys.exit(code)


if __name__ == "__main__":
    main()
