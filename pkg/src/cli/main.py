import argparse
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, get_args

from pydantic import BaseModel

from src.config.settings import appSettings
from src.core.codec import dumps, loads_matrix
from src.core.errors import GaloisCpmError
from src.services.theory_service import GaloisTheoryService
from src.services.verification import SUITES, VerificationRunner

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2

Verb = Literal["lattice", "fold", "decohere", "discard", "scalar", "norm", "tp", "ff", "search", "verify"]
VERBS = get_args(Verb)


# Pydantic models
class Command(BaseModel):
    verb: Verb
    conductor: Optional[int] = None
    fieldSpec: Optional[str] = None
    subgroup: Optional[List[str]] = None
    transversal: Optional[List[str]] = None
    dim: Optional[int] = None
    matrixPath: Optional[str] = None
    statePath: Optional[str] = None
    element: Optional[str] = None
    target: Optional[str] = None
    boundHeight: int = 3
    boundTerms: int = 4
    prime: Optional[int] = None
    degree: Optional[int] = None
    baseDegree: int = 1
    seed: Optional[int] = None
    suites: Optional[List[str]] = None
    workers: Optional[int] = None
    acceptance: Optional[bool] = None
    outputFormat: Literal["json", "dot"] = "json"


def _tokens(text: Optional[str]) -> Optional[List[str]]:
    """Comma list; None when the flag is absent, [] for an empty list"""
    if text is None:
        return None
    return [token.strip() for token in text.split(",") if token.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galois-cpm",
        description="Exact Galois CPM constructions over matrix categories",
    )
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--conductor", type=int, help="cyclotomic conductor n for ℚ(ζₙ)")
    parser.add_argument("--field", dest="fieldSpec",
                        help="cyclotomic:N, quadratic:D, finite:P:M or sextic")
    parser.add_argument("--subgroup", help="comma-separated generators; empty string for the trivial group")
    parser.add_argument("--transversal", help="comma-separated coset representatives")
    parser.add_argument("--dim", type=int)
    parser.add_argument("--matrix", dest="matrixPath", help="JSON matrix file")
    parser.add_argument("--state", dest="statePath", help="JSON column vector file")
    parser.add_argument("--element", help='element expression such as "1-z"')
    parser.add_argument("--target", help="search target, p/q or an element expression")
    parser.add_argument("--bound-height", dest="boundHeight", type=int, default=3)
    parser.add_argument("--bound-terms", dest="boundTerms", type=int, default=4)
    parser.add_argument("--prime", type=int)
    parser.add_argument("--degree", type=int)
    parser.add_argument("--base-degree", dest="baseDegree", type=int, default=1)
    parser.add_argument("--seed", type=int)
    parser.add_argument("--suite", action="append", help="suite name; repeat or comma-separate")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--acceptance", action="store_true",
                        help="run every suite at its full acceptance sample count")
    parser.add_argument("--dot", action="store_true", help="emit the lattice as DOT")
    parser.add_argument("--json", action="store_true", help="emit JSON (the default)")
    return parser


def parse_command(argv: Optional[Sequence[str]] = None) -> Command:
    args = build_parser().parse_args(argv)
    suites = None
    if args.suite:
        suites = [name for chunk in args.suite for name in _tokens(chunk)]
    return Command(
        verb=args.verb,
        conductor=args.conductor,
        fieldSpec=args.fieldSpec,
        subgroup=_tokens(args.subgroup),
        transversal=_tokens(args.transversal),
        dim=args.dim,
        matrixPath=args.matrixPath,
        statePath=args.statePath,
        element=args.element,
        target=args.target,
        boundHeight=args.boundHeight,
        boundTerms=args.boundTerms,
        prime=args.prime,
        degree=args.degree,
        baseDegree=args.baseDegree,
        seed=args.seed,
        suites=suites,
        workers=args.workers,
        acceptance=True if args.acceptance else None,
        outputFormat="dot" if args.dot and not args.json else "json",
    )


def _read_matrix(path: Optional[str], flag: str):
    if not path:
        raise GaloisCpmError(f"{flag} PATH is required")
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as readError:
        raise GaloisCpmError(f"cannot read {path}: {readError}")
    return loads_matrix(text)


def _require(value, flag: str):
    if value is None:
        raise GaloisCpmError(f"{flag} is required")
    return value


def dispatch(command: Command, service: GaloisTheoryService) -> Dict[str, Any]:
    """Run one verb other than verify and return the service result"""
    verb = command.verb
    if verb == "ff":
        return service.finite_field(_require(command.prime, "--prime"), _require(command.degree, "--degree"),
                                    command.baseDegree)
    if verb == "fold":
        return service.fold(_read_matrix(command.matrixPath, "--matrix"), command.subgroup, command.transversal)
    if verb == "scalar":
        return service.scalar(_read_matrix(command.statePath, "--state"), command.subgroup)

    context = service.resolve_context(command.conductor, command.fieldSpec)
    if verb == "lattice":
        return service.emit_lattice(context, command.outputFormat)
    if verb == "decohere":
        return service.decohere(context, command.subgroup, _require(command.dim, "--dim"))
    if verb == "discard":
        return service.discard(context, command.subgroup, _require(command.dim, "--dim"))
    if verb == "norm":
        return service.norm(context, _require(command.element, "--element"), command.subgroup)
    if verb == "tp":
        return service.total_positivity(context, _require(command.element, "--element"))
    if verb == "search":
        return service.search(context, _require(command.target, "--target"), command.subgroup,
                              command.boundHeight, command.boundTerms)
    raise GaloisCpmError(f"unhandled verb {verb}")


def run_verify(command: Command, service: GaloisTheoryService) -> int:
    known = list(SUITES)
    if command.suites is not None:
        validation = service.guardrails.validate_suites(command.suites, known)
        if not validation["isValid"]:
            print(validation["reason"], file=sys.stderr)
            return EXIT_USAGE
    seed = appSettings.default_seed if command.seed is None else command.seed
    reports = VerificationRunner(workers=command.workers, acceptance=command.acceptance).run(seed, command.suites)
    failed = [report.suite for report in reports if not report.passed]
    payload = {
        "exact": True,
        "verb": "verify",
        "seed": seed,
        "passed": not failed,
        # elapsed time is logged, not printed
        "reports": [report.model_dump(exclude={"elapsedSeconds"}) for report in reports],
    }
    print(dumps(payload))
    if failed:
        logger.error(f"❌ Verification failed: {', '.join(failed)}")
        return EXIT_VERIFICATION_FAILED
    logger.info(f"✅ All {len(reports)} suites passed")
    return EXIT_OK


def run(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=appSettings.log_level)
    try:
        command = parse_command(argv)
    except SystemExit as usageExit:
        return usageExit.code if isinstance(usageExit.code, int) else EXIT_USAGE

    service = GaloisTheoryService()
    if command.verb == "verify":
        return run_verify(command, service)

    try:
        result = dispatch(command, service)
    except GaloisCpmError as inputError:
        logger.error(f"❌ {command.verb}: {inputError}")
        print(f"error: {inputError}", file=sys.stderr)
        return EXIT_USAGE

    if not result.pop("success", False):
        print(f"error: {result.get('error', 'unknown failure')}", file=sys.stderr)
        return EXIT_USAGE

    if command.outputFormat == "dot" and "text" in result:
        sys.stdout.write(result["text"])
        return EXIT_OK
    result.pop("text", None)
    print(dumps({"exact": True, "verb": command.verb, **result}))
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
