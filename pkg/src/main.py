"""
braidrep - command-line entry point
Verifies representations of Artin groups in the braid group via Garside normal forms
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from dotenv import load_dotenv
from pydantic import ValidationError

# Load environment variables from .env file in project root
env_path = Path(__file__).parent.parent / '.env'
load_dotenv(dotenv_path=env_path)

from src.coxeter import CoxeterType, dump_realization
from src.errors import BraidrepError, NotHomomorphismError, OutOfScopeError, ScanCapExceededError
from src.garside import format_normal_form, format_word, from_letters, is_pure, parse_word, underlying_permutation
from src.models import MapResult, NormalFormResult, RunConfig
from src.perm_core import format_cycles
from src.render import ascii_diagram, crossing_count, svg_diagram
from src.reprmap import (
    apply_map,
    build_paper_map,
    expected_homomorphism,
    format_report,
    format_scan,
    image_letters,
    realization_for,
    respects_relations,
    scan_map,
    target_realization,
    verify,
)
from src.settings import SettingKey, get_settings_manager

logger = logging.getLogger("braidrep")

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2


def configure_logging():
    level_name = str(get_settings_manager(env_path).get_setting(SettingKey.LOG_LEVEL)).upper()
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s: %(message)s")


def cmd_verify(config: RunConfig) -> Tuple[int, str]:
    """Verify the shipped map of a type; exit 0 when the verdict is the expected one"""
    ctype = CoxeterType.parse(config.coxeter_type)
    rep = build_paper_map(ctype)
    report = verify(
        rep, samples=config.samples, max_length=config.max_length, seed=config.seed, scan_bound=config.scan_bound
    )

    expected = expected_homomorphism(ctype)
    ok = report.is_homomorphism == expected and report.embedding_ok and report.diagram.failures == 0
    ok = ok and all(scan.kernel_trivial and scan.all_distinct for scan in report.scans)
    text = report.model_dump_json(indent=2) + "\n" if config.format == "json" else format_report(report)
    if not ok:
        logger.warning(f"{ctype}: is_homomorphism={report.is_homomorphism}, expected {expected}")
    return (EXIT_OK if ok else EXIT_MISMATCH), text


def cmd_normal_form(config: RunConfig) -> Tuple[int, str]:
    """Print the normal form of a braid word on m strands"""
    r = target_realization(config.strands)
    element = from_letters(r, parse_word(config.word))
    result = NormalFormResult(
        strands=config.strands,
        word=config.word,
        normal_form=format_normal_form(element),
        delta_power=element.delta_power,
        canonical_length=element.canonical_length,
        permutation=format_cycles(underlying_permutation(element)),
        pure=is_pure(element),
    )
    if config.format == "json":
        return EXIT_OK, result.model_dump_json(indent=2) + "\n"
    return EXIT_OK, result.normal_form + "\n"


def cmd_map(config: RunConfig) -> Tuple[int, str]:
    """Apply the shipped f of a type to a source word"""
    ctype = CoxeterType.parse(config.coxeter_type)
    rep = build_paper_map(ctype)
    word = parse_word(config.word)
    image = apply_map(rep, word)
    result = MapResult(
        type=ctype.name,
        source_word=format_word(word),
        image_word=format_word(image_letters(rep, word)),
        normal_form=format_normal_form(image),
        permutation=format_cycles(underlying_permutation(image)),
        pure=is_pure(image),
        homomorphic=respects_relations(rep),
    )
    if config.format == "json":
        return EXIT_OK, result.model_dump_json(indent=2) + "\n"

    lines = []
    if not result.homomorphic:
        lines.append(f"⚠️  {ctype} map does not respect the Artin relations; the image depends on the word")
    lines += [
        f"f({result.source_word or '1'}) = {result.image_word or '1'}",
        f"normal form: {result.normal_form}",
        f"permutation: {result.permutation}",
        f"pure: {result.pure}",
    ]
    return EXIT_OK, "\n".join(lines) + "\n"


def cmd_render(config: RunConfig) -> Tuple[int, str]:
    """
    Draw a braid word; with --type the word is a source word and its f-image is drawn
    """
    word = parse_word(config.word)
    strands = config.strands
    if config.coxeter_type:
        rep = build_paper_map(CoxeterType.parse(config.coxeter_type))
        word = image_letters(rep, word)
        strands = rep.target_m
    if strands is None:
        raise ValueError("render needs --strands or --type")

    logger.info(f"Rendering {crossing_count(word)} crossings on {strands} strands")
    if config.format == "svg":
        return EXIT_OK, svg_diagram(strands, word)
    return EXIT_OK, ascii_diagram(strands, word)


def cmd_scan(config: RunConfig) -> Tuple[int, str]:
    """
    Injectivity grid for I2(2), kernel scan up to canonical length --bound otherwise

    Exit 1 when a non-trivial kernel element or a collision is found.
    """
    report = scan_map(build_paper_map(CoxeterType.parse(config.coxeter_type)), config.bound)

    clean = report.kernel_trivial and report.all_distinct
    text = report.model_dump_json(indent=2) + "\n" if config.format == "json" else format_scan(report) + "\n"
    return (EXIT_OK if clean else EXIT_MISMATCH), text


def cmd_table(config: RunConfig) -> Tuple[int, str]:
    """Dump the realization of W generated by the shipped e-images"""
    ctype = CoxeterType.parse(config.coxeter_type)
    return EXIT_OK, dump_realization(realization_for(ctype))


COMMANDS = {
    "verify": cmd_verify,
    "nf": cmd_normal_form,
    "map": cmd_map,
    "render": cmd_render,
    "scan": cmd_scan,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braidrep",
        description="Verify representations of Artin groups in the braid group",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, formats=("text", "json"), default_format="text"):
        p.add_argument("--seed", type=int, default=None, help="Random seed (default: BRAIDREP_SEED)")
        p.add_argument("--out", default=None, help="Write output to this file instead of stdout")
        p.add_argument("--format", choices=formats, default=default_format)

    p = sub.add_parser("verify", help="Check relations, embedding and diagram D for a type")
    p.add_argument("coxeter_type", help='Coxeter type: "A5", "B4", "I2(6)", "D4"')
    p.add_argument("--samples", type=int, default=100, help="Random source words for diagram D")
    p.add_argument("--max-length", type=int, default=20, help="Maximum random word length")
    p.add_argument("--scan-bound", type=int, default=None, help="Also run the injectivity scan at this bound")
    common(p)

    p = sub.add_parser("nf", help="Normal form of a braid word")
    p.add_argument("--strands", type=int, required=True)
    p.add_argument("--word", default="", help='Braid word, e.g. "1 -2 3" or "s1 S2"')
    common(p)

    p = sub.add_parser("map", help="Apply f to a source word")
    p.add_argument("coxeter_type")
    p.add_argument("source_word", nargs="?", default=None)
    p.add_argument("--word", default=None, help='Source word, e.g. "s1 s2"')
    common(p)

    p = sub.add_parser("render", help="Draw a braid diagram")
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--word", default="")
    p.add_argument("--type", dest="coxeter_type", default=None, help="Draw f(word) for this type instead")
    common(p, formats=("svg", "ascii"), default_format="ascii")

    p = sub.add_parser("scan", help="Injectivity / kernel scan")
    p.add_argument("coxeter_type")
    p.add_argument("--bound", type=int, required=True, help="Grid bound L (I2(2)) or max canonical length")
    common(p)

    p = sub.add_parser("table", help="Dump the realization of W (id, permutation, length)")
    p.add_argument("coxeter_type")
    common(p)

    return parser


def make_config(args: argparse.Namespace) -> RunConfig:
    seed = args.seed
    if seed is None:
        seed = int(get_settings_manager(env_path).get_setting(SettingKey.SEED))
    word = getattr(args, "word", "") or ""
    if args.command == "map":
        word = args.word if args.word is not None else (args.source_word or "")
    return RunConfig(
        command=args.command,
        coxeter_type=getattr(args, "coxeter_type", None),
        strands=getattr(args, "strands", None),
        word=word,
        bound=getattr(args, "bound", None),
        scan_bound=getattr(args, "scan_bound", None),
        samples=getattr(args, "samples", 100),
        max_length=getattr(args, "max_length", 20),
        seed=seed,
        out=args.out,
        format=args.format,
    )


def write_output(config: RunConfig, text: str):
    if config.out:
        Path(config.out).write_text(text, encoding="utf-8")
        print(f"✅ Wrote {config.out}")
    else:
        sys.stdout.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)

    try:
        config = make_config(args)
    except ValidationError as e:
        print(f"❌ Invalid options: {e}", file=sys.stderr)
        return EXIT_ERROR

    try:
        code, text = COMMANDS[config.command](config)
    except OutOfScopeError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR
    except NotHomomorphismError as e:
        print(f"❌ Refusing to scan: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ScanCapExceededError as e:
        print(f"❌ Scan too large: {e}", file=sys.stderr)
        return EXIT_ERROR
    except (BraidrepError, ValueError) as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_ERROR

    try:
        write_output(config, text)
    except OSError as e:
        print(f"❌ Could not write {config.out}: {e}", file=sys.stderr)
        return EXIT_ERROR
    return code


if __name__ == "__main__":
    sys.exit(main())
