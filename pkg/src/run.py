"""
CLI: Möbius values, zero certificates, family members and census tables.

  python -m src.run mobius --lower 3142 --upper 315274968
  python -m src.run zero 367249815
  python -m src.run family wosc 100000 --emit values
  python -m src.run census density --max-n 8 --out outputs/density.csv

Exit codes: 0 ok, 2 unparseable input, 3 size guard, 4 overflow.
Every run appends to <audit-dir>/<run_id>/audit.jsonl.
"""
import argparse
import json
import re
import sys
from pathlib import Path
from typing import Any, List, Optional, Sequence, Union

from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from src import census, config
from src.audit import log_event
from src.cache import ResultCache
from src.conjectures import balloon_lines, density_lines, family_lines
from src.dispatch import METHODS, MobiusDispatcher
from src.errors import EXIT_GUARD, EXIT_OK, EXIT_OVERFLOW, EXIT_PARSE, MobiusOverflowError, PermutationParseError, SizeGuardError
from src.families import FAMILY_NAMES, build_family, increasing_oscillation
from src.mobius_engines import principal_table
from src.perm_core import Permutation, format_permutation, make
from src.schemas import MobiusResult, OscillationDescriptor
from src.utils import ensure_output_dir, generate_run_id, read_permutation_arg
from src.zeros import sigma_zero_test, zero_test

CENSUS_TABLES = ("density", "adjacency", "non-opposing", "extremal", "growth", "oscillation", "family", "balloons")
_DESCRIPTOR = re.compile(r"^([WM])_?(\d+)$")

Operand = Union[Permutation, OscillationDescriptor]


def parse_operand(text: str) -> Operand:
    """Permutation text, "@file", or W_n / M_n for an increasing oscillation."""
    m = _DESCRIPTOR.match(text.strip())
    if m:
        return OscillationDescriptor(shape=m.group(1), n=int(m.group(2)))
    return read_permutation_arg(text)


def _label(x: Operand) -> str:
    if isinstance(x, OscillationDescriptor):
        return f"{x.shape}_{x.n}"
    return format_permutation(x)


def _emit(payload: dict[str, Any], fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(text)


# --- mobius ---

def cmd_mobius(args: argparse.Namespace, audit_path: Path, run_id: str) -> int:
    lower, upper = parse_operand(args.lower), parse_operand(args.upper)
    cache: Optional[ResultCache] = None
    if not args.no_cache:
        cache = ResultCache(config.get_cache_path())
        status = cache.load()
        if status == "corrupt":
            Console(stderr=True).print(f"[yellow]warning:[/] cache {cache.path} failed its checksum; ignoring it")
            log_event(audit_path, run_id, "cache_corrupt", {"path": str(cache.path)})
        else:
            log_event(audit_path, run_id, "cache_loaded", {"path": str(cache.path), "status": status, "entries": len(cache)})

    hit = cache.get(lower, upper, args.method) if cache else None
    if hit is not None:
        result = MobiusResult(value=hit.value, method=hit.method, work={})
    else:
        result = MobiusDispatcher().compute(lower, upper, args.method)
        if cache is not None:
            cache.put(lower, upper, result, args.method)
            cache.save()
            log_event(audit_path, run_id, "cache_saved", {"path": str(cache.path), "entries": len(cache)})

    log_event(
        audit_path,
        run_id,
        "mobius_computed",
        {"lower": _label(lower), "upper": _label(upper), "value": result.value, "method": result.method, "cached": hit is not None},
    )
    work = ", ".join(f"{k}={v}" for k, v in sorted(result.work.items()))
    payload = {"lower": _label(lower), "upper": _label(upper), **result.model_dump(mode="json")}
    text = f"mu[{_label(lower)}, {_label(upper)}] = {result.value} ({result.method})"
    _emit(payload, args.format, text + (f"\nwork: {work}" if work else ""))
    return EXIT_OK


# --- zero ---

def cmd_zero(args: argparse.Namespace, audit_path: Path, run_id: str) -> int:
    p = read_permutation_arg(args.perm)
    if args.lower:
        sigma = read_permutation_arg(args.lower)
        cert = sigma_zero_test(sigma, p)
    else:
        cert = zero_test(p)
    log_event(audit_path, run_id, "zero_tested", {"perm": format_permutation(p), "rule": cert.rule if cert else None})
    if cert is None:
        _emit({"perm": format_permutation(p), "certificate": None}, args.format, "no certificate")
    else:
        _emit(
            {"perm": format_permutation(p), "certificate": cert.model_dump(mode="json")},
            args.format,
            f"{cert.rule} {json.dumps(cert.witness, sort_keys=True)}",
        )
    return EXIT_OK


# --- family ---

def cmd_family(args: argparse.Namespace, audit_path: Path, run_id: str) -> int:
    member = build_family(args.name, args.params)
    if args.emit == "perm":
        perm = increasing_oscillation(member) if isinstance(member, OscillationDescriptor) else member
        log_event(audit_path, run_id, "family_computed", {"name": args.name, "params": args.params, "length": len(perm)})
        _emit({"name": args.name, "params": args.params, "perm": format_permutation(perm)}, args.format, format_permutation(perm))
        return EXIT_OK
    result = MobiusDispatcher().compute(make((1,)), member)
    log_event(audit_path, run_id, "family_computed", {"name": args.name, "params": args.params, "value": result.value, "method": result.method})
    _emit({"name": args.name, "params": args.params, **result.model_dump(mode="json")}, args.format, str(result.value))
    return EXIT_OK


# --- census ---

def _census_rows(args: argparse.Namespace) -> tuple[List[BaseModel], List[BaseModel]]:
    """(table rows, conjecture lines) for one census table."""
    progress = sys.stderr.isatty()
    if args.table == "density":
        rows = census.density_rows(args.max_n, args.mode, threads=args.threads, progress=progress)
        return list(rows), list(density_lines(rows))
    if args.table == "adjacency":
        return [census.adjacency_census(n, progress=progress) for n in range(1, args.max_n + 1)], []
    if args.table == "non-opposing":
        table = principal_table(args.max_n, args.threads)
        return [census.non_opposing_census(n, table, progress=progress) for n in range(1, args.max_n + 1)], []
    if args.table == "extremal":
        table = principal_table(args.max_n, args.threads)
        return [census.extremal_table(n, table, progress=progress) for n in range(1, args.max_n + 1)], []
    if args.table == "growth":
        return list(census.growth_table(args.max_n)), []
    if args.table == "oscillation":
        sweep = census.oscillation_sweep(args.max_n)
        return list(sweep.rows), [*sweep.sign_report, *sweep.band_report, *sweep.prime_report]
    if args.table == "family":
        rows = census.family_value_tables(args.kind, args.min_n, args.max_n)
        return list(rows), list(family_lines(rows))
    solver = MobiusDispatcher()
    return list(balloon_lines(args.max_n, solver.value)), []


def _render_table(rows: Sequence[BaseModel]) -> None:
    if not rows:
        return
    columns = list(type(rows[0]).model_fields)
    table = Table(*columns)
    for row in rows:
        dumped = row.model_dump(mode="json")
        table.add_row(*(json.dumps(dumped[c]) if isinstance(dumped[c], (list, dict)) else str(dumped[c]) for c in columns))
    Console(width=200, highlight=False).print(table)


def cmd_census(args: argparse.Namespace, audit_path: Path, run_id: str) -> int:
    if args.table == "family" and not args.kind:
        raise ValueError(f"census family needs --kind ({', '.join(census.FAMILY_KINDS)})")
    if args.threads is None:
        args.threads = config.default_threads()
    rows, lines = _census_rows(args)
    for row in rows:
        log_event(audit_path, run_id, "census_row", {"table": args.table, **row.model_dump(mode="json")})
    if args.out:
        path = census.write_rows(rows, Path(args.out))
        log_event(audit_path, run_id, "outputs_written", {"path": str(path), "rows": len(rows)})
    if args.format == "json":
        print(census.rows_to_json(rows), end="")
    elif args.format == "table":
        _render_table(rows)
    elif not args.out:
        print(census.rows_to_csv(rows), end="")
    if lines:
        print(census.rows_to_csv(lines), end="")
    return EXIT_OK


# --- entry point ---

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(description="Möbius function of the permutation pattern poset")
    p.add_argument("--audit-dir", default="outputs", help="Folder for <run_id>/audit.jsonl")
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--format", choices=("text", "json", "table"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("mobius", parents=[output], help="mu[lower, upper]")
    m.add_argument("--lower", required=True, help="Permutation text, @file, or W_n / M_n")
    m.add_argument("--upper", required=True, help="Permutation text, @file, or W_n / M_n")
    m.add_argument("--method", choices=METHODS, default="auto")
    m.add_argument("--no-cache", action="store_true", help="Skip the persistent result cache")

    z = sub.add_parser("zero", parents=[output], help="Zero certificate for mu[1, perm] (or mu[lower, perm])")
    z.add_argument("perm")
    z.add_argument("--lower", default=None)

    f = sub.add_parser("family", parents=[output], help="A named family member, or its principal Möbius value")
    f.add_argument("name", choices=FAMILY_NAMES)
    f.add_argument("params", nargs="*")
    f.add_argument("--emit", choices=("values", "perm"), default="values")

    c = sub.add_parser("census", parents=[output], help="Exhaustive and family tables")
    c.add_argument("table", choices=CENSUS_TABLES)
    c.add_argument("--max-n", type=int, required=True)
    c.add_argument("--min-n", type=int, default=1, help="Start of the parameter range (family tables)")
    c.add_argument("--kind", choices=census.FAMILY_KINDS, default=None, help="Family for census family")
    c.add_argument("--mode", choices=("fast_paths_plus_oracle", "oracle_only"), default="fast_paths_plus_oracle")
    c.add_argument("--threads", type=int, default=None, help="Worker processes (default PERMMOB_THREADS)")
    c.add_argument("--out", default=None, help="Write rows to .csv/.json (*.plot.csv for (n, value) pairs)")
    return p


COMMANDS = {"mobius": cmd_mobius, "zero": cmd_zero, "family": cmd_family, "census": cmd_census}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    run_id = generate_run_id()
    audit_path = ensure_output_dir(args.audit_dir, run_id) / "audit.jsonl"
    log_event(audit_path, run_id, "command_received", {"command": args.command, "argv": list(argv) if argv is not None else sys.argv[1:]})
    try:
        return COMMANDS[args.command](args, audit_path, run_id)
    except (PermutationParseError, SizeGuardError, MobiusOverflowError, ValueError) as e:
        code = EXIT_PARSE
        if isinstance(e, SizeGuardError):
            code = EXIT_GUARD
        elif isinstance(e, MobiusOverflowError):
            code = EXIT_OVERFLOW
        log_event(audit_path, run_id, "command_failed", {"exit_code": code, "error": str(e)})
        print(f"ERROR: {e}", file=sys.stderr)
        return code


if __name__ == "__main__":
    raise SystemExit(main())
