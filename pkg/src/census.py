"""
Exhaustive statistics over S_n and family sweeps.

Every S_n census walks one representative per symmetry orbit and weights it by the orbit
size; the principal table from mobius_engines is the oracle. Rows are pydantic models so
the CLI can emit them as CSV or JSON without reshaping.
"""
import csv
import io
import json
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from math import factorial
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel
from rich.console import Console
from rich.progress import track

from src import config
from src.balloons import balloon_2413_mobius
from src.conjectures import band_lines, family_formula, family_published, prime_lines, sign_lines
from src.dispatch import MobiusDispatcher
from src.errors import SizeGuardError
from src.families import e1, e2, kappa, odd_exceptional, parallel_alternation, pi_sequence, wedge_simple
from src.mobius_engines import orbit_representatives, principal_table
from src.oscillation import oscillation_values
from src.perm_core import Permutation, adjacency_report, all_permutations, is_simple, make, orbit_size
from src.schemas import (
    AdjacencyCensus,
    DensityRow,
    ExtremalRow,
    FamilyRow,
    GrowthRow,
    NonOpposingRow,
    OscillationRow,
    OscillationSweep,
)
from src.zeros import zero_test

DensityMode = Literal["fast_paths_plus_oracle", "oracle_only"]
FAMILY_KINDS = ("w1", "w2", "e1", "e2", "o", "kappa", "paralt")

ONE = make((1,))
_stderr = Console(stderr=True)


def _guard(n: int, cap: int, key: str, what: str) -> None:
    if n < 1:
        raise ValueError(f"{what} needs n >= 1, got {n}")
    if n > cap:
        raise SizeGuardError(f"Refusing {what} at n = {n} ({key}={cap})")


def _reps(n: int, progress: bool, label: str) -> Iterable[Permutation]:
    reps = orbit_representatives(n)
    return track(reps, description=f"{label} n={n}", console=_stderr, disable=not progress, transient=True)


def four_places(value: Fraction) -> str:
    """Decimal rendering rounded half-up to four places."""
    exact = Decimal(value.numerator) / Decimal(value.denominator)
    return str(exact.quantize(Decimal("0.0001"), rounding=ROUND_HALF_UP))


# --- Density of zeros ---

def density(
    n: int,
    mode: DensityMode = "fast_paths_plus_oracle",
    threads: int = 1,
    table: Optional[Dict[Permutation, int]] = None,
    progress: bool = False,
) -> DensityRow:
    _guard(n, config.density_cap(), "PERMMOB_DENSITY_CAP", "the density census")
    values = table if table is not None else principal_table(n, threads)
    breakdown: Dict[str, int] = {}
    zeros = 0
    for rep in _reps(n, progress, "density"):
        weight = orbit_size(rep)
        if mode == "fast_paths_plus_oracle":
            cert = zero_test(rep)
            if cert is not None:
                tag = cert.rule
            elif values[rep] == 0:
                tag = "oracle_only"
            else:
                continue
        else:
            if values[rep] != 0:
                continue
            tag = "oracle"
        zeros += weight
        breakdown[tag] = breakdown.get(tag, 0) + weight
    total = factorial(n)
    ratio = Fraction(zeros, total)
    return DensityRow(
        n=n,
        total=total,
        zero_count=zeros,
        d_n_exact=str(ratio),
        d_n=four_places(ratio),
        mode=mode,
        breakdown=dict(sorted(breakdown.items())),
    )


def density_rows(max_n: int, mode: DensityMode = "fast_paths_plus_oracle", threads: int = 1, progress: bool = False) -> List[DensityRow]:
    table = principal_table(max_n, threads)
    return [density(n, mode, table=table, progress=progress) for n in range(1, max_n + 1)]


# --- Adjacency counts ---

def a000255(n: int) -> int:
    """a(0) = a(1) = 1, a(n) = n·a(n−1) + (n−1)·a(n−2)."""
    if n < 0:
        raise ValueError(f"a000255 needs n >= 0, got {n}")
    prev, cur = 1, 1
    for k in range(2, n + 1):
        prev, cur = cur, k * cur + (k - 1) * prev
    return cur


def a002464(n: int) -> int:
    """Permutations of length n with no adjacency (Hertzsprung's problem)."""
    if n < 0:
        raise ValueError(f"a002464 needs n >= 0, got {n}")
    seq = [1, 1, 0, 0]
    for k in range(4, n + 1):
        seq.append((k + 1) * seq[k - 1] - (k - 2) * seq[k - 2] - (k - 5) * seq[k - 3] + (k - 3) * seq[k - 4])
    return seq[n]


def _adjacency_flags(p: Sequence[int]) -> Tuple[bool, bool]:
    up = down = False
    for a, b in zip(p, p[1:]):
        if b - a == 1:
            up = True
        elif a - b == 1:
            down = True
    return up, down


def adjacency_census(n: int, progress: bool = False) -> AdjacencyCensus:
    _guard(n, config.adjacency_cap(), "PERMMOB_ADJACENCY_CAP", "the adjacency census")
    no_up = free = opposing = 0
    perms = all_permutations(n)
    for p in track(perms, total=factorial(n), description=f"adjacency n={n}", console=_stderr, disable=not progress, transient=True):
        up, down = _adjacency_flags(p)
        if not up:
            no_up += 1
            if not down:
                free += 1
        elif down:
            opposing += 1
    total = factorial(n)
    expected_a = a000255(n - 1)
    expected_b = a002464(n)
    return AdjacencyCensus(
        n=n,
        total=total,
        a_n=no_up,
        b_n=free,
        s_n=opposing,
        identity_holds=opposing == total - 2 * no_up + free,
        a000255=expected_a,
        a002464=expected_b,
        matches_oeis=no_up == expected_a and free == expected_b,
    )


def non_opposing_census(n: int, table: Optional[Dict[Permutation, int]] = None, progress: bool = False) -> NonOpposingRow:
    """Permutations with two or more adjacencies, all in the same direction, split by μ = 0."""
    _guard(n, config.density_cap(), "PERMMOB_DENSITY_CAP", "the non-opposing census")
    values = table if table is not None else principal_table(n)
    zero = nonzero = 0
    for rep in _reps(n, progress, "non-opposing"):
        report = adjacency_report(rep)
        if report.has_opposing or len(report.up_positions) + len(report.down_positions) < 2:
            continue
        if values[rep] == 0:
            zero += orbit_size(rep)
        else:
            nonzero += orbit_size(rep)
    return NonOpposingRow(n=n, zero_count=zero, nonzero_count=nonzero)


# --- Extremal values ---

def extremal_table(n: int, table: Optional[Dict[Permutation, int]] = None, progress: bool = False) -> ExtremalRow:
    _guard(n, config.density_cap(), "PERMMOB_DENSITY_CAP", "the extremal table")
    values = table if table is not None else principal_table(n)
    reps = list(_reps(n, progress, "extremal"))
    low = min(values[rep] for rep in reps)
    high = max(values[rep] for rep in reps)
    min_witnesses = [rep for rep in reps if values[rep] == low]
    max_witnesses = [rep for rep in reps if values[rep] == high]
    return ExtremalRow(
        n=n,
        min_value=low,
        max_value=high,
        min_witnesses=min_witnesses,
        max_witnesses=max_witnesses,
        min_simple=[is_simple(w) for w in min_witnesses],
        max_simple=[is_simple(w) for w in max_witnesses],
    )


# --- Growth of the 2413-balloon sequence ---

def growth_table(max_n: int) -> List[GrowthRow]:
    """μ[1, π⁽ⁿ⁾] for n <= max_n from the balloon recursion, with the 2^(⌊n/4⌋−1) bound."""
    _guard(max_n, config.growth_cap(), "PERMMOB_GROWTH_CAP", "the growth table")
    base = {1: 1, 2: -1, 3: 1, 4: -3}
    values: Dict[int, int] = {}
    rows: List[GrowthRow] = []
    for n in range(1, max_n + 1):
        if n <= 4:
            values[n] = base[n]
        else:
            values[n] = balloon_2413_mobius(pi_sequence(n - 4), lambda _lower, beta: values[len(beta)])
        exponent = n // 4 - 1
        # |value| >= 2**exponent, with exponent possibly -1
        bound_holds = 2 * abs(values[n]) >= 2 ** (exponent + 1)
        rows.append(
            GrowthRow(
                n=n,
                value=values[n],
                bound_exponent=exponent,
                bound_holds=bound_holds,
                doubling_holds=values[n] == 2 * values[n - 4] if n > 8 else None,
            )
        )
    return rows


# --- Increasing oscillations ---

def oscillation_sweep(max_n: int, rows: bool = True) -> OscillationSweep:
    """μ[1, W_m] and μ[1, M_m] for m <= max_n, with the sign, banding and prime reports."""
    _guard(max_n, config.oscillation_cap(), "PERMMOB_OSC_CAP", "the oscillation sweep")
    values = oscillation_values(ONE, max_n)
    table = [OscillationRow(n=m, w_value=values[("W", m)], m_value=values[("M", m)]) for m in range(1, max_n + 1)] if rows else []
    return OscillationSweep(
        max_n=max_n,
        rows=table,
        sign_report=sign_lines(values, max_n),
        band_report=band_lines(values, max_n),
        prime_report=prime_lines(values, max_n),
    )


# --- Named families ---

def _family_members(kind: str, start: int, stop: int) -> List[Tuple[Dict[str, int], Permutation]]:
    out: List[Tuple[Dict[str, int], Permutation]] = []
    for n in range(start, stop + 1):
        if kind in ("w1", "w2") and n >= 4:
            out.append(({"n": n}, wedge_simple(1 if kind == "w1" else 2, n)))
        elif kind == "e1" and n >= 3:
            out.extend(({"n": n, "k": k}, e1(2 * n, k)) for k in range(1, n - 1))
        elif kind == "e2" and n >= 3:
            out.append(({"n": n}, e2(2 * n)))
        elif kind == "o" and n >= 2:
            out.extend(({"n": n, "k": k}, odd_exceptional(2 * n + 1, k)) for k in range(1, n))
        elif kind == "kappa" and n >= 2:
            out.append(({"n": n}, kappa(n)))
        elif kind == "paralt" and n >= 4 and n % 2 == 0:
            out.append(({"n": n}, parallel_alternation(n)))
    return out


def family_value_tables(kind: str, start: int, stop: int, dispatcher: Optional[MobiusDispatcher] = None) -> List[FamilyRow]:
    """
    Values for one family over a parameter range, next to the conjectured formula and the
    published table. For e1, e2 and o the range is over n in E(2n) / O(2n+1).
    """
    if kind not in FAMILY_KINDS:
        raise ValueError(f"Unknown family table {kind!r}; expected one of {', '.join(FAMILY_KINDS)}")
    solver = dispatcher or MobiusDispatcher()
    rows = []
    for params, perm in _family_members(kind, start, stop):
        result = solver.compute(ONE, perm)
        formula = family_formula(kind, params)
        published = family_published(kind, params)
        rows.append(
            FamilyRow(
                kind=kind,
                params=params,
                length=len(perm),
                value=result.value,
                method=result.method,
                formula=formula,
                published=published,
                matches_formula=None if formula is None else formula == result.value,
                matches_published=None if published is None else published == result.value,
            )
        )
    return rows


# --- Emitters ---

def _cell(value: object) -> str:
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False, sort_keys=True)
    if value is None:
        return ""
    return str(value)


def rows_to_csv(rows: Sequence[BaseModel]) -> str:
    """CSV with the model's field order as the fixed column order."""
    if not rows:
        return ""
    columns = list(type(rows[0]).model_fields)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        dumped = row.model_dump(mode="json")
        writer.writerow([_cell(dumped[c]) for c in columns])
    return buf.getvalue()


def rows_to_json(rows: Sequence[BaseModel]) -> str:
    return json.dumps([row.model_dump(mode="json") for row in rows], indent=2, ensure_ascii=False) + "\n"


def plot_points(rows: Sequence[BaseModel]) -> List[Tuple[int, int]]:
    """(n, value) pairs from growth or oscillation rows."""
    points = []
    for row in rows:
        if isinstance(row, GrowthRow):
            points.append((row.n, row.value))
        elif isinstance(row, OscillationRow):
            points.append((row.n, row.w_value))
        else:
            raise ValueError(f"no plot data for {type(row).__name__}")
    return points


def write_rows(rows: Sequence[BaseModel], path: Path) -> Path:
    """Write rows as .json or .csv by suffix; growth/oscillation rows to *.plot.csv are (n, value) only."""
    path.parent.mkdir(parents=True, exist_ok=True)
    if path.name.endswith(".plot.csv"):
        text = "n,value\n" + "".join(f"{n},{v}\n" for n, v in plot_points(rows))
    elif path.suffix == ".json":
        text = rows_to_json(rows)
    elif path.suffix == ".csv":
        text = rows_to_csv(rows)
    else:
        raise ValueError(f"Output file must end in .csv or .json, got {path.name}")
    path.write_text(text, encoding="utf-8")
    return path
