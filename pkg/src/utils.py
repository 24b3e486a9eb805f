"""
Text and CSV rendering shared by the CLI commands.
"""
import csv
import io
from typing import Iterable, List, Sequence

from .models import DecompositionTable, Descriptors, GapProfile, Genera, OracleReport


def _csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


def read_csv(text: str) -> List[List[int]]:
    """Parse one of our integer CSV tables back into rows (header dropped)."""
    rows = list(csv.reader(io.StringIO(text)))
    return [[int(cell) for cell in row] for row in rows[1:] if row]


def table_csv(table: DecompositionTable) -> str:
    return _csv(("lambda", "k", "d"), table.rows())


def gamma_csv(gamma: List[List[int]]) -> str:
    """gamma[k][lambda] as k,lambda,gamma rows."""
    return _csv(("k", "lambda", "gamma"), ((k, lam, g) for k, row in enumerate(gamma) for lam, g in enumerate(row)))


def gaps_csv(gaps: Iterable[int]) -> str:
    return _csv(("gap",), ((a,) for a in gaps))


def descriptors_csv(desc: Descriptors) -> str:
    return _csv(("i", "b_i", "nu_i"), ((e.i, e.b, e.nu) for e in desc.entries))


def genus_line(table: DecompositionTable, genera: Genera) -> str:
    return (
        f"sum k*d = {table.dimension} = g_F = {genera.g_F} "
        f"(g_base={genera.g_base}, g_FP={genera.g_FP}, g_ErT={genera.g_ErT})"
    )


def table_text(table: DecompositionTable) -> str:
    lines = [f"V = (+) V(lambda, k)^d  over Z/{table.n * table.p_ell} (n={table.n}, p^ell={table.p_ell})"]
    lines.append(f"  V = {table.module_string()}")
    for lam, k, d in table.rows():
        lines.append(f"  d(lambda={lam}, k={k}) = {d}")
    if table.genera is not None:
        lines.append(genus_line(table, table.genera))
    return "\n".join(lines) + "\n"


def gamma_text(gamma: List[List[int]]) -> str:
    n = len(gamma[0]) if gamma else 0
    width = max((len(str(g)) for row in gamma for g in row), default=1)
    width = max(width, len(str(n - 1)) + 2)
    lines = ["k".rjust(4) + "  " + " ".join(f"l{lam}".rjust(width) for lam in range(n))]
    for k, row in enumerate(gamma):
        lines.append(str(k).rjust(4) + "  " + " ".join(str(g).rjust(width) for g in row))
    return "\n".join(lines) + "\n"


def class_grid(profile: GapProfile) -> str:
    """Gap counts c-bar(i0, i1): rows i0 mod n, columns i1 mod p^ell."""
    width = max((len(str(c)) for c in profile.classes.values()), default=1)
    width = max(width, len(str(profile.p_ell - 1)))
    lines = ["i0\\i1 " + " ".join(str(i1).rjust(width) for i1 in range(profile.p_ell))]
    for i0 in range(profile.n):
        cells = (str(profile.classes.get((i0, i1), 0)).rjust(width) for i1 in range(profile.p_ell))
        lines.append(str(i0).rjust(5) + " " + " ".join(cells))
    return "\n".join(lines) + "\n"


def gap_report(profile: GapProfile, desc: Descriptors = None) -> str:
    out = [f"gaps at {profile.place}: {profile.total} in {profile.d} classes", class_grid(profile).rstrip("\n")]
    out.append("tame gap counts: " + ",".join(str(c) for c in profile.tame_gap_counts()))
    if profile.small_gaps is not None:
        out.append("small gaps: " + (",".join(map(str, profile.small_gaps)) or "none"))
    if profile.full_gaps is not None:
        out.append("full gaps: " + (",".join(map(str, profile.full_gaps)) or "none"))
    if desc is not None:
        out.append(descriptors_csv(desc).rstrip("\n"))
    return "\n".join(out) + "\n"


def report_text(report: OracleReport) -> str:
    return "\n".join(report.lines()) + "\n"
