"""
Plain-text views of the report types. Every view returns a list of lines and
depends only on the report's fields, so output is stable across runs.
"""
import mpmath

from exactnum.backend import format_rational
from qseries.series import Distinct


def _pair_line(pair):
    line = f"  {pair.u.representative} {pair.v.representative}: {pair.certificate!r}"
    if pair.ratio is not None:
        line += f"; {pair.ratio!r}"
    return line


def primitivity_lines(report, detail=False):
    """
    Header with the verdict, the witness if any, a count summary and, with
    detail, one line per scanned pair.
    """
    lines = [f"{report.family} level {report.level} T={format_rational(report.trunc)}: {report.verdict}"]
    if report.witness is not None:
        lines.append("witness:" + _pair_line(report.witness)[1:])
    distinct = sum(1 for p in report.pairs if isinstance(p.certificate, Distinct))
    lines.append(f"pairs: {len(report.pairs)} scanned, {distinct} distinct, "
                 f"{len(report.unresolved())} unresolved")
    pairs = report.pairs if detail else report.unresolved()
    lines.extend(_pair_line(p) for p in pairs)
    return lines


def stabilizer_lines(report):
    title = report.kind if report.n is None else f"{report.kind} n={report.n}"
    lines = [f"{title} level {report.level} T={format_rational(report.trunc)}: {report.verdict}"]
    for entry in report.entries:
        line = f"  {entry.element}: {entry.certificate!r}"
        if entry.ord_pair is not None:
            line += " ord=(" + ", ".join(format_rational(o) for o in entry.ord_pair) + ")"
        lines.append(line)
    if report.ord_pairs_separate is not None:
        lines.append(f"ord pairs separate: {'yes' if report.ord_pairs_separate else 'no'}")
    return lines


def cm_lines(report, digits=20):
    field = report.field
    lines = [f"d_K={field.d_K} h={field.class_number} N={report.level} "
             f"{report.family}^{report.n}: {report.verdict}"]
    for (s, t), z in zip(report.pairs, report.values):
        lines.append(f"  (s,t)=({s},{t}): {mpmath.nstr(z, digits)}")
    if report.min_distance is not None:
        lines.append(f"min distance: {mpmath.nstr(report.min_distance, 8)}")
    if report.residuals is not None:
        worst = max(report.residuals, default=0)
        lines.append(f"max lattice residual: {mpmath.nstr(worst, 8)}")
    lines.extend(f"note: {note}" for note in report.notes)
    return lines


def orbit_lines(entries):
    """Aligned table: element, image index, class, order."""
    rows = [("element", "image", "class", "ord")]
    rows += [(str(e.element), str(e.image), str(e.index_class), format_rational(e.order))
             for e in entries]
    widths = [max(len(row[i]) for row in rows) for i in range(4)]
    return ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
