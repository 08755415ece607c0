"""Report rendering in json, csv, text and markdown.

CSV column order (one row per project) is fixed::

    project, ufp, tdi, adi, tdi_n, vaf_classic, vaf_extended,
    fp_classic, fp_extended, delta, warnings
"""

from __future__ import annotations

import csv
import io
from decimal import Decimal
from typing import Any, Iterable, Sequence

from fpnfr.adjustment import EstimateReport
from fpnfr.analysis import CalibrationResult, SensitivityResult, factor_name
from fpnfr.documents import FORMAT_VERSION, DocumentError, decimal_text, dumps_exact, loads_exact
from fpnfr.model import EXACT, DI_LEVELS, GscId, NfrId
from fpnfr.rubric import ConsistencyWarning, MappingTable, RubricTable

FORMATS = ("json", "csv", "text", "markdown")

CSV_COLUMNS = (
    "project",
    "ufp",
    "tdi",
    "adi",
    "tdi_n",
    "vaf_classic",
    "vaf_extended",
    "fp_classic",
    "fp_extended",
    "delta",
    "warnings",
)


def trimmed(d: Decimal) -> str:
    """Human form with trailing fractional zeros dropped: ``100.00`` -> ``100``."""
    return decimal_text(EXACT.normalize(d)) if d else "0"


def _vaf(d: Decimal) -> str:
    return decimal_text(d.quantize(Decimal("0.01"), context=EXACT))


# --- estimate reports ------------------------------------------------------


def _warning_dict(w: ConsistencyWarning) -> dict[str, Any]:
    return {
        "nfr": w.nfr.value,
        "nfr_di": w.nfr_di,
        "mapped_gsc_dis": [[gsc.value, di] for gsc, di in w.mapped_gsc_dis],
        "suggested_di": w.suggested_di,
        "message": w.message,
    }


def report_to_dict(r: EstimateReport) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "project": r.project,
        "ufp": r.ufp,
        "tdi": r.tdi,
        "adi": r.adi,
        "tdi_n": r.tdi_n,
        "vaf_classic": r.vaf_classic,
        "vaf_extended": r.vaf_extended,
        "fp_classic": r.fp_classic,
        "fp_extended": r.fp_extended,
        "delta": r.delta,
        "warnings": [_warning_dict(w) for w in r.warnings],
    }


def _dec(value: Any, name: str) -> Decimal:
    if isinstance(value, bool) or not isinstance(value, (int, str, Decimal)):
        raise DocumentError("invalid_value", f"report field {name} must be a decimal number", field=name)
    return Decimal(value)


def report_from_dict(doc: dict[str, Any]) -> EstimateReport:
    try:
        warnings = tuple(
            ConsistencyWarning(
                nfr=NfrId(w["nfr"]),
                nfr_di=w["nfr_di"],
                mapped_gsc_dis=tuple((GscId(g), di) for g, di in w["mapped_gsc_dis"]),
                suggested_di=w["suggested_di"],
                message=w["message"],
            )
            for w in doc.get("warnings", [])
        )
        return EstimateReport(
            ufp=_dec(doc["ufp"], "ufp"),
            tdi=doc["tdi"],
            adi=doc["adi"],
            tdi_n=doc["tdi_n"],
            vaf_classic=_dec(doc["vaf_classic"], "vaf_classic"),
            vaf_extended=_dec(doc["vaf_extended"], "vaf_extended"),
            fp_classic=_dec(doc["fp_classic"], "fp_classic"),
            fp_extended=_dec(doc["fp_extended"], "fp_extended"),
            warnings=warnings,
            project=doc.get("project", ""),
        )
    except KeyError as exc:
        raise DocumentError("missing_key", f"report lacks field {exc.args[0]!r}", field=exc.args[0]) from None


def parse_report(text: str | bytes) -> EstimateReport:
    """Inverse of ``render_report(r, "json")``."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return report_from_dict(loads_exact(text))


def _csv_row(r: EstimateReport) -> list[str]:
    return [
        r.project,
        decimal_text(r.ufp),
        str(r.tdi),
        str(r.adi),
        str(r.tdi_n),
        decimal_text(r.vaf_classic),
        decimal_text(r.vaf_extended),
        decimal_text(r.fp_classic),
        decimal_text(r.fp_extended),
        decimal_text(r.delta),
        str(len(r.warnings)),
    ]


def render_csv(reports: Iterable[EstimateReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in reports:
        writer.writerow(_csv_row(r))
    return buf.getvalue()


def _render_text(r: EstimateReport) -> str:
    lines = [
        f"project: {r.project}",
        f"ufp: {trimmed(r.ufp)}",
        f"tdi: {r.tdi}",
        f"adi: {r.adi}",
        f"tdi_n: {r.tdi_n}",
        f"vaf_classic: {_vaf(r.vaf_classic)}",
        f"vaf_extended: {_vaf(r.vaf_extended)}",
        f"fp_classic: {trimmed(r.fp_classic)}",
        f"fp_extended: {trimmed(r.fp_extended)}",
        f"delta: {trimmed(r.delta)}",
        f"warnings: {len(r.warnings)}",
    ]
    lines += [f"  - {w.message}" for w in r.warnings]
    return "\n".join(lines) + "\n"


def _render_markdown(r: EstimateReport) -> str:
    out = [
        f"# Function point estimate: {r.project}",
        "",
        "| measure | classic | extended |",
        "|---|---:|---:|",
        f"| degree of influence | {r.tdi} | {r.tdi_n} |",
        f"| VAF | {_vaf(r.vaf_classic)} | {_vaf(r.vaf_extended)} |",
        f"| adjusted FP | {trimmed(r.fp_classic)} | {trimmed(r.fp_extended)} |",
        "",
        f"- UFP: {trimmed(r.ufp)}",
        f"- ADI (NFR total): {r.adi}",
        f"- delta: {trimmed(r.delta)}",
        "",
        "## Consistency warnings",
        "",
    ]
    out += [f"- {w.message}" for w in r.warnings] or ["none"]
    return "\n".join(out) + "\n"


def render_report(r: EstimateReport, fmt: str = "json", *, decimal_strings: bool = False) -> str:
    if fmt == "json":
        return dumps_exact(report_to_dict(r), decimal_strings=decimal_strings)
    if fmt == "csv":
        return render_csv([r])
    if fmt == "text":
        return _render_text(r)
    if fmt == "markdown":
        return _render_markdown(r)
    raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def render_ufp(project: str, ufp: Decimal, fmt: str = "json", *, decimal_strings: bool = False) -> str:
    if fmt == "json":
        return dumps_exact({"project": project, "ufp": ufp}, decimal_strings=decimal_strings)
    if fmt == "csv":
        return f"project,ufp\n{_csv_cell(project)},{decimal_text(ufp)}\n"
    if fmt == "markdown":
        return f"| project | UFP |\n|---|---:|\n| {project} | {trimmed(ufp)} |\n"
    return f"project: {project}\nufp: {trimmed(ufp)}\n"


def _csv_cell(value: str) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow([value])
    return buf.getvalue()


# --- tables ----------------------------------------------------------------


def render_rubric(table: RubricTable, nfr: NfrId, fmt: str = "text") -> str:
    rows = [(di, table.entry(nfr, di)) for di in DI_LEVELS]
    if fmt == "json":
        return dumps_exact(
            {
                "nfr": nfr.value,
                "guidelines": [
                    {"di": di, "text": e.text, "complete": e.complete} for di, e in rows if e is not None
                ],
            }
        )
    if not table.has_rubric(nfr):
        return f"{nfr.value}: {table.guideline(nfr, 0)}\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["di", "guideline", "complete"])
        for di, e in rows:
            writer.writerow([di, e.text, "yes" if e.complete else "no"])
        return buf.getvalue()
    if fmt == "markdown":
        body = [f"| DI | Guideline ({nfr.label}) |", "|---:|---|"]
        body += [f"| {di} | {e.display()} |" for di, e in rows]
        return "\n".join(body) + "\n"
    return "".join(f"{di}: {e.display()}\n" for di, e in rows)


def render_mapping(table: MappingTable, fmt: str = "text") -> str:
    entries = [table.entries[n] for n in NfrId]
    if fmt == "json":
        return dumps_exact({e.nfr.value: [g.value for g in e.gscs] for e in entries})
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["nfr", "gscs", "source"])
        for e in entries:
            writer.writerow([e.nfr.value, ";".join(g.value for g in e.gscs), e.source])
        return buf.getvalue()
    if fmt == "markdown":
        body = ["| NFR | mapped GSCs |", "|---|---|"]
        body += [f"| {e.nfr.value} | {', '.join(g.value for g in e.gscs)} |" for e in entries]
        return "\n".join(body) + "\n"
    width = max(len(n.value) for n in NfrId)
    return "".join(
        f"{e.nfr.value:<{width}}  -> {', '.join(f'{g.value} (GSC-{g.ordinal})' for g in e.gscs)}\n" for e in entries
    )


# --- analysis --------------------------------------------------------------


def _sensitivity_dict(s: SensitivityResult) -> dict[str, Any]:
    return {
        "factor": factor_name(s.factor),
        "baseline_fp": s.baseline_fp,
        "fp_at_di": {str(di): fp for di, fp in s.fp_at_di.items()},
        "swing": s.swing,
    }


def render_sensitivity(results: Sequence[SensitivityResult], fmt: str = "text", *, decimal_strings: bool = False) -> str:
    if fmt == "json":
        return dumps_exact([_sensitivity_dict(s) for s in results], decimal_strings=decimal_strings)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["factor", "baseline_fp", *(f"fp_at_{di}" for di in DI_LEVELS), "swing"])
        for s in results:
            writer.writerow(
                [factor_name(s.factor), decimal_text(s.baseline_fp)]
                + [decimal_text(s.fp_at_di[di]) for di in DI_LEVELS]
                + [decimal_text(s.swing)]
            )
        return buf.getvalue()
    if fmt == "markdown":
        body = ["| factor | baseline FP | low (DI 0) | high (DI 5) | swing |", "|---|---:|---:|---:|---:|"]
        body += [
            f"| {factor_name(s.factor)} | {trimmed(s.baseline_fp)} | {trimmed(s.fp_at_di[0])} "
            f"| {trimmed(s.fp_at_di[5])} | {trimmed(s.swing)} |"
            for s in results
        ]
        return "\n".join(body) + "\n"
    width = max(len(factor_name(s.factor)) for s in results)
    return "".join(
        f"{factor_name(s.factor):<{width}}  {trimmed(s.fp_at_di[0])} .. {trimmed(s.fp_at_di[5])}"
        f"  swing {trimmed(s.swing)}  (baseline {trimmed(s.baseline_fp)})\n"
        for s in results
    )


def render_bounds(project: str, vary: str, bounds: tuple[Decimal, Decimal], fmt: str = "text", *, decimal_strings: bool = False) -> str:
    lo, hi = bounds
    if fmt == "json":
        return dumps_exact({"project": project, "vary": vary, "min_fp": lo, "max_fp": hi}, decimal_strings=decimal_strings)
    if fmt == "csv":
        return f"project,vary,min_fp,max_fp\n{_csv_cell(project)},{vary},{decimal_text(lo)},{decimal_text(hi)}\n"
    if fmt == "markdown":
        return f"| project | vary | min FP | max FP |\n|---|---|---:|---:|\n| {project} | {vary} | {trimmed(lo)} | {trimmed(hi)} |\n"
    return f"project: {project}\nvary: {vary}\nmin_fp: {trimmed(lo)}\nmax_fp: {trimmed(hi)}\n"


def calibration_to_dict(c: CalibrationResult) -> dict[str, Any]:
    # floats from the fit are written via repr, which round-trips exactly
    as_dec = lambda x: Decimal(repr(x))  # noqa: E731
    return {
        "model": c.model.value,
        "records": c.n,
        "params": {k: as_dec(v) for k, v in c.params.items()},
        "params_classic": {k: as_dec(v) for k, v in c.params_classic.items()},
        "mmre_classic": as_dec(c.mmre_classic),
        "mmre_extended": as_dec(c.mmre_extended),
        "pred_level": as_dec(c.pred_level),
        "pred_classic": as_dec(c.pred_classic),
        "pred_extended": as_dec(c.pred_extended),
    }


def render_calibration(c: CalibrationResult, fmt: str = "text", *, decimal_strings: bool = False) -> str:
    d = calibration_to_dict(c)
    if fmt == "json":
        return dumps_exact(d, decimal_strings=decimal_strings)
    params = lambda p: " ".join(f"{k}={v:.6g}" for k, v in p.items())  # noqa: E731
    rows = [
        ("params", params(c.params_classic), params(c.params)),
        ("mmre", f"{c.mmre_classic:.6g}", f"{c.mmre_extended:.6g}"),
        (f"pred({c.pred_level:g})", f"{c.pred_classic:.6g}", f"{c.pred_extended:.6g}"),
    ]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["metric", "classic", "extended"])
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        body = [f"Calibration of the {c.model.value} model over {c.n} records", "", "| metric | classic | extended |", "|---|---|---|"]
        body += [f"| {m} | {a} | {b} |" for m, a, b in rows]
        return "\n".join(body) + "\n"
    return f"model: {c.model.value}\nrecords: {c.n}\n" + "".join(f"{m}: classic {a} | extended {b}\n" for m, a, b in rows)
