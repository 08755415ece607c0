"""JSON file formats: project documents, weight profiles and calibration records.

Numbers are read with ``parse_float=Decimal`` and written back from their
decimal text, so no value ever passes through binary floating point.
"""

from __future__ import annotations

import json
import logging
import os
import re
from decimal import Decimal, InvalidOperation
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

from fpnfr.analysis import CalibrationRecord
from fpnfr.model import (
    CELLS,
    DEFAULT_PROFILE,
    DI_MAX,
    DI_MIN,
    FunctionInventory,
    GscId,
    GscRatingSheet,
    NfrId,
    NfrRatingSheet,
    Project,
    ValidationError,
    WeightProfile,
    cell_key,
    parse_cell_key,
    validate_project,
    validate_weight_profile,
)

logger = logging.getLogger(__name__)

FORMAT_VERSION = 1
PROFILE_PATH_ENV = "FPNFR_PROFILE_PATH"

_TOP_LEVEL = {"format_version", "meta", "inventory", "gsc", "nfr", "rationale"}
_META_FIELDS = {"name", "weight_profile", "metadata"}


# --- exact JSON ------------------------------------------------------------

_DEC_MARK = "\x00dec:"
_DEC_RE = re.compile(r'"\\u0000dec:(-?[0-9.]+)"')


def decimal_text(d: Decimal) -> str:
    """Plain positional notation, keeping the value's own scale (``Decimal('1E+2')`` -> ``'100'``)."""
    return format(d, "f")


def _mark_decimals(obj: Any, as_strings: bool) -> Any:
    if isinstance(obj, Decimal):
        return decimal_text(obj) if as_strings else _DEC_MARK + decimal_text(obj)
    if isinstance(obj, dict):
        return {k: _mark_decimals(v, as_strings) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_mark_decimals(v, as_strings) for v in obj]
    if isinstance(obj, float):
        raise TypeError(f"refusing to serialize binary float {obj!r}; use Decimal")
    return obj


def dumps_exact(obj: Any, *, decimal_strings: bool = False, indent: int | None = 2) -> str:
    """``json.dumps`` that writes every ``Decimal`` as its exact literal.

    By default decimals become JSON numbers (``0.65``); with
    ``decimal_strings`` they become JSON strings (``"0.65"``) for consumers
    whose JSON reader would coerce numbers to binary floats.
    """
    text = json.dumps(_mark_decimals(obj, decimal_strings), indent=indent, ensure_ascii=False)
    return _DEC_RE.sub(lambda m: m.group(1), text) + "\n"


def loads_exact(text: str) -> Any:
    return json.loads(text, parse_float=Decimal)


# --- errors ----------------------------------------------------------------


class DocumentError(ValueError):
    """A document could not be turned into a domain object.

    ``kind`` is one of ``syntax``, ``format_version``, ``missing_section``,
    ``missing_key``, ``unknown_key``, ``unknown_field``, ``di_out_of_range``,
    ``invalid_value``, ``not_found``.
    """

    def __init__(self, kind: str, message: str, *, field: str = "", line: int | None = None, source: str = ""):
        self.kind = kind
        self.field = field
        self.line = line
        self.source = source
        where = source
        if line is not None:
            where = f"{where}:{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


def _line_of(text: str, *keys: str) -> int | None:
    """Best-effort line number of the innermost key, searched after its parents."""
    pos = 0
    for key in keys:
        found = text.find(json.dumps(key), pos)
        if found < 0:
            return None
        pos = found
    return text.count("\n", 0, pos) + 1


class _Reader:
    def __init__(self, text: str, source: str, strict: bool):
        self.text = text
        self.source = source
        self.strict = strict

    def fail(self, kind: str, message: str, *path: str) -> DocumentError:
        return DocumentError(kind, message, field=".".join(path), line=_line_of(self.text, *path), source=self.source)

    def load(self) -> Any:
        try:
            return loads_exact(self.text)
        except json.JSONDecodeError as exc:
            raise DocumentError("syntax", f"malformed JSON: {exc.msg}", line=exc.lineno, source=self.source) from None

    def section(self, doc: Mapping[str, Any], name: str, *, required: bool = True) -> Mapping[str, Any]:
        if name not in doc:
            if required:
                raise DocumentError("missing_section", f"missing required section {name!r}", field=name, source=self.source)
            return {}
        body = doc[name]
        if not isinstance(body, dict):
            raise self.fail("invalid_value", f"section {name!r} must be an object", name)
        return body

    def extra(self, found: Mapping[str, Any], allowed: set[str], *path: str) -> None:
        unknown = sorted(set(found) - allowed)
        if not unknown:
            return
        where = ".".join(path) or "document"
        if self.strict:
            raise self.fail("unknown_field", f"unknown field {unknown[0]!r} in {where}", *path, unknown[0])
        for key in unknown:
            logger.warning("%s: ignoring unknown field %r in %s", self.source or "document", key, where)

    def format_version(self, doc: Mapping[str, Any]) -> None:
        version = doc.get("format_version")
        if version is None:
            raise DocumentError("format_version", "missing format_version", field="format_version", source=self.source)
        if version != FORMAT_VERSION or isinstance(version, bool):
            raise self.fail("format_version", f"unsupported format_version {version!r}; expected {FORMAT_VERSION}", "format_version")


def _is_int(v: Any) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _ratings(r: _Reader, body: Mapping[str, Any], kind: str, ids: type) -> dict:
    by_name = {i.value: i for i in ids}
    out = {}
    for key, value in body.items():
        if key not in by_name:
            raise r.fail("unknown_key", f"unknown {kind} key {key!r}", kind, key)
        if not _is_int(value):
            raise r.fail("invalid_value", f"DI must be an integer for {kind} {key}: {value!r}", kind, key)
        if not DI_MIN <= value <= DI_MAX:
            raise r.fail("di_out_of_range", f"DI out of range {DI_MIN}..{DI_MAX} for {kind} {key}: {value}", kind, key)
        out[by_name[key]] = value
    missing = [name for name in by_name if name not in body]
    if missing:
        raise r.fail("missing_key", f"{kind} section lacks {', '.join(missing)}", kind)
    return out


def project_from_dict(doc: Any, *, text: str = "", source: str = "", strict: bool = False) -> Project:
    r = _Reader(text, source, strict)
    if not isinstance(doc, dict):
        raise DocumentError("invalid_value", "a project document must be a JSON object", source=source)
    r.format_version(doc)
    r.extra(doc, _TOP_LEVEL)

    meta = r.section(doc, "meta")
    r.extra(meta, _META_FIELDS, "meta")
    name = meta.get("name")
    if not isinstance(name, str) or not name.strip():
        raise r.fail("invalid_value", "meta.name must be a non-empty string", "meta", "name")
    profile = meta.get("weight_profile", DEFAULT_PROFILE)
    if not isinstance(profile, str) or not profile.strip():
        raise r.fail("invalid_value", "meta.weight_profile must be a non-empty string", "meta", "weight_profile")
    metadata = meta.get("metadata", {})
    if not isinstance(metadata, dict) or not all(isinstance(v, str) for v in metadata.values()):
        raise r.fail("invalid_value", "meta.metadata must map names to strings", "meta", "metadata")

    inventory_body = r.section(doc, "inventory")
    counts = {cell: 0 for cell in CELLS}
    for key, n in inventory_body.items():
        try:
            cell = parse_cell_key(key)
        except ValueError:
            raise r.fail("unknown_key", f"unknown inventory key {key!r}", "inventory", key) from None
        if not _is_int(n) or n < 0:
            raise r.fail("invalid_value", f"inventory count must be a non-negative integer for {key}: {n!r}", "inventory", key)
        counts[cell] = n

    gsc = _ratings(r, r.section(doc, "gsc"), "gsc", GscId)
    nfr = _ratings(r, r.section(doc, "nfr"), "nfr", NfrId)

    rationale = {}
    for key, note in r.section(doc, "rationale", required=False).items():
        try:
            ident = NfrId(key)
        except ValueError:
            raise r.fail("unknown_key", f"rationale for unknown nfr {key!r}", "rationale", key) from None
        if not isinstance(note, str):
            raise r.fail("invalid_value", f"rationale for {key} must be text", "rationale", key)
        rationale[ident] = note

    project = Project(
        name=name,
        inventory=FunctionInventory(counts),
        gsc=GscRatingSheet(gsc),
        nfr=NfrRatingSheet(nfr, rationale),
        weight_profile_name=profile,
        metadata=metadata,
    )
    violations = validate_project(project)
    if violations:  # pragma: no cover - the checks above should make this unreachable
        raise ValidationError(violations)
    return project


def parse_project(data: str | bytes, *, source: str = "", strict: bool = False) -> Project:
    """Parse a project document. Raises :class:`DocumentError` naming the line and field."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    r = _Reader(text, source, strict)
    return project_from_dict(r.load(), text=text, source=source, strict=strict)


def parse_project_file(path: str | Path, *, strict: bool = False) -> Project:
    path = Path(path)
    return parse_project(path.read_bytes(), source=str(path), strict=strict)


def project_to_dict(p: Project) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "meta": {"name": p.name, "weight_profile": p.weight_profile_name},
        "inventory": {cell_key(c): p.inventory.count(c) for c in CELLS},
        "gsc": {g.value: p.gsc[g] for g in GscId},
        "nfr": {n.value: p.nfr[n] for n in NfrId},
    }
    if p.metadata:
        doc["meta"]["metadata"] = dict(sorted(p.metadata.items()))
    if p.nfr.rationale:
        doc["rationale"] = {n.value: p.nfr.rationale[n] for n in NfrId if n in p.nfr.rationale}
    return doc


def dump_project(p: Project) -> str:
    """Canonical document text; ``parse_project(dump_project(p)) == p``."""
    return dumps_exact(project_to_dict(p))


# --- weight profiles -------------------------------------------------------


def _to_decimal(value: Any) -> Decimal:
    if isinstance(value, (bool, float)) or value is None:
        raise ValueError(value)
    try:
        return Decimal(value)
    except (InvalidOperation, TypeError):
        raise ValueError(value) from None


def parse_weight_profile(data: str | bytes, *, source: str = "") -> WeightProfile:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    r = _Reader(text, source, strict=True)
    doc = r.load()
    if not isinstance(doc, dict):
        raise DocumentError("invalid_value", "a weight profile must be a JSON object", source=source)
    r.format_version(doc)
    name = doc.get("name")
    if not isinstance(name, str) or not name.strip():
        raise r.fail("invalid_value", "profile name must be a non-empty string", "name")
    weights = {}
    for key, value in r.section(doc, "weights").items():
        try:
            cell = parse_cell_key(key)
        except ValueError:
            raise r.fail("unknown_key", f"unknown weight key {key!r}", "weights", key) from None
        try:
            weights[cell] = _to_decimal(value)
        except ValueError:
            raise r.fail("invalid_value", f"weight for {key} must be a decimal number: {value!r}", "weights", key) from None
    profile = WeightProfile(name, weights, doc.get("description", ""))
    violations = validate_weight_profile(profile)
    if violations:
        raise DocumentError("invalid_value", "; ".join(map(str, violations)), field="weights", source=source)
    return profile


def dump_weight_profile(w: WeightProfile) -> str:
    return dumps_exact(
        {
            "format_version": FORMAT_VERSION,
            "name": w.name,
            "description": w.description,
            "weights": {cell_key(c): decimal_text(Decimal(w.weight(c))) for c in CELLS},
        }
    )


def profile_search_path() -> list[Path]:
    dirs = [Path(p) for p in os.environ.get(PROFILE_PATH_ENV, "").split(os.pathsep) if p]
    dirs.append(Path(str(resources.files("fpnfr").joinpath("data", "profiles"))))
    return dirs


def resolve_profile(name_or_file: str = DEFAULT_PROFILE) -> WeightProfile:
    """Load a profile from a file path, or by name from the profile search path."""
    candidate = Path(name_or_file)
    if candidate.suffix == ".json" and candidate.is_file():
        return parse_weight_profile(candidate.read_bytes(), source=str(candidate))
    for directory in profile_search_path():
        path = directory / f"{name_or_file}.json"
        if path.is_file():
            return parse_weight_profile(path.read_bytes(), source=str(path))
    searched = ", ".join(str(d) for d in profile_search_path())
    raise DocumentError("not_found", f"weight profile {name_or_file!r} not found (searched {searched})")


# --- calibration records ---------------------------------------------------


def parse_records(data: str | bytes, *, source: str = "", base_dir: Path | None = None, strict: bool = False) -> list[CalibrationRecord]:
    """Parse a calibration records file.

    Each record embeds a project document under ``project`` or points at one
    with ``project_file`` (relative to ``base_dir``).
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    r = _Reader(text, source, strict)
    doc = r.load()
    if not isinstance(doc, dict):
        raise DocumentError("invalid_value", "a records file must be a JSON object", source=source)
    r.format_version(doc)
    items = doc.get("records")
    if not isinstance(items, list):
        raise DocumentError("missing_section", "missing required section 'records'", field="records", source=source)
    base_dir = base_dir or Path(".")
    records = []
    for i, item in enumerate(items):
        where = f"records[{i}]"
        if not isinstance(item, dict):
            raise DocumentError("invalid_value", f"{where} must be an object", field=where, source=source)
        name = item.get("name", f"record-{i}")
        try:
            effort = _to_decimal(item.get("actual_effort"))
        except ValueError:
            raise DocumentError("invalid_value", f"{where}.actual_effort must be a decimal number", field=where, source=source) from None
        if effort <= 0:
            raise DocumentError("invalid_value", f"{where}.actual_effort must be positive, got {effort}", field=where, source=source)
        if "project" in item:
            project = project_from_dict(item["project"], text=text, source=f"{source}#{where}", strict=strict)
        elif "project_file" in item:
            project = parse_project_file(base_dir / item["project_file"], strict=strict)
        else:
            raise DocumentError("missing_section", f"{where} needs 'project' or 'project_file'", field=where, source=source)
        records.append(CalibrationRecord(str(name), project, effort))
    return records


def parse_records_file(path: str | Path, *, strict: bool = False) -> list[CalibrationRecord]:
    path = Path(path)
    return parse_records(path.read_bytes(), source=str(path), base_dir=path.parent, strict=strict)


def records_to_dict(records: list[CalibrationRecord]) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "records": [
            {"name": rec.name, "actual_effort": Decimal(rec.actual_effort), "project": project_to_dict(rec.project)}
            for rec in records
        ],
    }
