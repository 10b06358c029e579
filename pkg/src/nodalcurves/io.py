"""JSON documents for curves, words, data, representations and results.

Every document carries ``schema_version``, the curve, the field and one
payload.  Documents are validated against ``data/schema.json`` and then
against the invariants of the objects they describe.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

import jsonschema

from .classification import ClassificationReport
from .curves import CurveConfig, E, F, Letter, letter_problems, make_curve
from .equivalence import Certificate
from .curves import ConfigurationError
from .errors import (DocumentSyntaxError, InvariantViolation, NodalError,
                     SchemaError)
from .fields import QQ, ExactField, FieldError
from .realization import Representation, assemble, check_restrictions
from .reduction import DecompositionResult
from .summands import LineBundle, TorsionComplex
from .words import BandData, StringData, Tail, Word, make_band, make_string, validate_word

SCHEMA_VERSION = "1.0"


@dataclass
class Document:
    curve: CurveConfig
    field: ExactField
    payload: object


@lru_cache(maxsize=1)
def schema() -> dict:
    text = resources.files("nodalcurves").joinpath("data/schema.json").read_text(encoding="utf-8")
    return json.loads(text)


# ---------------------------------------------------------------------------
# small pieces

def field_to_json(f: ExactField) -> dict:
    return {"kind": "Q"} if f.p is None else {"kind": "Fp", "p": f.p}


def field_from_json(obj: dict) -> ExactField:
    try:
        return QQ if obj["kind"] == "Q" else ExactField(obj["p"])
    except FieldError as exc:
        raise SchemaError(str(exc)) from None


def curve_to_json(c: CurveConfig) -> dict:
    return {"kind": c.kind, "n": c.n}


def curve_from_json(obj: dict) -> CurveConfig:
    try:
        if obj["kind"] == "nodal-cubic":
            if obj["n"] != 0:
                raise ConfigurationError("the nodal cubic takes n = 0")
            return make_curve("nodal-cubic")
        return make_curve(obj["kind"], obj["n"])
    except ConfigurationError as exc:
        raise SchemaError(str(exc)) from None


def scalar_to_json(x) -> str:
    return str(x)


def scalar_from_json(f: ExactField, s: str):
    return f(Fraction(s))


def matrix_to_json(m) -> list:
    return [[str(x) for x in r] for r in m]


def matrix_from_json(f: ExactField, m) -> tuple:
    return tuple(tuple(scalar_from_json(f, x) for x in r) for r in m)


def letter_to_json(config: CurveConfig, x: Letter) -> dict:
    out = {"kind": x.kind, "L": config.component_name(x.comp), "a": x.point, "deg": x.deg}
    if x.is_E:
        out["tier"] = x.tier
        out["mult"] = x.mult
    return out


def letter_from_json(config: CurveConfig, obj: dict) -> Letter:
    try:
        comp = config.component_id(obj["L"])
    except ConfigurationError as exc:
        raise SchemaError(str(exc)) from None
    if not config.has_site(comp, obj["a"]):
        raise SchemaError(f"marked point {obj['a']!r} does not lie on {obj['L']} of {config.describe()}")
    if obj["kind"] == "F":
        if "tier" in obj or "mult" in obj:
            raise SchemaError("F letters carry no weight")
        x = F(comp, obj["a"], obj["deg"])
    else:
        if "tier" not in obj or "mult" not in obj:
            raise SchemaError("E letters need tier and mult")
        x = E(comp, obj["a"], obj["deg"], obj["tier"], obj["mult"])
    problems = letter_problems(x, config)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return x


def _tail_to_json(config, t: Tail | None):
    if t is None:
        return None
    return {"period": [letter_to_json(config, x) for x in t.letters], "links": t.links, "shift": t.shift}


def _tail_from_json(config, obj):
    if obj is None:
        return None
    return Tail(tuple(letter_from_json(config, x) for x in obj["period"]), obj["links"], obj["shift"])


def word_to_json(config: CurveConfig, w: Word) -> dict:
    out = {"letters": [letter_to_json(config, x) for x in w.letters], "links": w.links,
           "closed": w.closed}
    if w.tail is not None:
        out["tail"] = _tail_to_json(config, w.tail)
    if w.left_tail is not None:
        out["left_tail"] = _tail_to_json(config, w.left_tail)
    return out


def word_from_json(config: CurveConfig, obj: dict) -> Word:
    return Word(tuple(letter_from_json(config, x) for x in obj["letters"]), obj["links"],
                obj["closed"], _tail_from_json(config, obj.get("tail")),
                _tail_from_json(config, obj.get("left_tail")))


def summand_to_json(config: CurveConfig, s) -> dict:
    name = config.component_name(s.comp)
    if isinstance(s, LineBundle):
        return {"type": "line_bundle", "L": name, "degree": s.degree, "shift": s.shift}
    return {"type": "torsion", "L": name, "a": s.point, "length": s.length, "shift": s.shift}


def summand_from_json(config: CurveConfig, obj: dict):
    try:
        comp = config.component_id(obj["L"])
    except ConfigurationError as exc:
        raise SchemaError(str(exc)) from None
    if obj["type"] == "line_bundle":
        return LineBundle(comp, obj["degree"], obj["shift"])
    return TorsionComplex(comp, obj["a"], obj["length"], obj["shift"])


def eigen_to_json(e):
    return [str(c) for c in e] if isinstance(e, tuple) else str(e)


def datum_to_json(config: CurveConfig, d) -> dict:
    if isinstance(d, BandData):
        return {"type": "band", "word": word_to_json(config, d.word),
                "multiplicity": d.multiplicity, "eigenvalue": eigen_to_json(d.eigenvalue)}
    if isinstance(d, StringData):
        out = {"type": "string", "word": word_to_json(config, d.word)}
        if d.free_summands:
            out["free_summands"] = [summand_to_json(config, s) for s in d.free_summands]
        return out
    return {"type": "free", "summand": summand_to_json(config, d)}


def datum_from_json(config: CurveConfig, f: ExactField, obj: dict):
    try:
        if obj["type"] == "band":
            e = obj["eigenvalue"]
            eigen = [scalar_from_json(f, c) for c in e] if isinstance(e, list) else scalar_from_json(f, e)
            return make_band(word_from_json(config, obj["word"]), obj["multiplicity"], eigen, config, f)
        if obj["type"] == "string":
            free = [summand_from_json(config, s) for s in obj.get("free_summands", [])]
            return make_string(word_from_json(config, obj["word"]), config, free)
        return summand_from_json(config, obj["summand"])
    except (InvariantViolation, SchemaError):
        raise
    except (NodalError, ValueError, ZeroDivisionError) as exc:
        raise InvariantViolation(f"{type(exc).__name__}: {exc}") from None


def representation_to_json(rep: Representation) -> dict:
    c = rep.config
    cols = [{"point": c.singular_name(s), "deg": d, "size": n} for (s, d), n in sorted(rep.cols.items())]
    sites = []
    for site in rep.sites():
        comp, point, deg = site
        blocks = [{"letter": letter_to_json(c, x), "rows": matrix_to_json(rep.block_rows(site, x))}
                  for x, _, _ in rep.blocks(site)]
        sites.append({"L": c.component_name(comp), "a": point, "deg": deg, "blocks": blocks})
    return {"type": "representation", "window": rep.window, "columns": cols, "sites": sites}


def representation_from_json(config: CurveConfig, f: ExactField, obj: dict) -> Representation:
    try:
        cols = {(config.singular_id(c["point"]), c["deg"]): c["size"] for c in obj["columns"]}
    except ConfigurationError as exc:
        raise SchemaError(str(exc)) from None
    blocks = {}
    for s in obj["sites"]:
        try:
            comp = config.component_id(s["L"])
        except ConfigurationError as exc:
            raise SchemaError(str(exc)) from None
        site = (comp, s["a"], s["deg"])
        per = {}
        for b in s["blocks"]:
            x = letter_from_json(config, b["letter"])
            if not x.is_E or x.site != site:
                raise InvariantViolation(f"block letter {x!r} does not label rows at this site")
            per[x] = [list(r) for r in matrix_from_json(f, b["rows"])]
        blocks[site] = per
    try:
        rep = assemble(config, f, obj["window"], blocks, cols)
    except NodalError as exc:
        raise InvariantViolation(str(exc)) from None
    problems = check_restrictions(rep)
    if problems:
        raise InvariantViolation("; ".join(problems))
    return rep


def report_to_json(config: CurveConfig, r: ClassificationReport) -> dict:
    hd = r.homological_dimension
    return {
        "type": "report", "coherent": r.coherent, "bounded": r.bounded,
        "vector_bundle": r.vector_bundle, "skyscraper": r.skyscraper,
        "torsion_free": r.torsion_free, "mixed": r.mixed,
        "homological_dimension": "inf" if hd == math.inf else hd,
        "rank": dict(r.rank),
        "normalization": [{"summand": summand_to_json(config, s), "multiplicity": k}
                          for s, k in r.normalization],
    }


def report_from_json(config: CurveConfig, obj: dict) -> ClassificationReport:
    hd = obj["homological_dimension"]
    return ClassificationReport(
        obj["coherent"], obj["bounded"], obj["vector_bundle"], obj["skyscraper"],
        obj["torsion_free"], obj["mixed"], math.inf if hd == "inf" else hd, dict(obj["rank"]),
        tuple((summand_from_json(config, n["summand"]), n["multiplicity"]) for n in obj["normalization"]))


def decomposition_to_json(config: CurveConfig, res: DecompositionResult) -> dict:
    return {"type": "decomposition",
            "summands": [{"datum": datum_to_json(config, d), "multiplicity": k} for d, k in res.summands]}


def certificate_to_json(config: CurveConfig, cert: Certificate) -> dict:
    out = {
        "type": "certificate",
        "columns": [{"point": config.singular_name(s), "deg": d, "matrix": matrix_to_json(m)}
                    for (s, d), m in sorted(cert.columns.items())],
        "rows": [{"letter": letter_to_json(config, x), "matrix": matrix_to_json(m)}
                 for x, m in sorted(cert.rows.items(), key=lambda t: t[0].key)],
    }
    adds = []
    for (site, t, s), m in sorted(cert.additions.items(),
                                  key=lambda i: (i[0][0][2], i[0][0][0], i[0][0][1], i[0][1].key, i[0][2].key)):
        adds.append({"L": config.component_name(site[0]), "a": site[1], "deg": site[2],
                     "target": letter_to_json(config, t), "source": letter_to_json(config, s),
                     "matrix": matrix_to_json(m)})
    if adds:
        out["additions"] = adds
    return out


def certificate_from_json(config: CurveConfig, f: ExactField, obj: dict) -> Certificate:
    try:
        cols = {(config.singular_id(c["point"]), c["deg"]): matrix_from_json(f, c["matrix"])
                for c in obj["columns"]}
    except ConfigurationError as exc:
        raise SchemaError(str(exc)) from None
    rows = {letter_from_json(config, r["letter"]): matrix_from_json(f, r["matrix"]) for r in obj["rows"]}
    adds = {}
    for a in obj.get("additions", []):
        comp = config.component_id(a["L"])
        adds[((comp, a["a"], a["deg"]), letter_from_json(config, a["target"]),
              letter_from_json(config, a["source"]))] = matrix_from_json(f, a["matrix"])
    return Certificate(cols, rows, adds)


def curve_payload(config: CurveConfig) -> dict:
    comps = [{"name": config.component_name(c), "marked": list(config.labels_on(c))}
             for c in config.components]
    sing = [{"name": config.singular_name(s),
             "preimages": [[config.component_name(c), a] for c, a in config.preimages(s)]}
            for s in config.singular_points]
    return {"type": "curve", "components": comps, "singular_points": sing}


# ---------------------------------------------------------------------------
# documents

def payload_to_json(config: CurveConfig, payload) -> dict:
    if isinstance(payload, dict):
        return payload
    if isinstance(payload, Word):
        return {"type": "word", "word": word_to_json(config, payload)}
    if isinstance(payload, (BandData, StringData)):
        return datum_to_json(config, payload)
    if isinstance(payload, Representation):
        return representation_to_json(payload)
    if isinstance(payload, ClassificationReport):
        return report_to_json(config, payload)
    if isinstance(payload, DecompositionResult):
        return decomposition_to_json(config, payload)
    if isinstance(payload, Certificate):
        return certificate_to_json(config, payload)
    if isinstance(payload, (list, tuple)):
        return {"type": "list", "items": [datum_to_json(config, d) for d in payload]}
    raise TypeError(f"cannot serialize {type(payload).__name__}")


def document_to_json(doc: Document) -> dict:
    return {"schema_version": SCHEMA_VERSION, "curve": curve_to_json(doc.curve),
            "field": field_to_json(doc.field), "payload": payload_to_json(doc.curve, doc.payload)}


def emit_document(doc: Document) -> str:
    return json.dumps(document_to_json(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def make_document(payload, config: CurveConfig, field: ExactField = QQ) -> Document:
    return Document(config, field, payload)


def _payload_from_json(config, f, obj):
    kind = obj["type"]
    if kind == "word":
        return word_from_json(config, obj["word"])
    if kind in ("band", "string"):
        return datum_from_json(config, f, obj)
    if kind == "representation":
        return representation_from_json(config, f, obj)
    if kind == "report":
        return report_from_json(config, obj)
    if kind == "decomposition":
        items = tuple((datum_from_json(config, f, s["datum"]), s["multiplicity"]) for s in obj["summands"])
        return DecompositionResult(items)
    if kind == "certificate":
        return certificate_from_json(config, f, obj)
    if kind == "list":
        return [datum_from_json(config, f, d) for d in obj["items"]]
    return obj


def parse_document(text: str) -> Document:
    """Parse, schema-check and invariant-check a document."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    try:
        jsonschema.validate(obj, schema())
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise SchemaError(f"{path}: {exc.message}") from None
    config = curve_from_json(obj["curve"])
    f = field_from_json(obj["field"])
    return Document(config, f, _payload_from_json(config, f, obj["payload"]))


def load_document(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse_document(fh.read())


def word_violations(config: CurveConfig, w: Word) -> list[str]:
    return [str(v) for v in validate_word(w, config)]
