"""Command-line interface.

Exit codes: 0 success, 1 domain rejection (invalid or inequivalent input),
2 usage, I/O, syntax or schema errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .classification import classify
from .curves import parse_curve
from .enumeration import FILTERS, enumerate_data
from .equivalence import find_certificate, verify_equivalence
from .curves import ConfigurationError
from .errors import (DocumentSyntaxError, InvariantViolation, NodalError,
                     SchemaError)
from .fields import QQ, ExactField, FieldError
from .realization import Representation, realize
from .reduction import decompose, tensor
from .words import BandData, StringData, Word, canonical_form, is_isomorphic, make_band

FIELD_ENV = "NODALCURVES_FIELD"


class UsageError(Exception):
    pass


class Rejected(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def default_field() -> ExactField:
    text = os.environ.get(FIELD_ENV)
    return ExactField.parse(text) if text else QQ


def _load(path: str) -> io.Document:
    try:
        return io.load_document(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _datum(doc: io.Document, field: ExactField | None = None):
    p = doc.payload
    if not isinstance(p, (BandData, StringData)):
        raise UsageError("expected a band or string document")
    if field is not None and isinstance(p, BandData) and field != p.field:
        p = make_band(p.word, p.multiplicity, _convert(p.eigenvalue, p.field, field), p.config, field)
    return p


def _convert(e, src, dst):
    if isinstance(e, tuple):
        return tuple(dst(c) for c in e)
    return dst(e)


def _field_arg(args, doc=None) -> ExactField:
    if getattr(args, "field", None):
        return ExactField.parse(args.field)
    if doc is not None:
        return doc.field
    return default_field()


def _emit(out, payload, config, field):
    out.write(io.emit_document(io.make_document(payload, config, field)))


def _json(out, obj):
    out.write(json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n")


# ---------------------------------------------------------------------------
# commands

def cmd_curve(args, out):
    config = parse_curve(args.kind)
    _emit(out, io.curve_payload(config), config, _field_arg(args))


def cmd_validate(args, out):
    doc = _load(args.file)
    if isinstance(doc.payload, Word):
        problems = io.word_violations(doc.curve, doc.payload)
        if problems:
            raise Rejected("\n".join(problems))
    _json(out, {"valid": True})


def cmd_classify(args, out):
    doc = _load(args.file)
    d = _datum(doc)
    _emit(out, classify(d), doc.curve, doc.field)


def cmd_realize(args, out):
    doc = _load(args.file)
    f = _field_arg(args, doc)
    d = _datum(doc, f)
    _emit(out, realize(d, f, args.window), doc.curve, f)


def cmd_canon(args, out):
    doc = _load(args.file)
    _emit(out, canonical_form(_datum(doc)), doc.curve, doc.field)


def _as_rep(doc):
    p = doc.payload
    if isinstance(p, Representation):
        return p
    return realize(_datum(doc), doc.field)


def cmd_equiv(args, out):
    a, b = _load(args.a), _load(args.b)
    if args.certificate:
        cert = _load(args.certificate).payload
        verdict = verify_equivalence(_as_rep(a), _as_rep(b), cert)
        ok, reason = verdict.ok, verdict.reason
    elif isinstance(a.payload, (BandData, StringData)) and isinstance(b.payload, (BandData, StringData)):
        ok = is_isomorphic(a.payload, b.payload)
        reason = "" if ok else "canonical forms differ"
    else:
        ok = find_certificate(_as_rep(a), _as_rep(b)) is not None
        reason = "" if ok else "no admissible isomorphism found"
    _json(out, {"equivalent": ok, "reason": reason})
    if not ok:
        raise Rejected(reason)


def cmd_decompose(args, out):
    doc = _load(args.file)
    _emit(out, decompose(_as_rep(doc), witness=False), doc.curve, doc.field)


def cmd_tensor(args, out):
    a, b = _load(args.a), _load(args.b)
    res = tensor(_datum(a), _datum(b), args.window)
    f = a.field if isinstance(a.payload, BandData) else b.field
    _emit(out, res, a.curve, f)


def cmd_enumerate(args, out):
    config = parse_curve(args.curve)
    f = _field_arg(args)
    items = enumerate_data(config, args.max_letters, args.max_degree, f, args.filter,
                           max_mult=args.max_mult)
    _emit(out, items, config, f)


def render_dot(config, word: Word) -> str:
    """Letters as nodes ranked by weight, Dash links solid, Tilde links dashed."""
    lines = ["graph word {", "  rankdir=LR;", "  node [shape=box, fontname=\"monospace\"];"]
    letters, links = list(word.letters), word.links
    for i, x in enumerate(letters):
        name = config.component_name(x.comp)
        label = f"{x.kind}({name},{x.point},{x.deg}"
        label += f",{x.tier}:{x.mult})" if x.is_E else ")"
        lines.append(f"  n{i} [label=\"{label}\"];")
    n = len(letters)
    pairs = n if word.closed else n - 1
    for j in range(max(pairs, 0)):
        style = "solid" if links[j] == "-" else "dashed"
        lines.append(f"  n{j} -- n{(j + 1) % n} [style={style}];")
    ranks = {}
    for i, x in enumerate(letters):
        if x.is_E:
            ranks.setdefault((x.tier, x.mult), []).append(f"n{i}")
    for key in sorted(ranks):
        lines.append("  { rank=same; " + " ".join(ranks[key]) + " }")
    lines.append("}")
    return "\n".join(lines) + "\n"


def cmd_render(args, out):
    doc = _load(args.file)
    p = doc.payload
    word = p if isinstance(p, Word) else _datum(doc).word
    if args.dot:
        out.write(render_dot(doc.curve, word))
    else:
        out.write(repr(word) + "\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nodalcurves", description="Band and string data on nodal curves.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("curve", help="describe a curve configuration")
    s.add_argument("kind", help="nodal-cubic, chain:N or cycle:N")
    s.add_argument("--field")
    s.set_defaults(func=cmd_curve)

    s = sub.add_parser("validate", help="check a document")
    s.add_argument("file")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("classify", help="classification report of a datum")
    s.add_argument("file")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("realize", help="matrices of a datum")
    s.add_argument("file")
    s.add_argument("--field")
    s.add_argument("--window", type=int)
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("canon", help="canonical form of a datum")
    s.add_argument("file")
    s.set_defaults(func=cmd_canon)

    s = sub.add_parser("equiv", help="decide whether two documents are equivalent")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--certificate")
    s.set_defaults(func=cmd_equiv)

    s = sub.add_parser("decompose", help="split a representation into data")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("tensor", help="tensor product of two data")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--window", type=int)
    s.set_defaults(func=cmd_tensor)

    s = sub.add_parser("enumerate", help="list data within bounds")
    s.add_argument("--curve", required=True)
    s.add_argument("--max-letters", type=int, required=True)
    s.add_argument("--max-degree", type=int, required=True)
    s.add_argument("--filter", default="all", choices=sorted(FILTERS))
    s.add_argument("--max-mult", type=int, default=1)
    s.add_argument("--field")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("render", help="draw a word")
    s.add_argument("file")
    s.add_argument("--dot", action="store_true")
    s.set_defaults(func=cmd_render)
    return p


def run_cli(argv, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        args.func(args, stdout)
        return 0
    except Rejected as exc:
        if str(exc):
            stderr.write(f"rejected: {exc}\n")
        return 1
    except (UsageError, DocumentSyntaxError, SchemaError, ConfigurationError, FieldError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except (InvariantViolation, NodalError) as exc:
        stderr.write(f"rejected: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
