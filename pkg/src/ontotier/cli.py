"""Command-line entry point.

Batch/headless access to the engine: serve the HTTP API, validate and
search annotation files, create and check language profiles, and print
ontology views.  Row output is tab-separated with a fixed column order;
``--json`` switches to structured output.  Output is deterministic for
identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import annodoc, owl_model, profile, serializer
from .errors import EngineError


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except EngineError as e:
        print(f"error: {e.code}: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: IoError: {e}", file=sys.stderr)
        return 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ontotier",
        description="Ontology-based time-aligned annotation toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bind", default="127.0.0.1:8713", metavar="HOST:PORT")
    p.add_argument("--root", default=os.environ.get("ONTOTIER_ROOT", "."),
                   help="workspace root directory (env: ONTOTIER_ROOT)")
    p.add_argument("--open", action="store_true", dest="open_ui",
                   help="open the UI in a browser")
    p.add_argument("--ui-dir", default=None, help="static UI directory")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("validate", help="check an annotation file")
    p.add_argument("file", type=Path)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("search", help="substring search over annotation values")
    p.add_argument("file", type=Path)
    p.add_argument("query")
    p.add_argument("--tiers", help="comma-separated tier ids")
    p.add_argument("--case-sensitive", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("profile-new", help="create an empty language profile")
    p.add_argument("file", type=Path)
    p.add_argument("--author", required=True)
    p.add_argument("--version", required=True)
    p.add_argument("--source", required=True, help="ontology URL")
    p.set_defaults(func=cmd_profile_new)

    p = sub.add_parser("profile-check",
                       help="resolve a profile's terms against an ontology")
    p.add_argument("profile", type=Path)
    p.add_argument("ontology", type=Path)
    p.add_argument("--base", help="base IRI (default: the profile's source)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_profile_check)

    p = sub.add_parser("ontology-tree", help="print the class hierarchy")
    p.add_argument("ontology", type=Path)
    p.add_argument("--base", required=True, help="base IRI of the ontology")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ontology_tree)

    p = sub.add_parser("ontology-index", help="print the alphabetical term index")
    p.add_argument("ontology", type=Path)
    p.add_argument("--base", required=True, help="base IRI of the ontology")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ontology_index)

    p = sub.add_parser("export", help="print a human-readable tier outline")
    p.add_argument("file", type=Path)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_export)

    return parser


def cmd_serve(args) -> int:
    from .service import run_server

    run_server(root=args.root, bind=args.bind, open_ui=args.open_ui,
               ui_dir=args.ui_dir)
    return 0


def cmd_validate(args) -> int:
    data = args.file.read_bytes()
    findings = serializer.validate_file(data)
    if not findings:
        try:
            doc = serializer.load_document(data)
            findings = annodoc.check_document(doc)
        except EngineError as e:
            findings = [f"{e.code}: {e}"]
    if args.json:
        print(json.dumps({"file": str(args.file), "findings": findings}, indent=2))
    else:
        for f in findings:
            print(f)
        if not findings:
            print(f"{args.file}: ok")
    return 0 if not findings else 1


def cmd_search(args) -> int:
    doc = serializer.load_document(args.file.read_bytes())
    hits = doc.search(
        args.query,
        tiers=args.tiers.split(",") if args.tiers else None,
        case_sensitive=args.case_sensitive,
    )
    if args.json:
        print(json.dumps(
            [
                {"tier": h.tier_id, "annotation": h.annotation_id,
                 "begin": h.begin, "end": h.end, "text": h.text}
                for h in hits
            ],
            indent=2,
        ))
    else:
        for h in hits:
            print(f"{h.tier_id}\t{h.annotation_id}\t{h.begin}\t{h.end}\t{h.text}")
    return 0


def cmd_profile_new(args) -> int:
    p = profile.new_profile(args.author, args.version, args.source)
    args.file.write_bytes(profile.serialize_profile(p))
    print(f"wrote {args.file}")
    return 0


def cmd_profile_check(args) -> int:
    p = profile.parse_profile(args.profile.read_bytes())
    base = args.base or p.source
    onto = owl_model.parse_ontology(args.ontology.read_bytes(), base=base)
    findings = profile.validate_against_ontology(p, onto)
    if args.json:
        print(json.dumps(
            [
                {"kind": f.kind, "term": f.term,
                 "ontology_term": f.ontology_term, "message": f.message}
                for f in findings
            ],
            indent=2,
        ))
    else:
        for f in findings:
            print(f"{f.kind}\t{f.term}\t{f.ontology_term}\t{f.message}")
        if not findings:
            print(f"{args.profile}: all terms resolved")
    return 0 if not findings else 1


def cmd_ontology_tree(args) -> int:
    doc = owl_model.parse_ontology(args.ontology.read_bytes(), base=args.base)
    forest = owl_model.class_tree(doc)
    if args.json:
        def to_json(nodes):
            return [
                {"iri": n.iri, "label": n.label, "children": to_json(n.children)}
                for n in nodes
            ]

        print(json.dumps(to_json(forest), indent=2))
    else:
        def walk(nodes, depth):
            for n in nodes:
                print("  " * depth + n.label)
                walk(n.children, depth + 1)

        walk(forest, 0)
    return 0


def cmd_ontology_index(args) -> int:
    doc = owl_model.parse_ontology(args.ontology.read_bytes(), base=args.base)
    entries = owl_model.term_index(doc)
    if args.json:
        print(json.dumps(
            [{"label": label, "iri": iri} for label, iri in entries], indent=2
        ))
    else:
        for label, iri in entries:
            print(f"{label}\t{iri}")
    return 0


def cmd_export(args) -> int:
    doc = serializer.load_document(args.file.read_bytes())
    if args.json:
        out = {
            "id": doc.id,
            "tiers": [
                {
                    "id": t.id,
                    "parent": t.parent,
                    "type": t.type_id,
                    "stereotype": doc.linguistic_types[t.type_id].stereotype.value,
                    "annotations": len(doc.annotations_on_tier(t.id)),
                }
                for t in doc.tiers.values()
            ],
        }
        print(json.dumps(out, indent=2))
        return 0
    print(doc.id)
    roots = sorted(t.id for t in doc.tiers.values() if t.parent is None)

    def walk(tier_id: str, depth: int) -> None:
        tier = doc.tiers[tier_id]
        lt = doc.linguistic_types[tier.type_id]
        count = len(doc.annotations_on_tier(tier_id))
        marker = " [ontology]" if lt.ontological else ""
        print(
            "  " * depth
            + f"{tier_id} ({lt.stereotype.value}){marker}: {count} annotations"
        )
        for child in sorted(
            t.id for t in doc.tiers.values() if t.parent == tier_id
        ):
            walk(child, depth + 1)

    for r in roots:
        walk(r, 1)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
