"""HTTP facade over the annotation engine.

Every endpoint maps one-to-one onto an engine operation; no logic lives
here that the library modules cannot perform headlessly.  Single-user,
local-first: binds to loopback by default, no authentication.  Mutations
to one resource are serialized with a per-resource lock; ontologies and
profiles are read-mostly values replaced whole on edit.
"""

from __future__ import annotations

import hashlib
import os
import re
import tempfile
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import Body, FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from . import annodoc, owl_model, profile, serializer
from .annodoc import (
    AnnotationDocument,
    AlignableAnnotation,
    MediaDescriptor,
    OntologyAnnotation,
    StringAnnotation,
)
from .errors import EngineError, IoError

MIME_TYPES = {
    ".wav": "audio/x-wav",
    ".mp3": "audio/mpeg",
    ".ogg": "audio/ogg",
    ".mp4": "video/mp4",
    ".webm": "video/webm",
    ".mpg": "video/mpeg",
}


@dataclass
class Workspace:
    root: Path
    ontologies: dict[str, owl_model.OntologyDocument] = field(default_factory=dict)
    documents: dict[str, AnnotationDocument] = field(default_factory=dict)
    profiles: dict[str, profile.Profile] = field(default_factory=dict)
    _locks: dict[str, threading.Lock] = field(default_factory=dict)
    _registry_lock: threading.Lock = field(default_factory=threading.Lock)

    def lock(self, resource_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(resource_id, threading.Lock())

    def resolve_path(self, rel: str) -> Path:
        """A path under the workspace root; rejects escapes."""
        candidate = (self.root / rel).resolve()
        if not candidate.is_relative_to(self.root.resolve()):
            raise IoError(f"path escapes workspace root: {rel!r}")
        return candidate


# --- JSON views -------------------------------------------------------


def value_to_json(value) -> dict:
    if isinstance(value, StringAnnotation):
        return {"kind": "string", "text": value.text}
    return {
        "kind": "ontology",
        "ont_annotation_id": value.ont_annotation_id,
        "user_defined_term": value.user_defined_term,
        "instances": list(value.instances),
        "descriptions": list(value.descriptions),
    }


def value_from_json(body: dict):
    if body.get("kind") == "ontology":
        return OntologyAnnotation(
            ont_annotation_id=body["ont_annotation_id"],
            user_defined_term=body["user_defined_term"],
            instances=tuple(body.get("instances", [])),
            descriptions=tuple(body.get("descriptions", [])),
        )
    return StringAnnotation(body.get("text", ""))


def annotation_to_json(doc: AnnotationDocument, a) -> dict:
    out: dict[str, Any] = {
        "id": a.id,
        "tier": a.tier_id,
        "value": value_to_json(a.value),
    }
    if isinstance(a, AlignableAnnotation):
        out["kind"] = "alignable"
        out["begin_slot"] = a.begin_slot
        out["end_slot"] = a.end_slot
        out["parent"] = a.parent
    else:
        out["kind"] = "referring"
        out["ref_annotation"] = a.ref_annotation
        out["previous"] = a.previous
    begin, end = doc.resolve_time_extent(a.id)
    out["extent"] = {"begin": begin, "end": end}
    return out


def document_to_json(doc: AnnotationDocument) -> dict:
    return {
        "id": doc.id,
        "time_unit": doc.time_unit,
        "media": [
            {
                "media_url": m.media_url,
                "mime_type": m.mime_type,
                "time_origin_offset": m.time_origin_offset,
                "extracted_from": m.extracted_from,
            }
            for m in doc.media
        ],
        "linguistic_types": [
            {
                "id": lt.id,
                "stereotype": lt.stereotype.value,
                "ontological": lt.ontological,
                "time_alignable": lt.time_alignable,
            }
            for lt in sorted(doc.linguistic_types.values(), key=lambda lt: lt.id)
        ],
        "tiers": [
            {
                "id": t.id,
                "parent": t.parent,
                "type": t.type_id,
                "profile_ref": t.profile_ref,
            }
            for t in sorted(doc.tiers.values(), key=lambda t: t.id)
        ],
        "slots": {sid: s.value for sid, s in doc.slots.items()},
        "time_order": list(doc.time_order),
        "annotations": [
            annotation_to_json(doc, a)
            for a in sorted(doc.annotations.values(), key=lambda a: int(a.id[1:]))
        ],
        "profiles": sorted(doc.profiles),
    }


def tree_to_json(nodes) -> list[dict]:
    return [
        {"iri": n.iri, "label": n.label, "children": tree_to_json(n.children)}
        for n in nodes
    ]


def profile_to_json(p: profile.Profile) -> dict:
    return {
        "author": p.author,
        "version": p.version,
        "source": p.source,
        "description": p.description,
        "terms": [
            {
                "name": t.name,
                "description": t.description,
                "ontology_terms": list(t.ontology_terms),
            }
            for t in p.terms
        ],
    }


def profile_from_json(body: dict) -> profile.Profile:
    p = profile.new_profile(
        body.get("author", ""), body.get("version", ""), body["source"]
    )
    if body.get("description"):
        p = profile.Profile(
            author=p.author, version=p.version, source=p.source,
            description=body["description"],
        )
    for t in body.get("terms", []):
        p = profile.add_term(
            p, t["name"], t["ontology_terms"], description=t.get("description", "")
        )
    return p


def assertions_from_json(body: dict) -> dict:
    out = {}
    for prop, values in body.items():
        converted = []
        for v in values:
            if "iri" in v:
                converted.append(owl_model.IriRef(v["iri"]))
            else:
                converted.append(owl_model.Literal(v["value"], v.get("datatype")))
        out[prop] = converted
    return out


# --- app --------------------------------------------------------------


def create_app(root: str | Path = ".", ui_dir: str | Path | None = None) -> FastAPI:
    ws = Workspace(root=Path(root))
    app = FastAPI(title="ontotier", docs_url=None, redoc_url=None)
    app.state.workspace = ws

    @app.exception_handler(EngineError)
    async def engine_error(request: Request, exc: EngineError):
        status = 500 if isinstance(exc, IoError) else 400
        return JSONResponse(
            status_code=status, content={"code": exc.code, "message": str(exc)}
        )

    def not_found(kind: str, rid: str) -> JSONResponse:
        return JSONResponse(
            status_code=404,
            content={"code": "NotFound", "message": f"{kind} {rid!r} not loaded"},
        )

    # --- ontologies ---

    @app.post("/ontologies")
    async def upload_ontology(request: Request, base: str = Query(...)):
        data = await request.body()
        doc = owl_model.parse_ontology(data, base=base)
        oid = hashlib.sha256(data).hexdigest()[:12]
        with ws.lock("ontologies"):
            ws.ontologies[oid] = doc
        return {
            "id": oid,
            "base": doc.base_iri,
            "classes": len(doc.classes),
            "properties": len(doc.properties),
            "individuals": len(doc.individuals),
            "warnings": doc.warnings,
        }

    @app.get("/ontologies")
    def list_ontologies():
        return {
            oid: {"base": d.base_iri, "classes": len(d.classes)}
            for oid, d in ws.ontologies.items()
        }

    @app.get("/ontologies/{oid}/tree")
    def ontology_tree(oid: str):
        if oid not in ws.ontologies:
            return not_found("ontology", oid)
        return tree_to_json(owl_model.class_tree(ws.ontologies[oid]))

    @app.get("/ontologies/{oid}/index")
    def ontology_index(oid: str):
        if oid not in ws.ontologies:
            return not_found("ontology", oid)
        return [
            {"label": label, "iri": iri}
            for label, iri in owl_model.term_index(ws.ontologies[oid])
        ]

    @app.get("/ontologies/{oid}/instances")
    def ontology_instances(oid: str, class_iri: str, transitive: bool = True):
        if oid not in ws.ontologies:
            return not_found("ontology", oid)
        found = owl_model.instances_of(
            ws.ontologies[oid], class_iri, transitive=transitive
        )
        return [{"iri": i.iri, "types": sorted(i.types)} for i in found]

    @app.get("/ontologies/{oid}/properties")
    def ontology_properties(oid: str, class_iri: str):
        if oid not in ws.ontologies:
            return not_found("ontology", oid)
        props = owl_model.applicable_properties(ws.ontologies[oid], class_iri)
        return [
            {
                "iri": p.iri,
                "kind": p.kind,
                "label": p.label,
                "min_count": eff.min_count,
                "max_count": eff.max_count,
                "all_values_from": eff.all_values_from,
                "some_values_from": eff.some_values_from,
                "has_values": [
                    v.iri if isinstance(v, owl_model.IriRef) else v.value
                    for v in eff.has_values
                ],
            }
            for p, eff in props
        ]

    @app.post("/ontologies/{oid}/individuals")
    def create_individual(oid: str, body: dict = Body(...)):
        if oid not in ws.ontologies:
            return not_found("ontology", oid)
        with ws.lock(oid):
            ind = owl_model.create_individual(
                ws.ontologies[oid],
                body["class_iri"],
                body["id"],
                assertions_from_json(body.get("assertions", {})),
            )
        return {"iri": ind.iri, "types": sorted(ind.types)}

    # --- profiles ---

    @app.get("/profiles")
    def list_profiles():
        return sorted(ws.profiles)

    @app.get("/profiles/{pid:path}")
    def get_profile(pid: str):
        if pid not in ws.profiles:
            return not_found("profile", pid)
        return profile_to_json(ws.profiles[pid])

    @app.put("/profiles/{pid:path}")
    def put_profile(pid: str, body: dict = Body(...)):
        p = profile_from_json(body)
        with ws.lock("profile:" + pid):
            path = ws.resolve_path(pid)
            path.parent.mkdir(parents=True, exist_ok=True)
            _atomic_write(path, profile.serialize_profile(p))
            ws.profiles[pid] = p
        return profile_to_json(p)

    @app.post("/profiles/{pid:path}/open")
    def open_profile(pid: str):
        with ws.lock("profile:" + pid):
            path = ws.resolve_path(pid)
            if not path.is_file():
                return not_found("profile", pid)
            ws.profiles[pid] = profile.parse_profile(path.read_bytes())
        return profile_to_json(ws.profiles[pid])

    @app.delete("/profiles/{pid:path}")
    def delete_profile(pid: str):
        with ws.lock("profile:" + pid):
            if pid not in ws.profiles:
                return not_found("profile", pid)
            del ws.profiles[pid]
        return {"deleted": pid}

    @app.post("/profiles/{pid:path}/validate")
    def validate_profile(pid: str, ontology: str = Query(...)):
        if pid not in ws.profiles:
            return not_found("profile", pid)
        if ontology not in ws.ontologies:
            return not_found("ontology", ontology)
        findings = profile.validate_against_ontology(
            ws.profiles[pid], ws.ontologies[ontology]
        )
        return [
            {
                "kind": f.kind,
                "term": f.term,
                "ontology_term": f.ontology_term,
                "message": f.message,
            }
            for f in findings
        ]

    # --- documents ---

    def doc_or_none(did: str):
        return ws.documents.get(did)

    @app.post("/documents")
    def new_doc(body: dict = Body(...)):
        did = body["id"]
        media = [
            MediaDescriptor(
                media_url=m["media_url"],
                mime_type=m["mime_type"],
                time_origin_offset=m.get("time_origin_offset", 0),
                extracted_from=m.get("extracted_from"),
            )
            for m in body.get("media", [])
        ]
        with ws.lock(did):
            doc = annodoc.new_document(did, media)
            for pid in body.get("profiles", []):
                if pid not in ws.profiles:
                    return not_found("profile", pid)
                doc.register_profile(pid, ws.profiles[pid])
            ws.documents[did] = doc
        return document_to_json(doc)

    @app.post("/documents/open")
    def open_doc(body: dict = Body(...)):
        rel = body["path"]
        path = ws.resolve_path(rel)
        if not path.is_file():
            return not_found("document file", rel)
        doc = serializer.load_document(path.read_bytes())
        with ws.lock(doc.id):
            for pid in body.get("profiles", []):
                if pid not in ws.profiles:
                    return not_found("profile", pid)
                doc.register_profile(pid, ws.profiles[pid])
            ws.documents[doc.id] = doc
        return document_to_json(doc)

    @app.get("/documents")
    def list_documents():
        return sorted(ws.documents)

    @app.get("/documents/{did:path}/search")
    def search(
        did: str,
        q: str,
        tiers: str | None = None,
        case_sensitive: bool = False,
    ):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        hits = doc.search(
            q,
            tiers=tiers.split(",") if tiers else None,
            case_sensitive=case_sensitive,
        )
        return [
            {
                "tier": h.tier_id,
                "annotation": h.annotation_id,
                "text": h.text,
                "begin": h.begin,
                "end": h.end,
            }
            for h in hits
        ]

    @app.get("/documents/{did:path}/check")
    def check(did: str):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        return annodoc.check_document(doc)

    @app.post("/documents/{did:path}/save")
    def save(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            data = serializer.save_document(doc)
            path = ws.resolve_path(body["path"])
            path.parent.mkdir(parents=True, exist_ok=True)
            _atomic_write(path, data)
        return {"path": body["path"], "bytes": len(data)}

    @app.post("/documents/{did:path}/profiles")
    def register_profile(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        pid = body["profile"]
        if pid not in ws.profiles:
            return not_found("profile", pid)
        with ws.lock(did):
            doc.register_profile(body.get("ref", pid), ws.profiles[pid])
        return document_to_json(doc)

    @app.post("/documents/{did:path}/types")
    def add_type(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            doc.add_linguistic_type(
                body["id"],
                annodoc.Stereotype(body.get("stereotype", "None")),
                ontological=body.get("ontological", False),
            )
        return document_to_json(doc)

    @app.post("/documents/{did:path}/tiers")
    def add_tier(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            doc.add_tier(
                body["id"],
                body.get("parent"),
                body["type"],
                profile_ref=body.get("profile_ref"),
            )
        return document_to_json(doc)

    @app.delete("/documents/{did:path}/tiers/{tier_id}")
    def delete_tier(did: str, tier_id: str):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            doc.delete_tier(tier_id)
        return document_to_json(doc)

    @app.post("/documents/{did:path}/annotations/alignable")
    def add_alignable(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            aid = doc.add_alignable_annotation(
                body["tier"],
                body["begin"],
                body["end"],
                value_from_json(body.get("value", {})),
            )
        return annotation_to_json(doc, doc.annotations[aid])

    @app.post("/documents/{did:path}/annotations/subdivide")
    def subdivide(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            ids = doc.subdivide_time(
                body["tier"], body["parent"], body["cut_points"]
            )
        return [annotation_to_json(doc, doc.annotations[a]) for a in ids]

    @app.post("/documents/{did:path}/annotations/referring")
    def add_referring(did: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            aid = doc.add_referring_annotation(
                body["tier"],
                body["parent"],
                value_from_json(body.get("value", {})),
                after=body.get("after"),
            )
        return annotation_to_json(doc, doc.annotations[aid])

    @app.patch("/documents/{did:path}/annotations/{aid}")
    def set_value(did: str, aid: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            doc.set_annotation_value(aid, value_from_json(body["value"]))
        return annotation_to_json(doc, doc.annotations[aid])

    @app.delete("/documents/{did:path}/annotations/{aid}")
    def delete_annotation(did: str, aid: str):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            doc.delete_annotation(aid)
        return document_to_json(doc)

    @app.post("/documents/{did:path}/slots/{slot_id}")
    def alter_slot(did: str, slot_id: str, body: dict = Body(...)):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        with ws.lock(did):
            doc.alter_time_slot(
                slot_id, body["value"], mode=body.get("mode", "reject")
            )
        return document_to_json(doc)

    @app.get("/documents/{did:path}")
    def get_doc(did: str):
        doc = doc_or_none(did)
        if doc is None:
            return not_found("document", did)
        return document_to_json(doc)

    @app.delete("/documents/{did:path}")
    def close_doc(did: str):
        with ws.lock(did):
            if did not in ws.documents:
                return not_found("document", did)
            del ws.documents[did]
        return {"closed": did}

    # --- media ---

    @app.get("/media/{rel:path}")
    def media(rel: str, request: Request):
        path = ws.resolve_path(rel)
        if not path.is_file():
            return not_found("media file", rel)
        size = path.stat().st_size
        mime = MIME_TYPES.get(path.suffix.lower(), "application/octet-stream")
        range_header = request.headers.get("range")
        if range_header is None:
            return Response(
                content=path.read_bytes(),
                media_type=mime,
                headers={"Accept-Ranges": "bytes"},
            )
        m = re.fullmatch(r"bytes=(\d*)-(\d*)", range_header.strip())
        if m is None or (not m.group(1) and not m.group(2)):
            return Response(status_code=416, headers={"Content-Range": f"bytes */{size}"})
        if m.group(1):
            start = int(m.group(1))
            end = int(m.group(2)) if m.group(2) else size - 1
        else:  # suffix range: last N bytes
            start = max(0, size - int(m.group(2)))
            end = size - 1
        end = min(end, size - 1)
        if start > end or start >= size:
            return Response(status_code=416, headers={"Content-Range": f"bytes */{size}"})
        with path.open("rb") as fh:
            fh.seek(start)
            chunk = fh.read(end - start + 1)
        return Response(
            content=chunk,
            status_code=206,
            media_type=mime,
            headers={
                "Content-Range": f"bytes {start}-{end}/{size}",
                "Accept-Ranges": "bytes",
            },
        )

    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _atomic_write(path: Path, data: bytes) -> None:
    """Write-temp-then-rename so a crashed or concurrent save never
    leaves a partial file."""
    fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=path.name + ".")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except OSError as e:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise IoError(str(e)) from e


def run_server(
    root: str = ".",
    bind: str = "127.0.0.1:8713",
    open_ui: bool = False,
    ui_dir: str | None = None,
) -> None:
    import uvicorn

    host, _, port = bind.rpartition(":")
    app = create_app(root=root, ui_dir=ui_dir)
    if open_ui:
        import webbrowser

        webbrowser.open(f"http://{bind}/ui/")
    uvicorn.run(app, host=host or "127.0.0.1", port=int(port))
