/** Thin typed client for the annotation service's JSON API.
 *
 * Every method is one HTTP request; the client holds no document state.
 * Error responses carry `{code, message}` and surface as ApiError so
 * callers can show the engine's rejection verbatim.
 */

import type {
  AnnotationValue,
  AnnotationView,
  Assertions,
  DocumentView,
  IndexEntry,
  IndividualView,
  OntologySummary,
  ProfileView,
  PropertyView,
  SearchHit,
  TreeNode,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = `HTTP${response.status}`;
  let message = response.statusText;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the status line
  }
  throw new ApiError(code, message, response.status);
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    return unwrap<T>(await this.fetchFn(this.url(path), init));
  }

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.json<T>(path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  // --- ontologies ---

  uploadOntology(base: string, rdfXml: string | Uint8Array): Promise<OntologySummary> {
    return this.json<OntologySummary>(
      `/ontologies?base=${encodeURIComponent(base)}`,
      {
        method: "POST",
        headers: { "content-type": "application/rdf+xml" },
        body: typeof rdfXml === "string" ? rdfXml : new Blob([rdfXml as BlobPart]),
      },
    );
  }

  ontologyTree(oid: string): Promise<TreeNode[]> {
    return this.json(`/ontologies/${oid}/tree`);
  }

  ontologyIndex(oid: string): Promise<IndexEntry[]> {
    return this.json(`/ontologies/${oid}/index`);
  }

  ontologyInstances(oid: string, classIri: string, transitive = true): Promise<IndividualView[]> {
    return this.json(
      `/ontologies/${oid}/instances?class_iri=${encodeURIComponent(classIri)}` +
        `&transitive=${transitive}`,
    );
  }

  ontologyProperties(oid: string, classIri: string): Promise<PropertyView[]> {
    return this.json(
      `/ontologies/${oid}/properties?class_iri=${encodeURIComponent(classIri)}`,
    );
  }

  createIndividual(
    oid: string,
    classIri: string,
    id: string,
    assertions: Assertions,
  ): Promise<IndividualView> {
    return this.post(`/ontologies/${oid}/individuals`, {
      class_iri: classIri,
      id,
      assertions,
    });
  }

  // --- profiles ---

  putProfile(pid: string, body: ProfileView): Promise<ProfileView> {
    return this.json(`/profiles/${encodeURIComponent(pid)}`, {
      method: "PUT",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  getProfile(pid: string): Promise<ProfileView> {
    return this.json(`/profiles/${encodeURIComponent(pid)}`);
  }

  // --- documents ---

  private doc(did: string): string {
    return `/documents/${encodeURIComponent(did)}`;
  }

  newDocument(
    id: string,
    media: { media_url: string; mime_type: string }[],
    profiles: string[] = [],
  ): Promise<DocumentView> {
    return this.post("/documents", { id, media, profiles });
  }

  openDocument(path: string, profiles: string[] = []): Promise<DocumentView> {
    return this.post("/documents/open", { path, profiles });
  }

  getDocument(did: string): Promise<DocumentView> {
    return this.json(this.doc(did));
  }

  closeDocument(did: string): Promise<{ closed: string }> {
    return this.json(this.doc(did), { method: "DELETE" });
  }

  saveDocument(did: string, path: string): Promise<{ path: string; bytes: number }> {
    return this.post(`${this.doc(did)}/save`, { path });
  }

  registerProfile(did: string, profileId: string, ref?: string): Promise<DocumentView> {
    return this.post(`${this.doc(did)}/profiles`, {
      profile: profileId,
      ref: ref ?? profileId,
    });
  }

  addType(
    did: string,
    id: string,
    stereotype: string,
    ontological = false,
  ): Promise<DocumentView> {
    return this.post(`${this.doc(did)}/types`, { id, stereotype, ontological });
  }

  addTier(
    did: string,
    id: string,
    parent: string | null,
    type: string,
    profileRef?: string,
  ): Promise<DocumentView> {
    return this.post(`${this.doc(did)}/tiers`, {
      id,
      parent,
      type,
      profile_ref: profileRef ?? null,
    });
  }

  addAlignable(
    did: string,
    tier: string,
    begin: number,
    end: number,
    value: AnnotationValue,
  ): Promise<AnnotationView> {
    return this.post(`${this.doc(did)}/annotations/alignable`, {
      tier,
      begin,
      end,
      value,
    });
  }

  addReferring(
    did: string,
    tier: string,
    parent: string,
    value: AnnotationValue,
    after?: string,
  ): Promise<AnnotationView> {
    return this.post(`${this.doc(did)}/annotations/referring`, {
      tier,
      parent,
      value,
      after: after ?? null,
    });
  }

  subdivide(
    did: string,
    tier: string,
    parent: string,
    cutPoints: number[],
  ): Promise<AnnotationView[]> {
    return this.post(`${this.doc(did)}/annotations/subdivide`, {
      tier,
      parent,
      cut_points: cutPoints,
    });
  }

  setAnnotationValue(did: string, aid: string, value: AnnotationValue): Promise<AnnotationView> {
    return this.json(`${this.doc(did)}/annotations/${aid}`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ value }),
    });
  }

  deleteAnnotation(did: string, aid: string): Promise<DocumentView> {
    return this.json(`${this.doc(did)}/annotations/${aid}`, { method: "DELETE" });
  }

  search(did: string, q: string, tiers?: string[]): Promise<SearchHit[]> {
    const extra = tiers?.length ? `&tiers=${encodeURIComponent(tiers.join(","))}` : "";
    return this.json(`${this.doc(did)}/search?q=${encodeURIComponent(q)}${extra}`);
  }

  mediaUrl(rel: string): string {
    return this.url(`/media/${rel}`);
  }
}
