/** Annotation editing flows.
 *
 * Each flow issues exactly the engine operations the equivalent API
 * script would, through the shared FIFO queue, and returns the server's
 * response; callers re-render from that response.  Nothing here touches
 * annotation state locally.
 */

import { ApiClient } from "./api.js";
import { buildInstanceForm, formAssertions, formIsEmpty, type InstanceForm } from "./forms.js";
import { MutationQueue } from "./queue.js";
import { TermCatalog } from "./ontologyTerms.js";
import type {
  AnnotationView,
  AssertionValue,
  DocumentView,
  OntologyValue,
  ProfileView,
} from "./types.js";

export interface FlowContext {
  api: ApiClient;
  documentId: string;
  queue: MutationQueue;
}

/** "New Annotation Here": the current selection on an alignable tier
 * becomes a time-aligned annotation once the draft text is committed. */
export function newAnnotationHere(
  ctx: FlowContext,
  tierId: string,
  selection: { begin: number; end: number },
  text: string,
): Promise<AnnotationView> {
  return ctx.queue.enqueue(() =>
    ctx.api.addAlignable(ctx.documentId, tierId, selection.begin, selection.end, {
      kind: "string",
      text,
    }),
  );
}

/** "New Annotation After": append a sibling behind an existing member
 * of a referring chain. */
export function newAnnotationAfter(
  ctx: FlowContext,
  doc: DocumentView,
  afterAnnotationId: string,
  text: string,
): Promise<AnnotationView> {
  const after = doc.annotations.find((a) => a.id === afterAnnotationId);
  if (!after || after.kind !== "referring" || !after.ref_annotation) {
    return Promise.reject(
      new Error(`${afterAnnotationId} is not a referring annotation; cannot append after it`),
    );
  }
  const parent = after.ref_annotation;
  return ctx.queue.enqueue(() =>
    ctx.api.addReferring(
      ctx.documentId,
      after.tier,
      parent,
      { kind: "string", text },
      after.id,
    ),
  );
}

/** Double-click on an empty referring-tier cell: annotate the parent. */
export function newReferringAnnotation(
  ctx: FlowContext,
  tierId: string,
  parentAnnotationId: string,
  text: string,
): Promise<AnnotationView> {
  return ctx.queue.enqueue(() =>
    ctx.api.addReferring(ctx.documentId, tierId, parentAnnotationId, {
      kind: "string",
      text,
    }),
  );
}

export interface OntologyFlowOptions {
  ontologyId: string;
  profile: ProfileView;
  /** The user-defined term picked from the profile. */
  userTerm: string;
  ontAnnotationId: string;
  descriptions?: string[];
  /** Called for each ontology term that resolves to a class with a
   * non-empty form; the user's (or script's) inputs come back keyed by
   * property IRI.  The generated individual id is also chosen here. */
  fillForm?: (
    form: InstanceForm,
    termName: string,
  ) => { id: string; inputs: Record<string, AssertionValue[]> };
}

/** Resolve a profile term to concrete instance IRIs, creating
 * individuals for class targets (form-driven) and reusing existing
 * individuals directly — no form shown for those. */
export async function resolveTermInstances(
  ctx: FlowContext,
  opts: OntologyFlowOptions,
): Promise<string[]> {
  const term = opts.profile.terms.find((t) => t.name === opts.userTerm);
  if (!term) {
    throw new Error(`profile has no user-defined term ${JSON.stringify(opts.userTerm)}`);
  }
  const catalog = await TermCatalog.load(ctx.api, opts.ontologyId);
  const instances: string[] = [];
  for (const name of term.ontology_terms) {
    const target = catalog.resolve(name);
    if (!target) {
      throw new Error(`ontology term ${JSON.stringify(name)} not found in the ontology`);
    }
    if (target.kind === "individual") {
      instances.push(target.iri);
      continue;
    }
    const properties = await ctx.api.ontologyProperties(opts.ontologyId, target.iri);
    const form = buildInstanceForm(target.iri, properties);
    let id = `${name}_${opts.ontAnnotationId}`;
    let inputs: Record<string, AssertionValue[]> = {};
    if (!formIsEmpty(form)) {
      if (!opts.fillForm) {
        throw new Error(`class ${name} requires an instance form but no fillForm was given`);
      }
      ({ id, inputs } = opts.fillForm(form, name));
    }
    const { assertions, problems } = formAssertions(form, inputs);
    if (problems.length > 0) {
      throw new Error(`instance form for ${name}: ${problems.join("; ")}`);
    }
    const individual = await ctx.queue.enqueue(() =>
      ctx.api.createIndividual(opts.ontologyId, target.iri, id, assertions),
    );
    instances.push(individual.iri);
  }
  return instances;
}

/** Full ontological-annotation flow on a new chain member. */
export async function newOntologyAnnotation(
  ctx: FlowContext,
  tierId: string,
  parentAnnotationId: string,
  opts: OntologyFlowOptions,
): Promise<AnnotationView> {
  const instances = await resolveTermInstances(ctx, opts);
  const value: OntologyValue = {
    kind: "ontology",
    ont_annotation_id: opts.ontAnnotationId,
    user_defined_term: opts.userTerm,
    instances,
    descriptions: opts.descriptions ?? [],
  };
  return ctx.queue.enqueue(() =>
    ctx.api.addReferring(ctx.documentId, tierId, parentAnnotationId, value),
  );
}

/** Full ontological-annotation flow replacing an existing value. */
export async function setOntologyAnnotation(
  ctx: FlowContext,
  annotationId: string,
  opts: OntologyFlowOptions,
): Promise<AnnotationView> {
  const instances = await resolveTermInstances(ctx, opts);
  const value: OntologyValue = {
    kind: "ontology",
    ont_annotation_id: opts.ontAnnotationId,
    user_defined_term: opts.userTerm,
    instances,
    descriptions: opts.descriptions ?? [],
  };
  return ctx.queue.enqueue(() =>
    ctx.api.setAnnotationValue(ctx.documentId, annotationId, value),
  );
}
