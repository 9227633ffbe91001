/** Instance forms generated from a class's applicable properties.
 *
 * The form model is pure data: the DOM layer renders it, scripted flows
 * fill it programmatically, and `formAssertions` turns the filled form
 * into the create-individual request body.  Values fixed by the
 * ontology (owl:hasValue) are preset and not editable.
 */

import type { Assertions, AssertionValue, PropertyView } from "./types.js";

export interface FormField {
  propertyIri: string;
  label: string;
  kind: string;
  /** Lower/upper bounds from the effective constraints. */
  minCount: number;
  maxCount: number | null;
  /** Class whose instances populate the value picker, if constrained. */
  valuesFrom: string | null;
  /** Values the ontology fixes; shown read-only. */
  fixedValues: AssertionValue[];
}

export interface InstanceForm {
  classIri: string;
  fields: FormField[];
}

export function buildInstanceForm(classIri: string, properties: PropertyView[]): InstanceForm {
  const fields = properties.map((p) => ({
    propertyIri: p.iri,
    label: p.label,
    kind: p.kind,
    minCount: p.min_count ?? 0,
    maxCount: p.max_count,
    valuesFrom: p.all_values_from,
    fixedValues: p.has_values.map((v): AssertionValue =>
      typeof v === "string" && /^https?:\/\//.test(v) ? { iri: v } : { value: v },
    ),
  }));
  return { classIri, fields };
}

/** True when the form has nothing for the user to fill in: no required
 * counts and no fixed values to carry over. */
export function formIsEmpty(form: InstanceForm): boolean {
  return form.fields.every((f) => f.minCount === 0 && f.fixedValues.length === 0);
}

/** Merge user inputs with ontology-fixed values and check the counts.
 * Returns the assertions plus any violations to show inline. */
export function formAssertions(
  form: InstanceForm,
  inputs: Record<string, AssertionValue[]>,
): { assertions: Assertions; problems: string[] } {
  const assertions: Assertions = {};
  const problems: string[] = [];
  for (const field of form.fields) {
    const values = [...field.fixedValues, ...(inputs[field.propertyIri] ?? [])];
    if (values.length > 0) {
      assertions[field.propertyIri] = values;
    }
    if (values.length < field.minCount) {
      problems.push(
        `${field.label}: needs at least ${field.minCount} value(s), has ${values.length}`,
      );
    }
    if (field.maxCount !== null && values.length > field.maxCount) {
      problems.push(
        `${field.label}: allows at most ${field.maxCount} value(s), has ${values.length}`,
      );
    }
  }
  for (const prop of Object.keys(inputs)) {
    if (!form.fields.some((f) => f.propertyIri === prop)) {
      problems.push(`${prop}: not applicable to this class`);
    }
  }
  return { assertions, problems };
}
