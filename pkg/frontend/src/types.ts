/** JSON shapes returned by the annotation service. */

export interface StringValue {
  kind: "string";
  text: string;
}

export interface OntologyValue {
  kind: "ontology";
  ont_annotation_id: string;
  user_defined_term: string;
  instances: string[];
  descriptions: string[];
}

export type AnnotationValue = StringValue | OntologyValue;

export interface Extent {
  begin: number | null;
  end: number | null;
}

export interface AnnotationView {
  id: string;
  tier: string;
  value: AnnotationValue;
  kind: "alignable" | "referring";
  extent: Extent;
  begin_slot?: string;
  end_slot?: string;
  parent?: string | null;
  ref_annotation?: string;
  previous?: string | null;
}

export interface TierView {
  id: string;
  parent: string | null;
  type: string;
  profile_ref: string | null;
}

export interface LinguisticTypeView {
  id: string;
  stereotype: string;
  ontological: boolean;
  time_alignable: boolean;
}

export interface MediaView {
  media_url: string;
  mime_type: string;
  time_origin_offset: number;
  extracted_from: string | null;
}

export interface DocumentView {
  id: string;
  time_unit: string;
  media: MediaView[];
  linguistic_types: LinguisticTypeView[];
  tiers: TierView[];
  slots: Record<string, number | null>;
  time_order: string[];
  annotations: AnnotationView[];
  profiles: string[];
}

export interface ProfileTerm {
  name: string;
  description: string;
  ontology_terms: string[];
}

export interface ProfileView {
  author: string;
  version: string;
  source: string;
  description: string;
  terms: ProfileTerm[];
}

export interface TreeNode {
  iri: string;
  label: string;
  children: TreeNode[];
}

export interface IndexEntry {
  label: string;
  iri: string;
}

export interface IndividualView {
  iri: string;
  types: string[];
}

export interface PropertyView {
  iri: string;
  kind: string;
  label: string;
  min_count: number | null;
  max_count: number | null;
  all_values_from: string | null;
  some_values_from: string | null;
  has_values: (string | number | boolean)[];
}

export interface SearchHit {
  tier: string;
  annotation: string;
  text: string;
  begin: number | null;
  end: number | null;
}

export interface OntologySummary {
  id: string;
  base: string;
  classes: number;
  properties: number;
  individuals: number;
  warnings: string[];
}

/** One assertion value in a create-individual request. */
export type AssertionValue =
  | { iri: string }
  | { value: string | number | boolean; datatype?: string | null };

export type Assertions = Record<string, AssertionValue[]>;
