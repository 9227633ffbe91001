/** Resolution of profile terms against a server-side ontology.
 *
 * Profiles map user-defined terms to ontology terms by local name.  The
 * UI needs to know whether each target is a class (then an instance form
 * is required) or an already-existing individual (then the value is set
 * directly).  Classes come from the tree/index endpoints; individuals
 * from the instances of every root class, transitively.
 */

import { ApiClient } from "./api.js";
import type { TreeNode } from "./types.js";

export function localName(iri: string): string {
  const hash = iri.lastIndexOf("#");
  const slash = iri.lastIndexOf("/");
  return iri.slice(Math.max(hash, slash) + 1);
}

export function flattenTree(nodes: TreeNode[]): { label: string; iri: string }[] {
  const out: { label: string; iri: string }[] = [];
  const visit = (node: TreeNode) => {
    out.push({ label: node.label, iri: node.iri });
    node.children.forEach(visit);
  };
  nodes.forEach(visit);
  return out;
}

export interface TermTarget {
  /** The local name the profile used. */
  name: string;
  iri: string;
  kind: "class" | "individual";
}

export class TermCatalog {
  private constructor(
    readonly classesByName: Map<string, string>,
    readonly individualsByName: Map<string, string>,
  ) {}

  static async load(api: ApiClient, oid: string): Promise<TermCatalog> {
    const tree = await api.ontologyTree(oid);
    const classes = new Map<string, string>();
    for (const { label, iri } of flattenTree(tree)) {
      classes.set(label, iri);
    }
    const individuals = new Map<string, string>();
    for (const root of tree) {
      for (const ind of await api.ontologyInstances(oid, root.iri, true)) {
        individuals.set(localName(ind.iri), ind.iri);
      }
    }
    return new TermCatalog(classes, individuals);
  }

  /** Resolve one ontology-term name; individuals win over classes, so a
   * name already materialized as an individual needs no form. */
  resolve(name: string): TermTarget | null {
    const individual = this.individualsByName.get(name);
    if (individual !== undefined) {
      return { name, iri: individual, kind: "individual" };
    }
    const cls = this.classesByName.get(name);
    if (cls !== undefined) {
      return { name, iri: cls, kind: "class" };
    }
    return null;
  }
}
