/** Profile editor model: pick ontology terms from the index or tree
 * view, group them under user-defined names, save through the profile
 * API.  The two views are the same term set presented flat and nested.
 */

import { ApiClient } from "./api.js";
import { flattenTree } from "./ontologyTerms.js";
import type { IndexEntry, ProfileView, TreeNode } from "./types.js";

export interface TermGroup {
  name: string;
  description: string;
  ontologyTerms: string[];
}

export class ProfileEditor {
  private groups: TermGroup[] = [];
  /** Labels ticked in either view, pending grouping. */
  private selected: string[] = [];

  private constructor(
    readonly ontologyId: string,
    readonly index: IndexEntry[],
    readonly tree: TreeNode[],
    public author: string,
    public version: string,
    readonly source: string,
  ) {}

  static async open(
    api: ApiClient,
    ontologyId: string,
    author: string,
    version: string,
    source: string,
  ): Promise<ProfileEditor> {
    const [index, tree] = await Promise.all([
      api.ontologyIndex(ontologyId),
      api.ontologyTree(ontologyId),
    ]);
    return new ProfileEditor(ontologyId, index, tree, author, version, source);
  }

  /** Labels shown in the index view. */
  indexLabels(): string[] {
    return this.index.map((e) => e.label);
  }

  /** Labels shown in the tree view (pre-order flattening). */
  treeLabels(): string[] {
    return flattenTree(this.tree).map((e) => e.label);
  }

  /** Both views must offer the same term set. */
  viewsAgree(): boolean {
    const a = new Set(this.indexLabels());
    const b = new Set(this.treeLabels());
    return a.size === b.size && [...a].every((label) => b.has(label));
  }

  toggleTerm(label: string): void {
    const at = this.selected.indexOf(label);
    if (at >= 0) {
      this.selected.splice(at, 1);
    } else {
      this.selected.push(label);
    }
  }

  get selection(): string[] {
    return [...this.selected];
  }

  /** Group the current selection under one user-defined term. */
  groupAs(name: string, description = ""): TermGroup {
    if (this.groups.some((g) => g.name === name)) {
      throw new Error(`DuplicateName: a user-defined term ${JSON.stringify(name)} already exists`);
    }
    if (this.selected.length === 0) {
      throw new Error("EmptyMapping: select at least one ontology term first");
    }
    // Selection order is meaningful: the saved mapping lists ontology
    // terms in the order the user picked them.
    const group: TermGroup = {
      name,
      description,
      ontologyTerms: [...this.selected],
    };
    this.groups.push(group);
    this.selected = [];
    return group;
  }

  rename(oldName: string, newName: string): void {
    if (oldName !== newName && this.groups.some((g) => g.name === newName)) {
      throw new Error(
        `DuplicateName: a user-defined term ${JSON.stringify(newName)} already exists`,
      );
    }
    const group = this.groups.find((g) => g.name === oldName);
    if (!group) {
      throw new Error(`no user-defined term ${JSON.stringify(oldName)}`);
    }
    group.name = newName;
  }

  removeGroup(name: string): void {
    this.groups = this.groups.filter((g) => g.name !== name);
  }

  get terms(): TermGroup[] {
    return this.groups.map((g) => ({ ...g, ontologyTerms: [...g.ontologyTerms] }));
  }

  toProfileJson(): ProfileView {
    return {
      author: this.author,
      version: this.version,
      source: this.source,
      description: "",
      terms: this.groups.map((g) => ({
        name: g.name,
        description: g.description,
        ontology_terms: [...g.ontologyTerms],
      })),
    };
  }

  save(api: ApiClient, profileId: string): Promise<ProfileView> {
    return api.putProfile(profileId, this.toProfileJson());
  }
}
