/** Pure timeline layout: document snapshot + TimeScale -> renderable rows.
 *
 * No DOM access here; the DOM layer turns TimelineLayout into elements
 * and tests assert on the layout directly.
 *
 * Referring annotations carry no time of their own — the engine resolves
 * them to the extent of their alignable root.  For display, subdivision
 * chains split that inherited extent evenly among chain members so each
 * word gets its own block inside the sentence block; this is
 * presentation only and is never written back.
 */

import type { AnnotationView, DocumentView, TierView } from "./types.js";
import { TimeScale } from "./timescale.js";

export interface Block {
  annotationId: string;
  label: string;
  x: number;
  width: number;
  beginMs: number;
  endMs: number;
  kind: "alignable" | "referring";
}

export interface TierRow {
  tierId: string;
  /** Nesting depth in the tier hierarchy (roots at 0). */
  depth: number;
  stereotype: string;
  ontological: boolean;
  blocks: Block[];
}

export interface TimelineLayout {
  rows: TierRow[];
  playheadX: number;
  selection: { x: number; width: number } | null;
}

export interface Extent {
  begin: number;
  end: number;
}

export function valueLabel(a: AnnotationView): string {
  return a.value.kind === "string" ? a.value.text : a.value.user_defined_term;
}

/** Tiers in hierarchy order: depth-first, siblings alphabetical — the
 * same order a collapsed tree view would show. */
export function tierOrder(doc: DocumentView): { tier: TierView; depth: number }[] {
  const byParent = new Map<string | null, TierView[]>();
  for (const tier of doc.tiers) {
    const siblings = byParent.get(tier.parent) ?? [];
    siblings.push(tier);
    byParent.set(tier.parent, siblings);
  }
  const out: { tier: TierView; depth: number }[] = [];
  const visit = (parent: string | null, depth: number) => {
    const siblings = byParent.get(parent) ?? [];
    siblings.sort((a, b) => a.id.localeCompare(b.id));
    for (const tier of siblings) {
      out.push({ tier, depth });
      visit(tier.id, depth + 1);
    }
  };
  visit(null, 0);
  return out;
}

/** Members of one sibling chain under `parent` on `tierId`, in chain
 * order (follow the `previous` links from the head). */
export function chainMembers(
  doc: DocumentView,
  tierId: string,
  parent: string,
): AnnotationView[] {
  const members = doc.annotations.filter(
    (a) => a.tier === tierId && a.kind === "referring" && a.ref_annotation === parent,
  );
  const byPrevious = new Map(members.map((a) => [a.previous ?? null, a]));
  const ordered: AnnotationView[] = [];
  let cursor = byPrevious.get(null);
  while (cursor && ordered.length < members.length) {
    ordered.push(cursor);
    cursor = byPrevious.get(cursor.id);
  }
  return ordered.length === members.length ? ordered : members;
}

/** Display extent per annotation id.
 *
 * Alignable annotations keep their slot times.  Referring annotations
 * start from their parent's display extent; Symbolic_Subdivision chains
 * split it into equal slices, Symbolic_Association members cover it. */
export function displayExtents(doc: DocumentView): Map<string, Extent> {
  const typeById = new Map(doc.linguistic_types.map((t) => [t.id, t]));
  const tierById = new Map(doc.tiers.map((t) => [t.id, t]));
  const byId = new Map(doc.annotations.map((a) => [a.id, a]));
  const extents = new Map<string, Extent>();

  const resolve = (a: AnnotationView): Extent | null => {
    const known = extents.get(a.id);
    if (known) return known;
    let extent: Extent | null = null;
    if (a.kind === "alignable") {
      if (a.extent.begin !== null && a.extent.end !== null) {
        extent = { begin: a.extent.begin, end: a.extent.end };
      }
    } else {
      const parent = byId.get(a.ref_annotation as string);
      const parentExtent = parent ? resolve(parent) : null;
      if (parentExtent) {
        const tier = tierById.get(a.tier);
        const stereotype = tier ? typeById.get(tier.type)?.stereotype : undefined;
        if (stereotype === "Symbolic_Subdivision") {
          const chain = chainMembers(doc, a.tier, a.ref_annotation as string);
          const index = chain.findIndex((m) => m.id === a.id);
          const slice = (parentExtent.end - parentExtent.begin) / Math.max(1, chain.length);
          extent = {
            begin: parentExtent.begin + slice * Math.max(0, index),
            end: parentExtent.begin + slice * (Math.max(0, index) + 1),
          };
        } else {
          extent = { ...parentExtent };
        }
      }
    }
    if (extent) extents.set(a.id, extent);
    return extent;
  };

  for (const a of doc.annotations) resolve(a);
  return extents;
}

export function layoutTimeline(
  doc: DocumentView,
  scale: TimeScale,
  playheadMs: number,
  selection: { begin: number; end: number } | null,
): TimelineLayout {
  const typeById = new Map(doc.linguistic_types.map((t) => [t.id, t]));
  const extents = displayExtents(doc);
  const rows: TierRow[] = tierOrder(doc).map(({ tier, depth }) => {
    const type = typeById.get(tier.type);
    const blocks: Block[] = [];
    for (const a of doc.annotations) {
      if (a.tier !== tier.id) continue;
      const extent = extents.get(a.id);
      if (!extent) continue;
      blocks.push({
        annotationId: a.id,
        label: valueLabel(a),
        x: scale.toPx(extent.begin),
        width: scale.spanPx(extent.end - extent.begin),
        beginMs: extent.begin,
        endMs: extent.end,
        kind: a.kind,
      });
    }
    blocks.sort(
      (a, b) => a.beginMs - b.beginMs || a.annotationId.localeCompare(b.annotationId),
    );
    return {
      tierId: tier.id,
      depth,
      stereotype: type?.stereotype ?? "None",
      ontological: type?.ontological ?? false,
      blocks,
    };
  });
  return {
    rows,
    playheadX: scale.toPx(playheadMs),
    selection: selection
      ? { x: scale.toPx(selection.begin), width: scale.spanPx(selection.end - selection.begin) }
      : null,
  };
}

/** Annotation-count-per-bin summary shown instead of a waveform. */
export function densityStrip(
  doc: DocumentView,
  beginMs: number,
  endMs: number,
  bins: number,
): number[] {
  const counts = new Array<number>(bins).fill(0);
  const span = endMs - beginMs;
  if (span <= 0 || bins <= 0) return counts;
  const extents = displayExtents(doc);
  for (const extent of extents.values()) {
    const lo = Math.max(0, Math.floor(((extent.begin - beginMs) / span) * bins));
    const hi = Math.min(bins - 1, Math.floor(((extent.end - beginMs) / span) * bins));
    for (let b = lo; b <= hi; b += 1) counts[b] += 1;
  }
  return counts;
}
