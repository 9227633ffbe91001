/** Grid / subtitle / text view models and playhead highlighting.
 *
 * All three derive from the same document snapshot.  Highlighting uses
 * the same display extents as the timeline blocks, so the word under
 * the playhead lights up in every viewer at once.
 */

import type { DocumentView } from "./types.js";
import { displayExtents, tierOrder, valueLabel, type Extent } from "./timeline.js";

export interface GridRow {
  tier: string;
  annotation: string;
  label: string;
  /** Engine-resolved extent (what the file stores). */
  begin: number;
  end: number;
  highlighted: boolean;
}

export interface SubtitleLine {
  tier: string;
  annotation: string;
  label: string;
}

function covers(extent: Extent, playheadMs: number): boolean {
  return extent.begin <= playheadMs && playheadMs < extent.end;
}

/** Ids of annotations whose display extent covers the playhead. */
export function annotationsAtPlayhead(doc: DocumentView, playheadMs: number): Set<string> {
  const out = new Set<string>();
  for (const [aid, extent] of displayExtents(doc)) {
    if (covers(extent, playheadMs)) out.add(aid);
  }
  return out;
}

/** Grid view: one row per annotation, tier by tier in hierarchy order. */
export function gridRows(doc: DocumentView, playheadMs: number): GridRow[] {
  const highlighted = annotationsAtPlayhead(doc, playheadMs);
  const extents = displayExtents(doc);
  const rows: GridRow[] = [];
  for (const { tier } of tierOrder(doc)) {
    const members = doc.annotations
      .filter((a) => a.tier === tier.id && extents.has(a.id))
      .sort((a, b) => {
        const ea = extents.get(a.id) as Extent;
        const eb = extents.get(b.id) as Extent;
        return ea.begin - eb.begin || a.id.localeCompare(b.id);
      });
    for (const a of members) {
      rows.push({
        tier: tier.id,
        annotation: a.id,
        label: valueLabel(a),
        begin: a.extent.begin as number,
        end: a.extent.end as number,
        highlighted: highlighted.has(a.id),
      });
    }
  }
  return rows;
}

/** Subtitle view: for each tier, the label under the playhead (if any). */
export function subtitleLines(doc: DocumentView, playheadMs: number): SubtitleLine[] {
  const extents = displayExtents(doc);
  const lines: SubtitleLine[] = [];
  for (const { tier } of tierOrder(doc)) {
    const current = doc.annotations.find((a) => {
      if (a.tier !== tier.id) return false;
      const extent = extents.get(a.id);
      return extent !== undefined && covers(extent, playheadMs);
    });
    if (current) {
      lines.push({ tier: tier.id, annotation: current.id, label: valueLabel(current) });
    }
  }
  return lines;
}

/** Text view: one tier's values concatenated in display order. */
export function textView(doc: DocumentView, tierId: string): string {
  const extents = displayExtents(doc);
  return doc.annotations
    .filter((a) => a.tier === tierId && extents.has(a.id))
    .sort((a, b) => {
      const ea = extents.get(a.id) as Extent;
      const eb = extents.get(b.id) as Extent;
      return ea.begin - eb.begin || a.id.localeCompare(b.id);
    })
    .map(valueLabel)
    .join(" ");
}
