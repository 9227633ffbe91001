/** View state shared by all viewers.
 *
 * Pure value + update helpers; the DOM layer re-renders whenever a new
 * state is produced.  Annotation state itself never lives here — the
 * document snapshot from the server is the single source of truth.
 */

export type ViewerName = "timeline" | "grid" | "subtitle" | "text";

export interface Selection {
  begin: number;
  end: number;
}

export interface ViewState {
  /** Playhead position in ms. */
  playhead: number;
  /** Media duration in ms, once known. */
  duration: number | null;
  selection: Selection | null;
  activeTier: string | null;
  visibleViewers: Set<ViewerName>;
  /** Per-bin annotation counts for the density strip. */
  densityStrip: number[];
}

export function initialViewState(): ViewState {
  return {
    playhead: 0,
    duration: null,
    selection: null,
    activeTier: null,
    visibleViewers: new Set(["timeline", "grid", "subtitle", "text"]),
    densityStrip: [],
  };
}

export function withPlayhead(state: ViewState, ms: number): ViewState {
  const max = state.duration ?? Number.POSITIVE_INFINITY;
  return { ...state, playhead: Math.min(Math.max(0, ms), max) };
}

export function withSelection(
  state: ViewState,
  begin: number,
  end: number,
): ViewState {
  if (!(begin < end)) {
    throw new RangeError(`selection must satisfy begin < end, got [${begin}, ${end}]`);
  }
  return { ...state, selection: { begin, end } };
}

export function clearSelection(state: ViewState): ViewState {
  return { ...state, selection: null };
}

export function withActiveTier(state: ViewState, tier: string | null): ViewState {
  return { ...state, activeTier: tier };
}

export function toggleViewer(state: ViewState, viewer: ViewerName): ViewState {
  const visible = new Set(state.visibleViewers);
  if (visible.has(viewer)) {
    visible.delete(viewer);
  } else {
    visible.add(viewer);
  }
  return { ...state, visibleViewers: visible };
}
