/** Browser entry point: wires the pure view models to the DOM.
 *
 * All annotation state lives on the server; every user action becomes
 * one queued API call and the whole page re-renders from the response.
 */

import { ApiClient, ApiError } from "./api.js";
import {
  newAnnotationAfter,
  newAnnotationHere,
  newOntologyAnnotation,
  type FlowContext,
} from "./flows.js";
import { MutationQueue } from "./queue.js";
import { PlaybackSync, type MediaLike } from "./playback.js";
import {
  clearSelection,
  initialViewState,
  withActiveTier,
  withPlayhead,
  withSelection,
  type ViewState,
} from "./state.js";
import { densityStrip, layoutTimeline, tierOrder } from "./timeline.js";
import { TimeScale } from "./timescale.js";
import { gridRows, subtitleLines, textView } from "./views.js";
import type { DocumentView } from "./types.js";

const ROW_HEIGHT = 28;
const TIMELINE_WIDTH = 960;
const DENSITY_BINS = 240;

class App {
  private readonly api = new ApiClient("");
  private readonly queue = new MutationQueue();
  private doc: DocumentView | null = null;
  private state: ViewState = initialViewState();
  private scale = new TimeScale(0, 0.1);
  private sync: PlaybackSync | null = null;
  private lastError = "";

  constructor(private readonly rootEl: HTMLElement) {}

  private get ctx(): FlowContext {
    return { api: this.api, documentId: (this.doc as DocumentView).id, queue: this.queue };
  }

  async openFromQuery(): Promise<void> {
    const params = new URLSearchParams(location.search);
    const path = params.get("doc");
    if (!path) {
      this.rootEl.textContent = "Pass ?doc=<workspace-relative .eaf.rdf path> to open a document.";
      return;
    }
    this.doc = await this.api.openDocument(path);
    const media = this.doc.media[0];
    if (media) {
      const audio = document.createElement("audio");
      audio.controls = true;
      audio.src = this.api.mediaUrl(media.media_url.replace(/^.*[\\/]/, ""));
      this.rootEl.appendChild(audio);
      this.sync = new PlaybackSync(audio as unknown as MediaLike, (playheadMs, durationMs) => {
        this.state = { ...withPlayhead(this.state, playheadMs), duration: durationMs };
        this.render();
      });
    }
    this.render();
  }

  private async refresh(): Promise<void> {
    if (!this.doc) return;
    this.doc = await this.api.getDocument(this.doc.id);
    this.render();
  }

  private run(action: Promise<unknown>): void {
    action
      .then(() => {
        this.lastError = "";
        return this.refresh();
      })
      .catch((err: unknown) => {
        this.lastError = err instanceof ApiError ? `${err.code}: ${err.message}` : String(err);
        this.render();
      });
  }

  private fitScale(): void {
    if (!this.doc) return;
    let end = 1000;
    for (const a of this.doc.annotations) {
      if (a.extent.end !== null) end = Math.max(end, a.extent.end);
    }
    if (this.state.duration !== null) end = Math.max(end, this.state.duration);
    this.scale = TimeScale.fit(0, end, TIMELINE_WIDTH);
  }

  private render(): void {
    if (!this.doc) return;
    this.fitScale();
    const container = document.createElement("div");

    if (this.lastError) {
      const err = document.createElement("p");
      err.className = "error";
      err.textContent = this.lastError;
      container.appendChild(err);
    }

    container.appendChild(this.renderToolbar());
    container.appendChild(this.renderDensityStrip());
    container.appendChild(this.renderTimeline());
    container.appendChild(this.renderGrid());
    container.appendChild(this.renderSubtitle());
    container.appendChild(this.renderText());

    const old = this.rootEl.querySelector(".app-body");
    if (old) old.remove();
    container.className = "app-body";
    this.rootEl.appendChild(container);
  }

  private renderToolbar(): HTMLElement {
    const bar = document.createElement("div");
    bar.className = "toolbar";

    const here = document.createElement("button");
    here.textContent = "New Annotation Here";
    here.onclick = () => {
      const { selection, activeTier } = this.state;
      if (!selection || !activeTier) return;
      const text = prompt("Annotation text:") ?? "";
      this.run(newAnnotationHere(this.ctx, activeTier, selection, text));
      this.state = clearSelection(this.state);
    };
    bar.appendChild(here);

    const after = document.createElement("button");
    after.textContent = "New Annotation After";
    after.onclick = () => {
      const aid = prompt("Append after annotation id:");
      if (!aid || !this.doc) return;
      const text = prompt("Annotation text:") ?? "";
      this.run(newAnnotationAfter(this.ctx, this.doc, aid, text));
    };
    bar.appendChild(after);

    const ontological = document.createElement("button");
    ontological.textContent = "New Ontology Annotation";
    ontological.onclick = () => this.ontologyFlowFromPrompts();
    bar.appendChild(ontological);

    return bar;
  }

  private ontologyFlowFromPrompts(): void {
    if (!this.doc) return;
    const tier = this.state.activeTier ?? prompt("Ontological tier id:");
    const parent = prompt("Parent annotation id:");
    const oid = prompt("Ontology id (from upload):");
    const term = prompt("User-defined term:");
    if (!tier || !parent || !oid || !term) return;
    const profileRef = this.doc.tiers.find((t) => t.id === tier)?.profile_ref;
    if (!profileRef) return;
    this.run(
      this.api.getProfile(profileRef).then((profile) =>
        newOntologyAnnotation(this.ctx, tier, parent, {
          ontologyId: oid,
          profile,
          userTerm: term,
          ontAnnotationId: prompt("Ontology annotation id:") ?? "",
          fillForm: (form) => {
            // Minimal in-page form: one prompt per required property.
            const inputs: Record<string, { iri: string }[]> = {};
            for (const field of form.fields) {
              if (field.minCount > 0) {
                const iri = prompt(`${field.label} (IRI):`) ?? "";
                inputs[field.propertyIri] = iri ? [{ iri }] : [];
              }
            }
            return { id: prompt("New individual id:") ?? "individual", inputs };
          },
        }),
      ),
    );
  }

  private renderDensityStrip(): HTMLElement {
    const doc = this.doc as DocumentView;
    const strip = document.createElement("div");
    strip.className = "density-strip";
    const end = this.scale.toMs(TIMELINE_WIDTH);
    const counts = densityStrip(doc, this.scale.originMs, end, DENSITY_BINS);
    const peak = Math.max(1, ...counts);
    for (const count of counts) {
      const bar = document.createElement("span");
      bar.style.display = "inline-block";
      bar.style.width = `${TIMELINE_WIDTH / DENSITY_BINS}px`;
      bar.style.height = `${(count / peak) * 24}px`;
      bar.style.background = "#2585cc";
      bar.style.verticalAlign = "bottom";
      strip.appendChild(bar);
    }
    return strip;
  }

  private renderTimeline(): HTMLElement {
    const doc = this.doc as DocumentView;
    const layout = layoutTimeline(doc, this.scale, this.state.playhead, this.state.selection);
    const panel = document.createElement("div");
    panel.className = "timeline";
    panel.style.position = "relative";
    panel.style.width = `${TIMELINE_WIDTH}px`;

    panel.onclick = (event) => {
      const rect = panel.getBoundingClientRect();
      this.sync?.clickTimeline(event.clientX - rect.left, this.scale);
    };
    panel.ondblclick = (event) => {
      // Double-click drags out a half-second selection around the click.
      const rect = panel.getBoundingClientRect();
      const ms = this.scale.toMs(event.clientX - rect.left);
      this.state = withSelection(this.state, Math.max(0, ms - 250), ms + 250);
      this.render();
    };

    for (const row of layout.rows) {
      const rowEl = document.createElement("div");
      rowEl.className = "tier-row";
      rowEl.style.position = "relative";
      rowEl.style.height = `${ROW_HEIGHT}px`;
      rowEl.dataset.tier = row.tierId;

      const label = document.createElement("span");
      label.className = "tier-label";
      label.style.paddingLeft = `${row.depth * 12}px`;
      label.textContent = row.tierId + (row.ontological ? " ⚛" : "");
      label.onclick = (event) => {
        event.stopPropagation();
        this.state = withActiveTier(this.state, row.tierId);
        this.render();
      };
      rowEl.appendChild(label);

      for (const block of row.blocks) {
        const el = document.createElement("div");
        el.className = "block";
        el.style.position = "absolute";
        el.style.left = `${block.x}px`;
        el.style.width = `${Math.max(2, block.width)}px`;
        el.style.top = "2px";
        el.style.height = `${ROW_HEIGHT - 4}px`;
        el.textContent = block.label;
        el.title = `${block.annotationId} [${block.beginMs}–${block.endMs} ms]`;
        rowEl.appendChild(el);
      }
      panel.appendChild(rowEl);
    }

    const playhead = document.createElement("div");
    playhead.className = "playhead";
    playhead.style.position = "absolute";
    playhead.style.left = `${layout.playheadX}px`;
    playhead.style.top = "0";
    playhead.style.bottom = "0";
    playhead.style.width = "1px";
    playhead.style.background = "red";
    panel.appendChild(playhead);

    if (layout.selection) {
      const sel = document.createElement("div");
      sel.className = "selection";
      sel.style.position = "absolute";
      sel.style.left = `${layout.selection.x}px`;
      sel.style.width = `${layout.selection.width}px`;
      sel.style.top = "0";
      sel.style.bottom = "0";
      sel.style.background = "rgba(37, 133, 204, 0.2)";
      panel.appendChild(sel);
    }
    return panel;
  }

  private renderGrid(): HTMLElement {
    const doc = this.doc as DocumentView;
    const table = document.createElement("table");
    table.className = "grid";
    for (const row of gridRows(doc, this.state.playhead)) {
      const tr = document.createElement("tr");
      if (row.highlighted) tr.className = "highlight";
      for (const cell of [row.tier, row.annotation, row.label, String(row.begin), String(row.end)]) {
        const td = document.createElement("td");
        td.textContent = cell;
        tr.appendChild(td);
      }
      table.appendChild(tr);
    }
    return table;
  }

  private renderSubtitle(): HTMLElement {
    const doc = this.doc as DocumentView;
    const panel = document.createElement("div");
    panel.className = "subtitle";
    for (const line of subtitleLines(doc, this.state.playhead)) {
      const p = document.createElement("p");
      p.textContent = `${line.tier}: ${line.label}`;
      panel.appendChild(p);
    }
    return panel;
  }

  private renderText(): HTMLElement {
    const doc = this.doc as DocumentView;
    const panel = document.createElement("div");
    panel.className = "text-view";
    for (const { tier } of tierOrder(doc)) {
      const p = document.createElement("p");
      p.textContent = `${tier.id}: ${textView(doc, tier.id)}`;
      panel.appendChild(p);
    }
    return panel;
  }
}

const rootEl = document.getElementById("app");
if (rootEl) {
  new App(rootEl).openFromQuery().catch((err) => {
    rootEl.textContent = String(err);
  });
}
