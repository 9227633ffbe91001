import { describe, expect, it } from "vitest";

import { densityStrip, layoutTimeline, tierOrder } from "../src/timeline.js";
import { TimeScale } from "../src/timescale.js";
import { emptyDocument, sentenceDocument, SENTENCE_WORDS } from "./fixtures.js";

const scale = TimeScale.fit(0, 5000, 1000);

describe("timeline layout", () => {
  it("shows one row per tier in hierarchy order", () => {
    const layout = layoutTimeline(sentenceDocument(), scale, 0, null);
    expect(layout.rows.map((r) => r.tierId)).toEqual([
      "Orthographic", "Translation", "Words", "Parse", "Gloss", "Ontology",
    ]);
    expect(layout.rows.map((r) => r.depth)).toEqual([0, 1, 1, 2, 3, 4]);
  });

  it("renders an empty document with no tier rows", () => {
    const layout = layoutTimeline(emptyDocument(), scale, 0, null);
    expect(layout.rows).toEqual([]);
  });

  it("nests per-word blocks inside the sentence block", () => {
    const layout = layoutTimeline(sentenceDocument(), scale, 0, null);
    const sentenceRow = layout.rows.find((r) => r.tierId === "Orthographic")!;
    const wordsRow = layout.rows.find((r) => r.tierId === "Words")!;
    expect(sentenceRow.blocks).toHaveLength(1);
    const sentence = sentenceRow.blocks[0];
    expect(wordsRow.blocks).toHaveLength(SENTENCE_WORDS.length);
    expect(wordsRow.blocks.map((b) => b.label)).toEqual(SENTENCE_WORDS);
    for (const block of wordsRow.blocks) {
      expect(block.x).toBeGreaterThanOrEqual(sentence.x - 1e-6);
      expect(block.x + block.width).toBeLessThanOrEqual(sentence.x + sentence.width + 1e-6);
    }
    // consecutive word blocks tile the sentence without overlap
    for (let i = 1; i < wordsRow.blocks.length; i += 1) {
      expect(wordsRow.blocks[i].x).toBeCloseTo(
        wordsRow.blocks[i - 1].x + wordsRow.blocks[i - 1].width,
        6,
      );
    }
  });

  it("keeps association tiers on the inherited extent", () => {
    const doc = sentenceDocument();
    const layout = layoutTimeline(doc, scale, 0, null);
    const translation = layout.rows.find((r) => r.tierId === "Translation")!.blocks[0];
    const sentence = layout.rows.find((r) => r.tierId === "Orthographic")!.blocks[0];
    expect(translation.x).toBeCloseTo(sentence.x);
    expect(translation.width).toBeCloseTo(sentence.width);
    // the gloss chain sits under its word's slice
    const words = layout.rows.find((r) => r.tierId === "Words")!.blocks;
    const glosses = layout.rows.find((r) => r.tierId === "Gloss")!.blocks;
    expect(glosses).toHaveLength(words.length);
    for (let i = 0; i < words.length; i += 1) {
      expect(glosses[i].x).toBeCloseTo(words[i].x, 6);
      expect(glosses[i].width).toBeCloseTo(words[i].width, 6);
    }
  });

  it("scales block pixel extents proportionally to time extents", () => {
    const doc = sentenceDocument();
    const zoomed = new TimeScale(scale.originMs, scale.pxPerMs * 3);
    const before = layoutTimeline(doc, scale, 0, null);
    const after = layoutTimeline(doc, zoomed, 0, null);
    for (let r = 0; r < before.rows.length; r += 1) {
      for (let b = 0; b < before.rows[r].blocks.length; b += 1) {
        expect(after.rows[r].blocks[b].width).toBeCloseTo(
          before.rows[r].blocks[b].width * 3,
          6,
        );
      }
    }
  });

  it("positions playhead and selection through the same mapping", () => {
    const layout = layoutTimeline(
      sentenceDocument(), scale, 2500, { begin: 1000, end: 2000 },
    );
    expect(layout.playheadX).toBeCloseTo(scale.toPx(2500));
    expect(layout.selection!.x).toBeCloseTo(scale.toPx(1000));
    expect(layout.selection!.width).toBeCloseTo(scale.spanPx(1000));
  });
});

describe("density strip", () => {
  it("counts annotations per bin", () => {
    const doc = sentenceDocument();
    const counts = densityStrip(doc, 0, 5000, 10);
    expect(counts).toHaveLength(10);
    // every bin inside the sentence holds at least the sentence itself
    for (const count of counts) {
      expect(count).toBeGreaterThanOrEqual(1);
    }
    expect(densityStrip(emptyDocument(), 0, 5000, 10)).toEqual(new Array(10).fill(0));
  });
});
