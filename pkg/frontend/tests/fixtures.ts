/** Hand-built document snapshots matching the service's JSON shape. */

import type { AnnotationView, DocumentView } from "../src/types.js";

export const GOLD = "http://www.u.arizona.edu/~farrar/gold.owl";
export const PROFILE_PATH = "C:\\wabo4.prf";

export const SENTENCE_WORDS = [
  "iw", "pi", "gi", "bmose", "ngoding", "gishep", "neko",
  "zhe", "anwe", "gda", "wisnemen",
];
export const SENTENCE = SENTENCE_WORDS.join(" ");

export function emptyDocument(): DocumentView {
  return {
    id: "file:///C:/empty.eaf",
    time_unit: "milliseconds",
    media: [
      {
        media_url: "file:///C:/empty.wav",
        mime_type: "audio/x-wav",
        time_origin_offset: 0,
        extracted_from: null,
      },
    ],
    linguistic_types: [],
    tiers: [],
    slots: {},
    time_order: [],
    annotations: [],
    profiles: [],
  };
}

/** The six-tier sentence document: an alignable sentence at [0, 5000],
 * a translation, an eleven-word subdivision chain, and association
 * chains below it down to the ontological tier. */
export function sentenceDocument(): DocumentView {
  const annotations: AnnotationView[] = [];
  let nextId = 1;
  const fresh = () => `a${nextId++}`;

  const sentence = fresh();
  annotations.push({
    id: sentence,
    tier: "Orthographic",
    kind: "alignable",
    value: { kind: "string", text: SENTENCE },
    begin_slot: "ts1",
    end_slot: "ts2",
    parent: null,
    extent: { begin: 0, end: 5000 },
  });
  annotations.push({
    id: fresh(),
    tier: "Translation",
    kind: "referring",
    value: { kind: "string", text: "then he used to walk there one morning" },
    ref_annotation: sentence,
    previous: null,
    extent: { begin: 0, end: 5000 },
  });
  let previous: string | null = null;
  const wordIds: string[] = [];
  for (const word of SENTENCE_WORDS) {
    const id = fresh();
    annotations.push({
      id,
      tier: "Words",
      kind: "referring",
      value: { kind: "string", text: word },
      ref_annotation: sentence,
      previous,
      extent: { begin: 0, end: 5000 },
    });
    previous = id;
    wordIds.push(id);
  }
  const parseIds = wordIds.map((word, i) => {
    const id = fresh();
    annotations.push({
      id,
      tier: "Parse",
      kind: "referring",
      value: { kind: "string", text: `${SENTENCE_WORDS[i]}-stem` },
      ref_annotation: word,
      previous: null,
      extent: { begin: 0, end: 5000 },
    });
    return id;
  });
  const glossIds = parseIds.map((parse, i) => {
    const id = fresh();
    annotations.push({
      id,
      tier: "Gloss",
      kind: "referring",
      value: { kind: "string", text: `gloss-${SENTENCE_WORDS[i]}` },
      ref_annotation: parse,
      previous: null,
      extent: { begin: 0, end: 5000 },
    });
    return id;
  });
  glossIds.forEach((gloss, i) => {
    annotations.push({
      id: fresh(),
      tier: "Ontology",
      kind: "referring",
      value: {
        kind: "ontology",
        ont_annotation_id: `i${i}`,
        user_defined_term: i === 6 ? "PV" : "PC",
        instances: [`${GOLD}#${i === 6 ? "Preverb" : "Participle"}`],
        descriptions: [],
      },
      ref_annotation: gloss,
      previous: null,
      extent: { begin: 0, end: 5000 },
    });
  });

  return {
    id: "file:///C:/wabo4.eaf",
    time_unit: "milliseconds",
    media: [
      {
        media_url: "file:///C:/wabo4.wav",
        mime_type: "audio/x-wav",
        time_origin_offset: 0,
        extracted_from: null,
      },
    ],
    linguistic_types: [
      { id: "gloss", stereotype: "Symbolic_Association", ontological: false, time_alignable: false },
      { id: "ontology", stereotype: "Symbolic_Association", ontological: true, time_alignable: false },
      { id: "orthographic", stereotype: "None", ontological: false, time_alignable: true },
      { id: "parse", stereotype: "Symbolic_Subdivision", ontological: false, time_alignable: false },
      { id: "translation", stereotype: "Symbolic_Association", ontological: false, time_alignable: false },
      { id: "words", stereotype: "Symbolic_Subdivision", ontological: false, time_alignable: false },
    ],
    tiers: [
      { id: "Gloss", parent: "Parse", type: "gloss", profile_ref: null },
      { id: "Ontology", parent: "Gloss", type: "ontology", profile_ref: PROFILE_PATH },
      { id: "Orthographic", parent: null, type: "orthographic", profile_ref: null },
      { id: "Parse", parent: "Words", type: "parse", profile_ref: null },
      { id: "Translation", parent: "Orthographic", type: "translation", profile_ref: null },
      { id: "Words", parent: "Orthographic", type: "words", profile_ref: null },
    ],
    slots: { ts1: 0, ts2: 5000 },
    time_order: ["ts1", "ts2"],
    annotations,
    profiles: [PROFILE_PATH],
  };
}
