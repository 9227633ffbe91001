import { describe, expect, it } from "vitest";

import { buildInstanceForm, formAssertions, formIsEmpty } from "../src/forms.js";
import type { PropertyView } from "../src/types.js";

const GOLD = "http://www.u.arizona.edu/~farrar/gold.owl";

function property(overrides: Partial<PropertyView>): PropertyView {
  return {
    iri: `${GOLD}#hasFeature`,
    kind: "object",
    label: "hasFeature",
    min_count: null,
    max_count: null,
    all_values_from: null,
    some_values_from: null,
    has_values: [],
    ...overrides,
  };
}

describe("instance forms", () => {
  it("derives one field per applicable property", () => {
    const form = buildInstanceForm(`${GOLD}#Noun`, [
      property({ iri: `${GOLD}#hasGender`, label: "hasGender", min_count: 1, max_count: 1 }),
      property({ iri: `${GOLD}#hasNote`, label: "hasNote", kind: "datatype" }),
    ]);
    expect(form.fields.map((f) => f.label)).toEqual(["hasGender", "hasNote"]);
    expect(form.fields[0].minCount).toBe(1);
    expect(form.fields[0].maxCount).toBe(1);
    expect(formIsEmpty(form)).toBe(false);
  });

  it("treats a form with no required or fixed values as empty", () => {
    const form = buildInstanceForm(`${GOLD}#Noun`, [
      property({ min_count: 0, max_count: 3 }),
    ]);
    expect(formIsEmpty(form)).toBe(true);
  });

  it("merges fixed values with user input and validates counts", () => {
    const form = buildInstanceForm(`${GOLD}#Noun`, [
      property({
        iri: `${GOLD}#hasClass`,
        label: "hasClass",
        min_count: 2,
        max_count: 2,
        has_values: [`${GOLD}#Inanimate`],
      }),
    ]);
    const short = formAssertions(form, {});
    expect(short.problems).toHaveLength(1);
    expect(short.problems[0]).toContain("at least 2");

    const filled = formAssertions(form, {
      [`${GOLD}#hasClass`]: [{ iri: `${GOLD}#Animate` }],
    });
    expect(filled.problems).toEqual([]);
    expect(filled.assertions[`${GOLD}#hasClass`]).toEqual([
      { iri: `${GOLD}#Inanimate` },
      { iri: `${GOLD}#Animate` },
    ]);
  });

  it("flags overfilled fields and unknown properties", () => {
    const form = buildInstanceForm(`${GOLD}#Noun`, [
      property({ iri: `${GOLD}#hasGender`, label: "hasGender", max_count: 1 }),
    ]);
    const { problems } = formAssertions(form, {
      [`${GOLD}#hasGender`]: [{ iri: `${GOLD}#M` }, { iri: `${GOLD}#F` }],
      [`${GOLD}#notApplicable`]: [{ iri: `${GOLD}#X` }],
    });
    expect(problems.some((p) => p.includes("at most 1"))).toBe(true);
    expect(problems.some((p) => p.includes("not applicable"))).toBe(true);
  });
});
