import { describe, expect, it } from "vitest";

import {
  diffAssignments,
  isSubmittable,
  renderInventoryOptions,
  renderComparison,
  renderResults,
} from "../src/render.js";
import type { DisambiguatePayload } from "../src/types.js";

const annotatedPayload: DisambiguatePayload = {
  sentences: [
    {
      spans: [
        {
          word: "bank",
          pos: "NOUN",
          lemma: "bank",
          position: 0,
          synset_id: "1",
          score: 0.93,
          synonyms: ["bank"],
          hypernyms: ["river"],
        },
        { word: "river", pos: "NOUN", lemma: "river", position: 1 },
        { word: ".", pos: "PUNCT", lemma: ".", position: 2 },
      ],
    },
  ],
};

function container(): HTMLElement {
  const el = document.createElement("div");
  document.body.appendChild(el);
  return el;
}

describe("isSubmittable", () => {
  it("rejects empty and whitespace-only text", () => {
    expect(isSubmittable("")).toBe(false);
    expect(isSubmittable("   \n\t")).toBe(false);
    expect(isSubmittable("bank")).toBe(true);
  });
});

describe("renderInventoryOptions", () => {
  it("lists inventories in API order", () => {
    const select = document.createElement("select");
    renderInventoryOptions(select, [
      { name: "b-first", synset_count: 2, vocabulary_size: 4 },
      { name: "a-second", synset_count: 8, vocabulary_size: 6 },
    ]);
    const values = Array.from(select.options).map((o) => o.value);
    expect(values).toEqual(["b-first", "a-second"]);
    expect(select.disabled).toBe(false);
  });

  it("disables the selector with a message when empty", () => {
    const select = document.createElement("select");
    renderInventoryOptions(select, []);
    expect(select.disabled).toBe(true);
    expect(select.options[0].textContent).toContain("no inventories");
  });
});

describe("renderResults", () => {
  it("underlines exactly the annotated spans", () => {
    const el = container();
    renderResults(el, annotatedPayload);
    const annotated = el.querySelectorAll(".token.annotated");
    expect(annotated).toHaveLength(1);
    expect(annotated[0].childNodes[0].textContent).toBe("bank");
    expect(el.querySelectorAll(".token")).toHaveLength(3);
  });

  it("preserves token order and text", () => {
    const el = container();
    renderResults(el, annotatedPayload);
    const words = Array.from(el.querySelectorAll(".token")).map(
      (t) => t.childNodes[0].textContent
    );
    expect(words).toEqual(["bank", "river", "."]);
  });

  it("shows tooltip content equal to the payload fields", () => {
    const el = container();
    renderResults(el, annotatedPayload);
    const tooltip = el.querySelector(".tooltip")!;
    const span = annotatedPayload.sentences[0].spans[0];
    expect(tooltip.querySelector(".tooltip-lemma span")!.textContent).toBe(span.lemma);
    expect(tooltip.querySelector(".tooltip-synset span")!.textContent).toBe(span.synset_id);
    expect(tooltip.querySelector(".tooltip-score span")!.textContent).toBe(String(span.score));
    expect(tooltip.querySelector(".tooltip-synonyms span")!.textContent).toBe(
      span.synonyms!.join(", ")
    );
    expect(tooltip.querySelector(".tooltip-hypernyms span")!.textContent).toBe(
      span.hypernyms!.join(", ")
    );
  });

  it("renders no underline for an all-abstain payload", () => {
    const el = container();
    renderResults(el, {
      sentences: [
        { spans: [{ word: "x", pos: "X", lemma: "x", position: 0 }] },
      ],
    });
    expect(el.querySelectorAll(".token.annotated")).toHaveLength(0);
    expect(el.querySelectorAll(".tooltip")).toHaveLength(0);
  });

  it("shows an error state for a malformed payload, with no partial render", () => {
    const el = container();
    renderResults(el, { bogus: true } as unknown as DisambiguatePayload);
    expect(el.querySelector(".error-banner")).not.toBeNull();
    expect(el.querySelectorAll(".token")).toHaveLength(0);
  });

  it("applies POS color classes", () => {
    const el = container();
    renderResults(el, annotatedPayload);
    expect(el.querySelectorAll(".pos-NOUN")).toHaveLength(2);
    expect(el.querySelectorAll(".pos-PUNCT")).toHaveLength(1);
  });
});

describe("diffAssignments / renderComparison", () => {
  const other: DisambiguatePayload = JSON.parse(JSON.stringify(annotatedPayload));
  other.sentences[0].spans[0].synset_id = "2";

  it("finds zero flags for identical payloads", () => {
    expect(diffAssignments(annotatedPayload, annotatedPayload)).toEqual([]);
  });

  it("flags positions where assignments differ", () => {
    expect(diffAssignments(annotatedPayload, other)).toEqual([
      { sentence: 0, position: 0 },
    ]);
  });

  it("marks differing tokens in the side-by-side view", () => {
    const el = container();
    renderComparison(el, { payload: annotatedPayload }, { payload: other });
    expect(el.querySelectorAll(".compare-column")).toHaveLength(2);
    expect(el.querySelectorAll(".token.differs")).toHaveLength(2);
  });

  it("renders a partial view with an error panel when one call fails", () => {
    const el = container();
    renderComparison(el, { payload: annotatedPayload }, { error: "boom" });
    expect(el.querySelectorAll(".compare-sparse .token")).toHaveLength(3);
    expect(el.querySelector(".compare-dense .error-panel")!.textContent).toBe("boom");
  });
});
