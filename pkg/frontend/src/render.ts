import type {
  DisambiguatePayload,
  InventoryInfo,
  SentencePayload,
  SpanPayload,
} from "./types.js";

/** Submission is allowed only for text with visible content. */
export function isSubmittable(text: string): boolean {
  return text.trim().length > 0;
}

export function renderInventoryOptions(
  select: HTMLSelectElement,
  inventories: InventoryInfo[]
): void {
  select.innerHTML = "";
  if (inventories.length === 0) {
    const option = document.createElement("option");
    option.textContent = "no inventories loaded";
    select.appendChild(option);
    select.disabled = true;
    return;
  }
  select.disabled = false;
  for (const inventory of inventories) {
    const option = document.createElement("option");
    option.value = inventory.name;
    option.textContent = `${inventory.name} (${inventory.synset_count} synsets)`;
    select.appendChild(option);
  }
}

function tooltipFor(span: SpanPayload): HTMLElement {
  const tooltip = document.createElement("div");
  tooltip.className = "tooltip";
  const rows: Array<[string, string]> = [
    ["lemma", span.lemma],
    ["synset", span.synset_id ?? ""],
    ["score", String(span.score ?? "")],
    ["synonyms", (span.synonyms ?? []).join(", ")],
    ["hypernyms", (span.hypernyms ?? []).join(", ")],
  ];
  for (const [label, value] of rows) {
    const row = document.createElement("div");
    row.className = `tooltip-${label}`;
    const name = document.createElement("strong");
    name.textContent = `${label}: `;
    const content = document.createElement("span");
    content.textContent = value;
    row.append(name, content);
    tooltip.appendChild(row);
  }
  return tooltip;
}

export function renderSpan(span: SpanPayload): HTMLElement {
  const el = document.createElement("span");
  el.className = `token pos-${span.pos}`;
  el.textContent = span.word;
  el.dataset.position = String(span.position);
  if (span.synset_id !== undefined) {
    el.classList.add("annotated"); // underlined via CSS
    el.dataset.synsetId = span.synset_id;
    el.appendChild(tooltipFor(span));
  }
  return el;
}

export function renderSentence(sentence: SentencePayload): HTMLElement {
  const el = document.createElement("p");
  el.className = "sentence";
  sentence.spans.forEach((span, i) => {
    if (i > 0) el.appendChild(document.createTextNode(" "));
    el.appendChild(renderSpan(span));
  });
  return el;
}

/**
 * Replace the container's content with the annotated text view. Token order
 * follows the payload; every displayed detail comes from payload fields.
 */
export function renderResults(container: HTMLElement, payload: DisambiguatePayload): void {
  if (!payload || !Array.isArray(payload.sentences)) {
    renderError(container, "malformed response from the disambiguation service");
    return;
  }
  container.innerHTML = "";
  for (const sentence of payload.sentences) {
    container.appendChild(renderSentence(sentence));
  }
}

export function renderError(container: HTMLElement, message: string, onRetry?: () => void): void {
  container.innerHTML = "";
  const banner = document.createElement("div");
  banner.className = "error-banner";
  banner.textContent = message;
  if (onRetry) {
    const retry = document.createElement("button");
    retry.textContent = "retry";
    retry.addEventListener("click", onRetry);
    banner.appendChild(retry);
  }
  container.appendChild(banner);
}

/** Positions (per sentence) where two method payloads assign different senses. */
export function diffAssignments(
  a: DisambiguatePayload,
  b: DisambiguatePayload
): Array<{ sentence: number; position: number }> {
  const flags: Array<{ sentence: number; position: number }> = [];
  const count = Math.max(a.sentences.length, b.sentences.length);
  for (let si = 0; si < count; si++) {
    const spansA = a.sentences[si]?.spans ?? [];
    const spansB = b.sentences[si]?.spans ?? [];
    const positions = Math.max(spansA.length, spansB.length);
    for (let p = 0; p < positions; p++) {
      if ((spansA[p]?.synset_id ?? null) !== (spansB[p]?.synset_id ?? null)) {
        flags.push({ sentence: si, position: p });
      }
    }
  }
  return flags;
}

export interface MethodOutcome {
  payload?: DisambiguatePayload;
  error?: string;
}

/** Side-by-side sparse/dense view with differing assignments flagged. */
export function renderComparison(
  container: HTMLElement,
  sparse: MethodOutcome,
  dense: MethodOutcome
): void {
  container.innerHTML = "";
  const flags =
    sparse.payload && dense.payload ? diffAssignments(sparse.payload, dense.payload) : [];
  const flagged = new Set(flags.map((f) => `${f.sentence}:${f.position}`));
  for (const [label, outcome] of [
    ["sparse", sparse],
    ["dense", dense],
  ] as const) {
    const column = document.createElement("div");
    column.className = `compare-column compare-${label}`;
    const heading = document.createElement("h3");
    heading.textContent = label;
    column.appendChild(heading);
    if (outcome.error !== undefined || !outcome.payload) {
      renderColumnError(column, outcome.error ?? "no response");
    } else {
      outcome.payload.sentences.forEach((sentence, si) => {
        const row = renderSentence(sentence);
        for (const el of Array.from(row.querySelectorAll<HTMLElement>(".token"))) {
          if (flagged.has(`${si}:${el.dataset.position}`)) {
            el.classList.add("differs");
          }
        }
        column.appendChild(row);
      });
    }
    container.appendChild(column);
  }
}

function renderColumnError(column: HTMLElement, message: string): void {
  const panel = document.createElement("div");
  panel.className = "error-panel";
  panel.textContent = message;
  column.appendChild(panel);
}
