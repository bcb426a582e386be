/** Wire types mirroring the disambiguation service's JSON payloads. */

export interface SpanPayload {
  word: string;
  pos: string;
  lemma: string;
  position: number;
  /* present only when the span received a sense */
  synset_id?: string;
  score?: number;
  synonyms?: string[];
  hypernyms?: string[];
}

export interface SentencePayload {
  spans: SpanPayload[];
}

export interface DisambiguatePayload {
  sentences: SentencePayload[];
}

export interface InventoryInfo {
  name: string;
  synset_count: number;
  vocabulary_size: number;
}

export type Method = "sparse" | "dense";
