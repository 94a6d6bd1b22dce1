// UI state machine: search, drill-down and history, independent of the DOM.
// Suggestions are grouped by relation tightness in the same order the
// backend ranks them; drill-downs snapshot the current view so back()
// restores it without refetching.

import { RefineApi, Suggestion, DocumentRow } from "./api.js";

/** Group keys in display order, tightest relation first. */
export const GROUP_ORDER = [
  "exact",
  "orth",
  "sub_syn",
  "ins",
  "exp_l",
  "exp_r",
  "lr_exp",
  "combination",
] as const;

export type GroupKey = (typeof GROUP_ORDER)[number];

export const GROUP_LABELS: Record<GroupKey, string> = {
  exact: "exact match",
  orth: "orthographic",
  sub_syn: "synonym",
  ins: "insertion",
  exp_l: "left-expansion",
  exp_r: "head-expansion",
  lr_exp: "substring",
  combination: "uniterm combination",
};

// Loosest relation on the path decides the group, mirroring the rank order.
const TIGHTNESS: Record<string, number> = {
  orth: 0,
  sub_syn: 1,
  ins: 2,
  exp_l: 3,
  exp_r: 4,
  lr_exp: 5,
};

export function groupOf(s: Suggestion): GroupKey {
  if (s.uniterm_hits !== null) {
    return "combination";
  }
  if (s.relation_path.length === 0) {
    return "exact";
  }
  let loosest: GroupKey = "orth";
  let worst = -1;
  for (const kind of s.relation_path) {
    const rank = TIGHTNESS[kind] ?? 5;
    if (rank > worst) {
      worst = rank;
      loosest = kind as GroupKey;
    }
  }
  return loosest;
}

export interface SuggestionGroup {
  key: GroupKey;
  label: string;
  entries: Suggestion[];
}

export interface ViewState {
  query: string;
  normalized: string;
  groups: SuggestionGroup[];
  selectedTerm: Suggestion | null;
  documents: DocumentRow[];
  error: string | null;
}

export function emptyView(): ViewState {
  return { query: "", normalized: "", groups: [], selectedTerm: null, documents: [], error: null };
}

export function groupSuggestions(suggestions: Suggestion[]): SuggestionGroup[] {
  const byKey = new Map<GroupKey, Suggestion[]>();
  for (const s of suggestions) {
    const key = groupOf(s);
    const bucket = byKey.get(key);
    if (bucket) {
      bucket.push(s);
    } else {
      byKey.set(key, [s]);
    }
  }
  const groups: SuggestionGroup[] = [];
  for (const key of GROUP_ORDER) {
    const entries = byKey.get(key);
    if (entries) {
      groups.push({ key, label: GROUP_LABELS[key], entries });
    }
  }
  return groups;
}

export type Listener = (state: ViewState) => void;

export class RefineController {
  private readonly api: RefineApi;
  private view: ViewState = emptyView();
  private history: ViewState[] = [];
  private requestSeq = 0;
  private listener: Listener | null = null;

  constructor(api: RefineApi) {
    this.api = api;
  }

  onChange(listener: Listener): void {
    this.listener = listener;
  }

  get state(): ViewState {
    return this.view;
  }

  get historyDepth(): number {
    return this.history.length;
  }

  canGoBack(): boolean {
    return this.history.length > 0;
  }

  private emit(): void {
    if (this.listener) {
      this.listener(this.view);
    }
  }

  private setView(view: ViewState): void {
    this.view = view;
    this.emit();
  }

  /** Run a query; stale responses (superseded by a newer call) are dropped. */
  async search(query: string): Promise<void> {
    const trimmed = query.trim();
    if (!trimmed) {
      this.setView({ ...this.view, error: "type a term to refine" });
      return;
    }
    const seq = ++this.requestSeq;
    try {
      const data = await this.api.refine(trimmed);
      if (seq !== this.requestSeq) {
        return; // a newer search already went out
      }
      this.setView({
        query: trimmed,
        normalized: data.normalized,
        groups: groupSuggestions(data.suggestions),
        selectedTerm: null,
        documents: [],
        error: null,
      });
    } catch (err) {
      if (seq !== this.requestSeq) {
        return;
      }
      this.setView({ ...this.view, error: describeError(err) });
    }
  }

  /** Re-refine on a suggestion: push the current view, then one refine call
      plus the document panel for the selected term. */
  async drillDown(suggestion: Suggestion): Promise<void> {
    const snapshot = this.view;
    const seq = ++this.requestSeq;
    try {
      const [data, docs] = await Promise.all([
        this.api.refine(suggestion.words),
        this.api.termDocs(suggestion.term_id),
      ]);
      if (seq !== this.requestSeq) {
        return;
      }
      this.history.push(snapshot);
      this.setView({
        query: suggestion.words,
        normalized: data.normalized,
        groups: groupSuggestions(data.suggestions),
        selectedTerm: suggestion,
        documents: docs.documents,
        error: null,
      });
    } catch (err) {
      if (seq !== this.requestSeq) {
        return;
      }
      // state unchanged apart from the error banner
      this.setView({ ...snapshot, error: describeError(err) });
    }
  }

  /** Pop exactly one history entry and restore it, without refetching. */
  back(): boolean {
    const previous = this.history.pop();
    if (!previous) {
      return false;
    }
    this.requestSeq++; // anything in flight is now stale
    this.setView(previous);
    return true;
  }

  reset(): void {
    this.history = [];
    this.requestSeq++;
    this.setView(emptyView());
  }
}

export function describeError(err: unknown): string {
  if (err instanceof Error) {
    return err.message;
  }
  return String(err);
}
