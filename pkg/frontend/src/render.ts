// DOM rendering of a ViewState. Kept thin: all behavior lives in the
// controller, all ordering decisions in the grouping.

import { Suggestion } from "./api.js";
import { ViewState } from "./state.js";

export interface Handlers {
  onSelect(suggestion: Suggestion): void;
  onShowComponent(componentId: number): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

export function renderView(root: HTMLElement, state: ViewState, handlers: Handlers): void {
  root.replaceChildren();

  if (state.error) {
    root.appendChild(el("div", "banner error", state.error));
  }
  if (!state.query) {
    root.appendChild(el("p", "hint",
      "Type a term to see its variants and the documents they occur in."));
    return;
  }

  const heading = el("div", "query-heading");
  heading.appendChild(el("h2", undefined, state.query));
  if (state.normalized && state.normalized !== state.query) {
    heading.appendChild(el("span", "normalized", `normalized: ${state.normalized}`));
  }
  root.appendChild(heading);

  if (state.groups.length === 0 && !state.error) {
    root.appendChild(el("p", "hint", "No suggestions for this term."));
  }

  for (const group of state.groups) {
    const section = el("section", `group group-${group.key}`);
    section.appendChild(el("h3", "group-label", group.label));
    const list = el("ul", "suggestions");
    for (const suggestion of group.entries) {
      list.appendChild(renderSuggestion(suggestion, group.key, handlers));
    }
    section.appendChild(list);
    root.appendChild(section);
  }

  if (state.documents.length > 0) {
    root.appendChild(renderDocuments(state));
  }
}

function renderSuggestion(s: Suggestion, groupKey: string, handlers: Handlers): HTMLElement {
  const item = el("li", "suggestion");
  const button = el("button", "term", s.words);
  button.addEventListener("click", () => handlers.onSelect(s));
  item.appendChild(button);
  item.appendChild(el("span", `badge badge-${groupKey}`, badgeText(s)));
  item.appendChild(el("span", "doc-count", `${s.doc_count} doc${s.doc_count === 1 ? "" : "s"}`));
  const compLink = el("a", "component-link", "component");
  compLink.href = "#";
  compLink.addEventListener("click", (event) => {
    event.preventDefault();
    handlers.onShowComponent(s.component_id);
  });
  item.appendChild(compLink);
  return item;
}

function badgeText(s: Suggestion): string {
  if (s.uniterm_hits !== null) {
    return `${s.uniterm_hits} uniterms`;
  }
  if (s.relation_path.length === 0) {
    return "exact";
  }
  return s.relation_path.join(" + ");
}

function renderDocuments(state: ViewState): HTMLElement {
  const panel = el("section", "documents");
  const title = state.selectedTerm ? `Documents for "${state.selectedTerm.words}"` : "Documents";
  panel.appendChild(el("h3", undefined, title));
  const list = el("ul");
  for (const row of state.documents) {
    const item = el("li", "doc-row");
    item.appendChild(el("span", "doc-id", row.doc_id));
    item.appendChild(el("span", "doc-occ", `×${row.occurrences}`));
    const titleText = row.metadata["title"];
    if (titleText) {
      item.appendChild(el("span", "doc-title", titleText));
    }
    list.appendChild(item);
  }
  panel.appendChild(list);
  return panel;
}

export function renderComponentView(
  root: HTMLElement,
  componentId: number,
  labelId: number,
  members: { term_id: number; words: string; degree: number }[],
): void {
  root.replaceChildren();
  root.appendChild(el("h3", undefined, `Component ${componentId}`));
  const list = el("ul", "component-members");
  for (const member of members) {
    const item = el("li", member.term_id === labelId ? "member label" : "member");
    item.appendChild(el("span", "member-words", member.words));
    item.appendChild(el("span", "member-degree", `degree ${member.degree}`));
    if (member.term_id === labelId) {
      item.appendChild(el("span", "label-mark", "label"));
    }
    list.appendChild(item);
  }
  root.appendChild(list);
}
