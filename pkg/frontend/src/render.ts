// DOM rendering: the document is rebuilt from the view model on every change,
// so what is on screen is always a function of the API responses.

import { canRate, type ConversationViewModel, type TurnView } from "./state";
import type { Candidate, MemoryEstimate } from "./types";

const CYPHER_KEYWORDS =
  /\b(MATCH|RETURN|WITH|AS|ORDER BY|DESC|ASC|LIMIT|CALL|YIELD|count|id)\b/g;

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function highlightCypher(script: string): string {
  return escapeHtml(script).replace(
    CYPHER_KEYWORDS,
    (kw) => `<span class="kw">${kw}</span>`,
  );
}

function renderEstimates(estimates: MemoryEstimate[]): string {
  if (!estimates.length) return "";
  const chips = estimates
    .map(
      (e) =>
        `<span class="estimate" title="nodes ${e.nodeCount}, relationships ` +
        `${e.relationshipCount}">${escapeHtml(e.requiredMemory)}</span>`,
    )
    .join(" ");
  return `<div class="estimates">memory: ${chips}</div>`;
}

function renderResult(turn: TurnView): string {
  if (!turn.result) return "";
  const { columns, rows, estimates } = turn.result;
  const header = columns.map((c) => `<th>${escapeHtml(c)}</th>`).join("");
  const body = rows
    .map(
      (row) =>
        `<tr>${row
          .map((cell) => `<td>${escapeHtml(cell === null ? "null" : String(cell))}</td>`)
          .join("")}</tr>`,
    )
    .join("");
  return (
    `${renderEstimates(estimates)}` +
    `<table class="result"><thead><tr>${header}</tr></thead>` +
    `<tbody>${body}</tbody></table>` +
    `<div class="rowcount">${rows.length} row${rows.length === 1 ? "" : "s"}</div>`
  );
}

function renderCandidate(turn: TurnView, candidate: Candidate): string {
  const chosen = turn.chosenId === candidate.id ? " chosen" : "";
  const algo = candidate.algorithm
    ? `<span class="badge">${escapeHtml(candidate.algorithm)}</span>`
    : `<span class="badge">${escapeHtml(candidate.kind)}</span>`;
  return `
    <div class="candidate${chosen}" data-candidate="${candidate.id}">
      <div class="candidate-head">
        ${algo}
        <span class="score">score ${candidate.score.toFixed(1)}</span>
        <button class="copy" data-action="copy" data-turn="${turn.turnId}"
                data-candidate="${candidate.id}">copy</button>
        <button data-action="edit" data-turn="${turn.turnId}"
                data-candidate="${candidate.id}">edit</button>
        <button data-action="execute" data-turn="${turn.turnId}"
                data-candidate="${candidate.id}">run</button>
      </div>
      <div class="explanation">${escapeHtml(candidate.explanation)}</div>
      <pre class="script"><code>${highlightCypher(candidate.script)}</code></pre>
      <textarea class="editor hidden" data-editor="${candidate.id}"
                rows="4">${escapeHtml(candidate.script)}</textarea>
    </div>`;
}

function renderStars(turn: TurnView): string {
  const enabled = canRate(turn);
  const buttons = [1, 2, 3, 4, 5]
    .map((n) => {
      const lit = turn.stars !== null && n <= turn.stars ? " lit" : "";
      const disabled = enabled ? "" : " disabled";
      return (
        `<button class="star${lit}" data-action="rate" data-turn="${turn.turnId}"` +
        ` data-stars="${n}"${disabled}>★</button>`
      );
    })
    .join("");
  const note =
    turn.stars !== null
      ? `<span class="rated">rated ${turn.stars}/5</span>`
      : "";
  return `<div class="stars" data-rated="${turn.stars !== null}">${buttons}${note}</div>`;
}

function renderDiagnostics(turn: TurnView): string {
  if (!turn.diagnostics) return "";
  const productions = turn.diagnostics.productions.join(", ");
  return (
    `<div class="diagnostics">No interpretation found. ` +
    `Closest productions: ${escapeHtml(productions)}</div>`
  );
}

function renderTurn(turn: TurnView): string {
  const error = turn.error
    ? `<div class="error">${escapeHtml(turn.error)}</div>`
    : "";
  const candidates = turn.candidates.map((c) => renderCandidate(turn, c)).join("");
  return `
    <section class="turn" data-turn="${turn.turnId}">
      <div class="question">${escapeHtml(turn.question)}</div>
      ${renderDiagnostics(turn)}
      <div class="candidates">${candidates}</div>
      ${error}
      ${renderResult(turn)}
      ${turn.candidates.length ? renderStars(turn) : ""}
    </section>`;
}

function renderSidebar(state: ConversationViewModel): string {
  if (!state.schema || !state.summary) {
    return `<aside class="sidebar">loading schema…</aside>`;
  }
  const labels = state.schema.labels
    .map(
      (label) =>
        `<li>${escapeHtml(label)} <span class="count">` +
        `${state.summary!.labels[label] ?? 0}</span></li>`,
    )
    .join("");
  const types = Object.entries(state.schema.relationship_types)
    .map(
      ([name, ends]) =>
        `<li><code>${escapeHtml(name)}</code><br>` +
        `<small>${escapeHtml(ends.source)} → ${escapeHtml(ends.target)}</small></li>`,
    )
    .join("");
  return `
    <aside class="sidebar">
      <h2>Graph</h2>
      <p>${state.summary.node_count} nodes · ${state.summary.relationship_count} relationships</p>
      <h3>Labels</h3><ul>${labels}</ul>
      <h3>Relationships</h3><ul class="types">${types}</ul>
      <p class="lexicon">vocabulary v${state.lexiconVersion}</p>
    </aside>`;
}

export function renderApp(state: ConversationViewModel): string {
  const turns = state.turns.map(renderTurn).join("");
  const globalError = state.globalError
    ? `<div class="error global">${escapeHtml(state.globalError)}</div>`
    : "";
  const busy = state.busy ? " busy" : "";
  return `
    <div class="app${busy}">
      ${renderSidebar(state)}
      <main class="chat">
        <div class="turns">${turns}</div>
        ${globalError}
        <form class="ask" data-action="ask">
          <input name="question" type="text" autocomplete="off"
                 placeholder="Ask a question about the graph…">
          <button type="submit" ${state.busy ? "disabled" : ""}>ask</button>
        </form>
      </main>
    </div>`;
}
