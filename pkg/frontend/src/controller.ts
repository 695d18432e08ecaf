// Wires the API client, the view-model fold and the renderer together.
// Requests are queued so only one is in flight per session, mirroring the
// service's per-session serialization.

import { ApiClient } from "./api";
import { renderApp } from "./render";
import {
  applyBusy,
  applyExecute,
  applyFeedback,
  applyLexiconVersion,
  applyQuestion,
  applySchema,
  applySession,
  applySummary,
  applyTurnError,
  canRate,
  initialState,
  type ConversationViewModel,
} from "./state";

export class Controller {
  state: ConversationViewModel = initialState();
  private queue: Promise<unknown> = Promise.resolve();

  constructor(
    private readonly api: ApiClient,
    private readonly root: HTMLElement,
  ) {}

  async start(): Promise<void> {
    this.render();
    await this.enqueue(async () => {
      const [schema, summary, sessionId] = [
        await this.api.getSchema(),
        await this.api.getSummary(),
        await this.api.createSession(),
      ];
      this.state = applySession(this.state, sessionId);
      this.state = applySchema(this.state, schema);
      this.state = applySummary(this.state, summary);
    });
  }

  /** Resolves once every queued request has settled (used by tests). */
  idle(): Promise<unknown> {
    return this.queue;
  }

  // every user action funnels through the queue: one request at a time
  private enqueue<T>(task: () => Promise<T>): Promise<T | undefined> {
    const run = this.queue.then(async () => {
      this.state = applyBusy(this.state, true);
      this.render();
      try {
        return await task();
      } finally {
        this.state = applyBusy(this.state, false);
        this.render();
      }
    });
    this.queue = run.catch(() => undefined);
    return run;
  }

  submitQuestion(text: string): Promise<unknown> {
    const trimmed = text.trim();
    if (!trimmed || !this.state.sessionId) return Promise.resolve();
    return this.enqueue(async () => {
      try {
        const response = await this.api.postQuestion(this.state.sessionId!, trimmed);
        this.state = applyQuestion(this.state, trimmed, response);
      } catch (error) {
        this.state = applyTurnError(this.state, null, String((error as Error).message));
      }
    });
  }

  chooseAndExecute(
    turnId: number,
    candidateId: string,
    editedScript?: string,
  ): Promise<unknown> {
    if (!this.state.sessionId) return Promise.resolve();
    return this.enqueue(async () => {
      try {
        const turn = this.state.turns.find((t) => t.turnId === turnId);
        const original = turn?.candidates.find((c) => c.id === candidateId)?.script;
        const edited =
          editedScript !== undefined && editedScript.trim() !== original?.trim();
        const response = edited
          ? await this.api.executeRawScript(this.state.sessionId!, editedScript!)
          : await this.api.executeCandidate(this.state.sessionId!, turnId, candidateId);
        this.state = applyExecute(
          this.state,
          turnId,
          edited ? null : candidateId,
          response,
        );
      } catch (error) {
        this.state = applyTurnError(this.state, turnId, String((error as Error).message));
      }
    });
  }

  rateTurn(turnId: number, stars: number): Promise<unknown> {
    const turn = this.state.turns.find((t) => t.turnId === turnId);
    if (!turn || !canRate(turn) || !this.state.sessionId) return Promise.resolve();
    return this.enqueue(async () => {
      try {
        await this.api.recordFeedback(this.state.sessionId!, turnId, stars);
        this.state = applyFeedback(this.state, turnId, stars);
      } catch (error) {
        this.state = applyTurnError(this.state, turnId, String((error as Error).message));
      }
    });
  }

  addSynonym(property: string, surface: string, canonical: string): Promise<unknown> {
    if (!this.state.sessionId) return Promise.resolve();
    return this.enqueue(async () => {
      const response = await this.api.addSynonym(
        this.state.sessionId!,
        property,
        surface,
        canonical,
      );
      this.state = applyLexiconVersion(this.state, response.lexicon_version);
    });
  }

  render(): void {
    this.root.innerHTML = renderApp(this.state);
  }

  // central event delegation keeps rendering stateless
  attach(): void {
    this.root.addEventListener("submit", (event) => {
      const form = event.target as HTMLFormElement;
      if (form.dataset.action === "ask") {
        event.preventDefault();
        const input = form.elements.namedItem("question") as HTMLInputElement;
        void this.submitQuestion(input.value);
      }
    });
    this.root.addEventListener("click", (event) => {
      const button = (event.target as HTMLElement).closest("button");
      if (!button) return;
      const action = button.dataset.action;
      const turnId = Number(button.dataset.turn);
      const candidateId = button.dataset.candidate ?? "";
      if (action === "execute") {
        const editor = this.root.querySelector<HTMLTextAreaElement>(
          `textarea[data-editor="${candidateId}"]`,
        );
        const edited =
          editor && !editor.classList.contains("hidden") ? editor.value : undefined;
        void this.chooseAndExecute(turnId, candidateId, edited);
      } else if (action === "rate") {
        void this.rateTurn(turnId, Number(button.dataset.stars));
      } else if (action === "edit") {
        const editor = this.root.querySelector<HTMLTextAreaElement>(
          `textarea[data-editor="${candidateId}"]`,
        );
        editor?.classList.toggle("hidden");
      } else if (action === "copy") {
        const turn = this.state.turns.find((t) => t.turnId === turnId);
        const script = turn?.candidates.find((c) => c.id === candidateId)?.script;
        if (script && navigator.clipboard) {
          void navigator.clipboard.writeText(script);
        }
      }
    });
  }
}
