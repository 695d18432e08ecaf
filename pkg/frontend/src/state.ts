// Conversation view model: a pure fold over API responses. Rendering and the
// controller never mutate it directly; they dispatch the response that came
// back and receive a new state, which makes scripted interactions snapshot-
// testable without a server.

import type {
  Candidate,
  Diagnostics,
  ExecuteResponse,
  MemoryEstimate,
  QuestionResponse,
  SchemaPayload,
  SummaryPayload,
} from "./types";

export interface ResultView {
  columns: string[];
  rows: unknown[][];
  estimates: MemoryEstimate[];
}

export interface TurnView {
  turnId: number;
  question: string;
  candidates: Candidate[]; // rendered order == API order
  diagnostics: Diagnostics | null;
  chosenId: string | null;
  result: ResultView | null;
  stars: number | null;
  error: string | null;
  rawScript: boolean;
}

export interface ConversationViewModel {
  sessionId: string | null;
  schema: SchemaPayload | null;
  summary: SummaryPayload | null;
  turns: TurnView[];
  lexiconVersion: number;
  busy: boolean;
  globalError: string | null;
}

export function initialState(): ConversationViewModel {
  return {
    sessionId: null,
    schema: null,
    summary: null,
    turns: [],
    lexiconVersion: 1,
    busy: false,
    globalError: null,
  };
}

function replaceTurn(
  state: ConversationViewModel,
  turnId: number,
  update: (turn: TurnView) => TurnView,
): ConversationViewModel {
  return {
    ...state,
    turns: state.turns.map((t) => (t.turnId === turnId ? update(t) : t)),
  };
}

export function applySession(
  state: ConversationViewModel,
  sessionId: string,
): ConversationViewModel {
  return { ...state, sessionId };
}

export function applySchema(
  state: ConversationViewModel,
  schema: SchemaPayload,
): ConversationViewModel {
  return { ...state, schema };
}

export function applySummary(
  state: ConversationViewModel,
  summary: SummaryPayload,
): ConversationViewModel {
  return { ...state, summary };
}

export function applyQuestion(
  state: ConversationViewModel,
  question: string,
  response: QuestionResponse,
): ConversationViewModel {
  const turn: TurnView = {
    turnId: response.turn_id,
    question,
    candidates: response.candidates,
    diagnostics: response.diagnostics,
    chosenId: null,
    result: null,
    stars: null,
    error: null,
    rawScript: false,
  };
  return { ...state, turns: [...state.turns, turn], globalError: null };
}

export function applyExecute(
  state: ConversationViewModel,
  turnId: number,
  candidateId: string | null,
  response: ExecuteResponse,
): ConversationViewModel {
  const result: ResultView = {
    columns: response.columns,
    rows: response.rows,
    estimates: response.estimates,
  };
  if (response.turn_id !== turnId || candidateId === null) {
    // raw-script execution creates its own turn on the server
    const turn: TurnView = {
      turnId: response.turn_id,
      question: "(edited script)",
      candidates: [],
      diagnostics: null,
      chosenId: null,
      result,
      stars: null,
      error: null,
      rawScript: true,
    };
    return { ...state, turns: [...state.turns, turn] };
  }
  return replaceTurn(state, turnId, (turn) => ({
    ...turn,
    chosenId: candidateId,
    result,
    error: null,
  }));
}

export function applyTurnError(
  state: ConversationViewModel,
  turnId: number | null,
  message: string,
): ConversationViewModel {
  if (turnId === null) {
    return { ...state, globalError: message };
  }
  return replaceTurn(state, turnId, (turn) => ({ ...turn, error: message }));
}

export function applyFeedback(
  state: ConversationViewModel,
  turnId: number,
  stars: number,
): ConversationViewModel {
  return replaceTurn(state, turnId, (turn) => ({ ...turn, stars }));
}

export function applyLexiconVersion(
  state: ConversationViewModel,
  version: number,
): ConversationViewModel {
  return { ...state, lexiconVersion: version };
}

export function applyBusy(
  state: ConversationViewModel,
  busy: boolean,
): ConversationViewModel {
  return { ...state, busy };
}

// Star widget rules: enabled only once candidates arrived, frozen after the
// first rating.
export function canRate(turn: TurnView): boolean {
  return turn.candidates.length > 0 && turn.stars === null;
}

export function chosenCandidate(turn: TurnView): Candidate | null {
  return turn.candidates.find((c) => c.id === turn.chosenId) ?? null;
}
