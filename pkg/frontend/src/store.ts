/** Event-sourced session state: the UI is a pure function of the event log.
 *
 * Events are deduplicated by sequence number, so replays and reconnects can
 * feed overlapping ranges without corrupting the view.
 */

import type {
  FigureView,
  PlanView,
  SessionEvent,
  SessionViewState,
  TraceEntry,
} from "./types";

export function initialState(): SessionViewState {
  return {
    lastSeq: 0,
    trace: [],
    plan: null,
    figures: [],
    report: null,
    errors: [],
    turnInFlight: false,
  };
}

function clip(text: string, max = 120): string {
  return text.length <= max ? text : text.slice(0, max - 1) + "…";
}

function traceRow(event: SessionEvent): TraceEntry {
  const p = event.payload;
  switch (event.kind) {
    case "plan":
      return {
        seq: event.seq,
        actor: "supervisor",
        action: "planning",
        content: `plan r${p.revision}: ${(p.tasks ?? []).length} task(s)`,
      };
    case "agent_action":
      return {
        seq: event.seq,
        actor: String(p.role ?? "worker"),
        action: "dispatch",
        content: clip(String(p.description ?? p.task ?? "")),
      };
    case "code_submitted":
      return {
        seq: event.seq,
        actor: String(p.role ?? "worker"),
        action: `code (attempt ${p.attempt ?? 1})`,
        content: clip(String(p.code ?? "")),
      };
    case "execution_result": {
      const tb = p.traceback as { exception_type?: string } | null;
      const detail = p.status === "ok" ? "ok" : `error: ${tb?.exception_type ?? "?"}`;
      return { seq: event.seq, actor: String(p.role ?? "worker"), action: "execution", content: detail };
    }
    case "critique":
      return {
        seq: event.seq,
        actor: "visual-qc",
        action: "reflection",
        content: `score ${p.composite}/10`,
      };
    case "figure":
      return {
        seq: event.seq,
        actor: "visualization",
        action: "figure",
        content: `${p.artifact} (${(p.scores ?? []).join("→")})`,
      };
    case "search_results":
      return {
        seq: event.seq,
        actor: "search",
        action: "results",
        content: `${(p.entries ?? []).length} candidate(s) in ${p.rounds ?? "?"} round(s)`,
      };
    case "report":
      return { seq: event.seq, actor: "writer", action: "report", content: clip(String(p.text ?? "")) };
    case "error":
      return { seq: event.seq, actor: "supervisor", action: "error", content: clip(String(p.detail ?? "")) };
    case "turn_done":
      return { seq: event.seq, actor: "supervisor", action: "turn done", content: String(p.status ?? "") };
  }
}

/** Apply one event; returns false when it was a duplicate (seq dedup). */
export function applyEvent(state: SessionViewState, event: SessionEvent): boolean {
  if (event.seq <= state.lastSeq) {
    return false;
  }
  state.lastSeq = event.seq;
  state.trace.push(traceRow(event));
  state.turnInFlight = event.kind !== "turn_done";

  const p = event.payload;
  switch (event.kind) {
    case "plan":
      state.plan = {
        revision: Number(p.revision ?? 0),
        tasks: (p.tasks ?? []).map((t: any) => ({
          id: String(t.id),
          description: String(t.description),
          kind: String(t.kind),
          status: String(t.status ?? "pending"),
        })),
      } satisfies PlanView;
      break;
    case "figure": {
      const view: FigureView = {
        artifact: String(p.artifact),
        scores: (p.scores ?? []).map(Number),
        accepted: Boolean(p.accepted),
      };
      state.figures.push(view);
      break;
    }
    case "report":
      state.report = String(p.text ?? "");
      break;
    case "error":
      state.errors.push(String(p.detail ?? "error"));
      break;
  }
  return true;
}

export function applyAll(state: SessionViewState, events: SessionEvent[]): number {
  let applied = 0;
  for (const event of events) {
    if (applyEvent(state, event)) {
      applied += 1;
    }
  }
  return applied;
}

/** Rebuild state from an event log (reload path: replay from seq 0). */
export function replay(events: SessionEvent[]): SessionViewState {
  const state = initialState();
  applyAll(state, events);
  return state;
}
