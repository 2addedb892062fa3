/** Pure view-state to screen-model rendering (no DOM; testable as data). */

import type { Screen, SessionViewState } from "./types";

export type ConnectionState = "live" | "idle" | "reconnecting";

export function renderSession(
  state: SessionViewState,
  opts: { connection?: ConnectionState; notices?: string[]; submitting?: boolean } = {},
): Screen {
  const planPanel = state.plan
    ? state.plan.tasks.map(
        (t) => `[${t.status}] ${t.id} ${t.kind}: ${t.description}`,
      )
    : [];
  const tracePanel = state.trace.map(
    (row) => `#${row.seq} ${row.actor} | ${row.action} | ${row.content}`,
  );
  const gallery = state.figures.map((f) => ({
    artifact: f.artifact,
    badge: f.scores.join("→"),
    accepted: f.accepted,
  }));
  const inputEnabled = !state.turnInFlight && !opts.submitting;
  return {
    planPanel,
    tracePanel,
    gallery,
    reportPanel: state.report,
    notices: [...(opts.notices ?? []), ...state.errors],
    inputEnabled,
    connection: opts.connection ?? "idle",
  };
}
