/** Wire types mirroring the session API, plus the console's view models. */

export type EventKind =
  | "plan"
  | "agent_action"
  | "code_submitted"
  | "execution_result"
  | "critique"
  | "figure"
  | "search_results"
  | "report"
  | "error"
  | "turn_done";

export type SessionEvent = {
  seq: number;
  kind: EventKind;
  payload: Record<string, any>;
  at: string;
};

export type TaskView = {
  id: string;
  description: string;
  kind: string;
  status: string;
};

export type PlanView = {
  revision: number;
  tasks: TaskView[];
};

/** One (actor, action, content) row of the streaming trace. */
export type TraceEntry = {
  seq: number;
  actor: string;
  action: string;
  content: string;
};

export type FigureView = {
  artifact: string;
  scores: number[];
  accepted: boolean;
};

export type SearchRow = {
  datasetId: string;
  score: number;
  rationale: string;
};

export type SessionViewState = {
  lastSeq: number;
  trace: TraceEntry[];
  plan: PlanView | null;
  figures: FigureView[];
  report: string | null;
  errors: string[];
  /** Derived purely from the event log: a turn has started and no terminal
   * turn_done has arrived yet. */
  turnInFlight: boolean;
};

export type Screen = {
  planPanel: string[];
  tracePanel: string[];
  gallery: { artifact: string; badge: string; accepted: boolean }[];
  reportPanel: string | null;
  notices: string[];
  inputEnabled: boolean;
  connection: "live" | "idle" | "reconnecting";
};
