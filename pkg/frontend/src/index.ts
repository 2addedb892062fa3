export { ApiClient, SseParser } from "./client";
export type { FetchLike, PostResult, SearchResult } from "./client";
export { SessionConsole } from "./console";
export { renderSession } from "./render";
export type { ConnectionState } from "./render";
export { applyAll, applyEvent, initialState, replay } from "./store";
export type {
  EventKind,
  FigureView,
  PlanView,
  Screen,
  SearchRow,
  SessionEvent,
  SessionViewState,
  TaskView,
  TraceEntry,
} from "./types";
