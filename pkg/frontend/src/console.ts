/** Console wiring: prompt submission, live trace, search exploration.
 *
 * Rendering is strictly event-sourced; the only local flag is the transient
 * submit lock between a 202 and the first streamed event, which cannot race
 * the one-turn-in-flight contract because the server enforces it with 409s.
 */

import { ApiClient } from "./client";
import { renderSession, type ConnectionState } from "./render";
import { applyEvent, initialState } from "./store";
import type { Screen, SearchRow, SessionViewState } from "./types";

export class SessionConsole {
  readonly state: SessionViewState = initialState();
  private notices: string[] = [];
  private submitting = false;
  private connection: ConnectionState = "idle";
  private sessionId: string | null = null;
  searchRows: SearchRow[] = [];
  searchError: string | null = null;
  lastSearch: { query: string; architecture: string } | null = null;

  constructor(private readonly client: ApiClient) {}

  async connect(testMode = false): Promise<string> {
    this.sessionId = await this.client.createSession(testMode);
    return this.sessionId;
  }

  get inputLocked(): boolean {
    return this.submitting || this.state.turnInFlight;
  }

  async submitPrompt(text: string): Promise<boolean> {
    if (this.sessionId === null) {
      throw new Error("not connected");
    }
    if (this.inputLocked) {
      this.notices.push("a turn is already running");
      return false;
    }
    const result = await this.client.postMessage(this.sessionId, text);
    if (!result.ok) {
      this.notices.push(`message rejected (${result.status}): ${result.error}`);
      return false;
    }
    this.submitting = true;
    this.connection = "live";
    try {
      await this.client.streamEvents(
        this.sessionId,
        this.state.lastSeq + 1,
        (event) => {
          applyEvent(this.state, event);
          this.submitting = false; // first event arrived; state now carries the lock
        },
        { onReconnect: () => (this.connection = "reconnecting") },
      );
    } finally {
      this.submitting = false;
      this.connection = "idle";
    }
    return true;
  }

  async searchPanel(query: string, architecture: string): Promise<SearchRow[]> {
    this.lastSearch = { query, architecture };
    const result = await this.client.search(query, architecture);
    if (!result.ok) {
      this.searchError = result.error;
      this.searchRows = [];
      return [];
    }
    this.searchError = null;
    this.searchRows = result.rows;
    return result.rows;
  }

  /** Re-run the current query under a different architecture. */
  async switchArchitecture(architecture: string): Promise<SearchRow[]> {
    if (this.lastSearch === null) {
      return [];
    }
    return this.searchPanel(this.lastSearch.query, architecture);
  }

  screen(): Screen {
    return renderSession(this.state, {
      connection: this.connection,
      notices: this.notices,
      submitting: this.submitting,
    });
  }
}
