/** HTTP + SSE client for the session service; no endpoints beyond its API. */

import type { SearchRow, SessionEvent } from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export type PostResult =
  | { ok: true; turnId: number }
  | { ok: false; status: number; error: string };

export type SearchResult =
  | { ok: true; rows: SearchRow[]; rounds: number }
  | { ok: false; status: number; error: string };

/** Incremental server-sent-events parser; feed it raw chunks, get events. */
export class SseParser {
  private buffer = "";

  push(chunk: string): SessionEvent[] {
    this.buffer += chunk;
    const events: SessionEvent[] = [];
    let split: number;
    while ((split = this.buffer.indexOf("\n\n")) >= 0) {
      const frame = this.buffer.slice(0, split);
      this.buffer = this.buffer.slice(split + 2);
      for (const line of frame.split("\n")) {
        if (line.startsWith("data: ")) {
          events.push(JSON.parse(line.slice("data: ".length)) as SessionEvent);
        }
      }
    }
    return events;
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchImpl: FetchLike = fetch,
  ) {}

  async createSession(testMode = false): Promise<string> {
    const response = await this.fetchImpl(`${this.baseUrl}/sessions`, {
      method: "POST",
      headers: testMode ? { "X-Test-Mode": "1" } : {},
    });
    if (!response.ok) {
      throw new Error(`session creation failed: ${response.status}`);
    }
    const body = (await response.json()) as { session_id: string };
    return body.session_id;
  }

  async postMessage(sessionId: string, text: string): Promise<PostResult> {
    const response = await this.fetchImpl(
      `${this.baseUrl}/sessions/${sessionId}/messages`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ text }),
      },
    );
    if (response.status === 202) {
      const body = (await response.json()) as { turn_id: number };
      return { ok: true, turnId: body.turn_id };
    }
    const error = await response
      .json()
      .then((b: any) => String(b.error ?? response.status))
      .catch(() => String(response.status));
    return { ok: false, status: response.status, error };
  }

  artifactUrl(sessionId: string, name: string): string {
    return `${this.baseUrl}/sessions/${sessionId}/artifacts/${name}`;
  }

  async search(queryText: string, architecture: string): Promise<SearchResult> {
    const response = await this.fetchImpl(`${this.baseUrl}/search`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ query_text: queryText, architecture }),
    });
    if (!response.ok) {
      const error = await response
        .json()
        .then((b: any) => String(b.error ?? response.status))
        .catch(() => String(response.status));
      return { ok: false, status: response.status, error };
    }
    const body = (await response.json()) as {
      entries: { dataset_id: string; relevance_score: number; rationale: string }[];
      rounds: number;
    };
    return {
      ok: true,
      rounds: body.rounds,
      rows: body.entries.map((e) => ({
        datasetId: e.dataset_id,
        score: e.relevance_score,
        rationale: e.rationale,
      })),
    };
  }

  /**
   * Stream events starting at `fromSeq`, reconnecting after stream drops and
   * resuming from the last seen sequence number. The consumer deduplicates by
   * seq, so overlapping ranges after a reconnect are harmless. Resolves when
   * a clean stream close follows a turn_done (or nothing is in flight).
   */
  async streamEvents(
    sessionId: string,
    fromSeq: number,
    onEvent: (event: SessionEvent) => void,
    opts: { maxReconnects?: number; onReconnect?: () => void } = {},
  ): Promise<void> {
    let nextSeq = fromSeq;
    let sawTerminal = false;
    let reconnects = 0;
    const maxReconnects = opts.maxReconnects ?? 5;

    for (;;) {
      let dropped = false;
      try {
        const response = await this.fetchImpl(
          `${this.baseUrl}/sessions/${sessionId}/events?from=${nextSeq}`,
        );
        if (!response.ok || response.body === null) {
          throw new Error(`event stream failed: ${response.status}`);
        }
        const reader = response.body.getReader();
        const decoder = new TextDecoder();
        const parser = new SseParser();
        for (;;) {
          const { done, value } = await reader.read();
          if (done) {
            break;
          }
          for (const event of parser.push(decoder.decode(value, { stream: true }))) {
            nextSeq = Math.max(nextSeq, event.seq + 1);
            if (event.kind === "turn_done") {
              sawTerminal = true;
            }
            onEvent(event);
          }
        }
      } catch {
        dropped = true;
      }
      // clean close means the server drained the log with no turn in flight;
      // a drop after turn_done has nothing left to fetch either
      if (!dropped || sawTerminal) {
        return;
      }
      reconnects += 1;
      if (reconnects > maxReconnects) {
        throw new Error("event stream: too many reconnects");
      }
      opts.onReconnect?.();
    }
  }
}
