/** Event-sourced store: replay purity, dedup, and the session trace shape. */

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { renderSession } from "../src/render";
import { applyAll, applyEvent, initialState, replay } from "../src/store";
import type { SessionEvent } from "../src/types";

const fixturePath = fileURLToPath(
  new URL("../fixtures/scenario1.events.json", import.meta.url),
);
const scenario1: SessionEvent[] = JSON.parse(readFileSync(fixturePath, "utf-8"));

describe("store", () => {
  it("applies events in order and tracks the last sequence", () => {
    const state = initialState();
    applyAll(state, scenario1);
    expect(state.lastSeq).toBe(scenario1.length);
    expect(state.trace.map((r) => r.seq)).toEqual(
      scenario1.map((e) => e.seq),
    );
  });

  it("deduplicates by sequence number", () => {
    const state = initialState();
    applyAll(state, scenario1);
    const before = JSON.stringify(state);
    expect(applyEvent(state, scenario1[3])).toBe(false);
    expect(JSON.stringify(state)).toBe(before);
  });

  it("overlapping reconnect ranges converge to the uninterrupted state", () => {
    const uninterrupted = replay(scenario1);
    const reconnected = initialState();
    applyAll(reconnected, scenario1.slice(0, 8));
    applyAll(reconnected, scenario1.slice(5)); // resumed with overlap
    expect(reconnected).toEqual(uninterrupted);
  });

  it("replay is a pure function of the log", () => {
    expect(replay(scenario1)).toEqual(replay(scenario1));
  });

  it("turn is in flight until turn_done arrives", () => {
    const partial = replay(scenario1.slice(0, scenario1.length - 1));
    expect(partial.turnInFlight).toBe(true);
    const full = replay(scenario1);
    expect(full.turnInFlight).toBe(false);
  });

  it("collects figures with their score history", () => {
    const state = replay(scenario1);
    expect(state.figures).toHaveLength(1);
    expect(state.figures[0].scores).toEqual([3, 9]);
    expect(state.figures[0].accepted).toBe(true);
  });
});

describe("scenario-1 cassette rendering", () => {
  it("reproduces the two-task trace with the 3->9 QC badge", () => {
    const screen = renderSession(replay(scenario1));
    expect(screen.planPanel).toHaveLength(2);
    expect(screen.planPanel[0]).toContain("retrieval");
    expect(screen.planPanel[1]).toContain("visualization");
    expect(screen.gallery).toHaveLength(1);
    expect(screen.gallery[0].badge).toBe("3→9");
    expect(screen.gallery[0].accepted).toBe(true);
    expect(screen.inputEnabled).toBe(true);
    const reflections = screen.tracePanel.filter((row) =>
      row.includes("reflection"),
    );
    expect(reflections).toHaveLength(2);
    expect(reflections[0]).toContain("score 3/10");
    expect(reflections[1]).toContain("score 9/10");
  });

  it("blocks input while the turn is still in flight", () => {
    const midTurn = renderSession(replay(scenario1.slice(0, 6)));
    expect(midTurn.inputEnabled).toBe(false);
  });

  it("event-log replay renders identical screens", () => {
    const a = renderSession(replay(scenario1));
    const b = renderSession(replay(scenario1));
    expect(JSON.stringify(a)).toBe(JSON.stringify(b));
  });

  it("an empty session renders empty panels", () => {
    const screen = renderSession(initialState());
    expect(screen.planPanel).toEqual([]);
    expect(screen.tracePanel).toEqual([]);
    expect(screen.gallery).toEqual([]);
    expect(screen.inputEnabled).toBe(true);
  });
});
