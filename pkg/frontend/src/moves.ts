/**
 * Client-side mirror of the server's move legality, so the UI never submits
 * a move the engine would reject.  Kept in lockstep with the rules engine
 * through a generated vector fixture (see test/moves.test.ts).
 */

import type { GameState } from "./types.js";

/** The destination token for the move that empties the final vertex. */
export const END = "end";

export interface CandidateMove {
  reduceTo: number;
  moveTo: string; // vertex id or END
}

function weightOf(state: GameState, id: string): number {
  const v = state.vertices.find((x) => x.id === id);
  if (!v) throw new Error(`unknown vertex ${id}`);
  return v.weight;
}

function hasLoop(state: GameState, id: string): boolean {
  return state.vertices.some((x) => x.id === id && x.loop);
}

/** Out-neighbours (directed) or neighbours (undirected), loop included. */
export function neighbors(state: GameState, id: string): string[] {
  const out = new Set<string>();
  for (const [a, b] of state.edges) {
    if (a === id) out.add(b);
    if (state.orientation === "undirected" && b === id) out.add(a);
  }
  if (hasLoop(state, id)) out.add(id);
  return [...out].sort();
}

export function isTerminal(state: GameState): boolean {
  if (state.status === "finished") return true;
  if (state.ruleset === "vertexnim") return state.vertices.length === 0;
  return state.current !== null && weightOf(state, state.current) === 0;
}

/** All legal moves, sorted by (reduceTo, destination) with END last. */
export function legalMoves(state: GameState): CandidateMove[] {
  if (isTerminal(state) || state.current === null) return [];
  const u = state.current;
  const w = weightOf(state, u);
  const moves: CandidateMove[] = [];
  if (state.ruleset === "vertexnim") {
    if (state.vertices.length === 1) {
      moves.push({ reduceTo: 0, moveTo: END });
    } else {
      for (const dest of neighbors(state, u)) {
        if (dest !== u) moves.push({ reduceTo: 0, moveTo: dest });
      }
    }
    for (let k = 1; k < w; k++) {
      for (const dest of neighbors(state, u)) {
        moves.push({ reduceTo: k, moveTo: dest });
      }
    }
  } else {
    for (let k = 0; k < w; k++) {
      for (const dest of neighbors(state, u)) {
        moves.push({ reduceTo: k, moveTo: dest });
      }
    }
  }
  moves.sort((m1, m2) => {
    if (m1.reduceTo !== m2.reduceTo) return m1.reduceTo - m2.reduceTo;
    const e1 = m1.moveTo === END ? 1 : 0;
    const e2 = m2.moveTo === END ? 1 : 0;
    if (e1 !== e2) return e1 - e2;
    return m1.moveTo < m2.moveTo ? -1 : m1.moveTo > m2.moveTo ? 1 : 0;
  });
  return moves;
}

export function isLegal(state: GameState, reduceTo: number, moveTo: string): boolean {
  return legalMoves(state).some(
    (m) => m.reduceTo === reduceTo && m.moveTo === moveTo,
  );
}

/** Reductions that have at least one legal destination. */
export function legalReductions(state: GameState): number[] {
  const ks = new Set(legalMoves(state).map((m) => m.reduceTo));
  return [...ks].sort((a, b) => a - b);
}

/** Destinations legal for a chosen reduction. */
export function legalDestinations(state: GameState, reduceTo: number): string[] {
  return legalMoves(state)
    .filter((m) => m.reduceTo === reduceTo)
    .map((m) => m.moveTo);
}
