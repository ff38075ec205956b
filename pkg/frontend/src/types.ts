/** Wire types mirroring the play service's JSON protocol. */

export interface VertexState {
  id: string;
  weight: number;
  loop: boolean;
}

export interface GameState {
  orientation: "directed" | "undirected";
  ruleset: "vertexnim" | "stockman";
  convention: "normal" | "misere";
  vertices: VertexState[];
  edges: [string, string][];
  current: string | null;
  to_move: string | null;
  status: "ongoing" | "finished";
  winner: string | null;
}

/** `move_to` is a vertex id, or the literal "end" for the game-ending move. */
export interface MoveWire {
  reduce_to: number;
  move_to: string;
}

export interface HistoryEntry {
  player: string;
  move: MoveWire;
}

export interface Analysis {
  outcome: "P" | "N" | null;
  method: string;
  witness?: MoveWire;
}

export interface InstanceDescription {
  game: { ruleset: "vertexnim" | "stockman"; convention: "normal" | "misere" };
  graph: {
    orientation: "directed" | "undirected";
    vertices: { id: string; weight: number; loop?: boolean }[];
    edges: [string, string][];
    start: string;
  };
  engine_side: "none" | "engine-moves-first" | "engine-moves-second";
}

export interface CreateResponse {
  id: string;
  state: GameState;
}

export interface GameResponse {
  state: GameState;
  history: HistoryEntry[];
}

export interface MoveResponse {
  state: GameState;
  engine_reply?: MoveWire;
}
