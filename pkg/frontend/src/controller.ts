/**
 * DOM-free game session flow: selection state, pre-validated submission,
 * hint handling.  The renderer subscribes to `onChange` and paints whatever
 * is in `view`; tests drive this class directly against a live service.
 */

import { ApiClient, ApiError } from "./api.js";
import { END, isLegal, legalDestinations, legalReductions } from "./moves.js";
import type {
  Analysis,
  GameState,
  HistoryEntry,
  InstanceDescription,
  MoveWire,
} from "./types.js";

export interface Selection {
  reduceTo: number | null;
  moveTo: string | null;
}

export interface ViewState {
  gameId: string | null;
  state: GameState | null;
  history: HistoryEntry[];
  selection: Selection;
  hint: Analysis | null;
  lastEngineReply: MoveWire | null;
  error: string | null;
}

export class GameController {
  view: ViewState = {
    gameId: null,
    state: null,
    history: [],
    selection: { reduceTo: null, moveTo: null },
    hint: null,
    lastEngineReply: null,
    error: null,
  };

  onChange: (view: ViewState) => void = () => {};

  constructor(private readonly api: ApiClient) {}

  private emit(): void {
    this.onChange(this.view);
  }

  async newGame(description: InstanceDescription): Promise<void> {
    try {
      const created = await this.api.createGame(description);
      const full = await this.api.getGame(created.id);
      this.view = {
        gameId: created.id,
        state: full.state,
        history: full.history,
        selection: { reduceTo: null, moveTo: null },
        hint: null,
        lastEngineReply: null,
        error: null,
      };
    } catch (err) {
      this.view.error = err instanceof Error ? err.message : String(err);
    }
    this.emit();
  }

  /** Reductions the current player may legally pick right now. */
  reductions(): number[] {
    return this.view.state ? legalReductions(this.view.state) : [];
  }

  /** Destinations legal for the selected reduction. */
  destinations(): string[] {
    const { state, selection } = this.view;
    if (!state || selection.reduceTo === null) return [];
    return legalDestinations(state, selection.reduceTo);
  }

  selectReduction(k: number): void {
    const state = this.view.state;
    if (!state) return;
    if (!legalReductions(state).includes(k)) {
      this.view.error = `reducing to ${k} is not legal here`;
      this.emit();
      return;
    }
    this.view.selection = { reduceTo: k, moveTo: null };
    this.view.error = null;
    this.emit();
  }

  selectDestination(dest: string): void {
    const { state, selection } = this.view;
    if (!state) return;
    if (selection.reduceTo === null) {
      this.view.error = "pick how far to reduce first";
      this.emit();
      return;
    }
    if (!isLegal(state, selection.reduceTo, dest)) {
      this.view.error = `cannot go to ${dest} after reducing to ${selection.reduceTo}`;
      this.emit();
      return;
    }
    this.view.selection = { reduceTo: selection.reduceTo, moveTo: dest };
    this.view.error = null;
    this.emit();
  }

  canSubmit(): boolean {
    const { state, selection } = this.view;
    return Boolean(
      state &&
        state.status === "ongoing" &&
        selection.reduceTo !== null &&
        selection.moveTo !== null &&
        isLegal(state, selection.reduceTo, selection.moveTo),
    );
  }

  /** Submit the selection.  Server rejections keep the selection intact. */
  async submit(): Promise<void> {
    const { gameId, state, selection } = this.view;
    if (!gameId || !state) return;
    if (!this.canSubmit()) {
      this.view.error = "selection is not a legal move";
      this.emit();
      return;
    }
    const move: MoveWire = {
      reduce_to: selection.reduceTo as number,
      move_to: selection.moveTo as string,
    };
    try {
      const resp = await this.api.submitMove(gameId, move);
      const full = await this.api.getGame(gameId);
      this.view.state = full.state;
      this.view.history = full.history;
      this.view.selection = { reduceTo: null, moveTo: null };
      this.view.hint = null;
      this.view.lastEngineReply = resp.engine_reply ?? null;
      this.view.error = null;
    } catch (err) {
      // inline error, selection preserved so the player can adjust
      this.view.error = err instanceof ApiError ? err.message : String(err);
    }
    this.emit();
  }

  async requestHint(): Promise<Analysis | null> {
    const { gameId } = this.view;
    if (!gameId) return null;
    try {
      const analysis = await this.api.analyze(gameId);
      this.view.hint = analysis;
      this.view.error = null;
      this.emit();
      return analysis;
    } catch (err) {
      this.view.error = err instanceof Error ? err.message : String(err);
      this.emit();
      return null;
    }
  }

  /** Human-readable hint banner text. */
  hintText(): string {
    const hint = this.view.hint;
    if (!hint) return "";
    if (hint.outcome === null || hint.method === "open-problem") {
      return "no theory available for this position";
    }
    if (hint.outcome === "P") {
      return "P position - every move loses with best play";
    }
    if (hint.witness) {
      const dest = hint.witness.move_to === END ? "end the game" : `go ${hint.witness.move_to}`;
      return `winning move: reduce to ${hint.witness.reduce_to}, ${dest}`;
    }
    return "N position";
  }
}
