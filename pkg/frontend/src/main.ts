/** Page wiring: presets, the board, move controls, hints and banners. */

import { ApiClient } from "./api.js";
import { GameController } from "./controller.js";
import { END } from "./moves.js";
import { renderBoard } from "./render.js";
import type { InstanceDescription } from "./types.js";

const PRESETS: Record<string, InstanceDescription> = {
  "path 2-3-2 (start b)": {
    game: { ruleset: "vertexnim", convention: "normal" },
    graph: {
      orientation: "undirected",
      vertices: [
        { id: "a", weight: 2 },
        { id: "b", weight: 3 },
        { id: "c", weight: 2 },
      ],
      edges: [
        ["a", "b"],
        ["b", "c"],
      ],
      start: "b",
    },
    engine_side: "engine-moves-second",
  },
  "triangle with loops (misere)": {
    game: { ruleset: "vertexnim", convention: "misere" },
    graph: {
      orientation: "undirected",
      vertices: [
        { id: "a", weight: 1, loop: true },
        { id: "b", weight: 2, loop: true },
        { id: "c", weight: 1, loop: true },
      ],
      edges: [
        ["a", "b"],
        ["b", "c"],
        ["a", "c"],
      ],
      start: "a",
    },
    engine_side: "engine-moves-second",
  },
  "stockman square": {
    game: { ruleset: "stockman", convention: "normal" },
    graph: {
      orientation: "undirected",
      vertices: [
        { id: "a", weight: 2 },
        { id: "b", weight: 1 },
        { id: "c", weight: 3 },
        { id: "d", weight: 2 },
      ],
      edges: [
        ["a", "b"],
        ["b", "c"],
        ["c", "d"],
        ["d", "a"],
      ],
      start: "a",
    },
    engine_side: "engine-moves-second",
  },
  "adjacent nim circuit (engine first)": {
    game: { ruleset: "vertexnim", convention: "normal" },
    graph: {
      orientation: "directed",
      vertices: [
        { id: "a", weight: 3 },
        { id: "b", weight: 2 },
        { id: "c", weight: 4 },
        { id: "d", weight: 5 },
      ],
      edges: [
        ["a", "b"],
        ["b", "c"],
        ["c", "d"],
        ["d", "a"],
      ],
      start: "a",
    },
    engine_side: "engine-moves-first",
  },
};

function byId<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function start(): void {
  const api = new ApiClient("");
  const controller = new GameController(api);

  const presetSelect = byId<HTMLSelectElement>("preset");
  for (const name of Object.keys(PRESETS)) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    presetSelect.appendChild(option);
  }

  const board = byId<HTMLDivElement>("board");
  const statusLine = byId<HTMLParagraphElement>("status");
  const reductionBox = byId<HTMLDivElement>("reductions");
  const errorBanner = byId<HTMLParagraphElement>("error");
  const hintBanner = byId<HTMLParagraphElement>("hint");
  const winnerBanner = byId<HTMLParagraphElement>("winner");
  const engineLine = byId<HTMLParagraphElement>("engine-reply");

  controller.onChange = (view) => {
    errorBanner.textContent = view.error ?? "";
    errorBanner.hidden = !view.error;
    hintBanner.textContent = controller.hintText();
    hintBanner.hidden = !view.hint;
    if (view.lastEngineReply) {
      const m = view.lastEngineReply;
      const where = m.move_to === END ? "ending the game" : `to ${m.move_to}`;
      engineLine.textContent = `engine replied: reduce to ${m.reduce_to}, ${where}`;
    } else {
      engineLine.textContent = "";
    }
    const state = view.state;
    if (!state) return;

    if (state.status === "finished") {
      const victory =
        state.convention === "misere"
          ? `${state.winner} forced the opponent to move last`
          : `${state.winner} made the last move`;
      winnerBanner.textContent = `game over: ${state.winner} wins (${victory})`;
      winnerBanner.hidden = false;
      statusLine.textContent = "";
    } else {
      winnerBanner.hidden = true;
      statusLine.textContent =
        `${state.ruleset} / ${state.convention} - token on ${state.current}, ` +
        `${state.to_move} to move`;
    }

    reductionBox.replaceChildren();
    for (const k of controller.reductions()) {
      const button = document.createElement("button");
      button.textContent = `reduce to ${k}`;
      if (view.selection.reduceTo === k) button.classList.add("selected");
      button.addEventListener("click", () => {
        controller.selectReduction(k);
      });
      reductionBox.appendChild(button);
    }
    const dests = controller.destinations();
    if (dests.includes(END)) {
      const button = document.createElement("button");
      button.textContent = "end the game";
      button.classList.add("end-move");
      button.addEventListener("click", () => {
        controller.selectDestination(END);
        void controller.submit();
      });
      reductionBox.appendChild(button);
    }

    renderBoard(board, state, view.selection, dests.filter((d) => d !== END), {
      onVertexClick: (id) => {
        controller.selectDestination(id);
        if (controller.canSubmit()) void controller.submit();
      },
    });
  };

  byId<HTMLButtonElement>("new-game").addEventListener("click", () => {
    const preset = PRESETS[presetSelect.value];
    if (preset) void controller.newGame(preset);
  });
  byId<HTMLButtonElement>("hint").addEventListener("click", () => {
    void controller.requestHint();
  });

  const first = Object.keys(PRESETS)[0];
  if (first) {
    presetSelect.value = first;
    void controller.newGame(PRESETS[first]!);
  }
}

document.addEventListener("DOMContentLoaded", start);
