/**
 * SVG board rendering.  Everything is redrawn per state; new edges and
 * loops created by a zero-removal slide in with a short animation so the
 * clique transformation is visible between turns.
 */

import { layoutGraph } from "./layout.js";
import type { GameState } from "./types.js";
import type { Selection } from "./controller.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const WIDTH = 560;
const HEIGHT = 420;

interface BoardMemory {
  edges: Set<string>;
  loops: Set<string>;
  vertices: Set<string>;
}

const memories = new WeakMap<HTMLElement, BoardMemory>();

function el<K extends keyof SVGElementTagNameMap>(
  name: K,
  attrs: Record<string, string>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG_NS, name);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  return node;
}

export interface RenderHandlers {
  onVertexClick?: (id: string) => void;
}

export function renderBoard(
  container: HTMLElement,
  state: GameState,
  selection: Selection,
  destinations: string[],
  handlers: RenderHandlers = {},
): void {
  const previous = memories.get(container);
  const ids = state.vertices.map((v) => v.id);
  const pos = layoutGraph(ids, state.edges, WIDTH, HEIGHT);

  const svg = el("svg", {
    viewBox: `0 0 ${WIDTH} ${HEIGHT}`,
    class: "board",
    role: "img",
  });

  if (state.orientation === "directed") {
    const defs = el("defs", {});
    const marker = el("marker", {
      id: "arrow",
      viewBox: "0 0 10 10",
      refX: "22",
      refY: "5",
      markerWidth: "7",
      markerHeight: "7",
      orient: "auto-start-reverse",
    });
    marker.appendChild(el("path", { d: "M 0 0 L 10 5 L 0 10 z", fill: "#8a8f98" }));
    defs.appendChild(marker);
    svg.appendChild(defs);
  }

  const edgeKeys = new Set<string>();
  const loopKeys = new Set<string>();
  for (const [a, b] of state.edges) {
    const key = state.orientation === "directed" ? `${a}>${b}` : [a, b].sort().join("-");
    if (edgeKeys.has(key)) continue;
    edgeKeys.add(key);
    const pa = pos.get(a);
    const pb = pos.get(b);
    if (!pa || !pb) continue;
    const fresh = previous && !previous.edges.has(key) ? " fresh" : "";
    const line = el("line", {
      x1: String(pa.x),
      y1: String(pa.y),
      x2: String(pb.x),
      y2: String(pb.y),
      class: `edge${fresh}`,
    });
    if (state.orientation === "directed") line.setAttribute("marker-end", "url(#arrow)");
    svg.appendChild(line);
  }

  const destinationSet = new Set(destinations);
  for (const v of state.vertices) {
    const p = pos.get(v.id);
    if (!p) continue;
    const group = el("g", { class: "vertex", "data-id": v.id });
    if (v.loop) {
      loopKeys.add(v.id);
      const fresh = previous && !previous.loops.has(v.id) ? " fresh" : "";
      group.appendChild(
        el("circle", {
          cx: String(p.x + 16),
          cy: String(p.y - 16),
          r: "11",
          class: `loop${fresh}`,
        }),
      );
    }
    const classes = ["node"];
    if (v.id === state.current) classes.push("current");
    if (destinationSet.has(v.id)) classes.push("destination");
    if (v.id === selection.moveTo) classes.push("selected");
    if (v.weight === 0) classes.push("drained");
    group.appendChild(
      el("circle", { cx: String(p.x), cy: String(p.y), r: "22", class: classes.join(" ") }),
    );
    const label = el("text", {
      x: String(p.x),
      y: String(p.y + 5),
      class: "weight",
      "text-anchor": "middle",
    });
    label.textContent = String(v.weight);
    group.appendChild(label);
    const name = el("text", {
      x: String(p.x),
      y: String(p.y + 38),
      class: "name",
      "text-anchor": "middle",
    });
    name.textContent = v.id;
    group.appendChild(name);
    if (handlers.onVertexClick) {
      group.addEventListener("click", () => handlers.onVertexClick?.(v.id));
    }
    svg.appendChild(group);
  }

  memories.set(container, {
    edges: edgeKeys,
    loops: loopKeys,
    vertices: new Set(ids),
  });
  container.replaceChildren(svg);
}
