/**
 * Deterministic force-directed layout.  The PRNG is seeded from the graph's
 * content, so the same board always lands in the same arrangement and
 * replays look identical.
 */

export interface Point {
  x: number;
  y: number;
}

function hashString(s: string): number {
  let h = 2166136261 >>> 0;
  for (let i = 0; i < s.length; i++) {
    h ^= s.charCodeAt(i);
    h = Math.imul(h, 16777619);
  }
  return h >>> 0;
}

function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

export function layoutGraph(
  ids: string[],
  edges: [string, string][],
  width: number,
  height: number,
): Map<string, Point> {
  const order = [...ids].sort();
  const seed = hashString(order.join("|") + "#" + edges.map((e) => e.join(">")).sort().join("|"));
  const rand = mulberry32(seed);
  const pos = new Map<string, Point>();
  for (const id of order) {
    pos.set(id, {
      x: width * (0.2 + 0.6 * rand()),
      y: height * (0.2 + 0.6 * rand()),
    });
  }
  if (order.length === 1) {
    pos.set(order[0]!, { x: width / 2, y: height / 2 });
    return pos;
  }
  const springLength = Math.min(width, height) / Math.max(2, Math.sqrt(order.length) + 1);
  const links = edges.filter(([a, b]) => a !== b);
  for (let iter = 0; iter < 300; iter++) {
    const force = new Map<string, Point>(order.map((id) => [id, { x: 0, y: 0 }]));
    // pairwise repulsion
    for (let i = 0; i < order.length; i++) {
      for (let j = i + 1; j < order.length; j++) {
        const a = order[i]!;
        const b = order[j]!;
        const pa = pos.get(a)!;
        const pb = pos.get(b)!;
        let dx = pa.x - pb.x;
        let dy = pa.y - pb.y;
        let d2 = dx * dx + dy * dy;
        if (d2 < 1e-6) {
          dx = 0.01 * (i - j);
          dy = 0.013;
          d2 = dx * dx + dy * dy;
        }
        const rep = (springLength * springLength) / d2;
        force.get(a)!.x += dx * rep;
        force.get(a)!.y += dy * rep;
        force.get(b)!.x -= dx * rep;
        force.get(b)!.y -= dy * rep;
      }
    }
    // springs along edges
    for (const [a, b] of links) {
      const pa = pos.get(a)!;
      const pb = pos.get(b)!;
      const dx = pb.x - pa.x;
      const dy = pb.y - pa.y;
      const d = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const pull = (d - springLength) / d / 8;
      force.get(a)!.x += dx * pull;
      force.get(a)!.y += dy * pull;
      force.get(b)!.x -= dx * pull;
      force.get(b)!.y -= dy * pull;
    }
    const damp = 0.85 * (1 - iter / 320);
    for (const id of order) {
      const p = pos.get(id)!;
      const f = force.get(id)!;
      p.x += Math.max(-20, Math.min(20, f.x)) * damp;
      p.y += Math.max(-20, Math.min(20, f.y)) * damp;
      p.x = Math.max(36, Math.min(width - 36, p.x));
      p.y = Math.max(36, Math.min(height - 36, p.y));
    }
  }
  return pos;
}
