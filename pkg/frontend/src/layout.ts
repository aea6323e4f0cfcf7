/** 2D vertex placement. Family-aware layouts keep the structure readable:
 * concentric rings for GP(n,k), a single ring for necklaces, two columns
 * for the bipartite circulants, and a small force simulation otherwise. */

import type { GraphPayload } from "./api.js";

export interface Point {
    x: number;
    y: number;
}

const TAU = Math.PI * 2;

function onCircle(i: number, count: number, radius: number, cx: number, cy: number): Point {
    const angle = (i / count) * TAU - Math.PI / 2;
    return { x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) };
}

export function gpLayout(n: number, width: number, height: number): Point[] {
    const cx = width / 2, cy = height / 2;
    const outer = Math.min(width, height) * 0.42;
    const inner = outer * 0.55;
    const pts: Point[] = [];
    for (let i = 0; i < n; i++) pts.push(onCircle(i, n, outer, cx, cy));
    for (let i = 0; i < n; i++) pts.push(onCircle(i, n, inner, cx, cy));
    return pts;
}

export function ringLayout(count: number, width: number, height: number): Point[] {
    const cx = width / 2, cy = height / 2;
    const radius = Math.min(width, height) * 0.42;
    const pts: Point[] = [];
    for (let i = 0; i < count; i++) pts.push(onCircle(i, count, radius, cx, cy));
    return pts;
}

/** Necklaces group four vertices per unit; spread each unit in a small
 * cluster around its ring slot so the chain structure stays visible. */
export function necklaceLayout(n: number, width: number, height: number): Point[] {
    const units = Math.ceil(n / 4);
    const anchors = ringLayout(units, width, height);
    const spread = Math.min(width, height) * 0.08;
    const pts: Point[] = [];
    for (let v = 0; v < n; v++) {
        const unit = Math.floor(v / 4);
        const slot = v % 4;
        const offset = onCircle(slot, 4, spread, 0, 0);
        pts.push({ x: anchors[unit].x + offset.x, y: anchors[unit].y + offset.y });
    }
    return pts;
}

export function bipartiteColumns(m: number, width: number, height: number): Point[] {
    const left = width * 0.3, right = width * 0.7;
    const pad = height * 0.1;
    const step = m > 1 ? (height - 2 * pad) / (m - 1) : 0;
    const pts: Point[] = [];
    for (let i = 0; i < m; i++) pts.push({ x: left, y: pad + i * step });
    for (let i = 0; i < m; i++) pts.push({ x: right, y: pad + i * step });
    return pts;
}

/** Simple deterministic force simulation: spring edges, pairwise repulsion,
 * centering. Good enough for hand-entered graphs at desk scale. */
export function forceLayout(graph: GraphPayload, width: number, height: number,
                            iterations = 250): Point[] {
    const n = graph.n;
    if (n === 0) return [];
    const pts = ringLayout(n, width, height); // deterministic start
    const k = Math.sqrt((width * height) / (n + 1)) * 0.5;
    for (let it = 0; it < iterations; it++) {
        const fx = new Array(n).fill(0);
        const fy = new Array(n).fill(0);
        for (let a = 0; a < n; a++) {
            for (let b = a + 1; b < n; b++) {
                const dx = pts[a].x - pts[b].x, dy = pts[a].y - pts[b].y;
                const d2 = Math.max(dx * dx + dy * dy, 1e-4);
                const rep = (k * k) / d2;
                fx[a] += dx * rep; fy[a] += dy * rep;
                fx[b] -= dx * rep; fy[b] -= dy * rep;
            }
        }
        for (const [a, b] of graph.edges) {
            const dx = pts[a].x - pts[b].x, dy = pts[a].y - pts[b].y;
            const d = Math.sqrt(Math.max(dx * dx + dy * dy, 1e-4));
            const att = (d * d) / k / d;
            fx[a] -= dx * att; fy[a] -= dy * att;
            fx[b] += dx * att; fy[b] += dy * att;
        }
        const cool = 0.08 * (1 - it / iterations) + 0.01;
        for (let v = 0; v < n; v++) {
            pts[v].x += fx[v] * cool + (width / 2 - pts[v].x) * 0.002;
            pts[v].y += fy[v] * cool + (height / 2 - pts[v].y) * 0.002;
            pts[v].x = Math.min(Math.max(pts[v].x, 12), width - 12);
            pts[v].y = Math.min(Math.max(pts[v].y, 12), height - 12);
        }
    }
    return pts;
}

export function layoutFor(graph: GraphPayload, family: (string | number)[] | null,
                          width: number, height: number): Point[] {
    const kind = family ? String(family[0]) : null;
    if (kind === "gp" && graph.n % 2 === 0) {
        return gpLayout(graph.n / 2, width, height);
    }
    if (kind === "necklace-diamond" || kind === "necklace-claw") {
        return necklaceLayout(graph.n, width, height);
    }
    if (kind === "circulant" && graph.n % 2 === 0) {
        return bipartiteColumns(graph.n / 2, width, height);
    }
    if (kind === "cycle" || kind === "complete" || kind === "star") {
        return ringLayout(graph.n, width, height);
    }
    return forceLayout(graph, width, height);
}
