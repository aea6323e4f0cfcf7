/** SVG board rendering. Pure DOM construction from the board model;
 * re-rendered wholesale after every server exchange. */

import type { GameState } from "./api.js";
import type { Point } from "./layout.js";
import { BoardModel, banner, vertexViews } from "./state.js";

const SVG_NS = "http://www.w3.org/2000/svg";

const COLORS = {
    free: "#f4f4f2",
    dominator: "#d64545",
    staller: "#3566c9",
    edge: "#9a9a97",
    winningEdge: "#3566c9",
    text: "#222",
};

function el<K extends keyof SVGElementTagNameMap>(tag: K,
        attrs: Record<string, string | number>): SVGElementTagNameMap[K] {
    const node = document.createElementNS(SVG_NS, tag);
    for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
    return node;
}

export interface RenderCallbacks {
    onVertexClick: (vertex: number) => void;
}

export function renderBoard(root: HTMLElement, model: BoardModel,
                            cb: RenderCallbacks, width = 640, height = 520): void {
    root.replaceChildren();
    const s = model.state;
    const bannerEl = document.createElement("div");
    bannerEl.className = "banner";
    bannerEl.dataset.status = s ? s.status : "none";
    bannerEl.textContent = banner(model);
    root.appendChild(bannerEl);

    if (model.notice) {
        const note = document.createElement("div");
        note.className = "notice";
        note.textContent = model.notice;
        root.appendChild(note);
    }
    if (!s) return;

    const svg = el("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
    svg.setAttribute("class", "board");

    const completed = new Set(s.completed_neighborhood?.vertices ?? []);
    const isolatedSet = new Set(s.completed_neighborhood?.isolated ?? []);
    for (const [a, b] of s.graph.edges) {
        const pa = model.layout[a], pb = model.layout[b];
        const highlight =
            (completed.has(a) && isolatedSet.has(b)) ||
            (completed.has(b) && isolatedSet.has(a));
        svg.appendChild(el("line", {
            x1: pa.x, y1: pa.y, x2: pb.x, y2: pb.y,
            stroke: highlight ? COLORS.winningEdge : COLORS.edge,
            "stroke-width": highlight ? 4 : 1.5,
        }));
    }

    for (const view of vertexViews(model)) {
        const p: Point = model.layout[view.id];
        const group = el("g", {});
        group.setAttribute("class", "vertex");
        group.setAttribute("data-vertex", String(view.id));
        const fill = view.owner ? COLORS[view.owner] : COLORS.free;
        const circle = el("circle", {
            cx: p.x, cy: p.y, r: view.isolated ? 16 : 12,
            fill,
            stroke: view.inWinningSet ? COLORS.winningEdge
                : view.inDominatingSet ? COLORS.dominator
                : view.lastEngineMove ? "#222" : "#777",
            "stroke-width": view.inWinningSet || view.inDominatingSet ? 4
                : view.lastEngineMove ? 3 : 1,
        });
        if (view.clickable) circle.setAttribute("class", "clickable");
        group.appendChild(circle);
        if (view.forced) {
            group.appendChild(el("rect", {
                x: p.x - 17, y: p.y - 17, width: 34, height: 34,
                fill: "none", stroke: "#e0a020", "stroke-width": 2,
                "stroke-dasharray": "4 2",
            }));
        }
        if (view.doubleTrap) {
            group.appendChild(el("rect", {
                x: p.x - 20, y: p.y - 20, width: 40, height: 40,
                fill: "none", stroke: "#c026d3", "stroke-width": 2,
            }));
        }
        const text = el("text", {
            x: p.x, y: p.y + 4, "text-anchor": "middle",
            "font-size": 10, fill: view.owner ? "#fff" : COLORS.text,
        });
        text.textContent = view.label ?? String(view.id);
        group.appendChild(text);
        group.addEventListener("click", () => cb.onVertexClick(view.id));
        svg.appendChild(group);
    }
    root.appendChild(svg);

    const movesEl = document.createElement("div");
    movesEl.className = "moves";
    movesEl.textContent = s.moves
        .map((m) => `${m.player[0]}:${m.vertex}`)
        .join("  ");
    root.appendChild(movesEl);
}

export function describeState(s: GameState): string {
    return `${s.status}; to_move=${s.to_move}; owners=${s.owners.map(
        (o) => (o ? o[0] : ".")).join("")}`;
}
