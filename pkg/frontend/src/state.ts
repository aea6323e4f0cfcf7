/** Board model: the client-side mirror of the server state plus view
 * options. Never mutated optimistically — every change comes from a
 * server response, so the rendered board always equals GET /games/{id}. */

import type { GameState, PlayerName } from "./api.js";
import type { Point } from "./layout.js";

export interface BoardModel {
    state: GameState | null;
    layout: Point[];
    hints: boolean;
    notice: string;
    busy: boolean;
}

export function emptyModel(): BoardModel {
    return { state: null, layout: [], hints: false, notice: "", busy: false };
}

export function isHumanTurn(m: BoardModel): boolean {
    return !!m.state && m.state.status === "ongoing"
        && m.state.to_move === m.state.human_role;
}

export function isEngineTurn(m: BoardModel): boolean {
    return !!m.state && m.state.status === "ongoing"
        && m.state.to_move === m.state.engine_role;
}

/** Legality pre-filter: only free vertices from the server's legal list on
 * the human's turn are clickable; everything else is a visible no-op. */
export function clickVerdict(m: BoardModel, vertex: number):
        { legal: boolean; reason: string } {
    if (!m.state) return { legal: false, reason: "no game" };
    if (m.state.status !== "ongoing") return { legal: false, reason: "game over" };
    if (m.state.to_move !== m.state.human_role) {
        return { legal: false, reason: "not your turn" };
    }
    if (!m.state.legal_moves.includes(vertex)) {
        return { legal: false, reason: `vertex ${vertex} is not free` };
    }
    return { legal: true, reason: "" };
}

export interface VertexView {
    id: number;
    label: string | null;
    owner: PlayerName | null;
    clickable: boolean;
    forced: boolean;        // unique block of a one-move threat
    doubleTrap: boolean;    // Staller move creating two unstoppable threats
    inWinningSet: boolean;  // completed neighborhood at game end
    isolated: boolean;      // the vertex Staller isolated
    inDominatingSet: boolean;
    lastEngineMove: boolean;
}

export function banner(m: BoardModel): string {
    const s = m.state;
    if (!s) return "create a game to start";
    if (s.status === "ongoing") {
        return s.to_move === s.human_role
            ? `your move (${s.human_role})`
            : `engine thinking (${s.engine_role})`;
    }
    if (s.status === "staller_won") {
        const who = s.human_role === "staller" ? "you win" : "engine wins";
        const v = s.completed_neighborhood;
        const target = v && v.isolated.length ? ` — vertex ${v.isolated[0]} is isolated` : "";
        return `Staller wins (${who})${target}`;
    }
    const who = s.human_role === "dominator" ? "you win" : "engine wins";
    return `Dominator wins (${who}) — a total dominating set is claimed`;
}

export function vertexViews(m: BoardModel): VertexView[] {
    const s = m.state;
    if (!s) return [];
    const labels = s.graph.labels ?? {};
    const ann = s.annotations;
    const completed = new Set(s.completed_neighborhood?.vertices ?? []);
    const isolated = new Set(s.completed_neighborhood?.isolated ?? []);
    const dom = new Set(s.dominating_set ?? []);
    const humanTurn = isHumanTurn(m);
    return s.owners.map((owner, id) => ({
        id,
        label: labels[String(id)] ?? null,
        owner,
        clickable: humanTurn && s.legal_moves.includes(id),
        forced: m.hints && ann.forced_blocks.includes(id),
        doubleTrap: m.hints && ann.double_trap_move === id,
        inWinningSet: completed.has(id),
        isolated: isolated.has(id),
        inDominatingSet: dom.has(id),
        lastEngineMove: ann.last_engine_move === id,
    }));
}
