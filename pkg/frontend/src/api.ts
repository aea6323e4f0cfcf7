/** Typed client for the mbtd session service. The UI holds no game logic
 * of its own beyond legality pre-filtering from the server's legal-move
 * list; the server is the source of truth. */

export type PlayerName = "dominator" | "staller";

export interface GraphPayload {
    n: number;
    edges: [number, number][];
    labels?: Record<string, string>;
}

export interface Annotations {
    one_move_completions: number[];
    forced_blocks: number[];
    double_trap_move: number | null;
    last_engine_move: number | null;
}

export interface GameState {
    session_id: string;
    graph: GraphPayload;
    owners: (PlayerName | null)[];
    to_move: PlayerName | null;
    status: "ongoing" | "dominator_won" | "staller_won";
    human_role: PlayerName;
    engine_role: PlayerName;
    legal_moves: number[];
    moves: { player: PlayerName; vertex: number }[];
    live_sets: number[][];
    annotations: Annotations;
    completed_neighborhood: { isolated: number[]; vertices: number[] } | null;
    dominating_set: number[] | null;
    family: (string | number)[] | null;
}

export interface GeneratorCatalog {
    families: Record<string, { params: string[]; description: string }>;
}

export class ApiError extends Error {
    constructor(public status: number, message: string, public payload?: unknown) {
        super(message);
    }
}

async function check(resp: Response): Promise<any> {
    const body = await resp.json().catch(() => null);
    if (!resp.ok) {
        const detail = body && body.detail !== undefined ? body.detail : body;
        throw new ApiError(resp.status, JSON.stringify(detail), detail);
    }
    return body;
}

export class Client {
    constructor(public baseUrl: string = "") {}

    async generators(): Promise<GeneratorCatalog> {
        return check(await fetch(`${this.baseUrl}/generators`));
    }

    async createGame(body: {
        generator?: string;
        params?: number[];
        graph?: GraphPayload;
        human_role: PlayerName;
        first: PlayerName;
    }): Promise<{ session_id: string; state: GameState }> {
        return check(await fetch(`${this.baseUrl}/games`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(body),
        }));
    }

    async state(sessionId: string): Promise<GameState> {
        return check(await fetch(`${this.baseUrl}/games/${sessionId}`));
    }

    async move(sessionId: string, vertex: number): Promise<GameState> {
        return check(await fetch(`${this.baseUrl}/games/${sessionId}/moves`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify({ vertex }),
        }));
    }

    async engineMove(sessionId: string): Promise<{ move: number; state: GameState }> {
        return check(await fetch(`${this.baseUrl}/games/${sessionId}/engine-move`, {
            method: "POST",
        }));
    }
}
