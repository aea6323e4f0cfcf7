/** Application wiring: generator form, click-to-move, automatic engine
 * replies, hint toggle. The model changes only from server responses. */

import { ApiError, Client, GameState, PlayerName } from "./api.js";
import { layoutFor } from "./layout.js";
import { renderBoard } from "./render.js";
import { BoardModel, clickVerdict, emptyModel, isEngineTurn } from "./state.js";

export class App {
    model: BoardModel = emptyModel();
    private sessionId: string | null = null;

    constructor(private client: Client, private boardRoot: HTMLElement,
                private width = 640, private height = 520) {}

    private accept(state: GameState): void {
        this.model.state = state;
        this.model.layout = layoutFor(state.graph, state.family,
                                      this.width, this.height);
        this.render();
    }

    render(): void {
        renderBoard(this.boardRoot, this.model,
                    { onVertexClick: (v) => void this.clickVertex(v) },
                    this.width, this.height);
    }

    async newGame(generator: string, params: number[], humanRole: PlayerName,
                  first: PlayerName): Promise<void> {
        this.model = emptyModel();
        const { session_id, state } = await this.client.createGame({
            generator, params, human_role: humanRole, first,
        });
        this.sessionId = session_id;
        this.accept(state);
        await this.maybeEngineMove();
    }

    toggleHints(on: boolean): void {
        this.model.hints = on;
        this.render();
    }

    /** Click a vertex. Illegal clicks never reach the server on the wrong
     * turn and never change the board; the server's 400 covers the rest. */
    async clickVertex(vertex: number): Promise<void> {
        if (this.model.busy || !this.sessionId) return;
        const verdict = clickVerdict(this.model, vertex);
        if (!verdict.legal) {
            this.model.notice = `ignored: ${verdict.reason}`;
            this.render();
            return;
        }
        this.model.busy = true;
        try {
            const state = await this.client.move(this.sessionId, vertex);
            this.model.notice = "";
            this.accept(state);
        } catch (err) {
            this.model.notice = err instanceof ApiError
                ? `server rejected the move: ${err.message}`
                : `request failed: ${err}`;
            this.render();
        } finally {
            this.model.busy = false;
        }
        await this.maybeEngineMove();
    }

    async maybeEngineMove(): Promise<void> {
        if (!this.sessionId || !isEngineTurn(this.model) || this.model.busy) return;
        this.model.busy = true;
        this.render();
        try {
            const { state } = await this.client.engineMove(this.sessionId);
            this.accept(state);
        } catch (err) {
            this.model.notice = err instanceof ApiError
                ? `engine move failed: ${err.message}`
                : `request failed: ${err}`;
            this.render();
        } finally {
            this.model.busy = false;
            this.render();
        }
    }

    async refresh(): Promise<void> {
        if (!this.sessionId) return;
        this.accept(await this.client.state(this.sessionId));
    }

    currentSession(): string | null {
        return this.sessionId;
    }
}

export interface FormElements {
    family: HTMLSelectElement;
    params: HTMLInputElement;
    role: HTMLSelectElement;
    first: HTMLSelectElement;
    start: HTMLButtonElement;
    hints: HTMLInputElement;
}

export async function wireUp(client: Client, boardRoot: HTMLElement,
                             form: FormElements): Promise<App> {
    const app = new App(client, boardRoot);
    const catalog = await client.generators();
    form.family.replaceChildren();
    for (const [name, info] of Object.entries(catalog.families)) {
        if (name === "truncated") continue; // needs a base graph; CLI-only
        const opt = document.createElement("option");
        opt.value = name;
        opt.textContent = `${name} (${info.params.join(", ") || "no params"})`;
        form.family.appendChild(opt);
    }
    form.family.value = "gp";
    form.params.value = "5 2";
    form.start.addEventListener("click", () => {
        const params = form.params.value.trim().split(/\s+/)
            .filter(Boolean).map(Number);
        void app.newGame(form.family.value, params,
                         form.role.value as PlayerName,
                         form.first.value as PlayerName);
    });
    form.hints.addEventListener("change", () => app.toggleHints(form.hints.checked));
    app.render();
    return app;
}
