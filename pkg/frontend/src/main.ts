/** Browser entry point: binds the app to the static page. The service base
 * URL comes from ?api=... or defaults to same-origin. */

import { Client } from "./api.js";
import { FormElements, wireUp } from "./app.js";

function grab<T extends HTMLElement>(id: string): T {
    const node = document.getElementById(id);
    if (!node) throw new Error(`missing #${id}`);
    return node as T;
}

const base = new URLSearchParams(window.location.search).get("api") ?? "";
const form: FormElements = {
    family: grab<HTMLSelectElement>("family"),
    params: grab<HTMLInputElement>("params"),
    role: grab<HTMLSelectElement>("role"),
    first: grab<HTMLSelectElement>("first"),
    start: grab<HTMLButtonElement>("start"),
    hints: grab<HTMLInputElement>("hints"),
};

wireUp(new Client(base), grab<HTMLDivElement>("board"), form).catch((err) => {
    grab<HTMLDivElement>("board").textContent = `failed to reach the service: ${err}`;
});
