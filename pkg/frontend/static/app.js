"use strict";
// Browser client for the dictionary game. The client never computes graph
// numbers itself: everything rendered is echoed from a server response.
const view = {
    sessionId: null,
    prompt: null,
    definedCount: 0,
    pendingCount: 0,
    definedWords: [],
    pendingWords: [],
    complete: false,
    lastError: null,
    summary: null,
};
let requestPending = false;
function element(id) {
    const found = document.getElementById(id);
    if (!found)
        throw new Error(`missing element #${id}`);
    return found;
}
const appRoot = element("app");
const errorBanner = element("error-banner");
const startPanel = element("start-panel");
const seedInput = element("seed-input");
const startButton = element("start-button");
const playPanel = element("play-panel");
const progressLine = element("progress");
const promptWord = element("prompt-word");
const definitionInput = element("definition-input");
const submitButton = element("submit-button");
const wordList = element("word-list");
const summaryPanel = element("summary-panel");
async function api(method, path, payload) {
    const options = { method };
    if (payload !== undefined) {
        options.headers = { "Content-Type": "application/json" };
        options.body = JSON.stringify(payload);
    }
    const response = await fetch(path, options);
    let body = null;
    try {
        body = await response.json();
    }
    catch {
        body = null;
    }
    return { status: response.status, body };
}
function errorMessage(result) {
    const body = result.body;
    if (body && typeof body.error === "string")
        return body.error;
    return `server error (${result.status})`;
}
function applyState(state) {
    view.sessionId = state.id;
    view.definedCount = state.defined_count;
    view.pendingCount = state.pending_count;
    view.definedWords = Object.keys(state.defined);
    view.pendingWords = state.pending.slice();
    view.complete = state.status === "complete";
}
function renderProgress() {
    progressLine.textContent =
        `${view.definedCount} defined, ${view.pendingCount} to go`;
    wordList.textContent = "";
    for (const word of view.definedWords) {
        const item = document.createElement("li");
        item.textContent = word;
        wordList.appendChild(item);
    }
    for (const word of view.pendingWords) {
        const item = document.createElement("li");
        item.className = "pending";
        item.textContent = `${word} (to define)`;
        wordList.appendChild(item);
    }
}
function renderSummary(report) {
    summaryPanel.textContent = "";
    const heading = document.createElement("h2");
    heading.textContent = "Your mini-dictionary, analyzed";
    summaryPanel.appendChild(heading);
    const table = document.createElement("table");
    const header = document.createElement("tr");
    for (const label of ["structure", "count", "percent"]) {
        const cell = document.createElement("th");
        cell.textContent = label;
        header.appendChild(cell);
    }
    table.appendChild(header);
    const rows = [
        ["rest", report.rest],
        ["kernel", report.kernel],
        ["satellites", report.satellites],
        ["core", report.core],
        ["minset", report.minset],
        ["satellites_minset", report.satellites_minset],
        ["core_minset", report.core_minset],
    ];
    const total = document.createElement("tr");
    const totalCells = ["total words", String(report.words), ""];
    for (const text of totalCells) {
        const cell = document.createElement("td");
        cell.textContent = text;
        total.appendChild(cell);
    }
    table.appendChild(total);
    for (const [label, value] of rows) {
        const row = document.createElement("tr");
        row.dataset.structure = label;
        const name = document.createElement("td");
        name.textContent = label;
        const count = document.createElement("td");
        count.className = "count";
        count.textContent = String(value.count);
        const percent = document.createElement("td");
        percent.className = "percent";
        percent.textContent = String(value.percent);
        row.appendChild(name);
        row.appendChild(count);
        row.appendChild(percent);
        table.appendChild(row);
    }
    summaryPanel.appendChild(table);
    const members = document.createElement("p");
    members.id = "minset-members";
    members.textContent =
        `One minimal grounding set (${report.minset_status}): ` +
            report.minset_members.join(", ");
    summaryPanel.appendChild(members);
}
function render() {
    if (view.lastError) {
        errorBanner.textContent = view.lastError;
        errorBanner.hidden = false;
    }
    else {
        errorBanner.hidden = true;
    }
    if (view.sessionId) {
        appRoot.dataset.sessionId = view.sessionId;
    }
    startPanel.hidden = view.sessionId !== null;
    playPanel.hidden = view.sessionId === null || view.complete;
    summaryPanel.hidden = view.summary === null;
    if (view.prompt)
        promptWord.textContent = view.prompt;
    renderProgress();
    if (view.summary)
        renderSummary(view.summary);
    const busy = requestPending;
    startButton.disabled = busy;
    seedInput.disabled = busy;
    submitButton.disabled = busy || view.complete;
    definitionInput.disabled = busy || view.complete;
}
async function refreshPrompt() {
    const next = await api("GET", `/sessions/${view.sessionId}/next`);
    if (next.status !== 200) {
        view.lastError = errorMessage(next);
        return;
    }
    const body = next.body;
    if (body.complete) {
        view.complete = true;
        view.prompt = null;
        const analysis = await api("GET", `/sessions/${view.sessionId}/analysis`);
        if (analysis.status === 200) {
            view.summary = analysis.body;
        }
        else {
            view.lastError = errorMessage(analysis);
        }
    }
    else {
        view.prompt = body.word ?? null;
    }
}
async function startGame() {
    const seed = seedInput.value.trim();
    if (!seed) {
        view.lastError = "type a word to start with";
        render();
        return;
    }
    requestPending = true;
    render();
    try {
        const created = await api("POST", "/sessions", { seed_word: seed });
        if (created.status !== 201) {
            view.lastError = errorMessage(created);
            return;
        }
        const id = created.body.id;
        const state = await api("GET", `/sessions/${id}`);
        if (state.status !== 200) {
            view.lastError = errorMessage(state);
            return;
        }
        view.lastError = null;
        applyState(state.body);
        await refreshPrompt();
    }
    finally {
        requestPending = false;
        render();
    }
}
async function submitDefinition() {
    if (!view.sessionId || !view.prompt)
        return;
    const tokens = definitionInput.value.split(/\s+/).filter((t) => t.length > 0);
    requestPending = true;
    render();
    try {
        const result = await api("POST", `/sessions/${view.sessionId}/definitions`, { word: view.prompt, tokens });
        if (result.status !== 200) {
            view.lastError = errorMessage(result); // input left intact for editing
            return;
        }
        view.lastError = null;
        definitionInput.value = "";
        applyState(result.body);
        await refreshPrompt();
    }
    finally {
        requestPending = false;
        render();
    }
}
startButton.addEventListener("click", () => { void startGame(); });
seedInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter")
        void startGame();
});
submitButton.addEventListener("click", () => { void submitDefinition(); });
definitionInput.addEventListener("keydown", (event) => {
    if (event.key === "Enter")
        void submitDefinition();
});
render();
