import { StudyApi } from "./api.js";
import { ExperimentFlow } from "./flow.js";
const SESSION_KEY = "study-session-id";
/**
 * DOM renderer: stimuli at native resolution (no scaling or filtering),
 * letterboxed on the dark-grey field, choice by click or arrow keys.
 */
class DomRenderer {
    constructor(root, api) {
        this.api = api;
        this.root = root;
    }
    clear(background) {
        this.root.innerHTML = "";
        document.body.style.background = background;
    }
    showInterstitial(view) {
        this.clear(view.interstitial_background ?? "#b4b4b4");
        // warm the cache so both stimuli appear the moment the trial starts
        for (const side of [view.left, view.right]) {
            if (side)
                new Image().src = this.api.stimulusUrl(side);
        }
    }
    showTrial(view) {
        this.clear(view.trial_background ?? "#404040");
        const stage = document.createElement("div");
        stage.className = "stage";
        const prompt = document.createElement("p");
        prompt.className = "prompt";
        prompt.textContent = "Which image do you prefer? Click it, or press ← / →";
        const progress = document.createElement("p");
        progress.className = "progress";
        progress.textContent = `Trial ${view.index + 1} of ${view.total}`;
        const row = document.createElement("div");
        row.className = "pair";
        const imgs = {};
        for (const side of ["left", "right"]) {
            const img = document.createElement("img");
            img.src = this.api.stimulusUrl(view[side]);
            img.draggable = false;
            imgs[side] = img;
            row.appendChild(img);
        }
        stage.append(prompt, row, progress);
        this.root.appendChild(stage);
        return new Promise((resolve) => {
            let settled = false;
            const pick = (choice) => {
                if (settled)
                    return;
                settled = true;
                document.removeEventListener("keydown", onKey);
                resolve(choice);
            };
            const onKey = (event) => {
                if (event.key === "ArrowLeft")
                    pick("left");
                if (event.key === "ArrowRight")
                    pick("right");
            };
            document.addEventListener("keydown", onKey);
            imgs.left.addEventListener("click", () => pick("left"));
            imgs.right.addEventListener("click", () => pick("right"));
        });
    }
    showDone(total) {
        this.clear("#b4b4b4");
        const msg = document.createElement("div");
        msg.className = "stage";
        msg.innerHTML = `<h1>All done</h1><p>You completed ${total} trials. Thank you!</p>`;
        this.root.appendChild(msg);
    }
    showMessage(text) {
        this.clear("#b4b4b4");
        const msg = document.createElement("div");
        msg.className = "stage";
        msg.textContent = text;
        this.root.appendChild(msg);
    }
}
async function resumeOrCreateSession(api) {
    const stored = window.localStorage.getItem(SESSION_KEY);
    if (stored) {
        try {
            await api.fetchTrial(stored);
            return stored;
        }
        catch {
            window.localStorage.removeItem(SESSION_KEY);
        }
    }
    let participant = "";
    while (!participant) {
        participant = (window.prompt("Participant label:") ?? "").trim();
    }
    const info = await api.createSession(participant);
    window.localStorage.setItem(SESSION_KEY, info.session_id);
    return info.session_id;
}
export async function boot() {
    const root = document.getElementById("app");
    if (!root)
        throw new Error("missing #app container");
    const api = new StudyApi("");
    const renderer = new DomRenderer(root, api);
    const sessionId = await resumeOrCreateSession(api);
    try {
        await new ExperimentFlow(api, sessionId, renderer).run();
        window.localStorage.removeItem(SESSION_KEY);
    }
    catch (err) {
        renderer.showMessage(`Connection problem: ${String(err)}. Reload to resume where you left off.`);
        throw err;
    }
}
if (typeof document !== "undefined") {
    void boot();
}
