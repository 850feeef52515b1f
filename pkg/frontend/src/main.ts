import { StudyApi } from "./api.js";
import { ExperimentFlow, Renderer } from "./flow.js";
import { Choice, TrialPayload } from "./types.js";

const SESSION_KEY = "study-session-id";

/**
 * DOM renderer: stimuli at native resolution (no scaling or filtering),
 * letterboxed on the dark-grey field, choice by click or arrow keys.
 */
class DomRenderer implements Renderer {
    private root: HTMLElement;

    constructor(root: HTMLElement, private api: StudyApi) {
        this.root = root;
    }

    private clear(background: string) {
        this.root.innerHTML = "";
        document.body.style.background = background;
    }

    showInterstitial(view: TrialPayload): void {
        this.clear(view.interstitial_background ?? "#b4b4b4");
        // warm the cache so both stimuli appear the moment the trial starts
        for (const side of [view.left, view.right]) {
            if (side) new Image().src = this.api.stimulusUrl(side);
        }
    }

    showTrial(view: TrialPayload): Promise<Choice> {
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
        const imgs: Partial<Record<Choice, HTMLImageElement>> = {};
        for (const side of ["left", "right"] as const) {
            const img = document.createElement("img");
            img.src = this.api.stimulusUrl(view[side] as string);
            img.draggable = false;
            imgs[side] = img;
            row.appendChild(img);
        }
        stage.append(prompt, row, progress);
        this.root.appendChild(stage);

        return new Promise<Choice>((resolve) => {
            let settled = false;
            const pick = (choice: Choice) => {
                if (settled) return;
                settled = true;
                document.removeEventListener("keydown", onKey);
                resolve(choice);
            };
            const onKey = (event: KeyboardEvent) => {
                if (event.key === "ArrowLeft") pick("left");
                if (event.key === "ArrowRight") pick("right");
            };
            document.addEventListener("keydown", onKey);
            imgs.left!.addEventListener("click", () => pick("left"));
            imgs.right!.addEventListener("click", () => pick("right"));
        });
    }

    showDone(total: number): void {
        this.clear("#b4b4b4");
        const msg = document.createElement("div");
        msg.className = "stage";
        msg.innerHTML = `<h1>All done</h1><p>You completed ${total} trials. Thank you!</p>`;
        this.root.appendChild(msg);
    }

    showMessage(text: string): void {
        this.clear("#b4b4b4");
        const msg = document.createElement("div");
        msg.className = "stage";
        msg.textContent = text;
        this.root.appendChild(msg);
    }
}

async function resumeOrCreateSession(api: StudyApi): Promise<string> {
    const stored = window.localStorage.getItem(SESSION_KEY);
    if (stored) {
        try {
            await api.fetchTrial(stored);
            return stored;
        } catch {
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

export async function boot(): Promise<void> {
    const root = document.getElementById("app");
    if (!root) throw new Error("missing #app container");
    const api = new StudyApi("");
    const renderer = new DomRenderer(root, api);
    const sessionId = await resumeOrCreateSession(api);
    try {
        await new ExperimentFlow(api, sessionId, renderer).run();
        window.localStorage.removeItem(SESSION_KEY);
    } catch (err) {
        renderer.showMessage(`Connection problem: ${String(err)}. Reload to resume where you left off.`);
        throw err;
    }
}

if (typeof document !== "undefined") {
    void boot();
}
