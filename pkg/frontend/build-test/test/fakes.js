// Deterministic stand-ins for the clock, renderer and server used by the
// flow tests. MockServer mimics the real API's cursor semantics,
// including the 409 duplicate guard and injectable failures.
export class FakeClock {
    constructor() {
        this.current = 0;
        this.timers = [];
        this.waits = [];
    }
    now() {
        return this.current;
    }
    wait(ms) {
        this.waits.push(ms);
        return new Promise((resolve) => {
            this.timers.push({ due: this.current + ms, resolve });
        });
    }
    async flush() {
        // each await releases the queue once; chained awaits in the code
        // under test queue further microtasks, so release repeatedly
        for (let i = 0; i < 50; i += 1)
            await Promise.resolve();
    }
    async advance(ms) {
        this.current += ms;
        const due = this.timers.filter((t) => t.due <= this.current);
        this.timers = this.timers.filter((t) => t.due > this.current);
        for (const timer of due)
            timer.resolve();
        await this.flush();
    }
    /** Keep advancing in steps until the code under test goes quiet. */
    async drain(step = 100, cap = 10_000_000) {
        let spent = 0;
        let idleRounds = 0;
        while (spent < cap && idleRounds < 3) {
            await this.flush();
            if (this.timers.length === 0) {
                idleRounds += 1;
                continue;
            }
            idleRounds = 0;
            await this.advance(step);
            spent += step;
        }
    }
}
export class MockServer {
    constructor(total, interstitialMs = 3000) {
        this.total = total;
        this.interstitialMs = interstitialMs;
        this.votes = [];
        this.cursor = 0;
        this.voteFailuresBeforeReach = 0; // network failures before the server sees it
        this.ackLossesAfterCommit = 0; // server commits, then the response is lost
        this.trialFetchFailures = 0;
        this.fetch = async (input, init) => {
            if (input.endsWith("/trial")) {
                if (this.trialFetchFailures > 0) {
                    this.trialFetchFailures -= 1;
                    throw new TypeError("network down");
                }
                return jsonResponse(this.trialView());
            }
            if (input.endsWith("/vote")) {
                if (this.voteFailuresBeforeReach > 0) {
                    this.voteFailuresBeforeReach -= 1;
                    throw new TypeError("network down");
                }
                const body = JSON.parse(String(init?.body));
                if (body.index !== this.cursor) {
                    return jsonResponse({ detail: "out of order" }, 409);
                }
                this.votes.push({ index: body.index, choice: body.choice, response_ms: body.response_ms });
                this.cursor += 1;
                if (this.ackLossesAfterCommit > 0) {
                    this.ackLossesAfterCommit -= 1;
                    throw new TypeError("connection reset before response");
                }
                return jsonResponse({ ok: true, index: this.cursor });
            }
            if (input.endsWith("/api/session")) {
                return jsonResponse({ session_id: "s1", total: this.total, interstitial_ms: this.interstitialMs });
            }
            throw new Error(`unexpected url ${input}`);
        };
    }
    trialView() {
        if (this.cursor >= this.total) {
            return { done: true, index: this.cursor, total: this.total };
        }
        return {
            done: false,
            index: this.cursor,
            total: this.total,
            left: `/api/session/s1/stimulus/${this.cursor}/left.png`,
            right: `/api/session/s1/stimulus/${this.cursor}/right.png`,
            interstitial_ms: this.interstitialMs,
            trial_background: "#404040",
            interstitial_background: "#b4b4b4",
        };
    }
}
function jsonResponse(payload, status = 200) {
    return new Response(JSON.stringify(payload), {
        status,
        headers: { "content-type": "application/json" },
    });
}
export class ScriptRenderer {
    constructor(choose, clock, thinkMs = 0) {
        this.choose = choose;
        this.clock = clock;
        this.thinkMs = thinkMs;
        this.interstitials = [];
        this.trials = [];
        this.doneTotal = null;
    }
    showInterstitial(view) {
        this.interstitials.push(view);
    }
    async showTrial(view) {
        this.trials.push(view);
        if (this.thinkMs > 0)
            await this.clock.wait(this.thinkMs);
        return this.choose(view);
    }
    showDone(total) {
        this.doneTotal = total;
    }
}
