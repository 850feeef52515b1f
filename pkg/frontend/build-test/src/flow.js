export const realClock = {
    now: () => (typeof performance !== "undefined" ? performance.now() : Date.now()),
    wait: (ms) => new Promise((resolve) => setTimeout(resolve, ms)),
};
/**
 * Drives one participant session: for every trial the interstitial is
 * held for the server-configured duration, the pair is shown, and the
 * choice is submitted with the measured response time. The server cursor
 * is the only source of position, so reloading the page (a fresh flow on
 * the same session) resumes exactly where it stopped, and a retried vote
 * can never double-count.
 */
export class ExperimentFlow {
    constructor(api, sessionId, renderer, clock = realClock) {
        this.api = api;
        this.sessionId = sessionId;
        this.renderer = renderer;
        this.clock = clock;
    }
    async run() {
        let submitted = 0;
        for (;;) {
            const view = await this.api.fetchTrial(this.sessionId);
            if (view.done) {
                this.renderer.showDone(view.total);
                return submitted;
            }
            this.renderer.showInterstitial(view);
            await this.clock.wait(view.interstitial_ms ?? 3000);
            const shownAt = this.clock.now();
            const choice = await this.renderer.showTrial(view);
            const responseMs = Math.round(this.clock.now() - shownAt);
            await this.api.submitVote(this.sessionId, view.index, choice, responseMs);
            submitted += 1;
        }
    }
}
