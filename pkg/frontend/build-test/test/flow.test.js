import { test } from "node:test";
import assert from "node:assert/strict";
import { StudyApi } from "../src/api.js";
import { ExperimentFlow } from "../src/flow.js";
import { FakeClock, MockServer, ScriptRenderer } from "./fakes.js";
function makeWorld(total, interstitialMs = 3000) {
    const clock = new FakeClock();
    const server = new MockServer(total, interstitialMs);
    const api = new StudyApi("", server.fetch, 5, 50, (ms) => clock.wait(ms));
    return { clock, server, api };
}
test("completes a 100-trial session with exactly one vote per trial", async () => {
    const { clock, server, api } = makeWorld(100);
    const renderer = new ScriptRenderer((view) => (view.index % 2 ? "left" : "right"), clock);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(1000);
    assert.equal(await done, 100);
    assert.equal(server.votes.length, 100);
    assert.deepEqual(server.votes.map((v) => v.index), Array.from({ length: 100 }, (_, i) => i));
    assert.equal(renderer.doneTotal, 100);
    assert.equal(renderer.interstitials.length, 100);
});
test("holds the interstitial for the configured duration on every trial", async () => {
    const { clock, api } = makeWorld(5, 3000);
    const renderer = new ScriptRenderer(() => "left", clock);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(100);
    await done;
    assert.deepEqual(clock.waits, [3000, 3000, 3000, 3000, 3000]);
});
test("reports the response time measured from stimulus onset", async () => {
    const { clock, server, api } = makeWorld(3, 1000);
    const renderer = new ScriptRenderer(() => "right", clock, 750);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(250);
    await done;
    for (const vote of server.votes) {
        assert.equal(vote.response_ms, 750);
    }
});
test("trial payloads expose only opaque stimulus URLs", async () => {
    const { clock, api } = makeWorld(4, 100);
    const renderer = new ScriptRenderer(() => "left", clock);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(50);
    await done;
    for (const view of renderer.trials) {
        assert.match(view.left, /^\/api\/session\/s1\/stimulus\/\d+\/left\.png$/);
        assert.match(view.right, /^\/api\/session\/s1\/stimulus\/\d+\/right\.png$/);
    }
});
test("a refreshed session resumes at the server cursor without duplicates", async () => {
    const { clock, server, api } = makeWorld(10, 200);
    let answered = 0;
    const interruptingRenderer = new ScriptRenderer(() => "left", clock);
    const guarded = new (class {
        showInterstitial(v) {
            interruptingRenderer.showInterstitial(v);
        }
        async showTrial(v) {
            if (answered === 4) {
                return new Promise(() => undefined); // user closes the tab mid-trial
            }
            answered += 1;
            return interruptingRenderer.showTrial(v);
        }
        showDone(total) {
            interruptingRenderer.showDone(total);
        }
    })();
    const first = new ExperimentFlow(api, "s1", guarded, clock);
    void first.run();
    await clock.drain(100, 20_000);
    assert.equal(server.votes.length, 4);
    // page reload: a brand-new flow against the same session
    const renderer = new ScriptRenderer(() => "right", clock);
    const second = new ExperimentFlow(api, "s1", renderer, clock);
    const done = second.run();
    await clock.drain(100);
    assert.equal(await done, 6);
    assert.equal(server.votes.length, 10);
    assert.deepEqual(server.votes.map((v) => v.index), Array.from({ length: 10 }, (_, i) => i));
    assert.equal(renderer.trials[0].index, 4);
});
test("network failures during voting are retried without double-counting", async () => {
    const { clock, server, api } = makeWorld(6, 100);
    server.voteFailuresBeforeReach = 2; // first two attempts never reach the server
    const renderer = new ScriptRenderer(() => "left", clock);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(50);
    await done;
    assert.equal(server.votes.length, 6);
});
test("a lost acknowledgment after commit does not duplicate the vote", async () => {
    const { clock, server, api } = makeWorld(5, 100);
    server.ackLossesAfterCommit = 1; // server records the vote, client never hears back
    const renderer = new ScriptRenderer(() => "right", clock);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(50);
    await done;
    assert.equal(server.votes.length, 5);
    assert.deepEqual(server.votes.map((v) => v.index), [0, 1, 2, 3, 4]);
});
test("transient trial-fetch failures are retried", async () => {
    const { clock, server, api } = makeWorld(3, 100);
    server.trialFetchFailures = 2;
    const renderer = new ScriptRenderer(() => "left", clock);
    const flow = new ExperimentFlow(api, "s1", renderer, clock);
    const done = flow.run();
    await clock.drain(50);
    await done;
    assert.equal(server.votes.length, 3);
});
