// Scripted end-to-end session against the real study server. Opt-in via
// RUN_E2E=1 (npm run test:e2e): it spawns the Python server, completes a
// 100-trial session with a mid-session "page reload", checks the vote
// export feeds the analysis CLI untouched, and measures the interstitial
// hold time against the configured 3 seconds.
import { test } from "node:test";
import assert from "node:assert/strict";
import { spawn, spawnSync } from "node:child_process";
import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { StudyApi } from "../src/api.js";
import { ExperimentFlow, realClock } from "../src/flow.js";
const RUN = process.env.RUN_E2E === "1";
const FIXTURE_SCRIPT = `
import sys
import numpy as np
from pathlib import Path
from gamutpress.hdr_io import encode_sdr_png

root = Path(sys.argv[1])
interstitial_ms = int(sys.argv[2])
rng = np.random.RandomState(0)
images = [f"img{i}.png" for i in range(10)]
methods = ["m1", "m2", "m3", "m4", "m5"]
for m in methods:
    d = root / "renders" / m
    d.mkdir(parents=True, exist_ok=True)
    for name in images:
        (d / name).write_bytes(encode_sdr_png(rng.rand(8, 8, 3)))
lines = [f"interstitial_ms = {interstitial_ms}"]
lines.append("images = [" + ", ".join(f'"{n}"' for n in images) + "]")
lines.append("[methods]")
for m in methods:
    lines.append(f'{m} = "renders/{m}"')
(root / "study.toml").write_text("\\n".join(lines) + "\\n")
`;
function makeFixture(interstitialMs) {
    const dir = mkdtempSync(join(tmpdir(), "study-e2e-"));
    writeFileSync(join(dir, "gen.py"), FIXTURE_SCRIPT);
    const result = spawnSync("python3", [join(dir, "gen.py"), dir, String(interstitialMs)], {
        encoding: "utf-8",
    });
    assert.equal(result.status, 0, `fixture generation failed: ${result.stderr}`);
    return dir;
}
async function startServer(dir, port) {
    const child = spawn("python3", ["-m", "gamutpress.cli", "study", "serve", "--config", join(dir, "study.toml"), "--port", String(port)], { stdio: "ignore" });
    const base = `http://127.0.0.1:${port}`;
    for (let tries = 0; tries < 100; tries += 1) {
        try {
            const resp = await fetch(`${base}/api/export.csv`);
            if (resp.ok)
                return child;
        }
        catch {
            /* not up yet */
        }
        await new Promise((r) => setTimeout(r, 100));
    }
    child.kill("SIGKILL");
    throw new Error("study server did not come up");
}
class HeadlessRenderer {
    constructor(choose, stopAfter = Infinity) {
        this.choose = choose;
        this.interstitialShownAt = [];
        this.trialShownAt = [];
        this.answered = 0;
        this.stopAfter = stopAfter;
    }
    showInterstitial() {
        this.interstitialShownAt.push(realClock.now());
    }
    async showTrial(view) {
        this.trialShownAt.push(realClock.now());
        if (this.answered >= this.stopAfter) {
            return new Promise(() => undefined); // tab closed mid-trial
        }
        this.answered += 1;
        return this.choose(view);
    }
    showDone() {
        /* nothing to render */
    }
}
test("scripted 100-trial session with mid-session reload", { skip: !RUN, timeout: 120_000 }, async () => {
    const dir = makeFixture(40);
    const port = 8931;
    const server = await startServer(dir, port);
    try {
        const base = `http://127.0.0.1:${port}`;
        const api = new StudyApi(base);
        const info = await api.createSession("e2e-participant", 7);
        assert.equal(info.total, 100); // 10 images x C(5,2) pairs
        // first visit: answer 30 trials, then the page "dies" mid-trial
        const first = new HeadlessRenderer((v) => (v.index % 3 ? "left" : "right"), 30);
        void new ExperimentFlow(api, info.session_id, first).run();
        while (first.answered < 30)
            await new Promise((r) => setTimeout(r, 25));
        await new Promise((r) => setTimeout(r, 300)); // let the last vote land
        // reload: a fresh flow resumes at the server cursor
        const second = new HeadlessRenderer(() => "right");
        const submitted = await new ExperimentFlow(api, info.session_id, second).run();
        assert.equal(submitted, 70);
        const csv = await (await fetch(`${base}/api/export.csv`)).text();
        const rows = csv.trim().split("\n");
        assert.equal(rows[0], "participant,image_id,method_a,method_b,chosen,response_ms");
        assert.equal(rows.length, 101); // header + exactly 100 votes, none lost or duplicated
        // the export feeds the analysis CLI without transformation
        const votesPath = join(dir, "votes.csv");
        writeFileSync(votesPath, csv);
        const analysis = spawnSync("python3", ["-m", "gamutpress.cli", "pcomp", "analyze", "--votes", votesPath, "--R", "90"], { encoding: "utf-8" });
        assert.equal(analysis.status, 0, analysis.stderr);
        assert.match(analysis.stdout, /coefficient of consistency/);
        assert.match(analysis.stdout, /groups at R=90/);
    }
    finally {
        server.kill("SIGKILL");
        rmSync(dir, { recursive: true, force: true });
    }
});
test("interstitial holds for 3000 +/- 100 ms", { skip: !RUN, timeout: 60_000 }, async () => {
    const dir = makeFixture(3000);
    const port = 8932;
    const server = await startServer(dir, port);
    try {
        const api = new StudyApi(`http://127.0.0.1:${port}`);
        const info = await api.createSession("timing-participant", 1);
        const renderer = new HeadlessRenderer(() => "left", 3);
        void new ExperimentFlow(api, info.session_id, renderer).run();
        while (renderer.trialShownAt.length < 3)
            await new Promise((r) => setTimeout(r, 50));
        for (let i = 0; i < 3; i += 1) {
            const held = renderer.trialShownAt[i] - renderer.interstitialShownAt[i];
            assert.ok(Math.abs(held - 3000) <= 100, `interstitial held ${held.toFixed(0)} ms`);
        }
    }
    finally {
        server.kill("SIGKILL");
        rmSync(dir, { recursive: true, force: true });
    }
});
