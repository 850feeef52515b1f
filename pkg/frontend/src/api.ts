import { Choice, SessionInfo, TrialPayload } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

/**
 * Thin client over the study server HTTP API.
 *
 * Vote submission is retried on network failure; a 409 response after a
 * retry means the server already committed the vote before the original
 * acknowledgment was lost, so it is treated as success. The trial fetch
 * that follows resynchronizes on the server-side cursor either way.
 */
export class StudyApi {
    constructor(
        private baseUrl: string = "",
        private fetchFn: FetchLike = (input, init) => fetch(input, init),
        private maxAttempts: number = 5,
        private retryDelayMs: number = 400,
        private sleep: (ms: number) => Promise<void> = (ms) => new Promise((r) => setTimeout(r, ms)),
    ) { }

    private async withRetry<T>(run: () => Promise<T>): Promise<T> {
        let lastError: unknown;
        for (let attempt = 0; attempt < this.maxAttempts; attempt += 1) {
            try {
                return await run();
            } catch (err) {
                lastError = err;
                await this.sleep(this.retryDelayMs);
            }
        }
        throw lastError;
    }

    async createSession(participant: string, seed?: number): Promise<SessionInfo> {
        return this.withRetry(async () => {
            const resp = await this.fetchFn(`${this.baseUrl}/api/session`, {
                method: "POST",
                headers: { "content-type": "application/json" },
                body: JSON.stringify(seed === undefined ? { participant } : { participant, seed }),
            });
            if (!resp.ok) throw new Error(`session creation failed: ${resp.status}`);
            return (await resp.json()) as SessionInfo;
        });
    }

    async fetchTrial(sessionId: string): Promise<TrialPayload> {
        return this.withRetry(async () => {
            const resp = await this.fetchFn(`${this.baseUrl}/api/session/${sessionId}/trial`);
            if (!resp.ok) throw new Error(`trial fetch failed: ${resp.status}`);
            return (await resp.json()) as TrialPayload;
        });
    }

    async submitVote(sessionId: string, index: number, choice: Choice, responseMs: number): Promise<void> {
        let lastError: unknown;
        for (let attempt = 0; attempt < this.maxAttempts; attempt += 1) {
            try {
                const resp = await this.fetchFn(`${this.baseUrl}/api/session/${sessionId}/vote`, {
                    method: "POST",
                    headers: { "content-type": "application/json" },
                    body: JSON.stringify({ index, choice, response_ms: responseMs }),
                });
                if (resp.ok) return;
                if (resp.status === 409) return; // already recorded server-side
                throw new Error(`vote rejected: ${resp.status}`);
            } catch (err) {
                lastError = err;
                await this.sleep(this.retryDelayMs);
            }
        }
        throw lastError;
    }

    stimulusUrl(path: string): string {
        return `${this.baseUrl}${path}`;
    }
}
