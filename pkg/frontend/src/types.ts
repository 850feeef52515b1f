// Wire types mirroring the study server payloads. Trial payloads carry
// only opaque stimulus URLs: method identities never reach the client.

export type Choice = "left" | "right";

export interface SessionInfo {
    session_id: string;
    total: number;
    interstitial_ms: number;
}

export interface TrialPayload {
    done: boolean;
    index: number;
    total: number;
    left?: string;
    right?: string;
    interstitial_ms?: number;
    trial_background?: string;
    interstitial_background?: string;
}
