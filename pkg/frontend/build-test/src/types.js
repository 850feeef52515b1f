// Wire types mirroring the study server payloads. Trial payloads carry
// only opaque stimulus URLs: method identities never reach the client.
export {};
