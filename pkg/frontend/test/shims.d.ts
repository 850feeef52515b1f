// Minimal ambient declarations for the node builtins the tests use, so
// the test build does not depend on @types/node being installed.

declare module "node:test" {
    interface TestOptions {
        skip?: boolean | string;
        timeout?: number;
    }
    type TestFn = () => void | Promise<void>;
    export function test(name: string, fn: TestFn): Promise<void>;
    export function test(name: string, options: TestOptions, fn: TestFn): Promise<void>;
    export function before(fn: TestFn, options?: TestOptions): void;
    export function after(fn: TestFn, options?: TestOptions): void;
}

declare module "node:assert/strict" {
    interface Assert {
        (value: unknown, message?: string): asserts value;
        equal(actual: unknown, expected: unknown, message?: string): void;
        notEqual(actual: unknown, expected: unknown, message?: string): void;
        deepEqual(actual: unknown, expected: unknown, message?: string): void;
        ok(value: unknown, message?: string): asserts value;
        fail(message?: string): never;
        match(value: string, pattern: RegExp, message?: string): void;
        rejects(block: Promise<unknown> | (() => Promise<unknown>), message?: string): Promise<void>;
    }
    const assert: Assert;
    export default assert;
}

declare module "node:child_process" {
    export interface ChildProcess {
        pid?: number;
        kill(signal?: string): boolean;
        on(event: string, listener: (...args: unknown[]) => void): void;
        stdout: { on(event: string, listener: (chunk: unknown) => void): void } | null;
        stderr: { on(event: string, listener: (chunk: unknown) => void): void } | null;
    }
    export function spawn(
        command: string,
        args: string[],
        options?: { stdio?: unknown; cwd?: string; env?: Record<string, string | undefined> },
    ): ChildProcess;
    export function spawnSync(
        command: string,
        args: string[],
        options?: { encoding?: string; cwd?: string; input?: string },
    ): { status: number | null; stdout: string; stderr: string };
}

declare module "node:fs" {
    export function mkdtempSync(prefix: string): string;
    export function writeFileSync(path: string, data: string): void;
    export function readFileSync(path: string, encoding: string): string;
    export function rmSync(path: string, options?: { recursive?: boolean; force?: boolean }): void;
    export function existsSync(path: string): boolean;
}

declare module "node:os" {
    export function tmpdir(): string;
}

declare module "node:path" {
    export function join(...parts: string[]): string;
}

declare const process: {
    env: Record<string, string | undefined>;
    platform: string;
};
