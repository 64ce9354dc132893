import type {
  CreateSessionRequest,
  ExchangeView,
  HealthView,
  HintsView,
  SessionView,
  WhatIfView,
} from './types.js';

/** An error body from the service: {"error": {"code", "message"}}. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

export interface DraftApi {
  health(): Promise<HealthView>;
  createSession(request: CreateSessionRequest): Promise<SessionView>;
  getSession(id: string): Promise<SessionView>;
  submitMove(id: string, agent: string): Promise<ExchangeView>;
  getHints(id: string): Promise<HintsView>;
  whatIf(id: string, agent: string): Promise<WhatIfView>;
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(path, init);
  if (!res.ok) {
    let code = `http_${res.status}`;
    let message = res.statusText;
    try {
      const body = await res.json();
      if (body && body.error) {
        code = body.error.code;
        message = body.error.message;
      }
    } catch {
      // non-JSON error body; keep the status text
    }
    throw new ApiError(res.status, code, message);
  }
  return res.json() as Promise<T>;
}

function postJson<T>(path: string, payload: unknown): Promise<T> {
  return request<T>(path, {
    method: 'POST',
    headers: { 'Content-Type': 'application/json' },
    body: JSON.stringify(payload),
  });
}

export function httpApi(base = ''): DraftApi {
  return {
    health: () => request<HealthView>(`${base}/healthz`),
    createSession: (req) => postJson<SessionView>(`${base}/sessions`, req),
    getSession: (id) => request<SessionView>(`${base}/sessions/${id}`),
    submitMove: (id, agent) =>
      postJson<ExchangeView>(`${base}/sessions/${id}/moves`, { agent }),
    getHints: (id) => request<HintsView>(`${base}/sessions/${id}/hints`),
    whatIf: (id, agent) =>
      request<WhatIfView>(
        `${base}/sessions/${id}/whatif?agent=${encodeURIComponent(agent)}`,
      ),
  };
}
