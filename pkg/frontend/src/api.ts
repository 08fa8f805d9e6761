/**
 * Typed client for the session service.
 *
 * Every mutation sends `If-Match` with the revision the caller believes is
 * current; a stale revision surfaces as RevisionConflictError so the UI can
 * refresh instead of silently overwriting another tab's work.
 */

import type {
  JudgmentResponse,
  Report,
  SessionView,
  ViolationDetail,
  WhatIfAction,
  WhatIfReport,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    message: string,
    readonly status: number,
  ) {
    super(message);
  }
}

export class RevisionConflictError extends ApiError {
  constructor(readonly currentRevision: number) {
    super(`session has moved on to revision ${currentRevision}`, 409);
  }
}

export class JudgmentViolationError extends ApiError {
  constructor(readonly detail: ViolationDetail) {
    super(detail.message, 422);
  }
}

async function fail(res: Response): Promise<never> {
  let detail: unknown = null;
  try {
    detail = (await res.json()).detail;
  } catch {
    /* non-JSON error body */
  }
  if (res.status === 409 && detail && typeof detail === "object") {
    throw new RevisionConflictError(
      (detail as { current_revision: number }).current_revision,
    );
  }
  if (
    res.status === 422 &&
    detail &&
    typeof detail === "object" &&
    (detail as ViolationDetail).error === "pair-product-bound"
  ) {
    throw new JudgmentViolationError(detail as ViolationDetail);
  }
  const message = typeof detail === "string" ? detail : `HTTP ${res.status}`;
  throw new ApiError(message, res.status);
}

export class ApiClient {
  constructor(readonly baseUrl: string, private readonly fetchFn: typeof fetch = fetch) {}

  private async json<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(`${this.baseUrl}${path}`, {
      headers: { "Content-Type": "application/json", ...(init?.headers ?? {}) },
      ...init,
    });
    if (!res.ok) await fail(res);
    return (await res.json()) as T;
  }

  createSession(body: { seed?: unknown; goal?: string; criteria?: string[]; alternatives?: string[] }) {
    return this.json<SessionView>("/sessions", {
      method: "POST",
      body: JSON.stringify(body),
    });
  }

  getSession(id: string) {
    return this.json<SessionView>(`/sessions/${id}`);
  }

  getReport(id: string) {
    return this.json<Report>(`/sessions/${id}/report`);
  }

  putJudgment(
    id: string,
    revision: number,
    judgment: { matrix: string; i: number; j: number; value: number | string },
  ) {
    return this.json<JudgmentResponse>(`/sessions/${id}/judgment`, {
      method: "PUT",
      headers: { "If-Match": String(revision) },
      body: JSON.stringify(judgment),
    });
  }

  whatIf(id: string, action: WhatIfAction) {
    return this.json<WhatIfReport>(`/sessions/${id}/whatif`, {
      method: "POST",
      body: JSON.stringify(action),
    });
  }

  commitWhatIf(id: string, revision: number, action: WhatIfAction) {
    return this.json<{ session: SessionView; whatif: WhatIfReport }>(
      `/sessions/${id}/commit-whatif`,
      {
        method: "POST",
        headers: { "If-Match": String(revision) },
        body: JSON.stringify(action),
      },
    );
  }

  async deleteSession(id: string): Promise<void> {
    const res = await this.fetchFn(`${this.baseUrl}/sessions/${id}`, { method: "DELETE" });
    if (!res.ok) await fail(res);
  }
}
