import type { Report, SessionView, WhatIfReport } from "../src/types";
import sessionFixture from "./fixtures/car-session.json";
import reportFixture from "./fixtures/car-report.json";
import whatifFixture from "./fixtures/car-whatif.json";

export const carSession = sessionFixture as unknown as SessionView;
export const carReport = reportFixture as unknown as Report;
export const carWhatIf = whatifFixture as unknown as WhatIfReport;

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

/** fetch stub that records calls and replays queued responses in order. */
export function fetchStub(responses: Response[]) {
  const calls: { url: string; init?: RequestInit }[] = [];
  const fn = async (input: RequestInfo | URL, init?: RequestInit): Promise<Response> => {
    calls.push({ url: String(input), init });
    const next = responses.shift();
    if (!next) throw new Error("fetch stub exhausted");
    return next;
  };
  return { fn: fn as typeof fetch, calls };
}

export function deepCopy<T>(value: T): T {
  return JSON.parse(JSON.stringify(value)) as T;
}
