/**
 * Application wiring: session bootstrap, 1-second report polling, one
 * in-flight mutation at a time, and revision-conflict recovery (banner
 * plus a forced refresh; a stale tab never overwrites a newer revision).
 */

import { ApiClient, JudgmentViolationError, RevisionConflictError } from "./api.js";
import { clear, h } from "./dom.js";
import { renderJudgmentGrid } from "./grid.js";
import { renderReversalPanel } from "./panel.js";
import { SessionState } from "./state.js";
import type { WhatIfAction } from "./types.js";

export interface AppContext {
  client: ApiClient;
  state: SessionState;
  rerender(): void;
}

export async function submitJudgment(
  ctx: AppContext,
  matrix: string,
  i: number,
  j: number,
  value: string,
): Promise<void> {
  const { client, state } = ctx;
  if (!state.session || state.busy) return;
  state.busy = true;
  try {
    const res = await client.putJudgment(state.session.id, state.revision, {
      matrix,
      i,
      j,
      value,
    });
    state.applySession(res.session);
    state.clearViolation();
  } catch (err) {
    if (err instanceof RevisionConflictError) {
      state.applyConflict(err.currentRevision);
      state.applySession(await client.getSession(state.session.id));
      state.conflict = { currentRevision: err.currentRevision };
    } else if (err instanceof JudgmentViolationError) {
      state.applyViolation(matrix, i, j, err.detail);
    } else {
      throw err;
    }
  } finally {
    state.busy = false;
    ctx.rerender();
  }
}

export async function stageWhatIf(ctx: AppContext, action: WhatIfAction): Promise<void> {
  const { client, state } = ctx;
  if (!state.session) return;
  const preview = await client.whatIf(state.session.id, action);
  state.stageWhatIf(action, preview);
  ctx.rerender();
}

export async function commitStagedWhatIf(ctx: AppContext): Promise<void> {
  const { client, state } = ctx;
  if (!state.session || !state.staged) return;
  try {
    const res = await client.commitWhatIf(
      state.session.id,
      state.revision,
      state.staged.action,
    );
    state.applySession(res.session);
    state.discardWhatIf();
  } catch (err) {
    if (err instanceof RevisionConflictError) {
      state.applyConflict(err.currentRevision);
      state.applySession(await client.getSession(state.session.id));
      state.conflict = { currentRevision: err.currentRevision };
    } else {
      throw err;
    }
  }
  ctx.rerender();
}

export async function refreshReport(ctx: AppContext): Promise<void> {
  const { client, state } = ctx;
  if (!state.session) return;
  state.applyReport(await client.getReport(state.session.id));
  ctx.rerender();
}

export function startPolling(ctx: AppContext, intervalMs = 1000): () => void {
  const timer = setInterval(() => {
    void refreshReport(ctx).catch(() => {
      /* transient polling errors surface on the next tick */
    });
  }, intervalMs);
  return () => clearInterval(timer);
}

export function renderApp(root: HTMLElement, ctx: AppContext): void {
  const { state } = ctx;
  clear(root);
  if (state.conflict) {
    root.append(
      h(
        "div",
        { class: "conflict-banner" },
        `This session changed in another tab (now at revision ${state.conflict.currentRevision}); ` +
          "the view has been refreshed. Re-apply your last edit if still wanted.",
      ),
    );
  }
  if (!state.session) {
    root.append(h("div", { class: "no-session" }, "no session loaded"));
    return;
  }
  root.append(
    h(
      "div",
      { class: "session-bar" },
      h("strong", {}, state.session.goal),
      h("span", { class: "revision" }, ` revision ${state.session.revision}`),
    ),
  );
  const tabs = h("div", { class: "matrix-tabs" });
  for (const m of state.session.matrices) {
    tabs.append(
      h(
        "button",
        {
          class: m.key === state.selectedMatrix ? "tab tab-active" : "tab",
          onclick: () => {
            state.selectedMatrix = m.key;
            ctx.rerender();
          },
        },
        m.key,
      ),
    );
  }
  root.append(tabs);
  const gridRoot = h("div", { class: "grid-root" });
  const selected = state.session.matrices.find((m) => m.key === state.selectedMatrix);
  if (selected) {
    renderJudgmentGrid(gridRoot, selected, state.violation, {
      onJudgment: (matrix, i, j, value) => void submitJudgment(ctx, matrix, i, j, value),
    });
  }
  const panelRoot = h("div", { class: "panel-root" });
  renderReversalPanel(panelRoot, state.report, state.staged, {
    onStage: (action) => void stageWhatIf(ctx, action),
    onCommit: () => void commitStagedWhatIf(ctx),
    onDiscard: () => {
      state.discardWhatIf();
      ctx.rerender();
    },
  });
  root.append(gridRoot, panelRoot);
}

function apiBase(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("api");
  return fromQuery ?? "http://localhost:8000";
}

export function bootstrap(root: HTMLElement): void {
  const client = new ApiClient(apiBase());
  const state = new SessionState();
  const ctx: AppContext = {
    client,
    state,
    rerender: () => renderApp(appRoot, ctx),
  };

  const picker = h(
    "div",
    { class: "bootstrap" },
    h("p", {}, "Load a hierarchy document to start a session:"),
    h("input", {
      type: "file",
      class: "seed-file",
      onchange: async (ev) => {
        const file = (ev.target as HTMLInputElement).files?.[0];
        if (!file) return;
        const seed = JSON.parse(await file.text());
        state.applySession(await client.createSession({ seed }));
        await refreshReport(ctx);
        startPolling(ctx);
        picker.remove();
        ctx.rerender();
      },
    }),
  );
  const appRoot = h("div", { class: "app-root" });
  root.append(picker, appRoot);
}
