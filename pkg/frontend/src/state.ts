/**
 * Session view-model.
 *
 * Holds the latest service responses plus UI-only state (selected matrix,
 * inline violations, staged what-if). The invariant that matters: the
 * revision shown to the user always comes from the newest accepted
 * response, and a conflict wipes optimistic assumptions instead of
 * papering over them.
 */

import type {
  Report,
  SessionView,
  ViolationDetail,
  WhatIfAction,
  WhatIfReport,
} from "./types.js";

export interface InlineViolation {
  matrix: string;
  i: number;
  j: number;
  detail: ViolationDetail;
}

export interface StagedWhatIf {
  action: WhatIfAction;
  preview: WhatIfReport;
}

export class SessionState {
  session: SessionView | null = null;
  report: Report | null = null;
  selectedMatrix: string | null = null;
  violation: InlineViolation | null = null;
  staged: StagedWhatIf | null = null;
  conflict: { currentRevision: number } | null = null;
  busy = false;

  get revision(): number {
    if (!this.session) throw new Error("no session loaded");
    return this.session.revision;
  }

  applySession(view: SessionView): void {
    this.session = view;
    this.conflict = null;
    if (!this.selectedMatrix || !view.matrices.some((m) => m.key === this.selectedMatrix)) {
      this.selectedMatrix = view.matrices[0]?.key ?? null;
    }
  }

  applyReport(report: Report): void {
    this.report = report;
  }

  applyViolation(matrix: string, i: number, j: number, detail: ViolationDetail): void {
    this.violation = { matrix, i, j, detail };
  }

  clearViolation(): void {
    this.violation = null;
  }

  applyConflict(currentRevision: number): void {
    this.conflict = { currentRevision };
    this.staged = null;
  }

  stageWhatIf(action: WhatIfAction, preview: WhatIfReport): void {
    this.staged = { action, preview };
  }

  discardWhatIf(): void {
    this.staged = null;
  }
}
