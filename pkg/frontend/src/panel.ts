/**
 * Reversal panel: the report's possibility-degree components as
 * percentages, the current winner, and a what-if explorer whose previews
 * come straight from the service. Disabled with completion hints while
 * any matrix is still unfilled.
 */

import { clear, h } from "./dom.js";
import { percent } from "./format.js";
import type { StagedWhatIf } from "./state.js";
import type { Report, WhatIfAction } from "./types.js";

export interface PanelHandlers {
  onStage(action: WhatIfAction): void;
  onCommit(): void;
  onDiscard(): void;
}

function stagingControls(report: Report, handlers: PanelHandlers): HTMLElement {
  const hierarchy = report.hierarchy!;
  const altSelect = h("select", { class: "stage-alt" }) as HTMLSelectElement;
  for (const alt of hierarchy.alternatives) {
    altSelect.append(h("option", { value: alt }, alt));
  }
  const critSelect = h("select", { class: "stage-crit" }) as HTMLSelectElement;
  for (const crit of hierarchy.criteria) {
    critSelect.append(h("option", { value: crit }, crit));
  }
  return h(
    "div",
    { class: "staging" },
    altSelect,
    h(
      "button",
      {
        class: "stage-delete-alt",
        onclick: () => handlers.onStage({ action: "delete-alternative", label: altSelect.value }),
      },
      "preview delete alternative",
    ),
    critSelect,
    h(
      "button",
      {
        class: "stage-delete-crit",
        onclick: () => handlers.onStage({ action: "delete-criterion", label: critSelect.value }),
      },
      "preview delete criterion",
    ),
  );
}

function previewBlock(staged: StagedWhatIf, handlers: PanelHandlers): HTMLElement {
  const p = staged.preview;
  return h(
    "div",
    { class: "whatif-preview" },
    h("div", { class: "preview-action" }, `staged: ${p.action.action} ${p.action.label}`),
    h("div", { class: "preview-before" }, `before: ${p.ranking_before.join(" > ")}`),
    h("div", { class: "preview-after" }, `after: ${p.ranking_after.join(" > ")}`),
    h(
      "div",
      { class: `preview-equilibrium ${p.equilibrium ? "eq-yes" : "eq-no"}` },
      p.equilibrium ? "guaranteed stable" : "no stability guarantee",
    ),
    h("div", { class: "preview-basis" }, p.theorem_basis),
    h("button", { class: "commit-whatif", onclick: () => handlers.onCommit() }, "commit"),
    h("button", { class: "discard-whatif", onclick: () => handlers.onDiscard() }, "discard"),
  );
}

export function renderReversalPanel(
  root: HTMLElement,
  report: Report | null,
  staged: StagedWhatIf | null,
  handlers: PanelHandlers,
): void {
  clear(root);
  if (!report) {
    root.append(h("div", { class: "panel-empty" }, "no report yet"));
    return;
  }
  if (!report.complete || !report.hierarchy) {
    const hints = report.incomplete
      .map((x) => `${x.matrix}: ${(x.completion * 100).toFixed(0)}%`)
      .join(", ");
    root.append(
      h(
        "div",
        { class: "panel-disabled" },
        `what-if analysis needs every matrix filled in — still open: ${hints}`,
      ),
    );
    return;
  }
  const hier = report.hierarchy;
  const rows = h("table", { class: "pd-table" });
  hier.criteria.forEach((crit, idx) => {
    rows.append(
      h(
        "tr",
        {},
        h("td", {}, `matrix under ${crit}`),
        h("td", { class: "pd-value", "data-pd": `matrix:${crit}` }, percent(hier.matrix_pds[idx])),
      ),
    );
  });
  rows.append(
    h(
      "tr",
      {},
      h("td", {}, "criteria comparisons"),
      h("td", { class: "pd-value", "data-pd": "criteria" }, percent(hier.criteria_pd)),
    ),
    h(
      "tr",
      {},
      h("td", {}, "structural dependence"),
      h("td", { class: "pd-value", "data-pd": "structural" }, percent(hier.table_pd)),
    ),
    h(
      "tr",
      { class: "pd-global-row" },
      h("td", {}, "aggregate reversal risk"),
      h("td", { class: "pd-value pd-global", "data-pd": "global" }, percent(hier.global_pd)),
    ),
  );
  root.append(
    h("div", { class: "winner" }, `winner: ${hier.winner}`),
    h("div", { class: "ranking" }, hier.ranking.join(" > ")),
    rows,
    stagingControls(report, handlers),
  );
  if (staged) root.append(previewBlock(staged, handlers));
}
