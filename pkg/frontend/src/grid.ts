/**
 * Judgment-entry grid: one row per unordered pair, both orientations
 * editable, with the pair-product badge the service computed. A rejected
 * judgment renders the service's explanation and suggested mirror repair
 * inline; applying the repair just submits the two suggested values.
 */

import { clear, h } from "./dom.js";
import { num, thetaClass } from "./format.js";
import type { InlineViolation } from "./state.js";
import type { MatrixView } from "./types.js";

export interface GridHandlers {
  onJudgment(matrix: string, i: number, j: number, value: string): void;
}

function cellInput(
  matrix: MatrixView,
  i: number,
  j: number,
  handlers: GridHandlers,
): HTMLElement {
  const current = matrix.cells[i][j];
  const input = h("input", {
    type: "text",
    class: "judgment-input",
    "data-cell": `${matrix.key}:${i}:${j}`,
    value: current === null ? "" : String(current),
    placeholder: "unset",
    onchange: (ev) => {
      const value = (ev.target as HTMLInputElement).value.trim();
      if (value) handlers.onJudgment(matrix.key, i, j, value);
    },
  });
  return input;
}

export function renderJudgmentGrid(
  root: HTMLElement,
  matrix: MatrixView,
  violation: InlineViolation | null,
  handlers: GridHandlers,
): void {
  clear(root);
  const header = h(
    "div",
    { class: "grid-header" },
    h("strong", {}, matrix.key),
    h(
      "span",
      { class: "completion" },
      matrix.complete ? "complete" : `${(matrix.completion * 100).toFixed(0)}% filled`,
    ),
  );
  const table = h(
    "table",
    { class: "judgment-grid" },
    h(
      "tr",
      {},
      h("th", {}, "pair"),
      h("th", {}, "a(i over j)"),
      h("th", {}, "a(j over i)"),
      h("th", {}, "product"),
    ),
  );
  for (const pair of matrix.pairs) {
    const badgeText = pair.theta === null ? "—" : num(pair.theta);
    const row = h(
      "tr",
      { "data-pair": `${pair.i}:${pair.j}` },
      h("td", {}, `${matrix.labels[pair.i]} / ${matrix.labels[pair.j]}`),
      h("td", {}, cellInput(matrix, pair.i, pair.j, handlers)),
      h("td", {}, cellInput(matrix, pair.j, pair.i, handlers)),
      h("td", {}, h("span", { class: `badge ${thetaClass(pair.theta)}` }, badgeText)),
    );
    table.append(row);
    if (
      violation &&
      violation.matrix === matrix.key &&
      ((violation.i === pair.i && violation.j === pair.j) ||
        (violation.i === pair.j && violation.j === pair.i))
    ) {
      const d = violation.detail;
      table.append(
        h(
          "tr",
          { class: "violation-row" },
          h(
            "td",
            { colspan: "4" },
            h(
              "div",
              { class: "violation" },
              `${d.message} (product ${num(d.theta)}). Suggested repair: `,
              h("code", {}, `${num(d.suggestion.a_ij)} / ${num(d.suggestion.a_ji)}`),
              " ",
              h(
                "button",
                {
                  class: "apply-repair",
                  onclick: () => {
                    handlers.onJudgment(
                      matrix.key,
                      violation.i,
                      violation.j,
                      String(d.suggestion.a_ij),
                    );
                    handlers.onJudgment(
                      matrix.key,
                      violation.j,
                      violation.i,
                      String(d.suggestion.a_ji),
                    );
                  },
                },
                "apply mirror repair",
              ),
            ),
          ),
        ),
      );
    }
  }
  root.append(header, table);
}
