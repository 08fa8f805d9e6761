/** Wire types mirroring the session service's JSON responses. */

export interface PairView {
  i: number;
  j: number;
  value_ij: number | null;
  value_ji: number | null;
  /** Product of the two orientations, computed by the service; null until both are set. */
  theta: number | null;
}

export interface MatrixView {
  key: string;
  labels: string[];
  cells: (number | null)[][];
  complete: boolean;
  completion: number;
  pairs: PairView[];
}

export interface SessionView {
  id: string;
  revision: number;
  created_at: string;
  updated_at: string;
  goal: string;
  criteria: string[];
  alternatives: string[];
  matrices: MatrixView[];
}

export interface MatrixSection {
  name: string;
  labels: string[];
  sbd: number;
  reciprocal: boolean;
  approx_consistent: boolean;
  lambda_max: number;
  priorities: number[];
  ranking: string[];
  kendall: number;
  pd: number;
}

export interface HierarchySection {
  goal: string;
  criteria: string[];
  alternatives: string[];
  criteria_weights: number[];
  alt_weights: number[][];
  final_weights: number[];
  ranking: string[];
  winner: string;
  matrix_pds: number[];
  criteria_pd: number;
  table_pd: number;
  reversal_weights: { nu_alt: number[]; nu_c: number; nu_w: number };
  global_pd: number;
}

export interface Report {
  schema_version: number;
  revision: number;
  complete: boolean;
  matrices: MatrixSection[];
  incomplete: { matrix: string; completion: number }[];
  hierarchy: HierarchySection | null;
}

export type WhatIfAction =
  | { action: "delete-alternative"; label: string }
  | { action: "delete-criterion"; label: string }
  | {
      action: "add-alternative";
      label: string;
      judgments: Record<string, { row: (number | string)[]; col: (number | string)[] }>;
    }
  | {
      action: "add-criterion";
      label: string;
      goal_row: (number | string)[];
      goal_col: (number | string)[];
      matrix: { entries: (number | string)[][] };
    };

export interface WhatIfReport {
  action: { action: string; label: string };
  ranking_before: string[];
  ranking_after: string[];
  ranking_preserved: boolean;
  equilibrium: boolean;
  theorem_basis: string;
  pd_summary: {
    matrix_pds: Record<string, number>;
    criteria_pd: number;
    table_pd: number;
    reversal_weights: { nu_alt: number[]; nu_c: number; nu_w: number };
    global_pd: number;
  };
}

export interface JudgmentResponse {
  session: SessionView;
  pair: {
    matrix: string;
    i: number;
    j: number;
    value_ij: number;
    value_ji: number | null;
    theta: number | null;
  };
}

export interface ViolationDetail {
  error: string;
  message: string;
  theta: number;
  suggestion: { a_ij: number; a_ji: number };
}
