/** Application state and its pure transitions.
 *
 * The view is a function of (last server response, in-flight drag): a
 * refresh rebuilds the identical UI from the stored server payloads. All
 * classification results shown come from the server. */

import { clampBoundaryDrag, clampR1Drag, clampR2Drag } from "./geometry.js";
import type {
  ModelDto,
  OverridePatch,
  PointsDto,
  ReportDto,
} from "./types.js";

export type DragTarget =
  | { kind: "boundary"; index: number }
  | { kind: "r1" }
  | { kind: "r2" };

export interface DragState {
  target: DragTarget;
  /** Clamped value under the pointer (degrees or AB units). */
  value: number;
}

export interface AppState {
  sessionId: string | null;
  baseModel: ModelDto | null;
  /** Model of the last server response (with applied overrides). */
  model: ModelDto | null;
  report: ReportDto | null;
  points: PointsDto | null;
  drag: DragState | null;
  changedPixels: number | null;
  statusMessage: string;
  maskVisible: Record<string, boolean>;
  selectedCategory: string | null;
}

export function initialState(): AppState {
  return {
    sessionId: null,
    baseModel: null,
    model: null,
    report: null,
    points: null,
    drag: null,
    changedPixels: null,
    statusMessage: "load an image to begin",
    maskVisible: {},
    selectedCategory: null,
  };
}

export function withSession(
  state: AppState,
  sessionId: string,
  baseModel: ModelDto,
  report: ReportDto,
  points: PointsDto,
): AppState {
  return {
    ...initialState(),
    sessionId,
    baseModel,
    model: baseModel,
    report,
    points,
    statusMessage: `analyzed ${report.source.width}x${report.source.height} image`,
  };
}

export function withPatchResult(
  state: AppState,
  model: ModelDto,
  report: ReportDto,
  changedPixels: number,
): AppState {
  return {
    ...state,
    model,
    report,
    changedPixels,
    statusMessage: `re-analysis changed ${changedPixels} pixels`,
  };
}

/** Server rejected an edit: revert the working model to the last accepted
 * one and surface the violated constraint. */
export function withPatchRejected(state: AppState, constraint: string): AppState {
  return {
    ...state,
    drag: null,
    statusMessage: `edit rejected: ${constraint}`,
  };
}

export function beginDrag(state: AppState, target: DragTarget): AppState {
  if (!state.model) return state;
  const value =
    target.kind === "boundary"
      ? state.model.boundaries_deg[target.index]
      : target.kind === "r1"
        ? state.model.r1
        : state.model.r2;
  return { ...state, drag: { target, value } };
}

/** Move the active drag; the value is clamped to the legal range so the
 * handle can never cross its neighbors. */
export function moveDrag(
  state: AppState,
  proposed: number,
  maxRadius: number,
): AppState {
  if (!state.drag || !state.model) return state;
  const { target } = state.drag;
  let value: number;
  if (target.kind === "boundary") {
    value = clampBoundaryDrag(state.model, target.index, proposed);
  } else if (target.kind === "r1") {
    value = clampR1Drag(state.model, proposed);
  } else {
    value = clampR2Drag(state.model, proposed, maxRadius);
  }
  return { ...state, drag: { target, value } };
}

export function endDrag(state: AppState): AppState {
  return { ...state, drag: null };
}

/** Model as currently displayed: last server model plus the in-flight drag. */
export function displayedModel(state: AppState): ModelDto | null {
  if (!state.model) return null;
  if (!state.drag) return state.model;
  const m: ModelDto = {
    ...state.model,
    boundaries_deg: [...state.model.boundaries_deg],
  };
  const { target, value } = state.drag;
  if (target.kind === "boundary") m.boundaries_deg[target.index] = value;
  else if (target.kind === "r1") m.r1 = value;
  else {
    m.r2 = value;
    m.r2_prime = value - (state.model.r2 - state.model.r2_prime);
    m.r3 = value + (state.model.r3 - state.model.r2);
  }
  return m;
}

/** Full override set for the current drag. The server applies each PATCH
 * against the base model (last write wins), so every accumulated edit is
 * restated alongside the in-flight one. */
export function patchForDrag(state: AppState): OverridePatch | null {
  if (!state.drag || !state.model || !state.baseModel) return null;
  const displayed = displayedModel(state)!;
  const patch: OverridePatch = {};
  const edits: Record<number, number> = {};
  displayed.boundaries_deg.forEach((b, i) => {
    if (Math.abs(b - state.baseModel!.boundaries_deg[i]) > 1e-9) edits[i] = b;
  });
  if (Object.keys(edits).length > 0) patch.boundary_edits = edits;
  if (Math.abs(displayed.r1 - state.baseModel.r1) > 1e-9) patch.r1 = displayed.r1;
  if (Math.abs(displayed.r2 - state.baseModel.r2) > 1e-9) patch.r2 = displayed.r2;
  return patch;
}

export function toggleMask(state: AppState, category: string): AppState {
  return {
    ...state,
    maskVisible: {
      ...state.maskVisible,
      [category]: !state.maskVisible[category],
    },
  };
}

export function selectCategory(state: AppState, category: string | null): AppState {
  return { ...state, selectedCategory: category };
}

/** Nonempty categories of the current report, for mask export. */
export function exportableCategories(report: ReportDto): string[] {
  return report.categories.filter((row) => row.count > 0).map((row) => row.category);
}

export function maskFilename(stem: string, category: string): string {
  return `${stem}_${category.toLowerCase().replace(/ /g, "_")}.png`;
}
