/** Pure polar/angle helpers for the wheel view. No DOM, no network: the
 * drag-clamp rules here mirror the server's model invariants so illegal
 * drags are prevented locally and the server stays the source of truth. */

import type { ModelDto } from "./types.js";

/** Margin kept between a dragged element and its hard limit, degrees/AB units. */
export const DRAG_MARGIN = 0.5;

/** Offset between r2 and the fuzzy ramp ends; mirrors the model file. */
export const RAMP_OFFSET = 5.0;

export function mod360(angle: number): number {
  return ((angle % 360) + 360) % 360;
}

/** Forward angular distance from `from` to `to`, in [0, 360). */
export function forwardGap(from: number, to: number): number {
  return mod360(to - from);
}

/** Shortest angular distance between two angles, in [0, 180]. */
export function circularDistance(a: number, b: number): number {
  const d = mod360(a - b);
  return Math.min(d, 360 - d);
}

/** Indices of the bases angularly flanking the given angle (below, above). */
export function flankingBases(
  baseAngles: number[],
  angle: number,
): { below: number; above: number } {
  if (baseAngles.length === 0) throw new Error("no bases");
  let below = 0;
  let belowGap = Infinity;
  let above = 0;
  let aboveGap = Infinity;
  baseAngles.forEach((base, i) => {
    const gapUp = forwardGap(base, angle);
    if (gapUp > 0 && gapUp < belowGap) {
      belowGap = gapUp;
      below = i;
    }
    const gapDown = forwardGap(angle, base);
    if (gapDown > 0 && gapDown < aboveGap) {
      aboveGap = gapDown;
      above = i;
    }
  });
  return { below, above };
}

/** Clamp a boundary drag into the open gap between its neighboring bases.
 * Matches the server's interval rule: a boundary may never cross a
 * chromogen base, which also keeps boundary order and peak interleaving. */
export function clampBoundaryDrag(
  model: ModelDto,
  index: number,
  proposedDeg: number,
): number {
  const original = model.boundaries_deg[index];
  if (original === undefined) throw new Error(`no boundary ${index}`);
  const bases = model.bases.map((b) => b.angle_deg);
  const { below, above } = flankingBases(bases, original);
  const lo = bases[below];
  const hi = bases[above];
  const span = forwardGap(lo, hi);
  const margin = Math.min(DRAG_MARGIN, span / 4);
  const offset = forwardGap(lo, proposedDeg);
  let clamped: number;
  if (offset <= span) {
    clamped = Math.min(Math.max(offset, margin), span - margin);
  } else {
    // outside the gap entirely: snap to the circularly nearer end
    clamped =
      circularDistance(proposedDeg, lo) <= circularDistance(proposedDeg, hi)
        ? margin
        : span - margin;
  }
  return mod360(lo + clamped);
}

/** Clamp a drag of the neutral radius r1: above zero, below the ramp start. */
export function clampR1Drag(model: ModelDto, proposed: number): number {
  const hi = model.r2 - RAMP_OFFSET - DRAG_MARGIN;
  return Math.min(Math.max(proposed, DRAG_MARGIN), hi);
}

/** Clamp a drag of the near-achromatic radius r2: the ramp must clear r1. */
export function clampR2Drag(model: ModelDto, proposed: number, maxRadius: number): number {
  const lo = model.r1 + RAMP_OFFSET + DRAG_MARGIN;
  return Math.min(Math.max(proposed, lo), maxRadius);
}

export interface WheelTransform {
  cx: number;
  cy: number;
  scale: number; // pixels per AB unit
}

export function wheelTransform(size: number, maxRadius: number): WheelTransform {
  return { cx: size / 2, cy: size / 2, scale: (size / 2 - 10) / maxRadius };
}

/** Polar (radius, angle deg) to canvas coordinates; angle 0 points right,
 * increasing counterclockwise (canvas y grows downward). */
export function polarToCanvas(
  t: WheelTransform,
  radius: number,
  angleDeg: number,
): { x: number; y: number } {
  const rad = (angleDeg * Math.PI) / 180;
  return {
    x: t.cx + radius * t.scale * Math.cos(rad),
    y: t.cy - radius * t.scale * Math.sin(rad),
  };
}

export function canvasToPolar(
  t: WheelTransform,
  x: number,
  y: number,
): { radius: number; angleDeg: number } {
  const dx = (x - t.cx) / t.scale;
  const dy = (t.cy - y) / t.scale;
  return {
    radius: Math.hypot(dx, dy),
    angleDeg: mod360((Math.atan2(dy, dx) * 180) / Math.PI),
  };
}

export type WheelHit =
  | { kind: "boundary"; index: number }
  | { kind: "r1" }
  | { kind: "r2" }
  | null;

/** Hit-test a pointer position against spokes and rings.
 * Rings win over spokes when both are within tolerance. */
export function hitTest(
  model: ModelDto,
  t: WheelTransform,
  x: number,
  y: number,
  tolerancePx = 7,
): WheelHit {
  const { radius, angleDeg } = canvasToPolar(t, x, y);
  const tolR = tolerancePx / t.scale;
  if (Math.abs(radius - model.r1) < tolR) return { kind: "r1" };
  if (Math.abs(radius - model.r2) < tolR) return { kind: "r2" };
  let best: WheelHit = null;
  let bestArc = Infinity;
  model.boundaries_deg.forEach((b, i) => {
    const arcPx = circularDistance(angleDeg, b) * (Math.PI / 180) * radius * t.scale;
    if (arcPx < tolerancePx && arcPx < bestArc && radius > model.r1) {
      bestArc = arcPx;
      best = { kind: "boundary", index: i };
    }
  });
  return best;
}

/** Evenly subsample parallel arrays down to a budget. */
export function subsampleIndices(length: number, budget: number): number[] {
  if (length <= budget) return Array.from({ length }, (_, i) => i);
  const step = length / budget;
  const out: number[] = [];
  for (let i = 0; i < budget; i++) out.push(Math.floor(i * step));
  return out;
}
