/** Canvas rendering of the polar wheel: scatter of the image's AB points,
 * boundary spokes (base model in gray, current model dashed black), and
 * the draggable r1/r2 rings. */

import {
  WheelTransform,
  canvasToPolar,
  hitTest,
  polarToCanvas,
  subsampleIndices,
  wheelTransform,
} from "./geometry.js";
import type { WheelHit } from "./geometry.js";
import type { ModelDto, PointsDto } from "./types.js";

export const MAX_RADIUS = 135;
const MAX_RENDER_POINTS = 50_000;

/** Presentation colors for scatter points and legend chips; classification
 * itself always comes from the server. */
export const CATEGORY_COLORS: Record<string, string> = {
  Red: "#e8001e",
  "Deep Orange": "#ff5a00",
  "Light Orange": "#ffa500",
  Yellow: "#ffd900",
  Green: "#27c000",
  Teal: "#00c2b8",
  Blue: "#1e90ff",
  Ultramarine: "#2930ff",
  Purple: "#8e2bff",
  Pink: "#ff3ea5",
  Brown: "#6f4e37",
  Neutral: "#808080",
};

export interface WheelCallbacks {
  onDragStart(hit: Exclude<WheelHit, null>): void;
  onDragMove(value: number): void;
  onDragEnd(): void;
}

export class WheelView {
  private readonly ctx: CanvasRenderingContext2D;
  private readonly transform: WheelTransform;
  private dragging: Exclude<WheelHit, null> | null = null;

  constructor(
    private readonly canvas: HTMLCanvasElement,
    private readonly callbacks: WheelCallbacks,
  ) {
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("canvas 2d context unavailable");
    this.ctx = ctx;
    this.transform = wheelTransform(canvas.width, MAX_RADIUS);
    canvas.addEventListener("pointerdown", (e) => this.pointerDown(e));
    canvas.addEventListener("pointermove", (e) => this.pointerMove(e));
    canvas.addEventListener("pointerup", (e) => this.pointerUp(e));
    canvas.addEventListener("pointercancel", (e) => this.pointerUp(e));
  }

  private eventPosition(e: PointerEvent): { x: number; y: number } {
    const rect = this.canvas.getBoundingClientRect();
    return {
      x: ((e.clientX - rect.left) / rect.width) * this.canvas.width,
      y: ((e.clientY - rect.top) / rect.height) * this.canvas.height,
    };
  }

  private currentModel: ModelDto | null = null;

  private pointerDown(e: PointerEvent): void {
    if (!this.currentModel) return;
    const { x, y } = this.eventPosition(e);
    const hit = hitTest(this.currentModel, this.transform, x, y);
    if (hit) {
      this.dragging = hit;
      this.canvas.setPointerCapture(e.pointerId);
      this.callbacks.onDragStart(hit);
    }
  }

  private pointerMove(e: PointerEvent): void {
    const { x, y } = this.eventPosition(e);
    if (this.dragging) {
      const polar = canvasToPolar(this.transform, x, y);
      this.callbacks.onDragMove(
        this.dragging.kind === "boundary" ? polar.angleDeg : polar.radius,
      );
      return;
    }
    if (this.currentModel) {
      const hit = hitTest(this.currentModel, this.transform, x, y);
      this.canvas.style.cursor = hit ? "grab" : "default";
    }
  }

  private pointerUp(e: PointerEvent): void {
    if (this.dragging) {
      this.dragging = null;
      this.canvas.releasePointerCapture(e.pointerId);
      this.callbacks.onDragEnd();
    }
  }

  render(
    points: PointsDto | null,
    baseModel: ModelDto | null,
    model: ModelDto | null,
    selectedCategory: string | null,
  ): void {
    this.currentModel = model;
    const { ctx, transform: t } = this;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    ctx.save();

    // frame circle
    ctx.strokeStyle = "#ccc";
    ctx.beginPath();
    ctx.arc(t.cx, t.cy, MAX_RADIUS * t.scale, 0, Math.PI * 2);
    ctx.stroke();

    if (points) this.renderPoints(points, selectedCategory);
    if (baseModel) this.renderSpokes(baseModel, "#b0b0b0", false);
    if (model) {
      this.renderSpokes(model, "#111", true);
      this.renderRing(model.r1, "#111");
      this.renderRing(model.r2, "#111");
      this.renderRing(model.r2_prime, "#999", 2);
      this.renderRing(model.r3, "#999", 2);
    }
    ctx.restore();
  }

  private renderPoints(points: PointsDto, selectedCategory: string | null): void {
    const { ctx, transform: t } = this;
    const idx = subsampleIndices(points.radius.length, MAX_RENDER_POINTS);
    for (const i of idx) {
      const cat = points.category[i];
      const { x, y } = polarToCanvas(t, points.radius[i], points.angle[i]);
      ctx.globalAlpha =
        selectedCategory === null || selectedCategory === cat ? 0.55 : 0.08;
      ctx.fillStyle = CATEGORY_COLORS[cat] ?? "#444";
      ctx.fillRect(x - 1, y - 1, 2, 2);
    }
    ctx.globalAlpha = 1.0;
  }

  private renderSpokes(model: ModelDto, color: string, dashed: boolean): void {
    const { ctx, transform: t } = this;
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.4;
    ctx.setLineDash(dashed ? [6, 4] : []);
    for (const angle of model.boundaries_deg) {
      const inner = polarToCanvas(t, model.r1, angle);
      const outer = polarToCanvas(t, MAX_RADIUS, angle);
      ctx.beginPath();
      ctx.moveTo(inner.x, inner.y);
      ctx.lineTo(outer.x, outer.y);
      ctx.stroke();
    }
    ctx.setLineDash([]);
  }

  private renderRing(radius: number, color: string, dash = 0): void {
    const { ctx, transform: t } = this;
    ctx.strokeStyle = color;
    ctx.lineWidth = 1.2;
    ctx.setLineDash(dash ? [dash, dash] : []);
    ctx.beginPath();
    ctx.arc(t.cx, t.cy, radius * t.scale, 0, Math.PI * 2);
    ctx.stroke();
    ctx.setLineDash([]);
  }
}
