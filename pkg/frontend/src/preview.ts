/** Right-hand pane: original image with the label overlay, per-category
 * mask toggles, the shade list, and mask export links. Everything shown
 * is rendered from the latest server report. */

import type { ApiClient } from "./api.js";
import type { AppState } from "./state.js";
import { exportableCategories, maskFilename } from "./state.js";
import { CATEGORY_COLORS } from "./wheelView.js";

export interface PreviewElements {
  image: HTMLImageElement;
  overlay: HTMLImageElement;
  maskStack: HTMLDivElement;
  toggles: HTMLDivElement;
  shades: HTMLDivElement;
  stats: HTMLDivElement;
  exports: HTMLDivElement;
  opacity: HTMLInputElement;
}

export class PreviewPane {
  private bust = 0;

  constructor(
    private readonly api: ApiClient,
    private readonly el: PreviewElements,
    private readonly onToggleMask: (category: string) => void,
    private readonly onSelectCategory: (category: string | null) => void,
  ) {
    el.opacity.addEventListener("input", () => {
      el.overlay.style.opacity = String(Number(el.opacity.value) / 100);
    });
  }

  /** Re-fetch server-rendered imagery after a new report. */
  refreshImagery(sessionId: string): void {
    this.bust += 1;
    this.el.image.src = this.api.imageUrl(sessionId);
    this.el.overlay.src = this.api.overlayUrl(sessionId, this.bust);
    this.el.overlay.style.opacity = String(Number(this.el.opacity.value) / 100);
  }

  render(state: AppState): void {
    const { report, sessionId } = state;
    this.renderStats(state);
    if (!report || !sessionId) {
      this.el.toggles.innerHTML = "";
      this.el.shades.innerHTML = "";
      this.el.exports.innerHTML = "";
      this.el.maskStack.innerHTML = "";
      return;
    }
    this.renderToggles(state);
    this.renderMaskStack(state);
    this.renderShades(state);
    this.renderExports(state);
  }

  private renderStats(state: AppState): void {
    const { report } = state;
    const lines: string[] = [];
    lines.push(`<span class="status">${state.statusMessage}</span>`);
    if (state.changedPixels !== null) {
      lines.push(
        `<span class="changed">changed pixels: <b>${state.changedPixels}</b></span>`,
      );
    }
    if (report) {
      lines.push(`<span>analysis: ${report.duration_ms.toFixed(1)} ms</span>`);
    }
    this.el.stats.innerHTML = lines.join(" · ");
  }

  private renderToggles(state: AppState): void {
    const report = state.report!;
    const rows = report.categories.filter((r) => r.count > 0);
    this.el.toggles.innerHTML = "";
    for (const row of rows) {
      const chip = document.createElement("button");
      chip.className = "chip";
      chip.classList.toggle("chip-on", Boolean(state.maskVisible[row.category]));
      chip.classList.toggle("chip-selected", state.selectedCategory === row.category);
      const swatch = `<i style="background:${CATEGORY_COLORS[row.category] ?? "#444"}"></i>`;
      chip.innerHTML = `${swatch}${row.category} ${row.percentage.toFixed(1)}%`;
      chip.addEventListener("click", () => this.onToggleMask(row.category));
      chip.addEventListener("contextmenu", (e) => {
        e.preventDefault();
        this.onSelectCategory(
          state.selectedCategory === row.category ? null : row.category,
        );
      });
      this.el.toggles.appendChild(chip);
    }
  }

  private renderMaskStack(state: AppState): void {
    const sessionId = state.sessionId!;
    this.el.maskStack.innerHTML = "";
    for (const [category, visible] of Object.entries(state.maskVisible)) {
      if (!visible) continue;
      const img = document.createElement("img");
      img.className = "mask-layer";
      img.src = this.api.maskUrl(sessionId, category, this.bust);
      img.alt = `${category} mask`;
      this.el.maskStack.appendChild(img);
    }
  }

  private renderShades(state: AppState): void {
    const report = state.report!;
    this.el.shades.innerHTML = "";
    const categories = Object.keys(report.shades).filter(
      (cat) => !state.selectedCategory || cat === state.selectedCategory,
    );
    for (const cat of categories) {
      const section = document.createElement("div");
      section.className = "shade-section";
      const title = document.createElement("h3");
      title.textContent = cat;
      section.appendChild(title);
      for (const shade of report.shades[cat]) {
        const row = document.createElement("div");
        row.className = "shade-row";
        row.innerHTML =
          `<i style="background:${shade.swatch}"></i>` +
          `<span class="count">${shade.count}px</span>` +
          `<span class="composition">${shade.composition}</span>`;
        section.appendChild(row);
      }
      this.el.shades.appendChild(section);
    }
  }

  private renderExports(state: AppState): void {
    const report = state.report!;
    const sessionId = state.sessionId!;
    const stem = (report.source.path || "image").replace(/\.[^.]+$/, "") || "image";
    this.el.exports.innerHTML = "";
    const label = document.createElement("span");
    label.textContent = "export masks: ";
    this.el.exports.appendChild(label);
    for (const category of exportableCategories(report)) {
      const a = document.createElement("a");
      a.href = this.api.maskUrl(sessionId, category, this.bust);
      a.download = maskFilename(stem, category);
      a.textContent = category;
      a.className = "export-link";
      this.el.exports.appendChild(a);
    }
  }
}
