import { ApiClient, PatchRejectedError } from "./api.js";
import { Debouncer } from "./debounce.js";
import { MAX_RADIUS, WheelView } from "./wheelView.js";
import { PreviewPane } from "./preview.js";
import {
  AppState,
  beginDrag,
  displayedModel,
  endDrag,
  initialState,
  moveDrag,
  patchForDrag,
  selectCategory,
  toggleMask,
  withPatchRejected,
  withPatchResult,
  withSession,
} from "./state.js";
import type { OverridePatch } from "./types.js";

const MAX_UPLOAD_BYTES = 32 * 1024 * 1024;
const DEBOUNCE_MS = 150;

function element<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing #${id}`);
  return el as T;
}

function main(): void {
  const api = new ApiClient();
  let state: AppState = initialState();

  const wheelCanvas = element<HTMLCanvasElement>("wheel");
  const fileInput = element<HTMLInputElement>("file");

  const preview = new PreviewPane(
    api,
    {
      image: element("photo"),
      overlay: element("overlay"),
      maskStack: element("mask-stack"),
      toggles: element("toggles"),
      shades: element("shades"),
      stats: element("stats"),
      exports: element("exports"),
      opacity: element("opacity"),
    },
    (category) => {
      state = toggleMask(state, category);
      render();
    },
    (category) => {
      state = selectCategory(state, category);
      render();
    },
  );

  const patcher = new Debouncer<OverridePatch>(DEBOUNCE_MS, async (patch) => {
    const sessionId = state.sessionId;
    if (!sessionId) return;
    try {
      const result = await api.patchModel(sessionId, patch);
      state = withPatchResult(state, result.model, result.report, result.changed_pixels);
      preview.refreshImagery(sessionId);
    } catch (err) {
      if (err instanceof PatchRejectedError) {
        // revert the spoke to the last accepted model and explain
        state = withPatchRejected(state, err.constraint);
      } else {
        state = { ...state, statusMessage: `request failed: ${String(err)}` };
      }
    }
    render();
  });

  const wheel = new WheelView(wheelCanvas, {
    onDragStart(hit) {
      state = beginDrag(state, hit);
      render();
    },
    onDragMove(value) {
      state = moveDrag(state, value, MAX_RADIUS);
      const patch = patchForDrag(state);
      if (patch) patcher.push(patch);
      render();
    },
    onDragEnd() {
      const patch = patchForDrag(state);
      state = endDrag(state);
      if (patch) {
        patcher.push(patch);
        void patcher.flush();
      }
      render();
    },
  });

  fileInput.addEventListener("change", async () => {
    const file = fileInput.files ? fileInput.files[0] : undefined;
    if (!file) return;
    if (file.size > MAX_UPLOAD_BYTES) {
      state = { ...state, statusMessage: "file too large (32 MB limit)" };
      render();
      return;
    }
    state = { ...state, statusMessage: "analyzing..." };
    render();
    try {
      const session = await api.createSession(file);
      const points = await api.getPoints(session.session_id);
      const base = await (await fetch("/api/model")).json();
      state = withSession(state, session.session_id, base, session.report, points);
      preview.refreshImagery(session.session_id);
    } catch (err) {
      // upload failures never clobber an existing session
      state = { ...state, statusMessage: `upload failed: ${String(err)}` };
    }
    render();
  });

  function render(): void {
    wheel.render(state.points, state.baseModel, displayedModel(state), state.selectedCategory);
    preview.render(state);
  }

  render();
}

main();
