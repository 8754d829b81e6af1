/** Typed client for the analysis HTTP API. */

import type {
  OverridePatch,
  PatchError,
  PatchResponse,
  PointsDto,
  SessionDto,
} from "./types.js";

export class PatchRejectedError extends Error {
  constructor(public readonly constraint: string, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(private readonly base: string = "") {}

  async createSession(file: File): Promise<SessionDto> {
    const form = new FormData();
    form.append("image", file, file.name);
    const resp = await fetch(`${this.base}/api/session`, {
      method: "POST",
      body: form,
    });
    if (!resp.ok) {
      throw new Error(`upload failed: ${resp.status} ${await resp.text()}`);
    }
    return (await resp.json()) as SessionDto;
  }

  async patchModel(sessionId: string, patch: OverridePatch): Promise<PatchResponse> {
    const resp = await fetch(`${this.base}/api/session/${sessionId}/model`, {
      method: "PATCH",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(patch),
    });
    if (resp.status === 422) {
      const body = (await resp.json()) as PatchError;
      throw new PatchRejectedError(
        body.detail.constraint ?? "invalid edit",
        body.detail.message ?? "invalid edit",
      );
    }
    if (!resp.ok) throw new Error(`patch failed: ${resp.status}`);
    return (await resp.json()) as PatchResponse;
  }

  async getPoints(sessionId: string, maxPoints = 50_000): Promise<PointsDto> {
    const resp = await fetch(
      `${this.base}/api/session/${sessionId}/points?max_points=${maxPoints}`,
    );
    if (!resp.ok) throw new Error(`points failed: ${resp.status}`);
    return (await resp.json()) as PointsDto;
  }

  overlayUrl(sessionId: string, bust: number): string {
    return `${this.base}/api/session/${sessionId}/overlay?v=${bust}`;
  }

  imageUrl(sessionId: string): string {
    return `${this.base}/api/session/${sessionId}/image`;
  }

  maskUrl(sessionId: string, category: string, bust: number): string {
    const slug = encodeURIComponent(category);
    return `${this.base}/api/session/${sessionId}/mask/${slug}?v=${bust}`;
  }
}
