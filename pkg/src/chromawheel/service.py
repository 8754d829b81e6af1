"""HTTP layer for the interactive boundary-tuning workflow.

Sessions are memory-resident (LRU capped) and hold an uploaded image, the
base model, and the session's override model. Overrides never touch the
base model or its file; reloading an image reproduces the original
analysis. All endpoints are versioned under /api.
"""

from __future__ import annotations

import io
import threading
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from fastapi import FastAPI, HTTPException, UploadFile
from fastapi.responses import JSONResponse, Response
from fastapi.staticfiles import StaticFiles
from PIL import Image
from pydantic import BaseModel

from .categories import CategoryId, parse_category
from .classifier import CATEGORY_CODES, LabelMap
from .colorspace import lab_array_to_polar, srgb_array_to_lab
from .model import ColorModel, ModelInvariantError
from .report import analyze_full, composite_label_image, mask_to_image

MAX_SESSIONS = 16
MAX_UPLOAD_BYTES = 32 * 1024 * 1024
MAX_POLAR_POINTS = 50_000


@dataclass
class Session:
    id: str
    image: np.ndarray
    base_model: ColorModel
    model: ColorModel
    labels: LabelMap
    report: dict
    lock: threading.Lock = field(default_factory=threading.Lock)


class OverridePatch(BaseModel):
    boundaries_deg: list[float] | None = None
    boundary_edits: dict[int, float] | None = None
    r1: float | None = None
    r2: float | None = None


class SessionStore:
    def __init__(self, max_sessions: int = MAX_SESSIONS):
        self._sessions: OrderedDict[str, Session] = OrderedDict()
        self._lock = threading.Lock()
        self._max = max_sessions

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.id] = session
            self._sessions.move_to_end(session.id)
            while len(self._sessions) > self._max:
                self._sessions.popitem(last=False)

    def get(self, session_id: str) -> Session:
        with self._lock:
            if session_id not in self._sessions:
                raise HTTPException(status_code=404, detail="unknown session")
            self._sessions.move_to_end(session_id)
            return self._sessions[session_id]


def _png_response(img: Image.Image) -> Response:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return Response(content=buf.getvalue(), media_type="image/png")


def create_app(
    model: ColorModel,
    model_ref: str = "",
    frontend_dir: str | Path | None = None,
    max_sessions: int = MAX_SESSIONS,
) -> FastAPI:
    app = FastAPI(title="chromawheel", version="1")
    store = SessionStore(max_sessions)

    @app.post("/api/session")
    async def create_session(image: UploadFile):
        data = await image.read()
        if len(data) > MAX_UPLOAD_BYTES:
            raise HTTPException(status_code=413, detail="image too large")
        try:
            with Image.open(io.BytesIO(data)) as img:
                pixels = np.asarray(img.convert("RGB"))
        except Exception as exc:
            raise HTTPException(status_code=422, detail=f"unreadable image: {exc}")
        report, labels, _masks = analyze_full(
            pixels, model, source=image.filename or "", model_ref=model_ref
        )
        session = Session(
            id=uuid.uuid4().hex,
            image=pixels,
            base_model=model,
            model=model,
            labels=labels,
            report=report,
        )
        store.add(session)
        return {"session_id": session.id, "report": report}

    @app.get("/api/model")
    def get_base_model():
        return model.to_dict()

    @app.get("/api/session/{session_id}/model")
    def get_session_model(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return session.model.to_dict()

    @app.get("/api/session/{session_id}/report")
    def get_report(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return session.report

    @app.patch("/api/session/{session_id}/model")
    def patch_model(session_id: str, patch: OverridePatch):
        session = store.get(session_id)
        with session.lock:
            try:
                edited = session.base_model.with_overrides(
                    boundaries=patch.boundaries_deg,
                    boundary_edits=patch.boundary_edits,
                    r1=patch.r1,
                    r2=patch.r2,
                )
            except ModelInvariantError as exc:
                return JSONResponse(
                    status_code=422,
                    content={
                        "detail": {"constraint": exc.constraint, "message": str(exc)}
                    },
                )
            report, labels, _masks = analyze_full(
                session.image, edited, source=session.report["source"]["path"],
                model_ref=model_ref,
            )
            changed = int(np.count_nonzero(labels.labels != session.labels.labels))
            session.model = edited
            session.labels = labels
            session.report = report
            return {
                "report": report,
                "changed_pixels": changed,
                "model": edited.to_dict(),
            }

    @app.get("/api/session/{session_id}/mask/{category}")
    def get_mask(session_id: str, category: str):
        session = store.get(session_id)
        try:
            cat = parse_category(category)
        except ValueError as exc:
            raise HTTPException(status_code=404, detail=str(exc))
        with session.lock:
            mask = session.labels.labels == CATEGORY_CODES[cat]
            return _png_response(mask_to_image(mask))

    @app.get("/api/session/{session_id}/overlay")
    def get_overlay(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return _png_response(composite_label_image(session.labels))

    @app.get("/api/session/{session_id}/image")
    def get_image(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return _png_response(Image.fromarray(session.image, mode="RGB"))

    @app.get("/api/session/{session_id}/points")
    def get_points(session_id: str, max_points: int = MAX_POLAR_POINTS):
        """Subsampled polar scatter of the session image for the wheel view."""
        session = store.get(session_id)
        with session.lock:
            lab = srgb_array_to_lab(session.image.reshape(-1, 3))
            radius, angle = lab_array_to_polar(lab)
            labels = session.labels.labels.reshape(-1)
        n = len(radius)
        max_points = max(1, min(int(max_points), MAX_POLAR_POINTS))
        if n > max_points:
            step = -(-n // max_points)  # ceil division keeps <= max_points
            radius = radius[::step]
            angle = angle[::step]
            labels = labels[::step]
        cats = tuple(CategoryId)
        return {
            "radius": np.round(radius, 3).tolist(),
            "angle": np.round(angle, 3).tolist(),
            "category": [cats[int(c)].display_name for c in labels],
        }

    if frontend_dir is None:
        candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        frontend_dir = candidate if candidate.is_dir() else None
    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(frontend_dir), html=True), name="ui")

    return app
