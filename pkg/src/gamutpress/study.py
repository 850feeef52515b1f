"""2AFC study server: sessions, trial randomization, durable vote log.

Every (image, unordered method pair) is shown exactly once per session in
seeded-shuffled order with random left/right placement. Trial payloads
never name methods; stimuli are fetched through opaque per-trial URLs.
Votes are fsynced to an append-only JSONL log before they are
acknowledged, and server state is rebuilt from that log on restart.
"""

import json
import os
import secrets
import threading
import uuid
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from random import Random

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from fastapi import FastAPI, HTTPException
from fastapi.responses import FileResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .pcomp import VOTE_FIELDS

DEFAULT_INTERSTITIAL_MS = 3000
DEFAULT_TRIAL_BG = "#404040"  # dark grey
DEFAULT_INTERSTITIAL_BG = "#b4b4b4"  # light grey


@dataclass(frozen=True)
class StudyConfig:
    methods: dict  # method id -> image directory
    images: tuple  # image file names, present in every method directory
    interstitial_ms: int = DEFAULT_INTERSTITIAL_MS
    trial_background: str = DEFAULT_TRIAL_BG
    interstitial_background: str = DEFAULT_INTERSTITIAL_BG
    monitor: dict = field(default_factory=dict)
    ui_dir: str = ""

    def validate(self):
        if len(self.methods) < 2:
            raise ValueError("need at least 2 methods")
        if not self.images:
            raise ValueError("need at least 1 image")
        for method, directory in self.methods.items():
            for image in self.images:
                path = Path(directory) / image
                if not path.is_file():
                    raise FileNotFoundError(f"missing stimulus {path} for method {method!r}")

    def stimulus_path(self, method, image):
        return Path(self.methods[method]) / image


def load_config(path):
    with open(path, "rb") as fh:
        raw = tomllib.load(fh)
    base = Path(path).parent
    methods = {k: str(base / v) for k, v in raw["methods"].items()}
    config = StudyConfig(
        methods=methods,
        images=tuple(raw["images"]),
        interstitial_ms=int(raw.get("interstitial_ms", DEFAULT_INTERSTITIAL_MS)),
        trial_background=raw.get("trial_background", DEFAULT_TRIAL_BG),
        interstitial_background=raw.get("interstitial_background", DEFAULT_INTERSTITIAL_BG),
        monitor=dict(raw.get("monitor", {})),
        ui_dir=str(base / raw["ui_dir"]) if "ui_dir" in raw else "",
    )
    config.validate()
    return config


@dataclass(frozen=True)
class Trial:
    image: str
    left: str  # method shown on the left
    right: str


def build_trials(config, seed):
    """Full cross of images x unordered pairs, seeded shuffle, random sides."""
    rng = Random(seed)
    methods = sorted(config.methods)
    combos = [(image, pair) for image in config.images for pair in combinations(methods, 2)]
    rng.shuffle(combos)
    trials = []
    for image, (a, b) in combos:
        if rng.random() < 0.5:
            a, b = b, a
        trials.append(Trial(image=image, left=a, right=b))
    return trials


@dataclass
class Session:
    session_id: str
    participant: str
    seed: int
    trials: list
    cursor: int = 0

    @property
    def done(self):
        return self.cursor >= len(self.trials)


class StudyState:
    """Sessions plus the durable vote log; rebuildable from the log alone."""

    def __init__(self, config, log_path):
        self.config = config
        self.log_path = Path(log_path)
        self.sessions = {}
        self.votes = []  # dicts with VOTE_FIELDS keys, in ack order
        self._lock = threading.Lock()
        if self.log_path.exists():
            self._recover()

    # -- durability ---------------------------------------------------------

    def _append(self, record):
        line = json.dumps(record, sort_keys=True)
        with open(self.log_path, "a", encoding="utf-8") as fh:
            fh.write(line + "\n")
            fh.flush()
            os.fsync(fh.fileno())

    def _recover(self):
        for line in self.log_path.read_text(encoding="utf-8").splitlines():
            if not line.strip():
                continue
            record = json.loads(line)
            if record["type"] == "session":
                session = Session(
                    session_id=record["session_id"],
                    participant=record["participant"],
                    seed=record["seed"],
                    trials=build_trials(self.config, record["seed"]),
                )
                self.sessions[session.session_id] = session
            elif record["type"] == "vote":
                session = self.sessions[record["session_id"]]
                session.cursor += 1
                self.votes.append({k: record[k] for k in VOTE_FIELDS})

    # -- operations ---------------------------------------------------------

    def create_session(self, participant, seed=None):
        if not self.config.methods:
            raise ValueError("empty study config")
        with self._lock:
            if seed is None:
                seed = secrets.randbits(32)
            session = Session(
                session_id=uuid.uuid4().hex,
                participant=participant,
                seed=int(seed),
                trials=build_trials(self.config, int(seed)),
            )
            self._append(
                {
                    "type": "session",
                    "session_id": session.session_id,
                    "participant": participant,
                    "seed": session.seed,
                    "monitor": self.config.monitor,
                }
            )
            self.sessions[session.session_id] = session
            return session

    def get_session(self, session_id):
        session = self.sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

    def trial_view(self, session_id):
        """Client payload for the current trial; methods stay server-side."""
        session = self.get_session(session_id)
        if session.done:
            return {"done": True, "index": session.cursor, "total": len(session.trials)}
        idx = session.cursor
        base = f"/api/session/{session_id}/stimulus/{idx}"
        return {
            "done": False,
            "index": idx,
            "total": len(session.trials),
            "left": f"{base}/left.png",
            "right": f"{base}/right.png",
            "interstitial_ms": self.config.interstitial_ms,
            "trial_background": self.config.trial_background,
            "interstitial_background": self.config.interstitial_background,
        }

    def stimulus_path(self, session_id, index, side):
        session = self.get_session(session_id)
        if not 0 <= index < len(session.trials):
            raise IndexError(index)
        trial = session.trials[index]
        method = trial.left if side == "left" else trial.right
        return self.config.stimulus_path(method, trial.image)

    def record_vote(self, session_id, index, choice, response_ms):
        """Resolve and persist one vote; strictly forward-only."""
        if choice not in ("left", "right"):
            raise ValueError(f"choice must be 'left' or 'right', got {choice!r}")
        with self._lock:
            session = self.get_session(session_id)
            if session.done:
                raise ValueError("session already complete")
            if index != session.cursor:
                raise ValueError(f"expected vote for trial {session.cursor}, got {index}")
            trial = session.trials[index]
            method_a, method_b = sorted((trial.left, trial.right))
            chosen = trial.left if choice == "left" else trial.right
            vote = {
                "participant": session.participant,
                "image_id": trial.image,
                "method_a": method_a,
                "method_b": method_b,
                "chosen": chosen,
                "response_ms": int(response_ms),
            }
            self._append({"type": "vote", "session_id": session_id, "index": index, **vote})
            session.cursor += 1
            self.votes.append(vote)
            return session.cursor

    def export_csv(self):
        lines = [",".join(VOTE_FIELDS)]
        for vote in self.votes:
            lines.append(",".join(str(vote[k]) for k in VOTE_FIELDS))
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# HTTP layer


class SessionRequest(BaseModel):
    participant: str
    seed: int | None = None


class VoteRequest(BaseModel):
    index: int
    choice: str
    response_ms: int


def create_app(config, log_path):
    state = StudyState(config, log_path)
    app = FastAPI(title="gamutpress-study")
    app.state.study = state

    @app.post("/api/session")
    def create_session(req: SessionRequest):
        session = state.create_session(req.participant, req.seed)
        return {
            "session_id": session.session_id,
            "total": len(session.trials),
            "interstitial_ms": config.interstitial_ms,
        }

    @app.get("/api/session/{session_id}/trial")
    def next_trial(session_id: str):
        try:
            return state.trial_view(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session") from None

    @app.post("/api/session/{session_id}/vote")
    def record_vote(session_id: str, req: VoteRequest):
        try:
            next_index = state.record_vote(session_id, req.index, req.choice, req.response_ms)
        except KeyError:
            raise HTTPException(status_code=404, detail="unknown session") from None
        except ValueError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        return {"ok": True, "index": next_index}

    @app.get("/api/session/{session_id}/stimulus/{index}/{side}")
    def stimulus(session_id: str, index: int, side: str):
        side = side.removesuffix(".png")
        if side not in ("left", "right"):
            raise HTTPException(status_code=404, detail="side must be left or right")
        try:
            path = state.stimulus_path(session_id, index, side)
        except (KeyError, IndexError):
            raise HTTPException(status_code=404, detail="unknown stimulus") from None
        return FileResponse(path, media_type="image/png")

    @app.get("/api/export.csv")
    def export_votes():
        return PlainTextResponse(state.export_csv(), media_type="text/csv")

    if config.ui_dir and Path(config.ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=config.ui_dir, html=True), name="ui")

    return app
