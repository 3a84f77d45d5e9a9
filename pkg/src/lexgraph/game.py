"""Dictionary-game sessions: define a seed word, then every word used,
until the mini-dictionary closes.

Sessions persist as append-only JSON-lines event logs (one file per
session); replaying a log reconstructs the exact session state. All
mutations of one session are serialized behind a per-session lock.
"""

from __future__ import annotations

import json
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from .graph import build_graph
from .lexicon import DEFAULT_NORMALIZER, LexEntry, Lexicon, Normalizer
from .minset import solve_minset, split_minset
from .stoplist import DEFAULT_STOPLIST, DEFAULT_STOPLIST_ID
from .structure import label_structures

GAME_POS = "noun"  # players type bare tokens; a placeholder POS is recorded

ACTIVE = "active"
COMPLETE = "complete"


class SequencingError(ValueError):
    """Submitted word is not the current prompt."""


class EmptyDefinitionError(ValueError):
    """Definition has no tokens left after normalization and stripping."""


class SessionNotFoundError(KeyError):
    pass


class SessionIncompleteError(ValueError):
    pass


@dataclass
class GameSession:
    id: str
    seed_word: str
    defined: dict[str, list[str]] = field(default_factory=dict)
    pending: list[str] = field(default_factory=list)
    status: str = ACTIVE
    events: list[dict] = field(default_factory=list)

    def to_state(self) -> dict:
        return {
            "id": self.id,
            "seed_word": self.seed_word,
            "defined": dict(self.defined),
            "pending": list(self.pending),
            "status": self.status,
            "defined_count": len(self.defined),
            "pending_count": len(self.pending),
            "events": list(self.events),
        }


class SessionStore:
    """Registry and persistence layer for game sessions.

    ``data_dir=None`` keeps sessions in memory only. With a directory, each
    event is appended (and flushed; fsynced when ``durable``) before the
    mutation is acknowledged.
    """

    def __init__(
        self,
        data_dir: str | Path | None = None,
        normalizer: Normalizer = DEFAULT_NORMALIZER,
        stoplist: frozenset[str] = DEFAULT_STOPLIST,
        stoplist_id: str = DEFAULT_STOPLIST_ID,
        durable: bool = True,
        id_factory=None,
        clock=time.time,
    ):
        self.data_dir = Path(data_dir) if data_dir is not None else None
        if self.data_dir is not None:
            self.data_dir.mkdir(parents=True, exist_ok=True)
        self.normalizer = normalizer
        self.stoplist = stoplist
        self.stoplist_id = stoplist_id
        self.durable = durable
        self._id_factory = id_factory or (lambda: uuid.uuid4().hex[:12])
        self._clock = clock
        self._sessions: dict[str, GameSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        if self.data_dir is not None:
            self._load_existing()

    # -- persistence ----------------------------------------------------

    def _path(self, session_id: str) -> Path:
        assert self.data_dir is not None
        return self.data_dir / f"{session_id}.jsonl"

    def _append_event(self, session: GameSession, event: dict) -> None:
        session.events.append(event)
        if self.data_dir is None:
            return
        with open(self._path(session.id), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, ensure_ascii=False) + "\n")
            fh.flush()
            if self.durable:
                os.fsync(fh.fileno())

    def _load_existing(self) -> None:
        assert self.data_dir is not None
        for path in sorted(self.data_dir.glob("*.jsonl")):
            events = [
                json.loads(line)
                for line in path.read_text(encoding="utf-8").splitlines()
                if line.strip()
            ]
            if not events:
                continue
            session = replay_events(events)
            self._sessions[session.id] = session
            self._locks[session.id] = threading.Lock()

    # -- session API ------------------------------------------------------

    def create_session(self, seed_word: str) -> GameSession:
        seed = self.normalizer(seed_word)
        if not seed:
            raise EmptyDefinitionError(f"seed word {seed_word!r} normalizes to nothing")
        if seed in self.stoplist:
            raise EmptyDefinitionError(f"seed word {seed!r} is a function word")
        with self._registry_lock:
            session_id = self._id_factory()
            while session_id in self._sessions:
                session_id = self._id_factory()
            session = GameSession(id=session_id, seed_word=seed, pending=[seed])
            self._sessions[session_id] = session
            self._locks[session_id] = threading.Lock()
        with self._locks[session_id]:
            self._append_event(session, {
                "ts": self._clock(),
                "action": "create",
                "id": session_id,
                "seed_word": seed,
            })
        return session

    def get(self, session_id: str) -> GameSession:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise SessionNotFoundError(session_id) from None

    def lock(self, session_id: str) -> threading.Lock:
        return self._locks[session_id]

    def submit_definition(
        self, session_id: str, word: str, tokens: list[str]
    ) -> GameSession:
        session = self.get(session_id)
        with self.lock(session_id):
            word_norm = self.normalizer(word)
            prompt = next_prompt(session)
            if prompt is None or word_norm != prompt:
                raise SequencingError(
                    f"expected a definition for {prompt!r}, got {word_norm!r}"
                )
            cleaned = _clean_definition(tokens, self.normalizer, self.stoplist)
            if not cleaned:
                raise EmptyDefinitionError(
                    "definition is empty after normalization and stripping"
                )
            # Persist first; the in-memory mutation follows the durable write.
            self._append_event(session, {
                "ts": self._clock(),
                "action": "define",
                "word": word_norm,
                "tokens": cleaned,
            })
            _apply_definition(session, word_norm, cleaned)
        return session


def _clean_definition(
    tokens: list[str], normalizer: Normalizer, stoplist: frozenset[str]
) -> list[str]:
    cleaned = []
    for token in tokens:
        norm = normalizer(token)
        if norm and norm not in stoplist:
            cleaned.append(norm)
    return cleaned


def _apply_definition(session: GameSession, word: str, tokens: list[str]) -> None:
    session.pending.pop(0)
    session.defined[word] = list(tokens)
    for token in tokens:
        if token not in session.defined and token not in session.pending:
            session.pending.append(token)
    session.status = COMPLETE if not session.pending else ACTIVE


def next_prompt(session: GameSession) -> str | None:
    """Head of the pending queue, or None when the session is complete."""
    return session.pending[0] if session.pending else None


def replay_events(events: list[dict]) -> GameSession:
    """Rebuild a session from its event log (byte-identical state)."""
    head = events[0]
    if head.get("action") != "create":
        raise ValueError("event log must start with a create event")
    session = GameSession(
        id=head["id"], seed_word=head["seed_word"], pending=[head["seed_word"]]
    )
    session.events.append(head)
    for event in events[1:]:
        if event.get("action") != "define":
            raise ValueError(f"unknown event action {event.get('action')!r}")
        session.events.append(event)
        _apply_definition(session, event["word"], list(event["tokens"]))
    return session


def export_lexicon(session: GameSession) -> Lexicon:
    """Closed Lexicon of a completed session (placeholder POS on entries)."""
    if session.status != COMPLETE:
        raise SessionIncompleteError("session incomplete")
    entries = [
        LexEntry(word, GAME_POS, 1, tuple(tokens))
        for word, tokens in session.defined.items()
    ]
    return Lexicon(entries, stoplist_id="game", normalizer_id=DEFAULT_NORMALIZER.id)


def analyze_session(session: GameSession, budget: float = 30.0) -> dict:
    """Full structure analysis of a completed session, as count/percent rows."""
    lex = export_lexicon(session)
    graph = build_graph(lex)
    labels = label_structures(graph)
    minset = solve_minset(graph, budget=budget, mode="exact")
    core_part, satellite_part = split_minset(minset, labels)
    total = len(graph)

    def row(count: int, denominator: int) -> dict:
        pct = 100.0 * count / denominator if denominator else 0.0
        return {"count": count, "percent": round(pct, 2)}

    return {
        "words": total,
        "rest": row(len(labels.rest), total),
        "kernel": row(len(labels.kernel), total),
        "satellites": row(len(labels.satellites), total),
        "core": row(len(labels.core), total),
        "minset": row(len(minset.members), total),
        "minset_of_kernel_percent": round(
            100.0 * len(minset.members) / len(labels.kernel), 2
        ) if labels.kernel else 0.0,
        "satellites_minset": row(len(satellite_part), len(minset.members)),
        "core_minset": row(len(core_part), len(minset.members)),
        "minset_members": sorted(minset.members),
        "minset_status": minset.status,
    }
