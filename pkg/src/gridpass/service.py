"""Challenge/response authentication sessions.

A session is issued with a fresh challenge grid and an authoritative clock
snapshot; verification always uses the snapshot delivered with the grid, so
a minute rollover between issuance and click cannot fail a correct answer.
Three attempts per session; every failure issues a new permutation and a
new snapshot.
"""

from __future__ import annotations

import random
import secrets as secrets_module
import threading
import time as time_module
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, Sequence

from .engine import expected_click_indices
from .errors import (
    ClickValidationError,
    SessionStateError,
    UnknownSessionError,
    UnknownUserError,
)
from .grid import ChallengeGrid, GridSpec, ImageId, generate_challenge
from .scheme import ClockTime
from .store import AccountStore

MAX_ATTEMPTS = 3
DEFAULT_SESSION_TIMEOUT = 600.0  # seconds of idle time before a session expires


class SessionState(Enum):
    AWAITING_CLICKS = "awaiting_clicks"
    SUCCEEDED = "succeeded"
    LOCKED = "locked"


class AttemptResult(Enum):
    SUCCESS = "success"
    RETRY = "retry"
    LOCKED = "locked"


@dataclass
class AttemptOutcome:
    result: AttemptResult
    grid: Optional[ChallengeGrid] = None
    clock: Optional[ClockTime] = None
    attempts_remaining: int = 0


@dataclass
class AuthSession:
    session_id: str
    user_id: str
    challenge: Optional[ChallengeGrid]
    clock: ClockTime
    attempts_remaining: int = MAX_ATTEMPTS
    state: SessionState = SessionState.AWAITING_CLICKS
    last_touched: float = 0.0
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)


class AuthService:
    """Session table plus the attempt-verification logic.

    The account store is only ever read here. `rng` drives challenge
    generation (inject a seeded instance for reproducible tests);
    `clock_source` supplies the displayed wall-clock snapshot.
    """

    def __init__(
        self,
        store: AccountStore,
        catalog_ids: Sequence[ImageId],
        *,
        spec: GridSpec = GridSpec(5, 5),
        rng: Optional[random.Random] = None,
        clock_source: Optional[Callable[[], ClockTime]] = None,
        session_timeout: float = DEFAULT_SESSION_TIMEOUT,
        time_source: Callable[[], float] = time_module.monotonic,
    ) -> None:
        self.store = store
        self.catalog_ids = tuple(catalog_ids)
        self.spec = spec
        self._rng = rng if rng is not None else random.Random()
        self._clock_source = clock_source if clock_source is not None else ClockTime.now
        self.session_timeout = session_timeout
        self._time_source = time_source
        self._sessions: dict[str, AuthSession] = {}
        self._table_lock = threading.Lock()
        self._last_purge = self._time_source()
        # Sweep cadence bounds the cost of expiry cleanup at O(table)/interval.
        self._purge_interval = min(60.0, session_timeout)

    def _fresh_challenge(self) -> ChallengeGrid:
        with self._table_lock:
            return generate_challenge(self.spec, self.catalog_ids, self._rng)

    def begin_session(self, user_id: str) -> AuthSession:
        if self.store.lookup(user_id) is None:
            raise UnknownUserError(f"unknown user id {user_id!r}")
        session = AuthSession(
            session_id=secrets_module.token_urlsafe(16),
            user_id=user_id,
            challenge=self._fresh_challenge(),
            clock=self._clock_source(),
            last_touched=self._time_source(),
        )
        with self._table_lock:
            self._purge_expired_locked()
            self._sessions[session.session_id] = session
        return session

    def _purge_expired_locked(self) -> None:
        now = self._time_source()
        if now - self._last_purge < self._purge_interval:
            return
        self._last_purge = now
        expired = [
            sid
            for sid, session in self._sessions.items()
            if now - session.last_touched > self.session_timeout
        ]
        for sid in expired:
            del self._sessions[sid]

    def _get_session(self, session_id: str) -> AuthSession:
        with self._table_lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise UnknownSessionError(f"unknown or expired session {session_id!r}")
            if self._time_source() - session.last_touched > self.session_timeout:
                del self._sessions[session_id]
                raise UnknownSessionError(f"unknown or expired session {session_id!r}")
        return session

    @staticmethod
    def _validate_clicks(clicks: Sequence[int], cell_count: int) -> tuple[int, int]:
        if len(clicks) != 2:
            raise ClickValidationError(f"exactly two clicks are required, got {len(clicks)}")
        for click in clicks:
            if not isinstance(click, int) or isinstance(click, bool):
                raise ClickValidationError(f"click {click!r} is not a cell index")
            if not 0 <= click < cell_count:
                raise ClickValidationError(f"cell index {click} outside grid of {cell_count}")
        return clicks[0], clicks[1]

    def submit_attempt(self, session_id: str, clicks: Sequence[int]) -> AttemptOutcome:
        """Verify an ordered click pair against the session's challenge.

        Malformed clicks raise without consuming an attempt. A wrong pair
        consumes one attempt and issues a fresh grid and clock snapshot,
        or locks the session when no attempts remain.
        """
        session = self._get_session(session_id)
        with session.lock:
            if session.state is not SessionState.AWAITING_CLICKS:
                raise SessionStateError(f"session is already {session.state.value}")
            assert session.challenge is not None
            submitted = self._validate_clicks(clicks, session.challenge.spec.cell_count)
            session.last_touched = self._time_source()

            secret = self.store.lookup(session.user_id)
            if secret is None:
                # Account removed mid-session; treat like an expired session.
                raise UnknownSessionError(f"unknown or expired session {session_id!r}")
            expected = expected_click_indices(session.challenge, secret, session.clock)

            if submitted == expected:
                session.state = SessionState.SUCCEEDED
                session.challenge = None
                return AttemptOutcome(result=AttemptResult.SUCCESS)

            session.attempts_remaining -= 1
            if session.attempts_remaining <= 0:
                session.state = SessionState.LOCKED
                session.challenge = None
                return AttemptOutcome(result=AttemptResult.LOCKED)

            session.challenge = self._fresh_challenge()
            session.clock = self._clock_source()
            return AttemptOutcome(
                result=AttemptResult.RETRY,
                grid=session.challenge,
                clock=session.clock,
                attempts_remaining=session.attempts_remaining,
            )

    def session_info(self, session_id: str) -> dict:
        """Public view of a session: never the secret, the scenario,
        or the intermediate cells."""
        session = self._get_session(session_id)
        with session.lock:
            session.last_touched = self._time_source()
            info: dict = {
                "session_id": session.session_id,
                "state": session.state.value,
                "attempts_remaining": session.attempts_remaining,
            }
            if session.state is SessionState.AWAITING_CLICKS:
                assert session.challenge is not None
                info["grid"] = list(session.challenge.cells)
                info["clock"] = str(session.clock)
        return info
