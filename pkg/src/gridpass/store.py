"""Account registration and persistence.

One JSON document per store, written atomically (temp file + rename) so a
crash leaves either the old file or the new one, never a torn record.
Secrets are stored as plain image ids: the server has to re-derive the
expected clicks from the password images on every login, so a one-way hash
is structurally impossible in this scheme. Protect the file with
filesystem permissions.
"""

from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    ImageSelectionError,
    InvalidUserIdError,
    RegistrationPhaseError,
    StoreIntegrityError,
    StorePersistenceError,
    UserIdMismatchError,
    UserIdOccupiedError,
)
from .grid import ImageId
from .scheme import OrderedImagePair, ShiftCondition, ShiftDirection, TimeUnit

STORE_VERSION = 1


@dataclass(frozen=True)
class SecretRecord:
    user_id: str
    images: OrderedImagePair
    condition: ShiftCondition
    created_at: str  # ISO 8601, UTC


class RegistrationPhase(Enum):
    NEED_USER_ID = "need_user_id"
    NEED_IMAGES = "need_images"
    NEED_CONDITION = "need_condition"
    COMPLETE = "complete"


class RegistrationState:
    """One in-flight registration; advances NEED_IMAGES -> NEED_CONDITION -> COMPLETE.

    Nothing is persisted until the final step succeeds.
    """

    def __init__(self, store: "AccountStore", user_id: str) -> None:
        self._store = store
        self.user_id = user_id
        self.phase = RegistrationPhase.NEED_IMAGES
        self.images: Optional[OrderedImagePair] = None
        self.condition: Optional[ShiftCondition] = None
        self.record: Optional[SecretRecord] = None

    def set_password_images(self, selected: Sequence[ImageId]) -> "RegistrationState":
        if self.phase is not RegistrationPhase.NEED_IMAGES:
            raise RegistrationPhaseError(
                f"password images cannot be set in phase {self.phase.value}"
            )
        if len(selected) != 2:
            raise ImageSelectionError(
                f"exactly two password images are required, got {len(selected)}"
            )
        first, second = selected
        if first == second:
            raise ImageSelectionError("the two password images must be distinct")
        for image in (first, second):
            if not isinstance(image, int) or isinstance(image, bool):
                raise ImageSelectionError(f"image id {image!r} is not an integer")
            if not 0 <= image < self._store.catalog_size:
                raise ImageSelectionError(
                    f"image id {image} outside catalog of {self._store.catalog_size}"
                )
        self.images = OrderedImagePair(first=first, second=second)
        self.phase = RegistrationPhase.NEED_CONDITION
        return self

    def set_shift_condition(self, condition: ShiftCondition) -> "RegistrationState":
        if self.phase is not RegistrationPhase.NEED_CONDITION:
            raise RegistrationPhaseError(
                f"shift condition cannot be set in phase {self.phase.value}"
            )
        assert self.images is not None
        record = SecretRecord(
            user_id=self.user_id,
            images=self.images,
            condition=condition,
            created_at=datetime.now(timezone.utc).isoformat(),
        )
        self._store._persist_new_record(record)
        # Only reached if the write landed on disk.
        self.condition = condition
        self.record = record
        self.phase = RegistrationPhase.COMPLETE
        return self


def _record_to_json(record: SecretRecord) -> dict:
    return {
        "user_id": record.user_id,
        "image_ids": [record.images.first, record.images.second],
        "shift": {
            "direction": record.condition.direction.value,
            "time_unit": record.condition.unit.value,
        },
        "created_at": record.created_at,
    }


def _record_from_json(entry: object, where: str) -> SecretRecord:
    if not isinstance(entry, dict):
        raise StoreIntegrityError(f"{where}: account entry is not an object")
    try:
        user_id = entry["user_id"]
        image_ids = entry["image_ids"]
        shift = entry["shift"]
        created_at = entry["created_at"]
    except KeyError as exc:
        raise StoreIntegrityError(f"{where}: missing field {exc}") from None
    if not isinstance(user_id, str) or not user_id.strip():
        raise StoreIntegrityError(f"{where}: user_id must be a non-empty string")
    if (
        not isinstance(image_ids, list)
        or len(image_ids) != 2
        or any(not isinstance(i, int) or isinstance(i, bool) for i in image_ids)
    ):
        raise StoreIntegrityError(f"{where} (user {user_id!r}): image_ids must be two integers")
    if image_ids[0] == image_ids[1]:
        raise StoreIntegrityError(f"{where} (user {user_id!r}): password images must differ")
    if not isinstance(shift, dict):
        raise StoreIntegrityError(f"{where} (user {user_id!r}): shift must be an object")
    try:
        direction = ShiftDirection(shift.get("direction"))
        unit = TimeUnit(shift.get("time_unit"))
    except ValueError:
        raise StoreIntegrityError(
            f"{where} (user {user_id!r}): unknown shift direction or time unit"
        ) from None
    if not isinstance(created_at, str):
        raise StoreIntegrityError(f"{where} (user {user_id!r}): created_at must be a string")
    return SecretRecord(
        user_id=user_id,
        images=OrderedImagePair(first=image_ids[0], second=image_ids[1]),
        condition=ShiftCondition(direction=direction, unit=unit),
        created_at=created_at,
    )


class AccountStore:
    """Single-writer, multi-reader account file.

    All mutations are serialized through one lock and hit disk before the
    in-memory snapshot is swapped, so readers always see a consistent,
    fully-persisted state.
    """

    def __init__(self, path: str | Path, *, catalog_size: int = 25, must_exist: bool = False):
        self.path = Path(path)
        self.catalog_size = catalog_size
        self._lock = threading.Lock()
        if self.path.exists():
            self._records = self._load()
        elif must_exist:
            raise StoreIntegrityError(f"account store not found at {self.path}")
        else:
            self._records: dict[str, SecretRecord] = {}

    def _load(self) -> dict[str, SecretRecord]:
        where = str(self.path)
        try:
            document = json.loads(self.path.read_text())
        except OSError as exc:
            raise StoreIntegrityError(f"cannot read store {where}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise StoreIntegrityError(f"store {where} is not valid JSON: {exc}") from exc
        if not isinstance(document, dict):
            raise StoreIntegrityError(f"store {where}: top level must be an object")
        if document.get("version") != STORE_VERSION:
            raise StoreIntegrityError(
                f"store {where}: unsupported version {document.get('version')!r}"
            )
        accounts = document.get("accounts")
        if not isinstance(accounts, list):
            raise StoreIntegrityError(f"store {where}: accounts must be an array")
        records: dict[str, SecretRecord] = {}
        for i, entry in enumerate(accounts):
            record = _record_from_json(entry, f"store {where}, account {i}")
            if record.user_id in records:
                raise StoreIntegrityError(
                    f"store {where}: duplicate user id {record.user_id!r}"
                )
            records[record.user_id] = record
        return records

    def _write(self, records: Iterable[SecretRecord]) -> None:
        document = {
            "version": STORE_VERSION,
            "accounts": [_record_to_json(r) for r in records],
        }
        payload = json.dumps(document, indent=2) + "\n"
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            fd, tmp_name = tempfile.mkstemp(
                dir=self.path.parent, prefix=self.path.name, suffix=".tmp"
            )
            try:
                with os.fdopen(fd, "w") as handle:
                    handle.write(payload)
                    handle.flush()
                    os.fsync(handle.fileno())
                os.replace(tmp_name, self.path)
            except BaseException:
                try:
                    os.unlink(tmp_name)
                except OSError:
                    pass
                raise
        except OSError as exc:
            raise StorePersistenceError(f"cannot write store {self.path}: {exc}") from exc

    def create_user(self, user_id: str, user_id_confirm: str) -> RegistrationState:
        """Start a registration. Checks the confirmation field and occupancy."""
        if user_id != user_id_confirm:
            raise UserIdMismatchError("user id and confirmation do not match")
        if not user_id or not user_id.strip():
            raise InvalidUserIdError("user id must not be empty")
        with self._lock:
            if user_id in self._records:
                raise UserIdOccupiedError(f"user id {user_id!r} is already taken")
        return RegistrationState(self, user_id)

    def _persist_new_record(self, record: SecretRecord) -> None:
        with self._lock:
            # Re-check under the lock: a racing registration may have won.
            if record.user_id in self._records:
                raise UserIdOccupiedError(f"user id {record.user_id!r} is already taken")
            updated = dict(self._records)
            updated[record.user_id] = record
            self._write(updated.values())
            self._records = updated

    def lookup(self, user_id: str) -> Optional[SecretRecord]:
        """Exact-match (case-sensitive) retrieval; None for unknown ids."""
        return self._records.get(user_id)

    def user_ids(self) -> list[str]:
        return sorted(self._records)

    def __len__(self) -> int:
        return len(self._records)


def register_account(
    store: AccountStore,
    user_id: str,
    image_ids: Sequence[ImageId],
    condition: ShiftCondition,
) -> SecretRecord:
    """Drive the three registration steps in one call (CLI convenience)."""
    state = store.create_user(user_id, user_id)
    state.set_password_images(image_ids)
    state.set_shift_condition(condition)
    assert state.record is not None
    return state.record
