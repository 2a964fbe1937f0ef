"""Shoulder-surfing-resistant graphical password scheme and attack lab."""

from .catalog import Catalog, CatalogImage, bundled_catalog, load_manifest
from .engine import (
    apply_shift,
    classify_scenario,
    derive_pass_images,
    dsr_intermediate,
    expected_click_indices,
    extract_time_digit,
)
from .grid import ChallengeGrid, GridCoord, GridSpec, ImageId, generate_challenge
from .oracle import oracle_derive
from .scheme import (
    ClockTime,
    OrderedImagePair,
    PassImageResult,
    PasswordSecret,
    Scenario,
    ShiftCondition,
    ShiftDirection,
    TimeUnit,
)
from .service import AttemptOutcome, AttemptResult, AuthService, AuthSession, SessionState
from .store import AccountStore, RegistrationPhase, RegistrationState, SecretRecord

__version__ = "0.1.0"

__all__ = [
    "AccountStore",
    "AttemptOutcome",
    "AttemptResult",
    "AuthService",
    "AuthSession",
    "Catalog",
    "CatalogImage",
    "ChallengeGrid",
    "ClockTime",
    "GridCoord",
    "GridSpec",
    "ImageId",
    "OrderedImagePair",
    "PassImageResult",
    "PasswordSecret",
    "RegistrationPhase",
    "RegistrationState",
    "Scenario",
    "SecretRecord",
    "SessionState",
    "ShiftCondition",
    "ShiftDirection",
    "TimeUnit",
    "apply_shift",
    "bundled_catalog",
    "classify_scenario",
    "derive_pass_images",
    "dsr_intermediate",
    "expected_click_indices",
    "extract_time_digit",
    "generate_challenge",
    "load_manifest",
    "oracle_derive",
]
