"""Exception hierarchy shared across the package.

Contract violations (out-of-bounds coordinates, identical cells passed where
distinct ones are required) raise plain ValueError; everything that a caller
is expected to branch on gets its own class below.
"""

from __future__ import annotations


class GridPassError(Exception):
    """Base class for all domain errors."""


class CatalogError(GridPassError):
    """Catalog/manifest configuration problem (bad ids, size mismatch)."""


class ImageNotFoundError(GridPassError):
    """An image id is absent from a challenge grid or catalog."""


class RegistrationError(GridPassError):
    """Base class for account-registration failures."""


class UserIdMismatchError(RegistrationError):
    """User id and its confirmation differ."""


class UserIdOccupiedError(RegistrationError):
    """The requested user id is already registered."""


class InvalidUserIdError(RegistrationError):
    """Empty or whitespace-only user id."""


class ImageSelectionError(RegistrationError):
    """Password image selection is not exactly two distinct catalog images."""


class RegistrationPhaseError(RegistrationError):
    """Registration step invoked out of order."""


class StoreError(GridPassError):
    """Base class for account-store failures."""


class StoreIntegrityError(StoreError):
    """Store file exists but does not parse into valid records."""


class StorePersistenceError(StoreError):
    """Writing the store file failed; in-memory state was not changed."""


class AuthError(GridPassError):
    """Base class for authentication-service failures."""


class UnknownUserError(AuthError):
    """Login attempted for a user id that is not registered."""


class UnknownSessionError(AuthError):
    """Session id does not exist or has expired."""


class SessionStateError(AuthError):
    """Attempt submitted to a session that already succeeded or locked."""


class ClickValidationError(AuthError):
    """Submitted clicks are not exactly two in-bounds cell indices."""
