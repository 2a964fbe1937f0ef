"""Image catalog: 25 bundled placeholder tiles plus manifest loading.

Image ids (0..24) are the unit of correctness everywhere; asset paths and
labels are display metadata for the UI only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import CatalogError
from .grid import ImageId


@dataclass(frozen=True)
class CatalogImage:
    id: ImageId
    asset_path: str
    label: str


@dataclass(frozen=True)
class Catalog:
    images: tuple[CatalogImage, ...]

    def __len__(self) -> int:
        return len(self.images)

    @property
    def image_ids(self) -> tuple[ImageId, ...]:
        return tuple(image.id for image in self.images)

    def get(self, image_id: ImageId) -> CatalogImage:
        if not 0 <= image_id < len(self.images):
            raise CatalogError(f"image id {image_id} not in catalog of {len(self.images)}")
        return self.images[image_id]

    def label_of(self, image_id: ImageId) -> str:
        return self.get(image_id).label


def _parse_manifest(entries: object, source: str) -> Catalog:
    if not isinstance(entries, list):
        raise CatalogError(f"{source}: manifest must be a JSON array")
    images: list[CatalogImage] = []
    for i, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise CatalogError(f"{source}: entry {i} is not an object")
        try:
            image_id = entry["id"]
            asset_path = entry["asset_path"]
            label = entry["label"]
        except KeyError as exc:
            raise CatalogError(f"{source}: entry {i} missing field {exc}") from None
        if not isinstance(image_id, int) or isinstance(image_id, bool):
            raise CatalogError(f"{source}: entry {i} id must be an integer")
        if not isinstance(asset_path, str) or not isinstance(label, str):
            raise CatalogError(f"{source}: entry {i} asset_path/label must be strings")
        images.append(CatalogImage(id=image_id, asset_path=asset_path, label=label))

    ids = [image.id for image in images]
    if sorted(ids) != list(range(len(ids))):
        raise CatalogError(f"{source}: ids must be exactly 0..{len(ids) - 1} with no gaps")
    images.sort(key=lambda image: image.id)
    return Catalog(images=tuple(images))


def load_manifest(path: str | Path) -> Catalog:
    """Load and validate a catalog manifest file."""
    path = Path(path)
    try:
        entries = json.loads(path.read_text())
    except OSError as exc:
        raise CatalogError(f"cannot read manifest {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"manifest {path} is not valid JSON: {exc}") from exc
    return _parse_manifest(entries, str(path))


def bundled_catalog() -> Catalog:
    """The catalog shipped with the package (25 placeholder SVG tiles)."""
    manifest = resources.files("gridpass").joinpath("assets/manifest.json")
    return _parse_manifest(json.loads(manifest.read_text()), "bundled manifest")


def assets_directory() -> Path:
    """Filesystem directory holding the bundled image assets."""
    return Path(str(resources.files("gridpass").joinpath("assets")))
