"""Procedural grayscale shape dataset.

Images are 32x32 float32 arrays in [0, 1], one shape per image, with
per-sample jitter of position, size and intensity. Rendering is analytic
(1 px linear anti-aliasing), so the same spec and seed reproduce the
dataset bitwise on any platform.
"""

from __future__ import annotations

import configparser
import hashlib
import io
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..rng import RngStream

_SHAPE_KINDS = ("disc", "square", "cross")


@dataclass(frozen=True)
class ConceptLabel:
    """A conditioning concept. Id 0 is the null (unconditional) concept."""

    id: int
    name: str

    def __post_init__(self):
        if self.id < 0:
            raise ValueError(f"concept id must be non-negative, got {self.id}")


NULL_CONCEPT = ConceptLabel(0, "null")


@dataclass(frozen=True)
class ConceptSpec:
    """How to render one shape concept.

    ``size`` is the disc radius, the square half-side, or the cross arm
    length, in pixels. ``center_jitter`` is the maximum offset of the shape
    center from the image center along each axis.
    """

    name: str
    kind: str
    count: int
    size_range: tuple[float, float] = (5.0, 8.0)
    intensity_range: tuple[float, float] = (0.6, 1.0)
    center_jitter: float = 5.0

    def __post_init__(self):
        if self.kind not in _SHAPE_KINDS:
            raise ValueError(f"unknown shape kind {self.kind!r}; use one of {_SHAPE_KINDS}")
        if self.count <= 0:
            raise ValueError(f"concept {self.name!r} has non-positive count {self.count}")
        if self.size_range[0] > self.size_range[1] or self.size_range[0] <= 0:
            raise ValueError(f"bad size range {self.size_range}")
        if self.center_jitter < 0:
            raise ValueError("center_jitter must be non-negative")


@dataclass(frozen=True)
class DatasetSpec:
    image_size: int = 32
    concepts: tuple[ConceptSpec, ...] = ()

    def __post_init__(self):
        if self.image_size < 8:
            raise ValueError("image_size must be at least 8")
        if not self.concepts:
            raise ValueError("dataset spec must name at least one concept")
        names = [c.name for c in self.concepts]
        if len(set(names)) != len(names):
            raise ValueError("concept names must be distinct")

    def labels(self) -> list[ConceptLabel]:
        """Concept labels in spec order, ids 1..C (0 is reserved for null)."""
        return [ConceptLabel(i + 1, c.name) for i, c in enumerate(self.concepts)]


@dataclass(frozen=True)
class ToyImage:
    """A single grayscale image with its concept label."""

    pixels: np.ndarray  # (1, H, W) float32 in [0, 1]
    label: ConceptLabel
    image_id: str = ""

    def __post_init__(self):
        p = np.asarray(self.pixels, dtype=np.float32)
        if p.ndim != 3 or p.shape[0] != 1:
            raise ValueError(f"pixels must have shape (1, H, W), got {p.shape}")
        object.__setattr__(self, "pixels", np.clip(p, 0.0, 1.0))


def default_dataset_spec(count_per_concept: int = 200) -> DatasetSpec:
    """Three visually distinct shape classes with moderate jitter.

    The size ranges are chosen so the per-class mean pixel intensities are
    separated (discs cover the most area, crosses the least).
    """
    return DatasetSpec(
        image_size=32,
        concepts=(
            ConceptSpec("disc", "disc", count_per_concept, (5.5, 8.0), (0.6, 1.0), 5.0),
            ConceptSpec("square", "square", count_per_concept, (4.0, 6.0), (0.6, 1.0), 5.0),
            ConceptSpec("cross", "cross", count_per_concept, (6.0, 9.0), (0.6, 1.0), 5.0),
        ),
    )


def _render(kind: str, size: float, cx: float, cy: float, intensity: float, n: int) -> np.ndarray:
    yy, xx = np.mgrid[0:n, 0:n].astype(np.float32) + 0.5
    dx = np.abs(xx - cx)
    dy = np.abs(yy - cy)
    if kind == "disc":
        dist = np.sqrt(dx * dx + dy * dy)
        alpha = np.clip(size + 0.5 - dist, 0.0, 1.0)
    elif kind == "square":
        alpha = np.clip(size + 0.5 - dx, 0.0, 1.0) * np.clip(size + 0.5 - dy, 0.0, 1.0)
    else:  # cross: two overlapping bars, arm length `size`, half-width size/4
        w = size / 4.0
        horiz = np.clip(size + 0.5 - dx, 0.0, 1.0) * np.clip(w + 0.5 - dy, 0.0, 1.0)
        vert = np.clip(w + 0.5 - dx, 0.0, 1.0) * np.clip(size + 0.5 - dy, 0.0, 1.0)
        alpha = np.maximum(horiz, vert)
    return (np.float32(intensity) * alpha)[None, :, :]


def make_dataset(spec: DatasetSpec, rng: RngStream) -> list[ToyImage]:
    """Render the dataset described by ``spec``, deterministically per rng.

    Each image draws its jitter from a child stream keyed by concept name
    and index, so the dataset does not depend on rendering order.
    """
    images: list[ToyImage] = []
    labels = spec.labels()
    center = spec.image_size / 2.0
    for label, cspec in zip(labels, spec.concepts):
        for i in range(cspec.count):
            r = rng.child(cspec.name, i)
            cx = center + float(r.uniform(-cspec.center_jitter, cspec.center_jitter))
            cy = center + float(r.uniform(-cspec.center_jitter, cspec.center_jitter))
            size = float(r.uniform(*cspec.size_range))
            intensity = float(r.uniform(*cspec.intensity_range))
            pixels = _render(cspec.kind, size, cx, cy, intensity, spec.image_size)
            images.append(ToyImage(pixels, label, f"{cspec.name}-{i:04d}"))
    return images


def images_by_concept(images: list[ToyImage]) -> dict[int, list[ToyImage]]:
    out: dict[int, list[ToyImage]] = {}
    for img in images:
        out.setdefault(img.label.id, []).append(img)
    return out


def stack_pixels(images: list[ToyImage]) -> np.ndarray:
    """Stack images into an (N, 1, H, W) float32 batch."""
    return np.stack([img.pixels for img in images]).astype(np.float32)


# --- dataset spec persistence (human-readable key = value sections) ---


def _spec_to_config(spec: DatasetSpec) -> configparser.ConfigParser:
    cp = configparser.ConfigParser()
    cp["dataset"] = {"image_size": str(spec.image_size)}
    for c in spec.concepts:
        cp[f"concept:{c.name}"] = {
            "kind": c.kind,
            "count": str(c.count),
            "size": f"{c.size_range[0]!r}, {c.size_range[1]!r}",
            "intensity": f"{c.intensity_range[0]!r}, {c.intensity_range[1]!r}",
            "jitter": repr(c.center_jitter),
        }
    return cp


def dataset_spec_text(spec: DatasetSpec) -> str:
    """Canonical serialized form of a spec; the basis of its hash."""
    buf = io.StringIO()
    _spec_to_config(spec).write(buf)
    return buf.getvalue()


def dataset_spec_hash(spec: DatasetSpec) -> str:
    return hashlib.sha256(dataset_spec_text(spec).encode("utf-8")).hexdigest()


def write_dataset_spec(path: str | Path, spec: DatasetSpec) -> None:
    Path(path).write_text(dataset_spec_text(spec))


def read_dataset_spec(source: str | Path) -> DatasetSpec:
    """Parse a spec file (or the literal text of one)."""
    text = source if isinstance(source, str) and "\n" in source else Path(source).read_text()
    cp = configparser.ConfigParser()
    cp.read_string(text)
    concepts = []
    for section in cp.sections():
        if not section.startswith("concept:"):
            continue
        name = section.split(":", 1)[1]
        s = cp[section]
        size = tuple(float(x) for x in s["size"].split(","))
        intensity = tuple(float(x) for x in s["intensity"].split(","))
        concepts.append(
            ConceptSpec(
                name=name,
                kind=s["kind"],
                count=int(s["count"]),
                size_range=size,
                intensity_range=intensity,
                center_jitter=float(s["jitter"]),
            )
        )
    return DatasetSpec(
        image_size=int(cp["dataset"]["image_size"]), concepts=tuple(concepts)
    )
