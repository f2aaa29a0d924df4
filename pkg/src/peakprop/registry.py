"""Dataset registry: name -> file path / generator, label column, cluster count.

The registry is a JSON manifest. Each entry may carry:

  "file":         CSV path (relative paths resolve against the manifest)
  "has_header":   bool, default false
  "label_column": 0-based index or header name of the gold-label column
  "clusters":     expected cluster count (used as k for k-needing baselines)
  "normalize":    default normalization policy for this dataset
  "url"/"sha256": download source for fetch-datasets
  "generator":    built-in synthetic generator name + "params"/"seed"

Resolution prefers a readable file, then the generator. The built-in
registry covers the classic benchmark names with offline generator
stand-ins; fetched files transparently take precedence once present.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

from .dataset import Dataset, load_csv
from .synth import synth_generate


class RegistryError(ValueError):
    """Unknown dataset name or unresolvable registry entry."""


@dataclass(frozen=True)
class RegistryEntry:
    name: str
    file: str | None = None
    has_header: bool = False
    label_column: int | str | None = None
    clusters: int | None = None
    normalize: bool = False
    url: str | None = None
    sha256: str | None = None
    generator: str | None = None
    params: dict | None = None
    seed: int = 0
    base_dir: Path | None = None

    def resolve(self) -> Dataset:
        if self.file is not None:
            path = Path(self.file)
            if self.base_dir is not None and not path.is_absolute():
                path = self.base_dir / path
            if path.exists():
                return load_csv(
                    path,
                    has_header=self.has_header,
                    label_column=self.label_column,
                    name=self.name,
                    normalize_default=self.normalize,
                )
            if self.generator is None:
                raise RegistryError(
                    f"dataset {self.name!r}: file {path} missing "
                    "(run fetch-datasets or point the manifest at a local copy)"
                )
        if self.generator is not None:
            ds = synth_generate(self.generator, seed=self.seed, **(self.params or {}))
            return Dataset(
                ds.points, ds.gold_labels, name=self.name, normalize_default=self.normalize
            )
        raise RegistryError(f"dataset {self.name!r}: no file or generator configured")


BUILTIN_REGISTRY: dict[str, RegistryEntry] = {
    name: RegistryEntry(name=name, generator=gen, clusters=k, seed=seed)
    for name, gen, k, seed in [
        ("jain", "jain_like", 2, 11),
        ("3-spiral", "spiral3", 3, 12),
        ("cassini", "cassini", 3, 13),
        ("dartboard1", "dartboard1", 4, 14),
        ("shapes", "shapes", 4, 15),
        ("r15", "r15", 15, 16),
        ("aggregation", "aggregation_like", 7, 17),
        ("2d-4c-no9", "dense4c", 4, 18),
        ("two_moons", "two_moons", 2, 19),
        ("gauss2_unbalanced", "gauss2_unbalanced", 2, 20),
        ("donut3", "donut3", 3, 21),
    ]
}


def load_registry(path=None) -> dict[str, RegistryEntry]:
    """Built-in registry, optionally overlaid with a JSON manifest file."""
    registry = dict(BUILTIN_REGISTRY)
    if path is None:
        return registry
    manifest_path = Path(path)
    with open(manifest_path, encoding="utf-8") as fh:
        manifest = json.load(fh)
    if not isinstance(manifest, dict):
        raise RegistryError(f"{path}: manifest must be a JSON object")
    for name, raw in manifest.items():
        registry[name] = RegistryEntry(
            name=name,
            file=raw.get("file"),
            has_header=bool(raw.get("has_header", False)),
            label_column=raw.get("label_column"),
            clusters=raw.get("clusters"),
            normalize=bool(raw.get("normalize", False)),
            url=raw.get("url"),
            sha256=raw.get("sha256"),
            generator=raw.get("generator"),
            params=raw.get("params"),
            seed=int(raw.get("seed", 0)),
            base_dir=manifest_path.parent,
        )
    return registry


def get_entry(registry: dict[str, RegistryEntry], name: str) -> RegistryEntry:
    try:
        return registry[name]
    except KeyError:
        raise RegistryError(
            f"unknown dataset {name!r}; known: {', '.join(sorted(registry))}"
        ) from None


def fetch_entry(entry: RegistryEntry, dest_dir) -> Path:
    """Download entry.url into dest_dir, verifying sha256 when given."""
    if entry.url is None:
        raise RegistryError(f"dataset {entry.name!r} has no download URL")
    import urllib.request

    dest = Path(dest_dir) / (Path(entry.file).name if entry.file else f"{entry.name}.csv")
    dest.parent.mkdir(parents=True, exist_ok=True)
    with urllib.request.urlopen(entry.url) as resp:
        payload = resp.read()
    if entry.sha256 is not None:
        digest = hashlib.sha256(payload).hexdigest()
        if digest != entry.sha256:
            raise RegistryError(
                f"dataset {entry.name!r}: checksum mismatch ({digest} != {entry.sha256})"
            )
    dest.write_bytes(payload)
    return dest
