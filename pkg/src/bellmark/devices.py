"""Bundled device presets: connectivity graph plus average error rates.

Preset files are JSON objects
``{name, n_vertices, edges: [[i, j], ...], noise: {p1, p2, pr}}``; the same
schema is accepted for user-supplied device files.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import InvalidInputError
from .graphs import ConnectivityGraph
from .noise import NoiseParams

__all__ = ["DevicePreset", "PRESET_NAMES", "list_presets", "load_preset"]

PRESET_NAMES = ("star-5", "falcon-7", "ion-trap-20", "sycamore-53", "eagle-127")


@dataclass(frozen=True)
class DevicePreset:
    name: str
    graph: ConnectivityGraph
    noise: NoiseParams

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "n_vertices": self.graph.n_vertices,
            "edges": [list(e) for e in self.graph.sorted_edges()],
            "noise": {"p1": self.noise.p1, "p2": self.noise.p2, "pr": self.noise.pr},
        }


def _parse(payload: dict, source: str) -> DevicePreset:
    try:
        graph = ConnectivityGraph.from_edges(int(payload["n_vertices"]), payload["edges"])
        noise = NoiseParams(**{k: float(v) for k, v in payload["noise"].items()})
        name = str(payload["name"])
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed device file {source}: {exc}") from exc
    return DevicePreset(name, graph, noise)


def load_preset(name_or_path: str) -> DevicePreset:
    """Load a bundled preset by name, or any preset file by path."""
    if name_or_path in PRESET_NAMES:
        text = resources.files("bellmark.data").joinpath(f"{name_or_path}.json").read_text()
        return _parse(json.loads(text), name_or_path)
    path = Path(name_or_path)
    if path.is_file():
        return _parse(json.loads(path.read_text()), str(path))
    raise InvalidInputError(
        f"unknown device {name_or_path!r}; bundled presets: {', '.join(PRESET_NAMES)}"
    )


def list_presets() -> list[DevicePreset]:
    return [load_preset(name) for name in PRESET_NAMES]
