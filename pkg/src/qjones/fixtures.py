"""Shipped knot fixtures and file loaders.

A knot fixture file holds ``{name, pd, signs, components, cyclotomic,
mirror_convention, provenance}``; ``load_knot`` accepts a fixture name or a
path to such a file.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .cyclojones import CyclotomicCoeffs
from .skein import Diagram

__all__ = ["KnotFixture", "load_knot", "fixture_names", "fixture_path", "read_json"]

_PACKAGE_DIR = "data"


@dataclass(frozen=True)
class KnotFixture:
    name: str
    diagram: Diagram | None
    coeffs: CyclotomicCoeffs
    mirror_convention: str = ""
    provenance: str = ""

    @classmethod
    def from_json(cls, data: dict) -> "KnotFixture":
        diagram = Diagram.from_json(data) if "pd" in data else None
        coeffs = CyclotomicCoeffs.from_json(data)
        return cls(str(data.get("name", "")), diagram, coeffs, str(data.get("mirror_convention", "")), str(data.get("provenance", "")))


def fixture_names() -> list[str]:
    base = resources.files("qjones") / _PACKAGE_DIR
    return sorted(p.name[:-5] for p in base.iterdir() if p.name.endswith(".json"))


def fixture_path(name: str) -> Path:
    return Path(str(resources.files("qjones") / _PACKAGE_DIR / f"{name}.json"))


def read_json(name_or_path: str | Path) -> dict:
    """Read a shipped fixture by name, or any JSON file by path."""
    p = Path(name_or_path)
    if not p.is_file():
        # "figure8", "figure8.json" and "fixtures/figure8.json" all name the shipped file
        shipped = fixture_path(p.stem if p.suffix == ".json" else str(name_or_path))
        if not shipped.exists():
            raise FileNotFoundError(f"no fixture or file named {name_or_path!r}")
        p = shipped
    return json.loads(p.read_text())


def load_knot(name_or_path: str | Path) -> KnotFixture:
    return KnotFixture.from_json(read_json(name_or_path))
