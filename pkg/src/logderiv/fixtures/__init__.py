"""Bundled arrangement files and golden outputs used by the tests and the CLI."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from ..arrangement import Arrangement, parse_arrangement


def fixture_path(name: str) -> Path:
    with resources.as_file(resources.files(__package__).joinpath(name)) as p:
        return Path(p)


def load_fixture(name: str) -> Arrangement:
    text = resources.files(__package__).joinpath(name).read_text()
    return parse_arrangement(text)


def load_golden(name: str) -> dict:
    text = resources.files(__package__).joinpath("goldens", name).read_text()
    return json.loads(text)
