"""Named catalog of shipped knot and link presentations.

Files live in the package data directory; setting the environment
variable CUBELINKS_CATALOG points the loader somewhere else (the files
must use the same JSON presentation format).
"""

from __future__ import annotations

import functools
import json
import os
import pathlib

from .tubes import FatKnot, FatLink, presentation_from_json

ENV_VAR = "CUBELINKS_CATALOG"
_DATA_DIR = pathlib.Path(__file__).parent / "data"

KNOT_NAMES = ("trefoil", "figure_eight")
LINK_NAMES = ("clasp", "split")


class CatalogError(KeyError):
    pass


def catalog_dir() -> pathlib.Path:
    override = os.environ.get(ENV_VAR)
    return pathlib.Path(override) if override else _DATA_DIR


def available() -> tuple[str, ...]:
    return tuple(sorted(p.stem for p in catalog_dir().glob("*.json")))


def load(name: str):
    path = catalog_dir() / f"{name}.json"
    if not path.is_file():
        raise CatalogError(
            f"no catalog entry {name!r} in {catalog_dir()} "
            f"(available: {', '.join(available()) or 'none'})")
    return presentation_from_json(json.loads(path.read_text()))


@functools.lru_cache(maxsize=None)
def _cached(name: str, dir_key: str):
    return load(name)


def knot(name: str) -> FatKnot:
    obj = _cached(name, str(catalog_dir()))
    if not isinstance(obj, FatKnot):
        raise CatalogError(f"{name!r} is not a knot presentation")
    return obj


def link(name: str) -> FatLink:
    obj = _cached(name, str(catalog_dir()))
    if not isinstance(obj, FatLink):
        raise CatalogError(f"{name!r} is not a link presentation")
    return obj
