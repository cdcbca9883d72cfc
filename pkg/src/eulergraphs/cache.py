"""On-disk memo of ``O(Theta)`` tables.

One JSON file per (context, valence profile).  The context tag is ``plain``
for ordinary graphs and ``r:<r>,d:<d>`` for stable-map graphs.  Files carry
the package version; a file written by another version is ignored and
rewritten.  Writes go through a temporary file and ``os.replace`` so that
readers never see a partial file, and concurrent writers of the same key
must agree on every value.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Optional, Union

from . import __version__
from .graphs import colored_o_table, profile_o_table
from .partitions import GenPartition, TwoPartition
from .symfunc import format_rational, parse_rational

CACHE_ENV = "EULERGRAPHS_CACHE_DIR"

OTable = Dict[TwoPartition, Fraction]


class CacheConsistencyError(RuntimeError):
    """A stored value disagrees with a recomputation."""


def default_cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "eulergraphs"


def context_tag(r: Optional[int] = None, d: Optional[int] = None) -> str:
    return "plain" if r is None else f"r:{r},d:{d}"


class OCache:
    def __init__(self, directory: Union[str, Path, None] = None):
        self.directory = Path(directory) if directory is not None else default_cache_dir()

    def _path(self, context: str, key: str) -> Path:
        digest = hashlib.sha256(f"{context}|{key}".encode()).hexdigest()[:32]
        return self.directory / digest[:2] / f"{digest}.json"

    def _read(self, context: str, key: str) -> Optional[OTable]:
        path = self._path(context, key)
        try:
            data = json.loads(path.read_text())
        except (OSError, ValueError):
            return None
        if data.get("version") != __version__ or data.get("context") != context or data.get("key") != key:
            return None
        try:
            return {TwoPartition.parse(k): parse_rational(v) for k, v in data["entries"].items()}
        except (KeyError, ValueError, AttributeError):
            return None

    def _write(self, context: str, key: str, table: OTable):
        old = self._read(context, key)
        if old is not None:
            if old != table:
                raise CacheConsistencyError(f"cache entry {context} {key} disagrees with a recomputation")
            return
        path = self._path(context, key)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {"version": __version__, "context": context, "key": key,
                   "entries": {t.serialize(): format_rational(v) for t, v in sorted(table.items())}}
        fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, indent=1)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def _get(self, context: str, key: str, compute: Callable[[], OTable]) -> OTable:
        table = self._read(context, key)
        if table is None:
            table = dict(compute())
            self._write(context, key, table)
        return table

    def profile_table(self, nu: GenPartition) -> OTable:
        """Cached :func:`~eulergraphs.graphs.profile_o_table`."""
        return self._get(context_tag(), str(nu), lambda: profile_o_table(nu))

    def colored_table(self, r: int, d: int) -> OTable:
        """Cached :func:`~eulergraphs.graphs.colored_o_table`."""
        return self._get(context_tag(r, d), "all", lambda: colored_o_table(r, d))

    def verify(self, nu: GenPartition) -> bool:
        """Recompute a stored table and compare; missing entries count as consistent."""
        stored = self._read(context_tag(), str(nu))
        return stored is None or stored == dict(profile_o_table(nu))
