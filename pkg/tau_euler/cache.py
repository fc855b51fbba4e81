"""On-disk cache of tau and angle tables.

tau-{N}.json holds {"limit": N, "tau": [decimal strings]}; angles-{P}.csv holds
p,a,theta with floats written by repr so they reload bit-identically. A cached
table larger than the request serves it by truncation.
"""

import csv
import io
import json
import logging
import os
import re
import tempfile
from pathlib import Path
from typing import Optional, Tuple

from .config import RunConfig
from .primes import primes_upto
from .satotate import AngleTable, PrimeAngle, build_angles
from .tau_series import TauTable, expand_delta

LOGGER = logging.getLogger(__name__)

TAU_FILE_RE = re.compile(r"^tau-(\d+)\.json$")
ANGLES_FILE_RE = re.compile(r"^angles-(\d+)\.csv$")
CORRUPT = (OSError, ValueError, LookupError, TypeError, AttributeError)


def _smallest_covering(
    cache_dir: Path, pattern: re.Pattern, size: int
) -> Optional[Path]:
    if not cache_dir.is_dir():
        return None
    candidates = []
    for path in cache_dir.iterdir():
        match = pattern.match(path.name)
        if match and int(match.group(1)) >= size:
            candidates.append((int(match.group(1)), path))
    return min(candidates)[1] if candidates else None


def tau_path(cache_dir: Path, limit: int) -> Path:
    return Path(cache_dir) / f"tau-{limit}.json"


def angles_path(cache_dir: Path, cutoff: int) -> Path:
    return Path(cache_dir) / f"angles-{cutoff}.csv"


def _write_atomic(path: Path, text: str):
    """Write text next to path, then rename it into place."""
    path.parent.mkdir(parents=True, exist_ok=True)
    handle, staging = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.")
    try:
        with os.fdopen(handle, "w", newline="") as staged:
            staged.write(text)
        os.replace(staging, path)
    except BaseException:
        os.unlink(staging)
        raise


def store_tau(cache_dir: Path, table: TauTable) -> Path:
    path = tau_path(cache_dir, table.limit)
    document = {"limit": table.limit, "tau": [str(v) for v in table.values]}
    _write_atomic(path, json.dumps(document))
    LOGGER.info("Cached tau table of %d values at %s", table.limit, path)
    return path


def read_tau(path: Path) -> TauTable:
    limit = int(TAU_FILE_RE.match(Path(path).name).group(1))
    document = json.loads(Path(path).read_text())
    if document["limit"] != limit:
        raise ValueError(f"{path} holds limit {document['limit']}")
    return TauTable(limit=document["limit"], values=[int(v) for v in document["tau"]])


def load_tau(cache_dir: Path, limit: int) -> Optional[TauTable]:
    """Cached tau(1..limit), or None when nothing usable is cached."""
    path = _smallest_covering(Path(cache_dir), TAU_FILE_RE, limit)
    if path is None:
        return None
    try:
        table = read_tau(path).restrict(limit)
    except CORRUPT as err:
        LOGGER.warning("Ignoring corrupt tau cache %s: %s", path, err)
        return None
    LOGGER.info("Loaded tau table from %s", path)
    return table


def store_angles(cache_dir: Path, angles: AngleTable) -> Path:
    path = angles_path(cache_dir, angles.cutoff)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["p", "a", "theta"])
    for entry in angles.entries:
        writer.writerow([entry.p, repr(entry.a), repr(entry.theta)])
    _write_atomic(path, buffer.getvalue())
    LOGGER.info("Cached %d angles at %s", len(angles), path)
    return path


def read_angles(path: Path) -> AngleTable:
    cutoff = int(ANGLES_FILE_RE.match(Path(path).name).group(1))
    with open(path, newline="") as handle:
        rows = list(csv.DictReader(handle))
    entries = [
        PrimeAngle(p=int(row["p"]), a=float(row["a"]), theta=float(row["theta"]))
        for row in rows
    ]
    if [entry.p for entry in entries] != primes_upto(cutoff):
        raise ValueError(f"{path} does not hold every prime up to {cutoff}")
    return AngleTable(cutoff=cutoff, entries=entries)


def load_angles(cache_dir: Path, cutoff: int) -> Optional[AngleTable]:
    path = _smallest_covering(Path(cache_dir), ANGLES_FILE_RE, cutoff)
    if path is None:
        return None
    try:
        angles = read_angles(path).restrict(cutoff)
    except CORRUPT as err:
        LOGGER.warning("Ignoring corrupt angle cache %s: %s", path, err)
        return None
    LOGGER.info("Loaded angle table from %s", path)
    return angles


def tau_table(config: RunConfig) -> TauTable:
    """tau(1..config.tau.limit), from the cache when possible."""
    cache_dir = config.output.cache_dir
    limit = config.tau.limit
    if cache_dir:
        table = load_tau(cache_dir, limit)
        if table is not None:
            return table
    table = expand_delta(
        limit,
        threshold=config.tau.schoolbook_threshold,
        max_limit=config.tau.max_limit,
    )
    if cache_dir:
        store_tau(cache_dir, table)
    return table


def angle_table(config: RunConfig, table: Optional[TauTable] = None) -> AngleTable:
    """Angles for primes up to config.angles.cutoff, from the cache when possible."""
    cache_dir = config.output.cache_dir
    cutoff = config.angles.cutoff
    if cache_dir:
        angles = load_angles(cache_dir, cutoff)
        if angles is not None:
            return angles
    table = table or tau_table(config)
    angles = build_angles(
        table, cutoff, bits=config.angles.precision_bits, workers=config.workers
    )
    if cache_dir:
        store_angles(cache_dir, angles)
    return angles


def cache_tables(config: RunConfig) -> Tuple[TauTable, AngleTable]:
    table = tau_table(config)
    return table, angle_table(config, table)
