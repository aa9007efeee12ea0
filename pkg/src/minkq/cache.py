"""Disk cache for expensive moment runs.

Entries are keyed by a content hash of the run parameters (variant, K,
terms, digits); files are written atomically via temp-file rename so a
crashed run never leaves a partial entry.  The cache directory defaults to
~/.cache/minkq and can be overridden with the MINKQ_CACHE_DIR environment
variable.
"""

import hashlib
import json
import os
import tempfile
from pathlib import Path

from .moments import load_moments, moments_json_bytes, solve_moments
from .numerics import PrecisionContext

ENV_CACHE_DIR = "MINKQ_CACHE_DIR"


def cache_dir():
    override = os.environ.get(ENV_CACHE_DIR)
    if override:
        return Path(override)
    return Path.home() / ".cache" / "minkq"


def params_key(**params):
    canon = json.dumps(params, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode("utf-8")).hexdigest()[:16]


def moments_cache_path(variant, K, terms, digits):
    key = params_key(variant=variant, K=K, terms=terms, digits=digits)
    return cache_dir() / f"moments_{variant}_K{K}_t{terms}_d{digits}_{key}.json"


def write_atomic(path, data):
    """Write bytes to path via a same-directory temp file and rename."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".part")
    try:
        os.write(fd, data)
        os.close(fd)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.close(fd)
        except OSError:
            pass
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def cached_moments(variant, K, terms, digits):
    """Moment vector for the given parameters, from cache when available.

    Returns (MomentVector, hit, path); on a hit the vector is loaded from
    the cached bytes without recomputation.
    """
    path = moments_cache_path(variant, K, terms, digits)
    if path.exists():
        return load_moments(path), True, path
    mv = solve_moments(variant, K, terms, PrecisionContext(digits))
    write_atomic(path, moments_json_bytes(mv))
    return mv, False, path
