"""Resource caps and cache settings shared by the whole package."""

from __future__ import annotations

import os
from pathlib import Path

# bump when the on-disk cache format or relation generation changes
KERNEL_VERSION = "3"


class CapExceeded(RuntimeError):
    """A computation would exceed a configured resource cap."""


_overrides: dict = {}


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise CapExceeded(f"{name} must be an integer, got {raw!r}") from None


def max_degree() -> int:
    return _overrides.get("max_degree", _env_int("SYMJAC_MAX_DEGREE", 3))


def max_genus() -> int:
    return _overrides.get("max_genus", _env_int("SYMJAC_MAX_GENUS", 4))


def max_rows() -> int:
    return _overrides.get("max_rows", _env_int("SYMJAC_MAX_ROWS", 200_000))


def threads() -> int:
    return _overrides.get("threads", _env_int("SYMJAC_THREADS", 1))


def use_cache() -> bool:
    if "use_cache" in _overrides:
        return _overrides["use_cache"]
    return os.environ.get("SYMJAC_NO_CACHE", "") in ("", "0")


def cache_dir() -> Path:
    if "cache_dir" in _overrides:
        return Path(_overrides["cache_dir"])
    default = Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "symjac"
    return Path(os.environ.get("SYMJAC_CACHE_DIR", default))


def configure(**kw) -> None:
    """Override caps for this process (used by the CLI flags)."""
    for k, v in kw.items():
        if v is not None:
            _overrides[k] = v


def reset() -> None:
    _overrides.clear()


def check_caps(genus: int, degree: int) -> None:
    if genus < 0:
        raise CapExceeded("genus must be non-negative")
    if degree > max_degree():
        raise CapExceeded(f"degree {degree} exceeds cap {max_degree()}")
    if genus > max_genus():
        raise CapExceeded(f"genus {genus} exceeds cap {max_genus()}")
