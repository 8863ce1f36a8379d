"""Ground-set size guard for enumeration paths.

The cap keeps accidental Catalan blow-ups from hanging a session; it can be
raised through the BIFREE_CAP environment variable (read at call time).
"""

import os

from .errors import CapExceeded

DEFAULT_CAP = 14


def ground_cap() -> int:
    raw = os.environ.get("BIFREE_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        value = int(raw)
    except ValueError:
        raise CapExceeded(f"BIFREE_CAP is not an integer: {raw!r}")
    return value


def check_cap(size: int, what: str) -> None:
    cap = ground_cap()
    if size > cap:
        raise CapExceeded(
            f"{what} needs ground size {size} > cap {cap} "
            f"(raise BIFREE_CAP to allow)")
