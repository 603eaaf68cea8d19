import os
from concurrent.futures import ThreadPoolExecutor


def max_workers() -> int:
    """Worker cap from ``XKRAW_THREADS`` (default: CPU count)."""
    env = os.environ.get("XKRAW_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return os.cpu_count() or 1


def ordered_map(fn, items):
    """``list(map(fn, items))``, spread over threads when allowed.

    Results come back in input order regardless of scheduling.
    """
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
