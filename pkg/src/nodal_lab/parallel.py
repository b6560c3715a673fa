"""Ordered thread-pool map; ``NODAL_LAB_THREADS`` caps the worker count."""

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "NODAL_LAB_THREADS"


def thread_count():
    value = os.environ.get(ENV_VAR)
    if value:
        return max(1, int(value))
    return max(1, min(8, os.cpu_count() or 1))


def ordered_map(fn, items):
    """``list(map(fn, items))``, possibly threaded; output order is input order."""
    items = list(items)
    workers = min(thread_count(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
