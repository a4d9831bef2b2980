"""Optional thread fan-out for embarrassingly parallel scan loops.

The worker count is read from the ZDL_THREADS environment variable and
defaults to 1.  Results are returned in input order, so enabling threads
never changes any output, only wall-clock time.
"""

import os
from concurrent.futures import ThreadPoolExecutor


def thread_count() -> int:
    raw = os.environ.get("ZDL_THREADS", "")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def ordered_map(fn, items):
    """Map fn over items, preserving order; threaded when ZDL_THREADS > 1."""
    items = list(items)
    n = thread_count()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as pool:
        return list(pool.map(fn, items))
