import os
from concurrent.futures import ThreadPoolExecutor


def worker_count():
    """Worker cap from ``SUPERZENO_THREADS`` (0 or unset means one per CPU)."""
    try:
        n = int(os.environ.get("SUPERZENO_THREADS", "0"))
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def parallel_map(fn, items):
    """Ordered map; results do not depend on the worker count."""
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))
