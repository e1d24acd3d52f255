from concurrent.futures import ThreadPoolExecutor


def chunk_bounds(total, threads, min_chunk=1):
    """Split ``range(total)`` into contiguous ``(start, stop)`` pieces."""
    threads = max(1, int(threads or 1))
    pieces = max(1, min(threads, total // max(min_chunk, 1)))
    step, extra = divmod(total, pieces)
    bounds, start = [], 0
    for k in range(pieces):
        stop = start + step + (1 if k < extra else 0)
        if stop > start:
            bounds.append((start, stop))
        start = stop
    return bounds


def map_chunks(fn, total, threads=1, min_chunk=1):
    """Apply ``fn(start, stop)`` over chunks and return results in order.

    Work is split by index range only, so the concatenated output does not
    depend on the number of threads.
    """
    bounds = chunk_bounds(total, threads, min_chunk)
    if len(bounds) <= 1:
        return [fn(a, b) for a, b in bounds]
    with ThreadPoolExecutor(max_workers=len(bounds)) as pool:
        return list(pool.map(lambda ab: fn(*ab), bounds))
