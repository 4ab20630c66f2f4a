"""Ordered evaluation of sweep grids on a thread pool."""

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import TypeVar

logger = logging.getLogger(__name__)

P = TypeVar("P")
R = TypeVar("R")

ProgressCallback = Callable[[str, int, int], None]


def evaluate_grid(
    points: Sequence[P],
    fn: Callable[[P], R],
    max_workers: int | None = None,
    on_progress: ProgressCallback | None = None,
) -> list[R]:
    """Evaluate ``fn`` on every grid point, returning results in point order.

    Args:
        points: Grid points.
        fn: Pure function of one point.
        max_workers: Thread count; None or 1 evaluates sequentially.
        on_progress: Optional callback ``(label, completed, total)``.

    Returns:
        ``[fn(p) for p in points]``, whatever order the workers finish in.
    """
    total = len(points)
    if max_workers is None or max_workers <= 1:
        results: list[R] = []
        for idx, point in enumerate(points, 1):
            results.append(fn(point))
            if on_progress:
                on_progress(f"Evaluated: {point}", idx, total)
        return results

    by_index: dict[int, R] = {}
    completed = 0

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        futures = {executor.submit(fn, point): idx for idx, point in enumerate(points)}

        for future in as_completed(futures):
            idx = futures[future]
            try:
                by_index[idx] = future.result()
            except Exception as e:
                logger.error(f"Grid point {points[idx]} failed: {e}")
                raise
            completed += 1
            if on_progress:
                on_progress(f"Evaluated: {points[idx]}", completed, total)

    return [by_index[i] for i in range(total)]
