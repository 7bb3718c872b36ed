import logging
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def evaluate_grid(func: Callable[[T], R], points: Iterable[T], workers: int = 1) -> list[R]:
    """Apply func to every grid point; results always come back in grid order.

    With workers > 1 the points are spread over worker processes, so func and
    the points must be picklable (module-level functions, plain values).
    """
    points = list(points)
    if workers <= 1 or len(points) < 2:
        return [func(p) for p in points]
    logger.info("Evaluating %d grid points on %d workers", len(points), workers)
    with ProcessPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(func, points))
