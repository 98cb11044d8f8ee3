"""Order-preserving parallel map over a thread pool."""
from concurrent.futures import ThreadPoolExecutor
import logging

logger = logging.getLogger(__name__)


def parallel_map(function, items, threads=1):
    """Apply function to every item, in parallel when threads > 1.

    Args:
        function:  Pure function of one argument
        items:  Iterable of arguments
        threads:  Number of worker threads; 1 or less maps serially

    Returns:
        List of results in the order of items
    """
    items = list(items)
    if threads is None or threads <= 1 or len(items) <= 1:
        return [function(item) for item in items]
    logger.debug('mapping %d items over %d threads', len(items), threads)
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(function, items))
