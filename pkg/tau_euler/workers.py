"""Chunked executor fan-out with an order-preserving merge."""

import asyncio
import logging
from concurrent.futures import Executor, ProcessPoolExecutor, ThreadPoolExecutor
from typing import Callable, List, Optional, Sequence, TypeVar

from .config import WorkersConfig

LOGGER = logging.getLogger(__name__)

Item = TypeVar("Item")
Result = TypeVar("Result")


def _chunks(items: Sequence[Item], size: int) -> List[Sequence[Item]]:
    return [items[start : start + size] for start in range(0, len(items), size)]


def _executor(config: WorkersConfig) -> Executor:
    if config.executor == "process":
        return ProcessPoolExecutor(max_workers=config.count)
    return ThreadPoolExecutor(max_workers=config.count)


async def gather_chunks(
    func: Callable[[Sequence[Item]], List[Result]],
    items: Sequence[Item],
    config: Optional[WorkersConfig] = None,
) -> List[Result]:
    """Run func over chunks of items in an executor; results keep item order."""
    config = config or WorkersConfig.default()
    chunks = _chunks(items, max(1, config.chunk_size))
    loop = asyncio.get_running_loop()
    LOGGER.debug(
        "Dispatching %d chunks to %d %s workers",
        len(chunks),
        config.count,
        config.executor,
    )
    with _executor(config) as pool:
        parts = await asyncio.gather(
            *(loop.run_in_executor(pool, func, chunk) for chunk in chunks)
        )
    return [result for part in parts for result in part]


def map_chunks(
    func: Callable[[Sequence[Item]], List[Result]],
    items: Sequence[Item],
    config: Optional[WorkersConfig] = None,
) -> List[Result]:
    """Blocking form of gather_chunks; runs in-process for a single worker."""
    config = config or WorkersConfig.default()
    if config.count <= 1:
        return list(func(items))
    return asyncio.run(gather_chunks(func, items, config))
