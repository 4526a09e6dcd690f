import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, List, Sequence


class ThreadManager:
    """Utility for running independent grid chunks on worker threads.

    Results always come back in submission order, so reductions over them
    do not depend on the worker count.
    """

    _instance = None

    @classmethod
    def instance(cls):
        """Singleton pattern to ensure only one thread manager exists."""
        if cls._instance is None:
            cls._instance = ThreadManager()
        return cls._instance

    def __init__(self, workers: int = 1):
        """Initialize the thread manager."""
        self.logger = logging.getLogger(__name__)
        self.workers = max(1, int(workers))
        self.active_tasks = 0

    def set_workers(self, workers: int):
        self.workers = max(1, int(workers))
        self.logger.debug(f"Thread manager uses {self.workers} worker(s)")

    def map(self, task: Callable[[Any], Any], chunks: Sequence[Any]) -> List[Any]:
        """Apply `task` to every chunk and return the results in order.

        Args:
            task: Callable run once per chunk
            chunks: Independent work items

        Returns:
            One result per chunk, in the order of `chunks`
        """
        chunks = list(chunks)
        if self.workers == 1 or len(chunks) < 2:
            return [task(chunk) for chunk in chunks]

        self.active_tasks += len(chunks)
        self.logger.debug(f"Dispatching {len(chunks)} chunks to {self.workers} workers")
        try:
            with ThreadPoolExecutor(max_workers=self.workers, thread_name_prefix="grid") as pool:
                return list(pool.map(task, chunks))
        finally:
            self.active_tasks -= len(chunks)
            self.logger.debug(f"Chunks finished. Active tasks: {self.active_tasks}")
