from typing import Callable, Iterable, TypeVar

from pathos.multiprocessing import ProcessPool
from tqdm import tqdm

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    func: Callable[[T], R],
    items: Iterable[T],
    n_jobs: int = 1,
    verbose: bool = False,
    desc: str | None = None,
) -> list[R]:
    """`map` over independent work items, in order.

    With `n_jobs > 1` the items go to a pathos process pool (which pickles closures with dill); otherwise they run in-process. Results come back in input order either way.
    """
    items = list(items)
    if n_jobs is None or n_jobs <= 1 or len(items) <= 1:
        return [func(item) for item in tqdm(items, disable=not verbose, desc=desc)]

    pool = ProcessPool(nodes=n_jobs)
    try:
        results = pool.imap(func, items)
        return list(tqdm(results, total=len(items), disable=not verbose, desc=desc))
    finally:
        pool.close()
        pool.join()
        pool.clear()
