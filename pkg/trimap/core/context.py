from __future__ import annotations

from typing import Callable
from collections.abc import Collection

from attrs import converters, define, field
from attrs.validators import in_
from joblib import Parallel, delayed

from trimap.core import typing as types


@define
class RunContext:
    """Class defining run context properties and related operations.

    :param num_workers: Number of workers to use for parallel jobs.
    :param backend: joblib backend used when more than one worker is requested.
    """

    num_workers: int | None = field(default=None, converter=converters.optional(int), kw_only=True)
    backend: str = field(
        default="threading", validator=in_(("threading", "loky", "multiprocessing")), kw_only=True
    )

    def get_num_workers(self) -> int:
        """Get number of workers to be used for parallel computing, one when not set."""
        return 1 if self.num_workers is None else max(self.num_workers, 1)

    def map(
        self, fun: Callable[[types.InputType], types.OutputType], container: Collection[types.InputType]
    ) -> tuple[types.OutputType, ...]:
        """Apply funciton on all elements of an iterable.

        Uses joblib.Parallel if more than one worker is requested. Results keep the order
        of `container` regardless of the backend.

        :param fun: Function to be applied.
        :param container: Iterable.
        :returns: Tuple of results.
        """
        num_workers = self.get_num_workers()
        if num_workers > 1 and len(container) > 1:
            # parallel processing
            results = Parallel(n_jobs=num_workers, backend=self.backend)(
                delayed(fun)(item) for item in container
            )
        else:
            # serial processing
            results = [fun(item) for item in container]

        return tuple(results)
