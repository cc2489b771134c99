# File: WorkerPool.py
# Path: FermiCorr/Core/WorkerPool.py
# Standard: AIDEV-PascalCase-1.2
# Created: 2025-03-18
# Last Modified: 2025-04-06
# Description: Ordered process-pool map shared by scans and optimizer restarts

import concurrent.futures
import logging
import os
from typing import Callable, Iterable, List, Optional, TypeVar

from Core.Errors import ValidationError

Logger = logging.getLogger('FermiCorr.WorkerPool')

Item = TypeVar('Item')
Result = TypeVar('Result')

JobsEnvironmentVariable = 'FERMICORR_JOBS'


def ResolveJobs(Jobs: Optional[int] = None) -> int:
    """
    Worker count from an explicit value, then FERMICORR_JOBS, then available parallelism.

    Args:
        Jobs: Requested worker count; None or 0 means automatic

    Returns:
        int: Positive worker count
    """
    if Jobs:
        if int(Jobs) < 1:
            raise ValidationError(f"Jobs must be positive, got {Jobs}")
        return int(Jobs)

    FromEnvironment = os.environ.get(JobsEnvironmentVariable)
    if FromEnvironment:
        try:
            Value = int(FromEnvironment)
        except ValueError:
            raise ValidationError(f"{JobsEnvironmentVariable} must be an integer, got {FromEnvironment!r}")
        if Value < 1:
            raise ValidationError(f"{JobsEnvironmentVariable} must be positive, got {Value}")
        return Value

    if hasattr(os, 'sched_getaffinity'):
        return max(1, len(os.sched_getaffinity(0)))
    return max(1, os.cpu_count() or 1)


def ParallelMap(Function: Callable[[Item], Result], Items: Iterable[Item], Jobs: int = 1) -> List[Result]:
    """
    Map Function over Items, returning results in input order.

    With Jobs > 1 the work fans out over a ProcessPoolExecutor; Function and Items must be
    picklable. Completion order never affects the output order.

    Args:
        Function: Module-level callable
        Items: Inputs
        Jobs: Worker count

    Returns:
        List of results in the order of Items
    """
    Items = list(Items)
    if Jobs <= 1 or len(Items) <= 1:
        return [Function(Value) for Value in Items]

    Workers = min(Jobs, len(Items))
    Logger.debug(f"Dispatching {len(Items)} tasks to {Workers} workers")
    with concurrent.futures.ProcessPoolExecutor(max_workers=Workers) as Executor:
        Futures = [Executor.submit(Function, Value) for Value in Items]
        return [Future.result() for Future in Futures]
