"""Run deeply recursive work on a thread with a large stack.

Terms produced by long reductions can nest thousands of levels deep, far
beyond the interpreter's default recursion limit.
"""

from __future__ import annotations

import functools
import sys
import threading

STACK_BYTES = 512 * 1024 * 1024
RECURSION_LIMIT = 1_000_000

_local = threading.local()


def deep(fn):
    """Decorator: call fn on a big-stack thread unless already on one."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        if getattr(_local, "active", False):
            return fn(*args, **kwargs)
        outcome: dict = {}

        def target():
            _local.active = True
            try:
                outcome["value"] = fn(*args, **kwargs)
            except BaseException as exc:  # re-raised on the calling thread
                outcome["error"] = exc

        if sys.getrecursionlimit() < RECURSION_LIMIT:
            sys.setrecursionlimit(RECURSION_LIMIT)
        previous = threading.stack_size(STACK_BYTES)
        try:
            worker = threading.Thread(target=target, name=f"deep-{fn.__name__}")
            worker.start()
        finally:
            threading.stack_size(previous)
        worker.join()
        if "error" in outcome:
            raise outcome["error"]
        return outcome["value"]

    return wrapper
