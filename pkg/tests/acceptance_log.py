"""Collects one pass/fail line per acceptance criterion for the terminal summary."""

import functools
import time

LINES = []


def criterion(name: str, budget: float):
    """Time the wrapped test, record PASS/FAIL, and fail it if over ``budget`` seconds."""

    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            start = time.perf_counter()
            try:
                detail = fn(*args, **kwargs)
            except BaseException as exc:
                elapsed = time.perf_counter() - start
                _emit("FAIL", name, elapsed, budget, f"{type(exc).__name__}: {exc}".splitlines()[0][:160])
                raise
            elapsed = time.perf_counter() - start
            ok = elapsed < budget
            _emit("PASS" if ok else "FAIL", name, elapsed, budget, detail or "")
            assert ok, f"{name} took {elapsed:.2f}s, budget {budget}s"

        return run

    return wrap


def _emit(status, name, elapsed, budget, detail):
    line = f"{status} {name} ({elapsed:.2f}s / {budget:g}s)" + (f" {detail}" if detail else "")
    LINES.append(line)
    print(line)
