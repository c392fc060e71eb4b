"""Seeded identity fuzzing: run registered checks and report deviations."""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .checks import REGISTRY, Dev, IdentitySpec
from .lattice import LatticeError
from .sampling import Resample, Stream
from .special import DomainError, PoleZeroError, TruncationError

MAX_ATTEMPTS = 10
MAX_FAILURES = 10
DEFAULT_SEED = 0

RESAMPLE_ERRORS = (Resample, PoleZeroError, DomainError, TruncationError, ZeroDivisionError,
                   OverflowError, LatticeError)


class UnknownCheck(KeyError):
    pass


class ConfigError(ValueError):
    pass


@dataclass
class CheckReport:
    identity: str
    description: str
    samples: int
    seed: int
    tol: float
    max_abs_dev: float
    max_rel_dev: float
    evaluated: int
    resamples: int
    failures: list = field(default_factory=list)
    status: str = "pass"
    wall_time_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = self.passed
        return d


def _deviation(item) -> tuple[float, float]:
    if isinstance(item, Dev):
        return float(item.abs), float(item.rel)
    lhs, rhs = item
    if isinstance(lhs, (int, Fraction)) and isinstance(rhs, (int, Fraction)):
        d = abs(Fraction(lhs) - Fraction(rhs))
        scale = max(abs(Fraction(lhs)), abs(Fraction(rhs)))
        return float(d), float(d / scale) if scale else 0.0
    lhs, rhs = complex(lhs), complex(rhs)
    if not (math.isfinite(abs(lhs)) and math.isfinite(abs(rhs))):
        raise Resample("non-finite value")
    d = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    return d, d / scale if scale else 0.0


def _spec(name: str) -> IdentitySpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise UnknownCheck(name) from None


def evaluate_sample(name: str, seed: int, k: int, samples: int):
    """Evaluate sample ``k``; returns ``(abs, rel, attempts_used)`` or ``None`` if every attempt resampled.

    Attempt ``j`` of sample ``k`` uses stream slot ``j * samples + k``, so the
    resampling sequence is a deterministic continuation of the seed.
    """
    spec = _spec(name)
    for attempt in range(MAX_ATTEMPTS):
        st = Stream(name, seed, attempt * samples + k)
        try:
            items = spec.evaluate(st)
            devs = [_deviation(it) for it in items]
        except RESAMPLE_ERRORS:
            continue
        a = max((d[0] for d in devs), default=0.0)
        r = max((d[1] for d in devs), default=0.0)
        if math.isnan(a) or math.isnan(r):
            a = r = math.inf
        return a, r, attempt
    return None


def _evaluate_block(args):
    name, seed, ks, samples = args
    return [(k, evaluate_sample(name, seed, k, samples)) for k in ks]


def _aggregate(spec: IdentitySpec, samples: int, seed: int, tol: float, results) -> CheckReport:
    max_abs = max_rel = 0.0
    resamples = 0
    evaluated = 0
    failures = []
    inconclusive = 0
    for k, res in sorted(results, key=lambda t: t[0]):
        if res is None:
            inconclusive += 1
            resamples += MAX_ATTEMPTS
            continue
        a, r, att = res
        evaluated += 1
        resamples += att
        max_abs = max(max_abs, a)
        max_rel = max(max_rel, r)
        if not r < tol and len(failures) < MAX_FAILURES:
            failures.append({"sample": k, "attempt": att, "abs_dev": a, "rel_dev": r})
    if failures:
        status = "fail"
    elif inconclusive or evaluated == 0:
        status = "inconclusive"
    else:
        status = "pass"
    return CheckReport(spec.name, spec.description, samples, seed, tol, max_abs, max_rel,
                       evaluated, resamples, failures, status)


def run_check(name: str, samples: int | None = None, seed: int = DEFAULT_SEED,
              tol: float | None = None, jobs: int = 1) -> CheckReport:
    """Run one registered identity; ``pass`` iff every sample's relative deviation is below ``tol``."""
    spec = _spec(name)
    samples = spec.samples if samples is None else int(samples)
    tol = spec.tol if tol is None else float(tol)
    if samples < 1:
        raise ValueError("samples must be positive")
    t0 = time.perf_counter()
    if jobs > 1 and samples > 1:
        blocks = [(name, seed, list(range(j, samples, jobs)), samples) for j in range(jobs)]
        with ProcessPoolExecutor(jobs) as ex:
            results = [r for part in ex.map(_evaluate_block, blocks) for r in part]
    else:
        results = _evaluate_block((name, seed, range(samples), samples))
    rep = _aggregate(spec, samples, seed, tol, results)
    rep.wall_time_ms = (time.perf_counter() - t0) * 1e3
    return rep


def _run_one(args) -> CheckReport:
    name, samples, seed, tol = args
    return run_check(name, samples, seed, tol)


def load_config(path: str | None) -> dict:
    """Per-identity overrides ``{name: {"samples": n, "tol": t}}``."""
    if path is None:
        return {}
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    if not isinstance(cfg, dict):
        raise ConfigError("config must be a JSON object")
    for k, v in cfg.items():
        if k not in REGISTRY:
            raise ConfigError(f"unknown identity {k!r} in config")
        if not isinstance(v, dict) or set(v) - {"samples", "tol"}:
            raise ConfigError(f"entry {k!r} must be an object with keys samples/tol")
    return cfg


def run_all(config: dict | None = None, seed: int = DEFAULT_SEED, samples: int | None = None,
            only: list[str] | None = None, jobs: int = 1) -> list[CheckReport]:
    config = config or {}
    names = list(REGISTRY) if not only else only
    for n in names:
        _spec(n)
    tasks = []
    for n in names:
        over = config.get(n, {})
        tasks.append((n, over.get("samples", samples), seed, over.get("tol")))
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            return list(ex.map(_run_one, tasks))
    return [_run_one(t) for t in tasks]


def default_jobs() -> int:
    return int(os.environ.get("GAMMAGERBE_JOBS", "1"))
