"""Baseline optimizers behind a suggest/observe session protocol.

Built-in methods (uniform random search and a constriction-coefficient
particle swarm) and a line-delimited JSON adapter for driving an external
optimizer process all present the same interface: a session hands out one
in-domain point at a time and accepts the observed objective value before
the next suggestion.  The suggestion sequence of a built-in method is a
pure function of (spec, seed, observed values).
"""
from __future__ import annotations

import json
import math
import queue
import subprocess
import threading
from collections import deque
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .errors import (
    AdapterFailure,
    AdapterTimeout,
    BudgetExhausted,
    DomainViolation,
    OutOfOrderObservation,
)

KINDS = ("random_search", "pso", "external")

PSO_DEFAULTS: Mapping[str, float] = {
    "swarm_size": 20,
    "inertia": 0.729,
    "cognitive": 1.49445,
    "social": 1.49445,
}

DEFAULT_ADAPTER_TIMEOUT = 60.0
_MAX_DOMAIN_VIOLATIONS = 3

Box = tuple[tuple[float, float], ...]
Point = tuple[float, ...]
Objective = Callable[[Point], float]


@dataclass(frozen=True)
class OptimizerSpec:
    """A configured optimization method taking part in a campaign."""

    method_id: str
    kind: str
    params: Mapping[str, Any] = field(default_factory=dict)
    version_label: str = ""

    def __post_init__(self) -> None:
        if not self.method_id:
            raise ValueError("method_id must be nonempty")
        if self.kind not in KINDS:
            raise ValueError(f"unknown optimizer kind {self.kind!r}")
        if self.kind == "pso":
            merged = self.pso_params()
            if merged["swarm_size"] < 2:
                raise ValueError("pso swarm_size must be at least 2")
            for key in ("inertia", "cognitive", "social"):
                if merged[key] <= 0:
                    raise ValueError(f"pso {key} must be positive")
        if self.kind == "external":
            cmd = self.params.get("command")
            ok = (
                isinstance(cmd, (list, tuple))
                and len(cmd) > 0
                and all(isinstance(c, str) for c in cmd)
            )
            if not ok:
                raise ValueError("external spec needs params['command'] as an argv list")
        if not self.version_label:
            object.__setattr__(self, "version_label", self.method_id)

    def pso_params(self) -> dict[str, float]:
        merged = dict(PSO_DEFAULTS)
        for key in PSO_DEFAULTS:
            if key in self.params:
                merged[key] = self.params[key]
        merged["swarm_size"] = int(merged["swarm_size"])
        return merged


def _check_box(domain: Sequence[Sequence[float]]) -> Box:
    box = tuple((float(lo), float(hi)) for lo, hi in domain)
    if not box or any(lo >= hi for lo, hi in box):
        raise ValueError("domain must be a nonempty list of [lo, hi] with lo < hi")
    return box


def _inside(point: Sequence[float], box: Box) -> bool:
    return len(point) == len(box) and all(
        lo <= c <= hi for c, (lo, hi) in zip(point, box)
    )


class _RandomSearch:
    def __init__(self, box: Box, seed: int):
        self._lower = np.array([lo for lo, _ in box])
        self._upper = np.array([hi for _, hi in box])
        self._rng = np.random.default_rng(seed)

    def ask(self) -> Point:
        return tuple(self._rng.uniform(self._lower, self._upper).tolist())

    def tell(self, point: Point, value: float) -> None:
        pass

    def close(self) -> None:
        pass


class _ParticleSwarm:
    """Global-best PSO with clamped boundaries.

    Velocities start at zero; each generation advance draws fresh
    per-coordinate cognitive and social factors.  Coordinates clamped to
    the box get their velocity zeroed so particles do not grind against
    the boundary.
    """

    def __init__(self, box: Box, seed: int, params: Mapping[str, float]):
        self._lower = np.array([lo for lo, _ in box])
        self._upper = np.array([hi for _, hi in box])
        self._inertia = float(params["inertia"])
        self._cognitive = float(params["cognitive"])
        self._social = float(params["social"])
        self._rng = np.random.default_rng(seed)
        m, d = int(params["swarm_size"]), len(box)
        self._positions = self._rng.uniform(self._lower, self._upper, size=(m, d))
        self._velocities = np.zeros((m, d))
        self._pbest_pos = self._positions.copy()
        self._pbest_val = np.full(m, -np.inf)
        self._gbest_pos = self._positions[0].copy()
        self.gbest_value = -math.inf
        self._cursor = 0

    def ask(self) -> Point:
        return tuple(self._positions[self._cursor].tolist())

    def tell(self, point: Point, value: float) -> None:
        i = self._cursor
        if value > self._pbest_val[i]:
            self._pbest_val[i] = value
            self._pbest_pos[i] = self._positions[i]
        if value > self.gbest_value:
            self.gbest_value = value
            self._gbest_pos = self._positions[i].copy()
        self._cursor += 1
        if self._cursor == len(self._positions):
            self._advance_generation()

    def _advance_generation(self) -> None:
        m, d = self._positions.shape
        r1 = self._rng.uniform(size=(m, d))
        r2 = self._rng.uniform(size=(m, d))
        vel = (
            self._inertia * self._velocities
            + self._cognitive * r1 * (self._pbest_pos - self._positions)
            + self._social * r2 * (self._gbest_pos - self._positions)
        )
        moved = self._positions + vel
        clamped = np.clip(moved, self._lower, self._upper)
        vel[clamped != moved] = 0.0
        self._positions = clamped
        self._velocities = vel
        self._cursor = 0

    def close(self) -> None:
        pass


_EOF = object()


class _ExternalProcess:
    """Drives one adapter subprocess over the line-delimited JSON protocol."""

    def __init__(self, command: Sequence[str], box: Box, budget: int, seed: int, timeout: float):
        self._box = box
        self._timeout = timeout
        self._line_no = 0
        self._violations = 0
        self._stderr_tail: deque[str] = deque(maxlen=40)
        try:
            self._proc = subprocess.Popen(
                list(command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                stderr=subprocess.PIPE,
                text=True,
                bufsize=1,
            )
        except OSError as exc:
            raise AdapterFailure(f"could not start adapter {list(command)!r}: {exc}") from exc
        self._lines: queue.Queue = queue.Queue()
        threading.Thread(target=self._pump_stdout, daemon=True).start()
        threading.Thread(target=self._pump_stderr, daemon=True).start()
        self._send(
            {
                "type": "init",
                "dim": len(box),
                "domain": [[lo, hi] for lo, hi in box],
                "budget": budget,
                "seed": seed,
            }
        )

    def _pump_stdout(self) -> None:
        assert self._proc.stdout is not None
        for line in self._proc.stdout:
            self._lines.put(line)
        self._lines.put(_EOF)

    def _pump_stderr(self) -> None:
        assert self._proc.stderr is not None
        for line in self._proc.stderr:
            self._stderr_tail.append(line.rstrip("\n"))

    def _send(self, msg: dict) -> None:
        assert self._proc.stdin is not None
        try:
            self._proc.stdin.write(json.dumps(msg, separators=(",", ":")) + "\n")
            self._proc.stdin.flush()
        except (BrokenPipeError, OSError, ValueError):
            # child already gone; the next read reports the failure
            pass

    def _terminate(self) -> None:
        if self._proc.poll() is None:
            self._proc.kill()
            try:
                self._proc.wait(timeout=5)
            except subprocess.TimeoutExpired:  # pragma: no cover
                pass

    def _fail(self, reason: str) -> AdapterFailure:
        self._terminate()
        detail = f"{reason} (adapter exit code {self._proc.poll()})"
        if self._stderr_tail:
            detail += "\nadapter stderr tail:\n" + "\n".join(self._stderr_tail)
        return AdapterFailure(detail)

    def _malformed(self, line: str) -> AdapterFailure:
        return self._fail(f"malformed adapter message on line {self._line_no}: {line.strip()!r}")

    def ask(self) -> Point | None:
        while True:
            try:
                line = self._lines.get(timeout=self._timeout)
            except queue.Empty:
                self._terminate()
                raise AdapterTimeout(
                    f"adapter sent nothing within the {self._timeout}s suggestion deadline"
                ) from None
            if line is _EOF:
                raise self._fail("adapter exited before finishing the run")
            self._line_no += 1
            try:
                msg = json.loads(line)
            except json.JSONDecodeError:
                raise self._malformed(line) from None
            if not isinstance(msg, dict) or "type" not in msg:
                raise self._malformed(line)
            if msg["type"] == "done":
                return None
            if msg["type"] != "suggest":
                raise self._malformed(line)
            x = msg.get("x")
            if (
                not isinstance(x, list)
                or len(x) != len(self._box)
                or not all(
                    isinstance(c, (int, float)) and not isinstance(c, bool) and math.isfinite(c)
                    for c in x
                )
            ):
                raise self._malformed(line)
            if not _inside(x, self._box):
                self._violations += 1
                self._send(
                    {
                        "type": "error",
                        "reason": "out_of_domain",
                        "x": x,
                        "domain": [[lo, hi] for lo, hi in self._box],
                    }
                )
                if self._violations >= _MAX_DOMAIN_VIOLATIONS:
                    raise self._fail(
                        f"{self._violations} consecutive out-of-domain suggestions, last {x!r}"
                    )
                continue
            self._violations = 0
            return tuple(float(c) for c in x)

    def tell(self, point: Point, value: float) -> None:
        self._send({"type": "result", "value": value})

    def close(self) -> None:
        if self._proc.stdin is not None:
            try:
                self._proc.stdin.close()
            except OSError:  # pragma: no cover
                pass
        try:
            self._proc.wait(timeout=2)
        except subprocess.TimeoutExpired:
            self._terminate()


def _make_strategy(spec: OptimizerSpec, box: Box, budget: int, seed: int):
    if spec.kind == "random_search":
        return _RandomSearch(box, seed)
    if spec.kind == "pso":
        return _ParticleSwarm(box, seed, spec.pso_params())
    timeout = float(spec.params.get("timeout", DEFAULT_ADAPTER_TIMEOUT))
    return _ExternalProcess(spec.params["command"], box, budget, seed, timeout)


class SuggestObserveSession:
    """One optimization run: alternating suggest/observe against a fixed box.

    ``suggest`` returns the pending point unchanged until it is observed,
    raises BudgetExhausted once budget-many pairs are recorded, and returns
    None when an external adapter stops early.
    """

    def __init__(self, spec: OptimizerSpec, domain: Sequence[Sequence[float]], budget: int, seed: int):
        if budget < 1:
            raise ValueError("budget must be positive")
        self.spec = spec
        self.domain = _check_box(domain)
        self.budget = int(budget)
        self.rng_seed = int(seed)
        self.history: list[tuple[Point, float]] = []
        self._pending: Point | None = None
        self._finished = False
        self._strategy = _make_strategy(spec, self.domain, self.budget, self.rng_seed)

    @property
    def done(self) -> bool:
        return self._finished or len(self.history) >= self.budget

    def suggest(self) -> Point | None:
        if self._finished:
            return None
        if self._pending is not None:
            return self._pending
        if len(self.history) >= self.budget:
            raise BudgetExhausted(
                f"{self.spec.method_id}: all {self.budget} evaluations used"
            )
        point = self._strategy.ask()
        if point is None:
            self._finished = True
            return None
        if not _inside(point, self.domain):
            raise DomainViolation(
                f"{self.spec.method_id} produced out-of-box point {point!r}"
            )
        self._pending = point
        return point

    def observe(self, point: Sequence[float], value: float) -> None:
        if self._pending is None:
            raise OutOfOrderObservation("no suggestion is awaiting a result")
        if tuple(point) != self._pending:
            raise OutOfOrderObservation(
                f"observed {tuple(point)!r} but the pending suggestion is {self._pending!r}"
            )
        value = float(value)
        if not math.isfinite(value):
            raise ValueError(f"objective value must be finite, got {value!r}")
        self.history.append((self._pending, value))
        self._strategy.tell(self._pending, value)
        self._pending = None

    def close(self) -> None:
        self._strategy.close()

    def __enter__(self) -> "SuggestObserveSession":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def run_session(
    spec: OptimizerSpec,
    domain: Sequence[Sequence[float]],
    budget: int,
    seed: int,
    objective: Objective,
) -> list[tuple[Point, float]]:
    """Drive a full suggest/observe loop and return the evaluation history."""
    with SuggestObserveSession(spec, domain, budget, seed) as session:
        while not session.done:
            point = session.suggest()
            if point is None:
                break
            session.observe(point, objective(point))
        return list(session.history)


def run_external(
    spec: OptimizerSpec,
    domain: Sequence[Sequence[float]],
    budget: int,
    seed: int,
    objective: Objective,
) -> list[tuple[Point, float]]:
    """Run one external-adapter session to completion or early stop."""
    if spec.kind != "external":
        raise ValueError("run_external requires an external spec")
    return run_session(spec, domain, budget, seed, objective)
