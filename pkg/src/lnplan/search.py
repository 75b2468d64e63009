"""Blind forward search (uniform-cost A*) with duplicate detection.

Unit action costs, goal test at expansion, FIFO tie-breaking among equal
g-values, and exact state identity for the closed list. Resource limits are
enforced in-process: a wall-clock deadline, an expansion cap, and a stored-
state cap standing in for a memory bound.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Optional

from .model import (
    GroundAction,
    NumericConstraint,
    State,
    Task,
    applicability_failure,
    apply,
    apply_effects,
    effect_condition_failure,
    expr_value,
    goal_satisfied,
    literal_holds,
    substitute,
)
from .successors import GeneratorConfig, GroundLimitError, SuccessorGenerator

SOLVED = "solved"
UNSOLVABLE = "unsolvable"
LIMIT = "limit"

# rough per-state bookkeeping cost used to turn a memory bound into a state cap
_STATE_BYTES_ESTIMATE = 2048


@dataclass(frozen=True)
class Limits:
    time_s: Optional[float] = None
    nodes: Optional[int] = None
    states: Optional[int] = None
    memory_mb: Optional[float] = None

    def state_cap(self) -> Optional[int]:
        caps = []
        if self.states is not None:
            caps.append(self.states)
        if self.memory_mb is not None:
            caps.append(max(1, int(self.memory_mb * 1024 * 1024 / _STATE_BYTES_ESTIMATE)))
        return min(caps) if caps else None


@dataclass
class SolveStats:
    expansions: int = 0
    generated: int = 0
    candidates: int = 0
    applicable: int = 0
    wall_time_s: float = 0.0
    per_expansion: list[tuple[int, int]] = field(default_factory=list)
    g_trace: list[int] = field(default_factory=list)  # g-value per expansion


@dataclass
class SolveResult:
    status: str  # solved | unsolvable | limit
    plan: Optional[list[GroundAction]] = None
    limit_hit: Optional[str] = None
    stats: SolveStats = field(default_factory=SolveStats)

    @property
    def cost(self) -> Optional[int]:
        return len(self.plan) if self.plan is not None else None


class _Node:
    __slots__ = ("state", "parent", "action", "g")

    def __init__(self, state, parent, action, g):
        self.state = state
        self.parent = parent
        self.action = action
        self.g = g


def solve(task: Task, config: GeneratorConfig = GeneratorConfig(),
          limits: Limits = Limits()) -> SolveResult:
    """Minimum-length plan, or proof of unsolvability, within the limits."""
    stats = SolveStats()
    start = time.perf_counter()

    def finish(status, plan=None, limit_hit=None):
        stats.wall_time_s = time.perf_counter() - start
        return SolveResult(status, plan, limit_hit, stats)

    try:
        generator = SuccessorGenerator(task, config)
    except GroundLimitError as exc:
        return finish(LIMIT, limit_hit=f"ground-store-cap: {exc}")

    root = _Node(task.init, None, None, 0)
    heap: list[tuple[int, int, _Node]] = [(0, 0, root)]
    tie = 1
    best_g = {task.init.key(): 0}
    closed: set = set()
    state_cap = limits.state_cap()

    while heap:
        g, _, node = heapq.heappop(heap)
        key = node.state.key()
        if key in closed:
            continue
        if goal_satisfied(node.state, task):
            return finish(SOLVED, plan=_extract_plan(node))
        if limits.time_s is not None and time.perf_counter() - start > limits.time_s:
            return finish(LIMIT, limit_hit="time")
        if limits.nodes is not None and stats.expansions >= limits.nodes:
            return finish(LIMIT, limit_hit="nodes")
        closed.add(key)
        stats.expansions += 1
        stats.g_trace.append(g)

        actions, report = generator.applicable(node.state)
        stats.candidates += report.candidates
        stats.applicable += report.applicable
        stats.per_expansion.append((report.candidates, report.applicable))
        for action in actions:
            successor = apply(node.state, action)
            skey = successor.key()
            child_g = g + 1
            known = best_g.get(skey)
            if known is not None and known <= child_g:
                continue
            best_g[skey] = child_g
            stats.generated += 1
            heapq.heappush(heap, (child_g, tie, _Node(successor, node, action, child_g)))
            tie += 1
        if state_cap is not None and len(best_g) > state_cap:
            return finish(LIMIT, limit_hit="memory" if limits.memory_mb else "states")
    return finish(UNSOLVABLE)


def _extract_plan(node: _Node) -> list[GroundAction]:
    plan = []
    while node.parent is not None:
        plan.append(node.action)
        node = node.parent
    plan.reverse()
    return plan


@dataclass
class ValidationResult:
    valid: bool
    cost: Optional[int] = None
    failed_index: Optional[int] = None
    reason: Optional[str] = None


def _constraint_holds_with_slack(state: State, constraint: NumericConstraint,
                                 binding, tolerance: float) -> bool:
    left = expr_value(state, constraint.lhs, binding)
    if left is None:
        return False
    right = expr_value(state, constraint.rhs, binding)
    if right is None:
        return False
    cmp = constraint.cmp
    if cmp == "=":
        return abs(left - right) <= tolerance
    if cmp == "<":
        return left < right + tolerance
    if cmp == "<=":
        return left <= right + tolerance
    if cmp == ">":
        return left > right - tolerance
    return left >= right - tolerance


def _step_failure(state: State, action: GroundAction, tolerance: float):
    if tolerance == 0.0:
        return applicability_failure(state, action)
    # the slack applies to comparison outcomes only; definedness, literal
    # truth, and the effect conditions stay exact
    binding = action.binding_map()
    for lit in action.schema.pre_literals:
        if not literal_holds(state, lit, binding):
            return f"precondition literal does not hold: {substitute(lit, binding)!r}"
    for con in action.schema.pre_constraints:
        if not _constraint_holds_with_slack(state, con, binding, tolerance):
            return f"precondition constraint does not hold: {substitute(con, binding)!r}"
    return effect_condition_failure(state, action)


def validate(task: Task, plan: list[GroundAction], tolerance: float = 0.0) -> ValidationResult:
    """Replay the plan from the initial state and check the goal.

    The tolerance loosens numeric comparisons during this replay only; state
    evolution and the core semantics remain exact. The default is exact.
    """
    if tolerance < 0:
        raise ValueError("tolerance must be non-negative")
    state = task.init
    for index, action in enumerate(plan):
        failure = _step_failure(state, action, tolerance)
        if failure is not None:
            return ValidationResult(False, failed_index=index,
                                    reason=f"step {index} {action.pddl()}: {failure}")
        state = apply_effects(state, action)
    goal_ok = all(literal_holds(state, lit) for lit in task.goal_literals) and all(
        _constraint_holds_with_slack(state, con, {}, tolerance)
        for con in task.goal_constraints
    )
    if not goal_ok:
        return ValidationResult(False, failed_index=len(plan), reason="goal not satisfied")
    return ValidationResult(True, cost=len(plan))


def format_plan(plan: list[GroundAction]) -> str:
    lines = [action.pddl() for action in plan]
    lines.append(f"; cost = {len(plan)} (unit cost)")
    return "\n".join(lines) + "\n"
