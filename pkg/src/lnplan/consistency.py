"""Substitution consistency graph for an action schema in a state.

Vertices are variable/object pairs, one partition per schema parameter.
A pair of vertices from distinct partitions is connected unless some
precondition element refutes it: a positive atom that matches no state atom
under the pair's binding, a negative atom that becomes a state atom, or a
numeric constraint that the interval relaxation proves unsatisfiable under
every extension of the pair. Elements with a single free variable prune
vertices instead (the unary specialization of the same rules), and elements
with no free variables short-circuit the whole graph.

The numeric rules can be switched off to obtain the purely propositional
graph; the final applicability filter downstream restores exactness in
either case.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .assignments import AssignmentCache
from .intervals import Interval, arith, compare, point
from .model import (
    Atom,
    ActionSchema,
    Constant,
    EQUALITY_NAME,
    Expr,
    FunctionTerm,
    Literal,
    NumericConstraint,
    Object,
    State,
    Task,
    Variable,
    free_variables,
    ground_atom,
    literal_holds,
)

VAR_CONFLICT = "variable-conflict"
POSITIVE_MISS = "positive-miss"
NEGATIVE_HIT = "negative-hit"
NUMERIC_UNSAT = "numeric-unsat"


def matches(pattern: Atom, ground: Atom) -> bool:
    """Positionwise compatibility: a variable on either side, or equal objects."""
    if pattern.predicate.name != ground.predicate.name:
        return False
    if len(pattern.args) != len(ground.args):
        return False
    for a, b in zip(pattern.args, ground.args):
        if type(a) is Object and type(b) is Object and a != b:
            return False
    return True


class _Bucket:
    __slots__ = ("full", "by_pos", "count")

    def __init__(self):
        self.full = 0
        self.by_pos: dict[tuple[int, Object], int] = {}
        self.count = 0


class AtomIndex:
    """Per-predicate (position, object) -> atom-id bitsets for match queries."""

    def __init__(self, state: State):
        buckets: dict[str, _Bucket] = {}
        for atom in state.atoms:
            bucket = buckets.get(atom.predicate.name)
            if bucket is None:
                bucket = buckets[atom.predicate.name] = _Bucket()
            bit = 1 << bucket.count
            bucket.count += 1
            bucket.full |= bit
            for i, obj in enumerate(atom.args):
                key = (i, obj)
                bucket.by_pos[key] = bucket.by_pos.get(key, 0) | bit
        self._buckets = buckets

    def match_exists(self, atom: Atom, binding: Mapping[Variable, Object]) -> bool:
        """Is there a state atom the partially bound atom matches?

        Built-in equality matches whenever both sides can be made equal:
        always, unless both are bound to distinct objects.
        """
        if atom.predicate.name == EQUALITY_NAME:
            left = atom.args[0] if type(atom.args[0]) is Object else binding.get(atom.args[0])
            right = atom.args[1] if type(atom.args[1]) is Object else binding.get(atom.args[1])
            if left is not None and right is not None:
                return left == right
            return True
        bucket = self._buckets.get(atom.predicate.name)
        if bucket is None:
            return False
        mask = bucket.full
        for i, arg in enumerate(atom.args):
            obj = arg if type(arg) is Object else binding.get(arg)
            if obj is None:
                continue
            mask &= bucket.by_pos.get((i, obj), 0)
            if not mask:
                return False
        return True


class StateContext:
    """Shared per-state structures: match index, range tables, type extents."""

    def __init__(self, task: Task, state: State, degree: int = 2):
        self.task = task
        self.state = state
        self.objects = task.objects
        self.index = AtomIndex(state)
        self.ranges = AssignmentCache(state, degree)
        self._typed: dict[str, tuple[Object, ...]] = {}

    def typed_objects(self, type_name: Optional[str]) -> tuple[Object, ...]:
        if type_name is None:
            return self.objects
        cached = self._typed.get(type_name)
        if cached is None:
            pred = self.task.predicate(type_name)
            cached = tuple(
                o for o in self.objects if Atom(pred, (o,)) in self.state.atoms
            )
            self._typed[type_name] = cached
        return cached


def relaxed_eval(expr: Expr, binding: Mapping[Variable, Object], ranges: AssignmentCache) -> Interval:
    """Interval overapproximation of the expression's values over all
    total extensions of the binding.

    Leaves read the range table with every argument position fixed by the
    binding or by a constant; repeated variables fix all their positions.
    Should the fixed positions ever exceed the table degree, the lowest ones
    are kept, which only widens the result and stays sound.
    """
    if isinstance(expr, Constant):
        return point(expr.value)
    if isinstance(expr, FunctionTerm):
        positions: dict[int, Object] = {}
        for i, arg in enumerate(expr.args):
            obj = arg if type(arg) is Object else binding.get(arg)
            if obj is not None:
                positions[i] = obj
        if len(positions) > ranges.degree:
            keep = sorted(positions)[: ranges.degree]
            positions = {i: positions[i] for i in keep}
        return ranges.get(expr.function).lookup(positions)
    left = relaxed_eval(expr.left, binding, ranges)
    right = relaxed_eval(expr.right, binding, ranges)
    return arith(left, expr.op, right)


def relaxed_unsat(constraint: NumericConstraint, binding: Mapping[Variable, Object],
                  ranges: AssignmentCache) -> bool:
    """True only if no extension of the binding can satisfy the constraint.

    Underapproximates unsatisfiability: a satisfiable constraint is never
    flagged, because the relaxed sides contain every reachable value and the
    comparison is existential.
    """
    left = relaxed_eval(constraint.lhs, binding, ranges)
    right = relaxed_eval(constraint.rhs, binding, ranges)
    return not compare(left, constraint.cmp, right)


@dataclass
class ConsistencyGraph:
    schema: ActionSchema
    objects: tuple[Object, ...]
    alive: list[int]  # per-partition bitset over object indexes
    adjacency: list[int]  # vertex id -> neighbor bitset; id = partition * n + object
    empty: bool = False
    notes: list[str] = field(default_factory=list)
    exclusions: Optional[list[tuple]] = None

    @property
    def k(self) -> int:
        return len(self.schema.params)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    def vertex_id(self, partition: int, obj_index: int) -> int:
        return partition * self.n_objects + obj_index

    def iter_alive(self, partition: int) -> Iterator[int]:
        mask = self.alive[partition]
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def has_edge(self, v: int, w: int) -> bool:
        return bool(self.adjacency[v] >> w & 1)

    def edge_count(self) -> int:
        return sum(bits.bit_count() for bits in self.adjacency) // 2

    def dump(self) -> str:
        params = self.schema.params
        lines = [
            f"graph {self.schema.name} k={self.k} objects={self.n_objects}"
            + (" EMPTY" if self.empty else "")
        ]
        for note in self.notes:
            lines.append(f"# {note}")
        for p in range(self.k):
            for oi in self.iter_alive(p):
                lines.append(f"v {params[p].name} {self.objects[oi].name}")
        for p1 in range(self.k):
            for oi in self.iter_alive(p1):
                v = self.vertex_id(p1, oi)
                for p2 in range(p1 + 1, self.k):
                    for oj in self.iter_alive(p2):
                        if self.has_edge(v, self.vertex_id(p2, oj)):
                            lines.append(
                                f"e {params[p1].name} {self.objects[oi].name}"
                                f" {params[p2].name} {self.objects[oj].name}"
                            )
        if self.exclusions is not None:
            for record in self.exclusions:
                if record[0] == "vertex":
                    _, p, oi, reason = record
                    lines.append(f"xv {params[p].name} {self.objects[oi].name} {reason}")
                else:
                    _, p1, oi, p2, oj, reason = record
                    lines.append(
                        f"xe {params[p1].name} {self.objects[oi].name}"
                        f" {params[p2].name} {self.objects[oj].name} {reason}"
                    )
        lines.append(f"# same-variable pairs excluded structurally ({VAR_CONFLICT})")
        return "\n".join(lines)


def _negative_violated(atom: Atom, binding: Mapping[Variable, Object], state: State) -> bool:
    # the fully ground negative atom contradicts the state
    if atom.predicate.name == EQUALITY_NAME:
        left = atom.args[0] if type(atom.args[0]) is Object else binding[atom.args[0]]
        right = atom.args[1] if type(atom.args[1]) is Object else binding[atom.args[1]]
        return left == right
    return ground_atom(atom, binding) in state.atoms


def build_graph(schema: ActionSchema, ctx: StateContext, *, numeric: bool = True,
                record: bool = False) -> ConsistencyGraph:
    """Construct the consistency graph; `numeric` toggles the constraint rules."""
    k = len(schema.params)
    if k < 1:
        raise ValueError("consistency graphs require at least one parameter")
    objects = ctx.objects
    n = len(objects)
    graph = ConsistencyGraph(
        schema=schema,
        objects=objects,
        alive=[0] * k,
        adjacency=[0] * (k * n),
        exclusions=[] if record else None,
    )

    pos_atoms = [(lit.atom, free_variables(lit.atom)) for lit in schema.pre_literals if lit.positive]
    neg_atoms = [(lit.atom, free_variables(lit.atom)) for lit in schema.pre_literals if not lit.positive]
    constraints = [(c, free_variables(c)) for c in schema.pre_constraints] if numeric else []

    # elements with no free variables decide the whole graph
    for atom, vars_ in pos_atoms:
        if not vars_ and not literal_holds(ctx.state, Literal(atom, True)):
            graph.empty = True
            graph.notes.append(f"{POSITIVE_MISS}: {atom!r}")
            return graph
    for atom, vars_ in neg_atoms:
        if not vars_ and not literal_holds(ctx.state, Literal(atom, False)):
            graph.empty = True
            graph.notes.append(f"{NEGATIVE_HIT}: {atom!r}")
            return graph
    # a positive atom that matches nothing even unbound removes every edge
    for atom, vars_ in pos_atoms:
        if vars_ and not ctx.index.match_exists(atom, {}):
            graph.empty = True
            graph.notes.append(f"{POSITIVE_MISS}: {atom!r}")
            return graph
    for con, _vars in constraints:
        if relaxed_unsat(con, {}, ctx.ranges):
            graph.empty = True
            graph.notes.append(f"{NUMERIC_UNSAT}: {con!r}")
            return graph

    # vertex pruning: single-variable elements specialize the edge rules
    unary_pos: dict[Variable, list[Atom]] = {}
    unary_neg: dict[Variable, list[Atom]] = {}
    unary_con: dict[Variable, list[NumericConstraint]] = {}
    for atom, vars_ in pos_atoms:
        if len(vars_) == 1:
            unary_pos.setdefault(next(iter(vars_)), []).append(atom)
    for atom, vars_ in neg_atoms:
        if len(vars_) == 1:
            unary_neg.setdefault(next(iter(vars_)), []).append(atom)
    for con, vars_ in constraints:
        if len(vars_) == 1:
            unary_con.setdefault(next(iter(vars_)), []).append(con)

    for p, var in enumerate(schema.params):
        mask = 0
        for oi, obj in enumerate(objects):
            binding = {var: obj}
            reason = None
            for atom in unary_pos.get(var, ()):
                if not ctx.index.match_exists(atom, binding):
                    reason = POSITIVE_MISS
                    break
            if reason is None:
                for atom in unary_neg.get(var, ()):
                    if _negative_violated(atom, binding, ctx.state):
                        reason = NEGATIVE_HIT
                        break
            if reason is None:
                for con in unary_con.get(var, ()):
                    if relaxed_unsat(con, binding, ctx.ranges):
                        reason = NUMERIC_UNSAT
                        break
            if reason is None:
                mask |= 1 << oi
            elif graph.exclusions is not None:
                graph.exclusions.append(("vertex", p, oi, reason))
        graph.alive[p] = mask
        if mask == 0:
            graph.empty = True
    if graph.empty or k == 1:
        return graph

    # edge construction over distinct partitions
    memo: dict[tuple, bool] = {}
    params = schema.params
    for p1 in range(k):
        x1 = params[p1]
        for p2 in range(p1 + 1, k):
            x2 = params[p2]
            pair = frozenset((x1, x2))
            edge_pos = [
                (idx, atom, _relevant(vars_, params))
                for idx, (atom, vars_) in enumerate(pos_atoms)
                if vars_ & pair and not (len(vars_) == 1 and vars_ <= pair)
            ]
            edge_neg = [
                (idx, atom)
                for idx, (atom, vars_) in enumerate(neg_atoms)
                if len(vars_) == 2 and vars_ <= pair
            ]
            edge_con = [
                (idx, con, _relevant(vars_, params))
                for idx, (con, vars_) in enumerate(constraints)
                if vars_ & pair and not (len(vars_) == 1 and vars_ <= pair)
            ]
            if not (edge_pos or edge_neg or edge_con):
                # nothing refutes these pairs: connect all alive combinations
                for oi in graph.iter_alive(p1):
                    v = graph.vertex_id(p1, oi)
                    for oj in graph.iter_alive(p2):
                        w = graph.vertex_id(p2, oj)
                        graph.adjacency[v] |= 1 << w
                        graph.adjacency[w] |= 1 << v
                continue
            for oi in graph.iter_alive(p1):
                o1 = objects[oi]
                v = graph.vertex_id(p1, oi)
                for oj in graph.iter_alive(p2):
                    o2 = objects[oj]
                    binding = {x1: o1, x2: o2}
                    reason = None
                    for idx, atom, relevant in edge_pos:
                        key = ("p", idx) + tuple(binding.get(rv) for rv in relevant)
                        hit = memo.get(key)
                        if hit is None:
                            hit = ctx.index.match_exists(atom, binding)
                            memo[key] = hit
                        if not hit:
                            reason = POSITIVE_MISS
                            break
                    if reason is None:
                        for idx, atom in edge_neg:
                            if _negative_violated(atom, binding, ctx.state):
                                reason = NEGATIVE_HIT
                                break
                    if reason is None:
                        for idx, con, relevant in edge_con:
                            key = ("c", idx) + tuple(binding.get(rv) for rv in relevant)
                            hit = memo.get(key)
                            if hit is None:
                                hit = relaxed_unsat(con, binding, ctx.ranges)
                                memo[key] = hit
                            if hit:
                                reason = NUMERIC_UNSAT
                                break
                    if reason is None:
                        w = graph.vertex_id(p2, oj)
                        graph.adjacency[v] |= 1 << w
                        graph.adjacency[w] |= 1 << v
                    elif graph.exclusions is not None:
                        graph.exclusions.append(("pair", p1, oi, p2, oj, reason))
    return graph


def _relevant(vars_: frozenset, params: tuple) -> tuple:
    # deterministic ordering of an element's variables, by parameter position
    return tuple(v for v in params if v in vars_)
