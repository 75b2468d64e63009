"""Numeric planning task representation and exact ground semantics.

States pair a set of ground atoms with a partial map from ground function
terms to finite reals. Evaluation is exact on floats; a missing fluent or a
zero divisor yields the undefined marker (None), and anything undefined makes
the enclosing literal or constraint count as not holding rather than raising.

The predicate name "=" is reserved for built-in object equality: it has the
implicit extension {(o, o)} in every state and never appears in effect sets.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Union

EQUALITY_NAME = "="

ASSIGN = ":="
INCREASE = "+="
DECREASE = "-="
SCALE_UP = "*="
SCALE_DOWN = "/="
EFFECT_OPS = (ASSIGN, INCREASE, DECREASE, SCALE_UP, SCALE_DOWN)
ADDITIVE_OPS = frozenset((INCREASE, DECREASE))
MULTIPLICATIVE_OPS = frozenset((SCALE_UP, SCALE_DOWN))


class Variable:
    """A schema variable; the name keeps its '?' prefix for printing."""

    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("?var", name))

    def __eq__(self, other):
        return type(other) is Variable and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


class Object:
    """A constant from the task's object universe."""

    __slots__ = ("name", "_hash")

    def __init__(self, name: str):
        self.name = name
        self._hash = hash(("obj", name))

    def __eq__(self, other):
        return type(other) is Object and other.name == self.name

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.name


Term = Union[Variable, Object]


@dataclass(frozen=True)
class PredicateSymbol:
    name: str
    arity: int


@dataclass(frozen=True)
class FunctionSymbol:
    name: str
    arity: int


EQUALITY = PredicateSymbol(EQUALITY_NAME, 2)


class Atom:
    __slots__ = ("predicate", "args", "_hash")

    def __init__(self, predicate: PredicateSymbol, args: Iterable[Term]):
        args = tuple(args)
        if len(args) != predicate.arity:
            raise ValueError(
                f"atom {predicate.name} expects {predicate.arity} arguments, got {len(args)}"
            )
        self.predicate = predicate
        self.args = args
        self._hash = hash((predicate.name, args))

    def __eq__(self, other):
        return (
            type(other) is Atom
            and other._hash == self._hash
            and other.predicate == self.predicate
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = " ".join([self.predicate.name] + [a.name for a in self.args])
        return f"({inner})"


class FunctionTerm:
    __slots__ = ("function", "args", "_hash")

    def __init__(self, function: FunctionSymbol, args: Iterable[Term]):
        args = tuple(args)
        if len(args) != function.arity:
            raise ValueError(
                f"function {function.name} expects {function.arity} arguments, got {len(args)}"
            )
        self.function = function
        self.args = args
        self._hash = hash((function.name, args, "fterm"))

    def __eq__(self, other):
        return (
            type(other) is FunctionTerm
            and other._hash == self._hash
            and other.function == self.function
            and other.args == self.args
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = " ".join([self.function.name] + [a.name for a in self.args])
        return f"({inner})"


@dataclass(frozen=True)
class Constant:
    value: float

    def __repr__(self):
        return format_number(self.value)


@dataclass(frozen=True)
class BinaryExpr:
    op: str  # one of + - * /
    left: "Expr"
    right: "Expr"

    def __repr__(self):
        return f"({self.op} {self.left!r} {self.right!r})"


Expr = Union[Constant, FunctionTerm, BinaryExpr]


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __repr__(self):
        return repr(self.atom) if self.positive else f"(not {self.atom!r})"


@dataclass(frozen=True)
class NumericConstraint:
    lhs: Expr
    cmp: str  # one of = < > <= >=
    rhs: Expr

    def __repr__(self):
        return f"({self.cmp} {self.lhs!r} {self.rhs!r})"


@dataclass(frozen=True)
class NumericEffect:
    target: FunctionTerm
    op: str  # one of := += -= *= /=
    expr: Expr

    def __repr__(self):
        return f"({self.op} {self.target!r} {self.expr!r})"


def format_number(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


# --- free variables and substitution ---


def free_variables(element) -> frozenset[Variable]:
    out: set[Variable] = set()
    _collect_vars(element, out)
    return frozenset(out)


def _collect_vars(element, out: set) -> None:
    if isinstance(element, Variable):
        out.add(element)
    elif isinstance(element, Object) or isinstance(element, Constant):
        pass
    elif isinstance(element, (Atom, FunctionTerm)):
        for a in element.args:
            if type(a) is Variable:
                out.add(a)
    elif isinstance(element, Literal):
        _collect_vars(element.atom, out)
    elif isinstance(element, BinaryExpr):
        _collect_vars(element.left, out)
        _collect_vars(element.right, out)
    elif isinstance(element, NumericConstraint):
        _collect_vars(element.lhs, out)
        _collect_vars(element.rhs, out)
    elif isinstance(element, NumericEffect):
        _collect_vars(element.target, out)
        _collect_vars(element.expr, out)
    else:
        raise TypeError(f"cannot collect variables from {type(element).__name__}")


def substitute(element, sub: Mapping[Variable, Object]):
    """Replace every mapped variable; unmapped variables stay free."""
    if isinstance(element, Variable):
        return sub.get(element, element)
    if isinstance(element, (Object, Constant)):
        return element
    if isinstance(element, Atom):
        return Atom(element.predicate, tuple(sub.get(a, a) for a in element.args))
    if isinstance(element, FunctionTerm):
        return FunctionTerm(element.function, tuple(sub.get(a, a) for a in element.args))
    if isinstance(element, Literal):
        return Literal(substitute(element.atom, sub), element.positive)
    if isinstance(element, BinaryExpr):
        return BinaryExpr(element.op, substitute(element.left, sub), substitute(element.right, sub))
    if isinstance(element, NumericConstraint):
        return NumericConstraint(substitute(element.lhs, sub), element.cmp, substitute(element.rhs, sub))
    if isinstance(element, NumericEffect):
        return NumericEffect(substitute(element.target, sub), element.op, substitute(element.expr, sub))
    raise TypeError(f"cannot substitute into {type(element).__name__}")


# --- schemas, states, tasks ---


def _dedupe(items: tuple) -> tuple:
    seen = set()
    out = []
    for item in items:
        if item not in seen:
            seen.add(item)
            out.append(item)
    return tuple(out)


@dataclass(frozen=True)
class ActionSchema:
    name: str
    params: tuple[Variable, ...]
    pre_literals: tuple[Literal, ...] = ()
    pre_constraints: tuple[NumericConstraint, ...] = ()
    eff_literals: tuple[Literal, ...] = ()
    eff_numeric: tuple[NumericEffect, ...] = ()
    # optional per-parameter type names; generation hint only, not identity
    param_types: tuple[Optional[str], ...] = field(default=(), compare=False)

    def __post_init__(self):
        # preconditions and effects are sets in the semantics: a repeated
        # syntactic element is one element, not a doubled update
        for name in ("pre_literals", "pre_constraints", "eff_literals", "eff_numeric"):
            object.__setattr__(self, name, _dedupe(getattr(self, name)))
        if len(set(self.params)) != len(self.params):
            raise ValueError(f"action {self.name}: duplicate parameters")
        if self.param_types and len(self.param_types) != len(self.params):
            raise ValueError(f"action {self.name}: param_types length mismatch")
        scope = set(self.params)
        for group in (self.pre_literals, self.pre_constraints, self.eff_literals, self.eff_numeric):
            for element in group:
                loose = free_variables(element) - scope
                if loose:
                    names = ", ".join(sorted(v.name for v in loose))
                    raise ValueError(f"action {self.name}: free variables not in parameters: {names}")

    @property
    def arity(self) -> int:
        return len(self.params)


class State:
    """Immutable state: true ground atoms plus defined ground fluent values."""

    __slots__ = ("atoms", "fluents", "_key", "_hash")

    def __init__(self, atoms: Iterable[Atom], fluents: Mapping[FunctionTerm, float]):
        self.atoms = frozenset(atoms)
        self.fluents = {t: 0.0 if v == 0 else float(v) for t, v in fluents.items()}
        self._key = None
        self._hash = None

    def key(self):
        """Canonical value identity, usable as a closed-list key."""
        if self._key is None:
            atom_key = tuple(sorted(
                (a.predicate.name,) + tuple(t.name for t in a.args) for a in self.atoms
            ))
            fluent_key = tuple(sorted(
                ((f.function.name,) + tuple(t.name for t in f.args), v)
                for f, v in self.fluents.items()
            ))
            self._key = (atom_key, fluent_key)
        return self._key

    def __eq__(self, other):
        return (
            type(other) is State
            and other.atoms == self.atoms
            and other.fluents == self.fluents
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return f"State({len(self.atoms)} atoms, {len(self.fluents)} fluents)"


@dataclass
class Task:
    domain_name: str
    problem_name: str
    predicates: tuple[PredicateSymbol, ...]
    functions: tuple[FunctionSymbol, ...]
    schemas: tuple[ActionSchema, ...]
    objects: tuple[Object, ...]
    init: State
    goal_literals: tuple[Literal, ...] = ()
    goal_constraints: tuple[NumericConstraint, ...] = ()
    metric: Optional[tuple[str, Expr]] = None  # parsed but ignored by blind search

    def predicate(self, name: str) -> PredicateSymbol:
        if name == EQUALITY_NAME:
            return EQUALITY
        return self._pred_index[name]

    def function(self, name: str) -> FunctionSymbol:
        return self._fn_index[name]

    def schema(self, name: str) -> ActionSchema:
        return self._schema_index[name]

    def __post_init__(self):
        self._pred_index = {p.name: p for p in self.predicates}
        self._fn_index = {f.name: f for f in self.functions}
        self._schema_index = {a.name: a for a in self.schemas}
        for label, group, index in (
            ("predicate", self.predicates, self._pred_index),
            ("function", self.functions, self._fn_index),
            ("action", self.schemas, self._schema_index),
        ):
            if len(index) != len(group):
                raise ValueError(f"duplicate {label} names in task")

    def __eq__(self, other):
        if type(other) is not Task:
            return NotImplemented
        return (
            self.domain_name == other.domain_name
            and self.problem_name == other.problem_name
            and self.predicates == other.predicates
            and self.functions == other.functions
            and self.schemas == other.schemas
            and self.objects == other.objects
            and self.init == other.init
            and self.goal_literals == other.goal_literals
            and self.goal_constraints == other.goal_constraints
            and self.metric == other.metric
        )


class GroundAction:
    """A schema plus a total binding of its parameters, in parameter order."""

    __slots__ = ("schema", "binding", "_map", "_hash")

    def __init__(self, schema: ActionSchema, binding: Iterable[Object]):
        binding = tuple(binding)
        if len(binding) != len(schema.params):
            raise ValueError(f"action {schema.name}: binding arity mismatch")
        self.schema = schema
        self.binding = binding
        self._map = None
        self._hash = hash((schema.name, binding))

    def binding_map(self) -> dict[Variable, Object]:
        if self._map is None:
            self._map = dict(zip(self.schema.params, self.binding))
        return self._map

    def pddl(self) -> str:
        return "(" + " ".join([self.schema.name] + [o.name for o in self.binding]) + ")"

    def __eq__(self, other):
        return (
            type(other) is GroundAction
            and other._hash == self._hash
            and other.schema.name == self.schema.name
            and other.binding == self.binding
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return self.pddl()


# --- evaluation ---

_EMPTY_BINDING: Mapping[Variable, Object] = {}
_CMP = {
    "=": lambda a, b: a == b,
    "<": lambda a, b: a < b,
    ">": lambda a, b: a > b,
    "<=": lambda a, b: a <= b,
    ">=": lambda a, b: a >= b,
}


def _bind(term: Term, binding: Mapping[Variable, Object]) -> Object:
    if type(term) is Object:
        return term
    obj = binding.get(term)
    if obj is None:
        raise ValueError(f"unbound variable {term.name} in ground evaluation")
    return obj


def ground_atom(atom: Atom, binding: Mapping[Variable, Object]) -> Atom:
    return Atom(atom.predicate, tuple(_bind(t, binding) for t in atom.args))


def ground_function_term(term: FunctionTerm, binding: Mapping[Variable, Object]) -> FunctionTerm:
    return FunctionTerm(term.function, tuple(_bind(t, binding) for t in term.args))


def literal_holds(state: State, literal: Literal, binding: Mapping[Variable, Object] = _EMPTY_BINDING) -> bool:
    atom = literal.atom
    if atom.predicate.name == EQUALITY_NAME:
        result = _bind(atom.args[0], binding) == _bind(atom.args[1], binding)
    else:
        result = ground_atom(atom, binding) in state.atoms
    return result if literal.positive else not result


def holds_literal(state: State, literal: Literal) -> bool:
    """Ground entry point; see literal_holds for evaluation under a binding."""
    return literal_holds(state, literal)


def expr_value(state: State, expr: Expr, binding: Mapping[Variable, Object] = _EMPTY_BINDING) -> Optional[float]:
    """Value of the expression, or None when undefined."""
    if isinstance(expr, Constant):
        return expr.value
    if isinstance(expr, FunctionTerm):
        return state.fluents.get(ground_function_term(expr, binding))
    left = expr_value(state, expr.left, binding)
    if left is None:
        return None
    right = expr_value(state, expr.right, binding)
    if right is None:
        return None
    op = expr.op
    if op == "+":
        return left + right
    if op == "-":
        return left - right
    if op == "*":
        return left * right
    if op == "/":
        if right == 0.0:
            return None
        return left / right
    raise ValueError(f"unknown arithmetic operator {op!r}")


def eval_expr(state: State, expr: Expr) -> Optional[float]:
    return expr_value(state, expr)


def constraint_holds(state: State, constraint: NumericConstraint, binding: Mapping[Variable, Object] = _EMPTY_BINDING) -> bool:
    left = expr_value(state, constraint.lhs, binding)
    if left is None:
        return False
    right = expr_value(state, constraint.rhs, binding)
    if right is None:
        return False
    return _CMP[constraint.cmp](left, right)


def holds_constraint(state: State, constraint: NumericConstraint) -> bool:
    return constraint_holds(state, constraint)


# --- applicability and successors ---


def is_applicable(state: State, action: GroundAction) -> bool:
    """Fast applicability test; see applicability_failure for diagnostics.

    Checks precondition literals and constraints, effect expression
    definedness (including the target for updating operators and a nonzero
    divisor for /=), and per-target effect compatibility.
    """
    schema = action.schema
    binding = action.binding_map()
    for lit in schema.pre_literals:
        if not literal_holds(state, lit, binding):
            return False
    for con in schema.pre_constraints:
        if not constraint_holds(state, con, binding):
            return False
    per_target: dict[FunctionTerm, list[str]] = {}
    for eff in schema.eff_numeric:
        value = expr_value(state, eff.expr, binding)
        if value is None:
            return False
        target = ground_function_term(eff.target, binding)
        if eff.op != ASSIGN and target not in state.fluents:
            return False
        if eff.op == SCALE_DOWN and value == 0.0:
            return False
        per_target.setdefault(target, []).append(eff.op)
    for ops in per_target.values():
        if len(ops) > 1:
            group = set(ops)
            if not (group <= ADDITIVE_OPS or group <= MULTIPLICATIVE_OPS):
                return False
    return True


def effect_condition_failure(state: State, action: GroundAction) -> Optional[str]:
    """The effect-side applicability conditions alone: definedness of every
    effect expression (and target, for updating operators), a nonzero divisor
    for /=, and per-target operator compatibility."""
    schema = action.schema
    binding = action.binding_map()
    per_target: dict[FunctionTerm, list[str]] = {}
    for eff in schema.eff_numeric:
        value = expr_value(state, eff.expr, binding)
        if value is None:
            return f"effect expression undefined: {substitute(eff, binding)!r}"
        target = ground_function_term(eff.target, binding)
        if eff.op != ASSIGN and target not in state.fluents:
            return f"effect target undefined: {target!r}"
        if eff.op == SCALE_DOWN and value == 0.0:
            return f"effect divides by zero: {substitute(eff, binding)!r}"
        per_target.setdefault(target, []).append(eff.op)
    for target, ops in per_target.items():
        if len(ops) > 1:
            group = set(ops)
            if not (group <= ADDITIVE_OPS or group <= MULTIPLICATIVE_OPS):
                return f"conflicting effects on {target!r}"
    return None


def applicability_failure(state: State, action: GroundAction) -> Optional[str]:
    """None when the action is applicable, else a reason string."""
    schema = action.schema
    binding = action.binding_map()
    for lit in schema.pre_literals:
        if not literal_holds(state, lit, binding):
            return f"precondition literal does not hold: {substitute(lit, binding)!r}"
    for con in schema.pre_constraints:
        if not constraint_holds(state, con, binding):
            return f"precondition constraint does not hold: {substitute(con, binding)!r}"
    return effect_condition_failure(state, action)


def apply(state: State, action: GroundAction) -> State:
    """Successor state; caller must ensure applicability (debug-checked)."""
    assert is_applicable(state, action), "apply on inapplicable action"
    return apply_effects(state, action)


def apply_effects(state: State, action: GroundAction) -> State:
    """Raw successor computation; requires the effect conditions to hold.

    All effect expressions are evaluated in the original state. Atoms are
    updated as (atoms - deletes) + adds; additive and multiplicative effect
    groups fold into a single update per target.
    """
    schema = action.schema
    binding = action.binding_map()

    adds = set()
    dels = set()
    for lit in schema.eff_literals:
        (adds if lit.positive else dels).add(ground_atom(lit.atom, binding))
    atoms = state.atoms.difference(dels).union(adds)

    fluents = dict(state.fluents)
    grouped: dict[FunctionTerm, list[tuple[str, float]]] = {}
    for eff in schema.eff_numeric:
        value = expr_value(state, eff.expr, binding)
        target = ground_function_term(eff.target, binding)
        grouped.setdefault(target, []).append((eff.op, value))
    for target, updates in grouped.items():
        ops = {op for op, _ in updates}
        if ops == {ASSIGN}:
            fluents[target] = updates[0][1]
        elif ops <= ADDITIVE_OPS:
            total = state.fluents[target]
            for op, value in updates:
                total = total + value if op == INCREASE else total - value
            fluents[target] = total
        else:
            total = state.fluents[target]
            for op, value in updates:
                total = total * value if op == SCALE_UP else total / value
            fluents[target] = total
    return State(atoms, fluents)


def goal_satisfied(state: State, task: Task) -> bool:
    return all(literal_holds(state, lit) for lit in task.goal_literals) and all(
        constraint_holds(state, con) for con in task.goal_constraints
    )


def all_bindings(schema: ActionSchema, objects: Iterable[Object]) -> Iterator[GroundAction]:
    """Every total binding of the schema over the given objects."""
    objects = tuple(objects)
    for combo in itertools.product(objects, repeat=len(schema.params)):
        yield GroundAction(schema, combo)
