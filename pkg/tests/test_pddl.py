import pytest

from lnplan.model import (
    Atom,
    BinaryExpr,
    Constant,
    FunctionTerm,
    Literal,
    NumericConstraint,
    Object,
    Variable,
)
from lnplan.pddl import (
    ParseError,
    parse_domain,
    parse_problem,
    parse_task,
    write_domain,
    write_problem,
)

COUNTERS_DOMAIN = """
(define (domain counters)
  (:requirements :strips :typing :numeric-fluents)
  (:types counter)
  (:functions (value ?c - counter) (max_int))
  (:action increment
    :parameters (?c - counter)
    :precondition (<= (+ (value ?c) 1) (max_int))
    :effect (increase (value ?c) 1))
)
"""

COUNTERS_PROBLEM = """
(define (problem counters-1)
  (:domain counters)
  (:objects c1 c2 - counter)
  (:init (= (value c1) 0) (= (value c2) 1) (= (max_int) 2))
  (:goal (and (< (value c1) (value c2))))
)
"""


def test_counters_style_domain_ast():
    domain = parse_domain(COUNTERS_DOMAIN)
    assert domain.name == "counters"
    inc = domain.schemas[0]
    assert inc.name == "increment"
    assert [v.name for v in inc.params] == ["?c"]
    # typed parameter compiles into a unary type-predicate literal
    assert inc.pre_literals == (Literal(Atom(domain.predicates[0], (Variable("?c"),))),)
    assert domain.predicates[0].name == "counter"
    assert len(inc.pre_constraints) == 1
    con = inc.pre_constraints[0]
    value = next(f for f in domain.functions if f.name == "value")
    max_int = next(f for f in domain.functions if f.name == "max_int")
    assert con == NumericConstraint(
        BinaryExpr("+", FunctionTerm(value, (Variable("?c"),)), Constant(1.0)),
        "<=",
        FunctionTerm(max_int, ()),
    )
    assert inc.eff_numeric[0].op == "+="


def test_problem_init_and_goal():
    domain = parse_domain(COUNTERS_DOMAIN)
    task = parse_problem(COUNTERS_PROBLEM, domain)
    value = next(f for f in domain.functions if f.name == "value")
    assert task.init.fluents[FunctionTerm(value, (Object("c1"),))] == 0.0
    # typed objects got their type atoms
    counter = domain.predicates[0]
    assert Atom(counter, (Object("c1"),)) in task.init.atoms
    assert len(task.goal_constraints) == 1
    assert task.goal_constraints[0].cmp == "<"


def test_unsupported_requirement_rejected():
    text = "(define (domain d) (:requirements :durative-actions))"
    with pytest.raises(ParseError) as err:
        parse_domain(text, "d.pddl")
    assert "unsupported requirement" in str(err.value)
    assert "d.pddl:1:" in str(err.value)


def test_arity_mismatch_names_symbol():
    text = """
    (define (domain d)
      (:predicates (p ?x ?y))
      (:action a :parameters (?x) :precondition (p ?x) :effect (p ?x ?x)))
    """
    with pytest.raises(ParseError) as err:
        parse_domain(text)
    assert "p expects 2 arguments" in str(err.value)


def test_goal_with_variable_rejected():
    domain = parse_domain(COUNTERS_DOMAIN)
    bad = """
    (define (problem bad) (:domain counters)
      (:objects c1 - counter)
      (:init (= (value c1) 0) (= (max_int) 2))
      (:goal (< (value ?c) 1)))
    """
    with pytest.raises(ParseError) as err:
        parse_problem(bad, domain)
    assert "ground" in str(err.value)


def test_undeclared_object_rejected():
    domain = parse_domain(COUNTERS_DOMAIN)
    bad = """
    (define (problem bad) (:domain counters)
      (:objects c1 - counter)
      (:init (= (value c9) 0))
      (:goal (and)))
    """
    with pytest.raises(ParseError) as err:
        parse_problem(bad, domain)
    assert "unknown object" in str(err.value)


def test_unknown_predicate_and_function():
    with pytest.raises(ParseError):
        parse_domain("(define (domain d) (:action a :parameters (?x) :precondition (nope ?x) :effect ()))")
    with pytest.raises(ParseError):
        parse_domain("(define (domain d) (:action a :parameters (?x) :precondition (>= (f ?x) 1) :effect ()))")


def test_object_equality_vs_numeric_equality():
    text = """
    (define (domain d)
      (:requirements :strips :equality :numeric-fluents)
      (:functions (f ?x))
      (:action a
        :parameters (?x ?y)
        :precondition (and (not (= ?x ?y)) (= (f ?x) 1))
        :effect ()))
    """
    domain = parse_domain(text)
    schema = domain.schemas[0]
    assert len(schema.pre_literals) == 1
    assert schema.pre_literals[0].atom.predicate.name == "="
    assert not schema.pre_literals[0].positive
    assert len(schema.pre_constraints) == 1
    assert schema.pre_constraints[0].cmp == "="


def test_negative_and_decimal_constants():
    text = """
    (define (domain d)
      (:functions (f))
      (:action a :parameters () :precondition (>= (f) -2.5) :effect (increase (f) 0.5)))
    """
    domain = parse_domain(text)
    assert domain.schemas[0].pre_constraints[0].rhs == Constant(-2.5)
    assert domain.schemas[0].eff_numeric[0].expr == Constant(0.5)


def test_metric_parsed_and_kept():
    domain = parse_domain(COUNTERS_DOMAIN)
    text = """
    (define (problem m) (:domain counters)
      (:objects c1 - counter)
      (:init (= (value c1) 0) (= (max_int) 2))
      (:goal (and))
      (:metric minimize (value c1)))
    """
    task = parse_problem(text, domain)
    assert task.metric is not None
    assert task.metric[0] == "minimize"


def test_duplicate_fluent_init_rejected():
    domain = parse_domain(COUNTERS_DOMAIN)
    bad = """
    (define (problem b) (:domain counters)
      (:objects c1 - counter)
      (:init (= (value c1) 0) (= (value c1) 1))
      (:goal (and)))
    """
    with pytest.raises(ParseError) as err:
        parse_problem(bad, domain)
    assert "duplicate" in str(err.value)


def test_case_insensitive_identifiers():
    domain = parse_domain(COUNTERS_DOMAIN.replace("increment", "Increment").replace("(value", "(VALUE"))
    assert domain.schemas[0].name == "increment"
    assert any(f.name == "value" for f in domain.functions)


def test_roundtrip_counters(bundled_tasks):
    for name, task in bundled_tasks.items():
        domain_text = write_domain(task)
        problem_text = write_problem(task)
        again = parse_task(domain_text, problem_text)
        assert again == task, name


def test_roundtrip_random_tasks():
    import random

    from taskgen import random_task

    rng = random.Random(8080)
    for i in range(60):
        task = random_task(rng, exact=rng.random() < 0.5, task_id=i)
        again = parse_task(write_domain(task), write_problem(task))
        assert again == task, i


def test_unary_minus_and_nary_plus():
    text = """
    (define (domain d)
      (:functions (f))
      (:action a :parameters ()
        :precondition (>= (+ (f) 1 2) (- (f)))
        :effect ()))
    """
    con = parse_domain(text).schemas[0].pre_constraints[0]
    assert con.lhs == BinaryExpr("+", BinaryExpr("+", FunctionTerm(parse_domain(text).functions[0], ()), Constant(1.0)), Constant(2.0))
    assert con.rhs == BinaryExpr("-", Constant(0.0), FunctionTerm(parse_domain(text).functions[0], ()))


CONSTANTS_DOMAIN = """
(define (domain depot)
  (:requirements :strips :typing :numeric-fluents)
  (:types place)
  (:constants home - place)
  (:predicates (at ?p - place))
  (:functions (load))
  (:action return-home
    :parameters ()
    :precondition (>= (load) 1)
    :effect (and (at home) (decrease (load) 1)))
)
"""


def test_domain_constants_usable_in_schemas():
    domain = parse_domain(CONSTANTS_DOMAIN)
    assert [o.name for o in domain.constants] == ["home"]
    schema = domain.schemas[0]
    assert schema.eff_literals[0].atom.args == (Object("home"),)
    problem = """
    (define (problem p) (:domain depot)
      (:objects away - place)
      (:init (= (load) 2))
      (:goal (at home)))
    """
    task = parse_problem(problem, domain)
    assert [o.name for o in task.objects] == ["home", "away"]
    # typed constant received its type atom
    place = next(p for p in domain.predicates if p.name == "place")
    assert Atom(place, (Object("home"),)) in task.init.atoms


def test_roundtrip_with_constants():
    domain = parse_domain(CONSTANTS_DOMAIN)
    problem = """
    (define (problem p) (:domain depot)
      (:objects away - place)
      (:init (= (load) 2) (at away))
      (:goal (at home)))
    """
    task = parse_problem(problem, domain)
    again = parse_task(write_domain(task), write_problem(task))
    assert again == task


def test_type_may_share_name_with_declared_unary_predicate():
    text = """
    (define (domain d)
      (:requirements :strips :typing)
      (:types counter)
      (:predicates (counter ?c) (busy ?c - counter))
      (:action touch :parameters (?c - counter)
        :precondition (not (busy ?c)) :effect (busy ?c)))
    """
    domain = parse_domain(text)
    assert sum(1 for p in domain.predicates if p.name == "counter") == 1
    with pytest.raises(ParseError):
        parse_domain(text.replace("(counter ?c)", "(counter ?c ?d)"))


def test_error_reports_position():
    text = "(define (domain d)\n  (:predicates (p ?x))\n  (:action a :parameters (?x)\n    :precondition (q ?x) :effect ()))"
    with pytest.raises(ParseError) as err:
        parse_domain(text, "dom.pddl")
    assert str(err.value).startswith("dom.pddl:4:")
