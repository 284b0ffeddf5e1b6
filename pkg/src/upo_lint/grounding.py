"""
Grounding of aboutness targets.

This module provides:
- ground(): decompose an ICE's target until every leaf class and property
  relatum is actual, with cycle detection and a hard node cap
- structurally_empty(): a sound, incomplete unsatisfiability check
- satisfies(): closed-world instance checking over asserted facts
- realize(): record that an individual conforms to a blueprint
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, Optional

from .aboutness import IceKind, classify_ice
from .errors import MultipleAboutness, NoAboutness, NotConformant, WrongKind
from .logging import get_logger
from .ontology import (
    AboutnessAssertion,
    And,
    ClassExpression,
    ConstraintForm,
    Named,
    Not,
    Ontology,
    Only,
    Or,
    Relation,
    RepresentsFact,
    Some,
    Value,
    expression_size,
    instantiation_closure,
    iter_names,
)
from .parser import render_expression


# =============================================================================
# Report Types
# =============================================================================

class GroundingStatus(str, Enum):
    ACTUAL = "Actual"
    DEFINED = "Defined"
    UNGROUNDED = "Ungrounded"
    CYCLIC = "Cyclic"
    EMPTY = "Empty"


class OverallStatus(str, Enum):
    GROUNDED = "Grounded"
    UNGROUNDED = "Ungrounded"
    CYCLIC = "Cyclic"


class SubjectKind(str, Enum):
    CLASS = "class"
    PROPERTY = "property"
    ICE = "ice"
    INDIVIDUAL = "individual"
    EXPRESSION = "expression"


@dataclass(frozen=True)
class GroundingNode:
    """
    One step of the decomposition.

    Actual, Ungrounded and Cyclic nodes are leaves; Defined and Empty nodes
    have at least one child. A named subject met again after its expansion
    is a `repeated` leaf carrying the status of that first expansion.
    """

    subject: str
    kind: SubjectKind
    status: GroundingStatus
    children: tuple[GroundingNode, ...] = ()
    note: str = ""
    repeated: bool = False

    def walk(self) -> Iterator[GroundingNode]:
        """Pre-order traversal; every node of the tree is yielded once."""
        yield self
        for child in self.children:
            yield from child.walk()


@dataclass(frozen=True)
class GroundingReport:
    ice: str
    root: GroundingNode
    overall: OverallStatus
    necessarily_empty: bool
    max_depth: int
    node_count: int


class GroundingCapExceeded(RuntimeError):
    """The decomposition produced more nodes than the termination bound allows."""


# =============================================================================
# Aboutness Lookup
# =============================================================================

def sole_aboutness(ontology: Ontology, ice: str) -> AboutnessAssertion:
    """
    The single aboutness assertion of an ICE.

    Raises:
        UnknownName: If `ice` is not declared
        NoAboutness: If it has none
        MultipleAboutness: If it has more than one
    """
    ontology.require("ice", ice)
    assertions = ontology.aboutness(ice)
    if not assertions:
        raise NoAboutness(ice)
    if len(assertions) > 1:
        raise MultipleAboutness(ice, len(assertions))
    return assertions[0]


def node_cap(ontology: Ontology, target: ClassExpression) -> int:
    """Upper bound on the nodes one report may contain."""
    definitions = sum(expression_size(e) for c in ontology.classes for e in ontology.equivalents(c))
    for prop in ontology.properties:
        definition = ontology.definition(prop)
        if definition is not None:
            definitions += expression_size(definition.domain) + expression_size(definition.range)
    for name in ontology.ices:
        definitions += sum(expression_size(a.target) for a in ontology.aboutness(name))
    signature = len(ontology.classes) + len(ontology.properties) + len(ontology.ices) + 1
    return signature * (expression_size(target) + definitions)


# =============================================================================
# Grounding
# =============================================================================

_OPERATOR_LABELS = {And: "and", Or: "or", Not: "not"}


class _Grounder:
    """Depth-first decomposition with an in-progress set and a memo of finished subjects."""

    def __init__(self, ontology: Ontology, ice: str, cap: int) -> None:
        self.ontology = ontology
        self.ice = ice
        self.cap = cap
        self.count = 0
        self.in_progress: set[tuple[SubjectKind, str]] = set()
        self.memo: dict[tuple[SubjectKind, str], GroundingNode] = {}

    def make(self, subject: str, kind: SubjectKind, status: GroundingStatus,
             children: tuple[GroundingNode, ...] = (), note: str = "") -> GroundingNode:
        self.count += 1
        if self.count > self.cap:
            get_logger().grounding_cap_exceeded(self.ice, self.count, self.cap)
            raise GroundingCapExceeded(
                f"grounding of '{self.ice}' exceeded {self.cap} nodes"
            )
        return GroundingNode(subject, kind, status, children, note)

    def named(self, kind: SubjectKind, name: str,
              expand: Callable[[], GroundingNode]) -> GroundingNode:
        key = (kind, name)
        if key in self.memo:
            first = self.memo[key]
            return GroundingNode(first.subject, kind, first.status,
                                 note="expanded above", repeated=True)
        if key in self.in_progress:
            return self.make(name, kind, GroundingStatus.CYCLIC, note="revisited while expanding")
        self.in_progress.add(key)
        try:
            node = expand()
        finally:
            self.in_progress.discard(key)
        self.memo[key] = node
        return node

    # -------------------------------------------------------------------------
    # Named subjects
    # -------------------------------------------------------------------------

    def ice_node(self, name: str) -> GroundingNode:
        def expand() -> GroundingNode:
            assertion = sole_aboutness(self.ontology, name)
            child = self.expression(assertion.target)
            return self.make(name, SubjectKind.ICE, GroundingStatus.DEFINED, (child,),
                             note=f"{assertion.relation.value} {assertion.constraint_form.value}")
        return self.named(SubjectKind.ICE, name, expand)

    def class_node(self, name: str) -> GroundingNode:
        def expand() -> GroundingNode:
            if instantiation_closure(self.ontology, name):
                return self.make(name, SubjectKind.CLASS, GroundingStatus.ACTUAL)
            definitions = self.ontology.equivalents(name)
            if not definitions:
                return self.make(name, SubjectKind.CLASS, GroundingStatus.UNGROUNDED,
                                 note="no instances and no definition")
            children = tuple(self.expression(e) for e in definitions)
            return self.make(name, SubjectKind.CLASS, GroundingStatus.DEFINED, children)
        return self.named(SubjectKind.CLASS, name, expand)

    def property_node(self, name: str) -> GroundingNode:
        def expand() -> GroundingNode:
            definition = self.ontology.definition(name)
            if definition is not None:
                children = (self.expression(definition.domain), self.expression(definition.range))
                return self.make(name, SubjectKind.PROPERTY, GroundingStatus.DEFINED, children,
                                 note="explicated by its definition")
            domains, ranges = relata(self.ontology, name)
            if domains or ranges:
                children = tuple(self.class_node(c) for c in (*domains, *ranges))
                unactual = sorted({c.subject for c in children
                                   if c.status is not GroundingStatus.ACTUAL})
                note = ""
                if unactual:
                    note = "relata without instances: " + ", ".join(unactual)
                return self.make(name, SubjectKind.PROPERTY, GroundingStatus.DEFINED, children,
                                 note=note)
            if property_in_use(self.ontology, name):
                return self.make(name, SubjectKind.PROPERTY, GroundingStatus.ACTUAL,
                                 note="asserted in facts")
            return self.make(name, SubjectKind.PROPERTY, GroundingStatus.UNGROUNDED,
                             note="no definition, domain, range or facts")
        return self.named(SubjectKind.PROPERTY, name, expand)

    def individual_node(self, name: str) -> GroundingNode:
        return self.named(
            SubjectKind.INDIVIDUAL, name,
            lambda: self.make(name, SubjectKind.INDIVIDUAL, GroundingStatus.ACTUAL),
        )

    # -------------------------------------------------------------------------
    # Expressions
    # -------------------------------------------------------------------------

    def expression(self, expression: ClassExpression) -> GroundingNode:
        if isinstance(expression, Named):
            return self.class_node(expression.name)
        if isinstance(expression, (And, Or)):
            children = tuple(self.expression(op) for op in expression.operands)
            status = GroundingStatus.DEFINED
            if isinstance(expression, And) and structurally_empty(self.ontology, expression):
                status = GroundingStatus.EMPTY
            return self.make(_OPERATOR_LABELS[type(expression)], SubjectKind.EXPRESSION,
                             status, children)
        if isinstance(expression, Not):
            return self.make("not", SubjectKind.EXPRESSION, GroundingStatus.DEFINED,
                             (self.expression(expression.operand),))

        label = render_expression(expression)
        prop = self.property_node(expression.prop)
        if isinstance(expression, (Some, Only)):
            second = self.expression(expression.filler)
        elif isinstance(expression, Value):
            second = self.individual_node(expression.individual)
        else:
            second = self.ice_node(expression.ice)
        return self.make(label, SubjectKind.EXPRESSION, GroundingStatus.DEFINED, (prop, second))


def relata(ontology: Ontology, prop: str) -> tuple[tuple[str, ...], tuple[str, ...]]:
    """Domain and range classes of a property, inherited from super-properties when absent."""
    domains, ranges = ontology.domains(prop), ontology.ranges(prop)
    if domains and ranges:
        return domains, ranges
    inherited_domains: set[str] = set()
    inherited_ranges: set[str] = set()
    for sup in ontology.super_properties(prop) - {prop}:
        inherited_domains.update(ontology.domains(sup))
        inherited_ranges.update(ontology.ranges(sup))
    return (
        domains or tuple(sorted(inherited_domains)),
        ranges or tuple(sorted(inherited_ranges)),
    )


def property_in_use(ontology: Ontology, prop: str) -> bool:
    """True iff some fact is asserted with `prop` or one of its sub-properties."""
    family = ontology.sub_properties(prop)
    return any(f.prop in family for f in ontology.facts())


def _overall(root: GroundingNode) -> OverallStatus:
    statuses = {node.status for node in root.walk()}
    if GroundingStatus.UNGROUNDED in statuses:
        return OverallStatus.UNGROUNDED
    if GroundingStatus.CYCLIC in statuses:
        return OverallStatus.CYCLIC
    return OverallStatus.GROUNDED


def _max_depth(root: GroundingNode) -> int:
    """Named subjects on the deepest path below the root; repeats count as their expansion."""
    expanded: dict[tuple[SubjectKind, str], int] = {}

    def depth(node: GroundingNode) -> int:
        if node.repeated:
            return expanded[(node.kind, node.subject)]
        own = 0 if node.kind is SubjectKind.EXPRESSION else 1
        result = own + max((depth(child) for child in node.children), default=0)
        if own and node.status is not GroundingStatus.CYCLIC:
            expanded[(node.kind, node.subject)] = result
        return result

    return max((depth(child) for child in root.children), default=0)


def ground(ontology: Ontology, ice: str) -> GroundingReport:
    """
    Decompose an ICE's aboutness target down to actual classes.

    Named classes are Actual when instantiated, Defined when they expand
    through an EquivalentTo definition and Ungrounded otherwise. Properties
    are explicated by their definition or their domain and range classes.
    Revisiting a subject still being expanded yields a Cyclic leaf.

    Raises:
        UnknownName: If `ice` is not declared
        NoAboutness: If the ICE has no aboutness axiom
        MultipleAboutness: If it has more than one
        GroundingCapExceeded: If the node bound is exceeded (a defect)
    """
    assertion = sole_aboutness(ontology, ice)
    grounder = _Grounder(ontology, ice, node_cap(ontology, assertion.target))
    root = grounder.ice_node(ice)
    report = GroundingReport(
        ice=ice,
        root=root,
        overall=_overall(root),
        necessarily_empty=structurally_empty(ontology, assertion.target),
        max_depth=_max_depth(root),
        node_count=grounder.count,
    )
    get_logger().grounding_completed(ice, report.overall.value, report.node_count,
                                     report.max_depth)
    return report


# =============================================================================
# Structural Emptiness
# =============================================================================

def _check_names(ontology: Ontology, expression: ClassExpression) -> None:
    for category, name in iter_names(expression):
        ontology.require(category, name)


def structurally_empty(ontology: Ontology, expression: ClassExpression) -> bool:
    """
    True when `expression` cannot have instances on structural grounds alone.

    A conjunction is empty when, after flattening and adding the ancestors
    and definitions of its named conjuncts, it holds two disjoint classes,
    a class together with the complement of it or of an ancestor, or an
    expression together with its own complement. Emptiness propagates
    through existential fillers and through unions whose disjuncts are all
    empty. Never true for a satisfiable expression; may miss contradictions.

    Raises:
        UnknownName: If the expression references undeclared names
    """
    _check_names(ontology, expression)
    return _empty(ontology, expression, frozenset(), {})


def _empty(ontology: Ontology, expression: ClassExpression,
           active: frozenset[ClassExpression], known: dict[ClassExpression, bool]) -> bool:
    # an expression met again through its own definition is assumed satisfiable
    if expression in active:
        return False
    if expression in known:
        return known[expression]
    active = active | {expression}
    result = False
    if isinstance(expression, (Named, And)):
        result = _conjunction_empty(ontology, [expression], active, known)
    elif isinstance(expression, Or):
        result = all(_empty(ontology, op, active, known) for op in expression.operands)
    elif isinstance(expression, Some):
        result = _empty(ontology, expression.filler, active, known)
    known[expression] = result
    return result


def _conjunction_empty(ontology: Ontology, conjuncts: list[ClassExpression],
                       active: frozenset[ClassExpression],
                       known: dict[ClassExpression, bool]) -> bool:
    positives: set[str] = set()
    negated: list[ClassExpression] = []
    others: set[ClassExpression] = set()
    inlined: set[str] = set()

    pending = list(conjuncts)
    while pending:
        conjunct = pending.pop()
        if isinstance(conjunct, And):
            pending.extend(conjunct.operands)
        elif isinstance(conjunct, Named):
            for ancestor in ontology.ancestors(conjunct.name):
                positives.add(ancestor)
                if ancestor not in inlined:
                    inlined.add(ancestor)
                    pending.extend(ontology.equivalents(ancestor))
        elif isinstance(conjunct, Not):
            negated.append(conjunct.operand)
        else:
            others.add(conjunct)

    ordered = sorted(positives)
    for i, first in enumerate(ordered):
        for second in ordered[i:]:
            if ontology.declared_disjoint(first, second):
                return True

    for operand in negated:
        if isinstance(operand, Named) and operand.name in positives:
            return True
        if operand in others:
            return True

    return any(
        isinstance(other, (Some, Or)) and _empty(ontology, other, active, known)
        for other in others
    )


# =============================================================================
# Closed-world Satisfaction
# =============================================================================

def _related(ontology: Ontology, individual: str, prop: str) -> list[str]:
    family = ontology.sub_properties(prop)
    return sorted({f.obj for f in ontology.facts_about(individual) if f.prop in family})


def _satisfies(ontology: Ontology, individual: str, expression: ClassExpression,
               visiting: frozenset[tuple[str, str]] = frozenset()) -> bool:
    def check(who: str, part: ClassExpression) -> bool:
        return _satisfies(ontology, who, part, visiting)

    if isinstance(expression, Named):
        return individual in instantiation_closure(ontology, expression.name)
    if isinstance(expression, And):
        return all(check(individual, op) for op in expression.operands)
    if isinstance(expression, Or):
        return any(check(individual, op) for op in expression.operands)
    if isinstance(expression, Not):
        return not check(individual, expression.operand)
    if isinstance(expression, Some):
        return any(check(o, expression.filler)
                   for o in _related(ontology, individual, expression.prop))
    if isinstance(expression, Only):
        return all(check(o, expression.filler)
                   for o in _related(ontology, individual, expression.prop))
    if isinstance(expression, Value):
        return expression.individual in _related(ontology, individual, expression.prop)

    # a (filler, ICE) pair met again while checking it is taken to conform
    target = sole_aboutness(ontology, expression.ice).target
    inner = visiting | {(individual, expression.ice)}
    return all(
        (o, expression.ice) in inner or _satisfies(ontology, o, target, inner)
        for o in _related(ontology, individual, expression.prop)
    )


def satisfies(ontology: Ontology, individual: str, expression: ClassExpression) -> bool:
    """
    Closed-world check of `individual` against `expression`.

    Only asserted class memberships and facts count. A fact made with a
    sub-property counts for its super-properties. `p via ICE` reads as
    `p only <target of ICE>`.

    Raises:
        UnknownName: If the individual or a referenced name is undeclared
    """
    ontology.require("individual", individual)
    _check_names(ontology, expression)
    return _satisfies(ontology, individual, expression)


def nonconformance_path(ontology: Ontology, individual: str,
                        expression: ClassExpression) -> list[str]:
    """
    Rendered sub-expressions from `expression` down to the part the individual fails.

    Descends into the first failing conjunct of an intersection. Empty when
    the individual conforms.
    """
    if satisfies(ontology, individual, expression):
        return []
    path = [render_expression(expression)]
    while isinstance(expression, And):
        failing = next(op for op in expression.operands
                       if not _satisfies(ontology, individual, op))
        path.append(render_expression(failing))
        expression = failing
    return path


# =============================================================================
# Realization
# =============================================================================

def realize(ontology: Ontology, blueprint: str, individual: str) -> Ontology:
    """
    Record that `individual` was created according to `blueprint`.

    Returns a new ontology with a Represents-fact entry added; the
    Prescribes-only axiom stays. Realizing the same pair again returns an
    equal ontology.

    Raises:
        UnknownName: If either name is undeclared
        WrongKind: If the ICE is not a Blueprint with a Prescribes-only axiom
        NotConformant: If the individual fails the blueprint's target
    """
    ontology.require("ice", blueprint)
    ontology.require("individual", individual)

    classification = classify_ice(ontology, blueprint)
    if classification.kind is not IceKind.BLUEPRINT:
        raise WrongKind(blueprint, "Blueprint", classification.kind.value)
    assertion = sole_aboutness(ontology, blueprint)
    if assertion.relation is not Relation.PRESCRIBES:
        raise WrongKind(blueprint, "Blueprint with a Prescribes-only axiom",
                        f"asserted with {assertion.relation.value}")
    if assertion.constraint_form is not ConstraintForm.UNIVERSAL:
        raise WrongKind(blueprint, "Blueprint with a Prescribes-only axiom",
                        f"asserted with prescribes {assertion.constraint_form.value}")

    path = nonconformance_path(ontology, individual, assertion.target)
    if path:
        get_logger().realize_rejected(blueprint, individual, path[-1])
        raise NotConformant(individual, blueprint, path)

    realized = ontology.with_axioms(RepresentsFact(blueprint, individual))
    get_logger().realize_completed(blueprint, individual, realized is not ontology)
    return realized


def target_of(ontology: Ontology, ice: str) -> Optional[ClassExpression]:
    """The aboutness target of an ICE, or None when it has no single assertion."""
    assertions = ontology.aboutness(ice)
    return assertions[0].target if len(assertions) == 1 else None
