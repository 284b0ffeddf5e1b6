"""
In-memory ontology for the supported OWL2DL fragment.

This module provides:
- Class expressions (named, intersection, union, complement, restrictions, ICE links)
- Axioms and the aboutness assertion record
- The immutable Ontology value with cached structural indexes
- The closures every analysis reads: instantiation, subclass, disjointness,
  sub-property and the is-about view
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, Optional, Union

from .errors import DuplicateDeclaration, UnknownName


# =============================================================================
# Source Positions
# =============================================================================

@dataclass(frozen=True, order=True)
class SourceSpan:
    """A 1-based position in a source document."""

    line: int
    column: int
    length: int = 0

    def __post_init__(self) -> None:
        if self.line < 1 or self.column < 1 or self.length < 0:
            raise ValueError(f"invalid span {self.line}:{self.column}+{self.length}")

    def __str__(self) -> str:
        return f"{self.line}:{self.column}"


# =============================================================================
# Class Expressions
# =============================================================================

@dataclass(frozen=True)
class Named:
    name: str


@dataclass(frozen=True)
class And:
    operands: tuple[ClassExpression, ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("an intersection needs at least two operands")


@dataclass(frozen=True)
class Or:
    operands: tuple[ClassExpression, ...]

    def __post_init__(self) -> None:
        if len(self.operands) < 2:
            raise ValueError("a union needs at least two operands")


@dataclass(frozen=True)
class Not:
    operand: ClassExpression


@dataclass(frozen=True)
class Some:
    prop: str
    filler: ClassExpression


@dataclass(frozen=True)
class Only:
    prop: str
    filler: ClassExpression


@dataclass(frozen=True)
class Value:
    prop: str
    individual: str


@dataclass(frozen=True)
class Via:
    """Restriction whose filler is the target of another ICE."""

    prop: str
    ice: str


ClassExpression = Union[Named, And, Or, Not, Some, Only, Value, Via]
Restriction = (Some, Only, Value, Via)


def expression_size(expression: ClassExpression) -> int:
    """Number of nodes in an expression tree."""
    if isinstance(expression, (And, Or)):
        return 1 + sum(expression_size(op) for op in expression.operands)
    if isinstance(expression, Not):
        return 1 + expression_size(expression.operand)
    if isinstance(expression, (Some, Only)):
        return 1 + expression_size(expression.filler)
    return 1


def iter_names(expression: ClassExpression) -> Iterator[tuple[str, str]]:
    """Yield (category, name) for every name an expression references."""
    if isinstance(expression, Named):
        yield "class", expression.name
    elif isinstance(expression, (And, Or)):
        for op in expression.operands:
            yield from iter_names(op)
    elif isinstance(expression, Not):
        yield from iter_names(expression.operand)
    elif isinstance(expression, (Some, Only)):
        yield "property", expression.prop
        yield from iter_names(expression.filler)
    elif isinstance(expression, Value):
        yield "property", expression.prop
        yield "individual", expression.individual
    elif isinstance(expression, Via):
        yield "property", expression.prop
        yield "ice", expression.ice


# =============================================================================
# Aboutness
# =============================================================================

class Relation(str, Enum):
    """The four sub-properties of is_about an ICE can be asserted with."""

    DESCRIBES = "describes"
    PRESCRIBES = "prescribes"
    REPRESENTS = "represents"
    DESIGNATES = "designates"

    @property
    def keyword(self) -> str:
        return self.value.capitalize()


IS_ABOUT = "is_about"


class ConstraintForm(str, Enum):
    UNIVERSAL = "only"
    EXISTENTIAL = "some"


@dataclass(frozen=True)
class AboutnessAssertion:
    """One ICE, one relation, one target class expression."""

    ice: str
    relation: Relation
    target: ClassExpression
    constraint_form: ConstraintForm = ConstraintForm.UNIVERSAL
    # Property the assertion was made with; a sub-property of the relation.
    prop: Optional[str] = None

    @property
    def property_name(self) -> str:
        return self.prop or self.relation.value


# =============================================================================
# Axioms
# =============================================================================

@dataclass(frozen=True)
class SubClassOf:
    sub: str
    sup: str


@dataclass(frozen=True)
class EquivalentTo:
    cls: str
    expression: ClassExpression


@dataclass(frozen=True)
class DisjointWith:
    first: str
    second: str


@dataclass(frozen=True)
class SubPropertyOf:
    sub: str
    sup: str


@dataclass(frozen=True)
class Domain:
    prop: str
    cls: str


@dataclass(frozen=True)
class Range:
    prop: str
    cls: str


@dataclass(frozen=True)
class PropertyDefinition:
    """Explicates a property by a domain and a range expression."""

    prop: str
    domain: ClassExpression
    range: ClassExpression


@dataclass(frozen=True)
class ClassAssertion:
    individual: str
    cls: str


@dataclass(frozen=True)
class Fact:
    subject: str
    prop: str
    obj: str


@dataclass(frozen=True)
class AboutnessAxiom:
    assertion: AboutnessAssertion


@dataclass(frozen=True)
class RepresentsFact:
    """A realized blueprint representing a created individual."""

    ice: str
    individual: str


Axiom = Union[
    SubClassOf, EquivalentTo, DisjointWith, SubPropertyOf, Domain, Range,
    PropertyDefinition, ClassAssertion, Fact, AboutnessAxiom, RepresentsFact,
]


@dataclass(frozen=True)
class IceDeclaration:
    """An information content entity and its frame-level keys."""

    name: str
    types: tuple[str, ...] = ()
    mode: Optional[str] = None
    cycle: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "types", tuple(sorted(set(self.types))))


# =============================================================================
# Ontology
# =============================================================================

def _closure(start: str, edges: Mapping[str, Iterable[str]]) -> frozenset[str]:
    """Reflexive-transitive closure from one node; tolerates cycles."""
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in edges.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return frozenset(seen)


@dataclass(frozen=True, eq=False)
class Ontology:
    """
    Signature plus axiom set.

    Immutable after construction; equality compares the signature and the
    axioms as a set, ignoring axiom order and source spans.
    """

    classes: frozenset[str] = frozenset()
    properties: frozenset[str] = frozenset()
    individuals: frozenset[str] = frozenset()
    ices: Mapping[str, IceDeclaration] = field(default_factory=dict)
    axioms: tuple[Axiom, ...] = ()
    spans: Mapping[Hashable, SourceSpan] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", frozenset(self.classes))
        object.__setattr__(self, "properties", frozenset(self.properties))
        object.__setattr__(self, "individuals", frozenset(self.individuals))
        object.__setattr__(self, "ices", dict(self.ices))
        object.__setattr__(self, "axioms", tuple(self.axioms))
        self._check_signature()
        for decl in self.ices.values():
            for t in decl.types:
                self.require("class", t)
        for axiom in self.axioms:
            self._check_axiom(axiom)
        defined = [a.prop for a in self.axioms if isinstance(a, PropertyDefinition)]
        if len(defined) != len(set(defined)):
            dup = next(p for p in defined if defined.count(p) > 1)
            raise DuplicateDeclaration(dup, "property definition")

    # -------------------------------------------------------------------------
    # Validation
    # -------------------------------------------------------------------------

    def _check_signature(self) -> None:
        seen: dict[str, str] = {}
        for category, names in (
            ("class", self.classes),
            ("property", self.properties),
            ("individual", self.individuals),
            ("ice", self.ices.keys()),
        ):
            for name in names:
                if name in seen:
                    raise DuplicateDeclaration(name, f"{seen[name]} and {category}")
                seen[name] = category

    def require(self, category: str, name: str) -> None:
        """Raise UnknownName unless `name` is declared in `category`."""
        declared = {
            "class": self.classes,
            "property": self.properties,
            "individual": self.individuals,
            "ice": self.ices,
        }[category]
        if name not in declared:
            raise UnknownName(name, category)

    def _check_expression(self, expression: ClassExpression) -> None:
        for category, name in iter_names(expression):
            self.require(category, name)

    def _check_axiom(self, axiom: Axiom) -> None:
        require = self.require
        if isinstance(axiom, (SubClassOf, DisjointWith)):
            a, b = (axiom.sub, axiom.sup) if isinstance(axiom, SubClassOf) else (
                axiom.first, axiom.second)
            require("class", a)
            require("class", b)
        elif isinstance(axiom, EquivalentTo):
            require("class", axiom.cls)
            self._check_expression(axiom.expression)
        elif isinstance(axiom, SubPropertyOf):
            require("property", axiom.sub)
            require("property", axiom.sup)
        elif isinstance(axiom, (Domain, Range)):
            require("property", axiom.prop)
            require("class", axiom.cls)
        elif isinstance(axiom, PropertyDefinition):
            require("property", axiom.prop)
            self._check_expression(axiom.domain)
            self._check_expression(axiom.range)
        elif isinstance(axiom, ClassAssertion):
            require("individual", axiom.individual)
            require("class", axiom.cls)
        elif isinstance(axiom, Fact):
            if axiom.subject not in self.ices:
                require("individual", axiom.subject)
            require("property", axiom.prop)
            require("individual", axiom.obj)
        elif isinstance(axiom, AboutnessAxiom):
            require("ice", axiom.assertion.ice)
            # the four relations are built in; only explicit sub-properties must be declared
            if axiom.assertion.prop is not None:
                require("property", axiom.assertion.prop)
            self._check_expression(axiom.assertion.target)
        elif isinstance(axiom, RepresentsFact):
            require("ice", axiom.ice)
            require("individual", axiom.individual)

    # -------------------------------------------------------------------------
    # Equality and copy-on-write
    # -------------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Ontology):
            return NotImplemented
        return (
            self.classes == other.classes
            and self.properties == other.properties
            and self.individuals == other.individuals
            and dict(self.ices) == dict(other.ices)
            and frozenset(self.axioms) == frozenset(other.axioms)
        )

    __hash__ = object.__hash__

    def merged(self, other: Ontology) -> Ontology:
        """Union of two ontologies; `other`'s spans win."""
        ices = dict(self.ices)
        for name, decl in other.ices.items():
            mine = ices.get(name)
            if mine is not None:
                decl = IceDeclaration(
                    name,
                    mine.types + decl.types,
                    decl.mode or mine.mode,
                    decl.cycle or mine.cycle,
                )
            ices[name] = decl
        seen = set(self.axioms)
        axioms = list(self.axioms) + [a for a in other.axioms if a not in seen]
        return Ontology(
            classes=self.classes | other.classes,
            properties=self.properties | other.properties,
            individuals=self.individuals | other.individuals,
            ices=ices,
            axioms=tuple(axioms),
            spans={**self.spans, **other.spans},
        )

    def with_axioms(self, *axioms: Axiom) -> Ontology:
        """A new ontology with `axioms` appended (duplicates skipped)."""
        present = set(self.axioms)
        fresh = tuple(dict.fromkeys(a for a in axioms if a not in present))
        if not fresh:
            return self
        return Ontology(self.classes, self.properties, self.individuals,
                        self.ices, self.axioms + fresh, self.spans)

    def with_individuals(self, *names: str) -> Ontology:
        fresh = frozenset(names) - self.individuals
        if not fresh:
            return self
        return Ontology(self.classes, self.properties, self.individuals | fresh,
                        self.ices, self.axioms, self.spans)

    # -------------------------------------------------------------------------
    # Indexes
    # -------------------------------------------------------------------------

    def _of_type(self, kind: type) -> list:
        return [a for a in self.axioms if isinstance(a, kind)]

    @cached_property
    def _super_edges(self) -> dict[str, set[str]]:
        edges: dict[str, set[str]] = defaultdict(set)
        for a in self._of_type(SubClassOf):
            edges[a.sub].add(a.sup)
        return edges

    @cached_property
    def _sub_edges(self) -> dict[str, set[str]]:
        edges: dict[str, set[str]] = defaultdict(set)
        for a in self._of_type(SubClassOf):
            edges[a.sup].add(a.sub)
        return edges

    @cached_property
    def _super_property_edges(self) -> dict[str, set[str]]:
        edges: dict[str, set[str]] = defaultdict(set)
        for a in self._of_type(SubPropertyOf):
            edges[a.sub].add(a.sup)
        return edges

    @cached_property
    def _sub_property_edges(self) -> dict[str, set[str]]:
        edges: dict[str, set[str]] = defaultdict(set)
        for a in self._of_type(SubPropertyOf):
            edges[a.sup].add(a.sub)
        return edges

    @cached_property
    def _asserted_members(self) -> dict[str, set[str]]:
        members: dict[str, set[str]] = defaultdict(set)
        for a in self._of_type(ClassAssertion):
            members[a.cls].add(a.individual)
        for decl in self.ices.values():
            for t in decl.types:
                members[t].add(decl.name)
        return members

    @cached_property
    def _disjoint_pairs(self) -> frozenset[frozenset[str]]:
        return frozenset(frozenset((a.first, a.second)) for a in self._of_type(DisjointWith))

    @cached_property
    def _facts_by_subject(self) -> dict[str, list[Fact]]:
        facts: dict[str, list[Fact]] = defaultdict(list)
        for a in self._of_type(Fact):
            facts[a.subject].append(a)
        return facts

    def ancestors(self, cls: str) -> frozenset[str]:
        """Reflexive-transitive SubClassOf ancestors."""
        self.require("class", cls)
        return _closure(cls, self._super_edges)

    def descendants(self, cls: str) -> frozenset[str]:
        """Reflexive-transitive SubClassOf descendants."""
        self.require("class", cls)
        return _closure(cls, self._sub_edges)

    def super_properties(self, prop: str) -> frozenset[str]:
        self.require("property", prop)
        return _closure(prop, self._super_property_edges)

    def sub_properties(self, prop: str) -> frozenset[str]:
        self.require("property", prop)
        return _closure(prop, self._sub_property_edges)

    def asserted_members(self, cls: str) -> frozenset[str]:
        return frozenset(self._asserted_members.get(cls, ()))

    def equivalents(self, cls: str) -> tuple[ClassExpression, ...]:
        return tuple(a.expression for a in self._of_type(EquivalentTo) if a.cls == cls)

    def declared_disjoint(self, a: str, b: str) -> bool:
        return frozenset((a, b)) in self._disjoint_pairs

    def domains(self, prop: str) -> tuple[str, ...]:
        return tuple(sorted({a.cls for a in self._of_type(Domain) if a.prop == prop}))

    def ranges(self, prop: str) -> tuple[str, ...]:
        return tuple(sorted({a.cls for a in self._of_type(Range) if a.prop == prop}))

    def definition(self, prop: str) -> Optional[PropertyDefinition]:
        return next((a for a in self._of_type(PropertyDefinition) if a.prop == prop), None)

    def facts_about(self, subject: str) -> tuple[Fact, ...]:
        """Facts whose subject is `subject`."""
        return tuple(self._facts_by_subject.get(subject, ()))

    def facts(self) -> tuple[Fact, ...]:
        return tuple(self._of_type(Fact))

    def aboutness(self, ice: str) -> tuple[AboutnessAssertion, ...]:
        return tuple(a.assertion for a in self._of_type(AboutnessAxiom) if a.assertion.ice == ice)

    def represents_facts(self, ice: str) -> tuple[RepresentsFact, ...]:
        return tuple(a for a in self._of_type(RepresentsFact) if a.ice == ice)

    def ice_types(self, ice: str) -> tuple[str, ...]:
        self.require("ice", ice)
        return self.ices[ice].types

    def span_of(self, key: Hashable) -> Optional[SourceSpan]:
        return self.spans.get(key)


# =============================================================================
# Closures
# =============================================================================

def instantiation_closure(ontology: Ontology, cls: str) -> frozenset[str]:
    """
    All individuals asserted into `cls` or any of its SubClassOf descendants.

    EquivalentTo definitions do not contribute: a class is actual only when
    something has been asserted into it.

    Raises:
        UnknownName: If `cls` is not a declared class
    """
    members: set[str] = set()
    for sub in ontology.descendants(cls):
        members |= ontology.asserted_members(sub)
    return frozenset(members)


def are_disjoint(ontology: Ontology, c1: str, c2: str) -> bool:
    """True iff some ancestor of c1 and some ancestor of c2 are declared disjoint."""
    left = ontology.ancestors(c1)
    right = ontology.ancestors(c2)
    return any(ontology.declared_disjoint(a, b) for a in left for b in right)


@dataclass(frozen=True)
class TaggedAboutness:
    """An aboutness assertion with every relation it closes to."""

    assertion: AboutnessAssertion
    relations: frozenset[str]


def is_about_view(ontology: Ontology) -> list[TaggedAboutness]:
    """
    Every aboutness axiom, tagged with its property's super-property closure.

    The prelude places describes/prescribes/represents/designates under
    is_about; the generic tag is added even when an ontology omits that
    hierarchy.
    """
    view = []
    for axiom in ontology.axioms:
        if not isinstance(axiom, AboutnessAxiom):
            continue
        assertion = axiom.assertion
        prop = assertion.property_name
        tags = set(ontology.super_properties(prop)) if prop in ontology.properties else {prop}
        tags.add(IS_ABOUT)
        view.append(TaggedAboutness(assertion, frozenset(tags)))
    return view


def is_about_family(ontology: Ontology, prop: str) -> bool:
    """True iff `prop` closes to is_about through the property hierarchy."""
    if prop == IS_ABOUT or prop in {r.value for r in Relation}:
        return True
    return any(p == IS_ABOUT or p in {r.value for r in Relation}
               for p in ontology.super_properties(prop))
