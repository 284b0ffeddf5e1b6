"""
Hypothesis strategies for small random ontologies and class expressions.

Generated ontologies do not use the prelude; names are C0.., p0.., i0.. and
D0 for the single ICE.
"""

from datetime import datetime, timezone
from typing import Optional, Sequence

from hypothesis import strategies as st

from upo_lint.ontology import (
    AboutnessAssertion,
    AboutnessAxiom,
    And,
    ClassAssertion,
    ClassExpression,
    ConstraintForm,
    DisjointWith,
    Domain,
    EquivalentTo,
    Fact,
    IceDeclaration,
    Named,
    Not,
    Ontology,
    Only,
    Or,
    PropertyDefinition,
    Range,
    Relation,
    RepresentsFact,
    Some,
    SubClassOf,
    SubPropertyOf,
    Value,
    Via,
)
from upo_lint.temporal import Weekday

ICE = "D0"


def expressions(
    classes: Sequence[str],
    props: Sequence[str],
    individuals: Sequence[str] = (),
    depth: int = 3,
    ices: Sequence[str] = (),
) -> st.SearchStrategy[ClassExpression]:
    """
    Expressions of nesting depth at most `depth`.

    `value` appears only when individuals are given and `via` only when ICEs are.
    """
    leaf: st.SearchStrategy[ClassExpression] = st.sampled_from(classes).map(Named)
    if individuals:
        leaf = leaf | st.builds(Value, st.sampled_from(props), st.sampled_from(individuals))
    if ices:
        leaf = leaf | st.builds(Via, st.sampled_from(props), st.sampled_from(ices))
    if depth == 0:
        return leaf
    sub = expressions(classes, props, individuals, depth - 1, ices)
    operands = st.lists(sub, min_size=2, max_size=3).map(tuple)
    return st.one_of(
        leaf,
        operands.map(And),
        operands.map(Or),
        sub.map(Not),
        st.builds(Some, st.sampled_from(props), sub),
        st.builds(Only, st.sampled_from(props), sub),
    )


def _names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(count)]


@st.composite
def ontologies(
    draw: st.DrawFn,
    max_classes: int = 8,
    max_props: int = 2,
    max_individuals: int = 4,
    max_axioms: int = 12,
    abox: bool = True,
    with_ice: bool = False,
    extras: bool = False,
) -> Ontology:
    """
    A random well-formed ontology.

    Without `abox` there are no individuals, facts or class assertions and
    definitions avoid `value`; the result is a pure terminology. With
    `extras` (and `with_ice`) it also carries `via`, property domains, ranges
    and definitions, facts about the ICE, Represents-fact and Mode/Cycle.
    """
    classes = _names("C", draw(st.integers(2, max_classes)))
    props = _names("p", draw(st.integers(1, max_props)))
    individuals = _names("i", draw(st.integers(1, max_individuals))) if abox else []

    vias = [ICE] if with_ice and extras else []
    pick_class = st.sampled_from(classes)
    pick_prop = st.sampled_from(props)
    distinct_pair = st.tuples(pick_class, pick_class).filter(lambda p: p[0] != p[1])
    terminology = [
        distinct_pair.map(lambda p: SubClassOf(*p)),
        distinct_pair.map(lambda p: DisjointWith(*p)),
        st.builds(EquivalentTo, pick_class,
                  expressions(classes, props, individuals, depth=2, ices=vias)),
    ]
    assertions = []
    if abox:
        pick_individual = st.sampled_from(individuals)
        assertions = [
            st.builds(ClassAssertion, pick_individual, pick_class),
            st.builds(Fact, pick_individual, pick_prop, pick_individual),
        ]
    axioms = draw(st.lists(st.one_of(*terminology, *assertions), max_size=max_axioms))
    if len(props) > 1 and draw(st.booleans()):
        axioms.append(SubPropertyOf(props[1], props[0]))
    if extras:
        axioms += draw(st.lists(st.one_of(st.builds(Domain, pick_prop, pick_class),
                                          st.builds(Range, pick_prop, pick_class)),
                                max_size=3))
        for prop in draw(st.lists(pick_prop, max_size=2, unique=True)):
            definition = expressions(classes, props, individuals, depth=2, ices=vias)
            axioms.append(PropertyDefinition(prop, draw(definition), draw(definition)))

    ices = {}
    if with_ice:
        mode: Optional[str] = None
        cycle: Optional[str] = None
        if extras:
            mode = draw(st.none() | st.sampled_from(["this", "next"]))
            cycle = draw(st.none() | st.sampled_from([day.value for day in Weekday]))
        ices[ICE] = IceDeclaration(ICE, (draw(pick_class),), mode, cycle)
        assertion = AboutnessAssertion(
            ICE,
            draw(st.sampled_from(list(Relation))),
            draw(expressions(classes, props, individuals, ices=vias)),
            draw(st.sampled_from(list(ConstraintForm))),
        )
        axioms.append(AboutnessAxiom(assertion))
        if extras and individuals:
            pick_individual = st.sampled_from(individuals)
            axioms += draw(st.lists(st.one_of(
                st.builds(Fact, st.just(ICE), pick_prop, pick_individual),
                st.builds(RepresentsFact, st.just(ICE), pick_individual),
            ), max_size=3))

    return Ontology(
        classes=frozenset(classes),
        properties=frozenset(props),
        individuals=frozenset(individuals),
        ices=ices,
        axioms=tuple(dict.fromkeys(axioms)),
    )


@st.composite
def ontology_with_expression(draw: st.DrawFn, **kwargs) -> tuple[Ontology, ClassExpression]:
    """An ontology and an expression over its own signature."""
    ontology = draw(ontologies(**kwargs))
    individuals = sorted(ontology.individuals) if kwargs.get("abox", True) else []
    expression = draw(expressions(sorted(ontology.classes), sorted(ontology.properties),
                                  individuals))
    return ontology, expression


def utterances() -> st.SearchStrategy[datetime]:
    """UTC instants at second precision between 1900 and 2100."""
    return st.datetimes(
        min_value=datetime(1900, 1, 1),
        max_value=datetime(2100, 12, 31, 23, 59, 59),
    ).map(lambda d: d.replace(microsecond=0, tzinfo=timezone.utc))


def word_strings(vocabulary: Sequence[str], max_words: int = 10) -> st.SearchStrategy[str]:
    """Space-separated runs of words; most are not well-formed expressions."""
    return st.lists(st.sampled_from(vocabulary), min_size=1, max_size=max_words).map(" ".join)
