"""
ICE taxonomy and the case discipline of the aboutness relations.

Fictions describe, blueprints prescribe, simulations represent and
temporal expressions designate. Anything else is an OtherICE and is not
held to a relation.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .ontology import Ontology, Relation


class IceKind(str, Enum):
    FICTIONAL_ENTITY = "FictionalEntity"
    BLUEPRINT = "Blueprint"
    SIMULATION_REPRESENTATION = "SimulationRepresentation"
    TEMPORAL_EXPRESSION = "TemporalExpression"
    OTHER = "OtherICE"


class IceFlag(str, Enum):
    DIRECTIVE = "directive"
    REPRESENTATIONAL = "representational"


# Checked in order; the first kind class among an ICE's ancestors wins.
KIND_PRIORITY = (
    IceKind.FICTIONAL_ENTITY,
    IceKind.BLUEPRINT,
    IceKind.SIMULATION_REPRESENTATION,
    IceKind.TEMPORAL_EXPRESSION,
)

DIRECTIVE_CLASS = "DirectiveInformationContentEntity"
REPRESENTATIONAL_CLASS = "RepresentationalInformationContentEntity"

EXPECTED_RELATIONS: dict[IceKind, Optional[Relation]] = {
    IceKind.FICTIONAL_ENTITY: Relation.DESCRIBES,
    IceKind.BLUEPRINT: Relation.PRESCRIBES,
    IceKind.SIMULATION_REPRESENTATION: Relation.REPRESENTS,
    IceKind.TEMPORAL_EXPRESSION: Relation.DESIGNATES,
    IceKind.OTHER: None,
}


@dataclass(frozen=True)
class IceClassification:
    kind: IceKind
    flags: frozenset[IceFlag] = frozenset()

    @property
    def directive(self) -> bool:
        return IceFlag.DIRECTIVE in self.flags

    @property
    def representational(self) -> bool:
        return IceFlag.REPRESENTATIONAL in self.flags


def classify_ice(ontology: Ontology, ice: str) -> IceClassification:
    """
    Classify an ICE by its declared types and acquired aboutness.

    A Blueprint that has been realized carries both flags: it still
    prescribes and now also represents.

    Raises:
        UnknownName: If `ice` is not a declared ICE
    """
    ancestors: set[str] = set()
    for t in ontology.ice_types(ice):
        ancestors |= ontology.ancestors(t)

    kind = next((k for k in KIND_PRIORITY if k.value in ancestors), IceKind.OTHER)

    relations = {a.relation for a in ontology.aboutness(ice)}
    flags = set()
    if Relation.PRESCRIBES in relations or DIRECTIVE_CLASS in ancestors:
        flags.add(IceFlag.DIRECTIVE)
    if (
        Relation.REPRESENTS in relations
        or ontology.represents_facts(ice)
        or REPRESENTATIONAL_CLASS in ancestors
    ):
        flags.add(IceFlag.REPRESENTATIONAL)
    return IceClassification(kind, frozenset(flags))


def expected_relation(kind: IceKind) -> Optional[Relation]:
    """The relation an ICE of `kind` should be asserted with; None for OtherICE."""
    return EXPECTED_RELATIONS[kind]
