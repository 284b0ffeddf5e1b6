"""
Resolution of indexical temporal designations.

"This Friday" and "next Friday" pick out different day intervals depending
on when they are uttered. Calendar math is UTC on the proleptic Gregorian
calendar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import datetime, timedelta, timezone
from enum import Enum
from typing import Optional

from .errors import InvalidTimestamp
from .logging import get_logger
from .ontology import (
    And,
    ClassAssertion,
    ClassExpression,
    Named,
    Ontology,
    Value,
)
from .validation import MAX_TIMESTAMP_YEAR, format_timestamp, require_valid_timestamp

ONE_DAY = timedelta(days=1)
ONE_WEEK = timedelta(days=7)

TIME_INTERVAL = "TimeInterval"
TEMPORAL_INSTANT = "TemporalInstant"
EXPRESSED_ON = "expressed_on"
PRECEDED_BY = "preceded_by"
HAS_FIRST_INSTANT = "has_first_instant"


class IndexicalMode(str, Enum):
    THIS = "this"
    NEXT = "next"


class Weekday(str, Enum):
    MONDAY = "Monday"
    TUESDAY = "Tuesday"
    WEDNESDAY = "Wednesday"
    THURSDAY = "Thursday"
    FRIDAY = "Friday"
    SATURDAY = "Saturday"
    SUNDAY = "Sunday"

    @property
    def index(self) -> int:
        """Monday is 0, matching datetime.weekday()."""
        return list(Weekday).index(self)


class CycleKind(str, Enum):
    WEEKLY_DAY = "WeeklyDay"


@dataclass(frozen=True)
class CycleSpec:
    day: Weekday
    kind: CycleKind = CycleKind.WEEKLY_DAY
    interval_length: timedelta = ONE_DAY

    def __post_init__(self) -> None:
        object.__setattr__(self, "day", Weekday(self.day))
        if self.interval_length != ONE_DAY:
            raise ValueError("weekly day cycles have a one-day interval")


def _to_utc_second(instant: datetime) -> datetime:
    if instant.tzinfo is None:
        instant = instant.replace(tzinfo=timezone.utc)
    return instant.astimezone(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class TemporalContext:
    """An utterance instant (UTC, second precision) and the cycle it refers to."""

    utterance: datetime
    cycle: CycleSpec

    def __post_init__(self) -> None:
        object.__setattr__(self, "utterance", _to_utc_second(self.utterance))
        if self.utterance.year > MAX_TIMESTAMP_YEAR:
            raise InvalidTimestamp(format_timestamp(self.utterance),
                                   f"year must be {MAX_TIMESTAMP_YEAR} or earlier")

    @classmethod
    def from_timestamp(cls, timestamp: str, day: Weekday | str) -> TemporalContext:
        """
        Build a context from a `YYYY-MM-DDThh:mm:ss` timestamp.

        Raises:
            InvalidTimestamp: If the timestamp is malformed or not a real date
        """
        return cls(require_valid_timestamp(timestamp), CycleSpec(Weekday(day)))


@dataclass(frozen=True)
class ResolvedInterval:
    """The half-open day interval an indexical picks out."""

    first_instant: datetime
    last_instant: datetime
    designated_class: str
    mode: Optional[IndexicalMode] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if not self.first_instant < self.last_instant:
            raise ValueError("an interval must start before it ends")


def resolve_indexical(mode: IndexicalMode, ctx: TemporalContext) -> ResolvedInterval:
    """
    Resolve "this <day>" or "next <day>" uttered at `ctx.utterance`.

    This is the first occurrence of the day on or after the utterance's
    calendar day; the utterance day itself counts. Next is one week later.
    """
    mode = IndexicalMode(mode)
    day_start = ctx.utterance.replace(hour=0, minute=0, second=0)
    offset = (ctx.cycle.day.index - day_start.weekday()) % 7
    first = day_start + timedelta(days=offset)
    if mode is IndexicalMode.NEXT:
        first += ONE_WEEK
    interval = ResolvedInterval(first, first + ctx.cycle.interval_length,
                                ctx.cycle.day.value, mode)
    get_logger().temporal_resolved(mode.value, ctx.cycle.day.value,
                                   format_timestamp(ctx.utterance), format_timestamp(first))
    return interval


def check_precedence(a: ResolvedInterval, b: ResolvedInterval) -> bool:
    """True iff `a` ends no later than `b` starts."""
    return a.last_instant <= b.first_instant


def instant_individual_name(instant: datetime) -> str:
    """`t_YYYY-MM-DD` for midnight, `t_YYYY-MM-DDThh-mm-ss` otherwise."""
    instant = _to_utc_second(instant)
    if (instant.hour, instant.minute, instant.second) == (0, 0, 0):
        return f"t_{instant:%Y-%m-%d}"
    return f"t_{instant:%Y-%m-%dT%H-%M-%S}"


def emit_designation_expression(
    mode: IndexicalMode,
    ctx: TemporalContext,
    ontology: Ontology,
) -> ClassExpression:
    """
    The designation an indexical expression carries in this context.

    `<Day> and expressed_on value <utterance> and preceded_by value
    <utterance> and has_first_instant value <first instant>`; the
    precedence clause is left out when the interval starts at the
    utterance instant.

    Raises:
        UnknownName: If the day class, the temporal classes or the three
            properties are not declared
    """
    day = ctx.cycle.day.value
    for cls in (day, TIME_INTERVAL, TEMPORAL_INSTANT):
        ontology.require("class", cls)
    for prop in (EXPRESSED_ON, PRECEDED_BY, HAS_FIRST_INSTANT):
        ontology.require("property", prop)

    interval = resolve_indexical(mode, ctx)
    utterance = instant_individual_name(ctx.utterance)
    operands: list[ClassExpression] = [Named(day), Value(EXPRESSED_ON, utterance)]
    if ctx.utterance < interval.first_instant:
        operands.append(Value(PRECEDED_BY, utterance))
    operands.append(Value(HAS_FIRST_INSTANT, instant_individual_name(interval.first_instant)))
    return And(tuple(operands))


def designation_ontology(ontology: Ontology, mode: IndexicalMode,
                         ctx: TemporalContext) -> Ontology:
    """`ontology` plus the instant individuals the designation refers to."""
    interval = resolve_indexical(mode, ctx)
    names = (instant_individual_name(ctx.utterance),
             instant_individual_name(interval.first_instant))
    extended = ontology.with_individuals(*names)
    return extended.with_axioms(*(ClassAssertion(n, TEMPORAL_INSTANT) for n in names))
