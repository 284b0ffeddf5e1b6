"""
Parser and serializer for the .upo frame language.

The format is a small Manchester-style frame syntax:

    Class: Person
        SubClassOf: MaterialEntity
    ICE: SupermanDescription
        Types: FictionalEntity
        Describes-only: Person and (bearer_of some SuperStrength)

Expression precedence, loosest to tightest: `or`, `and`, `not`, then the
restrictions `p some E`, `p only E`, `p value i`, `p via ICE`. Parentheses
override. Declarations may appear in any order; names are resolved after
the whole document has been read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .errors import ErrorCategory, UpoError
from .logging import get_logger
from .ontology import (
    AboutnessAssertion,
    AboutnessAxiom,
    And,
    Axiom,
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
    SourceSpan,
    SubClassOf,
    SubPropertyOf,
    Value,
    Via,
)
from .validation import RESERVED_WORDS

__all__ = [
    "ParseError",
    "ParseErrorKind",
    "ParseFailure",
    "SourceSpan",
    "parse",
    "parse_file",
    "parse_class_expression",
    "serialize",
    "render_expression",
]


# =============================================================================
# Errors
# =============================================================================

class ParseErrorKind(str, Enum):
    LEXICAL = "Lexical"
    SYNTAX = "Syntax"
    UNKNOWN_NAME = "UnknownName"
    DUPLICATE_DECLARATION = "DuplicateDeclaration"


@dataclass(frozen=True)
class ParseError:
    """One problem found in a document. Lexical/Syntax errors abort their frame."""

    span: SourceSpan
    message: str
    kind: ParseErrorKind

    def __str__(self) -> str:
        return f"{self.span.line}:{self.span.column}: {self.kind.value}: {self.message}"


class ParseFailure(UpoError):
    """Raised by parse() with every error found; no partial ontology is returned."""

    category = ErrorCategory.PARSE

    def __init__(self, errors: Sequence[ParseError], source: str = "<text>") -> None:
        self.errors = sorted(errors, key=lambda e: (e.span, e.kind.value, e.message))
        self.source = source
        first = self.errors[0] if self.errors else None
        super().__init__(
            f"{source}: {len(self.errors)} parse error(s)"
            + (f"; first at {first}" if first else "")
        )


# =============================================================================
# Lexer
# =============================================================================

class TokenKind(str, Enum):
    NAME = "name"
    KEY = "key"
    COMMA = ","
    LPAREN = "("
    RPAREN = ")"
    ERROR = "error"
    EOF = "end of input"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str
    span: SourceSpan

    def describe(self) -> str:
        if self.kind is TokenKind.EOF:
            return "end of input"
        if self.kind is TokenKind.KEY:
            return f"'{self.text}:'"
        return f"'{self.text}'"


def _is_name_start(ch: str) -> bool:
    return ch == "_" or ("a" <= ch <= "z") or ("A" <= ch <= "Z")


def _is_name_char(ch: str) -> bool:
    return _is_name_start(ch) or ("0" <= ch <= "9") or ch == "-"


def tokenize(text: str) -> list[Token]:
    """Split a document into tokens. Unknown characters become ERROR tokens."""
    text = text.replace("\r\n", "\n")
    tokens: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch in " \t\r\f\v":
            col, i = col + 1, i + 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch in ",()":
            kind = {",": TokenKind.COMMA, "(": TokenKind.LPAREN, ")": TokenKind.RPAREN}[ch]
            tokens.append(Token(kind, ch, SourceSpan(line, col, 1)))
            col, i = col + 1, i + 1
            continue
        if _is_name_start(ch):
            start = i
            while i < n and _is_name_char(text[i]):
                i += 1
            word = text[start:i]
            if i < n and text[i] == ":":
                tokens.append(Token(TokenKind.KEY, word, SourceSpan(line, col, len(word) + 1)))
                i += 1
                col += len(word) + 1
            else:
                tokens.append(Token(TokenKind.NAME, word, SourceSpan(line, col, len(word))))
                col += len(word)
            continue
        tokens.append(Token(TokenKind.ERROR, ch, SourceSpan(line, col, 1)))
        col, i = col + 1, i + 1
    tokens.append(Token(TokenKind.EOF, "", SourceSpan(line, col, 0)))
    return tokens


# =============================================================================
# Parser
# =============================================================================

FRAME_KEYS = {"Class": "class", "ObjectProperty": "property",
              "Individual": "individual", "ICE": "ice"}

RESTRICTION_WORDS = {"some", "only", "value", "via"}

WEEKDAYS = ("Monday", "Tuesday", "Wednesday", "Thursday", "Friday", "Saturday", "Sunday")
MODES = ("this", "next")

ABOUTNESS_KEYS = {
    f"{relation.keyword}-{form.value}": (relation, form)
    for relation in Relation
    for form in ConstraintForm
}

FRAME_ENTRY_KEYS = {
    "class": {"SubClassOf", "EquivalentTo", "DisjointWith"},
    "property": {"SubPropertyOf", "Domain", "Range", "DefinedBy"},
    "individual": {"Types", "Facts"},
    "ice": {"Types", "Facts", "Represents-fact", "Mode", "Cycle", *ABOUTNESS_KEYS},
}


def _a(word: str) -> str:
    return f"an {word}" if word[0] in "aeiou" else f"a {word}"


class _FrameAbort(Exception):
    """Stops the current frame after a lexical or syntax error."""


@dataclass
class _IceState:
    types: list[str] = field(default_factory=list)
    mode: Optional[str] = None
    cycle: Optional[str] = None
    aboutness: list[tuple[AboutnessAssertion, SourceSpan]] = field(default_factory=list)
    header: Optional[SourceSpan] = None


class _Parser:
    """Recursive-descent parser over one token list."""

    def __init__(self, tokens: list[Token]) -> None:
        self.tokens = tokens
        self.index = 0
        self.errors: list[ParseError] = []
        # (category, name, span) of every reference, checked after the full read
        self.references: list[tuple[str, str, SourceSpan]] = []
        self.declared: dict[str, str] = {}
        self.declaration_spans: dict[str, SourceSpan] = {}
        self.axioms: dict[Axiom, SourceSpan] = {}
        self.ices: dict[str, _IceState] = {}
        self.defined_properties: set[str] = set()
        self.frames = 0
        self.current_ice: Optional[str] = None
        self.aborted: set[str] = set()

    # -------------------------------------------------------------------------
    # Token helpers
    # -------------------------------------------------------------------------

    @property
    def token(self) -> Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.token
        if tok.kind is not TokenKind.EOF:
            self.index += 1
        return tok

    def fail(self, message: str, span: Optional[SourceSpan] = None,
             kind: ParseErrorKind = ParseErrorKind.SYNTAX) -> None:
        tok = self.token
        if tok.kind is TokenKind.ERROR and span is None:
            kind = ParseErrorKind.LEXICAL
            message = f"unexpected character '{tok.text}'"
        self.errors.append(ParseError(span or tok.span, message, kind))
        raise _FrameAbort

    def at_word(self, word: str) -> bool:
        return self.token.kind is TokenKind.NAME and self.token.text == word

    def at_entry_end(self) -> bool:
        return self.token.kind in (TokenKind.KEY, TokenKind.EOF)

    def expect_name(self, what: str) -> Token:
        tok = self.token
        if tok.kind is not TokenKind.NAME or tok.text in RESERVED_WORDS:
            self.fail(f"expected {what}, found {tok.describe()}")
        return self.advance()

    def reference(self, category: str, tok: Token) -> str:
        self.references.append((category, tok.text, tok.span))
        return tok.text

    def add_axiom(self, axiom: Axiom, span: SourceSpan) -> None:
        self.axioms.setdefault(axiom, span)

    # -------------------------------------------------------------------------
    # Document and frames
    # -------------------------------------------------------------------------

    def parse_document(self) -> None:
        while self.token.kind is not TokenKind.EOF:
            start = self.index
            try:
                self.parse_frame()
            except _FrameAbort:
                if self.current_ice is not None:
                    self.aborted.add(self.current_ice)
                if self.index == start:
                    self.advance()
                self.skip_to_next_frame()

    def skip_to_next_frame(self) -> None:
        while self.token.kind is not TokenKind.EOF and not (
            self.token.kind is TokenKind.KEY and self.token.text in FRAME_KEYS
        ):
            self.advance()

    def parse_frame(self) -> None:
        self.current_ice = None
        tok = self.token
        if tok.kind is not TokenKind.KEY or tok.text not in FRAME_KEYS:
            self.fail(
                f"expected a frame (Class:, ObjectProperty:, Individual:, ICE:), "
                f"found {tok.describe()}"
            )
        category = FRAME_KEYS[tok.text]
        self.advance()
        name_tok = self.expect_name(f"{_a(category)} name")
        name = name_tok.text
        self.declare(category, name, name_tok.span)
        self.frames += 1
        self.current_ice = name if category == "ice" else None
        if category == "ice":
            state = self.ices.setdefault(name, _IceState())
            state.header = state.header or name_tok.span

        while self.token.kind is TokenKind.KEY and self.token.text not in FRAME_KEYS:
            key = self.token
            if key.text not in FRAME_ENTRY_KEYS[category]:
                self.fail(f"'{key.text}:' is not allowed in {_a(category)} frame")
            self.advance()
            self.parse_entry(category, name, key)

        if not self.at_entry_end():
            self.fail(f"unexpected {self.token.describe()}")

    def declare(self, category: str, name: str, span: SourceSpan) -> None:
        previous = self.declared.get(name)
        if previous is not None and previous != category:
            self.errors.append(ParseError(
                span,
                f"'{name}' is already declared as {_a(previous)}",
                ParseErrorKind.DUPLICATE_DECLARATION,
            ))
            return
        self.declared.setdefault(name, category)
        self.declaration_spans.setdefault(name, span)

    def parse_entry(self, category: str, name: str, key: Token) -> None:
        k, span = key.text, key.span
        if category == "class":
            if k == "SubClassOf":
                for sup in self.name_list("class"):
                    self.add_axiom(SubClassOf(name, sup), span)
            elif k == "EquivalentTo":
                self.add_axiom(EquivalentTo(name, self.value_expression()), span)
            elif k == "DisjointWith":
                for other in self.name_list("class"):
                    self.add_axiom(DisjointWith(name, other), span)
        elif category == "property":
            if k == "SubPropertyOf":
                for sup in self.name_list("property"):
                    self.add_axiom(SubPropertyOf(name, sup), span)
            elif k == "Domain":
                for cls in self.name_list("class"):
                    self.add_axiom(Domain(name, cls), span)
            elif k == "Range":
                for cls in self.name_list("class"):
                    self.add_axiom(Range(name, cls), span)
            elif k == "DefinedBy":
                self.check_parentheses()
                domain = self.expression()
                if self.token.kind is not TokenKind.COMMA:
                    self.fail(f"expected ',' between domain and range, found {self.token.describe()}")
                self.advance()
                range_ = self.expression()
                self.end_of_value()
                if name in self.defined_properties:
                    self.errors.append(ParseError(
                        span, f"property '{name}' already has a definition",
                        ParseErrorKind.DUPLICATE_DECLARATION,
                    ))
                    return
                self.defined_properties.add(name)
                self.add_axiom(PropertyDefinition(name, domain, range_), span)
        elif category == "individual":
            if k == "Types":
                for cls in self.name_list("class"):
                    self.add_axiom(ClassAssertion(name, cls), span)
            elif k == "Facts":
                for fact in self.fact_list(name):
                    self.add_axiom(fact, span)
        else:
            self.parse_ice_entry(name, key)

    def parse_ice_entry(self, name: str, key: Token) -> None:
        state = self.ices[name]
        k, span = key.text, key.span
        if k == "Types":
            for cls in self.name_list("class"):
                if cls not in state.types:
                    state.types.append(cls)
        elif k == "Facts":
            for fact in self.fact_list(name):
                self.add_axiom(fact, span)
        elif k == "Represents-fact":
            for individual in self.name_list("individual"):
                self.add_axiom(RepresentsFact(name, individual), span)
        elif k == "Mode":
            state.mode = self.choice(MODES, "mode", state.mode)
        elif k == "Cycle":
            state.cycle = self.choice(WEEKDAYS, "weekday", state.cycle)
        else:
            relation, form = ABOUTNESS_KEYS[k]
            target = self.value_expression()
            state.aboutness.append(
                (AboutnessAssertion(name, relation, target, form), span)
            )

    def choice(self, allowed: Sequence[str], what: str, current: Optional[str]) -> str:
        tok = self.expect_name(f"a {what}")
        if tok.text not in allowed:
            self.fail(f"expected a {what} ({', '.join(allowed)}), found '{tok.text}'", tok.span)
        if current is not None and current != tok.text:
            self.fail(f"{what} already set to '{current}'", tok.span)
        self.end_of_value()
        return tok.text

    # -------------------------------------------------------------------------
    # Entry values
    # -------------------------------------------------------------------------

    def end_of_value(self) -> None:
        if not self.at_entry_end():
            self.fail(f"unexpected {self.token.describe()}")

    def name_list(self, category: str) -> list[str]:
        names = [self.reference(category, self.expect_name(f"{_a(category)} name"))]
        while self.token.kind is TokenKind.COMMA:
            self.advance()
            names.append(self.reference(category, self.expect_name(f"{_a(category)} name")))
        self.end_of_value()
        return names

    def fact_list(self, subject: str) -> list[Fact]:
        facts = []
        while True:
            prop = self.reference("property", self.expect_name("a property name"))
            obj = self.reference("individual", self.expect_name("an individual name"))
            facts.append(Fact(subject, prop, obj))
            if self.token.kind is not TokenKind.COMMA:
                break
            self.advance()
        self.end_of_value()
        return facts

    def check_parentheses(self) -> None:
        """Report the first unbalanced parenthesis of the current entry value."""
        open_spans: list[SourceSpan] = []
        i = self.index
        while self.tokens[i].kind not in (TokenKind.KEY, TokenKind.EOF):
            tok = self.tokens[i]
            if tok.kind is TokenKind.LPAREN:
                open_spans.append(tok.span)
            elif tok.kind is TokenKind.RPAREN:
                if not open_spans:
                    self.fail("unmatched closing parenthesis", tok.span)
                open_spans.pop()
            i += 1
        if open_spans:
            self.fail("unclosed parenthesis", open_spans[-1])

    def value_expression(self) -> ClassExpression:
        self.check_parentheses()
        expression = self.expression()
        self.end_of_value()
        return expression

    # -------------------------------------------------------------------------
    # Expressions
    # -------------------------------------------------------------------------

    def expression(self) -> ClassExpression:
        return self.disjunction()

    def disjunction(self) -> ClassExpression:
        operands = [self.conjunction()]
        while self.at_word("or"):
            self.advance()
            operands.append(self.conjunction())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def conjunction(self) -> ClassExpression:
        operands = [self.negation()]
        while self.at_word("and"):
            self.advance()
            operands.append(self.negation())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def negation(self) -> ClassExpression:
        if self.at_word("not"):
            self.advance()
            return Not(self.negation())
        return self.restriction()

    def restriction(self) -> ClassExpression:
        tok, nxt = self.token, self.peek()
        if (
            tok.kind is TokenKind.NAME
            and tok.text not in RESERVED_WORDS
            and nxt.kind is TokenKind.NAME
            and nxt.text in RESTRICTION_WORDS
        ):
            prop = self.reference("property", self.advance())
            word = self.advance().text
            if word == "some":
                return Some(prop, self.restriction())
            if word == "only":
                return Only(prop, self.restriction())
            if word == "value":
                return Value(prop, self.reference("individual", self.expect_name("an individual name")))
            return Via(prop, self.reference("ice", self.expect_name("an ICE name")))
        return self.atom()

    def atom(self) -> ClassExpression:
        tok = self.token
        if tok.kind is TokenKind.LPAREN:
            self.advance()
            inner = self.expression()
            if self.token.kind is not TokenKind.RPAREN:
                self.fail(f"expected ')', found {self.token.describe()}")
            self.advance()
            return inner
        if tok.kind is TokenKind.NAME and tok.text not in RESERVED_WORDS:
            return Named(self.reference("class", self.advance()))
        self.fail(f"expected a class expression, found {tok.describe()}")
        raise AssertionError("unreachable")

    # -------------------------------------------------------------------------
    # Resolution
    # -------------------------------------------------------------------------

    def check_references(self, lookup: Callable[[str], Optional[str]]) -> None:
        for category, name, span in self.references:
            found = lookup(name)
            if found == category:
                continue
            if found is None:
                message = f"'{name}' is not declared"
            else:
                message = f"'{name}' is {_a(found)}, expected {_a(category)}"
            self.errors.append(ParseError(span, message, ParseErrorKind.UNKNOWN_NAME))

    def check_ices(self) -> None:
        for name, state in self.ices.items():
            if name in self.aborted:
                continue
            header = state.header or SourceSpan(1, 1)
            if not state.types:
                self.errors.append(ParseError(
                    header, f"ICE '{name}' needs a 'Types:' entry", ParseErrorKind.SYNTAX))
            if not state.aboutness:
                self.errors.append(ParseError(
                    header,
                    f"ICE '{name}' needs exactly one aboutness entry "
                    f"(Describes-only:, Prescribes-only:, Represents-only: or Designates-only:)",
                    ParseErrorKind.SYNTAX,
                ))
            for _, span in state.aboutness[1:]:
                self.errors.append(ParseError(
                    span, f"ICE '{name}' already has an aboutness entry", ParseErrorKind.SYNTAX))


def _base_category(base: Optional[Ontology], name: str) -> Optional[str]:
    if base is None:
        return None
    for category, names in (("class", base.classes), ("property", base.properties),
                            ("individual", base.individuals), ("ice", base.ices)):
        if name in names:
            return category
    return None


# =============================================================================
# Public API
# =============================================================================

def parse(text: str, base: Optional[Ontology] = None, source: str = "<text>") -> Ontology:
    """
    Parse a .upo document.

    Args:
        text: The document (LF or CRLF line endings)
        base: An ontology whose declarations the document may reference
            (normally the prelude); the result includes it
        source: Name used in log records and error messages

    Returns:
        The parsed ontology

    Raises:
        ParseFailure: With every error found; no partial result is returned
    """
    parser = _Parser(tokenize(text))
    parser.parse_document()

    for name, category in parser.declared.items():
        found = _base_category(base, name)
        if found is not None and found != category:
            parser.errors.append(ParseError(
                parser.declaration_spans[name],
                f"'{name}' is already declared as {_a(found)}",
                ParseErrorKind.DUPLICATE_DECLARATION,
            ))

    parser.check_ices()
    parser.check_references(lambda name: parser.declared.get(name) or _base_category(base, name))

    if parser.errors:
        get_logger().parse_failed(source, len(parser.errors))
        raise ParseFailure(parser.errors, source)

    axioms: dict[Axiom, SourceSpan] = dict(parser.axioms)
    ices = dict(base.ices) if base is not None else {}
    for name, state in parser.ices.items():
        previous = ices.get(name)
        ices[name] = IceDeclaration(
            name,
            tuple(state.types) + (previous.types if previous else ()),
            state.mode or (previous.mode if previous else None),
            state.cycle or (previous.cycle if previous else None),
        )
        for assertion, span in state.aboutness:
            axioms.setdefault(AboutnessAxiom(assertion), span)

    def names(category: str) -> frozenset[str]:
        return frozenset(n for n, c in parser.declared.items() if c == category)

    spans: dict = dict(base.spans) if base is not None else {}
    spans.update(parser.declaration_spans)
    spans.update(axioms)
    base_axioms = base.axioms if base is not None else ()
    inherited = set(base_axioms)
    try:
        ontology = Ontology(
            classes=names("class") | (base.classes if base else frozenset()),
            properties=names("property") | (base.properties if base else frozenset()),
            individuals=names("individual") | (base.individuals if base else frozenset()),
            ices=ices,
            axioms=base_axioms + tuple(a for a in axioms if a not in inherited),
            spans=spans,
        )
    except UpoError as e:
        get_logger().parse_failed(source, 1)
        raise ParseFailure(
            [ParseError(SourceSpan(1, 1), str(e), ParseErrorKind.SYNTAX)], source
        ) from e

    get_logger().parse_completed(source, parser.frames, len(ontology.axioms))
    return ontology


def parse_file(path: str | Path, base: Optional[Ontology] = None) -> Ontology:
    """Read and parse a UTF-8 .upo file."""
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), base=base, source=str(path))


def parse_class_expression(text: str, ontology: Ontology) -> ClassExpression:
    """
    Parse an expression fragment against the names of `ontology`.

    Raises:
        ParseFailure: On lexical, syntax or name errors
    """
    parser = _Parser(tokenize(text))
    expression: Optional[ClassExpression] = None
    try:
        parser.check_parentheses()
        expression = parser.expression()
        if parser.token.kind is not TokenKind.EOF:
            parser.fail(f"unexpected {parser.token.describe()}")
    except _FrameAbort:
        pass
    parser.check_references(lambda name: _base_category(ontology, name))
    if parser.errors or expression is None:
        raise ParseFailure(parser.errors, "<expression>")
    return expression


# =============================================================================
# Serializer
# =============================================================================

_PRECEDENCE = {Or: 1, And: 2, Not: 3, Some: 4, Only: 4, Value: 4, Via: 4, Named: 5}


def render_expression(expression: ClassExpression) -> str:
    """Print an expression with the fewest parentheses that reparse to the same tree."""

    def wrap(child: ClassExpression, minimum: int) -> str:
        text = render_expression(child)
        return f"({text})" if _PRECEDENCE[type(child)] < minimum else text

    if isinstance(expression, Named):
        return expression.name
    if isinstance(expression, Or):
        return " or ".join(wrap(op, 2) for op in expression.operands)
    if isinstance(expression, And):
        return " and ".join(wrap(op, 3) for op in expression.operands)
    if isinstance(expression, Not):
        return f"not {wrap(expression.operand, 3)}"
    if isinstance(expression, Some):
        return f"{expression.prop} some {wrap(expression.filler, 4)}"
    if isinstance(expression, Only):
        return f"{expression.prop} only {wrap(expression.filler, 4)}"
    if isinstance(expression, Value):
        return f"{expression.prop} value {expression.individual}"
    return f"{expression.prop} via {expression.ice}"


_FRAME_ORDER = (("class", "Class"), ("property", "ObjectProperty"),
                ("individual", "Individual"), ("ice", "ICE"))


def _owner(axiom: Axiom) -> str:
    if isinstance(axiom, (SubClassOf, SubPropertyOf)):
        return axiom.sub
    if isinstance(axiom, EquivalentTo):
        return axiom.cls
    if isinstance(axiom, ClassAssertion):
        return axiom.individual
    if isinstance(axiom, DisjointWith):
        return axiom.first
    if isinstance(axiom, (Domain, Range, PropertyDefinition)):
        return axiom.prop
    if isinstance(axiom, Fact):
        return axiom.subject
    if isinstance(axiom, AboutnessAxiom):
        return axiom.assertion.ice
    return axiom.ice


def _joined(values: Iterable[str]) -> str:
    return ", ".join(sorted(set(values)))


def _frame_lines(ontology: Ontology, category: str, name: str, axioms: list[Axiom]) -> list[str]:
    def of(kind: type) -> list:
        return [a for a in axioms if isinstance(a, kind)]

    lines: list[str] = []

    def entry(key: str, value: str) -> None:
        if value:
            lines.append(f"    {key}: {value}")

    if category == "class":
        entry("SubClassOf", _joined(a.sup for a in of(SubClassOf)))
        for text in sorted(render_expression(a.expression) for a in of(EquivalentTo)):
            entry("EquivalentTo", text)
        entry("DisjointWith", _joined(a.second for a in of(DisjointWith)))
    elif category == "property":
        entry("SubPropertyOf", _joined(a.sup for a in of(SubPropertyOf)))
        entry("Domain", _joined(a.cls for a in of(Domain)))
        entry("Range", _joined(a.cls for a in of(Range)))
        for a in of(PropertyDefinition):
            entry("DefinedBy", f"{render_expression(a.domain)}, {render_expression(a.range)}")
    elif category == "individual":
        entry("Types", _joined(a.cls for a in of(ClassAssertion)))
    else:
        decl = ontology.ices[name]
        entry("Types", _joined(decl.types))
        if decl.mode:
            entry("Mode", decl.mode)
        if decl.cycle:
            entry("Cycle", decl.cycle)
        about = sorted(
            (f"{a.assertion.relation.keyword}-{a.assertion.constraint_form.value}",
             render_expression(a.assertion.target))
            for a in of(AboutnessAxiom)
        )
        for key, text in about:
            entry(key, text)
        entry("Represents-fact", _joined(a.individual for a in of(RepresentsFact)))
    facts = sorted({(a.prop, a.obj) for a in of(Fact)})
    entry("Facts", ", ".join(f"{p} {o}" for p, o in facts))
    return lines


def serialize(ontology: Ontology, omit: Optional[Ontology] = None) -> str:
    """
    Canonical text form of an ontology.

    Frames are sorted by (kind, name); entries and values are sorted. With
    `omit` (normally the prelude), declarations and axioms it already
    contains are left out unless the frame carries new axioms.
    """
    omitted_axioms = frozenset(omit.axioms) if omit is not None else frozenset()
    by_owner: dict[str, list[Axiom]] = {}
    for axiom in dict.fromkeys(ontology.axioms):
        if axiom in omitted_axioms:
            continue
        by_owner.setdefault(_owner(axiom), []).append(axiom)

    signature = {
        "class": ontology.classes,
        "property": ontology.properties,
        "individual": ontology.individuals,
        "ice": frozenset(ontology.ices),
    }
    omitted = {
        "class": omit.classes if omit else frozenset(),
        "property": omit.properties if omit else frozenset(),
        "individual": omit.individuals if omit else frozenset(),
        "ice": frozenset(omit.ices) if omit else frozenset(),
    }

    frames: list[str] = []
    for category, keyword in _FRAME_ORDER:
        for name in sorted(signature[category]):
            axioms = by_owner.get(name, [])
            if name in omitted[category] and not axioms:
                continue
            lines = [f"{keyword}: {name}"] + _frame_lines(ontology, category, name, axioms)
            frames.append("\n".join(lines))
    return "\n\n".join(frames) + "\n" if frames else ""
