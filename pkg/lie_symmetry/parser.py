"""Parse expressions, system files (.sys) and vector-field files (.vf).

Expression grammar:
    expression := term (('+' | '-') term)*
    term       := unary (('*' unary) | ('/' divisor))*
    unary      := ('+' | '-') unary | power
    power      := atom ('^' NUMBER)?
    atom       := NUMBER | NAME | '(' expression ')'
    divisor    := NUMBER | '(' NUMBER ('/' NUMBER)? ')'

Names are the base variables x, y, u, jet coordinates such as u1 or u112, and
the symbols xi, tau, phi, F1, F2, F3, G with derivative suffixes _x, _y, _u,
_u1 (repeatable).  Files are sequences of assignments `NAME = expression`;
assignments may share a line, and `#` starts a comment.
"""
from dataclasses import dataclass
from fractions import Fraction
import logging
import re

from .errors import DegenerateSystemError, ExprError, ParseError
from .expr import (BASE_VARIABLES, DEFAULT_EXPONENT_BOUND, FUNCTION_NAMES,
                   RHS_ARGUMENTS, BaseVar, FnDeriv, JetVar, RhsDeriv,
                   normalize)
from .pde_system import PdeSystem
from .prolong import VectorField

logger = logging.getLogger(__name__)

TOKEN_PATTERN = re.compile(r'''
      (?P<COMMENT>\#[^\n]*)
    | (?P<NEWLINE>\n)
    | (?P<SPACE>[ \t\r]+)
    | (?P<NUMBER>\d+)
    | (?P<NAME>[A-Za-z][A-Za-z0-9]*(?:_[A-Za-z0-9]+)*)
    | (?P<OPERATOR>[-+*/^()=])
''', re.VERBOSE)

JET_NAME_PATTERN = re.compile(r'u[12]+')

SYSTEM_FIELDS = ('F1', 'F2', 'F3', 'G')
VECTOR_FIELD_COMPONENTS = ('xi', 'tau', 'phi')

# Atoms each assigned quantity may depend on.
ALLOWED_VARIABLES = {
    'F1': ('x', 'y', 'u'),
    'F2': ('x', 'y', 'u'),
    'F3': ('x', 'y', 'u', 'u1'),
    'G': ('x', 'y', 'u', 'u1'),
    'xi': ('x', 'y', 'u'),
    'tau': ('x', 'y', 'u'),
    'phi': ('x', 'y', 'u')
}


@dataclass(frozen=True)
class SourceSpan:
    """Position of a token: 1-based line and column, 0-based offset."""
    line: int
    column: int
    offset: int

    def __str__(self):
        return f'line {self.line}, column {self.column}'


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    span: SourceSpan


def tokenize(text):
    """Split text into NUMBER, NAME and OPERATOR tokens.

    Args:
        text:  Source text

    Returns:
        List of Tokens, ending with an END token
    """
    tokens = []
    line = 1
    line_start = 0
    offset = 0
    while offset < len(text):
        match = TOKEN_PATTERN.match(text, offset)
        if match is None:
            raise ParseError(f'unexpected character {text[offset]!r}',
                             SourceSpan(line, offset - line_start + 1, offset))
        kind = match.lastgroup
        if kind == 'NEWLINE':
            line += 1
            line_start = match.end()
        elif kind not in ('SPACE', 'COMMENT'):
            tokens.append(Token(kind, match.group(),
                                SourceSpan(line, offset - line_start + 1,
                                           offset)))
        offset = match.end()
    tokens.append(Token('END', '', SourceSpan(line, offset - line_start + 1,
                                              offset)))
    return tokens


def resolve_name(name, span, allowed_variables=None):
    """Map a NAME token to an atom.

    Args:
        name:  Token text, e.g. 'u11' or 'xi_x_u'
        span:  SourceSpan used in error messages
        allowed_variables:  Variables the surrounding quantity may depend on,
            or None to accept every atom

    Returns:
        BaseVar, JetVar, FnDeriv or RhsDeriv
    """
    head, *suffixes = name.split('_')
    try:
        if not suffixes and head in BASE_VARIABLES:
            atom = BaseVar(head)
        elif not suffixes and JET_NAME_PATTERN.fullmatch(head):
            atom = JetVar(head[1:])
        elif head in FUNCTION_NAMES:
            atom = FnDeriv(head, tuple(suffixes))
        elif head in RHS_ARGUMENTS:
            atom = RhsDeriv(head, tuple(suffixes))
        else:
            raise ParseError(f'unknown name {name!r}', span)
    except ExprError as error:
        raise ParseError(f'invalid symbol {name!r}: {error}', span) from error
    if allowed_variables is not None:
        _check_allowed(atom, name, span, allowed_variables)
    return atom


def _check_allowed(atom, name, span, allowed_variables):
    if isinstance(atom, BaseVar):
        permitted = atom.name in allowed_variables
    elif isinstance(atom, JetVar):
        permitted = str(atom) in allowed_variables
    else:
        permitted = False
    if not permitted:
        raise ParseError(f'{name!r} may not appear here; allowed variables '
                         f'are {", ".join(allowed_variables)}', span)


class ExpressionParser:
    """Recursive-descent parser over a token list.

    The parser builds a raw expression tree and leaves expansion to
    expr.normalize.
    """

    def __init__(self, tokens, exponent_bound=DEFAULT_EXPONENT_BOUND):
        self.tokens = tokens
        self.position = 0
        self.exponent_bound = exponent_bound
        self.allowed_variables = None

    @property
    def current(self):
        return self.tokens[self.position]

    def advance(self):
        token = self.tokens[self.position]
        if token.kind != 'END':
            self.position += 1
        return token

    def at(self, text):
        return self.current.kind == 'OPERATOR' and self.current.text == text

    def expect(self, text):
        if not self.at(text):
            raise ParseError(f'expected {text!r}, found '
                             f'{self.current.text or "end of input"!r}',
                             self.current.span)
        return self.advance()

    def expression_value(self):
        """Parse one expression and return its canonical Expr."""
        start = self.current.span
        tree = self.expression()
        try:
            return normalize(tree, self.exponent_bound)
        except ExprError as error:
            raise ParseError(str(error), start) from error

    def expression(self):
        operands = [self.term()]
        while self.at('+') or self.at('-'):
            operator = self.advance().text
            operand = self.term()
            operands.append(operand if operator == '+' else ('-', operand))
        return operands[0] if len(operands) == 1 else ('+', *operands)

    def term(self):
        factors = [self.unary()]
        while self.at('*') or self.at('/'):
            if self.advance().text == '*':
                factors.append(self.unary())
            else:
                factors.append(1 / self.divisor())
        return factors[0] if len(factors) == 1 else ('*', *factors)

    def divisor(self):
        token = self.current
        if token.kind == 'NUMBER':
            value = Fraction(int(self.advance().text))
        elif self.at('('):
            self.advance()
            value = Fraction(int(self.number().text))
            if self.at('/'):
                self.advance()
                denominator = self.number()
                if int(denominator.text) == 0:
                    raise ParseError('division by zero', denominator.span)
                value /= int(denominator.text)
            self.expect(')')
        else:
            raise ParseError('division is only allowed by a literal rational',
                             token.span)
        if value == 0:
            raise ParseError('division by zero', token.span)
        return value

    def number(self):
        if self.current.kind != 'NUMBER':
            raise ParseError(f'expected a number, found '
                             f'{self.current.text or "end of input"!r}',
                             self.current.span)
        return self.advance()

    def unary(self):
        if self.at('-'):
            self.advance()
            return ('-', self.unary())
        if self.at('+'):
            self.advance()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.at('^'):
            return base
        self.advance()
        token = self.number()
        exponent = int(token.text)
        if exponent < 1:
            raise ParseError('exponent must be a positive integer', token.span)
        if exponent > self.exponent_bound:
            raise ParseError(f'exponent {exponent} exceeds the bound '
                             f'{self.exponent_bound}', token.span)
        return ('^', base, exponent)

    def atom(self):
        token = self.current
        if token.kind == 'NUMBER':
            self.advance()
            return Fraction(int(token.text))
        if token.kind == 'NAME':
            self.advance()
            return resolve_name(token.text, token.span, self.allowed_variables)
        if self.at('('):
            self.advance()
            tree = self.expression()
            self.expect(')')
            return tree
        raise ParseError(f'unexpected {token.text or "end of input"!r}',
                         token.span)


def parse_expr(text, exponent_bound=DEFAULT_EXPONENT_BOUND):
    """Parse a single expression into canonical form.

    Args:
        text:  Expression text, e.g. 'x^2/2 - 2*y*u'
        exponent_bound:  Largest accepted exponent

    Returns:
        Expr
    """
    parser = ExpressionParser(tokenize(text), exponent_bound)
    value = parser.expression_value()
    if parser.current.kind != 'END':
        raise ParseError(f'unexpected {parser.current.text!r}',
                         parser.current.span)
    return value


def parse_assignments(text, targets, exponent_bound=DEFAULT_EXPONENT_BOUND):
    """Parse a sequence of `NAME = expression` assignments.

    Args:
        text:  File contents
        targets:  Names that may be assigned
        exponent_bound:  Largest accepted exponent

    Returns:
        List of (name, Expr, SourceSpan of the name) in file order
    """
    parser = ExpressionParser(tokenize(text), exponent_bound)
    assignments = []
    while parser.current.kind != 'END':
        token = parser.current
        if token.kind != 'NAME' or token.text not in targets:
            raise ParseError(f'expected an assignment to one of '
                             f'{", ".join(targets)}', token.span)
        parser.advance()
        parser.expect('=')
        parser.allowed_variables = ALLOWED_VARIABLES[token.text]
        assignments.append((token.text, parser.expression_value(), token.span))
    return assignments


def _end_span(text):
    return tokenize(text)[-1].span


def parse_system(text, exponent_bound=DEFAULT_EXPONENT_BOUND):
    """Parse a system file assigning F1, F2, F3 and G.

    Returns:
        PdeSystem

    Raises:
        ParseError:  On syntax errors, duplicate or missing assignments
        DegenerateSystemError:  If F2 is the zero expression
    """
    fields = {}
    for name, value, span in parse_assignments(text, SYSTEM_FIELDS,
                                               exponent_bound):
        if name in fields:
            raise ParseError(f'{name} is assigned twice', span)
        fields[name] = value
    missing = [name for name in SYSTEM_FIELDS if name not in fields]
    if missing:
        raise ParseError(f'missing assignment for {", ".join(missing)}',
                         _end_span(text))
    if fields['F2'].is_zero:
        raise DegenerateSystemError(
            'F2 (the coefficient of u1^2 in u2 = F) vanishes identically; the '
            'system is degenerate')
    system = PdeSystem(fields['F1'], fields['F2'], fields['F3'], fields['G'])
    logger.debug('parsed system %s', system.to_text().replace('\n', '; '))
    return system


def parse_vector_fields(text, exponent_bound=DEFAULT_EXPONENT_BOUND):
    """Parse one or more vector-field blocks.

    A new block starts whenever a component that the current block already
    assigns is assigned again.

    Returns:
        List of concrete VectorFields, in file order
    """
    blocks = []
    current = {}
    for name, value, span in parse_assignments(text, VECTOR_FIELD_COMPONENTS,
                                               exponent_bound):
        if name in current:
            blocks.append(current)
            current = {}
        current[name] = value
        current.setdefault('_span', span)
    if current:
        blocks.append(current)
    if not blocks:
        raise ParseError('no vector field found', _end_span(text))
    fields = []
    for block in blocks:
        missing = [name for name in VECTOR_FIELD_COMPONENTS
                   if name not in block]
        if missing:
            raise ParseError(f'missing assignment for {", ".join(missing)}',
                             block['_span'])
        fields.append(VectorField(block['xi'], block['tau'], block['phi']))
    return fields


def parse_vector_field(text, exponent_bound=DEFAULT_EXPONENT_BOUND):
    """Parse a single vector field `xi = ... tau = ... phi = ...`.

    Returns:
        Concrete VectorField
    """
    fields = parse_vector_fields(text, exponent_bound)
    if len(fields) != 1:
        raise ParseError(f'expected one vector field, found {len(fields)}',
                         _end_span(text))
    return fields[0]
