# -*- coding: utf-8 -*-
"""
The session language and the canonical printer.

A session file declares one equation together with the symbols, bivectors
and instantiations that belong to it. Statements end with ``;`` and ``#``
starts a comment::

    indep x y;
    function h1(x, u[x]);
    equation u[x,y] = 0 solve u[x,y];
    bivector B1 = D[x](h1)/2 * p[x] + h1 * p[x,x];
    instantiate poisson: h1 = x;
    expect section B1 = 1/2*pd(h1,2)*p[x]*p[x,x];

Total derivatives ``D[...](e)`` are expanded while parsing; every
expression is a :py:class:`~jetviber.jetcore.DiffPoly` right away.
"""

# jetviber - jet-space calculus for variational bivectors
# Copyright (C) 2024 the jetviber developers
#     The MIT License (MIT), see LICENSE.txt

import os
from collections import OrderedDict, namedtuple
from fractions import Fraction

from . import regex_patterns
from .equations import EquationModel, LeadError
from .jetcore import (
    CONST,
    FUNC,
    JET_U,
    Atom,
    DiffPoly,
    FunctionSymbolDecl,
    JetviberError,
    MultiIndex,
    ParityError,
    substitute,
    total_derivative_multi,
)
from .schouten import Bivector

SESSION_DIR = os.path.join(os.path.dirname(__file__), "sessions")
SESSION_SUFFIX = ".jet"
DEFAULT_BLOCK = "default"

KEYWORDS = (
    "indep",
    "function",
    "constant",
    "equation",
    "bivector",
    "expression",
    "instantiate",
    "expect",
    "suspect",
)
RESERVED = set(KEYWORDS) | {"u", "p", "D", "pd", "solve", "under"}


class SessionError(JetviberError):
    """Lexical, syntactic or binding error in a session text."""

    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = "line {0}, column {1}: {2}".format(line, column, message)
        super().__init__(message)


Token = namedtuple("Token", ["kind", "text", "line", "column"])

Directive = namedtuple("Directive", ["kind", "args", "expr", "block", "line"])
"""``expect KIND args [= expr] [under BLOCK];``"""

Instance = namedtuple("Instance", ["equation", "bivectors", "expressions"])


def tokenize(text):
    """
    Split ``text`` into tokens with 1-based line and column numbers.

    Raises:
        SessionError: on characters outside the language
    """
    tokens = []
    line, line_start = 1, 0
    for match in regex_patterns.TOKEN_PATTERN.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            line += 1
            line_start = match.end()
            continue
        if kind in ("WS", "COMMENT"):
            continue
        if kind == "MISMATCH":
            raise SessionError(
                "Unexpected character {0!r}".format(match.group()), line, column
            )
        tokens.append(Token(kind, match.group(), line, column))
    tokens.append(Token("EOF", "", line, len(text) - line_start + 1))
    return tokens


class Session(object):
    """
    Everything declared by one session text.

    Attributes:
        name (str): short name (file name without suffix)
        indep (list): independent variable names
        functions (OrderedDict): name -> FunctionSymbolDecl
        constants (list): constant names
        equation (EquationModel): the equation
        expressions (OrderedDict): name -> DiffPoly
        bivectors (OrderedDict): name -> Bivector
        instantiations (OrderedDict): block -> {symbol: DiffPoly}
        directives (list of Directive): ``expect`` statements in file order
        suspects (OrderedDict): bivector name -> reason
    """

    def __init__(self, name=None):
        self.name = name
        self.indep = []
        self.functions = OrderedDict()
        self.constants = []
        self.equation = None
        self.expressions = OrderedDict()
        self.bivectors = OrderedDict()
        self.instantiations = OrderedDict()
        self.directives = []
        self.suspects = OrderedDict()
        self._instances = {}

    def is_declared(self, name):
        return (
            name in self.indep
            or name in self.functions
            or name in self.constants
            or name in self.expressions
            or name in self.bivectors
        )

    def bivector(self, name):
        try:
            return self.bivectors[name]
        except KeyError:
            raise SessionError("Unknown bivector {0}".format(name))

    def bindings(self, block=DEFAULT_BLOCK):
        try:
            return self.instantiations[block]
        except KeyError:
            raise SessionError("Unknown instantiation block {0}".format(block))

    def apply(self, bindings):
        """Equation, bivectors and expressions with ``bindings`` substituted."""
        eq = self.equation
        symbols = {a.name for a in eq.F.atoms() if a.kind in (FUNC, CONST)}
        if symbols & set(bindings):
            eq = eq.instantiate(bindings)
        return Instance(
            eq,
            OrderedDict((n, b.instantiate(bindings)) for n, b in self.bivectors.items()),
            OrderedDict((n, substitute(e, bindings)) for n, e in self.expressions.items()),
        )

    def instance(self, block=None):
        """
        The session under an instantiation block (cached per block).

        Keyword Arguments:
            block (str): block name; ``None`` keeps all symbols opaque
        """
        if block is None:
            return Instance(self.equation, self.bivectors, self.expressions)
        if block not in self._instances:
            self._instances[block] = self.apply(self.bindings(block))
        return self._instances[block]

    def __repr__(self):
        return "Session({0}: {1!r}, {2} bivectors)".format(
            self.name, self.equation, len(self.bivectors)
        )


class _Parser(object):
    """Recursive descent over the token list of one text."""

    def __init__(self, text, session):
        self.tokens = tokenize(text)
        self.pos = 0
        self.session = session

    @property
    def current(self):
        return self.tokens[self.pos]

    def peek(self, offset=1):
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def error(self, message, token=None):
        token = token or self.current
        return SessionError(message, token.line, token.column)

    def advance(self):
        token = self.current
        if token.kind != "EOF":
            self.pos += 1
        return token

    def at(self, text):
        token = self.current
        return token.kind in ("OP", "NAME") and token.text == text

    def accept(self, text):
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text):
        if not self.at(text):
            found = self.current.text or "end of input"
            raise self.error("Expected {0!r} but found {1!r}".format(text, found))
        return self.advance()

    def expect_name(self):
        if self.current.kind != "NAME":
            raise self.error("Expected a name")
        return self.advance()

    def expect_number(self):
        if self.current.kind != "NUMBER":
            raise self.error("Expected an integer literal")
        return int(self.advance().text)

    def expect_end(self):
        if self.current.kind != "EOF":
            raise self.error("Unexpected {0!r}".format(self.current.text))

    # statements

    def parse_session(self):
        while self.current.kind != "EOF":
            token = self.current
            if token.kind != "NAME" or token.text not in KEYWORDS:
                raise self.error("Expected a statement")
            self.advance()
            getattr(self, "_statement_" + token.text)(token)
            self.expect(";")
        if self.session.equation is None:
            raise self.error("The session declares no equation")
        return self.session

    def _declare(self, token):
        if token.text in RESERVED:
            raise self.error("{0} is a reserved word".format(token.text), token)
        if self.session.is_declared(token.text):
            raise self.error("Duplicate declaration of {0}".format(token.text), token)

    def _statement_indep(self, keyword):
        while not self.at(";"):
            token = self.expect_name()
            self._declare(token)
            self.session.indep.append(token.text)

    def _statement_constant(self, keyword):
        while not self.at(";"):
            token = self.expect_name()
            self._declare(token)
            self.session.constants.append(token.text)

    def _statement_function(self, keyword):
        token = self.expect_name()
        self._declare(token)
        self.expect("(")
        args = [self._function_arg()]
        while self.accept(","):
            args.append(self._function_arg())
        self.expect(")")
        try:
            decl = FunctionSymbolDecl(token.text, args)
        except JetviberError as err:
            raise self.error(str(err), token)
        self.session.functions[token.text] = decl

    def _function_arg(self):
        token = self.current
        if token.kind == "NAME" and token.text == "u" and self.peek().text == "[":
            return self.jet()
        name = self.expect_name()
        if name.text not in self.session.indep:
            raise self.error(
                "Function argument {0} is not an independent variable".format(name.text), name
            )
        return Atom.indep(name.text)

    def _statement_equation(self, keyword):
        if self.session.equation is not None:
            raise self.error("A session has exactly one equation", keyword)
        lhs = self.expression()
        self.expect("=")
        rhs = self.expression()
        lead = None
        if self.accept("solve"):
            token = self.current
            lead = self.jet()
            if lead.kind != JET_U:
                raise self.error("The lead must be a derivative of u", token)
        try:
            self.session.equation = EquationModel(lhs - rhs, lead=lead, name=self.session.name)
        except (LeadError, ParityError) as err:
            raise self.error(str(err), keyword)

    def _statement_bivector(self, keyword):
        token = self.expect_name()
        self._declare(token)
        self.expect("=")
        value = self.expression()
        try:
            self.session.bivectors[token.text] = Bivector(token.text, value)
        except ParityError as err:
            raise self.error(str(err), token)

    def _statement_expression(self, keyword):
        token = self.expect_name()
        self._declare(token)
        self.expect("=")
        self.session.expressions[token.text] = self.expression()

    def _statement_instantiate(self, keyword):
        block = DEFAULT_BLOCK
        if self.current.kind == "NAME" and self.peek().text == ":":
            block = self.advance().text
            self.advance()
        symbol, value = self.binding()
        self.session.instantiations.setdefault(block, OrderedDict())[symbol] = value

    def _statement_expect(self, keyword):
        kind = self.expect_name().text
        args = []
        while not (self.at(";") or self.at("=") or self.at("under")):
            token = self.current
            if token.kind == "NUMBER":
                args.append(int(self.advance().text))
            elif token.kind == "NAME" and token.text in ("u", "p") and self.peek().text == "[":
                args.append(self.jet())
            elif token.kind == "NAME":
                args.append(self.advance().text)
            else:
                raise self.error("Unexpected {0!r} in expect".format(token.text))
        expr = None
        if self.accept("="):
            expr = self.expression()
        block = None
        if self.accept("under"):
            block = self.expect_name().text
        self.session.directives.append(Directive(kind, tuple(args), expr, block, keyword.line))

    def _statement_suspect(self, keyword):
        name = self.expect_name()
        if self.current.kind != "STRING":
            raise self.error("Expected a quoted reason")
        self.session.suspects[name.text] = self.advance().text[1:-1]

    def binding(self):
        """``symbol = expr`` for a declared function or constant symbol."""
        token = self.expect_name()
        if token.text not in self.session.functions and token.text not in self.session.constants:
            raise self.error(
                "Only function and constant symbols can be instantiated, not {0}".format(
                    token.text
                ),
                token,
            )
        self.expect("=")
        return token.text, self.expression()

    # expressions

    def expression(self):
        sign = 1
        if self.accept("-"):
            sign = -1
        else:
            self.accept("+")
        result = self.term().scale(sign)
        while True:
            if self.accept("+"):
                result = result + self.term()
            elif self.accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self):
        result = self.power()
        while True:
            if self.accept("*"):
                result = result * self.power()
            elif self.at("/"):
                self.advance()
                token = self.current
                divisor = self.expect_number()
                if not divisor:
                    raise self.error("Division by zero", token)
                result = result.scale(Fraction(1, divisor))
            else:
                return result

    def power(self):
        base = self.primary()
        if self.accept("^"):
            base = base ** self.expect_number()
        return base

    def primary(self):
        token = self.current
        if token.kind == "NUMBER":
            return DiffPoly.constant(self.expect_number())
        if self.accept("("):
            value = self.expression()
            self.expect(")")
            return value
        if token.kind != "NAME":
            raise self.error("Unexpected {0!r}".format(token.text or "end of input"))
        if token.text in ("u", "p") and self.peek().text == "[":
            return DiffPoly.from_atom(self.jet())
        if token.text == "D":
            self.advance()
            sigma = self.index()
            self.expect("(")
            value = self.expression()
            self.expect(")")
            return total_derivative_multi(value, sigma)
        if token.text == "pd":
            return DiffPoly.from_atom(self.function_derivative())
        return self.symbol()

    def symbol(self):
        token = self.advance()
        name = token.text
        session = self.session
        if name in session.indep:
            return DiffPoly.from_atom(Atom.indep(name))
        if name in session.constants:
            return DiffPoly.from_atom(Atom.const(name))
        if name in session.functions:
            return DiffPoly.from_atom(session.functions[name].atom())
        if name in session.expressions:
            return session.expressions[name]
        if name in session.bivectors:
            return session.bivectors[name].H_u
        raise self.error("Undeclared name {0}".format(name), token)

    def function_derivative(self):
        self.expect("pd")
        self.expect("(")
        token = self.expect_name()
        decl = self.session.functions.get(token.text)
        if decl is None:
            raise self.error("Undeclared function {0}".format(token.text), token)
        positions = []
        while self.accept(","):
            position_token = self.current
            position = self.expect_number()
            if not 1 <= position <= len(decl.args):
                raise self.error(
                    "{0} has no argument {1}".format(token.text, position), position_token
                )
            positions.append(position)
        self.expect(")")
        return decl.atom(positions)

    def jet(self):
        token = self.expect_name()
        sigma = self.index()
        if token.text == "u":
            return Atom.u(sigma)
        if token.text == "p":
            return Atom.p(sigma)
        raise self.error("Expected u[...] or p[...]", token)

    def index(self):
        self.expect("[")
        variables = []
        if self.accept("]"):
            return MultiIndex()
        while True:
            token = self.current
            if token.kind != "NAME" or token.text not in self.session.indep:
                raise self.error("Expected an independent variable", token)
            variables.append(self.advance().text)
            if self.accept("]"):
                return MultiIndex(variables)
            self.expect(",")


def parse_session(text, name=None):
    """
    Parse a whole session text.

    Arguments:
        text (str): session source

    Keyword Arguments:
        name (str): short name used in reports

    Raises:
        SessionError: with ``line`` and ``column`` of the offending token

    Returns:
        Session
    """
    return _Parser(text, Session(name)).parse_session()


def parse_expression(text, session):
    """Parse one expression in the context of ``session``."""
    parser = _Parser(text, session)
    value = parser.expression()
    parser.expect_end()
    return value


def parse_bindings(text, session):
    """
    Parse ``sym = expr[, sym = expr ...]`` as given to ``--instantiate``.

    Returns:
        OrderedDict: symbol -> DiffPoly
    """
    parser = _Parser(text, session)
    bindings = OrderedDict()
    while True:
        symbol, value = parser.binding()
        bindings[symbol] = value
        if not parser.accept(","):
            break
    parser.expect_end()
    return bindings


def parse_variables(text, session):
    """
    Parse a comma separated list of coefficient variables, e.g. ``x,y,u[x]``.

    Returns:
        list of Atom
    """
    parser = _Parser(text, session)
    variables = []
    while True:
        token = parser.current
        if token.kind == "NAME" and token.text == "u" and parser.peek().text == "[":
            variables.append(parser.jet())
        else:
            name = parser.expect_name()
            if name.text not in session.indep:
                raise parser.error("{0} is not an independent variable".format(name.text), name)
            variables.append(Atom.indep(name.text))
        if not parser.accept(","):
            break
    parser.expect_end()
    return variables


def session_path(name):
    """Path of a shipped session (``wave``) or ``name`` itself if it is a path."""
    if regex_patterns.SESSION_NAME_PATTERN.match(name) and not os.path.exists(name):
        return os.path.join(SESSION_DIR, name + SESSION_SUFFIX)
    return name


def load_session(name):
    """
    Read and parse a session file.

    Arguments:
        name (str): short name of a shipped session or a file path
    """
    path = session_path(name)
    with open(path, "r", encoding="utf-8") as session_file:
        text = session_file.read()
    return parse_session(text, name=os.path.splitext(os.path.basename(path))[0])


def shipped_sessions():
    return sorted(
        os.path.splitext(f)[0] for f in os.listdir(SESSION_DIR) if f.endswith(SESSION_SUFFIX)
    )


def _format_coefficient(value):
    if value.denominator == 1:
        return str(value.numerator)
    return "{0}/{1}".format(value.numerator, value.denominator)


def print_canonical(e):
    """
    Canonical text of a DiffPoly.

    Terms are ordered by descending p-degree and then by the canonical atom
    order; unit coefficients are omitted and a leading minus is written
    ``"- "``. The output parses back to the same polynomial.

    Example:

        >>> print_canonical(DiffPoly.from_atom(Atom.u(["x"])).scale(2))
        '2*u[x]'
    """
    if e.is_zero():
        return "0"
    parts = []
    for even, odd, coeff in e.terms():
        factors = [repr(a) if n == 1 else "{0!r}^{1}".format(a, n) for a, n in even]
        factors.extend(repr(a) for a in odd)
        magnitude = abs(coeff)
        if not factors:
            text = _format_coefficient(magnitude)
        elif magnitude == 1:
            text = "*".join(factors)
        else:
            text = "{0}*{1}".format(_format_coefficient(magnitude), "*".join(factors))
        if not parts:
            parts.append("- " + text if coeff < 0 else text)
        else:
            parts.append(("- " if coeff < 0 else "+ ") + text)
    return " ".join(parts)


__all__ = [
    "Session",
    "SessionError",
    "Directive",
    "tokenize",
    "parse_session",
    "parse_expression",
    "parse_bindings",
    "parse_variables",
    "load_session",
    "shipped_sessions",
    "print_canonical",
]
