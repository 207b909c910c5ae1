"""Propositional formulae: AST, parser, printer and truth-functional semantics.

Concrete syntax uses ASCII connectives ``~ & | -> <->``. Precedence binds
tightest to loosest in that order; ``->`` and ``<->`` associate to the right,
``&`` and ``|`` to the left.
"""

from __future__ import annotations

import itertools
import re
from typing import Iterable, Mapping

__all__ = [
    "Formula",
    "Atom",
    "Not",
    "Binary",
    "And",
    "Or",
    "Implies",
    "Iff",
    "FormulaSyntaxError",
    "MissingAtomError",
    "AtomCapExceeded",
    "parse",
    "to_text",
    "atoms",
    "evaluate",
    "entails",
    "ENTAILS_ATOM_CAP",
]

ENTAILS_ATOM_CAP = 20

_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


class Formula:
    """Immutable propositional formula.

    Equality is purely structural. Each instance caches its hash at
    construction so comparing unequal formulae is usually O(1).
    """

    __slots__ = ("_hash",)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Formula) or self._hash != other._hash:
            return False
        # Iterative so that very deep chains (long straight DANTs) cannot
        # blow the interpreter stack.
        stack = [(self, other)]
        while stack:
            a, b = stack.pop()
            if a is b:
                continue
            if type(a) is not type(b) or a._hash != b._hash:
                return False
            if isinstance(a, Atom):
                if a.name != b.name:
                    return False
            elif isinstance(a, Not):
                stack.append((a.child, b.child))
            else:
                stack.append((a.right, b.right))
                stack.append((a.left, b.left))
        return True

    def __ne__(self, other: object) -> bool:
        return not self == other

    def __str__(self) -> str:
        return to_text(self)


class Atom(Formula):
    __slots__ = ("name",)

    def __init__(self, name: str):
        if not isinstance(name, str) or not _ATOM_RE.fullmatch(name):
            raise ValueError(f"invalid atom name {name!r}")
        object.__setattr__(self, "name", name)
        object.__setattr__(self, "_hash", hash(("atom", name)))

    def __repr__(self) -> str:
        return f"Atom({self.name!r})"

    def __reduce__(self):
        return (Atom, (self.name,))


class Not(Formula):
    __slots__ = ("child",)

    def __init__(self, child: Formula):
        object.__setattr__(self, "child", child)
        object.__setattr__(self, "_hash", hash(("not", child._hash)))

    def __repr__(self) -> str:
        return f"Not({self.child!r})"

    def __reduce__(self):
        return (Not, (self.child,))


class Binary(Formula):
    """Base for the four binary connectives."""

    __slots__ = ("left", "right")
    symbol = "?"

    def __init__(self, left: Formula, right: Formula):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(
            self, "_hash", hash((self.symbol, left._hash, right._hash))
        )

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.left!r}, {self.right!r})"

    def __reduce__(self):
        return (type(self), (self.left, self.right))


class And(Binary):
    __slots__ = ()
    symbol = "&"


class Or(Binary):
    __slots__ = ()
    symbol = "|"


class Implies(Binary):
    __slots__ = ()
    symbol = "->"


class Iff(Binary):
    __slots__ = ()
    symbol = "<->"


# --------------------------------------------------------------------------
# Printing
# --------------------------------------------------------------------------


def to_text(f: Formula) -> str:
    """Fully parenthesized ASCII form; ``parse(to_text(f)) == f``."""
    parts: list[str] = []
    # Explicit stack of pending work: formulae to emit or literal strings.
    stack: list[Formula | str] = [f]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
        elif isinstance(item, Atom):
            parts.append(item.name)
        elif isinstance(item, Not):
            parts.append("~")
            stack.append(item.child)
        else:
            stack.append(")")
            stack.append(item.right)
            stack.append(f" {item.symbol} ")
            stack.append(item.left)
            parts.append("(")
    return "".join(parts)


# --------------------------------------------------------------------------
# Parsing
# --------------------------------------------------------------------------


class FormulaSyntaxError(ValueError):
    """Raised by :func:`parse`; ``offset`` is a UTF-8 byte offset."""

    def __init__(self, text: str, char_pos: int, expected: str, found: str):
        self.text = text
        self.offset = len(text[:char_pos].encode("utf-8"))
        self.expected = expected
        self.found = found
        super().__init__(
            f"syntax error at byte {self.offset}: expected {expected}, found {found}"
        )


_TOKEN_RE = re.compile(r"\s*(?:(<->|->|[~&|()])|([A-Za-z_][A-Za-z0-9_]*))")

# binding power, right associative?, constructor
_BINARY = {
    "<->": (1, True, Iff),
    "->": (2, True, Implies),
    "|": (3, False, Or),
    "&": (4, False, And),
}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            while pos < n and text[pos].isspace():
                pos += 1
            if pos >= n:
                break
            raise FormulaSyntaxError(
                text, pos, "a connective, parenthesis or atom", repr(text[pos])
            )
        if m.group(1):
            tokens.append(("op", m.group(1), m.start(1)))
        else:
            tokens.append(("atom", m.group(2), m.start(2)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


def parse(text: str | bytes) -> Formula:
    """Parse the ASCII concrete syntax into a :class:`Formula`.

    Operator-precedence (shunting-yard) parser; it uses no recursion, so
    nesting depth is bounded only by memory.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    tokens = _tokenize(text)
    operands: list[Formula] = []
    # entries: ("(", pos) | ("~", pos) | (binary-op, pos)
    ops: list[tuple[str, int]] = []

    def reduce_top() -> None:
        op, _ = ops.pop()
        if op == "~":
            operands.append(Not(operands.pop()))
        else:
            right = operands.pop()
            left = operands.pop()
            operands.append(_BINARY[op][2](left, right))

    expect_operand = True
    for kind, value, pos in tokens:
        if expect_operand:
            if kind == "atom":
                operands.append(Atom(value))
                # a completed operand closes any pending negations
                while ops and ops[-1][0] == "~":
                    reduce_top()
                expect_operand = False
            elif value == "~":
                ops.append(("~", pos))
            elif value == "(":
                ops.append(("(", pos))
            else:
                found = "end of input" if kind == "end" else repr(value)
                raise FormulaSyntaxError(text, pos, "an atom, '~' or '('", found)
            continue

        if kind == "end" or value == ")":
            while ops and ops[-1][0] != "(":
                reduce_top()
            if kind == "end":
                if ops:
                    raise FormulaSyntaxError(text, pos, "')'", "end of input")
                break
            if not ops:
                raise FormulaSyntaxError(text, pos, "a binary connective or end of input", "')'")
            ops.pop()
            while ops and ops[-1][0] == "~":
                reduce_top()
        elif value in _BINARY:
            prec, right_assoc, _ = _BINARY[value]
            while ops and ops[-1][0] in _BINARY:
                top_prec = _BINARY[ops[-1][0]][0]
                if top_prec > prec or (top_prec == prec and not right_assoc):
                    reduce_top()
                else:
                    break
            ops.append((value, pos))
            expect_operand = True
        else:
            raise FormulaSyntaxError(
                text, pos, "a binary connective, ')' or end of input", repr(value)
            )

    assert len(operands) == 1 and not ops
    return operands[0]


# --------------------------------------------------------------------------
# Semantics
# --------------------------------------------------------------------------


class MissingAtomError(KeyError):
    pass


class AtomCapExceeded(ValueError):
    pass


def _subformulae(f: Formula):
    stack = [f]
    while stack:
        g = stack.pop()
        yield g
        if isinstance(g, Not):
            stack.append(g.child)
        elif isinstance(g, Binary):
            stack.append(g.right)
            stack.append(g.left)


def atoms(f: Formula) -> frozenset[str]:
    return frozenset(g.name for g in _subformulae(f) if isinstance(g, Atom))


def evaluate(f: Formula, assignment: Mapping[str, bool]) -> bool:
    """Classical truth value of ``f`` under ``assignment``."""
    # post-order evaluation with an explicit stack
    values: dict[int, bool] = {}
    stack: list[tuple[Formula, bool]] = [(f, False)]
    while stack:
        g, expanded = stack.pop()
        if isinstance(g, Atom):
            try:
                values[id(g)] = bool(assignment[g.name])
            except KeyError:
                raise MissingAtomError(g.name) from None
        elif not expanded:
            stack.append((g, True))
            if isinstance(g, Not):
                stack.append((g.child, False))
            else:
                stack.append((g.left, False))
                stack.append((g.right, False))
        elif isinstance(g, Not):
            values[id(g)] = not values[id(g.child)]
        else:
            a, b = values[id(g.left)], values[id(g.right)]
            if isinstance(g, And):
                values[id(g)] = a and b
            elif isinstance(g, Or):
                values[id(g)] = a or b
            elif isinstance(g, Implies):
                values[id(g)] = (not a) or b
            else:
                values[id(g)] = a == b
    return values[id(f)]


def entails(gamma: Iterable[Formula], f: Formula) -> bool:
    """Semantic entailment by exhaustive truth-table enumeration.

    Raises :class:`AtomCapExceeded` beyond ``ENTAILS_ATOM_CAP`` atoms.
    """
    gamma = list(gamma)
    names: set[str] = set(atoms(f))
    for g in gamma:
        names |= atoms(g)
    if len(names) > ENTAILS_ATOM_CAP:
        raise AtomCapExceeded(
            f"{len(names)} atoms exceeds the cap of {ENTAILS_ATOM_CAP}"
        )
    order = sorted(names)
    for values in itertools.product((False, True), repeat=len(order)):
        a = dict(zip(order, values))
        if all(evaluate(g, a) for g in gamma) and not evaluate(f, a):
            return False
    return True
