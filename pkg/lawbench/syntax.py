"""Surface syntax for values.

    42  sym  ()  (a, b)  (a, b, c)  [a, b]  {a, b}  fn{k -> v}
    E  L x  L(x)  Var x  N(l, r)  Op(t1, t2)  Op
    Just x  Nothing  ok x  exc e  #tag x  #tag

Prefix constructors take one argument and nest to the right, so ``Just L 5``
is ``Just (L 5)``. ``show_value`` prints in the same grammar.
"""

import re

from lawbench.errors import ValueSyntaxError
from lawbench.values import (
    EMPTY,
    UNIT,
    Atom,
    EmptyTree,
    FnTable,
    FnV,
    Leaf,
    ListV,
    Node,
    OpNode,
    Pair,
    SetV,
    Tagged,
    TupleV,
    UnitV,
    Val,
    make_set,
    product_value,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<int>-?\d+)|(?P<hash>#[A-Za-z_][\w']*)|(?P<ident>[A-Za-z_][\w']*)"
    r"|(?P<arrow>->)|(?P<punct>[()\[\]{},]))"
)

_PREFIX = {"L": "leaf", "Var": "leaf", "Just": "just", "ok": "ok", "exc": "exc"}
_STOP = {",", ")", "]", "}", "->"}
MAX_NESTING = 100


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            if text[position:].strip() == "":
                break
            match = _TOKEN.match(text, position)
            if match is None or match.end() == position:
                raise ValueSyntaxError(text, position, "a token")
            kind = match.lastgroup
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            position = match.end()
        self.cursor = 0
        self.depth = 0

    def peek(self) -> tuple[str, str, int] | None:
        return self.tokens[self.cursor] if self.cursor < len(self.tokens) else None

    def take(self, expected: str | None = None) -> tuple[str, str, int]:
        token = self.peek()
        if token is None or (expected is not None and token[1] != expected):
            where = token[2] if token else len(self.text)
            raise ValueSyntaxError(self.text, where, repr(expected) if expected else "a value")
        self.cursor += 1
        return token

    def sequence(self, close: str) -> list[Val]:
        items: list[Val] = []
        token = self.peek()
        if token is not None and token[1] == close:
            self.take(close)
            return items
        items.append(self.value())
        while self.peek() is not None and self.peek()[1] == ",":
            self.take(",")
            items.append(self.value())
        self.take(close)
        return items

    def starts_value(self) -> bool:
        token = self.peek()
        return token is not None and token[1] not in _STOP

    def value(self) -> Val:
        if self.depth >= MAX_NESTING:
            token = self.peek()
            where = token[2] if token else len(self.text)
            raise ValueSyntaxError(self.text, where, f"at most {MAX_NESTING} levels of nesting")
        self.depth += 1
        try:
            return self._value()
        finally:
            self.depth -= 1

    def _value(self) -> Val:
        kind, text, _ = self.take()
        if kind == "int":
            return Atom(int(text))
        if kind == "hash":
            payload = self.value() if self.starts_value() else None
            return Tagged(text[1:], payload)
        if text == "(":
            return product_value(self.sequence(")")) if not self._single_paren() else self._paren()
        if text == "[":
            return ListV(tuple(self.sequence("]")))
        if text == "{":
            return make_set(self.sequence("}"))
        if kind == "ident":
            return self.identifier(text)
        raise ValueSyntaxError(self.text, self.tokens[self.cursor - 1][2], "a value")

    def _single_paren(self) -> bool:
        # "(x)" groups, "(x, y)" pairs; look ahead for a top-level comma
        depth = 0
        for _, text, _ in self.tokens[self.cursor :]:
            if text in "([{":
                depth += 1
            elif text in ")]}":
                if depth == 0:
                    return True
                depth -= 1
            elif text == "," and depth == 0:
                return False
        return False

    def _paren(self) -> Val:
        if self.peek() is not None and self.peek()[1] == ")":
            self.take(")")
            return UNIT
        inner = self.value()
        self.take(")")
        return inner

    def identifier(self, name: str) -> Val:
        if name == "fn":
            self.take("{")
            domain: list[Val] = []
            entries: list[Val] = []
            if self.peek() is not None and self.peek()[1] == "}":
                self.take("}")
                return FnV(FnTable((), ()))
            while True:
                domain.append(self.value())
                self.take("->")
                entries.append(self.value())
                separator = self.take()
                if separator[1] == "}":
                    break
                if separator[1] != ",":
                    raise ValueSyntaxError(self.text, separator[2], "',' or '}'")
            return FnV(FnTable(tuple(domain), tuple(entries)))
        if name in _PREFIX:
            argument = self.value()
            tag = _PREFIX[name]
            return Leaf(argument) if tag == "leaf" else Tagged(tag, argument)
        if name == "Nothing":
            return Tagged("nothing", None)
        if name == "E":
            return EMPTY
        if name[0].isupper():
            children: list[Val] = []
            if self.peek() is not None and self.peek()[1] == "(":
                self.take("(")
                children = self.sequence(")")
            if name == "N":
                if len(children) != 2:
                    raise ValueSyntaxError(self.text, self.tokens[self.cursor - 1][2], "N(l, r)")
                return Node(children[0], children[1])
            return OpNode(name, tuple(children))
        return Atom(name)


def parse_value(text: str) -> Val:
    """Parse one value; the whole text must be consumed."""
    parser = _Parser(text)
    result = parser.value()
    if parser.peek() is not None:
        raise ValueSyntaxError(text, parser.peek()[2], "end of input")
    return result


def show_value(v: Val) -> str:
    match v:
        case Atom(value):
            return str(value)
        case UnitV():
            return "()"
        case Pair(fst, snd):
            return f"({show_value(fst)}, {show_value(snd)})"
        case TupleV(items):
            return "(" + ", ".join(map(show_value, items)) + ")"
        case ListV(items):
            return "[" + ",".join(map(show_value, items)) + "]"
        case SetV(items):
            return "{" + ",".join(map(show_value, items)) + "}"
        case EmptyTree():
            return "E"
        case Leaf(value):
            return f"L {show_value(value)}"
        case Node(left, right):
            return f"N({show_value(left)},{show_value(right)})"
        case OpNode(symbol, ()):
            return symbol
        case OpNode(symbol, children):
            return f"{symbol}(" + ",".join(map(show_value, children)) + ")"
        case Tagged("nothing", None):
            return "Nothing"
        case Tagged("just", payload) if payload is not None:
            return f"Just {show_value(payload)}"
        case Tagged(("ok" | "exc") as tag, payload) if payload is not None:
            return f"{tag} {show_value(payload)}"
        case Tagged(tag, None):
            return f"#{tag}"
        case Tagged(tag, payload):
            return f"#{tag} {show_value(payload)}"
        case FnV(table):
            body = ", ".join(f"{show_value(k)} -> {show_value(x)}" for k, x in table.items())
            return "fn{" + body + "}"
    raise TypeError(f"not a value: {v!r}")
