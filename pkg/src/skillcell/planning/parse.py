"""S-expression parsing for goals and the emitted PDDL subset."""

from __future__ import annotations

from ..errors import ParseError
from .model import Goal, Literal, PddlAction, PddlDomain, PddlPredicate, PddlProblem


def _tokenize(text: str):
    """(token, position) pairs; positions are 0-based character offsets."""
    tokens = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append((ch, i))
            i += 1
        else:
            start = i
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
            tokens.append((text[start:i], start))
    return tokens


class _Reader:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self):
        if self.pos >= len(self.tokens):
            raise ParseError("unexpected end of input", column=self._offset())
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok[0]

    def expect(self, token):
        got = self.next()
        if got != token:
            raise ParseError(f"expected {token!r}, got {got!r}", column=self._offset())
        return got

    def _offset(self):
        if self.pos < len(self.tokens):
            return self.tokens[self.pos][1]
        return self.tokens[-1][1] if self.tokens else 0

    def read_sexpr(self):
        tok = self.next()
        if tok == "(":
            items = []
            while True:
                nxt = self.peek()
                if nxt is None:
                    raise ParseError("unbalanced '('; input ended inside a form", column=self._offset())
                if nxt == ")":
                    self.next()
                    return items
                items.append(self.read_sexpr())
        if tok == ")":
            raise ParseError("unexpected ')'", column=self._offset())
        return tok

    def done(self):
        return self.pos >= len(self.tokens)


def _literal_from_sexpr(expr, where: str) -> Literal:
    if not isinstance(expr, list) or not expr:
        raise ParseError(f"{where}: expected an atom list, got {expr!r}")
    if expr[0] == "not":
        if len(expr) != 2:
            raise ParseError(f"{where}: (not ...) takes exactly one atom")
        inner = _literal_from_sexpr(expr[1], where)
        return inner.negate()
    for part in expr:
        if not isinstance(part, str):
            raise ParseError(f"{where}: nested form where a symbol was expected")
    return Literal(expr[0], tuple(expr[1:]), True)


def parse_goal(text: str) -> Goal:
    """Parse a PDDL goal: a single atom, a negated atom, or (and ...)."""
    reader = _Reader(text)
    if reader.done():
        raise ParseError("empty goal", column=0)
    expr = reader.read_sexpr()
    if not reader.done():
        raise ParseError("trailing tokens after goal", column=reader._offset())
    if isinstance(expr, list) and expr and expr[0] == "and":
        literals = [_literal_from_sexpr(e, "goal") for e in expr[1:]]
    else:
        literals = [_literal_from_sexpr(expr, "goal")]
    if not literals:
        raise ParseError("goal conjunction is empty")
    return Goal(literals)


def _typed_list(items, where: str):
    """Parse `a b - T c - U d e` into [(name, type-or-None), ...]."""
    out = []
    pending = []
    i = 0
    while i < len(items):
        tok = items[i]
        if tok == "-":
            if i + 1 >= len(items):
                raise ParseError(f"{where}: dangling '-'")
            t = items[i + 1]
            out.extend((name, t) for name in pending)
            pending = []
            i += 2
        else:
            pending.append(tok)
            i += 1
    out.extend((name, None) for name in pending)
    return out


def parse_domain(text: str) -> PddlDomain:
    reader = _Reader(text)
    expr = reader.read_sexpr()
    if not (isinstance(expr, list) and expr and expr[0] == "define"):
        raise ParseError("domain file must start with (define ...)")
    header = expr[1]
    if not (isinstance(header, list) and header[0] == "domain"):
        raise ParseError("expected (domain NAME)")
    domain = PddlDomain(header[1], {}, [], [])
    for section in expr[2:]:
        tag = section[0]
        if tag == ":requirements":
            continue
        if tag == ":types":
            for name, parent in _typed_list(section[1:], ":types"):
                domain.types[name] = parent
        elif tag == ":predicates":
            for p in section[1:]:
                params = tuple(_typed_list(p[1:], f"predicate {p[0]}"))
                domain.predicates.append(PddlPredicate(p[0], params))
        elif tag == ":action":
            name = section[1]
            body = dict(zip(section[2::2], section[3::2]))
            params = tuple(_typed_list(body[":parameters"], f"action {name}"))
            pre = _conjunction(body[":precondition"], f"action {name} precondition")
            eff = _conjunction(body[":effect"], f"action {name} effect")
            domain.actions.append(PddlAction(name, params, pre, eff))
        else:
            raise ParseError(f"unknown domain section {tag}")
    return domain


def _conjunction(expr, where: str):
    if isinstance(expr, list) and expr and expr[0] == "and":
        return tuple(_literal_from_sexpr(e, where) for e in expr[1:])
    return (_literal_from_sexpr(expr, where),)


def parse_problem(text: str) -> PddlProblem:
    reader = _Reader(text)
    expr = reader.read_sexpr()
    if not (isinstance(expr, list) and expr and expr[0] == "define"):
        raise ParseError("problem file must start with (define ...)")
    header = expr[1]
    if not (isinstance(header, list) and header[0] == "problem"):
        raise ParseError("expected (problem NAME)")
    problem = PddlProblem(header[1], "", {}, [], [])
    for section in expr[2:]:
        tag = section[0]
        if tag == ":domain":
            problem.domain = section[1]
        elif tag == ":objects":
            for name, t in _typed_list(section[1:], ":objects"):
                problem.objects[name] = t
        elif tag == ":init":
            problem.init = [_literal_from_sexpr(e, ":init") for e in section[1:]]
        elif tag == ":goal":
            problem.goal = list(_conjunction(section[1], ":goal"))
        else:
            raise ParseError(f"unknown problem section {tag}")
    return problem
