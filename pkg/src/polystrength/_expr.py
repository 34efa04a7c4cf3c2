"""Tokenizer and recursive-descent parser for ``+ - * / ^`` expressions.

The parser produces a small tuple AST; callers fold it into whatever ring
they are building (field values, univariate polynomials, ``Poly``).
"""
import re

_TOKEN = re.compile(r"\s*(?:(\d+)|([a-z][a-z0-9]*)|(\*\*|[-+*/^()]))")


class ExprSyntaxError(ValueError):
    pass


def tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, tokens, text):
        self.toks = tokens
        self.i = 0
        self.text = text

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExprSyntaxError(f"unexpected end of expression in {self.text!r}")
        self.i += 1
        return tok

    def expect(self, op):
        tok = self.take()
        if tok != ("op", op):
            raise ExprSyntaxError(f"expected {op!r}, got {tok[1]!r} in {self.text!r}")

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while True:
            tok = self.peek()
            if tok in (("op", "*"), ("op", "/")):
                self.take()
                rhs = self.unary()
                node = ("mul" if tok[1] == "*" else "div", node, rhs)
            elif tok is not None and (tok[0] in ("num", "name") or tok == ("op", "(")):
                # implicit multiplication, e.g. "2x" or "(a)(b)"
                rhs = self.unary()
                node = ("mul", node, rhs)
            else:
                return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise ExprSyntaxError(f"exponent must be a non-negative integer in {self.text!r}")
            node = ("pow", node, tok[1])
        return node

    def atom(self):
        tok = self.take()
        if tok[0] == "num":
            return tok
        if tok[0] == "name":
            return tok
        if tok == ("op", "("):
            node = self.expr()
            self.expect(")")
            return node
        raise ExprSyntaxError(f"unexpected {tok[1]!r} in {self.text!r}")


def parse(text):
    tokens = tokenize(text)
    if not tokens:
        raise ExprSyntaxError("empty expression")
    p = _Parser(tokens, text)
    node = p.expr()
    if p.peek() is not None:
        raise ExprSyntaxError(f"trailing input {p.peek()[1]!r} in {text!r}")
    return node


def fold(node, *, num, name, add, sub, mul, div, pow, neg):
    """Evaluate an AST bottom-up with the supplied operations."""
    kw = dict(num=num, name=name, add=add, sub=sub, mul=mul, div=div, pow=pow, neg=neg)
    kind = node[0]
    if kind == "num":
        return num(node[1])
    if kind == "name":
        return name(node[1])
    if kind == "neg":
        return neg(fold(node[1], **kw))
    if kind == "pow":
        return pow(fold(node[1], **kw), node[2])
    a = fold(node[1], **kw)
    b = fold(node[2], **kw)
    return {"add": add, "sub": sub, "mul": mul, "div": div}[kind](a, b)


def names(node):
    kind = node[0]
    if kind == "name":
        return {node[1]}
    if kind == "num":
        return set()
    out = set()
    for child in node[1:]:
        if isinstance(child, tuple):
            out |= names(child)
    return out
