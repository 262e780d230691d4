"""Recursive-descent parser for structured operator expressions.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' UINT)?
    atom   := 'S' | "S'" | 'I' | 'D(' NAME ')' | 'F(' NAME ')' | REAL
            | 'q(' REAL ',' REAL ',' REAL ',' REAL ')' | '(' expr ')'

``D`` and ``F`` names resolve against an environment of diagonals and
finite-rank patches (see :func:`load_env`).
"""

from dataclasses import dataclass, field
import json
import re

from .errors import ExprError, ExprSyntaxError, UnknownName
from .operators import IDENTITY, S, S_ADJ, Diagonal, FiniteRank, FiniteVector, scalar

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<real>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<sadj>S')
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),])
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


@dataclass
class Environment:
    diagonals: dict = field(default_factory=dict)
    patches: dict = field(default_factory=dict)


def _quat(value, where):
    if not isinstance(value, (list, tuple)) or len(value) != 4:
        raise ExprError(f"{where}: quaternion literal must be [q0, q1, q2, q3]")
    try:
        return tuple(float(x) for x in value)
    except (TypeError, ValueError):
        raise ExprError(f"{where}: quaternion components must be numbers") from None


def _finite_vector(spec, where):
    if not isinstance(spec, dict) or "support" not in spec or "values" not in spec:
        raise ExprError(f"{where}: finitely supported vector needs 'support' and 'values'")
    values = [_quat(v, where) for v in spec["values"]]
    try:
        return FiniteVector(tuple(spec["support"]), tuple(values))
    except (TypeError, ValueError) as exc:
        raise ExprError(f"{where}: {exc}") from None


def load_env(source=None):
    """Build an :class:`Environment` from a dict, JSON text or ``None``."""
    if source is None:
        return Environment()
    if isinstance(source, Environment):
        return source
    if isinstance(source, str):
        source = json.loads(source)
    env = Environment()
    for name, spec in source.get("diagonals", {}).items():
        if not isinstance(spec, dict) or "limit" not in spec:
            raise ExprError(f"diagonal {name!r} is not eventually constant: a 'limit' is required")
        prefix = tuple(_quat(p, f"diagonal {name!r}") for p in spec.get("prefix", []))
        env.diagonals[name] = Diagonal(prefix, _quat(spec["limit"], f"diagonal {name!r}"), name)
    for name, spec in source.get("patches", {}).items():
        pairs = []
        for k, pair in enumerate(spec.get("pairs", [])):
            where = f"patch {name!r} pair {k}"
            pairs.append((_finite_vector(pair.get("u"), where), _finite_vector(pair.get("v"), where)))
        env.patches[name] = FiniteRank(tuple(pairs), name)
    return env


def tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r} at offset {pos}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, env):
        self.text = text
        self.env = env
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        what = "end of input" if tok.kind == "end" else repr(tok.text)
        return ExprSyntaxError(f"{message}, found {what} at offset {tok.pos}", self.text, tok.pos)

    def take(self, text):
        if self.tok.text != text or self.tok.kind not in ("op", "name"):
            raise self.error(f"expected {text!r}")
        self.i += 1

    def parse(self):
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error("unexpected trailing input")
        return node

    def expr(self):
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self):
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text == "*":
            self.i += 1
            node = node * self.factor()
        return node

    def factor(self):
        node = self.atom()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.i += 1
            tok = self.tok
            if tok.kind != "real" or not tok.text.isdigit():
                raise self.error("expected an unsigned integer exponent")
            self.i += 1
            node = node ** int(tok.text)
        return node

    def real(self):
        sign = 1.0
        if self.tok.kind == "op" and self.tok.text == "-":
            sign = -1.0
            self.i += 1
        tok = self.tok
        if tok.kind != "real":
            raise self.error("expected a real number")
        self.i += 1
        return sign * float(tok.text)

    def atom(self):
        tok = self.tok
        if tok.kind == "sadj":
            self.i += 1
            return S_ADJ
        if tok.kind == "real" or (tok.kind == "op" and tok.text == "-"
                                  and self.tokens[self.i + 1].kind == "real"):
            return scalar(self.real())
        if tok.kind == "op" and tok.text == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        if tok.kind == "name":
            if tok.text == "S":
                self.i += 1
                return S
            if tok.text == "I":
                self.i += 1
                return IDENTITY
            if tok.text in ("D", "F"):
                self.i += 1
                self.take("(")
                name_tok = self.tok
                if name_tok.kind != "name":
                    raise self.error("expected a name")
                self.i += 1
                self.take(")")
                table = self.env.diagonals if tok.text == "D" else self.env.patches
                if name_tok.text not in table:
                    kind = "diagonal" if tok.text == "D" else "patch"
                    raise UnknownName(f"unknown {kind} {name_tok.text!r} at offset {name_tok.pos}",
                                      self.text, name_tok.pos)
                return table[name_tok.text]
            if tok.text == "q":
                self.i += 1
                self.take("(")
                comps = [self.real()]
                for _ in range(3):
                    self.take(",")
                    comps.append(self.real())
                self.take(")")
                return scalar(tuple(comps))
        raise self.error("expected an operator atom")


def parse_expr(text, env=None):
    """Parse ``text`` into an operator tree; raises :class:`ExprSyntaxError`."""
    return _Parser(text, load_env(env)).parse()
