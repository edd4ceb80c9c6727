"""Symbolic derivations over near-domain terms with rational constants.

Terms are built from rational literals, declared variables, +, *, unary
minus, a postfix inverse, and the coefficient former d(a, b).  Statements
are equations, memberships ``t in E`` (E is the set of elements commuting
additively with 1), and trivialities ``d(a, b) = 1``.  A derivation is a
list of hypotheses followed by steps, each justified by one rule from a
fixed registry; the checker verifies given derivations only and never
searches for proofs.

Script grammar, one declaration per line ('#' starts a comment):

    var <name>
    assume <statement>
    nonzero <term>
    step <statement> by <rule-id> [with <k>=<v>, ...] [from <i>, ...]
    qed <statement>

``assume`` and ``step`` lines share one 1-based index space in file order,
and ``from`` refers into it.  The substitution rule addresses the rewritten
subterm with ``with pos=<path>``, a dot-separated child path whose first
component picks the side of the target equation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NearDomainError
from .tables import (
    NearDomainTable,
    characteristic,
    compute_d,
    compute_e,
    mul_inverse,
    neg,
)

__all__ = [
    "Rat",
    "Var",
    "Add",
    "Mul",
    "Neg",
    "Inv",
    "DCoeff",
    "Eq",
    "InE",
    "DTrivial",
    "Step",
    "Derivation",
    "Verdict",
    "ZERO",
    "ONE",
    "DerivationSyntaxError",
    "EvalError",
    "GroundDomainError",
    "RULE_IDS",
    "term_text",
    "statement_text",
    "parse_term_text",
    "parse_statement_text",
    "parse_derivation",
    "check_derivation",
    "check_script",
    "ground_check",
    "eval_term",
]


class DerivationSyntaxError(NearDomainError):
    """Script rejected before checking: bad syntax, unknown rule, bad index."""

    def __init__(self, message: str, line: int, column: int = 0):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EvalError(NearDomainError):
    """Ground evaluation hit an inverse of zero or an unbound variable."""


class GroundDomainError(NearDomainError):
    """A rational constant has no meaning in the finite model."""


# ---------------------------------------------------------------------------
# terms and statements


@dataclass(frozen=True)
class Rat:
    value: Fraction


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Inv:
    arg: object


@dataclass(frozen=True)
class DCoeff:
    """The coefficient d(a, b) with a + (b + x) = (a + b) + d(a, b)*x."""

    left: object
    right: object


ZERO = Rat(Fraction(0))
ONE = Rat(Fraction(1))


@dataclass(frozen=True)
class Eq:
    lhs: object
    rhs: object


@dataclass(frozen=True)
class InE:
    term: object


@dataclass(frozen=True)
class DTrivial:
    """The statement d(left, right) = 1."""

    left: object
    right: object


def normalize_statement(s):
    """Fold equations of the shape d(a, b) = 1 into DTrivial."""
    if isinstance(s, Eq):
        if isinstance(s.lhs, DCoeff) and s.rhs == ONE:
            return DTrivial(s.lhs.left, s.lhs.right)
        if isinstance(s.rhs, DCoeff) and s.lhs == ONE:
            return DTrivial(s.rhs.left, s.rhs.right)
    return s


# ---------------------------------------------------------------------------
# printing

_PREC_ADD, _PREC_MUL, _PREC_NEG, _PREC_INV, _PREC_ATOM = 1, 2, 3, 4, 5


def _prec(t) -> int:
    if isinstance(t, Add):
        return _PREC_ADD
    if isinstance(t, Mul):
        return _PREC_MUL
    if isinstance(t, Neg):
        return _PREC_NEG
    if isinstance(t, Inv):
        return _PREC_INV
    return _PREC_ATOM


def term_text(t) -> str:
    return _fmt(t, 0)


def _fmt(t, parent: int) -> str:
    if isinstance(t, Rat):
        body = str(t.value)
    elif isinstance(t, Var):
        body = t.name
    elif isinstance(t, _MV):
        body = f"?{t.name}"
    elif isinstance(t, DCoeff):
        body = f"d({_fmt(t.left, 0)}, {_fmt(t.right, 0)})"
    elif isinstance(t, Add):
        body = f"{_fmt(t.left, _PREC_ADD)} + {_fmt(t.right, _PREC_ADD + 1)}"
    elif isinstance(t, Mul):
        body = f"{_fmt(t.left, _PREC_MUL)} * {_fmt(t.right, _PREC_MUL + 1)}"
    elif isinstance(t, Neg):
        body = f"-{_fmt(t.arg, _PREC_NEG)}"
    elif isinstance(t, Inv):
        body = f"{_fmt(t.arg, _PREC_ATOM)}^-1"
    else:  # pragma: no cover
        raise TypeError(f"not a term: {t!r}")
    if _prec(t) < parent:
        return f"({body})"
    return body


def statement_text(s) -> str:
    if isinstance(s, Eq):
        return f"{term_text(s.lhs)} = {term_text(s.rhs)}"
    if isinstance(s, InE):
        return f"{term_text(s.term)} in E"
    if isinstance(s, DTrivial):
        return f"d({term_text(s.left)}, {term_text(s.right)}) = 1"
    raise TypeError(f"not a statement: {s!r}")


# ---------------------------------------------------------------------------
# tokenizer

_SYMBOLS = ("^-1", "+", "*", "-", "(", ")", ",", "=", ".")
_RESERVED = {
    "var", "assume", "nonzero", "step", "qed", "by", "with", "from",
    "in", "E", "d", "pos",
}


def _tokenize(text: str, line_no: int):
    """(kind, value, column) triples; kinds: int, rat, word, symbol.

    A rational literal p/q is one token with a Fraction value (normalized,
    so 2/4 tokenizes identically to 1/2); a slash anywhere else is an error.
    """
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch in " \t":
            i += 1
            continue
        if ch == "#":
            break
        col = i + 1
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            if j < len(text) and text[j] == "/":
                k = j + 1
                while k < len(text) and text[k].isdigit():
                    k += 1
                if k == j + 1:
                    raise DerivationSyntaxError("missing denominator", line_no, j + 2)
                den = int(text[j + 1:k])
                if den == 0:
                    raise DerivationSyntaxError("zero denominator", line_no, j + 2)
                tokens.append(("rat", Fraction(int(text[i:j]), den), col))
                i = k
            else:
                tokens.append(("int", text[i:j], col))
                i = j
            continue
        if ch == "/":
            raise DerivationSyntaxError("'/' outside a rational literal",
                                        line_no, col)
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_-"):
                j += 1
            tokens.append(("word", text[i:j], col))
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                tokens.append(("symbol", sym, col))
                i += len(sym)
                break
        else:
            raise DerivationSyntaxError(f"unexpected character {ch!r}", line_no, col)
    return tokens


class _TokenStream:
    def __init__(self, tokens, line_no):
        self.tokens = tokens
        self.line = line_no
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.peek()
        if tok is None:
            raise DerivationSyntaxError("unexpected end of line", self.line,
                                        self.tokens[-1][2] if self.tokens else 1)
        self.pos += 1
        return tok

    def expect_symbol(self, sym):
        tok = self.next()
        if tok[0] != "symbol" or tok[1] != sym:
            raise DerivationSyntaxError(f"expected {sym!r}, got {tok[1]!r}",
                                        self.line, tok[2])
        return tok

    def expect_word(self, word):
        tok = self.next()
        if tok[0] != "word" or tok[1] != word:
            raise DerivationSyntaxError(f"expected {word!r}, got {tok[1]!r}",
                                        self.line, tok[2])
        return tok

    def at_word(self, word) -> bool:
        tok = self.peek()
        return tok is not None and tok[0] == "word" and tok[1] == word

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def fail(self, message):
        tok = self.peek()
        col = tok[2] if tok else (self.tokens[-1][2] if self.tokens else 1)
        raise DerivationSyntaxError(message, self.line, col)


# ---------------------------------------------------------------------------
# term and statement parsing


def _parse_atom(ts: _TokenStream, variables):
    tok = ts.next()
    kind, value, col = tok
    if kind == "int":
        return Rat(Fraction(int(value))), col
    if kind == "rat":
        return Rat(value), col
    if kind == "symbol" and value == "(":
        term = _parse_sum(ts, variables)
        ts.expect_symbol(")")
        return term, col
    if kind == "word" and value == "d":
        ts.expect_symbol("(")
        left = _parse_sum(ts, variables)
        ts.expect_symbol(",")
        right = _parse_sum(ts, variables)
        ts.expect_symbol(")")
        return DCoeff(left, right), col
    if kind == "word":
        if value in _RESERVED:
            raise DerivationSyntaxError(f"reserved word {value!r} in term",
                                        ts.line, col)
        if value not in variables:
            raise DerivationSyntaxError(f"undeclared variable {value!r}",
                                        ts.line, col)
        return Var(value), col
    raise DerivationSyntaxError(f"unexpected token {value!r}", ts.line, col)


def _parse_postfix(ts: _TokenStream, variables):
    term, col = _parse_atom(ts, variables)
    while True:
        nxt = ts.peek()
        if nxt is not None and nxt[0] == "symbol" and nxt[1] == "^-1":
            ts.next()
            if term == ZERO:
                raise DerivationSyntaxError("inverse of the zero constant",
                                            ts.line, nxt[2])
            term = Inv(term)
        else:
            return term


def _parse_unary(ts: _TokenStream, variables):
    nxt = ts.peek()
    if nxt is not None and nxt[0] == "symbol" and nxt[1] == "-":
        ts.next()
        return Neg(_parse_unary(ts, variables))
    return _parse_postfix(ts, variables)


def _parse_product(ts: _TokenStream, variables):
    term = _parse_unary(ts, variables)
    while True:
        nxt = ts.peek()
        if nxt is not None and nxt[0] == "symbol" and nxt[1] == "*":
            ts.next()
            term = Mul(term, _parse_unary(ts, variables))
        else:
            return term


def _parse_sum(ts: _TokenStream, variables):
    term = _parse_product(ts, variables)
    while True:
        nxt = ts.peek()
        if nxt is not None and nxt[0] == "symbol" and nxt[1] == "+":
            ts.next()
            term = Add(term, _parse_product(ts, variables))
        else:
            return term


def _parse_statement(ts: _TokenStream, variables):
    lhs = _parse_sum(ts, variables)
    nxt = ts.peek()
    if nxt is not None and nxt[0] == "symbol" and nxt[1] == "=":
        ts.next()
        rhs = _parse_sum(ts, variables)
        return normalize_statement(Eq(lhs, rhs))
    if nxt is not None and nxt[0] == "word" and nxt[1] == "in":
        ts.next()
        ts.expect_word("E")
        return InE(lhs)
    ts.fail("expected '=' or 'in E'")


def parse_term_text(text: str, variables=frozenset()) -> object:
    ts = _TokenStream(_tokenize(text, 1), 1)
    term = _parse_sum(ts, variables)
    if not ts.done():
        ts.fail("trailing tokens after term")
    return term


def parse_statement_text(text: str, variables=frozenset()) -> object:
    ts = _TokenStream(_tokenize(text, 1), 1)
    stmt = _parse_statement(ts, variables)
    if not ts.done():
        ts.fail("trailing tokens after statement")
    return stmt


# ---------------------------------------------------------------------------
# derivations


@dataclass(frozen=True)
class Step:
    claim: object
    rule: str
    premises: tuple[int, ...]
    instantiation: tuple[tuple[str, object], ...]
    pos: tuple[int, ...] | None
    line: int


@dataclass(frozen=True)
class Derivation:
    variables: tuple[str, ...]
    hypotheses: tuple[tuple[object, int], ...]
    nonzero_terms: tuple[tuple[object, int], ...]
    steps: tuple[Step, ...]
    goal: tuple[object, int] | None

    @property
    def statement_count(self) -> int:
        return len(self.hypotheses) + len(self.steps)

    def statement(self, index: int):
        """The statement with 1-based global index (hypotheses, then steps)."""
        if not 1 <= index <= self.statement_count:
            raise IndexError(index)
        h = len(self.hypotheses)
        if index <= h:
            return self.hypotheses[index - 1][0]
        return self.steps[index - 1 - h].claim

    def has_nonzero(self, term) -> bool:
        return any(nz == term for nz, _ in self.nonzero_terms)


def parse_derivation(text: str) -> Derivation:
    """Parse a proof script; every structural error carries line and column."""
    variables: set[str] = set()
    hypotheses: list = []
    nonzeros: list = []
    steps: list[Step] = []
    goal = None
    seen_step = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokenize(raw, line_no)
        if not tokens:
            continue
        ts = _TokenStream(tokens, line_no)
        head = ts.next()
        if head[0] != "word":
            raise DerivationSyntaxError(
                f"expected a declaration keyword, got {head[1]!r}", line_no, head[2]
            )
        keyword = head[1]
        if keyword == "var":
            tok = ts.next()
            name = tok[1]
            if tok[0] != "word" or not _valid_var_name(name):
                raise DerivationSyntaxError(f"invalid variable name {name!r}",
                                            line_no, tok[2])
            if name in _RESERVED:
                raise DerivationSyntaxError(f"reserved word {name!r}", line_no, tok[2])
            if name in variables:
                raise DerivationSyntaxError(f"duplicate variable {name!r}",
                                            line_no, tok[2])
            variables.add(name)
        elif keyword == "assume":
            if seen_step:
                raise DerivationSyntaxError("hypotheses must precede steps",
                                            line_no, head[2])
            stmt = _parse_statement(ts, variables)
            hypotheses.append((stmt, line_no))
        elif keyword == "nonzero":
            term = _parse_sum(ts, variables)
            nonzeros.append((term, line_no))
        elif keyword == "step":
            seen_step = True
            stmt = _parse_statement(ts, variables)
            ts.expect_word("by")
            rule_tok = ts.next()
            rule = rule_tok[1]
            if rule_tok[0] != "word" or rule not in RULE_IDS:
                raise DerivationSyntaxError(f"unknown rule {rule!r}",
                                            line_no, rule_tok[2])
            inst: list = []
            pos = None
            if ts.at_word("with"):
                ts.next()
                while True:
                    key_tok = ts.next()
                    if key_tok[0] != "word":
                        raise DerivationSyntaxError("expected a binding name",
                                                    line_no, key_tok[2])
                    ts.expect_symbol("=")
                    if key_tok[1] == "pos":
                        pos = _parse_path(ts)
                    else:
                        inst.append((key_tok[1], _parse_sum(ts, variables)))
                    nxt = ts.peek()
                    if nxt is not None and nxt[0] == "symbol" and nxt[1] == ",":
                        ts.next()
                        continue
                    break
            premises: list[int] = []
            if ts.at_word("from"):
                ts.next()
                while True:
                    tok = ts.next()
                    if tok[0] != "int":
                        raise DerivationSyntaxError("expected a premise index",
                                                    line_no, tok[2])
                    premises.append(int(tok[1]))
                    nxt = ts.peek()
                    if nxt is not None and nxt[0] == "symbol" and nxt[1] == ",":
                        ts.next()
                        continue
                    break
            current_index = len(hypotheses) + len(steps) + 1
            for p in premises:
                if not 1 <= p < current_index:
                    raise DerivationSyntaxError(
                        f"premise index {p} not bound before statement "
                        f"{current_index}", line_no, head[2]
                    )
            steps.append(Step(
                claim=stmt,
                rule=rule,
                premises=tuple(premises),
                instantiation=tuple(inst),
                pos=pos,
                line=line_no,
            ))
        elif keyword == "qed":
            stmt = _parse_statement(ts, variables)
            goal = (stmt, line_no)
        else:
            raise DerivationSyntaxError(f"unknown keyword {keyword!r}",
                                        line_no, head[2])
        if not ts.done():
            ts.fail("trailing tokens")
    return Derivation(
        variables=tuple(sorted(variables)),
        hypotheses=tuple(hypotheses),
        nonzero_terms=tuple(nonzeros),
        steps=tuple(steps),
        goal=goal,
    )


def _valid_var_name(name: str) -> bool:
    return (
        name[:1].isalpha()
        and name[:1].islower()
        and all(c.isalnum() or c == "_" for c in name)
    )


def _parse_path(ts: _TokenStream) -> tuple[int, ...]:
    tok = ts.next()
    if tok[0] != "int":
        raise DerivationSyntaxError("expected a position path", ts.line, tok[2])
    path = [int(tok[1])]
    while True:
        nxt = ts.peek()
        if nxt is not None and nxt[0] == "symbol" and nxt[1] == ".":
            ts.next()
            tok = ts.next()
            if tok[0] != "int":
                raise DerivationSyntaxError("expected a path component",
                                            ts.line, tok[2])
            path.append(int(tok[1]))
        else:
            return tuple(path)


# ---------------------------------------------------------------------------
# pattern matching for rule schemas


@dataclass(frozen=True)
class _MV:
    """Metavariable leaf inside a rule schema."""

    name: str


def _match_term(pattern, term, binding) -> bool:
    if isinstance(pattern, _MV):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = term
            return True
        return bound == term
    if type(pattern) is not type(term):
        return False
    if isinstance(pattern, Rat):
        return pattern.value == term.value
    if isinstance(pattern, Var):
        return pattern.name == term.name
    if isinstance(pattern, (Add, Mul, DCoeff)):
        return _match_term(pattern.left, term.left, binding) and _match_term(
            pattern.right, term.right, binding
        )
    if isinstance(pattern, (Neg, Inv)):
        return _match_term(pattern.arg, term.arg, binding)
    raise TypeError(f"bad pattern {pattern!r}")  # pragma: no cover


def _match_statement(pattern, stmt, binding) -> bool:
    if type(pattern) is not type(stmt):
        return False
    if isinstance(pattern, Eq):
        return _match_term(pattern.lhs, stmt.lhs, binding) and _match_term(
            pattern.rhs, stmt.rhs, binding
        )
    if isinstance(pattern, InE):
        return _match_term(pattern.term, stmt.term, binding)
    if isinstance(pattern, DTrivial):
        return _match_term(pattern.left, stmt.left, binding) and _match_term(
            pattern.right, stmt.right, binding
        )
    raise TypeError(f"bad statement pattern {pattern!r}")  # pragma: no cover


def _flip(eq: Eq) -> Eq:
    return Eq(eq.rhs, eq.lhs)


def _with_flips(alternatives):
    out = []
    for alt in alternatives:
        out.append(alt)
        if isinstance(alt, Eq):
            flipped = _flip(alt)
            if flipped != alt:
                out.append(flipped)
    return tuple(out)


# ---------------------------------------------------------------------------
# constant evaluation (exact rational arithmetic)


class _NotConstant(Exception):
    pass


class _ZeroInverse(Exception):
    pass


def const_value(term) -> Fraction:
    """Exact value of a constant term; raises if symbolic or dividing by 0."""
    if isinstance(term, Rat):
        return term.value
    if isinstance(term, Add):
        return const_value(term.left) + const_value(term.right)
    if isinstance(term, Mul):
        return const_value(term.left) * const_value(term.right)
    if isinstance(term, Neg):
        return -const_value(term.arg)
    if isinstance(term, Inv):
        v = const_value(term.arg)
        if v == 0:
            raise _ZeroInverse
        return 1 / v
    raise _NotConstant


def _try_const(term):
    try:
        return const_value(term)
    except (_NotConstant, _ZeroInverse):
        return None


# ---------------------------------------------------------------------------
# the rule registry


@dataclass(frozen=True)
class _Failure:
    reason: str
    expected: str | None = None
    claimed: str | None = None


def _schema_rule(premise_patterns, conclusion_alternatives, description,
                 side=None, permute_premises=False):
    premise_patterns = tuple(premise_patterns)
    conclusion_alternatives = tuple(conclusion_alternatives)

    def check(step: Step, premises, derivation: Derivation):
        claim = normalize_statement(step.claim)
        if len(premises) != len(premise_patterns):
            return _Failure(
                f"rule {step.rule} expects {len(premise_patterns)} premise(s), "
                f"got {len(premises)}",
                expected=description,
                claimed=statement_text(claim),
            )
        orders = [premises]
        if permute_premises and len(premises) == 2:
            orders.append((premises[1], premises[0]))
        last_reason = "claim does not match the rule schema"
        for alt in conclusion_alternatives:
            seed = {name: value for name, value in step.instantiation}
            binding = dict(seed)
            if not _match_statement(alt, claim, binding):
                continue
            for order in orders:
                b = dict(binding)
                if all(
                    _match_statement(pp, normalize_statement(prem), b)
                    for pp, prem in zip(premise_patterns, order)
                ):
                    if side is not None:
                        err = side(b, derivation)
                        if err is not None:
                            last_reason = err
                            continue
                    return None
            last_reason = "premises do not match the rule schema"
        return _Failure(last_reason, expected=description,
                        claimed=statement_text(claim))

    return check


_A, _B, _C, _X = _MV("a"), _MV("b"), _MV("c"), _MV("x")


def _nonzero_side(binding, derivation):
    term = Add(binding["b"], binding["a"])
    value = _try_const(term)
    if value is not None:
        if value != 0:
            return None
        return f"side condition failed: {term_text(term)} is the zero constant"
    if derivation.has_nonzero(term):
        return None
    return (
        f"side condition undischarged: need a nonzero declaration for "
        f"{term_text(term)}"
    )


def _rat_rule(step: Step, premises, derivation):
    claim = normalize_statement(step.claim)
    try:
        if isinstance(claim, Eq):
            if const_value(claim.lhs) == const_value(claim.rhs):
                return None
            return _Failure(
                "constant sides differ",
                expected=f"{const_value(claim.lhs)} = {const_value(claim.rhs)}",
                claimed=statement_text(claim),
            )
        if isinstance(claim, DTrivial):
            const_value(claim.left)
            const_value(claim.right)
            return None
        if isinstance(claim, InE):
            const_value(claim.term)
            return None
    except _NotConstant:
        return _Failure("claim is not a constant statement",
                        claimed=statement_text(claim))
    except _ZeroInverse:
        return _Failure("claim inverts a zero constant",
                        claimed=statement_text(claim))
    return _Failure("unsupported claim for rat", claimed=statement_text(claim))


def _as_equation(stmt):
    stmt = normalize_statement(stmt)
    if isinstance(stmt, Eq):
        return stmt
    if isinstance(stmt, DTrivial):
        return Eq(DCoeff(stmt.left, stmt.right), ONE)
    return None


def _subterm_at(eq: Eq, path):
    node = eq
    for idx in path:
        kids = _children(node)
        if idx >= len(kids):
            return None
        node = kids[idx]
    return node


def _children(node):
    if isinstance(node, Eq):
        return (node.lhs, node.rhs)
    if isinstance(node, (Add, Mul, DCoeff)):
        return (node.left, node.right)
    if isinstance(node, (Neg, Inv)):
        return (node.arg,)
    return ()


def _replace_at(node, path, replacement):
    if not path:
        return replacement
    idx = path[0]
    kids = _children(node)
    if idx >= len(kids):
        return None
    new_kid = _replace_at(kids[idx], path[1:], replacement)
    if new_kid is None:
        return None
    if isinstance(node, Eq):
        return Eq(new_kid, node.rhs) if idx == 0 else Eq(node.lhs, new_kid)
    if isinstance(node, (Add, Mul, DCoeff)):
        cls = type(node)
        return cls(new_kid, node.right) if idx == 0 else cls(node.left, new_kid)
    if isinstance(node, (Neg, Inv)):
        return type(node)(new_kid)
    return None  # pragma: no cover


def _subst_rule(step: Step, premises, derivation):
    claim = normalize_statement(step.claim)
    if len(premises) != 2:
        return _Failure("subst expects 'from <target>, <equation>'",
                        claimed=statement_text(claim))
    if step.pos is None:
        return _Failure("subst requires 'with pos=<path>'",
                        claimed=statement_text(claim))
    target = _as_equation(premises[0])
    rewrite = _as_equation(premises[1])
    if target is None or rewrite is None:
        return _Failure("subst premises must be equations",
                        claimed=statement_text(claim))
    if not step.pos or step.pos[0] not in (0, 1):
        return _Failure("position path must start with 0 (left) or 1 (right)")
    sub = _subterm_at(target, step.pos)
    if sub is None:
        return _Failure(f"no subterm at position {'.'.join(map(str, step.pos))}")
    if sub == rewrite.lhs:
        replacement = rewrite.rhs
    elif sub == rewrite.rhs:
        replacement = rewrite.lhs
    else:
        return _Failure(
            "subterm matches neither side of the rewriting equation",
            expected=f"{term_text(rewrite.lhs)} or {term_text(rewrite.rhs)}",
            claimed=term_text(sub) if not isinstance(sub, Eq) else statement_text(sub),
        )
    result = _replace_at(target, step.pos, replacement)
    result = normalize_statement(result)
    if result != claim:
        return _Failure(
            "substitution result differs from the claim",
            expected=statement_text(result),
            claimed=statement_text(claim),
        )
    return None


RULES = {
    "ax-loop-id": _schema_rule(
        (),
        _with_flips((Eq(Add(_A, ZERO), _A), Eq(Add(ZERO, _A), _A))),
        "x + 0 = x or 0 + x = x",
    ),
    "ax-group": _schema_rule(
        (),
        _with_flips((
            Eq(Mul(Mul(_A, _B), _C), Mul(_A, Mul(_B, _C))),
            Eq(Mul(_A, ONE), _A),
            Eq(Mul(ONE, _A), _A),
            Eq(Mul(_A, Inv(_A)), ONE),
            Eq(Mul(Inv(_A), _A), ONE),
            Eq(Mul(_A, ZERO), ZERO),
            Eq(Mul(ZERO, _A), ZERO),
        )),
        "a group identity for * (associativity, unit, inverses, zero)",
    ),
    "ax-ldist": _schema_rule(
        (),
        _with_flips((Eq(Mul(_A, Add(_B, _C)), Add(Mul(_A, _B), Mul(_A, _C))),)),
        "a * (b + c) = a * b + a * c",
    ),
    "ax-d": _schema_rule(
        (),
        _with_flips((
            Eq(Add(_A, Add(_B, _X)), Add(Add(_A, _B), Mul(DCoeff(_A, _B), _X))),
        )),
        "a + (b + x) = (a + b) + d(a, b) * x",
    ),
    "assoc-from-d1": _schema_rule(
        (DTrivial(_A, _B),),
        _with_flips((Eq(Add(_A, Add(_B, _X)), Add(Add(_A, _B), _X)),)),
        "from d(a, b) = 1: a + (b + x) = (a + b) + x",
    ),
    "comm-from-d1": _schema_rule(
        (DTrivial(_A, _B),),
        _with_flips((Eq(Add(_B, _A), Add(_A, _B)),)),
        "from d(a, b) = 1: b + a = a + b",
    ),
    "d1-from-comm": _schema_rule(
        (Eq(Add(_A, _B), Add(_B, _A)),),
        (DTrivial(_A, _B),),
        "from a + b = b + a with b + a nonzero: d(a, b) = 1",
        side=_nonzero_side,
    ),
    "d-aa": _schema_rule(
        (),
        (DTrivial(_A, _A),),
        "d(a, a) = 1",
    ),
    "conj": _schema_rule(
        (),
        _with_flips((
            Eq(Mul(Mul(_C, DCoeff(_A, _B)), Inv(_C)),
               DCoeff(Mul(_C, _A), Mul(_C, _B))),
        )),
        "c * d(a, b) * c^-1 = d(c*a, c*b)",
    ),
    "cocycle": _schema_rule(
        (),
        _with_flips((
            Eq(DCoeff(_A, _B),
               Mul(Mul(DCoeff(_A, _C), DCoeff(Add(_C, _A), Add(Neg(_C), _B))),
                   DCoeff(Neg(_C), _B))),
        )),
        "d(a, b) = d(a, c) * d(c+a, -c+b) * d(-c, b)",
    ),
    "e-double": _schema_rule(
        (InE(_A), InE(_B)),
        (
            InE(Add(Add(_A, _B), Add(_A, _B))),
            InE(Mul(Add(_A, _B), Rat(Fraction(2)))),
        ),
        "from a in E and b in E: (a + b) + (a + b) in E",
        permute_premises=True,
    ),
    "e-from-d1": _schema_rule(
        (DTrivial(_A, ONE),),
        (InE(_A),),
        "from d(a, 1) = 1: a in E",
    ),
    "d1-from-e": _schema_rule(
        (InE(_A),),
        (DTrivial(_A, ONE),),
        # the reverse characterization of E; validated on finite models only
        "from a in E: d(a, 1) = 1",
    ),
    "rat": _rat_rule,
    "subst": _subst_rule,
}

RULE_IDS = frozenset(RULES)


# ---------------------------------------------------------------------------
# checking


@dataclass(frozen=True)
class Verdict:
    ok: bool
    line: int | None = None
    statement_index: int | None = None
    reason: str = ""
    expected: str | None = None
    claimed: str | None = None


def check_derivation(derivation: Derivation) -> Verdict:
    """Accept iff every step follows from its rule and premises.

    The verdict names the first failing step with the expected and claimed
    statements where the rule can produce them.
    """
    established = [normalize_statement(s) for s, _ in derivation.hypotheses]
    base = len(derivation.hypotheses)
    for i, step in enumerate(derivation.steps):
        premises = [established[p - 1] for p in step.premises]
        checker = RULES[step.rule]
        failure = checker(step, premises, derivation)
        if failure is not None:
            return Verdict(
                ok=False,
                line=step.line,
                statement_index=base + i + 1,
                reason=f"rule {step.rule}: {failure.reason}",
                expected=failure.expected,
                claimed=failure.claimed,
            )
        established.append(normalize_statement(step.claim))
    if derivation.goal is not None:
        goal, line = derivation.goal
        goal = normalize_statement(goal)
        if goal not in established:
            return Verdict(
                ok=False,
                line=line,
                statement_index=None,
                reason="qed statement was never established",
                claimed=statement_text(goal),
            )
    return Verdict(ok=True)


def check_script(text: str) -> Verdict:
    return check_derivation(parse_derivation(text))


# ---------------------------------------------------------------------------
# grounding statements in finite models


def eval_term(term, t: NearDomainTable, env) -> int:
    """Value of a term in a finite model; integers become repeated sums of 1."""
    if isinstance(term, Rat):
        fr = term.value
        if fr.denominator != 1:
            raise GroundDomainError(
                f"rational {fr} is not an integer; not representable in the model"
            )
        m = fr.numerator
        p = characteristic(t)
        s = 0
        for _ in range(m % p):
            s = t.add[1][s]
        return s
    if isinstance(term, Var):
        if term.name not in env:
            raise EvalError(f"unbound variable {term.name!r}")
        return env[term.name]
    if isinstance(term, Add):
        return t.add[eval_term(term.left, t, env)][eval_term(term.right, t, env)]
    if isinstance(term, Mul):
        return t.mul[eval_term(term.left, t, env)][eval_term(term.right, t, env)]
    if isinstance(term, Neg):
        return neg(t, eval_term(term.arg, t, env))
    if isinstance(term, Inv):
        v = eval_term(term.arg, t, env)
        if v == 0:
            raise EvalError("inverse of zero")
        return mul_inverse(t, v)
    if isinstance(term, DCoeff):
        return compute_d(t, eval_term(term.left, t, env), eval_term(term.right, t, env))
    raise TypeError(f"not a term: {term!r}")


def ground_check(stmt, t: NearDomainTable, env) -> bool:
    """Truth of a statement in a finite model under a variable assignment."""
    stmt = normalize_statement(stmt)
    if isinstance(stmt, Eq):
        return eval_term(stmt.lhs, t, env) == eval_term(stmt.rhs, t, env)
    if isinstance(stmt, InE):
        return eval_term(stmt.term, t, env) in compute_e(t)
    if isinstance(stmt, DTrivial):
        a = eval_term(stmt.left, t, env)
        b = eval_term(stmt.right, t, env)
        return compute_d(t, a, b) == 1
    raise TypeError(f"not a statement: {stmt!r}")
