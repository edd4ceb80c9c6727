"""Finite near-domain tables and their derived data.

A table models a structure (K, 0, 1, +, *) on indices [0, n): addition is a
loop with identity 0, multiplication is a group on the nonzero indices with
identity 1 (0 annihilates), multiplication distributes over addition from the
left, and every pair (a, b) admits a coefficient d with
a + (b + x) = (a + b) + d*x for all x.  A near-field is a table whose
addition is associative, equivalently one where every such d equals 1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .errors import AxiomError, ContractError, TableFormatError

__all__ = [
    "NearDomainTable",
    "AxiomReport",
    "IdentityReport",
    "make_table",
    "validate_shape",
    "check_near_domain",
    "is_near_domain",
    "compute_d",
    "d_table",
    "d_via_quotient",
    "compute_e",
    "characteristic",
    "is_near_field",
    "negatives",
    "neg",
    "mul_inverse",
    "element_add_order",
    "element_mul_order",
    "right_distributivity_failure",
    "d_identity_suite",
    "parse_table",
    "format_table",
    "load_table",
    "save_table",
]


@dataclass(frozen=True)
class NearDomainTable:
    """Immutable carrier with addition and multiplication tables.

    Index 0 is the additive identity and index 1 the multiplicative one.
    Rows are indexed by the left operand: add[a][b] is a + b.
    """

    order: int
    add: tuple[tuple[int, ...], ...]
    mul: tuple[tuple[int, ...], ...]
    label: str = ""

    def with_label(self, label: str) -> "NearDomainTable":
        return replace(self, label=label)


def make_table(add, mul, label: str = "") -> NearDomainTable:
    """Build a table from nested sequences, validating shape only."""
    add_t = tuple(tuple(int(x) for x in row) for row in add)
    mul_t = tuple(tuple(int(x) for x in row) for row in mul)
    t = NearDomainTable(order=len(add_t), add=add_t, mul=mul_t, label=label)
    validate_shape(t)
    return t


def validate_shape(t: NearDomainTable) -> None:
    """Raise TableFormatError unless both tables are n x n over [0, n) with n >= 2."""
    n = t.order
    if n < 2:
        raise TableFormatError(f"order must be at least 2, got {n}")
    for name, table in (("add", t.add), ("mul", t.mul)):
        if len(table) != n:
            raise TableFormatError(f"{name} table has {len(table)} rows, expected {n}")
        for i, row in enumerate(table):
            if len(row) != n:
                raise TableFormatError(
                    f"{name} row {i} has {len(row)} entries, expected {n}"
                )
            for j, x in enumerate(row):
                if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
                    raise TableFormatError(
                        f"{name}[{i}][{j}] = {x!r} out of range [0, {n})"
                    )


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the four near-domain axiom checks.

    Each failing axiom contributes one entry (axiom id, witness tuple) to
    ``failures``, the lexicographically first violation found by a fixed
    deterministic scan.  All four flags are true exactly when ``failures``
    is empty.
    """

    loop_ok: bool
    group_ok: bool
    left_dist_ok: bool
    axiom4_ok: bool
    failures: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def _loop_failure(t: NearDomainTable):
    n, add = t.order, t.add
    for a in range(n):
        if add[a][0] != a or add[0][a] != a:
            return ("loop-identity", (a,))
    for a in range(n):
        first = {}
        for b in range(n):
            v = add[a][b]
            if v in first:
                return ("loop-row", (a, first[v], b))
            first[v] = b
    for b in range(n):
        first = {}
        for a in range(n):
            v = add[a][b]
            if v in first:
                return ("loop-col", (b, first[v], a))
            first[v] = a
    return None


def _group_failure(t: NearDomainTable):
    n, mul = t.order, t.mul
    for a in range(n):
        if mul[a][0] != 0 or mul[0][a] != 0:
            return ("group-zero", (a,))
    for a in range(1, n):
        if mul[1][a] != a or mul[a][1] != a:
            return ("group-identity", (a,))
    for a in range(1, n):
        for b in range(1, n):
            if mul[a][b] == 0:
                return ("group-closure", (a, b))
    for a in range(1, n):
        for b in range(1, n):
            ab = mul[a][b]
            for c in range(1, n):
                if mul[ab][c] != mul[a][mul[b][c]]:
                    return ("group-assoc", (a, b, c))
    for a in range(1, n):
        if not any(mul[a][b] == 1 and mul[b][a] == 1 for b in range(1, n)):
            return ("group-inverse", (a,))
    return None


def _left_dist_failure(t: NearDomainTable):
    n, add, mul = t.order, t.add, t.mul
    for a in range(n):
        row = mul[a]
        for b in range(n):
            for c in range(n):
                if row[add[b][c]] != add[row[b]][row[c]]:
                    return ("ldist", (a, b, c))
    return None


def _axiom4_failure(t: NearDomainTable):
    n, add, mul = t.order, t.add, t.mul
    for a in range(n):
        for b in range(n):
            s = add[a][b]
            lhs = [add[a][add[b][x]] for x in range(n)]
            # candidates agreeing at x = 1; scan directly so broken tables
            # are handled without assuming anything about mul or the row
            candidates = [d for d in range(n) if add[s][mul[d][1]] == lhs[1]]
            if not any(
                all(add[s][mul[d][x]] == lhs[x] for x in range(n))
                for d in candidates
            ):
                return ("axiom4", (a, b))
    return None


def check_near_domain(t: NearDomainTable) -> AxiomReport:
    """Check all four axioms, reporting one minimal witness per failed axiom.

    Malformed tables (wrong dimensions, out-of-range entries) raise
    TableFormatError instead of being reported as axiom failures.
    """
    validate_shape(t)
    failures = []
    loop = _loop_failure(t)
    if loop:
        failures.append(loop)
    group = _group_failure(t)
    if group:
        failures.append(group)
    ldist = _left_dist_failure(t)
    if ldist:
        failures.append(ldist)
    ax4 = _axiom4_failure(t)
    if ax4:
        failures.append(ax4)
    return AxiomReport(
        loop_ok=loop is None,
        group_ok=group is None,
        left_dist_ok=ldist is None,
        axiom4_ok=ax4 is None,
        failures=tuple(failures),
    )


def is_near_domain(t: NearDomainTable) -> bool:
    return check_near_domain(t).ok


# ---------------------------------------------------------------------------
# derived data on checked tables


def compute_d(t: NearDomainTable, a: int, b: int) -> int:
    """The unique d with a + (b + x) = (a + b) + d*x for all x.

    Solves at x = 1 and verifies the remaining x, so feeding a table that is
    not a near-domain raises AxiomError instead of returning garbage.
    """
    n, add, mul = t.order, t.add, t.mul
    s = add[a][b]
    target = add[a][add[b][1]]
    row = add[s]
    d = row.index(target)
    for x in range(n):
        if add[a][add[b][x]] != row[mul[d][x]]:
            raise AxiomError(
                f"no coefficient satisfies the associativity axiom for pair ({a}, {b})"
            )
    return d


def d_table(t: NearDomainTable) -> tuple[tuple[int, ...], ...]:
    """All coefficients d[a][b] at once."""
    n = t.order
    return tuple(tuple(compute_d(t, a, b) for b in range(n)) for a in range(n))


def mul_inverse(t: NearDomainTable, a: int) -> int:
    if a == 0:
        raise ContractError("0 has no multiplicative inverse")
    return t.mul[a].index(1)


def d_via_quotient(t: NearDomainTable, a: int, b: int) -> int:
    """The coefficient as the quotient (a + b) * (b + a)^-1, defined when b + a != 0."""
    ba = t.add[b][a]
    if ba == 0:
        raise ContractError(f"quotient undefined: {b} + {a} = 0")
    return t.mul[t.add[a][b]][mul_inverse(t, ba)]


def compute_e(t: NearDomainTable) -> frozenset[int]:
    """Elements commuting additively with 1.  Always contains 0 and 1."""
    return frozenset(d for d in range(t.order) if t.add[1][d] == t.add[d][1])


def characteristic(t: NearDomainTable) -> int:
    """Additive order of 1: the least m > 0 with the m-fold sum 1+(1+(...)) = 0."""
    s = 1
    m = 1
    while s != 0:
        s = t.add[1][s]
        m += 1
        if m > t.order + 1:  # cannot happen for a loop; guards corrupt tables
            raise AxiomError("repeated sums of 1 never reach 0")
    return m


def is_near_field(t: NearDomainTable) -> bool:
    """True iff addition is associative on all triples."""
    n, add = t.order, t.add
    for a in range(n):
        for b in range(n):
            ab = add[a][b]
            for c in range(n):
                if add[ab][c] != add[a][add[b][c]]:
                    return False
    return True


def negatives(t: NearDomainTable, a: int) -> tuple[int, int]:
    """(left, right) with left + a = 0 and a + right = 0.

    Both exist and are unique by the loop axiom.  They coincide on every
    table we have ever constructed, but the identity suite checks rather
    than assumes this; operations that consume -a use the right negative.
    """
    col = next(y for y in range(t.order) if t.add[y][a] == 0)
    return col, t.add[a].index(0)


def neg(t: NearDomainTable, a: int) -> int:
    """The right negative: the unique x with a + x = 0."""
    return t.add[a].index(0)


def element_add_order(t: NearDomainTable, a: int) -> int:
    """Least m > 0 with the m-fold sum a+(a+(...)) = 0."""
    if a == 0:
        return 1
    s = a
    m = 1
    while s != 0:
        s = t.add[a][s]
        m += 1
    return m


def element_mul_order(t: NearDomainTable, a: int) -> int:
    """Order of a nonzero element in the multiplicative group."""
    if a == 0:
        raise ContractError("0 is not in the multiplicative group")
    s = a
    m = 1
    while s != 1:
        s = t.mul[a][s]
        m += 1
    return m


def right_distributivity_failure(t: NearDomainTable):
    """First triple (a, b, c) with (a + b)*c != a*c + b*c, or None."""
    n, add, mul = t.order, t.add, t.mul
    for a in range(n):
        for b in range(n):
            ab = add[a][b]
            for c in range(n):
                if mul[ab][c] != add[mul[a][c]][mul[b][c]]:
                    return (a, b, c)
    return None


# ---------------------------------------------------------------------------
# the coefficient identity suite


@dataclass(frozen=True)
class IdentityReport:
    """Exhaustive verification of the d-coefficient identities.

    reflexive:    d(a, a) = 1
    quotient:     d(a, b) * (b + a) = a + b
    conjugation:  c * d(a, b) * c^-1 = d(c*a, c*b) for c != 0
    cocycle:      d(a, b) = d(a, c) * d(c+a, -c+b) * d(-c, b)
    doubling:     a, b in E  implies  (a + b) + (a + b) in E
    all_d_trivial: every d(a, b) = 1, the finite form of the statement that a
                   nontrivial coefficient forces an infinite-index centralizer
    negatives_ok: left and right negatives coincide (flagged loudly, never
                  silently assumed)
    """

    reflexive_ok: bool
    quotient_ok: bool
    conjugation_ok: bool
    cocycle_ok: bool
    doubling_ok: bool
    all_d_trivial: bool
    negatives_ok: bool
    failures: tuple[tuple[str, tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def d_identity_suite(t: NearDomainTable) -> IdentityReport:
    """Verify the coefficient identities over all applicable tuples.

    Requires a table that passed check_near_domain; on anything else the
    internal coefficient computation raises AxiomError.
    """
    n, add, mul = t.order, t.add, t.mul
    dt = d_table(t)
    e_set = compute_e(t)
    inv = [0] + [mul_inverse(t, a) for a in range(1, n)]
    lefts = [negatives(t, a)[0] for a in range(n)]
    rights = [negatives(t, a)[1] for a in range(n)]
    failures = []

    def first(name, gen):
        for witness in gen:
            failures.append((name, witness))
            return False
        return True

    reflexive = first(
        "d-reflexive", ((a,) for a in range(n) if dt[a][a] != 1)
    )
    quotient = first(
        "d-quotient",
        (
            (a, b)
            for a in range(n)
            for b in range(n)
            if mul[dt[a][b]][add[b][a]] != add[a][b]
        ),
    )
    conjugation = first(
        "d-conjugation",
        (
            (c, a, b)
            for c in range(1, n)
            for a in range(n)
            for b in range(n)
            if mul[mul[c][dt[a][b]]][inv[c]] != dt[mul[c][a]][mul[c][b]]
        ),
    )
    cocycle = first(
        "d-cocycle",
        (
            (a, b, c)
            for a in range(n)
            for b in range(n)
            for c in range(n)
            if dt[a][b]
            != mul[mul[dt[a][c]][dt[add[c][a]][add[rights[c]][b]]]][dt[rights[c]][b]]
        ),
    )
    doubling = first(
        "e-doubling",
        (
            (a, b)
            for a in e_set
            for b in e_set
            if add[add[a][b]][add[a][b]] not in e_set
        ),
    )
    trivial = first(
        "d-nontrivial",
        ((a, b) for a in range(n) for b in range(n) if dt[a][b] != 1),
    )
    negs = first(
        "neg-mismatch", ((a,) for a in range(n) if lefts[a] != rights[a])
    )
    return IdentityReport(
        reflexive_ok=reflexive,
        quotient_ok=quotient,
        conjugation_ok=conjugation,
        cocycle_ok=cocycle,
        doubling_ok=doubling,
        all_d_trivial=trivial,
        negatives_ok=negs,
        failures=tuple(failures),
    )


# ---------------------------------------------------------------------------
# text format
#
#   neardomain v1
#   order <n>
#   add
#   <n rows of n indices>
#   mul
#   <n rows of n indices>
#   label <name>          (optional)
#
# '#' starts a comment anywhere on a line; blank lines are skipped; anything
# else out of place is a hard error.


def format_table(t: NearDomainTable) -> str:
    lines = ["neardomain v1", f"order {t.order}", "add"]
    lines += [" ".join(str(x) for x in row) for row in t.add]
    lines.append("mul")
    lines += [" ".join(str(x) for x in row) for row in t.mul]
    if t.label:
        lines.append(f"label {t.label}")
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> NearDomainTable:
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    pos = 0

    def take(what: str) -> str:
        nonlocal pos
        if pos >= len(lines):
            raise TableFormatError(f"unexpected end of file, expected {what}")
        line = lines[pos]
        pos += 1
        return line

    if take("header 'neardomain v1'") != "neardomain v1":
        raise TableFormatError("first line must be 'neardomain v1'")
    order_line = take("'order <n>'").split()
    if len(order_line) != 2 or order_line[0] != "order":
        raise TableFormatError("second line must be 'order <n>'")
    try:
        n = int(order_line[1])
    except ValueError:
        raise TableFormatError(f"bad order {order_line[1]!r}") from None
    if n < 2:
        raise TableFormatError(f"order must be at least 2, got {n}")

    def read_block(keyword: str) -> list[list[int]]:
        if take(f"'{keyword}'") != keyword:
            raise TableFormatError(f"expected '{keyword}' section")
        rows = []
        for i in range(n):
            parts = take(f"{keyword} row {i}").split()
            try:
                row = [int(x) for x in parts]
            except ValueError:
                raise TableFormatError(f"non-integer entry in {keyword} row {i}") from None
            if len(row) != n:
                raise TableFormatError(
                    f"{keyword} row {i} has {len(row)} entries, expected {n}"
                )
            rows.append(row)
        return rows

    add = read_block("add")
    mul = read_block("mul")
    label = ""
    if pos < len(lines):
        line = lines[pos]
        if not line.startswith("label"):
            raise TableFormatError(f"unexpected trailing line {line!r}")
        label = line[len("label"):].strip()
        pos += 1
    if pos != len(lines):
        raise TableFormatError(f"unexpected trailing line {lines[pos]!r}")
    return make_table(add, mul, label=label)


def load_table(path) -> NearDomainTable:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_table(fh.read())


def save_table(t: NearDomainTable, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_table(t))
