"""Sharply 2-transitive actions and their correspondence with near-domains.

The affine maps x -> a + b*x of a near-domain table form a sharply
2-transitive group; conversely a sharply 2-transitive group of odd
characteristic is coordinatized back into a table by fixing two base points,
reading multiplication off the stabilizer of the first and addition off
involutions.  Degrees stay small (at most around 16), so permutations are
dense image tuples and groups are plain sets of them.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AxiomError, ContractError, GroupFormatError
from .tables import (
    NearDomainTable,
    check_near_domain,
    compute_d,
    element_add_order,
    element_mul_order,
    make_table,
)

__all__ = [
    "PermGroup",
    "InvolutionReport",
    "SubgroupInfo",
    "identity_perm",
    "compose",
    "perm_inverse",
    "perm_order",
    "fixed_points",
    "make_group",
    "affine_group",
    "is_sharply_2_transitive",
    "involution_translation_analysis",
    "permutation_characteristic",
    "split_check",
    "point_stabilizer",
    "coordinatize",
    "find_isomorphism",
    "iso_near_domain",
    "subgroups_avoiding",
    "parse_group",
    "format_group",
    "load_group",
    "save_group",
]

Perm = tuple[int, ...]


def identity_perm(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """(p o q)(x) = p(q(x))."""
    return tuple(p[q[x]] for x in range(len(p)))


def perm_inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v] = i
    return tuple(out)


def perm_order(p: Perm) -> int:
    e = identity_perm(len(p))
    q = p
    m = 1
    while q != e:
        q = compose(p, q)
        m += 1
    return m


def fixed_points(p: Perm) -> tuple[int, ...]:
    return tuple(x for x, v in enumerate(p) if x == v)


@dataclass(frozen=True)
class PermGroup:
    """A closed set of permutations of [0, n), deduplicated by image tuple."""

    degree: int
    elements: frozenset

    @property
    def order(self) -> int:
        return len(self.elements)

    def sorted_elements(self) -> list[Perm]:
        return sorted(self.elements)


def make_group(degree: int, perms, validate: bool = True) -> PermGroup:
    """Build a group from an iterable of image tuples.

    With validate on, checks that every element is a bijection of the right
    degree and that the set contains the identity and is closed under
    composition and inverse.
    """
    elements = frozenset(tuple(p) for p in perms)
    if validate:
        for p in elements:
            if len(p) != degree or sorted(p) != list(range(degree)):
                raise GroupFormatError(f"not a degree-{degree} permutation: {p}")
        if identity_perm(degree) not in elements:
            raise GroupFormatError("identity permutation missing")
        for p in elements:
            if perm_inverse(p) not in elements:
                raise GroupFormatError(f"inverse of {p} missing")
        for p in elements:
            for q in elements:
                if compose(p, q) not in elements:
                    raise GroupFormatError(f"composition of {p} and {q} missing")
    return PermGroup(degree=degree, elements=elements)


def affine_group(t: NearDomainTable) -> PermGroup:
    """All maps x -> a + b*x of a checked table, as explicit permutations."""
    n, add, mul = t.order, t.add, t.mul
    perms = set()
    for a in range(n):
        for b in range(1, n):
            row = mul[b]
            perms.add(tuple(add[a][row[x]] for x in range(n)))
    if len(perms) != n * (n - 1):
        raise AxiomError(
            f"affine maps are not distinct: got {len(perms)}, expected {n * (n - 1)}"
        )
    group = make_group(n, perms, validate=True)
    return group


def is_sharply_2_transitive(group: PermGroup) -> bool:
    """Exactly one element carries (0, 1) to each ordered pair of distinct points.

    Together with closure this is equivalent to the definitional condition
    over all pairs of pairs.
    """
    n = group.degree
    if n < 2 or group.order != n * (n - 1):
        return False
    images = {(p[0], p[1]) for p in group.elements}
    return len(images) == n * (n - 1)


# ---------------------------------------------------------------------------
# involution structure


@dataclass(frozen=True)
class InvolutionReport:
    """Involutions, translations, and the characteristic-2 dichotomy.

    In characteristic 2 the involutions are fixed-point-free.  Otherwise
    every involution fixes exactly one point, every point has a unique
    fixing involution, and conjugation on the involutions mirrors the
    action on points.  Translations are the products of two distinct
    involutions; they share a single order, the characteristic.
    """

    involutions: tuple
    involutions_have_fixed_points: bool
    fixed_point_pattern_uniform: bool
    translations: tuple
    translation_order: int | None
    translation_orders_uniform: bool
    involutions_conjugate: bool
    fixing_involution: tuple | None
    fixing_unique: bool | None
    swapping_unique: bool
    action_matches_conjugation: bool | None


def _involutions(group: PermGroup) -> list[Perm]:
    e = identity_perm(group.degree)
    return sorted(p for p in group.elements if p != e and compose(p, p) == e)


def involution_translation_analysis(group: PermGroup) -> InvolutionReport:
    if not is_sharply_2_transitive(group):
        raise ContractError("group is not sharply 2-transitive")
    n = group.degree
    invs = _involutions(group)
    fixed = [fixed_points(p) for p in invs]
    have_fixed = any(fixed)
    uniform = all(len(f) == 1 for f in fixed) if have_fixed else True

    translations = sorted(
        {compose(p, q) for p in invs for q in invs if p != q}
    )
    orders = sorted({perm_order(p) for p in translations})
    orders_uniform = len(orders) <= 1
    translation_order = orders[0] if len(orders) == 1 else None

    conjugate = True
    if invs:
        base = invs[0]
        for p in invs[1:]:
            if not any(
                compose(compose(g, base), perm_inverse(g)) == p
                for g in group.elements
            ):
                conjugate = False
                break

    fixing = None
    fixing_unique = None
    action_matches = None
    if have_fixed:
        per_point = [[p for p, f in zip(invs, fixed) if x in f] for x in range(n)]
        fixing_unique = all(len(c) == 1 for c in per_point)
        if fixing_unique:
            fixing = tuple(c[0] for c in per_point)
            action_matches = all(
                compose(compose(g, fixing[x]), perm_inverse(g)) == fixing[g[x]]
                for g in group.elements
                for x in range(n)
            )

    swap_counts = {}
    for p in invs:
        for x in range(n):
            y = p[x]
            if x < y and p[y] == x:
                swap_counts[(x, y)] = swap_counts.get((x, y), 0) + 1
    swapping_unique = all(
        swap_counts.get((x, y), 0) == 1 for x in range(n) for y in range(x + 1, n)
    )

    return InvolutionReport(
        involutions=tuple(invs),
        involutions_have_fixed_points=have_fixed,
        fixed_point_pattern_uniform=uniform,
        translations=tuple(translations),
        translation_order=translation_order,
        translation_orders_uniform=orders_uniform,
        involutions_conjugate=conjugate,
        fixing_involution=fixing,
        fixing_unique=fixing_unique,
        swapping_unique=swapping_unique,
        action_matches_conjugation=action_matches,
    )


def permutation_characteristic(group: PermGroup) -> int:
    """2 when involutions are fixed-point-free, else the common translation order."""
    report = involution_translation_analysis(group)
    if not report.involutions_have_fixed_points:
        return 2
    if report.translation_order is None:
        raise AxiomError("translations do not share a single order")
    return report.translation_order


def split_check(group: PermGroup) -> PermGroup | None:
    """The regular normal subgroup formed by the translations, if it exists.

    Candidate is translations plus identity; at degree 2 there are no
    products of two distinct involutions, so the lone involution itself is
    the candidate.  Returns None unless the candidate is closed, has order
    equal to the degree, acts transitively, and is conjugation-stable.
    """
    if not is_sharply_2_transitive(group):
        raise ContractError("group is not sharply 2-transitive")
    n = group.degree
    invs = _involutions(group)
    translations = {compose(p, q) for p in invs for q in invs if p != q}
    candidate = translations if translations else set(invs)
    candidate = candidate | {identity_perm(n)}
    for p in candidate:
        for q in candidate:
            if compose(p, q) not in candidate:
                return None
    if len(candidate) != n:
        return None
    if {p[0] for p in candidate} != set(range(n)):
        return None
    for g in group.elements:
        g_inv = perm_inverse(g)
        for p in candidate:
            if compose(compose(g, p), g_inv) not in candidate:
                return None
    return PermGroup(degree=n, elements=frozenset(candidate))


def point_stabilizer(group: PermGroup, x: int) -> PermGroup:
    if not 0 <= x < group.degree:
        raise ContractError(f"point {x} out of range [0, {group.degree})")
    return PermGroup(
        degree=group.degree,
        elements=frozenset(p for p in group.elements if p[x] == x),
    )


# ---------------------------------------------------------------------------
# coordinatization


def coordinatize(group: PermGroup, zero: int, one: int) -> NearDomainTable:
    """Recover a near-domain table from a sharply 2-transitive action.

    Multiplication: a*b = g_a(b) where g_a is the unique stabilizer element
    of ``zero`` sending ``one`` to a.  Addition: a + b is the image of b
    under the involution swapping ``zero`` and a composed with the
    involution fixing ``zero``.  The involution recipe needs each point to
    carry a unique fixing involution, so characteristic 2 is refused.
    """
    n = group.degree
    if not 0 <= zero < n or not 0 <= one < n:
        raise ContractError("base points out of range")
    if zero == one:
        raise ContractError("base points must be distinct")
    if not is_sharply_2_transitive(group):
        raise ContractError("group is not sharply 2-transitive")
    report = involution_translation_analysis(group)
    if not report.involutions_have_fixed_points:
        raise ContractError(
            "unsupported characteristic (2): involutions have no fixed points"
        )
    if not report.fixing_unique:
        raise AxiomError("fixing involutions are not unique")  # cannot happen

    points = [zero, one] + sorted(set(range(n)) - {zero, one})
    idx = {pt: i for i, pt in enumerate(points)}

    stab = [g for g in group.elements if g[zero] == zero]
    by_image = {g[one]: g for g in stab}
    if len(by_image) != n - 1 or zero in by_image:
        raise AxiomError("stabilizer does not act regularly off the base point")

    mul = [[0] * n for _ in range(n)]
    for a_pt in points[1:]:
        g = by_image[a_pt]
        row = mul[idx[a_pt]]
        for b_pt in points:
            row[idx[b_pt]] = idx[g[b_pt]]

    iota_zero = report.fixing_involution[zero]
    swapper = {}
    for p in report.involutions:
        if p[zero] != zero:
            if p[zero] in swapper:
                raise AxiomError("swapping involutions are not unique")
            swapper[p[zero]] = p
    add = [[0] * n for _ in range(n)]
    add[0] = list(range(n))
    for a_pt in points[1:]:
        comp = compose(swapper[a_pt], iota_zero)
        row = add[idx[a_pt]]
        for b_pt in points:
            row[idx[b_pt]] = idx[comp[b_pt]]

    t = make_table(add, mul, label=f"coordinatized(zero={zero}, one={one})")
    if not check_near_domain(t).ok:
        raise AxiomError("coordinatization did not produce a near-domain")
    return t


# ---------------------------------------------------------------------------
# isomorphism of tables


def _invariants(t: NearDomainTable) -> tuple:
    return tuple(
        (element_mul_order(t, x), element_add_order(t, x)) for x in range(1, t.order)
    )


def find_isomorphism(t1: NearDomainTable, t2: NearDomainTable):
    """A bijection fixing 0 and 1 transporting both tables, or None.

    Candidates are restricted to maps preserving each element's
    multiplicative and additive order, then verified entry by entry.
    """
    n = t1.order
    if n != t2.order:
        return None
    inv1 = {x: (element_mul_order(t1, x), element_add_order(t1, x)) for x in range(1, n)}
    inv2 = {x: (element_mul_order(t2, x), element_add_order(t2, x)) for x in range(1, n)}
    if sorted(inv1.values()) != sorted(inv2.values()):
        return None
    if inv1[1] != inv2[1]:
        return None
    sources = sorted(x for x in range(2, n))
    pools = {x: [y for y in range(2, n) if inv2[y] == inv1[x]] for x in sources}

    def extend(i, mapping, used):
        if i == len(sources):
            for a in range(n):
                ma = mapping[a]
                for b in range(n):
                    mb = mapping[b]
                    if (
                        mapping[t1.add[a][b]] != t2.add[ma][mb]
                        or mapping[t1.mul[a][b]] != t2.mul[ma][mb]
                    ):
                        return None
            return dict(mapping)
        x = sources[i]
        for y in pools[x]:
            if y not in used:
                mapping[x] = y
                found = extend(i + 1, mapping, used | {y})
                if found:
                    return found
                del mapping[x]
        return None

    return extend(0, {0: 0, 1: 1}, set())


def iso_near_domain(t1: NearDomainTable, t2: NearDomainTable) -> bool:
    return find_isomorphism(t1, t2) is not None


# ---------------------------------------------------------------------------
# multiplicative subgroups avoiding nontrivial coefficients


@dataclass(frozen=True)
class SubgroupInfo:
    """A subgroup of the multiplicative group, as sorted elements plus index."""

    elements: tuple[int, ...]
    index: int


def subgroups_avoiding(t: NearDomainTable, max_index: int) -> tuple[SubgroupInfo, ...]:
    """All subgroups of the nonzero part with index at most max_index that
    contain no nontrivial coefficient d(a, b).

    On finite models every coefficient is trivial, so the avoidance clause
    is vacuous there; the operation exists to make the hypothesis checkable.
    """
    n = t.order
    if n > 16:
        raise ContractError(f"order {n} too large for subgroup enumeration")
    if max_index < 1:
        raise ContractError("max_index must be at least 1")
    forbidden = {
        compute_d(t, a, b) for a in range(n) for b in range(n)
    } - {1}
    units = range(1, n)

    def closure(gens):
        elems = {1}
        frontier = set(gens) | {1}
        while frontier:
            new = set()
            for a in frontier:
                for b in elems | frontier:
                    for c in (t.mul[a][b], t.mul[b][a]):
                        if c not in elems and c not in frontier and c not in new:
                            new.add(c)
            elems |= frontier
            frontier = new
        return frozenset(elems)

    subgroups = {frozenset({1})}
    grew = True
    while grew:
        grew = False
        for h in list(subgroups):
            for g in units:
                if g not in h:
                    bigger = closure(h | {g})
                    if bigger not in subgroups:
                        subgroups.add(bigger)
                        grew = True
    out = []
    for h in subgroups:
        index = (n - 1) // len(h)
        if index <= max_index and not (h & forbidden):
            out.append(SubgroupInfo(elements=tuple(sorted(h)), index=index))
    out.sort(key=lambda s: (s.index, s.elements))
    return tuple(out)


# ---------------------------------------------------------------------------
# text format
#
#   permgroup v1
#   degree <n>
#   <one permutation per line, n images>


def format_group(group: PermGroup) -> str:
    lines = ["permgroup v1", f"degree {group.degree}"]
    lines += [" ".join(str(x) for x in p) for p in group.sorted_elements()]
    return "\n".join(lines) + "\n"


def parse_group(text: str) -> PermGroup:
    lines = []
    for raw in text.splitlines():
        stripped = raw.split("#", 1)[0].strip()
        if stripped:
            lines.append(stripped)
    if not lines or lines[0] != "permgroup v1":
        raise GroupFormatError("first line must be 'permgroup v1'")
    if len(lines) < 2 or not lines[1].startswith("degree"):
        raise GroupFormatError("second line must be 'degree <n>'")
    parts = lines[1].split()
    if len(parts) != 2:
        raise GroupFormatError("second line must be 'degree <n>'")
    try:
        degree = int(parts[1])
    except ValueError:
        raise GroupFormatError(f"bad degree {parts[1]!r}") from None
    if degree < 1:
        raise GroupFormatError(f"degree must be positive, got {degree}")
    perms = []
    for line in lines[2:]:
        try:
            images = tuple(int(x) for x in line.split())
        except ValueError:
            raise GroupFormatError(f"non-integer image in line {line!r}") from None
        if len(images) != degree:
            raise GroupFormatError(
                f"permutation has {len(images)} images, expected {degree}"
            )
        perms.append(images)
    if len(set(perms)) != len(perms):
        raise GroupFormatError("duplicate permutation in file")
    try:
        return make_group(degree, perms, validate=True)
    except GroupFormatError:
        raise
    except Exception as exc:  # pragma: no cover
        raise GroupFormatError(str(exc)) from exc


def load_group(path) -> PermGroup:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_group(fh.read())


def save_group(group: PermGroup, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_group(group))
