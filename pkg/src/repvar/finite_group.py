"""Finite groups as Cayley tables, their conjugacy data, and the integer
transfer matrices their tube operators induce.

Elements are indices 0..n-1 with the identity pinned to 0 (tables are
relabeled on ingestion), so the disc vectors of a group datum are simply
indicator/projection vectors at coordinate 0.  All matrices here are plain
integer matrices; they are lifted to Laurent polynomials only when packed
into a ``TqftDatum``.
"""

from __future__ import annotations

import json
import random
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .poly import LaurentPoly
from .tqft import TqftDatum

__all__ = [
    "NotAGroup",
    "GroupTooLarge",
    "NotConjugationClosed",
    "BudgetExceeded",
    "FiniteGroup",
    "ConjugacyClasses",
    "from_cayley_table",
    "from_permutation_generators",
    "conjugacy_classes",
    "conjugacy_closure",
    "genus_matrix",
    "puncture_matrix",
    "tube_matrix_P",
    "to_tqft_datum",
    "class_reduce",
    "brute_force_count",
    "named_group",
    "NAMED_GROUPS",
    "trivial_group",
    "cyclic_group",
    "direct_product",
    "symmetric_3",
    "dihedral_4",
    "quaternion_8",
    "alternating_4",
    "group_from_json_dict",
    "group_to_json_dict",
    "load_group",
]


class NotAGroup(ValueError):
    """The input fails a group axiom; the message carries a witness."""


class GroupTooLarge(ValueError):
    """Closure of the generators exceeded the configured bound."""


class NotConjugationClosed(ValueError):
    """A puncture subset is not a union of conjugacy classes."""


class BudgetExceeded(RuntimeError):
    """A brute-force enumeration would exceed the operation budget."""


# Associativity is checked exhaustively up to this order, by sampling above.
_ASSOC_EXHAUSTIVE_LIMIT = 64
_ASSOC_SAMPLE_COUNT = 100_000

DEFAULT_MAX_ORDER = 10_000
DEFAULT_BUDGET = 10**9


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group of order n on elements 0..n-1 with identity 0."""

    order: int
    mult: tuple[tuple[int, ...], ...]
    inverse: tuple[int, ...]

    @property
    def identity(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conjugate(self, h: int, g: int) -> int:
        """h g h^-1."""
        return self.mult[self.mult[h][g]][self.inverse[h]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        return self.mult[self.mult[self.mult[a][b]][self.inverse[a]]][self.inverse[b]]


@dataclass(frozen=True)
class ConjugacyClasses:
    """Partition of a group into conjugacy classes, identity class first."""

    class_of: tuple[int, ...]
    members: tuple[tuple[int, ...], ...]
    centralizer_orders: tuple[int, ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(m[0] for m in self.members)

    def __len__(self) -> int:
        return len(self.members)


# ----------------------------------------------------------------------
# Construction and validation
# ----------------------------------------------------------------------


def from_cayley_table(table: Sequence[Sequence[int]]) -> FiniteGroup:
    """Validate a multiplication table and return the group, with the
    identity relabeled to index 0."""
    n = len(table)
    if n == 0:
        raise NotAGroup("empty table")
    rows = []
    for row in table:
        row = tuple(int(x) for x in row)
        if len(row) != n or any(x < 0 or x >= n for x in row):
            raise NotAGroup(f"not a square table over 0..{n - 1}")
        rows.append(row)

    identity = None
    for e in range(n):
        if all(rows[e][x] == x and rows[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise NotAGroup("no identity element")

    if identity != 0:
        sigma = list(range(n))
        sigma[0], sigma[identity] = identity, 0
        rows = [
            tuple(sigma[rows[sigma[i]][sigma[j]]] for j in range(n)) for i in range(n)
        ]

    inverse = []
    for x in range(n):
        inv_x = None
        for y in range(n):
            if rows[x][y] == 0 and rows[y][x] == 0:
                inv_x = y
                break
        if inv_x is None:
            raise NotAGroup(f"element {x} has no two-sided inverse")
        inverse.append(inv_x)

    if n <= _ASSOC_EXHAUSTIVE_LIMIT:
        triples = (
            (a, b, c) for a in range(n) for b in range(n) for c in range(n)
        )
    else:
        rng = random.Random(0x5EED)
        triples = (
            (rng.randrange(n), rng.randrange(n), rng.randrange(n))
            for _ in range(_ASSOC_SAMPLE_COUNT)
        )
    for a, b, c in triples:
        if rows[rows[a][b]][c] != rows[a][rows[b][c]]:
            raise NotAGroup(f"associativity fails at triple ({a}, {b}, {c})")

    return FiniteGroup(order=n, mult=tuple(rows), inverse=tuple(inverse))


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    # Apply q first, then p.
    return tuple(p[x] for x in q)


def from_permutation_generators(
    degree: int,
    generators: Iterable[Sequence[int]],
    max_order: int = DEFAULT_MAX_ORDER,
) -> FiniteGroup:
    """Close the generators under composition and build the Cayley table
    of the generated permutation group."""
    gens = []
    for g in generators:
        g = tuple(int(x) for x in g)
        if sorted(g) != list(range(degree)):
            raise NotAGroup(f"{g!r} is not a permutation of 0..{degree - 1}")
        gens.append(g)

    identity = tuple(range(degree))
    index: dict[tuple[int, ...], int] = {identity: 0}
    elements = [identity]
    frontier = [identity]
    while frontier:
        next_frontier = []
        for perm in frontier:
            for g in gens:
                product = _compose(perm, g)
                if product not in index:
                    if len(elements) >= max_order:
                        raise GroupTooLarge(
                            f"generated group exceeds {max_order} elements"
                        )
                    index[product] = len(elements)
                    elements.append(product)
                    next_frontier.append(product)
        frontier = next_frontier

    table = [
        [index[_compose(a, b)] for b in elements] for a in elements
    ]
    return from_cayley_table(table)


# ----------------------------------------------------------------------
# Conjugacy data
# ----------------------------------------------------------------------


def conjugacy_classes(group: FiniteGroup) -> ConjugacyClasses:
    n = group.order
    class_of = [-1] * n
    members: list[tuple[int, ...]] = []
    centralizers: list[int] = []
    for x in range(n):
        if class_of[x] != -1:
            continue
        orbit = sorted({group.conjugate(h, x) for h in range(n)})
        idx = len(members)
        for y in orbit:
            class_of[y] = idx
        members.append(tuple(orbit))
        centralizers.append(
            sum(1 for h in range(n) if group.mul(h, x) == group.mul(x, h))
        )
    return ConjugacyClasses(tuple(class_of), tuple(members), tuple(centralizers))


def conjugacy_closure(group: FiniteGroup, elements: Iterable[int]) -> tuple[int, ...]:
    """Smallest conjugation-closed subset containing the given elements."""
    closed: set[int] = set()
    for x in elements:
        x = int(x)
        if x < 0 or x >= group.order:
            raise ValueError(f"element index {x} out of range")
        closed.update(group.conjugate(h, x) for h in range(group.order))
    return tuple(sorted(closed))


def _check_conjugation_closed(group: FiniteGroup, subset: tuple[int, ...]) -> None:
    member = set(subset)
    for x in subset:
        if x < 0 or x >= group.order:
            raise ValueError(f"element index {x} out of range")
        for h in range(group.order):
            y = group.conjugate(h, x)
            if y not in member:
                raise NotConjugationClosed(
                    f"conjugate {y} of {x} is missing from the subset"
                )


# ----------------------------------------------------------------------
# Transfer matrices (integer form, row index = output generator)
# ----------------------------------------------------------------------


def genus_matrix(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """M[a][g] = number of (g1, g2, h) with h g [g1, g2] h^-1 = a.

    Computed in O(n^3) through the commutator-count vector
    c(k) = #{(g1, g2) : [g1, g2] = k}: summing over h, the count for
    (a, g) is the sum of c(g^-1 h^-1 a h).
    """
    n = group.order
    mult = group.mult
    inv = group.inverse

    comm_count = [0] * n
    for a in range(n):
        for b in range(n):
            comm_count[group.commutator(a, b)] += 1

    # conj[a][h] = h^-1 a h
    conj = [
        [mult[mult[inv[h]][a]][h] for h in range(n)] for a in range(n)
    ]

    rows = []
    for a in range(n):
        conj_a = conj[a]
        row = []
        for g in range(n):
            mult_ginv = mult[inv[g]]
            row.append(sum(comm_count[mult_ginv[x]] for x in conj_a))
        rows.append(tuple(row))
    return tuple(rows)


def puncture_matrix(
    group: FiniteGroup, subset: Iterable[int]
) -> tuple[tuple[int, ...], ...]:
    """M[a][g] = number of (g1, h) in G x subset with g1 g h g1^-1 = a.

    The subset must be closed under conjugation.
    """
    lam = tuple(sorted(set(int(x) for x in subset)))
    _check_conjugation_closed(group, lam)
    n = group.order
    mult = group.mult
    rows = [[0] * n for _ in range(n)]
    for g in range(n):
        row_g = mult[g]
        for h in lam:
            gh = row_g[h]
            for g1 in range(n):
                rows[group.conjugate(g1, gh)][g] += 1
    return tuple(tuple(row) for row in rows)


def tube_matrix_P(group: FiniteGroup) -> tuple[tuple[int, ...], ...]:
    """M[a][g] = number of h with h g h^-1 = a; nonzero exactly on
    conjugate pairs, where it equals the centralizer order."""
    n = group.order
    rows = [[0] * n for _ in range(n)]
    for g in range(n):
        for h in range(n):
            rows[group.conjugate(h, g)][g] += 1
    return tuple(tuple(row) for row in rows)


# ----------------------------------------------------------------------
# Datum construction
# ----------------------------------------------------------------------


def _lift(matrix: Sequence[Sequence[int]]) -> tuple[tuple[LaurentPoly, ...], ...]:
    return tuple(tuple(LaurentPoly.const(x) for x in row) for row in matrix)


def _unit_vector(rank: int, index: int) -> tuple[LaurentPoly, ...]:
    return tuple(
        LaurentPoly.one() if i == index else LaurentPoly.zero() for i in range(rank)
    )


def to_tqft_datum(
    group: FiniteGroup,
    punctures: Mapping[str, Iterable[int]] | None = None,
) -> TqftDatum:
    """Full-rank datum: one coordinate per group element, e_G = |G|,
    disc vectors at the identity coordinate."""
    n = group.order
    tubes = {}
    for label, subset in (punctures or {}).items():
        tubes[str(label)] = _lift(puncture_matrix(group, subset))
    return TqftDatum(
        rank=n,
        e_g=LaurentPoly.const(n),
        genus_tube=_lift(genus_matrix(group)),
        puncture_tubes=tubes,
        identity_tube=_lift(tube_matrix_P(group)),
        disc_in=_unit_vector(n, 0),
        disc_out=_unit_vector(n, 0),
    )


def class_reduce(datum: TqftDatum, group: FiniteGroup) -> TqftDatum:
    """Rewrite a full-rank group datum on class-sum coordinates.

    Every tube matrix of a group is conjugation-equivariant, so the span
    of the class sums is invariant and contains the disc vector; the
    reduced datum gives identical normalized results at rank = number of
    conjugacy classes.
    """
    if datum.rank != group.order:
        raise ValueError("datum rank does not match the group order")
    classes = conjugacy_classes(group)
    reps = classes.representatives
    k = len(classes)

    def reduce_matrix(matrix):
        rows = []
        for d in range(k):
            full_row = matrix[reps[d]]
            row = []
            for c in range(k):
                acc = LaurentPoly.zero()
                for g in classes.members[c]:
                    acc = acc + full_row[g]
                row.append(acc)
            rows.append(tuple(row))
        return tuple(rows)

    return TqftDatum(
        rank=k,
        e_g=datum.e_g,
        genus_tube=reduce_matrix(datum.genus_tube),
        puncture_tubes={
            label: reduce_matrix(m) for label, m in datum.puncture_tubes.items()
        },
        identity_tube=(
            reduce_matrix(datum.identity_tube) if datum.identity_tube is not None else None
        ),
        disc_in=_unit_vector(k, 0),
        disc_out=_unit_vector(k, 0),
    )


# ----------------------------------------------------------------------
# Brute-force oracle
# ----------------------------------------------------------------------


def brute_force_count(
    group: FiniteGroup,
    genus: int,
    punctures: Sequence[Iterable[int]] = (),
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Number of tuples (a_1, b_1, ..., a_g, b_g, c_1, ..., c_s) with
    [a_1,b_1]...[a_g,b_g] c_1 ... c_s = identity and c_j in the j-th
    puncture subset.

    Direct nested enumeration carrying partial products; the last factor
    is resolved by multiplicity lookup instead of a loop, since it must
    equal the inverse of the partial product.
    """
    if genus < 0:
        raise ValueError("genus must be >= 0")
    n = group.order
    lams = []
    for subset in punctures:
        lam = tuple(sorted(set(int(x) for x in subset)))
        _check_conjugation_closed(group, lam)
        lams.append(lam)

    cost = n ** (2 * genus)
    for lam in lams:
        cost *= len(lam)
    if cost > budget:
        raise BudgetExceeded(
            f"enumeration of {cost} tuples exceeds the budget of {budget}"
        )

    slots: list[Sequence[int]] = []
    if genus:
        comm_values = [
            group.commutator(a, b) for a in range(n) for b in range(n)
        ]
        slots.extend([comm_values] * genus)
    slots.extend(lams)

    if not slots:
        return 1  # the empty product is the identity

    mult = group.mult
    inverse = group.inverse
    last = Counter(slots[-1])
    depth = len(slots) - 1

    def count_from(i: int, prefix: int) -> int:
        if i == depth:
            return last[inverse[prefix]]
        row = mult[prefix]
        slot = slots[i]
        total = 0
        for x in slot:
            total += count_from(i + 1, row[x])
        return total

    return count_from(0, 0)


# ----------------------------------------------------------------------
# Standard groups
# ----------------------------------------------------------------------


def trivial_group() -> FiniteGroup:
    return from_cayley_table([[0]])


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("order must be >= 1")
    return from_cayley_table([[(i + j) % n for j in range(n)] for i in range(n)])


def direct_product(g1: FiniteGroup, g2: FiniteGroup) -> FiniteGroup:
    n2 = g2.order

    def encode(a: int, b: int) -> int:
        return a * n2 + b

    n = g1.order * n2
    table = [[0] * n for _ in range(n)]
    for a1 in range(g1.order):
        for b1 in range(n2):
            for a2 in range(g1.order):
                for b2 in range(n2):
                    table[encode(a1, b1)][encode(a2, b2)] = encode(
                        g1.mul(a1, a2), g2.mul(b1, b2)
                    )
    return from_cayley_table(table)


def symmetric_3() -> FiniteGroup:
    return from_permutation_generators(3, [(1, 0, 2), (1, 2, 0)])


def dihedral_4() -> FiniteGroup:
    # Symmetries of the square 0-1-2-3: a rotation and a reflection.
    return from_permutation_generators(4, [(1, 2, 3, 0), (1, 0, 3, 2)])


def alternating_4() -> FiniteGroup:
    return from_permutation_generators(4, [(1, 2, 0, 3), (1, 0, 3, 2)])


def quaternion_8() -> FiniteGroup:
    # Elements 2*axis + sign with axes 1, i, j, k; sign bit 1 means negated.
    axis_mult = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (2, 0): (0, 2), (3, 0): (0, 3),
        (1, 1): (1, 0), (2, 2): (1, 0), (3, 3): (1, 0),
        (1, 2): (0, 3), (2, 3): (0, 1), (3, 1): (0, 2),
        (2, 1): (1, 3), (3, 2): (1, 1), (1, 3): (1, 2),
    }
    n = 8
    table = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            sx, ax = x & 1, x >> 1
            sy, ay = y & 1, y >> 1
            sign, axis = axis_mult[(ax, ay)]
            table[x][y] = axis * 2 + (sx ^ sy ^ sign)
    return from_cayley_table(table)


NAMED_GROUPS = {
    "z1": trivial_group,
    "z2": lambda: cyclic_group(2),
    "z3": lambda: cyclic_group(3),
    "z4": lambda: cyclic_group(4),
    "z2xz2": lambda: direct_product(cyclic_group(2), cyclic_group(2)),
    "s3": symmetric_3,
    "d4": dihedral_4,
    "q8": quaternion_8,
    "a4": alternating_4,
}


def named_group(name: str) -> FiniteGroup:
    try:
        builder = NAMED_GROUPS[name.lower()]
    except KeyError:
        known = ", ".join(sorted(NAMED_GROUPS))
        raise ValueError(f"unknown group name {name!r}; known: {known}") from None
    return builder()


# ----------------------------------------------------------------------
# Group files
# ----------------------------------------------------------------------


def group_from_json_dict(data: dict, max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    if not isinstance(data, dict):
        raise NotAGroup("group file must contain a JSON object")
    if "table" in data:
        return from_cayley_table(data["table"])
    if "degree" in data and "generators" in data:
        return from_permutation_generators(
            int(data["degree"]), data["generators"], max_order=max_order
        )
    raise NotAGroup("group file needs either 'table' or 'degree' + 'generators'")


def group_to_json_dict(group: FiniteGroup) -> dict:
    return {"table": [list(row) for row in group.mult]}


def load_group(path: "str | Path", max_order: int = DEFAULT_MAX_ORDER) -> FiniteGroup:
    with open(path, encoding="utf-8") as handle:
        data = json.load(handle)
    return group_from_json_dict(data, max_order=max_order)
