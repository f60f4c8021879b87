"""Finitely generated abelian groups given by cyclic factor lists.

A group is ``Z/d_1 + ... + Z/d_n`` with ``d_i = 0`` meaning an infinite
cyclic factor.  Elements are plain tuples of ints, reduced into
``[0, d_i)`` on every finite coordinate.  Subgroups are stored through
the Hermite normal form of their preimage lattice in ``Z^n`` (generators
stacked over the relation rows ``d_i e_i``), which makes equality a
literal comparison.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Iterator, Sequence

from .errors import (
    AmbientMismatch,
    FactorOne,
    IllDefinedMap,
    InfiniteGroup,
    LengthMismatch,
    NotPrime,
)
from .normal_forms import hermite_rows, smith_normal_form

GroupElement = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _lcm(a: int, b: int) -> int:
    return a * b // math.gcd(a, b)


@dataclass(frozen=True)
class FgAbelianGroup:
    factors: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(int(d) for d in self.factors))
        for i, d in enumerate(self.factors):
            if d == 1:
                raise FactorOne(f"factor {i} equals 1; trivial factors are not allowed")
            if d < 0:
                raise ValueError(f"factor {i} is negative: {d}")

    @property
    def ngens(self) -> int:
        return len(self.factors)

    @property
    def rank(self) -> int:
        return self.factors.count(0)

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int | None:
        """Number of elements, or None for an infinite group."""
        return math.prod(self.factors) if self.is_finite else None

    @cached_property
    def relations(self) -> list[list[int]]:
        n = self.ngens
        return [
            [d if j == i else 0 for j in range(n)]
            for i, d in enumerate(self.factors)
            if d
        ]

    def zero(self) -> GroupElement:
        return (0,) * self.ngens

    def basis(self, i: int) -> GroupElement:
        return normalize(self, [int(j == i) for j in range(self.ngens)])

    def __str__(self):
        if not self.factors:
            return "0"
        return " + ".join("Z" if d == 0 else f"Z{d}" for d in self.factors)


def make_group(factors: Iterable[int]) -> FgAbelianGroup:
    return FgAbelianGroup(tuple(factors))


def normalize(g: FgAbelianGroup, raw: Sequence[int]) -> GroupElement:
    if len(raw) != g.ngens:
        raise LengthMismatch(f"expected {g.ngens} coordinates, got {len(raw)}")
    return tuple(int(x) % d if d else int(x) for x, d in zip(raw, g.factors))


def add(g: FgAbelianGroup, x: Sequence[int], y: Sequence[int]) -> GroupElement:
    return normalize(g, [a + b for a, b in zip(x, y)])


def neg(g: FgAbelianGroup, x: Sequence[int]) -> GroupElement:
    return normalize(g, [-a for a in x])


def scale(g: FgAbelianGroup, n: int, x: Sequence[int]) -> GroupElement:
    return normalize(g, [n * a for a in x])


def element_order(g: FgAbelianGroup, x: Sequence[int]) -> int | float:
    """Additive order of ``x``; ``math.inf`` when ``x`` has infinite order."""
    x = normalize(g, x)
    order = 1
    for a, d in zip(x, g.factors):
        if d == 0:
            if a:
                return math.inf
        else:
            order = _lcm(order, d // math.gcd(a, d))
    return order


def enumerate_elements(g: FgAbelianGroup) -> Iterator[GroupElement]:
    """All elements in lexicographic order of their coefficient vectors."""
    if not g.is_finite:
        raise InfiniteGroup(f"cannot enumerate the infinite group {g}")
    return itertools.product(*(range(d) for d in g.factors))


def _check_same(a: "Subgroup", b: "Subgroup"):
    if a.ambient != b.ambient:
        raise AmbientMismatch(f"subgroups of {a.ambient} and {b.ambient}")


@dataclass(frozen=True)
class Subgroup:
    """A subgroup in canonical form.

    ``gens`` are the normalized nonzero rows of the Hermite form of the
    preimage lattice; ``lattice`` is that Hermite form itself (relation
    rows included) and is what membership tests reduce against.
    """

    ambient: FgAbelianGroup
    gens: tuple[GroupElement, ...]
    lattice: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)

    def __contains__(self, x) -> bool:
        return member(self, x)

    def __le__(self, other: "Subgroup") -> bool:
        _check_same(self, other)
        return all(member(other, x) for x in self.gens)

    def __ge__(self, other: "Subgroup") -> bool:
        return other <= self

    def __add__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_sum(self, other)

    def __and__(self, other: "Subgroup") -> "Subgroup":
        return subgroup_intersection(self, other)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @cached_property
    def order(self) -> int | None:
        """Number of elements, or None when the subgroup is infinite."""
        g = self.ambient
        fin = [i for i, d in enumerate(g.factors) if d]
        if any(x[i] for x in self.gens for i in range(g.ngens) if not g.factors[i]):
            return None
        sub = make_group([g.factors[i] for i in fin])
        rows = hermite_rows(
            [[x[i] for i in fin] for x in self.gens] + sub.relations, len(fin)
        )
        index = math.prod(rows[k][k] for k in range(len(fin)))
        return math.prod(sub.factors) // index

    def __str__(self):
        if not self.gens:
            return "<0>"
        return "<" + ", ".join(str(x) for x in self.gens) + ">"


def subgroup_from_generators(
    g: FgAbelianGroup, gens: Iterable[Sequence[int]]
) -> Subgroup:
    rows = [list(normalize(g, x)) for x in gens]
    lattice = hermite_rows(rows + g.relations, g.ngens)
    canon = []
    for row in lattice:
        x = normalize(g, row)
        if any(x):
            canon.append(x)
    return Subgroup(g, tuple(canon), tuple(tuple(r) for r in lattice))


def whole_group(g: FgAbelianGroup) -> Subgroup:
    return subgroup_from_generators(g, [g.basis(i) for i in range(g.ngens)])


def zero_subgroup(g: FgAbelianGroup) -> Subgroup:
    return subgroup_from_generators(g, [])


def member(s: Subgroup, x: Sequence[int]) -> bool:
    """Reduce ``x`` against the echelon lattice basis; a member reduces to 0."""
    v = list(normalize(s.ambient, x))
    for row in s.lattice:
        col = next(j for j, a in enumerate(row) if a)
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return not any(v)


def subgroup_sum(a: Subgroup, b: Subgroup) -> Subgroup:
    _check_same(a, b)
    return subgroup_from_generators(a.ambient, a.gens + b.gens)


def subgroup_intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    """Lattice intersection via the Hermite form of ``[[A, A], [B, 0]]``.

    Rows whose first block vanishes carry exactly the vectors of
    ``Lat(A) & Lat(B)`` in their second block.
    """
    _check_same(a, b)
    n = a.ambient.ngens
    block = [list(r) + list(r) for r in a.lattice]
    block += [list(r) + [0] * n for r in b.lattice]
    rows = hermite_rows(block, 2 * n)
    common = [r[n:] for r in rows if not any(r[:n])]
    return subgroup_from_generators(a.ambient, common)


def sum_of(g: FgAbelianGroup, subgroups: Iterable[Subgroup]) -> Subgroup:
    return reduce(subgroup_sum, subgroups, zero_subgroup(g))


@dataclass(frozen=True)
class Quotient:
    """``group`` presents ambient/sub; ``projection[i]`` is the image of e_i and
    ``section[t]`` an ambient preimage of the t-th quotient generator."""

    ambient: FgAbelianGroup
    sub: Subgroup
    group: FgAbelianGroup
    projection: tuple[GroupElement, ...]
    section: tuple[GroupElement, ...]

    def project(self, x: Sequence[int]) -> GroupElement:
        acc = [0] * self.group.ngens
        for c, img in zip(x, self.projection):
            if c:
                acc = [a + c * b for a, b in zip(acc, img)]
        return normalize(self.group, acc)

    def lift(self, y: Sequence[int]) -> GroupElement:
        acc = [0] * self.ambient.ngens
        for c, pre in zip(y, self.section):
            if c:
                acc = [a + c * b for a, b in zip(acc, pre)]
        return normalize(self.ambient, acc)


def quotient_group(g: FgAbelianGroup, s: Subgroup) -> Quotient:
    if s.ambient != g:
        raise AmbientMismatch(f"subgroup of {s.ambient} used with {g}")
    n = g.ngens
    nf = smith_normal_form([list(r) for r in s.lattice], n)
    diag = nf.diagonal + [0] * (n - len(nf.diagonal))
    free = [t for t in range(n) if diag[t] == 0]
    finite = [t for t in range(n) if diag[t] > 1]
    keep = free + finite
    qg = make_group([diag[t] for t in keep])
    right, rinv = nf.right_transform, nf.right_inverse
    projection = tuple(normalize(qg, [right[i][t] for t in keep]) for i in range(n))
    section = tuple(normalize(g, rinv[t]) for t in keep)
    return Quotient(g, s, qg, projection, section)


def kernel_subgroup(
    g: FgAbelianGroup, h: FgAbelianGroup, images: Sequence[Sequence[int]]
) -> Subgroup:
    """Kernel of the homomorphism sending generator i of ``g`` to ``images[i]``.

    Solved exactly: rows of ``[[Img, I], [R_h, 0]]`` whose first block
    vanishes after Hermite reduction give the kernel lattice.
    """
    if len(images) != g.ngens:
        raise LengthMismatch(f"need {g.ngens} images, got {len(images)}")
    imgs = [normalize(h, y) for y in images]
    for i, (d, y) in enumerate(zip(g.factors, imgs)):
        if d and any(scale(h, d, y)):
            raise IllDefinedMap(
                f"generator {i} has order {d} but its image {y} is not killed by {d}"
            )
    n, m = g.ngens, h.ngens
    block = [list(y) + [int(i == j) for j in range(n)] for i, y in enumerate(imgs)]
    block += [list(r) + [0] * n for r in h.relations]
    rows = hermite_rows(block, m + n)
    return subgroup_from_generators(g, [r[m:] for r in rows if not any(r[:m])])


def image_subgroup(
    g: FgAbelianGroup, h: FgAbelianGroup, images: Sequence[Sequence[int]], s: Subgroup
) -> Subgroup:
    """Image of ``s`` under the homomorphism given by generator images."""
    out = []
    for x in s.gens:
        acc = [0] * h.ngens
        for c, y in zip(x, images):
            acc = [a + c * b for a, b in zip(acc, y)]
        out.append(acc)
    return subgroup_from_generators(h, out)


def torsion_subgroup(g: FgAbelianGroup) -> Subgroup:
    return subgroup_from_generators(
        g, [g.basis(i) for i, d in enumerate(g.factors) if d]
    )


def p_primary_subgroup(g: FgAbelianGroup, p: int) -> Subgroup:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    gens = []
    for i, d in enumerate(g.factors):
        if d:
            cofactor = d
            while cofactor % p == 0:
                cofactor //= p
            gens.append(scale(g, cofactor, g.basis(i)))
    return subgroup_from_generators(g, gens)


def multiples_subgroup(g: FgAbelianGroup, n: int) -> Subgroup:
    if n < 1:
        raise ValueError("n must be positive")
    return subgroup_from_generators(g, [scale(g, n, g.basis(i)) for i in range(g.ngens)])


def n_torsion_subgroup(g: FgAbelianGroup, n: int) -> Subgroup:
    """Elements killed by ``n``: the kernel of multiplication by ``n``."""
    if n < 1:
        raise ValueError("n must be positive")
    return kernel_subgroup(g, g, [scale(g, n, g.basis(i)) for i in range(g.ngens)])


def invariant_factors(g: FgAbelianGroup) -> tuple[int, ...]:
    """Canonical invariant factors: free rank zeros first, then d_1 | d_2 | ..."""
    return quotient_group(g, zero_subgroup(g)).group.factors


def all_subgroups(g: FgAbelianGroup) -> list[Subgroup]:
    """Every subgroup of a finite group, sorted by (order, generators).

    A subgroup of an n-generated abelian group needs at most n generators,
    so n-tuples of elements reach all of them.
    """
    elems = list(enumerate_elements(g))
    seen = {}
    for combo in itertools.combinations_with_replacement(elems, g.ngens):
        s = subgroup_from_generators(g, combo)
        seen.setdefault(s.gens, s)
    return sorted(seen.values(), key=lambda s: (s.order, s.gens))
