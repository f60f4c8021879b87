"""Leibniz rings presented by structure constants, and their ideals.

A ring is a group ``Z/d_1 + ... + Z/d_n`` plus the table
``table[i][j] = [e_i, e_j]``; the bracket of arbitrary elements follows by
biadditivity.  Identities are checked on generator triples only: every
defect below is additive in each of its three arguments, so vanishing on
``e_i, e_j, e_k`` forces vanishing on all of ``L``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from . import fg_abelian as ab
from .errors import AmbientMismatch, ClosureStepLimit, IllDefinedBracket, NotAnIdeal, NotLeftLeibniz
from .fg_abelian import FgAbelianGroup, GroupElement, Subgroup

DEFAULT_MAX_STEPS = 64


@dataclass(frozen=True)
class LeibnizRing:
    group: FgAbelianGroup
    table: tuple[tuple[GroupElement, ...], ...]

    @property
    def n(self) -> int:
        return self.group.ngens

    def bracket(self, x, y) -> GroupElement:
        return bracket(self, x, y)

    @cached_property
    def validation(self) -> "ValidationReport":
        return validate(self)

    def __str__(self):
        lines = [f"group: {self.group}"]
        for i, j in itertools.product(range(self.n), repeat=2):
            if any(self.table[i][j]):
                lines.append(f"  [e{i}, e{j}] = {self.table[i][j]}")
        if len(lines) == 1:
            lines.append("  zero bracket")
        return "\n".join(lines)


def make_ring(group: FgAbelianGroup, table: Sequence[Sequence[Sequence[int]]]) -> LeibnizRing:
    """Build a ring, rejecting tables that ignore the group relations."""
    n = group.ngens
    if len(table) != n or any(len(row) != n for row in table):
        raise ValueError(f"table must be {n}x{n}")
    norm = tuple(tuple(ab.normalize(group, c) for c in row) for row in table)
    for i, j in itertools.product(range(n), repeat=2):
        for f in (i, j):
            d = group.factors[f]
            if d and any(ab.scale(group, d, norm[i][j])):
                raise IllDefinedBracket(i, j, f)
    return LeibnizRing(group, norm)


def zero_ring(group: FgAbelianGroup) -> LeibnizRing:
    z = group.zero()
    return LeibnizRing(group, tuple(tuple(z for _ in range(group.ngens)) for _ in range(group.ngens)))


def bracket(r: LeibnizRing, x: Sequence[int], y: Sequence[int]) -> GroupElement:
    acc = [0] * r.n
    for i, a in enumerate(x):
        if not a:
            continue
        for j, b in enumerate(y):
            if b:
                c = a * b
                acc = [s + c * t for s, t in zip(acc, r.table[i][j])]
    return ab.normalize(r.group, acc)


def _sub(g, *terms):
    """Signed sum of group elements: ``_sub(g, x, y, z) = x - y - z``."""
    acc = list(terms[0])
    for t in terms[1:]:
        acc = [a - b for a, b in zip(acc, t)]
    return ab.normalize(g, acc)


def leibnizator(r: LeibnizRing, x, y, z) -> GroupElement:
    """``[x,[y,z]] - [[x,y],z] - [y,[x,z]]``; vanishes iff left Leibniz."""
    b = r.bracket
    return _sub(r.group, b(x, b(y, z)), b(b(x, y), z), b(y, b(x, z)))


def right_defect(r: LeibnizRing, x, y, z) -> GroupElement:
    """``[x,[y,z]] - [[x,y],z] + [[x,z],y]``; vanishes iff right Leibniz."""
    b = r.bracket
    return ab.add(r.group, _sub(r.group, b(x, b(y, z)), b(b(x, y), z)), b(b(x, z), y))


def _symmetry_defect(r: LeibnizRing, x, y, z) -> GroupElement:
    # [y,[x,z]] + [[x,z],y]: zero everywhere iff a left ring is also right
    b = r.bracket
    return ab.add(r.group, b(y, b(x, z)), b(b(x, z), y))


@dataclass(frozen=True)
class ValidationReport:
    well_defined: bool
    left_leibniz: bool
    right_leibniz: bool
    symmetric: bool
    lie: bool
    witnesses: tuple = ()

    def summary(self) -> str:
        yn = lambda v: "yes" if v else "no"
        out = [
            f"well-defined: {yn(self.well_defined)}",
            f"left: {yn(self.left_leibniz)}",
            f"right: {yn(self.right_leibniz)}",
            f"symmetric: {yn(self.symmetric)}",
            f"lie: {yn(self.lie)}",
        ]
        for kind, triple, defect in self.witnesses:
            out.append(f"  {kind} defect at e{triple}: {defect}")
        return "\n".join(out)


def validate(r: LeibnizRing) -> ValidationReport:
    n, T, mods = r.n, r.table, r.group.factors
    rng = range(n)

    def red(v):
        return tuple(c % d if d else c for c, d in zip(v, mods))

    def left_mul(i, v):  # [e_i, v]
        return [sum(v[l] * T[i][l][c] for l in rng if v[l]) for c in rng]

    def right_mul(v, k):  # [v, e_k]
        return [sum(v[l] * T[l][k][c] for l in rng if v[l]) for c in rng]

    witnesses = []
    left = right = prop1 = True
    for i, j, k in itertools.product(rng, repeat=3):
        a = left_mul(i, T[j][k])  # [e_i,[e_j,e_k]]
        b = right_mul(T[i][j], k)  # [[e_i,e_j],e_k]
        c = left_mul(j, T[i][k])  # [e_j,[e_i,e_k]]
        e = right_mul(T[i][k], j)  # [[e_i,e_k],e_j]
        d = red([x - y - z for x, y, z in zip(a, b, c)])
        if any(d):
            left = False
            witnesses.append(("left", (i, j, k), d))
        d = red([x - y + z for x, y, z in zip(a, b, e)])
        if any(d):
            right = False
            witnesses.append(("right", (i, j, k), d))
        if any(red([x + y for x, y in zip(c, e)])):
            prop1 = False
    symmetric = left and right
    # for a left ring, right <=> [b,[a,c]] = -[[a,c],b] on generators
    assert not left or symmetric == prop1, "symmetric criterion disagrees"
    alternating = all(not any(T[i][i]) for i in rng) and all(
        not any(red([x + y for x, y in zip(T[i][j], T[j][i])])) for i in rng for j in range(i + 1, n)
    )
    return ValidationReport(True, left, right, symmetric, left and alternating, tuple(witnesses))


def is_left_leibniz(r: LeibnizRing) -> bool:
    return r.validation.left_leibniz


def is_right_leibniz(r: LeibnizRing) -> bool:
    return r.validation.right_leibniz


def is_symmetric(r: LeibnizRing) -> bool:
    return r.validation.symmetric


def is_lie(r: LeibnizRing) -> bool:
    return r.validation.lie


def opposite(r: LeibnizRing) -> LeibnizRing:
    """New bracket ``[x,y]' = [y,x]``; swaps left and right Leibniz."""
    return LeibnizRing(r.group, tuple(tuple(r.table[j][i] for j in range(r.n)) for i in range(r.n)))


# -- subgroups built from the bracket ---------------------------------------


def whole(r: LeibnizRing) -> Subgroup:
    return ab.whole_group(r.group)


def zero(r: LeibnizRing) -> Subgroup:
    return ab.zero_subgroup(r.group)


def bracket_subgroup(r: LeibnizRing, a: Subgroup, b: Subgroup) -> Subgroup:
    """``[A, B]``; brackets of generators suffice by biadditivity."""
    if a.ambient != r.group or b.ambient != r.group:
        raise AmbientMismatch("subgroups must live in the ring's group")
    return ab.subgroup_from_generators(r.group, [bracket(r, x, y) for x in a.gens for y in b.gens])


def derived_ideal(r: LeibnizRing) -> Subgroup:
    w = whole(r)
    return bracket_subgroup(r, w, w)


def _require_left(r: LeibnizRing):
    if not is_left_leibniz(r):
        raise NotLeftLeibniz("the ring is not a left Leibniz ring")


def squares_subgroup(r: LeibnizRing) -> Subgroup:
    """Subgroup generated by all squares ``[x, x]``, for any bracket.

    ``[x,x]`` expands into ``sum x_i^2 [e_i,e_i] + sum_{i<j} x_i x_j ([e_i,e_j]+[e_j,e_i])``,
    and each of those generators is itself a combination of squares.
    """
    g = r.group
    gens = [r.table[i][i] for i in range(r.n)]
    gens += [ab.add(g, r.table[i][j], r.table[j][i]) for i in range(r.n) for j in range(i + 1, r.n)]
    return ab.subgroup_from_generators(g, gens)


def leibniz_kernel(r: LeibnizRing) -> Subgroup:
    """The Leibniz kernel: squares subgroup of a left Leibniz ring."""
    _require_left(r)
    return squares_subgroup(r)


def _power(g: FgAbelianGroup, k: int) -> FgAbelianGroup:
    return ab.make_group(g.factors * k)


def left_center(r: LeibnizRing) -> Subgroup:
    """Kernel of ``x -> ([x, e_j])_j``."""
    images = [sum((r.table[i][j] for j in range(r.n)), ()) for i in range(r.n)]
    return ab.kernel_subgroup(r.group, _power(r.group, r.n), images)


def right_center(r: LeibnizRing) -> Subgroup:
    """Kernel of ``x -> ([e_j, x])_j``."""
    images = [sum((r.table[j][i] for j in range(r.n)), ()) for i in range(r.n)]
    return ab.kernel_subgroup(r.group, _power(r.group, r.n), images)


def center(r: LeibnizRing) -> Subgroup:
    return left_center(r) & right_center(r)


def anticenter(r: LeibnizRing) -> Subgroup:
    """Kernel of ``x -> ([x, e_j] + [e_j, x])_j``."""
    g = r.group
    images = [
        sum((ab.add(g, r.table[i][j], r.table[j][i]) for j in range(r.n)), ())
        for i in range(r.n)
    ]
    return ab.kernel_subgroup(g, _power(g, r.n), images)


# -- ideal tests --------------------------------------------------------------


def is_subring(r: LeibnizRing, s: Subgroup) -> bool:
    return bracket_subgroup(r, s, s) <= s


def is_left_ideal(r: LeibnizRing, s: Subgroup) -> bool:
    return is_subring(r, s) and bracket_subgroup(r, whole(r), s) <= s


def is_right_ideal(r: LeibnizRing, s: Subgroup) -> bool:
    return is_subring(r, s) and bracket_subgroup(r, s, whole(r)) <= s


def is_ideal(r: LeibnizRing, s: Subgroup) -> bool:
    return is_left_ideal(r, s) and is_right_ideal(r, s)


def _checked_ideal(r: LeibnizRing, s: Subgroup, what: str) -> Subgroup:
    assert is_ideal(r, s), f"{what} is not an ideal"
    return s


def lambda_ideal(r: LeibnizRing, n: int) -> Subgroup:
    """Elements killed by ``n``."""
    return _checked_ideal(r, ab.n_torsion_subgroup(r.group, n), f"Lambda_{n}")


def p_ideal(r: LeibnizRing, p: int) -> Subgroup:
    """The maximal p-subgroup of the additive group."""
    return _checked_ideal(r, ab.p_primary_subgroup(r.group, p), f"S_{p}")


def omega_ideal(r: LeibnizRing, p: int, n: int) -> Subgroup:
    """Elements of the p-part killed by ``p**n``."""
    s = ab.p_primary_subgroup(r.group, p) & ab.n_torsion_subgroup(r.group, p**n)
    return _checked_ideal(r, s, f"Omega_{n}")


def torsion_ideal(r: LeibnizRing) -> Subgroup:
    return _checked_ideal(r, ab.torsion_subgroup(r.group), "torsion part")


def multiples_ideal(r: LeibnizRing, n: int) -> Subgroup:
    return _checked_ideal(r, ab.multiples_subgroup(r.group, n), f"{n}L")


def prime_support(r: LeibnizRing) -> list[int]:
    """Primes dividing the order of some torsion element."""
    return sorted({p for d in r.group.factors if d for p in ab.prime_factors(d)})


def gamma_series(r: LeibnizRing, h: Subgroup, steps: int) -> list[Subgroup]:
    """``[gamma_1(H), ..., gamma_steps(H)]`` with ``gamma_{k+1}(H) = [H, gamma_k(H)]``."""
    out = [h]
    while len(out) < steps:
        nxt = bracket_subgroup(r, h, out[-1])
        if nxt == out[-1]:
            out.extend([nxt] * (steps - len(out)))
            break
        out.append(nxt)
    return out


def lower_central_series(
    r: LeibnizRing, max_steps: int = DEFAULT_MAX_STEPS
) -> tuple[list[Subgroup], bool]:
    """``gamma_1 = L, gamma_{k+1} = [L, gamma_k]`` until it repeats.

    The returned list ends at the first repeated term, which is included
    once; ``stabilized`` is False when ``max_steps`` terms went by without
    a repeat.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    L = whole(r)
    series = [L]
    while len(series) < max_steps:
        nxt = bracket_subgroup(r, L, series[-1])
        if nxt == series[-1]:
            return series, True
        series.append(nxt)
    return series, bracket_subgroup(r, L, series[-1]) == series[-1]


def subring_generated(r: LeibnizRing, gens, max_steps: int = 256) -> Subgroup:
    s = ab.subgroup_from_generators(r.group, gens)
    for _ in range(max_steps):
        nxt = s + bracket_subgroup(r, s, s)
        if nxt == s:
            return s
        s = nxt
    raise ClosureStepLimit(f"no fixpoint after {max_steps} closure steps")


def quotient_ring(r: LeibnizRing, s: Subgroup) -> tuple[LeibnizRing, ab.Quotient]:
    """``L / S`` presented in Smith form, with the projection data."""
    if not is_ideal(r, s):
        raise NotAnIdeal(f"{s} is not an ideal")
    q = ab.quotient_group(r.group, s)
    m = q.group.ngens
    table = [
        [q.project(bracket(r, q.section[t], q.section[u])) for u in range(m)]
        for t in range(m)
    ]
    return make_ring(q.group, table), q


# -- aggregate report ---------------------------------------------------------


@dataclass(frozen=True)
class InvariantReport:
    derived_ideal: Subgroup
    leibniz_kernel: Subgroup
    left_center: Subgroup
    right_center: Subgroup
    center: Subgroup
    anticenter: Subgroup
    lower_central: tuple[Subgroup, ...]
    stabilized: bool
    torsion_ideal: Subgroup
    primary_ideals: dict = field(hash=False)
    prime_support: tuple[int, ...]

    def orders(self) -> dict:
        """Subgroup orders (None = infinite); the census summary uses these."""
        return {
            "leib": self.leibniz_kernel.order,
            "derived": self.derived_ideal.order,
            "left_center": self.left_center.order,
            "right_center": self.right_center.order,
            "center": self.center.order,
            "anticenter": self.anticenter.order,
            "gamma": [s.order for s in self.lower_central],
        }

    def lines(self) -> list[str]:
        def fmt(name, s):
            order = "inf" if s.order is None else s.order
            return f"{name}: {s} order {order}"

        out = [
            fmt("Leib", self.leibniz_kernel),
            fmt("[L,L]", self.derived_ideal),
            fmt("left center", self.left_center),
            fmt("right center", self.right_center),
            fmt("center", self.center),
            fmt("anticenter", self.anticenter),
            fmt("torsion", self.torsion_ideal),
        ]
        for p, s in self.primary_ideals.items():
            out.append(fmt(f"S_{p}", s))
        for k, s in enumerate(self.lower_central, 1):
            out.append(fmt(f"gamma_{k}", s))
        out.append(f"lower central series stabilized: {'yes' if self.stabilized else 'no'}")
        return out


def invariant_report(r: LeibnizRing, max_steps: int = DEFAULT_MAX_STEPS) -> InvariantReport:
    _require_left(r)
    left, right = left_center(r), right_center(r)
    gammas, stable = lower_central_series(r, max_steps)
    primes = prime_support(r)
    primary = {p: p_ideal(r, p) for p in primes}
    rep = InvariantReport(
        derived_ideal=derived_ideal(r),
        leibniz_kernel=leibniz_kernel(r),
        left_center=left,
        right_center=right,
        center=left & right,
        anticenter=anticenter(r),
        lower_central=tuple(gammas),
        stabilized=stable,
        torsion_ideal=torsion_ideal(r),
        primary_ideals=primary,
        prime_support=tuple(primes),
    )
    assert rep.leibniz_kernel <= rep.derived_ideal
    assert rep.center == center(r)
    assert rep.torsion_ideal == ab.sum_of(r.group, primary.values())
    return rep
