"""Exhaustive enumeration and isomorphism classification on finite groups.

Candidate tables are produced in lexicographic order (row-major over the
table, each entry compared by coefficients), filtered by the batch
kernels, and split into automorphism orbits.  Because the stream is
sorted, the first table met from each orbit is that orbit's lexicographic
minimum, i.e. its canonical form.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import fg_abelian as ab
from . import kernels
from . import ring as R
from .errors import BadParameters, BudgetExceeded, InfiniteGroup, NotAutomorphism
from .families import congruences, family_instances, make_family, family_shape
from .fg_abelian import FgAbelianGroup

DEFAULT_BUDGET = 10**8
CHUNK = 1 << 16


def _require_finite(group: FgAbelianGroup):
    if not group.is_finite:
        raise InfiniteGroup(f"{group} is infinite")


def _elements_array(group: FgAbelianGroup) -> np.ndarray:
    return np.array(list(ab.enumerate_elements(group)), dtype=np.int64).reshape(-1, group.ngens)


def _killed_by(elems: np.ndarray, moduli: np.ndarray, d: int) -> np.ndarray:
    return elems[~np.any((d * elems) % moduli, axis=1)]


# -- automorphisms -------------------------------------------------------------


@lru_cache(maxsize=64)
def _aut_arrays(group: FgAbelianGroup) -> tuple[np.ndarray, np.ndarray]:
    """All automorphisms as row-image matrices, plus their inverses.

    Generator i may go to any element killed by its order; a candidate is
    kept when it permutes the elements, and its inverse is read off the
    inverse permutation and confirmed to be in the list.
    """
    _require_finite(group)
    n = group.ngens
    moduli = np.array(group.factors, dtype=np.int64)
    elems = _elements_array(group)
    weights = np.ones(n, dtype=np.int64)
    for t in range(n - 2, -1, -1):
        weights[t] = weights[t + 1] * moduli[t + 1]
    choices = [_killed_by(elems, moduli, d) for d in group.factors]
    autos, perms = [], []
    for rows in itertools.product(*choices):
        P = np.array(rows, dtype=np.int64).reshape(n, n)
        perm = ((elems @ P) % moduli) @ weights
        if np.unique(perm).size == elems.shape[0]:
            autos.append(P)
            perms.append(perm)
    autos = np.array(autos, dtype=np.int64).reshape(-1, n, n)
    index = {P.tobytes(): a for a, P in enumerate(autos)}
    inverses = np.empty_like(autos)
    unit_pos = [int(weights[i]) for i in range(n)]
    for a, perm in enumerate(perms):
        inv = np.empty_like(perm)
        inv[perm] = np.arange(perm.size)
        Q = elems[inv[unit_pos]]
        if Q.tobytes() not in index or np.any(((Q @ autos[a]) % moduli) != np.eye(n, dtype=np.int64) % moduli):
            raise AssertionError("automorphism without an inverse in the list")
        inverses[a] = Q
    return autos, inverses


def automorphisms(group: FgAbelianGroup) -> list[tuple[tuple[int, ...], ...]]:
    """Automorphisms as matrices whose row i is the image of e_i."""
    autos, _ = _aut_arrays(group)
    return [tuple(tuple(int(v) for v in row) for row in P) for P in autos]


def _ring_array(r: R.LeibnizRing) -> np.ndarray:
    return np.array(r.table, dtype=np.int64).reshape(r.n, r.n, r.n)


def _ring_from_array(group: FgAbelianGroup, T: np.ndarray) -> R.LeibnizRing:
    n = group.ngens
    return R.LeibnizRing(
        group, tuple(tuple(tuple(int(v) for v in T[i, j]) for j in range(n)) for i in range(n))
    )


def _apply(group, P, x):
    acc = [0] * group.ngens
    for c, row in zip(x, P):
        acc = [a + c * b for a, b in zip(acc, row)]
    return ab.normalize(group, acc)


def transport(r: R.LeibnizRing, phi) -> R.LeibnizRing:
    """``[x, y]' = phi([phi^-1 x, phi^-1 y])``, computed with exact ints."""
    autos, inverses = _aut_arrays(r.group)
    P = np.array(phi, dtype=np.int64).reshape(r.n, r.n) % np.maximum(np.array(r.group.factors), 1)
    hit = np.flatnonzero(np.all(autos == P, axis=(1, 2)))
    if hit.size == 0:
        raise NotAutomorphism(f"{phi} is not an automorphism of {r.group}")
    Q = inverses[hit[0]].tolist()
    P = P.tolist()
    table = [
        [_apply(r.group, P, R.bracket(r, Q[i], Q[j])) for j in range(r.n)] for i in range(r.n)
    ]
    return R.make_ring(r.group, table)


def _canonical_key(r: R.LeibnizRing, weights) -> tuple[int, np.ndarray]:
    autos, inverses = _aut_arrays(r.group)
    moduli = np.array(r.group.factors, dtype=np.int64)
    orbit = kernels.transport_tables(_ring_array(r), autos, inverses, moduli)
    keys = kernels.table_keys(orbit, weights)
    a = int(np.argmin(keys))
    return int(keys[a]), orbit[a]


def canonical_form(r: R.LeibnizRing) -> R.LeibnizRing:
    """Lexicographically least table in the automorphism orbit of ``r``."""
    _require_finite(r.group)
    w = kernels.table_weights(r.group.factors, r.n)
    _, T = _canonical_key(r, w)
    return _ring_from_array(r.group, T)


def are_isomorphic(r1: R.LeibnizRing, r2: R.LeibnizRing) -> bool:
    if r1.group != r2.group:
        if ab.invariant_factors(r1.group) != ab.invariant_factors(r2.group):
            return False
        raise ValueError("compare rings on one group presentation")
    return canonical_form(r1) == canonical_form(r2)


# -- enumeration ------------------------------------------------------------------


def _entry_candidates(group: FgAbelianGroup) -> list[np.ndarray]:
    """Per table entry (row-major), the elements allowed by well-definedness."""
    moduli = np.array(group.factors, dtype=np.int64)
    elems = _elements_array(group)
    return [
        _killed_by(elems, moduli, math.gcd(di, dj))
        for di in group.factors
        for dj in group.factors
    ]


def candidate_count(group: FgAbelianGroup) -> int:
    return math.prod(c.shape[0] for c in _entry_candidates(group))


def _decode(cands, start, stop, n):
    sizes = [c.shape[0] for c in cands]
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, len(cands), n), dtype=np.int64)
    for e in range(len(cands) - 1, -1, -1):
        out[:, e, :] = cands[e][idx % sizes[e]]
        idx //= sizes[e]
    return out.reshape(stop - start, n, n, n)


def _valid_chunk(args):
    factors, start, stop, backend = args
    group = ab.make_group(factors)
    tables = _decode(_entry_candidates(group), start, stop, group.ngens)
    mask = kernels.left_leibniz_mask(tables, np.array(factors, dtype=np.int64), backend=backend)
    return tables[mask]


def valid_tables(
    group: FgAbelianGroup, budget: int = DEFAULT_BUDGET, jobs: int = 1, backend=None
) -> np.ndarray:
    """Every well-defined left Leibniz table on ``group``, in lexicographic order."""
    _require_finite(group)
    n = group.ngens
    raw = group.order ** (n * n)
    if raw > budget:
        raise BudgetExceeded(f"{raw} raw candidate tables on {group} exceed the budget {budget}")
    total = candidate_count(group)
    jobs_list = [
        (group.factors, s, min(s + CHUNK, total), backend) for s in range(0, total, CHUNK)
    ]
    if jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_valid_chunk, jobs_list))
    else:
        parts = [_valid_chunk(j) for j in jobs_list]
    if not parts:
        return np.zeros((0, n, n, n), dtype=np.int64)
    return np.concatenate(parts)


def enumerate_left_leibniz(group: FgAbelianGroup, budget: int = DEFAULT_BUDGET, jobs: int = 1):
    """Stream of all left Leibniz rings on ``group``, lexicographically."""
    for T in valid_tables(group, budget, jobs):
        yield _ring_from_array(group, T)


# -- classification -----------------------------------------------------------------


@dataclass
class IsoClass:
    ring: R.LeibnizRing
    orbit_size: int
    report: R.InvariantReport
    family: str
    lie: bool

    @property
    def unmatched(self) -> bool:
        return self.family == "Unmatched"


@dataclass
class IsoClassCensus:
    group: FgAbelianGroup
    total_valid: int
    aut_order: int
    classes: list[IsoClass] = field(default_factory=list)

    @property
    def family_covered(self) -> bool:
        return family_shape(self.group.factors) is not None

    @property
    def unmatched(self) -> list[IsoClass]:
        return [c for c in self.classes if c.unmatched]


def family_keys(group: FgAbelianGroup) -> dict[int, str]:
    """Canonical keys of the family members living on ``group``."""
    w = kernels.table_weights(group.factors, group.ngens)
    out = {}
    for spec in family_instances(group.factors):
        key, _ = _canonical_key(make_family(spec), w)
        out.setdefault(key, spec.tag())
    return out


def classify(
    group: FgAbelianGroup, budget: int = DEFAULT_BUDGET, jobs: int = 1, backend=None
) -> IsoClassCensus:
    tables = valid_tables(group, budget, jobs, backend)
    n = group.ngens
    moduli = np.array(group.factors, dtype=np.int64)
    w = kernels.table_weights(group.factors, n)
    keys = kernels.table_keys(tables, w)
    assert np.all(np.diff(keys) > 0), "enumeration is not in lexicographic order"
    autos, inverses = _aut_arrays(group)
    fam = family_keys(group)
    seen = np.zeros(len(tables), dtype=bool)
    census = IsoClassCensus(group, len(tables), len(autos))
    for idx in range(len(tables)):
        if seen[idx]:
            continue
        orbit = kernels.transport_tables(tables[idx], autos, inverses, moduli, backend=backend)
        okeys = np.unique(kernels.table_keys(orbit, w))
        pos = np.searchsorted(keys, okeys)
        assert np.all(pos < len(keys)) and np.all(keys[pos] == okeys), "orbit left the valid set"
        assert okeys[0] == keys[idx]
        seen[pos] = True
        rep = _ring_from_array(group, tables[idx])
        lie = R.is_lie(rep)
        tag = fam.get(int(keys[idx])) or ("Lie" if lie else "Unmatched")
        census.classes.append(IsoClass(rep, int(okeys.size), R.invariant_report(rep), tag, lie))
    assert sum(c.orbit_size for c in census.classes) == census.total_valid
    return census


# -- the L9 congruence system ------------------------------------------------------------


@dataclass
class CongruenceReport:
    k: int
    checked: int
    both_hold: int
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def l9_tables(k: int) -> tuple[np.ndarray, np.ndarray]:
    """All L9-shaped tables on ``[k, 0]`` for constants in ``[0, k)``,
    ordered lexicographically by (sigma, alpha1, alpha2, beta)."""
    grid = np.indices((k, k, k, k), dtype=np.int64).reshape(4, -1).T
    T = np.zeros((grid.shape[0], 2, 2, 2), dtype=np.int64)
    T[:, 0, 0, 0] = grid[:, 0]
    T[:, 1, 0, 0] = grid[:, 1]
    T[:, 0, 1, 0] = grid[:, 2]
    T[:, 1, 1, 0] = grid[:, 3]
    return grid, T


def congruence_equivalence_check(k: int, bound: int = 24, backend=None) -> CongruenceReport:
    """Left Leibniz identity versus the six congruences, over all of ``[0, k)^4``."""
    if k < 1 or k > bound:
        raise BadParameters(f"k must lie in [1, {bound}]")
    grid, T = l9_tables(k)
    # k = 1 leaves a1 = 0; the kernel just reduces that coordinate mod 1
    ident = kernels.left_leibniz_mask(T, np.array([k, 0]), backend=backend)
    s, a1, a2, b = grid.T
    cong = (
        (s * s % k == 0)
        & (a2 * s % k == 0)
        & (a2 * b % k == 0)
        & (b * s % k == 0)
        & ((a2 * a2 + a2 * a1) % k == 0)
        & (a1 * s % k == 0)
    )
    bad = np.flatnonzero(ident != cong)
    rep = CongruenceReport(k, int(grid.shape[0]), int(np.sum(ident & cong)))
    for i in bad:
        tup = tuple(int(v) for v in grid[i])
        rep.counterexamples.append(
            (tup, "identity holds, congruences fail" if ident[i] else "congruences hold, identity fails")
        )
    return rep


def congruences_hold(k, sigma, alpha1, alpha2, beta) -> bool:
    return all(congruences(k, sigma, alpha1, alpha2, beta).values())
