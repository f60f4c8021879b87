"""Brute-force reference computations over all elements of a finite ring.

Nothing here uses generator triples, kernels or normal forms beyond
building a subgroup from an explicit element list; these are the
independent checks the fast paths are compared against.
"""

from __future__ import annotations

import numpy as np

from . import fg_abelian as ab
from . import ring as R


class ElementTables:
    """All elements of ``r.group`` with the full bracket and addition tables."""

    def __init__(self, r: R.LeibnizRing):
        g = r.group
        if not g.is_finite:
            raise ab.InfiniteGroup(f"{g} is infinite")
        self.ring = r
        self.moduli = np.array(g.factors, dtype=np.int64)
        n = g.ngens
        self.elems = np.array(list(ab.enumerate_elements(g)), dtype=np.int64).reshape(-1, n)
        w = np.ones(n, dtype=np.int64)
        for t in range(n - 2, -1, -1):
            w[t] = w[t + 1] * self.moduli[t + 1]
        self.weights = w
        T = np.array(r.table, dtype=np.int64).reshape(n, n, n)
        br = np.einsum("xi,yj,ijc->xyc", self.elems, self.elems, T) % self.moduli
        self.br = br @ w  # br[x, y] = index of [x, y]
        self.size = self.elems.shape[0]

    def idx(self, v) -> np.ndarray:
        return (np.asarray(v) % self.moduli) @ self.weights

    def combine(self, *terms):
        """Index of ``t0 - t1 - t2 ...`` for index arrays ``t``."""
        acc = self.elems[terms[0]].copy()
        for t in terms[1:]:
            acc = acc - self.elems[t]
        return self.idx(acc)

    def left_leibniz(self) -> bool:
        x, y, z = np.indices((self.size,) * 3).reshape(3, -1)
        b = self.br
        d = self.combine(b[x, b[y, z]], b[b[x, y], z], b[y, b[x, z]])
        return not d.any()

    def right_leibniz(self) -> bool:
        x, y, z = np.indices((self.size,) * 3).reshape(3, -1)
        b = self.br
        lhs = self.elems[b[x, b[y, z]]]
        rhs = self.elems[b[b[x, y], z]] - self.elems[b[b[x, z], y]]
        return not self.idx(lhs - rhs).any()

    def alternating(self) -> bool:
        diag = self.br[np.arange(self.size), np.arange(self.size)]
        return not diag.any()

    def subgroup(self, mask) -> ab.Subgroup:
        return ab.subgroup_from_generators(self.ring.group, [tuple(int(v) for v in e) for e in self.elems[mask]])

    def element_set(self, s: ab.Subgroup) -> set:
        return {i for i in range(self.size) if ab.member(s, tuple(int(v) for v in self.elems[i]))}

    def left_center_mask(self):
        return ~self.br.any(axis=1)

    def right_center_mask(self):
        return ~self.br.any(axis=0)

    def anticenter_mask(self):
        s = self.idx(self.elems[self.br] + self.elems[self.br.T])
        return ~s.any(axis=1)

    def squares(self) -> ab.Subgroup:
        diag = self.br[np.arange(self.size), np.arange(self.size)]
        return ab.subgroup_from_generators(self.ring.group, [tuple(int(v) for v in self.elems[i]) for i in diag])
