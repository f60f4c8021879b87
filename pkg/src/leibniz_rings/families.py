"""The nine named families L1..L9 and the closed forms claimed for them.

Generator naming follows the family displays: on two-generator groups
``e0`` is the first named generator (a, c, a1) and ``e1`` the second
(b, d, a2).  For L7..L9, ``a1`` has finite order ``k`` (or is infinite for
L7) and ``a2`` is infinite.
"""

from __future__ import annotations

from dataclasses import dataclass, field, fields

from . import fg_abelian as ab
from . import ring as R
from .errors import BadParameters
from .fg_abelian import is_prime

FAMILIES = ("L1", "L2", "L3", "L4", "L5", "L6", "L7", "L8", "L9")
INVARIANTS = ("leib", "derived", "left_center", "right_center", "center")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    p: int | None = None
    m: int | None = None
    s: int | None = None
    k: int | None = None
    alpha: int | None = None
    beta: int | None = None
    sigma: int | None = None
    alpha1: int | None = None
    alpha2: int | None = None

    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)[1:] if getattr(self, f.name) is not None}

    def tag(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params().items())
        return f"{self.family}({inner})"


_NEEDS = {
    "L1": ("p", "m", "s"),
    "L2": ("p",),
    "L3": ("p",),
    "L4": ("p",),
    "L5": ("p",),
    "L6": ("p",),
    "L7": ("alpha", "beta"),
    "L8": ("k", "beta"),
    "L9": ("k", "sigma", "alpha1", "alpha2", "beta"),
}


def congruences(k, sigma, alpha1, alpha2, beta) -> dict:
    """The six conditions on the L9 constants, each True when it holds mod k."""
    return {
        "sigma^2 = 0": sigma * sigma % k == 0,
        "alpha2*sigma = 0": alpha2 * sigma % k == 0,
        "alpha2*beta = 0": alpha2 * beta % k == 0,
        "beta*sigma = 0": beta * sigma % k == 0,
        "alpha2^2 + alpha2*alpha1 = 0": (alpha2 * alpha2 + alpha2 * alpha1) % k == 0,
        "alpha1*sigma = 0": alpha1 * sigma % k == 0,
    }


def check_spec(spec: FamilySpec) -> None:
    if spec.family not in FAMILIES:
        raise BadParameters(f"unknown family {spec.family!r}")
    missing = [n for n in _NEEDS[spec.family] if getattr(spec, n) is None]
    if missing:
        raise BadParameters(f"{spec.family} needs parameters: {', '.join(missing)}")
    f = spec.family
    if spec.p is not None and not is_prime(spec.p):
        raise BadParameters(f"p = {spec.p} is not prime")
    if f == "L1":
        if spec.m < 1:
            raise BadParameters("L1 needs m >= 1")
        if spec.s < 0:
            raise BadParameters("L1 needs s >= 0")
        if 2 * spec.s > spec.m:
            raise BadParameters(f"L1 needs 2s <= m (got s={spec.s}, m={spec.m})")
    elif f == "L7":
        if spec.alpha == 0 and spec.beta == 0:
            raise BadParameters("L7 with alpha = beta = 0 is abelian")
    elif f == "L8":
        if spec.k < 2:
            raise BadParameters("L8 needs k >= 2")
        if spec.beta < 1 or spec.k % spec.beta:
            raise BadParameters(f"L8 needs beta to be a divisor of k (got beta={spec.beta}, k={spec.k})")
        if spec.beta >= spec.k:
            raise BadParameters("L8 needs beta < k, otherwise the ring is abelian")
    elif f == "L9":
        if spec.k < 1:
            raise BadParameters("L9 needs k >= 1")
        bad = [name for name, ok in congruences(spec.k, spec.sigma, spec.alpha1, spec.alpha2, spec.beta).items() if not ok]
        if bad:
            raise BadParameters(f"L9 congruences violated mod {spec.k}: {'; '.join(bad)}")


def _two(group, entries):
    """Table on a two-generator group from ``{(i, j): coeffs}``."""
    z = group.zero()
    return R.make_ring(group, [[entries.get((i, j), z) for j in range(2)] for i in range(2)])


def make_family(spec: FamilySpec) -> R.LeibnizRing:
    check_spec(spec)
    f, p = spec.family, spec.p
    if f == "L1":
        g = ab.make_group([p**spec.m])
        return R.make_ring(g, [[(p ** (spec.m - spec.s),)]])
    if f in ("L2", "L3"):
        g = ab.make_group([p, p])
    elif f in ("L4", "L5", "L6"):
        g = ab.make_group([p * p, p])
    if f in ("L2", "L4"):
        return _two(g, {(0, 0): (0, 1)})
    if f in ("L3", "L5"):
        return _two(g, {(0, 0): (0, 1), (0, 1): (0, 1)})
    if f == "L6":
        return _two(g, {(0, 0): (p, 0), (0, 1): (0, 1)})
    if f == "L7":
        g = ab.make_group([0, 0])
        return _two(g, {(1, 0): (spec.alpha, 0), (1, 1): (spec.beta, 0)})
    if f == "L8":
        g = ab.make_group([spec.k, 0])
        return _two(g, {(1, 1): (spec.beta, 0)})
    # L9; with k = 1 the generator a1 is zero and only the free a2 remains
    if spec.k == 1:
        return R.zero_ring(ab.make_group([0]))
    g = ab.make_group([spec.k, 0])
    return _two(
        g,
        {
            (0, 0): (spec.sigma, 0),
            (0, 1): (spec.alpha2, 0),
            (1, 0): (spec.alpha1, 0),
            (1, 1): (spec.beta, 0),
        },
    )


def claimed_invariants(spec: FamilySpec) -> dict:
    """Closed forms stated for each family, as subgroups of its group.

    Only stated invariants appear.  L6 has no summary display; its Leibniz
    kernel is the ``<pa> + <b>`` found during its derivation, rewritten in
    the basis a1, a2.
    """
    r = make_family(spec)
    g = r.group
    sub = lambda *xs: ab.subgroup_from_generators(g, xs)
    zero = sub()
    f, p = spec.family, spec.p
    if f == "L1":
        m, s = spec.m, spec.s
        ideal, ctr = sub((p ** (m - s),)), sub((p**s,))
        return dict(leib=ideal, derived=ideal, left_center=ctr, right_center=ctr, center=ctr)
    if f == "L2":
        b = sub((0, 1))
        return dict(leib=b, derived=b, center=b)
    if f in ("L3", "L5"):
        d = sub((0, 1))
        return dict(leib=d, derived=d, left_center=d, right_center=zero, center=zero)
    if f == "L4":
        b = sub((0, 1))
        return dict(leib=b, derived=b, left_center=b, right_center=b, center=b)
    if f == "L6":
        return dict(leib=sub((p, 0), (0, 1)))
    if f == "L7":
        a1 = sub((1, 0))
        return dict(
            left_center=a1,
            right_center=zero,
            center=zero,
            leib=sub((spec.beta, 0)),
            derived=sub((spec.alpha, 0), (spec.beta, 0)),
        )
    if f == "L8":
        k, beta = spec.k, spec.beta
        ctr = sub((1, 0), (0, k // beta))
        return dict(center=ctr, left_center=ctr, right_center=ctr, leib=sub((beta, 0)), derived=sub((beta, 0)))
    # L9
    if spec.k == 1:
        return dict(center=zero, left_center=zero, right_center=zero, derived=zero, leib=zero)
    sg, a1, a2, be = spec.sigma, spec.alpha1, spec.alpha2, spec.beta
    derived = sub((sg, 0), (a1, 0), (a2, 0), (be, 0))
    return dict(
        center=derived,
        left_center=derived,
        right_center=derived,
        derived=derived,
        leib=sub((sg, 0), (a1 + a2, 0), (be, 0)),
    )


def computed_invariants(r: R.LeibnizRing) -> dict:
    left, right = R.left_center(r), R.right_center(r)
    return dict(
        leib=R.leibniz_kernel(r),
        derived=R.derived_ideal(r),
        left_center=left,
        right_center=right,
        center=left & right,
    )


@dataclass
class FamilyReport:
    spec: FamilySpec
    ring: R.LeibnizRing
    left_leibniz: bool
    computed: dict
    claimed: dict
    matches: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.left_leibniz and all(self.matches.values())

    def mismatches(self) -> list[str]:
        return [name for name, ok in self.matches.items() if not ok]

    def lines(self) -> list[str]:
        out = [f"{self.spec.tag()}: left Leibniz {'yes' if self.left_leibniz else 'NO'}"]
        for name in INVARIANTS:
            got = self.computed.get(name)
            if name not in self.claimed:
                out.append(f"  {name}: {got} (no closed form stated)")
            else:
                mark = "match" if self.matches[name] else "MISMATCH"
                out.append(f"  {name}: computed {got}, stated {self.claimed[name]}: {mark}")
        return out


def verify_family(spec: FamilySpec) -> FamilyReport:
    r = make_family(spec)
    left = R.is_left_leibniz(r)
    computed = computed_invariants(r) if left else {}
    claimed = claimed_invariants(spec)
    matches = {name: left and computed[name] == claimed[name] for name in INVARIANTS if name in claimed}
    return FamilyReport(spec, r, left, computed, claimed, matches)


def family_shape(factors) -> tuple[str, int] | None:
    """Which classified shape a finite factor list is: cyclic p-power,
    ``[p, p]`` or ``[p^2, p]``; returns (shape, p) or None."""
    factors = tuple(factors)
    if len(factors) == 1 and factors[0] > 1:
        ps = ab.prime_factors(factors[0])
        if len(ps) == 1:
            return "cyclic", ps[0]
    if len(factors) == 2:
        a, b = factors
        if is_prime(b) and a == b:
            return "pp", b
        if is_prime(b) and a == b * b:
            return "p2p", b
    return None


def family_instances(factors) -> list[FamilySpec]:
    """Non-abelian family members living on exactly this presentation."""
    shape = family_shape(factors)
    if shape is None:
        return []
    kind, p = shape
    if kind == "cyclic":
        m = 0
        n = factors[0]
        while n > 1:
            n //= p
            m += 1
        return [FamilySpec("L1", p=p, m=m, s=s) for s in range(1, m // 2 + 1)]
    if kind == "pp":
        return [FamilySpec("L2", p=p), FamilySpec("L3", p=p)]
    return [FamilySpec(f, p=p) for f in ("L4", "L5", "L6")]


def parameter_grid(max_p=5, max_m=4, max_k=24, max_k9=12):
    """The family test grid: every spec the family checks iterate over."""
    primes = [p for p in range(2, max_p + 1) if is_prime(p)]
    for p in primes:
        for m in range(1, max_m + 1):
            for s in range(0, m // 2 + 1):
                yield FamilySpec("L1", p=p, m=m, s=s)
    for f in ("L2", "L3", "L4", "L5", "L6"):
        for p in primes:
            yield FamilySpec(f, p=p)
    for alpha in range(6):
        for beta in range(6):
            if alpha or beta:
                yield FamilySpec("L7", alpha=alpha, beta=beta)
    for k in range(2, max_k + 1):
        for beta in range(1, k):
            if k % beta == 0:
                yield FamilySpec("L8", k=k, beta=beta)
    for k in range(1, max_k9 + 1):
        for sg in range(k):
            for a1 in range(k):
                for a2 in range(k):
                    for be in range(k):
                        if all(congruences(k, sg, a1, a2, be).values()):
                            yield FamilySpec("L9", k=k, sigma=sg, alpha1=a1, alpha2=a2, beta=be)
