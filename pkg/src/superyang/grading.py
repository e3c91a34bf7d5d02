"""Z2-grading bookkeeping: grades, bar involutions, theta signs, roots.

Indices are 1-based throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

Pair = Tuple[int, int]


def _sg(x: Fraction) -> int:
    return 1 if x > 0 else -1


@dataclass(frozen=True)
class GradingProfile:
    M: int
    N: int
    kind: str
    theta: Tuple[int, ...] = ()
    theta0: int = 1

    @property
    def K(self) -> int:
        return self.M + self.N

    @property
    def indices(self) -> range:
        return range(1, self.K + 1)

    def grade(self, a: int) -> int:
        self._check(a)
        return 0 if a <= self.M else 1

    def bar(self, a: int) -> int:
        """The involution used by the transposition (twisted) or the
        Y(M|N) ~ Y(N|M) isomorphism (yangian)."""
        if self.kind == "twisted":
            return bar_twisted(a, self)
        return bar_yangian(a, self.K)

    def th(self, a: int) -> int:
        self._check(a)
        return self.theta[a - 1]

    def sigma(self, a: int, b: int) -> int:
        """(-1)^{[a]([b]+1)} theta_a theta_b, the transposition sign."""
        ga, gb = self.grade(a), self.grade(b)
        s = -1 if (ga * (gb + 1)) % 2 else 1
        return s * self.th(a) * self.th(b)

    @property
    def grades(self) -> Tuple[int, ...]:
        return tuple(self.grade(a) for a in self.indices)

    def _check(self, a: int) -> None:
        if not 1 <= a <= self.K:
            raise IndexError(f"index {a} outside 1..{self.K}")

    def to_json(self) -> dict:
        return {"M": self.M, "N": self.N, "kind": self.kind, "theta": list(self.theta)}

    @staticmethod
    def from_json(data: dict) -> "GradingProfile":
        theta = data.get("theta")
        return make_profile(int(data["M"]), int(data["N"]), data.get("kind", "twisted"), theta)


def canonical_theta(M: int, N: int) -> Tuple[Tuple[int, ...], int]:
    """Canonical signs for the twisted profile and the resulting theta0.

    N even: theta = 1 on bosons, sg((2M+N+1)/2 - a) on fermions, theta0 = +1.
    N odd (so M even, the Y-minus mirror): sg((M+1)/2 - a) on bosons,
    1 on fermions, theta0 = -1.
    """
    K = M + N
    if N % 2 == 0:
        th = [1 if a <= M else _sg(Fraction(2 * M + N + 1, 2) - a) for a in range(1, K + 1)]
        return tuple(th), 1
    th = [_sg(Fraction(M + 1, 2) - a) if a <= M else 1 for a in range(1, K + 1)]
    return tuple(th), -1


def theta0_of(M: int, N: int, theta: Sequence[int]) -> Optional[int]:
    """The common value of (-1)^[a] theta_a theta_abar, or None if not constant."""
    probe = GradingProfile(M, N, "twisted", tuple(theta), 1)
    vals = {(-1) ** probe.grade(a) * probe.th(a) * probe.th(bar_twisted(a, probe)) for a in probe.indices}
    if len(vals) != 1:
        return None
    return vals.pop()


def make_profile(M: int, N: int, kind: str = "twisted", theta_override: Optional[Sequence[int]] = None) -> GradingProfile:
    if M < 0 or N < 0 or M + N == 0:
        raise ValueError("need M, N >= 0 with M + N > 0")
    if kind == "yangian":
        theta = tuple(theta_override) if theta_override is not None else (1,) * (M + N)
        return GradingProfile(M, N, "yangian", theta, 1)
    if kind != "twisted":
        raise ValueError(f"unknown profile kind {kind!r}")
    if (M * N) % 2:
        raise ValueError("MN odd: no twisted superYangian for this profile")
    if N % 2 and M % 2:
        raise ValueError("need N even, or M even for the mirror case")
    if theta_override is None:
        theta, t0 = canonical_theta(M, N)
        return GradingProfile(M, N, "twisted", theta, t0)
    theta = tuple(int(t) for t in theta_override)
    if len(theta) != M + N or any(t not in (1, -1) for t in theta):
        raise ValueError("theta must be a list of K signs")
    t0 = theta0_of(M, N, theta)
    if t0 is None:
        raise ValueError("theta violates the theta0 constraint")
    if N % 2 == 0 and t0 != 1:
        raise ValueError("theta0 must be +1 when N is even")
    return GradingProfile(M, N, "twisted", theta, t0)


def valid_theta_profiles(M: int, N: int) -> List[GradingProfile]:
    """Every sign choice satisfying the theta0 constraint with theta0 fixed
    to the canonical value."""
    _, t0 = canonical_theta(M, N)
    out = []
    for th in itertools.product((1, -1), repeat=M + N):
        if theta0_of(M, N, th) == t0:
            out.append(GradingProfile(M, N, "twisted", tuple(th), t0))
    return out


def bar_yangian(a: int, K: int) -> int:
    if not 1 <= a <= K:
        raise IndexError(a)
    return K + 1 - a


def bar_twisted(a: int, profile: GradingProfile) -> int:
    M, K = profile.M, profile.K
    if not 1 <= a <= K:
        raise IndexError(a)
    if a <= M:
        return M + 1 - a
    return 2 * M + profile.N + 1 - a


def koszul_sign(*pairs: Tuple[int, int]) -> int:
    """Product of (-1)^{x*y} over the given grade pairs."""
    e = sum(x * y for x, y in pairs)
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class RootSystem:
    M: int
    n: int
    phi_plus: FrozenSet[Pair]
    phi_minus: FrozenSet[Pair]
    phi_zero: FrozenSet[Pair]
    reading: str = "corrected"
    clashes: FrozenSet[Pair] = field(default_factory=frozenset)

    @property
    def K(self) -> int:
        return self.M + 2 * self.n

    def is_partition(self) -> bool:
        K = self.K
        allp = {(a, b) for a in range(1, K + 1) for b in range(1, K + 1)}
        sets = (self.phi_plus, self.phi_minus, self.phi_zero)
        if set().union(*sets) != allp:
            return False
        return all(not (x & y) for x, y in itertools.combinations(sets, 2))

    def is_transpose_consistent(self) -> bool:
        return self.phi_minus == frozenset((b, a) for a, b in self.phi_plus)

    def is_valid(self) -> bool:
        return self.is_partition() and self.is_transpose_consistent()


def positive_root_clauses(M: int, n: int, reading: str = "corrected") -> FrozenSet[Pair]:
    """The four index families defining the positive roots.

    The "literal" reading takes the fourth family as the upper fermions
    against the bosons, which overlaps its own transpose (the third family)
    whenever M, n >= 1.  The "corrected" reading uses the lower fermions,
    which gives a partition and matches the highest-weight computations.
    """
    K = M + 2 * n
    out = set()
    for a in range(1, K + 1):
        for b in range(1, K + 1):
            if 1 <= a < b <= M:
                out.add((a, b))
            elif M + 1 <= a < b <= K:
                out.add((a, b))
            elif 1 <= a <= M and M + n + 1 <= b <= K:
                out.add((a, b))
            elif reading == "literal" and M + n + 1 <= a <= K and 1 <= b <= M:
                out.add((a, b))
            elif reading == "corrected" and M + 1 <= a <= M + n and 1 <= b <= M:
                out.add((a, b))
    if reading not in ("literal", "corrected"):
        raise ValueError(f"unknown reading {reading!r}")
    return frozenset(out)


def make_root_system(M: int, n: int, reading: str = "corrected") -> RootSystem:
    plus = positive_root_clauses(M, n, reading)
    minus_all = frozenset((b, a) for a, b in plus)
    clashes = plus & minus_all
    K = M + 2 * n
    zero = frozenset((a, a) for a in range(1, K + 1))
    return RootSystem(M, n, plus, minus_all - clashes, zero, reading, clashes)


def hash_involution(a: int, profile: GradingProfile) -> int:
    """Swap the two middle bosonic indices m and m+1 (M = 2m)."""
    if profile.M % 2 or profile.M == 0:
        raise ValueError("the hash involution needs an even, nonzero M")
    m = profile.M // 2
    if not 1 <= a <= profile.K:
        raise IndexError(a)
    if a == m:
        return m + 1
    if a == m + 1:
        return m
    return a
