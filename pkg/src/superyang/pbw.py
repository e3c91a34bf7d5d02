"""PBW generators of the twisted superYangian, degree by degree.

In the associated graded algebra the degree-p letters x^{ab} obey
x^{ab} = (-1)^p sigma(a, b) x^{bbar abar}.  Orbits of (a, b) -> (bbar, abar)
of size two give one generator; a fixed point gives a generator when its
sign is +1 and is forced to vanish otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from .grading import GradingProfile
from .reports import Report

Pair = Tuple[int, int]


@dataclass
class PbwBasisSlice:
    degree: int
    generators: List[Pair]
    identified: Dict[Pair, Tuple[Pair, int]] = field(default_factory=dict)
    forced_zero: List[Pair] = field(default_factory=list)

    def accounts_for(self, K: int) -> bool:
        return len(self.generators) + len(self.identified) + len(self.forced_zero) == K * K

    def to_json(self) -> dict:
        return {"degree": self.degree, "count": len(self.generators),
                "generators": [list(x) for x in self.generators],
                "identified": [[list(k), list(v[0]), v[1]] for k, v in sorted(self.identified.items())],
                "forced_zero": [list(x) for x in self.forced_zero]}


def _require_plus(profile: GradingProfile) -> None:
    if profile.kind != "twisted" or profile.N % 2:
        raise ValueError("PBW generators are computed for Y(M|2n)^+")


def partner(profile: GradingProfile, a: int, b: int) -> Pair:
    return profile.bar(b), profile.bar(a)


def constraint_sign(profile: GradingProfile, a: int, b: int, p: int) -> int:
    """The sign in x^{ab}_(p) = sign * x^{bbar abar}_(p)."""
    return (-1) ** (p % 2) * profile.sigma(a, b)


def solve_constraint(profile: GradingProfile, p: int) -> PbwBasisSlice:
    _require_plus(profile)
    if p < 1:
        raise ValueError("degrees start at 1")
    gens, ident, zero = [], {}, []
    for a in profile.indices:
        for b in profile.indices:
            q = partner(profile, a, b)
            if q == (a, b):
                if constraint_sign(profile, a, b, p) == 1:
                    gens.append((a, b))
                else:
                    zero.append((a, b))
            elif (a, b) < q:
                gens.append((a, b))
            else:
                ident[(a, b)] = (q, constraint_sign(profile, a, b, p))
    return PbwBasisSlice(p, gens, ident, zero)


def orbit(profile: GradingProfile, a: int, b: int) -> frozenset:
    return frozenset({(a, b), partner(profile, a, b)})


def dimension_formula(profile: GradingProfile, parity: int) -> int:
    """Generator count per degree: dim osp(M|2n) for odd degrees, the
    complementary super-symmetric dimension for even ones."""
    _require_plus(profile)
    M, n = profile.M, profile.N // 2
    if parity % 2:
        return M * (M - 1) // 2 + n * (2 * n + 1) + 2 * M * n
    return M * (M + 1) // 2 + n * (2 * n - 1) + 2 * M * n


def corollary_lists(profile: GradingProfile, p: int, reading: str = "literal") -> Dict[str, List[Pair]]:
    """The printed index lists for degree p, split by block.

    The "literal" reading takes the fermionic threshold 2M+2+2n and the
    mixed pairs at even degrees only.  The "reconciled" reading uses the
    threshold 2M+1+2n and lists the mixed pairs at every degree.
    """
    if reading not in ("literal", "reconciled"):
        raise ValueError(f"unknown reading {reading!r}")
    M, n = profile.M, profile.N // 2
    K = profile.K
    even = p % 2 == 0
    thr = 2 * M + 2 + 2 * n if reading == "literal" else 2 * M + 1 + 2 * n
    bos = [(i, j) for i in range(1, M + 1) for j in range(1, M + 1)
           if (i + j <= M + 1 if even else i + j < M + 1)]
    fer = [(i, j) for i in range(M + 1, K + 1) for j in range(M + 1, K + 1)
           if (i + j < thr if even else i + j <= thr)]
    mixed = []
    if even or reading == "reconciled":
        mixed = [(i, j) for i in range(M + 1, K + 1) for j in range(1, M + 1)]
    return {"bosonic": bos, "fermionic": fer, "mixed": mixed}


def _block_of(profile: GradingProfile, a: int, b: int) -> str:
    ga, gb = profile.grade(a), profile.grade(b)
    if ga == gb:
        return "bosonic" if ga == 0 else "fermionic"
    return "mixed"


def compare_corollary_lists(profile: GradingProfile, p: int, reading: str = "literal") -> Report:
    """Check that the printed list is a system of representatives for the
    generator orbits at degree p, block by block."""
    sl = solve_constraint(profile, p)
    listed = corollary_lists(profile, p, reading)
    rep = Report("PBW_COROLLARY")
    zero = set(sl.forced_zero)
    for block in ("bosonic", "fermionic", "mixed"):
        want = {orbit(profile, *g) for g in sl.generators if _block_of(profile, *g) == block}
        hits: Dict[frozenset, int] = {}
        forced = []
        for pr in listed[block]:
            if pr in zero:
                forced.append(pr)
                continue
            o = orbit(profile, *pr)
            hits[o] = hits.get(o, 0) + 1
        missing = sorted(min(o) for o in want if o not in hits)
        doubled = sorted(sorted(o) for o, k in hits.items() if k > 1)
        info = {"listed": len(listed[block]), "computed": len(want), "missing": [list(x) for x in missing],
                "listed_twice": [[list(x) for x in o] for o in doubled], "forced_zero_listed": [list(x) for x in forced]}
        info["agree"] = not (missing or doubled or forced)
        rep.details[block] = info
        if not info["agree"]:
            rep.fail(block, f"listed {info['listed']} vs computed {info['computed']}")
    rep.details.update({"degree": p, "reading": reading})
    if p == 1:
        rep.details["mode_index"] = ("with the mode index starting at 1 no degree-1 generators are listed; "
                                     "the comparison uses the parity of the degree only")
    return rep
