"""Evaluation representations of Y(M|N) and their verification.

A gl(M|N) module is given by the images pi^{ab} of the generators.  The
evaluation map sends T(u) to I + E/u, whose (a, b) block is
delta_ab + pi^{ab}/u.  The bracket convention is the one matching the
degree-one truncation of the Yangian commutation relations:

    [pi^{ab}, pi^{cd}} = (-1)^{[a][b] + ([a]+[b])[c]} (delta_cb pi^{ad} - delta_ad pi^{cb}).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exactalg import Number, Poly, rat, rat_to_str
from .grading import GradingProfile, bar_yangian, make_profile
from .reports import Report
from .tensor import LeggedMatrix, PolyMatrix, embed_leg, make_R, single_leg

Sparse = Dict[Tuple[int, int], Number]


def _sign(e: int) -> int:
    return -1 if e % 2 else 1


@dataclass
class GlRep:
    """pi[(a, b)] is a sparse d x d matrix {(p, q): c} with 0-based p, q."""

    K: int
    d: int
    pi: Dict[Tuple[int, int], Sparse]
    grades: Optional[Tuple[int, ...]] = None
    name: str = "custom"

    def op(self, a: int, b: int) -> PolyMatrix:
        m = self.pi.get((a, b), {})
        return PolyMatrix.from_entries(self.d, {k: Poly.const(c) for k, c in m.items()})

    def v_grades(self) -> Tuple[int, ...]:
        return self.grades if self.grades is not None else (0,) * self.d

    def to_json(self) -> dict:
        pi = {}
        for (a, b), m in sorted(self.pi.items()):
            if not m:
                continue
            dense = [["0"] * self.d for _ in range(self.d)]
            for (p, q), c in m.items():
                dense[p][q] = rat_to_str(c)
            pi[f"{a},{b}"] = dense
        out = {"K": self.K, "d": self.d, "pi": pi}
        if self.grades is not None:
            out["grades"] = list(self.grades)
        return out

    @staticmethod
    def from_json(data: dict, K: Optional[int] = None) -> "GlRep":
        d = int(data["d"])
        pi: Dict[Tuple[int, int], Sparse] = {}
        for key, dense in data.get("pi", {}).items():
            a, b = (int(x) for x in key.split(","))
            m = {}
            for p, row in enumerate(dense):
                for q, c in enumerate(row):
                    c = rat(c)
                    if c:
                        m[(p, q)] = c
            pi[(a, b)] = m
        K = int(data.get("K", K or max((max(k) for k in pi), default=1)))
        grades = tuple(int(g) for g in data["grades"]) if "grades" in data else None
        return GlRep(K, d, pi, grades, data.get("name", "json"))


# representation catalog

def zero_rep(K: int, d: int = 1) -> GlRep:
    return GlRep(K, d, {}, (0,) * d, "zero")


def defining_rep(profile: GradingProfile) -> GlRep:
    """pi^{ab} = -(-1)^{[a][b]} E_ba on C^{M|N}; then E = -P and T(u) = R(u)."""
    K = profile.K
    pi = {}
    for a in profile.indices:
        for b in profile.indices:
            s = -_sign(profile.grade(a) * profile.grade(b))
            pi[(a, b)] = {(b - 1, a - 1): s}
    return GlRep(K, K, pi, profile.grades, "defining")


def dual_rep(profile: GradingProfile) -> GlRep:
    """pi^{ab} = (-1)^{[a]} E_ab on C^{M|N}."""
    K = profile.K
    pi = {(a, b): {(a - 1, b - 1): _sign(profile.grade(a))} for a in profile.indices for b in profile.indices}
    return GlRep(K, K, pi, profile.grades, "dual")


def character(K: int, x) -> GlRep:
    """One-dimensional module pi^{ab} = x delta_ab."""
    x = rat(x)
    return GlRep(K, 1, {(a, a): {(0, 0): x} for a in range(1, K + 1)} if x else {}, (0,), f"character({x})")


def shifted(rep: GlRep, x) -> GlRep:
    """Tensor with a character: pi^{aa} -> pi^{aa} + x."""
    x = rat(x)
    pi = {k: dict(m) for k, m in rep.pi.items()}
    for a in range(1, rep.K + 1):
        m = pi.setdefault((a, a), {})
        for p in range(rep.d):
            c = m.get((p, p), 0) + x
            if c:
                m[(p, p)] = c
            else:
                m.pop((p, p), None)
    return GlRep(rep.K, rep.d, pi, rep.grades, f"{rep.name}+{x}")


def direct_sum(r1: GlRep, r2: GlRep) -> GlRep:
    if r1.K != r2.K:
        raise ValueError("direct sum of modules for different K")
    pi: Dict[Tuple[int, int], Sparse] = {}
    for k in set(r1.pi) | set(r2.pi):
        m = dict(r1.pi.get(k, {}))
        for (p, q), c in r2.pi.get(k, {}).items():
            m[(p + r1.d, q + r1.d)] = c
        pi[k] = m
    return GlRep(r1.K, r1.d + r2.d, pi, r1.v_grades() + r2.v_grades(), f"{r1.name}+{r2.name}")


def perturbed(rep: GlRep, a: int, b: int, p: int = 0, q: int = 0, delta=1) -> GlRep:
    """Add delta to one matrix entry of pi^{ab}; a negative control."""
    pi = {k: dict(m) for k, m in rep.pi.items()}
    m = pi.setdefault((a, b), {})
    c = m.get((p, q), 0) + rat(delta)
    if c:
        m[(p, q)] = c
    else:
        m.pop((p, q), None)
    return GlRep(rep.K, rep.d, pi, None, f"{rep.name}~perturbed")


def validate_gl_rep(rep: GlRep, profile: GradingProfile) -> Report:
    rep_report = Report("GL_REP")
    if rep.K != profile.K:
        rep_report.fail("K", f"module has K={rep.K}, profile has K={profile.K}")
        return rep_report
    g = profile.grade
    ops = {(a, b): rep.op(a, b) for a in profile.indices for b in profile.indices}
    if rep.grades is not None:
        vg = rep.grades
        for (a, b), X in ops.items():
            for p, q, _ in X.items():
                if (vg[p] + vg[q] + g(a) + g(b)) % 2:
                    rep_report.fail(["homogeneity", a, b, p + 1, q + 1], "entry of the wrong parity")
    for a, b, c, d in itertools.product(profile.indices, repeat=4):
        gab, gcd = g(a) + g(b), g(c) + g(d)
        lhs = ops[(a, b)] @ ops[(c, d)] - (ops[(c, d)] @ ops[(a, b)]).scale(_sign(gab * gcd))
        rhs = PolyMatrix(rep.d)
        if c == b:
            rhs = rhs + ops[(a, d)]
        if a == d:
            rhs = rhs - ops[(c, b)]
        rhs = rhs.scale(_sign(g(a) * g(b) + gab * g(c)))
        res = lhs - rhs
        if not res.is_zero():
            i, j, p = next(res.items())
            rep_report.fail([a, b, c, d, i + 1, j + 1], p)
    return rep_report


class EvalT:
    """A family T^{ab}(u) of operators on V, stored as a single-leg matrix
    with a scalar denominator (u for evaluation modules, u^2 for a tensor
    product of two of them)."""

    def __init__(self, profile: GradingProfile, matrix: LeggedMatrix, rep: Optional[GlRep] = None,
                 v_grades: Optional[Sequence[int]] = None):
        if matrix.legs != 1 or matrix.K != profile.K:
            raise ValueError("T must be a single-leg matrix on C^K (x) V")
        self.profile = profile
        self.matrix = matrix
        self.rep = rep
        self.v_grades = tuple(v_grades) if v_grades is not None else (rep.v_grades() if rep else (0,) * matrix.d)

    @property
    def K(self) -> int:
        return self.matrix.K

    @property
    def d(self) -> int:
        return self.matrix.d

    @property
    def den(self) -> Poly:
        return self.matrix.den

    def block(self, a: int, b: int) -> PolyMatrix:
        return self.matrix.block(a, b)

    def blocks(self) -> Dict[Tuple[int, int], PolyMatrix]:
        return {(a, b): self.block(a, b) for a in self.profile.indices for b in self.profile.indices}


def eval_T(rep: GlRep, profile: GradingProfile) -> EvalT:
    if rep.K != profile.K:
        raise ValueError("module and profile disagree on K")
    u = Poly.u()
    d = rep.d
    blocks = {}
    for a in profile.indices:
        for b in profile.indices:
            X = rep.op(a, b)
            if a == b:
                X = X + PolyMatrix.identity(d, u)
            if not X.is_zero():
                blocks[(a, b)] = X
    return EvalT(profile, single_leg(blocks, profile.K, d, profile, u), rep)


def family_from_blocks(profile: GradingProfile, blocks: Dict[Tuple[int, int], PolyMatrix], d: int, den: Poly,
                       v_grades: Optional[Sequence[int]] = None) -> EvalT:
    return EvalT(profile, single_leg(blocks, profile.K, d, profile, den), None, v_grades)


def _first_entry(res: PolyMatrix, legged: LeggedMatrix) -> Tuple[list, Poly]:
    i, j, p = min(res.items(), key=lambda t: (t[0], t[1]))
    ra, rp = legged.decode(i)
    ca, cq = legged.decode(j)
    return [list(ra) + [rp], list(ca) + [cq]], p


def _matrix_report(name: str, lhs: LeggedMatrix, rhs: LeggedMatrix) -> Report:
    rep = Report(name)
    res = lhs.residual(rhs)
    if not res.is_zero():
        for i, j, p in sorted(res.items(), key=lambda t: (t[0], t[1])):
            ra, rp = lhs.decode(i)
            ca, cq = lhs.decode(j)
            rep.fail([list(ra) + [rp], list(ca) + [cq]], p)
    return rep


def two_leg(T: LeggedMatrix) -> Tuple[LeggedMatrix, LeggedMatrix]:
    """T_1(u) and T_2(v) on two auxiliary legs."""
    return embed_leg(T, 1, 2), embed_leg(T.to_v(), 2, 2)


def check_rtt(T: EvalT, profile: Optional[GradingProfile] = None) -> Report:
    """R(u-v) T_1(u) T_2(v) = T_2(v) T_1(u) R(u-v)."""
    profile = profile or T.profile
    R = make_R(profile, "R", T.d)
    T1, T2 = two_leg(T.matrix)
    return _matrix_report("RTT", R * T1 * T2, T2 * T1 * R)


class BlockCache:
    """Blocks of a family in u and in v, with cached pairwise products."""

    def __init__(self, blocks: Dict[Tuple[int, int], PolyMatrix], d: int):
        self.d = d
        self.bu = blocks
        self.bv = {k: X.map(Poly.swap) for k, X in blocks.items()}
        self._prod: Dict[tuple, PolyMatrix] = {}
        self._zero = PolyMatrix(d)

    def get(self, var: str, a: int, b: int) -> PolyMatrix:
        src = self.bu if var == "u" else self.bv
        return src.get((a, b), self._zero)

    def prod(self, x: tuple, y: tuple) -> PolyMatrix:
        key = (x, y)
        out = self._prod.get(key)
        if out is None:
            out = self.get(*x) @ self.get(*y)
            self._prod[key] = out
        return out


def check_comYMN(T: EvalT, profile: Optional[GradingProfile] = None, name: str = "COM_YMN") -> Report:
    """Entrywise commutation relations, multiplied through by (u - v)."""
    profile = profile or T.profile
    g = profile.grade
    cache = BlockCache(T.blocks(), T.d)
    x = Poly.u() - Poly.v()
    rep = Report(name)
    for a, b, c, d in itertools.product(profile.indices, repeat=4):
        gab, gcd = g(a) + g(b), g(c) + g(d)
        lhs = cache.prod(("u", a, b), ("v", c, d)) - cache.prod(("v", c, d), ("u", a, b)).scale(_sign(gab * gcd))
        rhs = cache.prod(("u", c, b), ("v", a, d)) - cache.prod(("v", c, b), ("u", a, d))
        res = lhs.scale(x) - rhs.scale(_sign(g(a) * g(b) + gab * g(c)))
        if not res.is_zero():
            i, j, p = next(iter(res.items()))
            rep.fail([a, b, c, d, i + 1, j + 1], p)
    return rep


def iso_family(T: EvalT) -> EvalT:
    """T~^{ab}(u) = (-1)^{[abar]([bbar]+1)} T^{bbar abar}(u), abar = K+1-a,
    as a family for the swapped profile Y(N|M)."""
    p = T.profile
    K = p.K
    new_profile = make_profile(p.N, p.M, "yangian")
    blocks = {}
    for a in range(1, K + 1):
        for b in range(1, K + 1):
            ab, bb = bar_yangian(a, K), bar_yangian(b, K)
            X = T.block(bb, ab)
            if not X.is_zero():
                blocks[(a, b)] = X.scale(_sign(p.grade(ab) * (p.grade(bb) + 1)))
    return EvalT(new_profile, single_leg(blocks, K, T.d, new_profile, T.den), None, T.v_grades)


def iso_ymn_ynm(T: EvalT) -> Report:
    fam = iso_family(T)
    rep = check_comYMN(fam, fam.profile, "ISO_NM")
    rep.details["target"] = f"Y({fam.profile.M}|{fam.profile.N})"
    return rep


def koszul_kron(X: PolyMatrix, Y: PolyMatrix, y_degree: int, v1_grades: Sequence[int]) -> PolyMatrix:
    """Matrix of X (x) Y on V1 (x) V2, with Y of the given parity moved past V1."""
    d2 = Y.size
    rows: Dict[int, Dict[int, Poly]] = {}
    for p1, q1, x in X.items():
        s = -1 if (y_degree and v1_grades[q1] % 2) else 1
        for p2, q2, y in Y.items():
            val = x * y
            if s < 0:
                val = -val
            row = rows.setdefault(p1 * d2 + p2, {})
            key = q1 * d2 + q2
            if key in row:
                val = row[key] + val
                if val.is_zero():
                    del row[key]
                    continue
            row[key] = val
    return PolyMatrix(X.size * d2, rows)


def tensor_evaluation(T1: EvalT, T2: EvalT) -> EvalT:
    """Coproduct image: Delta(T^{ab}) = sum_c T1^{ac} (x) T2^{cb} on V1 (x) V2."""
    p = T1.profile
    if T2.profile.grades != p.grades:
        raise ValueError("both factors must use the same grading")
    g = p.grade
    d = T1.d * T2.d
    b1, b2 = T1.blocks(), T2.blocks()
    blocks = {}
    for a in p.indices:
        for b in p.indices:
            acc = PolyMatrix(d)
            for c in p.indices:
                X, Y = b1[(a, c)], b2[(c, b)]
                if X.is_zero() or Y.is_zero():
                    continue
                acc = acc + koszul_kron(X, Y, (g(c) + g(b)) % 2, T1.v_grades)
            if not acc.is_zero():
                blocks[(a, b)] = acc
    vg = tuple((x + y) % 2 for x in T1.v_grades for y in T2.v_grades)
    return EvalT(p, single_leg(blocks, p.K, d, p, T1.den * T2.den), None, vg)
