"""Graded matrices on (C^K)^{(x)L} (x) V with polynomial entries.

Storage is the operator form: a LeggedMatrix is the actual linear map on the
graded tensor product, with the Koszul signs of the leg embeddings already
applied.  Products of such maps are then plain matrix products.

Row/column multi-index order: leg 1 slowest, the internal space V fastest;
flat index = ((i_1 K + i_2) K + ...) d + p with 0-based parts.

A single-leg matrix X = sum_ab E_ab (x) X^{ab} is stored as the block matrix
whose (a, b) block is the d x d operator X^{ab}.
"""

from __future__ import annotations

import itertools
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .exactalg import Number, Poly, Terms, _add_into, _mul_into, _norm, rat
from .grading import GradingProfile

Row = Dict[int, Poly]


class PolyMatrix:
    """Sparse square matrix with Poly entries."""

    __slots__ = ("size", "rows")

    def __init__(self, size: int, rows: Optional[Dict[int, Row]] = None):
        self.size = size
        self.rows: Dict[int, Row] = rows if rows is not None else {}

    @staticmethod
    def identity(size: int, scale: Optional[Poly] = None) -> "PolyMatrix":
        s = scale if scale is not None else Poly.const(1)
        if s.is_zero():
            return PolyMatrix(size)
        return PolyMatrix(size, {i: {i: s} for i in range(size)})

    @staticmethod
    def from_entries(size: int, entries: Dict[Tuple[int, int], Poly]) -> "PolyMatrix":
        rows: Dict[int, Row] = {}
        for (i, j), p in entries.items():
            if not p.is_zero():
                rows.setdefault(i, {})[j] = p
        return PolyMatrix(size, rows)

    def get(self, i: int, j: int) -> Poly:
        return self.rows.get(i, {}).get(j, Poly())

    def items(self) -> Iterator[Tuple[int, int, Poly]]:
        for i, row in self.rows.items():
            for j, p in row.items():
                yield i, j, p

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def _combine(self, other: "PolyMatrix", sign: int) -> "PolyMatrix":
        if self.size != other.size:
            raise ValueError("shape mismatch")
        acc: Dict[int, Dict[int, Terms]] = {
            i: {j: dict(p.terms) for j, p in row.items()} for i, row in self.rows.items()
        }
        for i, row in other.rows.items():
            arow = acc.setdefault(i, {})
            for j, p in row.items():
                t = arow.setdefault(j, {})
                _add_into(t, p.terms, sign)
        return PolyMatrix._from_terms(self.size, acc)

    @staticmethod
    def _from_terms(size: int, acc: Dict[int, Dict[int, Terms]]) -> "PolyMatrix":
        rows: Dict[int, Row] = {}
        for i, arow in acc.items():
            r = {j: Poly(t, _trusted=True) for j, t in arow.items() if t}
            if r:
                rows[i] = r
        return PolyMatrix(size, rows)

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "PolyMatrix":
        return self.scale(-1)

    def scale(self, s) -> "PolyMatrix":
        if not isinstance(s, Poly):
            s = Poly.const(s)
        if s.is_zero():
            return PolyMatrix(self.size)
        if s == Poly.const(1):
            return self
        return PolyMatrix(self.size, {i: {j: p * s for j, p in row.items()} for i, row in self.rows.items()})

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.size != other.size:
            raise ValueError("shape mismatch")
        acc: Dict[int, Dict[int, Terms]] = {}
        orows = other.rows
        for i, row in self.rows.items():
            arow: Dict[int, Terms] = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    t = arow.get(j)
                    if t is None:
                        t = arow[j] = {}
                    _mul_into(t, a.terms, b.terms)
            acc[i] = arow
        return PolyMatrix._from_terms(self.size, acc)

    def map(self, f: Callable[[Poly], Poly]) -> "PolyMatrix":
        rows: Dict[int, Row] = {}
        for i, row in self.rows.items():
            r = {}
            for j, p in row.items():
                q = f(p)
                if not q.is_zero():
                    r[j] = q
            if r:
                rows[i] = r
        return PolyMatrix(self.size, rows)

    def is_zero(self) -> bool:
        return not any(self.rows.values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.size == other.size and (self - other).is_zero()

    __hash__ = None

    def to_dense(self) -> List[List[Poly]]:
        return [[self.get(i, j) for j in range(self.size)] for i in range(self.size)]


class LeggedMatrix:
    """num / den acting on (C^K)^{(x)legs} (x) C^d."""

    __slots__ = ("legs", "K", "d", "grades", "num", "den")
    __hash__ = None

    def __init__(self, legs: int, K: int, d: int, grades: Sequence[int], num: PolyMatrix, den: Optional[Poly] = None):
        self.legs = legs
        self.K = K
        self.d = d
        self.grades = tuple(grades)
        if len(self.grades) != K:
            raise ValueError("need one grade per auxiliary index")
        if num.size != K**legs * d:
            raise ValueError("numerator has the wrong size")
        self.num = num
        self.den = den if den is not None else Poly.const(1)
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")

    @property
    def size(self) -> int:
        return self.K**self.legs * self.d

    def _like(self, num: PolyMatrix, den: Poly) -> "LeggedMatrix":
        return LeggedMatrix(self.legs, self.K, self.d, self.grades, num, den)

    def _check_shape(self, other: "LeggedMatrix") -> None:
        if (self.legs, self.K, self.d, self.grades) != (other.legs, other.K, other.d, other.grades):
            raise ValueError("shape mismatch between legged matrices")

    @staticmethod
    def identity(legs: int, K: int, d: int, grades: Sequence[int]) -> "LeggedMatrix":
        return LeggedMatrix(legs, K, d, grades, PolyMatrix.identity(K**legs * d))

    def __mul__(self, other):
        if isinstance(other, LeggedMatrix):
            return graded_mul(self, other)
        return self._like(self.num.scale(other), self.den)

    def scale(self, s) -> "LeggedMatrix":
        return self._like(self.num.scale(s), self.den)

    def __add__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        self._check_shape(other)
        if self.den == other.den:
            return self._like(self.num + other.num, self.den)
        return self._like(self.num.scale(other.den) + other.num.scale(self.den), self.den * other.den)

    def __neg__(self) -> "LeggedMatrix":
        return self._like(-self.num, self.den)

    def __sub__(self, other: "LeggedMatrix") -> "LeggedMatrix":
        return self + (-other)

    def with_den(self, den: Poly) -> "LeggedMatrix":
        """Divide by an extra scalar."""
        return self._like(self.num, self.den * den)

    def residual(self, other: "LeggedMatrix") -> PolyMatrix:
        """num_1 den_2 - num_2 den_1; zero iff the matrices are equal."""
        self._check_shape(other)
        if self.den == other.den:
            return self.num - other.num
        return self.num.scale(other.den) - other.num.scale(self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LeggedMatrix):
            return NotImplemented
        return self.residual(other).is_zero()

    def map_polys(self, f: Callable[[Poly], Poly]) -> "LeggedMatrix":
        return self._like(self.num.map(f), f(self.den))

    def neg_u(self) -> "LeggedMatrix":
        return self.map_polys(Poly.neg_u)

    def to_v(self) -> "LeggedMatrix":
        return self.map_polys(Poly.swap)

    def decode(self, flat: int) -> Tuple[Tuple[int, ...], int]:
        """Flat index -> (1-based auxiliary indices, 1-based V index)."""
        p = flat % self.d
        rest = flat // self.d
        aux = []
        for _ in range(self.legs):
            aux.append(rest % self.K + 1)
            rest //= self.K
        return tuple(reversed(aux)), p + 1

    def encode(self, aux: Sequence[int], p: int = 1) -> int:
        idx = 0
        for a in aux:
            idx = idx * self.K + (a - 1)
        return idx * self.d + (p - 1)

    def entry(self, row_aux: Sequence[int], col_aux: Sequence[int], p: int = 1, q: int = 1) -> Poly:
        return self.num.get(self.encode(row_aux, p), self.encode(col_aux, q))

    def block(self, a: int, b: int) -> PolyMatrix:
        """For a single-leg matrix, the d x d operator in the (a, b) slot."""
        if self.legs != 1:
            raise ValueError("blocks are defined for single-leg matrices")
        d = self.d
        r0, c0 = (a - 1) * d, (b - 1) * d
        rows: Dict[int, Row] = {}
        for p in range(d):
            row = self.num.rows.get(r0 + p)
            if not row:
                continue
            r = {j - c0: x for j, x in row.items() if c0 <= j < c0 + d}
            if r:
                rows[p] = r
        return PolyMatrix(d, rows)

    def is_even(self) -> bool:
        """Entries only between multi-indices of equal total grade."""
        g = self.grades
        for i, j, _ in self.num.items():
            ai, _ = self.decode(i)
            aj, _ = self.decode(j)
            if (sum(g[a - 1] for a in ai) + sum(g[a - 1] for a in aj)) % 2:
                return False
        return True

    def to_json(self) -> dict:
        dense = [[p.to_json() for p in row] for row in self.num.to_dense()]
        return {"legs": self.legs, "K": self.K, "d": self.d, "grades": list(self.grades),
                "den": self.den.to_json(), "entries": dense}

    @staticmethod
    def from_json(data: dict) -> "LeggedMatrix":
        legs, K, d = int(data["legs"]), int(data["K"]), int(data["d"])
        grades = data.get("grades", [0] * K)
        entries = {}
        for i, row in enumerate(data["entries"]):
            for j, p in enumerate(row):
                entries[(i, j)] = Poly.from_json(p)
        size = K**legs * d
        return LeggedMatrix(legs, K, d, grades, PolyMatrix.from_entries(size, entries), Poly.from_json(data["den"]))

    def __repr__(self) -> str:
        return f"LeggedMatrix(legs={self.legs}, K={self.K}, d={self.d}, nnz={self.num.nnz()}, den={self.den})"


def _grades_of(profile_or_grades) -> Tuple[int, ...]:
    if isinstance(profile_or_grades, GradingProfile):
        return profile_or_grades.grades
    return tuple(profile_or_grades)


def elementary(i: int, j: int, K: int, grades=None) -> LeggedMatrix:
    """The matrix unit E_ij on a single auxiliary leg (d = 1)."""
    g = _grades_of(grades) if grades is not None else (0,) * K
    if not (1 <= i <= K and 1 <= j <= K):
        raise IndexError((i, j))
    return LeggedMatrix(1, K, 1, g, PolyMatrix.from_entries(K, {(i - 1, j - 1): Poly.const(1)}))


def graded_mul(A: LeggedMatrix, B: LeggedMatrix) -> LeggedMatrix:
    A._check_shape(B)
    return A._like(A.num @ B.num, A.den * B.den)


def graded_tensor(A: LeggedMatrix, B: LeggedMatrix) -> LeggedMatrix:
    """A (x) B for two auxiliary matrices (d = 1), with the Koszul sign
    (-1)^{([k]+[l])[j]} on E_ij (x) E_kl."""
    if A.d != 1 or B.d != 1 or A.grades != B.grades:
        raise ValueError("graded_tensor combines auxiliary matrices on the same grading")
    g = A.grades
    nb = B.size
    entries = {}
    for i, j, a in A.num.items():
        ga_col = sum(g[x - 1] for x in A.decode(j)[0])
        for k, l, b in B.num.items():
            gb = sum(g[x - 1] for x in B.decode(k)[0]) + sum(g[x - 1] for x in B.decode(l)[0])
            s = -1 if (gb * ga_col) % 2 else 1
            entries[(i * nb + k, j * nb + l)] = a * b * s
    num = PolyMatrix.from_entries(A.size * nb, entries)
    return LeggedMatrix(A.legs + B.legs, A.K, 1, g, num, A.den * B.den)


def single_leg(blocks: Dict[Tuple[int, int], PolyMatrix], K: int, d: int, grades, den: Optional[Poly] = None) -> LeggedMatrix:
    """Assemble a single-leg matrix from its d x d blocks X^{ab}."""
    g = _grades_of(grades)
    rows: Dict[int, Row] = {}
    for (a, b), X in blocks.items():
        r0, c0 = (a - 1) * d, (b - 1) * d
        for p, q, x in X.items():
            rows.setdefault(r0 + p, {})[c0 + q] = x
    return LeggedMatrix(1, K, d, g, PolyMatrix(K * d, rows), den)


def embed_leg(X: LeggedMatrix, leg: int, legs: int) -> LeggedMatrix:
    """Place a single-leg matrix (with internal space V) on auxiliary leg
    `leg` of `legs`, identity elsewhere.

    The Koszul sign is (-1)^{([a]+[b]) * (grades of the aux indices on the
    later legs)}; the (-1)^{([a]+[b])[b]} normalization of the matrix units
    cancels the sign from the leg itself.
    """
    if X.legs != 1:
        raise ValueError("embed_leg expects a single-leg matrix")
    if not 1 <= leg <= legs:
        raise IndexError(leg)
    K, d, g = X.K, X.d, X.grades
    before = K ** (leg - 1)
    after = K ** (legs - leg)
    after_grades = []
    for t in range(after):
        s, r = 0, t
        for _ in range(legs - leg):
            s += g[r % K]
            r //= K
        after_grades.append(s % 2)
    rows: Dict[int, Row] = {}
    for i, j, x in X.num.items():
        a, p = divmod(i, d)
        b, q = divmod(j, d)
        gab = (g[a] + g[b]) % 2
        for pre in range(before):
            for t in range(after):
                s = -1 if (gab and after_grades[t]) else 1
                ri = ((pre * K + a) * after + t) * d + p
                ci = ((pre * K + b) * after + t) * d + q
                rows.setdefault(ri, {})[ci] = x if s == 1 else -x
    return LeggedMatrix(legs, K, d, g, PolyMatrix(K**legs * d, rows), X.den)


def permutation_P(profile, d: int = 1, legs: int = 2) -> LeggedMatrix:
    """Graded flip of legs 1 and 2: e_k (x) e_l (x) w -> (-1)^{[k][l]} e_l (x) e_k (x) w."""
    g = _grades_of(profile)
    K = len(g)
    rest = K ** (legs - 2) * d
    rows: Dict[int, Row] = {}
    for k in range(K):
        for l in range(K):
            s = -1 if (g[k] and g[l]) else 1
            for t in range(rest):
                ri = (l * K + k) * rest + t
                ci = (k * K + l) * rest + t
                rows.setdefault(ri, {})[ci] = Poly.const(s)
    return LeggedMatrix(legs, K, d, g, PolyMatrix(K**legs * d, rows))


def partial_transpose_t1(A: LeggedMatrix, profile: GradingProfile) -> LeggedMatrix:
    """Transpose on leg 1: the block (a, b) (an operator on the remaining
    legs and V) moves to (bbar, abar) with the sign sigma(a, b)."""
    if A.legs < 1:
        raise ValueError("need at least one leg")
    if profile.kind != "twisted":
        raise ValueError("the transposition needs a twisted profile")
    K = A.K
    D = A.size // K
    rows: Dict[int, Row] = {}
    bar = [profile.bar(a) - 1 for a in range(1, K + 1)]
    for i, j, x in A.num.items():
        a, r = divmod(i, D)
        b, c = divmod(j, D)
        s = profile.sigma(a + 1, b + 1)
        ni = bar[b] * D + r
        nj = bar[a] * D + c
        rows.setdefault(ni, {})[nj] = x if s == 1 else -x
    return A._like(PolyMatrix(A.size, rows), A.den)


def make_Q(profile: GradingProfile, d: int = 1, legs: int = 2) -> LeggedMatrix:
    return partial_transpose_t1(permutation_P(profile, d, legs), profile)


def make_R(profile: GradingProfile, which: str = "R", d: int = 1) -> LeggedMatrix:
    """R(u - v) = I - P/(u - v) or R'(u + v) = I + Q/(u + v) on two legs (x) V."""
    u, v = Poly.u(), Poly.v()
    size = profile.K**2 * d
    if which == "R":
        x = u - v
        num = PolyMatrix.identity(size, x) - permutation_P(profile, d).num
    elif which == "Rprime":
        x = u + v
        num = PolyMatrix.identity(size, x) + make_Q(profile, d).num
    else:
        raise ValueError(f"unknown R-matrix {which!r}")
    return LeggedMatrix(2, profile.K, d, profile.grades, num, x)


def constant_part(A: LeggedMatrix) -> LeggedMatrix:
    """Same matrix with den dropped; for callers that track dens themselves."""
    return A._like(A.num, Poly.const(1))
