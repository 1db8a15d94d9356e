"""Homological action of Dehn twists: symplectic transvections on Z^(2g).

Coordinates are (a_1, b_1, ..., a_g, b_g) with <a_k, b_k> = +1.  Entries are
Python ints, so long products never overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from math import gcd
from typing import Sequence

from .coxeter_core import CoxeterGraph
from .errors import IndexOutOfRange, NoRealization, ZeroVector
from .garside_engine import GeneratorWord

IntMatrix = tuple[tuple[int, ...], ...]

# set by the test-suite to verify M^T J M = J after every evaluate()
CHECK_SYMPLECTIC = False


@dataclass(frozen=True)
class SymplecticSpace:
    genus: int

    @property
    def dim(self) -> int:
        return 2 * self.genus

    @cached_property
    def J(self) -> IntMatrix:
        n = self.dim
        rows = [[0] * n for _ in range(n)]
        for k in range(self.genus):
            rows[2 * k][2 * k + 1] = 1
            rows[2 * k + 1][2 * k] = -1
        return tuple(tuple(r) for r in rows)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """x^T J y."""
        s = 0
        for k in range(self.genus):
            s += x[2 * k] * y[2 * k + 1] - x[2 * k + 1] * y[2 * k]
        return s

    def identity(self) -> IntMatrix:
        n = self.dim
        return tuple(tuple(int(r == c) for c in range(n)) for r in range(n))

    def is_symplectic(self, m: IntMatrix) -> bool:
        return matmul(transpose(m), matmul(self.J, m)) == self.J


@dataclass(frozen=True)
class CurveClass:
    vector: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vector", tuple(int(x) for x in self.vector))

    def is_primitive(self) -> bool:
        g = 0
        for x in self.vector:
            g = gcd(g, x)
        return g == 1

    def __neg__(self):
        return CurveClass(tuple(-x for x in self.vector))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def transpose(a: IntMatrix) -> IntMatrix:
    return tuple(zip(*a))


def _jv(space: SymplecticSpace, v: Sequence[int]) -> list[int]:
    # row vector r with r . x = <x, v>
    out = [0] * space.dim
    for k in range(space.genus):
        out[2 * k] = v[2 * k + 1]
        out[2 * k + 1] = -v[2 * k]
    return out


def transvection(space: SymplecticSpace, v: CurveClass, power: int = 1) -> IntMatrix:
    """Matrix of x -> x + power * <x, v> v."""
    vec = v.vector
    if len(vec) != space.dim:
        raise ValueError(f"curve class has dimension {len(vec)}, expected {space.dim}")
    if not any(vec):
        raise ZeroVector("transvection about the zero class")
    r = _jv(space, vec)
    n = space.dim
    return tuple(tuple(int(i == j) + power * vec[i] * r[j] for j in range(n)) for i in range(n))


def _candidates(dim: int, bound: int) -> list[tuple[int, ...]]:
    vs = [v for v in product(range(-bound, bound + 1), repeat=dim) if any(v)]
    vs = [v for v in vs if CurveClass(v).is_primitive()]
    vs.sort(key=lambda v: (sum(abs(x) for x in v), tuple(-x for x in v)))
    return vs


def _extends_basis(basis: list[list[Fraction]], v: Sequence[int]) -> list[Fraction] | None:
    """Reduce v against an echelon basis; None if v is in its span."""
    r = [Fraction(x) for x in v]
    for row in basis:
        piv = next(i for i, x in enumerate(row) if x)
        if r[piv]:
            f = r[piv] / row[piv]
            r = [a - f * b for a, b in zip(r, row)]
    return r if any(r) else None


def _rank_mod2(rows: list[int]) -> int:
    """Rank over F_2 of a matrix given as row bitmasks."""
    rank, rows = 0, list(rows)
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
    return rank


def find_curve_classes(space: SymplecticSpace, graph: CoxeterGraph, bound: int = 2) -> list[CurveClass]:
    """Primitive classes v_1..v_n with |<v_i, v_j>| = 1 iff i, j adjacent, else 0.

    Depth-first over linearly independent vectors with entries in
    [-bound, bound], smallest L1 norm first; the first solution found is
    returned.
    """
    n = graph.rank
    if n > space.dim:
        raise NoRealization(f"{n} curves cannot be realised in genus {space.genus} by this search (n > 2g)")
    verts = list(graph.vertices)
    # n independent classes span a subspace whose radical has dimension at most
    # 2g - n, and the Gram matrix reduces mod 2 to the adjacency matrix
    adj = [sum(1 << k for k, v in enumerate(verts) if graph.adjacent(u, v)) for u in verts]
    if _rank_mod2(adj) < 2 * n - space.dim:
        raise NoRealization(
            f"{graph.type_name} has adjacency rank {_rank_mod2(adj)} over F_2, "
            f"too small for {n} independent classes in genus {space.genus}")
    cands = _candidates(space.dim, bound)
    chosen: list[tuple[int, ...]] = []
    basis: list[list[Fraction]] = []
    pair = space.pairing

    def fits(v, k):
        for j in range(k):
            p = abs(pair(chosen[j], v))
            if p != (1 if graph.adjacent(verts[j], verts[k]) else 0):
                return False
        return True

    def search(k):
        if k == n:
            return True
        for v in cands:
            if not fits(v, k):
                continue
            red = _extends_basis(basis, v)
            if red is None:
                continue
            chosen.append(v)
            basis.append(red)
            if search(k + 1):
                return True
            chosen.pop()
            basis.pop()
        return False

    if not search(0):
        raise NoRealization(f"no realisation of {graph.type_name} in genus {space.genus} with entries in [-{bound}, {bound}]")
    return [CurveClass(v) for v in chosen]


@dataclass(frozen=True)
class HomologyRep:
    """Generator a_i acts as the transvection about ``classes[i-1]``."""

    space: SymplecticSpace
    classes: tuple[CurveClass, ...]

    @cached_property
    def _rows(self):
        return [(c.vector, _jv(self.space, c.vector)) for c in self.classes]

    def matrices(self) -> list[IntMatrix]:
        return [transvection(self.space, c) for c in self.classes]


def realize(graph: CoxeterGraph, genus: int) -> HomologyRep:
    space = SymplecticSpace(genus)
    return HomologyRep(space, tuple(find_curve_classes(space, graph)))


def _as_rep(rep) -> HomologyRep:
    if isinstance(rep, HomologyRep):
        return rep
    classes = tuple(c if isinstance(c, CurveClass) else CurveClass(c) for c in rep)
    if not classes or len(classes[0].vector) % 2:
        raise ValueError("curve classes must be nonempty vectors of even dimension")
    return HomologyRep(SymplecticSpace(len(classes[0].vector) // 2), classes)


def evaluate(rep: HomologyRep | Sequence[CurveClass], word: GeneratorWord) -> IntMatrix:
    """Ordered product of transvections; inverse letters use the inverse transvection."""
    rep = _as_rep(rep)
    n = rep.space.dim
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    rows = rep._rows
    # multiply on the right letter by letter: M <- M T, T = I + e v r^T
    for i, e in word:
        if not 1 <= i <= len(rows):
            raise IndexOutOfRange(f"generator a{i} has no curve class (rank {len(rows)})")
        v, r = rows[i - 1]
        mv = [sum(row[c] * v[c] for c in range(n)) for row in m]
        for a in range(n):
            f = e * mv[a]
            if f:
                ra = m[a]
                for c in range(n):
                    ra[c] += f * r[c]
    out = tuple(tuple(r) for r in m)
    if CHECK_SYMPLECTIC and not rep.space.is_symplectic(out):
        raise AssertionError("evaluate produced a non-symplectic matrix")
    return out


def kernel_witness(rep: HomologyRep | Sequence[CurveClass], word: GeneratorWord) -> dict:
    rep = _as_rep(rep)
    m = evaluate(rep, word)
    trivial = m == rep.space.identity()
    return {
        "homologically_trivial": trivial,
        "matrix": [list(r) for r in m],
        "note": "trivial homological image is necessary, not sufficient, for lying in the kernel of the geometric homomorphism",
    }


def format_matrix(m: IntMatrix) -> str:
    return "\n".join(" ".join(str(x) for x in row) for row in m)
