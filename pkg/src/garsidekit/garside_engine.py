"""Left normal forms in spherical simply-laced Artin groups.

Simple elements are handled through an interning table: each element u of
the Coxeter group is keyed by the weight coordinates of ``u(rho)``, which
determine u uniquely.  Left multiplication by a simple reflection and left
descents are then O(rank) operations on that vector; everything else is
memoised on top of them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from .coxeter_core import (
    CoxeterElement,
    CoxeterGraph,
    build_root_system,
    element_from_word,
    longest_element,
    reduced_word,
)
from .errors import IndexOutOfRange, SubsetNotSpherical, NonSpherical

Letter = tuple[int, int]


@dataclass(frozen=True)
class GeneratorWord:
    """A word in the standard generators: a sequence of (index, +1 or -1)."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple((int(i), int(e)) for i, e in self.letters))
        for i, e in self.letters:
            if e not in (1, -1) or i < 1:
                raise ValueError(f"bad letter {(i, e)}")

    @classmethod
    def positive(cls, indices: Iterable[int]) -> "GeneratorWord":
        return cls(tuple((i, 1) for i in indices))

    def __len__(self):
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        return GeneratorWord(self.letters + other.letters)

    def __mul__(self, n: int) -> "GeneratorWord":
        if n < 0:
            return self.inverse() * (-n)
        return GeneratorWord(self.letters * n)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(tuple((i, -e) for i, e in reversed(self.letters)))

    def conjugate_by(self, g: "GeneratorWord") -> "GeneratorWord":
        """g^-1 self g."""
        return g.inverse() + self + g

    def degree(self) -> int:
        return sum(e for _, e in self.letters)

    def support(self) -> frozenset:
        return frozenset(i for i, _ in self.letters)

    def freely_reduced(self) -> "GeneratorWord":
        out: list[Letter] = []
        for i, e in self.letters:
            if out and out[-1] == (i, -e):
                out.pop()
            else:
                out.append((i, e))
        return GeneratorWord(tuple(out))

    def to_text(self) -> str:
        if not self.letters:
            return "eps"
        return "*".join(f"a{i}" if e == 1 else f"a{i}^-1" for i, e in self.letters)

    def __str__(self):
        return self.to_text()


class _SimpleTable:
    """Interned Coxeter group elements with memoised Garside operations."""

    def __init__(self, cartan, sigma):
        self.n = len(cartan)
        self.cartan = [list(r) for r in cartan]
        self.sigma = sigma  # 0-based diagram automorphism induced by w0
        self.vecs: list[tuple[int, ...]] = []
        self.index: dict[tuple[int, ...], int] = {}
        self.ld: list[int] = []
        self._lmul: list[list] = []
        self._rmul: list[list] = []
        self._inv: list = []
        self._comp: list = []
        self._tau: list = []
        self._word: list = []
        self._weight: dict[tuple[int, int], tuple[int, int]] = {}
        self.e = self.intern(tuple([1] * self.n))
        self.delta = self.intern(tuple([-1] * self.n))
        self.gens = [self.lmul(self.e, i) for i in range(self.n)]

    def intern(self, vec: tuple[int, ...]) -> int:
        u = self.index.get(vec)
        if u is not None:
            return u
        u = len(self.vecs)
        self.index[vec] = u
        self.vecs.append(vec)
        mask = 0
        for i, c in enumerate(vec):
            if c < 0:
                mask |= 1 << i
        self.ld.append(mask)
        self._lmul.append([None] * self.n)
        self._rmul.append([None] * self.n)
        self._inv.append(None)
        self._comp.append(None)
        self._tau.append(None)
        self._word.append(None)
        return u

    def lmul(self, u: int, i: int) -> int:
        """s_i * u (0-based i)."""
        row = self._lmul[u]
        x = row[i]
        if x is None:
            vec = self.vecs[u]
            c = vec[i]
            ci = self.cartan[i]
            x = self.intern(tuple(v - c * a for v, a in zip(vec, ci)))
            row[i] = x
            self._lmul[x][i] = u
        return x

    def word(self, u: int) -> tuple[int, ...]:
        """Lexicographically smallest reduced word, 0-based letters."""
        w = self._word[u]
        if w is None:
            out = []
            x = u
            while self.ld[x]:
                m = self.ld[x]
                i = (m & -m).bit_length() - 1
                out.append(i)
                x = self.lmul(x, i)
            w = self._word[u] = tuple(out)
        return w

    def length(self, u: int) -> int:
        return len(self.word(u))

    def inv(self, u: int) -> int:
        x = self._inv[u]
        if x is None:
            x = self.e
            for i in self.word(u):
                x = self.lmul(x, i)
            self._inv[u] = x
            self._inv[x] = u
        return x

    def rmul(self, u: int, i: int) -> int:
        """u * s_i."""
        row = self._rmul[u]
        x = row[i]
        if x is None:
            x = self.inv(self.lmul(self.inv(u), i))
            row[i] = x
            self._rmul[x][i] = u
        return x

    def mul(self, u: int, v: int) -> int:
        x = v
        for i in reversed(self.word(u)):
            x = self.lmul(x, i)
        return x

    def comp(self, u: int) -> int:
        """Right complement u^-1 w0."""
        x = self._comp[u]
        if x is None:
            x = self.intern(tuple(-c for c in self.vecs[self.inv(u)]))
            self._comp[u] = x
        return x

    def tau(self, u: int) -> int:
        """Conjugation by the Garside element, w0 u w0."""
        x = self._tau[u]
        if x is None:
            vec = self.vecs[u]
            out = [0] * self.n
            for i, c in enumerate(vec):
                out[self.sigma[i]] = c
            x = self.intern(tuple(out))
            self._tau[u] = x
            self._tau[x] = u
        return x

    def meet(self, u: int, v: int) -> int:
        acc = self.e
        while True:
            m = self.ld[u] & self.ld[v]
            if not m:
                return acc
            i = (m & -m).bit_length() - 1
            acc = self.rmul(acc, i)
            u = self.lmul(u, i)
            v = self.lmul(v, i)

    def weight(self, a: int, b: int) -> tuple[int, int]:
        """Left-weight the pair: move meet(comp(a), b) from b into a."""
        key = (a, b)
        hit = self._weight.get(key)
        if hit is not None:
            return hit
        ca = self.comp(a)
        while True:
            m = self.ld[ca] & self.ld[b]
            if not m:
                break
            i = (m & -m).bit_length() - 1
            a = self.rmul(a, i)
            ca = self.lmul(ca, i)
            b = self.lmul(b, i)
        self._weight[key] = (a, b)
        if len(self._weight) > 2_000_000:
            self._weight.clear()
        return a, b


class _State:
    """Mutable Delta^k tau^p(f_1) ... tau^p(f_n) used while multiplying."""

    __slots__ = ("t", "k", "p", "f")

    def __init__(self, table: _SimpleTable, k=0, factors=()):
        self.t = table
        self.k = k
        self.p = 0
        self.f = list(factors)

    def times_delta_power(self, m: int):
        self.k += m
        if m & 1:
            self.p ^= 1

    def times_simple(self, x: int):
        t = self.t
        if x == t.e:
            return
        if x == t.delta:
            self.times_delta_power(1)
            return
        if self.p:
            x = t.tau(x)
        f = self.f
        f.append(x)
        j = len(f) - 1
        weight = t.weight
        while j > 0:
            a = f[j - 1]
            a2, b2 = weight(a, f[j])
            if a2 == a:
                break
            f[j - 1] = a2
            f[j] = b2
            j -= 1
        if f[-1] == t.e:
            f.pop()
        if f and f[0] == t.delta:
            lead = 0
            while lead < len(f) and f[lead] == t.delta:
                lead += 1
            del f[:lead]
            self.k += lead

    def times_letter(self, i: int, e: int):
        t = self.t
        if e > 0:
            self.times_simple(t.gens[i])
        else:
            # a_i^-1 = Delta^-1 tau(comp(a_i))
            self.times_delta_power(-1)
            self.times_simple(t.tau(t.comp(t.gens[i])))

    def times_element(self, k: int, factors: Sequence[int]):
        self.times_delta_power(k)
        for x in factors:
            self.times_simple(x)

    def result(self) -> tuple[int, tuple[int, ...]]:
        if self.p:
            return self.k, tuple(self.t.tau(x) for x in self.f)
        return self.k, tuple(self.f)


@dataclass(frozen=True, eq=False)
class GarsideElement:
    """Left normal form Delta^k s_1 ... s_n.

    ``factor_ids`` index the owning group's simple table; the public
    ``factors`` view converts them to :class:`CoxeterElement` matrices.
    """

    group: "ArtinGroup" = field(repr=False)
    delta_power: int
    factor_ids: tuple[int, ...]

    @property
    def graph(self) -> CoxeterGraph:
        return self.group.graph

    @cached_property
    def factor_words(self) -> tuple[tuple[int, ...], ...]:
        """Smallest-lexicographic reduced word (1-based) of each factor."""
        t = self.group._table
        return tuple(tuple(i + 1 for i in t.word(x)) for x in self.factor_ids)

    @property
    def factors(self) -> tuple[CoxeterElement, ...]:
        return tuple(self.group.coxeter_element(x) for x in self.factor_ids)

    @property
    def inf(self) -> int:
        return self.delta_power

    @property
    def sup(self) -> int:
        return self.delta_power + len(self.factor_ids)

    @property
    def canonical_length(self) -> int:
        return len(self.factor_ids)

    def is_identity(self) -> bool:
        return self.delta_power == 0 and not self.factor_ids

    def __eq__(self, other):
        if not isinstance(other, GarsideElement):
            return NotImplemented
        if other.group is self.group:
            return self.delta_power == other.delta_power and self.factor_ids == other.factor_ids
        return (
            self.graph == other.graph
            and self.delta_power == other.delta_power
            and self.factor_words == other.factor_words
        )

    def __hash__(self):
        return hash((self.delta_power, self.factor_words))

    def __mul__(self, other: "GarsideElement") -> "GarsideElement":
        return self.group.multiply(self, other)

    def __invert__(self) -> "GarsideElement":
        return self.group.inverse(self)

    def __pow__(self, m: int) -> "GarsideElement":
        return self.group.power(self, m)

    def to_word(self) -> GeneratorWord:
        """A word for this element: Delta^k as the longest element word, then the factors."""
        dw = self.group.delta_word()
        letters = list((dw * self.delta_power).letters)
        for w in self.factor_words:
            letters.extend((i, 1) for i in w)
        return GeneratorWord(tuple(letters))

    def to_text(self) -> str:
        parts = [f"D^{self.delta_power}"] + ["*".join(f"a{i}" for i in w) for w in self.factor_words]
        if len(parts) == 1:
            return parts[0] + " |"
        return " | ".join(parts)

    def __str__(self):
        return self.to_text()


class ArtinGroup:
    """The spherical Artin group of a simply-laced Coxeter graph."""

    def __init__(self, graph: CoxeterGraph):
        self.graph = graph
        self.roots = build_root_system(graph)
        self.rank = graph.rank
        w0 = longest_element(self.roots)
        self._w0 = w0
        sigma = []
        for i, alpha in enumerate(self.roots.simple_roots):
            img = w0.apply(alpha)
            sigma.append(img.index(-1))
        self.sigma = tuple(sigma)
        self._table = _SimpleTable(self.roots.cartan, self.sigma)
        self._cox_cache: dict[int, CoxeterElement] = {}
        self._center = None

    def __repr__(self):
        return f"ArtinGroup({self.graph.type_name})"

    # -- conversions -------------------------------------------------------

    def coxeter_element(self, simple_id: int) -> CoxeterElement:
        u = self._cox_cache.get(simple_id)
        if u is None:
            u = element_from_word(self.roots, [i + 1 for i in self._table.word(simple_id)])
            self._cox_cache[simple_id] = u
        return u

    def simple_id(self, u: CoxeterElement) -> int:
        x = self._table.e
        for i in reversed(reduced_word(u)):
            x = self._table.lmul(x, i - 1)
        return x

    def _check(self, word: GeneratorWord):
        for i, _ in word:
            if not 1 <= i <= self.rank:
                raise IndexOutOfRange(f"generator a{i} not in a1..a{self.rank}")

    def delta_word(self) -> GeneratorWord:
        return GeneratorWord.positive(i + 1 for i in self._table.word(self._table.delta))

    # -- normal forms ------------------------------------------------------

    def _element(self, k, ids) -> GarsideElement:
        return GarsideElement(self, k, tuple(ids))

    def identity(self) -> GarsideElement:
        return self._element(0, ())

    def delta(self, k: int = 1) -> GarsideElement:
        return self._element(k, ())

    def generator(self, i: int) -> GarsideElement:
        return self.normalize(GeneratorWord(((i, 1),)))

    def normalize(self, word: GeneratorWord | Iterable[Letter]) -> GarsideElement:
        if not isinstance(word, GeneratorWord):
            word = GeneratorWord(tuple(word))
        self._check(word)
        st = _State(self._table)
        for i, e in word:
            st.times_letter(i - 1, e)
        return self._element(*st.result())

    def _as_element(self, x) -> GarsideElement:
        return x if isinstance(x, GarsideElement) else self.normalize(x)

    def multiply(self, *xs) -> GarsideElement:
        xs = [self._as_element(x) for x in xs]
        if not xs:
            return self.identity()
        st = _State(self._table, xs[0].delta_power, xs[0].factor_ids)
        for y in xs[1:]:
            st.times_element(y.delta_power, y.factor_ids)
        return self._element(*st.result())

    def inverse(self, x) -> GarsideElement:
        x = self._as_element(x)
        t = self._table
        st = _State(t)
        for s in reversed(x.factor_ids):
            st.times_delta_power(-1)
            st.times_simple(t.tau(t.comp(s)))
        st.times_delta_power(-x.delta_power)
        return self._element(*st.result())

    def power(self, x, m: int) -> GarsideElement:
        x = self._as_element(x)
        if m < 0:
            x, m = self.inverse(x), -m
        st = _State(self._table)
        for _ in range(m):
            st.times_element(x.delta_power, x.factor_ids)
        return self._element(*st.result())

    def conjugate(self, x, g) -> GarsideElement:
        """g^-1 x g."""
        g = self._as_element(g)
        return self.multiply(self.inverse(g), x, g)

    # -- queries -----------------------------------------------------------

    def equal(self, x, y) -> bool:
        return self.is_trivial(self.multiply(x, self.inverse(y)))

    def is_trivial(self, x) -> bool:
        return self._as_element(x).is_identity()

    def inf(self, x) -> int:
        return self._as_element(x).inf

    def sup(self, x) -> int:
        return self._as_element(x).sup

    def canonical_length(self, x) -> int:
        return self._as_element(x).canonical_length

    @staticmethod
    def degree(x) -> int:
        if isinstance(x, GarsideElement):
            t = x.group._table
            return x.delta_power * t.length(t.delta) + sum(t.length(s) for s in x.factor_ids)
        if not isinstance(x, GeneratorWord):
            x = GeneratorWord(tuple(x))
        return x.degree()

    def absorbs(self, x, y) -> bool:
        """(sup(y) = 0 or inf(y) = 0) and xy has the same inf and sup as x."""
        x, y = self._as_element(x), self._as_element(y)
        if not (y.sup == 0 or y.inf == 0):
            return False
        xy = self.multiply(x, y)
        return xy.sup == x.sup and xy.inf == x.inf

    def left_fraction(self, x) -> tuple[GarsideElement, GarsideElement]:
        """Positive p, q with x = p^-1 q and p, q without a common left divisor."""
        x = self._as_element(x)
        if x.delta_power >= 0:
            return self.identity(), x
        m = -x.delta_power
        r = min(m, len(x.factor_ids))
        head = self._element(0, x.factor_ids[:r])
        p = self.multiply(self.inverse(head), self.delta(m))
        q = self._element(0, x.factor_ids[r:])
        return p, q

    def positive_support(self, x: GarsideElement) -> frozenset:
        """Generators occurring in any positive word for a positive element."""
        if x.delta_power < 0:
            raise ValueError("element is not positive")
        if x.delta_power > 0:
            return frozenset(range(1, self.rank + 1))
        return frozenset(i for w in x.factor_words for i in w)

    def in_standard_parabolic(self, x, subset: Iterable[int]) -> bool:
        subset = frozenset(subset)
        bad = [i for i in subset if not 1 <= i <= self.rank]
        if bad:
            raise IndexOutOfRange(f"generators {sorted(bad)} not in a1..a{self.rank}")
        try:
            self.graph.induced(subset)
        except NonSpherical as exc:
            raise SubsetNotSpherical(str(exc), exc.subgraph) from exc
        p, q = self.left_fraction(x)
        return self.positive_support(p) <= subset and self.positive_support(q) <= subset

    def center_exponent(self) -> int:
        """Smallest c >= 1 such that Delta^c commutes with every generator."""
        if self._center is None:
            c = 1
            while True:
                d = self.delta(c)
                if all(
                    self.multiply(self.inverse(d), self.generator(i), d) == self.generator(i)
                    for i in range(1, self.rank + 1)
                ):
                    self._center = c
                    break
                c += 1
        return self._center

    def central_power(self, x) -> int | None:
        """m if x = Delta^(m c) for the center exponent c, else None."""
        x = self._as_element(x)
        c = self.center_exponent()
        if x.factor_ids or x.delta_power % c:
            return None
        return x.delta_power // c

    def mod_center_equal(self, x, y) -> bool:
        return self.central_power(self.multiply(x, self.inverse(y))) is not None

    # -- serialisation -----------------------------------------------------

    def parse_normal_form(self, text: str) -> GarsideElement:
        """Inverse of :meth:`GarsideElement.to_text`; the result is re-normalised and checked."""
        parts = [p.strip() for p in text.strip().split("|")]
        head, rest = parts[0], [p for p in parts[1:] if p]
        if not head.startswith("D^"):
            raise ValueError(f"normal form must start with D^k: {text!r}")
        k = int(head[2:])
        t = self._table
        ids = []
        for p in rest:
            letters = [int(tok.strip()[1:]) for tok in p.split("*")]
            for i in letters:
                if not 1 <= i <= self.rank:
                    raise IndexOutOfRange(f"generator a{i} not in a1..a{self.rank}")
            x = t.e
            for i in reversed(letters):
                x = t.lmul(x, i - 1)
            if t.length(x) != len(letters):
                raise ValueError(f"factor {p!r} is not a reduced word")
            ids.append(x)
        el = self._element(k, ids)
        if not self.is_left_weighted(el) or t.e in ids or t.delta in ids:
            raise ValueError(f"not a left normal form: {text!r}")
        return el

    def is_left_weighted(self, x: GarsideElement) -> bool:
        """Every adjacent pair satisfies meet(comp(s_i), s_(i+1)) = 1."""
        t = self._table
        f = x.factor_ids
        return all(t.meet(t.comp(a), b) == t.e for a, b in zip(f, f[1:]))


_GROUPS: dict[CoxeterGraph, ArtinGroup] = {}


def artin_group(graph: CoxeterGraph) -> ArtinGroup:
    """Shared ArtinGroup per graph, so simple tables are built once."""
    g = _GROUPS.get(graph)
    if g is None:
        g = _GROUPS[graph] = ArtinGroup(graph)
    return g
