"""Named elements of A(E6) and the choice of vertex labeling they are written in.

The letter sequences for b, w and kappa are only meaningful for a particular
numbering of the E6 diagram.  :func:`resolve_labeling` tries a fixed list of
candidate numberings and keeps the first one under which the normaliser
identities for b hold (b swaps a2 and a5 by conjugation, a1 commutes with
both, and b lives in the A5 parabolic on a2..a6).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .coxeter_core import CoxeterGraph
from .errors import NoCompliantLabeling
from .garside_engine import GeneratorWord, artin_group
from .word_language import Environment, expand, load_script, parse

B_LETTERS = (4, 5, 3, 4, 2, 6, 5, 3, 4)
KAPPA_LETTERS = (
    4, 1, 3, 2, 4, 5, 4, 1, 3, 2, 6, 5,
    5, 6, 2, 3, 1, 4, 5, 4, 2, 3, 1, 4,
)
COXETER_LETTERS = (1, 3, 5, 2, 4, 6)

W_EXPR = "a1 * a1^b * a1 * (a1^-1)^b * a1^-1 * (a1^-1)^b"

WAJNRYB_SCRIPT = f"""\
# Wajnryb element and Calvez-Wiest element of A(E6)
let b = {" * ".join(f"a{i}" for i in B_LETTERS)};
let w = {W_EXPR};
let kappa = {" * ".join(f"a{i}" for i in KAPPA_LETTERS)};
let delta = ({" * ".join(f"a{i}" for i in COXETER_LETTERS)})^6;
"""

# "right": x^g = g^-1 x g (default); "left": x^g = g x g^-1
CONVENTIONS = ("right", "left")

_CANDIDATE_EDGES = {
    "bourbaki": [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)],
    "chain-6-on-3": [(1, 2), (2, 3), (3, 4), (4, 5), (3, 6)],
    "chain-6-on-4": [(1, 2), (2, 3), (3, 4), (4, 5), (4, 6)],
}


@dataclass(frozen=True)
class Labeling:
    name: str
    graph: CoxeterGraph

    @property
    def is_e6(self) -> bool:
        return self.graph.type_name == "E6"


def candidate_labelings() -> list[Labeling]:
    """The three base numberings, then their mirrors under i -> 7 - i."""
    out = []
    for name, edges in _CANDIDATE_EDGES.items():
        out.append(Labeling(name, CoxeterGraph.from_edges(6, edges, name=name)))
    for name, edges in _CANDIDATE_EDGES.items():
        mirrored = [(7 - i, 7 - j) for i, j in edges]
        out.append(Labeling(name + "-mirror", CoxeterGraph.from_edges(6, mirrored, name=name + "-mirror")))
    return out


@dataclass(frozen=True)
class NamedElement:
    symbol: str
    word: GeneratorWord
    labeling: Labeling
    expr: str = field(default="", compare=False)


def make_b(labeling: Labeling) -> NamedElement:
    return NamedElement("b", GeneratorWord.positive(B_LETTERS), labeling, " * ".join(f"a{i}" for i in B_LETTERS))


def make_kappa(labeling: Labeling) -> NamedElement:
    return NamedElement("kappa", GeneratorWord.positive(KAPPA_LETTERS), labeling, " * ".join(f"a{i}" for i in KAPPA_LETTERS))


def make_delta(labeling: Labeling) -> NamedElement:
    return NamedElement("delta", GeneratorWord.positive(COXETER_LETTERS * 6), labeling,
                        f"({' * '.join(f'a{i}' for i in COXETER_LETTERS)})^6")


def make_w(labeling: Labeling, convention: str = "right") -> NamedElement:
    """w = a1 a1^b a1 (a1^-1)^b a1^-1 (a1^-1)^b, expanded through the word language."""
    b = make_b(labeling).expr
    if convention == "right":
        env = Environment({"b": parse(b)})
    elif convention == "left":
        # b x b^-1 is x conjugated (right action) by b^-1
        env = Environment({"b": parse(f"({b})^-1")})
    else:
        raise ValueError(f"unknown conjugation convention {convention!r}")
    return NamedElement("w", expand(W_EXPR, env), labeling, W_EXPR)


def conjugate(x: GeneratorWord, g: GeneratorWord, convention: str = "right") -> GeneratorWord:
    if convention == "right":
        return x.conjugate_by(g)
    if convention == "left":
        return x.conjugate_by(g.inverse())
    raise ValueError(f"unknown conjugation convention {convention!r}")


def _gen(i):
    return GeneratorWord(((i, 1),))


def check_labeling(labeling: Labeling) -> dict:
    """Compliance row for one candidate; ``compliant`` needs every required check."""
    row: dict = {"labeling": labeling.name, "type": labeling.graph.type_name,
                 "edges": [list(e) for e in edge_list(labeling.graph)]}
    checks: dict = {"is_E6": labeling.is_e6}
    G = artin_group(labeling.graph)
    b = make_b(labeling).word
    pair = {G.generator(2), G.generator(5)}
    for conv in CONVENTIONS:
        images = [G.normalize(conjugate(_gen(i), b, conv)) for i in (2, 5)]
        checks[f"swap_a2_a5[{conv}]"] = set(images) == pair and images[0] != images[1]
        row[f"images[{conv}]"] = [im.to_text() for im in images]
    checks["a1_commutes_a2_a5"] = all(
        G.equal(_gen(1) + _gen(j), _gen(j) + _gen(1)) for j in (2, 5)
    )
    sub = labeling.graph.induced(b.support())
    checks["b_support_is_A5_on_2..6"] = b.support() == frozenset(range(2, 7)) and sub.type_name == "A5"
    row["checks"] = checks
    row["compliant"] = all(checks.values())
    # informational only: not used to decide
    row["delta_is_coxeter_power"] = G.normalize(make_delta(labeling).word) == G.delta()
    row["w_nontrivial"] = {c: not G.is_trivial(make_w(labeling, c).word) for c in CONVENTIONS}
    return row


@dataclass(frozen=True)
class Resolution:
    labeling: Labeling
    convention: str
    matrix: tuple

    def summary(self) -> str:
        edges = ", ".join(f"{a}-{b}" for a, b in edge_list(self.labeling.graph))
        conj = "g^-1 x g" if self.convention == "right" else "g x g^-1"
        return f"{self.labeling.name} (edges {edges}); conjugation x^g = {conj}"


@lru_cache(maxsize=None)
def resolve_labeling() -> Resolution:
    matrix = tuple(check_labeling(lab) for lab in candidate_labelings())
    for lab, row in zip(candidate_labelings(), matrix):
        if row["compliant"]:
            return Resolution(lab, "right", matrix)
    raise NoCompliantLabeling("no candidate E6 labeling satisfies all identities", matrix)


def e6_graph() -> CoxeterGraph:
    """The resolved E6 labeling, used wherever the CLI says ``--type E6``."""
    g = resolve_labeling().labeling.graph
    return CoxeterGraph(g.vertices, g.edges, name="E6")


def catalog_environment(convention: str = "right") -> Environment:
    """Bindings b, w, kappa, delta; the left convention rebinds b to its inverse."""
    env = load_script(WAJNRYB_SCRIPT)
    if convention == "right":
        return env
    if convention != "left":
        raise ValueError(f"unknown conjugation convention {convention!r}")
    bindings = dict(env.items())
    bindings["b"] = parse(f"({make_b(None).expr})^-1")
    return Environment(bindings)


def edge_list(graph: CoxeterGraph) -> list[tuple[int, int]]:
    return sorted(tuple(sorted(e)) for e in graph.edges)


def dump(labeling: Labeling | None = None) -> str:
    """The named words as a word-language script, headed by the labeling used."""
    lab = labeling or resolve_labeling().labeling
    lines = [f"# labeling: {lab.name}; edges: " + ", ".join(f"{a}-{b}" for a, b in edge_list(lab.graph)),
             "# conjugation: x^g = g^-1 x g"]
    lines += [ln for ln in WAJNRYB_SCRIPT.splitlines() if ln.startswith("let")]
    return "\n".join(lines) + "\n"
