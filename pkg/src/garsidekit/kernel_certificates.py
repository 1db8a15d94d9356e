"""Verification pipelines for the Wajnryb element and the subgroup <w, kappa^-n w kappa^n>.

Each pipeline returns a :class:`CertificateReport`.  Evidence is a list of
self-contained *facts* (word-language expression, expected normal form or
matrix, ...) which :func:`replay` re-checks from scratch.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .element_catalog import (
    CONVENTIONS,
    catalog_environment,
    edge_list,
    resolve_labeling,
)
from .coxeter_core import CoxeterGraph
from .garside_engine import ArtinGroup, GarsideElement, artin_group
from .homology_rep import HomologyRep, CurveClass, SymplecticSpace, evaluate, realize
from .word_language import Environment, expand, parse

VERIFIED = "verified"
REFUTED = "refuted"
EXHAUSTED = "exhausted-without-decision"
STATUSES = (VERIFIED, REFUTED, EXHAUSTED)

GENUS = 3

HOMOLOGY_NOTE = (
    "homological triviality is a necessary condition for lying in the kernel "
    "of the geometric homomorphism, not a sufficient one"
)
FREENESS_NOTE = (
    "a passing bounded-length check is consistent with freeness of the subgroup; "
    "it is not a proof"
)


@dataclass
class CertificateReport:
    claim_id: str
    status: str
    parameters: dict
    evidence: list
    duration: float | None = None
    notes: list = field(default_factory=list)
    counterexample: str | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        # evidence must survive JSON unchanged
        self.parameters = json.loads(json.dumps(self.parameters))
        self.evidence = json.loads(json.dumps(self.evidence))

    def to_dict(self, include_timing: bool = True) -> dict:
        d = {
            "claim_id": self.claim_id,
            "status": self.status,
            "parameters": self.parameters,
            "evidence": self.evidence,
            "notes": list(self.notes),
            "counterexample": self.counterexample,
        }
        if include_timing:
            d["duration"] = self.duration
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CertificateReport":
        return cls(
            claim_id=d["claim_id"],
            status=d["status"],
            parameters=d["parameters"],
            evidence=d["evidence"],
            duration=d.get("duration"),
            notes=list(d.get("notes", [])),
            counterexample=d.get("counterexample"),
        )


# ---------------------------------------------------------------------------
# shared context


@dataclass(frozen=True)
class _Context:
    graph: CoxeterGraph
    group: ArtinGroup
    rep: HomologyRep
    labeling: str

    def params(self, **extra) -> dict:
        p = {
            "labeling": self.labeling,
            "graph_edges": [list(e) for e in edge_list(self.graph)],
            "rank": self.graph.rank,
            "genus": self.rep.space.genus,
            "curve_classes": [list(c.vector) for c in self.rep.classes],
        }
        p.update(extra)
        return p


_CTX = None


def _context() -> _Context:
    global _CTX
    if _CTX is None:
        res = resolve_labeling()
        graph = res.labeling.graph
        _CTX = _Context(graph, artin_group(graph), realize(graph, GENUS), res.labeling.name)
    return _CTX


def _env(convention: str, extra: dict | None = None) -> Environment:
    env = catalog_environment(convention)
    if extra:
        env = env.merged(Environment({k: parse(v) for k, v in extra.items()}))
    return env


def _nf_fact(G: ArtinGroup, expr: str, convention: str, bindings=None) -> tuple[dict, GarsideElement]:
    word = expand(expr, _env(convention, bindings))
    nf = G.normalize(word)
    fact = {"kind": "normal_form", "expr": expr, "convention": convention, "normal_form": nf.to_text()}
    if bindings:
        fact["bindings"] = dict(bindings)
    return fact, nf


def _is_identity(m) -> bool:
    return all(v == (1 if r == c else 0) for r, row in enumerate(m) for c, v in enumerate(row))


# ---------------------------------------------------------------------------
# pipelines


def verify_wajnryb(expr: str = "w") -> CertificateReport:
    """w is nontrivial, has degree 0 and acts trivially on homology, under both conventions."""
    t0 = time.perf_counter()
    ctx = _context()
    G = ctx.group
    evidence, failed = [], []
    for conv in CONVENTIONS:
        word = expand(expr, _env(conv))
        fact, nf = _nf_fact(G, expr, conv)
        fact["nontrivial"] = not nf.is_identity()
        evidence.append(fact)
        if nf.is_identity():
            failed.append(f"(1) {expr} is trivial [{conv}]")
        deg = word.degree()
        evidence.append({"kind": "degree", "expr": expr, "convention": conv, "value": deg})
        if deg != 0:
            failed.append(f"(2) degree({expr}) = {deg} != 0 [{conv}]")
        m = evaluate(ctx.rep, word)
        ident = _is_identity(m)
        evidence.append({"kind": "homology", "expr": expr, "convention": conv,
                         "matrix": [list(r) for r in m], "identity": ident})
        if not ident:
            failed.append(f"(3) homological image of {expr} is not the identity [{conv}]")
    return CertificateReport(
        "wajnryb",
        REFUTED if failed else VERIFIED,
        ctx.params(expr=expr, conventions=list(CONVENTIONS)),
        evidence,
        time.perf_counter() - t0,
        notes=[HOMOLOGY_NOTE] + [f"failed: {f}" for f in failed],
        counterexample=expr if failed else None,
    )


def verify_normalizer(conjugator: str = "b", subgroup: Sequence[int] = (2, 5)) -> CertificateReport:
    """<a1, conjugator> normalises the standard parabolic on ``subgroup``; the conjugator permutes its generators."""
    t0 = time.perf_counter()
    ctx = _context()
    G = ctx.group
    gens = tuple(subgroup)
    evidence, failed, bad_exprs = [], [], []
    conv = "right"
    for g in (conjugator, f"({conjugator})^-1", "a1", "a1^-1"):
        for i in gens:
            expr = f"a{i}^({g})"
            word = expand(expr, _env(conv))
            member = G.in_standard_parabolic(word, gens)
            fact, _ = _nf_fact(G, expr, conv)
            fact.update({"kind": "parabolic", "generators": list(gens), "member": member})
            evidence.append(fact)
            if not member:
                failed.append(f"{expr} is not in <{', '.join(f'a{j}' for j in gens)}>")
                bad_exprs.append(expr)
    images = []
    for i in gens:
        fact, nf = _nf_fact(G, f"a{i}^({conjugator})", conv)
        evidence.append(fact)
        images.append(nf)
    targets = {G.generator(i) for i in gens}
    permutes = set(images) == targets and len(set(images)) == len(gens)
    evidence.append({"kind": "note", "text": f"conjugation by {conjugator} permutes the generators: {permutes}"})
    if not permutes:
        failed.append(f"conjugation by {conjugator} does not permute {{{', '.join(f'a{j}' for j in gens)}}}")
        bad_exprs.append(next(f"a{i}^({conjugator})" for i, im in zip(gens, images) if im not in targets)
                         if any(im not in targets for im in images) else f"a{gens[0]}^({conjugator})")
    for i in gens:
        expr = f"a1 * a{i} * a1^-1 * a{i}^-1"
        fact, nf = _nf_fact(G, expr, conv)
        fact["trivial"] = nf.is_identity()
        evidence.append(fact)
        if not nf.is_identity():
            failed.append(f"a1 does not commute with a{i}")
            bad_exprs.append(expr)
    return CertificateReport(
        "normalizer",
        REFUTED if failed else VERIFIED,
        ctx.params(conjugator=conjugator, subgroup=list(gens), convention=conv),
        evidence,
        time.perf_counter() - t0,
        notes=[f"failed: {f}" for f in failed],
        counterexample=bad_exprs[0] if bad_exprs else None,
    )


def verify_torsion(max_power: int = 6, expr: str = "w") -> CertificateReport:
    """w^m is nontrivial and not central (not a power of Delta^c) for m = 1..max_power."""
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    t0 = time.perf_counter()
    ctx = _context()
    G = ctx.group
    evidence, failed = [], []
    c = G.center_exponent()
    deg_delta = G.degree(G.delta())
    evidence.append({"kind": "degree", "expr": "delta", "convention": "right", "value": deg_delta})
    for conv in CONVENTIONS:
        base_word = expand(expr, _env(conv))
        evidence.append({"kind": "degree", "expr": expr, "convention": conv, "value": base_word.degree()})
        x = G.normalize(base_word)
        for m in range(1, max_power + 1):
            pexpr = f"({expr})^{m}"
            xm = G.power(x, m)
            central = G.central_power(xm)
            evidence.append({
                "kind": "normal_form", "expr": pexpr, "convention": conv,
                "normal_form": xm.to_text(), "nontrivial": not xm.is_identity(),
                "central": central is not None,
            })
            if xm.is_identity() or central is not None:
                failed.append(f"{pexpr} is trivial or central [{conv}]")
    evidence.append({
        "kind": "note",
        "text": f"degree obstruction: deg(Delta^k) = {deg_delta}k vanishes only for k = 0",
    })
    return CertificateReport(
        "torsion",
        REFUTED if failed else VERIFIED,
        ctx.params(expr=expr, max_power=max_power, center_exponent=c, conventions=list(CONVENTIONS)),
        evidence,
        time.perf_counter() - t0,
        notes=[f"failed: {f}" for f in failed],
        counterexample=failed[0].split(" is ")[0] if failed else None,
    )


_FREE_LETTERS = ("w", "w^-1", "c", "c^-1")


def reduced_words(max_length: int) -> list[tuple[int, ...]]:
    """Freely reduced words over letters 0..3 (w, w^-1, c, c^-1), depth-first, smallest letter first."""
    out = []

    def dfs(prefix):
        if prefix:
            out.append(tuple(prefix))
        if len(prefix) == max_length:
            return
        for a in range(4):
            if prefix and prefix[-1] == a ^ 1:
                continue
            prefix.append(a)
            dfs(prefix)
            prefix.pop()

    dfs([])
    return out


def word_text(letters: Iterable[int], c_expr: str | None = None) -> str:
    """Word over w, c; with ``c_expr`` the letter c is written out in full."""
    names = _FREE_LETTERS
    if c_expr is not None:
        names = ("w", "w^-1", f"({c_expr})", f"({c_expr})^-1")
    return " * ".join(names[a] for a in letters)


def freeness_certificate(n_range: Iterable[int] = range(1, 9), max_word_length: int = 4,
                         convention: str = "right", stop_at_first: bool = False) -> CertificateReport:
    """Bounded-length check that <w, kappa^-n w kappa^n> has no short relations modulo the center."""
    if max_word_length < 1:
        raise ValueError("max_word_length must be >= 1")
    n_values = list(n_range)
    if not n_values or min(n_values) < 1:
        raise ValueError("n_range must be a nonempty range of positive integers")
    t0 = time.perf_counter()
    ctx = _context()
    G = ctx.group
    env = _env(convention)
    w_word = expand("w", env)
    w_nf = G.normalize(w_word)
    kappa_nf = G.normalize(expand("kappa", env))
    words = reduced_words(max_word_length)
    evidence, per_n = [], []
    first_pass = None
    homology_ok = True
    for n in n_values:
        c_expr = f"kappa^-{n} * w * kappa^{n}"
        kn = G.power(kappa_nf, n)
        c_nf = G.multiply(G.inverse(kn), w_nf, kn)
        c_word = expand(c_expr, env)
        hw, hc = evaluate(ctx.rep, w_word), evaluate(ctx.rep, c_word)
        kernel_ok = _is_identity(hw) and _is_identity(hc)
        homology_ok = homology_ok and kernel_ok
        evidence.append({"kind": "homology", "expr": "c", "bindings": {"c": c_expr}, "convention": convention,
                         "matrix": [list(r) for r in hc], "identity": _is_identity(hc)})
        letters_nf = [w_nf, G.inverse(w_nf), c_nf, G.inverse(c_nf)]
        failures = []
        facts = []
        # depth-first products share prefixes
        cache: dict[tuple, GarsideElement] = {(): G.identity()}
        for lw in words:
            x = G.multiply(cache[lw[:-1]], letters_nf[lw[-1]])
            cache[lw] = x
            central = G.central_power(x)
            facts.append({"kind": "nf_summary", "expr": word_text(lw), "bindings": {"c": c_expr},
                          "convention": convention, "inf": x.inf, "sup": x.sup,
                          "trivial": x.is_identity(), "central": central is not None})
            if central is not None:
                failures.append(word_text(lw))
        evidence.extend(facts)
        passed = not failures
        per_n.append({"n": n, "words_checked": len(words), "passed": passed,
                      "kernel_witness": kernel_ok,
                      "trivial_in_A": [f["expr"] for f in facts if f["trivial"]],
                      "trivial_mod_center": failures})
        if passed and kernel_ok and first_pass is None:
            first_pass = n
            if stop_at_first:
                break
    if not homology_ok:
        status = REFUTED
    elif first_pass is not None:
        status = VERIFIED
    else:
        status = EXHAUSTED
    counter = None
    if status != VERIFIED:
        bad = next((p for p in per_n if p["trivial_mod_center"]), None)
        if bad:
            word = bad["trivial_mod_center"][0]
            letters = tuple(_FREE_LETTERS.index(t) for t in word.split(" * "))
            counter = word_text(letters, f"kappa^-{bad['n']} * w * kappa^{bad['n']}")
    evidence.insert(0, {"kind": "note", "text": f"first fully passing n: {first_pass}"})
    return CertificateReport(
        "free",
        status,
        ctx.params(n_range=n_values, max_word_length=max_word_length, convention=convention,
                   words_per_n=len(words), first_passing_n=first_pass, per_n=per_n),
        evidence,
        time.perf_counter() - t0,
        notes=[FREENESS_NOTE, HOMOLOGY_NOTE,
               "secondary line: per_n[].trivial_in_A lists words trivial in A(E6) itself"],
        counterexample=counter,
    )


PROFILES = {
    "quick": {"torsion": 3, "n_range": range(1, 3), "max_word_length": 2},
    "full": {"torsion": 6, "n_range": range(1, 9), "max_word_length": 4},
}


def run_all(profile: str = "quick") -> list[CertificateReport]:
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}")
    p = PROFILES[profile]
    return [
        verify_wajnryb(),
        verify_normalizer(),
        verify_torsion(p["torsion"]),
        freeness_certificate(p["n_range"], p["max_word_length"]),
    ]


def aggregate_status(reports: Sequence[CertificateReport]) -> str:
    if any(r.status == REFUTED for r in reports):
        return REFUTED
    if all(r.status == VERIFIED for r in reports):
        return VERIFIED
    return EXHAUSTED


# ---------------------------------------------------------------------------
# replay


def replay(report: CertificateReport) -> bool:
    """Re-check every fact of a report from its own parameters."""
    p = report.parameters
    graph = CoxeterGraph.from_edges(p["rank"], p["graph_edges"])
    G = artin_group(graph)
    rep = HomologyRep(SymplecticSpace(p["genus"]), tuple(CurveClass(v) for v in p["curve_classes"]))
    for fact in report.evidence:
        kind = fact["kind"]
        if kind == "note":
            continue
        env = _env(fact.get("convention", "right"), fact.get("bindings"))
        word = expand(fact["expr"], env)
        if kind == "degree":
            ok = word.degree() == fact["value"]
        elif kind == "homology":
            m = evaluate(rep, word)
            ok = [list(r) for r in m] == fact["matrix"] and _is_identity(m) == fact["identity"]
        elif kind in ("normal_form", "parabolic"):
            nf = G.normalize(word)
            ok = nf == G.parse_normal_form(fact["normal_form"])
            if "nontrivial" in fact:
                ok = ok and fact["nontrivial"] == (not nf.is_identity())
            if "central" in fact:
                ok = ok and fact["central"] == (G.central_power(nf) is not None)
            if "trivial" in fact:
                ok = ok and fact["trivial"] == nf.is_identity()
            if kind == "parabolic":
                ok = ok and G.in_standard_parabolic(word, fact["generators"]) == fact["member"]
        elif kind == "nf_summary":
            nf = G.normalize(word)
            ok = (nf.inf, nf.sup, nf.is_identity(), G.central_power(nf) is not None) == (
                fact["inf"], fact["sup"], fact["trivial"], fact["central"])
        else:
            raise ValueError(f"unknown fact kind {kind!r}")
        if not ok:
            return False
    return True


def without_timing(report: CertificateReport) -> CertificateReport:
    return replace(report, duration=None)
