"""Structural checks on normal forms, written against the matrix Coxeter core."""

from garsidekit.coxeter_core import build_root_system, length, longest_element, meet_left, right_complement


def left_weighted_pair(a, b) -> bool:
    """gcd(a b, Delta) = a for simple a, b.

    The largest simple prefix of the positive element a b is
    a * meet(a^-1 w0, b), so the condition holds iff that meet is trivial.
    """
    R = a.roots
    return meet_left(right_complement(R, a), b) == R.identity


def check_normal_form(x) -> list[str]:
    """Problems with x as a left normal form; an empty list means it is one."""
    R = build_root_system(x.graph)
    w0 = longest_element(R)
    fs = x.factors
    problems = []
    for k, s in enumerate(fs):
        if s == R.identity:
            problems.append(f"factor {k} is trivial")
        if s == w0:
            problems.append(f"factor {k} is Delta")
        if length(s) != len(x.factor_words[k]):
            problems.append(f"factor {k} word is not reduced")
    for k in range(len(fs) - 1):
        if not left_weighted_pair(fs[k], fs[k + 1]):
            problems.append(f"factors {k}, {k + 1} are not left-weighted")
    return problems
