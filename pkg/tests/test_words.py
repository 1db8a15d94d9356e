import pytest
from hypothesis import given, settings, strategies as st

from garsidekit import Environment, GeneratorWord, artin_group, expand, load_script, named_graph, parse
from garsidekit.element_catalog import WAJNRYB_SCRIPT
from garsidekit.errors import CyclicBinding, DuplicateName, ExponentTooLarge, UnboundName, WordSyntaxError
from garsidekit.word_language import EPS, Conjugate, Generator, Named, Power, Product, names_in, to_text


def letters(text, env=None):
    return expand(text, env).letters


def test_parse_shapes():
    assert parse("a1") == Generator(1)
    assert parse("a1 * a2") == Product((Generator(1), Generator(2)))
    assert parse("a1^-3") == Power(Generator(1), -3)
    assert parse("a1^b") == Conjugate(Generator(1), Named("b"))
    assert parse("a1^(a2*a3)") == Conjugate(Generator(1), Product((Generator(2), Generator(3))))
    assert parse("eps") == EPS
    assert parse("(a1^-1)^b") == Conjugate(Power(Generator(1), -1), Named("b"))


def test_postfix_binds_tighter_than_product():
    assert letters("a1 * a2^2") == ((1, 1), (2, 1), (2, 1))
    assert letters("(a1 * a2)^2") == ((1, 1), (2, 1), (1, 1), (2, 1))


def test_conjugation_is_right_action():
    assert letters("a1^a2") == ((2, -1), (1, 1), (2, 1))
    assert letters("(a1^a2)^a3") == letters("a1^(a2*a3)")


def test_inverse_power():
    assert letters("(a1*a2)^-2") == ((2, -1), (1, -1), (2, -1), (1, -1))
    assert letters("a1^0") == ()
    assert letters("eps * a1 * eps") == ((1, 1),)


@pytest.mark.parametrize(
    "text, pos",
    [("a1 *", 4), ("a1 ^", 4), ("(a1", 3), ("a1 a2", 3), ("a0", 0), ("a1 + a2", 3), ("a1^-x", 4)],
)
def test_syntax_errors_have_positions(text, pos):
    with pytest.raises(WordSyntaxError) as exc:
        parse(text)
    assert exc.value.position == pos


def test_unbound_and_exponent():
    with pytest.raises(UnboundName):
        expand("a1^b")
    with pytest.raises(ExponentTooLarge):
        expand("a1^2000000")
    assert len(expand("a1^1000000")) == 10**6


def test_scripts():
    env = load_script("# two names\nlet x = a1 * a2;\nlet y = x^-1 * a3;\n")
    assert list(env) == ["x", "y"]
    assert letters("y", env) == ((2, -1), (1, -1), (3, 1))
    with pytest.raises(DuplicateName):
        load_script("let x = a1; let x = a2;")
    with pytest.raises(CyclicBinding):
        load_script("let x = x;")
    with pytest.raises(CyclicBinding):
        load_script("let x = y; let y = a1 * x;")
    with pytest.raises(WordSyntaxError):
        load_script("let a1 = a2;")
    with pytest.raises(WordSyntaxError):
        load_script("let x = a1")


def test_forward_reference_in_script():
    env = load_script("let x = y * a1; let y = a2;")
    assert letters("x", env) == ((2, 1), (1, 1))


def test_environment_merge_overrides():
    a = Environment({"x": "a1"})
    b = Environment({"x": "a2"})
    assert letters("x", a.merged(b)) == ((2, 1),)
    with pytest.raises(DuplicateName):
        a.bind("x", "a3")
    with pytest.raises(ValueError):
        a.bind("a4", "a1")


def test_catalog_words():
    env = load_script(WAJNRYB_SCRIPT)
    assert len(expand("b", env)) == 9
    assert len(expand("a1^b", env)) == 19
    assert len(expand("w", env)) == 60
    assert expand("w", env).degree() == 0
    assert len(expand("kappa", env)) == 24
    assert set(names_in(parse("a1^b * kappa^(w*b)"))) == {"b", "kappa", "w"}


names = st.sampled_from(["b", "w", "x_1", "kappa"])
atoms = st.one_of(st.integers(1, 12).map(Generator), names.map(Named), st.just(EPS))


def _compound(children):
    return st.one_of(
        st.lists(children, min_size=2, max_size=4).map(lambda xs: Product(tuple(xs))),
        st.tuples(children, st.integers(-20, 20)).map(lambda t: Power(*t)),
        st.tuples(children, children).map(lambda t: Conjugate(*t)),
    )


expressions = st.recursive(atoms, _compound, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(expressions)
def test_print_parse_round_trip(e):
    text = to_text(e)
    assert to_text(parse(text)) == text
    assert expand(parse(text), _ENV) == expand(e, _ENV)


_ENV = Environment({"b": "a1 * a2", "w": "a3^-1", "x_1": "eps", "kappa": "a2^a4"})

signed = st.lists(st.tuples(st.integers(1, 4), st.sampled_from((1, -1))), max_size=10).map(
    lambda ls: GeneratorWord(tuple(ls)))


@settings(max_examples=80, deadline=None)
@given(signed, signed)
def test_expansion_is_a_homomorphism(u, v):
    env = Environment({"u": _text(u), "v": _text(v)})
    assert expand("u * v", env) == u + v
    assert expand("(u * v)^-1", env) == (u + v).inverse()
    assert expand("u^v", env) == u.conjugate_by(v)
    assert expand("u^3", env).degree() == 3 * u.degree()
    D4 = artin_group(named_graph("D4"))
    assert D4.equal(expand("u^v * v^-1", env), expand("v^-1 * u", env))


def _text(w: GeneratorWord) -> str:
    return w.to_text()


def test_word_to_text():
    assert GeneratorWord(((1, 1), (2, -1))).to_text() == "a1*a2^-1"
    assert GeneratorWord(()).to_text() == "eps"
    assert GeneratorWord(((1, 1), (1, -1), (2, 1))).freely_reduced().letters == ((2, 1),)
