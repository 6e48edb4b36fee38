import pytest

from gestphon.affine import ArithVar
from gestphon.errors import ConfigError, UnsupportedConstructError
from gestphon.phonology import final_devoicing, voiced_in_onset
from gestphon.terms import And, Attr, Eq, Labeled, Not, Or, Type, TypeLit, Var, at, conjuncts, equal, nnf, normalize, parse_term


def _strip(term):
    """Drop labels, flatten nested conjunctions/disjunctions."""
    if isinstance(term, Labeled):
        return _strip(term.term)
    if isinstance(term, Attr):
        return Attr(term.attr, _strip(term.term))
    if isinstance(term, Not):
        return Not(_strip(term.term))
    if isinstance(term, (And, Or)):
        flat = []
        for t in map(_strip, term.terms):
            flat.extend(t.terms if type(t) is type(term) else [t])
        return type(term)(tuple(flat))
    return term


def test_configured_constraints_match_builders(config):
    assert _strip(config.constraints["final_devoicing"]) == _strip(final_devoicing())
    assert _strip(config.constraints["voiced_in_onset"]) == _strip(voiced_in_onset())


def test_precedence(lattice):
    t = parse_term("seg:obstruent & coda ; nucleus", lattice)
    assert t == Or((And((Attr("seg", Type("obstruent")), Type("coda"))), Type("nucleus")))


def test_negation_spellings(lattice):
    forms = [parse_term(s, lattice) for s in ("~coda", "∼coda", "¬coda")]
    assert forms[0] == forms[1] == forms[2] == Not(Type("coda"))


def test_nested_path(lattice):
    assert parse_term("seg:secondary:voiceless", lattice) == at(("seg", "secondary"), Type("voiceless"))


def test_definitions_are_labelled(lattice):
    defs = {"onsetty": parse_term("in_onset", lattice)}
    assert parse_term("onsetty & stop", lattice, defs) == And((Labeled("onsetty", Type("in_onset")), Type("stop")))


@pytest.mark.parametrize("text", ["coda &", "(coda", "seg:", "nosuchtype", "coda 3", "coda)"])
def test_parse_errors(lattice, text):
    with pytest.raises(ConfigError):
        parse_term(text, lattice)


def test_nnf_complements(lattice):
    t = nnf(Not(Attr("seg", Type("obstruent"))), lattice)
    assert t == Attr("seg", Type(lattice.atoms - lattice.denotation("obstruent")))
    t = nnf(Not(And((Type("coda"), Type("stop")))), lattice)
    assert isinstance(t, Or)


def test_negated_equation_unsupported(lattice):
    x = ArithVar("x")
    with pytest.raises(UnsupportedConstructError):
        nnf(Not(equal(x, 1)), lattice)


def test_dnf_textual_order(lattice):
    dnf = normalize(parse_term("(stop ; nasal) & (coda ; nucleus)", lattice), lattice)
    firsts = [[lit.atoms for lit in d] for d in dnf]
    den = lattice.denotation
    assert firsts == [
        [den("stop"), den("coda")], [den("stop"), den("nucleus")],
        [den("nasal"), den("coda")], [den("nasal"), den("nucleus")],
    ]
    assert all(isinstance(lit, TypeLit) for d in dnf for lit in d)


def test_conjuncts_flatten():
    a, b, c = Type("a"), Type("b"), Type("c")
    assert conjuncts(And((a, And((b, c))))) == [a, b, c]
    assert conjuncts(a) == [a]


def test_var_and_eq_terms_keep_shape(lattice):
    x = ArithVar("x")
    t = And((Attr("time", Var(x)), equal(x, 5)))
    assert nnf(t, lattice) == t
    assert isinstance(t.terms[1], Eq)
