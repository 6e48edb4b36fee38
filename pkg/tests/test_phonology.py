import pytest

from gestphon.errors import ConfigError, UnknownSegmentError, UnsatisfiableError, UnsyllabifiableError
from gestphon.phonology import build_word, load_inventory, syllabify, voiced_in_onset
from gestphon.pipeline import analyze


def test_lookup_and_aliases(config):
    inv = config.inventory
    assert inv.lookup("b").seg_class == "stop"
    assert inv.lookup("b").alternating
    assert inv.lookup("ə").primary.clip == "none"
    assert inv.lookup("ʔ") is inv.lookup("glottal_stop")
    with pytest.raises(UnknownSegmentError):
        inv.lookup("zz")


@pytest.mark.parametrize(
    "word,shown,roles",
    [
        ("j aː g ə n", "jaː.gən", ("pure_onset", "nucleus", "pure_onset", "nucleus", "pure_coda")),
        ("b ʊ n d ə s", "bʊn.dəs", ("pure_onset", "nucleus", "pure_coda", "pure_onset", "nucleus", "pure_coda")),
        ("ʔ ɛ b ə", "glottal_stop ɛ . b ə", ("pure_onset", "nucleus", "codaonset", "nucleus")),
        ("b ʁ aː v", "bʁaːv", ("pure_onset", "pure_onset", "nucleus", "pure_coda")),
        ("a k t ə", "ak.tə", ("nucleus", "pure_coda", "pure_onset", "nucleus")),
    ],
)
def test_syllabify(config, word, shown, roles):
    pw = syllabify(word.split(), config.inventory)
    assert str(pw) == shown
    assert pw.roles == roles


def test_appendix(config):
    pw = syllabify(["ʔ", "ɛ", "b", "t", "postphonatory_opening"], config.inventory)
    assert pw.roles[-1] == "appendix"
    assert pw.coda_cluster(0) == (2, 3, 4)


@pytest.mark.parametrize("word", [[], ["b", "t"]])
def test_unsyllabifiable(config, word):
    with pytest.raises(UnsyllabifiableError):
        syllabify(word, config.inventory)


def test_misplaced_boundary(config):
    with pytest.raises(UnsatisfiableError) as err:
        build_word(["a", "glottal_stop", "a"], config.inventory, config.table)
    assert list(err.value.labels) == ["is_phonological_word"]


def test_voiced_in_onset_only_for_alternating(config):
    with pytest.raises(ValueError):
        voiced_in_onset(config.inventory.lookup("p"))


def test_labels_name_each_conjunct(config):
    problem = build_word(["b", "ʊ", "n", "t"], config.inventory, config.table)
    labels = {t.label for t in problem.term.terms}
    assert {"lexicon:b@0", "role@0", "final_devoicing@3", "voiced_in_onset@0", "anchor"} <= labels


@pytest.mark.parametrize(
    "word,expected",
    [
        ("j aː g d", {2: "voiceless", 3: "voiceless"}),
        ("j aː g ə n", {2: "voiced"}),
        ("ʔ ɛ b ə", {2: "voiced"}),
        ("l oː b", {2: "voiceless"}),
        ("ʃ t ʁ aː s ə", {0: "voiceless", 1: "voiceless", 4: "voiceless"}),
    ],
)
def test_voicing(config, word, expected):
    assert analyze(word.split(), config).voicing() == expected


def _inventory_data(**segment):
    base = {
        "class": "stop",
        "primary": {"tract_var": "LA", "class": "stop", "cd": "closed", "cl": "labial", "target": -2.0},
        "state": "inactive",
    }
    base.update(segment)
    return {"segments": {"q": base}}


@pytest.mark.parametrize(
    "change",
    [
        {"class": "coda"},
        {"class": "nasal", "alternating": True},
        {"length": "medium"},
        {"state": "laryngeal"},
        {"constraints": ["nonexistent"]},
        {"primary": {"tract_var": "ZZ", "class": "stop", "cd": "closed", "cl": "labial", "target": 0}},
        {"primary": {"tract_var": "LA", "class": "stop", "cd": "closed", "cl": "labial", "target": 99, "clip": "none"}},
        {"primary": {"tract_var": "LA", "class": "stop"}},
    ],
)
def test_invalid_segments(config, change):
    with pytest.raises(ConfigError):
        load_inventory(_inventory_data(**change), config.lattice, config.table, config.constraints)


def test_alias_must_resolve(config):
    data = _inventory_data()
    data["aliases"] = {"Q": "nope"}
    with pytest.raises(ConfigError):
        load_inventory(data, config.lattice, config.table, config.constraints)
