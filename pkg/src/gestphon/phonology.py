"""Segment inventory, syllabification and voicing constraints.

Voicing is never assigned procedurally.  Each lexicon entry for an
alternating obstruent leaves its secondary (glottal) gesture
underspecified as ``laryngeal`` = voiceless or inactive; the attached
constraints ``final_devoicing`` and ``voiced_in_onset`` narrow it once the
syllable role is known, and the solver finds the consistent outcome.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from gestphon.errors import ConfigError, UnknownSegmentError, UnsatisfiableError, UnsyllabifiableError
from gestphon.lattice import TypeLattice
from gestphon.terms import (
    And,
    Attr,
    Eq,
    FeatureTerm,
    Labeled,
    Not,
    Or,
    Type,
    Var,
    at,
    parse_term,
)
from gestphon.timing import GestureSlot, GestureSpec, ParameterTable, associate, end_constraint, gesture_slots

ROLE_ATOMS = ("pure_onset", "nucleus", "pure_coda", "codaonset", "appendix")
VOWEL_LENGTHS = ("lax_short", "tense_long", "none")
WORD_INITIAL = "glottal_stop"
WORD_FINAL = "postphonatory_opening"


@dataclass(frozen=True)
class Segment:
    id: str
    seg_class: str
    primary: GestureSpec
    secondary: GestureSpec | None = None
    state: str = "inactive"
    alternating: bool = False
    vowel_length: str = "none"
    constraints: tuple[str, ...] = ()


def final_devoicing(seg: Segment | None = None) -> FeatureTerm:
    """Obstruents in the coda carry an active glottal opening."""
    return Or((
        Attr("seg", Not(Type("obstruent"))),
        And((
            Attr("seg", Type("obstruent")),
            Or((Not(Type("coda")), And((Type("coda"), at(("seg", "secondary"), Type("voiceless")))))),
        )),
    ))


def voiced_in_onset(seg: Segment | None = None) -> FeatureTerm:
    """Onset (incl. ambisyllabic) positions have no secondary gesture."""
    if seg is not None and not seg.alternating:
        raise ValueError(f"voiced_in_onset attaches to alternating obstruents only, not {seg.id!r}")
    return Or((Not(Type("in_onset")), And((Type("in_onset"), at(("seg", "secondary"), Type("inactive"))))))


@dataclass(frozen=True)
class SegmentInventory:
    lattice: TypeLattice = field(repr=False)
    segments: Mapping[str, Segment]
    aliases: Mapping[str, str] = field(default_factory=dict)
    constraints: Mapping[str, FeatureTerm] = field(default_factory=dict, repr=False)
    legal_onsets: frozenset[tuple[str, ...]] = frozenset()

    def lookup(self, segment_id: str) -> Segment:
        key = self.aliases.get(segment_id, segment_id)
        try:
            return self.segments[key]
        except KeyError:
            raise UnknownSegmentError(f"unknown segment {segment_id!r}") from None

    def __contains__(self, segment_id):
        return self.aliases.get(segment_id, segment_id) in self.segments

    def is_a(self, seg: Segment, type_name: str) -> bool:
        return self.lattice.subsumes(type_name, seg.seg_class)

    def constraint(self, name: str) -> FeatureTerm:
        try:
            return self.constraints[name]
        except KeyError:
            raise ConfigError(f"unknown constraint {name!r}") from None


def parse_constraints(definitions: Mapping[str, str], lattice: TypeLattice) -> dict[str, FeatureTerm]:
    """Parse named constraint texts; definitions may refer to each other."""
    parsed: dict[str, FeatureTerm] = {}
    active: set[str] = set()

    def lookup(name):
        if name not in definitions:
            return None
        if name not in parsed:
            if name in active:
                raise ConfigError(f"recursive constraint definition through {name!r}")
            active.add(name)
            parsed[name] = parse_term(definitions[name], lattice, lookup)
            active.discard(name)
        return parsed[name]

    for name in definitions:
        lookup(name)
    return parsed


def _gesture(data: Mapping, where: str) -> GestureSpec:
    try:
        return GestureSpec(
            tract_var=data["tract_var"],
            gesture_class=data["class"],
            cd=data["cd"],
            cl=data["cl"],
            target=float(data["target"]),
            clip=data.get("clip", "default"),
        )
    except KeyError as exc:
        raise ConfigError(f"{where}: gesture missing {exc}") from None


def load_inventory(
    data: Mapping,
    lattice: TypeLattice,
    table: ParameterTable,
    constraints: Mapping[str, FeatureTerm],
) -> SegmentInventory:
    """Build and validate an inventory from a parsed inventory file."""
    default_constraints = tuple(data.get("defaults", {}).get("constraints", ()))
    segments = {}
    for sid, entry in data.get("segments", {}).items():
        where = f"segment {sid!r}"
        if sid in segments:
            raise ConfigError(f"duplicate {where}")
        try:
            seg = Segment(
                id=sid,
                seg_class=entry["class"],
                primary=_gesture(entry["primary"], where),
                secondary=_gesture(entry["secondary"], where) if "secondary" in entry else None,
                state=entry.get("state", "inactive"),
                alternating=bool(entry.get("alternating", False)),
                vowel_length=entry.get("length", "none"),
                constraints=tuple(dict.fromkeys(default_constraints + tuple(entry.get("constraints", ())))),
            )
        except KeyError as exc:
            raise ConfigError(f"{where}: missing {exc}") from None
        _validate_segment(seg, lattice, table, constraints)
        segments[sid] = seg

    aliases = dict(data.get("aliases", {}))
    for alias, target in aliases.items():
        if target not in segments:
            raise ConfigError(f"alias {alias!r} points to unknown segment {target!r}")
        if alias in segments:
            raise ConfigError(f"alias {alias!r} shadows a segment id")

    onsets = set()
    for text in data.get("syllabification", {}).get("legal_onsets", ()):
        cluster = tuple(aliases.get(s, s) for s in text.split())
        for s in cluster:
            if s not in segments:
                raise ConfigError(f"legal onset {text!r} names unknown segment {s!r}")
        onsets.add(cluster)
    return SegmentInventory(lattice, segments, aliases, dict(constraints), frozenset(onsets))


def _validate_segment(seg: Segment, lattice, table, constraints):
    where = f"segment {seg.id!r}"
    for type_name in (seg.seg_class, seg.state, seg.primary.cd, seg.primary.cl):
        if type_name not in lattice:
            raise ConfigError(f"{where}: unknown type {type_name!r}")
    if "segment_class" in lattice and not lattice.subsumes("segment_class", seg.seg_class):
        raise ConfigError(f"{where}: {seg.seg_class!r} is not a segment class")
    if seg.alternating and not lattice.subsumes("obstruent", seg.seg_class):
        raise ConfigError(f"{where}: only obstruents can be alternating")
    if seg.vowel_length not in VOWEL_LENGTHS:
        raise ConfigError(f"{where}: length must be one of {VOWEL_LENGTHS}")
    table.check_spec(seg.primary, where)
    if seg.secondary is not None:
        table.check_spec(seg.secondary, where + " secondary")
        for type_name in (seg.secondary.cd, seg.secondary.cl):
            if type_name not in lattice:
                raise ConfigError(f"{where}: unknown type {type_name!r}")
    elif not lattice.subsumes("inactive", seg.state):
        raise ConfigError(f"{where}: state {seg.state!r} may be active but no secondary gesture is given")
    for name in seg.constraints:
        if name not in constraints:
            raise ConfigError(f"{where}: unknown constraint {name!r}")


# ---------------------------------------------------------------- syllables


@dataclass(frozen=True)
class Syllable:
    onset: tuple[int, ...]
    nucleus: int
    # coda facet, including an ambisyllabic consonant shared with the next onset
    coda: tuple[int, ...]


@dataclass(frozen=True)
class PhonWord:
    segments: tuple[Segment, ...]
    roles: tuple[str, ...]
    syllables: tuple[Syllable, ...]
    appendix: tuple[int, ...] = ()

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(s.id for s in self.segments)

    def coda_cluster(self, k: int) -> tuple[int, ...]:
        """Coda consonants of syllable ``k`` timed from its vowel's end."""
        pure = tuple(i for i in self.syllables[k].coda if self.roles[i] == "pure_coda")
        if k == len(self.syllables) - 1:
            pure += self.appendix
        return pure

    def syllable_of(self, index: int) -> int:
        for k, syl in enumerate(self.syllables):
            if index == syl.nucleus or index in syl.onset or index in syl.coda:
                return k
        return len(self.syllables) - 1

    def __str__(self):
        sep = " " if any(len(s.id) > 2 for s in self.segments) else ""
        out = []
        for k, syl in enumerate(self.syllables):
            coda = [i for i in syl.coda if self.roles[i] == "pure_coda"]
            if k == len(self.syllables) - 1:
                coda += list(self.appendix)
            out.append(sep.join(self.segments[i].id for i in (*syl.onset, syl.nucleus, *coda)))
        return (f"{sep}.{sep}" if sep else ".").join(out)


def syllabify(word: Sequence[str], inventory: SegmentInventory) -> PhonWord:
    """Assign syllable roles by onset maximization.

    Intervocalic clusters give the next syllable the longest legal onset.
    A single consonant after a lax short vowel is ambisyllabic
    (``codaonset``).  Everything after the last vowel is coda, except a
    word-final boundary item, which is the appendix.
    """
    segs = tuple(inventory.lookup(s) for s in word)
    if not segs:
        raise UnsyllabifiableError("empty word", ["syllabify"])
    nuclei = [i for i, s in enumerate(segs) if inventory.is_a(s, "vowel")]
    if not nuclei:
        raise UnsyllabifiableError(
            "no vowel in " + " ".join(s.id for s in segs) + ": cannot syllabify", ["syllabify"]
        )
    _check_demarcation(segs, inventory)

    roles: list[str | None] = [None] * len(segs)
    appendix = ()
    end = len(segs)
    if segs[-1].id == WORD_FINAL:
        roles[-1] = "appendix"
        appendix = (end - 1,)
        end -= 1

    onsets: list[tuple[int, ...]] = []
    codas: list[tuple[int, ...]] = [() for _ in nuclei]
    onsets.append(tuple(range(0, nuclei[0])))
    for k, (v1, v2) in enumerate(zip(nuclei, nuclei[1:])):
        cluster = list(range(v1 + 1, v2))
        if len(cluster) == 1 and segs[v1].vowel_length == "lax_short":
            onsets.append(tuple(cluster))
            codas[k] = tuple(cluster)
            continue
        split = len(cluster)
        for j in range(len(cluster) + 1):
            tail = tuple(segs[i].id for i in cluster[j:])
            if not tail or tail in inventory.legal_onsets:
                split = j
                break
        codas[k] = tuple(cluster[:split])
        onsets.append(tuple(cluster[split:]))
    codas[-1] = tuple(range(nuclei[-1] + 1, end))

    for k, v in enumerate(nuclei):
        roles[v] = "nucleus"
        for i in onsets[k]:
            roles[i] = "codaonset" if i in (codas[k - 1] if k else ()) else "pure_onset"
        for i in codas[k]:
            if roles[i] is None:
                roles[i] = "pure_coda"
    syllables = tuple(Syllable(onsets[k], v, codas[k]) for k, v in enumerate(nuclei))
    return PhonWord(segs, tuple(roles), syllables, appendix)


def _check_demarcation(segs, inventory):
    for i, s in enumerate(segs):
        if not inventory.is_a(s, "boundary"):
            continue
        ok = (s.id == WORD_INITIAL and i == 0) or (s.id == WORD_FINAL and i == len(segs) - 1)
        if not ok:
            raise UnsatisfiableError(
                f"boundary item {s.id!r} at position {i} does not demarcate the word",
                ["is_phonological_word"],
            )


# ---------------------------------------------------------------- word terms


def position(i: int) -> tuple[str, ...]:
    return ("phon", str(i))


def gesture_term(spec: GestureSpec, slot: GestureSlot) -> FeatureTerm:
    return And((
        Attr("cd", Type(spec.cd)),
        Attr("cl", Type(spec.cl)),
        Attr("time", And((Attr("start", Var(slot.start)), Attr("end", Var(slot.end))))),
        Eq(end_constraint(slot)),
    ))


def lexical_term(seg: Segment, slots: Sequence[GestureSlot]) -> FeatureTerm:
    parts = [Type(seg.seg_class), Attr("secondary", Type(seg.state))]
    for slot in slots:
        spec = seg.primary if slot.layer == "primary" else seg.secondary
        parts.append(Attr(slot.layer, gesture_term(spec, slot)))
    return Attr("seg", And(tuple(parts)))


@dataclass(frozen=True)
class WordProblem:
    word: PhonWord
    slots: tuple[GestureSlot, ...]
    term: FeatureTerm


def build_word(word: Sequence[str], inventory: SegmentInventory, table: ParameterTable) -> WordProblem:
    """Conjoin lexicon entries, roles, process constraints and timing.

    Every conjunct is labelled (``lexicon:b@2``, ``role@2``,
    ``final_devoicing@2``, ``coda@2`` ...) so failures can be reported by
    name.
    """
    pw = syllabify(word, inventory)
    slots = tuple(gesture_slots(pw, table))
    by_index: dict[int, list[GestureSlot]] = {}
    for s in slots:
        by_index.setdefault(s.index, []).append(s)

    conjuncts: list[FeatureTerm] = []
    for i, seg in enumerate(pw.segments):
        here = position(i)
        conjuncts.append(Labeled(f"lexicon:{seg.id}@{i}", at(here, lexical_term(seg, by_index[i]))))
        conjuncts.append(Labeled(f"role@{i}", at(here, Type(pw.roles[i]))))
        for name in seg.constraints:
            conjuncts.append(Labeled(f"{name}@{i}", at(here, inventory.constraint(name))))
    for eq in associate(pw, table, slots):
        conjuncts.append(Labeled(eq.label, Eq(eq)))
    return WordProblem(pw, slots, And(tuple(conjuncts)))


def secondary_path(i: int) -> tuple[str, ...]:
    return position(i) + ("seg", "secondary")


def voicing(solution, word: PhonWord) -> dict[int, str]:
    """Surface voicing of every obstruent: ``voiceless`` or ``voiced``."""
    out = {}
    for i, seg in enumerate(word.segments):
        if not solution.lattice.subsumes("obstruent", seg.seg_class):
            continue
        if solution.has_type(secondary_path(i), "voiceless"):
            out[i] = "voiceless"
        elif solution.has_type(secondary_path(i), "inactive"):
            out[i] = "voiced"
        else:
            out[i] = "undetermined"
    return out
