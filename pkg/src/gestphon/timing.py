"""Gesture records, phase arithmetic and intergestural timing.

All timing is in milliseconds and all phases in degrees, where 360
degrees span one eigenperiod.  A gesture's activation interval ends at its
release phase::

    end = start + eigenperiod * release / 360

Association rules tie the association phase point of one gesture to a
phase point of another; together with the end-time equations they form an
affine system whose unique solution is the gestural score.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gestphon.affine import AffineExpr, AffineStore, ArithVar, Equation, as_expr, to_fraction
from gestphon.errors import ConfigError, UndeterminedTimingError

GESTURE_KINDS = ("vocalic", "consonantal", "opening", "closure")
CLIP_MODES = ("default", "none")


@dataclass(frozen=True)
class GestureSpec:
    tract_var: str
    gesture_class: str
    cd: str
    cl: str
    target: float
    clip: str = "default"


@dataclass(frozen=True)
class GestureClass:
    name: str
    kind: str
    eigenperiod: Fraction
    assoc: Fraction
    release: Fraction

    def __post_init__(self):
        check_phases(self.eigenperiod, self.assoc, self.release, where=f"class {self.name!r}")
        if self.kind not in GESTURE_KINDS:
            raise ConfigError(f"class {self.name!r}: kind must be one of {GESTURE_KINDS}")


@dataclass(frozen=True)
class TractVariable:
    name: str
    code: int
    neutral: float
    minimum: float
    maximum: float

    def __post_init__(self):
        if not self.minimum <= self.neutral <= self.maximum:
            raise ConfigError(f"tract variable {self.name}: neutral outside [{self.minimum}, {self.maximum}]")

    def clip(self, value: float) -> float:
        return min(max(value, self.minimum), self.maximum)


def check_phases(eigenperiod, assoc, release, where="timing"):
    if not eigenperiod > 0:
        raise ConfigError(f"{where}: eigenperiod must be positive, got {eigenperiod}")
    if not 0 < release <= 720:
        raise ConfigError(f"{where}: release must lie in (0, 720], got {release}")
    if not 0 <= assoc <= release:
        raise ConfigError(f"{where}: assoc must lie in [0, release], got {assoc}")


@dataclass(frozen=True)
class ParameterTable:
    classes: Mapping[str, GestureClass]
    tract_variables: Mapping[str, TractVariable]
    # (class, role) -> {"assoc": ..., "release": ...}
    overrides: Mapping[tuple[str, str], Mapping[str, Fraction]] = field(default_factory=dict)
    neutral_eigenperiod: Fraction = Fraction(250)
    ga_threshold: float = 0.2
    pr_threshold: float = 3.0

    @classmethod
    def from_dict(cls, data: Mapping) -> "ParameterTable":
        try:
            classes = {
                name: GestureClass(
                    name,
                    spec.get("kind", "consonantal"),
                    to_fraction(spec["eigenperiod"]),
                    to_fraction(spec["assoc"]),
                    to_fraction(spec["release"]),
                )
                for name, spec in data["classes"].items()
            }
            tvs = {
                name: TractVariable(
                    name, int(spec["code"]), float(spec["neutral"]), float(spec["min"]), float(spec["max"])
                )
                for name, spec in data["tract_variables"].items()
            }
            overrides = {}
            for entry in data.get("overrides", []):
                key = (entry["class"], entry["role"])
                if entry["class"] not in classes:
                    raise ConfigError(f"override for unknown class {entry['class']!r}")
                overrides[key] = {k: to_fraction(entry[k]) for k in ("assoc", "release") if k in entry}
            render = data.get("render", {})
            table = cls(
                classes,
                tvs,
                overrides,
                to_fraction(render.get("neutral_eigenperiod", 250)),
                float(render.get("ga_threshold", 0.2)),
                float(render.get("pr_threshold", 3.0)),
            )
        except KeyError as exc:
            raise ConfigError(f"parameter table: missing key {exc}") from None
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"parameter table: {exc}") from None
        if table.neutral_eigenperiod <= 0:
            raise ConfigError("neutral_eigenperiod must be positive")
        for (cname, role), values in overrides.items():
            c = classes[cname]
            check_phases(
                c.eigenperiod,
                values.get("assoc", c.assoc),
                values.get("release", c.release),
                where=f"override {cname}/{role}",
            )
        return table

    def gesture_class(self, name: str) -> GestureClass:
        try:
            return self.classes[name]
        except KeyError:
            raise ConfigError(f"unknown gesture class {name!r}") from None

    def tract_variable(self, name: str) -> TractVariable:
        try:
            return self.tract_variables[name]
        except KeyError:
            raise ConfigError(f"unknown tract variable {name!r}") from None

    def phases(self, class_name: str, role: str | None = None) -> tuple[Fraction, Fraction, Fraction]:
        """(eigenperiod, assoc, release) for a class, honouring role overrides."""
        c = self.gesture_class(class_name)
        o = self.overrides.get((class_name, role), {}) if role else {}
        return c.eigenperiod, o.get("assoc", c.assoc), o.get("release", c.release)

    def check_spec(self, spec: GestureSpec, where: str = "gesture"):
        self.gesture_class(spec.gesture_class)
        tv = self.tract_variable(spec.tract_var)
        if spec.clip not in CLIP_MODES:
            raise ConfigError(f"{where}: clip must be one of {CLIP_MODES}")
        if spec.clip == "none" and not tv.minimum <= spec.target <= tv.maximum:
            raise ConfigError(
                f"{where}: unclipped target {spec.target} outside {tv.name} range [{tv.minimum}, {tv.maximum}]"
            )


@dataclass(frozen=True)
class Timing:
    start: Fraction
    end: Fraction
    eigenperiod: Fraction
    assoc: Fraction
    release: Fraction

    def __post_init__(self):
        check_phases(self.eigenperiod, self.assoc, self.release)

    @property
    def residual(self):
        return self.end - phase_point(self.start, self.eigenperiod, self.release)

    def at_phase(self, phase):
        return phase_point(self.start, self.eigenperiod, phase)


def phase_point(start, eigenperiod, phase):
    """Time at which a gesture starting at ``start`` reaches ``phase``.

    Exact on ints and Fractions, float if any input is a float, and an
    affine expression if any input is an arithmetic variable.
    """
    if any(isinstance(x, (ArithVar, AffineExpr)) for x in (start, eigenperiod, phase)):
        return as_expr(start) + as_expr(eigenperiod) * (as_expr(phase) / 360)
    if any(isinstance(x, float) for x in (start, eigenperiod, phase)):
        return float(start) + float(eigenperiod) * float(phase) / 360
    return to_fraction(start) + to_fraction(eigenperiod) * to_fraction(phase) / 360


# ------------------------------------------------------------------ slots


@dataclass(frozen=True)
class GestureSlot:
    """A gesture of the word before its timing is known."""

    index: int
    segment: str
    layer: str  # "primary" or "secondary"
    spec: GestureSpec
    role: str
    eigenperiod: Fraction
    assoc: Fraction
    release: Fraction
    start: ArithVar
    end: ArithVar

    @property
    def assoc_point(self):
        return phase_point(self.start, self.eigenperiod, self.assoc)

    @property
    def release_point(self):
        return phase_point(self.start, self.eigenperiod, self.release)


def make_slot(index, segment_id, layer, spec, role, table: ParameterTable) -> GestureSlot:
    T, assoc, release = table.phases(spec.gesture_class, role)
    stem = f"{index}.{segment_id}.{layer}"
    return GestureSlot(
        index, segment_id, layer, spec, role, T, assoc, release,
        ArithVar(f"{stem}.start", "start"), ArithVar(f"{stem}.end", "end"),
    )


def gesture_slots(word, table: ParameterTable) -> list[GestureSlot]:
    slots = []
    for i, (seg, role) in enumerate(zip(word.segments, word.roles)):
        slots.append(make_slot(i, seg.id, "primary", seg.primary, role, table))
        if seg.secondary is not None:
            slots.append(make_slot(i, seg.id, "secondary", seg.secondary, role, table))
    return slots


def end_constraint(g) -> Equation:
    """``end = phase_point(start, eigenperiod, release)`` for one gesture.

    ``g`` is a :class:`GestureSlot` or a :class:`Timing` whose start/end
    may be arithmetic variables.
    """
    where = f"{g.index}.{g.layer}" if isinstance(g, GestureSlot) else "gesture"
    check_phases(g.eigenperiod, g.assoc, g.release, where=where)
    return Equation.of(g.end, phase_point(g.start, g.eigenperiod, g.release), f"endtime@{where}")


def associate(word, table: ParameterTable, slots: Sequence[GestureSlot] | None = None) -> list[Equation]:
    """Association equations fixing the absolute timing of every gesture.

    Emitted in order: the utterance anchor, vocalic concatenation, onset
    anchoring to the following vowel's start, coda anchoring to the
    preceding vowel's end, cluster chaining, and secondary-to-host
    anchoring.  In a cluster only the first consonant is anchored to the
    vowel; each later one has its association point at the release point
    of its predecessor.  Ambisyllabic consonants count as onset.
    """
    slots = list(slots) if slots is not None else gesture_slots(word, table)
    primary = {s.index: s for s in slots if s.layer == "primary"}
    secondary = [s for s in slots if s.layer == "secondary"]
    eqs: list[Equation] = []

    vowels = [primary[syl.nucleus] for syl in word.syllables]
    for v1, v2 in zip(vowels, vowels[1:]):
        eqs.append(Equation.of(v1.end, v2.start, f"concatenate@{v1.index}-{v2.index}"))

    for k, syl in enumerate(word.syllables):
        vowel = primary[syl.nucleus]
        onset = [primary[i] for i in syl.onset]
        if onset:
            eqs.append(Equation.of(onset[0].assoc_point, vowel.start, f"onset@{onset[0].index}"))
            eqs.extend(_chain(onset))
        coda = [primary[i] for i in word.coda_cluster(k)]
        if coda:
            eqs.append(Equation.of(coda[0].assoc_point, vowel.end, f"coda@{coda[0].index}"))
            eqs.extend(_chain(coda))

    for s in secondary:
        host = primary[s.index]
        eqs.append(Equation.of(s.assoc_point, host.assoc_point, f"secondary@{s.index}"))

    if vowels:
        eqs.insert(0, Equation.of(vowels[0].start, _lead(vowels[0], slots, eqs), "anchor"))
    return eqs


def _chain(cluster: Sequence[GestureSlot]) -> list[Equation]:
    return [
        Equation.of(c2.assoc_point, c1.release_point, f"chain@{c1.index}-{c2.index}")
        for c1, c2 in zip(cluster, cluster[1:])
    ]


def _lead(first_vowel: GestureSlot, slots, eqs) -> Fraction:
    """How far the earliest gesture starts before the first vowel."""
    store = AffineStore.of([end_constraint(s) for s in slots] + list(eqs))
    lead = Fraction(0)
    for s in slots:
        offset = store.value_of(first_vowel.start - s.start)
        if offset is not None:
            lead = max(lead, offset)
    return lead


# ------------------------------------------------------------------ scores


@dataclass(frozen=True)
class ScoredGesture:
    spec: GestureSpec
    timing: Timing
    segment: str
    index: int
    role: str
    layer: str


@dataclass(frozen=True)
class GesturalScore:
    utterance: tuple[str, ...]
    gestures: tuple[ScoredGesture, ...]
    span: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    @classmethod
    def build(cls, utterance: Iterable[str], gestures: Iterable[ScoredGesture]) -> "GesturalScore":
        gestures = tuple(sorted(gestures, key=lambda g: (g.index, g.layer != "primary")))
        end = max((g.timing.end for g in gestures), default=Fraction(0))
        return cls(tuple(utterance), gestures, (Fraction(0), end))

    def on(self, tract_var: str) -> list[ScoredGesture]:
        return [g for g in self.gestures if g.spec.tract_var == tract_var]

    def of_kind(self, table: ParameterTable, *kinds: str) -> list[ScoredGesture]:
        return [g for g in self.gestures if table.gesture_class(g.spec.gesture_class).kind in kinds]


def assemble_score(word, slots: Sequence[GestureSlot], solution, emitted=None) -> GesturalScore:
    """Read solved timings off ``solution``.

    ``emitted(slot)`` decides whether a slot surfaces in the score (all by
    default).  Every emitted slot must have determined start and end.
    """
    gestures, unbound = [], []
    for slot in slots:
        if emitted is not None and not emitted(slot):
            continue
        start, end = solution.value_of(slot.start), solution.value_of(slot.end)
        unbound += [v.id for v, x in ((slot.start, start), (slot.end, end)) if x is None]
        if start is None or end is None:
            continue
        gestures.append(
            ScoredGesture(
                slot.spec,
                Timing(start, end, slot.eigenperiod, slot.assoc, slot.release),
                slot.segment,
                slot.index,
                slot.role,
                slot.layer,
            )
        )
    if unbound:
        raise UndeterminedTimingError("undetermined timing: " + ", ".join(unbound), unbound)
    return GesturalScore.build([s.id for s in word.segments] if word else (), gestures)


def score_violations(score: GesturalScore, table: ParameterTable, tolerance=0) -> list[str]:
    """Structural checks every assembled score must pass; empty when fine."""
    problems = []
    for g in score.gestures:
        r = abs(g.timing.residual)
        if r > tolerance:
            problems.append(f"endtime residual {float(r):.3g} ms for {g.segment}@{g.index} {g.layer}")
    vocalic = sorted(score.of_kind(table, "vocalic"), key=lambda g: g.timing.start)
    for a, b in zip(vocalic, vocalic[1:]):
        if a.timing.end != b.timing.start:
            problems.append(f"vocalic gap between {a.segment}@{a.index} and {b.segment}@{b.index}")
    for g in score.of_kind(table, "consonantal"):
        if g.layer != "primary":
            continue
        if not any(v.timing.start < g.timing.end and g.timing.start < v.timing.end for v in vocalic):
            problems.append(f"consonant {g.segment}@{g.index} overlaps no vocalic gesture")
    return problems
