"""Word in, solved analysis and gestural score out."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gestphon.config import Config, default_config
from gestphon.errors import UndeterminedTimingError
from gestphon.phonology import PhonWord, WordProblem, build_word, secondary_path, voicing
from gestphon.solver import Solution, solve
from gestphon.terms import FeatureTerm
from gestphon.timing import GesturalScore, GestureSlot, assemble_score


@dataclass(frozen=True)
class Analysis:
    problem: WordProblem
    solution: Solution
    score: GesturalScore

    @property
    def word(self) -> PhonWord:
        return self.problem.word

    def voicing(self) -> dict[int, str]:
        return voicing(self.solution, self.word)


def emits(solution: Solution, slot: GestureSlot) -> bool:
    """Primary gestures always surface; secondary ones only when active."""
    if slot.layer == "primary":
        return True
    path = secondary_path(slot.index)
    if solution.has_type(path, "active"):
        return True
    if solution.has_type(path, "inactive"):
        return False
    raise UndeterminedTimingError(
        f"secondary gesture state of {slot.segment}@{slot.index} undetermined: "
        f"{solution.type_name(path)}"
    )


def assemble(problem: WordProblem, solution: Solution) -> GesturalScore:
    return assemble_score(problem.word, problem.slots, solution, lambda s: emits(solution, s))


def analyze(word: Sequence[str], config: Config | None = None, term: FeatureTerm | None = None) -> Analysis:
    """Build, solve and assemble one word.

    ``term`` replaces the built word term (e.g. a reordering of it); the
    word structure and gesture slots still come from ``word``.
    """
    config = config or default_config()
    problem = build_word(word, config.inventory, config.table)
    if term is not None:
        problem = WordProblem(problem.word, problem.slots, term)
    solution = solve(problem.term, config.lattice)
    return Analysis(problem, solution, assemble(problem, solution))
