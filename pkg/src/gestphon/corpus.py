"""Regression corpus of voicing alternations."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from gestphon.config import CORPUS_FILE, Config, builtin, default_config, read_toml
from gestphon.errors import ConfigError, GestphonError
from gestphon.pipeline import analyze
from gestphon.timing import score_violations


@dataclass(frozen=True)
class CorpusWord:
    orthography: str
    segments: tuple[str, ...]
    expect: dict[int, str]
    transcription: str = ""


@dataclass
class CorpusResult:
    word: CorpusWord
    voicing: dict[int, str] = field(default_factory=dict)
    problems: list[str] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.problems


def load_corpus(path=None) -> list[CorpusWord]:
    data = read_toml(path or builtin(CORPUS_FILE))
    words = []
    for entry in data.get("word", []):
        try:
            words.append(CorpusWord(
                entry["orthography"],
                tuple(entry["segments"]),
                {int(k): v for k, v in entry.get("expect", {}).items()},
                entry.get("transcription", ""),
            ))
        except (KeyError, ValueError) as exc:
            raise ConfigError(f"corpus entry {entry!r}: {exc}") from None
    return words


def check_word(word: CorpusWord, config: Config | None = None) -> CorpusResult:
    config = config or default_config()
    result = CorpusResult(word)
    t0 = time.perf_counter()
    try:
        analysis = analyze(word.segments, config)
    except GestphonError as exc:
        result.problems.append(f"{type(exc).__name__}: {exc}")
    else:
        result.voicing = analysis.voicing()
        for i, expected in sorted(word.expect.items()):
            got = result.voicing.get(i, "not an obstruent")
            if got != expected:
                result.problems.append(f"{word.segments[i]}@{i}: expected {expected}, got {got}")
        result.problems += score_violations(analysis.score, config.table)
    result.seconds = time.perf_counter() - t0
    return result


def check_corpus(words, config: Config | None = None) -> list[CorpusResult]:
    return [check_word(w, config) for w in words]


def format_table(results: list[CorpusResult]) -> str:
    rows = [("word", "segments", "voicing", "result")]
    for r in results:
        shown = " ".join(
            f"{r.word.segments[i]}:{v}" for i, v in sorted(r.voicing.items()) if i in r.word.expect
        )
        rows.append((r.word.orthography, " ".join(r.word.segments), shown, "PASS" if r.passed else "FAIL"))
    widths = [max(len(row[c]) for row in rows) for c in range(4)]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    for r in results:
        lines += [f"  {r.word.orthography}: {p}" for p in r.problems]
    passed = sum(r.passed for r in results)
    lines.append(f"{passed}/{len(results)} passed")
    return "\n".join(lines) + "\n"
