"""Command line front end.

    gestphon synthesize ʔ ɛ b t postphonatory_opening --out build/
    gestphon check-corpus
    gestphon render build/score.json --out build/
"""

from __future__ import annotations

import argparse
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from gestphon.config import load_config
from gestphon.errors import ConfigError, UndeterminedTimingError, UnsatisfiableError

log = logging.getLogger("gestphon")

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_UNSATISFIABLE = 2
EXIT_UNDETERMINED = 3
EXIT_CONFIG = 4


@dataclass(frozen=True)
class RunConfig:
    config_dir: Path | None = None
    sample_rate: float = 1000.0
    out_dir: Path = Path(".")
    emit_score: bool = True
    emit_trajectory: bool = True
    emit_plot: bool = True
    explain: bool = False

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ConfigError(f"sample rate must be positive, got {self.sample_rate}")


def parse_word(parts) -> list[str]:
    return [s for part in parts for s in re.split(r"[\s,]+", part) if s]


def run(word, cfg: RunConfig) -> int:
    """Synthesize one word and write the requested artifacts."""
    from gestphon.dynamics import render
    from gestphon.export import dumps_score, explain, plot_svg, trajectory_csv
    from gestphon.pipeline import analyze

    try:
        config = load_config(cfg.config_dir)
        analysis = analyze(word, config)
        traj = render(analysis.score, cfg.sample_rate, config.table)
    except UnsatisfiableError as exc:
        print(f"error: {exc}", file=sys.stderr)
        if exc.labels:
            print("failing constraints: " + ", ".join(exc.labels), file=sys.stderr)
        return EXIT_UNSATISFIABLE
    except UndeterminedTimingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    out = Path(cfg.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    if cfg.emit_score:
        written.append(_write(out / "score.json", dumps_score(analysis.score, config.table)))
    if cfg.emit_trajectory:
        written.append(_write(out / "trajectory.csv", trajectory_csv(traj)))
    if cfg.emit_plot:
        written.append(_write(out / "plot.svg", plot_svg(analysis.score, traj, config.table)))
    if cfg.explain:
        written.append(_write(out / "explain.txt", explain(analysis)))
    voicing = ", ".join(f"{analysis.word.segments[i].id}@{i}:{v}" for i, v in analysis.voicing().items())
    print(f"{analysis.word}  {voicing}".rstrip())
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _write(path: Path, text: str) -> Path:
    path.write_text(text, encoding="utf-8")
    return path


def cmd_synthesize(args) -> int:
    chosen = any((args.emit_score, args.emit_trajectory, args.emit_plot))
    try:
        cfg = RunConfig(
            config_dir=args.config,
            sample_rate=args.rate,
            out_dir=args.out,
            emit_score=args.emit_score or not chosen,
            emit_trajectory=args.emit_trajectory or not chosen,
            emit_plot=args.emit_plot or not chosen,
            explain=args.explain,
        )
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return run(parse_word(args.word), cfg)


def cmd_check_corpus(args) -> int:
    from gestphon.corpus import check_corpus, format_table, load_corpus

    try:
        config = load_config(args.config)
        words = load_corpus(args.corpus)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    results = check_corpus(words, config)
    sys.stdout.write(format_table(results))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAILED_CHECK


def cmd_render(args) -> int:
    from gestphon.dynamics import render
    from gestphon.export import load_score, plot_svg, trajectory_csv

    try:
        config = load_config(args.config)
        score = load_score(args.score)
        traj = render(score, args.rate, config.table)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    print(f"wrote {_write(out / 'trajectory.csv', trajectory_csv(traj))}")
    if args.emit_plot:
        print(f"wrote {_write(out / 'plot.svg', plot_svg(score, traj, config.table))}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gestphon", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synthesize", help="solve a word and write score, trajectory and plot")
    p.add_argument("word", nargs="+", help="segment ids, separated by spaces or commas")
    p.add_argument("--config", type=Path, help="directory with lattice/inventory/parameters .toml")
    p.add_argument("--rate", type=float, default=1000.0, help="sample rate in Hz (default 1000)")
    p.add_argument("--out", type=Path, default=Path("."), help="output directory")
    p.add_argument("--emit-score", action="store_true", help="write score.json")
    p.add_argument("--emit-trajectory", action="store_true", help="write trajectory.csv")
    p.add_argument("--emit-plot", action="store_true", help="write plot.svg")
    p.add_argument("--explain", action="store_true", help="also write the solved structure to explain.txt")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("check-corpus", help="run the voicing regression corpus")
    p.add_argument("corpus", nargs="?", help="corpus .toml (default: built-in)")
    p.add_argument("--config", type=Path)
    p.set_defaults(func=cmd_check_corpus)

    p = sub.add_parser("render", help="re-render a score.json")
    p.add_argument("score", type=Path)
    p.add_argument("--config", type=Path)
    p.add_argument("--rate", type=float, default=1000.0)
    p.add_argument("--out", type=Path, default=Path("."))
    p.add_argument("--emit-plot", action="store_true")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
