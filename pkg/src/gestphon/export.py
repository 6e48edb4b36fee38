"""Score JSON, trajectory CSV, SVG plot and the explain listing."""

from __future__ import annotations

import io
import json
from fractions import Fraction
from pathlib import Path

import numpy as np

from gestphon.errors import ConfigError
from gestphon.timing import GesturalScore, GestureSpec, ParameterTable, ScoredGesture, Timing

SCORE_KEYS = (
    "tract_var", "code", "class", "target", "cd_category", "cl_category",
    "start_ms", "end_ms", "eigenperiod_ms", "assoc_deg", "release_deg",
    "segment", "role",
)


def _num(x) -> float:
    return float(x)


def score_to_dict(score: GesturalScore, table: ParameterTable) -> dict:
    gestures = []
    for g in score.gestures:
        t = g.timing
        gestures.append({
            "tract_var": g.spec.tract_var,
            "code": table.tract_variable(g.spec.tract_var).code,
            "class": g.spec.gesture_class,
            "target": g.spec.target,
            "cd_category": g.spec.cd,
            "cl_category": g.spec.cl,
            "start_ms": _num(t.start),
            "end_ms": _num(t.end),
            "eigenperiod_ms": _num(t.eigenperiod),
            "assoc_deg": _num(t.assoc),
            "release_deg": _num(t.release),
            "segment": g.segment,
            "role": g.role,
            "segment_index": g.index,
            "layer": g.layer,
            "clip": g.spec.clip,
        })
    return {
        "utterance": list(score.utterance),
        "span_ms": [_num(score.span[0]), _num(score.span[1])],
        "gestures": gestures,
    }


def dumps_score(score: GesturalScore, table: ParameterTable) -> str:
    return json.dumps(score_to_dict(score, table), ensure_ascii=False, indent=2) + "\n"


def score_from_dict(data: dict) -> GesturalScore:
    try:
        gestures = []
        for i, g in enumerate(data["gestures"]):
            missing = [k for k in SCORE_KEYS if k not in g]
            if missing:
                raise ConfigError(f"score gesture {i} lacks {missing}")
            spec = GestureSpec(
                g["tract_var"], g["class"], g["cd_category"], g["cl_category"],
                float(g["target"]), g.get("clip", "default"),
            )
            timing = Timing(
                float(g["start_ms"]), float(g["end_ms"]), float(g["eigenperiod_ms"]),
                float(g["assoc_deg"]), float(g["release_deg"]),
            )
            gestures.append(ScoredGesture(
                spec, timing, g["segment"], int(g.get("segment_index", i)), g["role"], g.get("layer", "primary")
            ))
        span = tuple(float(x) for x in data["span_ms"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed score: {exc}") from None
    return GesturalScore(tuple(data.get("utterance", ())), tuple(gestures), span)


def load_score(path) -> GesturalScore:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read score {path}: {exc}") from None
    return score_from_dict(data)


def _fixed(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def trajectory_csv(traj) -> str:
    names = list(traj.values)
    out = io.StringIO()
    out.write(",".join(["t_ms", *names, "voiced"]) + "\n")
    columns = [traj.values[n] for n in names]
    for k, t in enumerate(traj.times):
        row = [_fixed(t)] + [_fixed(col[k]) for col in columns] + ["1" if traj.voiced[k] else "0"]
        out.write(",".join(row) + "\n")
    return out.getvalue()


def read_trajectory_csv(text: str) -> dict[str, np.ndarray]:
    lines = text.strip().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(x) for x in line.split(",")] for line in lines[1:]])
    return {name: data[:, j] for j, name in enumerate(header)}


def plot_svg(score: GesturalScore, traj, table: ParameterTable) -> str:
    """Stacked panels, one per tract variable, activation intervals shaded."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    names = list(traj.values)
    with matplotlib.rc_context({"svg.hashsalt": "gestphon", "svg.fonttype": "none"}):
        fig, axes = plt.subplots(len(names), 1, sharex=True, figsize=(8, 1.1 * len(names) + 1))
        for ax, name in zip(np.atleast_1d(axes), names):
            for g in score.on(name):
                ax.axvspan(float(g.timing.start), float(g.timing.end), color="0.85", lw=0)
                ax.text(float(g.timing.start), 1.0, g.segment, transform=ax.get_xaxis_transform(),
                        fontsize=7, va="top")
            ax.plot(traj.times, traj.values[name], color="k", lw=1)
            tv = table.tract_variables.get(name)
            if tv is not None:
                ax.set_ylim(tv.minimum, tv.maximum)
            ax.set_ylabel(name, rotation=0, ha="right", va="center")
            ax.tick_params(labelsize=7)
        np.atleast_1d(axes)[-1].set_xlabel("time (ms)")
        title = " ".join(score.utterance)
        fig.suptitle(title, fontsize=9)
        buf = io.StringIO()
        fig.savefig(buf, format="svg", metadata={"Date": None})
        plt.close(fig)
    return buf.getvalue()


def explain(analysis) -> str:
    """Indented attribute-value listing of the solved word."""
    sol, word = analysis.solution, analysis.word
    timings = {(g.index, g.layer): g.timing for g in analysis.score.gestures}
    lines = [f"word: {' '.join(word.ids)}    syllables: {word}"]
    for i, seg in enumerate(word.segments):
        here = ("phon", str(i))
        lines.append(f"{i}: {seg.id}  [{sol.type_name(here)}]")
        lines.append(f"    seg: {sol.type_name(here + ('seg',))}")
        for layer in ("primary", "secondary"):
            base = here + ("seg", layer)
            state = sol.type_name(base) if layer == "secondary" else None
            spec = seg.primary if layer == "primary" else seg.secondary
            head = f"      {layer}:" + (f" {state}" if state else "")
            lines.append(head)
            if spec is None or (i, layer) not in timings:
                continue
            t = timings[(i, layer)]
            lines.append(f"        art: {spec.tract_var}  val: {spec.target:g}  clip: {spec.clip}")
            lines.append(f"        cd: {sol.type_name(base + ('cd',))}  cl: {sol.type_name(base + ('cl',))}")
            lines.append(
                "        time: start {}  end {}  eigenperiod {}  assoc {}  release {}".format(
                    *(_ms(x) for x in (t.start, t.end, t.eigenperiod, t.assoc, t.release))
                )
            )
    return "\n".join(lines) + "\n"


def _ms(x) -> str:
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{float(x):.3f}"
    return f"{float(x):g}"
