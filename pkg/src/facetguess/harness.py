"""Monte Carlo experiments and structural reports.

A run sends the all-zeros word through a channel at every sweep point,
hands the same objective to every configured decoder, and aggregates
word and bit errors.  Every trial owns its random streams, and results
are reduced in (point, trial) order, so the output does not depend on
how trials are spread over workers.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import multiprocessing as mp
import os
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from . import decode as dec
from .channel import AWGN, BSC, ChannelModel, transmit_all_zeros, trial_rng
from .codes import (
    BudgetExceeded,
    ParityCheckCode,
    check_expansion,
    enumerate_codewords,
    gf2_rank,
    hamming_code,
    load_alist,
    random_codeword,
    random_regular_code,
    save_alist,
    tanner_code,
)
from .polytope import (
    active_set,
    active_set_upper_bound,
    build_polytope,
    enumerate_vertices,
    facet_count_formula,
    fractional_profile,
    is_integral,
    lonely_fractional_checks,
)

CSV_COLUMNS = [
    "sweep_value",
    "decoder",
    "trials",
    "word_errors",
    "wer",
    "wer_ci95",
    "ber",
    "mean_lp_solves",
    "mean_ms",
]

# ML cross-checks of certified outcomes run only below this code dimension
ML_CHECK_MAX_DIMENSION = 16


class ConfigError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


# ------------------------------------------------------------------ config


@dataclass(frozen=True)
class DecoderSpec:
    name: str
    param: float | None = None

    @classmethod
    def parse(cls, text: str) -> "DecoderSpec":
        name, _, arg = text.strip().partition(":")
        name = name.lower()
        defaults = {"lp": None, "efg": None, "rfg": 20, "rbg": 1.0, "sp": 100}
        if name not in defaults:
            raise ConfigError("decoders", f"unknown decoder {name!r}")
        if arg and defaults[name] is None:
            raise ConfigError("decoders", f"{name} takes no parameter")
        if not arg:
            return cls(name, defaults[name])
        try:
            value = float(arg) if name == "rbg" else int(arg)
        except ValueError:
            raise ConfigError("decoders", f"bad parameter in {text!r}") from None
        if value <= 0:
            raise ConfigError("decoders", f"parameter must be positive in {text!r}")
        return cls(name, value)

    def label(self) -> str:
        if self.param is None:
            return self.name
        p = self.param
        return f"{self.name}:{int(p) if float(p).is_integer() else p}"


def parse_decoders(text: str | Sequence[str]) -> list[DecoderSpec]:
    items = text.split(",") if isinstance(text, str) else list(text)
    specs = [DecoderSpec.parse(t) for t in items if t.strip()]
    if not specs:
        raise ConfigError("decoders", "at least one decoder is required")
    return specs


@dataclass(frozen=True)
class ExperimentConfig:
    code: dict | str
    channel: str
    sweep: tuple[float, ...]
    decoders: tuple[str, ...]
    trials: int
    seed: int = 0
    mode: str = "float"
    workers: int = 1
    out: str | None = None
    timing: bool = False

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigError("trials", "must be at least 1")
        if not self.sweep:
            raise ConfigError("sweep", "must list at least one point")
        if self.channel not in (BSC, AWGN):
            raise ConfigError("channel", f"expected 'bsc' or 'awgn', got {self.channel!r}")
        if self.mode not in ("exact", "float"):
            raise ConfigError("mode", f"expected 'exact' or 'float', got {self.mode!r}")
        if self.workers < 1:
            raise ConfigError("workers", "must be at least 1")
        parse_decoders(self.decoders)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ConfigError(sorted(extra)[0], "unknown field")
        for name in ("code", "channel", "sweep", "decoders", "trials"):
            if name not in data:
                raise ConfigError(name, "missing")
        data = dict(data)
        data["sweep"] = tuple(float(v) for v in data["sweep"])
        dcs = data["decoders"]
        data["decoders"] = tuple(dcs.split(",") if isinstance(dcs, str) else dcs)
        return cls(**data)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["sweep"] = list(self.sweep)
        d["decoders"] = list(self.decoders)
        return d


def resolve_code(spec: dict | str) -> ParityCheckCode:
    """Build a code from a config entry.

    Strings are either an alist path or a generator shorthand:
    ``hamming``, ``tanner`` or ``random:n:dv:dc:seed``.
    """
    if isinstance(spec, str):
        if spec == "hamming":
            return hamming_code()
        if spec == "tanner":
            return tanner_code()
        if spec.startswith("random:"):
            try:
                n, dv, dc, seed = (int(v) for v in spec.split(":")[1:])
            except ValueError:
                raise ConfigError("code", f"expected random:n:dv:dc:seed, got {spec!r}") from None
            return random_regular_code(n, dv, dc, seed)
        return load_alist(Path(spec).read_text())
    if "alist" in spec:
        return load_alist(Path(spec["alist"]).read_text())
    gen = spec.get("generator")
    if gen == "hamming":
        return hamming_code()
    if gen == "tanner":
        return tanner_code()
    if gen == "random":
        try:
            return random_regular_code(spec["n"], spec["dv"], spec["dc"], spec.get("seed", 0))
        except KeyError as e:
            raise ConfigError("code", f"random generator needs {e.args[0]!r}") from None
    raise ConfigError("code", f"cannot interpret {spec!r}")


def code_hash(code: ParityCheckCode) -> str:
    """Git blob hash of the code's canonical alist text."""
    data = save_alist(code).encode()
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


# ------------------------------------------------------------------ trials


@dataclass
class _Context:
    config: ExperimentConfig
    code: ParityCheckCode
    specs: list[DecoderSpec]
    polytope: object = None
    graph: object = None
    ml_words: list | None = None


_ctx: _Context | None = None


def _make_context(config: ExperimentConfig, code: ParityCheckCode) -> _Context:
    specs = parse_decoders(config.decoders)
    ctx = _Context(config, code, specs)
    if any(s.name != "sp" for s in specs):
        ctx.polytope = build_polytope(code)
    if any(s.name == "sp" for s in specs):
        ctx.graph = dec._Graph(code)
    if config.mode == "exact" and code.n - gf2_rank(code) <= ML_CHECK_MAX_DIMENSION:
        ctx.ml_words = enumerate_codewords(code, ML_CHECK_MAX_DIMENSION)
    return ctx


def _init_worker(config, code):
    global _ctx
    _ctx = _make_context(config, code)


def _point_channel(config: ExperimentConfig, value: float, rate) -> ChannelModel:
    if config.channel == BSC:
        return ChannelModel.bsc(value)
    return ChannelModel.awgn_ebn0(value, float(rate))


def _stream_seed(config: ExperimentConfig, *path: int) -> int:
    return int(trial_rng(config.seed, *path).integers(2**63))


def _run_trial(ctx: _Context, point: int, trial: int):
    """Per decoder: (word error, bit errors, LP solves, ms, ml mismatch)."""
    cfg, code = ctx.config, ctx.code
    channel = _point_channel(cfg, cfg.sweep[point], code.design_rate)
    rec = transmit_all_zeros(channel, code.n, _stream_seed(cfg, point), trial)
    gamma = rec.gamma
    if cfg.mode == "exact":
        gamma = [Fraction(float(g)) for g in gamma]
    first = None
    rows = []
    for k, spec in enumerate(ctx.specs):
        t0 = time.perf_counter()
        if spec.name == "sp":
            llr_gamma = np.asarray(rec.gamma) * channel.llr_scale()
            out = dec.sum_product_decode(code, llr_gamma, int(spec.param), ctx.graph)
        else:
            if first is None:
                first = dec.lp_decode(code, gamma, cfg.mode, ctx.polytope)
            seed = _stream_seed(cfg, point, trial, k + 1)
            if spec.name == "lp":
                out = first
            elif spec.name == "efg":
                out = dec.facet_guess_decode(
                    code, gamma, dec.GuessBudget("exhaustive", seed=seed), cfg.mode, ctx.polytope, first
                )
            elif spec.name == "rfg":
                out = dec.facet_guess_decode(
                    code, gamma, dec.GuessBudget("random", int(spec.param), seed), cfg.mode, ctx.polytope, first
                )
            else:
                out = dec.bit_guess_decode(
                    code, gamma, dec.GuessBudget("random", seed=seed, c=spec.param), cfg.mode, ctx.polytope, first
                )
        ms = (time.perf_counter() - t0) * 1e3
        if out.word is not None:
            bit_errors = sum(out.word)
        else:
            bit_errors = sum(1 for v in out.pseudocodeword.coords if v > 0)
        mismatch = 0
        if out.status == dec.ML_CERTIFIED and ctx.ml_words is not None:
            mismatch = int(out.word != dec._best_word(gamma, ctx.ml_words))
        rows.append((int(bit_errors > 0), bit_errors, out.lp_solves, ms, mismatch))
    return rows


def _run_chunk(task):
    point, start, stop = task
    return point, start, [_run_trial(_ctx, point, t) for t in range(start, stop)]


# ------------------------------------------------------------- aggregation


def wilson_halfwidth(errors: int, trials: int, z: float = 1.959963984540054) -> float:
    """Half-width of the 95% Wilson score interval."""
    if trials == 0:
        return 0.0
    p = errors / trials
    z2 = z * z
    return z * math.sqrt(p * (1 - p) / trials + z2 / (4 * trials * trials)) / (1 + z2 / trials)


def paired_p_value(first_only: int, second_only: int) -> float:
    """One-sided exact McNemar p-value for "first errs less than second".

    Only discordant trials count; under the null each one is equally
    likely to go either way.
    """
    from scipy.stats import binomtest

    total = first_only + second_only
    if total == 0:
        return 1.0
    return float(binomtest(first_only, total, 0.5, alternative="less").pvalue)


@dataclass
class AggregateStats:
    sweep_value: float
    decoder: str
    trials: int = 0
    word_errors: int = 0
    bit_errors: int = 0
    lp_solves: int = 0
    total_ms: float = 0.0
    ml_mismatches: int = 0
    n: int = 1

    @property
    def wer(self) -> float:
        return self.word_errors / self.trials

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.trials * self.n)

    @property
    def wer_ci95(self) -> float:
        return wilson_halfwidth(self.word_errors, self.trials)

    @property
    def mean_lp_solves(self) -> float:
        return self.lp_solves / self.trials

    def csv_row(self, timing: bool) -> list[str]:
        return [
            _fmt(self.sweep_value),
            self.decoder,
            str(self.trials),
            str(self.word_errors),
            _fmt(self.wer),
            _fmt(self.wer_ci95),
            _fmt(self.ber),
            _fmt(self.mean_lp_solves),
            _fmt(self.total_ms / self.trials) if timing else "",
        ]


def _fmt(x: float) -> str:
    return format(x, ".10g")


@dataclass
class ExperimentResult:
    config: ExperimentConfig
    code_hash: str
    stats: list[AggregateStats]
    dominance_violations: int = 0
    extra: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for s in self.stats:
            w.writerow(s.csv_row(self.config.timing))
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {
            "config": self.config.to_dict(),
            "code_hash": self.code_hash,
            "dominance_violations": self.dominance_violations,
            **self.extra,
            "results": [
                {
                    "sweep_value": s.sweep_value,
                    "decoder": s.decoder,
                    "trials": s.trials,
                    "word_errors": s.word_errors,
                    "bit_errors": s.bit_errors,
                    "wer": s.wer,
                    "wer_ci95": s.wer_ci95,
                    "ber": s.ber,
                    "mean_lp_solves": s.mean_lp_solves,
                    "ml_mismatches": s.ml_mismatches,
                    **({"mean_ms": s.total_ms / s.trials} if self.config.timing else {}),
                }
                for s in self.stats
            ],
        }
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    def get(self, sweep_value: float, decoder: str) -> AggregateStats:
        return next(s for s in self.stats if s.sweep_value == sweep_value and s.decoder == decoder)


def run_experiment(config: ExperimentConfig, code: ParityCheckCode | None = None) -> ExperimentResult:
    code = code if code is not None else resolve_code(config.code)
    specs = parse_decoders(config.decoders)
    labels = [s.label() for s in specs]
    npts, T = len(config.sweep), config.trials
    chunk = max(1, min(256, math.ceil(T / (4 * config.workers))))
    tasks = [(p, s, min(s + chunk, T)) for p in range(npts) for s in range(0, T, chunk)]
    if config.workers == 1:
        _init_worker(config, code)
        parts = [_run_chunk(t) for t in tasks]
    else:
        ctx = mp.get_context("fork") if "fork" in mp.get_all_start_methods() else mp.get_context()
        with ctx.Pool(config.workers, initializer=_init_worker, initargs=(config, code)) as pool:
            parts = pool.map(_run_chunk, tasks, chunksize=1)
    parts.sort(key=lambda x: (x[0], x[1]))

    stats = [
        AggregateStats(config.sweep[p], lab, n=code.n) for p in range(npts) for lab in labels
    ]
    guessers = [k for k, s in enumerate(specs) if s.name in ("efg", "rfg", "rbg")]
    lp_idx = next((k for k, s in enumerate(specs) if s.name == "lp"), None)
    violations = 0
    pairs = [(i, j) for i in range(len(specs)) for j in range(i + 1, len(specs))]
    paired = {(p, i, j): [0, 0] for p in range(npts) for i, j in pairs}
    for point, _, rows in parts:
        for trial_rows in rows:
            for i, j in pairs:
                ei, ej = trial_rows[i][0], trial_rows[j][0]
                if ei != ej:
                    paired[point, i, j][0 if ei else 1] += 1
            for k, (err, bits, solves, ms, mism) in enumerate(trial_rows):
                s = stats[point * len(specs) + k]
                s.trials += 1
                s.word_errors += err
                s.bit_errors += bits
                s.lp_solves += solves
                s.total_ms += ms
                s.ml_mismatches += mism
            if lp_idx is not None:
                violations += sum(trial_rows[k][0] > trial_rows[lp_idx][0] for k in guessers)
    result = ExperimentResult(
        config,
        code_hash(code),
        stats,
        violations,
        {
            "code": {"n": code.n, "m": code.m, "design_rate": str(code.design_rate)},
            "channel": {"kind": BSC, "sweep": "crossover probability"}
            if config.channel == BSC
            else {"kind": AWGN, "sweep": "Eb/N0 in dB", "sigma": "sqrt(1 / (2 R 10^(EbN0/10)))"},
            "paired_errors": [
                {
                    "sweep_value": config.sweep[p],
                    "first": labels[i],
                    "second": labels[j],
                    "first_only": a,
                    "second_only": b,
                    "p_first_better": paired_p_value(a, b),
                }
                for (p, i, j), (a, b) in paired.items()
            ],
        },
    )
    if config.out:
        write_artifacts(result, config.out)
    return result


def write_artifacts(result: ExperimentResult, out_dir: str | os.PathLike) -> tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, json_path = out / "results.csv", out / "results.json"
    csv_path.write_text(result.to_csv())
    json_path.write_text(result.to_json())
    return csv_path, json_path


# ------------------------------------------------------------------ reports


def analyze_code(
    code: ParityCheckCode,
    max_vertex_n: int = 12,
    alpha: Fraction | None = None,
    delta: Fraction | None = None,
    expansion_budget: int = 10**7,
    codeword_samples: int = 8,
    seed: int = 0,
) -> dict:
    """Structural report: counts, codeword active sets, vertex census and
    (optionally) an expansion certificate.  Parts over budget are marked
    ``"skipped"`` with a reason."""
    P = build_polytope(code)
    rank = gf2_rank(code)
    report: dict = {
        "n": code.n,
        "m": code.m,
        "dv": code.dv,
        "dc": code.dc,
        "design_rate": str(code.design_rate),
        "gf2_rank": rank,
        "dimension": code.n - rank,
        "inequalities": len(P),
        "code_hash": code_hash(code),
    }
    if code.dc is not None:
        report["inequalities_formula"] = str(facet_count_formula(code))

    edges = sum(code.check_degrees)
    if code.n - rank <= 10:
        words = enumerate_codewords(code)
    else:
        rng = np.random.default_rng(seed)
        words = [(0,) * code.n] + [random_codeword(code, rng) for _ in range(codeword_samples - 1)]
    sizes = sorted({len(active_set(P, w)) for w in words})
    report["codeword_active_sets"] = {
        "codewords_checked": len(words),
        "sizes": sizes,
        "expected": edges + code.n,
    }

    if code.n > max_vertex_n:
        report["vertices"] = {"skipped": f"n = {code.n} exceeds {max_vertex_n}"}
    else:
        try:
            V = enumerate_vertices(P, max_n=max_vertex_n)
        except BudgetExceeded as e:
            report["vertices"] = {"skipped": str(e)}
        else:
            frac = [v for v in V if not is_integral(v)]
            census: dict = {"total": len(V), "integral": len(V) - len(frac), "fractional": len(frac)}
            if frac:
                profiles = [fractional_profile(code, v) for v in frac]
                acts = [len(active_set(P, v)) for v in frac]
                census["min_fractional_support"] = min(len(p.fractional_bits) for p in profiles)
                census["min_component_size"] = min(len(c) for p in profiles for c in p.components)
                census["max_fractional_active_set"] = max(acts)
                census["lonely_check_violations"] = sum(bool(lonely_fractional_checks(code, v)) for v in frac)
                if code.dc is not None:
                    bounds = [active_set_upper_bound(code, p) for p in profiles]
                    census["active_set_bound_violations"] = sum(a > b for a, b in zip(acts, bounds))
                    census["max_active_set_slack"] = max(b - a for a, b in zip(acts, bounds))
                    census["min_active_set_slack"] = min(b - a for a, b in zip(acts, bounds))
            report["vertices"] = census

    if alpha is not None and delta is not None:
        if code.dv is None:
            report["expansion"] = {"skipped": "code is not bit-regular"}
        else:
            cert = check_expansion(code, Fraction(alpha), Fraction(delta), expansion_budget)
            report["expansion"] = {
                "alpha": str(cert.alpha),
                "delta": str(cert.delta),
                "status": cert.status,
                "subsets_checked": cert.subsets_checked,
                "witness": list(cert.witness) if cert.witness else None,
            }
    return report
