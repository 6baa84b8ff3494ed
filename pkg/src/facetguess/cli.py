"""Command-line front end: ``facetguess <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import decode as dec
from .codes import check_expansion, hamming_code, random_regular_code, save_alist, tanner_code
from .harness import (
    ConfigError,
    DecoderSpec,
    ExperimentConfig,
    analyze_code,
    resolve_code,
    run_experiment,
)
from .polytope import build_polytope


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_gen_code(args) -> int:
    if args.kind == "tanner":
        code = tanner_code()
    elif args.kind == "hamming":
        code = hamming_code()
    else:
        if None in (args.n, args.dv, args.dc):
            raise ConfigError("gen-code", "random codes need --n, --dv and --dc")
        code = random_regular_code(args.n, args.dv, args.dc, args.seed)
    _emit(save_alist(code), args.out)
    return 0


def cmd_certify(args) -> int:
    code = resolve_code(args.code)
    cert = check_expansion(code, Fraction(args.alpha), Fraction(args.delta), args.budget)
    report = {
        "alpha": str(cert.alpha),
        "delta": str(cert.delta),
        "status": cert.status,
        "max_subset_size": cert.max_subset_size,
        "subsets_checked": cert.subsets_checked,
        "witness": list(cert.witness) if cert.witness else None,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0 if cert.certified else 1


def cmd_analyze(args) -> int:
    code = resolve_code(args.code)
    alpha = Fraction(args.alpha) if args.alpha else None
    delta = Fraction(args.delta) if args.delta else None
    report = analyze_code(code, args.max_vertex_n, alpha, delta, seed=args.seed)
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def _read_gamma(path: str, mode: str):
    text = Path(path).read_text().strip()
    values = json.loads(text) if text.startswith("[") else text.split()
    if mode == "exact":
        return [Fraction(str(v)) for v in values]
    return np.array([float(v) for v in values])


def cmd_decode(args) -> int:
    code = resolve_code(args.code)
    gamma = _read_gamma(args.gamma, args.mode)
    if len(gamma) != code.n:
        raise ConfigError("gamma", f"expected {code.n} values, got {len(gamma)}")
    spec = DecoderSpec.parse(args.decoder)
    P = build_polytope(code) if spec.name != "sp" else None
    if spec.name == "lp":
        out = dec.lp_decode(code, gamma, args.mode, P)
    elif spec.name == "efg":
        out = dec.facet_guess_decode(code, gamma, dec.GuessBudget("exhaustive"), args.mode, P)
    elif spec.name == "rfg":
        out = dec.facet_guess_decode(code, gamma, dec.GuessBudget("random", int(spec.param), args.seed), args.mode, P)
    elif spec.name == "rbg":
        out = dec.bit_guess_decode(code, gamma, dec.GuessBudget(seed=args.seed, c=spec.param), args.mode, P)
    else:
        out = dec.sum_product_decode(code, gamma, int(spec.param))
    report = {
        "decoder": spec.label(),
        "status": out.status,
        "word": list(out.word) if out.word is not None else None,
        "pseudocodeword": out.pseudocodeword.to_json() if out.pseudocodeword is not None else None,
        "candidates_examined": out.candidates_examined,
        "lp_solves": out.lp_solves,
        "infeasible_solves": out.infeasible_solves,
        "iterations": out.iterations,
    }
    _emit(json.dumps(report, indent=2) + "\n", args.out)
    return 0


def cmd_simulate(args) -> int:
    data = json.loads(Path(args.config).read_text())
    for name in ("seed", "trials", "mode", "workers", "out"):
        value = getattr(args, name)
        if value is not None:
            data[name] = value
    if args.decoders is not None:
        data["decoders"] = args.decoders
    if args.timing:
        data["timing"] = True
    config = ExperimentConfig.from_dict(data)
    result = run_experiment(config)
    if not config.out:
        sys.stdout.write(result.to_csv())
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="facetguess", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-code", help="write a generated code as alist")
    g.add_argument("kind", choices=["random", "tanner", "hamming"])
    g.add_argument("--n", type=int)
    g.add_argument("--dv", type=int)
    g.add_argument("--dc", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen_code)

    c = sub.add_parser("certify", help="exhaustive expansion check")
    c.add_argument("code", help="alist path, 'hamming', 'tanner' or random:n:dv:dc:seed")
    c.add_argument("--alpha", required=True)
    c.add_argument("--delta", required=True)
    c.add_argument("--budget", type=int, default=10**7)
    c.add_argument("--out")
    c.set_defaults(func=cmd_certify)

    a = sub.add_parser("analyze", help="structural report of a code's polytope")
    a.add_argument("code")
    a.add_argument("--alpha")
    a.add_argument("--delta")
    a.add_argument("--max-vertex-n", type=int, default=12)
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out")
    a.set_defaults(func=cmd_analyze)

    d = sub.add_parser("decode", help="decode one objective vector")
    d.add_argument("code")
    d.add_argument("--gamma", required=True, help="file with n numbers (whitespace or JSON list)")
    d.add_argument("--decoder", default="lp")
    d.add_argument("--mode", choices=["exact", "float"], default="exact")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("--out")
    d.set_defaults(func=cmd_decode)

    s = sub.add_parser("simulate", help="run a Monte Carlo experiment from a JSON config")
    s.add_argument("config")
    s.add_argument("--seed", type=int)
    s.add_argument("--trials", type=int)
    s.add_argument("--mode", choices=["exact", "float"])
    s.add_argument("--decoders")
    s.add_argument("--workers", type=int)
    s.add_argument("--timing", action="store_true", help="fill the mean_ms column")
    s.add_argument("--out")
    s.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
