"""Command-line experiment runner.

Subcommands and their output columns (CSV and JSON carry the same fields):

``lemma1``
    n, tail_count, scale (2^n / P(n, alpha)), ratio, pass
``decider``
    trial, seed, n, planted, outcome, recursion_count, oracle_calls, budget (K n P(n, alpha)),
    fallback_used, pass
``approx``
    instance, kind, n, k, output_weight, distance, bound, pass
``gadgets``
    trial, kind, n, n_prime, flips, bound, decoded, pass
``baselines``
    section, n, c, trials, observed, expected, tolerance, pass

Every output starts with the full run configuration: CSV gets a leading
``# config: {...}`` line and a trailing ``# summary: {...}`` line, JSON an
object with ``config``, ``columns``, ``rows`` and ``summary``. The exit
status is 0 exactly when every row passed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from math import comb
from typing import Callable, Dict, Iterator, List, Optional, Sequence

from hamwit import __version__
from hamwit.approximators import (
    adversary_game, deterministic_lowweight_baseline, halfsplit_decision_approx, lowweight_query_strategy,
    nae3sat_allfalse, nt_clique_approx, nt_independent_set_approx, nt_vertex_cover_approx, randomized_baseline,
)
from hamwit.ball import Universe
from hamwit.core import ApproxParams, BitString, LogBase, h_bound, lemma1_ratio, p_bound, tail_count
from hamwit.decider import DeciderConfig, PlantedOracle, check_universe
from hamwit.gadgets import (
    EdgePairReduction, VcCase, build_hc_gadget, build_vc_gadget, corrupt, decode_hc_gadget, decode_sat_majority,
    decode_vc_gadget, guarantee_flips, pad_sat,
)
from hamwit.instances import VertexCoverVerifier, bits_to_subset, subset_to_bits
from hamwit.testkit import (
    derive_seed, feasible_values, hamiltonian_cycles, hc_toy_corpus, max_cliques_exact, max_independent_sets_exact,
    min_vertex_covers_exact, nae_assignments, planted_3cnf, random_graph, random_nae3sat, vc_toy_corpus,
)
from hamwit.verifier import SetVerifier

Row = Dict[str, object]

COLUMNS = {
    "lemma1": ["n", "tail_count", "scale", "ratio", "pass"],
    "decider": ["trial", "seed", "n", "planted", "outcome", "recursion_count", "oracle_calls", "budget",
                "fallback_used", "pass"],
    "approx": ["instance", "kind", "n", "k", "output_weight", "distance", "bound", "pass"],
    "gadgets": ["trial", "kind", "n", "n_prime", "flips", "bound", "decoded", "pass"],
    "baselines": ["section", "n", "c", "trials", "observed", "expected", "tolerance", "pass"],
}

# recursion_count / (n P(n, 0.25)) stayed below 0.9 in calibration, so 2 leaves room
DEFAULT_K = 2.0


def _params(args) -> ApproxParams:
    return ApproxParams(args.alpha, LogBase(args.log_base))


def _n_values(args) -> List[int]:
    return list(range(args.n_min, args.n_max + 1, args.step))


def _trial_n(args, i: int) -> int:
    ns = _n_values(args)
    return ns[i % len(ns)]


def _distance(a: BitString, b: BitString) -> int:
    return bin(a.value ^ b.value).count("1")


# ---------------------------------------------------------------- lemma1

def cmd_lemma1(args) -> Iterator[Row]:
    params = _params(args)
    for n in _n_values(args):
        t = tail_count(n - 1, n / 2 + h_bound(n, params))
        ratio = lemma1_ratio(n, params)
        yield {"n": n, "tail_count": t, "scale": 2.0 ** n / p_bound(n, params), "ratio": ratio,
               "pass": ratio > 0}


def summarize_lemma1(rows: List[Row]) -> Dict[str, object]:
    ratios = [r["ratio"] for r in rows]
    if not ratios or max(ratios) <= 0:
        return {"min_over_max": None}
    return {"min_over_max": min(ratios) / max(ratios)}


# ---------------------------------------------------------------- decider

def cmd_decider(args) -> Iterator[Row]:
    params = _params(args)
    cfg = DeciderConfig(params)
    for i in range(args.trials):
        seed = derive_seed(args.seed, i)
        n = _trial_n(args, i // 2 if args.mode == "both" else i)
        planted = args.mode == "planted" or (args.mode == "both" and i % 2 == 0)
        rng = random.Random(seed)
        if planted:
            w = BitString(rng.getrandbits(n) if n else 0, n)
            v, oracle = SetVerifier(n, [w]), PlantedOracle(w, args.policy, seed)
        else:
            v, oracle = SetVerifier(n, []), PlantedOracle(None, seed=seed)
        outcome, trace = check_universe(n, Universe.full(n), v, oracle, cfg)
        budget = args.k * n * p_bound(n, params) if n >= 2 else float("inf")
        yield {"trial": i, "seed": seed, "n": n, "planted": planted, "outcome": outcome,
               "recursion_count": trace.recursion_count, "oracle_calls": trace.oracle_calls,
               "budget": budget, "fallback_used": trace.fallback_used,
               "pass": outcome == planted and trace.recursion_count <= budget}


# ---------------------------------------------------------------- approx

def _set_distance(a, b) -> int:
    return len(set(a) ^ set(b))


def _approx_graph_rows(i: int, kind: str, g) -> Iterator[Row]:
    n = g.vertex_count
    if kind == "halfsplit":
        for k in range(n + 1):
            a = halfsplit_decision_approx(n, k)
            v = VertexCoverVerifier(g, k)
            dists = [_distance(a, BitString(x, n)) for x in range(1 << n) if v.accepts_value(x)]
            d = min(dists) if dists else None
            yield {"instance": i, "kind": kind, "n": n, "k": k, "output_weight": a.weight(),
                   "distance": d, "bound": n / 2, "pass": d is None or d <= n / 2}
        return
    if kind == "nt-vc":
        out, (_, optima) = nt_vertex_cover_approx(g), min_vertex_covers_exact(g)
    elif kind == "nt-is":
        out, (_, optima) = nt_independent_set_approx(g), max_independent_sets_exact(g)
    else:
        out, (_, optima) = nt_clique_approx(g), max_cliques_exact(g)
    d = min(_set_distance(out, c) for c in optima)
    yield {"instance": i, "kind": kind, "n": n, "k": None, "output_weight": len(out),
           "distance": d, "bound": n / 2, "pass": d <= n / 2}


def cmd_approx(args) -> Iterator[Row]:
    for i in range(args.trials):
        seed = derive_seed(args.seed, i)
        n = _trial_n(args, i)
        if args.kind == "nae":
            f, _ = random_nae3sat(max(n, 2), max(1, round(args.clause_ratio * n)), seed)
            a = nae3sat_allfalse(f)
            sols = nae_assignments(f)
            d = min(_distance(a, w) for w in sols) if sols else None
            yield {"instance": i, "kind": "nae", "n": f.variable_count, "k": None, "output_weight": 0,
                   "distance": d, "bound": f.variable_count / 2,
                   "pass": d is None or d <= f.variable_count / 2}
            continue
        yield from _approx_graph_rows(i, args.kind, random_graph(n, args.p, seed))


# ---------------------------------------------------------------- gadgets

def _sat_trial(args, i: int, rng: random.Random) -> Row:
    n = _trial_n(args, i)
    f, plant = planted_3cnf(n, max(1, round(args.clause_ratio * n)), derive_seed(args.seed, i))
    target = rng.randrange(n)
    pf = pad_sat(f, args.epsilon, target)
    bound = guarantee_flips(pf.n_prime, args.epsilon)
    flips = rng.randint(0, bound) + args.overflow
    decoded = decode_sat_majority(pf, corrupt(pf.extend(plant), flips, rng))
    ok = decoded.value in feasible_values(f, target)
    return {"trial": i, "kind": "sat", "n": n, "n_prime": pf.n_prime, "flips": flips, "bound": bound,
            "decoded": decoded.value, "pass": ok}


def _vc_trial(args, i: int, rng: random.Random, instance) -> Row:
    g, v = instance
    k, covers = min_vertex_covers_exact(g)
    gdt = build_vc_gadget(g, v, k, args.epsilon)
    n_prime = gdt.g_prime.vertex_count
    bound = guarantee_flips(n_prime, args.epsilon)
    flips = rng.randint(0, bound) + args.overflow
    c = set(rng.choice(covers))
    planted = c | (gdt.p0 if v in c else gdt.p1)
    case = decode_vc_gadget(gdt, bits_to_subset(corrupt(subset_to_bits(planted, n_prime), flips, rng)))
    if case is VcCase.CONTAINS_V:
        ok = any(v in cc for cc in covers)
    else:
        ok = any(v not in cc for cc in covers)
    return {"trial": i, "kind": "vc", "n": g.vertex_count, "n_prime": n_prime, "flips": flips, "bound": bound,
            "decoded": case.value, "pass": ok}


def _hc_trial(args, i: int, rng: random.Random, instance) -> Row:
    g, pair = instance
    red = EdgePairReduction(g, {0: pair})
    gdt = build_hc_gadget(red, 0, args.epsilon)
    n_prime = len(gdt.g_prime.edges)
    bound = guarantee_flips(n_prime, args.epsilon)
    cycle = rng.choice(hamiltonian_cycles(g))
    truth = red.extract_assignment(cycle)[0]
    flips = rng.randint(0, bound) + args.overflow
    w = corrupt(gdt.edge_bits(gdt.lift_cycle(cycle)), flips, rng)
    decoded = decode_hc_gadget(gdt, gdt.bits_edges(w))
    return {"trial": i, "kind": "hc", "n": g.vertex_count, "n_prime": n_prime, "flips": flips, "bound": bound,
            "decoded": decoded, "pass": decoded == truth}


def cmd_gadgets(args) -> Iterator[Row]:
    if args.kind == "vc":
        corpus = vc_toy_corpus(args.seed, args.trials, max_n=args.n_max)
    elif args.kind == "hc":
        corpus = hc_toy_corpus(args.seed)
    for i in range(args.trials):
        rng = random.Random(derive_seed(args.seed ^ 0x5A5A, i))
        if args.kind == "sat":
            row = _sat_trial(args, i, rng)
        elif args.kind == "vc":
            row = _vc_trial(args, i, rng, corpus[i])
        else:
            row = _hc_trial(args, i, rng, corpus[i % len(corpus)])
        if args.overflow:
            row["pass"] = True  # outside the guarantee: reported, not asserted
        yield row


# ---------------------------------------------------------------- baselines

def randomized_hit_rate(n: int, trials: int, seed: int, params: ApproxParams) -> Row:
    threshold = n / 2 + h_bound(n, params)
    target = randomized_baseline(n, derive_seed(seed, 1 << 40))
    hits = sum(
        1 for i in range(trials)
        if _distance(randomized_baseline(n, derive_seed(seed, i)), target) <= threshold
    )
    p = 1 - tail_count(n, threshold) / 2 ** n
    se = math.sqrt(p * (1 - p) / trials) if trials else 0.0
    observed = hits / trials if trials else 0.0
    return {"section": "randomized", "n": n, "c": None, "trials": trials, "observed": observed,
            "expected": p, "tolerance": 3 * se, "pass": abs(observed - p) <= 3 * se}


def deterministic_audit(n: int, c: int) -> Row:
    """Every single-witness verifier on n bits; multi-witness sets only make the bound easier."""
    worst = 0
    for x in range(1 << n):
        w = BitString(x, n)
        worst = max(worst, _distance(deterministic_lowweight_baseline(SetVerifier(n, [w]), c), w))
    bound = max(n - c, 0)
    return {"section": "deterministic", "n": n, "c": c, "trials": 1 << n, "observed": worst,
            "expected": bound, "tolerance": 0, "pass": worst <= bound}


def _random_strategy(rng: random.Random, budget: int):
    def run(query, n):
        for x in rng.sample(range(1 << n), min(budget, 1 << n)):
            query(BitString(x, n))
        return BitString(rng.getrandbits(n), n)
    return run


def adversary_sweep(n: int, c: int, games: int, seed: int) -> Row:
    rng = random.Random(derive_seed(seed, n * 16 + c))
    limit = comb(n, n - c + 1)
    strategies = [lowweight_query_strategy(c)]
    strategies += [_random_strategy(rng, rng.randint(0, 1 << n)) for _ in range(games)]
    held = 0
    for strategy in strategies:
        q, dist = adversary_game(strategy, n, c)
        held += q >= limit or dist == n - c + 1
    return {"section": "adversary", "n": n, "c": c, "trials": len(strategies), "observed": held,
            "expected": len(strategies), "tolerance": 0, "pass": held == len(strategies)}


def cmd_baselines(args) -> Iterator[Row]:
    params = _params(args)
    cs = args.c or [1, 2, 3]
    for n in _n_values(args):
        if args.trials:
            yield randomized_hit_rate(n, args.trials, args.seed, params)
        if n <= args.exhaustive_max:
            for c in cs:
                yield deterministic_audit(n, c)
        if n <= args.adversary_max:
            for c in cs:
                if c <= n:
                    yield adversary_sweep(n, c, args.games, args.seed)


# ---------------------------------------------------------------- plumbing

COMMANDS: Dict[str, Callable] = {
    "lemma1": cmd_lemma1, "decider": cmd_decider, "approx": cmd_approx,
    "gadgets": cmd_gadgets, "baselines": cmd_baselines,
}


def _fraction(text: str) -> float:
    if "/" in text:
        num, den = text.split("/", 1)
        return float(num) / float(den)
    return float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n-min", type=int, default=8)
    common.add_argument("--n-max", type=int, default=14)
    common.add_argument("--step", type=int, default=1, help="stride through [n-min, n-max]")
    common.add_argument("--alpha", type=float, default=0.25)
    common.add_argument("--log-base", choices=[b.value for b in LogBase], default=LogBase.NATURAL.value)
    common.add_argument("--epsilon", type=_fraction, default=0.5, help="accepts fractions such as 1/2")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--format", choices=["csv", "json"], default="csv")
    common.add_argument("--out", default="-", help="output file, '-' for stdout")

    parser = argparse.ArgumentParser(prog="hamwit", description="Run Hamming-approximation experiments.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("lemma1", parents=[common], help="tail counts against 2^n / P(n, alpha)")

    p = sub.add_parser("decider", parents=[common], help="planted and empty runs of the universe-shrinking decider")
    p.add_argument("--policy", choices=PlantedOracle.POLICIES, default="exact_max")
    p.add_argument("--mode", choices=["both", "planted", "empty"], default="both",
                   help="'both' alternates planted and empty trials")
    p.add_argument("--k", type=float, default=DEFAULT_K, help="constant in the K n P(n, alpha) budget")

    p = sub.add_parser("approx", parents=[common], help="approximators against exhaustive optima")
    p.add_argument("--kind", choices=["nt-vc", "nt-is", "nt-clique", "halfsplit", "nae"], default="nt-vc")
    p.add_argument("--p", type=float, default=0.5, help="edge probability")
    p.add_argument("--clause-ratio", type=float, default=2.0)

    p = sub.add_parser("gadgets", parents=[common], help="plant, corrupt and decode through a gadget")
    p.add_argument("--kind", choices=["sat", "vc", "hc"], default="sat")
    p.add_argument("--overflow", type=int, default=0, help="extra flips beyond the guarantee; not asserted")
    p.add_argument("--clause-ratio", type=float, default=4.0)

    p = sub.add_parser("baselines", parents=[common], help="randomized, low-weight and adversary baselines")
    p.add_argument("--c", type=int, action="append", help="repeatable; default 1, 2, 3")
    p.add_argument("--exhaustive-max", type=int, default=10, help="largest n for the deterministic audit")
    p.add_argument("--adversary-max", type=int, default=8, help="largest n for the adversary sweep")
    p.add_argument("--games", type=int, default=50, help="random strategies per (n, c)")
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.alpha <= 0:
        parser.error("--alpha must be positive")
    if not 0 < args.epsilon <= 1:
        parser.error("--epsilon must lie in (0, 1]")
    if args.n_min < 0 or args.n_min > args.n_max:
        parser.error("need 0 <= --n-min <= --n-max")
    if args.step < 1:
        parser.error("--step must be at least 1")
    if args.trials < 0:
        parser.error("--trials must be non-negative")
    if args.command == "lemma1" and args.n_min < 2:
        parser.error("lemma1 needs n >= 2")
    if args.command == "gadgets" and args.n_min < 1:
        parser.error("gadgets need n >= 1")
    if args.command == "gadgets" and args.kind == "vc" and args.n_max < 2:
        parser.error("the vc gadget needs graphs with an edge (n-max >= 2)")
    if args.command == "baselines" and args.c and any(c < 1 for c in args.c):
        parser.error("--c must be at least 1")


def _config(args) -> Dict[str, object]:
    cfg = {k: v for k, v in sorted(vars(args).items()) if k != "out"}
    cfg["version"] = __version__
    return cfg


def render(fmt: str, config: Dict, columns: Sequence[str], rows: List[Row], summary: Dict) -> str:
    if fmt == "json":
        return json.dumps({"config": config, "columns": list(columns), "rows": rows, "summary": summary},
                          indent=1) + "\n"
    buf = io.StringIO()
    buf.write("# config: " + json.dumps(config, sort_keys=True) + "\n")
    writer = csv.DictWriter(buf, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row[k] is None else row[k] for k in columns})
    buf.write("# summary: " + json.dumps(summary, sort_keys=True) + "\n")
    return buf.getvalue()


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    rows = list(COMMANDS[args.command](args))
    passed = all(bool(r["pass"]) for r in rows)
    summary: Dict[str, object] = {"rows": len(rows), "failed": sum(1 for r in rows if not r["pass"]),
                                  "passed": passed}
    if args.command == "lemma1":
        summary.update(summarize_lemma1(rows))
    text = render(args.format, _config(args), COLUMNS[args.command], rows, summary)
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
