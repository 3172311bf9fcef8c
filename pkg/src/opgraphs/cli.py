"""Command-line surface: reproducible experiments with JSON reports.

Every command echoes the config that produced it; identical configs
with the same seed reproduce the report byte for byte (timing fields
aside).  Exit codes: 0 all checks passed, 2 a finite-backend analog
of a complex-model statement failed (loudly flagged, still a valid
report), 1 usage errors and infeasible requests.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .autgroup import automorphism_group
from .constructions import induced_subgroup
from .counterexamples import (SearchBudgetError, census_certificates,
                              find_rank_only_pair, verify_certificate)
from .graphs import LabeledGraph, johnson_graph, petersen_graph
from .lemmas import (verify_fiber_lift, verify_move_equivalence,
                     verify_obstruction_lemma, verify_swap_lemma,
                     verify_type_action)
from .report import (EXIT_DIVERGENCE, EXIT_ERROR, EXIT_OK, build_report,
                     write_report)
from .serialize import (adjacency_to_dot, graph_to_dot, group_to_json,
                        load_json, load_pair, partition_to_json, save_json)
from .spectral import (ClassSignature, adjacency_slots, classify_pairs,
                       coordinate_flag, enumerate_class,
                       invariance_condition, rank_condition)
from .starfield import QI, StarFieldError, galois_field

DEFAULTS = {
    "backend": "gf",
    "p": 3,
    "e": 1,
    "sigma": "0,1,2",
    "dims": "1,1,1",
    "seed": 0,
}

LEMMAS = ("a1a2-equiv", "lift", "swap", "obstruction", "johnson-tau")


class CliError(Exception):
    """Usage-level failure; becomes an error report and exit code 1."""


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; 2 is reserved for divergence."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_ERROR)


def _tokens(value):
    if isinstance(value, str):
        return [t for t in value.split(",") if t]
    return [str(t) for t in value]


def _resolve(args):
    """Merge explicit flags over fixture-file values over defaults."""
    fixture = load_json(args.fixture) if getattr(args, "fixture", None) else {}

    def pick(name):
        v = getattr(args, name, None)
        if v is None:
            v = fixture.get(name, DEFAULTS.get(name))
        return v

    backend = pick("backend")
    if backend not in ("qi", "gf"):
        raise CliError(f"unknown backend {backend!r}")
    if backend == "qi":
        field = QI
    else:
        field = galois_field(int(pick("p")), int(pick("e")))
    sigma_tokens = _tokens(pick("sigma"))
    dims = [int(t) for t in _tokens(pick("dims"))]
    seed = int(pick("seed"))
    workers = getattr(args, "workers", None)
    if workers is None:
        workers = int(os.environ.get("OPGRAPHS_WORKERS", "1"))
    config = {
        "backend": field.descriptor(),
        "sigma": sigma_tokens,
        "dims": dims,
        "seed": seed,
        "workers": workers,
    }
    return field, sigma_tokens, dims, seed, workers, config


def _signature(field, sigma_tokens, dims):
    try:
        sigma = tuple(field.parse_fixed(t) for t in sigma_tokens)
        return ClassSignature(field, sigma, tuple(dims))
    except (ValueError, StarFieldError) as e:
        raise CliError(str(e)) from None


def _class_graph(sig, workers):
    flags = enumerate_class(sig)
    return LabeledGraph.build(sig, flags)


# ---------------------------------------------------------------------------
# commands


def cmd_enumerate(args):
    field, sigma_tokens, dims, seed, workers, config = _resolve(args)
    sig = _signature(field, sigma_tokens, dims)
    try:
        flags = enumerate_class(sig)
    except ValueError as e:
        raise CliError(str(e)) from None
    results = {"vertex_count": len(flags)}
    if args.dump_flags:
        results["flags"] = [
            [X.to_json() for X in fl.spaces] for fl in flags]
    return config, results, EXIT_OK


def cmd_adjacency(args):
    if not args.pair_file:
        raise CliError("adjacency needs --pair-file")
    a, b = load_pair(args.pair_file)
    config = {
        "pair_file": os.path.basename(args.pair_file),
        "backend": a.signature.field.descriptor(),
        "signature": a.signature.to_json(),
    }
    a1 = rank_condition(a, b)
    a2 = invariance_condition(a, b)
    slots = adjacency_slots(a, b)
    if a1 and a2:
        verdict = "adjacent"
    elif a1:
        verdict = "A1∧¬A2"
    else:
        verdict = "not adjacent"
    match = (slots is not None) == (a1 and a2)
    results = {
        "a1_rank": a1,
        "a2_invariance": a2,
        "type": list(slots) if slots is not None else None,
        "verdict": verdict,
        "conditions_match_geometry": match,
    }
    return config, results, EXIT_OK if match else EXIT_DIVERGENCE


def cmd_components(args):
    field, sigma_tokens, dims, seed, workers, config = _resolve(args)
    sig = _signature(field, sigma_tokens, dims)
    try:
        graph = _class_graph(sig, workers)
    except ValueError as e:
        raise CliError(str(e)) from None
    config["type"] = args.type
    code = EXIT_OK
    if args.type == "global":
        comps = graph.components()
        results = {
            "component_count": len(comps),
            "connected": len(comps) == 1,
            "components": partition_to_json(comps),
        }
        if not results["connected"]:
            code = EXIT_DIVERGENCE
    elif args.type == "ij":
        i = 1 if args.i is None else args.i
        j = 2 if args.j is None else args.j
        config["slots"] = [i, j]
        comps = graph.ij_components(i, j)
        fibers = graph.fiber_partition(i, j)
        owner = {v: t for t, part in enumerate(fibers) for v in part}
        contained = all(
            len({owner[v] for v in comp}) == 1 for comp in comps)
        results = {
            "slot_pair": [i, j],
            "component_count": len(comps),
            "component_sizes": sorted({len(c) for c in comps}),
            "fiber_count": len(fibers),
            "fiber_sizes": sorted({len(p) for p in fibers}),
            "every_component_in_a_fiber": contained,
            "components_equal_fibers": comps == fibers,
            "components": partition_to_json(comps),
        }
        if not (contained and results["components_equal_fibers"]):
            code = EXIT_DIVERGENCE
    else:  # ibar
        i = 2 if args.i is None else args.i
        config["slot"] = i
        comps = graph.avoiding_components(i)
        blocks = tuple(sorted(graph.eigenspace_blocks(i).values()))
        owner = {v: t for t, part in enumerate(blocks) for v in part}
        contained = all(
            len({owner[v] for v in comp}) == 1 for comp in comps)
        results = {
            "slot": i,
            "component_count": len(comps),
            "block_count": len(blocks),
            "every_component_in_a_block": contained,
            "components_equal_blocks": comps == blocks,
            "components": partition_to_json(comps),
        }
        if not (contained and results["components_equal_blocks"]):
            code = EXIT_DIVERGENCE
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph_to_dot(graph))
    return config, results, code


def cmd_automorphisms(args):
    code = EXIT_OK
    budget = args.budget or 2_000_000
    if args.graph in ("petersen", "johnson"):
        if args.graph == "petersen":
            g = petersen_graph()
            config = {"graph": "petersen"}
        else:
            n = args.n or 4
            g = johnson_graph(n)
            config = {"graph": "johnson", "n": n}
        chain = automorphism_group(g.adjlist, node_budget=budget)
        results = {
            "vertex_count": len(g.adjlist),
            "automorphism_order": str(chain.order()),
            "generator_count": len(chain.generators()),
        }
        if args.generators_out:
            save_json(args.generators_out,
                      group_to_json(chain.order(), chain.generators()))
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(adjacency_to_dot(g.adjlist, g.labels))
        return config, results, code

    field, sigma_tokens, dims, seed, workers, config = _resolve(args)
    sig = _signature(field, sigma_tokens, dims)
    try:
        graph = _class_graph(sig, workers)
    except ValueError as e:
        raise CliError(str(e)) from None
    results = {"vertex_count": graph.n, "edge_count": len(graph.edges)}
    known = ()
    if args.compare_induced:
        chain_ind, gens = induced_subgroup(graph)
        known = [perm for _, _, perm in gens]
        results["induced_order"] = str(chain_ind.order())
        results["induced_generator_count"] = len(gens)
        results["induced_generators_verified"] = True
    chain = automorphism_group(
        graph.adjacency(), known_generators=known, node_budget=budget)
    results["automorphism_order"] = str(chain.order())
    if args.compare_induced:
        aut, ind = chain.order(), chain_ind.order()
        results["index_of_induced"] = aut // ind
        results["induced_equals_full"] = aut == ind
    if args.generators_out:
        save_json(args.generators_out,
                  group_to_json(chain.order(), chain.generators()))
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(graph_to_dot(graph))
    return config, results, code


def cmd_verify_lemma(args):
    field, sigma_tokens, dims, seed, workers, config = _resolve(args)
    config["lemma"] = args.lemma
    if args.lemma == "a1a2-equiv":
        sig = _signature(field, sigma_tokens, dims)
        results = verify_move_equivalence(
            sig, samples=args.samples, seed=seed, workers=workers)
    elif args.lemma == "lift":
        sig = _signature(field, sigma_tokens, dims)
        results = verify_fiber_lift(sig, args.i, args.j)
    elif args.lemma == "swap":
        explicit = args.sigma is not None
        try:
            sigma = (tuple(field.parse_fixed(t) for t in sigma_tokens)
                     if explicit else None)
            results = verify_swap_lemma(field, sigma=sigma)
        except (ValueError, StarFieldError) as e:
            raise CliError(str(e)) from None
    elif args.lemma == "obstruction":
        sig = _signature(field, sigma_tokens, dims)
        results = verify_obstruction_lemma(sig)
    else:  # johnson-tau
        sig = _signature(field, sigma_tokens, dims) if field.is_finite else None
        results = verify_type_action(sig, node_budget=args.budget or 2_000_000)
    if results.get("mode") == "unavailable":
        raise CliError(results.get("reason", "lemma unavailable here"))
    code = EXIT_OK if results.get("holds") else EXIT_DIVERGENCE
    return config, results, code


def cmd_counterexample(args):
    field, sigma_tokens, dims, seed, workers, config = _resolve(args)
    sig = _signature(field, sigma_tokens, dims)
    if sig.k < 3:
        raise CliError(
            "a rank-two difference with two eigenvalues always has "
            "invariant image and kernel; no counterexample can exist")
    config["budget"] = args.budget
    config["limit"] = args.limit
    if field.is_finite:
        flags = enumerate_class(sig)
        census = classify_pairs(flags, workers=workers)
        results = {
            "mode": "exhaustive",
            "total_pairs": census.total,
            "adjacent_count": census.adjacent_count,
            "rank_other_count": census.rank_other,
            "rank_only_count": census.rank_only_count,
            "condition_mismatches": len(census.mismatches),
        }
        if census.mismatches:
            return config, results, EXIT_DIVERGENCE
        if census.rank_only_count == 0:
            results["outcome"] = "exhaustively none"
            return config, results, EXIT_OK
        certs = census_certificates(flags, census, limit=args.limit)
        checks = [verify_certificate(field, c) for c in certs]
        results["outcome"] = "certified"
        results["certificates"] = certs
        results["verification"] = checks
        ok = all(c["ok"] for c in checks)
        return config, results, EXIT_OK if ok else EXIT_DIVERGENCE
    base = coordinate_flag(sig)
    try:
        found, cert = find_rank_only_pair(
            base, seed=seed, attempts=args.budget)
    except SearchBudgetError:
        results = {"mode": "randomized", "outcome": "budget-exhausted",
                   "attempts": args.budget}
        return config, results, EXIT_ERROR
    checks = verify_certificate(field, cert)
    results = {
        "mode": "randomized",
        "outcome": "certified",
        "certificate": cert,
        "verification": checks,
    }
    return config, results, EXIT_OK if checks["ok"] else EXIT_DIVERGENCE


# ---------------------------------------------------------------------------
# wiring


def _add_common(sub):
    sub.add_argument("--backend", choices=("qi", "gf"))
    sub.add_argument("--p", type=int, help="characteristic (gf backend)")
    sub.add_argument("--e", type=int,
                     help="fixed field GF(p^e) inside GF(p^2e)")
    sub.add_argument("--sigma",
                     help="comma list; rationals for qi, fixed-subfield "
                          "indices for gf")
    sub.add_argument("--dims", help="comma list of eigenspace dimensions")
    sub.add_argument("--fixture", help="config JSON supplying defaults")
    sub.add_argument("--seed", type=int)
    sub.add_argument("--workers", type=int,
                     help="census thread pool size (default "
                          "$OPGRAPHS_WORKERS or 1)")
    sub.add_argument("--out", help="also write the report here")


def build_parser():
    parser = _Parser(
        prog="opgraphs",
        description="Adjacency graphs of conjugacy classes of "
                    "self-adjoint operators: enumeration, adjacency "
                    "verdicts, components, automorphisms, and verified "
                    "structure moves.")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("enumerate", help="count (and dump) the class")
    _add_common(p)
    p.add_argument("--dump-flags", action="store_true")
    p.set_defaults(run=cmd_enumerate)

    p = subs.add_parser("adjacency", help="classify one pair of flags")
    _add_common(p)
    p.add_argument("--pair-file", help="pair JSON (see serialize.save_pair)")
    p.set_defaults(run=cmd_adjacency)

    p = subs.add_parser("components", help="component partitions")
    _add_common(p)
    p.add_argument("--type", choices=("ij", "ibar", "global"), default="ij")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--dot", help="write DOT here")
    p.set_defaults(run=cmd_components)

    p = subs.add_parser("automorphisms", help="exact automorphism group")
    _add_common(p)
    p.add_argument("--graph", choices=("class", "petersen", "johnson"),
                   default="class")
    p.add_argument("--n", type=int, help="johnson parameter")
    p.add_argument("--compare-induced", action="store_true")
    p.add_argument("--budget", type=int, help="search tree node budget")
    p.add_argument("--generators-out", help="write the group JSON here")
    p.add_argument("--dot", help="write DOT here")
    p.set_defaults(run=cmd_automorphisms)

    p = subs.add_parser("verify-lemma", help="check one structure move")
    _add_common(p)
    p.add_argument("--lemma", choices=LEMMAS, required=True)
    p.add_argument("--samples", type=int, default=40,
                   help="sampled instances on infinite backends")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--budget", type=int, help="search tree node budget")
    p.set_defaults(run=cmd_verify_lemma)

    p = subs.add_parser("counterexample",
                        help="rank-two pairs that fail invariance")
    _add_common(p)
    p.add_argument("--budget", type=int, default=200,
                   help="attempt budget for the randomized search")
    p.add_argument("--limit", type=int, default=3,
                   help="certificates to emit from an exhaustive census")
    p.set_defaults(run=cmd_counterexample)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.time()
    try:
        config, results, code = args.run(args)
    except CliError as e:
        report = build_report(args.command, {}, {"error": str(e)},
                              time.time() - start)
        sys.stdout.write(write_report(report, getattr(args, "out", None)))
        return EXIT_ERROR
    report = build_report(args.command, config, results, time.time() - start)
    sys.stdout.write(write_report(report, getattr(args, "out", None)))
    return code


if __name__ == "__main__":
    sys.exit(main())
