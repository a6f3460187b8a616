"""Command-line front end.

Every subcommand that needs a graph reads a metagraph document from the
positional ``input`` argument (``-`` or omitted means stdin) and writes to
``--output`` (default stdout).  Exit codes: 0 success, 1 domain error (no
path, budget exceeded, unknown element), 2 usage or document error.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
import time
from contextlib import contextmanager

from .core import Metagraph, MetagraphError
from .generators import gen_hn, gen_random
from .io import DocumentError, export_dot, parse_metagraph, serialize_metagraph, serialize_projection
from .oracle import DEFAULT_MAX_EDGES, DEFAULT_MAX_SUBSET, BudgetExceeded
from .pathfinding import NO_PATH, get_all_metapaths, get_single_metapath
from .projection import bbp_oracle, tpp, tpp_oracle

__all__ = ["main", "run", "build_parser"]


class UsageError(Exception):
    pass


def _names(text: str) -> list[str]:
    names = [t.strip() for t in text.split(",") if t.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of names")
    return names


@contextmanager
def _output(path: str, binary: bool = False):
    if path == "-":
        yield sys.stdout.buffer if binary else sys.stdout
    else:
        with open(path, "wb" if binary else "w", encoding=None if binary else "utf-8", newline=None if binary else "\n") as fh:
            yield fh


def _read_graph(path: str):
    try:
        if path == "-":
            return parse_metagraph(sys.stdin.buffer.read())
        with open(path, "rb") as fh:
            return parse_metagraph(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_path(args) -> int:
    mg = _read_graph(args.input)
    src, tgt = mg.mask(args.source), mg.mask(args.target)
    with _output(args.output) as out:
        if not args.all:
            edges, status = get_single_metapath(mg, src, tgt, with_status=True)
            if status == NO_PATH:
                print("no metapath", file=sys.stderr)
                return 1
            out.write(" ".join(mg.labels_of(edges)) + "\n")
            return 0
        count = 0
        for path in get_all_metapaths(mg, src, tgt, combine=not args.no_combine):
            out.write(" ".join(mg.labels_of(path)) + "\n")
            out.flush()
            count += 1
            if args.limit is not None and count >= args.limit:
                break
        if count == 0 and tgt & ~src:
            print("no metapath", file=sys.stderr)
            return 1
    return 0


def cmd_tpp(args) -> int:
    mg = _read_graph(args.input)
    result = tpp(mg, args.subset, threads=args.threads)
    with _output(args.output, binary=True) as out:
        out.write(serialize_projection(result, include_reverse_map=args.reverse_map))
    return 0


def cmd_bbp(args) -> int:
    mg = _read_graph(args.input)
    result = bbp_oracle(mg, args.subset, max_edges=args.budget_edges, max_subset=args.budget_subset)
    with _output(args.output, binary=True) as out:
        out.write(serialize_projection(result, include_reverse_map=args.reverse_map))
    return 0


def cmd_gen_hn(args) -> int:
    inst = gen_hn(args.n)
    with _output(args.output, binary=True) as out:
        out.write(serialize_metagraph(inst.metagraph))
    print("projection set: " + ",".join(inst.projection_set), file=sys.stderr)
    return 0


def cmd_gen_rand(args) -> int:
    mg = gen_random(args.elements, args.edges, args.max_vertex, args.seed, allow_empty=args.allow_empty)
    with _output(args.output, binary=True) as out:
        out.write(serialize_metagraph(mg))
    return 0


def cmd_dot(args) -> int:
    mg = _read_graph(args.input)
    with _output(args.output) as out:
        out.write(export_dot(mg, args.highlight or ()))
    return 0


def _verify_checks(mg, subset, budget_edges, budget_subset, seed):
    fast = tpp(mg, subset)

    def oracle_equivalence():
        return fast.edge_set() == tpp_oracle(mg, subset, max_edges=budget_edges, max_subset=budget_subset).edge_set()

    def idempotence():
        again = tpp(fast.projected, fast.projected.elements)
        return again.edge_set() == fast.edge_set()

    def tpp_within_bbp():
        bbp = bbp_oracle(mg, subset, max_edges=budget_edges, max_subset=budget_subset)
        inv = {a for a, _ in bbp.edge_set()}
        return len(fast.projected.edges) <= len(bbp.projected.edges) and all(a in inv for a, _ in fast.edge_set())

    def permutation_invariance():
        rng = random.Random(seed)
        pairs = mg.edge_pairs()
        for _ in range(5):
            order = list(range(len(pairs)))
            rng.shuffle(order)
            shuffled = Metagraph.build(mg.elements, [pairs[i] for i in order], [mg.edge_labels[i] for i in order])
            sub = list(subset)
            rng.shuffle(sub)
            if tpp(shuffled, sub).edge_set() != fast.edge_set():
                return False
        return True

    def round_trip():
        text = serialize_metagraph(mg)
        again = parse_metagraph(text)
        return again == mg and serialize_metagraph(again) == text

    def reverse_map_sound():
        for k, e in enumerate(fast.projected.edges):
            for p in fast.reverse_map[k]:
                if mg.names(p.source) != fast.projected.names(e.invertex):
                    return False
                if not set(mg.names(p.target)) <= set(fast.projected.names(e.outvertex)):
                    return False
        return True

    return [
        ("oracle-equivalence", oracle_equivalence),
        ("idempotence", idempotence),
        ("tpp-within-bbp", tpp_within_bbp),
        ("permutation-invariance", permutation_invariance),
        ("reverse-map-sound", reverse_map_sound),
        ("round-trip", round_trip),
    ]


def cmd_verify(args) -> int:
    mg = _read_graph(args.input)
    subset = args.subset or list(mg.elements)
    mg.mask(subset)
    failed = False
    with _output(args.output) as out:
        for name, check in _verify_checks(mg, subset, args.budget_edges, args.budget_subset, args.seed):
            try:
                ok = check()
            except BudgetExceeded as exc:
                out.write(f"SKIP {name} ({exc})\n")
                continue
            failed |= not ok
            out.write(f"{'PASS' if ok else 'FAIL'} {name}\n")
    return 1 if failed else 0


def cmd_bench(args) -> int:
    if args.suite != "hn":
        raise UsageError(f"unknown suite {args.suite!r}")
    with _output(args.output) as out:
        out.write(f"{'n':>4} {'|E|':>5} {'tpp':>5} {'tpp_s':>9} {'bbp':>5} {'bbp_s':>14}\n")
        for n in range(1, args.max_n + 1):
            inst = gen_hn(n)
            t0 = time.perf_counter()
            t = tpp(inst.metagraph, inst.projection_set)
            t_tpp = time.perf_counter() - t0
            t0 = time.perf_counter()
            try:
                b = bbp_oracle(
                    inst.metagraph, inst.projection_set, max_edges=args.budget_edges, max_subset=args.budget_subset
                )
                bbp_cells = f"{len(b.projected.edges):>5} {time.perf_counter() - t0:>14.4f}"
            except BudgetExceeded:
                bbp_cells = f"{'-':>5} {'DNF(budget)':>14}"
            out.write(f"{n:>4} {len(inst.metagraph.edges):>5} {len(t.projected.edges):>5} {t_tpp:>9.4f} {bbp_cells}\n")
            out.flush()
    return 0


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metaproj", description="Metapath search and metagraph projection.")
    sub = parser.add_subparsers(dest="command", required=True)

    io_in = argparse.ArgumentParser(add_help=False)
    io_in.add_argument("input", nargs="?", default="-", help="metagraph document (default: stdin)")
    io_out = argparse.ArgumentParser(add_help=False)
    io_out.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    budgets = argparse.ArgumentParser(add_help=False)
    budgets.add_argument("--budget-edges", type=int, default=DEFAULT_MAX_EDGES)
    budgets.add_argument("--budget-subset", type=int, default=DEFAULT_MAX_SUBSET)

    p = sub.add_parser("path", parents=[io_in, io_out], help="find metapaths")
    p.add_argument("--source", type=_names, required=True)
    p.add_argument("--target", type=_names, required=True)
    p.add_argument("--all", action="store_true", help="stream every edge-minimal metapath")
    p.add_argument("--limit", type=int, help="stop after this many paths (with --all)")
    p.add_argument("--no-combine", action="store_true", help="disable edge combining")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("tpp", parents=[io_in, io_out], help="transitivity preserving projection")
    p.add_argument("--subset", type=_names, required=True)
    p.add_argument("--reverse-map", action="store_true")
    p.add_argument("--threads", type=int, default=1)
    p.set_defaults(func=cmd_tpp)

    p = sub.add_parser("bbp", parents=[io_in, io_out, budgets], help="brute-force full projection")
    p.add_argument("--subset", type=_names, required=True)
    p.add_argument("--reverse-map", action="store_true")
    p.set_defaults(func=cmd_bbp)

    p = sub.add_parser("gen-hn", parents=[io_out], help="generate the H_n family member")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_gen_hn)

    p = sub.add_parser("gen-rand", parents=[io_out], help="generate a seeded random metagraph")
    p.add_argument("--elements", type=int, required=True)
    p.add_argument("--edges", type=int, required=True)
    p.add_argument("--max-vertex", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--allow-empty", action="store_true")
    p.set_defaults(func=cmd_gen_rand)

    p = sub.add_parser("dot", parents=[io_in, io_out], help="Graphviz export")
    p.add_argument("--highlight", type=_names)
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("verify", parents=[io_in, io_out, budgets], help="check invariants on a graph")
    p.add_argument("--subset", type=_names)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[io_out, budgets], help="time TPP against the brute-force projection")
    p.add_argument("--suite", default="hn", choices=["hn"])
    p.add_argument("--max-n", type=int, default=4)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, DocumentError) as exc:
        print(f"metaproj: error: {exc}", file=sys.stderr)
        return 2
    except MetagraphError as exc:
        print(f"metaproj: {exc}", file=sys.stderr)
        return 1
    except BrokenPipeError:
        # downstream closed early, e.g. piped into head
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return 0


run = main

if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
