"""Command-line front end.

Exit codes: 0 success, 1 violation found, 2 usage or precondition error,
3 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence

from . import analysis, critical, domination, io, reconfig, trees, verify

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_GUARD = 0, 1, 2, 3


class UsageError(ValueError):
    pass


class EngineMismatch(RuntimeError):
    pass


def parse_gen_spec(spec: str) -> tuple[trees.Tree, dict[str, int]]:
    """``path:n``, ``star:n``, ``tk:k``, ``random:n:seed`` or ``prufer:a,b,...``."""
    kind, _, rest = spec.partition(":")
    try:
        if kind == "path":
            return trees.path_tree(int(rest)), {}
        if kind == "star":
            return trees.star_tree(int(rest)), {}
        if kind == "tk":
            return trees.build_t_k(int(rest))
        if kind == "random":
            n, seed = rest.split(":")
            return trees.random_tree(int(n), int(seed)), {}
        if kind == "prufer":
            seq = [int(a) for a in rest.split(",") if a.strip()]
            return trees.tree_from_prufer(seq), {}
    except (ValueError, trees.TreeError) as exc:
        raise UsageError(f"bad generator spec {spec!r}: {exc}") from None
    raise UsageError(f"unknown generator {kind!r}")


def _load_tree(args) -> tuple[trees.Tree, dict[str, int], dict[str, frozenset[int]]]:
    if args.gen and args.input:
        raise UsageError("give either an input file or --gen, not both")
    if args.gen:
        t, labels = parse_gen_spec(args.gen)
        return t, labels, {}
    if not args.input:
        raise UsageError("an input tree is required (path, fixture:NAME or --gen SPEC)")
    if args.input.startswith("fixture:"):
        return io.load_fixture(args.input.split(":", 1)[1])
    t, labels = io.read_edge_list(args.input)
    return t, labels, {}


def _parse_set(spec: str, named: dict[str, frozenset[int]]) -> frozenset[int]:
    if spec in named:
        return named[spec]
    if spec.startswith("@"):
        return io.read_vertex_set(spec[1:])
    return io.parse_vertex_set(spec)


def _emit(args, text: str) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _poly_text(p: domination.DomPoly, fmt: str) -> str:
    if fmt == "json":
        return io.dumps(p.to_json())
    if fmt == "csv":
        return "i,d_i\n" + p.to_csv()
    return "".join(f"d_{i} = {c}\n" for i, c in enumerate(p))


# -- commands -----------------------------------------------------------------

def cmd_gen(args) -> int:
    t, labels = parse_gen_spec(args.spec)
    if args.format == "json":
        _emit(args, io.dumps({"n": t.n, "edges": [list(e) for e in t.edges], "labels": labels}))
    else:
        _emit(args, io.format_edge_list(t, labels))
    return EXIT_OK


def cmd_poly(args) -> int:
    t, _, _ = _load_tree(args)
    if args.engine == "dp":
        p = domination.dom_poly_dp(t)
    elif args.engine == "brute":
        p = domination.dom_poly_bruteforce(t, args.guard)
    else:
        p = domination.dom_poly_dp(t)
        brute = domination.dom_poly_bruteforce(t, args.guard)
        if p != brute:
            raise EngineMismatch(f"dp {list(p)} != brute force {list(brute)}")
    _emit(args, _poly_text(p, args.format))
    return EXIT_OK


def cmd_analyze(args) -> int:
    t, _, _ = _load_tree(args)
    p = domination.dom_poly_dp(t)
    seq = analysis.analyze_sequence(p)
    report = {"n": t.n, "gamma": p.gamma, "poly": p.to_json(), "sequence": seq.to_json(),
              "increasing_segment": analysis.verify_increasing_segment(t, p).to_json()}
    limit = domination.DEFAULT_GUARD if args.guard is None else args.guard
    if t.n <= limit:
        G = domination.upper_domination_number(t, args.guard)
        report["big_gamma"] = G
        report["decreasing_segment"] = analysis.verify_decreasing_segment(t, p, G).to_json()
        gap = analysis.verify_unimodal_gap(t, p, p.gamma, G)
        report["gap_corollary"] = {"applicable": gap.applicable, "holds": gap.holds, "gap": gap.gap}
        avd = analysis.avd_report(t, p, p.gamma, G)
        report["avd"] = avd.to_json()
        report["avd_via_critical"] = io.rational_json(analysis.avd_via_critical(t, args.guard))
    if args.format == "json":
        _emit(args, io.dumps(report))
    else:
        lines = [f"n = {t.n}", f"gamma = {p.gamma}"]
        if "big_gamma" in report:
            lines.append(f"Gamma = {report['big_gamma']}")
        lines += [f"unimodal = {seq.unimodal}", f"modes = {list(seq.mode_indices)}",
                  f"log_concave = {seq.log_concave}",
                  f"first_lc_violation = {seq.first_lc_violation}"]
        _emit(args, "\n".join(lines) + "\n" + _poly_text(p, "text"))
    ok = seq.unimodal and report["increasing_segment"]["holds"]
    if "decreasing_segment" in report:
        ok = ok and report["decreasing_segment"]["holds"] and report["avd"]["within_bounds"]
    return EXIT_OK if ok else EXIT_VIOLATION


def _parse_ks(scope: str) -> list[int]:
    try:
        if "-" in scope:
            lo, hi = scope.split("-")
            return list(range(int(lo), int(hi) + 1))
        return [int(k) for k in scope.split(",")]
    except ValueError:
        raise UsageError(f"bad k list {scope!r}") from None


def cmd_verify(args) -> int:
    results = []
    certs = []
    if args.suite == "tk":
        res, certs = verify.run_tk(_parse_ks(args.scope))
        results.append(res)
    else:
        verify.parse_scope(args.scope)
        suites = verify.ALL_SUITES if args.suite == "all" else (args.suite,)
        results = verify.run_suites(suites, args.scope, guard=args.guard)
    payload = {"results": [r.to_json() for r in results]}
    if certs:
        payload["certificates"] = [c.to_json() for c in certs]
    payload["passed"] = all(r.passed for r in results)
    if args.format == "json":
        _emit(args, io.dumps(payload))
    else:
        lines = [f"{r.suite:<12} {r.scope:<24} trees={r.trees} checks={r.checks} "
                 f"{'PASS' if r.passed else 'FAIL'}" for r in results]
        for r in results:
            lines += [f"  {f.kind}: n={f.n} prufer={list(f.prufer)} {f.detail}" for f in r.findings]
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if payload["passed"] else EXIT_VIOLATION


def cmd_search(args) -> int:
    """Hunt for non-unimodal domination polynomials; exit 1 if one turns up."""
    res = verify.run_suite("unimodal", args.scope, guard=args.guard)
    if args.format == "json":
        _emit(args, io.dumps(res.to_json()))
    else:
        msg = f"searched {res.trees} trees: {len(res.violations)} counterexample(s)\n"
        msg += "".join(f"  n={f.n} prufer={list(f.prufer)} {f.detail}\n" for f in res.findings)
        _emit(args, msg)
    return EXIT_OK if res.passed else EXIT_VIOLATION


def cmd_reconfig(args) -> int:
    t, _, named = _load_tree(args)
    s = _parse_set(args.set, named)
    mode = args.mode
    if mode == "minimalize":
        trace = reconfig.make_minimal(trees.root_at(t, args.root), s, force=args.force)
    elif mode.startswith("a1:"):
        trace = reconfig.reconfigure_a1(t, s, int(mode[3:]), force=args.force)
    elif mode.startswith("a2:"):
        x = _parse_set(mode[3:], named)
        trace = reconfig.reconfigure_a2_subset(t, s, x, force=args.force)
    else:
        raise UsageError(f"bad mode {mode!r}; use minimalize, a1:V or a2:X")
    _emit(args, io.dumps(trace.to_json()))
    return EXIT_OK if trace.terminated else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default=None,
                        help="default: text for gen, json otherwise")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--guard", type=int, default=None,
                        help=f"max n for exhaustive enumeration (default {domination.DEFAULT_GUARD})")
    common.add_argument("--seed", type=int, default=None, help="seed for random generators")

    tree_in = argparse.ArgumentParser(add_help=False)
    tree_in.add_argument("input", nargs="?", help="edge-list file or fixture:NAME")
    tree_in.add_argument("--gen", help="generator spec instead of a file")

    p = argparse.ArgumentParser(prog="treedom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a tree")
    g.add_argument("spec", help="path:N | star:N | tk:K | random:N:SEED | prufer:A,B,...")
    g.set_defaults(func=cmd_gen)

    q = sub.add_parser("poly", parents=[common, tree_in], help="domination polynomial")
    q.add_argument("--engine", choices=("dp", "brute", "both"), default="dp")
    q.set_defaults(func=cmd_poly)

    a = sub.add_parser("analyze", parents=[common, tree_in], help="coefficient diagnostics")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("suite", choices=verify.SUITES + ("all",))
    v.add_argument("scope", help="exhaustive:N | unlabeled:N | random:N:COUNT:SEED | file:PATH (tk: K, K1,K2 or K1-K2)")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("reconfig", parents=[common, tree_in], help="reconfiguration trace")
    r.add_argument("--set", required=True, help="vertex ids '1,2,3', @file, or a fixture set name")
    r.add_argument("--mode", default="minimalize", help="minimalize | a1:V | a2:X")
    r.add_argument("--root", type=int, default=0, help="root for minimalize mode")
    r.add_argument("--force", action="store_true", help="run despite failed preconditions")
    r.set_defaults(func=cmd_reconfig)

    s = sub.add_parser("search", parents=[common], help="hunt for non-unimodal polynomials")
    s.add_argument("scope", nargs="?", default=None, help="default random:20:1000:SEED")
    s.set_defaults(func=cmd_search)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "text" if args.command == "gen" else "json"
    if getattr(args, "command", None) == "search" and args.scope is None:
        args.scope = f"random:20:1000:{args.seed or 0}"
    try:
        return args.func(args)
    except domination.GuardExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except EngineMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except reconfig.PreconditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        print(io.dumps(exc.report.to_json()), file=sys.stderr, end="")
        return EXIT_USAGE
    except (UsageError, verify.ScopeError, io.FormatError, trees.TreeError,
            domination.NotDominating, critical.NotMinimal, reconfig.NotInA1,
            reconfig.XNotInN2, reconfig.XNotIndependent, reconfig.NotConnectedSubtree,
            KeyError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
