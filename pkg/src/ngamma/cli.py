"""Command-line entry point: parse workspaces, dispatch, report.

One binary with subcommands.  Reports go to standard output either as
human-readable text (which may include timing) or as canonical JSON with
``--format structured``, which is byte-identical across runs on identical
inputs and flags.  Exit codes: 0 for pass reports, 1 for fail reports,
2 for errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from . import __version__
from .abgroups import SoundnessError
from .core import BoundExceeded, StructuralError, validate_semiring
from .ideals import GammaIdeal, all_ideals, quotient, spectrum, topology_report
from .modules import (
    cofree, hom_gamma, tensor_positional, validate_module,
)
from .completion import group_complete, linearize_module
from .homology import (
    ContractionPolicy, ExtSetup, RegularityError, balance_check, bar_complex,
    default_policy, ext_via_bar, les_check, tor_via_bar, yoneda_compose,
)
from .spectral import base_change_check, kunneth_check
from .workspace import Workspace, WorkspaceError, parse_workspace
from . import oracle as oracle_mod

PASS, FAIL, ERROR = 0, 1, 2


def _parse_slots(text: str | None, n: int) -> tuple[int, int]:
    if text is None:
        return n - 1, 0  # canonical adjacency: last slot against first
    try:
        j, k = (int(x) for x in text.split(","))
    except ValueError:
        raise StructuralError(f"--slots wants 'j,k', got {text!r}")
    if not (1 <= j <= n and 1 <= k <= n):
        raise StructuralError(f"slot indices must be in 1..{n}")
    return j - 1, k - 1


def _parse_policy(s, text: str, filler_text: str | None) -> ContractionPolicy:
    if text == "sum" and filler_text is None:
        return default_policy(s)
    if text.startswith("fixed:"):
        gam = tuple(int(x) for x in text[len("fixed:"):].split(","))
        if len(gam) != s.n - 1:
            raise StructuralError("fixed parameter tuple has wrong length")
    elif text == "sum":
        gam = None
    else:
        raise StructuralError(f"unknown gamma policy {text!r}")
    fill = None
    if filler_text is not None:
        if filler_text == "sum":
            fill = tuple(s.t_tuples(s.n - 2))
        elif filler_text == "neutral":
            fill = default_policy(s).fillers
        elif filler_text.startswith("fixed:"):
            raw = filler_text[len("fixed:"):]
            fill = ((tuple(int(x) for x in raw.split(",")) if raw else ()),)
        else:
            raise StructuralError(f"unknown filler policy {filler_text!r}")
    base = default_policy(s)
    gammas = (gam,) if gam is not None else base.gammas
    fillers = fill if fill is not None else base.fillers
    return ContractionPolicy(tuple(gammas), tuple(fillers), "cli")


def _factors(g) -> list[int]:
    return list(g.invariant_factors()) + [0] * g.rank


class Reporter:
    def __init__(self, args):
        self.fmt = args.format
        self.started = time.perf_counter()
        self.args = args

    def emit(self, results: dict, ok: bool, workspace: Workspace) -> int:
        if self.fmt == "structured":
            doc = {
                "schema": "ngamma-report/1",
                "engine": f"ngamma {__version__}",
                "command": self.args.command_echo,
                "inputs": dict(sorted(workspace.digests.items())),
                "ok": ok,
                "results": results,
            }
            sys.stdout.write(json.dumps(doc, sort_keys=True,
                                        separators=(",", ":")) + "\n")
        else:
            print(f"ngamma {__version__} :: {' '.join(self.args.command_echo)}")
            _print_tree(results)
            print(f"status: {'pass' if ok else 'FAIL'}")
            print(f"elapsed: {time.perf_counter() - self.started:.3f}s")
        return PASS if ok else FAIL


def _print_tree(obj, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for key in obj:
            val = obj[key]
            if isinstance(val, (dict, list)) and val and \
                    isinstance(val, dict):
                print(f"{pad}{key}:")
                _print_tree(val, indent + 1)
            else:
                print(f"{pad}{key}: {val}")
    else:
        print(f"{pad}{obj}")


def _load(args) -> Workspace:
    paths = args.workspace or []
    if not paths and not args.no_bundled:
        from .bundled import bundled_workspace
        return bundled_workspace()
    return parse_workspace(paths)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------

def cmd_validate(ws: Workspace, args, rep: Reporter) -> int:
    results = {
        "semirings": {name: "valid" for name in sorted(ws.semirings)},
        "modules": {name: "valid" for name in sorted(ws.modules)},
        "morphisms": {name: "valid" for name in sorted(ws.morphisms)},
        "conflations": {name: "valid" for name in sorted(ws.conflations)},
    }
    return rep.emit(results, True, ws)


def cmd_ideals(ws: Workspace, args, rep: Reporter) -> int:
    s = ws.semiring(args.semiring)
    if args.action == "list":
        ideals = all_ideals(s, args.bound)
        results = {"ideals": [sorted(i.members) for i in ideals]}
        return rep.emit(results, True, ws)
    members = frozenset(e for e in range(s.T.size) if args.ideal >> e & 1)
    ideal = GammaIdeal(s, members)
    from .ideals import check_ideal
    chk = check_ideal(s, members)
    if not chk.ok:
        return rep.emit({"error": f"not an ideal: {chk.witness}"}, False, ws)
    q, proj = quotient(s, ideal)
    results = {
        "classes": q.T.size,
        "projection": list(proj.map),
        "mu": list(q.mu_table),
        "add": list(q.T.add_table),
    }
    return rep.emit(results, True, ws)


def cmd_spectrum(ws: Workspace, args, rep: Reporter) -> int:
    s = ws.semiring(args.semiring)
    data = spectrum(s, args.bound)
    results = {
        "ideals": [sorted(i.members) for i in data.ideals],
        "primes": [sorted(p.members) for p in data.primes],
        "closed_sets": [[mask, list(v)] for mask, v in data.closed_sets],
        "topology": topology_report(data),
    }
    return rep.emit(results, True, ws)


def cmd_mod(ws: Workspace, args, rep: Reporter) -> int:
    if args.action == "validate":
        b = ws.module(args.names[0])
        report = validate_module(b)
        results = {c.axiom: ("pass" if c.ok else f"fail {c.witness}")
                   for c in report.checks}
        return rep.emit(results, report.ok, ws)
    if args.action == "hom":
        m, n = ws.module(args.names[0]), ws.module(args.names[1])
        j, k = _parse_slots(args.slots, m.parent.n)
        h = hom_gamma(m, n, j, k)
        results = {"size": h.module.M.size, "maps": [list(f) for f in h.maps]}
        return rep.emit(results, True, ws)
    if args.action == "tensor":
        m, n = ws.module(args.names[0]), ws.module(args.names[1])
        j, k = _parse_slots(args.slots, m.parent.n)
        t = tensor_positional(m, n, j, k)
        results = {"size": t.module.M.size,
                   "add": list(t.module.M.add_table),
                   "pairs": [list(row) for row in t.beta]}
        return rep.emit(results, True, ws)
    if args.action == "cofree":
        s = ws.semiring(args.names[0])
        coeff = ws.monoid(args.names[1])
        cf = cofree(s, coeff)
        results = {"size": cf.module.M.size, "maps": [list(f) for f in cf.maps]}
        return rep.emit(results, True, ws)
    raise WorkspaceError(f"unknown mod action {args.action!r}")


def cmd_complete(ws: Workspace, args, rep: Reporter) -> int:
    b = ws.module(args.module)
    comp = group_complete(b.M)
    lin = linearize_module(b)
    results = {
        "invariant_factors": _factors(comp.group),
        "element_vectors": [list(v) for v in comp.vectors],
        "operators": len(lin.ops[0]) * len(lin.ops),
    }
    return rep.emit(results, True, ws)


def cmd_ext_tor(ws: Workspace, args, rep: Reporter, which: str) -> int:
    s = ws.semiring(args.semiring)
    m, n = ws.module(args.m), ws.module(args.n)
    j, k = _parse_slots(args.slots, s.n)
    policy = _parse_policy(s, args.gamma_policy, args.filler_policy)
    fn = ext_via_bar if which == "ext" else tor_via_bar
    res = fn(s, m, n, j, k, args.depth, policy)
    results = {"degrees": {str(r): list(f) for r, f in enumerate(res.factors())}}
    if args.emit_matrices:
        bar = bar_complex(s, m, j, k, args.depth + 1, policy)
        results["bar_differentials"] = {str(r): d.mat for r, d in bar.diffs.items()}
    return rep.emit(results, True, ws)


def cmd_balance(ws: Workspace, args, rep: Reporter) -> int:
    s = ws.semiring(args.semiring)
    m, n = ws.module(args.m), ws.module(args.n)
    j, k = _parse_slots(args.slots, s.n)
    policy = _parse_policy(s, args.gamma_policy, args.filler_policy)
    b = balance_check(s, m, n, args.depth, j, k, policy)
    results = {
        "bar": [list(f) for f in b.bar_factors],
        "cofree": [list(f) for f in b.cofree_factors],
        "skipped": b.skipped,
        "balanced": b.balanced,
    }
    return rep.emit(results, b.balanced or b.skipped is not None, ws)


def cmd_les(ws: Workspace, args, rep: Reporter) -> int:
    c = ws.conflation(args.conflation)
    n = ws.module(args.n)
    j, k = _parse_slots(args.slots, n.parent.n)
    policy = _parse_policy(n.parent, args.gamma_policy, args.filler_policy)
    r = les_check(c, n, args.depth, args.side, j, k, policy)
    results = {
        "nodes": {lab: _factors(g) for lab, g in zip(r.labels, r.groups)},
        "exact_at": r.exact_at,
        "deltas_zero": r.deltas_zero,
        "short_sequences_exact": r.ses_ok,
        "completion_exact": r.completion_exact,
        "note": r.note,
    }
    return rep.emit(results, r.all_exact, ws)


def cmd_yoneda(ws: Workspace, args, rep: Reporter) -> int:
    s = ws.semiring(args.semiring)
    m = ws.module(args.m)
    j, k = _parse_slots(args.slots, s.n)
    policy = _parse_policy(s, args.gamma_policy, args.filler_policy)
    ext = ExtSetup(s, m, m, args.depth + 2, j, k, policy)
    ident = ext.identity_cocycle()
    table = {}
    ok = True
    degrees = {p: ext.cocycles(p) for p in range(args.depth + 1)}
    for p, cps in degrees.items():
        for q, cqs in degrees.items():
            if p + q > args.depth:
                continue
            for cf in cps:
                for cg in cqs:
                    out = yoneda_compose(ext, p, cf, ext, q, cg, ext)
                    key = f"{p}:{list(cf)} . {q}:{list(cg)}"
                    table[key] = list(ext.class_of(p + q, out))
    for p, cps in degrees.items():
        for c in cps:
            left = yoneda_compose(ext, 0, ident, ext, p, c, ext)
            right = yoneda_compose(ext, p, c, ext, 0, ident, ext)
            ok = ok and ext.classes_equal(p, left, c) \
                and ext.classes_equal(p, right, c)
    results = {"identity": list(ident), "products": table, "unital": ok}
    return rep.emit(results, ok, ws)


def cmd_kunneth(ws: Workspace, args, rep: Reporter) -> int:
    s = ws.semiring(args.semiring)
    m, n, l = ws.module(args.m), ws.module(args.n), ws.module(args.l)
    j, k = _parse_slots(args.slots, s.n)
    policy = _parse_policy(s, args.gamma_policy, args.filler_policy)
    r = kunneth_check(s, m, n, l, args.depth, j, k, policy)
    results = {
        "flat_certified": r.flat_certified,
        "identification": ("checked" if r.flat_certified else "consistency only"),
        "diagonal_orders_first": r.diag_first,
        "diagonal_orders_second": r.diag_second,
        "stable_from": [r.stable_first, r.stable_second],
        "page_law": [r.law_first, r.law_second],
        "e2_matches_direct": r.e2_matches_direct,
        "consistent": r.consistent,
    }
    if args.emit_pages:
        results["e2_first"] = {f"{p},{q}": list(v)
                               for (p, q), v in sorted(r.e2_first.items())}
        results["e2_second"] = {f"{p},{q}": list(v)
                                for (p, q), v in sorted(r.e2_second.items())}
        results["direct"] = {f"{p},{q}": list(v)
                             for (p, q), v in sorted(r.direct_grid.items())}
    return rep.emit(results, r.consistent, ws)


def cmd_basechange(ws: Workspace, args, rep: Reporter) -> int:
    f = ws.morphism(args.morphism)
    m, n = ws.module(args.m), ws.module(args.n)
    j, k = _parse_slots(args.slots, f.source.n)
    r = base_change_check(f, m, n, args.depth, j, k)
    results = {
        "flat": r.flat,
        "ext_source_extended": [list(x) for x in r.ext_left],
        "ext_target": [list(x) for x in r.ext_right],
        "tor_target": [list(x) for x in r.tor_left],
        "tor_source_restricted": [list(x) for x in r.tor_right],
        "ext_match": r.ext_match,
        "tor_match": r.tor_match,
        "consistent": r.consistent,
    }
    return rep.emit(results, r.consistent, ws)


def cmd_oracle(ws: Workspace, args, rep: Reporter) -> int:
    results = {}
    ok = True
    targets = ([args.target] if args.target != "all" else
               ["axioms", "ideals", "spectrum", "hom", "tensor", "homology"])
    for target in targets:
        block = {}
        if target == "axioms":
            for name in sorted(ws.semirings):
                s = ws.semirings[name]
                eng = validate_semiring(s).ok
                orc = not oracle_mod.naive_axiom_failures(s)
                block[name] = {"engine": eng, "oracle": orc, "agree": eng == orc}
                ok = ok and eng == orc
        elif target == "ideals":
            for name in sorted(ws.semirings):
                s = ws.semirings[name]
                eng = sorted(i.bitmask for i in all_ideals(s))
                orc = oracle_mod.subset_scan_ideals(s)
                block[name] = {"agree": eng == orc, "count": len(eng)}
                ok = ok and eng == orc
        elif target == "spectrum":
            for name in sorted(ws.semirings):
                s = ws.semirings[name]
                eng = sorted(p.bitmask for p in spectrum(s).primes)
                orc = oracle_mod.subset_scan_primes(s)
                block[name] = {"agree": eng == orc, "primes": eng}
                ok = ok and eng == orc
        elif target == "hom":
            for m_name in sorted(ws.modules):
                for n_name in sorted(ws.modules):
                    m, n = ws.modules[m_name], ws.modules[n_name]
                    if m.parent != n.parent or \
                            n.M.size ** m.M.size > oracle_mod.ORACLE_MAP_BOUND:
                        continue
                    eng = sorted(hom_gamma(m, n).maps)
                    orc = sorted(oracle_mod.all_maps_hom(m, n))
                    key = f"{m_name}->{n_name}"
                    block[key] = {"agree": eng == orc, "count": len(eng)}
                    ok = ok and eng == orc
        elif target == "tensor":
            for m_name in sorted(ws.modules):
                for n_name in sorted(ws.modules):
                    m, n = ws.modules[m_name], ws.modules[n_name]
                    if m.parent != n.parent:
                        continue
                    try:
                        orc = oracle_mod.tensor_class_count(m, n, 2 % m.parent.n, 0)
                    except BoundExceeded:
                        continue
                    eng = tensor_positional(m, n, 2 % m.parent.n, 0).module.M.size
                    key = f"{m_name}(x){n_name}"
                    block[key] = {"agree": eng == orc, "size": eng}
                    ok = ok and eng == orc
        elif target == "homology":
            for name in sorted(ws.semirings):
                s = ws.semirings[name]
                from .modules import regular_bimodule
                bar = bar_complex(s, regular_bimodule(s), 2 % s.n, 0, depth=3)
                from .homology import homology
                hs = homology(bar.chain)
                agree = True
                for r in range(3):
                    orc = oracle_mod.homology_orders_bruteforce(bar.chain, r)
                    agree = agree and hs[r].invariant_factors() == orc
                block[name] = {"agree": agree}
                ok = ok and agree
        results[target] = block
    return rep.emit(results, ok, ws)


# ---------------------------------------------------------------------------
# Argument wiring
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="ngamma",
        description="exact computations over finite n-ary parameterized semirings")
    top.add_argument("-w", "--workspace", action="append", metavar="FILE",
                     help="workspace file (repeatable); bundled examples by default")
    top.add_argument("--no-bundled", action="store_true",
                     help="do not fall back to the bundled workspace")
    top.add_argument("--format", choices=("text", "structured"), default="text")
    top.add_argument("--bound", type=int, default=16,
                     help="carrier size bound for subset enumerations")
    sub = top.add_subparsers(dest="cmd", required=True)

    sub.add_parser("validate", help="validate everything in the workspace")

    p = sub.add_parser("ideals", help="list ideals or build a quotient")
    p.add_argument("action", choices=("list", "quotient"))
    p.add_argument("semiring")
    p.add_argument("--ideal", type=int, default=1,
                   help="ideal as a bitmask over element indices")

    p = sub.add_parser("spectrum", help="prime ideals and closed sets")
    p.add_argument("semiring")

    p = sub.add_parser("mod", help="module-level operations")
    p.add_argument("action", choices=("validate", "hom", "tensor", "cofree"))
    p.add_argument("names", nargs="+")
    p.add_argument("--slots", default=None,
                   help="slot pair j,k; defaults to last-against-first")

    p = sub.add_parser("complete", help="group completion of a module")
    p.add_argument("module")

    for which in ("ext", "tor"):
        p = sub.add_parser(which, help=f"derived {which} groups via the bar tower")
        p.add_argument("semiring")
        p.add_argument("m")
        p.add_argument("n")
        p.add_argument("--slots", default=None)
        p.add_argument("--depth", type=int, default=2)
        p.add_argument("--emit-matrices", action="store_true")
        p.add_argument("--gamma-policy", default="sum")
        p.add_argument("--filler-policy", default=None)

    p = sub.add_parser("balance", help="compare the two derived Hom routes")
    p.add_argument("semiring")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--slots", default=None)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--gamma-policy", default="sum")
    p.add_argument("--filler-policy", default=None)

    p = sub.add_parser("les", help="long exact sequence of a conflation")
    p.add_argument("conflation")
    p.add_argument("n")
    p.add_argument("--side", choices=("hom", "tor"), default="hom")
    p.add_argument("--slots", default=None)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--gamma-policy", default="sum")
    p.add_argument("--filler-policy", default=None)

    p = sub.add_parser("yoneda", help="composition table of extension classes")
    p.add_argument("semiring")
    p.add_argument("m")
    p.add_argument("--slots", default=None)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--gamma-policy", default="sum")
    p.add_argument("--filler-policy", default=None)

    p = sub.add_parser("kunneth", help="double-complex page consistency")
    p.add_argument("semiring")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("l")
    p.add_argument("--slots", default=None)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--emit-pages", action="store_true")
    p.add_argument("--gamma-policy", default="sum")
    p.add_argument("--filler-policy", default=None)

    p = sub.add_parser("basechange", help="derived comparisons along a morphism")
    p.add_argument("morphism")
    p.add_argument("m")
    p.add_argument("n")
    p.add_argument("--slots", default=None)
    p.add_argument("--depth", type=int, default=1)

    p = sub.add_parser("oracle", help="brute-force recomputation diff")
    p.add_argument("target",
                   choices=("axioms", "ideals", "spectrum", "hom", "tensor",
                            "homology", "all"))
    return top


HANDLERS = {
    "validate": cmd_validate,
    "ideals": cmd_ideals,
    "spectrum": cmd_spectrum,
    "mod": cmd_mod,
    "complete": cmd_complete,
    "balance": cmd_balance,
    "les": cmd_les,
    "yoneda": cmd_yoneda,
    "kunneth": cmd_kunneth,
    "basechange": cmd_basechange,
    "oracle": cmd_oracle,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return ERROR if e.code not in (0, None) else 0
    args.command_echo = argv
    rep = Reporter(args)
    try:
        ws = _load(args)
        if args.cmd in ("ext", "tor"):
            return cmd_ext_tor(ws, args, rep, args.cmd)
        return HANDLERS[args.cmd](ws, args, rep)
    except (WorkspaceError, StructuralError, BoundExceeded, RegularityError,
            SoundnessError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return ERROR


if __name__ == "__main__":
    raise SystemExit(main())
