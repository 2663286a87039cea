"""Command-line interface: ``arrkit <area> <command> [options]``.

Exit codes: 0 success, 1 domain error, 2 usage error, 3 internal invariant
violation (including a failed ``verify`` check)."""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Callable, Sequence

from . import flag, graphs, groups, hyper, toric
from .exact import IntPolynomial, InvariantError


class VerifyFailure(InvariantError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def _load(path: str):
    with open(path) as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _graph_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--shape", type=_ints, help="complete multipartite graph, e.g. 2,2,2")
    g.add_argument("--wheel", type=int, metavar="R", help="wheel graph on R+1 vertices")
    g.add_argument("--complete", type=int, metavar="N")
    g.add_argument("--cycle", type=int, metavar="N")
    g.add_argument("--path", type=int, metavar="N")
    g.add_argument("--edgeless", type=int, metavar="N")
    g.add_argument("--input", metavar="PATH", help="graph JSON file")


def _graph_from(args) -> graphs.Graph:
    if args.shape:
        return graphs.multipartite_graph(args.shape)
    if args.wheel is not None:
        return graphs.wheel_graph(args.wheel)
    if args.complete is not None:
        return graphs.complete_graph(args.complete)
    if args.cycle is not None:
        return graphs.cycle_graph(args.cycle)
    if args.path is not None:
        return graphs.path_graph(args.path)
    if args.edgeless is not None:
        return graphs.edgeless_graph(args.edgeless)
    if args.input:
        return graphs.Graph.from_json(_load(args.input))
    raise ValueError("no graph given (use --shape, --wheel, ..., or --input)")


def _need_shape(args) -> graphs.MultipartiteShape:
    if not args.shape:
        raise ValueError("--shape is required")
    return graphs.MultipartiteShape(args.shape)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    p.add_argument("--json", action="store_true", help="JSON output (the default)")


# ---------------------------------------------------------------------------
# Handlers: each returns the text to emit
# ---------------------------------------------------------------------------


def cmd_graph(args) -> str:
    g = _graph_from(args)
    if args.command == "info":
        return g.to_dot() if args.dot else dumps(g.to_json())
    if args.command == "classify":
        return dumps(graphs.classify_bb_quasiprojective(g).to_json())
    if args.command == "cliques":
        return dumps({"c": graphs.clique_counts(g, args.pmax)})
    if args.command == "chordal":
        return dumps(
            {"chordal": graphs.is_chordal(g), "nonhypersolvable": graphs.nonhypersolvable_flag(g)}
        )
    raise AssertionError(args.command)


def cmd_flag(args) -> str:
    g = _graph_from(args)
    if args.command == "betti":
        bv = flag.simplicial_betti(flag.flag_complex(g), args.mod)
        return dumps(bv.to_json())
    if args.command == "finiteness":
        primes = list(args.primes or ())
        return dumps(flag.finiteness_report(g, args.rmax, primes=primes).to_json())
    raise AssertionError(args.command)


def _arrangement_from(args) -> hyper.HyperplaneArrangement:
    if args.input:
        return hyper.HyperplaneArrangement.from_json(_load(args.input))
    return hyper.bb_arrangement(_need_shape(args), special=args.special)


def cmd_arr(args) -> str:
    if args.command == "build-bb":
        return dumps(hyper.bb_arrangement(_need_shape(args), special=args.special).to_json())
    if args.command == "graphic":
        return dumps(hyper.graphic_arrangement(_graph_from(args)).to_json())
    a = _arrangement_from(args)
    if args.command == "charpoly":
        p = hyper.intersection_poset(a)
        if args.dot:
            return p.to_dot()
        if args.poset:
            return dumps(p.to_json())
        return dumps(hyper.char_poly(p).to_json())
    if args.command == "poincare":
        return dumps(hyper.poincare(a).to_json())
    if args.command == "section":
        return dumps(hyper.generic_section_combinatorics(a).to_json())
    raise AssertionError(args.command)


def _family_from(args) -> toric.ParamToricFamily:
    if args.input:
        return toric.ParamToricFamily.from_json(_load(args.input))
    shape = _need_shape(args)
    weights = args.weights or (1,) * len(shape.parts)
    return toric.ParamToricFamily(
        shape, weights, args.special, toric.ROOTS if args.roots else toric.GENERIC
    )


def cmd_toric(args) -> str:
    if args.command == "compare":
        return dumps(toric.hyperplane_toric_compare(_graph_from(args)).to_json())
    f = _family_from(args)
    if args.command == "bifurcation":
        return dumps(toric.bifurcation_set(f).to_json())
    if args.command == "family":
        if args.poincare:
            return dumps(toric.toric_poincare(toric.family_charpoly(f), f.r).to_json())
        if args.charpoly:
            return dumps(toric.family_charpoly(f).to_json())
        if args.betti:
            return dumps(toric.family_betti(f).to_json())
        if args.brute:
            p = toric.brute_force_family_poset(f)
            return dumps(hyper.char_poly(p).to_json())
        return dumps(f.to_json())
    raise AssertionError(args.command)


def _presentation_text(args, p: groups.GroupPresentation) -> str:
    if args.simplify:
        p = groups.tietze_simplify(p)
    return p.to_gap() if args.gap else dumps(p.to_json())


def _kernel_from(args, preset: str) -> groups.KernelPresentation:
    if preset == "bb":
        return groups.bb_presentation(_need_shape(args))
    if preset == "artin-kernel":
        shape = _need_shape(args)
        weights = args.weights or (1,) * len(shape.parts)
        return groups.artin_kernel_presentation(
            groups.CharacterData(shape, weights), trimmed=args.trimmed
        )
    if preset == "rs-window":
        return groups.rs_window_presentation(_graph_from(args), args.weights, args.window)
    raise ValueError(f"unknown preset {preset!r}")


def cmd_group(args) -> str:
    if args.command == "raag":
        return _presentation_text(args, groups.raag_presentation(_graph_from(args)))
    if args.command in ("bb", "artin-kernel", "rs-window"):
        return _presentation_text(args, _kernel_from(args, args.command).presentation)
    if args.command == "abelianize":
        if args.input:
            p = groups.GroupPresentation.from_json(_load(args.input))
        elif args.preset == "raag":
            p = groups.raag_presentation(_graph_from(args))
        elif args.preset:
            p = _kernel_from(args, args.preset).presentation
        else:
            raise ValueError("give --input or --preset")
        if args.simplify:
            p = groups.tietze_simplify(p)
        return dumps(groups.abelianization(p).to_json())
    if args.command == "betti":
        shape = _need_shape(args)
        pa, pn = groups.truncated_poincare(shape)
        return dumps(
            {
                "betti": [groups.betti_bb(shape, k) for k in range(shape.r + 1)],
                "P_A": pa.to_json(),
                "P_N": pn.to_json(),
            }
        )
    raise AssertionError(args.command)


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def verify_checks(shape: graphs.MultipartiteShape, weights, seed: int) -> list[tuple[str, bool, str]]:
    """Cross-identities for one shape and weight vector; (name, ok, detail)."""
    out: list[tuple[str, bool, str]] = []

    def check(name: str, fn: Callable[[], tuple[bool, str]]):
        try:
            ok, detail = fn()
        except (InvariantError, ValueError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append((name, bool(ok), detail))

    r = shape.r
    ones = (1,) * len(shape.parts)

    def flag_wedge():
        got = flag.simplicial_betti(flag.flag_complex(graphs.multipartite_graph(shape))).betti
        want = flag.wedge_betti(shape) if min(shape.parts) >= 2 else got
        return got == want, f"betti {list(got)}"

    check("flag-wedge", flag_wedge)

    if r >= 1:

        def hyper_vs_toric():
            ph = hyper.poincare(hyper.bb_arrangement(shape))
            pt = toric.toric_poincare(toric.family_charpoly(toric.ParamToricFamily(shape, ones)), r)
            return ph.coeffs == pt.coeffs, f"{ph}"

        check("hyperplane-poincare=toric-poincare", hyper_vs_toric)

        def transfer():
            ph = hyper.poincare(hyper.bb_arrangement(shape))
            pa, _ = groups.truncated_poincare(shape)
            lhs = (ph * IntPolynomial((1, 1), "t")).truncate(r + 1)
            return lhs == pa, f"(1+t)P = {lhs}"

        check("homology-transfer", transfer)

    def toric_family():
        f = toric.ParamToricFamily(shape, weights)
        closed = toric.family_charpoly(f)
        msg = f"chi = {closed}"
        if shape.total <= 10:
            brute = hyper.char_poly(toric.brute_force_family_poset(f))
            if brute != closed:
                return False, f"closed {closed} != brute {brute}"
            msg += " (brute force agrees)"
        toric.family_betti(f)
        return True, msg

    check("toric-closed-form", toric_family)

    def bifurcation():
        rep = toric.bifurcation_set(toric.ParamToricFamily(shape, weights))
        return rep.m_prime == rep.m, f"m = {rep.m}, m' = {rep.m_prime}"

    check("bifurcation-generic", bifurcation)

    if r >= 1 and min(shape.parts) >= 2:

        def special_drop():
            js = (1,) * len(shape.parts)
            gen = toric.family_betti(toric.ParamToricFamily(shape, weights)).betti
            spe = toric.family_betti(toric.ParamToricFamily(shape, weights, js)).betti
            ok = gen[:r] == spe[:r] and gen[r] > spe[r]
            return ok, f"generic {list(gen)}, special {list(spe)}"

        check("special-fiber-drop", special_drop)

    if r >= 2 and min(shape.parts) >= 2:

        def bb_pres():
            kp = groups.bb_presentation(shape)
            ab = groups.abelianization(kp.presentation)
            bad = kp.unsound_relators()
            ok = not bad and ab.rank == groups.b1_closed(shape) and not ab.torsion
            return ok, f"rank {ab.rank}, unsound {bad}"

        check("bb-presentation", bb_pres)

        def artin():
            c = groups.CharacterData(shape, weights)
            kp = groups.artin_kernel_presentation(c)
            ab = groups.abelianization(kp.presentation)
            want = r + sum(e * (n - 1) for e, n in zip(c.e, shape.parts))
            bad = kp.unsound_relators()
            return not bad and ab.rank == want and not ab.torsion, f"rank {ab.rank}, expected {want}"

        check("artin-kernel-presentation", artin)

        def betti():
            _, pn = groups.truncated_poincare(shape)
            ks = [groups.betti_bb(shape, k) for k in range(r + 1)]
            ok = ks == [pn[k] for k in range(r + 1)]
            ok = ok and ks[1] == groups.b1_closed(shape) and ks[2] == groups.b2_closed(shape)
            return ok, f"betti {ks}"

        check("betti-consistency", betti)

    rng = random.Random(seed)
    graph = graphs.multipartite_graph(shape)

    def chromatic():
        if graph.vertex_count > 7:
            return True, "skipped (more than 7 vertices)"
        edges = [e for e in graph.edges if rng.random() < 0.7]
        g = graphs.Graph(graph.vertex_count, tuple(edges))
        a = hyper.characteristic_polynomial(hyper.graphic_arrangement(g))
        return a == hyper.chromatic_poly(g), f"random subgraph with {len(edges)} edges"

    check("chromatic-oracle", chromatic)
    return out


def cmd_verify(args) -> str:
    shape = _need_shape(args)
    weights = args.weights or (1,) * len(shape.parts)
    checks = verify_checks(shape, weights, args.seed)
    payload = {
        "shape": list(shape.parts),
        "weights": list(weights),
        "seed": args.seed,
        "checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in checks],
        "all_pass": all(ok for _, ok, _ in checks),
    }
    text = dumps(payload)
    if not payload["all_pass"]:
        raise VerifyFailure(text)
    return text


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="arrkit", description=__doc__.splitlines()[0])
    areas = parser.add_subparsers(dest="area", required=True)

    pg = areas.add_parser("graph", help="graphs and the quasi-projectivity test")
    sub = pg.add_subparsers(dest="command", required=True)
    for name in ("info", "classify", "cliques", "chordal"):
        sp = sub.add_parser(name)
        _graph_args(sp)
        _common(sp)
        sp.add_argument("--dot", action="store_true")
        sp.add_argument("--pmax", type=int, default=3)
    pg.set_defaults(func=cmd_graph)

    pf = areas.add_parser("flag", help="flag complexes")
    sub = pf.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("betti")
    _graph_args(sp)
    _common(sp)
    sp.add_argument("--mod", type=int, default=0, metavar="P", help="prime field (0 = Q)")
    sp = sub.add_parser("finiteness")
    _graph_args(sp)
    _common(sp)
    sp.add_argument("--rmax", type=int, default=3)
    sp.add_argument("--primes", type=_ints)
    pf.set_defaults(func=cmd_flag)

    pa = areas.add_parser("arr", help="hyperplane arrangements")
    sub = pa.add_subparsers(dest="command", required=True)
    for name in ("build-bb", "graphic", "charpoly", "poincare", "section"):
        sp = sub.add_parser(name)
        _graph_args(sp)
        _common(sp)
        sp.add_argument("--special", type=_ints)
        sp.add_argument("--dot", action="store_true")
        sp.add_argument("--poset", action="store_true", help="emit the intersection poset")
    pa.set_defaults(func=cmd_arr)

    pt = areas.add_parser("toric", help="toric arrangements")
    sub = pt.add_subparsers(dest="command", required=True)
    for name in ("family", "bifurcation", "compare"):
        sp = sub.add_parser(name)
        _graph_args(sp)
        _common(sp)
        sp.add_argument("--weights", type=_ints)
        sp.add_argument("--special", type=_ints)
        sp.add_argument("--roots", action="store_true", help="roots-of-unity alpha values")
        for fl in ("poincare", "charpoly", "betti", "brute"):
            sp.add_argument(f"--{fl}", action="store_true")
    pt.set_defaults(func=cmd_toric)

    pr = areas.add_parser("group", help="group presentations")
    sub = pr.add_subparsers(dest="command", required=True)
    for name in ("raag", "bb", "artin-kernel", "rs-window", "abelianize", "betti"):
        sp = sub.add_parser(name)
        _graph_args(sp)
        _common(sp)
        sp.add_argument("--weights", type=_ints)
        sp.add_argument("--window", type=int, default=2)
        sp.add_argument("--trimmed", action="store_true")
        sp.add_argument("--simplify", action="store_true", help="apply Tietze moves first")
        sp.add_argument("--gap", action="store_true", help="GAP FpGroup text")
        sp.add_argument(
            "--preset", choices=("raag", "bb", "artin-kernel", "rs-window"), help="for abelianize"
        )
    pr.set_defaults(func=cmd_group)

    pv = areas.add_parser("verify", help="run the cross-identities for one shape")
    pv.add_argument("--shape", type=_ints, required=True)
    pv.add_argument("--weights", type=_ints)
    pv.add_argument("--seed", type=int, default=0)
    _common(pv)
    pv.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = args.func(args)
    except VerifyFailure as exc:
        stdout.write(str(exc))
        stderr.write("verify: at least one check failed\n")
        return 3
    except InvariantError as exc:
        stderr.write(f"internal invariant violated: {exc}\n")
        return 3
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
