"""Command-line front end: ``poset-forge <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import io
from .complex import glue_facets
from .constructions import OutOfScope, build_g, parallel_graph, synthesize, xkd
from .graph import ColoredMultigraph, to_dot
from .homology import FieldSpec, boundary_matrices, reduced_betti
from .invariants import f_vector, h_from_f, h_prime, ns_check, reduced_euler, ridge_profile
from .shelling import cw_shelling_steps, is_cw_shelling, is_graphical_shelling
from .verify import VerificationReport, verify_complex, verify_xkd


class UsageError(Exception):
    pass


def _csv(x) -> str:
    return ",".join(str(v) for v in x)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _fields(text: str) -> list[FieldSpec]:
    try:
        return [FieldSpec.parse(t) for t in text.split(",")]
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(lines: dict, fmt: str) -> str:
    if fmt == "records":
        return "".join(f"{k}={v}\n" for k, v in lines.items())
    width = max(len(k) for k in lines)
    return "".join(f"{k:<{width}}  {v}\n" for k, v in lines.items())


def _xkd_graph(k: int, d: int) -> ColoredMultigraph | None:
    if k == 0:
        return None
    return parallel_graph(d) if k == d - 1 else build_g(k, d)


# commands ---------------------------------------------------------------

def cmd_generate(args) -> int:
    X = xkd(args.k, args.d)
    io.write(X, args.out)
    G = _xkd_graph(args.k, args.d)
    if G is not None and args.graph_out:
        io.write(G, args.graph_out)
    if G is not None and args.dot:
        Path(args.dot).write_text(to_dot(G, name=f"G_{args.k}_{args.d}"))
    if G is None and (args.graph_out or args.dot):
        print("note: X(0,d) is a disjoint union and has no connected graph encoding", file=sys.stderr)
    print(f"X({args.k},{args.d}): {X.n_facets} facets -> {args.out}")
    return 0


def cmd_invariants(args) -> int:
    P = io.read_complex(args.file)
    F = FieldSpec.parse(args.field)
    f = f_vector(P)
    h = h_from_f(f)
    b = reduced_betti(P, F)
    hp = h_prime(h, b)
    ns = ns_check(hp, b)
    prof = ridge_profile(P)
    out = {"d": P.d, "f": _csv(f), "h": _csv(h), f"betti[{F}]": _csv(b), f"h_prime[{F}]": _csv(hp),
           "reduced_euler": reduced_euler(f),
           "ns_slack": _csv(f"{j}:{s}" for j, s in ns.slacks.items()),
           "ns": "pass" if ns.ok else "FAIL",
           "ridge_histogram": _csv(f"{m}:{c}" for m, c in prof.histogram.items())}
    sys.stdout.write(_emit(out, args.format))
    if args.figures:
        from .plotting import h_prime_figure, ridge_figure

        Path(args.figures).mkdir(parents=True, exist_ok=True)
        stem = Path(args.file).stem
        h_prime_figure(hp, b, Path(args.figures) / f"{stem}_h_prime.png", stem)
        ridge_figure(prof.histogram, Path(args.figures) / f"{stem}_ridges.png", stem)
    return 0


def cmd_homology(args) -> int:
    path = args.file or args.input
    if not path:
        raise UsageError("homology needs an input file")
    P = io.read_complex(path)
    F = FieldSpec.parse(args.field)
    b = reduced_betti(P, F)
    sys.stdout.write(_emit({"field": F, "betti": _csv(b)}, args.format))
    if args.matrices:
        cc = boundary_matrices(P)
        for r, B in enumerate(cc.boundaries):
            print(f"# boundary {r} {B.nrows}x{B.ncols}")
            for i, j, v in B.triplets():
                print(i, j, v)
    return 0


def _certificate_text(cert, fmt: str) -> str:
    lines = {"order": _csv(cert.order)}
    for v, R in zip(cert.order, cert.restrictions):
        lines[f"R[{v}]"] = "{" + _csv(sorted(R)) + "}"
    lines["h"] = _csv([sum(1 for R in cert.restrictions if len(R) == j) for j in range(cert.rank + 1)])
    return _emit(lines, fmt)


def cmd_shelling(args) -> int:
    order = [t for t in args.order.split(",") if t]
    if args.mode == "verify":
        obj = io.read(args.graph)
        if not isinstance(obj, ColoredMultigraph):
            raise UsageError("--graph must name a graph file")
        colors = _ints(args.colors) if args.colors else None
        cert = is_graphical_shelling(obj, order, colors=colors, oracle=True)
        if cert is None:
            print("graphical shelling: FAIL")
            return 1
        sys.stdout.write(_certificate_text(cert, args.format))
        return 0
    P = io.read_complex(args.complex)
    steps = cw_shelling_steps(P, order)
    for n, s in enumerate(steps, start=1):
        ridges = ";".join("missing " + _csv(r) for r in s["shared_ridges"])
        print(f"step={n}\tfacet={s['facet']}\tok={'yes' if s['ok'] else 'no'}\tshared={ridges}")
    ok = is_cw_shelling(P, order)
    print(f"cw_shelling={'pass' if ok else 'FAIL'}")
    return 0 if ok else 1


def _print_report(rep: VerificationReport, fmt: str) -> None:
    sys.stdout.write(rep.records() if fmt == "records" else rep.human())


def cmd_verify(args) -> int:
    fields = _fields(args.field)
    if args.what == "xkd":
        if args.k is None or args.d is None:
            raise UsageError("verify xkd needs --k and --d")
        rep = verify_xkd(args.k, args.d, fields=fields, buchsbaum=not args.no_buchsbaum)
        if args.figures:
            _xkd_figures(args.k, args.d, args.figures)
    else:
        if not args.file:
            raise UsageError("verify complex needs a file")
        rep = verify_complex(io.read_complex(args.file), Path(args.file).name, fields=fields)
    _print_report(rep, args.format)
    return 0 if rep.passed else 1


def _xkd_figures(k: int, d: int, folder) -> None:
    from .plotting import h_prime_figure, ridge_figure

    folder = Path(folder)
    folder.mkdir(parents=True, exist_ok=True)
    X = xkd(k, d)
    b = reduced_betti(X)
    hp = h_prime(h_from_f(f_vector(X)), b)
    h_prime_figure(hp, b, folder / f"X_{k}_{d}_h_prime.png", f"X({k},{d})")
    ridge_figure(ridge_profile(X).histogram, folder / f"X_{k}_{d}_ridges.png", f"X({k},{d})")


def cmd_glue(args) -> int:
    P1, P2 = io.read_complex(args.first), io.read_complex(args.second)
    try:
        Q = glue_facets(P1, args.facet1, P2, args.facet2)
    except KeyError as exc:
        raise UsageError(str(exc)) from None
    io.write(Q, args.out)
    print(f"glued complex: {Q.n_facets} facets -> {args.out}")
    return 0


def cmd_synthesize(args) -> int:
    betti = [0] + _ints(args.betti)
    if len(betti) != args.d + 1:
        raise UsageError(f"--betti needs {args.d} entries (degrees 0..{args.d - 1})")
    target = _ints(args.h_prime) if args.h_prime else None
    try:
        Q = synthesize(betti, args.d, h_prime=target)
    except OutOfScope as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    io.write(Q, args.out)
    b = reduced_betti(Q)
    print(f"betti={_csv(b)}\th_prime={_csv(h_prime(h_from_f(f_vector(Q)), b))}\tfacets={Q.n_facets}")
    return 0


def _sweep_cell(job):
    k, d, fields, buchsbaum = job
    return verify_xkd(k, d, fields=[FieldSpec(p) for p in fields], buchsbaum=buchsbaum)


def cmd_sweep(args) -> int:
    fields = _fields(args.field)
    kmin = 0 if args.with_k0 else 1
    jobs = [(k, d, tuple(F.p for F in fields), d <= args.buchsbaum_max_d)
            for d in range(2, args.max_d + 1) for k in range(kmin, d)]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_sweep_cell, jobs))
    else:
        reports = [_sweep_cell(j) for j in jobs]
    if args.glue_samples:
        reports.append(_glue_samples(args.glue_samples, args.seed, fields))
    for rep in reports:
        _print_report(rep, args.format)
    if args.figures:
        from .plotting import sweep_figure

        Path(args.figures).mkdir(parents=True, exist_ok=True)
        sweep_figure({(j[0], j[1]): r.passed for j, r in zip(jobs, reports)},
                     Path(args.figures) / "sweep.png")
    ok = all(r.passed for r in reports)
    print(f"sweep: {sum(r.passed for r in reports)}/{len(reports)} reports pass")
    return 0 if ok else 1


def _glue_samples(n: int, seed: int, fields) -> VerificationReport:
    """Random facet gluings of X(k, d) pairs; Betti numbers and h' must add."""
    rng = random.Random(seed)
    rep = VerificationReport(f"glue-samples(seed={seed})")
    for t in range(n):
        d = rng.randint(2, 5)
        k1, k2 = rng.randrange(d), rng.randrange(d)
        P1, P2 = xkd(k1, d), xkd(k2, d)
        f1, f2 = rng.choice(P1.facets), rng.choice(P2.facets)
        Q = glue_facets(P1, f1, P2, f2)
        for F in fields:
            bs = [reduced_betti(P, F) for P in (P1, P2, Q)]
            hs = [h_prime(h_from_f(f_vector(P)), b) for P, b in zip((P1, P2, Q), bs)]
            ok = all(bs[2][i] == bs[0][i] + bs[1][i] for i in range(1, d + 1)) and \
                all(hs[2][j] == hs[0][j] + hs[1][j] for j in range(1, d + 1))
            rep.add(f"glue[{t}:X({k1},{d})+X({k2},{d})][{F}]", "Betti numbers and h' add under gluing",
                    ok, (tuple(bs[2]), tuple(hs[2])))
    return rep


# parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="poset-forge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=["human", "records"], default="human")

    g = sub.add_parser("generate", help="write X(k,d) and its graph")
    g.add_argument("what", choices=["xkd"])
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--d", type=int, required=True)
    g.add_argument("--out", required=True)
    g.add_argument("--graph-out")
    g.add_argument("--dot")
    g.set_defaults(func=cmd_generate)

    i = sub.add_parser("invariants", parents=[fmt], help="f, h, h', Betti numbers and the h' bound")
    i.add_argument("file")
    i.add_argument("--field", default="q")
    i.add_argument("--figures", help="directory for h' and ridge figures")
    i.set_defaults(func=cmd_invariants)

    h = sub.add_parser("homology", parents=[fmt], help="reduced Betti numbers")
    h.add_argument("file", nargs="?")
    h.add_argument("--in", dest="input")
    h.add_argument("--field", default="q")
    h.add_argument("--matrices", action="store_true", help="print boundary matrices as triplets")
    h.set_defaults(func=cmd_homology)

    s = sub.add_parser("shelling", parents=[fmt], help="check a graphical or CW shelling")
    s.add_argument("mode", choices=["verify", "verify-cw"])
    s.add_argument("--graph")
    s.add_argument("--complex")
    s.add_argument("--order", required=True)
    s.add_argument("--colors", help="restrict the graph to these colors")
    s.set_defaults(func=cmd_shelling)

    v = sub.add_parser("verify", parents=[fmt], help="claim-by-claim report")
    v.add_argument("what", choices=["xkd", "complex"])
    v.add_argument("file", nargs="?")
    v.add_argument("--k", type=int)
    v.add_argument("--d", type=int)
    v.add_argument("--field", default="q,f2")
    v.add_argument("--no-buchsbaum", action="store_true")
    v.add_argument("--figures")
    v.set_defaults(func=cmd_verify)

    gl = sub.add_parser("glue", help="identify a facet of one complex with a facet of another")
    gl.add_argument("first")
    gl.add_argument("facet1")
    gl.add_argument("second")
    gl.add_argument("facet2")
    gl.add_argument("--out", required=True)
    gl.set_defaults(func=cmd_glue)

    sy = sub.add_parser("synthesize", help="Buchsbaum complex with given Betti numbers and minimal h'")
    sy.add_argument("--d", type=int, required=True)
    sy.add_argument("--betti", required=True, help="b0,b1,...,b(d-1)")
    sy.add_argument("--h-prime", help="optional target h'_0,...,h'_d")
    sy.add_argument("--out", required=True)
    sy.set_defaults(func=cmd_synthesize)

    sw = sub.add_parser("sweep", parents=[fmt], help="verify X(k,d) for all d up to --max-d")
    sw.add_argument("--max-d", type=int, required=True)
    sw.add_argument("--field", default="q,f2")
    sw.add_argument("--with-k0", action="store_true")
    sw.add_argument("--buchsbaum-max-d", type=int, default=6)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--glue-samples", type=int, default=0)
    sw.add_argument("--seed", type=int, default=0)
    sw.add_argument("--figures")
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, io.FormatError, FileNotFoundError, IsADirectoryError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv=None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
