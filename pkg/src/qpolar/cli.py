"""Command-line interface: analyze, qfunc, reconstruct, search, scan, make-state.

Exit codes: 0 success, 2 invalid input, 3 infeasible or ill-conditioned,
4 internal tolerance failure.  All outputs are deterministic for fixed
inputs and seed, and every report records the tolerance and seed used.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import catalog, husimi, multipole, search, stateio, stokes
from .states import as_shells

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3
EXIT_TOLERANCE = 4


class ToleranceFailure(RuntimeError):
    pass


def _parse_grid(text: str) -> tuple[int, int]:
    try:
        a, b = text.lower().split("x")
        return int(a), int(b)
    except Exception as exc:
        raise ValueError(f"--grid expects NTHETAxNPHI, e.g. 64x128; got {text!r}") from exc


def _fmt(x: float) -> str:
    return repr(float(x))


def _spectrum_csv_lines(two_s: int, spec) -> list[str]:
    lines = []
    for K in range(spec.max_rank + 1):
        w = spec.strengths[K]
        a = spec.cumulative_all[K - 1] if K >= 1 else ""
        p = spec.degrees_all[K - 1] if K >= 1 else ""
        for q in range(-K, K + 1):
            c = spec.component(K, q)
            lines.append(
                f"{two_s},{K},{q},{_fmt(c.real)},{_fmt(c.imag)},{_fmt(w)},"
                f"{_fmt(a) if a != '' else ''},{_fmt(p) if p != '' else ''}"
            )
    return lines


def _write_report_csv(path, report: multipole.PolarizationReport, *, seed=None) -> None:
    lines = ["# multipole report", f"# tol={report.tol!r}"]
    if seed is not None:
        lines.append(f"# seed={seed}")
    lines.append("two_S,K,q,re,im,W_K,A_K,P_K")
    for shell in report.shells:
        spec = shell.spectrum
        lines.append(
            f"# shell two_S={spec.spin.twice} weight={shell.weight!r} "
            f"purity={shell.purity!r} unpol_order={spec.unpol_order}"
        )
        lines.extend(_spectrum_csv_lines(spec.spin.twice, spec))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def _print_shell(shell: multipole.ShellReport) -> None:
    spec = shell.spectrum
    two_s = spec.spin.twice
    print(f"shell two_S={two_s} (S={spec.spin})  weight={shell.weight:g}  "
          f"purity={shell.purity:.12g}")
    print("  K    W_K             A_K             P_K")
    for K in range(spec.max_rank + 1):
        if K == 0:
            print(f"  {K:<4d} {spec.strengths[0]:<15.9g} {'-':<15} -")
        else:
            print(f"  {K:<4d} {spec.strengths[K]:<15.9g} "
                  f"{spec.cumulative_all[K-1]:<15.9g} {spec.degrees_all[K-1]:.9g}")
    d = two_s + 1
    print(f"  unpolarization order: {spec.unpol_order}"
          + (" (fully unpolarized)" if spec.unpol_order == two_s else ""))
    if 1 <= spec.unpol_order < two_s and shell.purity > 1.0 / d + spec.tol:
        print(f"  note: hidden polarization at K = {spec.unpol_order + 1}")


def cmd_analyze(args) -> int:
    state = stateio.load_state(args.state)
    report = multipole.analyze(state, tol=args.tol)
    print(f"analysis (tol={args.tol!r})")
    for shell in report.shells:
        _print_shell(shell)
    if len(report.shells) > 1:
        agg = ", ".join(f"A_{K+1}={v:.9g}" for K, v in enumerate(report.aggregate_cumulative))
        print(f"aggregate (weighted by P_S): {agg}")
        print(f"aggregate order: {report.aggregate_order}; block purity: {report.block_purity:.12g}")
    if args.out:
        _write_report_csv(args.out, report)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_qfunc(args) -> int:
    state = stateio.load_state(args.state)
    shells = as_shells(state)
    grid = _parse_grid(args.grid)
    multi = len(shells) > 1
    for _, sec in shells:
        qg = husimi.q_function(sec, grid)
        norm = qg.normalization()
        if not qg.coarse_warning and abs(norm - 1.0) > 1e-6:
            raise ToleranceFailure(
                f"Q normalization {norm!r} deviates beyond 1e-6 on an adequate grid"
            )
        out = args.out
        if multi:
            stem, dot, ext = args.out.rpartition(".")
            out = f"{stem}_2S{sec.spin.twice}{dot}{ext}" if dot else f"{args.out}_2S{sec.spin.twice}"
        husimi.export_qgrid(qg, out)
        flag = " (grid too coarse for the normalization check)" if qg.coarse_warning else ""
        print(f"two_S={sec.spin.twice}: grid {qg.n_theta}x{qg.n_phi}, "
              f"normalization {norm:.12g}{flag} -> {out}")
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    samples = stokes.read_moments(args.moments)
    result = stokes.moments_to_multipoles(samples, args.two_s / 2.0, args.order)
    print(f"reconstruction two_S={args.two_s} K_max={args.order}: "
          f"{result.n_samples} samples, condition number {result.condition_number:.6g}, "
          f"residual {result.residual:.3e}")
    print("  K    W_K             A_K             P_K")
    for K in range(1, args.order + 1):
        print(f"  {K:<4d} {result.strengths[K]:<15.9g} "
              f"{result.cumulative[K-1]:<15.9g} {result.degrees[K-1]:.9g}")
    if args.out:
        lines = [
            "# reconstructed multipoles",
            f"# condition_number={result.condition_number!r} residual={result.residual!r}",
            "two_S,K,q,re,im,W_K,A_K,P_K",
        ]
        for K in range(1, args.order + 1):
            for q in range(-K, K + 1):
                c = result.components[(K, q)]
                lines.append(
                    f"{args.two_s},{K},{q},{_fmt(c.real)},{_fmt(c.imag)},"
                    f"{_fmt(result.strengths[K])},{_fmt(result.cumulative[K-1])},"
                    f"{_fmt(result.degrees[K-1])}"
                )
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_search(args) -> int:
    spin = args.two_s / 2.0
    if args.cls == "pure":
        result = search.pure_anticoherent_search(
            spin, args.order, restarts=args.restarts, seed=args.seed
        )
        if result.is_anticoherent:
            print(f"pure anticoherent state found: A_{args.order} = {result.objective:.3e}")
        else:
            print(f"no pure solution; min A_{args.order} = {result.objective:.9g}")
    else:
        problem = search.SearchProblem(
            spin, args.order, constraint_class=args.cls,
            restarts=args.restarts, seed=args.seed,
        )
        result = search.max_purity_unpolarized(problem)
        if result.residual > 1e-8:
            raise ToleranceFailure(
                f"solution violates the order-{args.order} constraint: A_K = {result.residual:.3e}"
            )
        print(f"max purity ({args.cls}, order {args.order}, two_S={args.two_s}): "
              f"{result.objective:.12g}")
        print(f"constraint residual A_{args.order} = {result.residual:.3e}")
    print(f"seed={args.seed} restarts={args.restarts} digest={result.digest[:16]}")
    if args.out:
        metadata = {
            "objective": result.objective,
            "residual": result.residual,
            "constraint_class": args.cls,
            "order": args.order,
            "restarts": args.restarts,
            "seed": args.seed,
            "digest": result.digest,
        }
        stateio.save_state(result.state, args.out, metadata=metadata)
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_scan(args) -> int:
    lines = [f"# scan family={args.family} points={args.points} seed={args.seed}"]
    if args.family == "two-photon":
        rows = search.scan_two_photon_family(np.linspace(0.0, 0.5, args.points))
        lines.append("lam,purity,P_2")
        lines.extend(f"{_fmt(r.lam)},{_fmt(r.purity)},{_fmt(r.p2)}" for r in rows)
        print(f"two-photon family: {len(rows)} rows, "
              f"purity range [{min(r.purity for r in rows):.6g}, {max(r.purity for r in rows):.6g}]")
    else:
        if args.family == "three-photon-first":
            grid = [
                (l3, l4)
                for l3 in np.linspace(0.0, 1.0, args.points)
                for l4 in np.linspace(0.0, 0.5, args.points)
            ]
            rows = search.scan_three_photon_family("first-order", grid)
        else:
            rows = search.scan_three_photon_family(
                "second-order", np.linspace(1 / 6, 1 / 3, args.points)
            )
        lines.append("lam3,lam4,feasible,purity,A_1,A_2,A_3")
        for r in rows:
            if r.feasible:
                lines.append(
                    f"{_fmt(r.lam3)},{_fmt(r.lam4)},1,{_fmt(r.purity)},"
                    f"{_fmt(r.a1)},{_fmt(r.a2)},{_fmt(r.a3)}"
                )
            else:
                lines.append(f"{_fmt(r.lam3)},{_fmt(r.lam4)},0,,,,")
        kept = [r for r in rows if r.feasible]
        print(f"{args.family} family: {len(kept)} feasible of {len(rows)} grid points, "
              f"max purity {max(r.purity for r in kept):.9g}")
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
        print(f"wrote {args.out}")
    return EXIT_OK


def cmd_make_state(args) -> int:
    extra = {}
    for key in ("theta", "phi", "alpha", "beta", "lam"):
        v = getattr(args, key)
        if v is not None:
            extra[key] = v
    if args.two_s is not None:
        extra["two_s"] = args.two_s
    obj = catalog.preset_state(args.name, **extra)
    import json

    with open(args.out, "w") as fh:
        json.dump(obj, fh, indent=1)
        fh.write("\n")
    print(f"wrote {args.out} ({catalog.PRESETS[args.name][1]})")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="qpolar",
        description="Multipole analysis of quantum polarization states",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="multipole table and unpolarization order of a state file")
    pa.add_argument("state", help="state file (JSON)")
    pa.add_argument("--tol", type=float, default=multipole.DEFAULT_ORDER_TOL)
    pa.add_argument("--out", help="also write the table as CSV")
    pa.set_defaults(func=cmd_analyze)

    pq = sub.add_parser("qfunc", help="sample the Husimi Q function onto a CSV grid")
    pq.add_argument("state")
    pq.add_argument("--grid", default="64x128", help="NTHETAxNPHI (default 64x128)")
    pq.add_argument("--out", required=True)
    pq.set_defaults(func=cmd_qfunc)

    pr = sub.add_parser("reconstruct", help="multipoles from directional-moment samples")
    pr.add_argument("moments", help="CSV theta,phi,ell,value")
    pr.add_argument("--two-s", dest="two_s", type=int, required=True)
    pr.add_argument("--order", type=int, required=True, help="max rank K to recover")
    pr.add_argument("--out")
    pr.set_defaults(func=cmd_reconstruct)

    ps = sub.add_parser("search", help="extremal unpolarized states")
    ps.add_argument("--two-s", dest="two_s", type=int, required=True)
    ps.add_argument("--order", type=int, required=True)
    ps.add_argument("--class", dest="cls", default="general",
                    choices=sorted(set(search.CONSTRAINT_CLASSES) | {"diagonal", "axial"}))
    ps.add_argument("--restarts", type=int, default=64)
    ps.add_argument("--seed", type=int, default=0)
    ps.add_argument("--out")
    ps.set_defaults(func=cmd_search)

    pc = sub.add_parser("scan", help="family scans (purity vs degrees)")
    pc.add_argument("--family", required=True,
                    choices=["two-photon", "three-photon-first", "three-photon-second"])
    pc.add_argument("--points", type=int, default=101)
    pc.add_argument("--seed", type=int, default=0)
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_scan)

    pm = sub.add_parser("make-state", help="emit a named preset state file")
    pm.add_argument("name", choices=sorted(catalog.PRESETS))
    pm.add_argument("--out", required=True)
    pm.add_argument("--two-s", dest="two_s", type=int)
    pm.add_argument("--theta", type=float)
    pm.add_argument("--phi", type=float)
    pm.add_argument("--alpha", type=float)
    pm.add_argument("--beta", type=float)
    pm.add_argument("--lam", type=float)
    pm.set_defaults(func=cmd_make_state)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "tol", 1.0) <= 0:
        print("error: --tol must be positive", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args)
    except (stokes.IllConditionedError, search.InfeasibleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ToleranceFailure as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOLERANCE
    except (stateio.SchemaError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
