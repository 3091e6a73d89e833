"""Command-line entry point: ``orbitkit <subcommand> ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import classical as cl
from . import drinfeld as dr
from . import matrix_model as mm
from . import quasiss as qs
from .fusion import fuse, fuse_class_spec, fuse_trace
from .orbits import format_diagram, generate_all, orbit_by_diagram
from .root_datum import (build_root_datum, coweight_from_spec, format_root, parse_root, subsystem_from_roots)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Config:
    output_format: str = "tsv"
    parallelism: int = 1
    data_dir: str | None = None

    def __post_init__(self):
        if self.output_format not in ("tsv", "json"):
            raise UsageError(f"unknown output format {self.output_format!r}")
        if self.parallelism < 1:
            raise UsageError("--jobs must be at least 1")


def _emit_json(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _tsv(*cols) -> None:
    print("\t".join(str(c) for c in cols))


def _ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _run_parallel(cfg: Config, tasks):
    """Run zero-argument callables, returning results in submission order."""
    if cfg.parallelism == 1:
        return [t() for t in tasks]
    with ThreadPoolExecutor(cfg.parallelism) as ex:
        return list(ex.map(lambda t: t(), tasks))


# ---- subcommands ------------------------------------------------------------

def cmd_orbits(args, cfg: Config) -> int:
    G = build_root_datum(args.type)
    orbs = generate_all(G)
    if cfg.output_format == "json":
        _emit_json({"type": args.type.upper(), "orbits": [o.to_json() for o in orbs]})
    else:
        for o in orbs:
            _tsv(format_diagram(o.diagram), o.dim, o.label)
    return EXIT_OK


def cmd_fuse(args, cfg: Config) -> int:
    G = build_root_datum(args.type)
    if (args.j is None) == (args.sub is None):
        raise UsageError("give exactly one of --j or --sub")
    if args.j is not None:
        d = fuse_class_spec(G, args.j)
        out = {"type": args.type.upper(), "J": args.j, "diagram": list(d)}
        trace = None
    else:
        if args.d is None:
            raise UsageError("--sub needs --d")
        sub = subsystem_from_roots(G, [parse_root(G, tok) for tok in args.sub.split(",")])
        trace = fuse_trace(G, sub, _ints(args.d))
        d = trace.diagram
        out = {"type": args.type.upper(), "sub": args.sub, "d": _ints(args.d), "diagram": list(d),
               "C": trace.C, "A": [[str(x) for x in r] for r in trace.A], "D": trace.D,
               "f": [str(x) for x in trace.f_positive], "w": list(trace.w.word),
               "f_w": [str(x) for x in trace.f_w_positive]}
    out["label"] = orbit_by_diagram(G, d).label
    if cfg.output_format == "json":
        _emit_json(out)
    else:
        if trace is not None and args.verbose:
            for key in ("C", "A", "D", "f", "w", "f_w"):
                _tsv(key, json.dumps(out[key]))
        _tsv(out["label"], format_diagram(d))
    return EXIT_OK


def cmd_partitions(args, cfg: Config) -> int:
    fam = args.type.upper()
    if fam == "A":
        rows = [{"partition": list(mu), "diagrams": [list(cl.diagram_from_partition(mu, "A"))]}
                for mu in cl.all_partitions(args.n)]
    elif fam in cl.FAMILIES:
        eps = cl.FAMILIES[fam][0]
        if (fam == "B") != (args.n % 2 == 1):
            raise UsageError(f"type {fam} needs N {'odd' if fam == 'B' else 'even'}")
        rows = []
        for mu in cl.P(eps, args.n):
            ix = cl.index_set(mu, eps)
            special = cl.is_special(mu, fam)
            row = {"partition": list(mu), "diagrams": [list(d) for d in cl.diagrams_from_partition(mu, fam)],
                   "dual": list(cl.ls_dual(mu, fam)), "special": special,
                   "I": list(ix.I), "I_odd": list(ix.I_odd), "I_ev": list(ix.I_ev),
                   "A_rank": cl.component_group_rank(mu, eps)}
            if eps == -1 or special:
                row["Abar_rank"] = cl.canonical_quotient_spec(mu, eps).abar_rank
            rows.append(row)
    else:
        raise UsageError(f"partitions are listed for types A, B, C, D, not {fam}")
    if cfg.output_format == "json":
        _emit_json({"type": fam, "N": args.n, "partitions": rows})
    else:
        for r in rows:
            cols = [cl.format_partition(r["partition"]), " ".join(format_diagram(d) for d in r["diagrams"])]
            if "dual" in r:
                cols += [cl.format_partition(r["dual"]), "special" if r["special"] else "-",
                         ",".join(map(str, r["I"])) or "-", r["A_rank"], r.get("Abar_rank", "-")]
            _tsv(*cols)
    return EXIT_OK


def cmd_model(args, cfg: Config) -> int:
    if args.eps not in (1, -1):
        raise UsageError("--eps must be 1 or -1")
    mu = cl.normalise(_ints(args.mu))
    model = mm.build_model(mu, args.eps)
    if args.dump:
        _emit_json(mm.dump_model(model))
        return EXIT_OK
    status = EXIT_OK
    out = {"mu": list(mu), "epsilon": args.eps, "jordan_type": list(mm.jordan_type(model)),
           "levi": [{"m": f.m, "dim": f.dim, "kind": f.kind} for f in mm.centralizer_levi_factor(model)]}
    if args.verify:
        rep = mm.verify_admissible(model, cl.canonical_quotient_spec(mu, args.eps, naive=args.naive))
        out["admissibility"] = rep.to_json()
        status = EXIT_OK if rep.ok else EXIT_FAIL
    if cfg.output_format == "json":
        _emit_json(out)
    else:
        _tsv("jordan type", cl.format_partition(out["jordan_type"]))
        for f in out["levi"]:
            _tsv(f"B_{f['m']}", f"{f['kind']}({f['dim']})")
        if args.verify:
            _tsv("generators", " ".join(rep.generators) or "-")
            for c in rep.checks:
                _tsv("PASS" if c.ok else "FAIL", c.name, c.detail)
    return status


_CHECKS = {"unitary": lambda G, F: dr.is_unitary(F), "involution": lambda G, F: dr.is_involution(F),
           "mellin": lambda G, F: dr.mellin_check(G, F)}


def cmd_fourier(args, cfg: Config) -> int:
    G = dr.named_group(args.group)
    F = dr.fourier_matrix(G)
    if args.check:
        results = {c: bool(_CHECKS[c](G, F)) for c in args.check}
        if cfg.output_format == "json":
            _emit_json({"group": args.group, "checks": results})
        else:
            for c, ok in results.items():
                _tsv(c, "PASS" if ok else "FAIL")
        return EXIT_OK if all(results.values()) else EXIT_FAIL
    if cfg.output_format == "json":
        _emit_json(F.to_json())
    else:
        labels = [F.mset.label(k) for k in range(F.n)]
        _tsv("", *labels)
        for lab, row in zip(labels, F.formatted()):
            _tsv(lab, *row)
    return EXIT_OK


def cmd_quasiss(args, cfg: Config) -> int:
    G = build_root_datum(args.ambient)
    torus = coweight_from_spec(G, args.torus) if args.torus else None
    signs = args.sign
    a = qs.make_action(G, args.sub, args.w, torus_part=torus, signs=signs, numbering=args.numbering)
    systems = [("sigma", qs.fixed_subsystem(a))]
    if args.t:
        systems.append(("t_sigma", qs.twisted_subsystem(a, coweight_from_spec(G, args.t))))
    out = {"ambient": args.ambient.upper(), "M": a.M.name, "orbits": [o.to_json() for o in a.orbits]}
    for key, fs in systems:
        fus = []
        for o in generate_all(fs.sub_M.datum):
            dM = fuse(a.M, fs.sub_M, o.diagram)
            dG = fuse(G, fs.sub_G, o.diagram)
            fus.append({"diagram": list(o.diagram), "label": o.label,
                        "M": list(dM), "M_label": orbit_by_diagram(a.M, dM).label,
                        "G": list(dG), "G_label": orbit_by_diagram(G, dG).label})
        out[key] = dict(fs.to_json(), fusion=fus)
    if cfg.output_format == "json":
        _emit_json(out)
        return EXIT_OK
    for o in a.orbits:
        roots = " ".join(format_root(r) for r in o.local)
        flag = f"special s={o.s}" if o.special else ""
        _tsv(f"O{o.index}", roots, f"sign={'+' if o.sign == 1 else '-'}", flag)
    for key, fs in systems:
        tag = "Sigma_sigma" if key == "sigma" else "Sigma_tsigma"
        _tsv(tag, fs.type_label, "positive " + ",".join(map(str, fs.indices)),
             "simple " + ",".join(str(o.index) for o in fs.simple))
        for f in out[key]["fusion"]:
            _tsv("", format_diagram(f["diagram"]), f["label"], "->", format_diagram(f["M"]), f["M_label"],
                 "->", format_diagram(f["G"]), f["G_label"])
    return EXIT_OK


def _duality_for(k):
    from . import tables
    rep = tables.verify_duality_pairs((1, 2, 3))
    return tables.Report(rep.name, [r for r in rep.results if r.row.table == k])


def _table_reports(which):
    from . import tables
    if which is None:
        return [lambda: tables.verify_fusion_rows((1, 2)), lambda: tables.verify_center_orders((1, 2)),
                lambda: tables.verify_duality_pairs((1, 2, 3)), tables.verify_labels,
                tables.verify_distinguished, tables.verify_affine]
    if which in (1, 2):
        return [lambda: tables.verify_fusion_rows((which,)), lambda: tables.verify_center_orders((which,)),
                lambda: _duality_for(which)]
    return [lambda: _duality_for(3), tables.verify_distinguished]


def cmd_verify_tables(args, cfg: Config) -> int:
    from . import tables
    reports = _run_parallel(cfg, _table_reports(args.table))
    scenarios = tables.run_scenarios() if args.table is None else []
    ok = all(r.ok for r in reports) and all(s.ok for s in scenarios)
    if cfg.output_format == "json":
        _emit_json({"ok": ok, "reports": [r.to_json() for r in reports],
                    "scenarios": [s.to_json() for s in scenarios]})
    else:
        for r in reports:
            print(r.summary())
            for row in r.results:
                if not row.ok:
                    print(f"    FAIL {row.row.group} {row.row.class_OF}: {row.detail}")
        for s in scenarios:
            print(f"scenario {s.name}: {'ok' if s.ok else 'FAIL'}")
            for claim, good, value in s.checks:
                if not good:
                    print(f"    FAIL {claim}: {value}")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args, cfg: Config) -> int:
    from . import acceptance
    ks = range(1, len(acceptance.CRITERIA) + 1)
    results = _run_parallel(cfg, [lambda k=k: acceptance.run_criterion(k) for k in ks])
    ok = all(r.ok for r in results)
    if cfg.output_format == "json":
        _emit_json({"ok": ok, "criteria": [r.to_json() for r in results]})
    else:
        for r in results:
            print(r.line())
            if args.verbose or not r.ok:
                for d in r.details[:20]:
                    print(f"    {d}")
        print(f"{sum(r.ok for r in results)}/{len(results)} criteria pass")
    return EXIT_OK if ok else EXIT_FAIL


# ---- parser -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")
    common.add_argument("--data-dir", help="override the embedded data directory")
    common.add_argument("--seed", type=int, default=0, help="reserved; every computation is deterministic")

    p = argparse.ArgumentParser(prog="orbitkit", description="Exact unipotent-class combinatorics.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("orbits", parents=[common], help="all unipotent classes of a type")
    s.add_argument("type")
    s.set_defaults(func=cmd_orbits)

    s = sub.add_parser("fuse", parents=[common], help="fuse a class of a subsystem into the ambient group")
    s.add_argument("--type", required=True)
    s.add_argument("--j", help='signed subset of the extended diagram, e.g. "0,2,3,-4,5,6,7,8"')
    s.add_argument("--sub", help='explicit simple roots, e.g. "10,-12"')
    s.add_argument("--d", help="weighted diagram on --sub")
    s.add_argument("-v", "--verbose", action="store_true", help="print the intermediate matrices")
    s.set_defaults(func=cmd_fuse)

    s = sub.add_parser("partitions", parents=[common], help="classical classes as partitions")
    s.add_argument("--type", required=True)
    s.add_argument("--n", type=int, required=True, help="size N of the natural representation")
    s.set_defaults(func=cmd_partitions)

    s = sub.add_parser("model", parents=[common], help="matrix model of a classical class")
    s.add_argument("--eps", type=int, required=True)
    s.add_argument("--mu", required=True)
    s.add_argument("--verify", action="store_true")
    s.add_argument("--naive", action="store_true", help="use the unreduced generator list")
    s.add_argument("--dump", action="store_true")
    s.set_defaults(func=cmd_model)

    s = sub.add_parser("fourier", parents=[common], help="Fourier matrix on a Drinfeld double")
    s.add_argument("--group", required=True)
    s.add_argument("--check", action="append", choices=sorted(_CHECKS))
    s.set_defaults(func=cmd_fourier)

    s = sub.add_parser("quasiss", parents=[common], help="root systems of a quasi-semisimple element")
    s.add_argument("--ambient", required=True)
    s.add_argument("--sub", required=True, help='simple roots of the pseudo-Levi, e.g. "2,3,4,5 | 8"')
    s.add_argument("--w", default="longest", help='"longest", "triality", "spi:6,1" or "word:1,2"')
    s.add_argument("--torus", help="torus part t0 of sigma")
    s.add_argument("--sign", help='signs of special orbits, e.g. "8:1"')
    s.add_argument("--t", help="semisimple t for Sigma_{t sigma}")
    s.add_argument("--numbering", choices=["simple_first", "component"], default="simple_first")
    s.set_defaults(func=cmd_quasiss)

    s = sub.add_parser("verify-tables", parents=[common], help="check the embedded tables")
    s.add_argument("--table", type=int, choices=[1, 2, 3])
    s.set_defaults(func=cmd_verify_tables)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = Config("json" if args.json else "tsv", args.jobs, args.data_dir)
        if cfg.data_dir:
            os.environ["ORBITKIT_DATA"] = cfg.data_dir
        return args.func(args, cfg)
    except (UsageError, ValueError, KeyError) as exc:
        print(f"orbitkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except mm.ModelError as exc:
        print(f"orbitkit: failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
