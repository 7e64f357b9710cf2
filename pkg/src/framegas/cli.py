"""Command-line interface.

Exit codes: 0 success, 1 invalid input, 2 census finished with truncated
orbits, 3 light-cone probe found influence outside the cone.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import io
from .analysis import (FAMILIES, PERTURBATIONS, CausalityViolation, CensusSpec, causality_probe,
                       census, counter_rng, transitivity_experiment, verify_census)
from .bundle import BundleError, bundle_of
from .complex import (ComplexError, SimplicialComplex, classify_walls, closure_of, combinatorial_summary,
                      curvature_report, dual_graph, is_ds_manifold, is_ds_sphere)
from .dynamics import Configuration, DynamicsError, MODES, evolve, orbit
from .generators import GENERATORS, generate

EXIT_INPUT = 1
EXIT_TRUNCATED = 2
EXIT_CAUSALITY = 3


class UsageError(Exception):
    pass


def _add_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_argument_group("complex source")
    g.add_argument("--facets", metavar="FILE", help="facet file, one facet per line")
    g.add_argument("--edges", metavar="FILE", help="edge list (use with --whitney)")
    g.add_argument("--whitney", action="store_true", help="take the clique complex of --edges")
    g.add_argument("--generator", choices=sorted(GENERATORS))
    g.add_argument("--dim", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--labeling", choices=["antipodal", "parts"], default="antipodal",
                   help="vertex labels for cross-polytopes")


def load_complex(args) -> SimplicialComplex:
    chosen = [x for x in (args.facets, args.edges, args.generator) if x]
    if len(chosen) != 1:
        raise UsageError("give exactly one of --facets, --edges/--whitney, --generator")
    if args.facets:
        return io.read_facets(args.facets)
    if args.edges:
        if not args.whitney:
            raise UsageError("--edges needs --whitney")
        return io.read_whitney(args.edges)
    return generate(args.generator, dim=args.dim, n=args.n, labeling=args.labeling)


def _write(out: Path | None, name: str, text: str) -> None:
    if out is None:
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text, encoding="utf-8")


# -- complex -----------------------------------------------------------------

def complex_report(c: SimplicialComplex, checks: set[str]) -> dict:
    s = combinatorial_summary(c)
    walls = classify_walls(c)
    rep = {
        "q": c.dim,
        "f_vector": list(s.f_vector),
        "f_polynomial": list(s.f_polynomial),
        "euler_characteristic": s.euler_characteristic,
        "facets": [list(f) for f in c.facets],
        "walls": {
            "interior": [list(w) for w in sorted(walls.interior)],
            "boundary": [list(w) for w in sorted(walls.boundary)],
            "violations": [list(w) for w in sorted(walls.violations)],
        },
        "pure": walls.pure,
        "admissible": walls.admissible,
    }
    if walls.admissible:
        rep["frames"] = len(bundle_of(c))
    if "ds-sphere" in checks:
        ok, d = is_ds_sphere(c)
        rep["ds_sphere"] = {"is_sphere": ok, "dim": d}
    if "ds-manifold" in checks:
        rep["ds_manifold"] = is_ds_manifold(c)
    if "curvature" in checks:
        cr = curvature_report(c)
        rep["curvature"] = {str(v): str(k) for v, k in cr.curvature.items()}
        rep["curvature_total"] = str(cr.total)
        rep["gauss_bonnet"] = cr.gauss_bonnet
        rep["generating_function_identity"] = cr.generating_function_identity
    if "dual" in checks:
        g = dual_graph(c)
        rep["dual_graph"] = {"nodes": g.number_of_nodes(), "edges": g.number_of_edges(),
                             "regular_degree": g.graph["regular_degree"],
                             "triangle_free": g.graph["triangle_free"]}
    return rep


def _text_report(rep: dict) -> str:
    lines = [f"q = {rep['q']}", f"f-vector = {tuple(rep['f_vector'])}",
             f"euler characteristic = {rep['euler_characteristic']}",
             f"walls: {len(rep['walls']['interior'])} interior, {len(rep['walls']['boundary'])} boundary, "
             f"{len(rep['walls']['violations'])} in >=3 facets"]
    if rep["walls"]["boundary"] and len(rep["walls"]["boundary"]) <= 20:
        lines.append("boundary walls: " + " ".join("{" + ",".join(map(str, w)) + "}"
                                                   for w in rep["walls"]["boundary"]))
    lines.append(f"admissible = {rep['admissible']}")
    if "frames" in rep:
        lines.append(f"|P| = {rep['frames']}")
    if "ds_sphere" in rep:
        lines.append(f"DS sphere = {rep['ds_sphere']['is_sphere']} (dim {rep['ds_sphere']['dim']})")
    if "ds_manifold" in rep:
        lines.append(f"DS manifold = {rep['ds_manifold']}")
    if "curvature" in rep:
        lines.append("curvature: " + ", ".join(f"{v}:{k}" for v, k in rep["curvature"].items()))
        lines.append(f"sum K = {rep['curvature_total']}  gauss-bonnet = {rep['gauss_bonnet']}")
    if "dual_graph" in rep:
        d = rep["dual_graph"]
        lines.append(f"dual graph: {d['nodes']} nodes, {d['edges']} edges, regular degree "
                     f"{d['regular_degree']}, triangle-free {d['triangle_free']}")
    return "\n".join(lines) + "\n"


def cmd_complex(args) -> int:
    c = load_complex(args)
    checks = set(args.check or [])
    if "all" in checks:
        checks = {"ds-sphere", "ds-manifold", "curvature", "dual"}
    rep = complex_report(c, checks)
    dot = io.to_dot(dual_graph(c)) if "dual" in checks or args.format == "dot" else None
    if args.format == "json":
        sys.stdout.write(json.dumps(rep, indent=2, sort_keys=True) + "\n")
    elif args.format == "dot":
        sys.stdout.write(dot)
    else:
        sys.stdout.write(_text_report(rep))
    out = Path(args.out) if args.out else None
    _write(out, "report.json", json.dumps(rep, indent=2, sort_keys=True) + "\n")
    _write(out, "facets.txt", io.format_facets(c))
    if dot is not None:
        _write(out, "dual.dot", dot)
    return 0


# -- evolve ------------------------------------------------------------------

def load_scenario(path: str) -> tuple[argparse.Namespace, Configuration, str, int | None, int]:
    """Parse a scenario file; every problem is collected before raising."""
    base = Path(path).parent
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise UsageError(f"cannot read scenario: {e}") from None
    problems = []
    src = data.get("complex")
    ns = argparse.Namespace(facets=None, edges=None, whitney=False, generator=None, dim=None, n=None,
                            labeling="antipodal", facet_list=None)
    if not isinstance(src, dict):
        problems.append("'complex' must be an object")
    else:
        for key in ("facets", "edges"):
            if key in src:
                setattr(ns, key, str(base / src[key]))
        ns.whitney = bool(src.get("whitney", "edges" in src))
        ns.generator = src.get("generator")
        ns.dim, ns.n = src.get("dim"), src.get("n")
        ns.labeling = src.get("labeling", "antipodal")
        ns.facet_list = src.get("facet_list")
        if sum(x is not None for x in (ns.facets, ns.edges, ns.generator, ns.facet_list)) != 1:
            problems.append("complex needs exactly one of facets, edges, generator, facet_list")
        if ns.generator is not None and ns.generator not in GENERATORS:
            problems.append(f"unknown generator {ns.generator!r}")
    mode = data.get("mode", "rotation")
    if mode not in MODES:
        problems.append(f"mode must be one of {sorted(MODES)}")
    cfg = None
    try:
        cfg = Configuration.from_dict(data.get("configuration", {}))
    except (ValueError, TypeError) as e:
        problems.append(f"configuration: {e}")
    steps = data.get("steps")
    cap = data.get("cap", 10_000)
    if steps is not None and (not isinstance(steps, int) or steps < 0):
        problems.append("steps must be a non-negative integer")
    if not isinstance(cap, int) or cap < 1:
        problems.append("cap must be a positive integer")
    unknown = set(data) - {"complex", "configuration", "mode", "steps", "cap", "outputs"}
    if unknown:
        problems.append(f"unknown keys {sorted(unknown)}")
    if problems:
        raise UsageError("invalid scenario:\n  " + "\n  ".join(problems))
    return ns, cfg, mode, steps, cap


def cmd_evolve(args) -> int:
    if args.scenario:
        src, cfg, mode, steps, cap = load_scenario(args.scenario)
        if src.facet_list is not None:
            c = closure_of(src.facet_list)
        else:
            c = load_complex(src)
    else:
        if not args.config:
            raise UsageError("evolve needs --config or --scenario")
        c = load_complex(args)
        cfg = io.read_configuration(args.config)
        mode, steps, cap = args.mode, args.steps, args.cap
    b = bundle_of(c)
    cfg.validate(b)
    if steps is not None:
        states = list(evolve(b, cfg, steps, mode))
        rec = orbit(b, cfg, cap=max(steps, 1), mode=mode)
        msg = f"period {rec.period}" if rec.period is not None else f"no return within {max(steps, 1)} steps"
    else:
        rec = orbit(b, cfg, cap=cap, mode=mode)
        states = rec.states + ([rec.states[0]] if rec.period is not None else [])
        msg = f"period {rec.period}" if rec.period is not None else f"truncated after {cap} steps"
    print(msg)
    out = Path(args.out) if args.out else None
    if out is not None:
        _write(out, "orbit.jsonl", "".join(io.orbit_lines(states)))
        _write(out, "occupancy.csv", io.occupancy_csv(b, states))
    else:
        sys.stdout.write("".join(io.orbit_lines(states)))
    return 0


# -- census / probe / trace -------------------------------------------------

def cmd_census(args) -> int:
    c = load_complex(args)
    sampled = args.sample is not None or args.family == "random"
    if sampled and args.seed is None:
        raise UsageError("--seed is required for sampled families")
    explicit = []
    if args.family == "explicit":
        if not args.configs:
            raise UsageError("--family explicit needs --configs FILE")
        explicit = [Configuration.from_dict(d) for d in json.loads(Path(args.configs).read_text())]
    spec = CensusSpec(c, args.family, args.sample, args.seed or 0, args.cap,
                      args.n_pos, args.n_neg, explicit)
    table = census(spec, workers=args.workers)
    if args.verify > 0:
        checked = verify_census(spec, table, args.verify, seed=args.seed or 0)
        table.runtime["verified"] = len(checked)
    if args.out:
        table.write(args.out)
    else:
        sys.stdout.write(table.csv_text())
    print(f"configurations {len(table.ids)}  max period {table.max_period}  truncated {table.n_truncated}",
          file=sys.stderr)
    return EXIT_TRUNCATED if table.n_truncated else 0


def _parse_facet(text: str, b) -> tuple[int, ...]:
    vals = [int(t) for t in text.replace(",", " ").split()]
    if len(vals) == 1 and len(b.facets[0]) != 1:
        return b.facets[vals[0]]
    return tuple(sorted(vals))


def cmd_probe(args) -> int:
    c = load_complex(args)
    b = bundle_of(c)
    if args.config:
        cfg = io.read_configuration(args.config)
    else:
        rng = counter_rng(args.seed or 0, 0)
        picks = rng.integers(0, len(b), size=args.particles)
        signs = rng.integers(0, 2, size=args.particles)
        cfg = Configuration.from_particles((1 if s else -1, b.frames[i]) for i, s in zip(picks, signs))
    facet = _parse_facet(args.facet, b) if args.facet else b.facets[0]
    try:
        rep = causality_probe(b, cfg, facet, args.steps, args.perturb)
        code = 0
    except CausalityViolation as e:
        rep = e.report
        code = EXIT_CAUSALITY
        print("light-cone violation: counterexample written", file=sys.stderr)
    text = json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n"
    if args.out:
        _write(Path(args.out), "probe.json", text)
    else:
        sys.stdout.write(text)
    return code


def cmd_trace(args) -> int:
    c = load_complex(args)
    if args.seed is None:
        raise UsageError("--seed is required")
    rep = transitivity_experiment(c, args.density, args.horizon, args.trials, args.seed, args.workers)
    text = rep.to_json()
    if args.out:
        _write(Path(args.out), "transitivity.json", text)
    else:
        sys.stdout.write(text)
    print(f"pairs hit within horizon {rep.fraction_hit:.4f}; within ceil(log|P|)={rep.log_horizon}: "
          f"{rep.fraction_hit_log:.4f}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="framegas", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    q = sub.add_parser("complex", help="inspect a simplicial complex")
    _add_source(q)
    q.add_argument("--check", action="append",
                   choices=["ds-sphere", "ds-manifold", "curvature", "dual", "all"])
    q.add_argument("--format", choices=["text", "json", "dot"], default="text")
    q.add_argument("--out", metavar="DIR")
    q.set_defaults(func=cmd_complex)

    q = sub.add_parser("evolve", help="run a configuration and log its orbit")
    _add_source(q)
    q.add_argument("--config", metavar="FILE")
    q.add_argument("--scenario", metavar="FILE")
    q.add_argument("--mode", choices=sorted(MODES), default="rotation")
    q.add_argument("--steps", type=int)
    q.add_argument("--cap", type=int, default=10_000)
    q.add_argument("--out", metavar="DIR")
    q.set_defaults(func=cmd_evolve)

    q = sub.add_parser("census", help="orbit periods over a configuration family")
    _add_source(q)
    q.add_argument("--family", choices=FAMILIES, default="pinned-pairs")
    q.add_argument("--sample", type=int)
    q.add_argument("--seed", type=int)
    q.add_argument("--cap", type=int, default=10_000)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--n-pos", type=int, default=1)
    q.add_argument("--n-neg", type=int, default=0)
    q.add_argument("--configs", metavar="FILE", help="JSON list of configurations (explicit family)")
    q.add_argument("--verify", type=float, default=0.01, help="fraction of periods to re-check")
    q.add_argument("--out", metavar="DIR")
    q.set_defaults(func=cmd_census)

    q = sub.add_parser("probe", help="light-cone check for a local perturbation")
    _add_source(q)
    q.add_argument("--config", metavar="FILE")
    q.add_argument("--particles", type=int, default=6, help="random configuration size without --config")
    q.add_argument("--seed", type=int)
    q.add_argument("--facet", help="facet vertices ('1 2 3') or facet index")
    q.add_argument("--perturb", choices=PERTURBATIONS, default="add")
    q.add_argument("--steps", type=int, default=1)
    q.add_argument("--out", metavar="DIR")
    q.set_defaults(func=cmd_probe)

    q = sub.add_parser("trace", help="eddie reachability over random backgrounds")
    _add_source(q)
    q.add_argument("--density", type=float, default=0.2)
    q.add_argument("--horizon", type=int, default=36)
    q.add_argument("--trials", type=int, default=50)
    q.add_argument("--seed", type=int)
    q.add_argument("--workers", type=int, default=1)
    q.add_argument("--out", metavar="DIR")
    q.set_defaults(func=cmd_trace)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "workers", 1) < 1:
        print("error: --workers must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except (UsageError, ComplexError, BundleError, ValueError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except DynamicsError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
