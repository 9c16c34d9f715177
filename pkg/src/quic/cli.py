"""Command-line interface.

Subcommands mirror the experiment runners: embed, compare, cfi,
validate, broom, sweep, srg, shot-scaling, plus gen for writing graph
files. Every run writes a self-contained JSON artifact (and CSV/PNG for
the tabular experiments) under --out. QUIC_SEED sets the default seed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import experiments as ex
from .circuit import CircuitParams
from .config import DEFAULT_QUBIT_CEILING
from .graphs import Graph, generate, parse_family_spec
from .noise import NoiseSpec


def _default_seed() -> int:
    return int(os.environ.get("QUIC_SEED", "0"))


def load_graph(spec: str) -> Graph:
    """Graph from a JSON file, an edge-list file, or a family spec string."""
    path = Path(spec)
    if path.exists():
        text = path.read_text()
        if path.suffix == ".json" or text.lstrip().startswith("{"):
            return Graph.from_json(text)
        return Graph.from_edgelist(text)
    return generate(parse_family_spec(spec))


def save_graph(g: Graph, path: Path) -> None:
    if path.suffix == ".json":
        path.write_text(json.dumps(g.to_dict(), indent=2) + "\n")
    else:
        path.write_text(g.to_edgelist())


def _params_from(args, base: CircuitParams) -> CircuitParams:
    """Suite default with any explicitly passed angle/reps flags applied."""
    return CircuitParams(
        base.theta_enc if args.theta_enc is None else args.theta_enc,
        base.theta_ent if args.theta_ent is None else args.theta_ent,
        base.theta_mix if args.theta_mix is None else args.theta_mix,
        base.reps if args.reps is None else args.reps,
    )


def _add_param_flags(p, defaults: CircuitParams) -> None:
    p.add_argument("--theta-enc", type=float, default=None,
                   help=f"encoding angle (default {defaults.theta_enc})")
    p.add_argument("--theta-ent", type=float, default=None,
                   help=f"entangling angle (default {defaults.theta_ent})")
    p.add_argument("--theta-mix", type=float, default=None,
                   help=f"mixing angle (default {defaults.theta_mix})")
    p.add_argument("--reps", type=int, default=None,
                   help=f"repetitions (default {defaults.reps})")
    p.set_defaults(base_params=defaults)


def _add_sampling_flags(p, shots=2**15) -> None:
    p.add_argument("--shots", type=int, default=shots)
    p.add_argument("--subsample", type=int, default=2**12, help="subsample size m")
    p.add_argument("--repeats", type=int, default=64)
    p.add_argument("--head", type=int, default=100, help="head length k (0 = untruncated)")


def _out_dir(args) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _emit(args, artifact: dict, name: str, csv_rows=None, csv_fields=None) -> Path:
    out = _out_dir(args)
    ex.write_artifact(out / f"{name}.json", artifact)
    if csv_rows is not None:
        ex.write_csv(out / f"{name}.csv", csv_rows, csv_fields)
    return out


def _noise_from(args) -> NoiseSpec | None:
    if not getattr(args, "noise", None):
        return None
    return NoiseSpec.from_dict(json.loads(Path(args.noise).read_text()))


def _grid(text: str):
    """Parse '2.0:3.5:0.125' (inclusive) or '1,2,4'."""
    if ":" in text:
        start, stop, step = (float(x) for x in text.split(":"))
        vals = []
        v = start
        while v <= stop + 1e-12:
            vals.append(round(v, 10))
            v += step
        return vals
    return [float(x) for x in text.split(",")]


def cmd_gen(args) -> int:
    g = generate(parse_family_spec(args.family))
    save_graph(g, Path(args.output))
    print(f"wrote {args.output}: n={g.n} m={g.m}")
    return 0


def cmd_embed(args) -> int:
    g = load_graph(args.graph)
    artifact = ex.run_embed(
        g, params=_params_from(args, args.base_params),
        shots=args.shots, head=args.head, seed=args.seed,
    )
    name = f"embed_{Path(args.graph).stem if Path(args.graph).exists() else args.graph.replace(':', '-')}"
    decay = artifact["results"]["decay"]
    out = _emit(args, artifact, name, decay, ["rank", "probability", "cumulative"])
    if not args.no_plot:
        from .plotting import plot_sorted_distribution

        plot_sorted_distribution(
            decay, out / f"{name}.png",
            uncertainty_floor=artifact["results"]["uncertainty_floor"],
            title=f"sorted output, n={g.n}",
        )
    print(
        f"embedding: n={g.n} head={args.head} "
        f"head_mass={artifact['results']['head_mass']:.4f} -> {out / name}.json"
    )
    return 0


def cmd_compare(args) -> int:
    ga, gb = load_graph(args.graph_a), load_graph(args.graph_b)
    artifact = ex.run_compare(
        ga, gb,
        params=_params_from(args, args.base_params),
        shots=args.shots, subsample_size=args.subsample,
        repeats=args.repeats, head=args.head, seed=args.seed, noise=_noise_from(args),
        label=f"{args.graph_a}-vs-{args.graph_b}",
    )
    res = artifact["results"]
    _emit(args, artifact, "compare")
    print(
        f"{args.graph_a} vs {args.graph_b}: qubits={ga.n} "
        f"z={res['z']:.2f} pass={res['passed']}"
    )
    return 0


def cmd_cfi(args) -> int:
    base = load_graph(args.base)
    from .cfi import build_cfi, cfi_size

    qubits = cfi_size(base)
    pair = build_cfi(base)
    out = _out_dir(args)
    (out / "untwisted.json").write_text(json.dumps(pair.untwisted.to_dict(), indent=2) + "\n")
    (out / "twisted.json").write_text(json.dumps(pair.twisted.to_dict(), indent=2) + "\n")
    meta = {
        "base_family": args.base,
        "base_n": base.n,
        "base_m": base.m,
        "qubits": qubits,
        "twist_edge": list(pair.twist_edge),
        "simulable": qubits <= DEFAULT_QUBIT_CEILING,
    }
    (out / "cfi_meta.json").write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    print(f"cfi {args.base}: qubits={qubits} twist_edge={pair.twist_edge} -> {out}/")
    if args.run:
        artifact = ex.run_cfi_campaign(
            [(args.base, base)],
            params=_params_from(args, args.base_params),
            reps_values=tuple(int(r) for r in args.run_reps.split(",")),
            shots=args.shots, subsample_size=args.subsample, repeats=args.repeats,
            head=args.head, seed=args.seed,
        )
        rows = artifact["results"]["rows"]
        _emit(args, artifact, "cfi_campaign", rows)
        for row in rows:
            if "skipped" in row:
                print(f"  {row['base']}: skipped ({row['skipped']})")
            else:
                print(f"  {row['base']} r={row['reps']}: z={row['z']:.2f} pass={row['passed']}")
    return 0


def cmd_validate(args) -> int:
    if args.exhaustive is not None:
        artifact = ex.run_validate_exhaustive(
            args.exhaustive,
            params=_params_from(args, CircuitParams.canonical(reps=1)),
            shots=args.shots, subsample_size=args.subsample, repeats=args.repeats,
            head=args.head, seed=args.seed, z_test=not args.no_z_test,
        )
        per_size = artifact["results"]["per_size"]
        _emit(args, artifact, f"validate_exhaustive_{args.exhaustive}",
              artifact["results"]["pairs"])
        for row in per_size:
            print(
                f"n={row['n']}: classes={row['classes']} pairs={row['pairs']} "
                f"min_l1={row['min_nonisomorphic_l1']:.3e}"
                if row["pairs"] else
                f"n={row['n']}: classes={row['classes']} pairs=0"
            )
            if row["z_pass_rate"] is not None:
                print(f"      z-test pass rate: {row['z_pass_rate']:.1%}")
    if args.families:
        artifact = ex.run_validate_families(
            params=_params_from(args, args.base_params),
            shots=args.shots, subsample_size=args.subsample, repeats=args.repeats,
            head=args.head, seed=args.seed,
        )
        rows = artifact["results"]["pairs"]
        out = _emit(args, artifact, "validate_families", rows)
        if not args.no_plot:
            from .plotting import plot_pair_bars

            plot_pair_bars(rows, out / "validate_families.png", title="family pairs")
        for row in rows:
            print(f"{row['pair']}: qubits={row['n']} z={row['z']:.2f} pass={row['passed']}")
    if args.exhaustive is None and not args.families:
        print("nothing to do: pass --exhaustive N and/or --families", file=sys.stderr)
        return 2
    return 0


def cmd_broom(args) -> int:
    angles = _params_from(args, args.base_params)
    artifact = ex.run_broom_study(
        r_values=tuple(int(r) for r in args.r_values.split(",")),
        angles=(angles.theta_enc, angles.theta_ent, angles.theta_mix),
        null_sample_size=args.subsample, repeats=args.repeats, seed=args.seed,
    )
    rows = artifact["results"]["rows"]
    out = _emit(args, artifact, "broom", rows,
                ["reps", "cutoff", "retained_qubits", "exact_l1", "null_percentile"])
    if not args.no_plot:
        from .plotting import plot_broom

        plot_broom(rows, out / "broom.png")
    for r, crossing in artifact["results"]["crossing_retained_qubits"].items():
        sig = next(w["exact_l1"] for w in rows if w["reps"] == int(r))
        print(f"r={r}: exact_l1={sig:.4f} null overtakes signal at {crossing} retained qubits")
    return 0


def cmd_sweep(args) -> int:
    artifact = ex.run_sweep(
        args.axis, _grid(args.grid),
        base_params=_params_from(args, args.base_params),
        shots=args.shots, subsample_size=args.subsample, repeats=args.repeats,
        head=args.head, seed=args.seed,
    )
    rows = artifact["results"]["rows"]
    out = _emit(args, artifact, f"sweep_{args.axis}", rows)
    if not args.no_plot:
        from .plotting import plot_sweep

        plot_sweep(rows, args.axis, out / f"sweep_{args.axis}.png")
    for row in rows:
        if args.axis == "reps":
            tvs = " ".join(f"{k.removeprefix('mean_tv_')}={v:.4f}"
                           for k, v in row.items() if k.startswith("mean_tv_"))
            print(f"r={row['value']:g}: {tvs} {row['status']}")
        else:
            print(f"{args.axis}={row['value']:g}: mean_z={row['mean_z']:.2f} "
                  f"min_z={row['min_z']:.2f} {row['status']}")
    return 0


def cmd_srg(args) -> int:
    artifact = ex.run_srg_suite(
        params=_params_from(args, args.base_params),
        noise=_noise_from(args),
        shots=args.shots, subsample_size=args.subsample, repeats=args.repeats,
        head=args.head, seed=args.seed,
    )
    rows = artifact["results"]["pairs"]
    out = _emit(args, artifact, "srg", rows)
    if not args.no_plot:
        from .plotting import plot_pair_bars

        plot_pair_bars(rows, out / "srg.png", title="named hard pairs")
    for row in rows:
        extra = f" z_noisy={row['z_noisy']:.2f}" if "z_noisy" in row else ""
        print(f"{row['pair']}: qubits={row['n']} exact_l1={row['exact_l1']:.4f} "
              f"z={row['z']:.2f} pass={row['passed']}{extra}")
    return 0


def cmd_shot_scaling(args) -> int:
    ga = load_graph(args.graph_a) if args.graph_a else None
    gb = load_graph(args.graph_b) if args.graph_b else None
    artifact = ex.run_shot_scaling(
        ga, gb,
        params=_params_from(args, args.base_params),
        repeats=args.repeats, head=args.head, seed=args.seed,
        parent_shots=args.shots,
    )
    rows = artifact["results"]["rows"]
    out = _emit(args, artifact, "shot_scaling", rows,
                ["shots", "null_mean", "null_sd", "signal_mean", "signal_sd", "z"])
    if not args.no_plot:
        from .plotting import plot_shot_scaling

        plot_shot_scaling(rows, artifact["results"]["exact_head_l1"],
                          out / "shot_scaling.png")
    print(f"exact head l1 = {artifact['results']['exact_head_l1']:.4f}")
    for row in rows:
        print(f"m={row['shots']}: null={row['null_mean']:.4f} "
              f"signal={row['signal_mean']:.4f} z={row['z']:.2f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quic",
        description="Training-free quantum graph embeddings and separation studies",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, params=CircuitParams.canonical(), shots=2**15):
        p.add_argument("--seed", type=int, default=_default_seed())
        p.add_argument("--out", default="quic-results")
        p.add_argument("--no-plot", action="store_true")
        _add_param_flags(p, params)
        _add_sampling_flags(p, shots)

    p = sub.add_parser("gen", help="write a family graph to a file")
    p.add_argument("family", help="family spec, e.g. path:6 or er:12:0.35:7")
    p.add_argument("output", help="output path (.json or edge-list text)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("embed", help="embedding of one graph")
    p.add_argument("graph", help="graph file or family spec")
    common(p, shots=0)
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("compare", help="separation test between two graphs")
    p.add_argument("graph_a")
    p.add_argument("graph_b")
    p.add_argument("--noise", help="JSON file with {p1, p2, p_ro}")
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("cfi", help="build (and optionally run) a gadget pair")
    p.add_argument("--base", required=True, help="base family spec, e.g. path:6")
    p.add_argument("--emit", dest="out", default="quic-results", help="output directory")
    p.add_argument("--run", action="store_true", help="also run the separation test")
    p.add_argument("--run-reps", default="1,2")
    common(p, params=ex.CFI_SEPARATION_PARAMS)
    p.set_defaults(func=cmd_cfi)

    p = sub.add_parser("validate", help="exhaustive and family validation suites")
    p.add_argument("--exhaustive", type=int, help="max vertex count (<= 7)")
    p.add_argument("--families", action="store_true")
    p.add_argument("--no-z-test", action="store_true")
    common(p, params=ex.CFI_SEPARATION_PARAMS)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("broom", help="retained-qubit global-encoding study")
    p.add_argument("--r-values", default="1,2,3")
    common(p)
    p.set_defaults(func=cmd_broom)

    p = sub.add_parser("sweep", help="one-axis parameter sweep")
    p.add_argument("--axis", required=True, choices=("enc", "ent", "mix", "reps"))
    p.add_argument("--grid", required=True, help="start:stop:step or comma list")
    common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("srg", help="named hard-pair suite")
    p.add_argument("--noise", help="JSON file with {p1, p2, p_ro}")
    common(p, params=ex.SRG_SEPARATION_PARAMS)
    p.set_defaults(func=cmd_srg)

    p = sub.add_parser("shot-scaling", help="null/signal L1 vs subsample size")
    p.add_argument("--graph-a", help="graph file or family spec")
    p.add_argument("--graph-b")
    common(p, shots=2**17)
    p.set_defaults(func=cmd_shot_scaling)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
