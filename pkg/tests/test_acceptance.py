"""Acceptance gates.

One test per criterion, each printing a [criterion NN] PASS/FAIL line
(run with -s to see them live). Stated tolerances are asserted as is.

Criterion 5 is expected to fail on its CFI(K3) legs: for that pair both
expansions are 2-regular, the encoder is a uniform rotation, and the
exact sorted-distribution signal stays an order of magnitude below the
finite-shot null floor of the pinned sampling protocol at every
parameter setting surveyed (see notes/decisions.md in the build notes
for the search data). The assertions are kept faithful to the criterion
rather than weakened to pass.
"""
import time
from contextlib import contextmanager

import numpy as np
import pytest

from quic.cfi import build_cfi, cfi_size
from quic.circuit import CircuitParams, encoder_amplitude, run_circuit
from quic.embedding import embed_exact, l1_distance
from quic.experiments import (
    CFI_SEPARATION_PARAMS,
    SRG_SEPARATION_PARAMS,
    run_broom_study,
    run_cfi_campaign,
    run_srg_suite,
    run_sweep,
    run_validate_exhaustive,
)
from quic.graphs import (
    Graph,
    complete_bipartite_graph,
    complete_graph,
    complete_minus_edge,
    cut_value,
    cycle_graph,
    er_graph,
    path_graph,
    reconstruct_from_cuts,
    rng_from,
)
from quic.noise import NoiseSpec, NoisyDistributionEstimator, run_noisy
from quic.stats import separation_test
from quic.embedding import sort_distribution

from reference_engine import encoder_only_reference, run_reference


@contextmanager
def criterion(num: int, label: str):
    info = {}
    start = time.time()
    try:
        yield info
    except BaseException:
        print(f"[criterion {num:02d}] FAIL  {label}  ({time.time() - start:.0f}s)"
              + (f"  {info.get('detail', '')}" if info.get("detail") else ""))
        raise
    print(f"[criterion {num:02d}] PASS  {label}: {info.get('detail', 'ok')}"
          f"  ({time.time() - start:.0f}s)")


def test_criterion_01_permutation_invariance():
    with criterion(1, "permutation invariance, 200 random pairs n<=10") as info:
        rng = rng_from(101)
        params = CircuitParams.canonical()
        worst = 0.0
        for _ in range(200):
            n = int(rng.integers(2, 11))
            g = er_graph(n, float(rng.uniform(0.15, 0.85)), rng)
            perm = [int(x) for x in rng.permutation(n)]
            d = l1_distance(embed_exact(g, params), embed_exact(g.relabel(perm), params))
            worst = max(worst, d)
        info["detail"] = f"max sorted-L1 {worst:.2e} (< 1e-12)"
        assert worst < 1e-12


def test_criterion_02_completeness_exhaustive_r1():
    with criterion(2, "completeness at r=1, exhaustive n<=6") as info:
        out = run_validate_exhaustive(6, z_test=False, seed=102)
        per_size = out["results"]["per_size"]
        min_l1 = min(r["min_nonisomorphic_l1"] for r in per_size if r["pairs"])
        max_ctl = max(r["max_control_l1"] for r in per_size)
        classes = [r["classes"] for r in per_size]
        info["detail"] = (
            f"classes {classes}, min non-iso L1 {min_l1:.2e} (> 1e-9), "
            f"max iso control {max_ctl:.2e} (< 1e-12)"
        )
        assert classes == [1, 2, 4, 11, 34, 156]
        assert min_l1 > 1e-9
        assert max_ctl < 1e-12


def test_criterion_03_cut_reconstruction():
    with criterion(3, "cut reconstruction, exhaustive n<=5 + 500 random n<=8") as info:
        checked = 0
        for n in range(1, 6):
            pair_count = n * (n - 1) // 2
            for mask in range(1 << pair_count):
                edges = []
                bit = 0
                for u in range(n):
                    for v in range(u + 1, n):
                        if mask >> bit & 1:
                            edges.append((u, v))
                        bit += 1
                g = Graph(n, edges)
                assert reconstruct_from_cuts(n, lambda s: cut_value(g, s)) == g
                checked += 1
        rng = rng_from(103)
        for _ in range(500):
            n = int(rng.integers(2, 9))
            g = er_graph(n, float(rng.uniform(0.1, 0.9)), rng)
            assert reconstruct_from_cuts(n, lambda s: cut_value(g, s)) == g
            checked += 1
        info["detail"] = f"{checked} graphs round-tripped exactly"


def test_criterion_04_cfi_sizes():
    with criterion(4, "gadget-expansion sizes match the reference table") as info:
        table = []
        table += [(path_graph(k), 6 * k - 6) for k in range(3, 13)]
        table += [(cycle_graph(k), 6 * k) for k in range(4, 12)]
        table += [
            (complete_graph(3), 18),
            (complete_minus_edge(4), 32),
            (complete_graph(4), 40),
            (complete_minus_edge(5), 68),
            (complete_graph(5), 80),
            (complete_bipartite_graph(2, 3), 38),
            (complete_bipartite_graph(2, 4), 56),
            (complete_bipartite_graph(3, 3), 60),
            (complete_bipartite_graph(3, 4), 88),
        ]
        for base, expected in table:
            assert cfi_size(base) == expected
            pair = build_cfi(base)
            assert pair.untwisted.n == expected and pair.twisted.n == expected
        info["detail"] = f"{len(table)} rows, exact integer equality"


def test_criterion_05_cfi_separation():
    # Expected red: the CFI(K3) legs cannot reach z > 3 under the pinned
    # protocol (see module docstring); assertions stay faithful.
    with criterion(5, "CFI pairs: oracle certification + z > 3, r in {1,2}") as info:
        bases = [("P3", path_graph(3)), ("K3", complete_graph(3))]
        out = run_cfi_campaign(
            bases,
            params=CFI_SEPARATION_PARAMS,
            reps_values=(1, 2),
            shots=2**15,
            subsample_size=2**12,
            repeats=64,
            head=100,
            seed=105,
        )
        rows = [r for r in out["results"]["rows"] if "skipped" not in r]
        assert len(rows) == 4
        assert all(r["certified_nonisomorphic"] for r in rows)
        legs = {f"{r['base']}-r{r['reps']}": r["z"] for r in rows}
        info["detail"] = "certified non-isomorphic; z: " + ", ".join(
            f"{k}={v:.2f}" for k, v in legs.items()
        )
        failing = [k for k, z in legs.items() if not z > 3.0]
        assert not failing, (
            f"legs below z=3: {failing}; the K3 expansion pair (two 2-regular "
            f"circulant-like graphs) has exact sorted-distribution signal below "
            f"the finite-shot null floor at every surveyed parameter setting; "
            f"documented as a known-red criterion in the decisions ledger"
        )


def test_criterion_06_broom_global_encoding():
    with criterion(6, "retained-qubit study: constant signal, null growth") as info:
        out = run_broom_study(r_values=(1, 2), seed=106)
        rows = out["results"]["rows"]
        r2 = [r for r in rows if r["reps"] == 2]
        r1 = [r for r in rows if r["reps"] == 1]
        sig2 = [r["exact_l1"] for r in r2]
        assert all(abs(s - 1.266) <= 0.01 for s in sig2)
        assert max(sig2) - min(sig2) < 0.01
        null_3q = next(r["null_percentile"] for r in r1 if r["retained_qubits"] == 3)
        null_17q = next(r["null_percentile"] for r in r1 if r["retained_qubits"] == 17)
        assert 0.05 * 0.5 <= null_3q <= 0.05 * 1.5
        assert 1.48 * 0.85 <= null_17q <= 1.48 * 1.15
        crossing = out["results"]["crossing_retained_qubits"]["1"]
        assert crossing is not None and 14 <= crossing <= 16
        info["detail"] = (
            f"r=2 signal {np.mean(sig2):.4f} (1.266±0.01, spread "
            f"{max(sig2) - min(sig2):.1e}), r=1 null 3q {null_3q:.3f} / 17q "
            f"{null_17q:.3f}, r=1 crossing at {crossing} qubits"
        )


def test_criterion_07_srg_suite():
    with criterion(7, "named hard pairs: all z > 3 noiseless") as info:
        out = run_srg_suite(params=SRG_SEPARATION_PARAMS, seed=107)
        rows = out["results"]["pairs"]
        assert all(r["nonisomorphic"] for r in rows)
        zs = {r["pair"]: r["z"] for r in rows}
        shrk = next(r for r in rows if r["pair"] == "shrikhande-vs-rook44")
        assert shrk["exact_l1"] > 0.01
        # frozen regression for the in-repo operating point
        assert shrk["exact_l1"] == pytest.approx(0.135180973660, abs=1e-9)
        info["detail"] = (
            "z: " + ", ".join(f"{k}={v:.1f}" for k, v in zs.items())
            + f"; shrikhande exact L1 {shrk['exact_l1']:.4f} (> 0.01)"
        )
        assert all(z > 3.0 for z in zs.values())


def test_criterion_08_sweep_orderings():
    with criterion(8, "sweep orderings: enc 2.875 tops, reps 2 tops") as info:
        enc = run_sweep("enc", [2.0, 2.875, 4.5], seed=108)
        by_val = {r["value"]: r["mean_z"] for r in enc["results"]["rows"]}
        assert by_val[2.875] > by_val[2.0]
        assert by_val[2.875] > by_val[4.5]
        reps = run_sweep("reps", [1, 2, 4], seed=108)
        rows = {r["value"]: r for r in reps["results"]["rows"]}
        for fam in ("mean_tv_er", "mean_tv_ba"):
            assert rows[2][fam] > rows[1][fam]
            assert rows[2][fam] > rows[4][fam]
        info["detail"] = (
            f"mean z enc: 2.0->{by_val[2.0]:.1f}, 2.875->{by_val[2.875]:.1f}, "
            f"4.5->{by_val[4.5]:.1f}; TV r2 over r1/r4 on both family sets"
        )


def test_criterion_09_noise_robustness_and_monotonicity():
    with criterion(9, "noise: z > 3 at reference strengths, degradation monotone") as info:
        pair = build_cfi(path_graph(3))
        params = CFI_SEPARATION_PARAMS
        noise = NoiseSpec(1e-4, 5e-3, 1e-2)
        cu = run_noisy(pair.untwisted, params, noise, 2**15, 109)
        ct = run_noisy(pair.twisted, params, noise, 2**15, 110)
        rep = separation_test(cu, ct, subsample_size=2**12, repeats=64, head=100, seed=111)
        assert rep.z > 3.0

        est_u = NoisyDistributionEstimator(pair.untwisted, params)
        est_t = NoisyDistributionEstimator(pair.twisted, params)

        def sep(spec, seed):
            du = est_u.estimate(spec, 20000, seed)
            dt = est_t.estimate(spec, 20000, seed + 1)
            return l1_distance(
                sort_distribution(du / du.sum()), sort_distribution(dt / dt.sum())
            )

        violations = 0
        seeds = 20
        for i in range(seeds):
            seed = 5000 + 10 * i
            base = sep(noise, seed)
            for axis in ("p1", "p2", "p_ro"):
                if sep(noise.scaled(**{axis: 4.0}), seed) > base + 1e-6:
                    violations += 1
                    break
        info["detail"] = (
            f"noisy z {rep.z:.2f} (> 3); monotonicity violations "
            f"{violations}/{seeds} seeds (< 5% allowed)"
        )
        assert violations / seeds < 0.05


def test_criterion_10_engine_cross_validation():
    with criterion(10, "engine vs dense reference; encoder closed form") as info:
        rng = rng_from(1010)
        worst_state = 0.0
        for _ in range(100):
            n = int(rng.integers(2, 9))
            g = er_graph(n, float(rng.uniform(0.15, 0.85)), rng)
            params = CircuitParams(
                float(rng.uniform(0.2, 3.1)),
                float(rng.uniform(0.2, 3.1)),
                float(rng.uniform(0.0, 1.6)),
                int(rng.integers(1, 4)),
            )
            diff = np.abs(
                run_circuit(g, params).amplitudes - run_reference(g, params)
            ).max()
            worst_state = max(worst_state, float(diff))
        assert worst_state < 1e-12

        worst_enc = 0.0
        for _ in range(50):
            n = int(rng.integers(2, 7))
            g = er_graph(n, float(rng.uniform(0.15, 0.85)), rng)
            theta = float(rng.uniform(0.2, 3.1))
            ref = np.abs(encoder_only_reference(g, theta))
            for s in range(1 << n):
                worst_enc = max(worst_enc, abs(encoder_amplitude(g, theta, s) - ref[s]))
        assert worst_enc < 1e-12
        info["detail"] = (
            f"max state diff {worst_state:.2e}, max encoder diff {worst_enc:.2e} "
            f"(both < 1e-12)"
        )
