#!/usr/bin/env python3
"""Smoke test for the graph_factors_py extension module.

Build the module first:

    cargo build -p graph-factors-py --release

then run:

    python3 python/smoke_test.py
"""

import shutil
import sys
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def import_module():
    candidates = [
        REPO / "target" / "release" / "libgraph_factors_py.so",
        REPO / "target" / "debug" / "libgraph_factors_py.so",
    ]
    built = next((p for p in candidates if p.exists()), None)
    if built is None:
        sys.exit(
            "libgraph_factors_py.so not found; run "
            "`cargo build -p graph-factors-py` first"
        )
    stage = Path(tempfile.mkdtemp(prefix="graph_factors_py_"))
    shutil.copy2(built, stage / "graph_factors_py.so")
    sys.path.insert(0, str(stage))
    import graph_factors_py

    return graph_factors_py


def main():
    gf = import_module()
    checks = 0

    def check(cond, label):
        nonlocal checks
        if not cond:
            sys.exit(f"FAIL: {label}")
        checks += 1
        print(f"ok: {label}")

    # graph basics
    c6 = gf.Graph.cycle(6)
    check(c6.n == 6 and c6.edge_count() == 6, "C6 shape")
    check(c6.min_degree() == 2 and c6.is_connected(), "C6 degrees")
    check(c6.is_k1r_free(3), "C6 is claw-free")

    star4 = gf.Graph.star(4)
    witness = star4.find_induced_star(4)
    check(witness["center"] == 0 and len(witness["leaves"]) == 4, "star witness")

    # graph6 round trip
    g6 = c6.to_graph6()
    check(gf.Graph.from_graph6(g6) == c6, "graph6 round trip")

    # matching and factor-critical
    check(gf.Graph.complete(4).has_perfect_matching(), "K4 perfect matching")
    c5 = gf.Graph.cycle(5)
    check(c5.is_factor_critical(), "C5 factor-critical")
    check(len(c5.max_matching()) == 2, "C5 matching size")

    # sun recognition: triangle with one pendant per vertex
    net = gf.big_sun(gf.odd_cycle(3))
    sun = net.is_sun()
    check(sun is not None and sun["kind"] == "BigSun", "net is a big sun")
    check(net.sun_count([]) == 1, "net sun count")

    # deciders with witnesses
    d = star4.decide("sn-factor", n=2)
    check(not d["verdict"] and d["witness"]["set"] == [0], "K_{1,4} has no S2-factor")
    check(
        d["witness"]["deficiency"] == 4 and d["witness"]["bound"] == 2,
        "witness numbers",
    )
    check(c6.decide("p2-factor")["verdict"], "C6 has a P>=2-factor")
    check(not net.decide("p3-factor")["verdict"], "net has no P>=3-factor")
    check(not gf.Graph.path(4).decide("p2p3-covered")["verdict"], "P4 not {P2,P3}-covered")
    check(gf.Graph.path(4).decide("p2-covered")["verdict"], "P4 is P>=2-covered")

    # the two S_n criteria agree
    alt = star4.decide_sn_independent_form(2)
    check(not alt["verdict"], "independent-set form agrees")

    # epsilon terms
    p4 = gf.Graph.path(4)
    check(p4.epsilon1([1]) == 1, "epsilon1 on P4")
    k2k2 = gf.Graph.empty(2).join(gf.Graph.complete(2))
    check(k2k2.epsilon3([2, 3]) == 3, "epsilon3 on 2K1 v K2")

    # constructive search agrees with the decider
    f = c6.find_factor("sn", n=2)
    check(f is not None and len(f["components"]) == 3, "C6 star factor")
    check(net.find_factor("p3") is None, "net path search fails")
    cover = p4.find_factor_covering_edge("p2p3", 1, 2)
    check(cover is None, "middle edge of P4 uncoverable")
    check(p4.is_covered_bruteforce("p2"), "P4 covered by brute force")

    # sharpness constructions
    case = gf.sharpness_case("T2-3", 3)
    check(case["violating"] and case["min_degree"] == 2, "T2-3 sharpness at r=3")
    check(case["witness"]["epsilon"] == 3, "T2-3 epsilon")
    degenerate = gf.sharpness_case("T2-1", 3)
    check(not degenerate["violating"], "T2-1 degenerate at r=3")

    # enumeration and sweeps
    check(len(gf.enumerate_graphs(3)) == 4, "4 graphs on 3 vertices")
    check(len(gf.enumerate_graphs(4, connected_only=True)) == 6, "6 connected on 4")
    report = gf.verify_theorem("T1-2", 3, max_vertices=5)
    check(report["counterexamples"] == [], "T1-2 sweep clean at order 5")
    weakened = gf.verify_theorem("T1-1", 5, max_vertices=5, n=2, weaken=1)
    check(len(weakened["counterexamples"]) > 0, "weakened T1-1 finds the star")
    crosscheck = gf.oracle_crosscheck(4)
    check(crosscheck["disagreements"] == [], "oracle crosscheck clean")

    print(f"\nall {checks} smoke checks passed")


if __name__ == "__main__":
    main()
