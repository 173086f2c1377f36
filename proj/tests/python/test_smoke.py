"""Smoke tests for the python bindings."""

import json
import os
import sys
import tempfile

import selbound


DATA = os.environ.get("SELBOUND_DATA", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


def main():
    # arithmetic utilities
    fac = selbound.factor_over_q(["-1", "0", "1"])  # x^2 - 1
    check(len(fac) == 2, "x^2-1 should have two factors")
    check(fac[0][0] == ["-1", "1"], "first factor should be x-1")

    roots = selbound.isolate_real_roots(["-2", "0", "1"])
    check(len(roots) == 2, "x^2-2 has two real roots")

    check(selbound.discriminant(["1", "0", "1"]) == "-4", "disc(x^2+1) = -4")

    # full analysis on the conductor-277 quintic
    rep = selbound.analyze(os.path.join(DATA, "curves", "277a.json"))
    check(rep["bounds"]["lower"] == 0 and rep["bounds"]["upper"] == 2, "277.a bounds should be [0, 2]")
    check(rep["bounds"]["mode"] == "unconditional", "277.a should be unconditional")
    for place in rep["finite_places"]:
        check(place["order_identity"] == "holds", "order identity should hold at " + place["place"])

    local = selbound.local_place(os.path.join(DATA, "curves", "277a.json"), "2")
    check(local["r"] == 1 and local["trace_condition"] == "holds", "place 2 should be irreducible with full trace space")

    delta = selbound.delta(os.path.join(DATA, "curves", "x5x2_1.json"), "0", "1")
    check(delta["all_parities_even"], "delta parities should be even")

    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "scan.ndjson")
        dens = selbound.twist_scan(os.path.join(DATA, "curves", "277a.json"), 100, out)
        check(dens["eligible"] == 7, "7 eligible twists up to 100")
        with open(out) as f:
            qs = [json.loads(line)["q"] for line in f]
        check(qs == ["2", "3", "7", "13", "29", "41", "59"], "eligible prime list mismatch")

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
