"""Smoke tests for the python module: parse, classify, enumerate, reduce."""

import _mqr as mqr

GELFAND = """
quiver { vertices: u, x, v ; arrows: a: u -> x, b: v -> x }
marking { x: k^2 }
field { p: 2 }
"""

TWO_STRIPS = """
quiver { vertices: d, c, b ; arrows: beta: d -> c, gamma: d -> b }
marking { d: k ; c: k_2 ; b: k^2 + k }
field { p: 2 }
"""


def check(cond, what):
    if not cond:
        raise SystemExit("FAIL: " + what)


def main():
    spec = mqr.Spec.parse(GELFAND)
    check(spec.vertices() == ["u", "x", "v"], "vertices")
    check(spec.field() == 2, "field")
    check(spec.marking("x") == "k^2", "marking rendering")
    check("Tame" in spec.classify(), "gelfand star is tame")
    check(spec.detect_wild_pattern() is None, "no wildness pattern on the star")

    # round trip
    again = mqr.Spec.parse(spec.serialize())
    check(again.classify() == spec.classify(), "serialize round trip")

    # enumeration over two fields
    ts = mqr.Spec.parse(TWO_STRIPS)
    inds2 = ts.enumerate(1)
    check(len(inds2) > 0, "enumeration nonempty")
    counts = ts.count_by_dim(1, [2, 3])
    check(all(len(c) == 2 for _, c in counts), "per-field counts")

    # the pendant reduction of the worked example
    red = ts.reduce("beta", dim_cap=3)
    check(red["new_marking"] == "k_3", "reduction gives the chain of length 3")
    check(red["kernel"] == 2 and red["survivors"] == 3, "reduction bookkeeping")

    # fixtures are callable from python
    names = mqr.fixture_names()
    check("wild-plane" in names, "fixture names")
    ok, report = mqr.verify_fixture("gelfand-d4")
    check(ok, "gelfand fixture passes:\n" + report)

    # errors surface as python exceptions
    try:
        mqr.Spec.parse("quiver { vertices: a ; arrows: }")
        raise SystemExit("FAIL: invalid document accepted")
    except mqr.SpecValidationError:
        pass
    try:
        mqr.Spec.parse("nonsense")
        raise SystemExit("FAIL: garbage accepted")
    except mqr.SpecParseError:
        pass

    print("python smoke tests passed")


if __name__ == "__main__":
    main()
