"""Smoke test for the pyquartrep extension: python python/smoke_test.py"""

import json

import pyquartrep as q


def main():
    f = q.Poly("(x^2 - 2*y^2)^2 + x")
    assert f.total_degree == 4
    assert f.eval(-239, 169) == "-238"

    r = q.analyze(f)
    assert (r.tag, r.leaf) == ("UnboundedBelow", "quadratic_linear_drift"), r
    r.verify()
    q.verify(r.to_json())
    assert r.to_json() == q.analyze(f).to_json()
    d = r.to_dict()
    assert d["certificate"]["recipe"]["family"]["convergents_used"] <= 40

    bad = json.loads(r.to_json())
    bad["certificate"]["points"][0]["value"] = "12345"
    try:
        q.verify(json.dumps(bad))
    except ValueError as e:
        assert str(e).startswith("evaluation"), e
    else:
        raise AssertionError("tampered report verified")

    g = f.apply_unimodular(1, 1, 0, 1)
    assert q.analyze(g).tag == r.tag

    rows, exhaustive = q.count_table("x^2 + y^2", [10_000, 100_000])
    assert rows == [(10_000, 2_749), (100_000, 24_028)] and exhaustive
    fit = q.density("x^2 + y^2", [10_000, 100_000], "LandauLogHalf")
    assert fit["class"] == "LandauLogHalf"

    values, exhaustive = q.enumerate_values("x^2 + y^2", 10, 10)
    assert values == [0, 1, 2, 4, 5, 8, 9, 10] and exhaustive
    mv = q.missing_value_search("x^4 + y^4 + x")
    assert mv["value"] == 4 and mv["rigorous"]

    assert q.sector_count(0, 1, 1, "1", 1024) > 0
    assert q.reducible_specialization_count("x^2 - y", 10_000) == 101
    assert q.cubic_curve("y^2 - x^3 - x^2")["class"] == "Genus0"
    assert q.cubic_curve("y^2 - x^3 + 2")["class"] == "Genus1"

    for bad_input in ["x^^2", "x^5 + y"]:
        try:
            q.analyze(bad_input)
        except ValueError:
            pass
        else:
            raise AssertionError(bad_input)
    print("pyquartrep smoke test: ok")


if __name__ == "__main__":
    main()
