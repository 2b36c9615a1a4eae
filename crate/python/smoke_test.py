"""Smoke test for the pyregmap extension.

Build and install first, e.g. `maturin build --release -m crates/python/Cargo.toml`
followed by `pip install target/wheels/pyregmap-*.whl`.
"""

import json

import pyregmap


def main():
    octa = pyregmap.Map(pyregmap.MapParams("M4", m=3, n=2, i=0, l=0, j=1))
    inv = json.loads(octa.invariants())
    assert inv["type"] == [3, 4]
    assert (inv["V"], inv["E"], inv["F"], inv["genus"]) == (6, 12, 8, 0)
    assert octa.is_reflexible()
    assert octa.shape() == (3, 2)
    assert len(octa.edge_list()) == 12
    assert octa.dot().startswith("graph G {")

    p = pyregmap.MapParams.from_json('{"family": "M1", "p": 5, "e": 1, "j": 3}')
    assert p.group_order == 500 and p.label == "M1(5,1,3)"
    chiral = pyregmap.Map(p)
    assert not chiral.is_reflexible()
    assert not chiral.is_isomorphic(chiral.mirror())
    assert len(chiral.rotation_system()) == 25

    a = pyregmap.Map(pyregmap.MapParams("M3", m=3, n=3, j=1))
    b = pyregmap.Map(pyregmap.MapParams("M4", m=3, n=3, i=0, l=1, j=1))
    assert a.is_isomorphic(b)

    csv = pyregmap.coset_table("gens: a,b; relators: a^3, b^2, (a*b)^2")
    assert len(csv.strip().splitlines()) == 7

    verify = json.loads(pyregmap.verify_tables(3, 9))
    assert verify["totals"] == {"reflexible": 1, "chiral": 14, "total": 15}
    assert all(v["status"] != "FAIL" for v in verify["verdicts"])

    census = json.loads(pyregmap.census_report(3, 3))
    assert census["totals"]["total"] == 3

    assert pyregmap.geometric_sum(4, 9, 27) == 9

    try:
        pyregmap.MapParams("M4", m=3, n=9, i=1, l=2, j=1)
    except ValueError:
        pass
    else:
        raise AssertionError("menu violation accepted")

    print("pyregmap smoke test passed")


if __name__ == "__main__":
    main()
