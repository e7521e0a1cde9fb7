import json
import pathlib

import pytest

import fixpoint as fp

DATA = pathlib.Path(__file__).resolve().parents[2] / "data"


def test_chain_basics():
    c = fp.Poset.chain(3)
    assert len(c) == 3
    assert c.leq(0, 2)
    assert c.top == 2 and c.bottom == 0
    assert fp.map_count(c, c) == 10
    holds, witness = fp.has_fpp(c)
    assert holds and witness is None


def test_antichain_witness():
    holds, witness = fp.has_fpp(fp.Poset.antichain(2))
    assert not holds
    assert witness == [1, 0]
    assert fp.find_selection_map(fp.Poset.antichain(2))["sat"] is False


def test_nine_point_file():
    name, p = fp.read_poset_file(DATA / "nine_point.json")
    assert name == "nine_point"
    assert len(p) == 9
    assert fp.has_fpp(p)[0]
    report = fp.core(p)
    assert report["dismantlable"] is False
    assert len(report["core"]["elements"]) == 9
    assert fp.find_selection_map(p)["sat"] is True


def test_parse_and_errors():
    _, p = fp.parse_poset("# comment\n2\n0 1\n")
    assert p == fp.Poset.chain(2)
    with pytest.raises(fp.FixpointError, match="CycleDetected"):
        fp.parse_poset("2\n0 1\n1 0\n")
    doc = p.to_json("c2")
    assert json.loads(json.dumps(doc))["name"] == "c2"


def test_retract_and_wrt():
    assert fp.is_retract(fp.Poset.chain(3), fp.Poset.chain(2))
    assert not fp.is_retract(fp.Poset.antichain(2), fp.Poset.chain(2))
    assert fp.fpp_with_respect_to(fp.Poset.chain(2), fp.Poset.chain(3))


def test_scan_counts():
    result = fp.scan(4, jobs=2)
    assert [s["classes"] for s in result["summary"]] == [1, 2, 5, 16]
    assert len(result["records"]) == 24


def test_interval_lab():
    assert fp.fixed_point_set("1/2") == [("2/1", "2/1")]
    assert fp.fixed_point_set("1") == [("1/1", "2/1")]
    assert fp.fixed_point_set("3/2") == [("1/1", "1/1")]
    coords, exact, _ = fp.radial_retraction(["3/2", "0"])
    assert coords == ["3/4", "0/1"] and exact
    assert fp.banach_stability_gap("1/2", "1/8") == ("1/4", "1/4")
