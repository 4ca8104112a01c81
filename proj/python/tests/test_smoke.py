import pathlib

import pytest

import avasskit

CORPUS = pathlib.Path(__file__).resolve().parents[2] / "tests" / "corpus"


def load(name):
    return avasskit.parse_machine((CORPUS / name).read_text())


def test_parse_and_classify():
    m1 = load("m1.cm")
    assert m1.name == "M1"
    assert m1.states == ["q1", "q2"]
    assert len(m1.transitions) == 4
    info = avasskit.classify(m1)
    assert info["avass"]
    assert not info["vass"]


def test_semilinear_set_algebra():
    evens = avasskit.SemilinearSet([(0, None, 2, 0)])
    small = avasskit.SemilinearSet([(0, 9, 1, 0)])
    assert 10**30 in evens
    assert 3 not in evens
    assert evens.union(evens.complement()).is_full
    assert evens.intersection(small).min_element() == 0
    assert evens.complement().min_element() == 1
    assert small.subset_of(small.union(evens))
    assert avasskit.SemilinearSet([]).is_empty


def test_prestar_agrees_with_reachability():
    m1 = load("m1.cm")
    sets = avasskit.prestar(m1, "q1:19")
    assert set(sets) == {"q1", "q2"}
    for n in range(60):
        assert (n in sets["q1"]) == avasskit.reachable(m1, f"q1:{n}", "q1:19")


def test_coverability_both_ways():
    m2 = load("m2.cm")
    src = m2.states[0] + ":0"
    dst = m2.states[-1] + ":1"
    assert avasskit.coverable(m2, src, dst) == avasskit.coverable_via_reduction(m2, src, dst)


def test_well_structured_and_monotone():
    verdict = avasskit.is_well_structured(load("m1.cm"))
    assert set(verdict) == {"holds", "transition", "counterexample"}
    assert avasskit.is_strongly_monotone(load("double_count.cm"))["holds"]
    # The guard [3..] mod 2 = 1 is not upward closed.
    assert not avasskit.is_strongly_monotone(load("vass1.cm"))["holds"]


def test_total_positive_reachability():
    m = load("double_count.cm")
    assert avasskit.reachable_total_positive(m, "q:0,0", "q:7,3")
    assert not avasskit.reachable_total_positive(m, "q:0,0", "q:2,1")


def test_wqo():
    assert avasskit.is_wqo("x <= y")["result"] == "wqo"
    assert avasskit.is_wqo("x >= y")["result"] == "not-wqo"


def test_post_star_is_bounded():
    configs, truncated = avasskit.post_star(load("double_count.cm"), "q:0,0", max_value=100)
    assert ("q", [63, 6]) in configs
    assert ("q", [127, 7]) not in configs
    assert truncated


def test_generators():
    examples = avasskit.builtin_examples()
    assert [m.name for m in examples][:2] == ["M1", "M2"]
    minsky = load("minsky2.cm")
    n1 = avasskit.build_n1(minsky, minsky.states[-1])
    assert n1.dim == 1 and n1.flavor == "relational"
    n2 = avasskit.build_n2(minsky, minsky.states[-1])
    assert n2.dim == 4
    pcp = avasskit.build_pcp_machine([("1", "101"), ("10", "00"), ("011", "11")])
    assert pcp.states == ["q0", "q1", "q2"]
    assert "machine" in pcp.text()


def test_errors():
    with pytest.raises(ValueError):
        avasskit.parse_machine("machine broken\ndim 1\ntrans a -> b : x' = 1x + 0\n")
    with pytest.raises(avasskit.InputError):
        avasskit.build_pcp_machine([("12", "1")])
    with pytest.raises(ValueError):
        avasskit.prestar(load("m1.cm"), "nowhere:3")
