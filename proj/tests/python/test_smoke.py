import json

import pytest

import intentic

OR_ELIM_NH = {
    "format_version": 1,
    "proof": {
        "rule": "or_e_nh",
        "conclusion": "R(c)",
        "premises": [
            {"rule": "assume", "conclusion": "P(c) | Q(c)"},
            {"rule": "assume", "conclusion": "P(c) -> R(c)"},
            {"rule": "assume", "conclusion": "Q(c) -> R(c)"},
        ],
    },
}

IMP_INTRO = {
    "format_version": 1,
    "proof": {
        "rule": "imp_i",
        "conclusion": "P(c) -> P(c)",
        "discharge": "h",
        "premises": [{"rule": "assume", "conclusion": "P(c)", "label": "h"}],
    },
}


def test_parse():
    assert intentic.parse("P(0) & (Q(0) & R(0))") == "P(0) & Q(0) & R(0)"
    with pytest.raises(intentic.ParseError):
        intentic.parse("P(0) &")


def test_check_logics():
    j = intentic.check(json.dumps(OR_ELIM_NH), "nh", ["c"])
    assert j["conclusion"] == "R(c)"
    assert len(j["open_assumptions"]) == 3
    assert intentic.check(json.dumps(IMP_INTRO), "classical", ["c"])["open_assumptions"] == []
    with pytest.raises(intentic.Rejected):
        intentic.check(json.dumps(IMP_INTRO), "nh", ["c"])


def test_entail_round_trip():
    out = intentic.entail([], IMP_INTRO, ["c"])
    assert {"state", "fine_cert", "witness", "extracted"} <= out.keys()
    back = intentic.check(json.dumps({"format_version": 1, "proof": out["extracted"]}), "classical", ["c"])
    assert back["conclusion"] == "P(c) -> P(c)"


def test_pa_prove():
    r = intentic.pa_prove("forall x. exists y. S(x,y)")
    assert r["proved"]
    assert r["proof"]["proof"]["rule"] == "assume"
    assert not intentic.pa_prove("S(0,0)")["proved"]
    assert intentic.pa_prove("a = b", extras=["const a b", "S(0,a)", "S(0,b)"])["proved"]


def test_frames_fuzz():
    s = intentic.frames_fuzz(5, 50)
    assert (s["trials"], s["pass"], s["fail"]) == (50, 50, 0)


def test_cli_run():
    code, out, _ = intentic.run(["pa", "prove", "S(0,0)"])
    assert code == 2
    assert json.loads(out)["verdict"] == "exhausted"
