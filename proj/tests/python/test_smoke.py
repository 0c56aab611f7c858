import os
from pathlib import Path

import pytest

import dvcm

FIXTURES = Path(os.environ.get("DVCM_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def f1():
    return dvcm.load_corpus(str(FIXTURES / "f1.json"))


def test_fixture_loads(f1):
    assert len(f1) == 10
    assert f1.shot_ids[0] == "sh01"
    assert len(f1.fingerprint) == 16


def test_indexed_and_scan_agree(f1):
    ix = dvcm.build_index(f1)
    q = 'find shots where dancer="Anitha" and step_class="ASHA"'
    assert dvcm.query(f1, q) == ["sh04", "sh06"]
    assert dvcm.query(f1, q, ix) == ["sh04", "sh06"]
    assert dvcm.query(f1, 'find cscenes where reflexion="romantic"', ix) == ["cs01"]


def test_synonyms_reach_joy(f1):
    assert dvcm.query(f1, 'find shots where reflexion="romantic"') == ["sh02", "sh04", "sh06"]


def test_fixture_eval_matches_table():
    report = dvcm.fixture_eval()
    assert [r["precision"] for r in report["rows"]] == pytest.approx([100, 50, 100, 100, 200 / 3])
    assert report["mean_recall"] == pytest.approx(100)
    assert report["mean_precision"] == pytest.approx(250 / 3)


def test_syntax_error_is_positioned():
    with pytest.raises(dvcm.QuerySyntaxError, match="line 1, col 19"):
        dvcm.query(dvcm.generate(5, seed=1), "find shots where  = ")


def test_roundtrip_and_validation():
    c = dvcm.generate(50, n_dancers=3, seed=9)
    assert dvcm.validate(c.to_json()) == []
    assert dvcm.corpus_from_json(c.to_json()) == c
    broken = c.to_json().replace('"scene_id": "sc', '"scene_id": "zz', 1)
    assert any(rule == "dangling-reference" for rule, _, _ in dvcm.validate(broken))


def test_small_helpers():
    assert dvcm.classify_song(["PA", "SA", "SA"]) == 2
    assert dvcm.classify_song(["CH"]) is None
    assert dvcm.allen_relation(0, 2, 2, 4) == "meets"
    assert dvcm.precision_recall(["a", "b"], ["a"]) == (50.0, 100.0)
    with pytest.raises(dvcm.InfeasibleParams):
        dvcm.generate(10, n_dancers=0)
