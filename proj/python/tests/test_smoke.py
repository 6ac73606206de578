import os
import pathlib

import pytest

import lstab

DATA = pathlib.Path(os.environ.get("LSTAB_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data"))


@pytest.fixture(scope="module")
def three_chain():
    return lstab.parse_document((DATA / "three_chain.lstab").read_text())


def test_version():
    assert lstab.__version__ == "0.1.0"


def test_three_chain_verdicts(three_chain):
    assert lstab.euler_characteristic(three_chain) == 0
    assert lstab.decide_ell(three_chain, strict=True)["status"] == "CertifiedYes"
    for w in (["1/3", "1/3", "1/3"], ["1/2", "1/4", "1/4"], ["1/10", "1/10", "8/10"]):
        v = lstab.decide_w(three_chain, w, strict=True)
        assert v["status"] == "CertifiedNo"
        assert v["witness_ranks"] == [2, 0, 0]
        assert v["witness_chi"] == 0
    lp = lstab.exists_polarization(three_chain, strict=True)
    assert lp["outcome"] == "Infeasible"
    assert "(2,0,0)" in lp["certificate"]


def test_semistable_polarization_exists(three_chain):
    lp = lstab.exists_polarization(three_chain, strict=False)
    assert lp["outcome"] == "Feasible"
    assert lstab.decide_w(three_chain, lp["witness"])["status"] == "CertifiedYes"


def test_run_query_matches_cli_contract(three_chain):
    code, fields = lstab.run_query(three_chain, "find-polarization --strict")
    assert code == 1
    assert dict(fields)["result"] == "Infeasible (w-stable)"
    assert [k for k, _ in fields[:8]] == [
        "tool", "version", "digest", "query", "bundle", "gluing", "model", "result"]
    text = lstab.render_query(three_chain, "chi")
    assert "result: 0\n" in text
    assert lstab.render_query(three_chain, "chi", machine=True).startswith("tool\tlstab\n")


def test_round_trip(three_chain):
    again = lstab.parse_document(three_chain.serialize())
    assert again == three_chain
    assert again.digest() == three_chain.digest()
    assert three_chain.bundles == ["E"]
    assert len(three_chain.queries) == 6


def test_errors_raise():
    with pytest.raises(lstab.LstabError, match="splitting sum 3"):
        lstab.parse_document(
            "curve { component P genus 0 }\nbundle E { rank 2 degree P 4 splitting P 3,0 }\n")
    doc = lstab.parse_document("curve { component P genus 0 }\nbundle O { rank 1 degree P 0 }\n")
    assert lstab.euler_characteristic(doc) == 1
    with pytest.raises(lstab.LstabError):
        lstab.decide_w(doc, ["1/2", "1/2"])
