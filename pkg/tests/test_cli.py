import json

from click.testing import CliRunner

from veronese_kit.cli import SCHEMA, main


def run(args, input=None):
    return CliRunner().invoke(main, args, input=input, catch_exceptions=False)


def run_json(args, input=None):
    res = run(args, input=input)
    doc = json.loads(res.output)
    assert doc["schema"] == SCHEMA
    assert set(doc) == {"schema", "status", "payload", "log"}
    return res.exit_code, doc


def test_eqs_text_single_conic_generator():
    res = run(["eqs", "--d", "2", "--n", "6"])
    assert res.exit_code == 0
    lines = res.output.strip().splitlines()
    assert lines == [
        "(1,2,3,4,5,6) + |1 2 3||1 4 5||2 4 6||3 5 6| - |1 2 4||1 3 5||2 3 6||4 5 6|"
    ]


def test_eqs_counts():
    code, doc = run_json(["eqs", "--d", "2", "--n", "8", "--format", "json"])
    assert code == 0 and doc["payload"]["count"] == 28
    code, doc = run_json(["eqs", "--d", "3", "--n", "7", "--format", "json"])
    assert code == 0 and doc["payload"]["count"] == 7
    gen0 = doc["payload"]["generators"][0]
    assert gen0["I"] == [1, 2, 3, 4, 5, 6] and gen0["J"] == [1, 2, 3, 4, 5, 6, 7]
    assert gen0["ground"] == 7 and gen0["width"] == 4


def test_eqs_precondition_errors():
    code, doc = run_json(["eqs", "--d", "3", "--n", "6"])
    assert code == 2 and doc["status"] == "PreconditionFailed"
    code, doc = run_json(["eqs", "--d", "1", "--n", "9"])
    assert code == 2


def test_sample_eval_round_trip_conic():
    res = run(["sample", "--family", "rnc", "--d", "2", "--n", "7", "--field", "Q", "--seed", "3"])
    assert res.exit_code == 0
    code, doc = run_json(["eval"], input=res.output)
    assert code == 0
    rep = doc["payload"]["report"]
    assert rep["kind"] == "conic" and rep["all_vanish"] is True and rep["checked"] == 7


def test_eval_reports_planar_annotation():
    res = run(["sample", "--family", "degenerate", "--d", "3", "--n", "9", "--seed", "1"])
    code, doc = run_json(["eval"], input=res.output)
    assert code == 0
    rep = doc["payload"]["report"]
    assert rep["classification"] == "InY"
    assert rep["in_V"] == "unknown (n>=9)"


def test_eval_generic_witness():
    res = run(["sample", "--family", "generic", "--d", "3", "--n", "8", "--seed", "2"])
    code, doc = run_json(["eval"], input=res.output)
    rep = doc["payload"]["report"]
    assert rep["classification"] == "NotInW" and rep["in_V"] is False
    assert rep["witness"] is not None and len(rep["witness"]["J"]) == 7


def test_gale_chain_to_conic_equations():
    res = run(["sample", "--family", "rnc", "--d", "3", "--n", "7", "--field", "Q", "--seed", "4"])
    code, gale_doc = run_json(["gale"], input=res.output)
    assert code == 0
    assert gale_doc["payload"]["certificate"]["ok"] is True
    cfg = gale_doc["payload"]["config"]
    assert cfg["d"] == 2 and cfg["n"] == 7
    code, eval_doc = run_json(["eval"], input=json.dumps(gale_doc))
    assert code == 0 and eval_doc["payload"]["report"]["all_vanish"] is True


def test_eval_rejects_malformed_json():
    code, doc = run_json(["eval"], input="{not json")
    assert code == 2 and doc["status"] == "PreconditionFailed"
    assert "malformed JSON" in doc["payload"]["error"]


def test_eval_rejects_documents_without_config():
    code, doc = run_json(["eval"], input=json.dumps({"schema": SCHEMA}))
    assert code == 2


def test_sample_chain_needs_degrees():
    code, doc = run_json(["sample", "--family", "chain", "--d", "3", "--n", "8"])
    assert code == 2 and "--degrees" in doc["payload"]["error"]
    code, doc = run_json(
        ["sample", "--family", "chain", "--d", "3", "--n", "8", "--degrees", "2,1"]
    )
    assert code == 0
    assert doc["payload"]["descriptor"]["degrees"] == [2, 1]


def test_sample_output_is_byte_stable():
    args = ["sample", "--family", "generic", "--d", "2", "--n", "6", "--seed", "7"]
    assert run(args).output == run(args).output


def test_transversal_command():
    edges = json.dumps([[1, 2, 3], [2, 3, 4], [3, 4, 5], [1, 4, 5], [1, 2, 5]])
    code, doc = run_json(["transversal", "--n", "5", "--k", "3", "--edges", edges, "--min", "exact"])
    assert code == 0
    payload = doc["payload"]
    assert payload["transversal"] is True and payload["failing_partition"] is None
    assert payload["minimum"]["size"] == 5
    assert payload["bounds"] == {"incidence": 4, "averaging": 5}


def test_transversal_failing_partition_surfaces():
    code, doc = run_json(["transversal", "--n", "5", "--k", "3", "--edges", "[[1,2,3]]"])
    assert code == 0
    assert doc["payload"]["transversal"] is False
    assert doc["payload"]["failing_partition"] == [[1, 2, 3], [4], [5]]


def test_transversal_budget_exceeded():
    code, doc = run_json(["transversal", "--n", "7", "--k", "5", "--min", "exact"])
    assert code == 3 and doc["status"] == "BudgetExceeded"


def test_dim_agrees_with_formula():
    code, doc = run_json(["dim", "--d", "2", "--n", "6"])
    assert code == 0
    assert doc["payload"]["estimate"] == 11
    assert doc["payload"]["agrees"] is True


def test_verify_single_suite():
    code, doc = run_json(["verify", "--suite", "dimension", "--seed", "0"])
    assert code == 0 and doc["payload"]["all_passed"] is True
    assert all(line.startswith("PASS [dimension]") for line in doc["log"])
    names = [r["name"] for r in doc["payload"]["suites"]["dimension"]]
    assert names  # at least one check ran
