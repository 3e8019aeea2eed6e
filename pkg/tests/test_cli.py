import json

from invarcoh.cli import main
from invarcoh.report import canonical_json, payload_hash


def run_cli(args):
    return main(args)


def read_payload(path):
    return json.loads(path.read_text())["payload"]


def test_group_info(tmp_path):
    out = tmp_path / "g"
    assert run_cli(["group-info", "--stock-group", "minus_identity", "--out", str(out)]) == 0
    doc = json.loads((tmp_path / "g.json").read_text())
    payload = doc["payload"]
    assert payload["order"] == 2
    assert payload["in_SL"] is True
    assert payload["gorenstein_by_watanabe"] is True
    assert doc["payload_sha256"] == payload_hash(payload)
    # markdown embeds the payload hash
    assert doc["payload_sha256"] in (tmp_path / "g.md").read_text()


def test_molien_and_figures(tmp_path):
    out = tmp_path / "m"
    assert run_cli(["molien", "--stock-group", "minus_identity", "--max-deg", "4",
                    "--out", str(out)]) == 0
    payload = read_payload(tmp_path / "m.json")
    assert payload["coefficients"] == [1, 0, 3, 0, 5]
    assert (tmp_path / "m_molien.png").exists()
    assert (tmp_path / "m_molien_coefficients.csv").exists()


def test_lc_job_file_with_flag_override(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({
        "field": {"kind": "Q"},
        "n": 2,
        "stock_group": "minus_identity",
        "ideal": ["x^2", "y^2"],
        "i": 2,
        "deg_from": -4,
        "deg_to": 0,
        "invariant_part": True,
    }))
    out = tmp_path / "lc"
    assert run_cli(["lc", "--job", str(job), "--out", str(out)]) == 0
    payload = read_payload(tmp_path / "lc.json")
    assert payload["per_degree"]["-2"] == {
        "status": "Stabilized", "dim": 1, "invariant_dim": 1, "level_reached": 3,
    }
    # flag overrides the job degree range
    out2 = tmp_path / "lc2"
    assert run_cli(["lc", "--job", str(job), "--deg-from", "-2", "--out", str(out2)]) == 0
    payload2 = read_payload(tmp_path / "lc2.json")
    assert payload2["deg_from"] == -2
    assert set(payload2["per_degree"]) == {"-2", "-1", "0"}


def test_parse_error_exit_code(tmp_path):
    assert run_cli(["lc", "--ideal", "x^^2", "--i", "2", "--deg-from", "-2",
                    "--deg-to", "0", "--out", str(tmp_path / "x")]) == 2


def test_missing_input_exit_code(tmp_path):
    assert run_cli(["lc", "--i", "2", "--deg-from", "-2", "--deg-to", "0",
                    "--out", str(tmp_path / "x")]) == 2


def test_not_stabilized_exit_code(tmp_path):
    assert run_cli(["lc", "--ideal", "x", "--i", "1", "--deg-from", "0",
                    "--deg-to", "0", "--out", str(tmp_path / "x")]) == 3


def test_invariant_part_requires_invariant_ideal(tmp_path):
    assert run_cli(["lc", "--ideal", "x,y", "--stock-group", "minus_identity",
                    "--i", "2", "--deg-from", "-3", "--deg-to", "0",
                    "--invariant-part", "--out", str(tmp_path / "x")]) == 2


def test_socle_command(tmp_path):
    out = tmp_path / "s"
    assert run_cli(["socle", "--ideal", "x,y", "--i", "2", "--deg-from", "-5",
                    "--deg-to", "0", "--m-gens", "x,y", "--out", str(out)]) == 0
    payload = read_payload(tmp_path / "s.json")
    assert payload["total"] == 1
    assert payload["per_degree"]["-2"] == 1


def test_verify_fixed_commute(tmp_path):
    out = tmp_path / "vf"
    assert run_cli(["verify-fixed-commute", "--trials", "6", "--seed", "3",
                    "--out", str(out)]) == 0
    payload = read_payload(tmp_path / "vf.json")
    assert payload["failures"] == 0
    assert len(payload["rows"]) == 6


def test_determinism_byte_identical_payload(tmp_path):
    args = ["socle", "--ideal", "x,y", "--i", "2", "--deg-from", "-5",
            "--deg-to", "0", "--m-gens", "x,y"]
    assert run_cli(args + ["--out", str(tmp_path / "a")]) == 0
    assert run_cli(args + ["--out", str(tmp_path / "b")]) == 0
    pa = canonical_json(read_payload(tmp_path / "a.json"))
    pb = canonical_json(read_payload(tmp_path / "b.json"))
    assert pa.encode() == pb.encode()


def test_cache_roundtrip_and_tamper(tmp_path, monkeypatch):
    cache = tmp_path / "cache"
    monkeypatch.setenv("INVARCOH_CACHE_DIR", str(cache))
    args = ["invariants", "--stock-group", "minus_identity", "--max-deg", "6"]
    assert run_cli(args + ["--out", str(tmp_path / "cold")]) == 0
    cold = read_payload(tmp_path / "cold.json")
    entries = list(cache.glob("*.json"))
    assert len(entries) == 1
    # warm hit: identical payload
    assert run_cli(args + ["--out", str(tmp_path / "warm")]) == 0
    assert read_payload(tmp_path / "warm.json") == cold
    # tamper: checksum fails, value recomputed, payload still correct
    entry = json.loads(entries[0].read_text())
    entry["value"]["max_deg"] = 999
    entries[0].write_text(json.dumps(entry))
    assert run_cli(args + ["--out", str(tmp_path / "re")]) == 0
    assert read_payload(tmp_path / "re.json") == cold


def test_group_generators_in_job(tmp_path):
    job = tmp_path / "job.json"
    job.write_text(json.dumps({
        "field": {"kind": "GFp", "p": 7},
        "group_generators": [[["2", "0"], ["0", "2"]]],
    }))
    out = tmp_path / "g7"
    assert run_cli(["group-info", "--job", str(job), "--out", str(out)]) == 0
    payload = read_payload(tmp_path / "g7.json")
    assert payload["order"] == 3
    assert payload["in_SL"] is False
