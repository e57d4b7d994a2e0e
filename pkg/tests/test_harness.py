"""Suite configuration, scheduling and report rendering."""

import json

import pytest

from qzalg.harness import (ENV_WORKERS, ConfigError, character_table, default_config_path, load_config,
                           reports_from_json, reports_json, reports_text, resolve_workers, run_check, run_suite,
                           suite_ok, validate_config)

SMALL = {
    "name": "small",
    "checks": [
        {"id": "s", "kind": "series", "a": ["1/2", -1], "k": [1, 2], "order": 4},
        {"id": "rel", "kind": "relations", "construction": {"id": "fj", "params": {"type_": "A", "rank": 1}},
         "families": ["a-a", "x+x-"], "mode_bound": 1, "window": 1},
        {"id": "cl", "kind": "clifford", "s": "1/2", "depth": 2},
    ],
}


def errors_of(cfg):
    with pytest.raises(ConfigError) as ei:
        validate_config(cfg)
    return ei.value.errors


def test_shipped_configs_validate():
    for name in ("default", "acceptance"):
        cfg = load_config(default_config_path(name))
        assert cfg["checks"]


def test_schema_errors_carry_paths():
    bad = {"checks": [{"id": "x", "kind": "relations",
                       "construction": {"id": "fj", "params": {"rank": "2"}}}]}
    errs = dict(errors_of(bad))
    assert "integer" in errs["$.checks[0].construction.params.rank"]


@pytest.mark.parametrize("chk,where", [
    ({"id": "x", "kind": "relations", "construction": {"id": "fj", "params": {"type_": "A", "rank": 1}},
      "pairs": [[1, 2]], "mode_bound": 1, "window": 1}, "$.checks[0].pairs[0]"),
    ({"id": "x", "kind": "relations", "construction": {"id": "fj"}, "mode_bound": 3, "window": 2,
      "series_order": 4}, "$.checks[0].series_order"),
    ({"id": "x", "kind": "mutation", "construction": {"id": "b"}, "mutation": "cocycle", "mode_bound": 1,
      "window": 1},
     "$.checks[0].construction.id"),
    ({"id": "x", "kind": "variant_search", "construction": {"id": "fj"}, "switch": "sign_adjust",
      "values": ["none"], "mode_bound": 1, "window": 1}, "$.checks[0].switch"),
    ({"id": "x", "kind": "relations", "construction": {"id": "fj", "params": {"type_": "A", "rank": 1, "r": 5}},
      "mode_bound": 1, "window": 1},
     "$.checks[0].construction.params"),
])
def test_cross_field_rules(chk, where):
    assert where in [p for p, _ in errors_of({"checks": [chk]})]


def test_duplicate_ids():
    chk = {"id": "a", "kind": "series", "a": [1], "k": [1], "order": 2}
    assert errors_of({"checks": [chk, dict(chk)]})[0][0] == "$.checks[1].id"


def test_unreadable_and_malformed_files(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.json")
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ConfigError) as ei:
        load_config(p)
    assert "invalid JSON" in ei.value.errors[0][1]


def test_worker_precedence():
    assert resolve_workers({}, {}) == 1
    assert resolve_workers({}, {ENV_WORKERS: "3"}) == 3
    assert resolve_workers({"workers": 2}, {ENV_WORKERS: "3"}) == 2
    with pytest.raises(ConfigError):
        resolve_workers({}, {ENV_WORKERS: "zero"})


def test_empty_suite_passes():
    reports = run_suite({"checks": []}, 1)
    assert reports == [] and suite_ok(reports)


def test_reports_are_sorted_and_prefixed():
    reports = run_suite(SMALL, 1)
    names = [r.instance for r in reports]
    assert names == sorted(names)
    assert {n.split(":")[0] for n in names} == {"s", "rel", "cl"}
    assert suite_ok(reports)


def test_parallel_run_matches_serial():
    a = reports_json(run_suite(SMALL, 1))
    b = reports_json(run_suite(SMALL, 2))
    assert a == b


def test_json_round_trip_and_text():
    reports = run_suite(SMALL, 1)
    js = reports_json(reports)
    assert all("seconds" not in d["timing"] for d in json.loads(js))
    back = reports_from_json(js)
    assert reports_json(back) == js
    wall = json.loads(reports_json(reports, wall_clock=True))
    assert all("seconds" in d["timing"] for d in wall)
    text = reports_text(reports, "small")
    assert text.splitlines()[0] == "suite: small" and text.rstrip().endswith("ALL PASS")


def test_failures_are_reported_with_witness():
    chk = {"id": "m", "kind": "relations", "construction": {"id": "b", "params": {"rank": 2,
                                                                                  "sign_reading": "as_written"}},
           "families": ["x+x-"], "mode_bound": 1, "window": 1}
    reports = run_check(chk)
    bad = [r for r in reports if r.verdict == "fail"]
    assert bad and all(set(r.witness) >= {"instance", "state", "coefficient", "expected", "actual"} for r in bad)
    assert "witness:" in reports_text(reports)


def test_time_limit_gives_timeout():
    chk = {"id": "t", "kind": "relations", "construction": {"id": "fj", "params": {"type_": "A", "rank": 2}},
           "mode_bound": 2, "window": 2}
    reports = run_check(chk, time_limit=0)
    assert reports and all(r.verdict == "timeout" for r in reports)
    assert not suite_ok(reports)


def test_mutation_and_variant_checks():
    mut = run_check({"id": "m", "kind": "mutation", "construction": {"id": "fj", "params": {"type_": "A", "rank": 2}},
                     "mutation": "bracket", "families": ["a-a"], "mode_bound": 1, "window": 1})
    assert [r.verdict for r in mut] == ["pass"] and "detected by" in mut[0].notes[0]
    var = run_check({"id": "v", "kind": "variant_search", "construction": {"id": "sl2-2"},
                     "switch": "sign_reading", "values": ["as_written", "cocycle"],
                     "families": ["x+x-"], "mode_bound": 1, "window": 1})
    assert var[0].verdict == "pass"
    assert var[0].notes[-1] == "no variant required: the default sign_reading=cocycle passes"
    assert any("as_written" in n and "fail" in n for n in var[0].notes)


def test_character_table():
    rec = character_table("fj", {"type_": "A", "rank": 1}, 4)
    assert [r["V"] for r in rec] == [1, 3, 4, 7, 13]
    assert [r["K"] for r in rec] == [1, 1, 2, 3, 5]
    assert [r["Omega"] for r in rec] == [1, 2, 0, 0, 2]
    assert character_table("fj", {"type_": "A", "rank": 1}, 0) == [{"degree": "0", "V": 1, "K": 1, "Omega": 1}]
