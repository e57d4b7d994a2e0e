"""Suite configuration, orchestration, reports and character tables.

A suite is a JSON document validated against ``schema/suite.schema.json``.
Each entry of ``checks`` is one independent job; jobs run in worker
processes, write their reports into indexed slots, and the merged report
list is ordered by instance descriptor, so the output does not depend on
completion order or on the number of workers.
"""

from __future__ import annotations

import inspect
import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from importlib import resources
from multiprocessing import get_context

import jsonschema

from qzalg.algebra import RELATION_FAMILIES, relation_instances
from qzalg.checking import (VERDICTS, Deadline, RelationReport, check_clifford, check_degree_instances,
                            check_instances, format_key, group_reports)
from qzalg.reps import CONSTRUCTIONS, ConstructionError, CoproductModule, build, tensor_basis
from qzalg.scalar import as_fraction, qk_power_series, qpow
from qzalg.spaces import enumerate_basis
from qzalg.zfactor import (basis_keys, check_exp_identity, check_z_relations, check_z_commutation, factorization_check,
                           heisenberg_dims, vacuum_basis, z_operator)

__all__ = [
    "ConfigError", "ENV_WORKERS", "load_schema", "load_config", "validate_config", "resolve_workers",
    "run_check", "run_suite", "suite_ok", "reports_json", "reports_text", "reports_from_json",
    "character_table", "character_text", "default_config_path",
]

ENV_WORKERS = "QZALG_WORKERS"
DEGREE_FAMILIES = ("d-a", "d-x")


class ConfigError(ValueError):
    """Invalid suite configuration; ``errors`` holds (field path, message) pairs."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.errors))


# ---------------------------------------------------------------------------
# configuration

def load_schema() -> dict:
    text = resources.files("qzalg").joinpath("schema/suite.schema.json").read_text()
    return json.loads(text)


def default_config_path(name="default") -> str:
    return str(resources.files("qzalg").joinpath(f"configs/{name}.json"))


def load_config(path) -> dict:
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError([("$", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}")]) from None
    except OSError as exc:
        raise ConfigError([("$", f"cannot read {path}: {exc.strerror}")]) from None
    return validate_config(cfg)


def _rank_of(construction) -> int:
    params = construction.get("params", {})
    cid = construction["id"]
    if cid == "f4":
        return 4
    if cid == "sl2-2":
        return 1
    return params.get("rank", 2 if cid in ("b", "c") else 1)


def validate_config(cfg) -> dict:
    """Schema validation followed by the cross-field rules; returns ``cfg``."""
    validator = jsonschema.Draft202012Validator(load_schema())
    errors = sorted(validator.iter_errors(cfg), key=lambda e: (list(map(str, e.absolute_path)), e.message))
    if errors:
        raise ConfigError([(e.json_path, e.message) for e in errors])
    problems = []
    seen = set()
    for n, chk in enumerate(cfg["checks"]):
        at = f"$.checks[{n}]"
        if chk["id"] in seen:
            problems.append((f"{at}.id", f"duplicate check id {chk['id']!r}"))
        seen.add(chk["id"])
        M, W, N = chk.get("mode_bound"), chk.get("window"), chk.get("series_order")
        if N is not None:
            if W is not None and N < W + (M or 0):
                problems.append((f"{at}.series_order", f"series order {N} is below window + mode bound {W + (M or 0)}"))
            if M is not None and M > N:
                problems.append((f"{at}.mode_bound", f"mode bound {M} exceeds series order {N}"))
        for key in ("construction", "right"):
            if key not in chk:
                continue
            con = chk[key]
            try:
                build(con["id"], **con.get("params", {}))
            except (ConstructionError, ValueError) as exc:
                problems.append((f"{at}.{key}.params", str(exc)))
                continue
            rank = _rank_of(con)
            for p, pair in enumerate(chk.get("pairs", [])):
                if max(pair) > rank:
                    problems.append((f"{at}.pairs[{p}]", f"index out of range for rank {rank}"))
            for p, node in enumerate(chk.get("nodes", [])):
                if node > rank:
                    problems.append((f"{at}.nodes[{p}]", f"index out of range for rank {rank}"))
        if chk["kind"] == "mutation" and chk.get("construction", {}).get("id") != "fj":
            problems.append((f"{at}.construction.id", "mutations are defined for the 'fj' construction"))
        if chk["kind"] == "variant_search":
            sw = chk["switch"]
            if sw != "xx_form":
                builder = CONSTRUCTIONS[chk["construction"]["id"]][0]
                if sw not in inspect.signature(builder).parameters:
                    problems.append((f"{at}.switch", f"construction {chk['construction']['id']!r} has no switch {sw!r}"))
                if sw in chk["construction"].get("params", {}):
                    problems.append((f"{at}.construction.params.{sw}", "the searched switch must not be fixed"))
    if problems:
        raise ConfigError(problems)
    return cfg


def resolve_workers(cfg, env=None) -> int:
    """Worker count: the config key wins over the environment variable."""
    if cfg.get("workers") is not None:
        return cfg["workers"]
    env = os.environ if env is None else env
    raw = env.get(ENV_WORKERS)
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise ConfigError([(f"env:{ENV_WORKERS}", f"expected a positive integer, got {raw!r}")])
    return n


# ---------------------------------------------------------------------------
# check runners

def _build(con, **extra):
    params = dict(con.get("params", {}))
    params.update(extra)
    return build(con["id"], **params)


def _group(inst):
    if inst.rid in DEGREE_FAMILIES:
        return f"{inst.rid}({inst.params[0]})"
    return f"{inst.rid}({inst.params[0]},{inst.params[1]})"


def _relation_reports(rep, chk, deadline, keys=None, families=None):
    M, W = chk["mode_bound"], chk["window"]
    fams = families if families is not None else chk.get("families", RELATION_FAMILIES)
    rep.emax_hint = M
    if keys is None:
        keys = basis_keys(rep, W)
    insts = relation_instances(rep.alg, rep.level, M, chk.get("pairs"), fams, rep.D,
                               chk.get("xx_form", "form"), chk.get("view", "invariant"))
    t0 = time.perf_counter()
    deg = [i for i in insts if i.rid in DEGREE_FAMILIES]
    rest = [i for i in insts if i.rid not in DEGREE_FAMILIES]
    res = check_degree_instances(rep, deg, keys, deadline) if deg else {}
    res.update(check_instances(rep, rest, keys, deadline))
    return group_reports(rep, insts, res, _group, time.perf_counter() - t0)


def _run_series(chk, deadline):
    N = chk["order"]
    t0 = time.perf_counter()
    witness, pairs = None, 0
    for a in chk["a"]:
        for k in chk["k"]:
            a_, k_ = as_fraction(a), as_fraction(k)
            pairs += 1
            e = qk_power_series(a_, k_, N, method="exp")
            p = qk_power_series(a_, k_, N, method="product")
            if witness is None:
                for n in range(N + 1):
                    if e.coeff(n) != p.coeff(n):
                        witness = {"instance": f"(1-z)^{{{a_}/{k_}}}", "state": "scalar",
                                   "coefficient": f"z^{n}", "expected": str(e.coeff(n)),
                                   "actual": str(p.coeff(n))}
                        break
    r1 = RelationReport("exponential = product", "fail" if witness else "pass", witness,
                        {"pairs": pairs, "order": N}, time.perf_counter() - t0)
    t0 = time.perf_counter()
    witness = None
    for k in chk["k"]:
        k_ = as_fraction(k)
        for method in ("exp", "product"):
            s = qk_power_series(k_, k_, N, method=method)
            for n in range(N + 1):
                want = {0: 1, 1: -1}.get(n, 0)
                if s.coeff(n) != want and witness is None:
                    witness = {"instance": f"(1-z)^{{{k_}/{k_}}} [{method}]", "state": "scalar",
                               "coefficient": f"z^{n}", "expected": str(want), "actual": str(s.coeff(n))}
    r2 = RelationReport("a = k gives 1 - z", "fail" if witness else "pass", witness,
                        {"levels": len(chk["k"]), "order": N}, time.perf_counter() - t0)
    return [r1, r2]


def _run_relations(chk, deadline):
    rep = _build(chk["construction"])
    return _relation_reports(rep, chk, deadline)


def _run_exp_identities(chk, deadline):
    rep = _build(chk["construction"])
    idents = chk.get("identities") or list(range(1, 13))
    pairs = chk.get("pairs") or [[rep.alg.indices[0]] * 2]
    signs = chk.get("signs") or [1, -1]
    reading = chk.get("identity4_reading", "corrected")
    out, done = [], set()
    for ident in idents:
        for i, j in pairs:
            if ident >= 9:
                j = i          # one-node identities
            for s in signs:
                if (ident, i, j, s) in done:
                    continue
                done.add((ident, i, j, s))
                out.append(check_exp_identity(rep, ident, i, j, chk["window"], s, reading))
    return out


def _run_z_relations(chk, deadline):
    rep = _build(chk["construction"])
    pairs = chk.get("pairs") or [[rep.alg.indices[0]] * 2]
    keys = basis_keys(rep, chk["window"])
    out = []
    for i, j in pairs:
        out.extend(check_z_relations(rep, i, j, chk["window"], chk.get("variant", "corrected"), keys))
    return out


def _run_z_operator(chk, deadline):
    rep = _build(chk["construction"])
    out = []
    for i in chk.get("nodes") or rep.alg.indices:
        for s in (1, -1):
            out.append(z_operator(rep, i, s, chk["window"]))
            if chk.get("z_commutation", True):
                out.append(check_z_commutation(rep, i, s, chk["window"], chk.get("mode_bound")))
    return out


def _run_factorization(chk, deadline):
    rep = _build(chk["construction"])
    return factorization_check(rep, chk["window"], chk.get("mode_window"))


def _run_clifford(chk, deadline):
    return check_clifford(chk["s"], chk["depth"], chk.get("base", 1), chk.get("zero_mode"))


def _run_coproduct(chk, deadline):
    left = _build(chk["construction"])
    right = _build(chk.get("right", chk["construction"]))
    cm = CoproductModule(left, right, chk.get("xplus_reading", "derived"))
    M, W = chk["mode_bound"], chk["window"]
    left.emax_hint = right.emax_hint = M
    keys = tensor_basis(cm, W)
    fams = chk.get("families", ["a-a", "a-x"])
    insts = relation_instances(cm.alg, cm.level, M, chk.get("pairs"), fams, cm.D,
                               chk.get("xx_form", "form"), chk.get("view", "invariant"))
    t0 = time.perf_counter()
    res = check_instances(cm, insts, keys, deadline)
    out = group_reports(cm, insts, res, _group, time.perf_counter() - t0)
    want = qpow(cm.level, cm.D)
    witness = None
    for key in keys:
        v = cm.vector(key)
        got = cm.act_gamma(v)
        if got != v.scaled(want):
            witness = {"instance": "Delta(gamma)", "state": format_key(key), "coefficient": format_key(key),
                       "expected": str(want), "actual": str(got.get(key))}
            break
    out.append(RelationReport(f"Delta(gamma) = q^{cm.level}", "fail" if witness else "pass", witness,
                              {"states": len(keys)}))
    return out


def _run_variant_search(chk, deadline):
    sw, values = chk["switch"], chk["values"]
    con = chk["construction"]
    builder = CONSTRUCTIONS[con["id"]][0]
    if sw == "xx_form":
        default = "form"
    else:
        default = inspect.signature(builder).parameters[sw].default
    outcomes = []
    for value in values:
        if sw == "xx_form":
            rep = _build(con)
            sub = dict(chk, xx_form=value)
        else:
            rep = _build(con, **{sw: value})
            sub = chk
        reps = _relation_reports(rep, sub, deadline)
        bad = next((r for r in reps if not r.ok), None)
        outcomes.append((value, "pass" if bad is None else bad.verdict, bad))
    notes = []
    for value, verdict, bad in outcomes:
        line = f"{sw}={value}: {verdict}"
        if value == default:
            line += " (construction default)"
        if bad is not None and bad.witness:
            line += f"; first failure {bad.witness['instance']} on {bad.witness['state']}"
        notes.append(line)
    passing = [v for v, verdict, _ in outcomes if verdict == "pass"]
    if passing:
        default_ok = any(v == default and verdict == "pass" for v, verdict, _ in outcomes)
        if default_ok:
            notes.append(f"no variant required: the default {sw}={default} passes")
        else:
            notes.append(f"variant required: {sw} in {{{', '.join(map(str, passing))}}}")
        return [RelationReport(f"{sw} search", "pass", None, {"values": len(values), "passing": len(passing)},
                               notes=notes)]
    worst = "timeout" if any(v == "timeout" for _, v, _ in outcomes) else "fail"
    first = next(b for _, v, b in outcomes if b is not None)
    witness = first.witness or {"instance": first.instance, "state": "-", "coefficient": "-",
                                "expected": "pass", "actual": first.verdict}
    if worst == "timeout" and all(v != "fail" for _, v, _ in outcomes):
        return [RelationReport(f"{sw} search", "timeout", None, {"values": len(values), "passing": 0}, notes=notes)]
    return [RelationReport(f"{sw} search", "fail", witness, {"values": len(values), "passing": 0}, notes=notes)]


def _run_mutation(chk, deadline):
    rep = _build(chk["construction"], mutate={chk["mutation"]: True})
    reps = _relation_reports(rep, chk, deadline)
    caught = next((r for r in reps if r.verdict == "fail"), None)
    name = f"mutation {chk['mutation']} detected"
    if caught is not None:
        return [RelationReport(name, "pass", caught.witness, {"reports": len(reps)},
                               notes=[f"detected by {caught.instance}"])]
    if any(r.verdict == "timeout" for r in reps):
        return [RelationReport(name, "timeout", None, {"reports": len(reps)})]
    return [RelationReport(name, "fail", {"instance": name, "state": "-", "coefficient": "-",
                                          "expected": "at least one failing relation",
                                          "actual": "every relation holds"}, {"reports": len(reps)})]


RUNNERS = {
    "series": _run_series,
    "relations": _run_relations,
    "exp_identities": _run_exp_identities,
    "z_relations": _run_z_relations,
    "z_operator": _run_z_operator,
    "factorization": _run_factorization,
    "clifford": _run_clifford,
    "coproduct": _run_coproduct,
    "variant_search": _run_variant_search,
    "mutation": _run_mutation,
}


def run_check(chk, time_limit=None) -> list:
    """Run one check; report instances are prefixed with the check id."""
    t0 = time.perf_counter()
    reports = RUNNERS[chk["kind"]](chk, Deadline(time_limit))
    elapsed = time.perf_counter() - t0
    for r in reports:
        r.instance = f"{chk['id']}: {r.instance}"
    if reports and not any(r.seconds for r in reports):
        reports[0].seconds = elapsed
    return reports


def _slot(args):
    index, chk, time_limit = args
    return index, run_check(chk, time_limit)


def run_suite(cfg, workers=None) -> list:
    """Validate, run every check and return reports sorted by instance descriptor."""
    cfg = validate_config(cfg)
    n = workers if workers is not None else resolve_workers(cfg)
    checks = cfg["checks"]
    limit = cfg.get("time_limit")
    slots = [None] * len(checks)
    jobs = [(i, chk, limit) for i, chk in enumerate(checks)]
    if n <= 1 or len(checks) <= 1:
        for job in jobs:
            i, reps = _slot(job)
            slots[i] = reps
    else:
        with ProcessPoolExecutor(max_workers=n, mp_context=get_context("spawn")) as pool:
            for i, reps in pool.map(_slot, jobs):
                slots[i] = reps
    reports = [r for reps in slots for r in reps]
    reports.sort(key=lambda r: r.instance)
    return reports


def suite_ok(reports) -> bool:
    return all(r.ok for r in reports)


# ---------------------------------------------------------------------------
# report rendering

def reports_json(reports, wall_clock=False) -> str:
    return json.dumps([r.to_json(wall_clock) for r in reports], indent=2) + "\n"


def reports_from_json(text) -> list:
    out = []
    for d in json.loads(text):
        timing = dict(d.get("timing", {}))
        seconds = timing.pop("seconds", 0.0)
        out.append(RelationReport(d["instance"], d["verdict"], d.get("witness"), timing, seconds,
                                  list(d.get("notes", []))))
    return out


def reports_text(reports, name=None) -> str:
    lines = []
    if name:
        lines.append(f"suite: {name}")
    for r in reports:
        lines.append(f"{r.verdict.upper():8} {r.instance}")
        if r.witness and r.verdict != "pass":
            w = r.witness
            lines.append(f"         witness: {w.get('instance')} on {w.get('state')} at {w.get('coefficient')}: "
                         f"expected {w.get('expected')}, got {w.get('actual')}")
        for note in r.notes:
            lines.append(f"         note: {note}")
    counts = {v: sum(1 for r in reports if r.verdict == v) for v in VERDICTS}
    total = sum(r.seconds for r in reports)
    lines.append(f"{len(reports)} reports: " + ", ".join(f"{counts[v]} {v}" for v in VERDICTS)
                 + f" ({total:.1f} s)")
    lines.append("ALL PASS" if suite_ok(reports) else "NOT ALL PASS")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# character tables

def _degree_str(d: Fraction) -> str:
    return str(d) if d.denominator != 1 else str(int(d))


def character_table(cid, params=None, window=4) -> list:
    """Graded dimensions of V, K(k) and the vacuum space per degree.

    Degrees run from 0 down to -window; K(k) counts colored partitions with
    one color per node, the vacuum space counts basis vectors free of
    Heisenberg factors.
    """
    rep = build(cid, **(params or {}))
    window = as_fraction(window)
    V = {d: len(v) for d, v in enumerate_basis(rep.space, window).items()}
    vac = vacuum_basis(rep, window, verify=False).dims()
    K = heisenberg_dims(len(rep.alg.indices), math.floor(window))
    degrees = sorted(set(V) | set(vac) | set(K), reverse=True)
    return [{"degree": _degree_str(d), "V": V.get(d, 0), "K": K.get(d, 0), "Omega": vac.get(d, 0)}
            for d in degrees if d >= -window]


def character_text(records, title="") -> str:
    lines = [title] if title else []
    lines.append(f"{'degree':>8} {'V':>8} {'K(k)':>8} {'Omega':>8}")
    for rec in records:
        lines.append(f"{rec['degree']:>8} {rec['V']:>8} {rec['K']:>8} {rec['Omega']:>8}")
    return "\n".join(lines) + "\n"
