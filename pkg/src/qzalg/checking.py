"""Relation reports and the exact relation checker.

A relation instance is a list of (coefficient, word) pairs whose sum must
act as zero.  The checker walks basis vectors in a fixed order and, for
each vector, evaluates every instance with a per-vector cache of word
suffixes, so shared suffixes are applied once.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from qzalg.algebra import RelationInstance, symbol_degree
from qzalg.scalar import QRat, as_fraction
from qzalg.spaces import FermionSpec, SpaceSpec, State, enumerate_basis, fermion_apply

__all__ = ["RelationReport", "WordEvaluator", "check_instances", "format_key",
           "format_state", "laurent_scaled", "Deadline", "group_reports",
           "check_degree_instances", "check_clifford", "VERDICTS"]

VERDICTS = ("pass", "fail", "starved", "timeout")


@dataclass
class RelationReport:
    """Outcome of one check.

    ``witness`` is required for failures: it records the instance, the basis
    vector, the coefficient index, the expected and the actual value.
    ``timing`` holds deterministic work counts; wall-clock seconds are kept
    separately in ``seconds`` and only serialized on request.
    """

    instance: str
    verdict: str
    witness: dict | None = None
    timing: dict = field(default_factory=dict)
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.witness:
            raise ValueError("a failing report needs a witness")

    @property
    def ok(self) -> bool:
        return self.verdict == "pass"

    def to_json(self, wall_clock=False) -> dict:
        d = {"instance": self.instance, "verdict": self.verdict,
             "witness": self.witness, "timing": dict(self.timing)}
        if wall_clock:
            d["timing"]["seconds"] = round(self.seconds, 3)
        if self.notes:
            d["notes"] = list(self.notes)
        return d


class Deadline:
    """Wall-clock budget shared by a suite; None means unlimited."""

    def __init__(self, seconds=None):
        self.end = None if seconds is None else time.monotonic() + seconds

    def expired(self) -> bool:
        return self.end is not None and time.monotonic() > self.end


def format_key(key) -> str:
    if len(key) == 2:
        return f"{format_key(key[0])} (x) {format_key(key[1])}"
    bos, lab, w, tag = key
    parts = [f"{f}{i}(-{n})" for f, i, n in bos]
    if lab is not None:
        parts.append(f"e^{lab[1]}" if lab[0] in ("0", "l0") else f"e^{lab[0]}{lab[1]}")
    if w:
        parts.append("psi" + "^".join(f"(-{m})" for m in w))
    if tag is not None:
        parts.append(f"tag{tag}")
    return "*".join(parts) if parts else "vac"


def format_state(st: State, limit=4) -> str:
    items = sorted(st.items(), key=lambda kv: repr(kv[0]))
    out = [f"({c})*{format_key(k)}" for k, c in items[:limit]]
    if len(items) > limit:
        out.append(f"... {len(items) - limit} more")
    return " + ".join(out) if out else "0"


def laurent_scaled(terms):
    """The coefficients multiplied by a common factor that makes them Laurent."""
    cs = [c for c, _ in terms]
    while True:
        bad = next((c for c in cs if not c.is_laurent()), None)
        if bad is None:
            return [(c, w) for c, (_, w) in zip(cs, terms)]
        f = QRat(bad.den, (1,), 0, bad.D)
        cs = [c * f for c in cs]


class WordEvaluator:
    """Applies words of mode symbols to one basis vector with suffix sharing."""

    def __init__(self, rep):
        self.rep = rep
        self.key = None
        self.cache = {}

    def set_key(self, key):
        self.key = key
        self.cache = {(): self.rep.vector(key)}

    def word(self, word) -> State:
        got = self.cache.get(word)
        if got is None:
            sub = self.word(word[1:])
            got = self.rep.act(word[0], sub) if sub else sub
            self.cache[word] = got
        return got

    def combine(self, terms) -> State:
        total = State()
        for c, w in terms:
            r = self.word(w)
            if r:
                total.add_state(r, c)
        return total


def check_instances(rep, instances, keys, deadline: Deadline | None = None):
    """Evaluate every instance on every key.

    Returns {descriptor: (verdict, witness or None, keys checked)}.
    """
    prepared = []
    for inst in instances:
        prepared.append((inst, laurent_scaled(inst.terms)))
    status = {inst.descriptor: ["pass", None, 0] for inst in instances}
    ev = WordEvaluator(rep)
    top = rep.space.top_degree
    expired = False
    for key in keys:
        ev.set_key(key)
        dk = rep.degree_of(key)
        for inst, terms in prepared:
            # checked per instance: one key can be expensive on large windows
            if deadline is not None and deadline.expired():
                expired = True
                break
            st = status[inst.descriptor]
            if st[0] != "pass":
                continue
            st[2] += 1
            if top is not None and inst.degree is not None and dk + inst.degree > top:
                continue
            total = ev.combine(terms)
            if total:
                st[0] = "fail"
                k0 = min(total, key=repr)
                st[1] = {"instance": inst.descriptor, "state": format_key(key),
                         "coefficient": format_key(k0), "expected": "0",
                         "actual": str(total[k0]), "residual": format_state(total)}
        if expired:
            for st in status.values():
                if st[0] == "pass":
                    st[0] = "timeout"
            break
    return {d: tuple(v) for d, v in status.items()}


def group_reports(rep, instances, results, group_of, seconds=0.0):
    """Merge per-instance results into one report per group, sorted by name."""
    groups = {}
    for inst in instances:
        groups.setdefault(group_of(inst), []).append(inst)
    out = []
    for name in sorted(groups):
        insts = groups[name]
        verdict, witness = "pass", None
        checks = 0
        for inst in insts:
            v, w, n = results[inst.descriptor]
            checks += n
            if v != "pass" and verdict == "pass":
                verdict, witness = v, w
            elif v == "fail" and verdict != "fail":
                verdict, witness = v, w
        out.append(RelationReport(name, verdict, witness,
                                  {"instances": len(insts), "evaluations": checks},
                                  seconds * len(insts) / max(1, len(instances))))
    return out


def check_degree_instances(rep, instances, keys, deadline: Deadline | None = None):
    """The d-a and d-x relations: each mode symbol shifts the degree by its mode.

    Same result shape as :func:`check_instances`.
    """
    status = {inst.descriptor: ["pass", None, 0] for inst in instances}
    for key in keys:
        if deadline is not None and deadline.expired():
            for st in status.values():
                if st[0] == "pass":
                    st[0] = "timeout"
            break
        dk = rep.degree_of(key)
        for inst in instances:
            st = status[inst.descriptor]
            if st[0] != "pass":
                continue
            st[2] += 1
            (_, word), = inst.terms
            want = dk + symbol_degree(word[0])
            for k in rep.apply_word(word, rep.vector(key)):
                got = rep.degree_of(k)
                if got != want:
                    st[0] = "fail"
                    st[1] = {"instance": inst.descriptor, "state": format_key(key),
                             "coefficient": format_key(k), "expected": f"degree {want}",
                             "actual": f"degree {got}"}
                    break
    return {d: tuple(v) for d, v in status.items()}


def check_clifford(s, depth, base=1, zero_mode=None, D=2) -> list:
    """{kappa(m), kappa(n)} = delta_{m,-n} (q^{bm} + q^{-bm}) on wedge states.

    Every pair of modes in Z + s with |m|, |n| <= depth + 1 is checked on
    every wedge state of degree >= -depth.  With ``zero_mode="tag_swap"`` a
    second report checks that kappa(0) squares to the identity.
    """
    t0 = time.perf_counter()
    s = as_fraction(s)
    fs = FermionSpec(s, base, zero_mode)
    tags = (0, 1) if zero_mode == "tag_swap" else (None,)
    space = SpaceSpec(D=D, fermion=fs, tags=tags, name="wedge space")
    keys = [k for d, v in sorted(enumerate_basis(space, depth).items(), reverse=True) for k in v]
    bound = as_fraction(depth) + 1
    modes = []
    m = -bound + ((s - (-bound)) % 1)
    while m <= bound:
        if m or zero_mode is not None:
            modes.append(m)
        m += 1
    one = QRat.from_int(1, D)
    label = f"clifford s={s} base={base}" + (f" {zero_mode}" if zero_mode else "")
    witness, checks = None, 0
    for key in keys:
        v = State({key: one})
        kv = {m: fermion_apply(space, v, m) for m in modes}
        for a in modes:
            for b in modes:
                if b < a:
                    continue
                checks += 1
                total = fermion_apply(space, kv[b], a)
                total.add_state(fermion_apply(space, kv[a], b))
                if a == -b:
                    total.add_state(v, -fs.anticommutator(a, D))
                if total and witness is None:
                    k0 = min(total, key=repr)
                    witness = {"instance": f"{{kappa({a}), kappa({b})}}", "state": format_key(key),
                               "coefficient": format_key(k0), "expected": "0",
                               "actual": str(total[k0]), "residual": format_state(total)}
    out = [RelationReport(label, "fail" if witness else "pass", witness,
                          {"states": len(keys), "mode_pairs": checks}, time.perf_counter() - t0)]
    if zero_mode == "tag_swap":
        bad = None
        for key in keys:
            v = State({key: one})
            sq = fermion_apply(space, fermion_apply(space, v, 0), 0)
            sq.add_state(v, -one)
            if sq:
                k0 = min(sq, key=repr)
                bad = {"instance": "kappa(0)^2 = 1", "state": format_key(key),
                       "coefficient": format_key(k0), "expected": "0", "actual": str(sq[k0])}
                break
        out.append(RelationReport(f"{label} kappa(0)^2", "fail" if bad else "pass", bad,
                                  {"states": len(keys)}))
    return out
