"""Scripted re-verification of the countable claims about L.

Each verifier returns a :class:`TheoremReport` whose witnesses are plain
JSON values. Claims about L itself are decided at the requested prefix depth
after checking that the factor sets involved have stabilized there.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

from .blocks import (
    RigidityError,
    is_keyword_blush,
    is_keyword_flush,
    is_locally_rigid,
    is_rigid,
    locally_rigid_keywords,
    matrices,
    plan_shift,
    reduce_fully,
    reduce_instance,
    round_bound,
    shift_to_flush,
    slot_matrices,
)
from .pattern import KAPPA1, KAPPA2, KAPPA3, KAPPA4, Assignment, LocalInstance, Pattern, instantiate
from .search import SearchBounds, longest_prefix_factor, rigidity_census, search_instances
from .words import (
    LEECH,
    DepthError,
    factor_set,
    is_factor,
    leech_prefix,
    max_depth,
    occurrences,
    reflect,
    rotate,
)

REPORT_IDS = ("T1", "T2", "T3", "T4", "T5", "T6", "T7", "T8", "T9", "REF_MIN", "ANOMALY")

# bases come from depth - 2 so that P- and P^2-expansions fit at depth
MIN_DEPTH = {i: 3 for i in REPORT_IDS} | {"T2": 5, "T3": 5, "T4": 5, "T9": 4}

BASE = Assignment("B", "C", "ABCACBA")
BASE_ORBIT = (BASE, BASE.map(rotate), BASE.map(rotate).map(rotate))

SIX_LETTER_RIGID = (
    "ABACAB", "ABACBA", "ABACBC", "ABCABA", "ABCBAB",
    "ACABAC", "ACABCA", "ACABCB", "ACBACA", "ACBCAC",
)
FIVE_LETTER_RIGID = ("ABACA", "ABCAB", "ACABA", "ACBAC")

# nonrigid orbit representatives and the preimages of their (matrix, position) pairs
MATRIX_TABLES = {
    6: {
        "ABCACB": ["AB", "B"],
        "ABCBAC": ["A", "AC"],
        "ACBABC": ["BA", "C"],
        "ACBCAB": ["A", "BC"],
    },
    5: {
        "ABACB": ["C", "CB"],
        "ABCAC": ["AB", "B"],
        "ABCBA": ["A", "A"],
        "ACABC": ["B", "CA"],
        "ACBAB": ["BA", "C"],
        "ACBCA": ["A", "BC", "CB"],
    },
    4: {
        "ABAC": ["C", "C"],
        "ABCA": ["AB", "B", "C"],
        "ABCB": ["A", "A"],
        "ACAB": ["AC", "B", "CA"],
        "ACBA": ["B", "BA", "C"],
        "ACBC": ["A", "BC", "CB"],
    },
}

# candidate assignments with keywords of at most three letters, each failing in L
SHORT_CANDIDATES = (
    ("ABC", "AC", "B"),
    ("ABC", "B", "AC"),
    ("AC", "ABC", "B"),
    ("AC", "B", "ABC"),
    ("B", "AC", "ABC"),
    ("B", "ABC", "AC"),
    ("ACB", "AB", "C"),
    ("ACB", "C", "AB"),
    ("AB", "ACB", "C"),
    ("AB", "C", "ACB"),
    ("C", "AB", "ACB"),
    ("C", "ACB", "AB"),
)
ONE_LETTER_CANDIDATES = (("A", "B", "C"), ("A", "C", "B"))

KAPPA1_WITNESS = "ABACABCBACBCABCBACABACA"


@dataclass
class TheoremReport:
    id: str
    passed: bool
    depth: int
    witnesses: list = field(default_factory=list)
    narrative: str = ""

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> TheoremReport:
        return cls(d["id"], d["passed"], d["depth"], list(d["witnesses"]), d["narrative"])

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        lines = [f"[{status}] {self.id} (depth {self.depth}): {self.narrative}"]
        for w in self.witnesses:
            lines.append("    " + json.dumps(w, sort_keys=True))
        return "\n".join(lines)


def _report(id_, depth, witnesses, narrative, failures):
    # a failed report must carry its counter-witnesses
    if failures:
        witnesses = witnesses + [{"counter_witness": f} for f in failures]
    return TheoremReport(id_, not failures, depth, witnesses, narrative)


def _bases(depth: int) -> list[LocalInstance]:
    """First occurrence of each base assignment at ``depth``."""
    hits = search_instances(KAPPA2, SearchBounds(7, depth))
    first = {}
    for inst in hits.instances:
        first.setdefault(inst.assignment, inst)
    return [first[s] for s in sorted(first, key=Assignment.sort_key)]


def _expansions(depth: int) -> list[LocalInstance]:
    out = []
    for b in _bases(depth - 2):
        e = b.expand()
        out += [e, e.expand()]
    return out


def _pairs(inst: LocalInstance) -> list:
    return [(v, d.preimage, d.offset) for v in inst.pattern.variables for d in slot_matrices(inst, v)]


def verify_t1(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    hits = search_instances(KAPPA2, SearchBounds(7, depth))
    found = set(hits.assignments)
    if found != set(BASE_ORBIT):
        failures.append({"assignments": sorted(map(str, found)), "expected": sorted(map(str, BASE_ORBIT))})
    for s in hits.assignments:
        anchors = hits.anchors(s)
        witnesses.append({"assignment": str(s), "occurrences": len(anchors), "first_anchor": anchors[0]})

    for inst in hits.instances:
        pairs = _pairs(inst)
        slot_pairs = {(p, o) for _, p, o in pairs}
        if len(slot_pairs) != 9 or locally_rigid_keywords(inst):
            failures.append({"instance": inst.to_dict(), "slot_matrices": pairs})
    if hits.instances:
        first = hits.instances[0]
        witnesses.append({"nine_slots": [list(p) for p in _pairs(first)], "anchor": first.anchor})

    census = rigidity_census(7, depth)
    orbit = sorted({"ABCACBA", rotate("ABCACBA"), rotate(rotate("ABCACBA"))})
    if census.nonrigid != orbit:
        failures.append({"seven_letter_nonrigid": census.nonrigid})
    extensions = sorted(w for w in factor_set(8, depth).members if w.startswith("ABCACBA"))
    ext_rigid = {w: is_rigid(w, depth) for w in extensions}
    if extensions != ["ABCACBAB", "ABCACBAC"] or not all(ext_rigid.values()):
        failures.append({"eight_letter_extensions": ext_rigid})
    witnesses.append({"seven_letter_factors": census.total, "nonrigid": census.nonrigid})
    witnesses.append({"eight_letter_extensions_rigid": ext_rigid})
    narrative = (
        f"{len(hits)} kappa2 instances with keywords <= 7, assignments "
        f"{' '.join(map(str, hits.assignments))}; all nine slots distinct in each"
    )
    return _report("T1", depth, witnesses, narrative, failures)


def verify_t2(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    pool = _expansions(depth) + search_instances(KAPPA2, SearchBounds(7, depth)).instances
    applicable = 0
    for inst in pool:
        rigid = locally_rigid_keywords(inst)
        if not rigid or any(is_keyword_flush(inst, v) for v in "abc"):
            continue
        applicable += 1
        others = [v for v in "abc" if v not in rigid[:1]]
        if not all(is_rigid(inst.assignment[v], inst.depth) for v in others):
            failures.append({"instance": inst.to_dict(), "locally_rigid": rigid})

    # every nonflush boundary is at most 6 letters from a block boundary
    worst = 0
    for gamma in range(1, 13):
        for delta in range(1, 13):
            m, direction = plan_shift(gamma, delta)
            worst = max(worst, m)
            lands = {
                "left": gamma - m == 0 or (13 - delta) - m == 0,
                "right": delta - m == 0 or gamma + m == 13,
            }[direction]
            if m > 6 or not lands:
                failures.append({"gamma": gamma, "delta": delta, "m": m, "direction": direction})
    witnesses.append({"max_shift_over_all_offsets": worst})

    for inst in pool:
        if locally_rigid_keywords(inst):
            shifted, plan = shift_to_flush(inst)
            if plan.m != 0 or shifted != inst:
                failures.append({"instance": inst.to_dict(), "plan": plan.to_dict()})

    # the shift itself, on a rigid non-flush single-slot instance
    w = "ACBABCA"
    pos = occurrences(w, leech_prefix(depth))[0]
    single = LocalInstance(Pattern("a"), Assignment(a=w), pos, depth)
    shifted, plan = shift_to_flush(single)
    if not (plan.m <= 6 and is_keyword_flush(shifted, "a") and len(shifted) == len(single)):
        failures.append({"single_slot_shift": plan.to_dict()})
    witnesses.append({"single_slot_shift": plan.to_dict(), "from": w, "to": shifted.assignment.a})
    witnesses.append({"instances_examined": len(pool), "hypothesis_applicable": applicable})
    narrative = (
        f"{len(pool)} instances examined, {applicable} with a locally rigid keyword and no flush "
        f"keyword; shift distance <= {worst} over all offsets"
    )
    return _report("T2", depth, witnesses, narrative, failures)


def verify_t3(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    pool = _expansions(depth) + search_instances(KAPPA2, SearchBounds(7, depth)).instances
    checked = 0
    for inst in pool:
        if not any(is_locally_rigid(inst, v) and is_keyword_flush(inst, v) for v in "abc"):
            continue
        checked += 1
        state = {
            v: {
                "length": len(inst.assignment[v]),
                "blush": is_keyword_blush(inst, v),
                "rigid": is_rigid(inst.assignment[v], inst.depth),
            }
            for v in "abc"
        }
        ok = all(s["blush"] and s["rigid"] and s["length"] % 13 == 0 for s in state.values())
        if not ok:
            failures.append({"instance": inst.to_dict(), "keywords": state})
        elif checked <= 6:
            witnesses.append({"assignment_lengths": [s["length"] for s in state.values()], "anchor": inst.anchor,
                              "depth": inst.depth})
    if checked == 0:
        failures.append({"reason": "no locally rigid flush instance found"})
    narrative = f"{checked} instances with a locally rigid flush keyword; all keywords rigid and blush"
    return _report("T3", depth, witnesses, narrative, failures)


def verify_t4(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    for base in _bases(depth - 2):
        one = base.expand()
        two = one.expand()
        reduced = reduce_instance(one)
        bound = (one.anchor + 6) // 13
        if reduced != base or reduced.anchor > bound or len(reduced) * 13 != len(one):
            failures.append({"base": base.to_dict(), "reduced": reduced.to_dict()})
        chain = reduce_fully(two)
        rounds = len(chain) - 1
        limit = round_bound(len(two))
        if chain[-1] != base or rounds != 2 or rounds > limit or chain[1] != one:
            failures.append({"base": base.to_dict(), "rounds": rounds, "final": chain[-1].to_dict()})
        try:
            reduce_instance(base)
            failures.append({"base_reduced_without_rigidity": base.to_dict()})
        except RigidityError:
            pass
        witnesses.append({
            "assignment": str(base.assignment),
            "anchors": [c.anchor for c in chain],
            "lengths": [len(c) for c in chain],
            "rounds": rounds,
            "log13_bound": limit,
        })
    narrative = "P- and P^2-expansions of each base instance reduce back to it in 1 and 2 rounds"
    return _report("T4", depth, witnesses, narrative, failures)


def _verify_short(id_: str, length: int, depth: int) -> TheoremReport:
    failures, witnesses = [], []
    hits = search_instances(KAPPA2, SearchBounds(length, depth))
    violating = [
        i for i in hits.instances
        if max(i.assignment.lengths()) == length and not locally_rigid_keywords(i)
    ]
    for inst in violating[:10]:
        failures.append({"instance": inst.to_dict()})
    witnesses.append({"instances_with_keywords_le": length, "count": len(hits),
                      "without_locally_rigid_keyword": len(violating)})

    census = rigidity_census(length, depth)
    table = MATRIX_TABLES[length]
    if census.nonrigid_orbits != sorted(table):
        failures.append({"nonrigid_orbits": census.nonrigid_orbits, "expected": sorted(table)})
    for w, expected in table.items():
        got = sorted(matrices(w, depth).preimages)
        witnesses.append({"word": w, "preimages": got})
        if got != sorted(expected):
            failures.append({"word": w, "preimages": got, "expected": expected})
    expected_rigid = {6: sorted(SIX_LETTER_RIGID), 5: sorted(FIVE_LETTER_RIGID), 4: []}[length]
    if census.rigid_orbits != expected_rigid:
        failures.append({"rigid_orbits": census.rigid_orbits, "expected": expected_rigid})
    witnesses.append({"orbits": len(census.orbits), "rigid_orbits": census.rigid_orbits})
    narrative = (
        f"no kappa2 instance with longest keyword {length} lacks a locally rigid keyword; "
        f"{len(table)} nonrigid {length}-letter orbits match their matrix table"
    )
    return _report(id_, depth, witnesses, narrative, failures)


def verify_t8(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    hits = search_instances(KAPPA2, SearchBounds(3, depth))
    if hits.instances:
        failures.extend({"instance": i.to_dict()} for i in hits.instances[:10])
    witnesses.append({"instances_with_keywords_le": 3, "count": len(hits)})
    for triple in SHORT_CANDIDATES + ONE_LETTER_CANDIDATES:
        w = instantiate(KAPPA2, Assignment(*triple))
        ell = longest_prefix_factor(w, depth)
        witnesses.append({"assignment": "<" + ",".join(triple) + ">", "longest_prefix_factor": ell,
                          "length": len(w)})
        if ell >= len(w):
            failures.append({"embeddable": triple})
    narrative = (
        f"no kappa2 instance with keywords <= 3; all {len(SHORT_CANDIDATES)} listed candidates "
        "and the one-letter cases fail to embed"
    )
    return _report("T8", depth, witnesses, narrative, failures)


def verify_t9(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    w = instantiate(KAPPA2, Assignment("A", "B", "CABCBAC")) + "CA"
    ell = longest_prefix_factor(w, depth)
    if w != KAPPA1_WITNESS or is_factor(w, depth):
        failures.append({"witness": w, "factor": is_factor(w, depth)})
    witnesses.append({"witness": w, "length": len(w), "longest_prefix_factor": ell})

    for s in BASE_ORBIT:
        core = instantiate(KAPPA2, s)
        right = core + s.c[:2]
        left = s.c[-2:] + core
        if is_factor(right, depth) or is_factor(left, depth):
            failures.append({"assignment": str(s), "right": right, "left": left})
        witnesses.append({"assignment": str(s), "right_extension": right, "left_extension": left})

    for p in (KAPPA1, KAPPA3, KAPPA4):
        n = len(search_instances(p, SearchBounds(7, depth)))
        witnesses.append({"pattern": p.name, "instances_with_keywords_le": 7, "count": n})
        if n:
            failures.append({"pattern": p.name, "count": n})

    for base in _bases(depth - 1):
        e = base.expand()
        c = LEECH(base.assignment.c)
        for label, word in (("kappa1", e.word + c), ("kappa3", c + e.word)):
            if is_factor(word, depth):
                failures.append({"expansion": e.to_dict(), "pattern": label})
        witnesses.append({"expansion_of": str(base.assignment), "anchor": e.anchor,
                          "kappa1_kappa3_images_absent": True})
    narrative = f"{w} is not a factor (longest prefix in L: {ell}); kappa1, kappa3, kappa4 searches empty"
    return _report("T9", depth, witnesses, narrative, failures)


def verify_ref_min(depth: int) -> TheoremReport:
    failures, witnesses = [], []
    minimal = None
    for m in range(1, 9):
        fs = factor_set(m, depth)
        if not fs.stabilized:
            raise DepthError(f"factors of length {m} not stabilized at depth {depth}")
        escaping = sorted(f for f in fs.members if reflect(f) not in fs.members)
        witnesses.append({"length": m, "escaping": len(escaping)})
        if escaping and minimal is None:
            minimal = m
            if "ABACABCB" not in escaping:
                failures.append({"length": m, "escaping": escaping})
    w = "ABACABCB"
    if minimal != 8 or reflect(w) != "ACABACBC" or is_factor(reflect(w), depth) or not is_factor(w, depth):
        failures.append({"minimal": minimal, "reflect": reflect(w)})
    pre = matrices(w, depth).preimages
    if "CA" not in pre:
        failures.append({"word": w, "preimages": pre})
    blocks_absent = {x: not is_factor(reflect(LEECH(x)), depth) for x in "ABC"}
    if not all(blocks_absent.values()):
        failures.append({"reflected_blocks_absent": blocks_absent})
    witnesses.append({"minimal_length": minimal, "witness": w, "reflection": reflect(w), "preimages": pre,
                      "reflected_blocks_absent": blocks_absent})
    return _report("REF_MIN", depth, witnesses,
                   f"shortest factor whose reflection is not a factor has length {minimal}: {w}", failures)


def verify_anomaly(depth: int) -> TheoremReport:
    failures = []
    w = "ACBABCA"
    rep = matrices(w, depth)
    r = reflect(w)
    rrep = matrices(r, depth)
    if not rep.rigid or rep.preimages != ["C"] or r != "ABCACBA" or rrep.rigid or sorted(rrep.preimages) != ["AB", "BA"]:
        failures.append({"word": rep.to_dict(), "reflection": rrep.to_dict()})
    witnesses = [rep.to_dict(), rrep.to_dict()]
    return _report("ANOMALY", depth, witnesses,
                   f"{w} is rigid in C-block; its reflection {r} has preimages {sorted(rrep.preimages)}", failures)


VERIFIERS = {
    "T1": verify_t1,
    "T2": verify_t2,
    "T3": verify_t3,
    "T4": verify_t4,
    "T5": lambda n: _verify_short("T5", 6, n),
    "T6": lambda n: _verify_short("T6", 5, n),
    "T7": lambda n: _verify_short("T7", 4, n),
    "T8": verify_t8,
    "T9": verify_t9,
    "REF_MIN": verify_ref_min,
    "ANOMALY": verify_anomaly,
}


def verify(id_: str, depth: int = 5) -> TheoremReport:
    key = id_.upper()
    if key not in VERIFIERS:
        raise KeyError(f"unknown report id {id_!r}; choose from {', '.join(REPORT_IDS)}")
    if depth < MIN_DEPTH[key]:
        raise DepthError(f"{key} needs depth >= {MIN_DEPTH[key]}, got {depth}")
    if depth > max_depth():
        raise DepthError(f"depth {depth} exceeds the ceiling {max_depth()}")
    return VERIFIERS[key](depth)


def verify_all(depth: int = 5) -> list[TheoremReport]:
    return [verify(i, depth) for i in REPORT_IDS]
