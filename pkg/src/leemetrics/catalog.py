"""The embedded catalog of small groups and the verdict-table reproduction."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from importlib import resources
from typing import Any

from .finite_field import affine_group, field_of_order
from .group_core import Group, build, fingerprint, parse_spec
from .metric_engine import DEFAULT_BUDGET, decide_lee_by_search
from .partitions import k_of
from .theorems import Conclusion, decide_lee, rule_affine

# how each computed reason is written in the catalog's reason vocabulary
REASON_TAGS = {
    "cyclic": "cyclic",
    "z2-extension": "some-Lee",
    "dihedral-construction": "Dn",
    "dicyclic-construction": "Qn",
    "odd-order": "odd-order",
    "obstruction": "obstruction",
    "search": "search",
}


class CatalogError(RuntimeError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    row: int
    order: int
    gap_id: tuple[int, int]
    name: str
    spec: str
    expected_k: int
    expected_verdict: str  # "Yes" or "No"
    expected_reason: str
    profile: dict[int, int]
    center: int
    abelian: bool

    def build(self) -> Group:
        G = build(parse_spec(self.spec))
        return Group(G.mul, G.inv, G.identity, G.labels, self.name)


@lru_cache(maxsize=1)
def _data() -> dict:
    try:
        text = resources.files("leemetrics").joinpath("data/catalog.json").read_text(encoding="utf-8")
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise CatalogError(f"embedded catalog unreadable: {exc}") from exc


def load_catalog() -> list[CatalogEntry]:
    out = []
    try:
        for e in _data()["groups"]:
            fp = e["fingerprint"]
            out.append(CatalogEntry(
                e["row"], e["order"], tuple(e["gap_id"]), e["name"], e["spec"], e["k"],
                "Yes" if e["lee"] else "No", e["reason"],
                {int(k): v for k, v in fp["profile"].items()}, fp["center"], fp["abelian"]))
    except (KeyError, TypeError) as exc:
        raise CatalogError(f"embedded catalog malformed: {exc!r}") from exc
    if len(out) != 93 or [e.row for e in out] != list(range(1, 94)):
        raise CatalogError("embedded catalog must hold rows 1..93")
    return out


def table4_entries() -> list[dict]:
    return list(_data()["table4"])


def affine_rows() -> list[dict]:
    return list(_data()["affine"])


def check_entry(entry: CatalogEntry, G: Group | None = None) -> list[str]:
    """Integrity problems of one entry (empty when the built group matches its record)."""
    G = G or entry.build()
    fp = fingerprint(G)
    problems = []
    if G.n != entry.order:
        problems.append(f"order {G.n} != {entry.order}")
    if fp["profile"] != entry.profile:
        problems.append("element-order profile differs")
    if fp["center"] != entry.center or fp["abelian"] != entry.abelian:
        problems.append("center or commutativity differs")
    if k_of(G) != entry.expected_k:
        problems.append(f"k {k_of(G)} != {entry.expected_k}")
    return problems


# ----------------------------------------------------------------------------
# table reproduction


@dataclass
class RowResult:
    row: int
    order: int
    gap_id: list[int]
    name: str
    spec: str
    expected_k: int
    computed_k: int
    expected_verdict: str
    computed_verdict: str
    expected_reason: str
    deciding_rule: str
    k_match: bool
    verdict_match: bool
    reason_note: str
    nodes: int
    millis: float


def _evaluate(args: tuple[CatalogEntry, int]) -> RowResult:
    entry, budget = args
    G = entry.build()
    v = decide_lee(parse_spec(entry.spec), budget)
    k = k_of(G)
    tag = REASON_TAGS.get(v.reason, v.reason)
    note = ""
    if tag != entry.expected_reason:
        note = f"decided by {v.reason}; table cites {entry.expected_reason}"
    return RowResult(
        entry.row, entry.order, list(entry.gap_id), entry.name, entry.spec,
        entry.expected_k, k, entry.expected_verdict, v.outcome, entry.expected_reason, v.reason,
        k == entry.expected_k, v.outcome == entry.expected_verdict, note, v.nodes, round(v.millis, 3))


@dataclass
class Report:
    rows: list[RowResult]

    @property
    def summary(self) -> dict[str, Any]:
        rs = self.rows
        return {
            "rows": len(rs),
            "k_matches": sum(r.k_match for r in rs),
            "verdict_matches": sum(r.verdict_match for r in rs),
            "undecided": [r.row for r in rs if r.computed_verdict == "Undecided"],
            "mismatched_rows": [r.row for r in rs if not (r.k_match and r.verdict_match)],
        }

    @property
    def ok(self) -> bool:
        s = self.summary
        return not s["mismatched_rows"]

    def to_dict(self) -> dict:
        return {"rows": [asdict(r) for r in self.rows], "summary": self.summary}

    def to_json(self) -> str:
        return dump_json(self.to_dict())

    def to_markdown(self) -> str:
        head = ("| # | order | id | G | k(G) | Lee metric | why | computed k | computed | rule | match |\n"
                "|---|---|---|---|---|---|---|---|---|---|---|\n")
        mark = {"Yes": "✓", "No": "✗", "Undecided": "?"}
        lines = [
            f"| {r.row} | {r.order} | {r.gap_id[1]} | {r.name} | {r.expected_k} | {mark[r.expected_verdict]} "
            f"| {r.expected_reason} | {r.computed_k} | {mark[r.computed_verdict]} | {r.deciding_rule} "
            f"| {'ok' if r.k_match and r.verdict_match else 'MISMATCH'} |"
            for r in self.rows]
        s = self.summary
        tail = (f"\nk matches: {s['k_matches']}/{s['rows']}; "
                f"verdict matches: {s['verdict_matches']}/{s['rows']}\n")
        return head + "\n".join(lines) + "\n" + tail

    def to_text(self) -> str:
        lines = [f"{'#':>3} {'G':<14} {'k':>3} {'exp':>4} {'got':>9}  {'rule':<22} {'nodes':>7} {'ms':>9}"]
        for r in self.rows:
            flag = "" if r.k_match and r.verdict_match else "  MISMATCH"
            lines.append(f"{r.row:>3} {r.name:<14} {r.computed_k:>3} {r.expected_verdict:>4} "
                         f"{r.computed_verdict:>9}  {r.deciding_rule:<22} {r.nodes:>7} {r.millis:>9.1f}{flag}")
        s = self.summary
        lines.append(f"k matches {s['k_matches']}/{s['rows']}, verdict matches "
                     f"{s['verdict_matches']}/{s['rows']}, undecided {len(s['undecided'])}")
        return "\n".join(lines) + "\n"


def dump_json(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def reproduce_tables(min_order: int = 1, max_order: int = 31, budget: int = DEFAULT_BUDGET,
                     jobs: int = 1) -> Report:
    """Run the decision pipeline on every catalog row in the order range."""
    entries = [e for e in load_catalog() if min_order <= e.order <= max_order]
    work = [(e, budget) for e in entries]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_evaluate, work))  # map keeps catalog order
    else:
        rows = [_evaluate(w) for w in work]
    return Report(rows)


# ----------------------------------------------------------------------------
# affine subgroups


def affine_table(max_order: int = 343, search_max_order: int = 68, budget: int = DEFAULT_BUDGET) -> dict:
    """Reproduce the affine-subgroup table and try to settle the open rows by search.

    The Lee column comes from the affine rule; where the rule is silent and the
    group is small enough to be in the catalog, the catalog pipeline decides it.
    Otherwise the column stays "??" and a search verdict is recorded alongside.
    """
    rows = []
    for spec in affine_rows():
        q, h = spec["q"], spec["h"]
        order = q * h
        if order > max_order:
            continue
        t0 = time.perf_counter()
        res = rule_affine(q, h)
        prop = res.conclusion is Conclusion.NO_LEE
        search = None
        if res.conclusion is Conclusion.HAS_LEE:
            lee = "yes"
        elif res.conclusion is Conclusion.NO_LEE:
            lee = "no"
        else:
            G = affine_group(field_of_order(q), h)
            if order <= 31:
                lee = {"Yes": "yes", "No": "no"}.get(decide_lee(G, budget).outcome, "??")
            else:
                lee = "??"
                if order <= search_max_order:
                    v = decide_lee_by_search(G, budget)
                    search = {"outcome": v.outcome, "k": k_of(G), "nodes": v.nodes}
        rows.append({
            "q": q, "h": h, "order": order, "gap_id": spec["gap_id"],
            "name": f"F{q}⋊Z{h}" if h != q - 1 else f"Aff(F{q})",
            "rule": res.conclusion.value,
            "prop_expected": spec["prop"], "prop_computed": prop,
            "lee_expected": spec["lee"], "lee_computed": lee,
            "match": prop == spec["prop"] and lee == spec["lee"],
            "search": search,
            "millis": round((time.perf_counter() - t0) * 1e3, 3),
        })
    return {"rows": rows, "summary": {"rows": len(rows), "matches": sum(r["match"] for r in rows)}}


def affine_table_markdown(table: dict) -> str:
    mark = {"yes": "✓", "no": "✗", "??": "??", True: "✓", False: "✗"}
    out = ["| group | GAP | Prop | Lee | computed Prop | computed Lee | search | match |",
           "|---|---|---|---|---|---|---|---|"]
    for r in table["rows"]:
        s = r["search"]
        out.append(f"| {r['name']} | ({r['gap_id'][0]},{r['gap_id'][1]}) | {mark[r['prop_expected']]} "
                   f"| {mark[r['lee_expected']]} | {mark[r['prop_computed']]} | {mark[r['lee_computed']]} "
                   f"| {s['outcome'] if s else ''} | {'ok' if r['match'] else 'MISMATCH'} |")
    s = table["summary"]
    return "\n".join(out) + f"\n\nmatches: {s['matches']}/{s['rows']}\n"
