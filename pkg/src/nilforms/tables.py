"""Builtin suites reproducing the example tables as machine-checked claims.

Each suite is a list of manifests run through the ordinary manifest path,
followed by a table-shaped summary read back out of the reports.
"""

from __future__ import annotations

from . import __version__
from .manifest import EXIT_OK, SCHEMA_VERSION, Settings, exit_code, parse, run

SUITES = ("table1", "table2_bracket", "abstract_examples", "cd_tower")

N_RANGE = [2, 3, 4, 5, 6, 7]


def _bracket_family(family, algebra, n_range=N_RANGE):
    return {
        "schema_version": SCHEMA_VERSION,
        "name": family,
        "algebra": algebra,
        "split": "all",
        "checks": [
            {"check": "flags"},
            {"check": "nil_bound", "k": 1, "s": 2},
            {"check": "nil_degree", "k": 1, "s_max": 4},
            {"check": "theorem_a", "condition": "G1", "k": 1, "s": 2, "n_range": n_range},
        ],
    }


def _zoo(name, **params):
    return {"zoo": name, "params": params}


def _table1():
    return [
        _bracket_family("so(2)", _zoo("so", n=2)),
        _bracket_family("so(3)", _zoo("so", n=3)),
        _bracket_family("u(1)", _zoo("u", n=1)),
        _bracket_family("u(2)", _zoo("u", n=2)),
        _bracket_family("su(2)", _zoo("su", n=2)),
        _bracket_family("sp(1)", _zoo("sp", n=1)),
        _bracket_family("u(1,1)", _zoo("u", p=1, q=1)),
    ]


def _sum(a, b):
    return {"zoo": "direct_sum", "params": {"summands": [a, b]}}


def _table2():
    return [
        _bracket_family("so(2)+so(2)", _sum(_zoo("so", n=2), _zoo("so", n=2))),
        _bracket_family("so(3)+so(3)", _sum(_zoo("so", n=3), _zoo("so", n=3)), [2, 3, 4, 5, 6]),
        _bracket_family("u(1,1)", _zoo("u", p=1, q=1)),
        _bracket_family("u(1)+u(1)", _sum(_zoo("u", n=1), _zoo("u", n=1))),
        _bracket_family("su(2)+su(2)", _sum(_zoo("su", n=2), _zoo("su", n=2)), [2, 3, 4, 5, 6]),
    ]


def _antisym3():
    return [[0, 1, 0, -1, 0, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0, -1, 0, 0], [0, 0, 0, 0, 0, 1, 0, -1, 0]]


def _abstract():
    return [
        {"name": "so(3) even degree", "algebra": _zoo("so", n=3),
         "checks": [{"check": "nil_bound", "k": 2, "s": 1}]},
        {"name": "u(2) even degree", "algebra": _zoo("u", n=2),
         "checks": [{"check": "nil_bound", "k": 2, "s": 1}]},
        {"name": "R(2|2)", "algebra": _zoo("super_translation", k=2, l=2),
         "checks": [{"check": "weak_nil", "k": 2, "s": 1}, {"check": "nil_bound", "k": 2, "s": 1}]},
        {"name": "heisenberg(1)", "algebra": _zoo("heisenberg", n=1),
         "checks": [{"check": "nil_degree", "k": 1, "s_max": 4},
                    {"check": "weak_nil", "k": 1, "s": 2}]},
        {"name": "iso(3) rotations/translations", "algebra": _zoo("iso", n=3),
         "split": "rotations/translations",
         "checks": [{"check": "theorem_a", "condition": "G1", "k": 1, "s": 2, "n_range": N_RANGE}]},
        {"name": "iso(3) graded translations", "algebra": dict(_zoo("iso", n=3), grades=[1, 1, 1, 0, 0, 0],
                                                                grading_rank=1),
         "split": "translations/rotations",
         "checks": [{"check": "theorem_a", "condition": "G1", "k": 1, "s": 1, "n_range": N_RANGE}]},
        {"name": "antisymmetric 3x3, matrix product", "algebra": _zoo("matrix", n=3),
         "checks": [{"check": "nil_degree", "k": 1, "s_max": 4, "subject": _antisym3(),
                     "subject_name": "so(3) matrices"}]},
    ]


def _cd():
    out = []
    for l in range(5):
        checks = [{"check": "flags"}]
        if l == 4:
            checks.append({"check": "zero_divisor", "bound": 2})
        out.append({"name": "CD%d" % l, "algebra": _zoo("cd_tower", l=l), "checks": checks})
    out.append({"name": "block inclusions",
                "checks": [{"check": "cd_inclusion", "k": 1, "l": 1},
                           {"check": "cd_inclusion", "k": 1, "l": 2},
                           {"check": "cd_inclusion", "k": 1, "l": 3},
                           {"check": "cd_inclusion", "k": 1, "l": 2, "kind": "realification"}]})
    return out


def suite_manifests(name: str) -> list:
    if name == "table1":
        return _table1()
    if name == "table2_bracket":
        return _table2()
    if name == "abstract_examples":
        return _abstract()
    if name == "cd_tower":
        return _cd()
    raise ValueError("unknown suite %r (known: %s)" % (name, ", ".join(SUITES)))


def _row(bundle) -> dict:
    """Certified (k, s) pairs and thresholds read off one manifest bundle."""
    row = {"family": bundle["manifest"]}
    certified = []
    for r in bundle["reports"]:
        res = r["result"]
        if r["check"] in ("nil_bound", "weak_nil") and r["status"] == "certified":
            certified.append([res["k"], res["s"]])
        elif r["check"] == "nil_degree" and r["status"] == "completed":
            row["nil_degree_k%d" % r["params"]["k"]] = res["degree"]
        elif r["check"] == "theorem_a" and r["status"] == "completed":
            th = res["thresholds"]
            row["thresholds"] = [th["homogenization"], th["triviality"]]
            rows = res["rows"]
            row["first_homogeneous_n"] = next((x["n"] for x in rows if all(
                y["inhomogeneous_vanishes"] for y in rows if y["n"] >= x["n"])), None)
            row["first_trivial_n"] = next((x["n"] for x in rows if all(
                y["alpha_vanishes"] for y in rows if y["n"] >= x["n"])), None)
        elif r["check"] == "flags":
            row["dim"] = res["dim"]
            row["flags"] = sorted(k for k, v in res["flags"].items() if v["holds"])
        elif r["check"] == "zero_divisor":
            row["zero_divisor"] = res["found"] and res["product_is_zero"]
        elif r["check"] == "cd_inclusion":
            p = r["params"]
            row.setdefault("inclusions", []).append(
                {"kind": p["kind"], "k": p["k"], "l": p["l"], "status": r["status"]})
    if certified:
        row["certified"] = certified
    return row


def table_suite(name: str, settings: Settings | None = None) -> tuple:
    """Run a builtin suite; returns (exit code, bundle)."""
    bundles = []
    for m in suite_manifests(name):
        code, bundle = run(parse(m, settings))
        bundles.append(bundle)
    statuses = [r["status"] for b in bundles for r in b["reports"]]
    code = exit_code(statuses)
    out = {
        "schema_version": SCHEMA_VERSION,
        "engine": "nilforms %s" % __version__,
        "suite": name,
        "table": [_row(b) for b in bundles],
        "bundles": bundles,
        "summary": {"manifests": len(bundles), "checks": len(statuses), "exit_code": code,
                    "all_ok": code == EXIT_OK},
    }
    return code, out
