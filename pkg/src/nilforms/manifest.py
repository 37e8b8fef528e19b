"""Batch manifests: parse, validate up front, run checks, bundle reports.

A manifest is a JSON object::

    {"schema_version": 1,
     "algebra": {"zoo": "so", "params": {"n": 3}},
     "split": {"part0": ["L01", "L02", "L12"], "part1": []},
     "mode": {"kind": "exact"},
     "caps": {"max_generators": 16},
     "checks": [{"check": "nil_degree", "k": 1, "s_max": 4}]}

Every check is validated before anything is computed.
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from pathlib import Path

from . import __version__, zoo
from .algebra import (Algebra, AlgebraError, Submodule, algebra_from_json, direct_sum, module_split,
                      with_grading)
from .ehp import GradePremise, HPParams, Premise, SoundnessError, theorem_a_report
from .forms import Caps, FormError, ResourceCapError
from .nil import EXACT, Mode, nil_bound, nil_degree, solv_verify, weak_nil
from .ring import DEFAULT_PRIME, rational_str

SCHEMA_VERSION = 1
CAPS_ENV = "NILFORMS_CAPS"

EXIT_OK, EXIT_REFUTED, EXIT_ERROR, EXIT_CAP = 0, 1, 2, 3

CHECKS = ("nil_bound", "nil_degree", "weak_nil", "solv", "theorem_a", "flags", "cd_inclusion",
          "zero_divisor")


class ManifestError(ValueError):
    """Validation failure; ``where`` names the offending field."""

    def __init__(self, where: str, message: str):
        super().__init__("%s: %s" % (where, message))
        self.where = where


def default_caps() -> Caps:
    """Conservative defaults, overridable through NILFORMS_CAPS, e.g.
    ``max_generators=12,max_terms=1000000``."""
    caps = Caps()
    raw = os.environ.get(CAPS_ENV, "").strip()
    if not raw:
        return caps
    for item in raw.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in ("max_generators", "max_terms"):
            raise ManifestError(CAPS_ENV, "unknown cap %r" % key)
        try:
            caps = replace(caps, **{key: int(value)})
        except ValueError:
            raise ManifestError(CAPS_ENV, "cap %s needs an integer, got %r" % (key, value)) from None
    return caps


@dataclass
class Settings:
    mode: Mode = EXACT
    caps: Caps = field(default_factory=Caps)
    max_seconds: float | None = None
    timing: bool = False
    workers: int = 1


# ---------------------------------------------------------------------------
# parsing


def _int(d, key, where, lo=None, default=None, required=True):
    if key not in d:
        if required and default is None:
            raise ManifestError("%s.%s" % (where, key), "missing")
        return default
    v = d[key]
    if not isinstance(v, int) or isinstance(v, bool):
        raise ManifestError("%s.%s" % (where, key), "expected an integer, got %r" % (v,))
    if lo is not None and v < lo:
        raise ManifestError("%s.%s" % (where, key), "must be >= %d, got %d" % (lo, v))
    return v


def build_algebra(spec, where="algebra", base_dir: Path | None = None) -> Algebra:
    if not isinstance(spec, dict):
        raise ManifestError(where, "expected an object")
    try:
        if "zoo" in spec:
            A = _zoo(spec["zoo"], spec.get("params", {}), where)
        elif "inline" in spec:
            A = algebra_from_json(spec["inline"])
        elif "file" in spec:
            path = Path(spec["file"])
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            A = algebra_from_json(json.loads(path.read_text()))
        else:
            raise ManifestError(where, "need one of zoo, inline, file")
        if "grades" in spec:
            A = with_grading(A, spec["grades"], grading_rank=spec.get("grading_rank"),
                             parity_rank=spec.get("parity_rank", 0))
    except ManifestError:
        raise
    except (AlgebraError, KeyError, TypeError, ValueError, OSError) as exc:
        raise ManifestError(where, "%s: %s" % (type(exc).__name__, exc)) from None
    return A


def _zoo(name, params, where) -> Algebra:
    if not isinstance(params, dict):
        raise ManifestError(where + ".params", "expected an object")
    if name == "cd_tower":
        return zoo.cd_tower(int(params.get("l", 0)))
    if name == "matrix":
        return zoo.matrix_algebra(int(params["n"]))
    if name == "direct_sum":
        parts = params.get("summands")
        if not isinstance(parts, list) or len(parts) != 2:
            raise ManifestError(where + ".params.summands", "need two algebra specs")
        return direct_sum(build_algebra(parts[0], where + ".summands[0]"),
                          build_algebra(parts[1], where + ".summands[1]"))
    if name == "unitary":
        level = int(params.get("level", 1))
        k = int(params["k"])
        sig = tuple(params.get("signature", (k, 0)))
        return zoo.unitary_cd(zoo.UnitarySpec(k, sig, zoo.cd_tower(level)))
    return zoo.classical(name, **params)


def _vector(A: Algebra, item, where):
    if isinstance(item, str):
        if item not in A.labels:
            raise ManifestError(where, "unknown basis label %r" % item)
        return A.basis_vector(A.labels.index(item))
    if isinstance(item, list) and len(item) == A.dim:
        try:
            return tuple(Fraction(str(c)) for c in item)
        except (ValueError, ZeroDivisionError):
            raise ManifestError(where, "bad coordinate in %r" % (item,)) from None
    raise ManifestError(where, "expected a basis label or a vector of length %d" % A.dim)


def _vectors(A, items, where):
    if not isinstance(items, list):
        raise ManifestError(where, "expected a list")
    return [_vector(A, x, "%s[%d]" % (where, i)) for i, x in enumerate(items)]


def _submodule(A, items, where, name=""):
    if items is None:
        return Submodule.full(A, name or "A")
    try:
        return Submodule(A, _vectors(A, items, where), name)
    except AlgebraError as exc:
        raise ManifestError(where, str(exc)) from None


def build_split(A: Algebra, spec, where="split"):
    """Generator lists or a named convention: all, translations/rotations,
    rotations/translations (for semidirect algebras with t* and L* labels)."""
    if spec is None or spec == "all":
        gens0, gens1 = [A.basis_vector(i) for i in range(A.dim)], []
    elif isinstance(spec, str):
        trans = [A.basis_vector(i) for i, x in enumerate(A.labels) if x.startswith("t")]
        rot = [A.basis_vector(i) for i, x in enumerate(A.labels) if not x.startswith("t")]
        if spec == "translations/rotations":
            gens0, gens1 = trans, rot
        elif spec == "rotations/translations":
            gens0, gens1 = rot, trans
        else:
            raise ManifestError(where, "unknown split convention %r" % spec)
    elif isinstance(spec, dict):
        gens0 = _vectors(A, spec.get("part0", []), where + ".part0")
        gens1 = _vectors(A, spec.get("part1", []), where + ".part1")
    else:
        raise ManifestError(where, "expected a convention name or {part0, part1}")
    try:
        return module_split(A, gens0, gens1)
    except AlgebraError as exc:
        raise ManifestError(where, str(exc)) from None


def parse_mode(spec, where="mode") -> Mode:
    if spec is None:
        return EXACT
    if isinstance(spec, str):
        spec = {"kind": spec}
    try:
        return Mode(spec.get("kind", "exact"), int(spec.get("prime", DEFAULT_PRIME)),
                    int(spec.get("trials", 20)), int(spec.get("seed", 0)))
    except (ValueError, TypeError, AttributeError) as exc:
        raise ManifestError(where, str(exc)) from None


@dataclass
class Check:
    index: int
    kind: str
    params: dict
    run: object  # zero-argument callable returning (status, result)


@dataclass
class Manifest:
    name: str
    algebra: Algebra | None
    split: object
    settings: Settings
    checks: list
    source: dict

    def to_json(self):
        return self.source


def _needs_algebra(A, where):
    if A is None:
        raise ManifestError(where, "this check needs an algebra")
    return A


def _check(A, split, c: dict, where: str, settings: Settings) -> Check:
    if not isinstance(c, dict) or "check" not in c:
        raise ManifestError(where, "expected an object with a 'check' field")
    kind = c["check"]
    if kind not in CHECKS:
        raise ManifestError(where + ".check", "unknown check %r (known: %s)" % (kind, ", ".join(CHECKS)))
    mode = parse_mode(c["mode"], where + ".mode") if "mode" in c else settings.mode
    caps = settings.caps
    policy = c.get("paren_policy", "auto")
    if policy not in ("auto", "right", "all"):
        raise ManifestError(where + ".paren_policy", "expected auto, right or all")

    if kind in ("nil_bound", "nil_degree", "weak_nil", "solv"):
        A = _needs_algebra(A, where)
        V = _submodule(A, c.get("subject"), where + ".subject", c.get("subject_name", ""))
        k = _int(c, "k", where, lo=1)
        if kind == "nil_degree":
            s_max = _int(c, "s_max", where, lo=1, default=6)
            return Check(0, kind, {"k": k, "s_max": s_max},
                         lambda: _status_degree(nil_degree(V, k, s_max, mode, policy, caps), settings))
        s = _int(c, "s", where, lo=0)
        if kind == "nil_bound":
            n_gens = _int(c, "generators", where, lo=k, required=False)
            return Check(0, kind, {"k": k, "s": s},
                         lambda: _status_cert(nil_bound(V, k, s, mode, policy, n_gens, caps), settings))
        if kind == "weak_nil":
            if not A.graded:
                raise ManifestError(where, "weak_nil needs a graded algebra")
            return Check(0, kind, {"k": k, "s": s},
                         lambda: _status_cert(weak_nil(V, k, s, mode, policy, caps), settings))
        parts_spec = c.get("parts")
        if not isinstance(parts_spec, list) or not parts_spec:
            raise ManifestError(where + ".parts", "need a non-empty list of generator lists")
        parts = [_submodule(A, p, "%s.parts[%d]" % (where, i), "part%d" % i) for i, p in enumerate(parts_spec)]
        weak = bool(c.get("weak", False))
        if weak and not A.graded:
            raise ManifestError(where + ".weak", "weak solvability needs a graded algebra")
        return Check(0, kind, {"k": k, "s": s, "weak": weak},
                     lambda: _status_cert(solv_verify(V, parts, k, s, weak, mode, policy, caps), settings))

    if kind == "theorem_a":
        A = _needs_algebra(A, where)
        sp = build_split(A, c["split"], where + ".split") if "split" in c else split
        if sp is None:
            raise ManifestError(where, "theorem_a needs a split")
        condition = c.get("condition", "G1")
        if condition not in ("G1", "G2"):
            raise ManifestError(where + ".condition", "expected G1 or G2")
        n_range = c.get("n_range", [2, 3, 4, 5, 6])
        if not isinstance(n_range, list) or not n_range or \
                any(not isinstance(n, int) or isinstance(n, bool) or n < 2 for n in n_range):
            raise ManifestError(where + ".n_range", "need a list of integers >= 2")
        if max(n_range) + 2 > caps.max_generators:
            raise ManifestError(where + ".n_range", "n = %d needs %d generators, above the cap %d"
                                % (max(n_range), max(n_range) + 2, caps.max_generators))
        try:
            params = HPParams(2, Fraction(str(c.get("Lambda", 1))), c.get("paren", "right"))
        except ValueError as exc:
            raise ManifestError(where, str(exc)) from None
        premise = _premise(A, c, condition, where)
        shift = c.get("shift")
        if shift is not None and not A.graded:
            raise ManifestError(where + ".shift", "a shift needs a graded algebra")
        workers = settings.workers

        def run():
            try:
                rep = theorem_a_report(A, sp, premise, n_range, shift, mode, params, caps, workers)
            except SoundnessError as exc:
                body = exc.report.to_json(settings.timing) if exc.report else {}
                return "error", dict(body, error="SoundnessError: %s" % exc)
            status = "completed" if rep.verdict == "consistent" else "refuted"
            return status, rep.to_json(settings.timing)

        return Check(0, kind, {"condition": condition, "n_range": n_range}, run)

    if kind == "flags":
        A = _needs_algebra(A, where)

        def run():
            out = {"algebra": A.name, "dim": A.dim, "flags": A.flags.to_json()}
            if A.graded:
                out["grades"] = [g.to_json() for g in A.grades]
            return "completed", out

        return Check(0, kind, {}, run)

    if kind == "cd_inclusion":
        k = _int(c, "k", where, lo=1)
        l = _int(c, "l", where, lo=1)
        sig = c.get("signature", [k, 0])
        if not isinstance(sig, list) or len(sig) != 2 or sum(sig) != k:
            raise ManifestError(where + ".signature", "need [p, q] with p + q = k")
        how = c.get("kind", "block")
        if how not in ("block", "realification"):
            raise ManifestError(where + ".kind", "expected block or realification")
        if l > zoo.MAX_CD_LEVEL:
            raise ManifestError(where + ".l", "level above the cap %d" % zoo.MAX_CD_LEVEL)

        def run():
            f = (zoo.cd_block_inclusion if how == "block" else zoo.cd_realification)(k, tuple(sig), l)
            out = f.to_json()
            out["injective"] = f.is_injective()
            ok = f.verified and out["injective"]
            return ("certified" if ok else "refuted"), out

        return Check(0, kind, {"k": k, "l": l, "signature": sig, "kind": how}, run)

    # zero_divisor
    A = _needs_algebra(A, where)
    bound = _int(c, "bound", where, lo=1, default=2)

    def run():
        found = zoo.find_zero_divisor(A, bound)
        if found is None:
            return "completed", {"algebra": A.name, "bound": bound, "found": False}
        x, y = found
        product = A.mul(x, y)
        return "certified", {"algebra": A.name, "bound": bound, "found": True,
                             "x": [rational_str(v) for v in x], "y": [rational_str(v) for v in y],
                             "product_is_zero": not any(product)}

    return Check(0, kind, {"bound": bound}, run)


def _premise(A, c, condition, where) -> Premise:
    comps = c.get("components")
    if comps is None:
        k = _int(c, "k", where, lo=1)
        s = _int(c, "s", where, lo=0)
        return Premise(condition, (GradePremise("*", k, s, None, bool(c.get("weak", True))),))
    if not isinstance(comps, list) or not comps:
        raise ManifestError(where + ".components", "need a non-empty list")
    out = []
    for i, g in enumerate(comps):
        w = "%s.components[%d]" % (where, i)
        if not isinstance(g, dict):
            raise ManifestError(w, "expected an object")
        parts = g.get("parts")
        if parts is not None:
            parts = tuple(tuple(_vectors(A, p, "%s.parts[%d]" % (w, j))) for j, p in enumerate(parts))
        out.append(GradePremise(g.get("grade"), _int(g, "k", w, lo=1), _int(g, "s", w, lo=0),
                                parts, bool(g.get("weak", True))))
    return Premise(condition, out)


def _status_cert(cert, settings):
    return cert.verdict if cert.verdict != "degenerate" else "certified", cert.to_json(settings.timing)


def _status_degree(res, settings):
    status = "refuted" if res.exceeded else "completed"
    return status, res.to_json(settings.timing)


def load(path, settings: Settings | None = None) -> Manifest:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ManifestError(str(path), str(exc)) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ManifestError("%s:%d:%d" % (path, exc.lineno, exc.colno), exc.msg) from None
    return parse(data, settings, path.parent)


def parse(data, settings: Settings | None = None, base_dir: Path | None = None) -> Manifest:
    """Validate a manifest object; every check is bound but nothing runs."""
    if not isinstance(data, dict):
        raise ManifestError("manifest", "expected a JSON object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ManifestError("schema_version", "unsupported version %r (this engine reads %d)"
                            % (version, SCHEMA_VERSION))
    settings = settings or Settings(caps=default_caps())
    caps = settings.caps
    if "caps" in data:
        cd = data["caps"]
        if not isinstance(cd, dict):
            raise ManifestError("caps", "expected an object")
        caps = Caps(_int(cd, "max_generators", "caps", lo=1, default=caps.max_generators),
                    _int(cd, "max_terms", "caps", lo=1, default=caps.max_terms))
        if "max_seconds" in cd:
            settings = replace(settings, max_seconds=float(cd["max_seconds"]))
    settings = replace(settings, caps=caps)
    if "mode" in data and settings.mode is EXACT:
        settings = replace(settings, mode=parse_mode(data["mode"]))
    A = build_algebra(data["algebra"], base_dir=base_dir) if "algebra" in data else None
    split = build_split(A, data.get("split")) if A is not None else None
    checks_spec = data.get("checks")
    if not isinstance(checks_spec, list) or not checks_spec:
        raise ManifestError("checks", "need a non-empty list of checks")
    checks = []
    for i, c in enumerate(checks_spec):
        ch = _check(A, split, c, "checks[%d]" % i, settings)
        ch.index = i
        checks.append(ch)
    return Manifest(data.get("name", ""), A, split, settings, checks, data)


# ---------------------------------------------------------------------------
# running


def _run_one(check: Check, deadline):
    if deadline is not None and time.monotonic() > deadline:
        return {"index": check.index, "check": check.kind, "params": check.params, "status": "cap_exceeded",
                "result": {"error": "wall-clock budget exhausted before this check started"}}
    try:
        status, result = check.run()
    except ResourceCapError as exc:
        status, result = "cap_exceeded", {"error": str(exc), "estimate": exc.estimate}
    except (AlgebraError, FormError, ValueError) as exc:
        status, result = "error", {"error": "%s: %s" % (type(exc).__name__, exc)}
    return {"index": check.index, "check": check.kind, "params": check.params, "status": status,
            "result": result}


def exit_code(statuses) -> int:
    statuses = list(statuses)
    if "cap_exceeded" in statuses:
        return EXIT_CAP
    if "error" in statuses:
        return EXIT_ERROR
    if "refuted" in statuses:
        return EXIT_REFUTED
    return EXIT_OK


def run(manifest: Manifest) -> tuple:
    """Run every check; returns (exit code, bundle).  Report order follows
    manifest order whatever the completion order."""
    s = manifest.settings
    deadline = time.monotonic() + s.max_seconds if s.max_seconds else None
    t0 = time.perf_counter()
    if s.workers > 1:
        with ThreadPoolExecutor(s.workers) as pool:
            reports = list(pool.map(lambda c: _run_one(c, deadline), manifest.checks))
    else:
        reports = [_run_one(c, deadline) for c in manifest.checks]
    code = exit_code(r["status"] for r in reports)
    counts = {}
    for r in reports:
        counts[r["status"]] = counts.get(r["status"], 0) + 1
    bundle = {
        "schema_version": SCHEMA_VERSION,
        "engine": "nilforms %s" % __version__,
        "manifest": manifest.name,
        "algebra": manifest.algebra.to_json() if manifest.algebra is not None else None,
        "mode": s.mode.to_json(),
        "caps": {"max_generators": s.caps.max_generators, "max_terms": s.caps.max_terms},
        "reports": reports,
        "summary": {"checks": len(reports), "statuses": dict(sorted(counts.items())), "exit_code": code},
    }
    if s.timing:
        bundle["seconds"] = round(time.perf_counter() - t0, 6)
    return code, bundle


def dumps(bundle) -> str:
    return json.dumps(bundle, indent=2, ensure_ascii=False) + "\n"
