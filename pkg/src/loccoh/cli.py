"""Batch job runner: JSON job files in, JSON (and optionally CSV) reports out.

Exit codes: 0 all tasks passed, 1 a certificate or expectation failed,
2 the job file is malformed, 3 a computation raised.

Every flag has an environment default named ``LOCCOH_<FLAG>``; an explicit
flag wins over the environment.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import jsonschema

from . import ext_oracle, findim, groups, koszul_cech, zmod
from .errors import ComputationError, LoccohError, SchemaError
from .linalg import Field
from .monomials import MonomialIdeal, RingSpec
from .tables import SCHEMA_VERSION, CheckReport, DegreeBox, DegreeTable

log = logging.getLogger("loccoh")

ENV_PREFIX = "LOCCOH_"
EXIT_OK, EXIT_FAILED, EXIT_SCHEMA, EXIT_COMPUTE = 0, 1, 2, 3
DEFAULTS = {"s_max": 6, "r_max": 6, "N": 6, "seed": 0}
DEFAULT_RADIUS = 4

RING_TASKS = {"local-cohomology", "cech", "koszul-colimit", "ext-oracle", "oracle-compare",
              "les-check", "radical-check", "vanishing"}
TABLE_TASKS = {"local-cohomology", "cech", "koszul-colimit", "ext-oracle"}
ZP_TASKS = {"zp-gamma", "zp-lambda", "zp-cech", "zp-laws", "zp-tables"}
ALGEBRA_TASKS = {"gorenstein", "frobenius", "ext-algebra", "hilbert-symmetry"}


def job_schema() -> dict:
    text = resources.files("loccoh").joinpath("schema/job.schema.json").read_text()
    return json.loads(text)


def corpus_dir() -> Path:
    return Path(str(resources.files("loccoh").joinpath("corpus")))


# -- loading and validation ------------------------------------------------------

def load_job(path) -> dict:
    try:
        with open(path) as fh:
            job = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from exc
    validate_job(job)
    return job


def validate_job(job: dict) -> None:
    validator = jsonschema.Draft202012Validator(job_schema())
    errors = sorted(validator.iter_errors(job), key=lambda e: list(e.absolute_path))
    if errors:
        e = errors[0]
        where = "/".join(str(x) for x in e.absolute_path) or "<root>"
        raise SchemaError(f"{where}: {e.message}")
    names = {_task_name(t) for t in job["tasks"]}
    contexts = ring_contexts(job)
    if names & RING_TASKS:
        for ctx in contexts:
            if "ring" not in ctx or "ideal" not in ctx:
                raise SchemaError(f"ring tasks need 'ring' and 'ideal' (instance {ctx.get('label', '?')!r})")
            n = ctx["ring"]["nvars"]
            monos = list(ctx["ideal"]) + list(ctx.get("ideal2", [])) + list(ctx["ring"].get("relations", []))
            monos += list((ctx.get("module") or {}).get("relations", []))
            if any(len(m) != n for m in monos):
                raise SchemaError(f"monomial of the wrong length for {n} variables")
            box = ctx.get("box")
            if isinstance(box, dict) and "lo" in box and not (len(box["lo"]) == len(box["hi"]) == n):
                raise SchemaError("box corners must have one entry per variable")
            if isinstance(box, dict) and "lo" in box and any(a > b for a, b in zip(box["lo"], box["hi"])):
                raise SchemaError("box lo must be <= hi")
    if "radical-check" in names and any("ideal2" not in c for c in contexts):
        raise SchemaError("radical-check needs 'ideal2'")
    if names & ZP_TASKS and "zp" not in job:
        raise SchemaError("zp tasks need a 'zp' block")
    if names & {"zp-gamma", "zp-lambda", "zp-cech"} and "module" not in job.get("zp", {}):
        raise SchemaError("zp-gamma, zp-lambda and zp-cech need zp.module")
    if names & ALGEBRA_TASKS and "algebra" not in job:
        raise SchemaError("algebra tasks need an 'algebra' block")


def _task_name(t) -> str:
    return t if isinstance(t, str) else t["task"]


def ring_contexts(job: dict) -> List[dict]:
    base = {k: job[k] for k in ("field", "ring", "ideal", "ideal2", "module", "box") if k in job}
    instances = job.get("instances") or [{}]
    fields = job.get("fields")
    out = []
    for k, inst in enumerate(instances):
        ctx = dict(base, **inst)
        ctx.setdefault("label", inst.get("label", f"instance {k}"))
        if fields and "field" not in inst:
            for f in fields:
                out.append(dict(ctx, field=f, label=f"{ctx['label']} over {f}"))
        else:
            out.append(ctx)
    return out


# -- building inputs -------------------------------------------------------------

@dataclass
class RingInput:
    label: str
    ring: RingSpec
    ideal: List[Tuple[int, ...]]
    ideal2: Optional[List[Tuple[int, ...]]]
    module: Optional[List[Tuple[int, ...]]]
    box: DegreeBox
    echo: dict


def ring_input(ctx: dict) -> RingInput:
    fld = Field.parse(ctx.get("field", "QQ"))
    r = ctx["ring"]
    n = r["nvars"]
    rel = MonomialIdeal(n, tuple(tuple(m) for m in r.get("relations", [])))
    ring = RingSpec(n, fld, rel, tuple(r["variable_degrees"]) if "variable_degrees" in r else None)
    box = ctx.get("box", DEFAULT_RADIUS)
    if isinstance(box, int):
        box = DegreeBox.cube(n, box)
    elif "radius" in box:
        box = DegreeBox.cube(n, box["radius"])
    else:
        box = DegreeBox(tuple(box["lo"]), tuple(box["hi"]))
    module = ctx.get("module")
    mod = [tuple(m) for m in module["relations"]] if module and module.get("relations") else None
    ideal = [tuple(m) for m in ctx["ideal"]]
    ideal2 = [tuple(m) for m in ctx["ideal2"]] if "ideal2" in ctx else None
    echo = {"field": str(fld), "nvars": n, "ring_relations": [list(m) for m in rel.gens],
            "ideal": [list(m) for m in ideal], "module_relations": [list(m) for m in mod or []],
            "box": box.to_json()}
    if ideal2 is not None:
        echo["ideal2"] = [list(m) for m in ideal2]
    return RingInput(ctx["label"], ring, ideal, ideal2, mod, box, echo)


def algebra_inputs(spec: dict, fields: List[str]) -> List[Tuple[str, findim.FinDimAlgebra]]:
    out = []
    for fname in fields:
        fld = Field.parse(fname)
        if "group" in spec:
            out.append((spec["group"], findim.group_algebra(groups.group_table(spec["group"]), fld, spec["group"])))
        elif "groups" in spec:
            named = groups.corpus_groups() if spec["groups"] == "corpus" else \
                {g: groups.group_table(g) for g in spec["groups"]}
            for name, table in named.items():
                out.append((name, findim.group_algebra(table, fld, name)))
        elif "group_table" in spec:
            name = spec.get("label", "group")
            out.append((name, findim.group_algebra(spec["group_table"], fld, name)))
        elif "exterior" in spec:
            A = findim.exterior_algebra(fld, spec["exterior"])
            out.append((spec.get("label", A.name), A))
        elif "monomial" in spec:
            gens = [tuple(m) for m in spec["monomial"]]
            A = findim.monomial_algebra(fld, MonomialIdeal(len(gens[0]), tuple(gens)))
            out.append((spec.get("label", A.name), A))
        elif "structure" in spec:
            A = findim.FinDimAlgebra.from_json(spec["structure"], fld)
            out.append((spec.get("label", A.name or "algebra"), A))
        else:
            raise SchemaError("algebra block names no algebra")
    return [(f"{name} over {A.field}", A) for name, A in out]


def _functional(A: findim.FinDimAlgebra, spec):
    if spec is None or spec == "identity":
        return None
    if spec == "top-degree":
        return findim.top_degree_functional(A)
    if len(spec) != A.dim:
        raise SchemaError(f"functional has {len(spec)} entries for an algebra of dimension {A.dim}")
    return [A.field.parse(x) if isinstance(x, str) else A.field(x) for x in spec]


# -- expectations ----------------------------------------------------------------

def check_table_expect(table: DegreeTable, expect: dict) -> List[dict]:
    """Keys: ``cells`` [{i, degree, dim}], ``nonzero_indices``, ``totals`` {i: total}, ``equals`` (another table's cells)."""
    misses = []
    for cell in expect.get("cells", []):
        got = table.get(cell["i"], cell["degree"])
        if got != cell["dim"]:
            misses.append({"index": cell["i"], "degree": cell["degree"], "expected": cell["dim"], "got": got})
    if "nonzero_indices" in expect and table.nonzero_indices() != expect["nonzero_indices"]:
        misses.append({"nonzero_indices": table.nonzero_indices(), "expected": expect["nonzero_indices"]})
    for i, tot in expect.get("totals", {}).items():
        if table.total(int(i)) != tot:
            misses.append({"index": int(i), "expected_total": tot, "got": table.total(int(i))})
    return misses


def check_value_expect(value: Any, expect: dict, path: str = "") -> List[dict]:
    """Subset match: every expected key must be present with an equal value (lists of atoms compare as multisets)."""
    misses = []
    for k, want in expect.items():
        here = f"{path}/{k}"
        if not isinstance(value, dict) or k not in value:
            misses.append({"key": here, "expected": want, "got": None})
            continue
        got = value[k]
        if isinstance(want, dict) and isinstance(got, dict):
            misses += check_value_expect(got, want, here)
        elif isinstance(want, list) and isinstance(got, list) and all(isinstance(x, str) for x in want + got):
            if sorted(want) != sorted(got):
                misses.append({"key": here, "expected": want, "got": got})
        elif want != got:
            misses.append({"key": here, "expected": want, "got": got})
    return misses


# -- task execution --------------------------------------------------------------

@dataclass
class TaskOutcome:
    entry: dict
    seconds: float
    status: str                                  # "passed", "failed", "error", "input-error"
    csv: Optional[str] = None


@dataclass
class Runner:
    threads: int = 1
    seed: int = 0
    outcomes: List[TaskOutcome] = field(default_factory=list)

    def run(self, job: dict) -> dict:
        params = dict(DEFAULTS, **job.get("parameters", {}))
        if "seed" not in job.get("parameters", {}):
            params["seed"] = self.seed
        self.params = params
        for k, t in enumerate(job["tasks"]):
            name = _task_name(t)
            expect = t.get("expect") if isinstance(t, dict) else None
            if name in RING_TASKS:
                for ctx in ring_contexts(job):
                    self._timed(name, expect, lambda: self._ring_task(name, ring_input(ctx), expect), ctx.get("label"))
            elif name in ZP_TASKS:
                self._timed(name, expect, lambda: self._zp_task(name, job["zp"], expect))
            else:
                spec = job["algebra"]
                fields = job.get("fields") or [job.get("field", "QQ")]
                try:
                    algebras = algebra_inputs(spec, fields)
                except (LoccohError, ValueError) as exc:
                    self._record(name, None, {"error": str(exc), "error_type": type(exc).__name__}, 0.0, "input-error")
                    continue
                for label, A in algebras:
                    self._timed(name, expect, lambda: self._algebra_task(name, A, spec, expect), label)
        return self.report(job)

    def _record(self, name, label, body, seconds, status, csv=None):
        entry = {"task": name}
        if label is not None:
            entry["instance"] = label
        entry.update(body)
        entry["status"] = status
        self.outcomes.append(TaskOutcome(entry, seconds, status, csv))

    def _timed(self, name, expect, fn, label=None):
        t0 = time.perf_counter()
        try:
            body, passed, csv = fn()
            status = "passed" if passed else "failed"
        except ComputationError as exc:
            body, status, csv = {"error": str(exc), "error_type": type(exc).__name__}, "error", None
        except (LoccohError, ValueError) as exc:
            body, status, csv = {"error": str(exc), "error_type": type(exc).__name__}, "input-error", None
        seconds = time.perf_counter() - t0
        log.info("%s %s: %s (%.2fs)", name, label or "", status, seconds)
        self._record(name, label, body, seconds, status, csv)

    # each task returns (report body, passed, csv text or None)

    def _ring_task(self, name, inp: RingInput, expect):
        p = self.params
        ring, I, M, box = inp.ring, inp.ideal, inp.module, inp.box
        body = {"inputs": dict(inp.echo, s_max=p["s_max"], r_max=p["r_max"])}
        if name in TABLE_TASKS:
            if name == "local-cohomology":
                table = koszul_cech.local_cohomology(ring, I, M, box, self.threads)
            elif name == "cech":
                table = koszul_cech.cech_cohomology(ring, I, M, box, self.threads)
            elif name == "koszul-colimit":
                table = koszul_cech.koszul_colimit_cohomology(ring, I, M, box, p["s_max"], self.threads)
            else:
                table = ext_oracle.stable_ext(ring, I, M, box, p["r_max"], threads=self.threads)
            body["table"] = table.to_json()
            misses = check_table_expect(table, expect or {})
            if misses:
                body["witness"] = misses
            return body, not misses, table.to_csv()
        if name == "oracle-compare":
            rep = ext_oracle.compare_oracles(ring, I, M, box, p["s_max"], p["r_max"], self.threads)
            tables = rep.details.pop("tables")
            body["certificate"] = rep.to_json()
            body["tables"] = {k: t.to_json() for k, t in tables.items()}
            misses = check_table_expect(tables["local_cohomology"], expect or {})
            return self._verdict(body, rep, misses)
        if name == "les-check":
            rep = koszul_cech.les_check(ring, I, M, box)
        elif name == "radical-check":
            rep = koszul_cech.radical_invariance_check(ring, I, inp.ideal2, M, box)
        else:
            rep = koszul_cech.vanishing_report(ring, I, M, box)
        body["certificate"] = rep.to_json()
        misses = check_value_expect(rep.details, expect or {})
        return self._verdict(body, rep, misses)

    @staticmethod
    def _verdict(body, rep: CheckReport, misses):
        if misses:
            body["witness"] = misses
        elif not rep.passed:
            body["witness"] = rep.witness
        return body, rep.passed and not misses, None

    def _zp_task(self, name, zp: dict, expect):
        p = zp.get("p")
        primes = zp.get("primes") or ([p] if p else [2, 3, 5])
        body: Dict[str, Any] = {"inputs": {"p": p, "primes": primes}}
        if name in ("zp-gamma", "zp-lambda", "zp-cech"):
            M = zmod.parse_object(zp["module"])
            body["inputs"]["module"] = M.to_json()
            if name == "zp-gamma":
                value = zmod.gamma_p(M).to_json()
                seq = zmod.gamma_sequence(M)
            elif name == "zp-lambda":
                value = zmod.lambda_p(M).to_json()
                seq = None
            else:
                value = zmod.cech_p(M).to_json()
                seq = zmod.cech_homology_sequence(M)
            body["result"] = value
            ok = True
            if seq is not None:
                ok, steps = zmod.certify_exact(seq)
                body["exactness"] = {"sequence": [x.to_json() for x in seq], "certified": ok}
            misses = check_value_expect(value, expect or {})
            if misses:
                body["witness"] = misses
            elif not ok:
                body["witness"] = body["exactness"]
            return body, ok and not misses, None
        if name == "zp-laws":
            samples = [zmod.parse_object(s) for s in zp.get("samples", [])]
            if not samples:
                samples = [zmod.parse_object(a) for a in zmod.ALL_ATOMS]
            n = zp.get("random_sums", 50)
            samples += zmod.random_sums(n, seed=self.params["seed"])
            body["inputs"].update(samples=len(samples), random_sums=n, seed=self.params["seed"])
            rep = zmod.functor_laws_check(samples, p)
            body["certificate"] = rep.to_json()
            return self._verdict(body, rep, [])
        truncations = zp.get("truncations", [8, 12])
        body["inputs"]["truncations"] = truncations
        reports = []
        passed = True
        for q in primes:
            for N in truncations:
                # N = 8 resolves Z/p^k for k <= 2, N = 12 for k <= 3
                ks = (1, 2) if N < 12 else (1, 2, 3)
                rep = zmod.verify_tables(q, N, ks)
                reports.append(dict(rep.to_json(), p=q, N=N, ks=list(ks)))
                passed = passed and rep.passed
        body["certificates"] = reports
        if not passed:
            body["witness"] = next(r["failures"][0] for r in reports if not r["passed"])
        return body, passed, None

    def _algebra_task(self, name, A: findim.FinDimAlgebra, spec: dict, expect):
        N = self.params["N"]
        body: Dict[str, Any] = {"inputs": {"field": str(A.field), "dim": A.dim, "N": N}}
        if name == "gorenstein":
            value = findim.gorenstein_report(A, N)
        elif name == "frobenius":
            res = findim.frobenius_check(A, _functional(A, spec.get("functional")))
            value = {"nondegenerate": res.nondegenerate, "rank": res.rank, "witness": res.witness}
            body["inputs"]["functional"] = spec.get("functional", "identity")
        elif name == "hilbert-symmetry":
            rep = findim.hilbert_symmetry_check(A)
            value = dict(rep.details, passed=rep.passed, failures=rep.failures)
        else:
            E = findim.ext_algebra(A, N)
            rep = findim.polynomial_certificate(E, N)
            nonzero = [n for n in range(N) if any(x != 0 for x in E.product(1, 0, n, 0))] if E.dims[1:2] == [1] else []
            value = {"dims": E.dims, "polynomial": rep.passed, "generator_powers_nonzero": nonzero}
        body["result"] = value
        if expect:
            misses = check_value_expect(value, expect)
            passed = not misses
        else:
            misses = []
            passed = {"frobenius": value.get("nondegenerate"), "hilbert-symmetry": value.get("passed"),
                      "ext-algebra": value.get("polynomial")}.get(name, True)
        if misses:
            body["witness"] = misses
        elif not passed:
            body["witness"] = value.get("witness") or value.get("failures")
        return body, bool(passed), None

    def report(self, job: dict) -> dict:
        tasks = []
        for k, o in enumerate(self.outcomes):
            tasks.append(dict(o.entry, id=k, passed=o.status == "passed"))
        return {
            "schema_version": SCHEMA_VERSION,
            "job": job.get("name", ""),
            "parameters": self.params,
            "passed": all(o.status == "passed" for o in self.outcomes),
            "tasks": tasks,
            "timing": {
                "generated_at": datetime.now(timezone.utc).isoformat(timespec="seconds"),
                "seconds": [round(o.seconds, 4) for o in self.outcomes],
            },
        }

    def exit_code(self) -> int:
        statuses = {o.status for o in self.outcomes}
        if "error" in statuses:
            return EXIT_COMPUTE
        if "input-error" in statuses:
            return EXIT_SCHEMA
        if "failed" in statuses:
            return EXIT_FAILED
        return EXIT_OK


def strip_volatile(report: dict) -> dict:
    """The report without its timing block, for byte comparisons."""
    return {k: v for k, v in report.items() if k != "timing"}


def run_job(path, out=None, csv: bool = False, threads: int = 1, seed: int = 0) -> Tuple[int, dict]:
    """Run one job file; returns (exit code, report) and writes the report if ``out`` is given."""
    try:
        job = load_job(path)
    except (SchemaError, OSError) as exc:
        report = {"schema_version": SCHEMA_VERSION, "job": str(path), "passed": False,
                  "error": str(exc), "error_type": type(exc).__name__, "tasks": []}
        _write(report, out)
        return EXIT_SCHEMA, report
    runner = Runner(threads=threads, seed=seed)
    report = runner.run(job)
    _write(report, out)
    if csv:
        base = Path(out) if out else Path(Path(path).stem + ".json")
        for k, o in enumerate(runner.outcomes):
            if o.csv is not None:
                base.with_name(f"{base.stem}-{k}-{o.entry['task']}.csv").write_text(o.csv)
    return runner.exit_code(), report


def _write(report: dict, out) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(json.dumps(report, indent=2) + "\n")


def run_suite(directory, out_dir=None, threads: int = 1, seed: int = 0, stream=None) -> Tuple[int, List[dict]]:
    """Run every ``*.json`` job in a directory; nonzero iff some job did not exit 0."""
    stream = stream or sys.stdout
    paths = sorted(Path(directory).glob("*.json"))
    if not paths:
        log.warning("no job files in %s", directory)
        print(f"warning: zero jobs found in {directory}", file=stream)
        return EXIT_OK, []
    rows = []
    for path in paths:
        out = Path(out_dir) / f"{path.stem}.report.json" if out_dir else None
        t0 = time.perf_counter()
        code, report = run_job(path, out, threads=threads, seed=seed)
        rows.append({"job": path.name, "exit": code, "tasks": len(report.get("tasks", [])),
                     "seconds": round(time.perf_counter() - t0, 2)})
    width = max(len(r["job"]) for r in rows)
    for r in rows:
        verdict = "PASS" if r["exit"] == EXIT_OK else f"FAIL (exit {r['exit']})"
        print(f"{r['job']:<{width}}  {r['tasks']:>4} task(s)  {r['seconds']:>7.2f}s  {verdict}", file=stream)
    failed = [r for r in rows if r["exit"] != EXIT_OK]
    print(f"{len(rows) - len(failed)}/{len(rows)} jobs passed", file=stream)
    return (max(r["exit"] for r in failed) if failed else EXIT_OK), rows


# -- command line ----------------------------------------------------------------

def _env(name, default=None):
    return os.environ.get(ENV_PREFIX + name, default)


def _env_flag(name) -> bool:
    return _env(name, "").strip().lower() in ("1", "true", "yes", "on")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="loccoh", description="Run local cohomology and completion jobs.")
    ap.add_argument("--job", default=_env("JOB"), help="job file (env LOCCOH_JOB)")
    ap.add_argument("--suite", default=_env("SUITE"),
                    help="directory of job files; 'corpus' runs the bundled corpus (env LOCCOH_SUITE)")
    ap.add_argument("--out", default=_env("OUT"),
                    help="report file for --job, report directory for --suite (env LOCCOH_OUT)")
    ap.add_argument("--csv", action="store_true", default=_env_flag("CSV"),
                    help="also write one CSV per degree table next to the report (env LOCCOH_CSV)")
    ap.add_argument("--threads", type=int, default=int(_env("THREADS", "1")),
                    help="degree-parallel worker threads (env LOCCOH_THREADS)")
    ap.add_argument("--seed", type=int, default=int(_env("SEED", "0")),
                    help="seed for randomized samples (env LOCCOH_SEED)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if bool(args.job) == bool(args.suite):
        print("give exactly one of --job or --suite", file=sys.stderr)
        return EXIT_SCHEMA
    if args.suite:
        directory = corpus_dir() if args.suite == "corpus" else args.suite
        code, _ = run_suite(directory, args.out, args.threads, args.seed)
        return code
    code, report = run_job(args.job, args.out, args.csv, args.threads, args.seed)
    if not args.out:
        print(json.dumps(report, indent=2))
    else:
        print(f"{args.job}: {'PASS' if code == EXIT_OK else f'FAIL (exit {code})'} -> {args.out}")
    return code


if __name__ == "__main__":
    sys.exit(main())
