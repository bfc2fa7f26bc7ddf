"""Command-line front end.

Three subcommands:

  cohomology   print H*(Y), H*_c(X), H*(X) for each (n, q), cross-checked
               against their closed forms
  verify       run the invariant battery over a (n, q, m) grid
  dims         print parabolic indices and Steinberg dimensions for all I

Exit codes: 0 success, 1 usage error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import cohomology as coh
from .errors import DeskScaleExceeded
from .ffgeom import drinfeld_points, enumerate_flags
from .gmodules import pullback_matrix, steinberg_dim, steinberg_resolution
from .orlik import build_function_complex, e2_page
from .qarith import is_prime, parabolic_index, projective_count
from .rootdata import ParabolicType, subsets_of_size

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2

SUITES = ("steinberg", "orlik", "e2", "cohomology", "lefschetz", "pullbacks")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunConfig:
    command: str
    n: int
    q: list[int]
    m_max: int
    fmt: str
    cache_dir: str | None
    jobs: int
    seed: int
    suite: str


def _parse_q_list(text: str) -> list[int]:
    try:
        qs = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse q list {text!r}")
    if not qs:
        raise argparse.ArgumentTypeError("empty q list")
    return qs


def build_parser() -> _Parser:
    p = _Parser(prog="drincoh", description=__doc__.strip().splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, n_flag):
        sp.add_argument(n_flag, type=int, required=True, dest="n")
        sp.add_argument("--q", type=_parse_q_list, required=True,
                        help="comma-separated list of primes")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--cache-dir", default=None)

    sp = sub.add_parser("cohomology", help="print and cross-check the three tables")
    common(sp, "--n")

    sp = sub.add_parser("verify", help="run verification suites over a grid")
    common(sp, "--n-max")
    sp.add_argument("--suite", default="all", choices=("all",) + SUITES)
    sp.add_argument("--m-max", type=int, default=2)
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--jobs", type=int, default=1,
                    help="worker processes; 0 = one per cpu")

    sp = sub.add_parser("dims", help="Steinberg dimension and index tables")
    common(sp, "--n")
    return p


def _validate(cfg: RunConfig) -> str | None:
    if cfg.n < 1:
        return f"n must be >= 1, got {cfg.n}"
    for q in cfg.q:
        if not is_prime(q):
            return f"q must be prime, got {q}"
    if cfg.m_max < 1:
        return f"m bound must be >= 1, got {cfg.m_max}"
    if cfg.jobs < 0:
        return f"jobs must be >= 0, got {cfg.jobs}"
    return None


# ---------------------------------------------------------------------------
# cohomology command
# ---------------------------------------------------------------------------


def _table_diff(name: str, got, want) -> list[str]:
    if got == want:
        return []
    lines = [f"MISMATCH in {name}:"]
    for d in sorted(set(got.degrees()) | set(want.degrees())):
        g, w = got.module(d), want.module(d)
        if g != w:
            lines.append(f"  degree {d}: computed {g}, expected {w}")
    return lines


def cmd_cohomology(cfg: RunConfig) -> int:
    failures: list[str] = []
    payload = []
    for q in cfg.q:
        hy = coh.h_of_y(cfg.n, q)
        hc = coh.hc_of_x(cfg.n, q)
        hx = coh.h_of_x(cfg.n, q)
        failures += _table_diff(f"H(Y) n={cfg.n} q={q}", hy, coh.closed_form_h_of_y(cfg.n, q))
        failures += _table_diff(f"Hc(X) n={cfg.n} q={q}", hc, coh.expected_hc_of_x(cfg.n, q))
        failures += _table_diff(f"H(X) n={cfg.n} q={q}", hx, coh.expected_h_of_x(cfg.n, q))
        for j in range(0, 2 * cfg.n + 1):
            a, b = hx.module(j), hc.module(2 * cfg.n - j)
            if a.dim != b.dim:
                failures.append(f"duality dim failure at degree {j} (q={q})")
            for s, t in zip(a.summands, b.summands):
                if s.twist + t.twist != -cfg.n:
                    failures.append(f"twist sum != -n at degree {j} (q={q})")
        payload += [hy, hc, hx]
    if cfg.fmt == "json":
        print(json.dumps([t.to_json_dict() for t in payload], indent=2))
    else:
        for t in payload:
            print(t.render_text())
            print()
    if failures:
        print("\n".join(failures), file=sys.stderr)
        return EXIT_FAIL
    if cfg.fmt == "text":
        print("all cross-checks passed")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify command
# ---------------------------------------------------------------------------


def _job_steinberg(n: int, q: int, m: int, seed: int) -> str:
    for c in range(n):
        for J in subsets_of_size(n, c, proper=True):
            data = steinberg_resolution(J, q)
            # construction already validates exactness and the closed form
            assert data.dim_v == steinberg_dim(J, q)
    width = parabolic_index(ParabolicType.empty(n), q)
    return f"all J exact, |G/B|={width}"

def _job_orlik(n: int, q: int, m: int, seed: int) -> str:
    fc = build_function_complex(n, q, m)
    dims = fc.complex.homology_dims()
    if any(dims):
        raise AssertionError(f"function complex not acyclic: {dims}")
    return f"terms {fc.complex.terms} acyclic"

def _job_e2(n: int, q: int, m: int, seed: int) -> str:
    page = e2_page(n, q)  # raises on any closed-form mismatch
    return f"{len(page)} nonzero entries match"

def _job_cohomology(n: int, q: int, m: int, seed: int) -> str:
    hy = coh.h_of_y(n, q)
    if hy != coh.closed_form_h_of_y(n, q):
        raise AssertionError("H(Y) differs from closed form")
    if coh.hc_of_x(n, q) != coh.expected_hc_of_x(n, q):
        raise AssertionError("Hc(X) differs from closed form")
    if coh.h_of_x(n, q) != coh.expected_h_of_x(n, q):
        raise AssertionError("H(X) differs from closed form")
    trace = hy.euler_trace(m)
    expected = projective_count(n, q, m) - drinfeld_points(n, q, m)
    if trace != expected:
        raise AssertionError(f"H(Y) trace {trace} != point count {expected} at m={m}")
    return "tables and traces match"

def _job_lefschetz(n: int, q: int, m: int, seed: int) -> str:
    lc = coh.lefschetz_count(n, q, m)
    dp = drinfeld_points(n, q, m)
    if lc != dp:
        raise AssertionError(f"lefschetz {lc} != enumeration {dp}")
    return f"both sides {lc}"

def sample_nested_triple(rng: random.Random, n: int):
    """A random nested triple I ⊆ J ⊆ L of simple-root subsets."""
    L = [r for r in range(n) if rng.random() < 0.7]
    J = [r for r in L if rng.random() < 0.7]
    I = [r for r in J if rng.random() < 0.7]
    return ParabolicType.of(n, I), ParabolicType.of(n, J), ParabolicType.of(n, L)


def check_pullback_properties(I: ParabolicType, J: ParabolicType, L: ParabolicType, q: int):
    """Functoriality plus the one-per-row / constant-column-sum shape checks."""
    PIJ = pullback_matrix(I, J, q)
    PJL = pullback_matrix(J, L, q)
    if PIJ @ PJL != pullback_matrix(I, L, q):
        raise AssertionError(f"functoriality fails for {I}, {J}, {L}")
    rows: dict[int, list] = {}
    colsums = [0] * PIJ.cols
    for (i, j), v in PIJ.entries.items():
        rows.setdefault(i, []).append(v)
        colsums[j] += v
    if len(rows) != PIJ.rows or any(vs != [1] for vs in rows.values()):
        raise AssertionError("pullback is not one-nonzero-per-row")
    fiber = parabolic_index(I, q) // parabolic_index(J, q)
    if any(cs != fiber for cs in colsums):
        raise AssertionError("pullback column sums are not the fiber size")


def _job_pullbacks(n: int, q: int, m: int, seed: int) -> str:
    rng = random.Random(seed + 1000 * n + q)
    for _ in range(20):
        I, J, L = sample_nested_triple(rng, n)
        check_pullback_properties(I, J, L, q)
    return "20 sampled triples pass"


_JOBS = {
    "steinberg": _job_steinberg,
    "orlik": _job_orlik,
    "e2": _job_e2,
    "cohomology": _job_cohomology,
    "lefschetz": _job_lefschetz,
    "pullbacks": _job_pullbacks,
}

_PER_M = {"orlik", "lefschetz", "cohomology"}


def _grid(cfg: RunConfig) -> list[tuple[str, int, int, int]]:
    suites = SUITES if cfg.suite == "all" else (cfg.suite,)
    jobs = []
    for suite in suites:
        for n in range(1, cfg.n + 1):
            for q in cfg.q:
                ms = range(1, cfg.m_max + 1) if suite in _PER_M else (1,)
                for m in ms:
                    jobs.append((suite, n, q, m))
    return jobs


def _run_job(args) -> dict:
    suite, n, q, m, seed = args
    t0 = time.time()
    try:
        detail = _JOBS[suite](n, q, m, seed)
        status = "pass"
    except DeskScaleExceeded as exc:
        status, detail = "skip", str(exc)
    except Exception as exc:  # report, don't crash the whole battery
        status, detail = "fail", f"{type(exc).__name__}: {exc}"
    return {
        "suite": suite, "n": n, "q": q, "m": m,
        "status": status, "detail": detail, "seconds": round(time.time() - t0, 3),
    }


def cmd_verify(cfg: RunConfig) -> int:
    jobs = [(s, n, q, m, cfg.seed) for (s, n, q, m) in _grid(cfg)]
    workers = cfg.jobs if cfg.jobs > 0 else (os.cpu_count() or 1)
    if workers == 1 or len(jobs) <= 1:
        results = [_run_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_job, jobs))
    results.sort(key=lambda r: (r["suite"], r["n"], r["q"], r["m"]))
    ok = all(r["status"] != "fail" for r in results)
    if cfg.fmt == "json":
        print(json.dumps({"ok": ok, "results": results}, indent=2))
    else:
        for r in results:
            tag = {"pass": "PASS", "fail": "FAIL", "skip": "SKIP"}[r["status"]]
            grid = f"n={r['n']} q={r['q']}" + (f" m={r['m']}" if r["suite"] in _PER_M else "")
            print(f"{tag}  {r['suite']:<11} {grid:<16} {r['detail']}  ({r['seconds']}s)")
        counts = {s: sum(1 for r in results if r["status"] == s) for s in ("pass", "fail", "skip")}
        print(f"{counts['pass']} passed, {counts['fail']} failed, {counts['skip']} skipped")
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# dims command
# ---------------------------------------------------------------------------


def cmd_dims(cfg: RunConfig) -> int:
    payload = []
    for q in cfg.q:
        rows = []
        for c in range(cfg.n + 1):
            for I in subsets_of_size(cfg.n, c, proper=False):
                rows.append({
                    "subset": I.subset_str(),
                    "composition": I.composition_str(),
                    "index": parabolic_index(I, q),
                    "steinberg_dim": steinberg_dim(I, q),
                })
        payload.append({"n": cfg.n, "q": q, "rows": rows})
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for block in payload:
            print(f"n={block['n']} q={block['q']}")
            print(f"  {'I':<14}{'type':<12}{'[G:P_I]':>10}{'dim v':>8}")
            for r in block["rows"]:
                print(f"  {r['subset']:<14}{r['composition']:<12}{r['index']:>10}{r['steinberg_dim']:>8}")
            print()
    return EXIT_OK


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        command=args.command,
        n=args.n,
        q=args.q,
        m_max=getattr(args, "m_max", 1),
        fmt=args.format,
        cache_dir=args.cache_dir,
        jobs=getattr(args, "jobs", 1),
        seed=getattr(args, "seed", 2024),
        suite=getattr(args, "suite", "all"),
    )
    problem = _validate(cfg)
    if problem:
        print(f"drincoh: error: {problem}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.cache_dir:
        # warm the flag cache so later enumerations read through it
        for c in range(cfg.n):
            for I in subsets_of_size(cfg.n, c, proper=True):
                for q in cfg.q:
                    enumerate_flags(I, q, cache_dir=cfg.cache_dir)
    handler = {"cohomology": cmd_cohomology, "verify": cmd_verify, "dims": cmd_dims}
    return handler[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
