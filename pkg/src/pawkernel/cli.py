"""Command-line front end: ``pawkernel {gen,kernelize,solve,verify,replay}``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 internal invariant violated.  Machine-readable output is JSON with a fixed
key order; the only non-deterministic value, wall time, sits in its own
top-level ``wall_time`` field.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from .errors import GenerationError, KernelInvariantError, ParseError
from .exact import Mode, solve, verify_solution
from .generator import BASES, FAMILIES, FLIPS, GenSpec, generate
from .graph import Instance, format_edge_list, parse_edge_list
from .kernel import DEFAULT_DEPTH, KernelResult, kernelize, replay

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTERNAL = 0, 1, 2, 3
SOLVE_MAX_N, SOLVE_MAX_K = 64, 8


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunReport:
    n: int
    m: int
    k: int
    n_out: int
    m_out: int
    k_out: int
    outcome: str
    rules: dict[str, int]
    size_certificate: int
    wall_time: float

    @property
    def certificate_respected(self) -> bool:
        return self.n_out <= self.size_certificate

    @classmethod
    def of(cls, result: KernelResult, wall_time: float) -> RunReport:
        src = result.source
        out = result.instance
        return cls(
            n=len(src.graph),
            m=src.graph.edge_count,
            k=src.budget,
            n_out=0 if out is None else len(out.graph),
            m_out=0 if out is None else out.graph.edge_count,
            k_out=result.budget,
            outcome=result.outcome,
            rules=result.rule_counts(),
            size_certificate=result.size_certificate,
            wall_time=wall_time,
        )

    def to_json(self) -> dict:
        """Comparable fields only; wall time is reported separately."""
        return {
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "n_out": self.n_out,
            "m_out": self.m_out,
            "k_out": self.k_out,
            "outcome": self.outcome,
            "rules": self.rules,
            "size_certificate": self.size_certificate,
            "certificate_respected": self.certificate_respected,
        }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _load(path: str, k: int | None = None) -> Instance:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    inst = parse_edge_list(text)
    return inst if k is None else Instance(inst.graph, k)


# -- subcommands ----------------------------------------------------------------


def cmd_gen(args) -> int:
    spec = GenSpec(
        seed=args.seed, family=args.family, k=args.k, n=args.n, p=args.p,
        base=args.base, edits=args.edits, flips=args.flips, rule_id=args.rule,
    )
    _emit(format_edge_list(generate(spec)), args.out)
    return EXIT_OK


def cmd_kernelize(args) -> int:
    inst = _load(args.file, args.k)
    start = time.perf_counter()
    result = kernelize(inst, args.mode, args.depth)
    elapsed = time.perf_counter() - start
    report = RunReport.of(result, elapsed)
    doc = {"kernel": result.to_json(), "report": report.to_json(), "wall_time": elapsed}
    _emit(_dump(doc), args.out)
    return EXIT_OK


def cmd_solve(args) -> int:
    inst = _load(args.file, args.k)
    n = len(inst.graph)
    if not args.force and (n > SOLVE_MAX_N or inst.budget > SOLVE_MAX_K):
        raise UsageError(
            f"instance has n={n}, k={inst.budget}; the solver guard is n <= {SOLVE_MAX_N},"
            f" k <= {SOLVE_MAX_K} (pass --force to override)"
        )
    edits = solve(inst, args.mode)
    if edits is None:
        doc = {"verdict": "no", "mode": Mode(args.mode).value, "k": inst.budget}
    else:
        if not verify_solution(inst.graph, edits, inst.budget, args.mode):
            raise KernelInvariantError(f"solver returned an invalid edit set {sorted(edits)}")
        doc = {
            "verdict": "yes",
            "mode": Mode(args.mode).value,
            "k": inst.budget,
            "edits": [list(e) for e in sorted(edits)],
        }
    _emit(_dump(doc), args.out)
    return EXIT_OK


def cmd_replay(args) -> int:
    inst = _load(args.file, args.k)
    try:
        doc = json.loads(Path(args.result).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load kernel result {args.result}: {exc}") from exc
    kernel = doc.get("kernel", doc)
    out = replay(inst, kernel["trace"])
    if kernel["outcome"] == "no":
        ok = out is None
    else:
        ok = (
            out is not None
            and list(out.graph.vertices) == kernel["vertices"]
            and [list(e) for e in out.graph.edges()] == kernel["edges"]
            and out.budget == kernel["k_out"]
        )
    print("replay " + ("matches" if ok else "DIFFERS"))
    return EXIT_OK if ok else EXIT_FAIL


# -- verify -------------------------------------------------------------------


def verify_specs(count: int, k_max: int, n_max: int, seed: int) -> list[GenSpec]:
    """Seeded batch mixing uniform, planted and every rule_trigger shape."""
    specs = [GenSpec(seed, "rule_trigger", k=min(1, k_max), rule_id=r) for r in (1, 2, 3, 4)]
    i = 0
    while len(specs) < count:
        s = seed + i
        k = i % (k_max + 1)
        n = 6 + i % max(1, n_max - 5)
        if i % 3 == 0:
            specs.append(GenSpec(s, "uniform", k=k, n=n, p=0.1 + 0.1 * (i % 5)))
        else:
            specs.append(
                GenSpec(s, "planted", k=k, n=n, base=BASES[i % len(BASES)], edits=i % (k_max + 2))
            )
        i += 1
    return specs[:count]


def check_one(spec: GenSpec, mode: str, depth: int) -> tuple[bool, bool, int, int]:
    """(equivalent, certificate respected, kernel size, certificate)."""
    inst = generate(spec)
    result = kernelize(inst, mode, depth)
    before = solve(inst, mode) is not None
    after = result.instance is not None and solve(result.instance, mode) is not None
    size = 0 if result.instance is None else len(result.instance.graph)
    return before == after, size <= result.size_certificate, size, result.size_certificate


def _check_star(job):
    return check_one(*job)


def cmd_verify(args) -> int:
    modes = [m.value for m in Mode] if args.mode == "all" else [Mode(args.mode).value]
    specs = verify_specs(args.count, args.k_max, args.n_max, args.seed)
    jobs = [(spec, mode, args.depth) for mode in modes for spec in specs]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_check_star, jobs, chunksize=8))
    else:
        results = [_check_star(j) for j in jobs]
    failed = False
    print(f"{'mode':<8}{'pass':>6}{'fail':>6}{'max_n_out':>11}{'cert_ok':>9}")
    for mode in modes:
        rows = [r for (_, m, _), r in zip(jobs, results) if m == mode]
        passes = sum(r[0] for r in rows)
        cert_ok = all(r[1] for r in rows)
        biggest = max(r[2] for r in rows)
        failed |= passes != len(rows) or not cert_ok
        print(f"{mode:<8}{passes:>6}{len(rows) - passes:>6}{biggest:>11}{str(cert_ok).lower():>9}")
    return EXIT_FAIL if failed else EXIT_OK


# -- argument parsing -----------------------------------------------------------


def _mode_arg(p: argparse.ArgumentParser, extra: tuple[str, ...] = ()) -> None:
    p.add_argument("--mode", choices=[m.value for m in Mode] + list(extra), default="edit")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pawkernel", description="Kernels and exact solvers for paw-free edge modification."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a seeded instance in edge-list format")
    g.add_argument("--family", default="planted", help=f"one of {', '.join(FAMILIES)}")
    g.add_argument("--n", type=int, default=20)
    g.add_argument("--k", type=int, default=1)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--base", default="mixed", help=f"one of {', '.join(BASES)}")
    g.add_argument("--edits", type=int, default=0)
    g.add_argument("--flips", default="any", help=f"one of {', '.join(FLIPS)}")
    g.add_argument("--rule", type=int, default=1, help="rule id for rule_trigger")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    kz = sub.add_parser("kernelize", help="reduce an instance and report sizes")
    kz.add_argument("file")
    _mode_arg(kz)
    kz.add_argument("--depth", type=int, default=DEFAULT_DEPTH, help="marking depth for editing")
    kz.add_argument("--k", type=int, help="override the budget in the file")
    kz.add_argument("--out")
    kz.set_defaults(func=cmd_kernelize)

    sv = sub.add_parser("solve", help="exact solver")
    sv.add_argument("file")
    _mode_arg(sv)
    sv.add_argument("--k", type=int, help="override the budget in the file")
    sv.add_argument("--force", action="store_true", help="ignore the size guard")
    sv.add_argument("--out")
    sv.set_defaults(func=cmd_solve)

    vf = sub.add_parser("verify", help="batch kernel/oracle equivalence check")
    _mode_arg(vf, ("all",))
    vf.add_argument("--count", type=int, default=100)
    vf.add_argument("--k-max", type=int, default=2)
    vf.add_argument("--n-max", type=int, default=30)
    vf.add_argument("--depth", type=int, default=DEFAULT_DEPTH)
    vf.add_argument("--seed", type=int, default=0)
    vf.add_argument("--jobs", type=int, default=1)
    vf.set_defaults(func=cmd_verify)

    rp = sub.add_parser("replay", help="re-apply a kernelize trace and compare outputs")
    rp.add_argument("file", help="original instance")
    rp.add_argument("result", help="JSON written by kernelize")
    rp.add_argument("--k", type=int, help="budget override used for kernelize")
    rp.set_defaults(func=cmd_replay)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KernelInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
