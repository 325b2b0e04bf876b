"""Batch front end: enumerate, classify, support, hecke, verify.

Usage::

    jordhecke --flavor SOodd --size 6 --supply reps.json \\
              --tasks enumerate,classify,support --out results/

Two files are written into ``--out``: ``results.json`` (sorted keys, no
timestamps, so identical jobs give identical bytes) and ``summary.txt``.
The exit status is 0 only when every requested verification passes.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterator, Sequence

from .errors import EmptySupply, InvalidParameter, IoError, JordHeckeError
from .hecke import (
    HeckeContext,
    check_antihom,
    check_associativity,
    check_bernstein_relation,
    check_braid,
    check_involution,
    check_quadratic,
    lattice_box,
    small_basis,
    standard_contexts,
)
from .params import (
    EnhancedParam,
    JordanBlock,
    component_group,
    epsilon_extensions,
    is_bounded,
    is_cuspidal,
    is_relevant,
    restriction_reducible,
)
from .repdata import GroupFlavor, Registry, parse_flavor
from .rootdata import build_presentation, gl_factors_from_segments
from .support import cuspidal_support

TASKS = ("enumerate", "classify", "support", "hecke", "verify")


@dataclass(frozen=True)
class JobSpec:
    flavor: GroupFlavor
    supply: Path
    tasks: tuple[str, ...]
    out: Path
    seed: int = 0
    max_rank: int = 2

    def __post_init__(self) -> None:
        if not self.tasks:
            raise InvalidParameter("at least one task is required")
        unknown = [t for t in self.tasks if t not in TASKS]
        if unknown:
            raise InvalidParameter(f"unknown tasks {unknown}; choose from {', '.join(TASKS)}")
        if self.max_rank < 0:
            raise InvalidParameter("max_rank must be nonnegative")

    @property
    def size(self) -> int:
        return self.flavor.std_size


def load_supply(path: Path | str) -> Registry:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read rep supply {path}: {exc.strerror or exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise IoError(f"rep supply {path} is not valid JSON: {exc}") from exc
    return Registry.from_json(doc)


# --------------------------------------------------------------------------
# enumeration


def _candidate_blocks(flavor: GroupFlavor, n: int, registry: Registry) -> list[tuple[str, int, int]]:
    """(rep, a, size) for every correctly signed block fitting into size n."""
    out = []
    for rep in registry:
        parity = rep.selfdual.block_parity
        if parity is None:
            continue
        a = 2 if parity == 0 else 1
        while rep.dim * a <= n:
            out.append((rep.id, a, rep.dim * a))
            a += 2
    return out


def _subsets_with_sum(cands: Sequence[tuple[str, int, int]], n: int) -> Iterator[list[tuple[str, int, int]]]:
    chosen: list[tuple[str, int, int]] = []

    def walk(i: int, left: int) -> Iterator[list[tuple[str, int, int]]]:
        if left == 0:
            yield list(chosen)
            return
        for j in range(i, len(cands)):
            size = cands[j][2]
            if size <= left:
                chosen.append(cands[j])
                yield from walk(j + 1, left - size)
                chosen.pop()

    yield from walk(0, n)


def enumerate_discrete(flavor: GroupFlavor, n: int | None, registry: Registry) -> Iterator[EnhancedParam]:
    """Every discrete bounded parameter of total size n with every relevant epsilon.

    Block sets come out in lexicographic order of the candidate list
    (rep id, then a); signs in the order of ``itertools.product((1, -1), ...)``.
    """
    if len(registry) == 0:
        raise EmptySupply("the rep supply is empty")
    n = flavor.std_size if n is None else n
    flavor = flavor.with_size(n)
    for subset in _subsets_with_sum(_candidate_blocks(flavor, n, registry), n):
        blocks = tuple(JordanBlock(r, a) for r, a, _ in subset)
        bare = EnhancedParam(flavor, blocks, {}, registry)
        keys = [b.key for b in blocks]
        for signs in product((1, -1), repeat=len(keys)):
            phi = bare.with_epsilon(dict(zip(keys, signs)))
            if is_relevant(phi):
                yield phi


# --------------------------------------------------------------------------
# tasks


def _classify(phi: EnhancedParam) -> dict:
    grp_plus = component_group(phi, plus=True)
    grp = component_group(phi, plus=False)
    row = {
        "discrete": True,
        "bounded": is_bounded(phi),
        "relevant": is_relevant(phi),
        "cuspidal": is_cuspidal(phi),
        "component_group_order": grp_plus.order,
        "index": grp.index,
    }
    if phi.flavor.det_condition:
        row["restriction_reducible"] = restriction_reducible(phi)
        row["extensions"] = len(epsilon_extensions(phi))
    return row


def _support_key(res) -> str:
    parts = []
    for tri in res.triples:
        shape = "".join("+" if e > 0 else "-" for e in tri.core_signs())
        parts.append(f"{tri.rep}:{tri.defect}{shape and '[' + shape + ']'}")
    return " ".join(parts) if parts else "empty"


def _row_label(row) -> str:
    lam = f"{row.lambda_alpha}"
    if row.lambda_beta is not None:
        lam += f",{row.lambda_beta},{row.lambda_star_beta}"
    return f"{row.row} {row.root_type}({row.tau}; {lam})"


@dataclass
class _Context:
    label: str
    ctx: HeckeContext


def _verify_context(item: _Context, seed: int) -> dict:
    ctx = item.ctx
    n = len(ctx.simple)
    checks = {
        "quadratic": all(check_quadratic(ctx, i) for i in range(n)),
        "braid": all(check_braid(ctx, i, j) for i in range(n) for j in range(i + 1, n)),
        "bernstein": all(check_bernstein_relation(ctx, i, x) for i in range(n) for x in lattice_box(ctx.rank, 2)),
    }
    if ctx.rank <= 2:
        checks["associativity"] = check_associativity(ctx, small_basis(ctx))
    checks["antihom"] = check_antihom(ctx, 100, seed)
    checks["involution"] = check_involution(ctx, 100, seed)
    return {"context": item.label, "rank": ctx.rank, "checks": checks, "ok": all(checks.values())}


def run_job(job: JobSpec) -> dict:
    """Run every requested task and return the results document."""
    tasks = set(job.tasks)
    doc: dict = {
        "job": {
            "flavor": job.flavor.name,
            "size": job.size,
            "tasks": [t for t in TASKS if t in tasks],
            "seed": job.seed,
            "max_rank": job.max_rank,
        }
    }
    needs_params = tasks & {"enumerate", "classify", "support", "hecke"}
    params: list[EnhancedParam] = []
    if needs_params:
        registry = load_supply(job.supply)
        doc["supply"] = registry.to_json()
        params = list(enumerate_discrete(job.flavor, job.size, registry))
    counts: dict = {}
    records: list[dict] = [{"param": p.to_json()} for p in params]
    if "enumerate" in tasks or "classify" in tasks:
        counts["discrete"] = len(params)
    if "classify" in tasks:
        for rec, phi in zip(records, params):
            rec["classify"] = _classify(phi)
        counts["cuspidal"] = sum(r["classify"]["cuspidal"] for r in records)
    supports = {}
    if "support" in tasks or "hecke" in tasks:
        for i, phi in enumerate(params):
            try:
                supports[i] = cuspidal_support(phi)
            except JordHeckeError as exc:
                raise type(exc)(f"support of {phi.text()}: {exc}") from exc
    if "support" in tasks:
        hist: Counter = Counter()
        for i, rec in enumerate(records):
            res = supports[i]
            rec["support"] = res.to_json()
            hist[_support_key(res)] += 1
        doc["support_histogram"] = dict(sorted(hist.items()))
    contexts: list[_Context] = []
    if "hecke" in tasks:
        rows_used: Counter = Counter()
        seen: dict[str, tuple[str, HeckeContext]] = {}
        for i, rec in enumerate(records):
            res = supports[i]
            pres = build_presentation(res.core, gl_factors_from_segments(res.gl_line), job.flavor)
            rec["hecke"] = pres.to_json()
            for row in pres.components:
                rows_used[f"{row.row} {row.root_type}"] += 1
            key = json.dumps(pres.to_json(), sort_keys=True)
            if key not in seen and pres.components:
                label = " x ".join(_row_label(r) for r in pres.components)
                seen[key] = (label, HeckeContext.from_presentation(pres))
        doc["hecke_rows"] = dict(sorted(rows_used.items()))
        for label, ctx in seen.values():
            if ctx.rank <= job.max_rank:
                contexts.append(_Context(label, ctx))
    if "verify" in tasks:
        if not contexts:
            contexts = [
                _Context(f"{row.row} {row.root_type}", ctx)
                for row, ctx in standard_contexts()
                if ctx.rank <= job.max_rank
            ]
        doc["verification"] = [_verify_context(c, job.seed) for c in contexts]
        counts["verified_contexts"] = len(contexts)
    if needs_params:
        doc["params"] = records
    doc["counts"] = counts
    return doc


def verification_ok(doc: dict) -> bool:
    return all(v["ok"] for v in doc.get("verification", []))


def summary_text(doc: dict) -> str:
    job = doc["job"]
    lines = [f"flavor {job['flavor']}  tasks {','.join(job['tasks'])}  seed {job['seed']}", ""]
    if doc["counts"]:
        lines.append("counts")
        for k, v in doc["counts"].items():
            lines.append(f"  {k:<20} {v}")
        lines.append("")
    if "support_histogram" in doc:
        lines.append("cuspidal supports (rep:defect[signs])")
        for k, v in doc["support_histogram"].items():
            lines.append(f"  {v:>6}  {k}")
        lines.append("")
    if "hecke_rows" in doc:
        lines.append("hecke rows used")
        for k, v in doc["hecke_rows"].items():
            lines.append(f"  {v:>6}  {k}")
        lines.append("")
    if "verification" in doc:
        lines.append("verification")
        for v in doc["verification"]:
            checks = "  ".join(f"{k}={'pass' if ok else 'FAIL'}" for k, ok in v["checks"].items())
            lines.append(f"  {v['context']}: {checks}")
        lines.append(f"  overall: {'pass' if verification_ok(doc) else 'FAIL'}")
        lines.append("")
    return "\n".join(lines)


def report(job: JobSpec) -> dict:
    doc = run_job(job)
    try:
        job.out.mkdir(parents=True, exist_ok=True)
        (job.out / "results.json").write_text(
            json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        (job.out / "summary.txt").write_text(summary_text(doc), encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write to {job.out}: {exc.strerror or exc}") from exc
    return doc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="jordhecke", description=__doc__.splitlines()[0])
    p.add_argument("--flavor", required=True, help="group flavor, e.g. SOodd, Sp, SOeven' or GSO-dual:8")
    p.add_argument("--size", type=int, help="size N of the standard representation of the dual group")
    p.add_argument("--supply", type=Path, help="JSON file listing the rep symbols")
    p.add_argument("--tasks", default="enumerate,classify", help=f"comma separated subset of {','.join(TASKS)}")
    p.add_argument("--out", type=Path, default=Path("jordhecke-out"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-rank", type=int, default=2, help="largest Hecke context rank that is verified")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        tasks = tuple(t.strip() for t in args.tasks.split(",") if t.strip())
        flavor = parse_flavor(args.flavor, args.size)
        if args.supply is None and set(tasks) - {"verify"}:
            raise InvalidParameter("--supply is required unless the only task is verify")
        job = JobSpec(flavor, args.supply or Path(), tasks, args.out, args.seed, args.max_rank)
        doc = report(job)
    except JordHeckeError as exc:
        print(f"jordhecke: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    print(summary_text(doc), end="")
    return 0 if verification_ok(doc) else 1


if __name__ == "__main__":
    sys.exit(main())
