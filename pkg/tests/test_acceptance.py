"""The ten acceptance criteria, one test each.

Run under pytest (a PASS/FAIL line per criterion is printed in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import itertools
import json
import time


from jordhecke.cli import enumerate_discrete, main
from jordhecke.errors import InconsistentPartnerData
from jordhecke.hecke import (
    check_antihom,
    check_associativity,
    check_bernstein_relation,
    check_braid,
    check_involution,
    check_quadratic,
    check_translation_twist,
    HeckeContext,
    lattice_box,
    small_basis,
    standard_contexts,
)
from jordhecke.params import (
    EnhancedParam,
    JordanBlock,
    component_group,
    epsilon_extensions,
    is_cuspidal,
    restriction_reducible,
)
from jordhecke.repdata import Family, GroupFlavor, Registry, RepSymbol, SelfDualClass, parse_flavor
from jordhecke.rootdata import (
    BernsteinEntry,
    PartnerClass,
    RootKind,
    _class_of_a,
    affine_row,
    galois_side_type,
    is_normalized,
    m_alpha,
    rep_side_row,
)
from jordhecke.support import (
    cuspidal_support,
    defect_orthogonal,
    defect_symplectic,
    remove_adjacent_pair,
    removable_pairs,
)

PLUS, MINUS = SelfDualClass.PLUS, SelfDualClass.MINUS


def _registry() -> Registry:
    return Registry([RepSymbol("p", 1, selfdual=PLUS), RepSymbol("m", 1, selfdual=MINUS)])


def _params_from_pools(reg: Registry, flavor: GroupFlavor, pools: dict[str, list[int]], max_blocks: int):
    """Every discrete (phi, eps) whose blocks per rep are drawn from the pools."""
    per_rep = []
    for rep, pool in sorted(pools.items()):
        options = []
        for k in range(max_blocks + 1):
            for sizes in itertools.combinations(pool, k):
                for signs in itertools.product((1, -1), repeat=k):
                    options.append([(rep, a, s) for a, s in zip(sizes, signs)])
        per_rep.append(options)
    for combo in itertools.product(*per_rep):
        flat = [b for part in combo for b in part]
        blocks = tuple(JordanBlock(r, a) for r, a, _ in flat)
        eps = {(r, a): s for r, a, s in flat}
        size = sum(a for _, a, _ in flat)
        yield EnhancedParam(flavor.with_size(size), blocks, eps, reg)


# ---------------------------------------------------------------------------
# 1


def test_criterion_01_defect_matches_recursion():
    reg = _registry()
    flavor = GroupFlavor(Family.U_RAMIFIED, 0)
    pools = {"p": [1, 3, 5, 7, 9], "m": [2, 4, 6, 8]}
    start = time.perf_counter()
    count = 0
    for phi in _params_from_pools(reg, flavor, pools, 5):
        res = cuspidal_support(phi)
        got = {t.rep: t for t in res.triples}
        for rep in phi.reps():
            sizes = phi.jord_of(rep)
            eps = {a: phi.epsilon[(rep, a)] for a in sizes}
            tri = got[rep]
            if rep == "m":
                assert defect_symplectic(sizes, eps) == tri.defect, phi.text()
            else:
                d, sign = defect_orthogonal(sizes, eps)
                assert (d, sign) == (tri.defect, tri.sign), phi.text()
        count += 1
    elapsed = time.perf_counter() - start
    assert count >= 10_000
    assert elapsed < 10, f"{count} cases took {elapsed:.1f}s"


# ---------------------------------------------------------------------------
# 2


def _supply() -> Registry:
    return Registry([
        RepSymbol("p", 1, selfdual=PLUS),
        RepSymbol("q", 1, selfdual=PLUS),
        RepSymbol("m", 1, selfdual=MINUS),
        RepSymbol("w", 2, selfdual=MINUS),
    ])


FLAVORS_BY_PARITY = {
    0: ["SOodd", "SOeven", "SOeven'", "SOevenQS", "GSO-dual", "SpOdd-dualGSp", "URamified"],
    1: ["Sp", "Sp'", "URamified"],
}


def _all_discrete(max_size: int):
    reg = _supply()
    for n in range(max_size + 1):
        for name in FLAVORS_BY_PARITY[n % 2]:
            yield from enumerate_discrete(parse_flavor(name, n), n, reg)


def test_criterion_02_cuspidal_fixed_point():
    start = time.perf_counter()
    seen = 0
    for phi in _all_discrete(12):
        if not is_cuspidal(phi):
            continue
        res = cuspidal_support(phi)
        assert res.core == phi and res.gl_line == (), phi.text()
        seen += 1
    elapsed = time.perf_counter() - start
    assert seen > 0
    assert elapsed < 5, f"{elapsed:.1f}s"


# ---------------------------------------------------------------------------
# 3


def _all_removal_outcomes(phi: EnhancedParam) -> set:
    outcomes = set()

    def walk(cur: EnhancedParam, gl: tuple) -> None:
        pairs = removable_pairs(cur)
        if not pairs:
            outcomes.add((cur.text(), tuple(sorted(gl))))
            return
        for rep, a, a2 in pairs:
            nxt, seg = remove_adjacent_pair(cur, rep, a, a2)
            walk(nxt, gl + (seg,))

    walk(phi, ())
    return outcomes


def test_criterion_03_removal_order_independence():
    reg = _registry()
    flavor = GroupFlavor(Family.U_RAMIFIED, 0)
    pools = {"p": [1, 3, 5, 7], "m": [2, 4, 6, 8]}
    failures = []
    checked = 0
    for phi in _params_from_pools(reg, flavor, pools, 4):
        if len(removable_pairs(phi)) > 4:
            continue
        outcomes = _all_removal_outcomes(phi)
        checked += 1
        if len(outcomes) != 1:
            failures.append((phi.text(), sorted(o[0] for o in outcomes)))
    assert checked > 0
    assert not failures, f"{len(failures)} of {checked} inputs depend on the order, e.g. {failures[0]}"


# ---------------------------------------------------------------------------
# 4


def test_criterion_04_component_group_laws():
    checked = 0
    for phi in _all_discrete(12):
        plus = component_group(phi, plus=True)
        grp = component_group(phi, plus=False)
        assert plus.order == 2 ** len(phi.jord())
        odd_block = any(phi.rep(r).dim * a % 2 for r, a in phi.jord())
        expect_index = 2 if (odd_block and phi.flavor.s_condition) else 1
        assert grp.index == expect_index, phi.text()
        assert plus.order // grp.order == grp.index
        assert len(epsilon_extensions(phi)) == grp.index
        if phi.flavor.det_condition:
            assert restriction_reducible(phi) == (grp.index == 1), phi.text()
        checked += 1
    assert checked > 1000


# ---------------------------------------------------------------------------
# 5

SPLIT = GroupFlavor(Family.SO_ODD, 2)
UNITARY = GroupFlavor(Family.U_UNRAMIFIED, 2)


def _entry(a, a2, t=2, e=3, ell=None, ell2=None):
    ell = (1 if a >= 1 else 0) if ell is None else ell
    ell2 = (1 if a2 >= 1 else 0) if ell2 is None else ell2
    cls = PartnerClass.of(_class_of_a(a), _class_of_a(a2))
    return BernsteinEntry("tau", e, ell, ell2, a, a2, t, cls, "tau'")


def _zero(t=2, e=3):
    return BernsteinEntry("sigma", e, t=t, cls=PartnerClass.ZERO)


TABLE_ROWS = [
    # (entry, flavor, row, type, lambda(alpha), lambda(beta), lambda*(beta), Gamma+ = Out(D))
    (_entry(-1, -1), SPLIT, "D-empty", "D3", 2, None, None, True),
    (_entry(0, -1), SPLIT, "B-half", "B3", 2, 1, 1, False),
    (_entry(0, 0), SPLIT, "C-even", "C3", 2, 2, 2, False),
    (_entry(3, -1), SPLIT, "B-one-sided", "B3", 2, 4, 4, False),
    (_entry(3, 1), SPLIT, "B-two-sided", "B3", 2, 6, 2, False),
    (_entry(3, 1, t=1), SPLIT, "B-two-sided", "B3", 1, 3, 1, False),
    (_zero(), SPLIT, "A-free", "A2", 2, None, None, False),
    (_entry(0, -1), UNITARY, "unitary-B-half", "B3", 4, 2, 2, False),
    (_entry(3, 1), UNITARY, "unitary-B", "B3", 4, 12, 4, False),
    (_entry(1, -1, t=1), UNITARY, "unitary-B", "B3", 2, 2, 2, False),
    (_zero(), UNITARY, "unitary-A-free", "A2", 4, None, None, False),
]


def test_criterion_05_table_conformance():
    for entry, flavor, row_id, rtype, lam_a, lam_b, lam_s, out in TABLE_ROWS:
        row = affine_row(entry, flavor)
        got = (row.row, str(row.root_type), row.lambda_alpha, row.lambda_beta, row.lambda_star_beta, row.gamma_out)
        want = (row_id, rtype, lam_a, lam_b, lam_s, out)
        assert got == want, (entry, got)
    pp = _entry(3, 1, t=3)
    assert m_alpha(pp, RootKind.LONG, SPLIT) == 3
    assert m_alpha(pp, RootKind.SHORT, SPLIT) == 3
    pm = _entry(0, -1, t=4)
    assert m_alpha(pm, RootKind.LONG_C, SPLIT) == 2
    assert m_alpha(pm, RootKind.LONG, SPLIT) == 4
    mm = _entry(0, 0, t=4)
    assert m_alpha(mm, RootKind.LONG_C, SPLIT) == 4
    assert m_alpha(_zero(t=1), RootKind.LONG, UNITARY) == 2
    assert m_alpha(_entry(0, -1, t=3), RootKind.LONG_C, UNITARY) == 3
    assert m_alpha(_entry(0, -1, t=3), RootKind.LONG, UNITARY) == 6
    assert m_alpha(_entry(3, -1, t=3), RootKind.SHORT, UNITARY) == 6


# ---------------------------------------------------------------------------
# 6


def _normalized_entries():
    for e, ell, ell2, a, a2 in itertools.product(range(1, 5), range(4), range(4), range(-1, 8), range(-1, 8)):
        cls = PartnerClass.of(_class_of_a(a), _class_of_a(a2))
        try:
            entry = BernsteinEntry("tau", e, ell, ell2, a, a2, 2, cls, "tau'")
        except InconsistentPartnerData:
            continue
        if is_normalized(entry):
            yield entry
    for e in range(1, 5):
        yield BernsteinEntry("sigma", e, t=2, cls=PartnerClass.ZERO)


def test_criterion_06_two_path_agreement():
    checked = 0
    mismatches = []
    for entry in _normalized_entries():
        galois = galois_side_type(entry)
        rep = rep_side_row(entry).root_type
        if galois != rep:
            mismatches.append((entry, galois, rep))
        checked += 1
    assert checked > 100
    assert not mismatches, mismatches[:3]


# ---------------------------------------------------------------------------
# 7


def test_criterion_07_hecke_relations():
    start = time.perf_counter()
    contexts = standard_contexts(max_e=2)
    assert any(row.row.startswith("unitary") for row, _ in contexts)
    for row, ctx in contexts:
        n = len(ctx.simple)
        label = f"{row.row} {row.root_type}"
        assert all(check_quadratic(ctx, i) for i in range(n)), label
        assert all(check_braid(ctx, i, j) for i in range(n) for j in range(i + 1, n)), label
        for i in range(n):
            for x in lattice_box(ctx.rank, 2):
                assert check_bernstein_relation(ctx, i, x), (label, i, x)
        assert check_associativity(ctx, small_basis(ctx, norm=1)), label
        assert check_antihom(ctx, 100, seed=7), label
    elapsed = time.perf_counter() - start
    assert elapsed < 60, f"{elapsed:.1f}s"


# ---------------------------------------------------------------------------
# 8


def test_criterion_08_opposite_involution():
    for row, ctx in standard_contexts(max_e=2):
        assert check_involution(ctx, 1000, seed=11), f"{row.row} {row.root_type}"


# ---------------------------------------------------------------------------
# 9


def _beta_context(entry, flavor):
    ctx = HeckeContext.from_row(affine_row(entry, flavor))
    return ctx, len(ctx.simple) - 1


def test_criterion_09_gated_automorphism():
    equal = [
        (_entry(0, -1, e=e), SPLIT) for e in (1, 2)
    ] + [
        (_entry(3, -1, e=e), SPLIT) for e in (1, 2)
    ] + [
        (_entry(1, -1, t=1, e=e), UNITARY) for e in (1, 2)
    ]
    for entry, flavor in equal:
        ctx, i = _beta_context(entry, flavor)
        assert ctx.simple[i].lam == ctx.simple[i].lam_star
        report = check_translation_twist(ctx, i)
        assert report.ok, (entry, report)
    for e in (1, 2):
        ctx, i = _beta_context(_entry(3, 1, e=e), SPLIT)
        assert ctx.simple[i].lam != ctx.simple[i].lam_star
        assert not check_translation_twist(ctx, i).quadratic


# ---------------------------------------------------------------------------
# 10


def test_criterion_10_cli_determinism(tmp_path):
    supply = tmp_path / "reps.json"
    supply.write_text(json.dumps(_supply().to_json()), encoding="utf-8")
    outs = []
    for k in range(2):
        out = tmp_path / f"run{k}"
        code = main([
            "--flavor", "SOeven", "--size", "8", "--supply", str(supply),
            "--tasks", "enumerate,classify,support,hecke,verify", "--out", str(out),
            "--seed", "5", "--max-rank", "1",
        ])
        assert code == 0
        outs.append(out)
    for name in ("results.json", "summary.txt"):
        assert (outs[0] / name).read_bytes() == (outs[1] / name).read_bytes(), name


if __name__ == "__main__":
    import sys
    import tempfile
    from pathlib import Path

    tests = sorted((k, v) for k, v in globals().items() if k.startswith("test_criterion_"))
    failed = 0
    for name, fn in tests:
        start = time.perf_counter()
        try:
            if "tmp_path" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
            verdict, detail = "PASS", ""
        except AssertionError as exc:
            verdict, detail = "FAIL", str(exc)[:200]
            failed += 1
        print(f"{name[len('test_criterion_'):]:<40} {verdict}  {time.perf_counter() - start:6.1f}s  {detail}")
    sys.exit(1 if failed else 0)
