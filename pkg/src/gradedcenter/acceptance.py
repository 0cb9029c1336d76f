"""Executable acceptance suite: nine independent criteria.

Each criterion is a pure function returning (ok, detail).  Detail
strings carry counts, never timings, so the check subcommand's output
stays byte-identical across runs.
"""

from __future__ import annotations

import io
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path

import numpy as np

from .center import (
    GeneratorSpec,
    check_membership,
    make_generator,
    membership_margin,
    multiply,
    solve_component,
    solver_margin,
)
from .gentle import (
    OmegaParams,
    build_lambda,
    clock_condition,
    format_quiver,
    is_gentle,
    is_one_cycle,
)
from .hom import hom_basis, hom_dim_closed_form
from .model import (
    KIND_TABLE,
    ModelParams,
    Vertex,
    arrow_of_degree,
    arrows_from,
    enumerate_vertices,
    kind_for_signature,
    region,
    sigma,
    sigma_inv,
    tau_sigma_periodic,
    vertex_exists,
)
from .ring import reconcile, reduced_and_nil, theorem_case

# the standard parameter grid shared by most criteria
GRID = [(r, n, m) for n in range(1, 5) for r in range(1, n + 1) for m in range(3)]


class _CriterionFailure(Exception):
    pass


def _params(r: int, n: int, m: int, window: int = 10) -> ModelParams:
    return ModelParams(OmegaParams(r, n, m), window)


# ---------------------------------------------------------------- criterion 1


def _c1_gentle_grid():
    count = 0
    for n in range(1, 6):
        for r in range(1, n + 1):
            for m in range(4):
                q = build_lambda(OmegaParams(r, n, m))
                ok, violations = is_gentle(q)
                if not ok:
                    return False, f"(r,n,m)=({r},{n},{m}) not gentle: {violations[0]}"
                if not is_one_cycle(q):
                    return False, f"(r,n,m)=({r},{n},{m}) not one-cycle"
                if clock_condition(q):
                    return False, f"(r,n,m)=({r},{n},{m}) satisfies the clock condition"
                if len(q.relations) != r:
                    return False, (
                        f"(r,n,m)=({r},{n},{m}) has {len(q.relations)} relations"
                    )
                count += 1
    return True, f"{count} parameter sets gentle, one-cycle, clock condition failing"


# ---------------------------------------------------------------- criterion 2
#
# Associativity is counted, not sampled.  For a composable kind triple
# (k1, k2, k3) with source index i, a windowed chain v -> x -> y -> w
# contributes to
#   A  when the left-nested composite is nonzero (the composite arrow
#      x -> w and the total arrow v -> w both exist),
#   B  when the right-nested composite is nonzero (v -> y and v -> w),
#   AB when both do.
# Composition of basis arrows either vanishes or is the unique arrow of
# the summed degree, so associativity over the window is exactly
# A == AB == B for every unit.  A and B reduce to products of three
# matrices over coordinate pairs; AB needs one contraction over w per
# distinct (total, right composite, k3) key.  float32 keeps every count
# below 2**24, hence exact.


def _box_coords(W: int):
    side = np.arange(-W, W + 1, dtype=np.int16)
    return np.repeat(side, side.size), np.tile(side, side.size)


def _exists_mask(params: ModelParams, family: str, i: int, ca, cb):
    if family == "X":
        return (ca - cb) <= (params.m if i == 0 else 0)
    if family == "Y":
        return (ca - cb) <= (-params.n if i == 0 else 0)
    return np.ones(ca.size, dtype=bool)


def _arrow_matrices(params: ModelParams, W: int):
    """Boolean matrix per (kind, source index): entry (s, t) says that
    box coordinate pair s -> t carries a generator arrow of the kind."""
    ca, cb = _box_coords(W)
    exists = {
        (family, i): _exists_mask(params, family, i, ca, cb)
        for family in params.families
        for i in range(params.r)
    }
    mats = {}
    for kind, (src_fam, tgt_fam, deg, step) in KIND_TABLE.items():
        if src_fam not in params.families or tgt_fam not in params.families:
            continue
        for i in range(params.r):
            j = (i + step) % params.r
            lo1 = np.full(ca.size, -999, dtype=np.int16)
            hi1 = np.full(ca.size, 999, dtype=np.int16)
            lo2 = np.full(ca.size, -999, dtype=np.int16)
            hi2 = np.full(ca.size, 999, dtype=np.int16)
            for s in range(ca.size):
                r0, r1, r2, r3 = region(
                    params, kind, Vertex(src_fam, i, int(ca[s]), int(cb[s]))
                )
                if r0 is not None:
                    lo1[s] = r0
                if r1 is not None:
                    hi1[s] = r1
                if r2 is not None:
                    lo2[s] = r2
                if r3 is not None:
                    hi2[s] = r3
            M = (
                exists[(src_fam, i)][:, None]
                & exists[(tgt_fam, j)][None, :]
                & (lo1[:, None] <= ca[None, :])
                & (ca[None, :] <= hi1[:, None])
                & (lo2[:, None] <= cb[None, :])
                & (cb[None, :] <= hi2[:, None])
            )
            if deg == 0:
                np.fill_diagonal(M, False)
            mats[(kind, i)] = M
    return mats


def _composable_triples(params: ModelParams):
    fams = params.families
    out = []
    for k1, (f1, g1, d1, _) in KIND_TABLE.items():
        if f1 not in fams or g1 not in fams:
            continue
        for k2, (f2, g2, d2, _) in KIND_TABLE.items():
            if f2 != g1 or g2 not in fams:
                continue
            for k3, (f3, g3, d3, _) in KIND_TABLE.items():
                if f3 != g2 or g3 not in fams:
                    continue
                if d1 + d2 + d3 <= 2:
                    out.append((k1, k2, k3))
    return out


def _resolve(params: ModelParams, fam_a: str, fam_b: str, deg: int, i_a: int, i_b: int):
    """Matrix key of the composite signature, or None when the signature
    or the index arithmetic rules the composite out."""
    sig = kind_for_signature(fam_a, fam_b, deg)
    if sig is None:
        return None
    kind, step = sig
    if (i_a + step) % params.r != i_b:
        return None
    return (kind, i_a)


def _assoc_counts(params: ModelParams, W: int):
    """(units, coupled units, violations) for all kind triples."""
    mats = _arrow_matrices(params, W)
    matsf = {k: M.astype(np.float32) for k, M in mats.items()}
    units = 0
    pending = []
    bad = []
    for k1, k2, k3 in _composable_triples(params):
        f1, f2, d1, s1 = KIND_TABLE[k1]
        _, f3, d2, s2 = KIND_TABLE[k2]
        _, f4, d3, s3 = KIND_TABLE[k3]
        for i1 in range(params.r):
            i2 = (i1 + s1) % params.r
            i3 = (i2 + s2) % params.r
            i4 = (i3 + s3) % params.r
            units += 1
            label = f"{k1}*{k2}*{k3} at i={i1}"
            total = _resolve(params, f1, f4, d1 + d2 + d3, i1, i4)
            if total is None:
                continue  # both nestings vanish identically
            q12 = _resolve(params, f1, f3, d1 + d2, i1, i3)
            q23 = _resolve(params, f2, f4, d2 + d3, i2, i4)
            M1, M2, M3 = matsf[(k1, i1)], matsf[(k2, i2)], matsf[(k3, i3)]
            G = matsf[total]
            A = B = 0
            if q23 is not None:
                A = int(((M1.T @ G) * matsf[q23] * (M2 @ M3)).sum(dtype=np.float64))
            if q12 is not None:
                B = int(((M1 @ M2) * matsf[q12] * (G @ M3.T)).sum(dtype=np.float64))
            if A == 0 and B == 0:
                continue
            if q12 is None or q23 is None:
                # one nesting is identically zero, the other is not
                bad.append(f"{label}: A={A} AB=0 B={B}")
                continue
            key = (total, q23, (k3, i3))
            pending.append((key, label, (k1, i1), (k2, i2), q12, A, B))
    # one w-contraction per distinct key; sorting groups the reuses
    pending.sort(key=lambda item: item[0])
    rt_key = None
    rt = None
    for key, label, m1key, m2key, q12, A, B in pending:
        if key != rt_key:
            G, Q, M = (matsf[k] for k in key)
            rt = (G[:, None, :] * Q[None, :, :]).reshape(-1, G.shape[0]) @ M.T
            rt = rt.reshape(G.shape[0], G.shape[0], G.shape[0])
            rt_key = key
        lt = mats[m1key][:, :, None] & mats[m2key][None, :, :] & mats[q12][:, None, :]
        AB = int((rt * lt).sum(dtype=np.float64))
        if not A == AB == B:
            bad.append(f"{label}: A={A} AB={AB} B={B}")
    return units, len(pending), bad


def _sigma_functorial(params: ModelParams, W: int):
    """Sigma and its inverse must carry windowed arrows to arrows."""
    boxed = ModelParams(params.omega, W)
    arrows = 0
    for v in enumerate_vertices(boxed):
        for g in arrows_from(params, v, W):
            arrows += 1
            for move in (sigma, sigma_inv):
                u, w = move(params, g.source), move(params, g.target)
                for vert in (u, w):
                    if not vertex_exists(params, vert.family, vert.i, vert.coord):
                        return arrows, f"{move.__name__} image vertex {vert!r} missing"
                if arrow_of_degree(params, u, w, g.degree) is None:
                    return arrows, f"{move.__name__} image of {g!r} is not an arrow"
    return arrows, None


def _c2_model_consistency():
    total_units = total_coupled = total_arrows = 0
    for r, n, m in GRID:
        params = _params(r, n, m, 5)
        units, coupled, bad = _assoc_counts(params, 5)
        total_units += units
        total_coupled += coupled
        if bad:
            return False, f"(r,n,m)=({r},{n},{m}) {bad[0]}"
        arrows, err = _sigma_functorial(params, 5)
        total_arrows += arrows
        if err:
            return False, f"(r,n,m)=({r},{n},{m}): {err}"
    return True, (
        f"{total_units} kind-triple units associative"
        f" ({total_coupled} coupled), {total_arrows} arrows Sigma-stable"
    )


# ---------------------------------------------------------------- criterion 3


def _c3_hom_oracle():
    checked = 0
    for r, n, m in GRID:
        params = _params(r, n, m, 6)
        for v in enumerate_vertices(params):
            for p in range(2 * n + 3):
                model_dim = hom_basis(params, v, p).dim
                formula = hom_dim_closed_form(params, v, p)
                checked += 1
                if model_dim != formula:
                    return False, (
                        f"(r,n,m)=({r},{n},{m}) {v!r} p={p}:"
                        f" model {model_dim}, closed form {formula}"
                    )
    return True, f"{checked} (vertex, degree) dimensions agree with the closed forms"


# ---------------------------------------------------------------- criterion 4


def _c4_membership():
    W = 12
    checks = 0
    required_failures = 0
    gens: dict = {}

    def run(rnm, spec, variant, char, expected):
        nonlocal checks, required_failures
        key = (rnm, spec.name, spec.q)
        if key not in gens:
            pr = _params(*rnm, window=W)
            gens[key] = (pr, make_generator(pr, spec, W))
        pr, el = gens[key]
        ok, why = check_membership(
            pr, el, W, W - membership_margin(pr), char=char, variant=variant
        )
        checks += 1
        if ok != expected:
            raise _CriterionFailure(
                f"(r,n,m)={rnm} {spec.name} q={spec.q} {variant} over F{char}:"
                f" got {ok} ({why}), expected {expected}"
            )
        required_failures += not expected

    try:
        for n in (2, 3, 4):
            for m in (0, 1, 2):
                rnm = (n - 1, n, m)
                for q in range(4):
                    for char in (2, 3):
                        # the two sign laws agree unless the degree is odd
                        agree = n % 2 == 0 or char == 2
                        run(rnm, GeneratorSpec("eta_prime", q), "graded", char, True)
                        run(rnm, GeneratorSpec("eta_prime", q), "commutative", char, agree)
                        run(rnm, GeneratorSpec("eta_dprime", q), "commutative", char, True)
                        run(rnm, GeneratorSpec("eta_dprime", q), "graded", char, agree)
        for n in (1, 2, 3, 4):
            for q in range(4):
                for char in (2, 3):
                    for variant in ("graded", "commutative"):
                        run((1, n, 0), GeneratorSpec("eta_zero", q), variant, char, True)
        for n in (1, 2, 3, 4):
            for m in (0, 1, 2):
                for k in range(1, 4):
                    for char in (2, 3):
                        agree = (k * n) % 2 == 0 or char == 2
                        run((n, n, m), GeneratorSpec("eta_power", k), "commutative", char, True)
                        run((n, n, m), GeneratorSpec("eta_power", k), "graded", char, agree)
    except _CriterionFailure as e:
        return False, str(e)
    return True, (
        f"{checks} membership checks match the predictions,"
        f" including {required_failures} required sign-law failures"
    )


# ---------------------------------------------------------------- criterion 5


def _c5_reconcile():
    parallel = (os.cpu_count() or 1) > 1
    rows = 0
    for r, n, m in GRID:
        W = solver_margin(_params(r, n, m)) + n + m + 4
        params = _params(r, n, m, W)
        for variant in ("graded", "commutative"):
            for char in (2, 3):
                rep = reconcile(params, char, variant, 2 * n, W, parallel=parallel)
                rows += 1
                if not rep.ok:
                    return False, (
                        f"(r,n,m)=({r},{n},{m}) {variant} over F{char}: "
                        + rep.mismatches[0]
                    )
    return True, f"{rows} reconciliations match the classification tables"


# ---------------------------------------------------------------- criterion 6


def _c6_stabilization():
    compared = 0
    for r, n, m in ((1, 2, 0), (2, 3, 0), (2, 2, 0)):
        inner = n + m + 4
        W = solver_margin(_params(r, n, m)) + inner
        for p in range(2 * n + 1):
            small = solve_component(_params(r, n, m, W), p, "graded", 3, W, inner)
            large = solve_component(
                _params(r, n, m, W + 2), p, "graded", 3, W + 2, inner
            )
            compared += 1
            got = (small.scalar_dim, small.power_dim, small.class_dims)
            want = (large.scalar_dim, large.power_dim, large.class_dims)
            if got != want:
                return False, (
                    f"(r,n,m)=({r},{n},{m}) p={p}: {got} became {want}"
                    " after widening the outer window"
                )
    return True, f"{compared} solves unchanged when the outer window grows by 2"


# ---------------------------------------------------------------- criterion 7


def _c7_products():
    checks = 0

    def assert_zero(params, a, b, label):
        nonlocal checks
        checks += 1
        if not multiply(params, a, b).is_zero(None):
            raise _CriterionFailure(f"{label} is nonzero")

    try:
        W = 12
        pr = _params(1, 2, 0, W)
        e_p = {q: make_generator(pr, GeneratorSpec("eta_prime", q), W) for q in range(3)}
        e_dp = {q: make_generator(pr, GeneratorSpec("eta_dprime", q), W) for q in range(3)}
        e_z = {q: make_generator(pr, GeneratorSpec("eta_zero", q), W) for q in range(3)}
        for q1 in range(3):
            for q2 in range(3):
                assert_zero(pr, e_p[q1], e_p[q2], f"eta'({q1}).eta'({q2})")
                assert_zero(pr, e_dp[q1], e_dp[q2], f"eta''({q1}).eta''({q2})")
                assert_zero(pr, e_z[q1], e_z[q2], f"eta0({q1}).eta0({q2})")
                assert_zero(pr, e_z[q1], e_p[q2], f"eta0({q1}).eta'({q2})")
                assert_zero(pr, e_p[q1], e_z[q2], f"eta'({q1}).eta0({q2})")
                assert_zero(pr, e_z[q1], e_dp[q2], f"eta0({q1}).eta''({q2})")
                assert_zero(pr, e_dp[q1], e_z[q2], f"eta''({q1}).eta0({q2})")
        pr = _params(1, 1, 0, W)
        eta1 = make_generator(pr, GeneratorSpec("eta_power", 1), W)
        for q in range(3):
            ez = make_generator(pr, GeneratorSpec("eta_zero", q), W)
            assert_zero(pr, eta1, ez, f"eta.eta0({q})")
            assert_zero(pr, ez, eta1, f"eta0({q}).eta")
        # nonvanishing powers when every vertex family is X
        for r, n, m in ((1, 1, 0), (2, 2, 1), (3, 3, 0)):
            Wp = 4 * (n + m) + 10
            prm = _params(r, n, m, Wp)
            eta = make_generator(prm, GeneratorSpec("eta_power", 1), Wp)
            power = eta
            for k in range(2, 5):
                power = multiply(prm, power, eta)
                checks += 1
                if power.is_zero(None):
                    raise _CriterionFailure(f"eta^{k} vanishes for (r,n,m)=({r},{n},{m})")
                direct = make_generator(prm, GeneratorSpec("eta_power", k), Wp)
                inner = Wp - k * (n + m) - 1
                for v in direct.assignment:
                    if abs(v.a) <= inner and abs(v.b) <= inner:
                        checks += 1
                        diff = power.value_at(prm, v).plus(
                            direct.value_at(prm, v).scaled(-1)
                        )
                        if not diff.is_zero(None):
                            raise _CriterionFailure(
                                f"eta^{k} disagrees with the direct element at {v!r}"
                            )
    except _CriterionFailure as e:
        return False, str(e)
    return True, f"{checks} product identities hold"


# ---------------------------------------------------------------- criterion 8


def _c8_periodicity():
    rows = 0
    for r, n, m in GRID:
        params = _params(r, n, m)
        periodic, witnesses = tau_sigma_periodic(params)
        if r == n:
            expected = (n, m) == (1, 0)
        else:
            expected = r == n - 1 or (r == 1 and m == 0)
        if periodic != expected:
            return False, (
                f"(r,n,m)=({r},{n},{m}): periodic={periodic},"
                f" closed form says {expected}"
            )
        for family, p in witnesses:
            if p % r != 0:
                return False, (
                    f"(r,n,m)=({r},{n},{m}): witness {family} p={p}"
                    " is not a multiple of r"
                )
        for char in (2, 3):
            for variant in ("graded", "commutative"):
                red, nil = reduced_and_nil(theorem_case(OmegaParams(r, n, m), char, variant))
                rows += 1
                if (nil != "0") != periodic:
                    return False, (
                        f"(r,n,m)=({r},{n},{m}) {variant} over F{char}:"
                        f" nil part {nil} vs periodicity {periodic}"
                    )
                if (red != "F") != (r == n):
                    return False, (
                        f"(r,n,m)=({r},{n},{m}) {variant} over F{char}:"
                        f" reduced part {red} vs r == n"
                    )
    return True, f"{rows} table rows match the periodicity closed forms"


# ---------------------------------------------------------------- criterion 9


def _run_cli(argv):
    from .cli import main

    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def _c9_determinism():
    with tempfile.TemporaryDirectory() as td:
        qpath = str(Path(td) / "lambda.quiver")
        Path(qpath).write_text(format_quiver(build_lambda(OmegaParams(1, 2, 0))))
        invocations = [
            ["validate", qpath],
            ["lambda", "--r", "2", "--n", "3", "--m", "1"],
            ["hom", "--r", "1", "--n", "2", "--m", "0", "--family", "Y",
             "--i", "0", "--a", "0", "--b", "2", "--p", "1", "--window", "8"],
            ["center", "--r", "1", "--n", "2", "--m", "0", "--p", "2",
             "--variant", "graded", "--field", "3", "--window", "10"],
            ["ring", "--r", "1", "--n", "1", "--m", "0", "--char", "2"],
            ["ar", "--r", "2", "--n", "3", "--m", "0", "--window", "1"],
            ["check", "--criterion", "1"],
        ]
        for argv in invocations:
            first = _run_cli(argv)
            second = _run_cli(argv)
            if first != second:
                return False, f"nondeterministic output for: {' '.join(argv)}"
            if first[0] != 0:
                return False, f"exit code {first[0]} for: {' '.join(argv)}"
    return True, f"{len(invocations)} subcommands byte-identical across repeated runs"


CRITERIA = [
    ("criterion 1 (gentle grid)", _c1_gentle_grid),
    ("criterion 2 (model consistency)", _c2_model_consistency),
    ("criterion 3 (hom oracle)", _c3_hom_oracle),
    ("criterion 4 (generator membership)", _c4_membership),
    ("criterion 5 (solver vs tables)", _c5_reconcile),
    ("criterion 6 (window stabilization)", _c6_stabilization),
    ("criterion 7 (products)", _c7_products),
    ("criterion 8 (tau-Sigma periodicity)", _c8_periodicity),
    ("criterion 9 (cli determinism)", _c9_determinism),
]


def run_criterion(k: int):
    """Run the k-th criterion (1-based) and return (name, ok, detail)."""
    name, fn = CRITERIA[k - 1]
    ok, detail = fn()
    return name, ok, detail


def iter_criteria():
    for k in range(1, len(CRITERIA) + 1):
        yield run_criterion(k)


def run_all():
    return list(iter_criteria())
