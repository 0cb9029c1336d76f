"""Symbolic presentations of the center components, the case tables of
the two classification theorems, and reconciliation of those tables
against the windowed solver.

A presentation is either a base ring alone (F, or F[X^k] with the
generator in degree k) or a trivial extension of the base by shifted
copies of F^N, the countable product of one socle class per gap q >= 0.
The socle squares to zero, so the reduced part is the base and the
nilpotent part is the socle.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass, field as dc_field

from .center import SolveReport, solve_component, solver_margin
from .gf import FieldScalar
from .gentle import OmegaParams
from .model import ModelParams


@dataclass(frozen=True)
class RingPresentation:
    """base: "F" or ("Poly", k); socle: tuple of (shift, truncation) with
    truncation None meaning the symbolic, untruncated F^N."""

    base: object
    socle: tuple = ()

    def __post_init__(self):
        if self.base != "F":
            if not (isinstance(self.base, tuple) and len(self.base) == 2 and self.base[0] == "Poly"):
                raise ValueError(f"bad base {self.base!r}")
            if self.base[1] < 1:
                raise ValueError("polynomial generator degree must be >= 1")
        for item in self.socle:
            shift, trunc = item
            if shift < 0:
                raise ValueError("socle shifts must be >= 0 (positivity)")
            if trunc is not None and trunc < 0:
                raise ValueError("socle truncation must be >= 0 or None")

    def base_str(self) -> str:
        if self.base == "F":
            return "F"
        k = self.base[1]
        return "F[X]" if k == 1 else f"F[X^{k}]"

    def socle_str(self) -> str:
        items = []
        for shift, _trunc in self.socle:
            items.append("F^N" if shift == 0 else f"F^N[-{shift}]")
        return " + ".join(items)

    def serialize(self) -> str:
        if not self.socle:
            return self.base_str()
        return f"T({self.base_str()}, {self.socle_str()})"


def theorem_case(params, field_char: int, variant: str = "graded") -> RingPresentation:
    """The classification-table row for these parameters.  The rows are
    checked in printed order, so earlier special cases shadow the later
    general ones."""
    FieldScalar(0, field_char)
    if variant not in ("graded", "commutative"):
        raise ValueError(f"unknown variant {variant!r}")
    r, n, m = params.r, params.n, params.m
    if variant == "commutative":
        if (r, n, m) == (1, 1, 0):
            return RingPresentation(("Poly", 1), ((0, None),))
        if r == n and (r, m) != (1, 0):
            return RingPresentation(("Poly", n))
        if (r, n, m) == (1, 2, 0):
            return RingPresentation("F", ((0, None), (n, None)))
        if (r, m) != (1, 0) and r == n - 1:
            return RingPresentation("F", ((n, None),))
        if (r, m) == (1, 0) and r not in (n - 1, n):
            return RingPresentation("F", ((0, None),))
        return RingPresentation("F")
    if (r, n, m) == (1, 1, 0) and field_char == 2:
        return RingPresentation(("Poly", 1), ((0, None),))
    if (r, n, m) == (1, 1, 0):
        return RingPresentation(("Poly", 2), ((0, None),))
    if r == n and (r, m) != (1, 0) and (n * field_char) % 2 == 0:
        return RingPresentation(("Poly", n))
    if r == n and (r, m) != (1, 0):
        return RingPresentation(("Poly", 2 * n))
    if (r, n, m) == (1, 2, 0):
        return RingPresentation("F", ((0, None), (n, None)))
    if (r, m) != (1, 0) and r == n - 1:
        return RingPresentation("F", ((n, None),))
    if (r, m) == (1, 0) and r not in (n - 1, n):
        return RingPresentation("F", ((0, None),))
    return RingPresentation("F")


def reduced_and_nil(pres: RingPresentation) -> tuple[str, str]:
    return (pres.base_str(), pres.socle_str() if pres.socle else "0")


@dataclass
class ReconcileReport:
    params: ModelParams
    field: int
    variant: str
    degree_bound: int
    window: int
    presentation: RingPresentation
    ok: bool = True
    lines: list = dc_field(default_factory=list)
    mismatches: list = dc_field(default_factory=list)


def _expected_power(pres: RingPresentation, p: int) -> int:
    if p <= 0 or pres.base == "F":
        return 0
    return 1 if p % pres.base[1] == 0 else 0


def _solve_slim(task) -> SolveReport:
    """Top-level so reconcile can fan solves out to worker processes."""
    r, n, m, p, variant, field, window, inner = task
    params = ModelParams(OmegaParams(r, n, m), window)
    rep = solve_component(params, p, variant, field, window, inner)
    rep.basis.clear()
    return rep


def reconcile(
    params: ModelParams,
    field: int,
    variant: str,
    degree_bound: int,
    window: int,
    parallel: bool = True,
) -> ReconcileReport:
    """Compare solver output for every degree p <= degree_bound against
    the classification table: the base contributes the scalar in degree
    0 and one power class in each positive degree divisible by its
    generator degree; each socle item contributes one dimension per
    fully visible class at its shift (partially visible classes may
    fall outside the inner window and report 0)."""
    if degree_bound < 0:
        raise ValueError("degree bound must be >= 0")
    inner = window - solver_margin(params)
    if inner < 1:
        raise ValueError(
            f"window {window} too small: margin alone is {solver_margin(params)}"
        )
    pres = theorem_case(params, field, variant)
    report = ReconcileReport(params, field, variant, degree_bound, window, pres)
    r, n, m = params.r, params.n, params.m
    tasks = [
        (r, n, m, p, variant, field, window, inner) for p in range(degree_bound + 1)
    ]
    if parallel and len(tasks) > 1:
        with multiprocessing.Pool() as pool:
            reps = pool.map(_solve_slim, tasks)
    else:
        reps = [_solve_slim(t) for t in tasks]

    shift_family = {0: "X", n: "Y"}
    for p, rep in zip(range(degree_bound + 1), reps):
        problems = []
        exp_scalar = 1 if p == 0 else 0
        if rep.scalar_dim != exp_scalar:
            problems.append(f"scalar {rep.scalar_dim} != {exp_scalar}")
        exp_power = _expected_power(pres, p)
        if rep.power_dim != exp_power:
            problems.append(f"power {rep.power_dim} != {exp_power}")
        expected_families = {
            shift_family[s] for s, _q in pres.socle if s == p and s in shift_family
        }
        for (fam, q), dim in sorted(rep.class_dims.items()):
            if fam not in expected_families:
                problems.append(f"unexpected class {fam} q={q} (dim {dim})")
            elif dim > 1:
                problems.append(f"class {fam} q={q} has dim {dim} > 1")
        for (fam, q), vis in sorted(rep.visibility.items()):
            if fam not in expected_families:
                continue
            dim = rep.class_dims.get((fam, q), 0)
            if vis == "full" and dim != 1:
                problems.append(f"missing class {fam} q={q} (dim {dim}, fully visible)")
        if rep.residual:
            problems.append(f"{len(rep.residual)} residual component(s)")
        n_classes = sum(rep.class_dims.values())
        if problems:
            detail = "; ".join(problems)
            report.ok = False
            report.mismatches.append(f"p={p}: {detail}")
            report.lines.append(f"p={p}: MISMATCH ({detail})")
        else:
            report.lines.append(
                f"p={p}: ok (scalar {rep.scalar_dim}, power {rep.power_dim},"
                f" {n_classes} socle classes)"
            )
    return report
