# app/bergman/diagnostics.py
"""Compactness criteria for sums of products of Toeplitz operators on the polydisc.

Finite sections can certify that an operator is nonzero; they only collect evidence that
it vanishes. Every verdict here is therefore three-valued, and exact structural zeros are
the only way to certify a vanishing slice.
"""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

import numpy as np

from ..config import RunConfig
from .basis import CoefVector, Truncation, kernel_coeffs, kernel_mass_defect
from .berezin import (
    DEFAULT_TS,
    RELIABLE_DEFECT,
    ApproachSchedule,
    _uni_berezin,
    decay_profile,
)
from .errors import DimensionError, HypothesisRefusal, ClaimFailedError, ToeplitzError
from .polynomial import PolyZZbar, circle_vanishing, laplacian_j, vanishes_on_face
from .reports import (
    ClaimCheck,
    CompactnessReport,
    CriterionResult,
    DecayFinding,
    DecayTestResult,
    ExamplesBundle,
    FaceMaximum,
    ProbePoint,
    SliceVerdict,
    Verdict,
)
from .scalars import QQi, Scalar, unit_roots
from .symbols import (
    SymbolExpr,
    TensorTerm,
    boundary_face_max,
    disc_grid_max,
    extend,
    restrict,
    vanishes_on_circle_sampled,
)
from .toeplitz import (
    OperatorExpr,
    TensorOperator,
    ZeroVerdict,
    compose_operator,
    default_pad,
    operator_norm,
    tensor_operator,
    uni_band,
    zero_verdict,
)

log = logging.getLogger("bergman.diagnostics")

FACE_TOL = 1e-12
DECAY_LIMITATION = (
    "Berezin decay is sampled along finitely many linear approach paths; "
    "vanishing along every approach is not verified"
)
SECTION_LIMITATION = "finite sections certify nonzero slices only; vanishing is evidence unless structurally exact"


def _require_continuous(expr: OperatorExpr):
    warnings = [w for s in expr.symbols() for w in s.continuity_warnings()]
    if warnings:
        raise HypothesisRefusal(
            "the restriction-slice criterion needs symbols continuous on the closed polydisc: " + "; ".join(warnings)
        )


# ---- restriction slices ------------------------------------------------------------

def slice_degree(expr: OperatorExpr, k: int) -> int:
    return max((sum(s.angular_degree(k) for s in p) for p in expr.products), default=0)


def restriction_slice_test(
    expr: OperatorExpr,
    xi_count: int = 64,
    trunc: Truncation | None = None,
    tol: float = 1e-8,
    pad: int | None = None,
    mode: str = "exact",
    qr: int = 64,
) -> list[SliceVerdict]:
    """Norms of sum_j prod_i T_{R_{k,xi} f_ji} for every face k and xi_count equispaced xi."""
    if expr.n < 2:
        raise DimensionError("restriction slices need at least two variables")
    _require_continuous(expr)
    trunc = trunc or Truncation.uniform(expr.n, 32)
    out: list[SliceVerdict] = []
    for k in range(1, expr.n + 1):
        sub = trunc.drop(k)
        for xi in unit_roots(xi_count):
            sliced = expr.restrict(k, xi)
            xc = complex(xi)
            if sliced.is_structurally_zero():
                out.append(
                    SliceVerdict(
                        k=k, xi_re=xc.real, xi_im=xc.imag, norm=0.0, exact_zero=True,
                        verdict=ZeroVerdict.ZERO.value, note="structurally zero",
                    )
                )
                continue
            ev = zero_verdict(sliced, sub, pad, tol, mode=mode, qr=qr)
            out.append(
                SliceVerdict(
                    k=k,
                    xi_re=xc.real,
                    xi_im=xc.imag,
                    norm=ev.norm,
                    exact_zero=ev.exact_zero,
                    certified_nonzero=ev.verdict == ZeroVerdict.NONZERO,
                    pad=ev.pad,
                    verdict=ev.verdict.value,
                    note=ev.note,
                )
            )
    return out


# ---- Berezin decay ---------------------------------------------------------------

_TARGETS_2D = ((1, 0), (1j, 0), (0, 1), (0, -1), (1, 1), (-1, 1j), (1, 0.5), (0.5, -1j))


def default_targets(n: int) -> list[tuple[complex, ...]]:
    if n == 1:
        return [(1,), (1j,), (-1,), (-1j,)]
    return [tuple(complex(c) for c in t) + (0j,) * (n - 2) for t in _TARGETS_2D]


def judge_profile(profile, tol: float, persistence: float = 0.5) -> DecayFinding:
    """Obstruction when the extrapolated boundary value is above tol and not small against the last reliable |BT|."""
    rel = profile.reliable_points()
    estimate = profile.boundary_limit_estimate()
    last = profile.tail()
    if estimate is None:
        return DecayFinding(
            target=profile.target, last_reliable=last, reliable_points=len(rel),
            obstruction=None, reason="fewer than 2 reliable points",
        )
    obstruction = estimate > tol and estimate >= persistence * (last or 0.0)
    reason = (
        f"boundary estimate {estimate:.6g} persists against last reliable {last:.6g}"
        if obstruction
        else f"boundary estimate {estimate:.6g} decays (last reliable {last:.6g})"
    )
    return DecayFinding(
        target=profile.target, estimate=estimate, last_reliable=last,
        reliable_points=len(rel), obstruction=obstruction, reason=reason,
    )


def decay_test(
    expr: OperatorExpr,
    targets: Sequence[Sequence[complex]] | None = None,
    trunc: Truncation | None = None,
    pad: int | None = None,
    tol: float = 1e-6,
    ts: Sequence[float] = DEFAULT_TS,
    persistence: float = 0.5,
    operator: TensorOperator | None = None,
) -> DecayTestResult:
    trunc = trunc or Truncation.uniform(expr.n, 32)
    pad = default_pad(expr) if pad is None else pad
    A = operator if operator is not None else compose_operator(expr, trunc, pad)
    result = DecayTestResult()
    for target in targets or default_targets(expr.n):
        schedule = ApproachSchedule(tuple(target), tuple(ts))
        profile = decay_profile(expr, schedule, trunc, pad, operator=A)
        result.profiles.append(profile)
        result.findings.append(judge_profile(profile, tol, persistence))
    result.verdict = "not-compact" if result.obstruction_found else "no-obstruction"
    return result


# ---- specialized criteria -----------------------------------------------------------

def harmonic_slice_criterion(f: PolyZZbar, g: PolyZZbar) -> CriterionResult:
    """T_f T_g with (n-1)-harmonic slices is compact iff fg = 0 on the boundary."""
    if f.n != g.n:
        raise DimensionError("f and g live on different polydiscs")
    n = f.n
    if n < 2:
        raise HypothesisRefusal("the harmonic-slice criterion needs n >= 2")
    for name, p in (("f", f), ("g", g)):
        for k in range(1, n + 1):
            for j in range(1, n + 1):
                if j != k and not vanishes_on_face(laplacian_j(p, j), k):
                    raise HypothesisRefusal(
                        f"Laplacian in z{j} of {name} does not vanish on the face |z{k}| = 1: "
                        "slices are not (n-1)-harmonic"
                    )
    product = f * g
    faces = {k: vanishes_on_face(product, k) for k in range(1, n + 1)}
    compact = all(faces.values())
    return CriterionResult(
        name="harmonic_slice",
        verdict=Verdict.COMPACT if compact else Verdict.NOT_COMPACT,
        reason="fg vanishes on every face" if compact else "fg does not vanish on face(s) "
        + ", ".join(str(k) for k, ok in faces.items() if not ok),
        details={"faces": {str(k): ok for k, ok in faces.items()}},
    )


def _circle_vanishes(s: SymbolExpr) -> tuple[bool, str]:
    p = PolyZZbar.from_symbol(s)
    if p is not None:
        return circle_vanishing(p), "exact"
    return vanishes_on_circle_sampled(s), "sampled"


def _nonzero_witness(s: SymbolExpr, rng: np.random.Generator, trials: int) -> complex | None:
    if s.is_structurally_zero():
        return None
    if abs(s(0j)) > FACE_TOL:
        return 0j
    r = np.sqrt(rng.uniform(0, 0.999, trials))
    z = r * np.exp(2j * np.pi * rng.uniform(0, 1, trials))
    values = np.abs(s.eval_many(z[:, None]))
    hits = np.nonzero(values > FACE_TOL)[0]
    return complex(z[hits[0]]) if hits.size else None


def decoupled_criterion(
    factors: Sequence[SymbolExpr], trials: int = 10_000, seed: int = 0, trunc_cap: int = 16
) -> CriterionResult:
    """prod_k T_{f_k} with pure tensor f_k = prod_j f_jk(z_j); F = prod_k f_k."""
    if not factors:
        raise ValueError("no factors")
    n = factors[0].n
    per_var = [SymbolExpr.constant(1, 1) for _ in range(n)]
    for f in factors:
        split = f.factor_tensor()
        if split is None:
            raise HypothesisRefusal(f"symbol {f.text} is not a pure tensor product")
        per_var = [a * b for a, b in zip(per_var, split)]
    rng = np.random.default_rng(seed)
    witnesses = [_nonzero_witness(P, rng, trials) for P in per_var]
    details: dict = {"per_variable": [P.text for P in per_var]}
    if any(w is None for w in witnesses):
        return CriterionResult(
            name="decoupled",
            verdict=Verdict.INCONCLUSIVE,
            reason="F vanishes identically; the criterion needs F not identically zero",
            details=details,
        )
    circle = [_circle_vanishes(P) for P in per_var]
    details["circle_vanishing"] = [ok for ok, _ in circle]
    details["witness"] = [[w.real, w.imag] for w in witnesses]
    if all(ok for ok, _ in circle):
        return CriterionResult(
            name="decoupled",
            verdict=Verdict.COMPACT,
            reason="F = 0 on the boundary and F is not identically zero",
            details=details,
        )
    # F != 0 sul bordo: T non compatto, purché T != 0
    expr = OperatorExpr(n, (tuple(factors),))
    ev = zero_verdict(expr, Truncation.uniform(n, trunc_cap))
    bad = [j for j, (ok, _) in enumerate(circle, start=1) if not ok]
    if ev.verdict == ZeroVerdict.NONZERO:
        return CriterionResult(
            name="decoupled",
            verdict=Verdict.NOT_COMPACT,
            reason=f"F does not vanish on face(s) {bad} and T is certified nonzero (norm {ev.norm:.6g})",
            details=details,
        )
    return CriterionResult(
        name="decoupled",
        verdict=Verdict.INCONCLUSIVE,
        reason=f"F does not vanish on face(s) {bad}; T could not be certified nonzero",
        details=details,
    )


def polynomial_criterion(
    fs: Sequence[PolyZZbar], h: SymbolExpr, gs: Sequence[PolyZZbar], grid=None
) -> CriterionResult:
    """T_{f_1}...T_{f_M} T_h T_{g_1}...T_{g_N} on D^2 is compact iff f_1...f_M h g_1...g_N = 0 on the boundary."""
    polys = list(fs) + list(gs)
    if h.n != 2 or any(p.n != 2 for p in polys):
        raise HypothesisRefusal("the polynomial criterion is stated on the bidisc only")
    if not h.is_boundary_continuous():
        raise HypothesisRefusal("h must be continuous on the closed bidisc: " + "; ".join(h.continuity_warnings()))
    faces: dict[str, str] = {}
    for k in (1, 2):
        killer = next((i for i, p in enumerate(polys) if vanishes_on_face(p, k)), None)
        if killer is not None:
            faces[str(k)] = f"polynomial factor {killer} vanishes on the face"
            continue
        full = h
        for p in polys:
            full = full * p.to_symbol()
        if boundary_face_max(full, k, grid) <= FACE_TOL:
            faces[str(k)] = "product vanishes on the sampled face"
        else:
            faces[str(k)] = ""
    compact = all(faces.values())
    return CriterionResult(
        name="polynomial",
        verdict=Verdict.COMPACT if compact else Verdict.NOT_COMPACT,
        reason="product vanishes on both faces" if compact else "product does not vanish on face(s) "
        + ", ".join(k for k, why in faces.items() if not why),
        details={
            "faces": faces,
            "contract": "applies to the operator T_f1...T_fM T_h T_g1...T_gN, not to pointwise products inside one symbol",
        },
    )


def disc_criterion(expr: OperatorExpr) -> CriterionResult:
    """n = 1: a sum of products of Toeplitz operators is compact iff sum_j prod_i f_ji vanishes on the circle."""
    if expr.n != 1:
        raise DimensionError("the disc criterion is for one variable")
    _require_continuous(expr)
    F = expr.symbol_sum()
    ok, how = _circle_vanishes(F)
    return CriterionResult(
        name="disc",
        verdict=Verdict.COMPACT if ok else Verdict.NOT_COMPACT,
        reason=("symbol of the operator vanishes on the circle" if ok else "symbol of the operator does not vanish on the circle")
        + f" ({how})",
        details={"symbol": F.text},
    )


# ---- limit probes -----------------------------------------------------------------

def lemma_limit_probe(
    psi: SymbolExpr,
    zeta: Scalar,
    h: CoefVector | None = None,
    schedule: ApproachSchedule | None = None,
) -> list[ProbePoint]:
    """||(psi - psi_zeta) k_{p_1} h|| along p_1(t) -> zeta, psi_zeta the symbol frozen at z_1 = zeta."""
    if psi.n < 2:
        raise DimensionError("the probe splits off the first variable; n >= 2")
    if not psi.is_boundary_continuous():
        raise HypothesisRefusal("psi must be continuous on the closed polydisc")
    schedule = schedule or ApproachSchedule((complex(zeta),), (0.0, 0.5, 0.9, 0.99, 0.999))
    if h is None:
        h = CoefVector(Truncation.uniform(psi.n - 1, 8), np.eye(1, 8 ** (psi.n - 1), dtype=complex)[0])
    D = psi - extend(restrict(psi, 1, zeta), 1)
    G = D * D.conj()
    rest_values: dict = {}
    out: list[ProbePoint] = []
    for t, p in zip(schedule.ts, schedule.points()):
        p1 = p.coords[0]
        total = 0j
        worst = 0.0
        for term in G.terms:
            b1, defect = _uni_berezin(term.factors[0], p1)
            worst = max(worst, defect)
            key = tuple(u.key for u in term.factors[1:])
            if key not in rest_values:
                rest = SymbolExpr(psi.n - 1, (TensorTerm(QQi(1), term.factors[1:]),))
                A = tensor_operator(rest, h.trunc)
                rest_values[key] = complex(np.vdot(h.coeffs, A.matvec(h.coeffs)))
            total += complex(term.coef) * b1 * rest_values[key]
        out.append(ProbePoint(t=t, value=math.sqrt(max(0.0, total.real)), reliable=worst <= RELIABLE_DEFECT))
    return out


def slice_remainder_probe(
    expr: OperatorExpr,
    k: int,
    xi: Scalar,
    trunc: Truncation | None = None,
    pad: int | None = None,
    ts: Sequence[float] = DEFAULT_TS,
) -> list[ProbePoint]:
    """||(T - sum_j prod_i T_{E_k R_{k,xi} f_ji}) k_p|| as p -> (.., xi, ..) with 0 elsewhere."""
    if expr.n < 2:
        raise DimensionError("restriction slices need at least two variables")
    trunc = trunc or Truncation.uniform(expr.n, 32)
    pad = default_pad(expr) if pad is None else pad
    sliced = expr.restrict(k, xi)
    frozen = OperatorExpr(expr.n, tuple(tuple(extend(s, k) for s in p) for p in sliced.products))
    A = compose_operator(expr, trunc, pad)
    B = compose_operator(frozen, trunc, pad) if frozen.products else TensorOperator(trunc)
    diff = TensorOperator(trunc, A.terms + [(-c, mats) for c, mats in B.terms])
    target = [0j] * expr.n
    target[k - 1] = complex(xi)
    schedule = ApproachSchedule(tuple(target), tuple(ts))
    out = []
    for t, p in zip(schedule.ts, schedule.points()):
        kp = kernel_coeffs(p, trunc).coeffs
        out.append(
            ProbePoint(
                t=t,
                value=float(np.linalg.norm(diff.matvec(kp))),
                reliable=kernel_mass_defect(p, trunc) <= RELIABLE_DEFECT,
            )
        )
    return out


# ---- pipeline ---------------------------------------------------------------------

def _specialized_criteria(expr: OperatorExpr, seed: int) -> list[CriterionResult]:
    out = []
    if len(expr.products) != 1:
        return out
    product = expr.products[0]
    polys = [PolyZZbar.from_symbol(s) for s in product]
    attempts = []
    if len(product) == 2 and all(p is not None for p in polys):
        attempts.append(lambda: harmonic_slice_criterion(polys[0], polys[1]))
    if all(s.factor_tensor() is not None for s in product):
        attempts.append(lambda: decoupled_criterion(product, seed=seed))
    if expr.n == 2 and all(p is not None for p in polys):
        attempts.append(lambda: polynomial_criterion(polys, SymbolExpr.constant(2, 1), []))
    for attempt in attempts:
        try:
            out.append(attempt())
        except HypothesisRefusal as exc:
            log.debug("criterion not applicable: %s", exc)
    return out


def run_compactness(expr: OperatorExpr, config: RunConfig | None = None) -> CompactnessReport:
    config = config or RunConfig(n=expr.n)
    if config.n is not None and config.n != expr.n:
        raise DimensionError(f"operator on D^{expr.n}, run configured for n = {config.n}")
    config = config.with_overrides(n=expr.n)
    trunc = Truncation(config.caps_for(expr.n))
    mode = "exact" if config.exact else "quadrature"
    pad = default_pad(expr) if config.pad is None else config.pad
    _require_continuous(expr)
    report = CompactnessReport(
        expr=expr.text,
        n=expr.n,
        trunc=list(trunc.caps),
        pad=pad,
        tol_slice=config.tol_slice,
        tol_decay=config.tol_decay,
        limitations=[DECAY_LIMITATION, SECTION_LIMITATION],
        config=config.echo(),
    )
    if mode == "quadrature":
        report.limitations.append(f"quadrature assembly (qr = {config.qr}): norms carry quadrature error")
    A = compose_operator(expr, trunc, pad, mode=mode, qr=config.qr)
    decay = decay_test(
        expr, trunc=trunc, pad=pad, tol=config.tol_decay, ts=config.schedule,
        persistence=config.persistence, operator=A,
    )
    report.profiles = decay.profiles
    report.findings = decay.findings
    obstruction = decay.obstruction_found
    if obstruction:
        hits = [f for f in decay.findings if f.obstruction]
        report.evidence.append(f"Berezin transform does not decay toward {hits[0].target}: {hits[0].reason}")
    if expr.n == 1:
        crit = disc_criterion(expr)
        report.criteria.append(crit)
        report.evidence.append(f"disc criterion: {crit.reason}")
        report.verdict = crit.verdict
        return report

    F = expr.symbol_sum()
    report.face_maxima = [FaceMaximum(k=k, max_abs=boundary_face_max(F, k)) for k in range(1, expr.n + 1)]
    report.criteria = _specialized_criteria(expr, config.seed)
    report.slices = restriction_slice_test(
        expr, config.xi_count, trunc, config.tol_slice, config.pad, mode=mode, qr=config.qr
    )

    certified = [s for s in report.slices if s.certified_nonzero]
    vanishing = all(s.exact_zero or s.norm <= config.tol_slice for s in report.slices)
    if certified:
        s = certified[0]
        report.evidence.append(
            f"slice k={s.k} at xi=({s.xi_re:.6g}{s.xi_im:+.6g}i) has norm {s.norm:.6g} with pad {s.pad}"
        )
        report.verdict = Verdict.NOT_COMPACT
    elif vanishing:
        exact = sum(1 for s in report.slices if s.exact_zero)
        report.evidence.append(f"all {len(report.slices)} slice operators vanish ({exact} exactly)")
        if expr.is_exact() and all(s.is_polynomial() for s in expr.symbols()):
            degree = max(slice_degree(expr, k) for k in range(1, expr.n + 1))
            if config.xi_count > 2 * degree:
                report.evidence.append(
                    f"xi_count {config.xi_count} > 2 * slice degree {degree}: sampled vanishing holds for every xi"
                )
        else:
            report.limitations.append("slices sampled at finitely many xi; no degree bound for piecewise profiles")
        if obstruction:
            report.evidence.append("decay falsifier disagrees with vanishing slices; truncation too coarse")
            report.verdict = Verdict.INCONCLUSIVE
        else:
            report.verdict = Verdict.COMPACT_CONSISTENT
    else:
        report.verdict = Verdict.NOT_COMPACT if obstruction else Verdict.INCONCLUSIVE
    for crit in report.criteria:
        report.evidence.append(f"{crit.name} criterion: {crit.verdict.value} ({crit.reason})")
    log.info("compactness of %s: %s", report.expr, report.verdict.value)
    return report


# ---- examples ---------------------------------------------------------------------

def exact_spectrum(rho_symbol: SymbolExpr, count: int) -> list[Fraction]:
    if rho_symbol.n != 1 or any(t.factors[0].a != t.factors[0].b for t in rho_symbol.terms):
        raise ToeplitzError("spectrum needs a radial one-variable symbol")
    diag = [QQi(0)] * count
    for t in rho_symbol.terms:
        band = uni_band(t.factors[0], count)
        for m in range(count):
            diag[m] = diag[m] + t.coef * band.entries.get((m, m), 0) * (m + 1)
    out = []
    for v in diag:
        if not isinstance(v, QQi) or v.im != 0:
            raise ToeplitzError("spectrum needs rational coefficients")
        out.append(v.re)
    return out


def _exact_value_at_origin(s: SymbolExpr) -> Scalar:
    total = QQi(0)
    for t in s.terms:
        if all(u.a == 0 and u.b == 0 for u in t.factors):
            value = t.coef
            for u in t.factors:
                value = value * QQi(u.radial.value_exact(Fraction(0)))
            total = total + value
    return total


def reproduce_examples(
    config: RunConfig | None = None,
    phi_text: str | None = None,
    psi_text: str | None = None,
    caps_list: Sequence[int] = (16, 32, 64),
    decay_caps: int = 64,
    spectrum_terms: int = 51,
    strict: bool = True,
) -> ExamplesBundle:
    from . import catalog

    config = config or RunConfig()
    phi = catalog.phi(phi_text) if phi_text else catalog.phi()
    psi = catalog.psi(psi_text) if psi_text else catalog.psi()
    bundle = ExamplesBundle(config=config.echo())
    bundle.warnings = phi.continuity_warnings() + psi.continuity_warnings()

    def claim(name: str, ok, detail: str = ""):
        bundle.claims.append(ClaimCheck(claim=name, passed=bool(ok), detail=detail))

    bound = Fraction(5, 144)

    lam = exact_spectrum(phi, spectrum_terms)
    mu = exact_spectrum(psi, spectrum_terms)
    bundle.spectra = {"phi": [str(x) for x in lam[:8]], "psi": [str(x) for x in mu[:8]]}
    claim("T_phi and T_psi have strictly positive eigenvalues", all(x > 0 for x in lam + mu), f"m <= {spectrum_terms - 1}")
    claim(
        "T_phi eigenvalues are 4^-(m+1)/(2m+3)",
        all(x == Fraction(1, 4 ** (m + 1) * (2 * m + 3)) for m, x in enumerate(lam)),
    )
    grid_max = disc_grid_max(phi * psi)
    claim("phi*psi vanishes on the closed disc", grid_max < 1e-15, f"grid max {grid_max:.3e}")
    for cap in caps_list:
        norm = operator_norm(compose_operator(OperatorExpr.product_of(phi, psi), Truncation((cap,)), 0))
        claim(f"||T_phi T_psi|| >= 5/144 at caps {cap}", norm >= float(bound) - 1e-12, f"norm {norm:.12g}")

    run_cfg = config.with_overrides(n=2)
    first = catalog.fg_identically_zero(phi, psi)
    second = catalog.fg_zero_on_boundary(phi, psi)
    compact = catalog.catalog_compact()
    for name, expr in (("fg_identically_zero", first), ("fg_zero_on_boundary", second)):
        try:
            report = run_compactness(expr, run_cfg)
        except HypothesisRefusal as exc:
            bundle.warnings.append(f"{name}: {exc}")
            claim(f"{name} is not compact", False, "refused")
            continue
        bundle.reports[name] = report
        k1 = report.min_slice_norm(1)
        claim(f"{name} is not compact", report.verdict == Verdict.NOT_COMPACT, report.verdict.value)
        claim(
            f"{name}: every k=1 slice has norm >= 5/144",
            k1 is not None and k1 >= float(bound) - 1e-12,
            f"min norm {k1}",
        )
    f, g = second.products[0]
    origin = _exact_value_at_origin(f) * _exact_value_at_origin(g)
    claim("f(0,0) g(0,0) = 1", origin == 1, str(origin))
    fg = f * g
    faces = [boundary_face_max(fg, k) for k in (1, 2)]
    claim("fg vanishes on both faces", max(faces) < 1e-12, f"face maxima {faces}")

    compact_cfg = run_cfg.with_overrides(caps=(decay_caps,))
    report = run_compactness(compact, compact_cfg)
    bundle.reports["catalog_compact"] = report
    claim("catalog case: every slice operator is exactly zero", all(s.exact_zero for s in report.slices),
          f"{len(report.slices)} slices")
    claim("catalog case: no decay obstruction", not any(f.obstruction for f in report.findings))
    claim(
        "catalog case: reliable Berezin profiles strictly decrease",
        all(p.is_strictly_decreasing() for p in report.profiles),
    )
    claim("catalog case is compact-consistent", report.verdict == Verdict.COMPACT_CONSISTENT, report.verdict.value)

    failed = bundle.failed
    if failed and strict:
        raise ClaimFailedError(failed[0].claim, failed[0].detail, bundle)
    return bundle
