"""The identity registry: one entry per verified identity, each tying a
module operation pairing to a default grid and tolerance.

The registry is the coverage map of the verification suite; `verify`/`grid`
in the CLI and the acceptance tests all drive it.  Identities whose printed
source formula carries an unresolved convention (the elliptic-integral form
of the P-zero constant) run informationally: they report but never fail a
run.
"""

from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import AbeltauError, DomainError, DomainNotSupported
from .hypergeom import (
    IncompleteIntegralSpec,
    elliptic_F,
    elliptic_K,
    incomplete_integral_2f1,
    oracle_incomplete_integral,
)
from .modular import (
    DEFAULT_TRUNCATION,
    TruncationPolicy,
    dedekind_eta,
    hauptmodul_equianharmonic,
    hauptmodul_hyperelliptic,
    hauptmodul_lemniscatic,
    sqrt_theta_ratio,
    theta2,
    theta3,
    theta4,
)
from .numerics import DerivativeStencil, contour_quadrature, holomorphic_derivatives
from .uniform import (
    CoverConstants,
    CurvePoint,
    EQUIANHARMONIC_Z_EQUATION,
    LEMNISCATIC_CHI_EQUATION,
    VerificationReport,
    covering_map,
    eq5_equation,
    equianharmonic_root_predicate,
    equianharmonic_rootfree_predicate,
    hyperelliptic_predicate,
    lemniscatic_predicate,
    reduce_differential,
    k_pm,
    schwarz_residual,
    schwarz_stencil,
    u_equianharmonic_root,
    u_equianharmonic_rootfree,
    u_hyperelliptic,
    u_lemniscatic,
)
from .weier import (
    EQUIANHARMONIC,
    LEMNISCATIC,
    EllipticInvariants,
    ThirdKindParam,
    integral_second_kind,
    integral_third_kind,
    u0_constant,
    wp,
    wp_inverse_equianharmonic,
    wp_inverse_lemniscatic,
    wp_prime,
)

__all__ = [
    "RunConfig",
    "RunRecord",
    "IdentityEntry",
    "REGISTRY",
    "identity_names",
    "run_identity",
    "run_identity_at",
]

# Spec-pinned decimal of the P-zero constant (13 digits as published).
U0_IM_DIGITS = 1.402182105325


@dataclass
class RunConfig:
    """Options shared by every registry run; overrides reference registered
    identities only."""

    tolerances: dict[str, float] = field(default_factory=dict)
    grids: dict[str, tuple[complex, ...]] = field(default_factory=dict)
    truncation: TruncationPolicy = DEFAULT_TRUNCATION
    stencil: DerivativeStencil | None = None
    output: str = "human"
    m_filter: int | None = None
    report_path: str | None = None

    def validate(self) -> None:
        for key in (*self.tolerances, *self.grids):
            if key not in REGISTRY:
                raise DomainError(f"override references unknown identity {key!r}")
        for v in self.tolerances.values():
            if not v > 0:
                raise DomainError("tolerance overrides must be positive")
        if self.output not in ("human", "json-lines"):
            raise DomainError(f"unknown output mode {self.output!r}")
        if self.m_filter is not None and self.m_filter not in (0, 1, 2, 3):
            raise DomainError("m filter must be in 0..3")

    def stencil_for(self, tau: complex) -> DerivativeStencil:
        return self.stencil if self.stencil is not None else schwarz_stencil(tau)


@dataclass(frozen=True)
class RunRecord:
    """One line of the verification stream."""

    identity: str
    point: complex
    residual: float | None
    tolerance: float
    status: str  # pass | fail | informational | skipped
    metadata: Mapping[str, object] = field(default_factory=dict)

    @property
    def counts_as_failure(self) -> bool:
        return self.status == "fail"

    def to_json_dict(self) -> dict:
        return {
            "identity": self.identity,
            "point": [self.point.real, self.point.imag],
            "residual": self.residual,
            "tolerance": self.tolerance,
            "status": self.status,
            "metadata": {k: _jsonable(v) for k, v in self.metadata.items()},
        }


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {k: _jsonable(x) for k, x in v.items()}
    return v


@dataclass(frozen=True)
class IdentityEntry:
    name: str
    summary: str
    tolerance: float
    informational: bool = False
    default_grid: tuple[complex, ...] | None = None
    point_check: Callable[[complex, RunConfig, float], VerificationReport] | None = None
    fixed_check: Callable[[RunConfig, float], list[VerificationReport]] | None = None


def _echo_config(cfg: RunConfig, extra: Mapping[str, object] | None = None) -> dict:
    meta = {
        "trunc_rel_tol": cfg.truncation.rel_tol,
        "trunc_max_terms": cfg.truncation.max_terms,
    }
    if cfg.stencil is not None:
        meta["stencil_radius"] = cfg.stencil.radius
        meta["stencil_nodes"] = cfg.stencil.nodes
    if extra:
        meta.update(extra)
    return meta


# --------------------------------------------------------------------------
# point checks (tau grids)

def _check_jacobi_quartic(tau, cfg, tol):
    p = cfg.truncation
    t2, t3, t4 = theta2(tau, p) ** 4, theta3(tau, p) ** 4, theta4(tau, p) ** 4
    residual = abs(t2 + t4 - t3) / abs(t3)
    return VerificationReport.build("jacobi-quartic", tau, residual, tol, _echo_config(cfg))


def _check_eta_shift(tau, cfg, tol):
    p = cfg.truncation
    base = dedekind_eta(tau, p)
    residual = abs(dedekind_eta(tau + 1.0, p) - cmath.exp(1j * math.pi / 12.0) * base) / abs(base)
    return VerificationReport.build("eta-shift", tau, residual, tol, _echo_config(cfg))


def _check_sqrt_ratio(tau, cfg, tol):
    p = cfg.truncation
    target = hauptmodul_hyperelliptic(tau, p)
    residual = abs(sqrt_theta_ratio(tau, p) ** 2 - target) / abs(target)
    return VerificationReport.build("sqrt-ratio", tau, residual, tol, _echo_config(cfg))


def _schwarz_point_check(equation, candidate):
    def check(tau, cfg, tol):
        report = schwarz_residual(equation, candidate, tau, cfg.stencil_for(tau), tol)
        meta = _echo_config(cfg, report.metadata)
        return VerificationReport.build(report.identity_id, tau, report.residual, tol, meta)
    return check


_EQ5_LEMN = eq5_equation(LEMNISCATIC, lemniscatic_predicate, "schwarz-u-lemn")
_EQ5_ROOT = eq5_equation(EQUIANHARMONIC, equianharmonic_root_predicate, "schwarz-u-equi-root")
_EQ5_ROOTFREE = eq5_equation(
    EQUIANHARMONIC, equianharmonic_rootfree_predicate, "schwarz-u-equi-rootfree"
)


def _check_u_derivative(tau, cfg, tol):
    """dU/dtau = z^m z'(tau) / sqrt(z^5 - z) with z = theta2/theta3 and the
    root branch fixed by sqrt_theta_ratio: 1/sqrt(z^5-z) = i/(s(tau) sqrt(1-z^4))."""
    p = cfg.truncation
    if not hyperelliptic_predicate(tau):
        raise DomainNotSupported(f"tau = {tau!r} outside the theta-ratio predicate")
    stencil = cfg.stencil_for(tau)
    z = hauptmodul_hyperelliptic(tau, p)
    (z_prime,) = holomorphic_derivatives(lambda s: hauptmodul_hyperelliptic(s, p), tau, 1, stencil)
    root = sqrt_theta_ratio(tau, p) * cmath.sqrt(1.0 - z**4)
    ms = (cfg.m_filter,) if cfg.m_filter is not None else (0, 1, 2, 3)
    per_m = {}
    worst = 0.0
    for m in ms:
        (lhs,) = holomorphic_derivatives(lambda s: u_hyperelliptic(m, s, p), tau, 1, stencil)
        rhs = 1j * z**m * z_prime / root
        rel = abs(lhs - rhs) / abs(rhs)
        per_m[f"m{m}"] = rel
        worst = max(worst, rel)
    meta = _echo_config(cfg, {"stencil_radius": stencil.radius,
                              "stencil_nodes": stencil.nodes,
                              "branch": "sqrt_theta_ratio", **per_m})
    return VerificationReport.build("U-derivative", tau, worst, tol, meta)


# --------------------------------------------------------------------------
# fixed checks

def _check_wp_diffeq(cfg, tol):
    rng = random.Random(2024)
    reports = []
    for inv in (LEMNISCATIC, EQUIANHARMONIC):
        for _ in range(50):
            r = rng.uniform(0.15, 1.25)
            phi = rng.uniform(0.0, 2.0 * math.pi)
            u = r * cmath.exp(1j * phi)
            p = wp(u, inv)
            pp = wp_prime(u, inv)
            residual = abs(pp * pp - (4.0 * p**3 - inv.g2 * p - inv.g3)) / (1.0 + abs(p) ** 3)
            reports.append(VerificationReport.build(
                "wp-diffeq", u, residual, tol,
                _echo_config(cfg, {"invariants": inv.as_tuple}),
            ))
    return reports


_ROUNDTRIP_LEMN = (2, 3, 5, 10, 2j, 3j, -2 + 2j, 4 - 3j, 1.5 + 1.5j, 6 + 0.5j)
_ROUNDTRIP_EQUI = (2, 3, 4, 10, 2j, 5j, -2 + 2j, 3 - 2j, 1.2 + 1.2j, 1.5)


def _roundtrip_check(name, inverse, inv, points):
    def check(cfg, tol):
        reports = []
        for x in points:
            u = inverse(complex(x), cfg.truncation)
            residual = abs(wp(u, inv) - x)
            reports.append(VerificationReport.build(
                name, complex(x), residual, tol,
                _echo_config(cfg, {"u": u, "invariants": inv.as_tuple}),
            ))
        return reports
    return check


def _check_u0_digits(cfg, tol):
    u0 = u0_constant()
    residual = max(abs(u0.imag - U0_IM_DIGITS), abs(u0.real))
    return [VerificationReport.build(
        "u0-digits", u0, residual, tol,
        _echo_config(cfg, {"real_part_exact_zero": u0.real == 0.0}),
    )]


def _check_u0_wp_zero(cfg, tol):
    u0 = u0_constant()
    residual = abs(wp(u0, EQUIANHARMONIC))
    return [VerificationReport.build("u0-wp-zero", u0, residual, tol, _echo_config(cfg))]


def _check_u0_fk_conventions(cfg, tol):
    """Convention search for the elliptic-integral expression of the P-zero
    constant: i/(2*3^(1/4)) F(3^(1/4)(sqrt3 - 1), .) - 3^(-1/4) K(.) under the
    four standard (modulus|parameter) x (sine|amplitude) readings.

    Informational: none of the four reproduces u0 itself in these
    conventions; the modulus-sine reading lands on the rotated P-zero
    u0 e^(i pi/3) (same modulus, P vanishes there), which the metadata
    records.
    """
    u0 = u0_constant()
    x_arg = 3.0 ** 0.25 * (math.sqrt(3.0) - 1.0)
    second = (math.sqrt(6.0) + math.sqrt(2.0)) / 4.0
    k_arg = (math.sqrt(3.0) - 1.0) / (2.0 * math.sqrt(2.0))
    conventions = {
        "modulus-sine": (elliptic_F(x_arg, second), elliptic_K(k_arg)),
        "modulus-amplitude": (elliptic_F(math.sin(x_arg), second), elliptic_K(k_arg)),
        "parameter-sine": (elliptic_F(x_arg, math.sqrt(second)), elliptic_K(math.sqrt(k_arg))),
        "parameter-amplitude": (
            elliptic_F(math.sin(x_arg), math.sqrt(second)),
            elliptic_K(math.sqrt(k_arg)),
        ),
    }
    reports = []
    matched = "none"
    for name, (f_val, k_val) in conventions.items():
        cand = 1j / (2.0 * 3.0**0.25) * f_val - 3.0 ** -0.25 * k_val
        residual = abs(cand - u0)
        if residual <= tol:
            matched = name
        rotations = min(
            min(abs(cand - u0 * cmath.exp(1j * math.pi * k / 3.0)),
                abs(cand + u0 * cmath.exp(1j * math.pi * k / 3.0)))
            for k in range(6)
        )
        reports.append(VerificationReport.build(
            "u0-fk-conventions", cand, residual, tol,
            _echo_config(cfg, {
                "convention": name,
                "wp_at_candidate": abs(wp(cand, EQUIANHARMONIC)),
                "nearest_rotated_zero": rotations,
                "matched_convention": matched,
            }),
        ))
    return reports


_EQ6_ROWS = (
    IncompleteIntegralSpec(0.5, 0.5, 1, 0.5, "from_zero"),
    IncompleteIntegralSpec(1.0, 0.0, 1, 0.7, "from_zero"),
    IncompleteIntegralSpec(1.25, 1.0 / 3.0, 1, 0.6, "from_zero"),
)
_EQ7_ROWS = (
    IncompleteIntegralSpec(0.5, 1.0, 1, 3.0, "from_infinity"),
    IncompleteIntegralSpec(0.25, 0.75, 1, 2.0, "from_infinity"),
)
_EQ12_ROWS = (
    IncompleteIntegralSpec(0.5, 0.5, 2, 3.0, "from_infinity"),   # lemniscatic inverse
    IncompleteIntegralSpec(0.5, 0.5, 2, 2.0, "from_infinity"),
    IncompleteIntegralSpec(1.0, 0.5, 3, 2.0, "from_infinity"),   # equianharmonic inverse
    IncompleteIntegralSpec(1.0, 0.5, 3, 0.6, "from_zero"),
    IncompleteIntegralSpec(0.5, 0.5, 4, 0.7, "from_zero"),       # genus-2 rows, m = 0..3
    IncompleteIntegralSpec(1.5, 0.5, 4, 0.7, "from_zero"),
    IncompleteIntegralSpec(2.5, 0.5, 4, 0.7, "from_zero"),
    IncompleteIntegralSpec(3.5, 0.5, 4, 0.7, "from_zero"),
    IncompleteIntegralSpec(1.5, 0.25, 2, 0.5 + 0.3j, "from_zero"),
    IncompleteIntegralSpec(0.5, 0.75, 2, 4.0, "from_infinity"),
    IncompleteIntegralSpec(2.0, 1.0 / 3.0, 3, 0.6j, "from_zero"),
)


def _integral_table_check(name, rows):
    def check(cfg, tol):
        reports = []
        for spec in rows:
            value = incomplete_integral_2f1(spec, cfg.truncation)
            oracle = oracle_incomplete_integral(spec, tol=1e-10)
            residual = abs(value - oracle) / (1.0 + abs(value))
            reports.append(VerificationReport.build(
                name, spec.z, residual, tol,
                _echo_config(cfg, {
                    "alpha": spec.alpha, "beta": spec.beta,
                    "n": spec.n, "base": spec.base, "value": value,
                }),
            ))
        return reports
    return check


_COVER = CoverConstants.from_parameters(-1.0, 1j)
_KP_EXPECT = (1.0 + math.sqrt(2.0)) / 2.0
_KM_EXPECT = (1.0 - math.sqrt(2.0)) / 2.0


def _random_curve_points(count, seed):
    rng = random.Random(seed)
    special = (0.0, 1.0, -1.0, 1j, -1j, _COVER.A, _COVER.B)
    points = []
    while len(points) < count:
        x = complex(rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0))
        if min(abs(x - s) for s in special) < 0.4:
            continue
        y = cmath.sqrt(x**5 - x) * rng.choice((1.0, -1.0))
        points.append((x, y))
    return points


def _check_cover_cubic(cfg, tol):
    reports = []
    for sign in (1, -1):
        inv = _COVER.quotient_invariants(sign)
        for x, y in _random_curve_points(100, seed=7 if sign == 1 else 8):
            P, Pp = covering_map(CurvePoint(x, y, sign), _COVER)
            residual = abs(Pp * Pp - (4.0 * P**3 - inv.g2 * P - inv.g3))
            reports.append(VerificationReport.build(
                "cover-cubic", x, residual, tol,
                _echo_config(cfg, {"sign": sign, "invariants": inv.as_tuple}),
            ))
    kp, km = k_pm(-1.0, 1j)
    k_res = max(abs(kp - _KP_EXPECT), abs(km - _KM_EXPECT))
    reports.append(VerificationReport.build(
        "cover-cubic", -1.0, k_res, 1e-14,
        _echo_config(cfg, {"check": "k_pm(-1, i) = (1 +- sqrt 2)/2"}),
    ))
    return reports


def _check_cover_factored(cfg, tol):
    reports = []
    for sign in (1, -1):
        e1, e2, e3 = _COVER.branch(sign)[2]
        for x, y in _random_curve_points(100, seed=9 if sign == 1 else 10):
            P, Pp = covering_map(CurvePoint(x, y, sign), _COVER)
            residual = abs(Pp * Pp - 4.0 * (P - e1) * (P - e2) * (P - e3))
            reports.append(VerificationReport.build(
                "cover-factored", x, residual, tol,
                _echo_config(cfg, {"sign": sign}),
            ))
        # branch point x = 0 maps to the 2-torsion value e1 = -(k+1)/3
        P0, Pp0 = covering_map(CurvePoint(0.0, 0.0, sign), _COVER)
        residual = max(abs(Pp0), abs(P0 - e1))
        reports.append(VerificationReport.build(
            "cover-factored", 0.0, residual, 1e-10,
            _echo_config(cfg, {"sign": sign, "check": "branch point x=0 -> e-root -(k+1)/3"}),
        ))
    return reports


def _newton_wp_inverse(target, inv, guess=None):
    """Locally invert P by Newton iteration; with no guess, seed from the
    best point of a coarse polar scan of the series disk."""
    if guess is None:
        candidates = sorted(
            (r * cmath.exp(1j * math.pi * k / 8.0) for r in (0.4, 0.7, 1.0, 1.3)
             for k in range(16)),
            key=lambda u: abs(wp(u, inv) - target),
        )
    else:
        candidates = [complex(guess)]
    for start in candidates[:5]:
        u = start
        for _ in range(60):
            step = (wp(u, inv) - target) / wp_prime(u, inv)
            u -= step
            if abs(step) < 1e-11 * max(1.0, abs(u)):  # rounding floor of the P reduction
                break
        if abs(wp(u, inv) - target) <= 1e-9 * (1.0 + abs(target)):
            return u
    raise AbeltauError(f"local P inversion did not converge for target {target!r}")


def _check_du_reduction(cfg, tol):
    """Quadrature of du/dx along a short arc against the increment of u
    recovered by locally inverting P on the quotient curve."""
    reports = []
    arcs = {1: (1.8 + 0.4j, 0.12 * cmath.exp(0.3j)), -1: (1.6 - 0.5j, 0.12 * cmath.exp(-0.2j))}
    for sign, (x0, dx) in arcs.items():
        inv = _COVER.quotient_invariants(sign)
        x1 = x0 + dx

        def du_dx(x, _sign=sign):
            y = cmath.sqrt(x**5 - x)  # principal branch stays continuous on the arc
            return reduce_differential(CurvePoint(x, y, _sign), _COVER)

        delta_u = contour_quadrature(du_dx, [x0, x1], 1e-11)
        P0, Pp0 = covering_map(CurvePoint(x0, cmath.sqrt(x0**5 - x0), sign), _COVER)
        u0 = _newton_wp_inverse(P0, inv)
        if abs(wp_prime(u0, inv) - Pp0) > abs(wp_prime(u0, inv) + Pp0):
            u0 = -u0
        P1, _ = covering_map(CurvePoint(x1, cmath.sqrt(x1**5 - x1), sign), _COVER)
        u1 = _newton_wp_inverse(P1, inv, u0 + delta_u)
        residual = abs((u1 - u0) - delta_u)
        reports.append(VerificationReport.build(
            "du-reduction", x0, residual, tol,
            _echo_config(cfg, {"sign": sign, "arc": dx, "delta_u": delta_u}),
        ))
    return reports


def _check_u_quadrature(cfg, tol):
    tau = 1.5j
    z = hauptmodul_hyperelliptic(tau, cfg.truncation)
    value = u_hyperelliptic(0, tau, cfg.truncation)
    spec = IncompleteIntegralSpec(0.5, 0.5, 4, z, "from_zero")
    oracle = oracle_incomplete_integral(spec, tol=1e-10)
    residual = abs(value - oracle)
    return [VerificationReport.build(
        "U-quadrature", tau, residual, tol,
        _echo_config(cfg, {"m": 0, "z": z, "value": value}),
    )]


def _curve_w(inv: EllipticInvariants, z: complex) -> complex:
    return cmath.sqrt(4.0 * z**3 - inv.g2 * z - inv.g3)


def _branch_sign(inv, inverse, z1) -> float:
    """Sign s making s*sqrt(4z^3-g2 z-g3) the dz/du branch of the
    hypergeometric inverse, fixed from the Cauchy derivative of u(z)."""
    (du_dz,) = holomorphic_derivatives(lambda z: inverse(z), z1, 1, DerivativeStencil(0.1))
    w_expected = 1.0 / du_dz
    w0 = _curve_w(inv, z1)
    return 1.0 if abs(w0 - w_expected) <= abs(-w0 - w_expected) else -1.0


_II_SAMPLES = ((LEMNISCATIC, wp_inverse_lemniscatic, 3.0, 5.0),
               (EQUIANHARMONIC, wp_inverse_equianharmonic, 2.5, 4.0))


def _check_ii_oracle(cfg, tol):
    reports = []
    for inv, inverse, z1, z2 in _II_SAMPLES:
        s = _branch_sign(inv, inverse, complex(z1))
        quad = contour_quadrature(lambda z: z / (s * _curve_w(inv, z)), [z1, z2], 1e-11)
        delta = integral_second_kind(z2, inv) - integral_second_kind(z1, inv)
        residual = abs(delta - quad)
        reports.append(VerificationReport.build(
            "II-oracle", complex(z1), residual, tol,
            _echo_config(cfg, {"invariants": inv.as_tuple, "path": [z1, z2],
                               "w_branch_sign": s}),
        ))
    return reports


_III_SAMPLES = ((LEMNISCATIC, wp_inverse_lemniscatic, 0.5, 3.0, 3.8),
                (EQUIANHARMONIC, wp_inverse_equianharmonic, 0.6, 2.0, 2.5))


def _check_iii_oracle(cfg, tol):
    reports = []
    for inv, inverse, alpha, z1, z2 in _III_SAMPLES:
        pa = wp(alpha, inv)
        ppa = wp_prime(alpha, inv)
        s = _branch_sign(inv, inverse, complex(z1))

        def integrand(z, _inv=inv, _s=s, _pa=pa, _ppa=ppa):
            w = _s * _curve_w(_inv, z)
            return 0.5 * (w + _ppa) / ((z - _pa) * w)

        quad = contour_quadrature(integrand, [z1, z2], 1e-11)
        param = ThirdKindParam(alpha)
        delta = integral_third_kind(z2, param, inv) - integral_third_kind(z1, param, inv)
        residual = abs(delta - quad)
        reports.append(VerificationReport.build(
            "III-oracle", complex(z1), residual, tol,
            _echo_config(cfg, {"invariants": inv.as_tuple, "alpha": alpha,
                               "path": [z1, z2], "w_branch_sign": s}),
        ))
    return reports


# --------------------------------------------------------------------------
# registry

def _entry(name, summary, tolerance, *, informational=False, grid=None,
           point_check=None, fixed_check=None):
    return IdentityEntry(name, summary, tolerance, informational, grid,
                         point_check, fixed_check)


REGISTRY: dict[str, IdentityEntry] = {e.name: e for e in (
    _entry("jacobi-quartic", "theta2^4 + theta4^4 = theta3^4", 1e-12,
           grid=(0.3j, 0.2 + 0.5j, 1j, -0.4 + 1.7j, 1 + 2j),
           point_check=_check_jacobi_quartic),
    _entry("eta-shift", "eta(tau+1) = e^(i pi/12) eta(tau)", 1e-12,
           grid=(0.35j, 0.5 + 0.8j, -0.3 + 1.2j, 2.5j, 0.1 + 0.6j),
           point_check=_check_eta_shift),
    _entry("sqrt-ratio", "sqrt_theta_ratio(tau)^2 = theta2/theta3", 1e-12,
           grid=(0.5j, 0.3 + 0.9j, -0.2 + 2.2j, 1.5j, 0.8j),
           point_check=_check_sqrt_ratio),
    _entry("schwarz-chi", "[chi,tau] = -(1/2)(chi^2+1)^2/(chi^3-chi)^2", 1e-8,
           grid=(1.2j, 1.1j, 1.3j, 0.1 + 1.2j, -0.1 + 1.25j),
           point_check=_schwarz_point_check(LEMNISCATIC_CHI_EQUATION, hauptmodul_lemniscatic)),
    _entry("schwarz-z", "[z,tau] = -(1/2) z(z^3+8)/(z^3-1)^2", 1e-8,
           grid=(0.5j, 0.55j, 0.6j, 0.05 + 0.55j, -0.05 + 0.6j),
           point_check=_schwarz_point_check(EQUIANHARMONIC_Z_EQUATION, hauptmodul_equianharmonic)),
    _entry("schwarz-u-lemn", "[u,tau] = -2 P(2u; 4,0) for the lemniscatic u(tau)", 1e-7,
           grid=(1 + 0.8j, 1 + 0.9j, -1 + 0.85j, 1 + 0.75j, 0.98 + 0.8j),
           point_check=_schwarz_point_check(_EQ5_LEMN, u_lemniscatic)),
    _entry("schwarz-u-equi-root", "[u,tau] = -2 P(2u; 0,4), root form", 1e-7,
           grid=(0.55j, 0.6j, 0.65j, 0.75j, 0.85j),
           point_check=_schwarz_point_check(_EQ5_ROOT, u_equianharmonic_root)),
    _entry("schwarz-u-equi-rootfree", "[u,tau] = -2 P(2u; 0,4), root-free form", 1e-7,
           grid=(0.5 + 0.6j, 0.5 + 0.65j, 0.5 + 0.7j, 0.5 + 0.75j, 0.5 + 0.8j),
           point_check=_schwarz_point_check(_EQ5_ROOTFREE, u_equianharmonic_rootfree)),
    _entry("wp-diffeq", "P'^2 = 4P^3 - g2 P - g3 at random points", 1e-9,
           fixed_check=_check_wp_diffeq),
    _entry("wp-roundtrip-lemn", "P(P^-1(x); 4,0) = x", 1e-9,
           fixed_check=_roundtrip_check("wp-roundtrip-lemn", wp_inverse_lemniscatic,
                                        LEMNISCATIC, _ROUNDTRIP_LEMN)),
    _entry("wp-roundtrip-equi", "P(P^-1(z); 0,4) = z", 1e-9,
           fixed_check=_roundtrip_check("wp-roundtrip-equi", wp_inverse_equianharmonic,
                                        EQUIANHARMONIC, _ROUNDTRIP_EQUI)),
    _entry("u0-digits", "u0 = i 1.402182105325..., real part exactly 0", 5e-12,
           fixed_check=_check_u0_digits),
    _entry("u0-wp-zero", "P(u0; 0,4) = 0", 1e-9, fixed_check=_check_u0_wp_zero),
    _entry("u0-fk-conventions", "elliptic-integral form of u0, convention search", 1e-9,
           informational=True, fixed_check=_check_u0_fk_conventions),
    _entry("eq6-oracle", "from-zero incomplete integrals vs quadrature (n=1)", 1e-9,
           fixed_check=_integral_table_check("eq6-oracle", _EQ6_ROWS)),
    _entry("eq7-oracle", "from-infinity incomplete integrals vs quadrature (n=1)", 1e-9,
           fixed_check=_integral_table_check("eq7-oracle", _EQ7_ROWS)),
    _entry("eq12-oracle", "general-n incomplete integrals vs quadrature", 1e-9,
           fixed_check=_integral_table_check("eq12-oracle", _EQ12_ROWS)),
    _entry("cover-cubic", "cover satisfies P'^2 = 4P^3 - (5/3)P +- (7/27)sqrt2", 1e-9,
           fixed_check=_check_cover_cubic),
    _entry("cover-factored", "cover cubic in factored e-root form", 1e-9,
           fixed_check=_check_cover_factored),
    _entry("du-reduction", "du/dx quadrature matches local P inversion", 1e-7,
           fixed_check=_check_du_reduction),
    _entry("U-derivative", "dU/dtau = z^m z' / sqrt(z^5 - z)", 1e-6,
           grid=(1.2j, 1.35j, 1.5j, 1.8j), point_check=_check_u_derivative),
    _entry("U-quadrature", "U(0, tau) equals the direct path integral", 1e-8,
           fixed_check=_check_u_quadrature),
    _entry("II-oracle", "second-kind increments match quadrature", 1e-8,
           fixed_check=_check_ii_oracle),
    _entry("III-oracle", "third-kind increments match quadrature", 1e-8,
           fixed_check=_check_iii_oracle),
)}


def identity_names() -> tuple[str, ...]:
    return tuple(REGISTRY)


def _status(entry: IdentityEntry, passed: bool) -> str:
    if entry.informational:
        return "informational"
    return "pass" if passed else "fail"


def run_identity_at(name: str, tau: complex, cfg: RunConfig) -> RunRecord:
    """Evaluate one grid identity at one point; out-of-domain points are
    reported as skipped."""
    entry = REGISTRY[name]
    if entry.point_check is None:
        raise DomainError(f"identity {name!r} has no tau-grid form")
    tol = cfg.tolerances.get(name, entry.tolerance)
    try:
        report = entry.point_check(tau, cfg, tol)
    except DomainNotSupported as exc:
        return RunRecord(name, complex(tau), None, tol, "skipped",
                         _echo_config(cfg, {"reason": str(exc)}))
    except AbeltauError as exc:
        # an evaluation error at a user-supplied point is a check failure,
        # not a crash of the whole stream
        return RunRecord(name, complex(tau), None, tol, "fail",
                         _echo_config(cfg, {"error": f"{type(exc).__name__}: {exc}"}))
    return RunRecord(name, report.tau_or_point, report.residual, report.tolerance,
                     _status(entry, report.passed), report.metadata)


def run_identity(name: str, cfg: RunConfig) -> list[RunRecord]:
    """Evaluate one identity over its (possibly overridden) grid or its
    fixed sample table."""
    entry = REGISTRY[name]
    tol = cfg.tolerances.get(name, entry.tolerance)
    records = []
    if entry.point_check is not None:
        grid = cfg.grids.get(name, entry.default_grid)
        for tau in grid:
            records.append(run_identity_at(name, tau, cfg))
    else:
        try:
            reports = entry.fixed_check(cfg, tol)
        except AbeltauError as exc:
            return [RunRecord(name, 0j, None, tol, "fail",
                              _echo_config(cfg, {"error": f"{type(exc).__name__}: {exc}"}))]
        for report in reports:
            records.append(RunRecord(name, report.tau_or_point, report.residual,
                                     report.tolerance, _status(entry, report.passed),
                                     report.metadata))
    return records
