"""tau-representations of the base Abelian integrals, the bracket-Schwarzian
residual verifier, and the Jacobi-Legendre covering algebra of the genus-2
curve w^2 = z^5 - z.

Branch policy: every square root of a theta quotient goes through
sqrt_theta_ratio (a ratio of holomorphic series, hence tau-continuous); all
remaining roots are principal, with the +- cover sign an explicit parameter.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .errors import CriticalPointError, DomainError, DomainNotSupported, PoleError
from .hypergeom import _f21
from .modular import (
    DEFAULT_TRUNCATION,
    TruncationPolicy,
    hauptmodul_equianharmonic,
    hauptmodul_lemniscatic,
    theta2,
    theta3,
    _tau_value,
)
from .numerics import DEFAULT_STENCIL, DerivativeStencil, holomorphic_derivatives, principal_power
from .weier import EllipticInvariants, u0_constant, wp

__all__ = [
    "SchwarzEquation",
    "CurvePoint",
    "CoverConstants",
    "VerificationReport",
    "LEMNISCATIC_CHI_EQUATION",
    "EQUIANHARMONIC_Z_EQUATION",
    "eq5_equation",
    "schwarz_stencil",
    "bracket_schwarzian",
    "u_lemniscatic",
    "u_equianharmonic_root",
    "u_equianharmonic_rootfree",
    "u_hyperelliptic",
    "schwarz_residual",
    "covering_map",
    "reduce_differential",
    "k_pm",
]

# Convergence predicates of the shipped uniformizers.  Points outside are
# refused, never extrapolated.
LEMNISCATIC_PREDICATE_MODULUS = 1.0 / 0.95          # |chi(tau)| must exceed this
EQUIANHARMONIC_ROOT_PREDICATE_MODULUS = 0.95 ** (-1.0 / 3.0)
ROOTFREE_PREDICATE_CUBE = 0.95                      # |z(tau)|^3 at most this
HYPERELLIPTIC_PREDICATE_RATIO = 0.95                # |theta2^4/theta3^4| at most this


def _poly_eval(coeffs: tuple[complex, ...], x: complex) -> complex:
    acc = 0.0 + 0.0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class SchwarzEquation:
    """A named right-hand side Q for the bracket equation [x, tau] = Q(x).

    Either a rational Q given by ascending numerator/denominator coefficients,
    or the torus form Q(u) = -2 P(2u; g2, g3) selected by invariants_for_eq5.
    """

    id: str
    q_num: tuple[complex, ...] | None = None
    q_den: tuple[complex, ...] | None = None
    invariants_for_eq5: EllipticInvariants | None = None
    convergence_predicate: Callable[[complex], bool] = lambda tau: True
    singular_set: tuple[complex, ...] = ()

    def __post_init__(self):
        rational = self.q_num is not None and self.q_den is not None
        if rational == (self.invariants_for_eq5 is not None):
            raise DomainError(
                "SchwarzEquation needs either rational coefficients or eq-5 invariants"
            )

    def q_value(self, x: complex) -> complex:
        x = complex(x)
        if self.invariants_for_eq5 is not None:
            return -2.0 * wp(2.0 * x, self.invariants_for_eq5)
        for s in self.singular_set:
            if x == s:
                raise PoleError(f"Q({self.id}) is singular at {s!r}")
        return _poly_eval(self.q_num, x) / _poly_eval(self.q_den, x)


# [x,tau] = -(1/2)(x^2+1)^2 / (x^3-x)^2, singular at the branch points 0, +-1
LEMNISCATIC_CHI_EQUATION = SchwarzEquation(
    id="lemniscatic-chi",
    q_num=(-0.5, 0.0, -1.0, 0.0, -0.5),
    q_den=(0.0, 0.0, 1.0, 0.0, -2.0, 0.0, 1.0),
    singular_set=(0.0, 1.0, -1.0),
)

# [z,tau] = -(1/2) z(z^3+8) / (z^3-1)^2, singular at the cube roots of unity
EQUIANHARMONIC_Z_EQUATION = SchwarzEquation(
    id="equianharmonic-z",
    q_num=(0.0, -4.0, 0.0, 0.0, -0.5),
    q_den=(1.0, 0.0, 0.0, -2.0, 0.0, 0.0, 1.0),
    singular_set=(1.0, cmath.exp(2j * math.pi / 3), cmath.exp(-2j * math.pi / 3)),
)


def eq5_equation(inv: EllipticInvariants,
                 predicate: Callable[[complex], bool],
                 id: str) -> SchwarzEquation:
    """Torus-form equation [u, tau] = -2 P(2u; g2, g3)."""
    return SchwarzEquation(id=id, invariants_for_eq5=inv, convergence_predicate=predicate)


@dataclass(frozen=True)
class CurvePoint:
    """A point (x, y) on w^2 = z^5 - z with the +-1 cover-sheet tag."""

    x: complex
    y: complex
    sign: int = 1

    def __post_init__(self):
        x, y = complex(self.x), complex(self.y)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        if self.sign not in (1, -1):
            raise DomainError(f"cover sign must be +1 or -1, got {self.sign!r}")
        quintic = x**5 - x
        if abs(y * y - quintic) > 1e-10 * max(1.0, abs(quintic)):
            raise DomainError(f"(x, y) = ({x!r}, {y!r}) is not on w^2 = z^5 - z")


@dataclass(frozen=True)
class CoverConstants:
    """Constants of the Jacobi-Legendre cover of y^2 = x(x-1)(x-A)(x-B)(x-AB).

    The printed cover mixes "sqrt(AB)" and "sqrt(A) sqrt(B)"; with principal
    roots those differ by a sign for the shipped parameters (A, B) = (-1, i),
    and only the product sqrt(A)*sqrt(B), used consistently in both P' and
    du, satisfies the cubic identity (verified numerically and by the chain
    rule).  That product is what s_ab stores.
    """

    A: complex
    B: complex
    k_plus: complex
    k_minus: complex
    e_plus: tuple[complex, complex, complex]
    e_minus: tuple[complex, complex, complex]
    sqrt_A: complex
    sqrt_B: complex
    s_ab: complex
    sqrt_one_minus: complex  # sqrt((1-A)(1-B)), principal

    @classmethod
    def from_parameters(cls, A: complex, B: complex) -> "CoverConstants":
        A, B = complex(A), complex(B)
        kp, km = k_pm(A, B)
        sqrt_A = cmath.sqrt(A)
        sqrt_B = cmath.sqrt(B)

        def roots(k: complex):
            # images of the six branch points: {0, inf} -> e1, {1, AB} -> e2,
            # {A, B} -> the lattice point; e3 closes the depressed cubic
            return (-(k + 1.0) / 3.0, (2.0 * k - 1.0) / 3.0, (2.0 - k) / 3.0)

        return cls(
            A=A, B=B, k_plus=kp, k_minus=km,
            e_plus=roots(kp), e_minus=roots(km),
            sqrt_A=sqrt_A, sqrt_B=sqrt_B, s_ab=sqrt_A * sqrt_B,
            sqrt_one_minus=cmath.sqrt((1.0 - A) * (1.0 - B)),
        )

    def branch(self, sign: int) -> tuple[complex, complex, tuple[complex, complex, complex]]:
        """(squared root sum C, k, e-roots) for the requested sheet."""
        c = (self.sqrt_A + sign * self.sqrt_B) ** 2
        if sign == 1:
            return c, self.k_plus, self.e_plus
        return c, self.k_minus, self.e_minus

    def quotient_invariants(self, sign: int) -> EllipticInvariants:
        e1, e2, e3 = self.branch(sign)[2]
        g2 = -4.0 * (e1 * e2 + e1 * e3 + e2 * e3)
        g3 = 4.0 * e1 * e2 * e3
        return EllipticInvariants(g2, g3)


@dataclass(frozen=True)
class VerificationReport:
    """One identity checked at one sample point."""

    identity_id: str
    tau_or_point: complex
    residual: float
    tolerance: float
    passed: bool
    metadata: Mapping[str, object] = field(default_factory=dict)

    def __post_init__(self):
        if not (self.tolerance > 0):
            raise DomainError("tolerance must be positive")
        if self.residual < 0 or not math.isfinite(self.residual):
            raise DomainError("residual must be a finite nonnegative real")
        if self.passed != (self.residual <= self.tolerance):
            raise DomainError("passed flag must equal residual <= tolerance")

    @classmethod
    def build(cls, identity_id: str, point: complex, residual: float,
              tolerance: float, metadata: Mapping[str, object] | None = None):
        return cls(identity_id, complex(point), float(residual), float(tolerance),
                   float(residual) <= float(tolerance), dict(metadata or {}))


def schwarz_stencil(tau: complex, nodes: int = 64) -> DerivativeStencil:
    """Default Schwarzian stencil: radius min(1e-2, Im(tau)/10), keeping the
    sampling circle well inside the half-plane and the convergence regions of
    the shipped grids."""
    t = complex(tau)
    return DerivativeStencil(radius=min(1e-2, t.imag / 10.0), nodes=nodes)


def bracket_schwarzian(f: Callable[[complex], complex], tau0: complex,
                       stencil: DerivativeStencil = DEFAULT_STENCIL) -> complex:
    """[f, tau] = f'''/f'^3 - (3/2) f''^2/f'^4 at tau0, i.e. the classical
    Schwarzian {f, tau} divided by f'(tau0)^2.  Vanishes on Moebius maps."""
    d1, d2, d3 = holomorphic_derivatives(f, tau0, 3, stencil)
    if abs(d1) < 1e-10:
        raise CriticalPointError(f"f'({tau0!r}) ~ 0; bracket undefined at a critical point")
    return d3 / d1**3 - 1.5 * d2 * d2 / d1**4


def lemniscatic_predicate(tau: complex) -> bool:
    return abs(hauptmodul_lemniscatic(tau)) > LEMNISCATIC_PREDICATE_MODULUS


def equianharmonic_root_predicate(tau: complex) -> bool:
    return abs(hauptmodul_equianharmonic(tau)) > EQUIANHARMONIC_ROOT_PREDICATE_MODULUS


def equianharmonic_rootfree_predicate(tau: complex) -> bool:
    return abs(hauptmodul_equianharmonic(tau)) ** 3 <= ROOTFREE_PREDICATE_CUBE


def hyperelliptic_predicate(tau: complex) -> bool:
    lam = theta2(tau) ** 4 / theta3(tau) ** 4
    return abs(lam) <= HYPERELLIPTIC_PREDICATE_RATIO


def u_lemniscatic(tau, policy: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """u(tau) = (theta3/theta2) 2F1(1/2, 1/4; 5/4 | theta3^4/theta2^4),
    the holomorphic integral of y^2 = 4x^3 - 4x as a function of tau.

    Equals wp_inverse_lemniscatic(hauptmodul_lemniscatic(tau)) where both are
    defined; requires |chi(tau)| > 1/0.95.
    """
    t = _tau_value(tau)
    t2 = theta2(t, policy)
    t3 = theta3(t, policy)
    chi = t2 * t2 / (t3 * t3)
    if not abs(chi) > LEMNISCATIC_PREDICATE_MODULUS:
        raise DomainNotSupported(
            f"|chi(tau)| = {abs(chi):g} <= {LEMNISCATIC_PREDICATE_MODULUS:g} at tau = {t!r}"
        )
    ratio = t3 / t2
    return ratio * _f21(0.5, 0.25, 1.25, ratio**4, policy)


def u_equianharmonic_root(tau, policy: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """u(tau) = z(tau)^(-1/2) 2F1(1/2, 1/6; 7/6 | z(tau)^-3) with the
    equianharmonic Hauptmodul z; principal square root."""
    t = _tau_value(tau)
    z = hauptmodul_equianharmonic(t, policy)
    if not abs(z) > EQUIANHARMONIC_ROOT_PREDICATE_MODULUS:
        raise DomainNotSupported(
            f"|z(tau)| = {abs(z):g} <= {EQUIANHARMONIC_ROOT_PREDICATE_MODULUS:g} at tau = {t!r}"
        )
    return principal_power(z, -0.5) * _f21(0.5, 1.0 / 6.0, 7.0 / 6.0, z**-3, policy)


def u_equianharmonic_rootfree(tau, policy: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """Root-free sibling of u_equianharmonic_root on the complementary region:

        u(tau) = u0 + (i/2) z(tau) 2F1(1/2, 1/3; 4/3 | z(tau)^3),  |z|^3 <= 0.95.
    """
    t = _tau_value(tau)
    z = hauptmodul_equianharmonic(t, policy)
    if abs(z) ** 3 > ROOTFREE_PREDICATE_CUBE:
        raise DomainNotSupported(
            f"|z(tau)|^3 = {abs(z) ** 3:g} > {ROOTFREE_PREDICATE_CUBE:g} at tau = {t!r}"
        )
    return u0_constant() + 0.5j * z * _f21(0.5, 1.0 / 3.0, 4.0 / 3.0, z**3, policy)


def u_hyperelliptic(m: int, tau, policy: TruncationPolicy = DEFAULT_TRUNCATION) -> complex:
    """The base Abelian integrals of w^2 = z^5 - z as functions of tau:

        U(m, tau) = (2 sqrt(2) i/(2m+1)) theta2^(m+1) / (theta3^m theta2(tau/2))
                    * 2F1(1/2, m/4 + 1/8; m/4 + 9/8 | theta2^4/theta3^4)

    m = 0, 1 are the holomorphic pair, m = 2, 3 the meromorphic ones.
    """
    if not isinstance(m, int) or not (0 <= m <= 3):
        raise DomainError(f"m must be an integer in 0..3, got {m!r}")
    t = _tau_value(tau)
    t2 = theta2(t, policy)
    t3 = theta3(t, policy)
    lam = (t2 / t3) ** 4
    if abs(lam) > HYPERELLIPTIC_PREDICATE_RATIO:
        raise DomainNotSupported(
            f"|theta2^4/theta3^4| = {abs(lam):g} > {HYPERELLIPTIC_PREDICATE_RATIO:g} at tau = {t!r}"
        )
    prefactor = (2.0 * math.sqrt(2.0) * 1j / (2 * m + 1)) \
        * t2 ** (m + 1) / (t3**m * theta2(0.5 * t, policy))
    return prefactor * _f21(0.5, 0.25 * m + 0.125, 0.25 * m + 1.125, lam, policy)


def schwarz_residual(eq: SchwarzEquation,
                     candidate: Callable[[complex], complex],
                     tau,
                     stencil: DerivativeStencil | None = None,
                     tolerance: float = 1e-7) -> VerificationReport:
    """|[candidate, tau] - Q(candidate(tau))| packaged as a report.

    The equation's convergence predicate gates the evaluation point; the
    stencil defaults to schwarz_stencil(tau).
    """
    t = _tau_value(tau)
    if not eq.convergence_predicate(t):
        raise DomainNotSupported(f"tau = {t!r} violates the predicate of {eq.id!r}")
    if stencil is None:
        stencil = schwarz_stencil(t)
    bracket = bracket_schwarzian(candidate, t, stencil)
    residual = abs(bracket - eq.q_value(candidate(t)))
    return VerificationReport.build(
        eq.id, t, residual, tolerance,
        metadata={"stencil_radius": stencil.radius, "stencil_nodes": stencil.nodes},
    )


def covering_map(p: CurvePoint, c: CoverConstants) -> tuple[complex, complex]:
    """(P(u), P'(u)) of the curve point under the Jacobi-Legendre cover:

        P  = -C x/((x-A)(x-B)) - (k+1)/3
        P' = 2C/sqrt((1-A)(1-B)) * (x + sign * sqrt(A) sqrt(B)) * y
             / ((x-A)^2 (x-B)^2),        C = (sqrt(A) + sign sqrt(B))^2.
    """
    x, y = p.x, p.y
    if x == c.A or x == c.B:
        raise PoleError(f"cover has a pole over x = {x!r}")
    C, k, _ = c.branch(p.sign)
    denom = (x - c.A) * (x - c.B)
    big_p = -C * x / denom - (k + 1.0) / 3.0
    big_p_prime = 2.0 * C / c.sqrt_one_minus * (x + p.sign * c.s_ab) * y / denom**2
    return big_p, big_p_prime


def reduce_differential(p: CurvePoint, c: CoverConstants) -> complex:
    """du/dx = (1/2) sqrt((1-A)(1-B)) (x - sign * sqrt(A) sqrt(B)) / y,
    the pullback factor of the holomorphic differential du to the curve."""
    if p.y == 0:
        raise PoleError("du/dx has a pole at a branch point (y = 0)")
    return 0.5 * c.sqrt_one_minus * (p.x - p.sign * c.s_ab) / p.y


def k_pm(A: complex, B: complex) -> tuple[complex, complex]:
    """k_+- = -(sqrt(A) +- sqrt(B))^2 / ((1-A)(1-B)), principal roots."""
    A, B = complex(A), complex(B)
    if A == 1 or B == 1:
        raise DomainError("k_pm undefined for A = 1 or B = 1")
    sa, sb = cmath.sqrt(A), cmath.sqrt(B)
    denom = (1.0 - A) * (1.0 - B)
    return (-((sa + sb) ** 2) / denom, -((sa - sb) ** 2) / denom)
