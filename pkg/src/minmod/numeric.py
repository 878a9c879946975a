"""Double-precision checks on the torus: branch points, the omega and d-tau
formulas, transport of the singular-metric partition function, and the
modular S-transformation of the (2,5) characters.
"""
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations
import cmath
import math

import numpy as np

from . import kernels, modforms
from .characters import ModelSpec, character_product

C_25 = -22 / 5
TWO_PI_I = 2j * math.pi


class ConvergenceDomain(ValueError):
    pass


class DegenerateCubic(ArithmeticError):
    pass


class StepRejected(ArithmeticError):
    pass


class NonFiniteValue(ArithmeticError):
    pass


def _finite(z, what):
    if not cmath.isfinite(z):
        raise NonFiniteValue(f"{what} is not finite: {z}")
    return z


# -- q-expansion evaluation ------------------------------------------------

MIN_IM_TAU = 0.05
MAX_TERMS = 6000


def _terms(tau, growth):
    """Coefficient count so that ``n^growth |q|^n`` drops below 1e-17."""
    if tau.imag <= MIN_IM_TAU:
        raise ConvergenceDomain(f"Im(tau) = {tau.imag} is too small (need > {MIN_IM_TAU})")
    log_q = -2 * math.pi * tau.imag
    n = 8
    while growth * math.log(n + 1) + n * log_q > math.log(1e-17):
        n += 8
        if n > MAX_TERMS:
            raise ConvergenceDomain(f"q-expansion at tau = {tau} needs more than {MAX_TERMS} terms")
    return n


@lru_cache(maxsize=64)
def _eisenstein_floats(k, n):
    factor = float(-2 * k / modforms.bernoulli(k))
    sig = kernels.divisor_sums(k - 1, n)
    return tuple([1.0] + [factor * float(s) for s in sig[1:]])


@lru_cache(maxsize=64)
def _euler_floats(n):
    return tuple(float(c) for c in modforms.euler_coefficients(n))


@lru_cache(maxsize=256)
def _series_floats(kind, key, n):
    if kind == "char":
        nu, s, deriv = key
        f = character_product(ModelSpec(nu), s, n)
        if deriv:
            f = f.derive_q()
        return float(f.offset), tuple(float(c) for c in f.coefficient_list(n, 1))
    if kind == "theta":
        f = modforms.theta5(key, n)
        return float(f.offset), tuple(float(c) for c in f.coefficient_list(n, 1))
    if kind == "rcf":
        f = modforms.rcf(n)
        return float(f.offset), tuple(float(c) for c in f.coefficient_list(n, 1))
    raise KeyError(kind)


def _q(tau):
    return cmath.exp(TWO_PI_I * tau)


def eisenstein_value(k, tau):
    tau = complex(tau)
    n = _terms(tau, k)
    return _finite(kernels.horner(_eisenstein_floats(k, n), _q(tau)), f"E{k}")


def eta_value(tau):
    tau = complex(tau)
    n = _terms(tau, 1)
    return _finite(cmath.exp(TWO_PI_I * tau / 24) * kernels.horner(_euler_floats(n), _q(tau)), "eta")


def log_delta(tau):
    """``log Delta = 2 pi i tau + 24 sum log(1 - q^n)``, continuous in tau."""
    tau = complex(tau)
    q = _q(tau)
    n = _terms(tau, 0)
    total = TWO_PI_I * tau
    qn = 1
    for _ in range(n):
        qn *= q
        total += 24 * cmath.log(1 - qn)
    return total


def _offset_series(kind, key, tau, growth=2):
    tau = complex(tau)
    n = _terms(tau, growth)
    off, coeffs = _series_floats(kind, key, n)
    return cmath.exp(TWO_PI_I * off * tau) * kernels.horner(coeffs, _q(tau))


def eval_character(s, tau, nu=5, derivative=False):
    """Character value, or ``q d/dq`` of it when ``derivative`` is set."""
    return _finite(_offset_series("char", (nu, s, derivative), tau), f"character {s}")


def eval_form(name, tau):
    tau = complex(tau)
    key = name.lower()
    if key in ("e2", "e4", "e6", "e12"):
        return eisenstein_value(int(key[1:]), tau)
    if key == "eta":
        return eta_value(tau)
    if key == "delta":
        return _finite(cmath.exp(log_delta(tau)), "Delta")
    if key == "j":
        e4, e6 = eisenstein_value(4, tau), eisenstein_value(6, tau)
        return _finite(1728 * e4 ** 3 / (e4 ** 3 - e6 ** 2), "j")
    if key in ("theta51", "theta52"):
        return _finite(_offset_series("theta", int(key[-1]), tau), name)
    if key == "rcf":
        return _finite(_offset_series("rcf", None, tau), name)
    raise KeyError(f"unknown form {name!r}")


# -- branch points ---------------------------------------------------------

@dataclass(frozen=True)
class TorusFrame:
    tau: complex
    lam: complex
    a: complex
    b: complex
    roots: tuple
    delta0: complex
    invariants: dict = field(default_factory=dict, compare=False)

    @property
    def det_v3(self):
        x1, x2, x3 = self.roots
        return (x1 - x2) * (x2 - x3) * (x3 - x1)


def cubic_coefficients(tau, lam=1.0):
    e4, e6 = eisenstein_value(4, tau), eisenstein_value(6, tau)
    a = -(math.pi ** 4 / 3) * lam ** 4 * e4
    b = -(2 * math.pi ** 6 / 27) * lam ** 6 * e6
    return a, b, e4, e6


def _track(roots, previous):
    if previous is None:
        return tuple(sorted(roots, key=lambda z: (round(z.real, 12), z.imag)))
    best = min(permutations(roots),
               key=lambda p: sum(abs(x - y) for x, y in zip(p, previous)))
    return tuple(best)


def frame_from_tau(tau, lam=1.0, previous=None):
    """Branch points of ``4(x^3 + a x + b)`` for modulus ``tau`` and scale ``lam``."""
    tau, lam = complex(tau), complex(lam)
    if lam == 0:
        raise ValueError("lambda must be nonzero")
    a, b, e4, e6 = cubic_coefficients(tau, lam)
    delta0 = -4 * a ** 3 - 27 * b ** 2
    scale = max(abs(a) ** 1.5, abs(b), 1e-300)
    if abs(delta0) < 1e-20 * scale ** 2:
        raise DegenerateCubic(f"discriminant {delta0} vanishes at tau = {tau}")
    roots = [complex(r) for r in np.roots([1, 0, a, b])]
    prev = previous.roots if isinstance(previous, TorusFrame) else previous
    roots = _track(roots, prev)
    from_forms = (4 * math.pi ** 12 / 27) * lam ** 12 * (e4 ** 3 - e6 ** 2)
    biggest = max(abs(r) for r in roots)
    probe = [0.37 + 0.11j, -1.3 + 0.4j, 2.2 - 0.7j]
    cubic_err = max(
        abs(4 * (x - roots[0]) * (x - roots[1]) * (x - roots[2]) - 4 * (x ** 3 + a * x + b))
        / max(abs(4 * (x ** 3 + a * x + b)), 1e-300)
        for x in (p * biggest for p in probe))
    invariants = {
        "sum_roots": abs(sum(roots)) / biggest,
        "cubic_rel_err": cubic_err,
        "delta0_rel_err": abs(delta0 - from_forms) / abs(delta0),
    }
    return TorusFrame(tau, lam, a, b, roots, delta0, invariants)


def _root_path(tau, h, lam, direction=1.0):
    """Frames at ``tau - h d``, ``tau``, ``tau + h d`` with consistent root labels."""
    mid = frame_from_tau(tau, lam)
    lo = frame_from_tau(tau - h * direction, lam, previous=mid)
    hi = frame_from_tau(tau + h * direction, lam, previous=mid)
    return lo, mid, hi


def root_velocities(tau, h=1e-5, lam=1.0):
    lo, mid, hi = _root_path(tau, h, lam)
    xi = tuple((p - m) / (2 * h) for p, m in zip(hi.roots, lo.roots))
    return mid, xi


def _det_quotients(X, xi):
    x1, x2, x3 = X
    v = (x1 - x2) * (x2 - x3) * (x3 - x1)
    m30 = np.array([X, [1, 1, 1], xi], dtype=complex)
    m31 = np.array([X, [1, 1, 1], [e * x for e, x in zip(xi, X)]], dtype=complex)
    return np.linalg.det(m30) / v, np.linalg.det(m31) / v


def p_prime(X, s):
    out = 4
    for j in range(3):
        if j != s:
            out *= X[s] - X[j]
    return out


def omega_formula_details(tau, h=1e-5, lam=1.0):
    tau = complex(tau)
    mid, xi = root_velocities(tau, h, lam)
    _, q31 = _det_quotients(mid.roots, xi)
    omega_det = -3 * q31
    lo, _, hi = _root_path(tau, h, lam)
    omega_log = 0.5 * cmath.log(hi.det_v3 ** 2 / lo.det_v3 ** 2) / (2 * h)
    expected = 1j * math.pi * eisenstein_value(2, tau)
    # lambda direction at fixed tau
    t = h
    up = frame_from_tau(tau, lam * math.exp(t))
    down = frame_from_tau(tau, lam * math.exp(-t))
    dlog = cmath.log(up.delta0 / down.delta0) / (2 * t)
    return {
        "tau": tau,
        "omega_determinant": omega_det,
        "omega_log_delta0": omega_log,
        "pi_i_E2": expected,
        "residual_determinant": abs(omega_det - expected) / abs(expected),
        "residual_log_delta0": abs(omega_log - expected) / abs(expected),
        "dlog_delta0_dlog_lambda": dlog,
        "residual_lambda": abs(dlog - 12) / 12,
        "omega_lambda_coefficient": dlog / 2,
    }


def check_omega_formula(tau, h=1e-5, lam=1.0):
    d = omega_formula_details(tau, h, lam)
    return max(d["residual_determinant"], d["residual_log_delta0"])


def dtau_formula_details(tau, h=1e-5, lam=1.0):
    tau = complex(tau)
    mid, xi = root_velocities(tau, h, lam)
    X = mid.roots
    q30_sum = -4 * sum(xi[s] / p_prime(X, s) for s in range(3))
    q30_det, _ = _det_quotients(X, xi)
    value = -1j * math.pi * lam ** 2 * q30_sum
    # chain rule: 9b da - 6a db over Delta0, with Serre-derivative formulas
    e2, e4, e6 = (eisenstein_value(k, tau) for k in (2, 4, 6))
    de4 = TWO_PI_I * (e2 * e4 - e6) / 3
    de6 = TWO_PI_I * (e2 * e6 - e4 ** 2) / 2
    da = -(math.pi ** 4 / 3) * lam ** 4 * de4
    db = -(2 * math.pi ** 6 / 27) * lam ** 6 * de6
    chain = -1j * math.pi * lam ** 2 * (9 * mid.b * da - 6 * mid.a * db) / mid.delta0
    return {
        "tau": tau,
        "value": value,
        "residual": abs(value - 1),
        "determinant_vs_sum": abs(q30_det - q30_sum) / abs(q30_sum),
        "chain_rule_value": chain,
        "residual_chain_rule": abs(chain - 1),
    }


def check_dtau_formula(tau, h=1e-5, lam=1.0):
    return dtau_formula_details(tau, h, lam)["residual"]


def fd_order(check, tau, h=1e-2):
    """Ratio of finite-difference residuals at ``h`` and ``h/2`` (about 4 for O(h^2))."""
    r1, r2 = check(tau, h), check(tau, h / 2)
    return r1 / r2 if r2 else math.inf


# -- transport of the singular-metric zero-point function ---------------------

@dataclass
class VariationState:
    one: complex
    a1: complex

    def as_array(self):
        return np.array([self.one, self.a1], dtype=complex)


def delta0_power(tau, lam=1.0, c=C_25):
    """``Delta0^(-c/48)`` on the branch continuous in tau (lambda real, positive)."""
    lam = float(abs(lam))
    log_d0 = math.log(256 * math.pi ** 12 * lam ** 12) + log_delta(tau)
    return cmath.exp(-c / 48 * log_d0)


def closed_form_state(s, tau, lam=1.0, c=C_25):
    """``<1>_sing = Delta0^(-c/48) <1>_flat`` and the matching ``A1``."""
    tau = complex(tau)
    pref = delta0_power(tau, lam, c)
    f = eval_character(s, tau)
    fprime = TWO_PI_I * eval_character(s, tau, derivative=True)
    a1 = 8j * math.pi * lam ** 2 * pref * fprime
    return VariationState(pref * f, a1)


def variation_rhs(tau, y, lam=1.0, c=C_25):
    """``d/dtau`` of ``(<1>, A1)`` with omega and the determinant quotient pulled back."""
    e2 = eisenstein_value(2, tau)
    a = -(math.pi ** 4 / 3) * lam ** 4 * eisenstein_value(4, tau)
    omega = 1j * math.pi * e2
    q30 = 1 / (-1j * math.pi * lam ** 2)
    csing = (-c / 15) * a
    one, a1 = y
    return np.array([
        -(c / 24) * omega * one - a1 * q30 / 8,
        -((c - 8) / 24) * omega * a1 + csing * one * q30,
    ])


def _rk4(fun, t, y, h):
    k1 = fun(t, y)
    k2 = fun(t + h / 2, y + h / 2 * k1)
    k3 = fun(t + h / 2, y + h / 2 * k2)
    k4 = fun(t + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


@dataclass
class IntegrationResult:
    state: VariationState
    steps: int
    rejected: int


def integrate_variation_system(tau0, tau1, initial, lam=1.0, c=C_25, density=200,
                               tol=1e-8, min_step=1e-7):
    """RK4 with step doubling along the straight path from ``tau0`` to ``tau1``."""
    tau0, tau1 = complex(tau0), complex(tau1)
    span = tau1 - tau0
    if min(tau0.imag, tau1.imag) <= MIN_IM_TAU:
        raise ConvergenceDomain("path leaves the region Im(tau) > 0.05")

    def fun(t, y):
        return span * variation_rhs(tau0 + t * span, y, lam, c)

    y = initial.as_array()
    if not np.any(y):
        return IntegrationResult(VariationState(0j, 0j), 0, 0)
    t = 0.0
    h = 1.0 / max(1, math.ceil(density * abs(span)))
    steps = rejected = 0
    while t < 1.0:
        h = min(h, 1.0 - t)
        full = _rk4(fun, t, y, h)
        half = _rk4(fun, t + h / 2, _rk4(fun, t, y, h / 2), h / 2)
        err = np.max(np.abs(half - full)) / 15 / max(1.0, np.max(np.abs(half)))
        if err > tol:
            rejected += 1
            h /= 2
            if h < min_step:
                raise StepRejected(f"local error {err:.2e} above {tol:.0e} at t = {t:.6f}")
            continue
        # Richardson-extrapolated update
        y = half + (half - full) / 15
        if not np.all(np.isfinite(y)):
            raise NonFiniteValue("integration produced a non-finite state")
        if abs(y[0]) < 1e-300:
            raise ArithmeticError("zero-point function vanished along the path")
        t += h
        steps += 1
        if err < tol / 50:
            h *= 2
    return IntegrationResult(VariationState(complex(y[0]), complex(y[1])), steps, rejected)


def transport_check(s, tau0=1.5j, tau1=0.9j, lam=1.0, density=200):
    """Integrate from the closed form at ``tau0`` and compare at ``tau1``."""
    start = closed_form_state(s, tau0, lam)
    result = integrate_variation_system(tau0, tau1, start, lam, density=density)
    target = closed_form_state(s, tau1, lam)
    return {
        "s": s,
        "final": result.state,
        "expected": target,
        "rel_err_one": abs(result.state.one - target.one) / abs(target.one),
        "rel_err_a1": abs(result.state.a1 - target.a1) / abs(target.a1),
        "steps": result.steps,
        "calibration": "A1 calibrated at tau0",
    }


# -- modular S transformation ---------------------------------------------

def rotation_s_matrix():
    s1, s2 = math.sin(math.pi / 5), math.sin(2 * math.pi / 5)
    return 2 / math.sqrt(5) * np.array([[s1, -s2], [s2, s1]])


def symmetric_s_matrix():
    s1, s2 = math.sin(math.pi / 5), math.sin(2 * math.pi / 5)
    return 2 / math.sqrt(5) * np.array([[-s2, s1], [s1, s2]])


def character_vector(tau):
    return np.array([eval_character(1, tau), eval_character(2, tau)])


def smatrix_residual(matrix, tau):
    lhs = character_vector(-1 / complex(tau))
    rhs = matrix @ character_vector(tau)
    return float(np.max(np.abs(lhs - rhs)) / np.max(np.abs(lhs)))


def check_smatrix(ts=(0.8, 1.0, 1.25)):
    taus = [1j * t for t in ts]
    rotation = max(smatrix_residual(rotation_s_matrix(), t) for t in taus)
    symmetric = max(smatrix_residual(symmetric_s_matrix(), t) for t in taus)
    S = symmetric_s_matrix()
    v = character_vector(1j)
    norm = max(
        abs(np.sum(np.abs(character_vector(-1 / t)) ** 2) - np.sum(np.abs(character_vector(t)) ** 2))
        / np.sum(np.abs(character_vector(t)) ** 2)
        for t in taus + [1.3j, 0.2 + 1.1j])
    return {
        "rotation_residual": rotation,
        "symmetric_residual": symmetric,
        "rotation_det": float(np.linalg.det(rotation_s_matrix())),
        "symmetric_det": float(np.linalg.det(S)),
        "involution_residual": float(np.max(np.abs(S @ S - np.eye(2)))),
        "fixed_point_residual": float(np.max(np.abs(S @ v - v)) / np.max(np.abs(v))),
        "norm_invariance": float(norm),
    }


def check_t_phases(tau=0.2 + 1.1j):
    """``<1>_s(tau + 1) = exp(2 pi i kappa_s) <1>_s(tau)``."""
    spec = ModelSpec(5)
    out = []
    for s in (1, 2):
        phase = cmath.exp(TWO_PI_I * float(spec.kappa(s)))
        out.append(abs(eval_character(s, tau + 1) - phase * eval_character(s, tau)))
    return max(out)


def integrate_report(s, tau0=1.5j, tau1=0.9j, density=200):
    """``transport_check`` with plain-number fields, for reports."""
    d = transport_check(s, tau0, tau1, density=density)
    for key in ("final", "expected"):
        state = d.pop(key)
        d[f"{key}_one"] = state.one
        d[f"{key}_a1"] = state.a1
    d["from"], d["to"] = complex(tau0), complex(tau1)
    return d
