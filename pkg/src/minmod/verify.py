"""Verification suites: named checks, a worker pool and a stable report schema."""
import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from . import characters, hypergeom, modforms, numeric, ode, symident
from .qseries import DEFAULT_TRUNC, QSeries

SAMPLE_TAUS = (0.1 + 0.8j, -0.2 + 0.95j, 0.3 + 1.1j, 0.05 + 1.3j, -0.35 + 1.5j)
NUMERIC_TOL = 1e-6
SMATRIX_TOL = 1e-7
KERNEL_STEPS = 50
NUS = (3, 5, 7, 9, 11, 13)


@dataclass
class Config:
    truncation: int = DEFAULT_TRUNC
    fd_step: float = 1e-5
    rk4_density: int = 200
    output: str = "json"

    @classmethod
    def from_env(cls, **overrides):
        cfg = cls(truncation=int(os.environ.get("MINMOD_TRUNC", DEFAULT_TRUNC)))
        for k, v in overrides.items():
            if v is not None:
                setattr(cfg, k, v)
        return cfg


@dataclass
class CheckResult:
    id: str
    paper_ref: str
    status: str
    residual: float = None
    detail: str = ""


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self):
        return all(c.status == "pass" for c in self.checks)

    def to_dict(self):
        return {"suite": self.suite, "checks": [asdict(c) for c in self.checks],
                "wall_time": self.wall_time}


@dataclass(frozen=True)
class Check:
    id: str
    label: str
    run: object  # Config -> (ok, residual, detail)


def _exact(ok, detail=""):
    return bool(ok), None, detail


def _bounded(residual, tol, detail=""):
    residual = float(residual)
    return residual < tol, residual, detail or f"tolerance {tol:g}"


# -- qseries --------------------------------------------------------------

def _random_series(rng, trunc, offset=0, unit=False):
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(trunc)]
    coeffs[0] = Fraction(1) if unit else coeffs[0] or Fraction(1)
    return QSeries(coeffs, offset, 1, trunc)


def _qseries_checks():
    def triple(cfg):
        rng = random.Random(0)
        n = min(cfg.truncation, 32)
        return [_random_series(rng, n, off, unit=True) for off in (0, Fraction(1, 3), -2)]

    def assoc(cfg):
        a, b, c = triple(cfg)
        return _exact(((a * b) * c - a * (b * c)).is_zero())

    def distrib(cfg):
        a, b, c = triple(cfg)
        return _exact((a * (b + c) - (a * b + a * c)).is_zero())

    def inverse(cfg):
        a, b, _ = triple(cfg)
        return _exact(all((x * x.invert() - QSeries.one(x.trunc)).is_zero() for x in (a, b)))

    def root(cfg):
        a, _, _ = triple(cfg)
        r = a.pow_rational(Fraction(1, 3))
        return _exact((r * r * r - a).is_zero())

    def leibniz(cfg):
        a, b, _ = triple(cfg)
        return _exact(((a * b).derive_q() - (a.derive_q() * b + a * b.derive_q())).is_zero())

    def geometric(cfg):
        n = cfg.truncation
        g = QSeries([1, -1], 0, 1, n).invert()
        return _exact(g.coeffs == tuple([Fraction(1)] * n))

    return [
        Check("associativity", "series ring axioms", assoc),
        Check("distributivity", "series ring axioms", distrib),
        Check("inverse", "series ring axioms", inverse),
        Check("cube_root", "rational powers", root),
        Check("leibniz", "q d/dq is a derivation", leibniz),
        Check("geometric", "1/(1-q)", geometric),
    ]


# -- modular forms ------------------------------------------------------

def _modforms_checks():
    def e4(cfg):
        n = cfg.truncation
        e4, e6 = modforms.eisenstein(4, n), modforms.eisenstein(6, n)
        return _exact((modforms.serre(e4, 4) + e6.scale(Fraction(1, 3))).is_zero())

    def e6(cfg):
        n = cfg.truncation
        e4, e6 = modforms.eisenstein(4, n), modforms.eisenstein(6, n)
        return _exact((modforms.serre(e6, 6) + (e4 * e4).scale(Fraction(1, 2))).is_zero())

    def e12(cfg):
        n = cfg.truncation
        e4, e6 = modforms.eisenstein(4, n), modforms.eisenstein(6, n)
        e12 = modforms.eisenstein(12, n)
        return _exact((e12.scale(691) - (e4 ** 3).scale(441) - (e6 * e6).scale(250)).is_zero())

    def disc(cfg):
        n = cfg.truncation
        e4, e6 = modforms.eisenstein(4, n), modforms.eisenstein(6, n)
        return _exact((e4 ** 3 - e6 * e6 - modforms.delta(n).scale(1728)).is_zero())

    def icosa(cfg):
        n = max(40, cfg.truncation)
        res = modforms.icosahedral_residual(n)
        return _exact(res.is_zero() and res.prec >= 40, f"trusted through q^{res.prec}")

    def thetas(cfg):
        n = cfg.truncation
        eta = modforms.eta(n)
        ok = all((modforms.theta5(k, n) / eta - characters.character(5, s, n)).is_zero()
                 for k, s in ((2, 1), (1, 2)))
        return _exact(ok, "Theta52/eta is the s=1 character, Theta51/eta the s=2 one")

    def ratio(cfg):
        n = cfg.truncation
        r = modforms.theta5(2, n) / modforms.theta5(1, n)
        chi = characters.character(5, 1, n) / characters.character(5, 2, n)
        return _exact((r - modforms.rcf(n)).is_zero() and (chi - modforms.rcf(n)).is_zero())

    def fraction(cfg):
        n = min(cfg.truncation, 40)
        return _exact((modforms.rcf(n) - modforms.rcf_continued_fraction(n, n)).is_zero())

    return [
        Check("serre_E4", "Serre derivative of E4", e4),
        Check("serre_E6", "Serre derivative of E6", e6),
        Check("E12_basis", "691 E12 = 441 E4^3 + 250 E6^2", e12),
        Check("discriminant", "E4^3 - E6^2 = 1728 Delta", disc),
        Check("icosahedral", "icosahedral equation for r^5 and j", icosa),
        Check("theta_quotients", "theta quotients are the (2,5) characters", thetas),
        Check("rcf_ratio", "character ratio is the Rogers-Ramanujan continued fraction", ratio),
        Check("rcf_fraction", "product form equals the continued fraction", fraction),
    ]


# -- characters -----------------------------------------------------------

def _characters_checks():
    out = []
    for nu in NUS:
        def run(cfg, nu=nu):
            spec = characters.ModelSpec(nu)
            n = cfg.truncation
            ok = all((characters.character_sum(spec, s, n) - characters.character_product(spec, s, n)).is_zero()
                     for s in range(1, spec.M + 1))
            return _exact(ok, f"{spec.M} characters through {n} steps")
        out.append(Check(f"sum_product_nu{nu}", "fermionic sum equals product form", run))

    def leading_coefficients(cfg):
        want = {1: (Fraction(11, 60), [1, 0, 1, 1, 1, 1, 2]), 2: (Fraction(-1, 60), [1, 1, 1, 1, 2, 2, 3])}
        for s, (offset, coeffs) in want.items():
            for f in (characters.character_sum(5, s, 16), characters.character_product(5, s, 16)):
                if f.offset != offset or f.coefficient_list(7) != [Fraction(c) for c in coeffs]:
                    return _exact(False, f"s={s}: {f.offset} {f.coefficient_list(7)}")
        return _exact(True)

    def dims(cfg):
        table = characters.vacuum_dimension_table(characters.ModelSpec(5), 6)
        return _exact(table[:7] == [1, 0, 1, 1, 1, 1, 2], str(table))

    out.append(Check("nu5_leading_coefficients", "first seven (2,5) character coefficients", leading_coefficients))
    out.append(Check("nu5_vacuum_dimensions", "vacuum module dimensions", dims))
    return out


# -- ode --------------------------------------------------------------------

def _ode_checks():
    out = []
    for nu in NUS:
        def table(cfg, nu=nu):
            bad = ode.compare_with_table(nu)
            return _exact(not bad, repr(bad) if bad else "exact match")
        out.append(Check(f"table_nu{nu}", "ODE coefficient table", table))

    for nu in NUS:
        def kernel(cfg, nu=nu):
            spec = characters.ModelSpec(nu)
            op = ode.derive_alphas(spec)
            n = max(cfg.truncation, KERNEL_STEPS + 1)
            for s in range(1, spec.M + 1):
                f = characters.character(spec, s, n)
                res = ode.apply(op, f, window=KERNEL_STEPS)
                if not res.is_zero():
                    return _exact(False, f"s={s}: first nonzero at q^{res.valuation}")
            return _exact(True, f"{spec.M} characters vanish through {n} steps")
        out.append(Check(f"kernel_nu{nu}", "characters solve the modular ODE", kernel))

    def second(cfg):
        return _exact(ode.second_order_check_25(cfg.truncation))

    def rewrite(cfg):
        u, v = ode.e12_rewrite(ode.derive_alphas(13))
        w4, w6 = ode.E12_WEIGHTS
        return _exact(u == ode.E12_PREFACTOR * w4 and v == ode.E12_PREFACTOR * w6, f"u={u}, v={v}")

    def wronskian(cfg):
        n = cfg.truncation
        w0, w1, w2 = ode.wronskian_ode([characters.character(5, s, n) for s in (1, 2)])
        e4 = modforms.eisenstein(4, n)
        ok = w1.is_zero() and (w0 - (w2 * e4).scale(Fraction(-11, 3600))).is_zero()
        return _exact(ok, "w1 = 0, w0 = -(11/3600) E4 w2")

    def indicial(cfg):
        ok = all(ode.IndicialPolynomial.from_operator(ode.derive_alphas(nu))
                 == ode.IndicialPolynomial.from_spec(characters.ModelSpec(nu)) for nu in NUS)
        return _exact(ok)

    def boundary(cfg):
        got = ode.boundary_exponents_25()
        return _exact(got == (Fraction(-1, 30), Fraction(11, 30)), str(got))

    out += [
        Check("second_order_25", "second-order (2,5) equation", second),
        Check("E12_rewrite", "Omega_12 in the E4^3, E6^2 basis", rewrite),
        Check("wronskian_25", "Wronskian reconstruction of the (2,5) operator", wronskian),
        Check("indicial", "indicial roots are the character exponents", indicial),
        Check("boundary_exponents", "exponents near a degenerate torus", boundary),
    ]
    return out


# -- symident ---------------------------------------------------------------

def _symident_checks():
    out = []
    for ident in symident.IDENTITIES:
        def run(cfg, ident=ident):
            r = symident.run_identity(ident)
            return _exact(r.passed, f"exact={r.exact} spot={r.spot}")
        out.append(Check(ident.id, ident.description, run))

    def suppression(cfg):
        degs = symident.suppression_degrees()
        return _exact(all(d <= b for _, d, b in degs), str(degs))

    out.append(Check("suppression_degrees", "higher Laurent terms are suppressed", suppression))
    return out


# -- numeric ----------------------------------------------------------------

def _numeric_checks():
    out = []
    for i, tau in enumerate(SAMPLE_TAUS):
        def omega(cfg, tau=tau):
            return _bounded(numeric.check_omega_formula(tau, cfg.fd_step), NUMERIC_TOL, f"tau={tau}")

        def dtau(cfg, tau=tau):
            return _bounded(numeric.check_dtau_formula(tau, cfg.fd_step), NUMERIC_TOL, f"tau={tau}")
        out.append(Check(f"omega_{i}", "omega = pi i E2 dtau", omega))
        out.append(Check(f"dtau_{i}", "dtau from the branch-point velocities", dtau))

    def order(cfg):
        ratio = numeric.fd_order(numeric.check_omega_formula, SAMPLE_TAUS[2])
        return abs(ratio - 4) < 0.5, abs(ratio - 4), f"halving h divides the residual by {ratio:.3f}"

    out.append(Check("omega_fd_order", "finite-difference residual is O(h^2)", order))
    for s in (1, 2):
        def transport(cfg, s=s):
            d = numeric.transport_check(s, density=cfg.rk4_density)
            worst = max(d["rel_err_one"], d["rel_err_a1"])
            return _bounded(worst, NUMERIC_TOL, f"{d['steps']} RK4 steps; {d['calibration']}")
        out.append(Check(f"transport_s{s}", "RK4 transport matches the closed form", transport))

    def rotation(cfg):
        d = numeric.check_smatrix()
        return _bounded(d["rotation_residual"], SMATRIX_TOL, f"det = {d['rotation_det']:.6f}")

    def symmetric(cfg):
        d = numeric.check_smatrix()
        worst = max(d["symmetric_residual"], d["involution_residual"])
        return _bounded(worst, SMATRIX_TOL, f"det = {d['symmetric_det']:.6f}")

    def norm(cfg):
        return _bounded(numeric.check_smatrix()["norm_invariance"], SMATRIX_TOL)

    def tphase(cfg):
        return _bounded(numeric.check_t_phases(), SMATRIX_TOL)

    out += [
        Check("smatrix_rotation", "rotation-form S-matrix", rotation),
        Check("smatrix_symmetric", "symmetric involutive S-matrix", symmetric),
        Check("smatrix_norm", "|<1>_1|^2 + |<1>_2|^2 is S-invariant", norm),
        Check("t_phases", "T acts by exp(2 pi i kappa_s)", tphase),
    ]
    return out


# -- hypergeom --------------------------------------------------------------

def _hypergeom_checks():
    def reduction(cfg):
        res = hypergeom.run_reduction(trunc=max(40, min(cfg.truncation, 64)))
        bad = [k for k, v in res.items() if not v]
        return _exact(not bad, ", ".join(bad) or f"{len(res)} sub-checks")

    def tables(cfg):
        want = {Fraction(-7, 10): ({Fraction(3, 10), Fraction(-1, 10)}, Fraction(3, 5)),
                Fraction(-11, 10): ({Fraction(7, 10), Fraction(11, 10)}, Fraction(7, 5))}
        for k, (ab, c) in want.items():
            p = hypergeom.params_for_k(k)
            if {p.A, p.B} != ab or p.C != c:
                return _exact(False, repr(p))
        return _exact(True)

    def exponents(cfg):
        got = [hypergeom.params_for_k(k).exponents_at_zero() for k in hypergeom.allowed_k()]
        want = [(0, Fraction(2, 5)), (0, Fraction(-2, 5))]
        return _exact(got == want, "; ".join(", ".join(map(str, e)) for e in got))

    def gauge(cfg):
        got = [hypergeom.gauge_exponent(k) for k in hypergeom.allowed_k()]
        return _exact(got == [Fraction(-3, 20), Fraction(-11, 20)], ", ".join(map(str, got)))

    def degenerate(cfg):
        return _exact(not hypergeom.gauge_ode_check(0, hypergeom.C_25)["hypergeometric"])

    def mutation(cfg):
        for k in hypergeom.allowed_k():
            p = hypergeom.params_for_k(k)
            for name in ("A", "B", "C", "k"):
                bumped ={f: getattr(p, f) for f in ("A", "B", "C", "k")}
                bumped[name] += Fraction(1, 7)
                if hypergeom.HypergeomParams(**bumped).consistent():
                    return _exact(False, f"mutating {name} at k={k} went unnoticed")
        return _exact(True)

    return [
        Check("reduction", "hypergeometric reduction", reduction),
        Check("tables", "A, B, C tables", tables),
        Check("exponents_at_0", "local exponents {0, 1-C}", exponents),
        Check("gauge_exponent", "gauge exponent -c/8 + k", gauge),
        Check("k_zero_degenerate", "double poles survive at k = 0", degenerate),
        Check("mutation", "single-field mutations break a relation", mutation),
    ]


SUITES = {
    "qseries": _qseries_checks,
    "modforms": _modforms_checks,
    "characters": _characters_checks,
    "ode": _ode_checks,
    "symident": _symident_checks,
    "numeric": _numeric_checks,
    "hypergeom": _hypergeom_checks,
}


def _execute(check, cfg, prefix):
    try:
        ok, residual, detail = check.run(cfg)
    except Exception as exc:  # a crashing check is a failing check
        ok, residual, detail = False, None, f"{type(exc).__name__}: {exc}"
    return CheckResult(prefix + check.id, check.label, "pass" if ok else "fail", residual, detail)


def run_suite(name, cfg=None, workers=None):
    cfg = cfg or Config()
    names = list(SUITES) if name == "all" else [name]
    if name != "all" and name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    jobs = [(c, (f"{n}." if name == "all" else "")) for n in names for c in SUITES[n]()]
    start = time.perf_counter()
    with ThreadPoolExecutor(max_workers=workers or min(8, os.cpu_count() or 1)) as pool:
        futures = [pool.submit(_execute, c, cfg, prefix) for c, prefix in jobs]
        checks = [f.result() for f in futures]
    return VerificationReport(name, checks, round(time.perf_counter() - start, 3))
