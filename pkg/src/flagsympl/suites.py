"""Verification suites, run configuration and machine-readable reports."""
from __future__ import annotations

import json
import zlib
from collections.abc import Callable
from dataclasses import asdict, dataclass, field

import numpy as np

from . import __version__, dehn, lie, local_models, moment, reduced3, springer
from .phase_space import CotangentPoint, left_action, points_distance, random_point

SUITES = ("symplectic", "moment", "springer", "twist", "figure1", "localmodels")

TOLERANCES = {
    "pullback": 1e-5,
    "hamiltonian": 1e-5,
    "omega_consistency": 1e-6,
    "mu_preservation": 1e-9,
    "equivariance": 1e-12,
    "roundtrip": 1e-8,
    "identity": 1e-9,
    "slope": 0.05,
    "exact_zero": 0.0,
    "sampler": 1e-9,
    "rank_mismatch": 0.0,
    "zn": 1e-8,
    "classification": 0.0,
    "chart": 1e-9,
    "figure1": None,  # one parameter step, 1/N_samples_figure1
    "sp4": 1e-9,
    "rays": 1e-6,
    "rays_roundtrip": 1e-8,
    "winding": 0.0,
    "blowup_symplectic": 1e-9,
    "moment_agreement": 0.0,
    "gradient": 0.0,
    "weights": 1e-6,
}


@dataclass
class RunConfig:
    n: int = 3
    seed: int = 0
    samples: int = 50
    tolerances: dict = field(default_factory=dict)
    profile_cutoff: float = 1.0
    N: float = 4.0
    figure1_samples: int = 256
    output: str | None = None

    def validate(self) -> RunConfig:
        if self.n < 2:
            raise ValueError("n must be at least 2")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if not 0 <= self.seed < 2 ** 64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if not self.profile_cutoff > 0:
            raise ValueError("profile cutoff must be positive")
        for k, v in self.tolerances.items():
            if k not in TOLERANCES:
                raise ValueError(f"unknown tolerance {k!r}")
            if not v > 0:
                raise ValueError(f"tolerance {k} must be positive")
        return self

    def tol(self, name: str) -> float:
        if name in self.tolerances:
            return self.tolerances[name]
        if name == "figure1":
            return 1.0 / self.figure1_samples
        return TOLERANCES[name]

    @property
    def profile(self) -> dehn.TwistProfile:
        return dehn.TwistProfile(self.profile_cutoff)

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        known = set(cls.__dataclass_fields__)
        bad = set(d) - known
        if bad:
            raise ValueError(f"invalid config keys: {sorted(bad)}")
        return cls(**d).validate()


@dataclass
class Case:
    name: str
    suite: str
    tol: str
    description: str
    fn: Callable


def case_rng(seed: int, name: str):
    return np.random.default_rng(np.random.SeedSequence([seed, zlib.crc32(name.encode())]))


# ---- helpers ----------------------------------------------------------------------


def _guarded_point(n, i, rng, lo=dehn.GUARD, max_norm=10.0):
    while True:
        p = random_point(n, rng, scale=rng.uniform(0.3, 3.0))
        if lie.root_component(p.xi, i)[1] >= lo and np.linalg.norm(p.xi) <= max_norm:
            return p


def _regular_p(n, rng):
    """Chamber point with ``n - 1`` positive entries."""
    head = np.sort(rng.uniform(0.5, 3.0, n - 1))[::-1]
    head += np.arange(n - 1)[::-1] * 0.1
    return np.append(head, -head.sum())


# ---- case bodies ------------------------------------------------------------------


def _pullback(i):
    def run(cfg, rng):
        errs = [dehn.twist_pullback_error(_guarded_point(cfg.n, i, rng), i, cfg.profile)
                for _ in range(cfg.samples)]
        return max(errs), {"points": len(errs), "root": i}
    return run


def _hamiltonian(i):
    def run(cfg, rng):
        errs = [dehn.hamiltonian_field_check(_guarded_point(cfg.n, i, rng), i, cfg.profile)
                for _ in range(cfg.samples)]
        return max(errs), {"points": len(errs), "root": i}
    return run


def _omega_consistency(cfg, rng):
    from .moment import hamiltonian_consistency
    from .phase_space import tangent_basis
    worst = 0.0
    for _ in range(cfg.samples):
        p = random_point(cfg.n, rng)
        y = lie.random_skew_traceless(cfg.n, rng)
        for v in tangent_basis(cfg.n):
            worst = max(worst, hamiltonian_consistency(p, y, v))
    return worst, {"points": cfg.samples}


def _twist_mu(i):
    def run(cfg, rng):
        worst = 0.0
        for _ in range(cfg.samples):
            p = random_point(cfg.n, rng, scale=rng.uniform(0.1, 3.0))
            worst = max(worst, float(np.abs(moment.mu(dehn.tau(p, i, cfg.profile)) - moment.mu(p)).max()))
        return worst, {"root": i}
    return run


def _twist_equivariance(cfg, rng):
    worst = 0.0
    for i in range(1, cfg.n):
        for _ in range(cfg.samples):
            p = random_point(cfg.n, rng)
            g = lie.random_su(cfg.n, rng)
            worst = max(worst, points_distance(dehn.tau(left_action(g, p), i, cfg.profile),
                                               left_action(g, dehn.tau(p, i, cfg.profile))))
    return worst, {}


def _twist_roundtrip(cfg, rng):
    worst = 0.0
    for i in range(1, cfg.n):
        for _ in range(cfg.samples):
            p = random_point(cfg.n, rng, scale=rng.uniform(0.1, 3.0))
            worst = max(worst, points_distance(
                dehn.tau_inverse(dehn.tau(p, i, cfg.profile), i, cfg.profile), p))
    return worst, {}


def _twist_identity(cfg, rng):
    worst = 0.0
    for i in range(1, cfg.n):
        for _ in range(cfg.samples):
            xi = lie.random_herm_zero_diag(cfg.n, rng)
            xa, m = lie.root_component(xi, i)
            xi = xi + xa * (cfg.profile_cutoff * rng.uniform(1.0, 3.0) / m - 1)
            p = CotangentPoint(lie.random_su(cfg.n, rng), xi)
            worst = max(worst, points_distance(dehn.tau(p, i, cfg.profile), p))
    return worst, {}


def _steinberg_slope(cfg, rng):
    if cfg.n == 2:
        # xi is its own root component: no sequence with vanishing relative part
        return None, {"reason": "n = 2 has no directions outside the root plane"}
    worst, slopes = 0.0, []
    for i in range(1, cfg.n):
        x = lie.random_su(cfg.n, rng)
        direction = dehn.without_root(lie.random_herm_zero_diag(cfg.n, rng), i)
        direction *= 2.0 / np.linalg.norm(direction)
        offset, _ = lie.root_component(lie.random_herm_zero_diag(cfg.n, rng), i)
        offset *= 0.5 * cfg.profile_cutoff / abs(offset[i - 1, i])
        _, _, slope = dehn.steinberg_ladder(x, direction, offset, i, cfg.profile)
        slopes.append(slope)
        worst = max(worst, abs(slope + 1))
    return worst, {"slopes": slopes}


def _steinberg_zero(cfg, rng):
    worst, count = 0.0, 0
    for i in range(1, cfg.n):
        p = _guarded_point(cfg.n, i, rng, lo=0.2)
        _, m = lie.root_component(p.xi, i)
        scales, ratios, _ = dehn.steinberg_ladder(p.x, p.xi, 0.0, i, cfg.profile)
        mask = scales * m >= cfg.profile_cutoff
        count += int(mask.sum())
        worst = max(worst, float(ratios[mask].max()) if mask.any() else 0.0)
    return worst, {"saturated_scales": count}


def _sampler(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        p = moment.integer_chamber_points(cfg.n, rng, cfg.n > 2 and bool(rng.integers(2)), 1)[0]
        q = moment.sample_fiber(p, rng)
        worst = max(worst, float(np.abs(moment.mu(q) - np.diag(p)).max()),
                    lie.role_residual(q.x, lie.Role.SPECIAL_UNITARY),
                    lie.role_residual(q.xi, lie.Role.HERM_ZERO_DIAG))
    return worst, {}


def _mu_equivariance(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        p = random_point(cfg.n, rng)
        g = lie.random_su(cfg.n, rng)
        worst = max(worst, float(np.abs(moment.mu(left_action(g, p)) - lie.ad(g, moment.mu(p))).max()))
    return worst, {}


def sing_val_agreement(n, rng, points_each: int, samples: int):
    """Count chamber points where rank observations disagree with the subset-sum test."""
    mismatches, rows = 0, []
    full = moment.full_mu_rank(n)
    # every chamber point of su(2) is a regular value
    for singular in ((True, False) if n > 2 else (False,)):
        for p in moment.integer_chamber_points(n, rng, singular, points_each):
            # alternate samplers so the degenerate strata are reached on every run
            deficient = any(moment.mu_rank(moment.sample_fiber(p, rng, structured=k % 2 == 0)) < full
                            for k in range(samples))
            rows.append({"p": p.tolist(), "singular": singular, "rank_deficient_seen": deficient})
            mismatches += int(deficient != singular)
    return mismatches, rows


def _sing_val(cfg, rng):
    mism, rows = sing_val_agreement(cfg.n, rng, 3, cfg.samples)
    return float(mism), {"points": rows}


def _zn(cfg, rng):
    worst, eps = 0.0, []
    for _ in range(cfg.samples):
        form = springer.zn_normal_form(moment.sample_fiber(moment.p_n(cfg.n), rng))
        worst = max(worst, form.max_residual())
        eps.append(form.epsilon)
    return worst, {"epsilon_min": min(eps), "epsilon_max": max(eps)}


def _regular_exclusion(cfg, rng):
    p = _regular_p(cfg.n, rng)
    bad = sum(springer.springer_class(moment.sample_fiber(p, rng)).kind != "regular"
              for _ in range(cfg.samples))
    return float(bad), {"p": p.tolist()}


def _jordan_oracle(cfg, rng):
    bad = 0
    for part in ((cfg.n,), (cfg.n - 1, 1), tuple([1] * cfg.n)):
        blocks = []
        for k in part:
            blocks.append(np.eye(k, k=1))
        u = np.zeros((cfg.n, cfg.n))
        pos = 0
        for b in blocks:
            u[pos:pos + len(b), pos:pos + len(b)] = b
            pos += len(b)
        g = lie.random_su(cfg.n, rng)
        bad += int(springer.jordan_partition(g @ u @ lie.dagger(g)) != part)
    return float(bad), {}


def _chart_roundtrip(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        c = reduced3.random_chart(cfg.N, rng)
        worst = max(worst, reduced3.project(reduced3.lift(c)).distance(c))
        for i in (1, 2):
            d = reduced3.tau_reduced(c, i, cfg.profile)
            worst = max(worst, d.max_residual() / max(1.0, cfg.N ** 3))
    return worst, {}


def _chart_bijection(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        c = reduced3.random_chart(cfg.N, rng)
        for i in (1, 2):
            back = reduced3.tau_reduced(reduced3.tau_reduced(c, i, cfg.profile), i, cfg.profile,
                                        inverse=True)
            worst = max(worst, back.distance(c))
    return worst, {}


def _figure1(alpha):
    def run(cfg, rng):
        rep = reduced3.figure1_report(cfg.N, cfg.figure1_samples, cfg.profile, alpha)
        ok, gap = reduced3.figure1_pass(rep)
        return (gap if ok else 1.0), rep
    return run


def _sp4_roundtrip(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        e, f = local_models.random_element(rng), local_models.random_element(rng)
        m = local_models.sp4_matrix(e)
        worst = max(worst, float(np.abs(local_models.sp4_matrix(local_models.sp4_membership(m)) - m).max()),
                    float(np.abs(local_models.sp4_matrix(local_models.compose(e, f))
                                 - m @ local_models.sp4_matrix(f)).max()),
                    float(np.abs(local_models.sp4_matrix(local_models.inverse(e)) @ m - np.eye(4)).max()))
    return worst, {}


def _rays_numeric(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        e = local_models.random_element(rng)
        a = np.array(local_models.induced_rays(e))
        b = np.array(local_models.induced_rays_numeric(e))
        worst = max(worst, float(np.abs(a - b).max()))
    return worst, {}


def _rays_roundtrip(cfg, rng):
    worst = 0.0
    for _ in range(cfg.samples):
        e = local_models.random_element(rng)
        back = local_models.from_rays(*local_models.induced_rays(e))
        worst = max(worst, float(np.abs(local_models.sp4_matrix(back)
                                        - local_models.sp4_matrix(local_models.normalize(e))).max()))
        ap, am = rng.uniform(-np.pi, np.pi, 2)
        if abs(local_models._wrap(ap - am)) > 1e-3:
            wp, wm = local_models.induced_rays(local_models.solve_for_rays(ap, am))
            worst = max(worst, abs(local_models._wrap(np.angle(wp) - ap)),
                        abs(local_models._wrap(np.angle(wm) - am)))
    central = local_models.from_rays(1.0, -1.0)
    worst = max(worst, 0.0 if central.is_central() else 1.0)
    return worst, {"central_from_identity_rays": central.is_central()}


def _winding(cfg, rng):
    w = local_models.winding_number(float(rng.uniform(0.1, 3.0)), float(rng.uniform(-np.pi, np.pi)))
    return float(abs(w - 1)), {"winding": w}


def _blowup(key, transform=lambda v, r: v):
    def run(cfg, rng):
        rep = local_models.blowup_checks(1.0, 1.0, 1, cfg.samples, rng)
        return float(transform(rep[key], rep)), {k: v for k, v in rep.items()}
    return run


def build_cases(cfg: RunConfig) -> list[Case]:
    n = cfg.n
    roots = range(1, n)
    cases = []
    for i in roots:
        cases.append(Case(f"symplectic.pullback.root{i}", "symplectic", "pullback",
                          "twist preserves omega (pullback error, |xi_alpha| >= 0.05)", _pullback(i)))
        cases.append(Case(f"symplectic.hamiltonian.root{i}", "symplectic", "hamiltonian",
                          "twist generator is Hamiltonian for H = -2 htilde(|xi_alpha|)", _hamiltonian(i)))
        cases.append(Case(f"twist.mu_preservation.root{i}", "twist", "mu_preservation",
                          "twist preserves the moment map", _twist_mu(i)))
    cases += [
        Case("symplectic.omega_consistency", "symplectic", "omega_consistency",
             "left-action generators are Hamiltonian for pair(mu, Y)", _omega_consistency),
        Case("twist.equivariance", "twist", "equivariance", "twist commutes with left G-action",
             _twist_equivariance),
        Case("twist.roundtrip", "twist", "roundtrip", "inverse twist undoes the twist", _twist_roundtrip),
        Case("twist.identity_at_infinity", "twist", "identity", "twist is the identity for |xi_alpha| >= t0",
             _twist_identity),
        Case("twist.steinberg_slope", "twist", "slope",
             "Steinberg ratio decays like 1/s when the relative root component vanishes", _steinberg_slope),
        Case("twist.steinberg_exact_zero", "twist", "exact_zero",
             "Steinberg ratio is exactly zero once s |xi_alpha| >= t0", _steinberg_zero),
        Case("moment.sampler", "moment", "sampler", "fiber sampler hits mu = diag(p)", _sampler),
        Case("moment.equivariance", "moment", "equivariance", "mu(g p) = Ad_g mu(p)", _mu_equivariance),
        Case("moment.sing_val", "moment", "rank_mismatch",
             "d mu drops rank on a fiber iff a proper subset of p sums to zero", _sing_val),
        Case("springer.zn_normal_form", "springer", "zn",
             "normal-form constraints over diag(1, -1, 0, ...)", _zn),
        Case("springer.regular_exclusion", "springer", "classification",
             "n - 1 positive eigenvalues force a regular Springer image", _regular_exclusion),
        Case("springer.jordan_oracle", "springer", "classification",
             "Jordan types of conjugated standard nilpotents", _jordan_oracle),
        Case("figure1.chart", "figure1", "chart", "reduced chart round trip and constraint preservation",
             _chart_roundtrip),
        Case("figure1.bijection", "figure1", "roundtrip", "reduced twist is inverted by the inverse profile",
             _chart_bijection),
        Case("figure1.alpha1", "figure1", "figure1",
             "triangle pattern of the first generator: edge Q2Q3 reversed, vertex permutation (2 3)",
             _figure1(1)),
        Case("figure1.alpha2", "figure1", "figure1",
             "triangle pattern of the second generator, vertex permutation (1 2)", _figure1(2)),
        Case("localmodels.sp4", "localmodels", "sp4",
             "parameter/matrix round trip, composition and inverse", _sp4_roundtrip),
        Case("localmodels.rays_numeric", "localmodels", "rays",
             "closed-form ray images agree with transport through the matrix", _rays_numeric),
        Case("localmodels.rays_roundtrip", "localmodels", "rays_roundtrip",
             "ray images determine the element modulo the circle", _rays_roundtrip),
        Case("localmodels.winding", "localmodels", "winding", "arg w+ winds once over the theta4 circle",
             _winding),
        Case("localmodels.blowup_symplectic", "localmodels", "blowup_symplectic",
             "blow-up transition is symplectic", _blowup("symplectic")),
        Case("localmodels.blowup_moment", "localmodels", "moment_agreement",
             "moment maps agree across the transition", _blowup("moment_agreement")),
        Case("localmodels.blowup_no_critical", "localmodels", "gradient",
             "surgered moment map has no critical points below delta",
             _blowup("min_gradient", lambda v, r: max(0.0, r["gradient_bound"] - v))),
        Case("localmodels.blowup_weights", "localmodels", "weights",
             "circle weights at the removed fixed point are (-1, +1)", _blowup("weights_error")),
    ]
    return sorted(cases, key=lambda c: c.name)


def describe(cfg: RunConfig | None = None) -> list[tuple[str, str]]:
    return [(c.name, c.description) for c in build_cases(cfg or RunConfig())]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, reduced3.ReducedChart3):
        return _jsonable(asdict(obj))
    return obj


def run_case(case: Case, cfg: RunConfig) -> dict:
    err, details = case.fn(cfg, case_rng(cfg.seed, case.name))
    tol = cfg.tol(case.tol)
    details = {k: v for k, v in details.items() if k not in ("polyline", "images", "params")}
    if err is None:
        status, err = "skip", 0.0
    else:
        status = "pass" if err <= tol else "fail"
    return {"name": case.name, "status": status,
            "max_error": float(err), "details": _jsonable({**details, "tolerance": tol})}


def run_verify(cfg: RunConfig, suite: str = "all", names=None) -> dict:
    """Run a suite (or the named cases of it); cases are sorted by name."""
    cfg.validate()
    if suite != "all" and suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    cases = [c for c in build_cases(cfg) if (suite == "all" or c.suite == suite)
             and (names is None or c.name in names)]
    # the destination path is left out so reports written to different files compare equal
    config = {k: v for k, v in asdict(cfg).items() if k != "output"}
    return {"version": __version__, "suite": suite, "config": _jsonable(config),
            "cases": [run_case(c, cfg) for c in cases]}


def all_pass(report: dict) -> bool:
    return all(c["status"] != "fail" for c in report["cases"])


def dumps_report(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"
