"""Config-driven decay experiments.

An experiment evolves one pair of initial data on one grid, measures a set of
observables on a log-spaced time schedule, fits decay exponents and compares
them with the closed-form rates. The configuration is an INI file; the grammar
is documented in the README and a complete example lives in ``configs/``.
"""
import configparser
import csv
import io
import json
import math
import platform
import time
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import numpy as np

from . import __version__
from .evolution import Propagator
from .fieldio import load_binary
from .fitting import MIN_SAMPLES, fit_decay_exponent
from .generators import make_bump, make_gaussian, make_random_smooth
from .grid import GridSpec, RealField
from .inequalities import (PittParams, hausdorff_young_constant, hausdorff_young_ratio,
                           holder_product_ratio, pitt_admissible, pitt_ratio)
from .model import ModelParams, ParameterError
from .norms import NormSpec, lm_norm, weighted_lm_norm
from .rates import Family, RateQuery, Term, rate

CHECKS = ("bound", "saturation", "bounded")
INEQUALITIES = ("pitt", "hausdorff_young", "holder")
DEFAULT_TOLERANCE = 0.05
MONOTONE_RTOL = 1e-12
HOLDER_SLACK = 1e-10


class ConfigError(ValueError):
    """One or more configuration fields are invalid; ``errors`` lists them."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


class ExperimentError(RuntimeError):
    pass


@dataclass(frozen=True)
class DataSpec:
    kind: str = "zero"
    width: float = 1.0
    radius: float = 1.0
    amplitude: float = 1.0
    moment_zero: bool = False
    terms: int = 4
    path: str = ""

    @classmethod
    def parse(cls, text: str) -> "DataSpec":
        """``zero``, ``gaussian width=1 [moment_zero=yes] [amplitude=1]``,
        ``bump radius=2 [amplitude=1]``, ``random [terms=4]`` or ``file PATH``."""
        words = text.split()
        if not words:
            raise ValueError("empty data description")
        kind, rest = words[0].lower(), words[1:]
        if kind == "file":
            if len(rest) != 1:
                raise ValueError("file data needs exactly one path")
            return cls(kind, path=rest[0])
        if kind not in ("zero", "gaussian", "bump", "random"):
            raise ValueError(f"unknown data kind {kind!r}")
        allowed = {"zero": (), "gaussian": ("width", "amplitude", "moment_zero"),
                   "bump": ("radius", "amplitude"), "random": ("terms",)}[kind]
        kwargs = {}
        for word in rest:
            key, sep, value = word.partition("=")
            if not sep or key not in allowed:
                raise ValueError(f"unexpected {word!r} for {kind} data")
            if key == "moment_zero":
                kwargs[key] = value.lower() in ("1", "yes", "true", "on")
            elif key == "terms":
                kwargs[key] = int(value)
            else:
                kwargs[key] = float(value)
        return cls(kind, **kwargs)

    def build(self, grid: GridSpec, seed: int, dilation: float = 1.0) -> RealField:
        """Sample the data on ``grid``; ``dilation`` gives ``f(dilation * x)``."""
        if dilation != 1.0 and self.kind not in ("gaussian", "bump", "zero"):
            raise ValueError(f"{self.kind} data cannot be dilated")
        if self.kind == "zero":
            return RealField.zeros(grid)
        if self.kind == "gaussian":
            # f(lx) for a unit-mass Gaussian is l^-n times one of width w/l
            f = make_gaussian(grid, self.width / dilation, self.moment_zero,
                              amplitude=self.amplitude * dilation ** (-grid.n))
            return f
        if self.kind == "bump":
            return make_bump(grid, self.radius / dilation, amplitude=self.amplitude)
        if self.kind == "random":
            return make_random_smooth(grid, np.random.default_rng(seed), terms=self.terms)
        f = load_binary(self.path)
        if f.grid != grid:
            raise ValueError(f"{self.path} holds {f.grid}, experiment grid is {grid}")
        return f

    def describe(self) -> str:
        if self.kind == "zero":
            return "zero"
        if self.kind == "gaussian":
            mz = " moment_zero=yes" if self.moment_zero else ""
            return f"gaussian width={self.width:g} amplitude={self.amplitude:g}{mz}"
        if self.kind == "bump":
            return f"bump radius={self.radius:g} amplitude={self.amplitude:g}"
        if self.kind == "random":
            return f"random terms={self.terms}"
        return f"file {self.path}"


@dataclass(frozen=True)
class Observable:
    name: str
    i: int
    a: float
    norm: NormSpec
    check: str
    m: float = 1.0
    family: Family = Family.PROPOSITION
    terms: Tuple[Term, ...] = ()
    tolerance: float = DEFAULT_TOLERANCE


@dataclass(frozen=True)
class InequalityCheck:
    name: str
    kind: str
    target: str = "u0"
    partner: str = ""
    r1: float = 2.0
    r2: float = 2.0
    s1: Optional[float] = None
    s2: float = 0.0
    m: float = 1.5
    dilations: Tuple[float, ...] = (1.0,)
    tolerance: float = 0.01


@dataclass(frozen=True)
class ExperimentConfig:
    params: ModelParams
    grid: GridSpec
    u0: DataSpec
    u1: DataSpec
    t_start: float
    t_end: float
    count: int
    fit_start: float
    observables: Tuple[Observable, ...]
    inequalities: Tuple[InequalityCheck, ...] = ()
    seed: int = 0
    output_path: str = ""
    output_format: str = "csv"
    bounded_after: float = 10.0
    source: Dict[str, Dict[str, str]] = field(default_factory=dict, compare=False)

    @property
    def horizon(self) -> float:
        return self.grid.infrared_horizon(self.params)

    @property
    def effective_t_end(self) -> float:
        return min(self.t_end, self.horizon)

    def schedule(self) -> np.ndarray:
        return np.geomspace(self.t_start, self.effective_t_end, self.count)

    def rate_queries(self, obs: Observable) -> List[RateQuery]:
        """One query per data term that the observable is compared against."""
        terms = obs.terms or tuple(
            t for t, d in ((Term.U0, self.u0), (Term.U1, self.u1)) if d.kind != "zero")
        return [RateQuery(self.params, obs.m, obs.a, obs.i, obs.family, t) for t in terms]


def _get(section, key, conv, errors, where, default=None, required=False):
    if key not in section:
        if required:
            errors.append(f"{where}.{key}: missing")
        return default
    raw = section[key]
    try:
        return conv(raw)
    except (TypeError, ValueError) as exc:
        errors.append(f"{where}.{key}: cannot parse {raw!r} ({exc})")
        return default


def _float_list(text):
    return tuple(float(x) for x in text.replace(",", " ").split())


def _parse_observable(name, sec, errors):
    where = f"observable:{name}"
    i = _get(sec, "i", int, errors, where, 0)
    a = _get(sec, "a", float, errors, where, 0.0)
    norm = _get(sec, "norm", NormSpec.parse, errors, where, NormSpec.parse("l2"))
    check = sec.get("check", "bound").strip().lower()
    if check not in CHECKS:
        errors.append(f"{where}.check: must be one of {', '.join(CHECKS)}, got {check!r}")
    m = _get(sec, "m", float, errors, where, 1.0)
    family = _get(sec, "family", Family, errors, where, Family.PROPOSITION)
    terms = ()
    if "term" in sec:
        try:
            terms = tuple(Term(t) for t in sec["term"].replace(",", " ").split())
        except ValueError as exc:
            errors.append(f"{where}.term: {exc}")
    tol = _get(sec, "tolerance", float, errors, where, DEFAULT_TOLERANCE)
    if i not in (0, 1, None):
        errors.append(f"{where}.i: must be 0 or 1, got {i}")
    if a is not None and a < 0:
        errors.append(f"{where}.a: must be nonnegative, got {a}")
    if check == "saturation" and m != 1:
        errors.append(f"{where}.check: saturation is only asserted for m = 1 (got m = {m:g})")
    return Observable(name, i, a, norm, check, m, family, terms, tol)


def _parse_inequality(name, sec, errors):
    where = f"inequality:{name}"
    kind = sec.get("kind", "").strip().lower()
    if kind not in INEQUALITIES:
        errors.append(f"{where}.kind: must be one of {', '.join(INEQUALITIES)}, got {kind!r}")
    target = sec.get("field", "u0").strip().lower()
    if target not in ("u0", "u1"):
        errors.append(f"{where}.field: must be u0 or u1, got {target!r}")
    partner = sec.get("partner", target).strip().lower()
    if partner not in ("u0", "u1"):
        errors.append(f"{where}.partner: must be u0 or u1, got {partner!r}")
    return InequalityCheck(
        name, kind, target, partner,
        r1=_get(sec, "r1", float, errors, where, 2.0),
        r2=_get(sec, "r2", float, errors, where, 2.0),
        s1=_get(sec, "s1", float, errors, where, None),
        s2=_get(sec, "s2", float, errors, where, 0.0),
        m=_get(sec, "m", float, errors, where, 1.5),
        dilations=_get(sec, "dilations", _float_list, errors, where, (1.0,)),
        tolerance=_get(sec, "tolerance", float, errors, where, 0.01),
    )


def parse_config(text: str) -> ExperimentConfig:
    """Parse and validate a config; every invalid field is reported at once."""
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError([f"syntax: {exc}"]) from None
    errors = []
    for name in ("model", "grid", "times"):
        if not cp.has_section(name):
            errors.append(f"[{name}]: missing section")
    if errors:
        raise ConfigError(errors)
    model, grid_sec, times = cp["model"], cp["grid"], cp["times"]
    data = cp["data"] if cp.has_section("data") else {}
    out = cp["output"] if cp.has_section("output") else {}

    sigma = _get(model, "sigma", float, errors, "model", required=True)
    delta = _get(model, "delta", float, errors, "model", required=True)
    n = _get(model, "n", int, errors, "model", required=True)
    params = None
    if None not in (sigma, delta, n):
        try:
            params = ModelParams(sigma, delta, n)
        except ParameterError as exc:
            errors.append(f"model: {exc}")

    N = _get(grid_sec, "points", int, errors, "grid", required=True)
    L = _get(grid_sec, "half_width", float, errors, "grid", required=True)
    grid = None
    if None not in (N, L, n):
        try:
            grid = GridSpec(n, N, L)
        except ValueError as exc:
            errors.append(f"grid: {exc}")

    u0 = _get(data, "u0", DataSpec.parse, errors, "data", DataSpec())
    u1 = _get(data, "u1", DataSpec.parse, errors, "data", DataSpec())
    seed = _get(data, "seed", int, errors, "data", 0)

    t_start = _get(times, "start", float, errors, "times", 1.0)
    t_end = _get(times, "end", float, errors, "times", required=True)
    count = _get(times, "count", int, errors, "times", required=True)
    fit_start = _get(times, "fit_start", float, errors, "times", t_start)
    bounded_after = _get(times, "bounded_after", float, errors, "times", 10.0)
    if t_start is not None and not t_start > 0:
        errors.append(f"times.start: must be positive for a log-spaced schedule, got {t_start}")
    if None not in (t_start, t_end) and not t_end > t_start:
        errors.append(f"times.end: must exceed times.start ({t_end} <= {t_start})")
    if count is not None and count < MIN_SAMPLES:
        errors.append(f"times.count: need at least {MIN_SAMPLES} times, got {count}")

    observables = tuple(_parse_observable(s.split(":", 1)[1].strip(), cp[s], errors)
                        for s in cp.sections() if s.startswith("observable:"))
    inequalities = tuple(_parse_inequality(s.split(":", 1)[1].strip(), cp[s], errors)
                         for s in cp.sections() if s.startswith("inequality:"))
    if not observables and not inequalities:
        errors.append("config: no [observable:NAME] or [inequality:NAME] sections")

    fmt = out.get("format", "csv").strip().lower()
    if fmt not in ("csv", "json"):
        errors.append(f"output.format: must be csv or json, got {fmt!r}")

    if errors:
        raise ConfigError(errors)

    cfg = ExperimentConfig(params, grid, u0, u1, t_start, t_end, count, fit_start,
                           observables, inequalities, seed, out.get("path", ""), fmt,
                           bounded_after,
                           source={s: dict(cp[s]) for s in cp.sections()})
    for obs in observables:
        try:
            for q in cfg.rate_queries(obs):
                rate(q)
        except ValueError as exc:
            errors.append(f"observable:{obs.name}: {exc}")
    if cfg.effective_t_end <= t_start:
        errors.append(f"times: infrared horizon {cfg.horizon:.4g} of the grid is not past start")
    elif any(o.check != "bounded" for o in observables):
        in_window = int(np.count_nonzero(cfg.schedule() >= fit_start))
        if in_window < MIN_SAMPLES:
            errors.append(f"times.fit_start: only {in_window} scheduled times in "
                          f"[{fit_start:g}, {cfg.effective_t_end:.4g}], need {MIN_SAMPLES}")
    if errors:
        raise ConfigError(errors)
    return cfg


def load_config(path) -> ExperimentConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError([f"{path}: {exc.strerror or exc}"]) from None
    return parse_config(text)


@dataclass
class TheoryEntry:
    term: str
    family: str
    m: float
    exponent: float
    dimension_bound: float
    estimate: str
    violations: List[str]


@dataclass
class ObservableResult:
    name: str
    i: int
    a: float
    norm: str
    check: str
    tolerance: float
    theory: Optional[float]
    theory_terms: List[TheoryEntry]
    slope: Optional[float]
    stderr: Optional[float]
    intercept: Optional[float]
    window: Tuple[float, float]
    samples: int
    verdict: str
    note: str
    series: List[Tuple[float, float]]
    sup_ratio: Optional[float] = None


@dataclass
class InequalityResult:
    name: str
    kind: str
    field: str
    parameters: Dict[str, object]
    admissible: bool
    violations: List[str]
    dilations: List[float]
    ratios: List[float]
    reference: Optional[float]
    spread: Optional[float]
    stable: bool
    verdict: str


@dataclass
class ExperimentReport:
    observables: List[ObservableResult]
    inequalities: List[InequalityResult]
    provenance: Dict
    run: Dict

    @property
    def passed(self) -> bool:
        rows = [o.verdict for o in self.observables] + [q.verdict for q in self.inequalities]
        return "fail" not in rows

    def to_dict(self) -> Dict:
        return asdict(self)


def _fit_verdict(check, slope, theory, tol):
    if check == "saturation":
        return "pass" if abs(slope - theory) <= tol else "fail"
    return "pass" if slope <= theory + tol else "fail"


def _measure(cfg, u0, u1):
    """All observables at every scheduled time, one propagator shared by all."""
    prop = Propagator(cfg.params, u0, u1)
    times = cfg.schedule()
    values = {o.name: [] for o in cfg.observables}
    for t in times:
        fields = {}
        for obs in cfg.observables:
            key = (obs.i, obs.a)
            if key not in fields:
                fields[key] = prop.field(float(t), obs.i, obs.a)
            v = obs.norm(fields[key])
            if not math.isfinite(v):
                raise ExperimentError(f"non-finite {obs.name} = {v} at t = {t:.6g}")
            values[obs.name].append(v)
    return times, values


def _observable_result(cfg, obs, times, vals, data_scale):
    series = [(float(t), float(v)) for t, v in zip(times, vals)]
    entries = []
    for q in cfg.rate_queries(obs):
        r = rate(q)
        entries.append(TheoryEntry(q.term.value, q.family.value, q.m, r.exponent,
                                   r.dimension_bound, r.estimate, list(r.violations)))
    theory = max((e.exponent for e in entries), default=None)
    base = dict(name=obs.name, i=obs.i, a=obs.a, norm=obs.norm.label, tolerance=obs.tolerance,
                theory=theory, theory_terms=entries, series=series)
    lo, hi = cfg.fit_start, float(times[-1])
    vals = np.asarray(vals)
    if not np.any(vals > 0):
        return ObservableResult(check=obs.check, slope=None, stderr=None, intercept=None,
                                window=(lo, hi), samples=0, verdict="degenerate",
                                note="observable vanishes identically", **base)
    check, note = obs.check, ""
    if check != "bounded" and (theory is None or theory >= 0):
        check, note = "bounded", "theory predicts no decay; asserting boundedness instead"
    if check == "bounded":
        sel = times >= cfg.bounded_after
        tail = vals[sel]
        sup = float(vals.max() / data_scale) if data_scale > 0 else math.inf
        monotone = bool(np.all(tail[1:] <= tail[:-1] * (1 + MONOTONE_RTOL)))
        ok = math.isfinite(sup) and monotone and tail.size >= 2
        if not monotone:
            note = (note + "; " if note else "") + f"norm increases after t = {cfg.bounded_after:g}"
        return ObservableResult(check="bounded", slope=None, stderr=None, intercept=None,
                                window=(cfg.bounded_after, hi), samples=int(tail.size),
                                verdict="pass" if ok else "fail", note=note,
                                sup_ratio=sup, **base)
    fit = fit_decay_exponent(np.column_stack([times, vals]), (lo, hi))
    return ObservableResult(check=check, slope=fit.slope, stderr=fit.stderr,
                            intercept=fit.intercept, window=fit.window, samples=fit.samples,
                            verdict=_fit_verdict(check, fit.slope, theory, obs.tolerance),
                            note=note, **base)


def _inequality_result(cfg, chk):
    spec = cfg.u0 if chk.target == "u0" else cfg.u1
    params = {"r1": chk.r1, "r2": chk.r2, "s2": chk.s2, "m": chk.m}
    if chk.kind == "holder":
        params["partner"] = chk.partner
    admissible, violations, reference = True, [], None
    if chk.kind == "pitt":
        p = (PittParams(chk.r1, chk.r2, chk.s1, chk.s2, cfg.params.n) if chk.s1 is not None
             else PittParams.balanced(chk.r1, chk.r2, chk.s2, cfg.params.n))
        params["s1"] = p.s1
        admissible, violations = pitt_admissible(p)
    elif chk.kind == "hausdorff_young":
        reference = hausdorff_young_constant(chk.r2, cfg.params.n)
    else:
        reference = 1.0
    ratios = []
    if admissible:
        for lam in chk.dilations:
            f = spec.build(cfg.grid, cfg.seed, lam)
            if chk.kind == "pitt":
                ratios.append(pitt_ratio(f, p))
            elif chk.kind == "hausdorff_young":
                ratios.append(hausdorff_young_ratio(f, chk.r1, chk.r2))
            else:
                other = cfg.u0 if chk.partner == "u0" else cfg.u1
                g = other.build(cfg.grid, cfg.seed, lam)
                ratios.append(holder_product_ratio(f, g, chk.m))
    ratios = [float(r) for r in ratios]
    spread = (max(ratios) - min(ratios)) / float(np.mean(ratios)) if ratios else None
    stable = spread is not None and spread <= chk.tolerance
    if chk.kind == "holder":
        ok = stable and max(ratios) <= 1 + HOLDER_SLACK
    elif chk.kind == "hausdorff_young":
        ok = stable and max(ratios) <= reference * (1 + chk.tolerance)
    else:
        ok = admissible and stable
    return InequalityResult(chk.name, chk.kind, chk.target, params, admissible, violations,
                            list(chk.dilations), ratios, reference, spread, stable,
                            "pass" if ok else "fail")


def _versions():
    import numba
    import scipy
    return {"sigmadecay": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
            "numba": numba.__version__, "python": platform.python_version()}


def run_experiment(cfg: ExperimentConfig) -> ExperimentReport:
    started = time.perf_counter()
    u0 = cfg.u0.build(cfg.grid, cfg.seed)
    u1 = cfg.u1.build(cfg.grid, cfg.seed + 1)
    results = []
    if cfg.observables:
        times, values = _measure(cfg, u0, u1)
        scale = (lm_norm(u0, 2) + weighted_lm_norm(u1, 2 * cfg.params.delta, 2)
                 + lm_norm(u1, 2))
        results = [_observable_result(cfg, o, times, values[o.name], scale)
                   for o in cfg.observables]
    checks = [_inequality_result(cfg, c) for c in cfg.inequalities]
    provenance = {
        "config": cfg.source,
        "versions": _versions(),
        "seed": cfg.seed,
        "infrared_horizon": cfg.horizon,
        "t_end_requested": cfg.t_end,
        "t_end_used": cfg.effective_t_end,
        "horizon_clipped": cfg.t_end > cfg.horizon,
    }
    run = {"timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
           "wall_time_s": time.perf_counter() - started}
    return ExperimentReport(results, checks, provenance, run)


CSV_HEADER = ("observable", "t_window", "slope", "stderr", "theory", "verdict")


def _num(x):
    return "" if x is None else format(x, ".10g")


def report_rows(report: Dict) -> List[Tuple[str, ...]]:
    rows = []
    for o in report["observables"]:
        lo, hi = o["window"]
        rows.append((o["name"], f"{_num(lo)}:{_num(hi)}", _num(o["slope"]), _num(o["stderr"]),
                     _num(o["theory"]), o["verdict"]))
    for q in report["inequalities"]:
        rows.append((f"inequality:{q['name']}", "", "", "", _num(q["reference"]), q["verdict"]))
    return rows


def render_csv(report: Dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    w.writerows(report_rows(report))
    return buf.getvalue()


def _plain(x):
    if isinstance(x, np.generic):
        return x.item()
    raise TypeError(f"{type(x).__name__} is not JSON serialisable")


def render_json(report: Dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True, default=_plain) + "\n"


def render(report, fmt: str) -> str:
    data = report.to_dict() if isinstance(report, ExperimentReport) else report
    if fmt == "csv":
        return render_csv(data)
    if fmt == "json":
        return render_json(data)
    raise ValueError(f"unknown report format {fmt!r}")


def read_report(path) -> Dict:
    """Load a JSON report, or the rows of a CSV one (as ``{"rows": [...]}``)."""
    text = Path(path).read_text()
    if text.lstrip().startswith("{"):
        return json.loads(text)
    rows = list(csv.DictReader(io.StringIO(text)))
    if not rows and not text.startswith(",".join(CSV_HEADER)):
        raise ValueError(f"{path}: neither a JSON nor a CSV report")
    if rows and tuple(rows[0].keys()) != CSV_HEADER:
        raise ValueError(f"{path}: unexpected CSV header {tuple(rows[0].keys())}")
    return {"rows": rows}


def rerender(report: Dict, fmt: str) -> str:
    if "rows" in report:
        if fmt == "json":
            return render_json(report)
        buf = io.StringIO()
        w = csv.DictWriter(buf, CSV_HEADER, lineterminator="\n")
        w.writeheader()
        w.writerows(report["rows"])
        return buf.getvalue()
    return render(report, fmt)
