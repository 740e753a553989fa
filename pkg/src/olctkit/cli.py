"""Command-line front end.

Subcommands: ``gen``, ``transform``, ``inverse``, ``stolct`` and
``verify <check>``.  Values resolve as flags > ``--config`` JSON > built-in
defaults.  Exit status: 0 on success with every check passing, 2 when a
check fails, 1 on usage or operational errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from . import io as oio
from . import olct, stolct as st, suites, uncertainty as unc
from ._parallel import resolve_threads, set_default_threads
from .errors import OLCTError, UsageError
from .grid import IndexSet, balanced_dt, centered_grid, gen_signal, gen_window, parse_descriptor
from .params import OLCTParams, ft
from .report import BoundReport, combine, dumps

COMMANDS = ("gen", "transform", "inverse", "stolct", "verify")
CHECKS = ("parseval", "additivity", "donoho-stark", "abb", "hausdorff-young", "lieb",
          "essential-support", "ft-relation", "norm-identity", "support")

# suite sizes used when --n / --cases are not given
SUITE_DEFAULTS = {
    "parseval": (256, 100),
    "additivity": (1024, 20),
    "donoho-stark": (256, 100),
    "abb": (128, 30),
    "hausdorff-young": (256, 200),
    "lieb": (128, 500),
    "essential-support": (128, 50),
    "ft-relation": (128, 10),
    "norm-identity": (512, 1),
    "support": (256, 50),
}


@dataclass
class RunConfig:
    command: str
    check: str | None = None
    params: OLCTParams | None = None
    input: str | None = None
    output: str | None = None
    method: str = "fast"
    seed: int = 0
    n: int = 1024
    dt: float | None = None
    t0: float | None = None
    hop: int = 1
    signal: str = "gaussian:sigma=1"
    window: str = "gaussian:1.0"
    report: str | None = None
    threads: int = 1
    cases: int | None = None
    p: float | None = None
    q: float | None = None
    epsilon: float | None = None
    omega: tuple[float, float] | None = None
    gamma: tuple[float, float] | None = None
    iters: int = 200

    def to_dict(self) -> dict:
        d = dataclasses.asdict(self)
        d["params"] = self.params.to_dict() if self.params else None
        for key in ("omega", "gamma"):
            d[key] = list(d[key]) if d[key] is not None else None
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "RunConfig":
        d = dict(d)
        d["params"] = _coerce_params(d.get("params"))
        for key in ("omega", "gamma"):
            if d.get(key) is not None:
                d[key] = tuple(float(v) for v in d[key])
        return cls(**d)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _coerce_params(value) -> OLCTParams | None:
    if value is None or isinstance(value, OLCTParams):
        return value
    try:
        if isinstance(value, dict):
            return OLCTParams.from_dict(value)
        return OLCTParams.from_string(str(value))
    except OLCTError as exc:
        raise UsageError(f"invalid --params: {exc} (parameters must satisfy ad - bc = 1)") from exc
    except (ValueError, KeyError) as exc:
        raise UsageError(f"invalid --params {value!r}: {exc}") from exc


def _pair(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo,hi, got {text!r}") from None
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file with RunConfig fields")
    common.add_argument("--threads", type=int, help="worker threads (default: $OLCT_KIT_THREADS or all cores)")
    common.add_argument("--params", help="a,b,c,d,tau,eta")
    common.add_argument("--seed", type=int)
    common.add_argument("--n", type=int)

    parser = _Parser(prog="olctkit", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"olctkit {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("gen", parents=[common], help="generate a test signal CSV")
    p.add_argument("--signal", help="descriptor, e.g. gaussian:sigma=1,center=0 or noise:42")
    p.add_argument("--dt", type=float)
    p.add_argument("--t0", type=float)
    p.add_argument("--out", dest="output")

    for name in ("transform", "inverse"):
        p = sub.add_parser(name, parents=[common], help=f"{name} OLCT of a CSV file")
        p.add_argument("--in", dest="input")
        p.add_argument("--out", dest="output")
        p.add_argument("--method", choices=("fast", "quad", "quadrature"))

    p = sub.add_parser("stolct", parents=[common], help="short-time OLCT grid")
    p.add_argument("--in", dest="input")
    p.add_argument("--out", dest="output")
    p.add_argument("--window", help="gaussian:SIGMA or hann:LENGTH")
    p.add_argument("--hop", type=int)

    p = sub.add_parser("verify", parents=[common], help="run a verification check or suite")
    p.add_argument("check", choices=CHECKS)
    p.add_argument("--report")
    p.add_argument("--cases", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--q", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--omega", type=_pair, help="time interval lo,hi")
    p.add_argument("--gamma", type=_pair, help="OLCT-domain interval lo,hi")
    p.add_argument("--iters", type=int)
    p.add_argument("--in", dest="input")
    p.add_argument("--window")
    return parser


# options whose comma-separated values may start with a minus sign
_LIST_OPTIONS = ("--params", "--omega", "--gamma")


def _join_list_options(argv: list[str]) -> list[str]:
    out, i = [], 0
    while i < len(argv):
        if argv[i] in _LIST_OPTIONS and i + 1 < len(argv):
            out.append(f"{argv[i]}={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def parse_args(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(_join_list_options(list(argv)))
    if ns.command is None:
        raise UsageError("olctkit: a subcommand is required: " + ", ".join(COMMANDS))
    values = {k: v for k, v in vars(ns).items() if v is not None and k != "config"}
    merged: dict = {}
    if ns.config:
        try:
            merged.update(json.loads(Path(ns.config).read_text()))
        except OSError as exc:
            raise UsageError(f"cannot read config {ns.config}: {exc.strerror}") from exc
        except json.JSONDecodeError as exc:
            raise UsageError(f"config {ns.config} is not valid JSON: {exc}") from exc
        unknown = set(merged) - {f.name for f in dataclasses.fields(RunConfig)}
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
    merged.update(values)
    merged["command"] = ns.command
    if merged.get("method") == "quad":
        merged["method"] = "quadrature"
    cfg = RunConfig.from_dict(merged)
    return resolve(cfg, explicit=set(merged))


def resolve(cfg: RunConfig, explicit=frozenset()) -> RunConfig:
    """Fill every default so the config is fully explicit."""
    cfg.threads = resolve_threads(cfg.threads if "threads" in explicit else None)
    if cfg.command == "verify":
        n, cases = SUITE_DEFAULTS[cfg.check]
        if "n" not in explicit:
            cfg.n = n
        if cfg.cases is None:
            cfg.cases = cases
    if cfg.dt is None:
        b = cfg.params.b if cfg.params and cfg.params.b > 0 else 1.0
        cfg.dt = balanced_dt(cfg.n, b)
    if cfg.t0 is None:
        cfg.t0 = centered_grid(cfg.n, cfg.dt)[0]
    needs = {"transform": ("params", "input", "output"), "inverse": ("input", "output"),
             "stolct": ("params", "input", "output"), "gen": ("output",)}
    for key in needs.get(cfg.command, ()):
        if getattr(cfg, key) is None:
            raise UsageError(f"olctkit {cfg.command}: --{'in' if key == 'input' else 'out' if key == 'output' else key} is required")
    return cfg


# ------------------------------------------------------------ commands


def _window(cfg: RunConfig, f):
    kind, kw = parse_descriptor(cfg.window)
    return gen_window(kind, f.n, -(f.n // 2) * f.dt, f.dt, normalize=True, **kw)


def _cmd_gen(cfg: RunConfig) -> int:
    kind, kw = parse_descriptor(cfg.signal)
    if kind in ("noise", "atoms"):
        kw.setdefault("seed", cfg.seed)
    f = gen_signal(kind, cfg.n, cfg.t0, cfg.dt, **kw)
    oio.write_signal(cfg.output, f)
    return 0


def _cmd_transform(cfg: RunConfig) -> int:
    f = oio.read_signal(cfg.input)
    F = olct.olct_forward(f, cfg.params, cfg.method, threads=cfg.threads)
    for w in olct.sampling_adequacy(f, cfg.params):
        print(f"warning: {w}", file=sys.stderr)
    oio.write_spectrum(cfg.output, F)
    return 0


def _cmd_inverse(cfg: RunConfig) -> int:
    F = oio.read_spectrum(cfg.input, cfg.params)
    f = olct.olct_inverse(F, F.params, cfg.method, threads=cfg.threads)
    oio.write_signal(cfg.output, f)
    return 0


def _cmd_stolct(cfg: RunConfig) -> int:
    f = oio.read_signal(cfg.input)
    V = st.stolct(f, _window(cfg, f), cfg.params, hop=cfg.hop, threads=cfg.threads, window_id=cfg.window)
    oio.write_tfgrid(cfg.output, V)
    return 0


def _verify_signal(cfg: RunConfig):
    if cfg.input:
        return oio.read_signal(cfg.input)
    kind, kw = parse_descriptor(cfg.signal)
    if kind in ("noise", "atoms"):
        kw.setdefault("seed", cfg.seed)
    return gen_signal(kind, cfg.n, cfg.t0, cfg.dt, **kw)


def _run_check(cfg: RunConfig) -> BoundReport:
    name, kw = cfg.check, {"seed": cfg.seed, "n": cfg.n, "params": cfg.params}
    if name == "donoho-stark" and (cfg.omega or cfg.gamma):
        f = _verify_signal(cfg)
        A = cfg.params or ft()
        F = olct.olct_forward(f, A)
        om = IndexSet.interval(f, *cfg.omega) if cfg.omega else IndexSet.full(f)
        ga = IndexSet.interval(F, *cfg.gamma) if cfg.gamma else IndexSet.full(F)
        return unc.donoho_stark_check(f, A, om, ga, F=F)
    if name == "abb" and (cfg.omega or cfg.gamma):
        A = cfg.params or ft()
        f = gen_signal("gaussian", cfg.n, cfg.t0, cfg.dt)
        F = olct.olct_forward(f, A)
        om = IndexSet.interval(f, *cfg.omega) if cfg.omega else IndexSet.full(f)
        ga = IndexSet.interval(F, *cfg.gamma) if cfg.gamma else IndexSet.full(F)
        return unc.abb_projection_probe(A, om, ga, iters=cfg.iters, seed=cfg.seed, t0=cfg.t0)
    if name == "norm-identity":
        f = _verify_signal(cfg)
        return st.check_norm_identity(f, _window(cfg, f), cfg.params or ft(), threads=cfg.threads)
    if name == "donoho-stark":
        reports = suites.donoho_stark_suite(seeds=cfg.cases, **kw)
    elif name == "support":
        reports = suites.support_suite(seed=cfg.seed, n=cfg.n, cases=cfg.cases)
    else:
        kw["cases"] = cfg.cases
        if name == "abb":
            kw["iters"] = cfg.iters
        if name == "lieb" and cfg.p is not None:
            kw["ps"] = (cfg.p,)
        if name == "hausdorff-young" and cfg.q is not None:
            kw["qs"] = (cfg.q,)
        if name == "essential-support" and cfg.epsilon is not None:
            kw["epsilons"] = (cfg.epsilon,)
        if name in ("lieb", "essential-support"):
            kw["threads"] = cfg.threads
        reports = suites.SUITES[name](**kw)
    return combine(name, reports)


def _cmd_verify(cfg: RunConfig) -> int:
    report = _run_check(cfg)
    report.metadata["config"] = cfg.to_dict()
    # thread count never changes results; keep it out of the report so
    # reports are byte-identical across --threads
    report.metadata["config"].pop("threads", None)
    _emit(cfg, report.to_dict())
    print(report.summary(), file=sys.stderr)
    return 0 if report.passed else 2


def _emit(cfg: RunConfig, obj: dict) -> None:
    """Write the report to ``--report``, or to stdout when no path is given."""
    text = dumps(obj) + "\n"
    if cfg.report:
        Path(cfg.report).write_text(text)
    else:
        sys.stdout.write(text)


_DISPATCH = {"gen": _cmd_gen, "transform": _cmd_transform, "inverse": _cmd_inverse,
             "stolct": _cmd_stolct, "verify": _cmd_verify}


def run(cfg: RunConfig) -> int:
    set_default_threads(cfg.threads)
    try:
        return _DISPATCH[cfg.command](cfg)
    except FileNotFoundError as exc:
        message = f"no such file: {exc.filename}"
    except OSError as exc:
        message = f"{exc.filename}: {exc.strerror}"
    except OLCTError as exc:
        message = str(exc)
    finally:
        set_default_threads(None)
    print(f"error: {message}", file=sys.stderr)
    if cfg.command == "verify":
        try:
            _emit(cfg, {"name": cfg.check, "lhs": None, "rhs": None, "slack": None, "pass": False,
                        "metadata": {"error": message}})
        except OSError:
            pass
    return 1


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
