"""Command-line front end.

Every command writes a ``#`` header (version, canonical flags, seeds)
followed by CSV or TSV rows. Exit codes: 0 success, 1 a bound or order
check failed, 2 bad flags or unsupported parameters, 3 I/O error.
"""
import argparse
import csv
import io
import sys
from dataclasses import dataclass, field

from superzeno import __version__
from superzeno.analysis import estimate_order, search_sequence, verify_k_recursion
from superzeno.errors import SuperZenoError
from superzeno.evolve import (
    cost_table,
    leakage,
    recursive_bound,
    zeno_worst_leakage,
)
from superzeno.qcore import SubspaceSplit, random_hamiltonian
from superzeno.sequences import (
    FAMILIES,
    make_sequence,
    periodic_sequence,
    pulse_count_formula,
    recursive_sequence,
)
from superzeno.suites import (
    ensemble_member,
    inequality_suite,
    periodic_suite,
    recursive_bound_suite,
    zeno_suite,
)

COMMANDS = ("gen", "leak", "order", "compare", "search", "verify", "cost")
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
COMPARE_MAX_N = 128


class UsageError(Exception):
    pass


def parse_seeds(text):
    """``"1-20"``, ``"3,5,7"`` or a mix such as ``"1-3,9"``."""
    seeds = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part:
            lo, hi = part.split("-", 1)
            seeds.extend(range(int(lo), int(hi) + 1))
        else:
            seeds.append(int(part))
    if not seeds:
        raise UsageError("--seeds must list at least one seed")
    return seeds


def format_seeds(seeds):
    runs = []
    start = prev = seeds[0]
    for s in list(seeds[1:]) + [None]:
        if s is not None and s == prev + 1:
            prev = s
            continue
        runs.append(str(start) if start == prev else f"{start}-{prev}")
        if s is not None:
            start = prev = s
    return ",".join(runs)


def _fmt(v):
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


@dataclass
class RunConfig:
    command: str
    dim: int = 4
    dim_p: int = 2
    seeds: list = field(default_factory=lambda: list(range(1, 21)))
    et_values: list = field(default_factory=lambda: [1.0])
    m_or_n: int | None = None
    epsilon: float = 1e-4
    output_path: str | None = None
    format: str = "csv"
    family: str | None = None
    max_m: int = 6
    target: int | None = None
    restarts: int = 100

    def to_flags(self):
        parts = [self.command]
        if self.family is not None:
            parts += ["--family", self.family]
        if self.m_or_n is not None:
            parts += ["--param", str(self.m_or_n)]
        parts += [
            "--dim", str(self.dim),
            "--dimp", str(self.dim_p),
            "--seeds", format_seeds(self.seeds),
            "--et", ",".join(f"{v:.17g}" for v in self.et_values),
            "--epsilon", f"{self.epsilon:.17g}",
            "--format", self.format,
            "--max-m", str(self.max_m),
            "--restarts", str(self.restarts),
        ]
        if self.target is not None:
            parts += ["--target", str(self.target)]
        if self.output_path is not None:
            parts += ["--out", self.output_path]
        return " ".join(parts)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="superzeno", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"superzeno {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        p = sub.add_parser(name)
        if name == "gen":
            p.add_argument("gen_family", nargs="?")
            p.add_argument("gen_param", nargs="?", type=int)
        p.add_argument("--family")
        p.add_argument("--param", type=int)
        p.add_argument("--dim", type=int, default=4)
        p.add_argument("--dimp", type=int, default=2)
        p.add_argument("--seeds", default="1-20")
        p.add_argument("--et", default="1")
        p.add_argument("--epsilon", type=float, default=1e-4)
        p.add_argument("--out")
        p.add_argument("--format", choices=("csv", "tsv"), default="csv")
        p.add_argument("--max-m", type=int, default=6)
        p.add_argument("--target", type=int)
        p.add_argument("--restarts", type=int, default=100)
    return parser


def parse_config(argv):
    args = build_parser().parse_args(argv)
    family, param = args.family, args.param
    if args.command == "gen":
        family = args.gen_family or family
        param = args.gen_param if args.gen_param is not None else param
    try:
        ets = [float(v) for v in args.et.split(",") if v.strip()]
    except ValueError:
        raise UsageError(f"--et must be a comma-separated list of numbers, got {args.et!r}") from None
    if not ets:
        raise UsageError("--et must list at least one value")
    try:
        seeds = parse_seeds(args.seeds)
    except ValueError:
        raise UsageError(f"cannot parse --seeds {args.seeds!r}") from None
    return RunConfig(
        command=args.command, dim=args.dim, dim_p=args.dimp, seeds=seeds, et_values=ets,
        m_or_n=param, epsilon=args.epsilon, output_path=args.out, format=args.format,
        family=family, max_m=args.max_m, target=args.target, restarts=args.restarts,
    )


class Output:
    def __init__(self, cfg):
        self.cfg = cfg
        self.buf = io.StringIO()
        self.delim = "," if cfg.format == "csv" else "\t"
        self.buf.write(f"# superzeno {__version__}\n")
        self.buf.write(f"# flags: {cfg.to_flags()}\n")
        self.buf.write(f"# seeds: {format_seeds(cfg.seeds)}\n")
        self.writer = csv.writer(self.buf, delimiter=self.delim, lineterminator="\n")

    def comment(self, text):
        self.buf.write(f"# {text}\n")

    def row(self, values):
        self.writer.writerow([_fmt(v) for v in values])

    def line(self, text):
        self.buf.write(text + "\n")

    def flush(self):
        text = self.buf.getvalue()
        if self.cfg.output_path:
            with open(self.cfg.output_path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
        else:
            sys.stdout.write(text)


def _require_family(cfg):
    if cfg.family is None or cfg.m_or_n is None:
        raise UsageError(f"{cfg.command} needs --family and --param")
    if cfg.family not in FAMILIES:
        valid = "; ".join(f"{k} ({v[1]})" for k, v in FAMILIES.items())
        raise UsageError(f"unknown family {cfg.family!r}; valid: {valid}")
    return make_sequence(cfg.family, cfg.m_or_n)


def cmd_gen(cfg, out):
    seq = _require_family(cfg)
    # plain sequence line only, so the output can be piped back in
    out.buf = io.StringIO()
    out.line(seq.to_line())
    return EXIT_OK


def _ensemble(cfg):
    split = SubspaceSplit.standard(cfg.dim, cfg.dim_p)
    return [(s, random_hamiltonian(cfg.dim, s, 1.0)) for s in cfg.seeds], split


def cmd_leak(cfg, out):
    seq = _require_family(cfg)
    members, split = _ensemble(cfg)
    out.row(["seed", "label", "ET", "N", "b_norm", "leakage", "bound", "satisfied"])
    status = EXIT_OK
    for seed, h in members:
        for et in cfg.et_values:
            r = leakage(seq, h, split, et)
            out.row([seed, r.sequence_label, r.total_time_ET, r.pulse_count, r.b_norm,
                     r.leakage, r.bound, r.bound_satisfied])
            if not r.bound_satisfied:
                status = EXIT_FAIL
    return status


def cmd_order(cfg, out):
    seq = _require_family(cfg)
    members, split = _ensemble(cfg)
    out.row(["seed", "label", "fitted_slope", "window_lo", "window_hi", "taylor_order",
             "claimed_order", "agree"])
    status = EXIT_OK
    for seed, h in members:
        est = estimate_order(seq, h, split)
        ok = est.agree and (seq.claimed_order is None or est.taylor_order == seq.claimed_order)
        out.row([seed, seq.label, est.fitted_slope, est.fit_window_ET[0], est.fit_window_ET[1],
                 est.taylor_order, seq.claimed_order, ok])
        if not ok:
            status = EXIT_FAIL
    return status


def compare_rows(members, split, et, max_n=COMPARE_MAX_N):
    """Fig.-1 style curves: analytic bound and simulated worst-case leakage."""
    rows = []
    for n in range(1, max_n + 1):
        sim = max(zeno_worst_leakage(h, split, et, n) for _, h in members)
        rows.append(("zeno", n, et ** 2 / n, sim))
    for n in range(1, max_n + 1):
        seq = periodic_sequence(n)
        sim = max(leakage(seq, h, split, et).leakage for _, h in members)
        rows.append(("periodic", n, et ** 4 / n ** 2, sim))
    m = 0
    while pulse_count_formula(m) <= max_n:
        seq = recursive_sequence(m)
        sim = max(leakage(seq, h, split, et).leakage for _, h in members)
        rows.append(("superzeno", seq.pulse_count, recursive_bound(m, et), sim))
        m += 1
    order = {"periodic": 0, "superzeno": 1, "zeno": 2}
    return sorted(rows, key=lambda r: (order[r[0]], r[1]))


def cmd_compare(cfg, out):
    members, split = _ensemble(cfg)
    out.row(["family", "ET", "N", "bound_leakage", "simulated_leakage"])
    for et in cfg.et_values:
        for fam, n, bound, sim in compare_rows(members, split, et):
            out.row([fam, et, n, bound, sim])
    return EXIT_OK


def cmd_search(cfg, out):
    if cfg.m_or_n is None:
        raise UsageError("search needs --param (number of pulses)")
    target = cfg.m_or_n if cfg.target is None else cfg.target
    res = search_sequence(cfg.m_or_n, target, cfg.restarts, cfg.seeds[0])
    label = f"search n={cfg.m_or_n} target={target}"
    out.comment(f"runs={res.restarts} successes={res.successful_runs} "
                f"distinct={len(res.solutions)} suspects={len(res.suspects)}")
    if cfg.m_or_n == 6 and target == 6:
        if res.solutions:
            out.comment("report: inconsistent with the claim N_min(6) > 6: "
                        "a 6-pulse solution was found")
        else:
            out.comment("report: no 6-pulse solution found; consistent with the claim N_min(6) > 6, not a proof")
    for s in res.solutions:
        out.line(f"{s.to_line(label)}; success")
    for s in res.suspects:
        out.line(f"{s.to_line(label)}; suspect")
    return EXIT_OK


def cmd_verify(cfg, out):
    members = [ensemble_member(s) for s in cfg.seeds]
    rows = verify_k_recursion(cfg.max_m, [h for h, _ in members], [s for _, s in members])
    out.row(["m", "K_hat", "K_bound", "ok"])
    status = EXIT_OK
    for r in rows:
        out.row([r.m, r.K_hat, r.K_bound, r.ok])
        if not r.ok:
            status = EXIT_FAIL
    suites = {
        "leakage+amplitude": recursive_bound_suite(cfg.seeds, ms=range(cfg.max_m + 1)),
        "periodic": periodic_suite(cfg.seeds),
        "zeno": zeno_suite(cfg.seeds),
        "inequalities": inequality_suite(),
    }
    for name, checks in suites.items():
        bad = sum(not c.ok for c in checks)
        out.comment(f"suite {name}: {len(checks)} checks, {bad} violations")
        if bad:
            status = EXIT_FAIL
    return status


def cmd_cost(cfg, out):
    members, split = _ensemble(cfg)
    _, h = members[0]
    out.row(["family", "ET", "epsilon", "pulses", "simulated_leakage", "large_t_reference"])
    for r in cost_table(h, split, cfg.epsilon, cfg.et_values):
        out.row([r.family, r.ET, r.epsilon, r.pulses, r.leakage, r.reference])
    return EXIT_OK


HANDLERS = {
    "gen": cmd_gen, "leak": cmd_leak, "order": cmd_order, "compare": cmd_compare,
    "search": cmd_search, "verify": cmd_verify, "cost": cmd_cost,
}


def main(argv=None):
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
        out = Output(cfg)
        status = HANDLERS[cfg.command](cfg, out)
    except (UsageError, SuperZenoError) as exc:
        print(f"superzeno: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        out.flush()
    except OSError as exc:
        print(f"superzeno: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return status


if __name__ == "__main__":
    sys.exit(main())
