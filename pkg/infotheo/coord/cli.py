"""\
Strong coordination rate trade-offs
Usage:
    infocoord [options]

Options:
    -v, --verbose  : print progress and results summaries
    -d, --debug  : print solver/trial details
"""
import logging
import sys
from textwrap import dedent

import numpy as np
from argopt import argopt

from . import params
from .opt import (
    MarkovFeasibilityError,
    SolverOptions,
    UlsrForm,
    ulsr_rate,
    wyner_ci,
)
from .pmf import (
    joint_entropy,
    load_aux_channel,
    load_joint_pmf,
    marginal,
    mutual_information,
    product_joint,
    save_aux_channel,
    save_curve_csv,
    save_report_json,
    tv_distance,
)
from .rates import (
    RateTriple,
    achievable_bounds,
    dsbs_summary,
    emit_curve,
    scan_min_rate,
    t_star,
    xy_equal_region,
    xy_equal_region_for,
)
from .sim import SimConfig, SimRates, realized_rates, run_trials
from .tools import LOG_FORMAT, LogHandler, num2str

log = logging.getLogger(__name__)


def _required(args, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ValueError(f"--{name} is required")


def _solver_opts(args):
    Cnt = params.get_params(
        restarts=getattr(args, 'restarts', None), tol_objective=getattr(args, 'tol', None),
        seed=getattr(args, 'seed', None), threads=getattr(args, 'threads', None))
    return SolverOptions.from_params(Cnt)


def _floats(text, what):
    try:
        return [float(i) for i in text.split(',') if i.strip()]
    except ValueError:
        raise ValueError(f"cannot parse {what}: {text!r}") from None


def info(args):
    """\
    Information measures of a joint distribution
    Usage:
        info [options]

    Options:
        --dist FILE  : JSON joint distribution
        --measure MEASURE  : entropy (of (X,Y)), mi or tv [default: mi]
        --ref FILE  : reference for tv (default: product of the marginals)
    """
    _required(args, 'dist')
    q = load_joint_pmf(args.dist)
    if args.measure == 'entropy':
        return num2str(joint_entropy(q, 'xy'))
    if args.measure == 'mi':
        return num2str(mutual_information(q, 'x', 'y'))
    if args.measure == 'tv':
        ref = (load_joint_pmf(args.ref)
               if args.ref else product_joint(marginal(q, 'x'), marginal(q, 'y')))
        return num2str(tv_distance(q, ref))
    raise ValueError(f"unrecognised measure: {args.measure}")


def wyner(args):
    """\
    Wyner's common information (optimal rate without shared randomness)
    Usage:
        wyner [options]

    Options:
        --dist FILE  : JSON joint distribution
        --card K  : auxiliary alphabet size (default: |X||Y|)
        --restarts N  : number of starts [default: 50:int]
        --tol T  : objective change tolerance [default: 1e-9:float]
        --seed S  : random seed [default: 0:int]
        --threads N  : worker threads [default: 1:int]
        --out FILE  : write the optimal channel (JSON)
    """
    _required(args, 'dist')
    q = load_joint_pmf(args.dist)
    card = None if args.card is None else int(args.card)
    res = wyner_ci(q, card, _solver_opts(args))
    if args.out:
        save_aux_channel(res.channel, args.out)
        return f"C(X;Y) = {num2str(res.value)} (channel saved to {args.out})"
    return "\n".join([
        num2str(res.value), f"markov_defect {num2str(res.markov_defect)}",
        f"lower {num2str(res.lower)}", f"upper {num2str(res.upper)}"])


def ulsr(args):
    """\
    Optimal rate with unlimited shared randomness
    Usage:
        ulsr [options]

    Options:
        --dist FILE  : JSON joint distribution
        --form FORM  : maxpair or maxavg [default: maxavg]
        --restarts N  : number of random starts [default: 50:int]
        --tol T  : objective change tolerance [default: 1e-9:float]
        --seed S  : random seed [default: 0:int]
        --threads N  : worker threads [default: 1:int]
        --out FILE  : write the optimal channel (JSON)
    """
    _required(args, 'dist')
    q = load_joint_pmf(args.dist)
    res = ulsr_rate(q, UlsrForm.parse(args.form), _solver_opts(args))
    if args.out:
        save_aux_channel(res.channel, args.out)
        return f"R = {num2str(res.value)} (channel saved to {args.out})"
    return "\n".join([
        num2str(res.value), f"term_cond {num2str(res.term_cond)}",
        f"term_joint {num2str(res.term_joint)}"])


def dsbs(args):
    """\
    Closed forms of the doubly symmetric binary source DSBS(a)
    Usage:
        dsbs [options]

    Options:
        --a A  : crossover probability
        --points N  : curve points in [0, 1] [default: 101:int]
        --out FILE  : write the curve t,f,i_joint,i_cond (CSV)
        --tstar  : only print t*
    """
    _required(args, 'a')
    a = float(args.a)
    if args.tstar:
        return num2str(t_star(a))
    if args.out:
        points = emit_curve(a, args.points)
        save_curve_csv(points, args.out)
        return f"{len(points)} points saved to {args.out}"
    return "\n".join(f"{k} {num2str(v)}" for k, v in dsbs_summary(a).items())


def region(args):
    """\
    Achievable-region membership and minimum common rates
    Usage:
        region <mode> [options]

    Arguments:
        <mode>  : check, xy-equal or scan

    Options:
        --dist FILE  : JSON joint distribution
        --aux FILE  : JSON auxiliary channel p(u,u1,u2|x,y)
        --rates RATES  : R,R1,R2
        --hx H  : H(X) for xy-equal (default: from --dist)
        --r1 LIST  : comma-separated R1 grid for scan
        --r2 LIST  : comma-separated R2 grid for scan
    """
    if args.mode == 'check':
        _required(args, 'dist', 'aux', 'rates')
        q = load_joint_pmf(args.dist)
        bounds = achievable_bounds(q, load_aux_channel(args.aux, q.shape))
        return "member" if bounds.contains(RateTriple.parse(args.rates)) else "non-member"
    if args.mode == 'xy-equal':
        _required(args, 'rates')
        rates = RateTriple.parse(args.rates)
        if args.hx is not None:
            res = xy_equal_region(float(args.hx), rates)
        else:
            _required(args, 'dist')
            res = xy_equal_region_for(load_joint_pmf(args.dist), rates)
        return "member" if res else "non-member"
    if args.mode == 'scan':
        _required(args, 'dist', 'aux', 'r1', 'r2')
        q = load_joint_pmf(args.dist)
        bounds = achievable_bounds(q, load_aux_channel(args.aux, q.shape))
        r1, r2 = _floats(args.r1, '--r1'), _floats(args.r2, '--r2')
        table = scan_min_rate(bounds, r1, r2)
        lines = ["r1,r2,r_min"]
        for i, j in np.ndindex(table.shape):
            lines.append(",".join(map(num2str, (r1[i], r2[j], table[i, j]))))
        return "\n".join(lines)
    raise ValueError(f"unrecognised mode: {args.mode}")


def simulate(args):
    """\
    Monte Carlo trials of the coordination scheme
    Usage:
        simulate [options]

    Options:
        --dist FILE  : JSON joint distribution
        --aux FILE  : JSON auxiliary channel p(u|x,y)
        --n N  : block length [default: 32:int]
        --rates RATES  : R0,RSTAR,RT1,RT2
        --trials T  : number of trials [default: 100:int]
        --seed S  : random seed [default: 0:int]
        --eps E  : typicality slack [default: 0.1:float]
        --threads N  : worker threads [default: 1:int]
        --out FILE  : write the report (JSON)
    """
    _required(args, 'dist', 'aux', 'rates')
    q = load_joint_pmf(args.dist)
    cfg = SimConfig(q=q, channel=load_aux_channel(args.aux, q.shape), n=args.n,
                    rates=SimRates.parse(args.rates), eps_typ=args.eps, trials=args.trials,
                    seed=args.seed, threads=args.threads)
    report = run_trials(cfg)
    if args.out:
        save_report_json(report, args.out)
        return (f"tv_per_letter {num2str(report.tv_per_letter)} (report saved to {args.out})")
    realized = realized_rates(cfg)
    lines = [
        f"tv_per_letter {num2str(report.tv_per_letter)}",
        f"mstar_failure_rate {num2str(report.mstar_failure_rate)}",
        f"trials_run {report.trials_run}"]
    lines.extend(f"{k} {num2str(realized[k])}" for k in ('r0', 'r_star', 'rt1', 'rt2', 'r', 'r1',
                                                          'r2'))
    return "\n".join(lines)


def get_parser():
    parser = argopt(__doc__)
    subs = parser.add_subparsers(required=True, dest='command')

    def sub_parser(prog=None, **kwargs):
        return subs.add_parser(prog, **kwargs)

    for func in (info, wyner, ulsr, dsbs, region, simulate):
        argopt(dedent(func.__doc__), argparser=sub_parser).set_defaults(func=func)
    return parser


def dispatch(argv):
    """
    Run the subcommand of `argv`.
    Returns:
      (exit code, stdout text): 0 on success, 1 on invalid input,
      2 if the Wyner solver cannot meet the Markov tolerance.
    """
    try:
        args = get_parser().parse_args(argv)
    except SystemExit as exc:
        return (0 if exc.code in (0, None) else 1), ""
    logging.getLogger(__name__.rsplit('.', 1)[0]).setLevel(
        logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING)
    try:
        return 0, args.func(args)
    except MarkovFeasibilityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2, ""
    except (ValueError, IndexError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1, ""


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format=LOG_FORMAT, handlers=[LogHandler()])
    code, text = dispatch(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
