"""Command-line entry point: ``modfermat <command> ...``.

Exit status: 0 on success (empty results included), 1 on usage errors or
invalid input, 2 when a computation fails.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from pathlib import Path

import mpmath

from . import __version__
from .config import load_config
from .core import polytext
from .core.rational import fmt, parse_rational
from .errors import InvalidArgument, NeedsMorePrimes, PreconditionError, PrecisionError


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _rational(text):
    try:
        return parse_rational(text)
    except InvalidArgument as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


# --- output --------------------------------------------------------------------

class Report:
    """Collects output lines; rows render according to --format."""

    def __init__(self, fmt_name):
        self.fmt = fmt_name
        self.lines = []

    def line(self, text=""):
        self.lines.append(text)

    def block(self, text):
        self.lines.extend(text.rstrip("\n").split("\n"))

    def rows(self, kind, rows):
        """rows: list of [(name, value), ...] with identical names."""
        if not rows:
            self.line(f"# no {kind} found")
            return
        names = [k for k, _ in rows[0]]
        if self.fmt == "csv":
            buf = io.StringIO()
            w = csv.writer(buf, lineterminator="\n")
            w.writerow(names)
            for r in rows:
                w.writerow([v for _, v in r])
            self.block(buf.getvalue())
        elif self.fmt == "records":
            for r in rows:
                self.line(kind + " " + " ".join(f"{k}={v}" for k, v in r))
        else:
            widths = [max(len(n), *(len(r[i][1]) for r in rows)) for i, n in enumerate(names)]
            self.line("  ".join(n.rjust(w) for n, w in zip(names, widths)))
            for r in rows:
                self.line("  ".join(v.rjust(w) for (_, v), w in zip(r, widths)))

    def kv(self, pairs):
        if self.fmt == "table":
            for k, v in pairs:
                self.line(f"{k} = {v}")
        else:
            self.rows("result", [pairs])

    def text(self):
        return "\n".join(self.lines) + "\n"


def _num(z, digits=30):
    z = mpmath.mpc(z)
    if abs(z.imag) <= abs(z) * mpmath.mpf(2) ** (-mpmath.mp.prec // 2):
        return mpmath.nstr(z.real, digits)
    return f"{mpmath.nstr(z.real, digits)} {'+' if z.imag >= 0 else '-'} {mpmath.nstr(abs(z.imag), digits)}i"


# --- commands ------------------------------------------------------------------

def cmd_phi(a, cfg, out):
    from .modpoly import modular_polynomial

    mp = modular_polynomial(a.N, cfg)
    out.line(f"# level = {a.N}  psi = {mp.psi}  terms = {len(mp.poly)}")
    out.block(polytext.dumps(mp.poly, ("X", "Y")))


def cmd_phi_verify(a, cfg, out):
    from .modpoly import verify_phi

    rep = verify_phi(a.N, trials=a.trials, tolerance=cfg.tolerance, config=cfg)
    out.rows("check", [[("check", c.name), ("status", c.status), ("detail", c.detail or "-")]
                       for c in rep.checks])
    out.line(f"# overall = {'pass' if rep.ok else 'fail'}")
    return 0 if rep.ok else 2


def cmd_hilbert(a, cfg, out):
    from .classinv import hilbert_class_polynomial
    from .core.mpoly import MPoly

    cp = hilbert_class_polynomial(a.D, cfg)
    out.line(f"# D = {a.D}  h = {cp.class_number}")
    out.block(polytext.dumps(MPoly.from_univariate(cp.poly, 0, 1), ("X",)))


def cmd_classnum(a, cfg, out):
    from .classinv import reduced_forms

    forms = reduced_forms(a.D)
    out.line(f"# D = {a.D}  h = {len(forms)}")
    out.rows("form", [[("a", str(f.a)), ("b", str(f.b)), ("c", str(f.c))] for f in forms])


def cmd_special(a, cfg, out):
    from .classinv import is_special

    D = is_special(a.x, a.dbound)
    out.kv([("x", fmt(a.x)), ("dbound", str(a.dbound)), ("D", "none" if D is None else str(D))])


def cmd_kuhne(a, cfg, out):
    from .classinv import kuhne_check

    rep = kuhne_check(a.Dbound, cfg)
    out.kv([("dbound", str(rep.Dbound)), ("discriminants", str(rep.discriminants)),
            ("pairs_checked", str(rep.pairs_checked)), ("exact_fallbacks", str(rep.exact_fallbacks)),
            ("violations", ",".join(f"({d1},{d2})" for d1, d2 in rep.violations) or "none"),
            ("status", "pass" if rep.ok else "fail")])
    return 0 if rep.ok else 2


def cmd_fermat_curve(a, cfg, out):
    from .fermat import fermat_curve

    V = fermat_curve(a.N, a.M, cfg)
    out.line(f"# V_({a.N},{a.M})  deg_x = {V.degree(0)}  deg_y = {V.degree(1)}")
    out.block(polytext.dumps(V, ("x", "y")))


def cmd_fermat_search(a, cfg, out):
    from .fermat import RECORD_SCHEMA, search_solutions

    recs = search_solutions(a.Nmax, a.Mmax, a.H, cfg)
    out.line(f"# schema = {RECORD_SCHEMA}  count = {len(recs)}")
    out.rows("record", [r.fields() for r in recs])


def cmd_sgh_probe(a, cfg, out):
    from .fermat import sgh_probe

    r = sgh_probe(a.x, a.N, a.primes, cfg, allow_special=a.allow_special)
    out.kv(r.fields())
    if out.fmt != "csv":
        for p, pat in sorted(r.report.prime_patterns.items()):
            out.line(f"# pattern mod {p}: {' '.join(map(str, pat))}")
        if r.report.bad_primes:
            out.line(f"# skipped primes: {','.join(map(str, r.report.bad_primes))}")


def cmd_gen_search(a, cfg, out):
    from .fermat import generalized_search

    V, names = polytext.loads(Path(a.polyfile).read_text())
    hits = generalized_search(V, a.k, a.Nmax, a.H, cfg)
    out.line(f"# variables = {','.join(names)}  count = {len(hits)}")
    out.rows("hit", [[("level", str(h.level)),
                      ("u", ",".join(fmt(u) for u in h.point)),
                      ("witnesses", ";".join(" ".join(f"({fmt(x)},{n})" for x, n in w) for w in h.witnesses))]
                     for h in hits])


def cmd_hecke(a, cfg, out):
    from .geometry import hecke_related

    N = hecke_related(a.x, a.y, a.Nmax, cfg)
    out.kv([("x", fmt(a.x)), ("y", fmt(a.y)), ("nmax", str(a.Nmax)), ("N", "none" if N is None else str(N))])


def cmd_classify(a, cfg, out):
    from .geometry import dim_and_complexity, parse_point, smallest_special

    T = smallest_special(parse_point(a.point), a.nmax, a.dbound, cfg)
    dim, delta = dim_and_complexity(T)
    out.block(T.dumps())
    out.line(f"# dim = {dim}  complexity = {delta}  special = {str(T.is_special).lower()}")


def cmd_atypical(a, cfg, out):
    from .geometry import SpecialStructure, is_atypical

    T = SpecialStructure.loads(Path(a.structfile).read_text())
    res = is_atypical(a.dimA, a.dimV, T, a.k)
    out.kv([("dimA", str(a.dimA)), ("dimV", str(a.dimV)), ("dimT", str(T.dim)), ("k", str(a.k)),
            ("atypical", str(res).lower())])


def cmd_abc(a, cfg, out):
    from .multiplicative import abc_quality

    t = abc_quality(a.a, a.b)
    out.kv([("a", str(t.a)), ("b", str(t.b)), ("c", str(t.c)), ("radical", str(t.radical)),
            ("quality", f"{t.quality:.6f}")])


def cmd_fml_search(a, cfg, out):
    from .multiplicative import SUnitGroup, fml_search

    G = SUnitGroup(tuple(a.primes))
    sols = fml_search(G, a.nmin, a.exp_max, a.base_height, a.sunit_exp_max)
    out.line(f"# G = <-1{''.join(',' + str(p) for p in G.primes)}>  count = {len(sols)}")
    out.rows("fml", [[("s", fmt(s.s)), ("x", fmt(s.x)), ("n", str(s.n)), ("t", fmt(s.t)), ("y", fmt(s.y)),
                      ("m", str(s.m)), ("A", str(s.cleared[0])), ("B", str(s.cleared[1])),
                      ("C", str(s.cleared[2])), ("quality", f"{s.abc.quality:.6f}")] for s in sols])


def cmd_pure_eq(a, cfg, out):
    from .multiplicative import pure_equation_reducible

    red, why = pure_equation_reducible(a.c, a.n)
    out.kv([("c", fmt(a.c)), ("n", str(a.n)), ("reducible", str(red).lower()), ("reason", why)])


def cmd_risman(a, cfg, out):
    from .multiplicative import risman_order_bound

    r = risman_order_bound(a.n)
    out.kv([("n", str(r.n)), ("h_min", str(r.h_min)), ("t", str(r.witness[0])), ("l", str(r.witness[1])),
            ("sqrt_n", f"{r.sqrt_n:.6f}"), ("note", "lower bound")])


def _complex_arg(re_text, im_text):
    try:
        re = mpmath.mpf(re_text)
        im = mpmath.mpf(im_text) if im_text is not None else mpmath.mpf(0)
    except (ValueError, TypeError):
        raise InvalidArgument(f"bad number {re_text!r} {im_text!r}") from None
    return mpmath.mpc(re, im)


def cmd_uhp(a, cfg, out):
    from . import uhp

    bits = cfg.float_precision_bits
    with mpmath.workprec(bits):
        if a.uhp_cmd == "reduce":
            t, g = uhp.reduce_to_F(_complex_arg(a.re, a.im))
            (p, q), (r, s) = g
            out.kv([("tau", _num(t)), ("gamma", f"[[{p},{q}],[{r},{s}]]")])
        elif a.uhp_cmd == "jval":
            v, err = uhp.j_with_bound(_complex_arg(a.re, a.im), bits)
            out.kv([("j", _num(v)), ("truncation_bound", f"{err:.3e}"), ("precision", str(bits))])
        else:
            t = uhp.j_inverse(_complex_arg(a.re, a.im), bits)
            out.kv([("tau", _num(t)), ("precision", str(bits))])


def cmd_count_exp(a, cfg, out):
    from .uhp import counting_experiment

    rep = counting_experiment(a.x, a.N, cfg.float_precision_bits, a.match_tolerance, cfg,
                              allow_special=a.allow_special)
    out.line(f"# x = {fmt(rep.x)}  N = {rep.N}  precision = {rep.precision}  tolerance = {rep.tolerance:g}")
    out.line(f"# tau = {_num(rep.tau, 20)}")
    out.rows("match", [[("a", str(m.coset.a)), ("b", str(m.coset.b)), ("d", str(m.coset.d)),
                        ("value", _num(m.value, 20)), ("root", _num(m.root, 20)),
                        ("residual", f"{m.residual:.2e}")] for m in rep.matches])
    out.line("# height histogram (proxy max(a,b,d)): "
             + " ".join(f"{h}:{c}" for h, c in rep.height_histogram.items()))


# --- parser --------------------------------------------------------------------

def build_parser():
    p = _Parser(prog="modfermat", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"modfermat {__version__}")
    p.add_argument("--config", help="key = value configuration file")
    p.add_argument("--cache-dir")
    p.add_argument("--phi-max-level", type=_positive)
    p.add_argument("--hilbert-max-disc", type=_positive)
    p.add_argument("--precision", type=_positive, dest="float_precision_bits", help="working precision in bits")
    p.add_argument("--tolerance", type=float)
    p.add_argument("--threads", dest="thread_count")
    p.add_argument("--format", choices=("table", "records", "csv"), default="table")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def cmd(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=fn)
        return sp

    s = cmd("phi", cmd_phi, "print the modular polynomial Phi_N")
    s.add_argument("N", type=_positive)
    s = cmd("phi-verify", cmd_phi_verify, "check symmetry, monicity, Kronecker and numeric vanishing")
    s.add_argument("N", type=_positive)
    s.add_argument("--trials", type=_positive, default=5)
    s = cmd("hilbert", cmd_hilbert, "Hilbert class polynomial H_D")
    s.add_argument("D", type=int)
    s = cmd("classnum", cmd_classnum, "reduced forms and class number of D")
    s.add_argument("D", type=int)
    s = cmd("special", cmd_special, "discriminant of a rational singular modulus")
    s.add_argument("x", type=_rational)
    s.add_argument("--dbound", type=_positive, default=200)
    s = cmd("kuhne", cmd_kuhne, "no special point on u + v = 1 for |D| <= Dbound")
    s.add_argument("Dbound", type=_positive)
    s = cmd("fermat-curve", cmd_fermat_curve, "the curve V_{N,M}")
    s.add_argument("N", type=_positive)
    s.add_argument("M", type=_positive)
    s = cmd("fermat-search", cmd_fermat_search, "rational solutions with height(u) <= H")
    s.add_argument("Nmax", type=_positive)
    s.add_argument("Mmax", type=_positive)
    s.add_argument("H", type=_positive)
    s = cmd("sgh-probe", cmd_sgh_probe, "rational roots and factor-degree bound of Phi_N(x, U)")
    s.add_argument("x", type=_rational)
    s.add_argument("N", type=_positive)
    s.add_argument("--primes", type=_int_list)
    s.add_argument("--allow-special", action="store_true")
    s = cmd("gen-search", cmd_gen_search, "points of V whose coordinates are Hecke images")
    s.add_argument("polyfile")
    s.add_argument("k", type=_positive)
    s.add_argument("Nmax", type=_positive)
    s.add_argument("H", type=_positive)
    s = cmd("hecke", cmd_hecke, "least N <= Nmax with Phi_N(x, y) = 0")
    s.add_argument("x", type=_rational)
    s.add_argument("y", type=_rational)
    s.add_argument("Nmax", type=_positive)
    s = cmd("classify", cmd_classify, "smallest special structure containing a point")
    s.add_argument("point", help="comma-separated rationals, e.g. 0,54000,7")
    s.add_argument("--nmax", type=_positive, default=2)
    s.add_argument("--dbound", type=_positive, default=200)
    s = cmd("atypical", cmd_atypical, "dim A > dim V + dim T - k")
    s.add_argument("dimA", type=int)
    s.add_argument("dimV", type=int)
    s.add_argument("structfile")
    s.add_argument("k", type=_positive)
    s = cmd("abc", cmd_abc, "radical and quality of a + b = c")
    s.add_argument("a", type=_positive)
    s.add_argument("b", type=_positive)
    s = cmd("fml-search", cmd_fml_search, "s x^n + t y^m = 1 over S-units")
    s.add_argument("--primes", type=_int_list, default=[])
    s.add_argument("--nmin", type=_positive, default=4)
    s.add_argument("--exp-max", type=_positive, default=5)
    s.add_argument("--base-height", type=_positive, default=3)
    s.add_argument("--sunit-exp-max", type=int, default=2)
    s = cmd("pure-eq", cmd_pure_eq, "reducibility of X^n - c over Q")
    s.add_argument("c", type=_rational)
    s.add_argument("n", type=_positive)
    s = cmd("risman", cmd_risman, "min over n = t l, t squarefree, of max(l, phi(t))")
    s.add_argument("n", type=_positive)
    s = cmd("uhp", cmd_uhp, "upper half-plane numerics")
    usub = s.add_subparsers(dest="uhp_cmd", metavar="action", parser_class=_Parser)
    usub.required = True
    for name in ("reduce", "jval", "jinv"):
        u = usub.add_parser(name)
        u.add_argument("re")
        u.add_argument("im", nargs="?")
    s = cmd("count-exp", cmd_count_exp, "match coset values of j to roots of Phi_N(x, U)")
    s.add_argument("x", type=_rational)
    s.add_argument("N", type=_positive)
    s.add_argument("--match-tolerance", type=float, default=1e-6)
    s.add_argument("--allow-special", action="store_true")
    return p


def _header(cfg, argv):
    lines = [f"# modfermat {__version__}", "# command: " + " ".join(argv)]
    lines += [f"# config: {ln}" for ln in cfg.as_lines()]
    return "\n".join(lines) + "\n"


def main(argv=None, stdout=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config(a.config, cache_dir=a.cache_dir, phi_max_level=a.phi_max_level,
                          hilbert_max_disc=a.hilbert_max_disc, float_precision_bits=a.float_precision_bits,
                          tolerance=a.tolerance,
                          thread_count=None if a.thread_count is None else _threads(a.thread_count))
        out = Report(a.format)
        rc = a.func(a, cfg, out) or 0
    except (InvalidArgument, OSError) as exc:
        print(f"modfermat: error: {exc}", file=sys.stderr)
        return 1
    except (PreconditionError, PrecisionError, NeedsMorePrimes, ArithmeticError) as exc:
        print(f"modfermat: computation failed: {exc}", file=sys.stderr)
        return 2
    stdout.write(_header(cfg, argv) + out.text())
    if rc:
        print(f"modfermat: {a.command}: verification failed", file=sys.stderr)
    return rc


def _threads(text):
    if text == "auto":
        import os

        return os.cpu_count() or 1
    try:
        return int(text)
    except ValueError:
        raise InvalidArgument(f"bad thread count {text!r}") from None


if __name__ == "__main__":
    sys.exit(main())
