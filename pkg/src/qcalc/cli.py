"""``qcalc`` command-line front end.

Exit codes: 0 success, 1 a property/report check failed, 2 syntax or
usage error, 3 domain error, 4 unsupported or invalid calculus.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import sys

from .calculus import CalculusSpec, OneForm, Prolongation, act_left, act_right, differential, recover_min_poly
from .errors import DomainError, ExprSyntaxError, QCalcError, SpecError, UnsupportedSpecError
from .exterior import QuadSpec, find_primitive, wedge
from .expr import evaluate, format_value, parse_poly, parse_rational
from .gauge import (
    Connection,
    curvature,
    curvature_closed_form_q1,
    falsify_nonconstant_flat,
    flat_constants,
    gauge_inf,
    jet_gauge_exact,
    jet_normalize,
)
from .morphisms import PolyMap, check_chain_rule, is_differentiable, pushforward, super_hopf_check

EXIT_OK, EXIT_FAIL, EXIT_SYNTAX, EXIT_DOMAIN, EXIT_SPEC = 0, 1, 2, 3, 4

DEFAULTS = {"m": "l^2+1", "prolong": "maximal", "seed": "0"}


class UsageError(Exception):
    pass


def read_config(path):
    """``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise UsageError(f"{path}:{lineno}: expected 'key = value'")
            values[key.strip()] = value.strip()
    return values


def resolve_settings(args):
    """Flags override the config file, which overrides the defaults."""
    file_values = read_config(args.config) if args.config else {}
    settings = dict(DEFAULTS)
    if "q" in file_values and "m" in file_values:
        raise UsageError("config file sets both m and q")
    if "q" in file_values:
        settings.pop("m")
    settings.update(file_values)
    if args.m is not None or args.q is not None:
        settings.pop("m", None)
        settings.pop("q", None)
        if args.m is not None:
            settings["m"] = args.m
        else:
            settings["q"] = args.q
    for key in ("prolong", "seed"):
        if getattr(args, key) is not None:
            settings[key] = getattr(args, key)
    return settings


def build_spec(settings):
    try:
        prolongation = Prolongation(settings["prolong"])
    except ValueError:
        raise UsageError(f"--prolong must be maximal or skew, got {settings['prolong']!r}") from None
    if "q" in settings:
        return QuadSpec(parse_rational(settings["q"]), prolongation).calculus
    return CalculusSpec(parse_poly(settings["m"], "l"), prolongation)


def _poly(text):
    return parse_poly(text)


def _form(text, spec, kind="a 1-form"):
    value = evaluate(text, spec)
    if not isinstance(value, OneForm):
        raise ExprSyntaxError(f"expected {kind}", 1, 1)
    return value


def _map(args, spec):
    source = CalculusSpec(parse_poly(args.m1, "l"), spec.prolongation) if args.m1 else spec
    target = CalculusSpec(parse_poly(args.m2, "l"), spec.prolongation) if args.m2 else spec
    return PolyMap(_poly(args.phi), source, target)


def _jet(spec):
    quad = QuadSpec.from_calculus(spec)
    if quad.q != 0:
        raise UnsupportedSpecError("jet commands need the 2-jet calculus (--q 0)")
    return quad


def cmd_eval(args, spec, settings):
    return [format_value(evaluate(args.expr, spec))]


def cmd_d(args, spec, settings):
    return [format_value(differential(_poly(args.f), spec))]


def cmd_lact(args, spec, settings):
    return [format_value(act_left(_poly(args.f), _form(args.form, spec)))]


def cmd_ract(args, spec, settings):
    return [format_value(act_right(_form(args.form, spec), _poly(args.f)))]


def cmd_wedge(args, spec, settings):
    quad = QuadSpec.from_calculus(spec)
    return [format_value(wedge(_form(args.left, spec), _form(args.right, spec), quad))]


def _connection(text, spec):
    return Connection(_form(text, spec), QuadSpec.from_calculus(spec))


def cmd_curv(args, spec, settings):
    return [format_value(curvature(_connection(args.alpha, spec)))]


def cmd_curv_oracle(args, spec, settings):
    return [format_value(curvature_closed_form_q1(_connection(args.alpha, spec)))]


def cmd_gauge_inf(args, spec, settings):
    return [format_value(gauge_inf(_connection(args.alpha, spec), _poly(args.theta)).alpha)]


def cmd_jet_gauge(args, spec, settings):
    _jet(spec)
    a, b = jet_gauge_exact(_poly(args.a), _poly(args.b), _poly(args.theta))
    return [f"a: {a}, b: {b}"]


def cmd_jet_normalize(args, spec, settings):
    _jet(spec)
    theta, mu = jet_normalize(_poly(args.a), _poly(args.b), spec.prolongation)
    return [f"theta: {theta}, mu: {mu}"]


def cmd_coh1(args, spec, settings):
    quad = QuadSpec.from_calculus(spec)
    h, c = find_primitive(_form(args.form, spec), quad)
    return [f"primitive: {h}, residual: {c}"]


def cmd_flat_const(args, spec, settings):
    locus = flat_constants(QuadSpec.from_calculus(spec))
    lines = [f"flat constants: {locus}"]
    if args.point is not None:
        s, t = (parse_rational(v) for v in args.point.split(","))
        lines.append(f"({s}, {t}): {'flat' if locus.contains(s, t) else 'not flat'}")
    return lines


def cmd_falsify_flat(args, spec, settings):
    report = falsify_nonconstant_flat(
        QuadSpec.from_calculus(spec), args.deg_bound, args.trials, int(settings["seed"])
    )
    return [report.summary()], report.passed


def cmd_diffable(args, spec, settings):
    verdict = is_differentiable(_map(args, spec))
    if verdict:
        return [f"differentiable: yes ({verdict.reason})"]
    return [f"differentiable: no, certificate: {format_value(verdict.certificate)}"]


def cmd_push(args, spec, settings):
    pmap = _map(args, spec)
    return [format_value(pushforward(pmap, _form(args.form, pmap.source)))]


def cmd_chain(args, spec, settings):
    ok = check_chain_rule(_map(args, spec), _poly(args.f))
    return [f"{'PASS' if ok else 'FAIL'}: d(f o phi) = phi_*(d f)"], ok


def cmd_hopf_check(args, spec, settings):
    report = super_hopf_check(QuadSpec.from_calculus(spec))
    return report.lines(), report.passed


def cmd_recover_m(args, spec, settings):
    return [recover_min_poly(spec).format("l")]


def build_parser():
    p = argparse.ArgumentParser(prog="qcalc", description=__doc__.splitlines()[0])
    group = p.add_mutually_exclusive_group()
    group.add_argument("--m", help="monic minimal polynomial in l, e.g. 'l^2+1'")
    group.add_argument("--q", help="rational q >= 0 selecting m = l^2+q^2")
    p.add_argument("--prolong", choices=["maximal", "skew"])
    p.add_argument("--seed", help="seed for randomized reports")
    p.add_argument("--config", help="file of 'key = value' lines")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, **options):
        sp = sub.add_parser(name)
        for arg in positional:
            sp.add_argument(arg)
        for opt, kw in options.items():
            sp.add_argument("--" + opt.replace("_", "-"), dest=opt, **kw)
        sp.set_defaults(func=func)
        return sp

    required = {"required": True}
    map_opts = {"phi": required, "m1": {}, "m2": {}}
    add("eval", cmd_eval, "expr")
    add("d", cmd_d, "f")
    add("lact", cmd_lact, "f", "form")
    add("ract", cmd_ract, "form", "f")
    add("wedge", cmd_wedge, "left", "right")
    add("curv", cmd_curv, "alpha")
    add("curv-oracle", cmd_curv_oracle, "alpha")
    add("gauge-inf", cmd_gauge_inf, "alpha", "theta")
    add("jet-gauge", cmd_jet_gauge, a=required, b=required, theta=required)
    add("jet-normalize", cmd_jet_normalize, a=required, b=required)
    add("coh1", cmd_coh1, "form")
    add("flat-const", cmd_flat_const, point={"help": "s,t membership query"})
    add(
        "falsify-flat",
        cmd_falsify_flat,
        deg_bound={"type": int, "default": 4},
        trials={"type": int, "default": 200},
    )
    add("diffable", cmd_diffable, **map_opts)
    add("push", cmd_push, "form", **map_opts)
    add("chain", cmd_chain, "f", **map_opts)
    add("hopf-check", cmd_hopf_check)
    add("recover-m", cmd_recover_m)
    return p


def run_command(argv):
    """Run one invocation; returns ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    out, err = io.StringIO(), io.StringIO()
    try:
        with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
            args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else EXIT_SYNTAX), out.getvalue(), err.getvalue()
    try:
        settings = resolve_settings(args)
        spec = build_spec(settings)
        result = args.func(args, spec, settings)
    except ExprSyntaxError as exc:
        return EXIT_SYNTAX, "", f"syntax error: {exc}\n"
    except UsageError as exc:
        return EXIT_SYNTAX, "", f"usage error: {exc}\n"
    except OSError as exc:
        return EXIT_SYNTAX, "", f"cannot read config: {exc}\n"
    except SpecError as exc:
        return EXIT_SPEC, "", f"unsupported spec: {exc}\n"
    except DomainError as exc:
        return EXIT_DOMAIN, "", f"domain error: {type(exc).__name__}: {exc}\n"
    except QCalcError as exc:
        return EXIT_DOMAIN, "", f"error: {exc}\n"
    ok = True
    if isinstance(result, tuple):
        result, ok = result
    return (EXIT_OK if ok else EXIT_FAIL), "".join(line + "\n" for line in result), ""


def main(argv=None):
    code, out, err = run_command(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
