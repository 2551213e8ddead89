"""Command-line campaigns: verification round-trips, counterexamples, invariants.

Every command emits a JSON report (stdout or ``--out``) whose ``body`` is a
pure function of the configuration and seed.  Exit codes: 0 when the campaign
met its expectation, 1 when some trial or invariant failed, 2 for
configuration, margin, or construction errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import identify, solenoid
from .distributions import Distribution, LinearFormSpec, joint_char_array
from .endomorphisms import Endo, annihilator
from .errors import GroupIdentError
from .funceq import (FunctionTable, bernstein_check, bernstein_square_table,
                     is_character)
from .groups import Group
from .identify import consistent_shifts
from .reporting import Stopwatch, make_report, write_report
from . import fixtures as fixture_io

DEFAULT_FAMILY = "2..12,2x4,6x6"


# -- argument parsing helpers ---------------------------------------------------


def parse_group(text: str) -> Group:
    return Group([int(p) for p in text.split("x")])


def parse_group_family(text: str) -> list[Group]:
    groups = []
    for token in filter(None, (t.strip() for t in text.split(","))):
        if ".." in token:
            lo, hi = token.split("..")
            groups.extend(Group([n]) for n in range(int(lo), int(hi) + 1))
        else:
            groups.append(parse_group(token))
    return groups


def parse_int_coeffs(text: str) -> list[int]:
    return [int(p) for p in text.split(",")]


def parse_rational_coeffs(text: str) -> list[Fraction]:
    return [Fraction(p) for p in text.split(",")]


def _scalar_endos(group: Group, cs) -> list[Endo]:
    return [Endo.scalar(group, c) for c in cs]


def find_shift_coeffs(group: Group, form: str) -> list[int] | None:
    """First scalar coefficient triple satisfying the kernel conditions."""
    L = group.exponent
    span = range(min(L, 12))
    for c1 in span:
        for c2 in span:
            for c3 in span:
                bs = _scalar_endos(group, (c1, c2, c3))
                if _shift_preconditions_hold(bs, form):
                    return [c1, c2, c3]
    return None


def _shift_preconditions_hold(bs, form: str) -> bool:
    if form == "I":
        return all(len((bs[i] - bs[j]).kernel()) == 1
                   for i in range(3) for j in range(i + 1, 3))
    return (len((bs[0] - bs[1]).kernel()) == 1
            and len(bs[2].kernel()) == 1)


# -- shift campaign ----------------------------------------------------------------


def run_shift_trial(group: Group, bs, form: str, seed, trial: int,
                    tol: float, expect_negative: bool) -> dict:
    mus = [Distribution.random(group, [seed, trial, j], 0.2) for j in range(3)]
    entry = {"trial": trial, "kind": "roundtrip"}
    if expect_negative:
        nus = list(mus)
        expected = identify.VERDICT_PRECONDITIONS
        shifts = None
    else:
        rng = np.random.default_rng([seed, trial, 7])
        x1 = group.element_at(int(rng.integers(0, group.size)))
        shifts = consistent_shifts(bs, form, x1)
        nus = [mu.shift(x) for mu, x in zip(mus, shifts)]
        expected = identify.VERDICT_SHIFT
    verify = identify.verify_form_I if form == "I" else identify.verify_form_II
    report = verify(bs, mus, nus, tol=tol)
    ok = report.verdict == expected
    if ok and shifts is not None:
        ok = report.shifts == tuple(shifts)
    entry.update(report.to_json_dict())
    entry["expected"] = expected
    entry["ok"] = bool(ok)
    return entry


def run_shift_adversarial(group: Group, bs, form: str, seed, trial: int,
                          tol: float, expect_negative: bool) -> dict:
    mus = [Distribution.random(group, [seed, trial, 10 + j], 0.2)
           for j in range(3)]
    rng = np.random.default_rng([seed, trial, 17])
    x = group.element_at(1 + int(rng.integers(0, group.size - 1)))
    nus = [mus[0].shift(x), mus[1], mus[2]]
    verify = identify.verify_form_I if form == "I" else identify.verify_form_II
    report = verify(bs, mus, nus, tol=tol)
    expected = (identify.VERDICT_PRECONDITIONS if expect_negative
                else identify.VERDICT_MISMATCH)
    entry = {"trial": trial, "kind": "adversarial"}
    entry.update(report.to_json_dict())
    entry["expected"] = expected
    entry["ok"] = bool(report.verdict == expected)
    return entry


def cmd_verify_shift(args) -> int:
    try:
        group = parse_group(args.group)
        if args.coeffs is None:
            cs = ([0, 1, 1] if args.form == "II"
                  else find_shift_coeffs(group, args.form))
            if cs is None:
                raise GroupIdentError(
                    f"no scalar coefficients satisfy the form {args.form} "
                    f"kernel conditions on {group!r}")
        else:
            cs = parse_int_coeffs(args.coeffs)
            if len(cs) != 3:
                raise GroupIdentError("verify-shift needs three coefficients")
        bs = _scalar_endos(group, cs)
    except (GroupIdentError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    watch = Stopwatch()
    trials = []
    for t in range(args.trials):
        trials.append(run_shift_trial(group, bs, args.form, args.seed, t,
                                      args.tol, args.expect_negative))
        trials.append(run_shift_adversarial(group, bs, args.form, args.seed,
                                            t, args.tol, args.expect_negative))
    failed = [t["trial"] for t in trials if not t["ok"]]
    body = {
        "status": "pass" if not failed else "fail",
        "form": args.form,
        "group": list(group.orders),
        "coeffs": cs,
        "preconditions_hold": _shift_preconditions_hold(bs, args.form),
        "expect_negative": args.expect_negative,
        "trials": trials,
        "counts": {"total": len(trials), "failed": len(failed)},
        "max_joint_residual": max(t["joint_residual"] for t in trials),
    }
    config = {"group": args.group, "form": args.form, "coeffs": cs,
              "trials": args.trials, "seed": args.seed, "tol": args.tol,
              "expect_negative": args.expect_negative}
    report = make_report("verify-shift", config, body,
                         {"seconds": watch.seconds()})
    write_report(report, args.out)
    return 0 if not failed else 1


# -- gaussian campaign -----------------------------------------------------------------


def run_gaussian_trial(lattice, bs, form: str, seed, trial: int,
                       tol: float) -> dict:
    muhats, nuhats, sigmas, _ = solenoid.synth_gaussian_instance(
        lattice, bs, [seed, trial], form)
    verify = (solenoid.verify_gaussian_form_I if form == "I"
              else solenoid.verify_gaussian_form_II)
    report = verify(bs, muhats, nuhats)
    sigma_err = max(abs(fit.sigma - s)
                    for fit, s in zip(report.fits, sigmas))
    ok = report.verdict == solenoid.VERDICT_GAUSSIAN and sigma_err < tol
    entry = {"trial": trial, "kind": "roundtrip", "sigma_error": sigma_err,
             "expected": solenoid.VERDICT_GAUSSIAN, "ok": bool(ok)}
    entry.update(report.to_json_dict())
    return entry


def run_gaussian_adversarial(lattice, bs, form: str, seed, trial: int) -> dict:
    muhats, nuhats, _, _ = solenoid.synth_gaussian_instance(
        lattice, bs, [seed, trial, 1], form)
    quartic = np.array([np.exp(-0.4 * float(p) ** 4) for p in lattice.points])
    nuhats[0] = FunctionTable(lattice, lattice.points,
                              nuhats[0].values * quartic)
    verify = (solenoid.verify_gaussian_form_I if form == "I"
              else solenoid.verify_gaussian_form_II)
    report = verify(bs, muhats, nuhats)
    ok = report.verdict != solenoid.VERDICT_GAUSSIAN
    entry = {"trial": trial, "kind": "adversarial",
             "expected": "negative-verdict", "ok": bool(ok)}
    entry.update(report.to_json_dict())
    return entry


def cmd_verify_gaussian(args) -> int:
    try:
        base = [int(a) for a in args.base.split(",")]
        lattice = solenoid.make_lattice(base, args.depth, args.radius)
        cs = parse_rational_coeffs(args.coeffs)
        if len(cs) != 4:
            raise GroupIdentError("verify-gaussian needs four coefficients")
    except (GroupIdentError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    watch = Stopwatch()
    trials = []
    try:
        for t in range(args.trials):
            trials.append(run_gaussian_trial(lattice, cs, args.form,
                                             args.seed, t, args.tol))
            trials.append(run_gaussian_adversarial(lattice, cs, args.form,
                                                   args.seed, t))
    except GroupIdentError as exc:
        print(f"margin error: {exc}", file=sys.stderr)
        return 2
    failed = [t["trial"] for t in trials if not t["ok"]]
    body = {
        "status": "pass" if not failed else "fail",
        "form": args.form,
        "base": base,
        "depth": args.depth,
        "radius": args.radius,
        "coeffs": [str(c) for c in cs],
        "trials": trials,
        "counts": {"total": len(trials), "failed": len(failed)},
    }
    config = {"base": args.base, "depth": args.depth, "radius": args.radius,
              "coeffs": args.coeffs, "form": args.form, "trials": args.trials,
              "seed": args.seed, "tol": args.tol}
    report = make_report("verify-gaussian", config, body,
                         {"seconds": watch.seconds()})
    write_report(report, args.out)
    return 0 if not failed else 1


# -- counterexamples -------------------------------------------------------------------


def _write_fixture_dists(directory, mus, nus) -> list[str]:
    from pathlib import Path

    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    for side, dists in (("mu", mus), ("nu", nus)):
        for j, dist in enumerate(dists, start=1):
            path = d / f"{side}{j}.dist"
            fixture_io.write_distribution(path, dist)
            written.append(str(path))
    return written


def cmd_counterexample(args) -> int:
    try:
        if args.kind == "poisson-pair":
            return _counterexample_poisson(args)
        if args.kind == "kernel-mass":
            return _counterexample_kernel(args)
        if args.kind == "plane-gaussian":
            return _counterexample_plane(args)
        return _counterexample_bernstein(args)
    except GroupIdentError as exc:
        print(f"cannot construct: {exc}", file=sys.stderr)
        return 2


def _counterexample_poisson(args) -> int:
    group = parse_group(args.group or "6")
    cs = parse_int_coeffs(args.coeffs) if args.coeffs else [1, 3, 2]
    bs = _scalar_endos(group, cs)
    mu3 = Distribution.random(group, [args.seed, 99], 0.2)
    mus, nus = identify.poisson_counterexample(bs, args.rate, mu3)
    lhs = joint_char_array(LinearFormSpec.form_I(bs), mus)
    rhs = joint_char_array(LinearFormSpec.form_I(bs), nus)
    closed = identify.poisson_closed_form_array(bs, args.rate, mu3)
    residual = float(np.max(np.abs(lhs - rhs)))
    closed_dev = float(max(np.max(np.abs(lhs - closed)),
                           np.max(np.abs(rhs - closed))))
    non_shift = [identify.recover_shift(mus[j], nus[j]) is None
                 for j in (0, 1)]
    ok = residual < args.tol and closed_dev < args.tol and all(non_shift)
    body = {
        "status": "pass" if ok else "fail",
        "kind": "poisson-pair",
        "group": list(group.orders),
        "coeffs": cs,
        "rate": args.rate,
        "joint_residual": residual,
        "closed_form_deviation": closed_dev,
        "non_shift_indices": [1, 2],
        "non_shift_certified": non_shift,
    }
    if args.fixtures:
        body["fixtures"] = _write_fixture_dists(args.fixtures, mus, nus)
    config = {"kind": args.kind, "group": args.group, "coeffs": cs,
              "rate": args.rate, "seed": args.seed, "tol": args.tol}
    write_report(make_report("counterexample", config, body), args.out)
    return 0 if ok else 1


def _counterexample_kernel(args) -> int:
    group = parse_group(args.group or "6")
    cs = parse_int_coeffs(args.coeffs) if args.coeffs else [1, 2, 2]
    bs = _scalar_endos(group, cs)
    mus, nus = identify.kernel_counterexample(bs)
    lhs = joint_char_array(LinearFormSpec.form_II(bs), mus)
    rhs = joint_char_array(LinearFormSpec.form_II(bs), nus)
    residual = float(np.max(np.abs(lhs - rhs)))
    non_shift = identify.recover_shift(mus[2], nus[2]) is None
    report = identify.verify_form_II(bs, mus, nus)
    ok = (residual < args.tol and non_shift
          and report.verdict == identify.VERDICT_PRECONDITIONS)
    body = {
        "status": "pass" if ok else "fail",
        "kind": "kernel-mass",
        "group": list(group.orders),
        "coeffs": cs,
        "joint_residual": residual,
        "non_shift_indices": [3],
        "non_shift_certified": [non_shift],
        "verifier_verdict": report.verdict,
    }
    if args.fixtures:
        body["fixtures"] = _write_fixture_dists(args.fixtures, mus, nus)
    config = {"kind": args.kind, "group": args.group, "coeffs": cs,
              "seed": args.seed, "tol": args.tol}
    write_report(make_report("counterexample", config, body), args.out)
    return 0 if ok else 1


def _counterexample_plane(args) -> int:
    cert = identify.plane_gaussian_counterexample()
    body = {"status": "pass" if cert.ok else "fail", "kind": "plane-gaussian"}
    body.update(cert.to_json_dict())
    config = {"kind": args.kind}
    write_report(make_report("counterexample", config, body), args.out)
    return 0 if cert.ok else 1


def _counterexample_bernstein(args) -> int:
    group = parse_group(args.group or "6x6")
    try:
        table = bernstein_square_table(group)
    except GroupIdentError as exc:
        print(f"config error: the bernstein table needs two even cyclic "
              f"factors ({exc})", file=sys.stderr)
        return 2
    passes = bernstein_check(table, tol=args.tol)
    char = is_character(table, tol=args.tol)
    involutions = group.order_two_count()
    chars_ok = all(
        bernstein_check(FunctionTable(group, group.elements(),
                                      group.pairing_matrix[group.index(x)]))
        and is_character(FunctionTable(group, group.elements(),
                                       group.pairing_matrix[group.index(x)]))
        for x in group.elements())
    ok = passes and not char and involutions >= 2 and chars_ok
    body = {
        "status": "pass" if ok else "fail",
        "kind": "bernstein",
        "group": list(group.orders),
        "bernstein_check": passes,
        "is_character": char,
        "order_two_count": involutions,
        "all_characters_pass_both": chars_ok,
    }
    if args.fixtures:
        from pathlib import Path

        d = Path(args.fixtures)
        d.mkdir(parents=True, exist_ok=True)
        path = d / "bernstein.table"
        fixture_io.write_table(path, table)
        body["fixtures"] = [str(path)]
    config = {"kind": args.kind, "group": args.group, "tol": args.tol}
    write_report(make_report("counterexample", config, body), args.out)
    return 0 if ok else 1


# -- invariant suite ---------------------------------------------------------------------


def _suite_endos(group: Group, seed) -> list[Endo]:
    endos = [Endo.identity(group), Endo.zero(group), Endo.scalar(group, 2)]
    if group.exponent > 2:
        endos.append(Endo.scalar(group, group.exponent - 1))
    rng = np.random.default_rng([seed, group.size])
    k = group.rank
    for _ in range(3):
        matrix = []
        for i, n_i in enumerate(group.orders):
            row = []
            for j, n_j in enumerate(group.orders):
                step = n_i // np.gcd(n_i, n_j)
                row.append(int(rng.integers(0, max(n_i // step, 1))) * step)
            matrix.append(row)
        endos.append(Endo(group, matrix))
    return endos


def run_invariant_suite(group: Group, seed, inject_fault: str | None = None) -> dict:
    violations = []
    max_dev = 0.0
    for e in _suite_endos(group, seed):
        adj = e.adjoint()
        if inject_fault == "adjoint":
            broken = [list(row) for row in adj.matrix]
            broken[0][0] = (broken[0][0] + 1) % group.orders[0]
            adj = Endo(group, broken)
        # Adjoint identity, checked on exact pairing phases.
        for x in group.elements():
            ex = e.apply(x)
            for y in group.elements():
                lhs = group.pair_phase(ex, y)
                rhs = group.pair_phase(x, adj.apply(y))
                if lhs != rhs:
                    violations.append(f"adjoint identity on {group!r}")
                    break
            else:
                continue
            break
        if adj.adjoint() != e:
            violations.append(f"double adjoint on {group!r}")
        image_adj = {group.index(x) for x in adj.image()}
        ann = {group.index(x) for x in annihilator(group, e.kernel())}
        if image_adj != ann:
            violations.append(f"image/annihilator identity on {group!r}")
        if adj.is_surjective() != (len(e.kernel()) == 1):
            violations.append(f"dense-image equivalence on {group!r}")
        if len(e.kernel()) * len(e.image()) != group.size:
            violations.append(f"kernel-image size product on {group!r}")
    if group.size <= 36:
        P = group.pairing_matrix
        for x in group.elements():
            row = FunctionTable(group, group.elements(), P[group.index(x)])
            if not is_character(row):
                violations.append(f"character multiplicativity on {group!r}")
            if not bernstein_check(row):
                violations.append(f"character bernstein property on {group!r}")
    return {"group": list(group.orders),
            "violations": sorted(set(violations)),
            "max_float_deviation": max_dev}


def cmd_invariants(args) -> int:
    try:
        groups = parse_group_family(args.groups)
        if not groups:
            raise GroupIdentError("empty group family")
    except (GroupIdentError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    watch = Stopwatch()
    results = [run_invariant_suite(g, args.seed, args.inject_fault)
               for g in groups]
    violations = [v for r in results for v in r["violations"]]
    body = {
        "status": "pass" if not violations else "fail",
        "groups": [r["group"] for r in results],
        "results": results,
        "violations": sorted(set(violations)),
    }
    config = {"groups": args.groups, "seed": args.seed,
              "inject_fault": args.inject_fault}
    report = make_report("invariants", config, body,
                         {"seconds": watch.seconds()})
    write_report(report, args.out)
    return 0 if not violations else 1


# -- entry point -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="groupident",
        description="Verification campaigns for linear-form identifiability "
                    "on finite abelian groups and solenoid character windows.")
    sub = parser.add_subparsers(dest="command", required=True)

    shift = sub.add_parser("verify-shift",
                           help="three-variable up-to-shift round-trips")
    shift.add_argument("--group", default="7", help="orders, e.g. 7 or 4x3")
    shift.add_argument("--form", choices=("I", "II"), default="I")
    shift.add_argument("--coeffs", default=None,
                       help="three scalar coefficients, e.g. 0,1,2")
    shift.add_argument("--trials", type=int, default=200)
    shift.add_argument("--seed", type=int, default=0)
    shift.add_argument("--tol", type=float, default=1e-8)
    shift.add_argument("--out", default=None)
    shift.add_argument("--expect-negative", action="store_true",
                       help="expect preconditions-violated verdicts")
    shift.set_defaults(func=cmd_verify_shift)

    gauss = sub.add_parser("verify-gaussian",
                           help="four-variable up-to-gaussian round-trips")
    gauss.add_argument("--base", default="2,3,5")
    gauss.add_argument("--depth", type=int, default=2)
    gauss.add_argument("--radius", type=int, default=60)
    gauss.add_argument("--coeffs", default="1,2,3,4",
                       help="four rational coefficients, e.g. 1,2,3,4")
    gauss.add_argument("--form", choices=("I", "II"), default="I")
    gauss.add_argument("--trials", type=int, default=50)
    gauss.add_argument("--seed", type=int, default=0)
    gauss.add_argument("--tol", type=float, default=1e-8)
    gauss.add_argument("--out", default=None)
    gauss.add_argument("--expect-negative", action="store_true")
    gauss.set_defaults(func=cmd_verify_gaussian)

    ce = sub.add_parser("counterexample",
                        help="reproduce the failure constructions")
    ce.add_argument("--kind", required=True,
                    choices=("poisson-pair", "kernel-mass", "plane-gaussian",
                             "bernstein"))
    ce.add_argument("--group", default=None,
                    help="orders (defaults: 6, or 6x6 for bernstein)")
    ce.add_argument("--coeffs", default=None)
    ce.add_argument("--rate", type=float, default=0.7,
                    help="poisson rate parameter")
    ce.add_argument("--seed", type=int, default=0)
    ce.add_argument("--tol", type=float, default=1e-12)
    ce.add_argument("--out", default=None)
    ce.add_argument("--fixtures", default=None,
                    help="directory for distribution/table fixtures")
    ce.add_argument("--expect-negative", action="store_true")
    ce.set_defaults(func=cmd_counterexample)

    inv = sub.add_parser("invariants",
                         help="duality and difference-machinery identities")
    inv.add_argument("--groups", default=DEFAULT_FAMILY)
    inv.add_argument("--seed", type=int, default=0)
    inv.add_argument("--out", default=None)
    inv.add_argument("--inject-fault", choices=("adjoint",), default=None,
                     help="self-test: corrupt the adjoint and expect exit 1")
    inv.set_defaults(func=cmd_invariants)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
