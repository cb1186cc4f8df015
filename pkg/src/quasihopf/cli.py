"""Command-line front end: structure-file checking, twisting, product
builds, conversions, theorem-level verification suites, and fixture
emission with canonical serialization.

Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import fixtures, io
from .comodule import (BicomoduleAlgebra, ComoduleAlgebra,
                       bicomodule_to_right_op_tensor, comodule_variant,
                       verify_bicomodule_algebra, verify_comodule_algebra)
from .coring import build_coring, verify_coring
from .doihopf import (DoiHopfContext, adjunction_maps, compute_rat,
                      induce_doi_hopf, rational_check, to_smash_module,
                      trivial_module, verify_doi_hopf)
from .errors import ParseError, QuasiHopfError, UsageError
from .fields import FieldError, field_from_tag
from .fixtures import regular_comodule_algebra
from .hopf import (GaugeTransformation, QuasiHopfAlgebra, drinfeld_twist,
                   gauge_twist, variant, verify_quasi_hopf)
from .modcoalg import (ModuleCoalgebra, dualize, gauge_twist_module_coalgebra,
                       verify_module_coalgebra)
from .report import CheckReport
from .smash import (ProductAlgebra, check_prop_3_10, diagonal_crossed_product,
                    generalized_smash, koppinen_smash, phi_isomorphism,
                    right_generalized_smash, verify_product_algebra)
from .tensor import LinMap, multiply, unit_tensor
from .yd import (YetterDrinfeldContext, doihopf_to_yd, induce_yd, verify_yd,
                 yd_to_doihopf)

from .doihopf import FiniteModule


def _field_from_flag(flag: str):
    try:
        return field_from_tag(flag)
    except FieldError as exc:
        raise UsageError(str(exc)) from exc


def _jobs(args) -> int:
    env = os.environ.get("QHA_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError("QHA_JOBS must be an integer")
    return max(1, args.jobs)


def _report_json(reports):
    subjects = []
    for rep in reports:
        checks = []
        for rec in rep.records:
            entry = {
                "id": rec.check_id,
                "passed": rec.passed,
                "witness": list(rec.witness) if isinstance(rec.witness, tuple)
                else rec.witness,
                "advisory": not rec.fatal,
            }
            if not rec.passed and rec.lhs is not None:
                entry["lhs"] = repr(rec.lhs)
                entry["rhs"] = repr(rec.rhs)
            checks.append(entry)
        subjects.append({"subject": rep.subject, "passed": rep.passed,
                         "checks": checks})
    return {
        "format": "qha-report.v1",
        "passed": all(r.passed for r in reports),
        "subjects": subjects,
    }


def _finish(args, reports, emitted=()):
    for rep in reports:
        print(rep.render())
    for path in emitted:
        print("wrote %s" % path)
    if getattr(args, "report", None):
        payload = _report_json(reports)
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(io.canonical_dumps(payload))
    return 0 if all(r.passed for r in reports) else 1


def _verify_any(value, jobs):
    if isinstance(value, QuasiHopfAlgebra):
        return verify_quasi_hopf(value, jobs=jobs)
    if isinstance(value, BicomoduleAlgebra):
        return verify_bicomodule_algebra(value, jobs=jobs)
    if isinstance(value, ComoduleAlgebra):
        return verify_comodule_algebra(value, jobs=jobs)
    if isinstance(value, ModuleCoalgebra):
        return verify_module_coalgebra(value, jobs=jobs)
    if isinstance(value, ProductAlgebra):
        return verify_product_algebra(value, jobs=jobs)
    if isinstance(value, GaugeTransformation):
        rep = CheckReport("gauge transformation")
        spaces = value.H.spaces(2)
        rep.compare("two-sided-inverse",
                    multiply(spaces, value.t, value.inv) +
                    multiply(spaces, value.inv, value.t),
                    unit_tensor(spaces) + unit_tensor(spaces))
        return rep
    raise UsageError("no verifier for %r" % (value,))


def cmd_check(args):
    value = io.parse(args.file)
    return _finish(args, [_verify_any(value, _jobs(args))])


def cmd_fixture(args):
    if args.action != "emit":
        raise UsageError("unknown fixture action %r" % (args.action,))
    field = _field_from_flag(args.field)
    name = args.name
    if name not in fixtures.FIXTURE_NAMES:
        raise UsageError("unknown fixture %r (choose from %s)"
                         % (name, ", ".join(fixtures.FIXTURE_NAMES)))
    outdir = args.dir
    os.makedirs(outdir, exist_ok=True)
    emitted = []

    def emit_base(base_name):
        H = fixtures.fixture(base_name, field)
        path = os.path.join(outdir, base_name + io.SUFFIX)
        io.emit_value(H, path)
        emitted.append(path)
        return path

    if name in ("kz2", "h2"):
        emit_base(name)
    else:
        base_path = emit_base("h2")
        value = fixtures.fixture(name, field)
        path = os.path.join(outdir, name + io.SUFFIX)
        io.emit_value(value, path, base_path=base_path)
        emitted.append(path)
    rep = CheckReport("fixture %s" % name)
    rep.add("emitted", True)
    return _finish(args, [rep], emitted)


def cmd_twist(args):
    value = io.parse(args.file)
    gauge = io.parse(args.gauge)
    if not isinstance(gauge, GaugeTransformation):
        raise UsageError("--gauge must point at a gauge file")
    jobs = _jobs(args)
    emitted = []
    if isinstance(value, QuasiHopfAlgebra):
        twisted = gauge_twist(value, gauge)
        report = verify_quasi_hopf(twisted, jobs=jobs)
        if args.out:
            io.emit_value(twisted, args.out)
            emitted.append(args.out)
    elif isinstance(value, ComoduleAlgebra) and value.side == "right":
        from .comodule import gauge_twist_comodule_algebra
        twisted, base = gauge_twist_comodule_algebra(value, gauge)
        report = verify_comodule_algebra(twisted, jobs=jobs)
        if args.out:
            base_out = os.path.splitext(args.out)[0] + "-base" + io.SUFFIX
            io.emit_value(base, base_out)
            io.emit_value(twisted, args.out, base_path=base_out)
            emitted += [base_out, args.out]
    elif isinstance(value, ModuleCoalgebra) and value.side == "left":
        twisted, base = gauge_twist_module_coalgebra(value, gauge)
        report = verify_module_coalgebra(twisted, jobs=jobs)
        if args.out:
            base_out = os.path.splitext(args.out)[0] + "-base" + io.SUFFIX
            io.emit_value(base, base_out)
            io.emit_value(twisted, args.out, base_path=base_out)
            emitted += [base_out, args.out]
    else:
        raise UsageError("cannot gauge-twist %r" % (value,))
    return _finish(args, [report], emitted)


def cmd_dtwist(args):
    value = io.parse(args.file)
    if not isinstance(value, QuasiHopfAlgebra):
        raise UsageError("dtwist needs a quasi-Hopf structure file")
    twist = drinfeld_twist(value)
    report = CheckReport("canonical gauge of %s" % (value.name or args.file))
    spaces = value.spaces(2)
    report.compare("two-sided-inverse",
                   multiply(spaces, twist.t, twist.inv) +
                   multiply(spaces, twist.inv, twist.t),
                   unit_tensor(spaces) + unit_tensor(spaces))
    from .tensor import Tensor, apply_linear_map, switch_legs
    ok = True
    for i in range(value.dim):
        s_h = apply_linear_map(value.antipode,
                               Tensor.basis(value.field, (value.dim,), (i,)), (0,))
        lhs = multiply(spaces, twist.t, multiply(
            spaces, apply_linear_map(value.comult, s_h, (0,)), twist.inv))
        flipped = switch_legs(value.comult.column((i,)), (1, 0))
        rhs = apply_linear_map(value.antipode,
                               apply_linear_map(value.antipode, flipped, (0,)), (1,))
        if lhs != rhs:
            ok = False
            break
    report.add("conjugates-antipode", ok)
    emitted = []
    if args.out:
        io.emit_value(twist, args.out, base_path=args.file)
        emitted.append(args.out)
    return _finish(args, [report], emitted)


def _load_coalgebra(path) -> ModuleCoalgebra:
    value = io.parse(path)
    if not isinstance(value, ModuleCoalgebra):
        raise UsageError("%s is not a module-coalgebra file" % path)
    return value


def _load_bicomodule(path) -> BicomoduleAlgebra:
    value = io.parse(path)
    if not isinstance(value, BicomoduleAlgebra):
        raise UsageError("%s is not a bicomodule-algebra file" % path)
    return value


def cmd_build(args):
    jobs = _jobs(args)
    emitted = []
    if args.what == "smash":
        C = _load_coalgebra(args.coalgebra)
        if C.side != "right":
            raise UsageError("smash expects a right module coalgebra")
        B = io.parse(args.comodule) if args.comodule else \
            regular_comodule_algebra(C.H, "left")
        product = generalized_smash(dualize(C), B)
    elif args.what == "rsmash":
        A = _load_bicomodule(args.bicomodule)
        C = _load_coalgebra(args.coalgebra)
        from .hopf import op_tensor
        from .modcoalg import bimodule_to_op_tensor_module_coalgebra
        square = op_tensor(A.H)
        first, second, _, _, _ = bicomodule_to_right_op_tensor(A, base=square)
        over = bimodule_to_op_tensor_module_coalgebra(C, base=square)
        chosen = first if args.realization == 1 else second
        product = right_generalized_smash(chosen, dualize(over))
    elif args.what == "koppinen":
        C = _load_coalgebra(args.coalgebra)
        B = io.parse(args.comodule) if args.comodule else \
            regular_comodule_algebra(C.H, "left")
        product = koppinen_smash(C, B)
    elif args.what == "diagonal":
        A = _load_bicomodule(args.bicomodule)
        C = _load_coalgebra(args.coalgebra)
        product = diagonal_crossed_product(A, dualize(C), args.kind)
    elif args.what == "coring":
        return _build_coring(args)
    else:
        raise UsageError("unknown build %r" % (args.what,))
    report = verify_product_algebra(product, jobs=jobs)
    if args.out:
        io.emit_value(product, args.out)
        emitted.append(args.out)
    return _finish(args, [report], emitted)


def _build_coring(args):
    jobs = _jobs(args)
    kind = args.kind
    if kind == "BC":
        C = _load_coalgebra(args.coalgebra)
        B = io.parse(args.comodule) if args.comodule else \
            regular_comodule_algebra(C.H, "left")
        coring = build_coring("BC", B=B, C=C)
    elif kind == "CA":
        C = _load_coalgebra(args.coalgebra)
        if C.side != "left":
            raise UsageError("the CA coring expects a left module coalgebra")
        A = io.parse(args.comodule) if args.comodule else \
            regular_comodule_algebra(C.H, "right")
        coring = build_coring("CA", A=A, C=C)
    elif kind == "YD":
        A = _load_bicomodule(args.bicomodule)
        C = _load_coalgebra(args.coalgebra)
        coring = build_coring("YD", A=A, C=C)
    else:
        raise UsageError("coring kind must be BC, CA or YD")
    return _finish(args, [verify_coring(coring, jobs=jobs)])


def cmd_convert(args):
    jobs = _jobs(args)
    emitted = []
    if args.what == "variant":
        value = io.parse(args.input)
        if isinstance(value, QuasiHopfAlgebra):
            out = variant(value, args.kind)
            report = verify_quasi_hopf(out, jobs=jobs)
            if args.out:
                io.emit_value(out, args.out)
                emitted.append(args.out)
        elif isinstance(value, ComoduleAlgebra):
            out = comodule_variant(value, args.kind)
            report = verify_comodule_algebra(out, jobs=jobs)
            if args.out:
                base_out = os.path.splitext(args.out)[0] + "-base" + io.SUFFIX
                io.emit_value(out.H, base_out)
                io.emit_value(out, args.out, base_path=base_out)
                emitted += [base_out, args.out]
        elif isinstance(value, ModuleCoalgebra):
            if args.kind == "cop":
                out = value.cop()
            elif args.kind == "as-right":
                out = value.as_right_over_op()
            else:
                raise UsageError("module-coalgebra variants: cop, as-right")
            report = verify_module_coalgebra(out, jobs=jobs)
            if args.out:
                base_out = os.path.splitext(args.out)[0] + "-base" + io.SUFFIX
                io.emit_value(out.H, base_out)
                io.emit_value(out, args.out, base_path=base_out)
                emitted += [base_out, args.out]
        else:
            raise UsageError("cannot take a variant of %r" % (value,))
        return _finish(args, [report], emitted)
    if args.what == "bicomodule-r1r2":
        A = _load_bicomodule(args.input)
        first, second, base, witness, search = bicomodule_to_right_op_tensor(A)
        reports = [verify_comodule_algebra(first, jobs=jobs),
                   verify_comodule_algebra(second, jobs=jobs), search]
        if args.out:
            base_out = os.path.splitext(args.out)[0] + "-base" + io.SUFFIX
            io.emit_value(base, base_out)
            first_out = os.path.splitext(args.out)[0] + "-r1" + io.SUFFIX
            second_out = os.path.splitext(args.out)[0] + "-r2" + io.SUFFIX
            io.emit_value(first, first_out, base_path=base_out)
            io.emit_value(second, second_out, base_path=base_out)
            emitted += [base_out, first_out, second_out]
        return _finish(args, reports, emitted)
    if args.what in ("yd2dh", "dh2yd"):
        A = _load_bicomodule(args.bicomodule)
        C = _load_coalgebra(args.coalgebra)
        ctx = YetterDrinfeldContext(A, C)
        action = LinMap(A.field, (A.alg.dim, A.alg.dim), (A.alg.dim,),
                        A.alg.mult.cols)
        seed = FiniteModule(A.alg.dim, A.alg, action, "left", name="regular")
        M = induce_yd(seed, ctx)
        if args.what == "yd2dh":
            out = yd_to_doihopf(M, ctx)
            report = verify_doi_hopf(out, ctx.doihopf, jobs=jobs)
        else:
            dh = induce_doi_hopf(seed, ctx.doihopf)
            out = doihopf_to_yd(dh, ctx)
            report = verify_yd(out, ctx, jobs=jobs)
        return _finish(args, [report])
    raise UsageError("unknown conversion %r" % (args.what,))


def cmd_verify(args):
    jobs = _jobs(args)
    suite = args.suite
    if suite == "iso-2.9":
        C = _load_coalgebra(args.C)
        _, _, source, target, report = phi_isomorphism(C)
        reports = [report, verify_product_algebra(source, jobs=jobs),
                   verify_product_algebra(target, jobs=jobs)]
        return _finish(args, reports)
    if suite == "prop-3.10":
        A = _load_bicomodule(args.A)
        C = _load_coalgebra(args.C)
        return _finish(args, [check_prop_3_10(A, C, jobs=jobs)])
    if suite == "roundtrip-3.8":
        A = _load_bicomodule(args.A)
        C = _load_coalgebra(args.C)
        ctx = YetterDrinfeldContext(A, C)
        action = LinMap(A.field, (A.alg.dim, A.alg.dim), (A.alg.dim,),
                        A.alg.mult.cols)
        seed = FiniteModule(A.alg.dim, A.alg, action, "left", name="regular")
        M = induce_yd(seed, ctx)
        forward = yd_to_doihopf(M, ctx)
        back = doihopf_to_yd(forward, ctx)
        report = CheckReport("comparison functors are inverse")
        report.extend(verify_yd(M, ctx, jobs=jobs))
        report.extend(verify_doi_hopf(forward, ctx.doihopf, jobs=jobs),
                      prefix="image:")
        ok = all(back.coaction.column((i,)) == M.coaction.column((i,))
                 for i in range(M.dim))
        report.add("roundtrip-coaction", ok)
        forward_again = yd_to_doihopf(back, ctx)
        ok = all(forward_again.coaction.column((i,)) == forward.coaction.column((i,))
                 for i in range(M.dim))
        report.add("roundtrip-coaction-other-way", ok)
        return _finish(args, [report])
    if suite == "rat-2.5":
        C = _load_coalgebra(args.C)
        B = io.parse(args.B) if args.B else regular_comodule_algebra(C.H, "left")
        ctx = DoiHopfContext("right-left", B, C)
        M = induce_doi_hopf(trivial_module(ctx), ctx)
        collapsed, smash = to_smash_module(M, ctx)
        recovered, report = rational_check(collapsed, ctx, smash)
        ok = all(recovered.coaction.column((i,)) == M.coaction.column((i,))
                 for i in range(M.dim))
        report.add("coaction-recovered", ok)
        basis, rat_report = compute_rat(collapsed, ctx, smash)
        report.extend(rat_report, prefix="rat:")
        return _finish(args, [report])
    if suite == "adjunction-2.2":
        C = _load_coalgebra(args.C)
        B = io.parse(args.B) if args.B else regular_comodule_algebra(C.H, "left")
        ctx = DoiHopfContext("right-left", B, C)
        N = trivial_module(ctx)
        M = induce_doi_hopf(N, ctx)
        return _finish(args, [adjunction_maps(M, N, ctx)])
    raise UsageError("unknown verification suite %r" % (suite,))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qha",
        description="exact verification toolkit for quasi-Hopf structure constants")
    parser.add_argument("--report", help="write a JSON report to this path")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker count for basis sweeps (QHA_JOBS overrides)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="parse a structure file and run its verifier")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("fixture", help="emit built-in fixtures")
    p.add_argument("action", choices=["emit"])
    p.add_argument("name")
    p.add_argument("--dir", default=".")
    p.add_argument("--field", default="q", help="q or fp:<prime>")
    p.set_defaults(fn=cmd_fixture)

    p = sub.add_parser("twist", help="gauge-twist a structure file")
    p.add_argument("file")
    p.add_argument("--gauge", required=True)
    p.add_argument("--out")
    p.set_defaults(fn=cmd_twist)

    p = sub.add_parser("dtwist", help="compute the canonical antipode gauge")
    p.add_argument("file")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_dtwist)

    p = sub.add_parser("build", help="build and verify a derived product")
    p.add_argument("what", choices=["smash", "rsmash", "koppinen",
                                    "diagonal", "coring"])
    p.add_argument("--coalgebra")
    p.add_argument("--comodule")
    p.add_argument("--bicomodule")
    p.add_argument("--kind", default="BC",
                   help="diagonal: left-l/left-r/right-l/right-r; coring: BC/CA/YD")
    p.add_argument("--realization", type=int, default=1, choices=[1, 2])
    p.add_argument("--out")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("convert", help="apply a structure-level conversion")
    p.add_argument("what", choices=["variant", "bicomodule-r1r2", "yd2dh", "dh2yd"])
    p.add_argument("--input")
    p.add_argument("--kind", default="op")
    p.add_argument("--bicomodule")
    p.add_argument("--coalgebra")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_convert)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("suite", choices=["iso-2.9", "prop-3.10", "roundtrip-3.8",
                                     "rat-2.5", "adjunction-2.2"])
    p.add_argument("--A", help="bicomodule-algebra file")
    p.add_argument("--B", help="comodule-algebra file")
    p.add_argument("--C", help="module-coalgebra file")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return 2
    except ParseError as exc:
        print("parse error: %s" % exc, file=sys.stderr)
        return 2
    except QuasiHopfError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
