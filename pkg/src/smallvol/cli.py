"""Command-line interface.

Subcommands: ``bound``, ``enumerate``, ``certify``, ``volume``,
``nonhyp`` and ``selftest``.  Reports are machine-parseable: one
``key: value`` pair per line, items separated by blank lines, and the
wall-clock line (``elapsed_ms``) always last so the rest of the report
is byte-identical across runs.

Exit codes: 0 the claim was verified, 1 the computation was
inconclusive (never an assertion of the negative), 2 malformed input.
"""

from __future__ import annotations

import argparse
import math
import sys
import time

from . import data
from .certify import (
    CertifyError,
    InconclusiveError,
    krawczyk_certify,
    residual,
)
from .filling import CuspData, enumerate_slopes, slope_length_bound
from .formats import (
    FormatError,
    parse_gluing,
    parse_presentation,
    parse_script,
)
from .geometry import (
    OrientationError,
    ShapeAssignment,
    certified_volume,
)
from .grouptool import detect_power_relator, verify_script
from .jets import JetDomainError

OK, UNDECIDED, BAD_INPUT = 0, 1, 2


class Report:
    """Ordered key/value lines with blank-line item separators."""

    def __init__(self, command: str):
        self.lines = [("command", command)]
        self.t0 = time.perf_counter()

    def add(self, key, value):
        self.lines.append((key, value))

    def blank(self):
        self.lines.append(None)

    def emit(self, stream=None):
        if stream is None:
            stream = sys.stdout
        for item in self.lines:
            if item is None:
                print(file=stream)
            else:
                print(f"{item[0]}: {item[1]}", file=stream)
        ms = int(round(1000 * (time.perf_counter() - self.t0)))
        print(f"elapsed_ms: {ms}", file=stream)


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _complex_flag(text: str) -> complex:
    try:
        re_s, im_s = text.split(",")
        return complex(float(re_s), float(im_s))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"expected re,im (e.g. 0.5,1.32), got {text!r}"
        ) from exc


def cmd_bound(args) -> int:
    rep = Report(f"bound --parent {_fmt(args.parent)} --target {_fmt(args.target)}")
    try:
        b = slope_length_bound(args.parent, args.target)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    rep.add("bound", _fmt(b))
    rep.add("floor_2pi", _fmt(2 * math.pi))
    rep.emit()
    return OK


def cmd_enumerate(args) -> int:
    rep = Report(
        f"enumerate --meridian {args.meridian.real!r},{args.meridian.imag!r}"
        f" --longitude {args.longitude.real!r},{args.longitude.imag!r}"
        f" --parent {_fmt(args.parent)} --target {_fmt(args.target)}"
        f" --fudge {_fmt(args.fudge)}"
    )
    try:
        cusp = CuspData(args.meridian, args.longitude, args.parent)
        slopes = enumerate_slopes(cusp, args.target, args.fudge)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    rep.add("bound", _fmt(slopes.bound_used))
    rep.add("cutoff", _fmt(slopes.bound_used * (1 + slopes.fudge)))
    rep.add("pairs", len(slopes.pairs))
    for p, q, length in slopes.pairs:
        rep.add("pair", f"{p} {q} {_fmt(length)}")
    rep.emit()
    return OK


def _load_system(path: str):
    with open(path, encoding="utf-8") as f:
        return parse_gluing(f.read())


def _certify_into(rep: Report, sys_):
    try:
        cert = krawczyk_certify(sys_)
    except (InconclusiveError, CertifyError, JetDomainError) as exc:
        rep.add("certified", "no")
        rep.add("reason", str(exc))
        return None
    rep.add("certified", "yes")
    rep.add("delta", repr(cert.delta))
    rep.add("box_radius", repr(cert.box_radius))
    rep.add("selected", " ".join(str(i + 1) for i in cert.selected))
    for i, z in enumerate(cert.refined_center):
        rep.add("center", f"{i} {z.real!r} {z.imag!r}")
    rep.add("residual_max", repr(max(cert.residual_norms)))
    return cert


def cmd_certify(args) -> int:
    rep = Report(f"certify {args.file}")
    try:
        sys_ = _load_system(args.file)
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    cert = _certify_into(rep, sys_)
    rep.emit()
    return OK if cert is not None else UNDECIDED


def cmd_volume(args) -> int:
    rep = Report(
        f"volume {args.file}"
        + (f" --delta {_fmt(args.delta)}" if args.delta is not None else "")
        + (f" --gt {_fmt(args.gt)}" if args.gt is not None else "")
        + (f" --le {_fmt(args.le)}" if args.le is not None else "")
    )
    try:
        sys_ = _load_system(args.file)
    except (OSError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT

    if args.delta is not None:
        shapes, delta = sys_.shapes, args.delta
    else:
        cert = _certify_into(rep, sys_)
        if cert is None:
            rep.add("verdict", "inconclusive")
            rep.emit()
            return UNDECIDED
        shapes = cert.refined_center
        delta = cert.box_radius * math.sqrt(sys_.n)

    try:
        assignment = ShapeAssignment(shapes, delta)
        iv = certified_volume(assignment, tol=args.tol)
    except (OrientationError, ValueError, JetDomainError) as exc:
        rep.add("volume", "inconclusive")
        rep.add("reason", str(exc))
        rep.add("verdict", "inconclusive")
        rep.emit()
        return UNDECIDED
    rep.add("volume_lo", repr(iv.lo))
    rep.add("volume_hi", repr(iv.hi))

    claims = []
    if args.gt is not None:
        claims.append(iv.lo > args.gt)
        rep.add("gt_claim", f"{_fmt(args.gt)} {'proven' if claims[-1] else 'unproven'}")
    if args.le is not None:
        claims.append(iv.hi <= args.le)
        rep.add("le_claim", f"{_fmt(args.le)} {'proven' if claims[-1] else 'unproven'}")
    if claims:
        ok = all(claims)
        rep.add("verdict", "proven" if ok else "inconclusive")
        rep.emit()
        return OK if ok else UNDECIDED
    rep.add("verdict", "certified")
    rep.emit()
    return OK


def cmd_nonhyp(args) -> int:
    rep = Report(
        ("nonhyp --rel " + args.rel if args.rel else f"nonhyp {args.file}")
        + (f" --script {args.script}" if args.script else "")
    )
    try:
        if args.rel:
            gens = sorted(set(c for c in args.rel if c.isalpha()))
            pres = parse_presentation(
                "gens " + " ".join(gens) + "\nrel " + args.rel + "\n"
            )
        else:
            with open(args.file, encoding="utf-8") as f:
                pres = parse_presentation(f.read())
    except (OSError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT

    if args.script:
        try:
            with open(args.script, encoding="utf-8") as f:
                script = parse_script(f.read())
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return BAD_INPUT
        verdict = verify_script(pres, script, depth=args.depth)
        rep.add("mode", "script")
    else:
        verdict = detect_power_relator(pres)
        rep.add("mode", "pattern")
    rep.add("verdict", verdict.status)
    rep.add("reason", verdict.reason)
    for line in verdict.log:
        rep.add("note", line)
    rep.emit()
    return OK if verdict.nonhyperbolic else UNDECIDED


def cmd_selftest(args) -> int:
    rep = Report("selftest")
    failures = 0

    def check(name, ok):
        nonlocal failures
        rep.add("check", f"{name} {'pass' if ok else 'FAIL'}")
        if not ok:
            failures += 1

    b = slope_length_bound(5.33349, 2.848)
    check("slope-length-bound", 10.74 <= b <= 10.76)

    cusp = CuspData(complex(0.5, math.sqrt(7) / 2), 2.0, 5.33349)
    slopes = enumerate_slopes(cusp, 2.848, 0.01)
    check("s776-enumeration-46", len(slopes.pairs) == 46)

    sys_ = parse_gluing(data.figure_eight_text())
    try:
        cert = krawczyk_certify(sys_)
        check("figure-eight-certified", cert.delta < 1e-8)
        assignment = ShapeAssignment(cert.refined_center,
                                     cert.box_radius * math.sqrt(sys_.n))
        iv = certified_volume(assignment)
        check("figure-eight-volume",
              iv.lo <= 2.0298832128193072 <= iv.hi and iv.width() < 1e-5)
        check("figure-eight-gt-0.943", iv.lo > 0.943)
        check("figure-eight-le-2.848", iv.hi <= 2.848)
    except (CertifyError, InconclusiveError):
        check("figure-eight-certified", False)

    tet = ShapeAssignment((complex(0.5, math.sqrt(3) / 2),), 0.0)
    iv = certified_volume(tet)
    check("regular-tetrahedron-volume",
          iv.lo <= 1.0149416064096536 <= iv.hi and iv.width() < 1e-6)

    for name in data.CORPUS:
        pres = parse_presentation(data.presentation_text(name))
        script = parse_script(data.script_text(name))
        check(f"script-{name}", verify_script(pres, script).nonhyperbolic)

    pres = parse_presentation("gens a b\nrel a3b2\n")
    check("detect-a3b2", detect_power_relator(pres).nonhyperbolic)

    rep.add("failures", failures)
    rep.emit()
    return OK if failures == 0 else UNDECIDED


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="smallvol",
        description="verified computation for small-volume hyperbolic "
                    "3-manifolds",
    )
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("bound", help="slope-length bound from volumes")
    p.add_argument("--parent", type=float, required=True)
    p.add_argument("--target", type=float, default=2.848)
    p.set_defaults(fn=cmd_bound)

    p = sub.add_parser("enumerate", help="enumerate candidate filling slopes")
    p.add_argument("--meridian", type=_complex_flag, required=True)
    p.add_argument("--longitude", type=_complex_flag, required=True)
    p.add_argument("--parent", type=float, required=True)
    p.add_argument("--target", type=float, default=2.848)
    p.add_argument("--fudge", type=float, default=0.01)
    p.set_defaults(fn=cmd_enumerate)

    p = sub.add_parser("certify", help="certify a gluing-equation solution")
    p.add_argument("file")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("volume", help="certified volume interval")
    p.add_argument("file")
    p.add_argument("--delta", type=float, default=None,
                   help="use this solution-distance bound instead of "
                        "running certification")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--gt", type=float, default=None,
                   help="prove volume strictly greater than this")
    p.add_argument("--le", type=float, default=None,
                   help="prove volume at most this")
    p.set_defaults(fn=cmd_volume)

    p = sub.add_parser("nonhyp", help="check a non-hyperbolicity claim")
    p.add_argument("file", nargs="?", default=None,
                   help="presentation file")
    p.add_argument("--rel", default=None,
                   help="inline single relator, e.g. a3b2")
    p.add_argument("--script", default=None, help="proof script file")
    p.add_argument("--depth", type=int, default=8,
                   help="search depth for direct-calculation steps")
    p.set_defaults(fn=cmd_nonhyp)

    p = sub.add_parser("selftest", help="run the embedded fixture suite")
    p.set_defaults(fn=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "nonhyp" and not args.rel and not args.file:
        print("error: nonhyp needs a presentation file or --rel", file=sys.stderr)
        return BAD_INPUT
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
