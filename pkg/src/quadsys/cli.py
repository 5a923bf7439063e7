"""Command-line front end.

Exit codes: 0 all checks passed, 1 a verification failed (witnesses go to
stderr), 2 usage or parse errors.  All outputs are deterministic: repeated
invocations on the same inputs are byte-identical, and --jobs only changes
wall time, never output.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import catalog, formats, quadruple, resolver
from .core import (
    Design,
    DesignError,
    Gdd,
    ParameterError,
    derived_design,
    verify_gdd,
    verify_resolution,
    verify_steiner,
)
from .star import verify_star

OK, FAIL, USAGE = 0, 1, 2


def _say(line: str) -> None:
    sys.stdout.write(line + "\n")


def _claim(name: str, passed: bool, detail: str = "") -> bool:
    _say(f"{'PASS' if passed else 'FAIL'} {name}" + (f" {detail}" if detail else ""))
    return passed


def _load_design(path: str) -> Design | Gdd:
    return formats.parse_design(Path(path).read_text(encoding="utf-8"))


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    name = args.name
    if name not in catalog.GENERATORS:
        raise DesignError(f"unknown design {name!r}; choose from {sorted(catalog.GENERATORS)}")
    out = Path(args.out or f"{name}.design")
    obj = catalog.GENERATORS[name]()
    out.write_text(formats.emit_design(obj), encoding="utf-8")
    _say(f"wrote {out}")
    companion = obj.design if isinstance(obj, Gdd) else obj
    sections = None
    if name == "sqs22":
        sections = {
            k: v.classes for k, v in sorted(
                catalog.sqs22_resolutions().items(), key=lambda kv: companion.point(kv[0])
            )
        }
    elif name == "rdgdd24":
        sections = {k: v.classes for k, v in catalog.rdgdd24_resolutions().items()}
    elif name == "rdgdd42":
        sections = {k: v.classes for k, v in catalog.rdgdd42_resolutions().items()}
    if sections is not None:
        res_path = out.with_suffix(".res")
        res_path.write_text(formats.emit_resolution(companion, sections), encoding="utf-8")
        _say(f"wrote {res_path}")
    if name == "sqs28":
        cert = catalog.sqs28_star()
        star_path = out.with_suffix(".star")
        per_point = {
            companion.labels[p].text: cert.per_point[p] for p in sorted(cert.per_point)
        }
        star_path.write_text(formats.emit_star(companion, per_point), encoding="utf-8")
        _say(f"wrote {star_path}")
    return OK


# ---------------------------------------------------------------------------
# verify

_POOL_OBJ = None


def _pool_init(obj) -> None:
    global _POOL_OBJ
    _POOL_OBJ = obj


def _verify_res_section(item) -> tuple[str, bool, str]:
    point, classes = item
    obj = _POOL_OBJ
    if isinstance(obj, Gdd):
        res = formats.gdd_resolution_for_point(obj, point, classes)
    else:
        res = formats.resolution_for_point(obj, point, classes)
    rep = verify_resolution(res)
    detail = f"classes={len(classes)}"
    if not rep.passed:
        detail += f" {rep.violations[:2]}"
    return point, rep.passed, detail


def _map_jobs(jobs: int, func, items, init_obj):
    if jobs <= 1:
        _pool_init(init_obj)
        return [func(item) for item in items]
    with ProcessPoolExecutor(
        max_workers=jobs, initializer=_pool_init, initargs=(init_obj,)
    ) as pool:
        return list(pool.map(func, items))


def cmd_verify(args) -> int:
    obj = _load_design(args.design)
    design = obj.design if isinstance(obj, Gdd) else obj
    ok = True
    kind = args.kind
    if kind in ("sqs", "sts"):
        rep = verify_steiner(design)
        ok &= _claim(f"{kind} strength-{design.t} coverage", rep.passed, str(rep.counts))
    elif kind in ("gdd", "td"):
        if not isinstance(obj, Gdd):
            raise DesignError("design file has no GROUP lines")
        rep = verify_gdd(obj)
        ok &= _claim(f"{kind} cross coverage", rep.passed, f"blocks={rep.counts['blocks']}")
    elif kind in ("rdsqs", "rdgdd"):
        if kind == "rdsqs":
            rep = verify_steiner(design)
            ok &= _claim("steiner coverage", rep.passed, str(rep.counts))
        else:
            if not isinstance(obj, Gdd):
                raise DesignError("design file has no GROUP lines")
            rep = verify_gdd(obj)
            ok &= _claim("gdd cross coverage", rep.passed, f"blocks={rep.counts['blocks']}")
        if not args.certificate:
            raise DesignError(f"--kind {kind} needs a resolution file")
        sections = formats.parse_resolution(
            Path(args.certificate).read_text(encoding="utf-8"), design
        )
        missing = {lab.text for lab in design.labels} - set(sections)
        ok &= _claim("resolutions cover every point", not missing, f"points={len(sections)}")
        results = _map_jobs(args.jobs, _verify_res_section, sorted(
            sections.items(), key=lambda kv: design.point(kv[0])
        ), obj)
        for point, passed, detail in results:
            ok &= _claim(f"derived resolution at {point}", passed, detail)
    elif kind == "star":
        if not args.certificate:
            raise DesignError("--kind star needs a star file")
        seeds = formats.parse_star(
            Path(args.certificate).read_text(encoding="utf-8"), design
        )
        missing = {lab.text for lab in design.labels} - set(seeds)
        ok &= _claim("certificate covers every point", not missing, f"points={len(seeds)}")
        if missing:
            return FAIL
        from .star import StarCertificate

        cert = StarCertificate(
            design=design, per_point={c.point: c for c in seeds.values()}
        )
        rep = verify_star(cert)
        ok &= _claim("star certificate", rep.passed, str(rep.counts))
        if not rep.passed:
            print(rep.violations[:4], file=sys.stderr)
    else:  # pragma: no cover - argparse restricts choices
        raise DesignError(f"unknown kind {kind}")
    return OK if ok else FAIL


# ---------------------------------------------------------------------------
# derive


def cmd_derive(args) -> int:
    obj = _load_design(args.design)
    design = obj.design if isinstance(obj, Gdd) else obj
    sub = derived_design(design, args.point)
    out = Path(args.out or f"derived_{args.point}.design")
    out.write_text(formats.emit_design(sub), encoding="utf-8")
    _say(f"wrote {out}")
    return OK


# ---------------------------------------------------------------------------
# construct

def _point_job(p: int) -> tuple[int, bool, str]:
    asm = _POOL_OBJ
    res = asm.point_resolution(p)
    rep = verify_resolution(res)
    text = formats.emit_resolution(
        asm.design, {asm.design.labels[p].text: res.classes}
    )
    return p, rep.passed, text


def cmd_construct(args) -> int:
    if args.design:
        companion = _load_design(args.design)
        if isinstance(companion, Gdd):
            raise DesignError("the star companion must be a plain design")
    else:
        companion = catalog.sqs28()
    seeds = formats.parse_star(Path(args.star).read_text(encoding="utf-8"), companion)
    from .star import StarCertificate, expand_certificate
    from .core import Shift

    if len(seeds) == companion.v:
        cert = StarCertificate(
            design=companion, per_point={c.point: c for c in seeds.values()}
        )
        verify_star(cert).require("star certificate")
    else:
        if companion.v != 28:
            raise DesignError(
                "partial star files expand by +1 mod 7, which fits only v=28; "
                "supply a certificate covering every point"
            )
        by_id = {c.point: c for c in seeds.values()}
        cert = expand_certificate(companion, by_id, Shift(1, 7), order=7)
    quadruple.verify_template().require("template")
    asm = quadruple.QuadrupleAssembly(cert)
    rep = verify_steiner(asm.design)
    if not rep.passed:
        print(rep.violations[:4], file=sys.stderr)
        return FAIL

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "design.design").write_text(
        formats.emit_design(asm.design), encoding="utf-8"
    )
    results = _map_jobs(args.jobs, _point_job, range(asm.design.v), asm)
    manifest = [
        f"design blocks={len(asm.design.blocks)} v={asm.design.v}",
        "steiner PASS",
    ]
    ok = True
    for p, passed, text in results:
        label = asm.design.labels[p].text
        (out_dir / f"point_{label}.res").write_text(text, encoding="utf-8")
        manifest.append(
            f"point {label} classes={2 * cert.design.v - 1} {'PASS' if passed else 'FAIL'}"
        )
        ok &= passed
    manifest.append(f"resolved_points {sum(1 for _, p2, _ in results if p2)}/{asm.design.v}")
    (out_dir / "manifest.txt").write_text("\n".join(manifest) + "\n", encoding="utf-8")
    _say(f"wrote {out_dir}/design.design, {asm.design.v} resolution files, manifest.txt")
    return OK if ok else FAIL


# ---------------------------------------------------------------------------
# resolve


def cmd_resolve(args) -> int:
    obj = _load_design(args.design)
    design = obj.design if isinstance(obj, Gdd) else obj
    if args.point is not None:
        blocks, ground = resolver.derived_instance(design, args.point)
        what = f"derived design at {args.point}"
    else:
        blocks = list(design.blocks)
        ground = tuple(range(design.v))
        what = "design"
    outcome = resolver.find_resolution(blocks, ground, budget=args.budget)
    _say(f"{outcome.status.upper()} {what} nodes={outcome.nodes}")
    if outcome.found and args.out:
        key = args.point if args.point is not None else "*"
        Path(args.out).write_text(
            formats.emit_resolution(design, {key: outcome.resolution.classes}),
            encoding="utf-8",
        )
        _say(f"wrote {args.out}")
    return OK if outcome.status in ("found", "none") else FAIL


# ---------------------------------------------------------------------------
# report


def cmd_report(args) -> int:
    out_dir = Path(args.out_dir)
    obj = _load_design(out_dir / "design.design")
    design = obj.design if isinstance(obj, Gdd) else obj
    ok = _claim("steiner coverage", verify_steiner(design).passed, f"blocks={len(design.blocks)}")
    count = 0
    for path in sorted(out_dir.glob("point_*.res")):
        sections = formats.parse_resolution(path.read_text(encoding="utf-8"), design)
        for point, classes in sections.items():
            res = formats.resolution_for_point(design, point, classes)
            ok &= _claim(f"derived resolution at {point}", verify_resolution(res).passed)
            count += 1
    ok &= _claim("every point resolved", count == design.v, f"{count}/{design.v}")
    return OK if ok else FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="quadsys",
        description="Generate, verify, derive, construct, and search block designs.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a catalog design (plus shipped certificates)")
    p.add_argument("name", choices=sorted(catalog.GENERATORS))
    p.add_argument("--out", help="output design file (default <name>.design)")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="verify a design file against its defining property")
    p.add_argument("--kind", required=True,
                   choices=["sqs", "sts", "gdd", "td", "rdsqs", "rdgdd", "star"])
    p.add_argument("design")
    p.add_argument("certificate", nargs="?", help="resolution or star file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("derive", help="write the derived design at a point")
    p.add_argument("design")
    p.add_argument("point")
    p.add_argument("--out")
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("construct", help="build the RDSQS(4v) from a star certificate")
    p.add_argument("star")
    p.add_argument("out", help="output directory")
    p.add_argument("--design", help="companion design file (default: catalog sqs28)")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("resolve", help="search a resolution with the exact-cover oracle")
    p.add_argument("design")
    p.add_argument("--point")
    p.add_argument("--budget", type=int, default=resolver.DEFAULT_BUDGET)
    p.add_argument("--out")
    p.set_defaults(func=cmd_resolve)

    p = sub.add_parser("report", help="re-verify a construct output directory")
    p.add_argument("out_dir")
    p.set_defaults(func=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (formats.ParseError, ParameterError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except DesignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
