"""Command-line front end: ``swisscheese <command> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 precision exhausted.  Errors are reported on stderr as one JSON line
``{"error": <category>, "message": ...}``.  Negative coordinates need the
``--z=-1/2,0`` spelling so argparse does not read them as flags.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import BoundQuery, InvalidQuery, cauchy_bound, star_block_check
from .brackets import DEFAULT_PRECISION, PrecisionExhausted
from .certificates import DEFAULT_SEARCH_BUDGET, InvalidInput, NotFound, find_certificate, validate_certificate
from .cheesefile import (
    InvariantViolation,
    MalformedDocument,
    UnsupportedVersion,
    certificate_document,
    certificate_from_document,
    dumps_canonical,
    emit,
    encode_rational,
    parse,
)
from .geometry import QPoint
from .jensen import InfeasibleGrid, InvalidMeasure, PoleOnSupport, TestFamily, lp_search, uniform_circle_grid
from .render import RenderOptions, render_svg
from .report import VerificationReport
from .schedule import DEFAULT_SUBDISCS, DEFAULT_SYSTEMS, CheeseDescription, build_cheese, verify_schedule

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_PRECISION = 0, 1, 2, 3
COMMANDS = ("build", "verify", "bounds", "certify", "probe-jensen", "render", "star-check")
_RATIONAL = re.compile(r"[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.)\Z")


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    stages: int = 2
    systems: int = DEFAULT_SYSTEMS
    discs: int = DEFAULT_SUBDISCS
    budget: int = DEFAULT_SEARCH_BUDGET
    precision: int = DEFAULT_PRECISION
    seed: int = 0
    grid_size: int = 64
    family_size: int = 8
    width: int = 800
    z: str | None = None
    w: str | None = None
    x: str = "0,0"
    k: int = 0
    show_k: list[int] = field(default_factory=list)
    show_interval: bool = True
    input: str | None = None
    output: str | None = None
    report: str | None = None
    certificate: str | None = None
    json: bool = False

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.stages < 0:
            raise UsageError("--stages must be >= 0")
        for name in ("systems", "discs", "budget", "precision", "grid_size", "family_size", "width"):
            if getattr(self, name) < 1:
                raise UsageError(f"--{name.replace('_', '-')} must be >= 1")
        if self.k < 0:
            raise UsageError("--k must be >= 0")
        if self.grid_size % 4:
            raise UsageError("--grid-size must be a multiple of 4")
        if any(n < 1 for n in self.show_k):
            raise UsageError("--show-k levels must be >= 1")

    def provenance(self) -> dict:
        """Every content-affecting setting; file paths are left out."""
        prov = {k: v for k, v in asdict(self).items() if k not in ("input", "output", "report", "json")}
        prov["show_k"] = ",".join(str(n) for n in self.show_k)
        prov["tool"] = "swisscheese"
        prov["tool_version"] = __version__
        return prov


def parse_rational(text: str) -> Fraction:
    """Exact value of ``p/q`` or a plain decimal; exponents, inf and nan are refused."""
    s = text.strip()
    if not _RATIONAL.match(s):
        raise UsageError(f"{text!r} is not an exact rational literal (use p/q or a plain decimal)")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise UsageError(f"{text!r} has a zero denominator") from exc


def parse_point(text: str) -> QPoint:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"{text!r} is not a point; expected x,y")
    return QPoint(parse_rational(parts[0]), parse_rational(parts[1]))


def _readable_upper(q: Fraction, bits: int = 48) -> str:
    """``q`` itself when short, else the dyadic ceil(q 2^bits)/2^bits, still an upper bound."""
    if len(str(q)) <= 40:
        return str(q)
    up = Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)
    return f"{up} (rounded up)"


def _point_doc(z: QPoint) -> dict:
    return {"x": encode_rational(z.x), "y": encode_rational(z.y)}


def _write(path: str | None, data: bytes | str) -> None:
    raw = data.encode("utf-8") if isinstance(data, str) else data
    if path is None or path == "-":
        sys.stdout.buffer.write(raw)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(raw)


def _load_cheese(cfg: RunConfig, check: bool = True) -> CheeseDescription:
    if cfg.input:
        try:
            data = Path(cfg.input).read_bytes()
        except OSError as exc:
            raise UsageError(f"cannot read {cfg.input}: {exc}") from exc
        return parse(data, check=check)
    return build_cheese(cfg.stages, cfg.systems, cfg.discs, cfg.precision, provenance=cfg.provenance())


class _Result:
    def __init__(self, status: int, text: str, doc: dict):
        self.status, self.text, self.doc = status, text, doc


def _emit_result(cfg: RunConfig, res: _Result) -> int:
    doc = dict(res.doc)
    doc.setdefault("provenance", cfg.provenance())
    if cfg.report:
        Path(cfg.report).write_bytes(dumps_canonical(doc))
    if cfg.json:
        sys.stdout.buffer.write(dumps_canonical(doc))
    else:
        sys.stdout.write(res.text if res.text.endswith("\n") else res.text + "\n")
    sys.stdout.flush()
    return res.status


def _report_result(report: VerificationReport) -> _Result:
    return _Result(EXIT_OK if report.ok else EXIT_FAILED, report.to_text(), report.to_dict())


def cmd_build(cfg: RunConfig) -> int:
    c = build_cheese(cfg.stages, cfg.systems, cfg.discs, cfg.precision, provenance=cfg.provenance())
    _write(cfg.output, emit(c))
    if cfg.output and cfg.output != "-":
        sys.stderr.write(f"wrote {len(c.deletions)} deletions over {cfg.stages} stages to {cfg.output}\n")
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    c = _load_cheese(cfg, check=False)
    report = verify_schedule(c, cfg.precision)
    if cfg.certificate:
        try:
            doc = json.loads(Path(cfg.certificate).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise MalformedDocument(f"cannot read certificate: {exc}") from exc
        cert = certificate_from_document(doc)
        report.add("continuity certificate", validate_certificate(c, cert),
                   f"stage {cert.stage}, enumeration index {cert.enumeration_index}")
    return _emit_result(cfg, _report_result(report))


def cmd_bounds(cfg: RunConfig) -> int:
    if cfg.z is None:
        raise UsageError("bounds needs --z")
    z = parse_point(cfg.z)
    c = _load_cheese(cfg)
    b = cauchy_bound(c, BoundQuery(z, cfg.k, cfg.precision))
    text = (f"{_readable_upper(b.value_upper)}\n"
            f"  |f^({cfg.k})(z)| <= {float(b.value_upper):.12g} * |f|_X at z = ({z.x}, {z.y})\n"
            f"  terms: {b.terms_used}, precision: {b.precision}; {b.tail_note}")
    doc = {"command": "bounds", "z": _point_doc(z), "k": cfg.k, "bound": encode_rational(b.value_upper),
           "terms_used": b.terms_used, "precision": b.precision, "tail_note": b.tail_note}
    return _emit_result(cfg, _Result(EXIT_OK, text, doc))


def cmd_certify(cfg: RunConfig) -> int:
    if cfg.z is None or cfg.w is None:
        raise UsageError("certify needs --z and --w")
    z, w = parse_point(cfg.z), parse_point(cfg.w)
    c = _load_cheese(cfg)
    found = find_certificate(c, z, w, cfg.budget)
    if isinstance(found, NotFound):
        doc = {"command": "certify", "result": "NotFound", "stage": found.stage, "budget": found.budget}
        return _emit_result(cfg, _Result(EXIT_FAILED, f"NotFound: stage {found.stage}, budget {found.budget}", doc))
    cert_doc = certificate_document(found, cfg.provenance())
    if cfg.output:
        _write(cfg.output, dumps_canonical(cert_doc))
    d = found.disc
    text = (f"certificate: stage {found.stage}, disc #{found.enumeration_index} of S_{found.stage}\n"
            f"  centre ({d.center.x}, {d.center.y}), radius {d.radius}\n"
            f"  contains z = ({z.x}, {z.y}); closure misses w = ({w.x}, {w.y})")
    return _emit_result(cfg, _Result(EXIT_OK, text, {"command": "certify", "result": "certificate", **cert_doc}))


def _random_translates(seed: int, count: int) -> list[Fraction]:
    rng = random.Random(seed)
    centers = []
    while len(centers) < count:
        a = QPoint(Fraction(rng.randint(-15, 15), 16), Fraction(rng.randint(-15, 15), 16))
        if a.norm_sq() < 1 and a not in centers:
            centers.append(a)
    return centers


def cmd_probe_jensen(cfg: RunConfig) -> int:
    x = parse_point(cfg.x)
    c = _load_cheese(cfg)
    if not c.contains(x):
        raise InvalidInput(f"x = ({x.x}, {x.y}) is not in the cheese")
    grid = uniform_circle_grid(cfg.grid_size)
    if x not in grid:
        grid.append(x)
    family = TestFamily.translates(_random_translates(cfg.seed, cfg.family_size))
    res = lp_search(c, x, grid, family)
    support = [(z, wt) for z, wt in zip(res.witness.support, res.witness.weights) if wt]
    lines = [f"optimum {res.optimum} (mass off x)", f"  {res.evidence}",
             f"  {res.constraints} constraints ({res.vacuous} vacuous), grid {len(grid)} points"]
    lines += [f"  weight {float(wt):.6g} at ({float(z.x):.6g}, {float(z.y):.6g})" for z, wt in support[:12]]
    if len(support) > 12:
        lines.append(f"  ... {len(support) - 12} more support points")
    doc = {"command": "probe-jensen", "x": _point_doc(x), **res.to_dict()}
    return _emit_result(cfg, _Result(EXIT_OK, "\n".join(lines), doc))


def cmd_render(cfg: RunConfig) -> int:
    c = _load_cheese(cfg)
    svg = render_svg(c, RenderOptions(cfg.width, {}, cfg.show_interval, tuple(cfg.show_k)))
    _write(cfg.output, svg)
    return EXIT_OK


def cmd_star_check(cfg: RunConfig) -> int:
    c = _load_cheese(cfg)
    if not c.bound_table.block_boundaries:
        raise UsageError("star-check needs at least one completed stage")
    return _emit_result(cfg, _report_result(star_block_check(c.bound_table, cfg.precision)))


HANDLERS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "certify": cmd_certify,
    "probe-jensen": cmd_probe_jensen,
    "render": cmd_render,
    "star-check": cmd_star_check,
}

# exception class -> (error category, exit code); first match wins
_ERRORS = [
    (PrecisionExhausted, "PrecisionExhausted", EXIT_PRECISION),
    (InvariantViolation, "InvariantViolation", EXIT_FAILED),
    (MalformedDocument, "MalformedDocument", EXIT_USAGE),
    (UnsupportedVersion, "UnsupportedVersion", EXIT_USAGE),
    (InvalidQuery, "InvalidQuery", EXIT_USAGE),
    (InvalidInput, "InvalidInput", EXIT_USAGE),
    (InvalidMeasure, "InvalidMeasure", EXIT_USAGE),
    (InfeasibleGrid, "InfeasibleGrid", EXIT_USAGE),
    (PoleOnSupport, "PoleOnSupport", EXIT_USAGE),
    (UsageError, "UsageError", EXIT_USAGE),
]


def _fail(category: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": category, "message": message}) + "\n")
    return code


def run(cfg: RunConfig) -> int:
    try:
        cfg.validate()
        return HANDLERS[cfg.command](cfg)
    except tuple(e for e, _, _ in _ERRORS) as exc:
        for kind, category, code in _ERRORS:
            if isinstance(exc, kind):
                return _fail(category, str(exc), code)
        raise


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.exit(_fail("UsageError", message, EXIT_USAGE))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    g = common.add_argument_group("construction")
    g.add_argument("--stages", type=int, default=2, help="number of stages M (0 = undeleted disc)")
    g.add_argument("--systems", type=int, default=DEFAULT_SYSTEMS, help="disc systems per stage")
    g.add_argument("--discs", type=int, default=DEFAULT_SUBDISCS, help="discs per system")
    g.add_argument("--precision", type=int, default=DEFAULT_PRECISION, help="root bracket precision t (bits)")
    g.add_argument("--seed", type=int, default=0, help="seed for pseudo-random sampling")
    g.add_argument("--input", help="read a CheeseFileV1 instead of building")
    g.add_argument("--output", help="artifact path (default stdout)")
    g.add_argument("--report", help="also write the machine-readable report here")
    g.add_argument("--json", action="store_true", help="print the machine-readable report instead of text")

    p = _Parser(prog="swisscheese", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"swisscheese {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("build", parents=[common], help="emit a CheeseFileV1")
    v = sub.add_parser("verify", parents=[common], help="re-check every construction invariant")
    v.add_argument("--certificate", help="also validate a continuity certificate file")
    b = sub.add_parser("bounds", parents=[common], help="certified Cauchy derivative bound")
    b.add_argument("--z", required=True, help="point x,y as rationals")
    b.add_argument("--k", type=int, default=0, help="derivative order")
    c = sub.add_parser("certify", parents=[common], help="separate z from w by a disc of S_n")
    c.add_argument("--z", required=True)
    c.add_argument("--w", required=True)
    c.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET, help="enumeration budget")
    j = sub.add_parser("probe-jensen", parents=[common], help="LP search for non-trivial Jensen measures")
    j.add_argument("--x", default="0,0")
    j.add_argument("--grid-size", type=int, default=64, help="circle grid points (multiple of 4)")
    j.add_argument("--family-size", type=int, default=8, help="number of translates z - a")
    r = sub.add_parser("render", parents=[common], help="emit an SVG figure")
    r.add_argument("--width", type=int, default=800)
    r.add_argument("--show-k", type=int, nargs="*", default=[], help="capsule levels to draw")
    r.add_argument("--no-interval", dest="show_interval", action="store_false")
    sub.add_parser("star-check", parents=[common], help="per-block certified sums")
    return p


def config_from_args(argv: list[str] | None = None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    known = RunConfig.__dataclass_fields__
    return RunConfig(**{k: v for k, v in ns.items() if k in known})


def main(argv: list[str] | None = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
