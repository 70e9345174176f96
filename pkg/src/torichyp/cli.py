"""Command-line entry point: ``torichyp audit|batch|fixtures|classify-example``.

Defaults come from ``TORICHYP_JOBS`` and an optional INI file (``TORICHYP_CONFIG``
or ``~/.config/torichyp.ini``) with a ``[torichyp]`` section holding
``jobs``, ``format`` and ``out``.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import os
import re
import sys
import time
from pathlib import Path

from .audit import conjecture_audit, example_xld_classify, gorenstein_3fold_audit
from .divisors import Divisor, is_gorenstein, is_gorenstein_fano
from .fan import Fan, FanError, is_smooth
from .fixtures import FIXTURES, get_fixture, hirzebruch
from .ingest import ParseError, batch_audit, emit_report, parse_palp_stream, report_from_certificate

log = logging.getLogger("torichyp")

EXIT_IO = 1


def load_config(path: str | None = None) -> dict:
    path = path or os.environ.get("TORICHYP_CONFIG") or str(Path.home() / ".config" / "torichyp.ini")
    cfg = configparser.ConfigParser()
    cfg.read(path)
    out = dict(cfg["torichyp"]) if cfg.has_section("torichyp") else {}
    if "TORICHYP_JOBS" in os.environ:
        out["jobs"] = os.environ["TORICHYP_JOBS"]
    return out


def read_divisor(path: str, fan: Fan) -> Divisor:
    text = Path(path).read_text()
    try:
        coeffs = [int(t) for t in re.split(r"[\s,]+", text.strip()) if t]
    except ValueError as exc:
        raise ParseError(1, f"divisor file: {exc}") from None
    return Divisor(fan, coeffs)


def _fixture(name: str) -> Fan:
    m = re.fullmatch(r"F(\d+)", name)
    if m and name not in FIXTURES:
        return hirzebruch(int(m.group(1)))
    return get_fixture(name)


def _write(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_audit(args, cfg) -> int:
    fan = Fan.loads(Path(args.fan_file).read_text(), name=Path(args.fan_file).stem)
    L = read_divisor(args.L, fan)
    start = time.perf_counter()
    cert = conjecture_audit(fan, L) if args.mode == "conjecture" else gorenstein_3fold_audit(fan, L)
    ms = (time.perf_counter() - start) * 1000
    report = report_from_certificate(0, cert, is_gorenstein(fan), is_gorenstein_fano(fan), is_smooth(fan), ms)
    _write(emit_report([report], args.format or cfg.get("format", "structured")), args.out)
    return 0


def cmd_batch(args, cfg) -> int:
    records = parse_palp_stream(Path(args.census_file).read_text())
    jobs = args.jobs if args.jobs is not None else int(cfg.get("jobs", 1))
    polarization = None
    if args.L:
        polarization = [int(t) for t in re.split(r"[\s,]+", Path(args.L).read_text().strip()) if t]
    mode = {"gorenstein3": "gorenstein3fold"}.get(args.mode, args.mode)
    reports = batch_audit(records, mode, polarization, jobs)
    _write(emit_report(reports, args.format or cfg.get("format", "structured")), args.out or cfg.get("out"))
    return 0


def cmd_fixtures(args, cfg) -> int:
    if args.action == "list":
        print("\n".join(FIXTURES))
        return 0
    if not args.name:
        print("fixtures emit needs a name", file=sys.stderr)
        return 2
    _write(_fixture(args.name).dumps(), args.out)
    return 0


def parse_box(text: str) -> list[tuple[int, int]]:
    box = []
    for part in text.split(","):
        lo, _, hi = part.partition(":")
        box.append((int(lo), int(hi or lo)))
    return box


def cmd_classify(args, cfg) -> int:
    table = example_xld_classify(args.fixture, parse_box(args.box))
    doc = {
        "fixture": table.fixture,
        "box": [list(b) for b in table.box],
        "admissible": [list(p) for p in table.admissible],
        "l_plus_d_nef": [list(r.params) for r in table.rows if r.admissible and r.l_plus_d_nef],
        "disagrees_with_stated_region": [list(p) for p in table.region_mismatches()],
    }
    _write(json.dumps(doc, indent=1) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torichyp", description="Hyperbolicity audits of adjoint systems on toric varieties")
    p.add_argument("-v", "--verbose", action="store_true")
    p.add_argument("--config", help="INI file with a [torichyp] section")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("audit", help="audit one fan with a given polarization")
    a.add_argument("fan_file")
    a.add_argument("--mode", choices=["conjecture", "gorenstein3"], required=True)
    a.add_argument("--L", required=True, help="file of ray coefficients")
    a.add_argument("--format", choices=["structured", "tabular"])
    a.add_argument("--out")
    a.set_defaults(func=cmd_audit)

    b = sub.add_parser("batch", help="audit every polytope of a census file")
    b.add_argument("census_file")
    b.add_argument("--mode", choices=["census", "gorenstein3", "conjecture"], default="census")
    b.add_argument("--jobs", type=int)
    b.add_argument("--out")
    b.add_argument("--format", choices=["structured", "tabular"])
    b.add_argument("--L", help="coefficient file applied to every record (default -K)")
    b.set_defaults(func=cmd_batch)

    f = sub.add_parser("fixtures", help="list or emit built-in fans")
    f.add_argument("action", choices=["list", "emit"])
    f.add_argument("name", nargs="?")
    f.add_argument("--out")
    f.set_defaults(func=cmd_fixtures)

    c = sub.add_parser("classify-example", help="tabulate ample L with L|D a line")
    c.add_argument("--fixture", choices=["X1", "X2"], required=True)
    c.add_argument("--box", required=True, help="lo:hi bounds per leading parameter, e.g. 1:6,1:6")
    c.add_argument("--out")
    c.set_defaults(func=cmd_classify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    cfg = load_config(args.config)
    try:
        return args.func(args, cfg)
    except (OSError, ParseError, FanError, json.JSONDecodeError, KeyError) as exc:
        print(f"torichyp: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"torichyp: invalid input: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    raise SystemExit(main())
