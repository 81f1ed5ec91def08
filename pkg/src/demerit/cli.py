"""Command-line interface: ``dfm classes|moment|verify|cache``.

Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 cache
corruption.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import shutil
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from .classify import isom_representatives
from .errors import CacheCorruptionError, DemeritError, ResourceLimitError, UndefinedInputError, UsageError
from .moments import ZeroVarianceError, moment_from_classes, standardized_from_values, with_sols
from .partitions import Partition
from .qpoly import QuasiPolynomial, format_polynomial
from .seqstat import EXHAUSTIVE_MAX_LENGTH, exhaustive_central_moment
from .wreath import IsoClass

CACHE_VERSION = 1
DEFAULT_CACHE_DIR = "./.dfm-cache"
MAX_P = 5
# Sols for p = 5 would need Bell(10) merged systems per class; not attempted.
SOLS_MAX_P = 4

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CACHE = 0, 1, 2, 3


# serialization ----------------------------------------------------------------


def class_to_json(c: IsoClass) -> dict:
    return {
        "representative": c.representative.to_strings(),
        "orbit_size": str(c.orbit_size),
        "sols": c.sols.to_json() if c.sols is not None else None,
    }


def class_from_json(p: int, data: dict) -> IsoClass:
    sols = QuasiPolynomial.from_json(data["sols"]) if data.get("sols") is not None else None
    return IsoClass(Partition.parse(p, data["representative"]), int(data["orbit_size"]), sols)


def _digest(payload: dict) -> str:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


class Cache:
    """One JSON file per ``p`` holding the classes and their Sols."""

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)

    def path(self, p: int) -> Path:
        return self.directory / f"classes-p{p}.json"

    def load(self, p: int) -> list[IsoClass] | None:
        path = self.path(p)
        if not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
            payload, digest = doc["payload"], doc["sha256"]
        except (ValueError, KeyError, TypeError) as exc:
            raise CacheCorruptionError(f"{path}: unreadable cache file ({exc})") from None
        if _digest(payload) != digest:
            raise CacheCorruptionError(f"{path}: checksum mismatch")
        if payload.get("version") != CACHE_VERSION or payload.get("p") != p:
            raise CacheCorruptionError(f"{path}: wrong version or order")
        try:
            return [class_from_json(p, c) for c in payload["classes"]]
        except (ValueError, KeyError, TypeError, DemeritError) as exc:
            raise CacheCorruptionError(f"{path}: malformed class record ({exc})") from None

    def store(self, p: int, classes: Sequence[IsoClass]) -> Path:
        payload = {"version": CACHE_VERSION, "p": p, "classes": [class_to_json(c) for c in classes]}
        doc = {"payload": payload, "sha256": _digest(payload)}
        self.directory.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.directory, prefix=".tmp-", suffix=".json")
        try:
            os.chmod(tmp, 0o644)
            with os.fdopen(fd, "w") as fh:
                json.dump(doc, fh, indent=1, sort_keys=True)
            os.replace(tmp, self.path(p))
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
        return self.path(p)

    def clear(self) -> int:
        removed = 0
        if self.directory.exists():
            for f in self.directory.glob("classes-p*.json"):
                f.unlink()
                removed += 1
        return removed


def get_classes(p: int, cache: Cache | None, allow_long_running: bool, need_sols: bool = True) -> list[IsoClass]:
    """Classes for ``p``, from the cache when present (and valid)."""
    if p < 1 or p > MAX_P:
        raise UsageError(f"p must lie in 1..{MAX_P}")
    if p == 1:
        return []
    if need_sols and p > SOLS_MAX_P:
        raise ResourceLimitError(f"Sols quasi-polynomials are only computed for p <= {SOLS_MAX_P}")
    classes = cache.load(p) if cache else None
    if classes is not None and (not need_sols or all(c.sols is not None for c in classes)):
        return classes
    classes = isom_representatives(p, allow_long_running=allow_long_running)
    if p <= SOLS_MAX_P:
        classes = with_sols(classes)
    if cache:
        cache.store(p, classes)
    return classes


# output -------------------------------------------------------------------------


def _qp_text(q: QuasiPolynomial, var: str = "l") -> str:
    if q.period == 1:
        return format_polynomial(q.constituents[0], var)
    return "\n".join(
        f"{var} = {r} (mod {q.period}): {format_polynomial(c, var)}" for r, c in enumerate(q.constituents)
    )


def _emit_classes(classes: list[IsoClass], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([class_to_json(c) for c in classes], out, indent=1)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out)
        w.writerow(["index", "representative", "orbit_size", "sols"])
        for i, c in enumerate(classes, 1):
            sols = json.dumps(c.sols.to_json()) if c.sols is not None else ""
            w.writerow([i, str(c.representative), c.orbit_size, sols])
    else:
        for i, c in enumerate(classes, 1):
            out.write(f"class {i}: orbit size {c.orbit_size}\n  {c.representative}\n")
            if c.sols is not None:
                out.write("  Sols:\n")
                for line in _qp_text(c.sols).splitlines():
                    out.write(f"    {line}\n")


def _emit_symbolic(q: QuasiPolynomial, divisor: int | None, fmt: str, out) -> None:
    if fmt == "json":
        doc = q.to_json()
        if divisor is not None:
            doc["divisor_exponent"] = divisor
        json.dump(doc, out)
        out.write("\n")
    elif fmt == "csv":
        w = csv.writer(out)
        w.writerow(["residue", "period", "coefficients", "divisor_exponent"])
        for r, c in enumerate(q.constituents):
            w.writerow([r, q.period, " ".join(f"{x.numerator}/{x.denominator}" for x in c), divisor or ""])
    else:
        out.write(_qp_text(q) + "\n")
        if divisor is not None:
            out.write(f"divided by l^{divisor}\n")


def _emit_value(value, fmt: str, out) -> None:
    text = str(value)
    if fmt == "json":
        json.dump({"value": text}, out)
        out.write("\n")
    else:
        out.write(text + "\n")


# commands -----------------------------------------------------------------------


def _cache(args) -> Cache:
    return Cache(args.cache_dir)


def cmd_classes(args, out) -> int:
    p = args.p
    need_sols = p <= SOLS_MAX_P
    classes = get_classes(p, _cache(args), args.allow_long_running, need_sols=need_sols)
    _emit_classes(classes, args.format, out)
    return EXIT_OK


def _moment(p: int, args) -> QuasiPolynomial:
    if p == 1:
        return QuasiPolynomial.zero()
    return moment_from_classes(get_classes(p, _cache(args), args.allow_long_running))


def cmd_moment(args, out) -> int:
    p = args.p
    if p < 1 or p > MAX_P:
        raise UsageError(f"p must lie in 1..{MAX_P}")
    adf = args.statistic == "adf"
    if args.mode == "symbolic":
        if args.standardized:
            raise UsageError("--standardized needs --value")
        _emit_symbolic(_moment(p, args), 2 * p if adf else None, args.format, out)
        return EXIT_OK
    if args.ell is None:
        raise UsageError("--ell is required with --value")
    length = args.ell
    if length < 1:
        raise UndefinedInputError("--ell must be positive")
    q = _moment(p, args)
    if args.standardized:
        variance = _moment(2, args)
        value = standardized_from_values(q(length), variance(length), p, args.precision)
    else:
        value = q(length)
        if adf:
            value = value / length ** (2 * p)
    _emit_value(value, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    p, top = args.p, args.max_ell
    if top > EXHAUSTIVE_MAX_LENGTH:
        raise ResourceLimitError(f"--max-ell must be at most {EXHAUSTIVE_MAX_LENGTH}")
    q = _moment(p, args)
    for length in range(1, top + 1):
        expected = exhaustive_central_moment(p, length, "SSAC")
        got = q(length)
        if expected != got:
            out.write(f"MISMATCH p={p} l={length} expected={expected} got={got}\n")
            return EXIT_MISMATCH
    out.write(f"ok: p={p}, l=1..{top} match the exhaustive oracle\n")
    return EXIT_OK


def cmd_cache(args, out) -> int:
    cache = _cache(args)
    if args.action == "clear":
        out.write(f"removed {cache.clear()} file(s)\n")
        return EXIT_OK
    if args.action == "build":
        if args.p is None:
            raise UsageError("cache build needs --p")
        get_classes(args.p, cache, args.allow_long_running, need_sols=args.p <= SOLS_MAX_P)
        out.write(f"{cache.path(args.p)}\n")
        return EXIT_OK
    # verify
    ps = [args.p] if args.p is not None else range(2, MAX_P + 1)
    for p in ps:
        classes = cache.load(p)
        status = "missing" if classes is None else f"ok ({len(classes)} classes)"
        out.write(f"p={p}: {status}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cache-dir", default=DEFAULT_CACHE_DIR)
    common.add_argument("--allow-long-running", action="store_true", help="permit p = 5")
    common.add_argument("--format", choices=("json", "csv", "text"), default="text")

    parser = argparse.ArgumentParser(prog="dfm", description="Exact moments of the demerit factor.")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classes", parents=[common], help="list isomorphism classes")
    c.add_argument("--p", type=int, required=True)
    c.set_defaults(func=cmd_classes)

    m = sub.add_parser("moment", parents=[common], help="central moment")
    m.add_argument("--p", type=int, required=True)
    stat = m.add_mutually_exclusive_group()
    stat.add_argument("--ssac", dest="statistic", action="store_const", const="ssac")
    stat.add_argument("--adf", dest="statistic", action="store_const", const="adf")
    mode = m.add_mutually_exclusive_group()
    mode.add_argument("--symbolic", dest="mode", action="store_const", const="symbolic")
    mode.add_argument("--value", dest="mode", action="store_const", const="value")
    m.add_argument("--ell", type=int)
    m.add_argument("--standardized", action="store_true")
    m.add_argument("--precision", type=int, default=30)
    m.set_defaults(func=cmd_moment, statistic="ssac", mode="symbolic")

    v = sub.add_parser("verify", parents=[common], help="compare against exhaustive enumeration")
    v.add_argument("--p", type=int, required=True)
    v.add_argument("--max-ell", type=int, default=12)
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("cache", parents=[common], help="manage the class cache")
    k.add_argument("action", choices=("build", "verify", "clear"))
    k.add_argument("--p", type=int)
    k.set_defaults(func=cmd_cache)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except CacheCorruptionError as exc:
        print(f"cache corruption: {exc}", file=sys.stderr)
        return EXIT_CACHE
    except (UsageError, ResourceLimitError, UndefinedInputError, ZeroVarianceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
