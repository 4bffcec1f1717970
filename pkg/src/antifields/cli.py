"""Command-line front end and the JSON spec/report formats.

Exit codes: 0 success (or acyclic), 1 verification failure, 2 input error.
Data goes to stdout, diagnostics to stderr.  Files are written atomically.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from fractions import Fraction
from pathlib import Path

from .augmentation import AugmentationReport, resolve, verify_acyclic
from .graded_algebra import GeneratorTable, Parity, Polynomial
from .kt_complex import (
    Complex,
    GradingError,
    check_nilpotent,
    cohomology_table,
    grassmann_number,
)
from .models import KINDS, ModelSpec

SPEC_FORMAT = "antifields-complex"
REPORT_FORMAT = "antifields-report"
VERSION = 1

_PARITY = {"boson": Parity.BOSONIC, "fermion": Parity.FERMIONIC}
_PARITY_NAME = {v: k for k, v in _PARITY.items()}
_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


class SpecError(ValueError):
    """Malformed problem-spec file."""


# -- problem spec files --------------------------------------------------------


def complex_to_dict(c: Complex, metadata: dict | None = None) -> dict:
    t = c.table
    gens = [
        {
            "name": g.name,
            "antifield_number": g.antifield_number,
            "parity": _PARITY_NAME[g.parity],
            "weight": g.weight,
        }
        for g in t
    ]
    diff = {}
    for g, img in zip(t, c.images):
        if img:
            diff[g.name] = [
                [str(coef), {t[gid].name: e for gid, e in m}] for m, coef in sorted(img.terms.items())
            ]
    return {
        "format": SPEC_FORMAT,
        "version": VERSION,
        "metadata": {str(k): str(v) for k, v in (metadata or {}).items()},
        "generators": gens,
        "differential": diff,
    }


def _parse_rational(s, where: str) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str) or not _RATIONAL.match(s.strip()):
        raise SpecError(f"{where}: expected a rational string like '3' or '-1/2', got {s!r}")
    num, _, den = s.strip().partition("/")
    if den and int(den) == 0:
        raise SpecError(f"{where}: zero denominator in {s!r}")
    return Fraction(int(num), int(den) if den else 1)


def _expect(obj, kind, where):
    if not isinstance(obj, kind) or isinstance(obj, bool) and kind is int:
        raise SpecError(f"{where}: expected {kind.__name__}, got {type(obj).__name__}")
    return obj


def complex_from_dict(data) -> tuple[Complex, dict]:
    _expect(data, dict, "spec")
    fmt = data.get("format", SPEC_FORMAT)
    if fmt != SPEC_FORMAT:
        raise SpecError(f"format: expected {SPEC_FORMAT!r}, got {fmt!r}")
    metadata = data.get("metadata", {})
    _expect(metadata, dict, "metadata")
    gens = _expect(data.get("generators", []), list, "generators")
    specs = []
    seen = set()
    for i, g in enumerate(gens):
        where = f"generators[{i}]"
        _expect(g, dict, where)
        name = g.get("name")
        if not isinstance(name, str) or not name:
            raise SpecError(f"{where}.name: expected a nonempty string")
        if name in seen:
            raise SpecError(f"{where}.name: duplicate generator name {name!r}")
        seen.add(name)
        if "antifield_number" not in g:
            raise SpecError(f"{where}.antifield_number: missing")
        n = _expect(g["antifield_number"], int, f"{where}.antifield_number")
        parity = g.get("parity")
        if parity not in _PARITY:
            raise SpecError(f"{where}.parity: expected 'boson' or 'fermion', got {parity!r}")
        w = _expect(g.get("weight", 1), int, f"{where}.weight")
        if w < 1:
            raise SpecError(f"{where}.weight: must be >= 1, got {w}")
        specs.append((name, n, _PARITY[parity], w))
    table = GeneratorTable.build(specs)
    diff = _expect(data.get("differential", {}), dict, "differential")
    delta = {}
    for gname, terms in diff.items():
        where = f"differential[{gname!r}]"
        if gname not in table:
            raise SpecError(f"{where}: unknown generator {gname!r}")
        _expect(terms, list, where)
        out: dict = {}
        for j, term in enumerate(terms):
            tw = f"{where}[{j}]"
            if not isinstance(term, list) or len(term) != 2:
                raise SpecError(f"{tw}: expected [coefficient, monomial]")
            coef = _parse_rational(term[0], f"{tw}.coefficient")
            mono = _expect(term[1], dict, f"{tw}.monomial")
            factors = []
            for fname, e in mono.items():
                if fname not in table:
                    raise SpecError(f"{tw}.monomial: unknown generator {fname!r}")
                e = _expect(e, int, f"{tw}.monomial[{fname!r}]")
                if e < 1:
                    raise SpecError(f"{tw}.monomial[{fname!r}]: exponent must be >= 1")
                gid = table.id_of(fname)
                if table.is_fermionic(gid) and e > 1:
                    raise SpecError(f"{tw}.monomial[{fname!r}]: fermionic generator with exponent {e}")
                factors.append((gid, e))
            m = tuple(sorted(factors))
            out[m] = out.get(m, 0) + coef
        delta[gname] = Polynomial(out)
    try:
        c = Complex(table, delta)
    except GradingError as exc:
        raise SpecError(f"grading violation: {exc}") from None
    return c, {str(k): str(v) for k, v in metadata.items()}


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _atomic_write(path, text: str):
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_spec(c: Complex, path, metadata: dict | None = None):
    _atomic_write(path, _dumps(complex_to_dict(c, metadata)))


def load_spec(path) -> tuple[Complex, dict]:
    """Read a spec file; raises :class:`SpecError` with location context."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise SpecError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        return complex_from_dict(data)
    except SpecError as exc:
        raise SpecError(f"{path}: {exc}") from None


# -- reports --------------------------------------------------------------------


def augmentation_to_dict(c: Complex, report: AugmentationReport) -> dict:
    rounds = []
    for r in report.rounds:
        ids = r.identities
        rounds.append(
            {
                "level": r.level,
                "added": [{"name": n, "parity": _PARITY_NAME[p]} for n, p in r.added],
                "identities": [c.table.format(ids.combination(c, i)) for i in range(len(ids))],
            }
        )
    return {"rounds": rounds, "terminated": report.terminated}


def _report(command: str, params: dict, c: Complex, metadata: dict, **sections) -> dict:
    out = {
        "format": REPORT_FORMAT,
        "version": VERSION,
        "command": command,
        "parameters": params,
        "metadata": metadata,
        "complex": {"generators": len(c.table), "grassmann_number": grassmann_number(c)},
    }
    out.update(sections)
    return out


# -- commands -------------------------------------------------------------------


def _parse_modes(s: str) -> tuple[int, int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", s)
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {s!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty mode range {s!r}")
    return lo, hi


def _parse_k(s: str) -> tuple[int, ...]:
    try:
        k = tuple(int(x) for x in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected four comma-separated integers, got {s!r}") from None
    if len(k) != 4:
        raise argparse.ArgumentTypeError(f"expected four comma-separated integers, got {s!r}")
    return k


def _model_from_args(args) -> tuple[ModelSpec, dict]:
    kind = args.model
    meta = {"model": kind}
    if kind in ("oscillator", "oscillator_ghost"):
        params = {"modes": args.modes, "omega": args.omega, "with_theta": args.theta}
        meta.update(modes=f"{args.modes[0]}..{args.modes[1]}", omega=args.omega)
        if args.theta:
            meta["with_theta"] = "true"
    elif kind == "maxwell":
        params = {"radius": args.radius, "with_theta": not args.no_theta}
        meta.update(radius=args.radius, metric="(+,-,-,-)")
        if args.k is not None:
            params["k"] = args.k
            meta["k"] = ",".join(str(x) for x in args.k)
        if args.k is None or not any(args.k):
            meta["flagged_block"] = (
                "k=(0,0,0,0): the gauge row k^mu vanishes; no thetas are pre-built there"
            )
    elif kind == "scalar2d":
        params = {"M": args.order, "with_tower": args.tower, "with_chi": not args.no_chi}
        meta.update(M=args.order, tower=str(args.tower).lower(), chi=str(args.tower and not args.no_chi).lower())
    else:
        params = {"n": args.n, "p": args.p, "seed": args.seed}
        meta.update(n=args.n, p=args.p, seed=args.seed)
    return ModelSpec(kind, params), {k: str(v) for k, v in meta.items()}


def cmd_build(args) -> int:
    spec, meta = _model_from_args(args)
    c = spec.build()
    text = _dumps(complex_to_dict(c, meta))
    if args.output:
        _atomic_write(args.output, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_nilpotency(args) -> int:
    c, _ = load_spec(args.spec)
    report = check_nilpotent(c)
    if report.ok:
        print(f"ok: delta^2 = 0 on all {len(c.table)} generators")
        return 0
    print(f"FAIL: delta^2({report.generator}) = {c.table.format(report.image)}")
    return 1


def _require_nilpotent(c: Complex) -> bool:
    report = check_nilpotent(c)
    if not report.ok:
        print(
            f"error: delta^2({report.generator}) = {c.table.format(report.image)}; not a complex",
            file=sys.stderr,
        )
    return report.ok


def cmd_cohomology(args) -> int:
    c, meta = load_spec(args.spec)
    if not _require_nilpotent(c):
        return 1
    tab = cohomology_table(c, args.max_antifield, args.max_weight, args.representatives)
    sys.stdout.write(tab.to_text())
    if args.out:
        params = {
            "max_antifield": args.max_antifield,
            "max_weight": args.max_weight,
            "representatives": args.representatives,
        }
        _atomic_write(args.out, _dumps(_report("cohomology", params, c, meta, cohomology=tab.to_dict())))
    return 0


def _verdict_text(rep) -> str:
    lines = [f"acyclic: {'yes' if rep.acyclic else 'no'}"]
    for n, d, dim in rep.offending:
        lines.append(f"  offending block (n={n}, d={d}): dim H = {dim}")
    lines.append("  H^0 by weight: " + ", ".join(f"d={d}: {h}" for d, h in sorted(rep.h0.items())))
    return "\n".join(lines) + "\n"


def _verdict_dict(rep) -> dict:
    return {
        "acyclic": rep.acyclic,
        "offending": [{"n": n, "d": d, "dim_H": dim} for n, d, dim in rep.offending],
        "h0": [{"d": d, "dim_H": h} for d, h in sorted(rep.h0.items())],
        "constants": rep.constants,
    }


def cmd_verify(args) -> int:
    c, meta = load_spec(args.spec)
    if not _require_nilpotent(c):
        return 1
    rep = verify_acyclic(c, args.max_antifield, args.max_weight)
    tab = cohomology_table(c, args.max_antifield, args.max_weight)
    sys.stdout.write(tab.to_text())
    sys.stdout.write(_verdict_text(rep))
    if "flagged_block" in meta:
        print(f"note: {meta['flagged_block']}", file=sys.stderr)
    if args.out:
        params = {"max_antifield": args.max_antifield, "max_weight": args.max_weight}
        _atomic_write(
            args.out,
            _dumps(_report("verify", params, c, meta, cohomology=tab.to_dict(), verdict=_verdict_dict(rep))),
        )
    return 0 if rep.acyclic else 1


def cmd_augment(args) -> int:
    c, meta = load_spec(args.spec)
    if not _require_nilpotent(c):
        return 1
    out, report = resolve(c, args.max_level, args.prefix)
    for r in report.rounds:
        names = ", ".join(n for n, _ in r.added)
        print(f"level {r.level}: {len(r.added)} identities -> added {names}")
    print(f"terminated: {'yes' if report.terminated else 'no'}")
    meta = dict(meta)
    meta["augmented"] = "true"
    _atomic_write(args.output, _dumps(complex_to_dict(out, meta)))
    if args.report:
        params = {"max_level": args.max_level, "prefix": args.prefix}
        _atomic_write(
            args.report,
            _dumps(_report("augment", params, out, meta, augmentation=augmentation_to_dict(out, report))),
        )
    return 0 if report.terminated else 1


def cmd_grassmann(args) -> int:
    c, _ = load_spec(args.spec)
    print(grassmann_number(c))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SpecError(message)


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="antifields", description="Koszul-Tate complexes, cohomology and higher antifields.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    b = sub.add_parser("build", help="emit the spec of a built-in model")
    b.add_argument("model", choices=KINDS)
    b.add_argument("--modes", type=_parse_modes, default=(-2, 2), help="oscillator modes LO..HI")
    b.add_argument("--omega", type=int, default=1)
    b.add_argument("--theta", action="store_true", help="oscillator: include theta(+-omega)")
    b.add_argument("--radius", type=int, default=1, help="maxwell momentum box radius")
    b.add_argument("--k", type=_parse_k, help="maxwell: a single momentum block k0,k1,k2,k3")
    b.add_argument("--no-theta", action="store_true", help="maxwell: omit the lightlike thetas")
    b.add_argument("--order", type=int, default=4, help="scalar2d Taylor order M")
    b.add_argument("--tower", action="store_true", help="scalar2d: include theta_m, thetabar_n, chi")
    b.add_argument("--no-chi", action="store_true", help="scalar2d: omit chi from the tower")
    b.add_argument("--n", type=int, default=4)
    b.add_argument("--p", type=int, default=0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_build)

    s = sub.add_parser("nilpotency", help="check delta^2 = 0 on every generator")
    s.add_argument("spec")
    s.set_defaults(func=cmd_nilpotency)

    for name, func, help_ in (
        ("cohomology", cmd_cohomology, "cohomology dimensions per (n, d) block"),
        ("verify", cmd_verify, "check that cohomology vanishes outside n = 0"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("spec")
        s.add_argument("--max-antifield", type=int, required=True)
        s.add_argument("--max-weight", type=int, required=True)
        if name == "cohomology":
            s.add_argument("--representatives", action="store_true")
        s.add_argument("--out", help="write a JSON report here")
        s.set_defaults(func=func)

    s = sub.add_parser("augment", help="add higher antifields until no identities remain")
    s.add_argument("spec")
    s.add_argument("--max-level", type=int, default=8)
    s.add_argument("--prefix", default="theta")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--report", help="write a JSON augmentation report here")
    s.set_defaults(func=cmd_augment)

    s = sub.add_parser("grassmann", help="bosonic minus fermionic generator count")
    s.add_argument("spec")
    s.set_defaults(func=cmd_grassmann)
    return p


def run(argv=None) -> int:
    try:
        args = make_parser().parse_args(argv)
        return args.func(args)
    except (SpecError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
