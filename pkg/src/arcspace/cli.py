"""Command line interface: ``arcspace <command> FIXTURE [options]``.

Exit codes: 0 success or Confirmed, 2 Inconclusive, 1 any error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import jets
from .arcs import arc_pushforward, ord_along
from .errors import ArcspaceError, FixtureError
from .fixture import Fixture, load_fixture, poly_from_text
from .schemes import ramification_ideal, singular_locus_ideal
from .smith import smith_normal_form
from .tangent import (
    CONFIRMED,
    INCONCLUSIVE,
    format_divisors,
    tangent_map_matrix,
    tangent_space_presentation,
    theorem2_verdict,
)

FIXTURE_DIR_ENV = "ARCSPACE_FIXTURES"
PACKAGED_FIXTURES = Path(__file__).parent / "fixtures"

EXIT_OK, EXIT_ERROR, EXIT_INCONCLUSIVE = 0, 1, 2


@dataclass
class Report:
    """Lines for humans plus the same content as flat records for machines."""

    command: str
    fixture: str
    field: str
    precision: int
    lines: list[str] = field(default_factory=list)
    records: list[dict] = field(default_factory=list)
    exit_code: int = EXIT_OK

    def add(self, line: str, **record):
        self.lines.append(line)
        if record:
            self.records.append(record)

    def render(self, machine: bool = False) -> str:
        if machine:
            base = {"command": self.command, "fixture": self.fixture,
                    "field": self.field, "precision": self.precision}
            out = [json.dumps({**base, **r}, sort_keys=True) for r in self.records]
            return "\n".join(out) + "\n"
        header = (f"# {self.command} fixture={self.fixture} "
                  f"field={self.field} precision={self.precision}")
        return "\n".join([header, *self.lines]) + "\n"


def fixture_dir() -> Path:
    env = os.environ.get(FIXTURE_DIR_ENV)
    return Path(env) if env else PACKAGED_FIXTURES


def resolve_fixture(ref: str) -> Path:
    """A path, or a bare fixture name looked up in the default fixture directory."""
    path = Path(ref)
    if path.exists():
        return path
    for candidate in (fixture_dir() / ref, fixture_dir() / f"{ref}.toml"):
        if candidate.exists():
            return candidate
    raise FixtureError(f"fixture {ref!r} not found (looked in {fixture_dir()})")


def _new_report(command: str, fx: Fixture) -> Report:
    return Report(command, fx.name, fx.field_spec, fx.precision)


def _poly_list(gens) -> str:
    return "[" + ", ".join(str(g) for g in gens) + "]"


def cmd_ramification(fx: Fixture) -> Report:
    rep = _new_report("ramification", fx)
    gens = ramification_ideal(fx.morphism)
    inseparable = all(g.is_zero() for g in gens)
    rep.add(f"generators={_poly_list(gens)}", generators=[str(g) for g in gens],
            inseparable=inseparable)
    if inseparable:
        rep.add("warning: ramification ideal is zero (inseparable morphism)")
    return rep


def cmd_ord(fx: Fixture, arc_name: str, ideal: str, on: str = "source") -> Report:
    rep = _new_report("ord", fx)
    gamma = fx.arc(arc_name)
    if on == "target":
        gamma = arc_pushforward(fx.morphism, gamma)
    scheme = gamma.scheme
    if ideal == "ramification":
        if on == "target":
            raise FixtureError("the ramification ideal lives on the source")
        gens = ramification_ideal(fx.morphism)
    elif ideal == "singular":
        gens = singular_locus_ideal(scheme)
    else:
        gens = [poly_from_text(g.strip(), scheme.field, scheme.variables, f"--ideal[{i}]")
                for i, g in enumerate(ideal.split(","))]
    v = ord_along(gens, gamma)
    rep.add(f"arc={arc_name} on={on} ideal={_poly_list(gens)} ord={v}",
            arc=arc_name, on=on, ideal=[str(g) for g in gens], ord=str(v))
    return rep


def _series_matrix(m) -> list[list[str]]:
    return [[str(x) for x in row] for row in m.rows]


def cmd_tangent(fx: Fixture, arc_name: str) -> Report:
    rep = _new_report("tangent", fx)
    gamma = fx.arc(arc_name)
    delta = arc_pushforward(fx.morphism, gamma)
    rep.add(f"arc={arc_name}")
    rep.add("image_arc=(" + ", ".join(str(c) for c in delta.coords) + ")",
            arc=arc_name, image_arc=[str(c) for c in delta.coords])
    tsp = tangent_space_presentation(fx.target, delta)
    basis = _series_matrix(tsp.kernel_basis.transpose())
    rep.add("target_kernel_basis=" + "; ".join("(" + ", ".join(col) + ")" for col in basis),
            target_kernel_basis=basis, free_rank=tsp.free_rank)
    C = tangent_map_matrix(fx.morphism, gamma, tsp)
    rows = _series_matrix(C)
    rep.add("tangent_matrix=" + "; ".join("[" + ", ".join(r) + "]" for r in rows),
            tangent_matrix=rows)
    snf = smith_normal_form(C)
    rep.add(f"divisors={format_divisors(snf.divisors)}",
            divisors=[str(d) for d in snf.divisors])
    return rep


def cmd_verify_thm2(fx: Fixture, arc_name: str | None = None) -> Report:
    rep = _new_report("verify-thm2", fx)
    names = [arc_name] if arc_name else fx.arc_names[:1]
    if not names:
        raise FixtureError(f"{fx.name}: fixture declares no arcs")
    codes = []
    for name in names:
        try:
            result = theorem2_verdict(fx.morphism, fx.arc(name))
        except FixtureError:
            raise
        except ArcspaceError as exc:
            kind = type(exc).__name__
            rep.add(f"arc={name} error={kind}: {exc}", arc=name, error=kind, message=str(exc))
            codes.append(EXIT_ERROR)
            continue
        rep.add(f"arc={name} {result.summary()}", arc=name,
                e=str(result.e), divisors=[str(d) for d in result.divisors],
                injective=result.injective, coker_dim=result.coker_dim,
                sing_check=str(result.sing_check), verdict=str(result.verdict))
        status = result.verdict.status
        codes.append(EXIT_OK if status == CONFIRMED
                     else EXIT_INCONCLUSIVE if status == INCONCLUSIVE else EXIT_ERROR)
    rep.exit_code = EXIT_ERROR if EXIT_ERROR in codes else max(codes)
    return rep


def cmd_jet_fibers(fx: Fixture, level: int | None = None, prime: int | None = None,
                   budget: int = jets.DEFAULT_BUDGET) -> Report:
    level = fx.jets.get("level") if level is None else level
    if prime is None:
        prime = fx.jets.get("prime")
        if prime is None and fx.field_spec.startswith("Fp:"):
            prime = int(fx.field_spec[3:])
    if level is None or prime is None:
        raise FixtureError(f"{fx.name}: jet-fibers needs --level and --prime")
    rep = _new_report("jet-fibers", fx)
    fr = jets.fiber_statistics(fx.morphism, level, prime, budget, birational=fx.birational)
    rep.add(f"level={level} prime={prime} source_jets={fr.total_jets} "
            f"birational={str(fr.birational).lower()}")
    rep.add(f"{'bucket':<8}{'images':>8}  {'histogram (size:count)':<28}assertion")
    failed = False
    for key in fr.ordered_keys():
        hist = fr.histogram(key)
        status = fr.assertion(key)
        failed |= status == "FAIL"
        hist_text = " ".join(f"{s}:{c}" for s, c in hist.items())
        rep.add(f"{str(key):<8}{len(fr.buckets[key]):>8}  {hist_text:<28}{status}",
                level=level, prime=prime, bucket=str(key),
                histogram={str(s): c for s, c in hist.items()}, assertion=status)
    rep.exit_code = EXIT_ERROR if failed else EXIT_OK
    return rep


def run_fixture_batch(path: Path, precision: int | None, field_spec: str | None,
                      budget: int, machine: bool) -> tuple[str, int]:
    """Full report for one fixture: ramification, every arc, jet fibers if configured."""
    try:
        fx = load_fixture(path, field_spec, precision)
    except FixtureError as exc:
        return f"# error {path.name}: {exc}\n", EXIT_ERROR
    parts = [cmd_ramification(fx).render(machine)]
    for name in fx.arc_names:
        parts.append(cmd_verify_thm2(fx, name).render(machine))
    if fx.jets:
        try:
            parts.append(cmd_jet_fibers(fx, budget=budget).render(machine))
        except ArcspaceError as exc:
            parts.append(f"# jet-fibers error {type(exc).__name__}: {exc}\n")
    return "".join(parts), EXIT_OK


def cmd_batch(directory: Path, out: Path | None, precision, field_spec, budget,
              machine, jobs: int | None = None) -> tuple[str, int]:
    paths = sorted(directory.glob("*.toml"), key=lambda p: p.stem)
    if not paths:
        raise FixtureError(f"no *.toml fixtures in {directory}")
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        results = list(pool.map(
            lambda p: run_fixture_batch(p, precision, field_spec, budget, machine), paths))
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        for p, (text, _) in zip(paths, results):
            (out / f"{p.stem}.report").write_text(text, encoding="utf-8")
    code = max(c for _, c in results)
    return "".join(text for text, _ in results), code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        help="truncation precision N (default: fixture value or 24)")
    common.add_argument("--field", default=None, help="override the field: Q or Fp:<p>")
    common.add_argument("--machine", action="store_true",
                        help="emit one JSON record per line")
    common.add_argument("--budget", type=int, default=jets.DEFAULT_BUDGET,
                        help="maximum number of candidate jets to enumerate")

    parser = argparse.ArgumentParser(
        prog="arcspace",
        description="Ramification and tangent maps of morphisms on arc spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ramification", parents=[common], help="generators of Fitt^0(Omega_X/Y)")
    p.add_argument("fixture")

    p = sub.add_parser("ord", parents=[common], help="order of vanishing of an ideal along an arc")
    p.add_argument("fixture")
    p.add_argument("--arc", required=True)
    p.add_argument("--ideal", default="ramification",
                   help="'ramification', 'singular', or comma-separated polynomials")
    p.add_argument("--on", choices=["source", "target"], default="source")

    p = sub.add_parser("tangent", parents=[common], help="tangent map matrix at an arc")
    p.add_argument("fixture")
    p.add_argument("--arc", required=True)

    p = sub.add_parser("verify-thm2", parents=[common],
                       help="certify injectivity and cokernel dimension of the tangent map")
    p.add_argument("fixture")
    p.add_argument("--arc", default=None, help="arc name (default: first arc in the fixture)")

    p = sub.add_parser("jet-fibers", parents=[common], help="exhaustive jet fiber counts over F_p")
    p.add_argument("fixture")
    p.add_argument("--level", "-m", type=int, default=None)
    p.add_argument("--prime", "-p", type=int, default=None)

    p = sub.add_parser("batch", parents=[common], help="run every fixture in a directory")
    p.add_argument("directory", nargs="?", default=None)
    p.add_argument("--out", default=None, help="also write one <fixture>.report file per fixture")
    p.add_argument("--jobs", type=int, default=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors, which would read as Inconclusive
        return EXIT_ERROR if exc.code else 0
    try:
        if args.command == "batch":
            directory = Path(args.directory) if args.directory else fixture_dir()
            text, code = cmd_batch(directory, Path(args.out) if args.out else None,
                                   args.precision, args.field, args.budget,
                                   args.machine, args.jobs)
            sys.stdout.write(text)
            return code
        fx = load_fixture(resolve_fixture(args.fixture), args.field, args.precision)
        if args.command == "ramification":
            rep = cmd_ramification(fx)
        elif args.command == "ord":
            rep = cmd_ord(fx, args.arc, args.ideal, args.on)
        elif args.command == "tangent":
            rep = cmd_tangent(fx, args.arc)
        elif args.command == "verify-thm2":
            rep = cmd_verify_thm2(fx, args.arc)
        else:
            rep = cmd_jet_fibers(fx, args.level, args.prime, args.budget)
    except ArcspaceError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    sys.stdout.write(rep.render(args.machine))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
