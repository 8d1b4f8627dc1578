"""Loading fixture files (TOML) into schemes, morphisms and arcs.

Grammar (all keys other than ``[source]``, ``[target]`` and
``[morphism]`` are optional)::

    name = "blowup"             # defaults to the file stem
    field = "Q"                 # or "Fp:5"
    precision = 24
    birational = true           # enables the p^e fiber assertion
    description = "..."

    [source]
    vars = ["x", "y"]
    equations = []              # polynomial strings in vars
    dim = 2                     # defaults to len(vars) when equations = []

    [target]
    vars = ["u", "v"]
    equations = []
    dim = 2

    [morphism]
    components = ["x", "x*y"]   # one per target variable, in source vars

    [arcs]                      # per coordinate: coefficient list or polynomial in t
    main = [["0", "0", "1"], "t^3"]

    [jets]                      # optional defaults for jet-fibers / batch
    level = 2
    prime = 3
"""
from __future__ import annotations

import sys
from dataclasses import dataclass, field
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .algebra import DEFAULT_PRECISION, MultiPoly, TruncSeries, parse_field, parse_poly
from .algebra.poly import PolyParseError
from .arcs import Arc, arc_validate
from .errors import FixtureError, NotOnScheme
from .schemes import AffinePresentation, MorphismPresentation


@dataclass
class Fixture:
    name: str
    field_spec: str
    precision: int
    morphism: MorphismPresentation
    arc_specs: dict[str, list]
    birational: bool = False
    description: str = ""
    jets: dict = field(default_factory=dict)
    path: Path | None = None
    raw: dict = field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.morphism.field

    @property
    def source(self) -> AffinePresentation:
        return self.morphism.source

    @property
    def target(self) -> AffinePresentation:
        return self.morphism.target

    @property
    def arc_names(self) -> list[str]:
        return list(self.arc_specs)

    def arc(self, name: str, precision: int | None = None) -> Arc:
        if name not in self.arc_specs:
            raise FixtureError(
                f"{self.name}: no arc named {name!r}; available {self.arc_names}"
            )
        n = precision or self.precision
        coords = _arc_coords(self.arc_specs[name], self.source, n, f"arcs.{name}")
        try:
            return arc_validate(self.source, coords, n)
        except NotOnScheme as exc:
            raise FixtureError(f"{self.name}: arcs.{name}: {exc}") from None

    def with_overrides(self, field_spec: str | None = None,
                       precision: int | None = None) -> Fixture:
        if field_spec is None and precision is None:
            return self
        data = dict(self.raw)
        if field_spec is not None:
            data["field"] = field_spec
        if precision is not None:
            data["precision"] = precision
        return fixture_from_dict(data, self.name, self.path)


def load_fixture(path: str | Path, field_spec: str | None = None,
                 precision: int | None = None) -> Fixture:
    path = Path(path)
    try:
        with path.open("rb") as fh:
            data = tomllib.load(fh)
    except tomllib.TOMLDecodeError as exc:
        raise FixtureError(f"{path}: {exc}") from None
    except OSError as exc:
        raise FixtureError(f"{path}: {exc.strerror}") from None
    if field_spec is not None:
        data["field"] = field_spec
    if precision is not None:
        data["precision"] = precision
    return fixture_from_dict(data, path.stem, path)


def fixture_from_dict(data: dict, default_name: str = "fixture",
                      path: Path | None = None) -> Fixture:
    where = str(path) if path else default_name
    name = data.get("name", default_name)
    field_spec = str(data.get("field", "Q"))
    try:
        fld = parse_field(field_spec)
    except ValueError as exc:
        raise FixtureError(f"{where}: field: {exc}") from None
    precision = data.get("precision", DEFAULT_PRECISION)
    if not isinstance(precision, int) or precision < 1:
        raise FixtureError(f"{where}: precision: expected a positive integer, got {precision!r}")

    source = _presentation(data, "source", fld, where)
    target = _presentation(data, "target", fld, where)
    mor = _section(data, "morphism", where)
    comps = mor.get("components")
    if not isinstance(comps, list):
        raise FixtureError(f"{where}: morphism.components: expected a list of polynomials")
    components = [poly_from_text(c, fld, source.variables, f"{where}: morphism.components[{i}]")
                  for i, c in enumerate(comps)]
    try:
        morphism = MorphismPresentation(source, target, components, name=name)
    except ValueError as exc:
        raise FixtureError(f"{where}: morphism: {exc}") from None

    arcs = data.get("arcs", {})
    if not isinstance(arcs, dict):
        raise FixtureError(f"{where}: arcs: expected a table of named arcs")
    for arc_name, spec in arcs.items():
        if not isinstance(spec, list) or len(spec) != source.ambient_dim:
            raise FixtureError(
                f"{where}: arcs.{arc_name}: expected {source.ambient_dim} coordinates"
            )
        # parse eagerly so errors surface at load time
        _arc_coords(spec, source, precision, f"{where}: arcs.{arc_name}")

    jets = data.get("jets", {})
    return Fixture(name, str(fld), precision, morphism, dict(arcs),
                   bool(data.get("birational", False)), str(data.get("description", "")),
                   dict(jets), path, data)


def _section(data, key, where) -> dict:
    sec = data.get(key)
    if not isinstance(sec, dict):
        raise FixtureError(f"{where}: missing [{key}] section")
    return sec


def _presentation(data, key, fld, where) -> AffinePresentation:
    sec = _section(data, key, where)
    variables = sec.get("vars")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise FixtureError(f"{where}: {key}.vars: expected a list of variable names")
    if len(set(variables)) != len(variables):
        raise FixtureError(f"{where}: {key}.vars: duplicate variable names")
    eqs = [poly_from_text(e, fld, variables, f"{where}: {key}.equations[{i}]")
           for i, e in enumerate(sec.get("equations", []))]
    dim = sec.get("dim")
    try:
        return AffinePresentation(fld, tuple(variables), tuple(eqs), dim)
    except ValueError as exc:
        raise FixtureError(f"{where}: {key}: {exc}") from None


def poly_from_text(text, fld, variables, where) -> MultiPoly:
    if isinstance(text, int):
        text = str(text)
    if not isinstance(text, str):
        raise FixtureError(f"{where}: expected a polynomial string, got {text!r}")
    try:
        return parse_poly(text, fld, variables)
    except (PolyParseError, ZeroDivisionError) as exc:
        raise FixtureError(f"{where}: {exc}") from None


def _arc_coords(spec, X: AffinePresentation, precision, where) -> list[TruncSeries]:
    coords = []
    for i, c in enumerate(spec):
        loc = f"{where}[{i}]"
        if isinstance(c, str):
            p = poly_from_text(c, X.field, ("t",), loc)
            coeffs = [X.field.zero] * (p.degree() + 1)
            for (k,), v in p.terms.items():
                coeffs[k] = v
        elif isinstance(c, list):
            try:
                coeffs = [X.field(str(x)) for x in c]
            except (ValueError, ZeroDivisionError) as exc:
                raise FixtureError(f"{loc}: bad coefficient: {exc}") from None
        else:
            raise FixtureError(f"{loc}: expected a coefficient list or a polynomial in t")
        coords.append(TruncSeries(X.field, coeffs, precision))
    return coords
