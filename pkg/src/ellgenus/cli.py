"""Command-line front end.

``ellgenus run CONFIG`` computes one genus and prints a JSON (or text)
document; ``ellgenus compare A B`` runs two configurations and diffs the
results coefficientwise.  Exit codes: 0 success, 1 comparison mismatch,
2 invalid configuration, 3 divisibility condition violated, 4 degenerate LG
term, 5 internal identity failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .algebra.qseries import QSeries
from .algebra.serialize import dumps, fraction_to_str, qseries_from_json, qseries_to_json, str_to_fraction
from .elliptic.jacobi import (
    CharacterNotConstant,
    ModulusNotConstant,
    NoPoleAtOrigin,
    ODEMismatch,
    TrivialCoset,
    TruncationInsufficient,
)
from .elliptic.theta import PoleError
from .genus import (
    CIModel,
    ConditionViolated,
    GenusSpec,
    IdentityFailed,
    NonRationalGenus,
    ParityMismatch,
    ResidueSumNonzero,
    ci_example_level2,
    division_sum_genus,
    hypersurface_level2,
    residue_genus,
)
from .intlat import SingularMatrix, cy_condition, snf
from .lg import (
    CONVENTIONS,
    DenominatorVanishes,
    InvalidModel,
    LGModel,
    NonIntegralExponents,
    QYSeries,
    assembled,
    ell_genus_numeric,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_CONDITION = 3
EXIT_DEGENERATE = 4
EXIT_IDENTITY = 5

MODELS = ("complete_intersection", "hypersurface", "lg_orbifold")
METHODS = ("residue", "division_sum", "closed_form", "lg")
EXAMPLE_DIMS = (4, 3, 2)
EXAMPLE_MATRIX = ((3, 0, 0), (1, 2, 0), (0, 1, 2))


class ConfigError(ValueError):
    def __init__(self, message: str, source: str = "config", line: int | None = None):
        self.source, self.line = source, line
        where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)


class IncompatibleExponentLattices(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    model: str
    payload: dict = field(hash=False)
    method: str
    backend: str = "exact"
    T: int = 3
    Z: int = 8
    level: int = 2
    character: int = 1
    tau: complex | None = None
    z: complex | None = None
    tol: float = 1e-8
    output: str = "json"
    convention: str = "example"

    def echo(self) -> dict:
        doc = {
            "model": self.model,
            "method": self.method,
            "backend": self.backend,
            "orders": {"T": self.T, "Z": self.Z},
            "output": self.output,
        }
        if self.model == "lg_orbifold":
            doc["charges"] = [fraction_to_str(c) for c in self.payload["lg"].charges]
            doc["group"] = [[fraction_to_str(v) for v in g] for g in self.payload["lg"].elements]
            doc["convention"] = self.convention
        else:
            doc["dims"] = list(self.payload["ci"].dims)
            doc["matrix"] = [list(r) for r in self.payload["ci"].matrix.rows]
            doc["level"] = self.level
            doc["character"] = self.character
        if self.backend == "numeric":
            doc["tol"] = self.tol
            doc["tau"] = [self.tau.real, self.tau.imag]
            if self.z is not None:
                doc["z"] = [self.z.real, self.z.imag]
        return doc

    def spec(self) -> GenusSpec:
        return GenusSpec(
            level=self.level,
            character=self.character,
            order=self.T,
            wdepth=self.Z,
            backend=self.backend,
            tau=self.tau if self.tau is not None else 1j,
            tol=self.tol,
        )


# -- parsing ------------------------------------------------------------------------------


def _line_of(text: str, key: str) -> int | None:
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return None if m is None else text.count("\n", 0, m.start()) + 1


def parse_complex(value, what: str = "value") -> complex:
    if isinstance(value, str):
        parts = value.split(",")
        if len(parts) != 2:
            raise ValueError(f"{what} must be RE,IM")
        return complex(float(parts[0]), float(parts[1]))
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, (int, float)):
        return complex(value)
    raise ValueError(f"{what} must be a [re, im] pair")


def _int(v, what) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"{what} must be an integer")
    return v


def parse_config(text: str, source: str = "config", overrides: dict | None = None) -> RunConfig:
    """Validate a JSON configuration; errors carry the line of the offending key."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", source, exc.lineno) from None
    if not isinstance(raw, dict):
        raise ConfigError("top level must be an object", source, 1)
    raw = dict(raw)
    for k, v in (overrides or {}).items():
        if v is not None:
            raw[k] = v

    def fail(key, msg):
        raise ConfigError(msg, source, _line_of(text, key))

    known = {"model", "dims", "degree", "matrix", "charges", "group", "generator", "order", "method",
             "backend", "orders", "level", "character", "tau", "z", "tol", "output", "convention"}
    for k in raw:
        if k not in known:
            fail(k, f"unknown key {k!r}")
    model = raw.get("model")
    if model not in MODELS:
        fail("model", f"model must be one of {', '.join(MODELS)}")
    method = raw.get("method", "lg" if model == "lg_orbifold" else "residue")
    if method not in METHODS:
        fail("method", f"method must be one of {', '.join(METHODS)}")
    backend = raw.get("backend", "exact")
    if backend not in ("exact", "numeric"):
        fail("backend", "backend must be exact or numeric")
    orders = raw.get("orders", {})
    if not isinstance(orders, dict):
        fail("orders", "orders must be an object with T and Z")
    try:
        T = _int(orders.get("T", 3), "orders.T")
        Z = _int(orders.get("Z", 8), "orders.Z")
        level = _int(raw.get("level", 2), "level")
        character = _int(raw.get("character", 1), "character")
    except ValueError as exc:
        fail("orders", str(exc))
    if T < 0 or Z < 1:
        fail("orders", "orders need T >= 0 and Z >= 1")
    if level not in (2, 3, 4):
        fail("level", "level must be 2, 3 or 4")
    if character % level == 0:
        fail("character", "character index must be non-zero mod the level")
    output = raw.get("output", "json")
    if output not in ("json", "text"):
        fail("output", "output must be json or text")
    try:
        tol = float(raw.get("tol", 1e-8))
    except (TypeError, ValueError):
        fail("tol", "tol must be a number")
    if not tol > 0:
        fail("tol", "tol must be positive")
    convention = raw.get("convention", "example")
    if convention not in CONVENTIONS:
        fail("convention", f"convention must be one of {', '.join(CONVENTIONS)}")

    tau = z = None
    if backend == "numeric":
        if "tau" not in raw:
            fail("backend", "numeric backend needs tau")
        try:
            tau = parse_complex(raw["tau"], "tau")
        except ValueError as exc:
            fail("tau", str(exc))
        if tau.imag <= 0:
            fail("tau", "tau must lie in the upper half-plane")
        if model == "lg_orbifold":
            if "z" not in raw:
                fail("backend", "numeric LG evaluation needs z")
            try:
                z = parse_complex(raw["z"], "z")
            except ValueError as exc:
                fail("z", str(exc))
        elif "z" in raw:
            fail("z", "z is only used by the LG method")
    else:
        for k in ("tau", "z"):
            if k in raw:
                fail(k, f"{k} is only allowed with the numeric backend")

    payload: dict = {}
    if model == "lg_orbifold":
        if method != "lg":
            fail("method", "lg_orbifold models use method lg")
        try:
            charges = [str_to_fraction(c) for c in raw.get("charges", [])]
        except (TypeError, ValueError, ZeroDivisionError):
            fail("charges", "charges must be rationals like \"1/5\"")
        try:
            if "group" in raw:
                els = [[str_to_fraction(v) for v in g] for g in raw["group"]]
                lg = LGModel(charges, els)
            elif "generator" in raw:
                gen = [str_to_fraction(v) for v in raw["generator"]]
                lg = LGModel.cyclic(charges, gen, raw.get("order"))
            else:
                lg = LGModel(charges, [[0] * len(charges)])
        except (InvalidModel, TypeError, ValueError, ZeroDivisionError) as exc:
            fail("group" if "group" in raw else "generator" if "generator" in raw else "charges", str(exc))
        payload["lg"] = lg
    else:
        if method == "lg":
            fail("method", "method lg needs an lg_orbifold model")
        dims = raw.get("dims")
        if isinstance(dims, int):
            dims = [dims]
        if not isinstance(dims, list) or not dims or not all(isinstance(d, int) and d > 0 for d in dims):
            fail("dims", "dims must be a non-empty list of positive integers")
        if model == "hypersurface":
            if len(dims) != 1:
                fail("dims", "a hypersurface lives in one projective space")
            if "degree" not in raw or not isinstance(raw["degree"], int) or raw["degree"] < 1:
                fail("degree", "hypersurface needs a positive integer degree")
            matrix = [[raw["degree"]]]
        else:
            matrix = raw.get("matrix")
            if not isinstance(matrix, list) or not matrix:
                fail("matrix", "matrix must be a non-empty list of rows")
            for i, row in enumerate(matrix):
                if not isinstance(row, list) or len(row) != len(dims):
                    fail("matrix", f"matrix row {i} has {len(row) if isinstance(row, list) else 'no'} entries, expected {len(dims)}")
                if not all(isinstance(v, int) and v >= 0 for v in row):
                    fail("matrix", f"matrix row {i} must hold non-negative integers")
        try:
            ci = CIModel(dims, matrix)
        except ValueError as exc:
            fail("matrix", str(exc))
        if method == "closed_form":
            if level != 2:
                fail("level", "closed forms exist at level 2 only")
            is_example = tuple(ci.dims) == EXAMPLE_DIMS and tuple(ci.matrix.rows) == EXAMPLE_MATRIX
            if model != "hypersurface" and not (ci.l == 1 and ci.t == 1) and not is_example:
                fail("method", "closed_form covers hypersurfaces and the worked 3x3 example only")
        payload["ci"] = ci
    return RunConfig(model, payload, method, backend, T, Z, level, character, tau, z, tol, output, convention)


# -- running ------------------------------------------------------------------------------


def _point_json(h) -> list:
    return [[fraction_to_str(p.x), fraction_to_str(p.y)] for p in h]


def structure(cfg: RunConfig) -> dict:
    if cfg.model == "lg_orbifold":
        lg = cfg.payload["lg"]
        return {
            "group_order": lg.order,
            "variables": lg.nvars,
            "central_charge": fraction_to_str(lg.central_charge()),
            "sectors": lg.order**2,
            "D": lg.field_order(),
        }
    ci = cfg.payload["ci"]
    M = ci.matrix
    res = snf(M)
    out = {
        "snf": {"D": res.diagonal, "A": [list(r) for r in res.A], "B": [list(r) for r in res.B]},
        "dimension": ci.dimension,
    }
    if ci.l == ci.t:
        d = M.det()
        out["det"] = d
        out["cosets"] = d * d
        out["condition"] = cy_condition(M, ci.dims, cfg.level)
    else:
        out["det"] = None
        out["cosets"] = None
        out["condition"] = None
    return out


def _compute_genus(cfg: RunConfig, info: dict):
    ci = cfg.payload["ci"]
    spec = cfg.spec()
    if cfg.method == "residue":
        return residue_genus(ci, spec)
    if cfg.method == "division_sum":
        return division_sum_genus(ci, spec, info)
    if ci.t == 1:
        return hypersurface_level2(ci.dims[0], ci.matrix.rows[0][0], spec, info)
    return ci_example_level2(spec, info)


def run(cfg: RunConfig) -> dict:
    """Result document: input echo, structural data and the computed genus."""
    doc = {"input": cfg.echo(), "structure": structure(cfg)}
    result: dict = {}
    if cfg.model == "lg_orbifold":
        lg = cfg.payload["lg"]
        if cfg.backend == "numeric":
            v = ell_genus_numeric(lg, cfg.tau, cfg.z, cfg.convention)
            result["value"] = [v.real, v.imag]
        else:
            series = assembled(lg, cfg.T, cfg.convention)
            result["series"] = series.to_json()
            result["y_to_one"] = qseries_to_json(series.at_y_one())
            denom = 1
            for a in series.q_exponents():
                denom = denom * a.denominator // _gcd(denom, a.denominator)
            doc["structure"]["D_q"] = denom
    else:
        info: dict = {}
        value = _compute_genus(cfg, info)
        if cfg.backend == "numeric":
            result["value"] = [value.real, value.imag]
        else:
            result["series"] = qseries_to_json(value)
            doc["structure"]["D_q"] = value.denom
        if "field" in info:
            doc["structure"]["D"] = info["field"]
        if "terms" in info:
            result["terms"] = info["terms"]
            result["skipped"] = [_point_json(h) if isinstance(h, tuple) else h for h in info["skipped"]]
    doc["result"] = result
    return doc


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def load_result(doc: dict):
    """The computed object of a result document: QSeries, QYSeries or complex."""
    res = doc["result"]
    if "value" in res:
        return complex(*res["value"])
    if doc["input"]["model"] == "lg_orbifold":
        return QYSeries.from_json(res["series"])
    return qseries_from_json(res["series"])


def render_text(doc: dict) -> str:
    lines = []
    for section in ("input", "structure", "result"):
        lines.append(f"[{section}]")
        for k in sorted(doc[section]):
            v = doc[section][k]
            if section == "result" and k == "series":
                lines.append(f"series = {load_result(doc)!r}")
            elif section == "result" and k == "y_to_one":
                lines.append(f"y_to_one = {qseries_from_json(v)!r}")
            else:
                lines.append(f"{k} = {json.dumps(v, sort_keys=True)}")
    return "\n".join(lines) + "\n"


def emit(doc: dict, fmt: str) -> str:
    return dumps(doc) + "\n" if fmt == "json" else render_text(doc)


# -- comparison ---------------------------------------------------------------------------


def compare_results(a, b, tol: float) -> dict:
    if isinstance(a, complex) or isinstance(b, complex):
        if not (isinstance(a, complex) and isinstance(b, complex)):
            raise IncompatibleExponentLattices("cannot compare a numeric value with an exact series")
        diff = abs(a - b)
        return {"mode": "numeric", "max_abs_diff": diff, "status": "PASS" if diff <= tol else "FAIL"}
    if type(a) is not type(b):
        raise IncompatibleExponentLattices(f"{type(a).__name__} vs {type(b).__name__}")
    if isinstance(a, QSeries):
        prec = a.common_prec(b)
        first = a.first_difference(b, prec)
        out = {"mode": "exact", "order": None if prec is None else fraction_to_str(prec)}
        out["status"] = "PASS" if first is None else "FAIL"
        if first is not None:
            out["first_difference"] = fraction_to_str(first)
        return out
    prec = min(p for p in (a.prec, b.prec) if p is not None) if (a.prec or b.prec) else None
    ta, tb = a.truncate(prec).terms(), b.truncate(prec).terms()
    keys = sorted(set(ta) | set(tb))
    first = next((k for k in keys if ta.get(k, 0) != tb.get(k, 0)), None)
    out = {"mode": "exact", "order": None if prec is None else fraction_to_str(prec)}
    out["status"] = "PASS" if first is None else "FAIL"
    if first is not None:
        out["first_difference"] = [fraction_to_str(first[0]), fraction_to_str(first[1])]
    return out


# -- entry point --------------------------------------------------------------------------


IDENTITY_ERRORS = (
    ModulusNotConstant,
    CharacterNotConstant,
    ODEMismatch,
    TruncationInsufficient,
    IdentityFailed,
    ResidueSumNonzero,
    NonRationalGenus,
    NonIntegralExponents,
    PoleError,
)
CONFIG_ERRORS = (ConfigError, InvalidModel, SingularMatrix, ParityMismatch, TrivialCoset, NoPoleAtOrigin)


def _overrides(args) -> dict:
    ov = {}
    if args.method is not None:
        ov["method"] = args.method
    if args.backend is not None:
        ov["backend"] = args.backend
    if args.tau is not None:
        ov["tau"] = args.tau
    if args.z is not None:
        ov["z"] = args.z
    if args.tol is not None:
        ov["tol"] = args.tol
    if args.output is not None:
        ov["output"] = args.output
    return ov


def _load(path: str, args) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read: {exc.strerror}", path) from None
    cfg = parse_config(text, path, _overrides(args))
    if args.order is not None or args.zorder is not None:
        cfg = replace(
            cfg,
            T=cfg.T if args.order is None else args.order,
            Z=cfg.Z if args.zorder is None else args.zorder,
        )
    return cfg


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, help="q-order T")
    common.add_argument("--zorder", type=int, help="w-order Z")
    common.add_argument("--backend", choices=("exact", "numeric"))
    common.add_argument("--method", choices=METHODS)
    common.add_argument("--tau", help="RE,IM")
    common.add_argument("--z", help="RE,IM")
    common.add_argument("--tol", type=float)
    common.add_argument("--output", choices=("json", "text"), help="output format")
    parser = argparse.ArgumentParser(prog="ellgenus", description="Elliptic genera of complete intersections and LG orbifolds.")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", parents=[common], help="compute one genus")
    p_run.add_argument("config", nargs="?")
    p_run.add_argument("--config", dest="config_flag")
    p_cmp = sub.add_parser("compare", parents=[common], help="diff two runs")
    p_cmp.add_argument("configs", nargs=2)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        if args.command == "run":
            path = args.config_flag or args.config
            if path is None:
                raise ConfigError("no configuration given (use --config PATH)")
            cfg = _load(path, args)
            sys.stdout.write(emit(run(cfg), cfg.output))
            return EXIT_OK
        cfgs = [_load(p, args) for p in args.configs]
        docs = [run(c) for c in cfgs]
        tol = args.tol if args.tol is not None else min(c.tol for c in cfgs)
        report = compare_results(load_result(docs[0]), load_result(docs[1]), tol)
        report["configs"] = list(args.configs)
        sys.stdout.write(dumps(report) + "\n")
        return EXIT_OK if report["status"] == "PASS" else EXIT_MISMATCH
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IncompatibleExponentLattices as exc:
        print(f"error: incompatible results: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConditionViolated as exc:
        print(f"error: condition violated: {exc}", file=sys.stderr)
        return EXIT_CONDITION
    except DenominatorVanishes as exc:
        print(f"error: degenerate term: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except IDENTITY_ERRORS as exc:
        print(f"error: internal identity failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_IDENTITY


__all__ = [
    "ConfigError",
    "IncompatibleExponentLattices",
    "RunConfig",
    "build_parser",
    "compare_results",
    "emit",
    "load_result",
    "main",
    "parse_config",
    "run",
    "structure",
]
