"""Command line interface: compute, crosscheck, bench and gf modes.

Weights come either from a JSON document (see parse_weights) or from a
named model (dmr, four, rogers) with --param key=value arguments.  All
values are exact: rationals as p/q strings, decorations as polynomial
expressions over freely named symbols.  Exit codes: 0 success or
agreement, 1 engine disagreement, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from .errors import LatPolyError, SchemaError
from .symbolic import LaurentPolynomial, as_poly, parse_polynomial, sym
from .orthopoly import WeightSpec
from .engines import (
    StripQuery,
    brute_force,
    generating_function,
    rho_ct,
    transfer_matrix,
    viennot_ct,
)
from .closedforms import (
    DmrParams,
    FourWeightParams,
    dmr_ct,
    dmr_sum,
    four_weight_ct,
    four_weight_sum,
    rogers,
    rogers_weight_spec,
)

ENGINE_NAMES = ("brute", "tmatrix", "viennot-ct", "rho-ct", "closed-form", "closed-sum")
GENERIC_ENGINES = ("brute", "tmatrix", "viennot-ct", "rho-ct")


# -- weights JSON -------------------------------------------------------------

def _parse_rational(value, pointer: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(pointer, f"exact rational required, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(pointer, f"bad rational {value!r}: {exc}") from None
    raise SchemaError(pointer, f"exact rational required, got {type(value).__name__}")


def _parse_decoration(value, pointer: str) -> LaurentPolynomial:
    if isinstance(value, bool) or isinstance(value, float):
        raise SchemaError(pointer, f"exact value required, got {value!r}")
    if isinstance(value, int):
        return as_poly(value)
    if isinstance(value, str):
        try:
            return parse_polynomial(value)
        except ValueError as exc:
            raise SchemaError(pointer, str(exc)) from None
    if isinstance(value, dict):
        extra = set(value) - {"sym", "shift"}
        if extra:
            raise SchemaError(pointer, f"unknown keys {sorted(extra)}")
        if "sym" not in value:
            raise SchemaError(pointer, "missing 'sym'")
        shift = value.get("shift", 0)
        if isinstance(shift, bool) or not isinstance(shift, int):
            raise SchemaError(f"{pointer}/shift", "integer required")
        try:
            return sym(value["sym"]) + shift
        except ValueError as exc:
            raise SchemaError(f"{pointer}/sym", str(exc)) from None
    raise SchemaError(pointer, f"cannot interpret {type(value).__name__} as a decoration")


def _parse_decoration_map(doc, key: str) -> dict:
    raw = doc.get(key)
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        raise SchemaError(f"/{key}", "object of height: expression required")
    out = {}
    for height, value in raw.items():
        pointer = f"/{key}/{height}"
        if not isinstance(height, str) or not height.isdigit():
            raise SchemaError(pointer, f"height keys are decimal strings, got {height!r}")
        out[int(height)] = _parse_decoration(value, pointer)
    return out


def parse_weights(text: str) -> WeightSpec:
    """Build a WeightSpec from its JSON document.

    Schema: {"b": rational, "lambda": rational, "L": int,
             "across_decorations": {height: expr},
             "down_decorations": {height: expr}}
    Rationals are ints or "p/q" strings; expressions are exact polynomial
    strings (or {"sym": name, "shift": int}).  Floats are rejected.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError("", f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("", "top-level object required")
    allowed = {"b", "lambda", "L", "across_decorations", "down_decorations"}
    unknown = set(doc) - allowed
    if unknown:
        raise SchemaError(f"/{sorted(unknown)[0]}", "unknown key")
    for key in ("b", "lambda", "L"):
        if key not in doc:
            raise SchemaError(f"/{key}", "missing required key")
    if isinstance(doc["L"], bool) or not isinstance(doc["L"], int) or doc["L"] < 0:
        raise SchemaError("/L", f"nonnegative integer required, got {doc['L']!r}")
    b = _parse_rational(doc["b"], "/b")
    lam = _parse_rational(doc["lambda"], "/lambda")
    across = _parse_decoration_map(doc, "across_decorations")
    down = _parse_decoration_map(doc, "down_decorations")
    try:
        return WeightSpec(doc["L"], b, lam, across, down)
    except (ValueError, LatPolyError) as exc:
        raise SchemaError("", str(exc)) from None


def _rational_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def weights_to_json(w: WeightSpec) -> dict:
    """Inverse of parse_weights up to canonical rendering."""
    return {
        "b": _rational_str(w.background_b),
        "lambda": _rational_str(w.background_lambda),
        "L": w.strip_height,
        "across_decorations": {str(h): v.render()
                               for h, v in sorted(w.across_decorations.items())},
        "down_decorations": {str(h): v.render()
                             for h, v in sorted(w.down_decorations.items())},
    }


# -- models -------------------------------------------------------------------

def _param_value(text: str):
    """A model parameter: integer, rational, 'inf', or a symbol expression."""
    if text == "inf":
        return None
    try:
        frac = Fraction(text)
        return int(frac) if frac.denominator == 1 else frac
    except ValueError:
        pass
    return parse_polynomial(text)


class ModelJob:
    """A named closed-form model with its parameters."""

    def __init__(self, name: str, params: dict):
        self.name = name
        self.params = params

    @staticmethod
    def build(name: str, raw: dict) -> "ModelJob":
        if name == "dmr":
            allowed = {"r", "L", "kappa", "omega"}
        elif name == "four":
            allowed = {"r", "L", "kappa1", "kappa2", "omega1", "omega2"}
        elif name == "rogers":
            allowed = {"n", "L", "kappas"}
        else:
            raise ValueError(f"unknown model {name!r}")
        params = {}
        for key, value in raw.items():
            if name == "rogers" and key == "kappas":
                params[key] = [parse_polynomial(part)
                               for part in value.split(",")]
            else:
                params[key] = _param_value(value)
        unknown = set(params) - allowed
        if unknown:
            raise ValueError(f"unknown parameter {sorted(unknown)[0]!r} for model {name}")
        return ModelJob(name, params)

    def _require_int(self, key: str) -> int:
        value = self.params.get(key)
        if not isinstance(value, int):
            raise ValueError(f"model {self.name} needs integer parameter {key}")
        return value

    def half_length(self) -> int:
        return self._require_int("n" if self.name == "rogers" else "r")

    def strip_height(self):
        if self.name == "rogers" and self.params.get("L") is None:
            return None
        return self._require_int("L")

    def with_half_length(self, value: int) -> "ModelJob":
        key = "n" if self.name == "rogers" else "r"
        return ModelJob(self.name, {**self.params, key: value})

    def with_strip(self, value: int) -> "ModelJob":
        return ModelJob(self.name, {**self.params, "L": value})

    def _dmr(self) -> DmrParams:
        return DmrParams(self._require_int("r"), self._require_int("L"),
                         self.params.get("kappa", sym("kappa")),
                         self.params.get("omega", sym("omega")))

    def _four(self) -> FourWeightParams:
        return FourWeightParams(self._require_int("r"), self._require_int("L"),
                                self.params.get("kappa1", sym("kappa_1")),
                                self.params.get("kappa2", sym("kappa_2")),
                                self.params.get("omega1", sym("omega_1")),
                                self.params.get("omega2", sym("omega_2")))

    def _rogers_args(self):
        n = self._require_int("n")
        L = self.strip_height()
        bound = n if L is None else min(n, L)
        kappas = self.params.get("kappas")
        if kappas is None:
            kappas = [sym(f"kappa_{i}") for i in range(1, max(bound, 1) + 1)]
        return n, L, kappas

    def closed_form(self) -> LaurentPolynomial:
        if self.name == "dmr":
            return dmr_ct(self._dmr())
        if self.name == "four":
            return four_weight_ct(self._four())
        n, L, kappas = self._rogers_args()
        return rogers(n, L, kappas)

    def closed_sum(self) -> LaurentPolynomial:
        if self.name == "dmr":
            return dmr_sum(self._dmr())
        if self.name == "four":
            return four_weight_sum(self._four())
        n, L, kappas = self._rogers_args()
        return rogers(n, L, kappas)

    def weight_spec(self) -> WeightSpec:
        if self.name == "dmr":
            return self._dmr().weight_spec()
        if self.name == "four":
            return self._four().weight_spec()
        n, L, kappas = self._rogers_args()
        if L is None:
            L = n  # a length-2n path cannot rise above height n
        return rogers_weight_spec(L, kappas)

    def query(self) -> StripQuery:
        L = self.strip_height()
        if L is None:
            L = self.half_length()
        return StripQuery(2 * self.half_length(), 0, 0, L)


# -- engine dispatch ----------------------------------------------------------

def _run_engine(engine: str, q: StripQuery, w: WeightSpec,
                model: ModelJob | None, cap: int) -> LaurentPolynomial:
    if engine == "brute":
        return brute_force(q, w, cap=cap)
    if engine == "tmatrix":
        return transfer_matrix(q, w)
    if engine == "viennot-ct":
        return viennot_ct(q, w)
    if engine == "rho-ct":
        return rho_ct(q, w)
    if engine == "closed-form":
        if model is None:
            raise ValueError("engine closed-form needs --model")
        return model.closed_form()
    if engine == "closed-sum":
        if model is None:
            raise ValueError("engine closed-sum needs --model")
        return model.closed_sum()
    raise ValueError(f"unknown engine {engine!r}")


def _format_value(value: LaurentPolynomial, fmt: str) -> str:
    if fmt == "latex":
        return value.latex()
    return value.render()


def _emit(doc, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True)
    raise AssertionError("only json goes through _emit")


# -- subcommands --------------------------------------------------------------

def _load_job(args):
    """(query, weights, model) for compute/crosscheck/bench arguments."""
    model = None
    if args.model:
        raw = dict(kv.split("=", 1) for kv in (args.param or []))
        model = ModelJob.build(args.model, raw)
        q = model.query()
        w = model.weight_spec()
    elif args.weights:
        with open(args.weights) as handle:
            w = parse_weights(handle.read())
        L = w.strip_height
        if args.L is not None and args.L != L:
            raise ValueError(f"--L {args.L} contradicts weights file L={L}")
        q = StripQuery(args.t if args.t is not None else 0,
                       args.y_start, args.y_end, L)
    else:
        if args.L is None:
            raise ValueError("need --weights, --model, or --L for symbolic weights")
        w = _symbolic_weights(args.L)
        q = StripQuery(args.t if args.t is not None else 0,
                       args.y_start, args.y_end, args.L)
    return q, w, model


def _symbolic_weights(L: int) -> WeightSpec:
    """Dyck background with a free symbol decorating every height."""
    return WeightSpec(
        L, 0, 1,
        across={i: sym(f"b{i}") for i in range(L + 1)},
        down={i: sym(f"l{i}") for i in range(1, L + 1)},
    )


def _cmd_compute(args) -> int:
    q, w, model = _load_job(args)
    engines = args.engines.split(",") if args.engines else None
    if engines is None:
        engines = ["closed-form"] if model else ["tmatrix"]
    if len(engines) != 1:
        raise ValueError("compute takes exactly one engine; use crosscheck for several")
    value = _run_engine(engines[0], q, w, model, args.cap)
    label = f"model={args.model};r={model.half_length()}" if model else q.label()
    if args.format == "json":
        print(_emit({"query": label, "engine": engines[0],
                     "value": value.render()}, "json"))
    else:
        print(_format_value(value, args.format))
    return 0


def _crosscheck_queries(args, model):
    """Query grid: every t' <= t (and every height pair) or r' <= r."""
    if model:
        for r in range(model.half_length() + 1):
            yield model.with_half_length(r)
    else:
        t_max = args.t if args.t is not None else 6
        L_values = [args.L] if args.weights else list(range(0, (args.L or 3) + 1))
        for L in L_values:
            for t in range(t_max + 1):
                for y0 in range(L + 1):
                    for y1 in range(L + 1):
                        yield (t, y0, y1, L)


def _cmd_crosscheck(args) -> int:
    model_template = None
    weights = None
    if args.model:
        raw = dict(kv.split("=", 1) for kv in (args.param or []))
        model_template = ModelJob.build(args.model, raw)
        engines = args.engines.split(",") if args.engines else ["brute", "closed-form", "closed-sum"]
    else:
        if args.weights:
            with open(args.weights) as handle:
                weights = parse_weights(handle.read())
            args.L = weights.strip_height
        engines = args.engines.split(",") if args.engines else list(GENERIC_ENGINES)
    for engine in engines:
        if engine not in ENGINE_NAMES:
            raise ValueError(f"unknown engine {engine!r}")

    report = []
    disagreement = None
    for item in _crosscheck_queries(args, model_template):
        if model_template:
            model = item
            q = model.query()
            w = model.weight_spec()
            label = f"model={args.model};r={model.half_length()}"
        else:
            t, y0, y1, L = item
            model = None
            w = weights if weights is not None else _symbolic_weights(L)
            q = StripQuery(t, y0, y1, L)
            label = q.label()
        rendered = {}
        micros = {}
        for engine in engines:
            start = time.perf_counter_ns()
            value = _run_engine(engine, q, w, model, args.cap)
            micros[engine] = (time.perf_counter_ns() - start) // 1000
            rendered[engine] = value.render()
        agree = len(set(rendered.values())) == 1
        report.append({"query": label, "engines": rendered,
                       "micros": micros, "agree": agree})
        if not agree and disagreement is None:
            disagreement = (label, rendered)

    if args.format == "json":
        print(_emit({"queries": report, "agree": disagreement is None}, "json"))
    else:
        for row in report:
            status = "ok" if row["agree"] else "MISMATCH"
            print(f"{row['query']}  {status}")
        print(f"crosscheck: {len(report)} queries, "
              f"{'all agree' if disagreement is None else 'DISAGREEMENT'}")
    if disagreement is not None:
        label, rendered = disagreement
        print(f"first disagreement at {label}:", file=sys.stderr)
        for engine, text in rendered.items():
            print(f"  {engine}: {text}", file=sys.stderr)
        return 1
    return 0


def _parse_sweep(text: str):
    parts = text.split(":")
    if len(parts) != 3 or parts[0] not in ("t", "L", "r", "n"):
        raise ValueError("sweep must be var:lo:hi with var in t, L, r, n")
    var, lo, hi = parts[0], int(parts[1]), int(parts[2])
    if lo > hi:
        raise ValueError("sweep range is empty")
    return var, lo, hi


def _cmd_bench(args) -> int:
    var, lo, hi = _parse_sweep(args.sweep)
    model_template = None
    weights = None
    if args.model:
        raw = dict(kv.split("=", 1) for kv in (args.param or []))
        model_template = ModelJob.build(args.model, raw)
        engines = args.engines.split(",") if args.engines else ["closed-form", "closed-sum"]
        if var not in ("r", "n", "L"):
            raise ValueError(f"model bench sweeps r, n or L, not {var}")
    else:
        if args.weights:
            with open(args.weights) as handle:
                weights = parse_weights(handle.read())
        engines = args.engines.split(",") if args.engines else ["rho-ct"]
        if var not in ("t", "L"):
            raise ValueError(f"weights bench sweeps t or L, not {var}")

    rows = []
    for value in range(lo, hi + 1):
        if model_template:
            if var in ("r", "n"):
                model = model_template.with_half_length(value)
            else:
                model = model_template.with_strip(value)
            q = model.query()
            w = model.weight_spec()
            label = f"model={args.model};{var}={value}"
        else:
            model = None
            if var == "t":
                if weights is None and args.L is None:
                    raise ValueError("bench over t needs --weights or --L")
                w = weights if weights is not None else _symbolic_weights(args.L)
                q = StripQuery(value, args.y_start, args.y_end, w.strip_height)
            else:
                if weights is not None:
                    raise ValueError("bench over L cannot use a fixed weights file")
                w = _symbolic_weights(value)
                q = StripQuery(args.t if args.t is not None else 6,
                               min(args.y_start, value), min(args.y_end, value), value)
            label = q.label()
        for engine in engines:
            start = time.perf_counter_ns()
            result = _run_engine(engine, q, w, model, args.cap)
            micros = (time.perf_counter_ns() - start) // 1000
            rows.append((label, engine, max(micros, 1), result.term_count()))

    print("query,engine,micros,terms")
    for label, engine, micros, terms in rows:
        print(f"{label},{engine},{micros},{terms}")
    return 0


def _cmd_gf(args) -> int:
    if args.weights:
        with open(args.weights) as handle:
            w = parse_weights(handle.read())
    elif args.L is not None:
        w = _symbolic_weights(args.L)
    else:
        raise ValueError("gf needs --weights or --L")
    series = generating_function(args.y_start, args.y_end, w.strip_height,
                                 w, args.order)
    if args.format == "json":
        doc = {"var": "x", "order": series.truncation_order,
               "coefficients": {str(e): c.render()
                                for e, c in sorted(series.coefficients().items())}}
        print(_emit(doc, "json"))
    elif args.format == "latex":
        parts = [f"({series.coefficient(e).latex()}) x^{{{e}}}"
                 for e in range(args.order + 1) if not series.coefficient(e).is_zero]
        print(" + ".join(parts) + f" + O(x^{{{args.order + 1}}})")
    else:
        print(series.render())
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latpoly",
        description="Exact strip lattice path weight polynomials.")
    sub = parser.add_subparsers(dest="mode", required=True)

    def common(p, with_order=False, with_sweep=False):
        p.add_argument("--t", type=int, default=None, help="path length (or maximum)")
        p.add_argument("--L", type=int, default=None, help="strip height")
        p.add_argument("--y-start", type=int, default=0, dest="y_start")
        p.add_argument("--y-end", type=int, default=0, dest="y_end")
        p.add_argument("--weights", help="weights JSON file")
        p.add_argument("--model", choices=("dmr", "four", "rogers"))
        p.add_argument("--param", action="append", metavar="KEY=VALUE",
                       help="model parameter (repeatable)")
        p.add_argument("--engines", help="comma separated engine list")
        p.add_argument("--format", choices=("plain", "json", "latex"),
                       default="plain")
        p.add_argument("--cap", type=int, default=18,
                       help="brute force enumeration cap on t")
        if with_order:
            p.add_argument("--order", type=int, default=8,
                           help="series truncation order")
        if with_sweep:
            p.add_argument("--sweep", required=True, metavar="VAR:LO:HI",
                           help="sweep variable and range, e.g. t:1:10")

    common(sub.add_parser("compute", help="one query, one engine"))
    common(sub.add_parser("crosscheck", help="run several engines and compare"))
    common(sub.add_parser("bench", help="time engines over a sweep, emit CSV"),
           with_sweep=True)
    common(sub.add_parser("gf", help="truncated generating function"),
           with_order=True)
    return parser


_COMMANDS = {
    "compute": _cmd_compute,
    "crosscheck": _cmd_crosscheck,
    "bench": _cmd_bench,
    "gf": _cmd_gf,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.mode](args)
    except (LatPolyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
