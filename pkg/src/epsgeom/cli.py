"""Command-line front end: parse inputs, dispatch, emit deterministic JSON.

One binary, subcommand style.  Every invocation prints a single JSON
object with the resolved session configuration echoed first, then either
the result or a coded error.  Exit codes: 0 success, 1 domain error,
2 usage error.
"""

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import CorpusMismatch, EpsgeomError, InvalidInput
from .groebner import (
    Ideal,
    MonomialOrder,
    buchberger,
    contraction,
    ideal_member,
    radical_member,
    syzygy_basis,
)
from .levicivita import INF, LCNumber, TruncationOrder, lc_classify, lc_st
from .parser import (
    format_gaussian,
    format_lc,
    format_poly,
    parse_generators,
    parse_lc,
    parse_point,
    parse_poly,
)
from .poly import max_abs_normalize, poly_eval, poly_shadow
from .shadow import (
    PointAssignment,
    VarietyPresentation,
    newton_puiseux_lift,
    open_shadow_witness,
    reduce_on_variety,
    verify_shadow_closure,
)
from .transfer import (
    PolyMatrix,
    exactness_transfer_check,
    flatness_witness,
    kernel_extension_check,
    tensor_iso_check,
)
from .varieties import (
    FamilySpec,
    RationalMap,
    build_family,
    domain_witness_report,
    family_checks,
    is_point_ideal,
)

DATA_DIR = Path(__file__).resolve().parent / "data"


@dataclass(frozen=True)
class SessionConfig:
    """Run-wide knobs, echoed into every JSON output for reproducibility."""

    truncation_order: Fraction = Fraction(16)
    monomial_order: str = "grevlex"
    seed: int = 0
    power_bound: int = 6

    def to_json(self):
        return {
            "truncation_order": str(self.truncation_order),
            "monomial_order": self.monomial_order,
            "seed": self.seed,
            "power_bound": self.power_bound,
        }

    def order(self):
        return MonomialOrder.from_name(self.monomial_order)


_DEFAULT_CONFIG = SessionConfig()
_CONFIG_FIELDS = ("truncation_order", "monomial_order", "seed", "power_bound")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--truncation-order", dest="truncation_order")
    common.add_argument("--order", dest="monomial_order")
    common.add_argument("--seed", dest="seed")
    common.add_argument("--power-bound", dest="power_bound")
    common.add_argument("--config", dest="config")

    p = _Parser(prog="epsgeom", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    for name in ("st", "classify"):
        add(name).add_argument("expr")
    add("shadow-poly").add_argument("expr")
    add("normalize").add_argument("expr")

    q = add("reduce-on-variety")
    q.add_argument("--poly", required=True)
    q.add_argument("--variety", required=True)
    q.add_argument("--ambient")

    q = add("lift")
    q.add_argument("--poly", required=True)
    q.add_argument("--at", required=True)

    q = add("open-witness")
    q.add_argument("--poly", required=True)
    q.add_argument("--at", required=True)

    add("verify-closure").add_argument("--roots", required=True)
    add("groebner").add_argument("--ideal", required=True)

    for name in ("member", "radical-member"):
        q = add(name)
        q.add_argument("--ideal", required=True)
        q.add_argument("--poly", required=True)

    q = add("contract")
    q.add_argument("--ideal", required=True)
    q.add_argument("--keep", required=True, type=int)

    add("syzygy").add_argument("--row", required=True)
    add("point-ideal").add_argument("--ideal", required=True)
    add("domain-witness").add_argument("--denominators", required=True)

    for name in ("family-build", "family-check"):
        q = add(name)
        q.add_argument("--parameters", required=True)
        q.add_argument("--extra", action="store_true")

    q = add("flat-witness")
    q.add_argument("--row", required=True)
    q.add_argument("--solution", required=True)

    add("kernel-check").add_argument("--matrix", required=True)

    q = add("exact-check")
    q.add_argument("--first", required=True)
    q.add_argument("--second", required=True)

    add("tensor-check").add_argument("--matrix", required=True)

    q = add("corpus")
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--fixtures")
    q.add_argument("--write-golden", action="store_true")

    return p


def _resolve_config(ns):
    values = {f: getattr(_DEFAULT_CONFIG, f) for f in _CONFIG_FIELDS}
    if getattr(ns, "config", None):
        try:
            text = Path(ns.config).read_text()
        except OSError as ex:
            raise _UsageError("cannot read config file: %s" % ex) from None
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise _UsageError(
                    "config line %d is not key=value" % lineno
                )
            key, val = (s.strip() for s in line.split("=", 1))
            if key not in _CONFIG_FIELDS:
                raise _UsageError("unknown config key %r" % key)
            values[key] = val
    for f in _CONFIG_FIELDS:
        flag = getattr(ns, f, None)
        if flag is not None:
            values[f] = flag
    try:
        config = SessionConfig(
            truncation_order=Fraction(values["truncation_order"]),
            monomial_order=str(values["monomial_order"]),
            seed=int(values["seed"]),
            power_bound=int(values["power_bound"]),
        )
    except (ValueError, ZeroDivisionError) as ex:
        raise _UsageError("bad config value: %s" % ex) from None
    if config.truncation_order <= 0:
        raise _UsageError("truncation order must be positive")
    if config.power_bound < 0:
        raise _UsageError("power bound must be nonnegative")
    try:
        config.order()
    except EpsgeomError:
        raise _UsageError(
            "unknown monomial order %r" % config.monomial_order
        ) from None
    return config


# --- argument parsing helpers -------------------------------------------------


def _parse_lc_list(text):
    return [parse_lc(chunk) for chunk in text.split(";") if chunk.strip()]


def _parse_gaussian(text):
    x = parse_lc(text)
    st = x.standard_part()
    if x != LCNumber.from_gaussian(st):
        raise InvalidInput("expected a standard value, got %s" % format_lc(x))
    return st


def _parse_matrix(text):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as ex:
        raise InvalidInput("matrix must be JSON: %s" % ex) from None
    ok = isinstance(data, list) and all(
        isinstance(r, list) and all(isinstance(e, str) for e in r)
        for r in data
    )
    if not ok:
        raise InvalidInput("matrix must be a JSON array of rows of strings")
    return PolyMatrix.from_strings(data)


def _point_json(point):
    return {"z%d" % v: format_lc(point[v]) for v in point.support()}


def _frac_str(v):
    return "inf" if v == INF else str(v)


# --- subcommand handlers ------------------------------------------------------


def _cmd_st(config, ns):
    return format_gaussian(lc_st(parse_lc(ns.expr)))


def _cmd_classify(config, ns):
    valuation, label = lc_classify(parse_lc(ns.expr))
    return {"valuation": _frac_str(valuation), "label": label}


def _cmd_shadow_poly(config, ns):
    return format_poly(poly_shadow(parse_poly(ns.expr)))


def _cmd_normalize(config, ns):
    return format_poly(max_abs_normalize(parse_poly(ns.expr)))


def _cmd_reduce_on_variety(config, ns):
    f = parse_poly(ns.poly)
    gens = parse_generators(ns.variety)
    if ns.ambient:
        ambient = tuple(
            int(chunk) for chunk in ns.ambient.split(",") if chunk.strip()
        )
    else:
        seen = set(f.support())
        for g in gens:
            seen.update(g.support())
        ambient = tuple(sorted(seen))
    r = reduce_on_variety(f, VarietyPresentation(ambient, gens))
    return {
        "all_of_x": r.all_of_x,
        "poly": None if r.all_of_x else format_poly(r.poly),
        "iterations": r.iterations,
    }


def _cmd_lift(config, ns):
    f = parse_poly(ns.poly)
    xi = newton_puiseux_lift(
        f, parse_lc(ns.at), TruncationOrder(config.truncation_order)
    )
    v = xi.support()[0]
    residual = poly_eval(f.to_extended(), xi).valuation()
    return {
        "variable": "z%d" % v,
        "root": format_lc(xi[v]),
        "residual_valuation": _frac_str(residual),
    }


def _cmd_open_witness(config, ns):
    f = parse_poly(ns.poly)
    at = PointAssignment(parse_point(ns.at))
    w = open_shadow_witness(f, at, seed=config.seed)
    return {
        "point": _point_json(w),
        "value": format_lc(poly_eval(f.to_extended(), w)),
    }


def _cmd_verify_closure(config, ns):
    return verify_shadow_closure(
        _parse_lc_list(ns.roots), TruncationOrder(config.truncation_order)
    )


def _cmd_groebner(config, ns):
    basis = buchberger(parse_generators(ns.ideal), config.order())
    return [format_poly(g) for g in basis]


def _cmd_member(config, ns):
    ideal = Ideal(parse_generators(ns.ideal), config.order())
    return ideal_member(parse_poly(ns.poly), ideal)


def _cmd_radical_member(config, ns):
    ideal = Ideal(parse_generators(ns.ideal), config.order())
    return radical_member(parse_poly(ns.poly), ideal, config.order())


def _cmd_contract(config, ns):
    ideal = Ideal(parse_generators(ns.ideal), config.order())
    return [format_poly(g) for g in contraction(ideal, ns.keep).generators]


def _cmd_syzygy(config, ns):
    b = syzygy_basis(parse_generators(ns.row), config.order())
    return {
        "coefficients": [format_poly(g) for g in b.coefficients],
        "generators": [
            [format_poly(x) for x in v] for v in b.generators
        ],
    }


def _cmd_point_ideal(config, ns):
    r = is_point_ideal(parse_generators(ns.ideal))
    return {
        "point": None if r.point is None else _point_json(r.point),
        "reason": r.reason,
    }


def _cmd_domain_witness(config, ns):
    dens = parse_generators(ns.denominators)
    phi = RationalMap.from_denominators(dens)
    return domain_witness_report(phi, len(dens))


def _family_spec(ns):
    params = [
        _parse_gaussian(chunk)
        for chunk in ns.parameters.split(";")
        if chunk.strip()
    ]
    return FamilySpec(params, include_extra=ns.extra)


def _cmd_family_build(config, ns):
    spec = _family_spec(ns)
    return {
        "family": spec.to_json(),
        "generators": [format_poly(g) for g in build_family(spec)],
    }


def _cmd_family_check(config, ns):
    return family_checks(_family_spec(ns), power_bound=config.power_bound)


def _cmd_flat_witness(config, ns):
    r = flatness_witness(
        parse_generators(ns.row), parse_generators(ns.solution)
    )
    return [format_poly(g) for g in r]


def _cmd_kernel_check(config, ns):
    return kernel_extension_check(_parse_matrix(ns.matrix))


def _cmd_exact_check(config, ns):
    return exactness_transfer_check(
        _parse_matrix(ns.first), _parse_matrix(ns.second)
    )


def _cmd_tensor_check(config, ns):
    return tensor_iso_check(_parse_matrix(ns.matrix))


def _cmd_corpus(config, ns):
    path = Path(ns.fixtures) if ns.fixtures else DATA_DIR / "corpus.json"
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as ex:
        raise InvalidInput("cannot load fixtures: %s" % ex) from None
    cases = data["cases"]
    for case in cases:
        if case["argv"] and case["argv"][0] == "corpus":
            raise InvalidInput("corpus fixtures cannot invoke corpus")

    def run_case(case):
        code, out = run_command(list(case["argv"]))
        return {"name": case["name"], "exit": code, "output": out}

    threads = max(1, int(ns.threads))
    if threads == 1:
        results = [run_case(c) for c in cases]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run_case, cases))

    if ns.write_golden:
        payload = {
            "cases": [
                {
                    "name": c["name"],
                    "argv": list(c["argv"]),
                    "exit": r["exit"],
                    "output": r["output"],
                }
                for c, r in zip(cases, results)
            ]
        }
        path.write_text(json.dumps(payload, indent=2) + "\n")
        return {"written": len(results), "path": str(path)}

    mismatched = [
        c["name"]
        for c, r in zip(cases, results)
        if c.get("exit") != r["exit"] or c.get("output") != r["output"]
    ]
    if mismatched:
        raise CorpusMismatch(
            "%d of %d fixtures diverged: %s"
            % (len(mismatched), len(results), ", ".join(mismatched))
        )
    return {"total": len(results), "matched": len(results)}


_HANDLERS = {
    "st": _cmd_st,
    "classify": _cmd_classify,
    "shadow-poly": _cmd_shadow_poly,
    "normalize": _cmd_normalize,
    "reduce-on-variety": _cmd_reduce_on_variety,
    "lift": _cmd_lift,
    "open-witness": _cmd_open_witness,
    "verify-closure": _cmd_verify_closure,
    "groebner": _cmd_groebner,
    "member": _cmd_member,
    "radical-member": _cmd_radical_member,
    "contract": _cmd_contract,
    "syzygy": _cmd_syzygy,
    "point-ideal": _cmd_point_ideal,
    "domain-witness": _cmd_domain_witness,
    "family-build": _cmd_family_build,
    "family-check": _cmd_family_check,
    "flat-witness": _cmd_flat_witness,
    "kernel-check": _cmd_kernel_check,
    "exact-check": _cmd_exact_check,
    "tensor-check": _cmd_tensor_check,
    "corpus": _cmd_corpus,
}


def _dump(config, ok, result=None, error=None):
    body = {"config": config.to_json(), "ok": ok}
    if ok:
        body["result"] = result
    else:
        body["error"] = error
    return json.dumps(body, separators=(",", ":"))


def run_command(argv):
    """Execute one invocation; returns (exit code, JSON output line)."""
    try:
        ns = _build_parser().parse_args(list(argv))
        config = _resolve_config(ns)
    except _UsageError as ex:
        return 2, _dump(
            _DEFAULT_CONFIG,
            False,
            error={"code": "usage", "message": str(ex)},
        )
    try:
        result = _HANDLERS[ns.command](config, ns)
    except EpsgeomError as ex:
        return 1, _dump(
            config, False, error={"code": ex.code, "message": str(ex)}
        )
    return 0, _dump(config, True, result=result)


def main(argv=None):
    code, out = run_command(sys.argv[1:] if argv is None else argv)
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
