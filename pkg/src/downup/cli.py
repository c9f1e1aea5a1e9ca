"""Command-line front end.

Exit codes: 0 success, 2 violated precondition, 64 usage error or unknown
subcommand, 65 malformed expression, scalar or poset file.
"""

from __future__ import annotations

import argparse
import functools
import json
import random
import sys
from typing import Optional, Sequence

from .errors import DownUpError, FieldError, ParseError, PreconditionError, ReductionLimitError
from .expr import format_element, parse_element, parse_scalar
from .field import QuadScalar
from .pbw import Params, eta, filtration_count, is_central, multiply, reduce
from .poset import alt_forms_poset, check_relation, fit_parameters, load_poset, young_lattice
from .repmod import (
    TruncatedRep,
    central_character,
    check_relations,
    double_is_simple,
    doubly_infinite_matrices,
    lowest_weight_matrices,
    nf_module,
    one_dim_modules,
    submodule_report,
    verma_is_simple,
    verma_matrices,
)
from .weights import (
    Weight,
    classify_coincidence,
    convert_params,
    kappa_closed,
    kappa_seq,
    lambda_closed,
    lambda_seq,
    orbit,
)

EXIT_OK = 0
EXIT_PRECONDITION = 2
EXIT_USAGE = 64
EXIT_PARSE = 65

SUBCOMMANDS = (
    "reduce", "mul", "eta", "central", "weights", "closed", "classify", "verma", "lowest",
    "double", "nfmod", "onedim", "convert", "poset-gen", "poset-check", "poset-fit", "filtration",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _scalar_arg(text: str) -> QuadScalar:
    return parse_scalar(text)


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--alpha", required=True, type=str)
    p.add_argument("--beta", required=True, type=str)
    p.add_argument("--gamma", required=True, type=str)


def _params(ns) -> Params:
    return Params(_scalar_arg(ns.alpha), _scalar_arg(ns.beta), _scalar_arg(ns.gamma))


def _element(ns, text: str):
    return reduce(_params(ns), parse_element(text))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="downup", description="Exact computations in down-up algebras A(alpha, beta, gamma).")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled output")
    # the same flags are accepted after the subcommand; SUPPRESS keeps the top-level value otherwise
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, metavar="subcommand")
    add = functools.partial(sub.add_parser, parents=[common])

    p = add("reduce", help="PBW normal form of an expression")
    _add_params(p)
    p.add_argument("expr")
    p.add_argument("--strategy", choices=("leftmost", "rightmost"), default="leftmost")

    p = add("mul", help="product of two expressions")
    _add_params(p)
    p.add_argument("x")
    p.add_argument("y")

    p = add("eta", help="image under the d/u swapping antiautomorphism")
    _add_params(p)
    p.add_argument("expr")

    p = add("central", help="centrality test and central character")
    _add_params(p)
    p.add_argument("expr")
    p.add_argument("--lambda", dest="lam", type=str)

    p = add("weights", help="weight sequence of a highest or lowest weight")
    _add_params(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam", type=str)
    g.add_argument("--kappa", type=str)
    p.add_argument("--n", type=int, default=10)

    p = add("closed", help="closed form of a weight sequence")
    _add_params(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--lambda", dest="lam", type=str)
    g.add_argument("--kappa", type=str)

    p = add("classify", help="weight coincidences of V(lambda)")
    _add_params(p)
    p.add_argument("--lambda", dest="lam", required=True, type=str)

    p = add("verma", help="truncated Verma module V(lambda)")
    _add_params(p)
    p.add_argument("--lambda", dest="lam", required=True, type=str)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--check", action="store_true")

    p = add("lowest", help="truncated lowest weight module W(kappa)")
    _add_params(p)
    p.add_argument("--kappa", required=True, type=str)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--check", action="store_true")

    p = add("double", help="truncated doubly-infinite module V(kappa, lambda)")
    _add_params(p)
    p.add_argument("--kappa", required=True, type=str)
    p.add_argument("--lambda", dest="lam", required=True, type=str)
    p.add_argument("--N", type=int, default=8)
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--check", action="store_true")

    p = add("nfmod", help="module on the finite weight orbit of (nu1, nu2)")
    _add_params(p)
    p.add_argument("--nu1", required=True, type=str)
    p.add_argument("--nu2", required=True, type=str)
    p.add_argument("--rho", default="1", type=str)
    p.add_argument("--bound", type=int, default=64)
    p.add_argument("--check", action="store_true")

    p = add("onedim", help="one-dimensional modules")
    _add_params(p)
    p.add_argument("--sample", type=int, default=0)

    p = add("convert", help="parameters from another presentation")
    p.add_argument("kind", choices=("witten", "conformal", "woronowicz"))
    p.add_argument("values", nargs="+")

    p = add("poset-gen", help="generate a ranked poset as JSON")
    p.add_argument("kind", choices=("young", "alt"))
    p.add_argument("--max-rank", type=int, default=4)
    p.add_argument("--q", type=int, default=2)
    p.add_argument("--n", type=int, default=2)

    for name, helptext in (("poset-check", "check the relations on a poset"), ("poset-fit", "fit parameters to a poset")):
        p = add(name, help=helptext)
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--file")
        src.add_argument("--young", type=int, metavar="MAX_RANK")
        src.add_argument("--alt", type=int, nargs=2, metavar=("Q", "N"))
        if name == "poset-check":
            _add_params(p)

    p = add("filtration", help="PBW monomial counts by degree")
    p.add_argument("--ell", type=int, required=True)
    return parser


# -- rendering -----------------------------------------------------------


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True)


def _matrix_table(name: str, m) -> list[str]:
    cells = [[str(x) for x in row] for row in m]
    width = max((len(c) for row in cells for c in row), default=1)
    return [f"{name}:"] + ["  " + " ".join(c.rjust(width) for c in row) for row in cells]


def _rep_text(rep: TruncatedRep) -> list[str]:
    lines = ["basis: " + " ".join(str(b) for b in rep.basis)]
    lines += _matrix_table("d", rep.d)
    lines += _matrix_table("u", rep.u)
    lines.append(f"safe_range: [{rep.safe_range[0]}, {rep.safe_range[1]}]")
    return lines


def _seq_text(seq) -> str:
    return ",".join(str(x) for x in seq)


# -- commands ------------------------------------------------------------


def _cmd_reduce(ns) -> tuple[dict, list[str]]:
    x = reduce(_params(ns), parse_element(ns.expr), strategy=ns.strategy)
    return {"element": format_element(x)}, [format_element(x)]


def _cmd_mul(ns):
    P = _params(ns)
    x = multiply(P, _element(ns, ns.x), _element(ns, ns.y))
    return {"element": format_element(x)}, [format_element(x)]


def _cmd_eta(ns):
    x = eta(_element(ns, ns.expr), _params(ns))
    return {"element": format_element(x)}, [format_element(x)]


def _cmd_central(ns):
    P = _params(ns)
    z = _element(ns, ns.expr)
    central = is_central(P, z)
    data = {"element": format_element(z), "central": central}
    lines = [f"central: {str(central).lower()}"]
    if ns.lam is not None:
        chi = central_character(P, z, _scalar_arg(ns.lam))
        data["character"] = str(chi)
        lines.append(f"character: {chi}")
    return data, lines


def _cmd_weights(ns):
    P = _params(ns)
    if ns.lam is not None:
        seq = lambda_seq(P, _scalar_arg(ns.lam), ns.n)
    else:
        seq = kappa_seq(P, _scalar_arg(ns.kappa), ns.n)
    return {"weights": [str(x) for x in seq]}, [_seq_text(seq)]


def _cmd_closed(ns):
    P = _params(ns)
    cf = lambda_closed(P, _scalar_arg(ns.lam)) if ns.lam is not None else kappa_closed(P, _scalar_arg(ns.kappa))
    data = cf.to_json()
    return data, [f"{k}: {v}" for k, v in data.items() if v is not None]


def _cmd_classify(ns):
    rep = classify_coincidence(_params(ns), _scalar_arg(ns.lam))
    data = rep.to_json()
    return data, [f"{k}: {v}" for k, v in data.items() if v is not None]


def _cmd_verma(ns):
    P = _params(ns)
    lam = _scalar_arg(ns.lam)
    rep = verma_matrices(P, lam, ns.N)
    data = rep.to_json()
    lines = _rep_text(rep)
    if ns.check:
        ok = check_relations(P, rep)
        verdict = verma_is_simple(P, lam, ns.bound)
        report = submodule_report(P, lam, ns.bound)
        data.update(relations_ok=ok, verdict=verdict.to_json(), submodules=report.to_json())
        text = f"verdict {verdict}"
        if report.tail_lambda is not None:
            text += f", M(λ)≅V({report.tail_lambda})"
        lines += [f"relations: {'ok' if ok else 'FAILED'}", text]
    return data, lines


def _cmd_lowest(ns):
    P = _params(ns)
    rep = lowest_weight_matrices(P, _scalar_arg(ns.kappa), ns.N)
    data, lines = rep.to_json(), _rep_text(rep)
    if ns.check:
        ok = check_relations(P, rep)
        data["relations_ok"] = ok
        lines.append(f"relations: {'ok' if ok else 'FAILED'}")
    return data, lines


def _cmd_double(ns):
    P = _params(ns)
    kappa, lam = _scalar_arg(ns.kappa), _scalar_arg(ns.lam)
    rep = doubly_infinite_matrices(P, kappa, lam, ns.N)
    data, lines = rep.to_json(), _rep_text(rep)
    if ns.check:
        ok = check_relations(P, rep)
        verdict = double_is_simple(P, kappa, lam, ns.bound)
        data.update(relations_ok=ok, verdict=verdict.to_json())
        lines += [f"relations: {'ok' if ok else 'FAILED'}", f"verdict {verdict} ({verdict.reason})"]
    return data, lines


def _cmd_nfmod(ns):
    P = _params(ns)
    orb = orbit(P, Weight(_scalar_arg(ns.nu1), _scalar_arg(ns.nu2)), ns.bound)
    if not orb.periodic:
        raise PreconditionError("finite weight orbit", f"no period found within {ns.bound} steps")
    rep = nf_module(P, orb, _scalar_arg(ns.rho))
    data, lines = rep.to_json(), _rep_text(rep)
    data["structure"] = rep.meta["structure"]
    lines.append(f"structure: {rep.meta['structure']}")
    if ns.check:
        ok = check_relations(P, rep)
        data["relations_ok"] = ok
        lines.append(f"relations: {'ok' if ok else 'FAILED'}")
    return data, lines


def _cmd_onedim(ns):
    fam = one_dim_modules(_params(ns))
    data = fam.to_json()
    lines = [f"case: {fam.case}", f"modules: {fam.description}"]
    if ns.sample:
        pts = fam.sample(random.Random(ns.seed), ns.sample)
        data["sample"] = [[str(a), str(b)] for a, b in pts]
        lines += [f"  ({a}, {b})" for a, b in pts]
    return data, lines


def _cmd_convert(ns):
    P = convert_params(ns.kind, *(_scalar_arg(v) for v in ns.values))
    data = {"alpha": str(P.alpha), "beta": str(P.beta), "gamma": str(P.gamma)}
    return data, [f"{P.alpha} {P.beta} {P.gamma}"]


def _cmd_poset_gen(ns):
    p = young_lattice(ns.max_rank) if ns.kind == "young" else alt_forms_poset(ns.q, ns.n)
    data = p.to_json()
    return data, [_dump(data)]


def _load(ns):
    if ns.file:
        return load_poset(ns.file)
    if ns.young is not None:
        return young_lattice(ns.young)
    return alt_forms_poset(*ns.alt)


def _cmd_poset_check(ns):
    report = check_relation(_load(ns), _params(ns))
    data = report.to_json()
    lines = [f"ok: {str(report.ok).lower()}", "rank  R1  R2"]
    mark = {True: "ok", False: "FAIL", None: "-"}
    for r, res in sorted(report.per_rank.items()):
        lines.append(f"{r:>4}  {mark[res['R1']]:<3} {mark[res['R2']]}")
    return data, lines


def _cmd_poset_fit(ns):
    fit = fit_parameters(_load(ns))
    data = fit.to_json()
    lines = [f"kind: {fit.kind}"]
    if fit.particular is not None:
        lines.append("particular: " + " ".join(str(x) for x in fit.particular))
        lines += ["direction: " + " ".join(str(x) for x in v) for v in fit.basis]
    return data, lines


def _cmd_filtration(ns):
    if ns.ell < 0:
        raise PreconditionError("ell >= 0")
    exact, total = filtration_count(ns.ell)
    return {"exact": exact, "cumulative": total}, [f"exact: {exact}", f"cumulative: {total}"]


COMMANDS = {name: globals()["_cmd_" + name.replace("-", "_")] for name in SUBCOMMANDS}


def run(argv: Optional[Sequence[str]] = None) -> tuple[int, str]:
    """Execute one command; return the exit code and the text to print."""
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except UsageError as exc:
        return EXIT_USAGE, str(exc)
    except SystemExit as exc:  # --help
        return int(exc.code or 0), ""
    if ns.command is None:
        return EXIT_USAGE, parser.format_usage().rstrip()
    try:
        data, lines = COMMANDS[ns.command](ns)
    except ParseError as exc:
        return EXIT_PARSE, f"parse error: {exc}"
    except (PreconditionError, FieldError, ReductionLimitError, ZeroDivisionError) as exc:
        return EXIT_PRECONDITION, f"error: {exc}"
    except OSError as exc:
        return EXIT_PARSE, f"cannot read input: {exc}"
    except DownUpError as exc:
        return EXIT_PRECONDITION, f"error: {exc}"
    return EXIT_OK, _dump(data) if ns.json else "\n".join(lines)


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, text = run(argv)
    if text:
        print(text, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
