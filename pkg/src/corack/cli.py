"""Command-line front end.

Exit codes: 0 success, 1 a check failed (report still printed), 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import combinations

from .algebra import AlgebraError, Presentation, tpow
from .corack import (
    CorackAlgebra,
    CorackError,
    HopfAlgebra,
    conj_corack,
    corack_check,
    corack_predicates,
    ol_corack,
    stock_hopf,
    trivial_corack,
)
from .field import FieldMismatch, parse_field
from .finite import (
    FILTERS,
    FiniteError,
    FiniteGroup,
    FiniteRack,
    center,
    conj_of_group,
    dual_corack,
    enumerate_racks,
    orbits,
    rack_axioms_check,
    stock_group,
    subset_classify,
)
from .leibniz import LeibnizAlgebra, LeibnizError, check_identities, left_center
from .poly import PolyError
from .tangent import TangentError, ad_via_dual, bracket, derivation_basis, structure_constants

INPUT_ERRORS = (AlgebraError, FiniteError, LeibnizError, PolyError, FieldMismatch,
                json.JSONDecodeError, KeyError, TypeError, ValueError, OSError)


class InputError(Exception):
    pass


class CheckFailed(Exception):
    def __init__(self, payload, message):
        super().__init__(message)
        self.payload = payload


def _emit(obj, out: str | None):
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _read_json(path: str | None):
    if path is None or path == "-":
        return json.load(sys.stdin)
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _load_hopf(path: str, field) -> HopfAlgebra:
    obj = _read_json(path)
    if "field" not in obj:
        obj["field"] = field.to_json()
    pres = Presentation.from_json(obj)
    T2 = tpow(pres, 2)
    for key in ("delta", "antipode"):
        if key not in obj:
            raise InputError(f"Hopf algebra JSON lacks {key!r}")
    delta = {g: T2.parse_elem(str(v)) for g, v in obj["delta"].items()}
    anti = {g: pres.parse_elem(str(v)) for g, v in obj["antipode"].items()}
    H = HopfAlgebra(pres, delta, anti, name=obj.get("name"))
    bad = {k: v for k, v in H.check().items() if v}
    if bad:
        raise InputError(f"Hopf algebra laws fail: {bad}")
    return H


def _rack_from_args(args) -> FiniteRack:
    if getattr(args, "conj_of", None):
        return conj_of_group(stock_group(args.conj_of))
    if getattr(args, "group_in", None):
        return conj_of_group(FiniteGroup.from_json(_read_json(args.group_in)))
    return FiniteRack.from_json(_read_json(args.inp))


# -- verbs ------------------------------------------------------------------


def cmd_gen(args) -> dict:
    field = parse_field(args.field)
    b = args.builder
    if b == "trivial":
        gens = [g.strip() for g in (args.gens or "").split(",") if g.strip()]
        rels = [r for r in (args.relations or "").split(";") if r.strip()]
        A = Presentation(field, gens, rels, None, {g: 0 for g in gens})
        return trivial_corack(A).to_json()
    if b == "conj":
        if args.group in ("gl", "sl", "ga", "gm", "heis"):
            H = stock_hopf(args.group, args.n, field, allow_slow=args.allow_slow)
        else:
            H = _load_hopf(args.group, field)
        return conj_corack(H).to_json()
    if b == "ol":
        return ol_corack(args.n, field, allow_slow=args.allow_slow).to_json()
    if b == "finite-dual":
        return dual_corack(_rack_from_args(args), field).to_json()
    raise InputError(f"unknown builder {b!r}")


def _load_corack(args) -> CorackAlgebra:
    obj = _read_json(args.inp)
    try:
        return CorackAlgebra.from_json(obj, check=False)
    except CorackError as exc:
        raise InputError(str(exc)) from None


def cmd_check(args) -> dict:
    C = _load_corack(args)
    rep = corack_check(C)
    rep.predicates = corack_predicates(C)
    out = rep.to_json()
    if not rep.ok:
        raise CheckFailed(out, "corack axioms fail")
    return out


def cmd_leibniz(args) -> dict:
    C = _load_corack(args)
    basis = derivation_basis(C)
    try:
        L = structure_constants(C, basis)
    except TangentError as exc:
        raise CheckFailed({"error": str(exc)}, str(exc)) from None
    out = L.to_json()
    if args.cross_check_ad:
        bad = []
        for i, D in enumerate(basis):
            for j, E in enumerate(basis):
                if ad_via_dual(C, D, E) != bracket(C, D, E, cross_check=False):
                    bad.append([i, j])
        if bad:
            raise CheckFailed({"ad_mismatch": bad}, "adjoint cross-check failed")
    return out


def cmd_classify(args) -> dict:
    L = LeibnizAlgebra.from_json(_read_json(args.inp))
    rep = check_identities(L)
    Z = left_center(L)
    return {
        "leibniz": rep.leibniz,
        "lie": rep.lie,
        "abelian": rep.abelian,
        "left_center_dim": Z.dim,
        "left_center_basis": Z.to_json(),
        "witnesses": rep.witnesses,
    }


def cmd_finite(args) -> dict:
    v = args.verb
    if v == "enumerate":
        if args.n is None:
            raise InputError("finite enumerate needs --n")
        racks = list(enumerate_racks(args.n, args.filter))
        return {"n": args.n, "filter": args.filter, "count": len(racks),
                "racks": [R.to_json() for R in racks]}
    R = _rack_from_args(args)
    if v == "check":
        rep = rack_axioms_check(R)
        out = rep.to_json()
        if not rep.ok:
            raise CheckFailed(out, "rack axioms fail")
        return out
    if v == "center":
        return center(R)
    if v == "ideals":
        if args.subset:
            S = [int(s) for s in args.subset.split(",")]
            return {"subset": sorted(set(S)), "class": subset_classify(R, S)}
        orbs = [o for o in orbits(R) if R.unit not in o]
        if len(orbs) > 12:
            raise InputError("too many orbits to list all unions; pass --subset")
        out = []
        for k in range(len(orbs) + 1):
            for pick in combinations(orbs, k):
                S = sorted({R.unit}.union(*pick))
                out.append({"subset": S, "class": subset_classify(R, S)})
        return {"orbits": orbits(R), "subsets": out}
    if v == "dualize":
        return dual_corack(R, parse_field(args.field)).to_json()
    raise InputError(f"unknown finite verb {v!r}")


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="corack", description="Corack algebras and their Leibniz algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, inp=True):
        sp.add_argument("--field", default="Q", help="Q or Fp:<p> (default Q)")
        sp.add_argument("--out", help="write JSON here instead of stdout")
        if inp:
            sp.add_argument("--in", dest="inp", help="input JSON path (default stdin)")

    g = sub.add_parser("gen", help="build a corack algebra")
    g.add_argument("builder", choices=["trivial", "conj", "ol", "finite-dual"])
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--group", default="gl", help="gl|sl|ga|gm|heis or a Hopf algebra JSON file")
    g.add_argument("--gens", help="comma-separated generators (trivial)")
    g.add_argument("--relations", help="semicolon-separated relations (trivial)")
    g.add_argument("--conj-of", dest="conj_of", help="stock finite group (finite-dual)")
    g.add_argument("--group-in", dest="group_in", help="group JSON (finite-dual)")
    g.add_argument("--allow-slow", action="store_true")
    common(g)

    c = sub.add_parser("check", help="check corack axioms C1-C5 and predicates")
    common(c)

    lb = sub.add_parser("leibniz", help="structure constants of the tangent Leibniz algebra")
    lb.add_argument("--cross-check-ad", action="store_true")
    common(lb)

    cl = sub.add_parser("classify", help="classify a Leibniz algebra")
    common(cl)

    f = sub.add_parser("finite", help="finite rack utilities")
    f.add_argument("verb", choices=["check", "center", "ideals", "enumerate", "dualize"])
    f.add_argument("--n", type=int)
    f.add_argument("--filter", default="all", choices=FILTERS)
    f.add_argument("--conj-of", dest="conj_of", help="stock group: c<n>, s<n>, d<n>, q8, v4")
    f.add_argument("--group-in", dest="group_in", help="group JSON with a 'mul' table")
    f.add_argument("--subset", help="comma-separated indices (ideals)")
    common(f)
    return p


HANDLERS = {"gen": cmd_gen, "check": cmd_check, "leibniz": cmd_leibniz,
            "classify": cmd_classify, "finite": cmd_finite}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command != "gen" and args.command != "finite":
            parse_field(args.field)
        out = HANDLERS[args.command](args)
    except CheckFailed as exc:
        _emit(exc.payload, args.out)
        print(f"corack: {exc}", file=sys.stderr)
        return 1
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"corack: input error: {exc}", file=sys.stderr)
        return 2
    _emit(out, args.out)
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
