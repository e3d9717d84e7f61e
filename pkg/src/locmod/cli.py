"""Command-line front end: ``locmod <area> <action> [flags]``.

Every result is written as one JSON object per line on stdout.  Exit status
is 0 on success, 1 when a module rejects the input, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import admissible, galois_lattice, hecke, lattice_chain
from .affine_weyl import ExtAffineWeylGroup, make_iwahori_weyl
from .classical_catalog import catalog_list, classify_form
from .errors import DomainError
from .root_data import build_root_datum, parse_group_spec, pinned_automorphism


class UsageError(Exception):
    pass


def _emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj) + "\n")


def _ints(text: str | None, what: str) -> list[int] | None:
    if text is None:
        return None
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise UsageError(f"--{what}: expected comma-separated integers, got {text!r}") from None


def _json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--{what}: invalid JSON at line {exc.lineno} column {exc.colno}: "
                         f"{exc.msg}") from None


def _load_config(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"--config: {exc}") from None
    data = _json_arg(text, "config")
    if not isinstance(data, dict):
        raise UsageError("--config: top level must be an object")
    allowed = {"group", "rank", "lattice", "automorphism", "order", "parahoric", "params", "mu"}
    bad = sorted(set(data) - allowed)
    if bad:
        raise UsageError(f"--config: unknown field(s) {bad}; allowed {sorted(allowed)}")
    return data


def _group_spec(args) -> dict:
    cfg = _load_config(getattr(args, "config", None))
    group = args.group if args.group is not None else cfg.get("group")
    if group is None:
        raise UsageError("a group is required (--group or config field 'group')")
    if isinstance(group, dict):
        spec = dict(group)
    elif str(group).lstrip().startswith("{"):
        spec = _json_arg(group, "group")
    else:
        rank = args.rank if args.rank is not None else cfg.get("rank")
        spec = {"type": group, "rank": rank} if rank is not None else parse_group_spec(group)
    lattice = getattr(args, "lattice", None) or cfg.get("lattice")
    if lattice:
        spec["lattice"] = lattice
    perm = _ints(getattr(args, "automorphism", None), "automorphism")
    if perm is None and cfg.get("automorphism") is not None:
        perm = list(cfg["automorphism"])
    order = getattr(args, "order", None) or cfg.get("order")
    if perm is not None:
        spec["automorphism"] = {"permutation": perm, "order": order}
    if getattr(args, "mu", None) is None and cfg.get("mu") is not None:
        args.mu = ",".join(str(x) for x in cfg["mu"])
    if getattr(args, "parahoric", None) is None and cfg.get("parahoric") is not None:
        p = cfg["parahoric"]
        args.parahoric = p if isinstance(p, str) else ",".join(str(x) for x in p)
    if getattr(args, "params", None) is None and cfg.get("params") is not None:
        args.params = ",".join(str(x) for x in cfg["params"])
    return spec


def _group(args) -> ExtAffineWeylGroup:
    return make_iwahori_weyl(_group_spec(args))


def _datum_and_gamma(args):
    spec = _group_spec(args)
    rd = build_root_datum(spec)
    aut = spec.get("automorphism") or {}
    return rd, pinned_automorphism(rd, aut.get("permutation"), aut.get("order"))


def _mu(args) -> list[int]:
    mu = _ints(args.mu, "mu")
    if mu is None:
        raise UsageError("--mu is required")
    return mu


def _parahoric(W: ExtAffineWeylGroup, text: str | None):
    if text is None or text == "iwahori":
        return W.iwahori()
    if text == "special":
        return W.special_maximal()
    return W.parahoric(_ints(text, "parahoric"))


def _element(W: ExtAffineWeylGroup, text: str | None, what: str):
    if text is None:
        raise UsageError(f"--{what} is required")
    data = _json_arg(text, what)
    if isinstance(data, list):
        return W.translation(data)
    if not isinstance(data, dict) or "translation" not in data:
        raise UsageError(f"--{what}: expected an element object or an absolute cocharacter list")
    try:
        return W.from_json(data)
    except (KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"--{what}: malformed element ({exc})") from None


# -- handlers -----------------------------------------------------------------

def cmd_group_show(args):
    W = _group(args)
    out = {"root_datum": W.datum.to_json(), "relative": W.relative.to_json()}
    out.update(W.describe())
    _emit(out)


def _lattice_from_args(args):
    if args.matrix is None:
        raise UsageError("--matrix is required")
    M = _json_arg(args.matrix, "matrix")
    if not isinstance(M, list) or not all(isinstance(r, list) for r in M):
        raise UsageError("--matrix: expected a JSON list of rows")
    order = args.order
    if order is None:
        # smallest e with M^e = identity, within the supported range
        n = len(M)
        P = galois_lattice._identity(n)
        for e in range(1, galois_lattice.MAX_ORDER + 1):
            P = galois_lattice.matmul(P, M)
            if P == galois_lattice._identity(n):
                order = e
                break
        else:
            raise DomainError(f"matrix has no finite order <= {galois_lattice.MAX_ORDER}")
    return galois_lattice.LatticeWithAction(M, order)


def cmd_cohomology(args):
    if args.action == "pi1":
        rd, gamma = _datum_and_gamma(args)
        _emit({"pi1": galois_lattice.kottwitz_pi1(rd, gamma).to_json()})
        return
    X = _lattice_from_args(args)
    if args.action == "h1":
        _emit({"h1": galois_lattice.cyclic_h1(X).to_json()})
    elif args.action == "h2":
        _emit({"h2": galois_lattice.cyclic_h2(X).to_json()})
    else:
        G, proj = galois_lattice.coinvariants(X)
        _emit({"coinvariants": G.to_json(), "projection": proj.projection_matrix()})


def cmd_weyl(args):
    W = _group(args)
    if args.action == "length":
        x = _element(W, args.element, "element")
        word, tau = W.reduced_word(x)
        _emit({"element": W.to_json(x), "length": W.length(x), "word": word,
               "omega": W.to_json(tau)})
    elif args.action == "bruhat":
        a = _element(W, args.a, "a")
        b = _element(W, args.b, "b")
        _emit({"a": W.to_json(a), "b": W.to_json(b), "leq": W.bruhat_leq(a, b),
               "geq": W.bruhat_leq(b, a)})
    else:
        for x in W.ball(args.max_length):
            _emit({"element": W.to_json(x), "length": W.length(x)})


def cmd_adm(args):
    W = _group(args)
    mu = _mu(args)
    A = admissible.adm(W, mu, cap=args.cap)
    if args.action == "count":
        _emit({"size": len(A)})
    elif args.action == "enumerate":
        pc = admissible.point_count_poly(W, mu, W.iwahori(), A)
        _emit({"mu": mu, "size": len(A),
               "elements": [dict(W.to_json(x), length=l) for x, l in zip(A.elements, A.lengths)],
               "point_count": {"coeffs": list(pc.coeffs)}})
    elif args.action == "parahoric":
        P = _parahoric(W, args.parahoric)
        reps = admissible.adm_parahoric(W, mu, P, A)
        _emit({"mu": mu, "parahoric": list(P.nodes), "size": len(reps),
               "elements": [dict(W.to_json(x), length=W.length(x)) for x in reps]})
    else:
        P = _parahoric(W, args.parahoric)
        pc = admissible.point_count_poly(W, mu, P, A)
        out = {"mu": mu, "parahoric": list(P.nodes),
               "point_count": {"coeffs": list(pc.coeffs)}, "formulas_agree": pc.agree}
        if not pc.agree:
            out["alternative"] = {"coeffs": list(pc.alternative)}
        if args.q is not None:
            out["value"] = pc(args.q)
        _emit(out)


def cmd_chain(args):
    group = args.group.lower()
    if group not in ("gl", "gsp"):
        raise UsageError("--group must be gl or gsp")
    shape = args.shape
    if args.action == "compare":
        r = lattice_chain.compare_with_admissible(group, args.n, args.d, shape, args.q,
                                                  jobs=args.jobs)
        _emit({"count": r["count"], "predicted": r["predicted"], "match": r["match"]})
        return
    if group == "gl":
        res = lattice_chain.enumerate_gl_points(args.n, args.d if args.d is not None else 1,
                                                shape, args.q, list_points=args.list,
                                                jobs=args.jobs)
    else:
        res = lattice_chain.enumerate_gsp_points(args.n, shape, args.q, list_points=args.list,
                                                 jobs=args.jobs)
    if args.list:
        count, pts = res
        _emit({"count": count})
        for p in pts:
            _emit(p.to_json())
    else:
        _emit({"count": res})


def cmd_hecke(args):
    if args.action == "vmu-inv":
        rd, gamma = _datum_and_gamma(args)
        mu = _mu(args)
        out = {"mu": mu, "dim": hecke.inertia_invariant_dim(rd, mu, gamma)}
        if args.check:
            out["dim_matrix"] = hecke.inertia_invariant_dim_matrix(rd, mu, gamma)
        _emit(out)
        return
    if args.action == "amu":
        rd = build_root_datum(_group_spec(args))
        mu = _mu(args)
        sign, power, label = hecke.a_mu_minuscule(rd, mu)
        _emit({"mu": list(label), "sign": sign, "two_rho_mu": power})
        return
    W = _group(args)
    mu = _mu(args)
    params = _ints(getattr(args, "params", None), "params")
    H = hecke.HeckeAlgebra(W, params)
    r = H.zmu_report(mu)
    _emit({"coeffs": r["coeffs"], "central": r["central"], "support_in_adm": r["support_in_adm"],
           "extremes_nonzero": r["extremes_nonzero"], "support_equals_adm": r["support_equals_adm"]})


def cmd_catalog(args):
    if args.action == "list":
        for row in catalog_list():
            _emit(row.to_json())
        return
    if args.spec is None:
        raise UsageError("--spec is required")
    spec = _json_arg(args.spec, "spec")
    if not isinstance(spec, dict):
        raise UsageError("--spec: expected a JSON object")
    _emit(classify_form(spec))


# -- parser -------------------------------------------------------------------

def _add_group(p, mu=False):
    p.add_argument("--group", help="GL, GSp, SL, PGL, A-D, 'GL3' or a JSON specifier")
    p.add_argument("--rank", type=int)
    p.add_argument("--lattice", choices=["sc", "ad"])
    p.add_argument("--automorphism", help="permutation of simple-root indices, e.g. 2,1,0")
    p.add_argument("--order", type=int)
    p.add_argument("--config", help="JSON file with group/rank/automorphism/parahoric/params/mu")
    if mu:
        p.add_argument("--mu", help="cocharacter, comma separated")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="locmod", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="area", required=True)

    g = sub.add_parser("group").add_subparsers(dest="action", required=True)
    p = g.add_parser("show")
    _add_group(p)
    p.set_defaults(func=cmd_group_show)

    c = sub.add_parser("cohomology").add_subparsers(dest="action", required=True)
    for name in ("h1", "h2", "coinv"):
        p = c.add_parser(name)
        p.add_argument("--matrix", help="JSON rows of the generator gamma")
        p.add_argument("--order", type=int)
        p.set_defaults(func=cmd_cohomology)
    p = c.add_parser("pi1")
    _add_group(p)
    p.set_defaults(func=cmd_cohomology)

    w = sub.add_parser("weyl").add_subparsers(dest="action", required=True)
    for name in ("length", "bruhat", "ball"):
        p = w.add_parser(name)
        _add_group(p)
        if name == "length":
            p.add_argument("--element", help="element JSON or absolute cocharacter list")
        if name == "bruhat":
            p.add_argument("--a")
            p.add_argument("--b")
        if name == "ball":
            p.add_argument("--max-length", type=int, default=4)
        p.set_defaults(func=cmd_weyl)

    a = sub.add_parser("adm").add_subparsers(dest="action", required=True)
    for name in ("enumerate", "count", "parahoric", "points"):
        p = a.add_parser(name)
        _add_group(p, mu=True)
        p.add_argument("--cap", type=int, default=admissible.ADM_CAP)
        if name in ("parahoric", "points"):
            p.add_argument("--parahoric", help="iwahori, special, or node list like 1,2")
        if name == "points":
            p.add_argument("--q", type=int)
        p.set_defaults(func=cmd_adm)

    ch = sub.add_parser("chain").add_subparsers(dest="action", required=True)
    for name in ("count", "compare"):
        p = ch.add_parser(name)
        p.add_argument("--group", required=True, help="gl or gsp")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--d", type=int)
        p.add_argument("--shape", default="maximal", help="maximal, standard or ranks like 1,2")
        p.add_argument("--q", type=int, default=2)
        p.add_argument("--jobs", type=int, default=1)
        if name == "count":
            p.add_argument("--list", action="store_true")
        p.set_defaults(func=cmd_chain)

    h = sub.add_parser("hecke").add_subparsers(dest="action", required=True)
    for name in ("zmu", "amu", "vmu-inv"):
        p = h.add_parser(name)
        _add_group(p, mu=True)
        if name == "zmu":
            p.add_argument("--params", help="parameter exponents per affine node")
        if name == "vmu-inv":
            p.add_argument("--check", action="store_true",
                           help="also compute the dimension by exact linear algebra")
        p.set_defaults(func=cmd_hecke)

    k = sub.add_parser("catalog").add_subparsers(dest="action", required=True)
    p = k.add_parser("classify")
    p.add_argument("--spec", help="JSON form specification")
    p.set_defaults(func=cmd_catalog)
    p = k.add_parser("list")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"locmod: error: {exc}\n")
        return 2
    except DomainError as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "type": type(exc).__name__}) + "\n")
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
