"""Command line front end.

Exit codes: 0 for success / positive certificates, 1 for failed checks and
precondition refusals, 2 for unknown (search exhausted), 64 for usage errors,
65 for unreadable or malformed input data.  Reports go to stdout, diagnostics
to stderr.  `FILE` arguments accept plain paths or `bundled:NAME` for the
shipped corpus.
"""

from __future__ import annotations

import argparse
import os
import sys
from importlib import resources

from .algebra import QQ, AlgebraError, Matrix, field_by_tag
from .chain import ChainError, betti, euler_check, h0_vanishing_check, specialize
from .groups import (GroupError, eval_word_perm, enumerate_quotients,
                     make_representation, perm_from_cycles,
                     permutation_representation, trivial_representation,
                     FiniteQuotient, perm_group_order, _is_transitive)
from .scxio import ParseError, RepDocument, parse_rep, parse_scx, serialize_scx
from .sutured import (CohomologyClass, PreconditionError, SuturedComplex,
                      complexity_lower_bound, certify_taut, double,
                      nonproduct_search, validate)

EX_OK = 0
EX_FAIL = 1
EX_UNKNOWN = 2
EX_USAGE = 64
EX_DATA = 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def bundled_names():
    return sorted(p.name[:-4] for p in resources.files("scx.data").iterdir()
                  if p.name.endswith(".scx"))


def load_document(spec: str):
    if spec.startswith("bundled:"):
        name = spec.split(":", 1)[1]
        ref = resources.files("scx.data") / f"{name}.scx"
        if not ref.is_file():
            raise UsageError(f"no bundled example {name!r}; available:"
                             f" {', '.join(bundled_names())}")
        text = ref.read_text()
    else:
        try:
            with open(spec, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as e:
            raise ParseError(f"cannot read {spec}: {e}") from e
    return parse_scx(text)


def resolve_representation(spec: str, pres, dom):
    """--rep value: a file path, trivial:k, or perm:<degree>:<assignments>."""
    if spec.startswith("trivial:"):
        k = int(spec.split(":", 1)[1])
        if k < 1:
            raise UsageError("trivial representation needs k >= 1")
        return trivial_representation(pres, k, dom)
    if spec.startswith("perm:"):
        rest = spec.split(":", 1)[1]
        degree_text, _, assigns = rest.partition(":")
        try:
            degree = int(degree_text)
        except ValueError:
            raise UsageError("perm spec is perm:<degree>:g=(..),h=(..)")
        return _perm_rep_from_assignments(pres, degree, assigns, dom)
    with open(spec, "r", encoding="utf-8") as handle:
        doc = parse_rep(handle.read())
    return representation_from_document(doc, pres, dom)


def _perm_rep_from_assignments(pres, degree, assigns, dom):
    images = {}
    if assigns:
        for part in _split_assignments(assigns):
            name, eq, value = part.partition("=")
            if not eq:
                raise UsageError(f"bad permutation assignment {part!r}")
            images[name.strip()] = perm_from_cycles(value.strip(), degree)
    perms = tuple(images.get(g, tuple(range(degree))) for g in pres.gens)
    if not _relators_pass(pres, perms, degree):
        raise ParseError("permutations do not satisfy the relators")
    q = FiniteQuotient(pres, degree, perms,
                       _is_transitive(perms, degree) if perms else degree == 1,
                       perm_group_order(list(perms)) if perms else 1)
    return permutation_representation(q, dom)


def _relators_pass(pres, perms, degree):
    ident = tuple(range(degree))
    return all(eval_word_perm(perms, r, degree) == ident
               for r in pres.relators)


def _split_assignments(text):
    parts = []
    depth = 0
    cur = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if cur:
        parts.append("".join(cur))
    return parts


def representation_from_document(doc: RepDocument, pres, default_dom):
    dom = field_by_tag(doc.field_tag) if doc.kind == "matrix" else default_dom
    if doc.kind == "trivial":
        return trivial_representation(pres, doc.dim, dom)
    if doc.kind == "perm":
        perms = []
        for g in pres.gens:
            text = doc.perms.get(g, "()")
            perms.append(perm_from_cycles(text, doc.degree))
        perms = tuple(perms)
        if not _relators_pass(pres, perms, doc.degree):
            raise ParseError("permutations do not satisfy the relators")
        q = FiniteQuotient(pres, doc.degree, perms,
                           _is_transitive(perms, doc.degree) if perms
                           else doc.degree == 1,
                           perm_group_order(list(perms)) if perms else 1)
        return permutation_representation(q, dom)
    mats = []
    for g in pres.gens:
        if g not in doc.matrices:
            raise ParseError(f"matrix representation missing generator {g!r}")
        mats.append(Matrix.from_rows(dom, doc.matrices[g]))
    try:
        return make_representation(pres, mats, unitary=doc.unitary_assertion)
    except GroupError as e:
        raise ParseError(str(e)) from e


def resolve_phi(spec: str, doc):
    if spec.startswith("inline:"):
        values = {}
        for part in spec.split(":", 1)[1].split(","):
            name, eq, val = part.partition("=")
            if not eq:
                raise UsageError(f"bad phi assignment {part!r}")
            values[name.strip()] = int(val)
        return CohomologyClass(values)
    if spec not in doc.phis:
        raise UsageError(f"no phi class named {spec!r} in the file;"
                         f" declared: {', '.join(doc.phis) or 'none'}")
    return CohomologyClass(doc.phis[spec])


def _threads(args):
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("SCX_THREADS", "1"))


# ---------------------------------------------------------------------------
# subcommands


def cmd_check(args):
    doc = load_document(args.file)
    cx = doc.complex()
    failures = 0
    print(f"cells: {sum(len(cx.cells[d]) for d in range(4))},"
          f" chi = {cx.euler_characteristic()}")
    try:
        cx.abelian_boundary_check()
        print("d^2 under abelianization: ok")
    except ChainError as e:
        print(f"d^2 under abelianization: FAILED ({e})")
        failures += 1
    sc = SuturedComplex(doc)
    if sc.has_sutured_structure():
        report = validate(sc)
        print(report)
        if not report.ok:
            failures += 1
        trivial = trivial_representation(cx.group, 1, QQ)
        try:
            rminus = sc.rminus()
            print(euler_check(cx, rminus, trivial))
            print(h0_vanishing_check(cx, rminus, trivial,
                                     manifold3=sc.manifold3))
        except (ChainError, AssertionError) as e:
            print(f"pair checks FAILED: {e}")
            failures += 1
    else:
        trivial = trivial_representation(cx.group, 1, QQ)
        try:
            specialize(cx, trivial, None)
            print("specialization under the trivial representation: ok")
        except ChainError as e:
            print(f"specialization FAILED: {e}")
            failures += 1
    return EX_FAIL if failures else EX_OK


def cmd_homology(args):
    doc = load_document(args.file)
    cx = doc.complex()
    dom = field_by_tag(args.field)
    rep = resolve_representation(args.rep, cx.group, dom)
    rel = None
    if args.rel:
        sc = SuturedComplex(doc)
        rel = sc.ref(args.rel)
    bv = betti(specialize(cx, rep, rel))
    pair = f"(M, {args.rel})" if args.rel else "M"
    print(f"pair: {pair}")
    print(f"representation: {rep.describe()}")
    print(f"b = {bv}")
    return EX_OK


def cmd_certify_taut(args):
    doc = load_document(args.file)
    sc = SuturedComplex(doc)
    verdict = certify_taut(sc, max_degree=args.max_degree,
                           threads=_threads(args))
    print(verdict.report())
    return EX_OK if verdict.status == "certified-taut" else EX_UNKNOWN


def cmd_nonproduct(args):
    doc = load_document(args.file)
    sc = SuturedComplex(doc)
    verdict = nonproduct_search(sc, max_degree=args.max_degree,
                                regular_cap=args.max_regular_dim,
                                threads=_threads(args))
    print(verdict.report())
    return EX_OK if verdict.status == "certified-not-product" else EX_UNKNOWN


def cmd_bounds(args):
    doc = load_document(args.file)
    sc = SuturedComplex(doc)
    dom = field_by_tag(args.field)
    rep = resolve_representation(args.rep, sc.cx.group, dom)
    print(complexity_lower_bound(sc, rep))
    return EX_OK


def cmd_double(args):
    doc = load_document(args.file)
    sc = SuturedComplex(doc)
    result = double(sc)
    text = serialize_scx(result.document)
    with open(args.output, "w", encoding="utf-8") as handle:
        handle.write(text)
    dm = result.complex()
    print(f"wrote {args.output}")
    print(f"chi = {dm.euler_characteristic()}")
    print("phi: " + " ".join(f"{g}={v}" for g, v in sorted(
        result.phi.values.items()) if v))
    return EX_OK


def cmd_alex(args):
    from .alex import thurston_bound
    doc = load_document(args.file)
    cx = doc.complex()
    dom = field_by_tag(args.field)
    rep = resolve_representation(args.rep, cx.group, dom)
    phi = resolve_phi(args.phi, doc)
    report = thurston_bound(cx, phi, rep)
    for order in report.orders:
        if args.deg_only:
            d = "undefined" if order.deg is None else order.deg
            print(f"deg Delta_{order.i} = {d}")
        else:
            print(f"Delta_{order.i} = {order.poly_str()}")
    if report.bound is None:
        print(f"no bound ({report.reason})")
    else:
        print(f"norm lower bound: {report.bound}")
    return EX_OK


def cmd_quotients(args):
    doc = load_document(args.file)
    pres = doc.presentation()
    count = 0
    for q in enumerate_quotients(pres, args.max_degree,
                                 transitive_only=args.transitive):
        print(q.describe())
        count += 1
    print(f"total: {count}")
    return EX_OK


def build_parser() -> _Parser:
    parser = _Parser(prog="scx", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(fn=fn)
        p.add_argument("file", help="path to an .scx file or bundled:NAME")
        return p

    add("check", cmd_check, help="validate a complex and its sutured data")

    p = add("homology", cmd_homology, help="twisted Betti numbers")
    p.add_argument("--rel", default=None, help="subcomplex name, e.g. R-")
    p.add_argument("--rep", default="trivial:1")
    p.add_argument("--field", default="q", help="q, f2, f3, f5, ...")

    p = add("certify-taut", cmd_certify_taut,
            help="search for a vanishing certificate")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--threads", type=int, default=None)

    p = add("nonproduct", cmd_nonproduct, help="search for a non-product"
            " certificate")
    p.add_argument("--max-degree", type=int, default=3)
    p.add_argument("--max-regular-dim", type=int, default=64)
    p.add_argument("--threads", type=int, default=None)

    p = add("bounds", cmd_bounds, help="complexity lower bound")
    p.add_argument("--rep", default="trivial:1")
    p.add_argument("--field", default="q")

    p = add("double", cmd_double, help="double along R- and R+")
    p.add_argument("-o", "--output", required=True)

    p = add("alex", cmd_alex, help="twisted orders and the norm bound")
    p.add_argument("--phi", required=True,
                   help="class name from the file or inline:g=1,h=0")
    p.add_argument("--rep", default="trivial:1")
    p.add_argument("--field", default="q")
    p.add_argument("--deg-only", action="store_true")

    p = add("quotients", cmd_quotients, help="list finite quotients")
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument("--transitive", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EX_USAGE
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EX_USAGE
    except PreconditionError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EX_FAIL
    except (ParseError, GroupError, ChainError, AlgebraError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EX_DATA


def console_main():
    sys.exit(main())
