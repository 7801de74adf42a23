"""Sutured-complex logic: validation, tautness certificates, the non-product
obstruction, complexity lower bounds and the double construction.

Irreducibility and the excluded shapes (a solid torus, a ball) cannot be
decided from a chain complex, so they are user-asserted metadata and every
verdict records which assertions it is conditional on.  Certification search
uses permutation representations (unitary over C by construction); the
non-product search additionally uses regular representations of quotients,
where the subgroup-index argument lives.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import QQ
from .chain import ChainError, SubcomplexRef, betti, specialize
from .groups import (GroupPresentation, enumerate_quotients, eval_word_perm,
                     perm_group_order, permutation_representation,
                     regular_representation, trivial_representation,
                     word_inv, word_mul, SizeLimitError)
from .scxio import ScxDocument


class SuturedError(Exception):
    pass


class PreconditionError(SuturedError):
    """An operation's stated hypotheses are not met; refuse with explanation."""


VERDICT_STATUSES = ("certified-taut", "certified-not-taut",
                    "certified-not-product", "certified-not-fibered-analog",
                    "unknown")


@dataclass(frozen=True)
class Verdict:
    status: str
    witness: dict | None
    log: dict

    def __post_init__(self):
        if self.status not in VERDICT_STATUSES:
            raise SuturedError(f"unknown verdict status {self.status!r}")

    def report(self) -> str:
        lines = [f"verdict: {self.status}"]
        if self.witness:
            for key, value in self.witness.items():
                lines.append(f"witness.{key}: {value}")
        for key, value in self.log.items():
            lines.append(f"search.{key}: {value}")
        return "\n".join(lines)


@dataclass(frozen=True)
class CohomologyClass:
    """Integer weight per generator name; must vanish on all relators."""

    values: dict

    def weight(self, pres: GroupPresentation, word) -> int:
        total = 0
        for k in word:
            name = pres.gens[abs(k) - 1]
            total += (1 if k > 0 else -1) * self.values.get(name, 0)
        return total

    def is_cocycle(self, pres: GroupPresentation) -> bool:
        return all(self.weight(pres, r) == 0 for r in pres.relators)


class SuturedComplex:
    """An equivariant complex with the sutured decomposition metadata."""

    def __init__(self, doc: ScxDocument):
        self.doc = doc
        self.cx = doc.complex()
        self.suture_count = doc.meta_int("sutures", 0) or 0
        self.irreducible = doc.meta_flag("irreducible")
        self.excluded_solid_torus = doc.meta_flag("excluded_s1xd2")
        self.excluded_ball = doc.meta_flag("excluded_d3")
        self.manifold3 = doc.meta_flag("manifold3")
        self.chi_rminus = doc.meta_int("chi_rminus")
        self.chi_rplus = doc.meta_int("chi_rplus")

    def has_sutured_structure(self) -> bool:
        return "R-" in self.doc.subs and "R+" in self.doc.subs

    def sub_cells(self, name: str):
        if name not in self.doc.subs:
            raise SuturedError(f"no subcomplex named {name!r}")
        return self.doc.subs[name]

    def ref(self, name: str) -> SubcomplexRef:
        return self.cx.subcomplex(name, self.sub_cells(name))

    def rminus(self) -> SubcomplexRef:
        return self.ref("R-")

    def rplus(self) -> SubcomplexRef:
        return self.ref("R+")

    def chi_of(self, name: str) -> int:
        cells = self.sub_cells(name)
        return sum((-1) ** self.cx.dim_of(c) for c in cells)

    def component_complexities(self, name: str):
        """Per-component Euler numbers of a subcomplex."""
        comps = self.cx.components(self.sub_cells(name))
        return [sum((-1) ** self.cx.dim_of(c) for c in comp) for comp in comps]

    def chi_minus(self, name: str) -> int:
        return sum(max(-chi, 0) for chi in self.component_complexities(name))

    def is_balanced(self) -> bool:
        return self.chi_of("R-") == self.chi_of("R+")

    def assumptions(self) -> str:
        parts = []
        parts.append("irreducible (user-asserted)" if self.irreducible
                     else "irreducibility NOT asserted")
        if self.excluded_solid_torus:
            parts.append("declared S1xD2 (excluded shape)")
        if self.excluded_ball:
            parts.append("declared D3 (excluded shape)")
        return "; ".join(parts)


@dataclass
class ValidationReport:
    entries: list = field(default_factory=list)

    def add(self, level: str, message: str):
        self.entries.append((level, message))

    @property
    def ok(self) -> bool:
        return not any(level == "error" for level, _ in self.entries)

    def __str__(self):
        return "\n".join(f"{level}: {msg}" for level, msg in self.entries)


def validate(sc: SuturedComplex) -> ValidationReport:
    """Structural invariants of the sutured decomposition."""
    rep = ValidationReport()
    doc, cx = sc.doc, sc.cx
    named = [n for n in ("R-", "R+", "gamma") if n in doc.subs]
    for missing in ("R-", "R+"):
        if missing not in doc.subs:
            rep.add("error", f"missing subcomplex {missing}")
    for i, a in enumerate(named):
        for b in named[i + 1:]:
            overlap = set(doc.subs[a]) & set(doc.subs[b])
            if overlap:
                rep.add("error", f"{a} and {b} share cells"
                        f" {sorted(overlap)}")
    for name in doc.subs:
        try:
            cx.subcomplex(name, doc.subs[name])
        except ChainError as e:
            rep.add("error", str(e))
    if sc.suture_count <= 0:
        rep.add("error", "suture count must be a positive integer")
    for name, expect in (("R-", sc.chi_rminus), ("R+", sc.chi_rplus)):
        if name in doc.subs and expect is not None:
            got = sc.chi_of(name)
            if got != expect:
                rep.add("error", f"chi({name}) = {got} but metadata says"
                        f" {expect}")
    if "gamma" in doc.subs:
        chi_gamma = sc.chi_of("gamma")
        if chi_gamma != 0:
            rep.add("error", f"chi(gamma) = {chi_gamma}, expected 0")
    if "R-" in doc.subs and "R+" in doc.subs:
        rep.add("info", "balanced" if sc.is_balanced() else "not balanced")
    if not cx.skeleton_connected():
        rep.add("error", "1-skeleton is not connected")
    try:
        cx.abelian_boundary_check()
    except ChainError as e:
        rep.add("error", str(e))
    for name in ("R-", "R+"):
        if name not in doc.subs:
            continue
        for chi in sc.component_complexities(name):
            if chi == 1:
                rep.add("warning", f"{name} has a disk-like component"
                        " (chi = 1); complexity bounds unavailable")
                break
    return rep


# ---------------------------------------------------------------------------
# search plumbing


def _search_first(producer, evaluate, threads=1):
    """First item (in stream order) whose evaluation is not None.

    Evaluations may run concurrently, but selection is by stream position, so
    the result is deterministic.  Returns (index, item, result, tested).
    """
    if threads <= 1:
        count = 0
        for item in producer:
            count += 1
            result = evaluate(item)
            if result is not None:
                return count - 1, item, result, count
        return None, None, None, count
    tested = 0
    items = list(producer)
    chunk = max(4 * threads, 8)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(items), chunk):
            batch = items[start:start + chunk]
            results = list(pool.map(evaluate, batch))
            for off, result in enumerate(results):
                tested += 1
                if result is not None:
                    return start + off, batch[off], result, tested
    return None, None, None, len(items)


# ---------------------------------------------------------------------------
# tautness certificate


def certify_taut(sc: SuturedComplex, max_degree: int = 4, dom=QQ,
                 threads: int = 1) -> Verdict:
    """Search permutation representations for b1(M, R-) = 0.

    Preconditions (the criterion's hypotheses): balanced, irreducibility
    asserted, excluded shapes not declared.  On success the witness carries
    the representation, the vanishing pair vector and b(M, R+).  Exhaustion
    returns "unknown": a vanishing certificate is guaranteed to exist for
    taut inputs, but no bound on the quotient size is available.
    """
    if not sc.has_sutured_structure():
        raise PreconditionError("no R-/R+ sutured structure declared")
    if not sc.is_balanced():
        raise PreconditionError(
            f"not balanced: chi(R-) = {sc.chi_of('R-')},"
            f" chi(R+) = {sc.chi_of('R+')}")
    if not sc.irreducible:
        raise PreconditionError("irreducibility is not asserted in metadata")
    if sc.excluded_solid_torus:
        raise PreconditionError("declared S1xD2: excluded case, the"
                                " criterion does not apply")
    if sc.excluded_ball:
        raise PreconditionError("declared D3: excluded case, the criterion"
                                " does not apply")
    rminus = sc.rminus()
    tested = 0

    def try_rep(rep, label):
        bv = betti(specialize(sc.cx, rep, rminus))
        if bv[1] == 0:
            bplus = betti(specialize(sc.cx, rep, sc.rplus()))
            return {"representation": label, "k": rep.dim,
                    "b_pair_rminus": str(bv), "b_pair_rplus": str(bplus),
                    "unitary": rep.unitary, "assumptions": sc.assumptions()}
        return None

    trivial = trivial_representation(sc.cx.group, 1, dom)
    tested += 1
    witness = try_rep(trivial, "trivial k=1")
    if witness is not None:
        return Verdict("certified-taut", witness,
                       {"degrees": "trivial only", "representations_tested": 1})

    def evaluate(q):
        return try_rep(permutation_representation(q, dom), q.describe())

    idx, q, witness, consumed = _search_first(
        enumerate_quotients(sc.cx.group, max_degree), evaluate, threads)
    tested += consumed
    log = {"degrees": f"2..{max_degree}", "representations_tested": tested}
    if witness is not None:
        return Verdict("certified-taut", witness, log)
    return Verdict("unknown", None, log)


# ---------------------------------------------------------------------------
# non-product obstruction


def nonproduct_search(sc: SuturedComplex, max_degree: int = 3,
                      regular_cap: int = 64, threads: int = 1) -> Verdict:
    """Certify that the sutured complex is not a product.

    Two tests per quotient: the index test compares the order of the image of
    pi_1(R-) with the order of the full image (strict inequality makes the
    regular-representation pair homology nonzero by the dimension count
    |G| / |im(pi_1(R-) -> G)| > |G| / |im(pi_1(M) -> G)|), and the direct
    test computes b1 under the regular representation.  Disconnected R-
    short-circuits through untwisted homology.
    """
    rminus = sc.rminus()
    comps = sc.cx.components(sc.sub_cells("R-"))
    log = {"degrees": f"2..{max_degree}", "representations_tested": 0}
    if len(comps) > 1:
        bv = betti(specialize(sc.cx, trivial_representation(sc.cx.group, 1, QQ),
                              rminus))
        if bv[1] >= 1:
            return Verdict("certified-not-product",
                           {"test": "disconnected R-",
                            "components": len(comps),
                            "b_pair_rminus": str(bv)},
                           log)
    gen_words = sc.cx.pi1_generator_words(sc.sub_cells("R-"))

    def evaluate(q):
        images = [eval_word_perm(q.images, w, q.degree) for w in gen_words]
        sub_order = perm_group_order(images) if images else 1
        detail = {"quotient": q.describe(),
                  "im_order_rminus": sub_order,
                  "im_order_total": q.image_order}
        index_fired = sub_order < q.image_order
        if index_fired:
            detail["test"] = "index"
            detail["dim_h0_rminus_regular"] = q.image_order // sub_order
            detail["dim_h0_total_regular"] = 1
        direct = None
        try:
            reg = regular_representation(q, QQ, cap=regular_cap)
            direct = betti(specialize(sc.cx, reg, rminus))
            detail["b_pair_rminus_regular"] = str(direct)
        except SizeLimitError:
            detail["note"] = "regular representation over cap, index test only"
        if index_fired:
            return detail
        if direct is not None and direct[1] != 0:
            detail["test"] = "direct"
            return detail
        return None

    idx, q, witness, consumed = _search_first(
        enumerate_quotients(sc.cx.group, max_degree), evaluate, threads)
    log["representations_tested"] = consumed
    if witness is not None:
        return Verdict("certified-not-product", witness, log)
    return Verdict("unknown", None, log)


# ---------------------------------------------------------------------------
# complexity lower bound


@dataclass(frozen=True)
class BoundReport:
    bound: Fraction
    chi_minus_rminus: int
    chi_minus_rplus: int
    b1_rminus: int
    b1_rplus: int
    k: int
    sharp: bool

    def __str__(self):
        lines = [f"x(M,gamma) >= {self.bound}",
                 f"chi_minus(R-) = {self.chi_minus_rminus}",
                 f"chi_minus(R+) = {self.chi_minus_rplus}",
                 f"b1(M,R-) = {self.b1_rminus} (k = {self.k})",
                 f"b1(M,R+) = {self.b1_rplus}",
                 f"sharp: {'yes' if self.sharp else 'no'}"]
        return "\n".join(lines)


def complexity_lower_bound(sc: SuturedComplex, rep) -> BoundReport:
    """Lower bound for the complexity of the sutured decomposition."""
    report = validate(sc)
    if not report.ok:
        raise PreconditionError("validation failed:\n" + str(report))
    if not sc.irreducible:
        raise PreconditionError("irreducibility is not asserted in metadata")
    for name in ("R-", "R+"):
        if any(chi == 1 for chi in sc.component_complexities(name)):
            raise PreconditionError(f"{name} has a disk component; the bound"
                                    " requires none")
    chi_m = sc.chi_minus("R-")
    chi_p = sc.chi_minus("R+")
    b1m = betti(specialize(sc.cx, rep, sc.rminus()))[1]
    b1p = betti(specialize(sc.cx, rep, sc.rplus()))[1]
    k = rep.dim
    bound = Fraction(chi_p + chi_m, 2) - Fraction(b1m + b1p, 2 * k)
    if bound < 0:
        bound = Fraction(0)
    sharp = bound == min(chi_m, chi_p)
    return BoundReport(bound, chi_m, chi_p, b1m, b1p, k, sharp)


# ---------------------------------------------------------------------------
# the double


@dataclass(frozen=True)
class DoubleResult:
    document: ScxDocument
    phi: CohomologyClass
    retraction: dict

    def complex(self) -> EquivariantComplex:
        return self.document.complex()


def double(sc: SuturedComplex) -> DoubleResult:
    """Glue two copies of the complex along R- and R+.

    The first R+ component is the tree edge (identified without a stable
    letter); every other glued component gets one: phi = 1 on R- stable
    letters, 0 elsewhere, the class dual to R-.  Copy-2 boundary terms that
    land on a shared cell in component C are corrected by left multiplication
    with C's stable letter.
    """
    report = validate(sc)
    if not report.ok:
        raise PreconditionError("validation failed:\n" + str(report))
    rminus_cells = sc.sub_cells("R-")
    rplus_cells = sc.sub_cells("R+")
    if not rminus_cells or not rplus_cells:
        raise PreconditionError("double needs nonempty R- and R+")
    cx = sc.cx
    group = cx.group
    comps = ([("R+", comp) for comp in cx.components(rplus_cells)]
             + [("R-", comp) for comp in cx.components(rminus_cells)])
    shared = set(rminus_cells) | set(rplus_cells)

    for side, comp in comps:
        _check_zero_holonomy_tree(cx, comp, side)

    gens = [g + "!1" for g in group.gens] + [g + "!2" for g in group.gens]
    n = group.ngens
    stable_letters = []
    comp_stable = {}
    minus_seen = 0
    plus_seen = 0
    for side, comp in comps:
        if side == "R+":
            plus_seen += 1
            if plus_seen == 1:
                comp_stable[frozenset(comp)] = ()
                continue
            name = "s" if plus_seen == 2 else f"s{plus_seen - 1}"
        else:
            minus_seen += 1
            name = "t" if minus_seen == 1 else f"t{minus_seen}"
        stable_letters.append((name, side))
        comp_stable[frozenset(comp)] = (2 * n + len(stable_letters),)
        gens.append(name)

    def theta(word, copy):
        offset = 0 if copy == 1 else n
        return tuple((k + offset) if k > 0 else (k - offset) for k in word)

    relators = [theta(r, 1) for r in group.relators]
    relators += [theta(r, 2) for r in group.relators]
    for side, comp in comps:
        g = comp_stable[frozenset(comp)]
        for w in cx.pi1_generator_words(comp):
            rel = word_mul(theta(w, 1), g, word_inv(theta(w, 2)), word_inv(g))
            if rel:
                relators.append(rel)

    cell_component = {}
    for side, comp in comps:
        for c in comp:
            cell_component[c] = frozenset(comp)

    cells = []
    boundaries = {}
    for name, dim in sc.doc.cells:
        if name in shared:
            cells.append((name, dim))
            if dim >= 1:
                boundaries[name] = tuple(
                    (c, theta(w, 1), t) for c, w, t in cx.boundary[name])
    for copy, suffix in ((1, "!1"), (2, "!2")):
        for name, dim in sc.doc.cells:
            if name in shared:
                continue
            new = name + suffix
            cells.append((new, dim))
            if dim == 0:
                continue
            terms = []
            for c, w, t in cx.boundary.get(name, ()):
                if t in shared:
                    if copy == 1:
                        terms.append((c, theta(w, 1), t))
                    else:
                        g = comp_stable[cell_component[t]]
                        terms.append((c, word_mul(g, theta(w, 2)), t))
                else:
                    terms.append((c, theta(w, copy), t + suffix))
            boundaries[new] = tuple(terms)

    out = ScxDocument(gens=tuple(gens), relators=tuple(relators),
                      cells=tuple(cells), boundaries=boundaries)
    phi_values = {g: 0 for g in gens}
    for name, side in stable_letters:
        phi_values[name] = 1 if side == "R-" else 0
    phi = CohomologyClass(phi_values)
    out.phis["dual"] = dict(phi_values)
    out.metas["name"] = sc.doc.metas.get("name", "complex") + "_double"
    out.metas["witnesses"] = "double of a sutured complex along R- and R+"
    out.metas["manifold3"] = "0"
    dm = out.complex()
    chi = dm.euler_characteristic()
    expected = (2 * cx.euler_characteristic()
                - sc.chi_of("R-") - sc.chi_of("R+"))
    if chi != 0 or expected != 0:
        raise SuturedError(f"double has chi = {chi} (expected {expected} = 0);"
                           " inconsistent input")
    if not phi.is_cocycle(dm.group):
        raise SuturedError("dual class fails to be a cocycle")
    dm.abelian_boundary_check()
    retraction = {g + "!1": g for g in group.gens}
    retraction.update({g + "!2": g for g in group.gens})
    retraction.update({name: "1" for name, _ in stable_letters})
    return DoubleResult(out, phi, retraction)


def _check_zero_holonomy_tree(cx, comp, side):
    verts = [c for c in comp if cx.dim_of(c) == 0]
    edges = [c for c in comp if cx.dim_of(c) == 1]
    if not verts:
        raise PreconditionError(f"{side} component {comp} has no vertices")
    reached = {verts[0]}
    frontier = [verts[0]]
    while frontier:
        nxt = []
        for v in frontier:
            for e in edges:
                if cx.edge_holonomy(e):
                    continue
                head, _, tail, _ = cx.edge_ends(e)
                for a, b in ((head, tail), (tail, head)):
                    if a == v and b not in reached:
                        reached.add(b)
                        nxt.append(b)
        frontier = nxt
    if set(verts) - reached:
        raise PreconditionError(
            f"{side} component has no spanning tree of zero-holonomy edges;"
            " rebase the complex before doubling")
