"""Twisted orders over F[t^±1]: Alexander-type polynomials of a complex with
an integer cohomology class, degree bookkeeping, the norm lower bound and the
determinant-form cross-check.

All orders are canonicalized up to units: lowest exponent 0 and monic top
coefficient.  The degree of the zero polynomial is undefined and surfaced as
None, never as arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (LaurentPoly, LaurentRing, Matrix, det_poly,
                      pid_homology_order, poly_to_str)
from .chain import CellMap, betti, induced_map, specialize
from .groups import Representation, eval_word, make_representation
from .sutured import CohomologyClass


class AlexError(Exception):
    pass


@dataclass(frozen=True)
class AlexOrder:
    i: int
    poly: LaurentPoly
    ring: LaurentRing

    @property
    def deg(self):
        """Highest minus lowest exponent; None (undefined) for the zero poly."""
        return self.poly.degree_span()

    def poly_str(self) -> str:
        return poly_to_str(self.ring, self.poly)

    def __str__(self):
        d = "undefined" if self.deg is None else self.deg
        return f"Delta_{self.i} = {self.poly_str()}   (deg {d})"


def laurent_twist(rep: Representation, phi: CohomologyClass) -> Representation:
    """g -> t^{phi(g)} * rho(g), a representation over F[t^±1]."""
    ring = LaurentRing(rep.dom)
    pres = rep.pres
    mats = []
    invs = []
    for idx, gname in enumerate(pres.gens):
        w = phi.values.get(gname, 0)
        mats.append(rep.mats[idx].map_entries(
            ring, lambda c, w=w: ring.monomial(c, w)))
        invs.append(rep.inv_mats[idx].map_entries(
            ring, lambda c, w=w: ring.monomial(c, -w)))
    return Representation(pres, rep.dim, ring, tuple(mats), tuple(invs),
                          rep.provenance, rep.unitary)


def twisted_alexander(cx, phi: CohomologyClass, rep: Representation,
                      i: int) -> AlexOrder:
    """Order of H_i of the complex twisted by t^phi * rho."""
    if not phi.is_cocycle(cx.group):
        raise AlexError("phi does not vanish on the relators")
    twist = laurent_twist(rep, phi)
    tc = specialize(cx, twist, None)
    order = pid_homology_order(tc.boundary_matrix(i + 1), tc.boundary_matrix(i))
    return AlexOrder(i, order, twist.dom)


@dataclass(frozen=True)
class ThurstonReport:
    orders: tuple
    bound: Fraction | None
    reason: str
    k: int

    def __str__(self):
        lines = [str(o) for o in self.orders]
        if self.bound is None:
            lines.append(f"no bound ({self.reason})")
        else:
            lines.append(f"norm lower bound: {self.bound}")
        return "\n".join(lines)


def thurston_bound(cx, phi: CohomologyClass, rep: Representation) -> ThurstonReport:
    """(deg D1 - deg D0 - deg D2)/k, floored at 0, as a norm lower bound.

    Requires all three orders nonzero; reports which one vanished otherwise.
    """
    orders = tuple(twisted_alexander(cx, phi, rep, i) for i in range(3))
    for o in orders:
        if o.poly.is_zero():
            return ThurstonReport(orders, None, f"Delta_{o.i} = 0", rep.dim)
    raw = Fraction(orders[1].deg - orders[0].deg - orders[2].deg, rep.dim)
    return ThurstonReport(orders, max(raw, Fraction(0)), "", rep.dim)


@dataclass(frozen=True)
class DetFormReport:
    applicable: bool
    match: bool | None
    reversed_match: bool | None
    det_side: LaurentPoly | None
    order_side: LaurentPoly | None
    ring: LaurentRing
    detail: str

    def __str__(self):
        if not self.applicable:
            return f"formula inapplicable: {self.detail}"
        det_s = poly_to_str(self.ring, self.det_side)
        ord_s = poly_to_str(self.ring, self.order_side)
        verdict = "match" if (self.match or self.reversed_match) else "MISMATCH"
        return (f"det(left - t*right) = {det_s}\n"
                f"twisted order        = {ord_s}\n{verdict}")


def det_form_check(w_cx, phi: CohomologyClass, rep_w: Representation,
                   cut: dict, i: int) -> DetFormReport:
    """Cross-check: det of (left - t*right) on H_i against the twisted order.

    `cut` carries the complex cut open along R- ("xminus"), the two inclusion
    cell maps ("iota_l", "iota_r") of the R- complex, and the generator words
    ("x_in_w") embedding the cut piece's group into the glued group.  The
    formula needs b_i of the two sides to agree; that is checked first.
    """
    xminus = cut["xminus"]
    iota_l: CellMap = cut["iota_l"]
    iota_r: CellMap = cut["iota_r"]
    rep_x = make_representation(
        xminus.group, [eval_word(rep_w, w) for w in cut["x_in_w"]],
        provenance=rep_w.provenance, unitary=rep_w.unitary)
    rep_r = make_representation(
        iota_l.source.group, [eval_word(rep_x, w) for w in iota_l.gen_words],
        provenance=rep_w.provenance, unitary=rep_w.unitary)
    b_r = betti(specialize(iota_l.source, rep_r, None))
    b_x = betti(specialize(xminus, rep_x, None))
    if b_r[i] != b_x[i]:
        return DetFormReport(False, None, None, None, None,
                             LaurentRing(rep_w.dom),
                             f"b_{i}(R-) = {b_r[i]} differs from"
                             f" b_{i}(X-) = {b_x[i]}")
    m_l = induced_map(xminus, iota_l, rep_x, i)
    m_r = induced_map(xminus, iota_r, rep_x, i)
    ring = LaurentRing(rep_x.dom)
    rows = [[ring.add(ring.monomial(m_l.rows[a][b], 0),
                      ring.monomial(rep_x.dom.neg(m_r.rows[a][b]), 1))
             for b in range(m_l.n)] for a in range(m_l.m)]
    det = det_poly(Matrix(ring, rows, m_l.m, m_l.n))
    det = ring.unit_canonical(det)
    order = twisted_alexander(w_cx, phi, rep_w, i)
    rev = _substitute_inverse(ring, order.poly)
    match = ring.eq(det, order.poly)
    rev_match = ring.eq(det, rev)
    return DetFormReport(True, match, rev_match, det, order.poly, ring,
                         "" if match or rev_match else "polynomials differ")


def _substitute_inverse(ring: LaurentRing, p: LaurentPoly) -> LaurentPoly:
    if p.is_zero():
        return p
    flipped = ring.poly(-p.high, tuple(reversed(p.coeffs)))
    return ring.unit_canonical(flipped)


@dataclass(frozen=True)
class DetabReport:
    size: int
    degree: int | None
    det_a_nonzero: bool
    det_b_nonzero: bool

    @property
    def equivalence_holds(self) -> bool:
        lhs = self.degree == self.size
        rhs = self.det_a_nonzero and self.det_b_nonzero
        return lhs == rhs

    def __str__(self):
        return (f"size {self.size}: deg det(A+tB) = {self.degree},"
                f" det A != 0: {self.det_a_nonzero},"
                f" det B != 0: {self.det_b_nonzero},"
                f" equivalence {'holds' if self.equivalence_holds else 'FAILS'}")


def detab_property(a: Matrix, b: Matrix) -> DetabReport:
    """deg det(A + tB) = s iff both A and B are nonsingular."""
    from .algebra import rank
    if a.m != a.n or b.m != b.n or a.m != b.m:
        raise AlexError("detab_property needs equal square matrices")
    s = a.m
    ring = LaurentRing(a.dom)
    rows = [[ring.add(ring.monomial(a.rows[i][j], 0),
                      ring.monomial(b.rows[i][j], 1))
             for j in range(s)] for i in range(s)]
    det = det_poly(Matrix(ring, rows, s, s))
    return DetabReport(s, det.degree_span(), rank(a) == s, rank(b) == s)
