"""Equivariant chain complexes of finite CW pairs and their twisted homology.

Cells carry formal boundaries: integer-weighted (word, cell) terms encoding
the chosen lifts to the universal cover.  Specializing by a representation
turns each term (c, w, target) into the block c * rho(w); Betti numbers come
from exact rank computations.  Boundary terms are stored exactly as authored
(canceling pairs are not collapsed) because the incidence structure, not just
the chain value, drives connectivity, component and fundamental-group
bookkeeping.

d^2 = 0 cannot be decided at the group-ring level, so it is verified after
every specialization and once under the abelianization of the group at load
time (monomial arithmetic modulo the relator exponent lattice).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import Matrix, kernel_basis, rank, solve
from .groups import (GroupPresentation, Representation, eval_word, word_inv,
                     word_mul, word_exponent_vector)


class ChainError(Exception):
    pass


class SpecializeError(ChainError):
    pass


MAX_DIM = 3


@dataclass(frozen=True)
class SubcomplexRef:
    name: str
    cells: frozenset


class EquivariantComplex:
    """Finite free chain complex over the group ring of `group`, dims 0..3."""

    def __init__(self, group: GroupPresentation, cells, boundary):
        self.group = group
        self.cells = {d: tuple(cells.get(d, ())) for d in range(MAX_DIM + 1)}
        self.boundary = {name: tuple(terms) for name, terms in boundary.items()}
        self._dim = {}
        for d, names in self.cells.items():
            for name in names:
                if name in self._dim:
                    raise ChainError(f"duplicate cell {name!r}")
                self._dim[name] = d
        self._validate()

    def _validate(self):
        for name, terms in self.boundary.items():
            if name not in self._dim:
                raise ChainError(f"boundary given for unknown cell {name!r}")
            d = self._dim[name]
            if d == 0:
                raise ChainError(f"vertex {name!r} cannot have a boundary")
            for coeff, word, target in terms:
                if target not in self._dim:
                    raise ChainError(f"boundary of {name!r} hits unknown cell"
                                     f" {target!r}")
                if self._dim[target] != d - 1:
                    raise ChainError(f"boundary of {name!r} hits {target!r} of"
                                     f" dimension {self._dim[target]}, expected {d - 1}")
                for k in word:
                    if not 1 <= abs(k) <= self.group.ngens:
                        raise ChainError(f"boundary word of {name!r} uses an"
                                         " undeclared generator")
        for d in range(1, MAX_DIM + 1):
            for name in self.cells[d]:
                if name not in self.boundary:
                    raise ChainError(f"cell {name!r} of dimension {d} has no"
                                     " boundary line")
        for name in self.cells[1]:
            self.edge_ends(name)

    def dim_of(self, name: str) -> int:
        return self._dim[name]

    def all_cells(self):
        for d in range(MAX_DIM + 1):
            yield from self.cells[d]

    def euler_characteristic(self, exclude=frozenset()) -> int:
        return sum((-1) ** d * sum(1 for c in self.cells[d] if c not in exclude)
                   for d in range(MAX_DIM + 1))

    def edge_ends(self, name):
        """(head, w_head, tail, w_tail) of a 1-cell; head is the +1 term."""
        terms = self.boundary[name]
        if len(terms) != 2 or {terms[0][0], terms[1][0]} != {1, -1}:
            raise ChainError(f"1-cell {name!r} needs exactly one +1 and one -1"
                             " vertex term")
        plus = terms[0] if terms[0][0] == 1 else terms[1]
        minus = terms[1] if terms[0][0] == 1 else terms[0]
        return plus[2], plus[1], minus[2], minus[1]

    def edge_holonomy(self, name) -> tuple:
        head, wh, tail, wt = self.edge_ends(name)
        return word_mul(wh, word_inv(wt))

    def subcomplex(self, name, cells) -> SubcomplexRef:
        """Build a SubcomplexRef, enforcing closure under boundary."""
        cellset = frozenset(cells)
        for c in cellset:
            if c not in self._dim:
                raise ChainError(f"subcomplex {name!r} lists unknown cell {c!r}")
            for _, _, target in self.boundary.get(c, ()):
                if target not in cellset:
                    raise ChainError(f"subcomplex {name!r} is not boundary-closed:"
                                     f" {c!r} hits {target!r}")
        return SubcomplexRef(name, cellset)

    def skeleton_connected(self) -> bool:
        verts = list(self.cells[0])
        if not verts:
            return False
        parent = {v: v for v in verts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.cells[1]:
            head, _, tail, _ = self.edge_ends(e)
            parent[find(head)] = find(tail)
        return len({find(v) for v in verts}) == 1

    def components(self, cells) -> list:
        """Connected components of a cell set via boundary incidence."""
        cellset = set(cells)
        parent = {c: c for c in cellset}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in cellset:
            for _, _, target in self.boundary.get(c, ()):
                if target in cellset:
                    parent[find(c)] = find(target)
        groups = {}
        for c in sorted(cellset):
            groups.setdefault(find(c), []).append(c)
        return [sorted(v) for _, v in sorted(groups.items())]

    def pi1_generator_words(self, cells) -> list:
        """Loop holonomies generating the image of pi_1 of each component.

        Per component: spanning tree of the 1-cells by BFS from the least
        vertex; each non-tree 1-cell contributes
        path(base->tail) * g(e) * path(head->base).
        """
        cellset = set(cells)
        gens = []
        for comp in self.components(cells):
            verts = [c for c in comp if self._dim[c] == 0]
            edges = [c for c in comp if self._dim[c] == 1]
            if not verts:
                continue
            base = verts[0]
            path = {base: ()}
            frontier = [base]
            tree = set()
            while frontier:
                nxt = []
                for v in frontier:
                    for e in sorted(edges):
                        if e in tree:
                            continue
                        head, _, tail, _ = self.edge_ends(e)
                        g = self.edge_holonomy(e)
                        if tail == v and head not in path:
                            path[head] = word_mul(path[v], g)
                            tree.add(e)
                            nxt.append(head)
                        elif head == v and tail not in path:
                            path[tail] = word_mul(path[v], word_inv(g))
                            tree.add(e)
                            nxt.append(tail)
                frontier = nxt
            for e in sorted(edges):
                if e in tree:
                    continue
                head, _, tail, _ = self.edge_ends(e)
                if tail not in path or head not in path:
                    raise ChainError(f"1-cell {e!r} dangles outside its component")
                w = word_mul(path[tail], self.edge_holonomy(e), word_inv(path[head]))
                if w:
                    gens.append(w)
        return gens

    # -- abelianized d^2 check ------------------------------------------------

    def abelian_boundary_check(self):
        """Verify d^2 = 0 under the abelianization of the group."""
        lattice = _hnf([list(word_exponent_vector(r, self.group.ngens))
                        for r in self.group.relators])
        ngens = self.group.ngens

        def mono(word):
            return _ab_reduce(list(word_exponent_vector(word, ngens)), lattice)

        layers = {}
        for d in range(1, MAX_DIM + 1):
            idx = {c: i for i, c in enumerate(self.cells[d - 1])}
            layer = {}
            for j, cell in enumerate(self.cells[d]):
                for coeff, word, target in self.boundary[cell]:
                    key = (idx[target], j)
                    entry = layer.setdefault(key, {})
                    m = mono(word)
                    entry[m] = entry.get(m, 0) + coeff
                    if entry[m] == 0:
                        del entry[m]
            layers[d] = layer
        for d in range(2, MAX_DIM + 1):
            lo, hi = layers[d - 1], layers[d]
            prod = {}
            for (i, t1), p1 in lo.items():
                for (t2, j), p2 in hi.items():
                    if t1 != t2:
                        continue
                    entry = prod.setdefault((i, j), {})
                    for m1, c1 in p1.items():
                        for m2, c2 in p2.items():
                            m = _ab_reduce([a + b for a, b in zip(m1, m2)], lattice)
                            entry[m] = entry.get(m, 0) + c1 * c2
                            if entry[m] == 0:
                                del entry[m]
            for key, entry in prod.items():
                if entry:
                    raise ChainError(f"d^2 != 0 under abelianization at degree"
                                     f" {d}, block {key}")


def _hnf(rows):
    """Row Hermite-style echelon over Z (positive pivots), for lattice reduction."""
    rows = [r[:] for r in rows if any(r)]
    out = []
    col = 0
    width = len(rows[0]) if rows else 0
    while rows and col < width:
        cands = [r for r in rows if r[col] != 0]
        if not cands:
            col += 1
            continue
        piv = min(cands, key=lambda r: abs(r[col]))
        rows.remove(piv)
        if piv[col] < 0:
            piv = [-x for x in piv]
        done = []
        for r in rows:
            if r[col] != 0:
                q = r[col] // piv[col]
                r = [a - q * b for a, b in zip(r, piv)]
            done.append(r)
        rows = [r for r in done if any(r)]
        if any(r[col] != 0 for r in rows):
            rows.append(piv)
            continue
        out.append(piv)
        col += 1
    return out


def _ab_reduce(vec, lattice):
    for row in lattice:
        c = next(i for i, x in enumerate(row) if x != 0)
        if vec[c] != 0:
            q = vec[c] // row[c]
            vec = [a - q * b for a, b in zip(vec, row)]
    return tuple(vec)


# ---------------------------------------------------------------------------
# specialization


@dataclass(frozen=True)
class TwistedComplex:
    dom: object
    k: int
    cells: dict
    mats: dict = field(repr=False)
    label: str = ""

    def n_cells(self, d) -> int:
        return len(self.cells.get(d, ()))

    def boundary_matrix(self, d) -> Matrix:
        if d in self.mats:
            return self.mats[d]
        if d <= 0:
            return Matrix.zeros(self.dom, 0, self.k * self.n_cells(0))
        return Matrix.zeros(self.dom, self.k * self.n_cells(MAX_DIM), 0)


@dataclass(frozen=True)
class BettiVector:
    b: tuple
    k: int
    field_name: str

    def __iter__(self):
        return iter(self.b)

    def __getitem__(self, i):
        return self.b[i]

    def __str__(self):
        return "(" + ", ".join(str(x) for x in self.b) + ")"


class _RepEvaluator:
    """Caches word evaluations of a representation-like object."""

    def __init__(self, rep):
        self.rep = rep
        self.cache = {}

    def __call__(self, word) -> Matrix:
        if word not in self.cache:
            self.cache[word] = eval_word(self.rep, word)
        return self.cache[word]


def specialize(cx: EquivariantComplex, rep: Representation,
               rel=None, check=True) -> TwistedComplex:
    """Twisted (relative) chain complex of (cx, rel) under rep.

    Rows and columns of cells inside `rel` are deleted; each boundary term
    (c, w, target) contributes the block c * rho(w).  Verifies that
    consecutive boundary matrices compose to zero.
    """
    if rep.pres is not cx.group and rep.pres.gens != cx.group.gens:
        raise SpecializeError("representation group does not match the complex")
    excluded = _cellset(rel)
    dom, k = rep.dom, rep.dim
    ev = _RepEvaluator(rep)
    cells = {d: tuple(c for c in cx.cells[d] if c not in excluded)
             for d in range(MAX_DIM + 1)}
    mats = {}
    for d in range(1, MAX_DIM + 1):
        rows_cells = cells[d - 1]
        cols_cells = cells[d]
        idx = {c: i for i, c in enumerate(rows_cells)}
        mat = [[dom.zero] * (k * len(cols_cells))
               for _ in range(k * len(rows_cells))]
        for j, cell in enumerate(cols_cells):
            for coeff, word, target in cx.boundary[cell]:
                if target in excluded:
                    continue
                block = ev(word)
                i0 = idx[target] * k
                j0 = j * k
                for a in range(k):
                    for b in range(k):
                        v = block.rows[a][b]
                        if not dom.is_zero(v):
                            if coeff != 1:
                                v = dom.mul(dom.of(coeff), v)
                            mat[i0 + a][j0 + b] = dom.add(mat[i0 + a][j0 + b], v)
        mats[d] = Matrix(dom, mat, k * len(rows_cells), k * len(cols_cells))
    tc = TwistedComplex(dom, k, cells, mats, label=rel.name if rel else "")
    if check:
        for d in range(2, MAX_DIM + 1):
            prod = tc.boundary_matrix(d - 1) * tc.boundary_matrix(d)
            if not prod.is_zero_matrix():
                raise SpecializeError(f"d^2 != 0 under {rep.describe()} at"
                                      f" degree {d}: ill-formed input data")
    return tc


def _cellset(rel):
    if rel is None:
        return frozenset()
    if isinstance(rel, SubcomplexRef):
        return rel.cells
    return frozenset(rel)


def betti(tc: TwistedComplex) -> BettiVector:
    ranks = {d: rank(tc.boundary_matrix(d)) for d in range(MAX_DIM + 2)}
    bs = tuple(tc.k * tc.n_cells(d) - ranks[d] - ranks[d + 1]
               for d in range(MAX_DIM + 1))
    chi_cells = sum((-1) ** d * tc.n_cells(d) for d in range(MAX_DIM + 1))
    total = sum((-1) ** d * bs[d] for d in range(MAX_DIM + 1))
    assert total == tc.k * chi_cells
    return BettiVector(bs, tc.k, tc.dom.name)


def betti_numbers(cx, rep, rel=None) -> BettiVector:
    return betti(specialize(cx, rep, rel))


# ---------------------------------------------------------------------------
# the standard checks


@dataclass(frozen=True)
class CheckReport:
    name: str
    ok: bool
    details: dict

    def __str__(self):
        body = ", ".join(f"{k}={v}" for k, v in self.details.items())
        return f"{self.name}: {'ok' if self.ok else 'FAILED'} ({body})"


def euler_check(cx, rel, rep) -> CheckReport:
    """Alternating Betti sum against k times the cell-count Euler number."""
    excluded = _cellset(rel)
    bv = betti(specialize(cx, rep, rel))
    chi = cx.euler_characteristic(excluded)
    twisted = sum((-1) ** i * bv[i] for i in range(MAX_DIM + 1))
    return CheckReport("euler", twisted == rep.dim * chi,
                       {"twisted_chi": twisted, "k_chi": rep.dim * chi})


def h0_vanishing_check(cx, rel, rep, manifold3=False) -> CheckReport:
    """b_0 of a pair with nonempty subcomplex vanishes; b_3 too on 3-manifold
    pairs along a proper nontrivial boundary piece."""
    cells = _cellset(rel)
    if not cells:
        raise ChainError("h0 check needs a nonempty subcomplex")
    if not cx.skeleton_connected():
        raise ChainError("h0 check needs a connected 1-skeleton")
    bv = betti(specialize(cx, rep, rel))
    details = {"b0": bv[0]}
    ok = bv[0] == 0
    proper = 0 < len(cells) < sum(len(cx.cells[d]) for d in range(MAX_DIM + 1))
    if manifold3 and proper:
        details["b3"] = bv[3]
        ok = ok and bv[3] == 0
    return CheckReport("h0-vanishing", ok, details)


def duality_check(cx, y1, y2, rep) -> CheckReport:
    """b_{3-i} of (X, Y1) under rep against b_i of (X, Y2) under its dual.

    The caller asserts that (cx, y1, y2) models a compact oriented 3-manifold
    with boundary split along Y1 and Y2; that cannot be verified here.
    """
    from .groups import dagger as _dagger
    b_one = betti(specialize(cx, rep, y1))
    b_two = betti(specialize(cx, _dagger(rep), y2))
    pairs = [(b_one[MAX_DIM - i], b_two[i]) for i in range(MAX_DIM + 1)]
    return CheckReport("duality", all(a == b for a, b in pairs),
                       {"pairs": pairs,
                        "b_pair1": b_one.b, "b_pair2_dagger": b_two.b})


def les_check(cx, rel, rep) -> CheckReport:
    """Dimension checks for the long exact sequence of the pair (X, Y).

    Computes b(Y), b(X), b(X, Y) plus the ranks of the three induced map
    families and verifies exactness at every node, along with the alternating
    sum identity.
    """
    if not isinstance(rel, SubcomplexRef):
        raise ChainError("les_check needs a SubcomplexRef")
    full = specialize(cx, rep, None)
    sub = _restrict(cx, full, rel)
    quo = specialize(cx, rep, rel)
    bY, bX, bXY = betti(sub), betti(full), betti(quo)
    k = rep.dim
    y_cols = _embedding_positions(cx, rel, k)
    incl_rank = {}
    j_rank = {}
    conn_rank = {}
    for d in range(MAX_DIM + 1):
        ZY = kernel_basis(sub.boundary_matrix(d))
        ZX = kernel_basis(full.boundary_matrix(d))
        BX = full.boundary_matrix(d + 1)
        BXY = quo.boundary_matrix(d + 1)
        BY = sub.boundary_matrix(d + 1)
        embedded = _embed_columns(ZY, y_cols[d], full.k * full.n_cells(d))
        incl_rank[d] = _rank_mod(embedded, BX)
        projected = _project_rows(ZX, y_cols[d], full.k * full.n_cells(d))
        j_rank[d] = _rank_mod(projected, BXY)
        Krel = kernel_basis(quo.boundary_matrix(d))
        lifted = _embed_columns(Krel, _complement(y_cols[d], full.k * full.n_cells(d)),
                                full.k * full.n_cells(d))
        dK = full.boundary_matrix(d) * lifted if d >= 1 else \
            Matrix.zeros(full.dom, 0, lifted.n)
        restricted = dK.row_subset(y_cols[d - 1]) if d >= 1 else \
            Matrix.zeros(full.dom, 0, lifted.n)
        conn_rank[d] = _rank_mod(restricted, sub.boundary_matrix(d)) if d >= 1 else 0
    conn_rank[MAX_DIM + 1] = 0
    node_ok = True
    for d in range(MAX_DIM + 1):
        node_ok &= bY[d] == incl_rank[d] + conn_rank[d + 1]
        node_ok &= bX[d] == incl_rank[d] + j_rank[d]
        node_ok &= bXY[d] == j_rank[d] + conn_rank[d]
    alt = sum((-1) ** d * (bY[d] - bX[d] + bXY[d]) for d in range(MAX_DIM + 1))
    return CheckReport("long-exact-sequence", node_ok and alt == 0,
                       {"b_sub": bY.b, "b_total": bX.b, "b_pair": bXY.b,
                        "alt_sum": alt,
                        "incl_ranks": tuple(incl_rank[d] for d in range(4)),
                        "quot_ranks": tuple(j_rank[d] for d in range(4)),
                        "conn_ranks": tuple(conn_rank[d] for d in range(4))})


def _restrict(cx, full: TwistedComplex, rel: SubcomplexRef) -> TwistedComplex:
    """The subcomplex with induced boundaries, as a standalone complex."""
    k = full.k
    cells = {d: tuple(c for c in cx.cells[d] if c in rel.cells)
             for d in range(MAX_DIM + 1)}
    mats = {}
    for d in range(1, MAX_DIM + 1):
        rows = _positions(cx.cells[d - 1], cells[d - 1], k)
        cols = _positions(cx.cells[d], cells[d], k)
        mats[d] = full.boundary_matrix(d).row_subset(rows).columns(cols)
    return TwistedComplex(full.dom, k, cells, mats, label=rel.name)


def _positions(all_cells, keep, k):
    kept = set(keep)
    out = []
    for i, c in enumerate(all_cells):
        if c in kept:
            out.extend(range(i * k, (i + 1) * k))
    return out


def _embedding_positions(cx, rel, k):
    return {d: _positions(cx.cells[d], [c for c in cx.cells[d] if c in rel.cells], k)
            for d in range(MAX_DIM + 1)}


def _complement(positions, total):
    inside = set(positions)
    return [i for i in range(total) if i not in inside]


def _embed_columns(mat: Matrix, positions, total) -> Matrix:
    dom = mat.dom
    rows = [[dom.zero] * mat.n for _ in range(total)]
    for r, pos in enumerate(positions):
        rows[pos] = mat.rows[r][:]
    return Matrix(dom, rows, total, mat.n)


def _project_rows(mat: Matrix, positions, total) -> Matrix:
    keep = [i for i in range(total) if i not in set(positions)]
    return mat.row_subset(keep)


def _rank_mod(span: Matrix, modulo: Matrix) -> int:
    """dim of (span + im(modulo)) / im(modulo)."""
    if span.n == 0:
        return 0
    base = rank(modulo)
    return rank(modulo.hstack(span)) - base


# ---------------------------------------------------------------------------
# induced maps on homology


@dataclass(frozen=True)
class CellMap:
    """Chain-level map between complexes: a word homomorphism plus per-cell
    images with rebasing words."""

    source: EquivariantComplex
    target: EquivariantComplex
    gen_words: tuple
    cell_images: dict

    def map_word(self, word) -> tuple:
        out = ()
        for kk in word:
            w = self.gen_words[abs(kk) - 1]
            out = word_mul(out, w if kk > 0 else word_inv(w))
        return out


def pullback_representation(cmap: CellMap, rep: Representation) -> Representation:
    from .groups import make_representation
    mats = [eval_word(rep, w) for w in cmap.gen_words]
    return make_representation(cmap.source.group, mats,
                               provenance=rep.provenance, unitary=rep.unitary)


def _homology_basis(tc: TwistedComplex, d):
    """(representatives, boundary, chosen) for H_d in canonical bases."""
    K = kernel_basis(tc.boundary_matrix(d))
    B = tc.boundary_matrix(d + 1)
    chosen = []
    current = B
    cur_rank = rank(B)
    for j in range(K.n):
        cand = current.hstack(K.columns([j]))
        r = rank(cand)
        if r > cur_rank:
            current, cur_rank = cand, r
            chosen.append(j)
    return K.columns(chosen), B


def _homology_coords(B: Matrix, reps: Matrix, vectors: Matrix) -> Matrix:
    kmat = B.hstack(reps)
    sol = solve(kmat, vectors)
    if sol is None:
        raise ChainError("vector does not represent a homology class")
    return sol.row_subset(list(range(B.n, B.n + reps.n)))


def induced_map(cx, source, rep, degree) -> Matrix:
    """Matrix of the map induced on twisted homology in the given degree.

    `source` is a SubcomplexRef of cx (literal inclusion) or a CellMap into
    cx.  Bases are the canonical echelon kernel/quotient bases, so the
    resulting matrix is reproducible; it depends on the rebasing words frozen
    in the data, while its rank does not.
    """
    full = specialize(cx, rep, None)
    if isinstance(source, SubcomplexRef):
        sub = _restrict(cx, full, source)
        positions = _embedding_positions(cx, source, rep.dim)[degree]
        T = _embedding_matrix(full.dom, positions, full.k * full.n_cells(degree))
        src = sub
    elif isinstance(source, CellMap):
        if source.target is not cx:
            raise ChainError("cell map target mismatch")
        src_rep = pullback_representation(source, rep)
        src = specialize(source.source, src_rep, None)
        T_by_deg = {d: _cellmap_matrix(source, src, full, rep, d)
                    for d in range(MAX_DIM + 1)}
        for d in range(1, MAX_DIM + 1):
            lhs = full.boundary_matrix(d) * T_by_deg[d]
            rhs = T_by_deg[d - 1] * src.boundary_matrix(d)
            if not (lhs - rhs).is_zero_matrix():
                raise ChainError("cell map is not chain-level compatible under"
                                 " this representation")
        T = T_by_deg[degree]
    else:
        raise ChainError("source must be a SubcomplexRef or CellMap")
    src_reps, _ = _homology_basis(src, degree)
    tgt_reps, tgt_B = _homology_basis(full, degree)
    pushed = T * src_reps
    return _homology_coords(tgt_B, tgt_reps, pushed)


def _embedding_matrix(dom, positions, total) -> Matrix:
    rows = [[dom.zero] * len(positions) for _ in range(total)]
    for j, pos in enumerate(positions):
        rows[pos][j] = dom.one
    return Matrix(dom, rows, total, len(positions))


def _cellmap_matrix(cmap: CellMap, src: TwistedComplex, tgt: TwistedComplex,
                    rep, d) -> Matrix:
    dom, k = rep.dom, rep.dim
    ev = _RepEvaluator(rep)
    tgt_idx = {c: i for i, c in enumerate(tgt.cells[d])}
    mat = [[dom.zero] * (k * src.n_cells(d)) for _ in range(k * tgt.n_cells(d))]
    for j, cell in enumerate(src.cells[d]):
        for coeff, word, target in cmap.cell_images.get(cell, ()):
            block = ev(word)
            i0 = tgt_idx[target] * k
            for a in range(k):
                for b in range(k):
                    v = block.rows[a][b]
                    if not dom.is_zero(v):
                        if coeff != 1:
                            v = dom.mul(dom.of(coeff), v)
                        mat[i0 + a][j * k + b] = dom.add(mat[i0 + a][j * k + b], v)
    return Matrix(dom, mat, k * tgt.n_cells(d), k * src.n_cells(d))


# ---------------------------------------------------------------------------
# untwisted integer homology (sanity oracle)


def integer_boundary_matrix(cx, d, rel=None):
    """Integer boundary matrix of the (relative) complex, words sent to 1."""
    excluded = _cellset(rel)
    rows_cells = [c for c in cx.cells[d - 1] if c not in excluded]
    cols_cells = [c for c in cx.cells[d] if c not in excluded]
    idx = {c: i for i, c in enumerate(rows_cells)}
    mat = [[0] * len(cols_cells) for _ in range(len(rows_cells))]
    for j, cell in enumerate(cols_cells):
        for coeff, word, target in cx.boundary[cell]:
            if target not in excluded:
                mat[idx[target]][j] += coeff
    return mat


def untwisted_homology(cx, rel=None) -> list:
    """[(free rank, torsion divisors)] for degrees 0..3 over Z."""
    from .algebra import QQ, snf_integers
    out = []
    excluded = _cellset(rel)
    counts = [sum(1 for c in cx.cells[d] if c not in excluded)
              for d in range(MAX_DIM + 1)]
    mats = {d: integer_boundary_matrix(cx, d, rel) for d in range(1, MAX_DIM + 1)}

    def matrank(d):
        if not (1 <= d <= MAX_DIM) or counts[d] == 0 or counts[d - 1] == 0:
            return 0
        return rank(Matrix.from_rows(QQ, mats[d]))

    for d in range(MAX_DIM + 1):
        free = counts[d] - matrank(d) - matrank(d + 1)
        torsion = ()
        if d < MAX_DIM and counts[d + 1] and counts[d]:
            divisors = snf_integers(mats[d + 1])
            torsion = tuple(x for x in divisors if x not in (0, 1))
        out.append((free, torsion))
    return out
