"""Group presentations, words, finite quotient search and representations.

Words use Tietze convention: a word is a tuple of nonzero ints, +k for the
k-th generator (1-based) and -k for its inverse, freely reduced on
construction.  Permutations are tuples p with p[i] the image of i (0-based);
`perm_mul(a, b)` applies b first, matching matrix products under
`permutation_matrix`, so word evaluation is one consistent homomorphism
whether it lands in S_n or in GL(k).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import QQ, AlgebraError, Matrix, inverse


class GroupError(Exception):
    pass


class SizeLimitError(GroupError):
    pass


# ---------------------------------------------------------------------------
# words


def word_reduce(letters) -> tuple:
    out = []
    for k in letters:
        if k == 0:
            raise GroupError("zero letter in word")
        if out and out[-1] == -k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def word_mul(*words) -> tuple:
    return word_reduce(itertools.chain.from_iterable(words))


def word_inv(word) -> tuple:
    return tuple(-k for k in reversed(word))


def word_exponent_vector(word, ngens) -> tuple:
    v = [0] * ngens
    for k in word:
        v[abs(k) - 1] += 1 if k > 0 else -1
    return tuple(v)


@dataclass(frozen=True)
class GroupPresentation:
    """Finite presentation; relator words reference declared generators only."""

    gens: tuple
    relators: tuple

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise GroupError("duplicate generator names")
        for r in self.relators:
            for k in r:
                if not 1 <= abs(k) <= len(self.gens):
                    raise GroupError("relator uses undeclared generator")

    @property
    def ngens(self) -> int:
        return len(self.gens)

    def gen_index(self, name: str) -> int:
        try:
            return self.gens.index(name) + 1
        except ValueError:
            raise GroupError(f"unknown generator {name!r}") from None

    def parse_word(self, text: str) -> tuple:
        """Parse 'x*y^-1*x^2'; the token '1' is the identity.

        >>> GroupPresentation(("x", "y"), ()).parse_word("x*y^-1")
        (1, -2)
        """
        letters = []
        for tok in text.strip().split("*"):
            tok = tok.strip()
            if tok == "1" or tok == "":
                continue
            name, _, etext = tok.partition("^")
            e = int(etext) if etext else 1
            idx = self.gen_index(name)
            letters.extend([idx if e > 0 else -idx] * abs(e))
        return word_reduce(letters)

    def word_str(self, word) -> str:
        if not word:
            return "1"
        parts = []
        run_letter, run_count = word[0], 1
        for k in list(word[1:]) + [0]:
            if k == run_letter:
                run_count += 1
                continue
            name = self.gens[abs(run_letter) - 1]
            e = run_count if run_letter > 0 else -run_count
            parts.append(name if e == 1 else f"{name}^{e}")
            run_letter, run_count = k, 1
        return "*".join(parts)


# ---------------------------------------------------------------------------
# permutations


def perm_mul(a: tuple, b: tuple) -> tuple:
    """Composite permutation applying b first, then a."""
    return tuple(a[b[i]] for i in range(len(a)))


def perm_inv(a: tuple) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_identity(n: int) -> tuple:
    return tuple(range(n))


def perm_cycles_str(a: tuple) -> str:
    """1-based cycle notation with fixed points omitted; identity is '()'."""
    seen = [False] * len(a)
    cycles = []
    for i in range(len(a)):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        cycles.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(cycles) if cycles else "()"


def perm_from_cycles(text: str, n: int) -> tuple:
    """Parse cycle notation like '(1 2)(3 4)' or '(1,2)'; 1-based."""
    img = list(range(n))
    text = text.strip()
    if text in ("()", "", "id"):
        return tuple(img)
    depth = 0
    cur = []
    cycles = []
    for ch in text:
        if ch == "(":
            if depth:
                raise GroupError("nested parenthesis in permutation")
            depth, cur = 1, []
        elif ch == ")":
            depth = 0
            cycles.append(cur)
            cur = []
        elif depth:
            cur.append(ch)
        elif not ch.isspace():
            raise GroupError(f"bad permutation syntax {text!r}")
    for cyc in cycles:
        pts = [int(t) - 1 for t in "".join(cyc).replace(",", " ").split()]
        if any(not 0 <= p < n for p in pts) or len(set(pts)) != len(pts):
            raise GroupError(f"bad cycle in {text!r} for degree {n}")
        for i, p in enumerate(pts):
            img[p] = pts[(i + 1) % len(pts)]
    return tuple(img)


def eval_word_perm(images, word, n) -> tuple:
    out = perm_identity(n)
    for k in word:
        p = images[abs(k) - 1]
        out = perm_mul(out, p if k > 0 else perm_inv(p))
    return out


def perm_group_order(perms, cap=None) -> int:
    """Order of the subgroup generated by the given permutations."""
    if not perms:
        return 1
    n = len(perms[0])
    seen = {perm_identity(n)}
    frontier = [perm_identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for p in perms:
                h = perm_mul(p, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if cap is not None and len(seen) > cap:
                        raise SizeLimitError(f"subgroup order exceeds cap {cap}")
        frontier = nxt
    return len(seen)


def perm_group_elements(perms, n, cap=64) -> list:
    """Deterministically ordered element list of the generated subgroup."""
    seen = {perm_identity(n)}
    frontier = [perm_identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for p in perms:
                h = perm_mul(p, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    if len(seen) > cap:
                        raise SizeLimitError(f"regular representation dimension"
                                             f" would exceed {cap}")
        frontier = nxt
    return sorted(seen)


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class FiniteQuotient:
    """A homomorphism onto a permutation group, relators checked."""

    pres: GroupPresentation
    degree: int
    images: tuple
    transitive: bool
    image_order: int

    def describe(self) -> str:
        ims = " ".join(f"{g}={perm_cycles_str(p)}"
                       for g, p in zip(self.pres.gens, self.images))
        tag = "transitive" if self.transitive else "intransitive"
        return (f"degree={self.degree} order={self.image_order} {tag}"
                + (f" {ims}" if ims else ""))


def check_hom(pres: GroupPresentation, images) -> bool:
    """True iff every relator maps to the identity.

    Images may be permutations (tuples) or invertible Matrix objects, one per
    generator.
    """
    if len(images) != pres.ngens:
        raise GroupError("one image required per generator")
    if pres.ngens and isinstance(images[0], Matrix):
        k = images[0].m
        dom = images[0].dom
        ident = Matrix.identity(dom, k)
        invs = [inverse(m) for m in images]
        for r in pres.relators:
            acc = ident
            for letter in r:
                acc = acc * (images[letter - 1] if letter > 0 else invs[-letter - 1])
            if acc != ident:
                return False
        return True
    n = len(images[0]) if images else 1
    for r in pres.relators:
        if eval_word_perm(images, r, n) != perm_identity(n):
            return False
    return True


def _is_transitive(images, n) -> bool:
    reach = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for p in images:
                for y in (p[x], perm_inv(p)[x]):
                    if y not in reach:
                        reach.add(y)
                        nxt.append(y)
        frontier = nxt
    return len(reach) == n


def enumerate_quotients(pres: GroupPresentation, max_degree: int,
                        transitive_only: bool = False):
    """All homomorphisms to S_m for 2 <= m <= max_degree, lexicographically.

    Deterministic: degrees ascending, then lexicographic on the tuple of
    permutation tuples.  Backtracking prunes as soon as every generator of
    some relator is assigned and the relator fails.
    """
    if max_degree < 1:
        raise GroupError("max_degree must be >= 1")
    ngens = pres.ngens
    for n in range(2, max_degree + 1):
        perms = list(itertools.permutations(range(n)))
        relator_support = []
        for r in pres.relators:
            relator_support.append(max((abs(k) for k in r), default=0))
        assignment = [None] * ngens

        def extend(i):
            if i == ngens:
                tr = _is_transitive(assignment, n) if ngens else (n == 1)
                if transitive_only and not tr:
                    return
                order = perm_group_order(list(assignment)) if ngens else 1
                yield FiniteQuotient(pres, n, tuple(assignment), tr, order)
                return
            for p in perms:
                assignment[i] = p
                ok = True
                for r, sup in zip(pres.relators, relator_support):
                    if sup == i + 1:
                        if eval_word_perm(assignment, r, n) != perm_identity(n):
                            ok = False
                            break
                if ok:
                    yield from extend(i + 1)
            assignment[i] = None

        if ngens == 0:
            yield FiniteQuotient(pres, n, (), n == 1, 1)
        else:
            yield from extend(0)


# ---------------------------------------------------------------------------
# representations


@dataclass(frozen=True)
class Representation:
    """Generator matrices over an exact domain, relators verified at build."""

    pres: GroupPresentation
    dim: int
    dom: object
    mats: tuple
    inv_mats: tuple = field(repr=False, default=())
    provenance: str = "user-supplied"
    unitary: bool = False

    @property
    def field_name(self) -> str:
        return self.dom.name

    def gen_matrix(self, idx: int, sign: int) -> Matrix:
        return self.mats[idx - 1] if sign > 0 else self.inv_mats[idx - 1]

    def describe(self) -> str:
        return f"{self.provenance} k={self.dim} over {self.dom.name}"


def make_representation(pres, mats, provenance="user-supplied", unitary=False,
                        check=True) -> Representation:
    if len(mats) != pres.ngens:
        raise GroupError("one matrix required per generator")
    dim = mats[0].m if mats else 1
    dom = mats[0].dom if mats else QQ
    for m in mats:
        if m.m != dim or m.n != dim:
            raise GroupError("generator matrices must be square of equal size")
    try:
        invs = tuple(inverse(m) for m in mats)
    except AlgebraError as e:
        raise GroupError(f"generator matrix not invertible: {e}") from e
    rep = Representation(pres, dim, dom, tuple(mats), invs, provenance, unitary)
    if check and not check_hom(pres, list(mats)):
        raise GroupError("matrices do not satisfy the relators")
    return rep


def trivial_representation(pres, k=1, dom=QQ) -> Representation:
    ident = Matrix.identity(dom, k)
    return Representation(pres, k, dom, tuple(ident for _ in pres.gens),
                          tuple(ident for _ in pres.gens), "trivial", True)


def permutation_matrix(dom, perm) -> Matrix:
    n = len(perm)
    rows = [[dom.zero] * n for _ in range(n)]
    for j in range(n):
        rows[perm[j]][j] = dom.one
    return Matrix(dom, rows, n, n)


def permutation_representation(q: FiniteQuotient, dom=QQ) -> Representation:
    """k = degree; generators act by their image permutation matrices.

    Permutation matrices are orthogonal, hence unitary over C.
    """
    mats = tuple(permutation_matrix(dom, p) for p in q.images)
    invs = tuple(permutation_matrix(dom, perm_inv(p)) for p in q.images)
    return Representation(q.pres, q.degree, dom, mats, invs, "permutation", True)


def regular_representation(q: FiniteQuotient, dom=QQ, cap=64) -> Representation:
    """Left multiplication on a deterministically ordered copy of the image."""
    elements = perm_group_elements(list(q.images), q.degree, cap=cap)
    index = {g: i for i, g in enumerate(elements)}
    mats = []
    invs = []
    for p in q.images:
        action = tuple(index[perm_mul(p, g)] for g in elements)
        mats.append(permutation_matrix(dom, action))
        invs.append(permutation_matrix(dom, perm_inv(action)))
    return Representation(q.pres, len(elements), dom, tuple(mats), tuple(invs),
                          "regular-of-quotient", True)


def eval_word(rep: Representation, word) -> Matrix:
    """Product of generator matrices in word order; identity for ().

    >>> pres = GroupPresentation(("x",), ())
    >>> q = next(enumerate_quotients(pres, 2))   # x -> identity of S_2
    >>> eval_word(permutation_representation(q), (1, 1)).m
    2
    """
    acc = Matrix.identity(rep.dom, rep.dim)
    for k in word:
        if not 1 <= abs(k) <= rep.pres.ngens:
            raise GroupError("word uses unknown generator index")
        acc = acc * rep.gen_matrix(abs(k), 1 if k > 0 else -1)
    return acc


def dagger(rep: Representation) -> Representation:
    """The dual representation g -> (rep(g)^-1)^T."""
    mats = tuple(m.transpose() for m in rep.inv_mats)
    invs = tuple(m.transpose() for m in rep.mats)
    return Representation(rep.pres, rep.dim, rep.dom, mats, invs,
                          rep.provenance, rep.unitary)
