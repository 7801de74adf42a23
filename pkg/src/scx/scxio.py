"""The SCX file format: line-oriented, diff-friendly, hand-authorable.

Grammar (one directive per line, `# ...` comments ignored):

    scx 1
    gen a b x ...
    rel <word>                      words like x*y^-1, the token 1 is identity
    cell <name> dim <0..3>
    bnd <name> = <int>*<word>*<cell> [+ <int>*<word>*<cell> ...]
    sub <Name> = cell1 cell2 ...
    meta phi <name> <gen>=<int> ...
    meta <key> <value...>

Documents round-trip: parse(serialize(doc)) == doc, and serialize emits a
canonical ordering.  Boundary terms are kept exactly as written (including
formally canceling pairs) since they carry incidence data.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .chain import EquivariantComplex
from .groups import GroupPresentation


class ParseError(Exception):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}" + (f", column {column})" if column else ")") \
            if line else ""
        super().__init__(message + where)


@dataclass
class ScxDocument:
    version: int = 1
    gens: tuple = ()
    relators: tuple = ()          # words over gens
    cells: tuple = ()             # (name, dim) in declaration order
    boundaries: dict = field(default_factory=dict)
    subs: dict = field(default_factory=dict)   # name -> tuple of cell names
    metas: dict = field(default_factory=dict)  # key -> string value
    phis: dict = field(default_factory=dict)   # name -> {gen: int}

    def presentation(self) -> GroupPresentation:
        return GroupPresentation(self.gens, self.relators)

    def complex(self) -> EquivariantComplex:
        """Build the equivariant complex, checking d^2 under abelianization.

        The group-ring identity d^2 = 0 is undecidable in general; the
        abelianized check here catches encoding errors cheaply, and every
        later specialization re-verifies d^2 under the representation used.
        """
        cells = {}
        for name, dim in self.cells:
            cells.setdefault(dim, []).append(name)
        cx = EquivariantComplex(self.presentation(), cells, self.boundaries)
        cx.abelian_boundary_check()
        return cx

    def meta_flag(self, key: str) -> bool:
        return self.metas.get(key, "0").strip() not in ("0", "", "false", "no")

    def meta_int(self, key: str, default=None):
        if key not in self.metas:
            return default
        return int(self.metas[key])

    def __eq__(self, other):
        if not isinstance(other, ScxDocument):
            return NotImplemented
        return (self.version, self.gens, self.relators, self.cells,
                self.boundaries, self.subs, self.metas, self.phis) == \
               (other.version, other.gens, other.relators, other.cells,
                other.boundaries, other.subs, other.metas, other.phis)


def parse_scx(text: str) -> ScxDocument:
    doc = ScxDocument()
    gens: list = []
    relator_texts: list = []
    cells: list = []
    cellnames: set = set()
    bnd_texts: list = []
    sub_texts: list = []
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "scx":
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError("bad header, expected 'scx 1'", lineno)
            doc.version = int(tokens[1])
            saw_header = True
        elif not saw_header:
            raise ParseError("missing 'scx 1' header line", lineno)
        elif kind == "gen":
            for name in tokens[1:]:
                if name in gens:
                    raise ParseError(f"duplicate generator {name!r}", lineno,
                                     raw.find(name) + 1)
                gens.append(name)
        elif kind == "rel":
            if len(tokens) != 2:
                raise ParseError("rel takes exactly one word", lineno)
            relator_texts.append((tokens[1], lineno))
        elif kind == "cell":
            if len(tokens) != 4 or tokens[2] != "dim":
                raise ParseError("expected 'cell <name> dim <0..3>'", lineno)
            name = tokens[1]
            if name in cellnames:
                raise ParseError(f"duplicate cell {name!r}", lineno)
            try:
                dim = int(tokens[3])
            except ValueError:
                raise ParseError("cell dimension must be an integer", lineno,
                                 raw.find(tokens[3]) + 1) from None
            if not 0 <= dim <= 3:
                raise ParseError(f"cell dimension {dim} outside 0..3", lineno)
            cellnames.add(name)
            cells.append((name, dim))
        elif kind == "bnd":
            if len(tokens) < 3 or tokens[2] != "=":
                raise ParseError("expected 'bnd <name> = <terms>'", lineno)
            bnd_texts.append((tokens[1], " ".join(tokens[3:]), lineno))
        elif kind == "sub":
            if len(tokens) < 3 or tokens[2] != "=":
                raise ParseError("expected 'sub <name> = cells...'", lineno)
            sub_texts.append((tokens[1], tuple(tokens[3:]), lineno))
        elif kind == "meta":
            if len(tokens) < 2:
                raise ParseError("meta needs a key", lineno)
            if tokens[1] == "phi":
                if len(tokens) < 3:
                    raise ParseError("meta phi needs a class name", lineno)
                values = {}
                for assign in tokens[3:]:
                    gname, eq, val = assign.partition("=")
                    if not eq:
                        raise ParseError(f"bad phi assignment {assign!r}",
                                         lineno, raw.find(assign) + 1)
                    try:
                        values[gname] = int(val)
                    except ValueError:
                        raise ParseError(f"phi value {val!r} is not an integer",
                                         lineno, raw.find(val) + 1) from None
                doc.phis[tokens[2]] = values
            else:
                doc.metas[tokens[1]] = " ".join(tokens[2:])
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno, 1)
    if not saw_header:
        raise ParseError("empty or truncated document: no 'scx' header", 1)
    doc.gens = tuple(gens)
    pres = GroupPresentation(doc.gens, ())
    relators = []
    for wtext, lineno in relator_texts:
        try:
            relators.append(pres.parse_word(wtext))
        except Exception as e:
            raise ParseError(f"bad relator word: {e}", lineno) from None
    doc.relators = tuple(relators)
    pres = doc.presentation()
    doc.cells = tuple(cells)
    dims = dict(cells)
    for name, terms_text, lineno in bnd_texts:
        if name not in cellnames:
            raise ParseError(f"boundary for undeclared cell {name!r}", lineno)
        terms = []
        for chunk in terms_text.split("+"):
            chunk = chunk.strip()
            if not chunk:
                raise ParseError("empty boundary term", lineno)
            pieces = chunk.split("*")
            if len(pieces) < 3:
                raise ParseError(f"boundary term {chunk!r} needs"
                                 " coeff*word*cell", lineno)
            try:
                coeff = int(pieces[0])
            except ValueError:
                raise ParseError(f"bad coefficient {pieces[0]!r}", lineno) from None
            target = pieces[-1]
            if target not in cellnames:
                raise ParseError(f"boundary term hits undeclared cell"
                                 f" {target!r}", lineno)
            if dims[target] != dims[name] - 1:
                raise ParseError(f"dimension mismatch: {name!r} (dim"
                                 f" {dims[name]}) hits {target!r} (dim"
                                 f" {dims[target]})", lineno)
            try:
                word = pres.parse_word("*".join(pieces[1:-1]))
            except Exception as e:
                raise ParseError(f"bad boundary word: {e}", lineno) from None
            terms.append((coeff, word, target))
        doc.boundaries[name] = tuple(terms)
    for name, members, lineno in sub_texts:
        for c in members:
            if c not in cellnames:
                raise ParseError(f"subcomplex {name!r} lists undeclared cell"
                                 f" {c!r}", lineno)
        doc.subs[name] = tuple(members)
    return doc


def serialize_scx(doc: ScxDocument) -> str:
    pres = doc.presentation()
    lines = [f"scx {doc.version}"]
    if doc.gens:
        lines.append("gen " + " ".join(doc.gens))
    for r in doc.relators:
        lines.append("rel " + pres.word_str(r))
    for name, dim in doc.cells:
        lines.append(f"cell {name} dim {dim}")
    for name, dim in doc.cells:
        if name in doc.boundaries:
            terms = " + ".join(f"{c}*{pres.word_str(w)}*{t}"
                               for c, w, t in doc.boundaries[name])
            lines.append(f"bnd {name} = {terms}")
    for name, members in doc.subs.items():
        lines.append(f"sub {name} = " + " ".join(members))
    for key, value in doc.metas.items():
        lines.append(f"meta {key} {value}".rstrip())
    for name, values in doc.phis.items():
        assigns = " ".join(f"{g}={v}" for g, v in values.items())
        lines.append(f"meta phi {name} {assigns}".rstrip())
    return "\n".join(lines) + "\n"


@dataclass
class RepDocument:
    """Parsed representation file: trivial / perm / matrix kinds."""

    kind: str
    dim: int = 1
    degree: int = 0
    field_tag: str = "q"
    perms: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    unitary_assertion: bool = False


def parse_rep(text: str) -> RepDocument:
    kind = None
    doc = None
    pending: dict = {}
    dim = None
    degree = None
    field_tag = "q"
    unitary = False
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split(None, 1)
        key = tokens[0]
        rest = tokens[1] if len(tokens) > 1 else ""
        if key == "rep":
            saw_header = True
        elif not saw_header:
            raise ParseError("missing 'rep 1' header", lineno)
        elif key == "kind":
            kind = rest.strip()
            if kind not in ("trivial", "perm", "matrix"):
                raise ParseError(f"unknown representation kind {kind!r}", lineno)
        elif key == "dim":
            dim = int(rest)
        elif key == "degree":
            degree = int(rest)
        elif key == "field":
            field_tag = rest.strip()
        elif key == "unitary":
            unitary = rest.strip() not in ("0", "false", "no")
        elif key == "gen":
            name, eq, value = rest.partition("=")
            if not eq:
                raise ParseError("expected 'gen <name> = ...'", lineno)
            pending[name.strip()] = (value.strip(), lineno)
        else:
            raise ParseError(f"unknown directive {key!r}", lineno)
    if kind is None:
        raise ParseError("representation file has no kind", 1)
    doc = RepDocument(kind=kind, field_tag=field_tag, unitary_assertion=unitary)
    if kind == "trivial":
        doc.dim = dim if dim is not None else 1
    elif kind == "perm":
        if degree is None:
            raise ParseError("perm representation needs a degree", 1)
        doc.degree = degree
        doc.perms = {name: value for name, (value, _) in pending.items()}
    else:
        if dim is None:
            raise ParseError("matrix representation needs dim", 1)
        doc.dim = dim
        for name, (value, lineno) in pending.items():
            rows = []
            for rowtext in value.split(";"):
                entries = rowtext.split()
                if len(entries) != dim:
                    raise ParseError(f"matrix row for {name!r} has"
                                     f" {len(entries)} entries, expected {dim}",
                                     lineno)
                rows.append(entries)
            if len(rows) != dim:
                raise ParseError(f"matrix for {name!r} has {len(rows)} rows,"
                                 f" expected {dim}", lineno)
            doc.matrices[name] = rows
    return doc
