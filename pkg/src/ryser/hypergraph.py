"""Finite partite hypergraphs with mixed edge sizes, predicates, degree
statistics, and the line-oriented .rhg file format.

Vertices are (side, pos) pairs.  Edges are stored as sorted vertex
tuples plus a parallel bitmask over the side-major global numbering, so
intersection tests are single AND operations.  Instances are immutable
after construction; every construction path re-validates partiteness,
duplicate-freeness and the edge-size profile (all one size, or two
consecutive sizes).
"""

import os
import tempfile
from collections import Counter
from dataclasses import dataclass

from .errors import (
    DuplicateEdgeError,
    EmptyHypergraphError,
    ParseError,
    PartitenessError,
    UniformityError,
)

Vid = tuple  # (side, pos)


def vid_str(v) -> str:
    return f"{v[0]}.{v[1]}"


def parse_vid(token: str) -> Vid:
    side, _, pos = token.partition(".")
    return (int(side), int(pos))


class PartiteHypergraph:
    """Sided vertex set plus an ordered list of edges.

    Equality covers sides, edge order and edge labels; the name is
    display metadata only.
    """

    __slots__ = ("sides", "edges", "edge_labels", "name", "_masks", "_offsets", "_edge_sets")

    def __init__(self, sides, edges, edge_labels=None, name=""):
        self.sides = tuple(tuple(str(x) for x in side) for side in sides)
        k = len(self.sides)
        canon = []
        seen = set()
        for e in edges:
            vs = tuple(sorted((int(s), int(p)) for s, p in e))
            if not vs:
                raise UniformityError("empty edge")
            used = set()
            for s, p in vs:
                if not (0 <= s < k) or not (0 <= p < len(self.sides[s])):
                    raise ValueError(f"vertex {s}.{p} out of range")
                if s in used:
                    raise PartitenessError(f"edge {vs} has two vertices in side {s}")
                used.add(s)
            fs = frozenset(vs)
            if fs in seen:
                raise DuplicateEdgeError(f"duplicate edge {vs}")
            seen.add(fs)
            canon.append(vs)
        self.edges = tuple(canon)
        sizes = {len(e) for e in self.edges}
        if len(sizes) > 1 and (len(sizes) > 2 or max(sizes) - min(sizes) != 1):
            raise UniformityError(f"edge sizes {sorted(sizes)} are not one size or two consecutive sizes")
        if edge_labels is None:
            self.edge_labels = (None,) * len(self.edges)
        else:
            labels = tuple(None if l is None else str(l) for l in edge_labels)
            if len(labels) != len(self.edges):
                raise ValueError("edge_labels length mismatch")
            self.edge_labels = labels
        self.name = name
        self._masks = None
        self._offsets = None
        self._edge_sets = None

    # --- structure ---

    @property
    def num_sides(self) -> int:
        return len(self.sides)

    @property
    def side_sizes(self):
        return tuple(len(s) for s in self.sides)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_vertices(self) -> int:
        return sum(len(s) for s in self.sides)

    @property
    def offsets(self):
        if self._offsets is None:
            off = [0]
            for s in self.sides:
                off.append(off[-1] + len(s))
            self._offsets = tuple(off)
        return self._offsets

    def gid(self, v) -> int:
        return self.offsets[v[0]] + v[1]

    def vid(self, gid: int) -> Vid:
        off = self.offsets
        for s in range(self.num_sides):
            if gid < off[s + 1]:
                return (s, gid - off[s])
        raise ValueError(f"gid {gid} out of range")

    def vertices(self):
        for s, side in enumerate(self.sides):
            for p in range(len(side)):
                yield (s, p)

    @property
    def edge_masks(self):
        if self._masks is None:
            off = self.offsets
            self._masks = tuple(
                sum(1 << (off[s] + p) for s, p in e) for e in self.edges
            )
        return self._masks

    @property
    def edge_sets(self):
        if self._edge_sets is None:
            self._edge_sets = tuple(frozenset(e) for e in self.edges)
        return self._edge_sets

    @property
    def uniformity(self):
        """Common edge size, or None if edge sizes are mixed/absent."""
        sizes = {len(e) for e in self.edges}
        return sizes.pop() if len(sizes) == 1 else None

    def vertex_label(self, v) -> str:
        return self.sides[v[0]][v[1]]

    # --- derived copies ---

    def without_edge(self, index: int) -> "PartiteHypergraph":
        edges = self.edges[:index] + self.edges[index + 1:]
        labels = self.edge_labels[:index] + self.edge_labels[index + 1:]
        return PartiteHypergraph(self.sides, edges, labels, name=self.name)

    def with_edge(self, vertices, label=None) -> "PartiteHypergraph":
        return PartiteHypergraph(
            self.sides,
            self.edges + (tuple(vertices),),
            self.edge_labels + (label,),
            name=self.name,
        )

    # --- comparisons ---

    def __eq__(self, other):
        return (
            isinstance(other, PartiteHypergraph)
            and self.sides == other.sides
            and self.edges == other.edges
            and self.edge_labels == other.edge_labels
        )

    def __hash__(self):
        return hash((self.sides, self.edges, self.edge_labels))

    def __repr__(self):
        return (
            f"PartiteHypergraph({self.name or 'unnamed'}: "
            f"{self.num_sides} sides, {self.num_edges} edges)"
        )


# --- predicates & statistics ---


def is_intersecting(h: PartiteHypergraph):
    """(True, None) if every pair of edges shares a vertex, else
    (False, (i, j)) with a disjoint witness pair."""
    if h.num_edges == 0:
        raise EmptyHypergraphError("intersecting is undefined without edges")
    masks = h.edge_masks
    m = len(masks)
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            if not mi & masks[j]:
                return False, (i, j)
    return True, None


def intersection_size_profile(h: PartiteHypergraph) -> Counter:
    """Multiset of |e_i ∩ e_j| over all unordered edge pairs."""
    masks = h.edge_masks
    m = len(masks)
    out = Counter()
    for i in range(m):
        mi = masks[i]
        for j in range(i + 1, m):
            out[(mi & masks[j]).bit_count()] += 1
    return out


@dataclass(frozen=True)
class DegreeStats:
    side_degrees: tuple   # per side: ascending degree tuple
    degrees: tuple        # all vertices, ascending

    def nonzero(self, side: int):
        return tuple(d for d in self.side_degrees[side] if d)


def degree_stats(h: PartiteHypergraph) -> DegreeStats:
    deg = [[0] * len(side) for side in h.sides]
    for e in h.edges:
        for s, p in e:
            deg[s][p] += 1
    per_side = tuple(tuple(sorted(d)) for d in deg)
    overall = tuple(sorted(x for d in deg for x in d))
    return DegreeStats(per_side, overall)


# --- .rhg text format ---
#
#   rhg 1 <num_sides>
#   s <side_index> <vertex_label> ...
#   e ["<label>"] <side.pos> <side.pos> ...
#
# '#' starts a comment outside quotes; vertex refs are 0-based.


def _check_label_token(text, what):
    if '"' in text:
        raise ValueError(f'{what} {text!r} contains a double quote')
    if what == "vertex label" and (not text or any(c.isspace() for c in text) or text.startswith("#")):
        raise ValueError(f"{what} {text!r} must be nonempty, unquoted-safe")


def dumps_rhg(h: PartiteHypergraph) -> str:
    lines = [f"rhg 1 {h.num_sides}"]
    for i, side in enumerate(h.sides):
        for lab in side:
            _check_label_token(lab, "vertex label")
        lines.append(" ".join(["s", str(i), *side]))
    for e, lab in zip(h.edges, h.edge_labels):
        refs = " ".join(vid_str(v) for v in e)
        if lab is None:
            lines.append(f"e {refs}")
        else:
            _check_label_token(lab, "edge label")
            lines.append(f'e "{lab}" {refs}')
    return "\n".join(lines) + "\n"


def _tokenize(line, lineno):
    """Split into (text, was_quoted) tokens; '#' outside quotes ends the line."""
    out = []
    i, n = 0, len(line)
    while i < n:
        c = line[i]
        if c.isspace():
            i += 1
            continue
        if c == "#":
            break
        if c == '"':
            j = line.find('"', i + 1)
            if j < 0:
                raise ParseError("unterminated quoted label", lineno)
            out.append((line[i + 1:j], True))
            i = j + 1
        else:
            j = i
            while j < n and not line[j].isspace():
                j += 1
            out.append((line[i:j], False))
            i = j
    return out


def loads_rhg(text: str, name: str = "") -> PartiteHypergraph:
    sides = []
    edges = []
    labels = []
    num_sides = None
    seen_edges = {}
    stage = "header"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = _tokenize(raw, lineno)
        if not toks:
            continue
        head = toks[0][0]
        if stage == "header":
            if head != "rhg" or len(toks) != 3 or toks[1][0] != "1":
                raise ParseError("expected header 'rhg 1 <num_sides>'", lineno)
            try:
                num_sides = int(toks[2][0])
            except ValueError:
                raise ParseError("bad side count in header", lineno) from None
            if num_sides < 1:
                raise ParseError("side count must be >= 1", lineno)
            stage = "sides"
        elif head == "s":
            if stage != "sides":
                raise ParseError("side line after edge lines", lineno)
            if len(toks) < 2 or toks[1][1]:
                raise ParseError("expected 's <side_index> <labels...>'", lineno)
            try:
                idx = int(toks[1][0])
            except ValueError:
                raise ParseError("bad side index", lineno) from None
            if idx != len(sides):
                raise ParseError(f"side index {idx}, expected {len(sides)}", lineno)
            sides.append(tuple(t for t, _ in toks[2:]))
        elif head == "e":
            if stage == "sides":
                if len(sides) != num_sides:
                    raise ParseError(
                        f"got {len(sides)} side lines, header says {num_sides}", lineno
                    )
                stage = "edges"
            rest = toks[1:]
            label = None
            if rest and rest[0][1]:
                label = rest[0][0]
                rest = rest[1:]
            if not rest:
                raise ParseError("edge with no vertices", lineno)
            verts = []
            for t, quoted in rest:
                if quoted:
                    raise ParseError("quoted label must come first in an edge line", lineno)
                try:
                    v = parse_vid(t)
                except ValueError:
                    raise ParseError(f"bad vertex ref {t!r}", lineno) from None
                if not (0 <= v[0] < num_sides) or not (0 <= v[1] < len(sides[v[0]])):
                    raise ParseError(f"vertex ref {t} out of range", lineno)
                verts.append(v)
            vset = frozenset(verts)
            if len(vset) != len(verts) or len({s for s, _ in verts}) != len(verts):
                raise PartitenessError(f"line {lineno}: edge repeats a side")
            if vset in seen_edges:
                raise DuplicateEdgeError(
                    f"line {lineno}: duplicates edge from line {seen_edges[vset]}"
                )
            seen_edges[vset] = lineno
            edges.append(tuple(sorted(verts)))
            labels.append(label)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno)
    if num_sides is None:
        raise ParseError("empty file", 1)
    if stage == "sides" and len(sides) != num_sides:
        raise ParseError(f"got {len(sides)} side lines, header says {num_sides}", lineno)
    return PartiteHypergraph(sides, edges, labels, name=name)


def atomic_write_text(path, text: str):
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def write_rhg(h: PartiteHypergraph, path):
    atomic_write_text(path, dumps_rhg(h))


def read_rhg(path) -> PartiteHypergraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    stem = os.path.splitext(os.path.basename(os.fspath(path)))[0]
    return loads_rhg(text, name=stem)
