"""Extension construction for intersecting Ryser-extremal hypergraphs.

Given an r-partite r-uniform intersecting base, an anchor edge S that
meets every other edge in exactly one vertex, and selected edges
F_1..F_r through the anchor vertices s_i, the extension hypergraph is

    E1: every base edge E != S lifted by the mirror vertex v_i of the
        anchor vertex it meets (one new vertex per anchor vertex, all
        in a fresh final side),
    E2: the selected edges F_i themselves,
    E3: their mirrored copies F_i - s_i + v_i.

The result is (r+1)-partite, {r, r+1}-uniform, intersecting, and has
cover number r; adding one private tail vertex to each r-edge makes it
(r+1)-uniform without changing tau, nu, or the intersecting property.
Edge labels record provenance: "E1(<base edge index>)", "E2(<i,...>)",
"E3(<i>)" with 1-based side numbers.
"""

from dataclasses import dataclass
from math import comb, isqrt
from typing import Optional

from .errors import (
    BadEdgeSizeError,
    InvalidProfileError,
    InvalidSpecError,
    LineNotFoundError,
    MissingLabelsError,
)
from .hypergraph import PartiteHypergraph, is_intersecting
from .solver import DEFAULT_TIMEOUT, cover_number


@dataclass(frozen=True)
class ConstructionSpec:
    """Base hypergraph, anchor edge index, and per-side selected edge
    indices (f_edges[i] holds F_{i+1}, the selected edge through the
    anchor vertex in side i)."""

    base: PartiteHypergraph
    s_edge: int
    f_edges: tuple

    @property
    def r(self) -> int:
        return self.base.num_sides

    def anchor_vertices(self):
        """Anchor vertices ordered by side: element i lies in side i."""
        return tuple(sorted(self.base.edges[self.s_edge]))

    def mirror_vertex(self, side: int):
        """Mirror vertex v_{side+1}, placed in the new final side."""
        return (self.r, side)


@dataclass(frozen=True)
class Violation:
    code: str
    detail: str

    def __str__(self):
        return f"{self.code}: {self.detail}"


def validate_spec(
    spec: ConstructionSpec,
    check_cover_uniqueness: bool = True,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    jobs: int = 1,
):
    """Check every construction precondition; violations are returned as
    data, in check order, not raised.

    The expensive part (the base minus the anchor edge has cover number
    r-1 and its only minimum covers are the sides) can be skipped for
    large bases; the construction is then unvalidated.
    """
    base = spec.base
    r = base.num_sides
    out = []
    if base.uniformity != r:
        out.append(Violation("base-not-uniform", f"edge sizes must all be {r}"))
        return out
    if base.num_edges < 2:
        out.append(Violation("base-too-small", "need the anchor edge plus at least one other"))
        return out
    ok, wit = is_intersecting(base)
    if not ok:
        out.append(Violation("base-not-intersecting", f"edges {wit[0]} and {wit[1]} are disjoint"))
        return out
    if not 0 <= spec.s_edge < base.num_edges:
        out.append(Violation("anchor-index", f"edge index {spec.s_edge} out of range"))
        return out
    anchor_set = base.edge_sets[spec.s_edge]
    for i, eset in enumerate(base.edge_sets):
        if i == spec.s_edge:
            continue
        k = len(anchor_set & eset)
        if k != 1:
            out.append(Violation(
                "anchor-intersection",
                f"anchor edge meets edge {i} in {k} vertices, expected exactly 1",
            ))
    if len(spec.f_edges) != r:
        out.append(Violation("selected-count", f"need {r} selected edges, got {len(spec.f_edges)}"))
        return out
    anchor = spec.anchor_vertices()
    fsets = []
    for i, fe in enumerate(spec.f_edges):
        if not 0 <= fe < base.num_edges:
            out.append(Violation("selected-index", f"F_{i+1} edge index {fe} out of range"))
            return out
        fset = base.edge_sets[fe]
        fsets.append(fset)
        if anchor[i] not in fset:
            out.append(Violation(
                "anchor-in-selected",
                f"F_{i+1} (edge {fe}) does not contain the side-{i} anchor vertex",
            ))
    for i in range(r):
        for j in range(i + 1, r):
            if not (fsets[i] - {anchor[i]}) & (fsets[j] - {anchor[j]}):
                out.append(Violation(
                    "selected-overlap",
                    f"(F_{i+1} - s_{i+1}) and (F_{j+1} - s_{j+1}) are disjoint",
                ))
    if out or not check_cover_uniqueness:
        return out
    reduced = base.without_edge(spec.s_edge)
    res = cover_number(reduced, enumerate_all=True, upper_hint=r - 1,
                       timeout=timeout, jobs=jobs)
    if res.tau != r - 1:
        out.append(Violation(
            "reduced-cover-number",
            f"base minus anchor has cover number {res.tau}, expected {r - 1}",
        ))
        return out
    sides = {
        frozenset((s, p) for p in range(len(base.sides[s]))) for s in range(r)
    }
    got = {frozenset(c) for c in res.all_min_covers}
    if got != sides:
        extra = sorted(tuple(sorted(c)) for c in got - sides)
        missing = sorted(tuple(sorted(c)) for c in sides - got)
        out.append(Violation(
            "covers-not-sides",
            f"minimum covers of the reduced base are not exactly the sides "
            f"(extra={extra[:3]}, missing={missing[:3]})",
        ))
    return out


MIRROR_LABEL_PREFIX = "v"
TAIL_LABEL_PREFIX = "t"


def build_extension(
    spec: ConstructionSpec,
    check: bool = True,
    check_cover_uniqueness: bool = True,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    jobs: int = 1,
) -> PartiteHypergraph:
    """Build the {r, r+1}-uniform (r+1)-partite extension hypergraph.

    Repeated selected edges are stored once with a merged E2 label; the
    anchor edge itself enters only if it was selected as some F_i.
    """
    if check:
        violations = validate_spec(spec, check_cover_uniqueness, timeout, jobs)
        if violations:
            raise InvalidSpecError(str(violations[0]))
    base = spec.base
    r = base.num_sides
    anchor = spec.anchor_vertices()
    anchor_side = {v: v[0] for v in anchor}

    sides = base.sides + (tuple(f"{MIRROR_LABEL_PREFIX}{i+1}" for i in range(r)),)
    edges = []
    labels = []
    for idx, eset in enumerate(base.edge_sets):
        if idx == spec.s_edge:
            continue
        common = eset & frozenset(anchor)
        (si,) = {anchor_side[v] for v in common}
        edges.append(tuple(sorted(base.edges[idx])) + (spec.mirror_vertex(si),))
        labels.append(f"E1({idx})")
    seen = {}
    for i in range(r):
        fset = base.edge_sets[spec.f_edges[i]]
        if fset in seen:
            pos = seen[fset]
            labels[pos] = labels[pos][:-1] + f",{i+1})"
            continue
        seen[fset] = len(edges)
        edges.append(tuple(sorted(fset)))
        labels.append(f"E2({i+1})")
    for i in range(r):
        fset = base.edge_sets[spec.f_edges[i]]
        shifted = tuple(sorted(fset - {anchor[i]})) + (spec.mirror_vertex(i),)
        edges.append(shifted)
        labels.append(f"E3({i+1})")
    name = f"{base.name}-ext" if base.name else "ext"
    return PartiteHypergraph(sides, edges, labels, name=name)


def cover_mirror(cover, spec: ConstructionSpec) -> frozenset:
    """Map a vertex set of the extension back to the base: replace each
    mirror vertex v_i by its anchor vertex s_i and drop the final side.

    When the input covers the extension, the output covers the base
    minus the anchor edge.
    """
    r = spec.base.num_sides
    anchor = spec.anchor_vertices()
    out = set()
    for s, p in cover:
        if s == r:
            out.add(anchor[p])
        else:
            out.add((s, p))
    return frozenset(out)


def uniformize(h: PartiteHypergraph) -> PartiteHypergraph:
    """Give each short edge its own fresh tail vertex in the one side it
    misses, producing a uniform hypergraph.  Uniform inputs are returned
    unchanged.  Tail vertices get labels t1, t2, ... in edge order."""
    k = h.num_sides
    sizes = {len(e) for e in h.edges}
    if not sizes <= {k - 1, k}:
        raise BadEdgeSizeError(
            f"edge sizes {sorted(sizes)} not within {{{k - 1}, {k}}} for {k} sides"
        )
    if sizes <= {k}:
        return h
    side_labels = [list(s) for s in h.sides]
    all_sides = frozenset(range(k))
    new_edges = []
    counter = 1
    for e in h.edges:
        if len(e) == k:
            new_edges.append(e)
            continue
        (missed,) = all_sides - {s for s, _ in e}
        label = f"{TAIL_LABEL_PREFIX}{counter}"
        counter += 1
        while label in side_labels[missed]:
            label = f"{TAIL_LABEL_PREFIX}{counter}"
            counter += 1
        pos = len(side_labels[missed])
        side_labels[missed].append(label)
        new_edges.append(tuple(sorted(e + ((missed, pos),))))
    name = f"{h.name}-u" if h.name else "uniformized"
    return PartiteHypergraph(side_labels, new_edges, h.edge_labels, name=name)


def select_f_default(base: PartiteHypergraph, s_edge: int) -> ConstructionSpec:
    """Default selection: F_i is the least-indexed edge other than the
    anchor through the side-i anchor vertex."""
    r = base.num_sides
    anchor = tuple(sorted(base.edges[s_edge]))
    f = []
    for i in range(r):
        hits = [
            e for e, es in enumerate(base.edge_sets)
            if anchor[i] in es and e != s_edge
        ]
        if not hits:
            raise LineNotFoundError(f"no edge other than the anchor through {anchor[i]}")
        f.append(hits[0])
    return ConstructionSpec(base, s_edge, tuple(f))


@dataclass(frozen=True)
class DegreeProfile:
    """Block sizes x_1..x_t for partitioning the non-first anchor
    vertices; the final block size x_{t+1} = r-1 - sum(x) is derived.

    Strict validity additionally demands t+2 < x_i <= sqrt(r), the
    regime in which distinct profiles force distinct degree multisets.
    """

    r: int
    x: tuple

    @property
    def t(self) -> int:
        return len(self.x)

    @property
    def x_last(self) -> int:
        return self.r - 1 - sum(self.x)

    def structural_errors(self):
        out = []
        if self.t < 1:
            out.append("need at least one block size")
        if any(xi < 1 for xi in self.x):
            out.append("block sizes must be positive")
        if self.x_last < 1:
            out.append(f"derived final block size {self.x_last} must be >= 1")
        if self.t + 1 > self.r - 2:
            out.append(f"need t+1 <= r-2 distinct connector vertices (t={self.t}, r={self.r})")
        return out

    def counting_errors(self):
        out = []
        for xi in self.x:
            if xi <= self.t + 2:
                out.append(f"block size {xi} must exceed t+2 = {self.t + 2}")
            if xi * xi > self.r:
                out.append(f"block size {xi} must be at most sqrt({self.r})")
        return out


def select_f_by_profile(
    base: PartiteHypergraph,
    s_edge: int,
    profile: DegreeProfile,
    strict: bool = True,
) -> ConstructionSpec:
    """Choose the selected edges from a degree profile.

    The non-first anchor vertices are split, in side order, into
    consecutive blocks of sizes x_1..x_{t+1}; every anchor vertex in
    block i gets the unique edge through it and the i-th first-side
    vertex other than the anchor; F_1 is the least-indexed edge through
    the first anchor vertex other than the anchor edge itself.  In a
    truncated plane the side-1 nonzero degrees of the resulting pair
    subhypergraph are {1, 2*x_1, ..., 2*x_{t+1}}.
    """
    r = base.num_sides
    if base.uniformity != r:
        raise InvalidProfileError(f"base must be {r}-uniform on {r} sides")
    if profile.r != r:
        raise InvalidProfileError(f"profile is for r={profile.r}, base has r={r}")
    errs = profile.structural_errors()
    if strict:
        errs += profile.counting_errors()
    if errs:
        raise InvalidProfileError("; ".join(errs))

    anchor = tuple(sorted(base.edges[s_edge]))
    connectors = [
        (0, p) for p in range(len(base.sides[0])) if (0, p) != anchor[0]
    ]
    t1 = profile.t + 1
    if t1 > len(connectors):
        raise InvalidProfileError(
            f"first side has only {len(connectors)} non-anchor vertices, need {t1}"
        )

    def unique_edge_through(u, v):
        hits = [i for i, es in enumerate(base.edge_sets) if u in es and v in es]
        if len(hits) != 1:
            raise LineNotFoundError(
                f"expected exactly one edge through {u} and {v}, found {len(hits)}"
            )
        return hits[0]

    f = [None] * r
    first = [
        i for i, es in enumerate(base.edge_sets)
        if anchor[0] in es and i != s_edge
    ]
    if not first:
        raise LineNotFoundError("no edge other than the anchor passes through s_1")
    f[0] = first[0]

    block_sizes = list(profile.x) + [profile.x_last]
    side = 1
    for bi, size in enumerate(block_sizes):
        w = connectors[bi]
        for _ in range(size):
            f[side] = unique_edge_through(anchor[side], w)
            side += 1
    assert side == r
    return ConstructionSpec(base, s_edge, tuple(f))


@dataclass(frozen=True)
class ProfileCount:
    r: int
    delta: Optional[float]
    t: int
    value_lo: int
    value_hi: int
    count: int
    formula_bound: int
    note: str = ""


def profile_count(r: int, delta: Optional[float] = None, t: Optional[int] = None) -> ProfileCount:
    """Number of valid strict block-size multisets {x_1..x_t} with
    values in (t+2, sqrt(r)].  t is given directly or derived as
    floor(r^(0.5-delta)).  Degenerate ranges give count 0 with a note."""
    if t is None:
        if delta is None:
            raise ValueError("provide either t or delta")
        t = int(r ** (0.5 - delta))
    lo = t + 3
    hi = isqrt(r)
    if r < 9 or t < 1 or hi < lo:
        return ProfileCount(r, delta, t, lo, hi, 0, 0,
                            note=f"degenerate range: no values in [{lo}, {hi}]")
    m = hi - lo + 1
    count = comb(m + t - 1, t)
    formula = comb(t + hi - (t + 2) - 1, t)
    return ProfileCount(r, delta, t, lo, hi, count, formula)


def extract_pair_subhypergraph(h: PartiteHypergraph) -> PartiteHypergraph:
    """Sub-hypergraph of exactly the selected edges and their mirrored
    copies (E2/E3 labels), on the same vertex set."""
    if any(lab is None for lab in h.edge_labels):
        raise MissingLabelsError("every edge needs a provenance label")
    keep = [
        (e, lab)
        for e, lab in zip(h.edges, h.edge_labels)
        if lab.startswith("E2(") or lab.startswith("E3(")
    ]
    name = f"{h.name}-pairs" if h.name else "pairs"
    return PartiteHypergraph(
        h.sides, [e for e, _ in keep], [lab for _, lab in keep], name=name
    )
