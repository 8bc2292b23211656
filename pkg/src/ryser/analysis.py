"""Minimality reduction, non-isomorphism certification, and desk-scale
classification of addable edges.

An extremal uniform hypergraph (k sides, k-uniform, cover number k-1)
is minimal when deleting any single edge drops the cover number; the
reducer deletes, in ascending edge order, any edge whose removal keeps
the cover number, and certifies both the deletions and the criticality
of every surviving edge with solver results.

Addable-edge classification enumerates every covering transversal of
the extension hypergraph with at most one fresh vertex (a candidate
with two or more fresh vertices meets at most r-1 < tau existing
vertices, so it misses some edge and cannot keep the family
intersecting) and sorts each candidate into: already present, a twin of
a selected edge (type 1: F_i plus a final-side vertex), a twin of a
mirrored selected edge (type 2: F_i - s_i + v_i plus a side-i vertex),
or a violation of that pattern.
"""

import warnings
from dataclasses import dataclass
from itertools import product
from typing import Optional

from .construct import ConstructionSpec
from .errors import (
    NonUniformError,
    NotExtremalError,
    TooLargeError,
    ViolationsPresentError,
)
from .hypergraph import PartiteHypergraph, degree_stats, is_intersecting
from .solver import DEFAULT_TIMEOUT, CoverResult, cover_number


# --- minimality -----------------------------------------------------------


@dataclass(frozen=True)
class DeletedEdge:
    original_index: int
    vertices: tuple
    label: Optional[str]
    cert: CoverResult        # cover number right after this deletion


@dataclass(frozen=True)
class KeptEdge:
    final_index: int
    original_index: int
    vertices: tuple
    label: Optional[str]
    cert: CoverResult        # cover number with this edge deleted


@dataclass(frozen=True)
class MinimizationTrace:
    initial: CoverResult
    final: PartiteHypergraph
    deleted: tuple
    kept: tuple

    @property
    def target_tau(self) -> int:
        return self.initial.tau


def minimize(
    h: PartiteHypergraph,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    jobs: int = 1,
    order: str = "asc",
) -> MinimizationTrace:
    """Delete edges (least index first; "desc" scans from the highest
    index instead) while the cover number stays at sides-1; certify
    every deletion and the criticality of every kept edge.  Any scan
    order reaches a minimal hypergraph, possibly a different one."""
    if order not in ("asc", "desc"):
        raise ValueError(f"order must be 'asc' or 'desc', got {order!r}")
    k = h.num_sides
    target = k - 1
    if h.uniformity != k:
        raise NonUniformError(f"expected a {k}-uniform hypergraph on {k} sides")
    ok, wit = is_intersecting(h)
    if not ok:
        raise NotExtremalError(f"input is not intersecting (edges {wit[0]}, {wit[1]})")
    initial = cover_number(h, upper_hint=target, timeout=timeout, jobs=jobs)
    if initial.tau != target:
        raise NotExtremalError(f"cover number is {initial.tau}, expected {target}")

    cur = h
    orig = list(range(h.num_edges))
    deleted = []
    while True:
        hit = None
        scan = range(cur.num_edges) if order == "asc" else range(cur.num_edges - 1, -1, -1)
        for pos in scan:
            trial = cur.without_edge(pos)
            res = cover_number(trial, upper_hint=target, timeout=timeout, jobs=jobs)
            if res.tau == target:
                hit = (pos, trial, res)
                break
        if hit is None:
            break
        pos, trial, res = hit
        deleted.append(DeletedEdge(orig[pos], cur.edges[pos], cur.edge_labels[pos], res))
        cur = trial
        del orig[pos]

    kept = []
    for pos in range(cur.num_edges):
        res = cover_number(cur.without_edge(pos), upper_hint=target - 1,
                           timeout=timeout, jobs=jobs)
        assert res.tau == target - 1
        kept.append(KeptEdge(pos, orig[pos], cur.edges[pos], cur.edge_labels[pos], res))
    return MinimizationTrace(initial, cur, tuple(deleted), tuple(kept))


# --- fingerprints & isomorphism -------------------------------------------


def degree_fingerprint(h: PartiteHypergraph) -> tuple:
    """Global degree multiset, sorted ascending.  Distinct fingerprints
    certify non-isomorphism."""
    return degree_stats(h).degrees


def fingerprint_str(fp) -> str:
    out = []
    i = 0
    while i < len(fp):
        j = i
        while j < len(fp) and fp[j] == fp[i]:
            j += 1
        out.append(f"{fp[i]}^{j - i}")
        i = j
    return " ".join(out) if out else "(empty)"


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    side_perm: Optional[tuple]    # side i of a -> side_perm[i] of b
    vertex_map: Optional[tuple]   # sorted ((side,pos), (side,pos)) pairs


ISO_VERTEX_GUARD = 64


def _codegrees(h):
    co = {}
    for e in h.edges:
        for i in range(len(e)):
            for j in range(i + 1, len(e)):
                key = (e[i], e[j])
                co[key] = co.get(key, 0) + 1
    return co


def exact_isomorphic(a: PartiteHypergraph, b: PartiteHypergraph) -> IsoResult:
    """Backtracking search for a vertex bijection mapping edges onto
    edges, where whole sides map to whole sides (side order may be
    permuted).  Degree and codegree profiles prune the search."""
    if a.num_vertices + b.num_vertices > ISO_VERTEX_GUARD:
        raise TooLargeError(
            f"{a.num_vertices}+{b.num_vertices} vertices exceed the "
            f"{ISO_VERTEX_GUARD}-vertex isomorphism guard"
        )
    no = IsoResult(False, None, None)
    if a.num_sides != b.num_sides or a.num_edges != b.num_edges:
        return no
    if sorted(a.side_sizes) != sorted(b.side_sizes):
        return no
    if sorted(len(e) for e in a.edges) != sorted(len(e) for e in b.edges):
        return no
    dsa, dsb = degree_stats(a), degree_stats(b)
    if dsa.degrees != dsb.degrees:
        return no
    if sorted(dsa.side_degrees) != sorted(dsb.side_degrees):
        return no

    k = a.num_sides
    deg_a = {v: d for side in range(k)
             for v, d in zip(((side, p) for p in range(len(a.sides[side]))),
                             _per_vertex_degrees(a, side))}
    deg_b = {v: d for side in range(k)
             for v, d in zip(((side, p) for p in range(len(b.sides[side]))),
                             _per_vertex_degrees(b, side))}
    co_a = _codegrees(a)
    co_b = _codegrees(b)
    b_edge_sets = set(b.edge_sets)

    def co(codict, u, v):
        return codict.get((u, v)) or codict.get((v, u), 0)

    mapping = {}
    side_perm = [None] * k
    used_sides = set()

    def assign_side(si):
        if si == k:
            mapped = {
                frozenset(mapping[v] for v in e) for e in a.edge_sets
            }
            return mapped == b_edge_sets
        size = len(a.sides[si])
        degs = dsa.side_degrees[si]
        for tj in range(k):
            if tj in used_sides:
                continue
            if len(b.sides[tj]) != size or dsb.side_degrees[tj] != degs:
                continue
            used_sides.add(tj)
            side_perm[si] = tj
            if assign_vertex(si, tj, 0, set()):
                return True
            side_perm[si] = None
            used_sides.discard(tj)
        return False

    def assign_vertex(si, tj, p, used):
        if p == len(a.sides[si]):
            return assign_side(si + 1)
        u = (si, p)
        for q in range(len(b.sides[tj])):
            w = (tj, q)
            if w in used or deg_a[u] != deg_b[w]:
                continue
            if any(co(co_a, u, x) != co(co_b, w, y) for x, y in mapping.items()):
                continue
            mapping[u] = w
            used.add(w)
            if assign_vertex(si, tj, p + 1, used):
                return True
            del mapping[u]
            used.discard(w)
        return False

    if assign_side(0):
        return IsoResult(True, tuple(side_perm), tuple(sorted(mapping.items())))
    return no


def _per_vertex_degrees(h, side):
    deg = [0] * len(h.sides[side])
    for e in h.edges:
        for s, p in e:
            if s == side:
                deg[p] += 1
    return deg


# --- addable-edge classification ------------------------------------------


@dataclass(frozen=True)
class ExtensionCandidate:
    fresh_side: Optional[int]   # side holding one fresh vertex, None for none
    vertices: tuple             # existing vertices, sorted
    kind: str                   # type1 | type2 | already_present | violation
    index: Optional[int]        # 1-based selected-edge number for type1/type2


@dataclass(frozen=True)
class ExtensionClassification:
    r: int
    pattern_guaranteed: bool      # the pattern guarantee needs r >= 5
    candidates: tuple
    counts: dict
    violations: tuple

    @property
    def confirmed(self) -> bool:
        return self.pattern_guaranteed and not self.violations


def _covering_transversals(h, skip_side):
    """All choices of one existing vertex from every side except
    skip_side whose union meets every edge, by backtracking with
    suffix-cover pruning.  Yields sorted vertex tuples in lexicographic
    order."""
    m = h.num_edges
    full = (1 << m) - 1
    vert_edges = {}
    for ei, e in enumerate(h.edges):
        for v in e:
            vert_edges[v] = vert_edges.get(v, 0) | (1 << ei)
    active = [s for s in range(h.num_sides) if s != skip_side]
    side_union = []
    for s in active:
        u = 0
        for p in range(len(h.sides[s])):
            u |= vert_edges.get((s, p), 0)
        side_union.append(u)
    suffix = [0] * (len(active) + 1)
    for i in range(len(active) - 1, -1, -1):
        suffix[i] = suffix[i + 1] | side_union[i]

    picks = []

    def rec(i, covered):
        if covered | suffix[i] != full:
            return
        if i == len(active):
            if covered == full:
                yield tuple(picks)
            return
        s = active[i]
        for p in range(len(h.sides[s])):
            v = (s, p)
            picks.append(v)
            yield from rec(i + 1, covered | vert_edges.get(v, 0))
            picks.pop()

    yield from rec(0, 0)


def enumerate_candidates_brute(h):
    """Pruning-free cross-check: every (fresh_side, transversal) choice
    via full cartesian products, filtered by a direct cover test."""
    out = []
    masks = h.edge_masks
    gid = h.gid
    for fresh in [None] + list(range(h.num_sides)):
        active = [s for s in range(h.num_sides) if s != fresh]
        for combo in product(*[[(s, p) for p in range(len(h.sides[s]))] for s in active]):
            m = 0
            for v in combo:
                m |= 1 << gid(v)
            if all(e & m for e in masks):
                out.append((fresh, tuple(sorted(combo))))
    return out


def classify_extensions(
    h: PartiteHypergraph,
    spec: ConstructionSpec,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    jobs: int = 1,
) -> ExtensionClassification:
    """Enumerate and classify every addable edge of the mixed-uniform
    extension hypergraph, up to fresh-vertex naming.

    A new edge must meet every existing edge; since the cover number is
    r, its existing-vertex part must be a covering transversal, leaving
    room for at most one fresh vertex.
    """
    r = spec.base.num_sides
    if h.num_sides != r + 1:
        raise NonUniformError(f"extension hypergraph must have {r + 1} sides")
    if r < 5:
        warnings.warn(
            f"uniformity r={r} < 5: candidates are classified but the "
            f"twin-pattern guarantee does not apply",
            stacklevel=2,
        )
    res = cover_number(h, upper_hint=r, timeout=timeout, jobs=jobs)
    if res.tau != r:
        raise NotExtremalError(f"cover number is {res.tau}, expected {r}")

    anchor = spec.anchor_vertices()
    f_sets = [spec.base.edge_sets[fe] for fe in spec.f_edges]
    shifted_sets = [
        (f_sets[i] - {anchor[i]}) | {spec.mirror_vertex(i)} for i in range(r)
    ]
    h_edge_sets = set(h.edge_sets)

    def classify(fresh, verts):
        vset = frozenset(verts)
        if fresh is None and vset in h_edge_sets:
            return "already_present", None
        # type 1: apart from one final-side vertex, the edge is F_i
        core = vset if fresh == r else frozenset(v for v in vset if v[0] != r)
        if fresh == r or fresh is None:
            for i in range(r):
                if core == f_sets[i]:
                    return "type1", i + 1
        # type 2: apart from one side-i vertex, the edge is F_i - s_i + v_i
        if fresh != r:
            mirrors = [v for v in vset if v[0] == r]
            if len(mirrors) == 1:
                i = mirrors[0][1]
                rest = (
                    vset if fresh == i
                    else frozenset(v for v in vset if v[0] != i)
                )
                if rest == shifted_sets[i]:
                    return "type2", i + 1
        return "violation", None

    candidates = []
    for fresh in [None] + list(range(r + 1)):
        for verts in _covering_transversals(h, fresh):
            kind, idx = classify(fresh, verts)
            candidates.append(ExtensionCandidate(fresh, verts, kind, idx))
    counts = {}
    for c in candidates:
        counts[c.kind] = counts.get(c.kind, 0) + 1
    violations = tuple(c for c in candidates if c.kind == "violation")
    return ExtensionClassification(
        r=r,
        pattern_guaranteed=r >= 5,
        candidates=tuple(candidates),
        counts=counts,
        violations=violations,
    )


# --- maximal closure description ------------------------------------------


@dataclass(frozen=True)
class TwinFamily:
    kind: str          # type1 | type2
    index: int         # 1-based selected-edge number
    fresh_side: int    # the side taking the infinitely many twin vertices
    fixed_vertices: tuple

    def matches(self, fresh_side, vertices) -> bool:
        return fresh_side == self.fresh_side and frozenset(vertices) == frozenset(self.fixed_vertices)


@dataclass(frozen=True)
class MaximalClosureReport:
    r: int
    families: tuple    # 2r twin families describing the infinite closure


def maximal_closure_description(
    h: PartiteHypergraph,
    spec: ConstructionSpec,
    classification: Optional[ExtensionClassification] = None,
    timeout: Optional[float] = DEFAULT_TIMEOUT,
    jobs: int = 1,
) -> MaximalClosureReport:
    """Finite description of the infinite maximal extension: the input
    plus, for each selected edge, one twin family per pattern type.  No
    infinite object is materialized."""
    if classification is None:
        classification = classify_extensions(h, spec, timeout=timeout, jobs=jobs)
    if classification.violations:
        raise ViolationsPresentError(
            f"{len(classification.violations)} addable edges fall outside the twin patterns"
        )
    r = spec.base.num_sides
    anchor = spec.anchor_vertices()
    families = []
    for i in range(r):
        fset = spec.base.edge_sets[spec.f_edges[i]]
        families.append(TwinFamily("type1", i + 1, r, tuple(sorted(fset))))
        shifted = (fset - {anchor[i]}) | {spec.mirror_vertex(i)}
        families.append(TwinFamily("type2", i + 1, i, tuple(sorted(shifted))))
    return MaximalClosureReport(r, tuple(families))
