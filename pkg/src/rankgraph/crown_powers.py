"""Crown-based powers of monolithic groups and their generation machinery.

For a monolithic group L with socle N, the crown-based power L_k is the
subgroup of L^k of tuples congruent coordinate-wise modulo N.  Generation
of L_k by t-tuples of corrected elements reduces to an orbit condition:
columns of the correction matrix must be generating t-tuples lying in
pairwise distinct orbits of X = C_Aut(L)(L/N).  delta(L, t), the largest
k with L_k still t-generated, is therefore the number of X-orbits on the
set of generating coset tuples.

Crown-graph edges are decided by a system-of-distinct-representatives
test over the orbit table (one admissible-orbit set per column, matched
to pairwise distinct orbits); for single-column graphs a direct
completion search over the free rows is used instead.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .config import DEFAULT_LIMITS, Limits
from .perm_core import (
    CapExceededError,
    GroupArgumentError,
    Permutation,
    PermutationGroup,
    PreconditionError,
    StabilizerChain,
    WitnessSearchFailure,
)
from .group_structure import minimal_normal_subgroups, min_rank, registry_for
from .automorphisms import AutGroup, automorphism_group, orbits_on_tuples, x_subgroup
from .graphs import ElementGraph


# ---------------------------------------------------------------------------
# monolithic groups


@dataclass
class MonolithicGroup:
    """A group with its unique minimal normal subgroup (the socle)."""

    group: PermutationGroup
    socle: PermutationGroup
    socle_abelian: bool
    name: str = ""

    _aut: Optional[AutGroup] = field(default=None, repr=False)
    _x: Optional[AutGroup] = field(default=None, repr=False)

    @classmethod
    def from_group(cls, L: PermutationGroup, name: str = "",
                   limits: Limits = DEFAULT_LIMITS) -> "MonolithicGroup":
        minimals = minimal_normal_subgroups(L, limits)
        if len(minimals) != 1:
            raise GroupArgumentError(
                f"group is not monolithic: {len(minimals)} minimal normal "
                "subgroups")
        N = minimals[0]
        return cls(L, N, N.is_abelian(), name)

    @property
    def quotient_order(self) -> int:
        return self.group.order // self.socle.order

    def require_nonabelian(self) -> None:
        if self.socle_abelian:
            raise PreconditionError(
                "crown-power graph machinery needs a non-abelian socle")

    # -- dense coset helpers -------------------------------------------------

    def ct(self, limits: Limits = DEFAULT_LIMITS):
        return self.group.cayley_table(limits)

    def socle_indices(self, limits: Limits = DEFAULT_LIMITS) -> tuple:
        ct = self.ct(limits)
        got = getattr(ct, "_socle_sorted", None)
        if got is None:
            got = tuple(sorted(ct.subset_indices(self.socle)))
            ct._socle_sorted = got
        return got

    def coset_indices(self, x: int, limits: Limits = DEFAULT_LIMITS) -> tuple:
        """Sorted element indices of the coset x N (= N x, N is normal)."""
        ct = self.ct(limits)
        return tuple(sorted(ct.table[x][n] for n in self.socle_indices(limits)))

    def coset_set(self, x: int, limits: Limits = DEFAULT_LIMITS) -> frozenset:
        return frozenset(self.coset_indices(x, limits))

    def aut(self, limits: Limits = DEFAULT_LIMITS) -> AutGroup:
        if self._aut is None:
            self._aut = automorphism_group(self.group, limits)
        return self._aut

    def x_group(self, limits: Limits = DEFAULT_LIMITS) -> AutGroup:
        """X = C_Aut(L)(L/N), the automorphisms fixing every socle coset."""
        if self._x is None:
            self._x = x_subgroup(self, limits, aut=self.aut(limits))
        return self._x


# ---------------------------------------------------------------------------
# crown powers


@dataclass
class CrownPower:
    """L_k realized on k disjoint copies of the domain of L."""

    base: MonolithicGroup
    k: int
    group: PermutationGroup

    @property
    def block_degree(self) -> int:
        return self.base.group.degree

    def component(self, p: Permutation, j: int) -> Permutation:
        """The j-th coordinate of an element of L_k."""
        d = self.block_degree
        off = j * d
        return Permutation._raw(tuple(p.images[off + i] - off
                                      for i in range(d)))

    def components(self, p: Permutation) -> list:
        return [self.component(p, j) for j in range(self.k)]

    def is_congruent(self, p: Permutation) -> bool:
        """Coordinates lie in one coset of the socle (membership in L_k)."""
        comps = self.components(p)
        first = comps[0]
        N = self.base.socle
        return all(N.contains(first.inverse() * c) for c in comps[1:])


def _embed_block(g: Permutation, k: int, j: int) -> Permutation:
    d = g.degree
    images = list(range(k * d))
    off = j * d
    for i in range(d):
        images[off + i] = off + g.images[i]
    return Permutation._raw(tuple(images))


def _embed_diag(g: Permutation, k: int) -> Permutation:
    d = g.degree
    images = []
    for j in range(k):
        off = j * d
        images.extend(off + g.images[i] for i in range(d))
    return Permutation._raw(tuple(images))


def build_crown_power(L: MonolithicGroup, k: int,
                      limits: Limits = DEFAULT_LIMITS) -> CrownPower:
    """L_k as a permutation group of degree k * deg(L), order certified.

    Generators: diagonal embeddings of L's generators plus the socle's
    generators in each of the coordinates 1..k-1.  Any (l_1, ..., l_k) in
    L_k factors as (l_1 l_k^-1, ..., l_{k-1} l_k^-1, 1) * diag(l_k) with
    the first factor in N^(k-1), so this set generates all of L_k.
    """
    if k < 1:
        raise GroupArgumentError("k must be positive")
    gens = [_embed_diag(g, k) for g in L.group.generators]
    for j in range(k - 1):
        gens.extend(_embed_block(n, k, j) for n in L.socle.generators)
    expected = L.quotient_order * L.socle.order ** k
    G = PermutationGroup(k * L.group.degree, gens, known_order=expected)
    if G.order != expected:
        raise GroupArgumentError(
            f"crown power order {G.order} != expected {expected}")
    return CrownPower(L, k, G)


def circ(L: MonolithicGroup, a: Permutation, m: Sequence[Permutation]) -> Permutation:
    """a . m = (a m_1, ..., a m_k) as an element of L_k."""
    if not L.group.contains(a):
        raise GroupArgumentError("a must lie in L")
    for n in m:
        if not L.socle.contains(n):
            raise GroupArgumentError("correction components must lie in the socle")
    k = len(m)
    images = []
    d = L.group.degree
    for j, n in enumerate(m):
        prod = a * n
        off = j * d
        images.extend(off + prod.images[i] for i in range(d))
    return Permutation._raw(tuple(images))


def crown_generates(cp: CrownPower, elems: Sequence[Permutation]) -> bool:
    """Direct stabilizer-chain generation test inside L_k."""
    chain = StabilizerChain(cp.group.degree, elems,
                            known_order=cp.group.order)
    return chain.order() == cp.group.order


# ---------------------------------------------------------------------------
# the orbit table for Omega


@dataclass
class OrbitTable:
    """Generating coset tuples with their X-orbit labels.

    ``tuples`` lists every (a_1 n_1, ..., a_t n_t) (element indices) that
    generates L, in lexicographic order; ``labels`` assigns orbit ids
    (numbered by each orbit's smallest tuple); ``reps`` is the canonical
    complete system of orbit representatives.
    """

    mono: MonolithicGroup
    a: tuple  # element indices of the fixed generating tuple
    tuples: list
    index: dict
    labels: list
    orbit_count: int
    reps: list
    _projections: dict = field(default_factory=dict, repr=False)

    @property
    def t(self) -> int:
        return len(self.a)

    def label_of(self, column: tuple) -> Optional[int]:
        i = self.index.get(column)
        return None if i is None else self.labels[i]

    def projection(self, i: int, j: int) -> dict:
        """(row-i entry, row-j entry) -> admissible orbit labels."""
        key = (i, j)
        got = self._projections.get(key)
        if got is None:
            got = {}
            for pos, tup in enumerate(self.tuples):
                got.setdefault((tup[i], tup[j]), set()).add(self.labels[pos])
            self._projections[key] = got
        return got


def default_generating_tuple(L: MonolithicGroup, t: int,
                             limits: Limits = DEFAULT_LIMITS) -> tuple:
    """min_rank witness padded with the identity up to length t."""
    cert = min_rank(L.group, limits)
    if t < cert.d:
        raise PreconditionError(f"t = {t} < d(L) = {cert.d}")
    ct = L.ct(limits)
    idxs = [ct.index[p.images] for p in cert.witness]
    idxs += [ct.identity] * (t - len(idxs))
    return tuple(idxs)


def omega_table(L: MonolithicGroup, a: Sequence[int],
                limits: Limits = DEFAULT_LIMITS) -> OrbitTable:
    """Enumerate and label the generating coset tuples over (a_1, ..., a_t)."""
    L.require_nonabelian()
    ct = L.ct(limits)
    reg = registry_for(L.group, limits)
    a = tuple(a)
    if reg.subgroup_of(a) != reg.full_id:
        raise PreconditionError("the fixed tuple must generate L")
    cosets = [L.coset_indices(x, limits) for x in a]
    total = 1
    for c in cosets:
        total *= len(c)
    if total > limits.max_search_space:
        raise CapExceededError(
            f"|N|^t = {total} exceeds search cap {limits.max_search_space}")
    full = reg.full_id
    tuples = []
    if len(a) == 2:
        for x in cosets[0]:
            for y in cosets[1]:
                if reg.pair_join(x, y) == full:
                    tuples.append((x, y))
    else:
        def recurse(prefix, sid, depth):
            if depth == len(cosets):
                if sid == full:
                    tuples.append(tuple(prefix))
                return
            for x in cosets[depth]:
                recurse(prefix + [x], reg.join_with_element(sid, x), depth + 1)
        recurse([], reg.trivial_id, 0)
    X = L.x_group(limits)
    labels, count = orbits_on_tuples(X, tuples)
    reps = [None] * count
    for pos, tup in enumerate(tuples):
        lab = labels[pos]
        if reps[lab] is None or tup < reps[lab]:
            reps[lab] = tup
    return OrbitTable(L, a, tuples, {t: i for i, t in enumerate(tuples)},
                      labels, count, reps)


def delta_Lt(L: MonolithicGroup, t: int, verify: bool = False,
             a: Optional[Sequence[int]] = None,
             limits: Limits = DEFAULT_LIMITS):
    """delta(L, t): the X-orbit count on the generating coset tuples.

    With ``verify`` the witness tuple assembled from the complete orbit
    representative system is checked to generate L_delta by a stabilizer
    chain of the full crown power.  Returns (delta, table) or
    (delta, table, crown, witness) in verify mode.
    """
    if a is None:
        a = default_generating_tuple(L, t, limits)
    elif t < min_rank(L.group, limits).d:
        raise PreconditionError(f"t = {t} < d(L)")
    table = omega_table(L, a, limits)
    delta = table.orbit_count
    if not verify:
        return delta, table
    crown = build_crown_power(L, delta, limits)
    ct = L.ct(limits)
    witness = []
    for i in range(len(a)):
        m = [ct.perm(rep[i]) for rep in table.reps]
        # rep entries already carry the a_i factor: rep[i] = a_i n_{i,rep}
        images = []
        d = L.group.degree
        for j, p in enumerate(m):
            off = j * d
            images.extend(off + p.images[q] for q in range(d))
        witness.append(Permutation._raw(tuple(images)))
    ok = crown_generates(crown, witness)
    if not ok:
        raise WitnessSearchFailure(
            "orbit-representative witness failed to generate the crown power")
    return delta, table, crown, witness


def generation_via_orbits(table: OrbitTable, rows: Sequence[Sequence[int]],
                          limits: Limits = DEFAULT_LIMITS) -> bool:
    """Orbit criterion for <a_1 . m_1, ..., a_t . m_t> = L_eta.

    ``rows`` holds the correction tuples m_i as socle element indices;
    True iff every column of the corrected matrix is a generating tuple
    and the column orbit labels are pairwise distinct.
    """
    if table is None:
        raise GroupArgumentError("orbit table required")
    t = table.t
    if len(rows) != t:
        raise GroupArgumentError(f"need {t} correction rows")
    eta = len(rows[0])
    if any(len(r) != eta for r in rows):
        raise GroupArgumentError("ragged correction matrix")
    if eta > table.orbit_count:
        raise PreconditionError("eta exceeds delta(L, t)")
    ct = table.mono.ct(limits)
    seen = set()
    for k in range(eta):
        column = tuple(ct.table[table.a[i]][rows[i][k]] for i in range(t))
        lab = table.label_of(column)
        if lab is None or lab in seen:
            return False
        seen.add(lab)
    return True


# ---------------------------------------------------------------------------
# crown graphs


@dataclass(frozen=True)
class CrownVertex:
    """Row index plus correction tuple, denoting a_i . m inside L_eta."""

    row: int
    correction: tuple  # socle element indices, length eta


def _sdr_exists(option_sets: Sequence[set]) -> bool:
    """Hall-style matching: one distinct representative per option set."""
    match: dict = {}

    def augment(k, banned):
        for lab in option_sets[k]:
            if lab in banned:
                continue
            banned.add(lab)
            if lab not in match or augment(match[lab], banned):
                match[lab] = k
                return True
        return False

    for k in range(len(option_sets)):
        if not option_sets[k]:
            return False
        if not augment(k, set()):
            return False
    return True


class CrownGraphBuilder:
    """Edge tests for Gamma_{a_1..a_t}(L_eta), shared by graph and sweeps."""

    def __init__(self, L: MonolithicGroup, t: int, eta: int,
                 a: Optional[Sequence[int]] = None,
                 table: Optional[OrbitTable] = None,
                 limits: Limits = DEFAULT_LIMITS):
        L.require_nonabelian()
        self.L = L
        self.limits = limits
        self.reg = registry_for(L.group, limits)
        self.ct = L.ct(limits)
        if a is None:
            a = default_generating_tuple(L, t, limits)
        self.a = tuple(a)
        self.t = t
        self.eta = eta
        if self.reg.subgroup_of(self.a) != self.reg.full_id:
            raise PreconditionError("the row tuple must generate L")
        self.socle = L.socle_indices(limits)
        self.table = table
        if table is None and eta != 1:
            raise GroupArgumentError(
                "orbit table required for eta > 1 edge tests")
        self._complete_memo: dict = {}

    # vertex indexing: row-major over (row, correction rank)
    def n_vertices(self) -> int:
        return self.t * len(self.socle) ** self.eta

    def corrections(self) -> list:
        return list(itertools.product(self.socle, repeat=self.eta))

    def vertex(self, row: int, correction: tuple) -> CrownVertex:
        return CrownVertex(row, tuple(correction))

    def edge(self, v: CrownVertex, w: CrownVertex) -> bool:
        if v.row == w.row:
            return False
        if self.table is not None:
            return self._edge_sdr(v, w)
        return self._edge_direct(v, w)

    def _edge_sdr(self, v, w) -> bool:
        i, j = v.row, w.row
        if i > j:
            i, j, v, w = j, i, w, v
        proj = self.table.projection(i, j)
        tbl = self.ct.table
        ai, aj = self.a[i], self.a[j]
        sets = []
        for k in range(self.eta):
            key = (tbl[ai][v.correction[k]], tbl[aj][w.correction[k]])
            got = proj.get(key)
            if not got:
                return False
            sets.append(got)
        return _sdr_exists(sets)

    def _edge_direct(self, v, w) -> bool:
        # eta == 1: search completions over the free rows, memoized on the
        # subgroup generated by the two pinned elements.
        i, j = v.row, w.row
        x = self.ct.table[self.a[i]][v.correction[0]]
        y = self.ct.table[self.a[j]][w.correction[0]]
        sid = self.reg.pair_join(x, y)
        free = tuple(u for u in range(self.t) if u not in (i, j))
        return self._completes(sid, free)

    def _completes(self, sid, free: tuple) -> bool:
        if not free:
            return sid == self.reg.full_id
        key = (sid, free)
        got = self._complete_memo.get(key)
        if got is None:
            got = False
            rest = free[1:]
            for z in self.L.coset_indices(self.a[free[0]], self.limits):
                if self._completes(self.reg.join_with_element(sid, z), rest):
                    got = True
                    break
            self._complete_memo[key] = got
        return got


def crown_graph(L: MonolithicGroup, t: int, eta: int,
                a: Optional[Sequence[int]] = None,
                table: Optional[OrbitTable] = None,
                drop_isolated: bool = True,
                limits: Limits = DEFAULT_LIMITS) -> ElementGraph:
    """The graph Gamma_{a_1..a_t}(L_eta) on formal (row, correction) vertices.

    With ``drop_isolated`` the Delta version is returned.  Vertex count is
    capped at t * |N|^eta <= max_elements.
    """
    builder = CrownGraphBuilder(L, t, eta, a, table, limits)
    if builder.n_vertices() > limits.max_elements:
        raise CapExceededError("crown graph vertex count over cap")
    corrections = builder.corrections()
    verts = [CrownVertex(i, c) for i in range(t) for c in corrections]
    adjacency = [[] for _ in verts]
    per_row = len(corrections)
    for i in range(t):
        for j in range(i + 1, t):
            for vi, v in enumerate(verts[i * per_row:(i + 1) * per_row]):
                for wi, w in enumerate(verts[j * per_row:(j + 1) * per_row]):
                    if builder.edge(v, w):
                        adjacency[i * per_row + vi].append(j * per_row + wi)
                        adjacency[j * per_row + wi].append(i * per_row + vi)
    for nbrs in adjacency:
        nbrs.sort()
    labels = list(verts)
    if drop_isolated:
        keep = [v for v in range(len(verts)) if adjacency[v]]
        remap = {v: k for k, v in enumerate(keep)}
        adjacency = [sorted(remap[w] for w in adjacency[v]) for v in keep]
        labels = [labels[v] for v in keep]
    return ElementGraph("crown", labels, adjacency, builder.L.group,
                        {"t": t, "eta": eta, "a": builder.a})


# ---------------------------------------------------------------------------
# weak connectivity


@dataclass
class RowCheck:
    row: int
    vertices: int
    components: int
    passed: bool
    witness_depths: dict  # conjugator BFS depth -> count


@dataclass
class WeakConnectivityReport:
    t: int
    eta: int
    a: tuple
    mode: str
    n_vertices: int
    n_non_isolated: int
    n_components: int
    rows: list
    passed: bool
    seed: Optional[int] = None
    sample_size: Optional[int] = None

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        return (f"weak connectivity {state}: t={self.t} eta={self.eta} "
                f"components={self.n_components} mode={self.mode}")


def _socle_bfs_order(L: MonolithicGroup, limits: Limits) -> list:
    """Socle elements ordered by word length in the socle generators."""
    ct = L.ct(limits)
    gens = [ct.index[g.images] for g in L.socle.generators]
    order = [ct.identity]
    seen = {ct.identity}
    qi = 0
    while qi < len(order):
        x = order[qi]
        qi += 1
        for g in gens:
            y = ct.table[x][g]
            if y not in seen:
                seen.add(y)
                order.append(y)
    return order


def weak_connectivity(L: MonolithicGroup, t: int, eta: int,
                      a: Optional[Sequence[int]] = None,
                      table: Optional[OrbitTable] = None,
                      limits: Limits = DEFAULT_LIMITS) -> WeakConnectivityReport:
    """Exhaustive weak-connectivity check of Delta_{a_1..a_t}(L_eta).

    For every row i and every ordered pair of row-i vertices (v1, v2) of
    the Delta graph there must be m in M = N^eta with v1 and v2^m in the
    same component.  Conjugators are tried in BFS order (identity first).
    """
    builder = CrownGraphBuilder(L, t, eta, a, table, limits)
    ct = builder.ct
    corrections = builder.corrections()
    per_row = len(corrections)
    n = t * per_row
    if n > limits.max_elements:
        raise CapExceededError("crown graph vertex count over cap")
    rank = {c: k for k, c in enumerate(corrections)}

    # stream edges into union-find; remember non-isolation
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    non_isolated = bytearray(n)
    verts = [CrownVertex(i, c) for i in range(t) for c in corrections]
    for i in range(t):
        for j in range(i + 1, t):
            for vi in range(per_row):
                v = verts[i * per_row + vi]
                for wi in range(per_row):
                    w = verts[j * per_row + wi]
                    if builder.edge(v, w):
                        a_idx, b_idx = i * per_row + vi, j * per_row + wi
                        non_isolated[a_idx] = non_isolated[b_idx] = 1
                        ra, rb = find(a_idx), find(b_idx)
                        if ra != rb:
                            parent[rb] = ra

    comp_of = {v: find(v) for v in range(n) if non_isolated[v]}
    n_components = len(set(comp_of.values()))

    socle_order = _socle_bfs_order(L, limits)
    m_order = list(itertools.product(socle_order, repeat=eta))
    inv = ct.inv
    tbl = ct.table

    def conj_vertex(v: CrownVertex, m: tuple) -> CrownVertex:
        ai = builder.a[v.row]
        new = []
        for c, u in zip(v.correction, m):
            val = tbl[tbl[inv[u]][tbl[ai][c]]][u]   # u^-1 (a_i c) u
            new.append(tbl[inv[ai]][val])
        return CrownVertex(v.row, tuple(new))

    rows = []
    all_pass = True
    for i in range(t):
        row_vs = [i * per_row + k for k in range(per_row) if non_isolated[i * per_row + k]]
        row_comps = {comp_of[v] for v in row_vs}
        depths = {}
        row_pass = True
        for v_idx in row_vs:
            v = verts[v_idx]
            reach = set()
            depth_used = 0
            for depth, m in enumerate(m_order):
                w = conj_vertex(v, m)
                w_idx = w.row * per_row + rank[w.correction]
                if non_isolated[w_idx]:
                    reach.add(comp_of[w_idx])
                if row_comps <= reach:
                    depth_used = depth
                    break
            else:
                row_pass = False
                all_pass = False
            depths[depth_used] = depths.get(depth_used, 0) + 1
        rows.append(RowCheck(i, len(row_vs), len(row_comps), row_pass, depths))
    return WeakConnectivityReport(
        t, eta, builder.a, "exhaustive", n, sum(non_isolated), n_components,
        rows, all_pass)


def generating_coset_patterns(L: MonolithicGroup, t: int,
                              limits: Limits = DEFAULT_LIMITS) -> list:
    """Socle-coset patterns admitting a generating t-tuple lift.

    Patterns are tuples of canonical (minimal) coset representatives; a
    pattern qualifies when its representatives generate L together with
    the socle, which for t >= d(L) guarantees a generating lift by the
    normal-correction lemma.  Each pattern comes with its canonical lift
    (first generating tuple in lexicographic order).
    """
    reg = registry_for(L.group, limits)
    ct = L.ct(limits)
    socle = L.socle_indices(limits)
    reps = sorted({min(L.coset_indices(x, limits)) for x in range(ct.n)})
    n_gens = [ct.index[p.images] for p in L.socle.generators]
    out = []
    for pattern in itertools.product(reps, repeat=t):
        if reg.subgroup_of(list(pattern) + n_gens) != reg.full_id:
            continue
        lift = _first_generating_lift(L, pattern, reg, ct, limits)
        out.append((pattern, lift))
    return out


def _first_generating_lift(L, pattern, reg, ct, limits) -> tuple:
    cosets = [L.coset_indices(x, limits) for x in pattern]

    def recurse(prefix, sid, depth):
        if depth == len(cosets):
            return tuple(prefix) if sid == reg.full_id else None
        for x in cosets[depth]:
            got = recurse(prefix + [x], reg.join_with_element(sid, x),
                          depth + 1)
            if got is not None:
                return got
        return None

    lift = recurse([], reg.trivial_id, 0)
    if lift is None:
        raise WitnessSearchFailure(
            "no generating lift found; contradicts the correction lemma")
    return lift


def t_locally_connected(L: MonolithicGroup, t: int, eta: int,
                        limits: Limits = DEFAULT_LIMITS) -> tuple:
    """Weak connectivity across every generating coset pattern.

    The crown graph only depends on the tuple through its coset pattern
    (replacing a_i by a_i n relabels the row's corrections bijectively),
    so one canonical lift per pattern is exhaustive.  Returns
    (all_passed, reports).
    """
    reports = []
    for pattern, lift in generating_coset_patterns(L, t, limits):
        reports.append(weak_connectivity(L, t, eta, a=lift, limits=limits))
    return all(r.passed for r in reports), reports


def weak_connectivity_sampled(L: MonolithicGroup, t: int, eta: int,
                              table: OrbitTable,
                              a: Optional[Sequence[int]] = None,
                              samples: int = 60, seed: int = 0,
                              limits: Limits = DEFAULT_LIMITS) -> WeakConnectivityReport:
    """Sampled weak connectivity for graphs too large to hold explicitly.

    Seeded pairs of same-row vertices are checked: some conjugate of the
    second endpoint must be joined to the first by a path in the implicit
    Delta graph (bidirectional neighbourhood meet, then deeper BFS).
    """
    import random

    builder = CrownGraphBuilder(L, t, eta, a, table, limits)
    ct = builder.ct
    rng = random.Random(seed)
    corrections = builder.corrections()
    socle_order = _socle_bfs_order(L, limits)
    m_order = list(itertools.product(socle_order, repeat=eta))
    inv, tbl = ct.inv, ct.table

    def conj_vertex(v: CrownVertex, m: tuple) -> CrownVertex:
        ai = builder.a[v.row]
        new = []
        for c, u in zip(v.correction, m):
            val = tbl[tbl[inv[u]][tbl[ai][c]]][u]
            new.append(tbl[inv[ai]][val])
        return CrownVertex(v.row, tuple(new))

    def neighbours(v: CrownVertex) -> set:
        out = set()
        for j in range(t):
            if j == v.row:
                continue
            for c in corrections:
                w = CrownVertex(j, c)
                if builder.edge(v, w):
                    out.add(w)
        return out

    def non_isolated(v: CrownVertex) -> bool:
        for j in range(t):
            if j == v.row:
                continue
            for c in corrections:
                if builder.edge(v, CrownVertex(j, c)):
                    return True
        return False

    def joined(v: CrownVertex, w: CrownVertex) -> bool:
        nv = neighbours(v)
        if w in nv:
            return True
        nw = neighbours(w)
        if nv & nw:
            return True
        # second ring around v
        ring = set()
        for u in nv:
            ring |= neighbours(u)
        return bool(ring & nw) or w in ring

    checked = 0
    failures = 0
    depths = {}
    while checked < samples:
        row = rng.randrange(t)
        v1 = CrownVertex(row, tuple(rng.choice(corrections)))
        v2 = CrownVertex(row, tuple(rng.choice(corrections)))
        if not (non_isolated(v1) and non_isolated(v2)):
            continue
        checked += 1
        ok = False
        for depth, m in enumerate(m_order[:len(socle_order)]):
            if joined(v1, conj_vertex(v2, m)):
                depths[depth] = depths.get(depth, 0) + 1
                ok = True
                break
        if not ok:
            failures += 1
    return WeakConnectivityReport(
        t, eta, builder.a, "sampled", t * len(corrections), -1, -1,
        [RowCheck(-1, checked, -1, failures == 0, depths)],
        failures == 0, seed=seed, sample_size=samples)


# ---------------------------------------------------------------------------
# index partitions and the meet condition


@dataclass(frozen=True)
class IndexPartition:
    """Partition of {0..n-1}; ordered by coarseness, single block smallest."""

    n: int
    parts: tuple  # tuple of sorted tuples, ordered by smallest member

    @classmethod
    def from_keys(cls, keys: Sequence) -> "IndexPartition":
        groups: dict = {}
        for pos, key in enumerate(keys):
            groups.setdefault(key, []).append(pos)
        parts = tuple(sorted((tuple(sorted(g)) for g in groups.values()),
                             key=lambda p: p[0]))
        return cls(len(keys), parts)

    @property
    def is_single_block(self) -> bool:
        return len(self.parts) <= 1

    @property
    def is_discrete(self) -> bool:
        return all(len(p) == 1 for p in self.parts)

    def refines(self, other: "IndexPartition") -> bool:
        """True if every part of self lies inside a part of other."""
        where = {}
        for k, part in enumerate(other.parts):
            for x in part:
                where[x] = k
        return all(len({where[x] for x in part}) == 1 for part in self.parts)


def partition_meet(partitions: Sequence[IndexPartition]) -> IndexPartition:
    """Greatest lower bound when the single-block partition is smallest.

    With that order the meet is the finest common coarsening: positions
    are linked whenever some partition puts them in one part.
    """
    if not partitions:
        raise GroupArgumentError("need at least one partition")
    n = partitions[0].n
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for pi in partitions:
        for part in pi.parts:
            for x in part[1:]:
                ra, rb = find(part[0]), find(x)
                if ra != rb:
                    parent[rb] = ra
    keys = [find(x) for x in range(n)]
    return IndexPartition.from_keys(keys)


def element_orbit_labels(L: MonolithicGroup,
                         limits: Limits = DEFAULT_LIMITS) -> list:
    """X-orbit label per element index of L."""
    X = L.x_group(limits)
    ct = L.ct(limits)
    parent = list(range(ct.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in X.perm_group.generators:
        for x in range(ct.n):
            ra, rb = find(x), find(g(x))
            if ra != rb:
                parent[rb] = ra
    return [find(x) for x in range(ct.n)]


def partitions_pi(table: OrbitTable, columns: Optional[Sequence[tuple]] = None,
                  limits: Limits = DEFAULT_LIMITS):
    """Row partitions of the column set by X-conjugacy of entries.

    Columns default to the complete orbit-representative system (the
    reference matrix for L_delta).  Positions j1, j2 fall in the same
    part of pi_i exactly when the row-i entries are in one X-orbit.
    Returns (partitions, meet, meet_is_single_block).
    """
    if columns is None:
        columns = table.reps
    labels = element_orbit_labels(table.mono, limits)
    partitions = []
    for i in range(table.t):
        partitions.append(IndexPartition.from_keys(
            [labels[col[i]] for col in columns]))
    meet = partition_meet(partitions)
    return partitions, meet, meet.is_single_block


# ---------------------------------------------------------------------------
# counting and witness lemma checks


def delu_fraction(L: MonolithicGroup, l: Permutation,
                  b: Sequence[Permutation],
                  limits: Limits = DEFAULT_LIMITS) -> Fraction:
    """Exact density of correction tuples keeping <l, b_1 n_1, ..> = L.

    Preconditions: d = len(b) >= max(2, d_l(L)) and <l, b_1, ..., b_d> = L.
    """
    reg = registry_for(L.group, limits)
    ct = L.ct(limits)
    try:
        l_idx = ct.index[l.images]
        b_idx = [ct.index[p.images] for p in b]
    except KeyError:
        raise PreconditionError("l and b must lie in L")
    d = len(b_idx)
    if d < 2:
        raise PreconditionError("need d >= 2")
    l_sub = reg.subgroup_of([l_idx])
    if reg.dist_to_full(l_sub) > d:
        raise PreconditionError("d < d_l(L)")
    if reg.subgroup_of([l_idx] + b_idx) != reg.full_id:
        raise PreconditionError("<l, b_1, ..., b_d> != L")
    socle = L.socle_indices(limits)
    if len(socle) ** d > limits.max_search_space:
        raise CapExceededError("|N|^d over search cap")
    full = reg.full_id
    tbl = ct.table
    count = 0
    for combo in itertools.product(socle, repeat=d):
        sid = l_sub
        for bi, ni in zip(b_idx, combo):
            sid = reg.join_with_element(sid, tbl[bi][ni])
        if sid == full:
            count += 1
    return Fraction(count, len(socle) ** d)


def cln_witness(G: MonolithicGroup, a: Permutation, b: Permutation,
                limits: Limits = DEFAULT_LIMITS) -> tuple:
    """Socle corrections (n, m) with a n and b m commuting.

    Precondition: [a, b] lies in the socle.  Search order: n ascending in
    element order (identity first), m via centralizer intersection, so
    [a, b] = 1 returns (1, 1).  Exhaustion raises WitnessSearchFailure,
    which callers treat as a theorem violation.
    """
    G.require_nonabelian()
    ct = G.ct(limits)
    try:
        a_idx = ct.index[a.images]
        b_idx = ct.index[b.images]
    except KeyError:
        raise PreconditionError("a and b must lie in the group")
    socle = G.socle_indices(limits)
    socle_set = frozenset(socle)
    tbl, inv = ct.table, ct.inv
    comm = tbl[tbl[inv[a_idx]][inv[b_idx]]][tbl[a_idx][b_idx]]
    if comm not in socle_set:
        raise PreconditionError("[a, b] does not lie in the socle")
    b_coset = frozenset(tbl[b_idx][n] for n in socle)
    for n in socle:
        an = tbl[a_idx][n]
        cent = ct.centralizer_set(an)
        if b_idx in cent:  # m = identity works; covers [a, b] = 1 with (1, 1)
            return ct.perm(n), ct.perm(ct.identity)
        if len(cent) <= len(b_coset):
            meet = [c for c in cent if c in b_coset]
        else:
            meet = [c for c in b_coset if c in cent]
        if meet:
            c = min(meet)
            m = tbl[inv[b_idx]][c]
            return ct.perm(n), ct.perm(m)
    raise WitnessSearchFailure(
        "no commuting correction found; contradicts the centralizer theorem")


def unico_rank_check(L: MonolithicGroup, t: int,
                     b: Sequence[Permutation],
                     limits: Limits = DEFAULT_LIMITS) -> bool:
    """Check d_{b_t}(L) <= t - 1 for tuples with <b_1..b_t> N = L, t >= 3."""
    if t < 3 or len(b) != t:
        raise PreconditionError("need t >= 3 elements")
    reg = registry_for(L.group, limits)
    ct = L.ct(limits)
    try:
        b_idx = [ct.index[p.images] for p in b]
        n_gens = [ct.index[p.images] for p in L.socle.generators]
    except KeyError:
        raise PreconditionError("b must lie in L")
    if reg.subgroup_of(b_idx + n_gens) != reg.full_id:
        raise PreconditionError("<b_1, ..., b_t> N != L")
    return reg.dist_to_full(reg.subgroup_of([b_idx[-1]])) <= t - 1
