"""Named verification suites, runnable independently via the CLI.

Each verifier exercises one statement-level property on a documented
instance set and returns a VerifyReport; a failed instance carries a
witness description.  All randomness is seeded, and reports record the
seed and instance counts so runs are reproducible.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .config import DEFAULT_LIMITS, Limits
from .perm_core import (
    Permutation,
    PermutationGroup,
    WitnessSearchFailure,
    group_from_generators,
    is_normal,
    quotient,
)
from .group_structure import (
    d_X,
    frattini,
    gaschutz_lift,
    is_soluble,
    min_rank,
    normal_subgroups,
    registry_for,
)
from .graphs import (
    build_delta_d,
    build_gamma_d,
    build_lambda,
    components,
    delta_summary,
)
from .crown_powers import (
    MonolithicGroup,
    build_crown_power,
    circ,
    cln_witness,
    crown_generates,
    delta_Lt,
    delu_fraction,
    generation_via_orbits,
    omega_table,
    partitions_pi,
    unico_rank_check,
    weak_connectivity,
    weak_connectivity_sampled,
)
from . import catalog as cat


# the minimum correction density asserted by the delu suite
MIN_CORRECTION_DENSITY = Fraction(53, 90)


@dataclass
class VerifyReport:
    lemma: str
    passed: bool
    instances: int
    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)
    seed: Optional[int] = None
    elapsed_ms: int = 0

    def summary(self) -> str:
        state = "PASS" if self.passed else "FAIL"
        extra = "" if not self.failures else f", {len(self.failures)} failures"
        return (f"[{state}] {self.lemma}: {self.instances} instances{extra}")

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "passed": self.passed,
                "instances": self.instances, "failures": self.failures,
                "details": {k: str(v) for k, v in self.details.items()},
                "seed": self.seed, "elapsed_ms": self.elapsed_ms}


def _mono(entry_id: str) -> MonolithicGroup:
    builders = {
        "A5": lambda: cat.alternating(5),
        "S5": lambda: cat.symmetric(5),
        "PSL(2,7)": lambda: cat.psl2(7),
        "PGL(2,7)": lambda: cat.pgl2(7),
    }
    e = builders[entry_id]()
    return MonolithicGroup.from_group(e.group(), entry_id)


# ---------------------------------------------------------------------------
# gaschutz-style correction lifting (modgg)


def verify_modgg(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                 samples_per_subgroup: int = 6) -> VerifyReport:
    """Sampled lifting instances over catalog groups with proper normals."""
    t0 = time.perf_counter()
    rng = random.Random(seed)
    group_ids = ["S4", "A4", "Dih4", "Dih6", "S3xS3", "A4xC2"]
    entries = {e.id: e for e in cat.default_catalog()}
    failures = []
    instances = 0
    for gid in group_ids:
        G = entries[gid].group()
        elems = G.elements(limits)
        lattice = normal_subgroups(G, limits)
        for M in lattice.normals:
            if M.order in (1, G.order):
                continue
            for _ in range(samples_per_subgroup):
                X = [rng.choice(elems) for _ in range(rng.randrange(3))]
                r = max(1, d_X(G, X, limits))
                # rejection-sample g with <g, X, M> = G
                for _ in range(200):
                    g = [rng.choice(elems) for _ in range(r)]
                    gens = list(g) + list(X) + list(M.generators)
                    if PermutationGroup(G.degree, gens,
                                        known_order=G.order).order == G.order:
                        break
                else:
                    continue
                instances += 1
                try:
                    ns = gaschutz_lift(G, M, X, g, limits)
                except WitnessSearchFailure as e:
                    failures.append({"group": gid, "M": M.order, "err": str(e)})
                    continue
                corrected = [gi * ni for gi, ni in zip(g, ns)]
                ok = PermutationGroup(
                    G.degree, corrected + list(X),
                    known_order=G.order).order == G.order
                if not ok:
                    failures.append({"group": gid, "M": M.order,
                                     "err": "corrected tuple fails"})
    return VerifyReport("modgg", not failures, instances, failures,
                        {"groups": group_ids}, seed,
                        int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# correction-density lower bound (delu)


def verify_delu(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                cross_checks: int = 20) -> VerifyReport:
    """Exhaustive density check for L = A5, d = 2.

    |Omega(l; b_1, b_2)| depends on the b_i only through their socle
    cosets (translate n_i by the coset offset), and the socle here is all
    of L, so one computation per l covers every valid (l, b_1, b_2).
    Seeded direct cross-checks confirm the translation invariance.
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    L = _mono("A5")
    reg = registry_for(L.group, limits)
    ct = L.ct(limits)
    full = reg.full_id
    failures = []
    fractions = {}
    instances = 0
    for l_idx in range(ct.n):
        # canonical valid completion: first (b1, b2) with <l, b1, b2> = L
        found = None
        l_sub = reg.subgroup_of([l_idx])
        for b1 in range(ct.n):
            s1 = reg.join_with_element(l_sub, b1)
            for b2 in range(ct.n):
                if reg.join_with_element(s1, b2) == full:
                    found = (b1, b2)
                    break
            if found:
                break
        if found is None:
            continue
        instances += 1
        frac = delu_fraction(L, ct.perm(l_idx),
                             [ct.perm(found[0]), ct.perm(found[1])], limits)
        fractions[l_idx] = frac
        if frac < MIN_CORRECTION_DENSITY:
            failures.append({"l": ct.perm(l_idx).cycle_string(),
                             "fraction": str(frac)})
    # seeded cross-checks: other valid completions give the same fraction
    checked = 0
    while checked < cross_checks:
        l_idx = rng.randrange(ct.n)
        b1, b2 = rng.randrange(ct.n), rng.randrange(ct.n)
        if reg.subgroup_of([l_idx, b1, b2]) != full:
            continue
        checked += 1
        frac = delu_fraction(L, ct.perm(l_idx),
                             [ct.perm(b1), ct.perm(b2)], limits)
        if frac != fractions[l_idx]:
            failures.append({"l": l_idx, "b": (b1, b2),
                             "err": "translation invariance broken"})
    min_frac = min(fractions.values())
    return VerifyReport(
        "delu", not failures, instances + checked, failures,
        {"min_fraction": min_frac, "bound": MIN_CORRECTION_DENSITY,
         "cross_checks": checked}, seed,
        int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# commuting corrections (cln)


def verify_cln(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
               group_ids=("A5", "S5", "PSL(2,7)", "PGL(2,7)")) -> VerifyReport:
    """Exhaustive witness search over all pairs with commutator in the socle."""
    t0 = time.perf_counter()
    failures = []
    instances = 0
    per_group = {}
    for gid in group_ids:
        M = _mono(gid)
        ct = M.ct(limits)
        socle_set = frozenset(M.socle_indices(limits))
        tbl, inv = ct.table, ct.inv
        count = 0
        for a in range(ct.n):
            for b in range(ct.n):
                comm = tbl[tbl[inv[a]][inv[b]]][tbl[a][b]]
                if comm not in socle_set:
                    continue
                count += 1
                try:
                    n, m = cln_witness(M, ct.perm(a), ct.perm(b), limits)
                except WitnessSearchFailure:
                    failures.append({"group": gid, "a": a, "b": b})
        per_group[gid] = count
        instances += count
    return VerifyReport("cln", not failures, instances, failures,
                        {"pairs": per_group}, seed,
                        int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# residual rank bound (unico-rank)


def verify_unico_rank(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                      samples: int = 400) -> VerifyReport:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    instances = 0
    for gid in ("A5", "S5"):
        M = _mono(gid)
        ct = M.ct(limits)
        reg = registry_for(M.group, limits)
        n_gens = [ct.index[p.images] for p in M.socle.generators]
        done = 0
        while done < samples:
            b = [rng.randrange(ct.n) for _ in range(3)]
            if reg.subgroup_of(b + n_gens) != reg.full_id:
                continue
            done += 1
            instances += 1
            if not unico_rank_check(M, 3, [ct.perm(i) for i in b], limits):
                failures.append({"group": gid, "b": b})
    return VerifyReport("unico-rank", not failures, instances, failures,
                        {}, seed, int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# orbit criterion vs direct generation (primo)


def verify_primo(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                 random_samples: int = 10**4,
                 exhaustive_slice: int = 10**5) -> VerifyReport:
    """Orbit criterion against the stabilizer-chain oracle on A5, t=2, eta=2."""
    t0 = time.perf_counter()
    rng = random.Random(seed)
    L = _mono("A5")
    ct = L.ct(limits)
    delta, table = delta_Lt(L, 2, limits=limits)
    cp = build_crown_power(L, 2, limits)
    socle = L.socle_indices(limits)
    failures = []

    def check(rows) -> bool:
        pred = generation_via_orbits(table, rows, limits)
        elems = [circ(L, ct.perm(table.a[i]),
                      [ct.perm(r) for r in rows[i]]) for i in range(2)]
        direct = crown_generates(cp, elems)
        if pred != direct:
            failures.append({"rows": rows, "orbit": pred, "direct": direct})
        return pred == direct

    agreements = 0
    for _ in range(random_samples):
        rows = [tuple(rng.choice(socle) for _ in range(2)) for _ in range(2)]
        if check(rows):
            agreements += 1
    for combo in itertools.islice(
            itertools.product(socle, repeat=4), exhaustive_slice):
        rows = [combo[:2], combo[2:]]
        if check(rows):
            agreements += 1
    total = random_samples + exhaustive_slice
    return VerifyReport(
        "primo", not failures, total, failures,
        {"agreements": agreements, "delta": delta,
         "random": random_samples, "slice": exhaustive_slice},
        seed, int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# component conjugation invariance (coniugo)


def verify_coniugo(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                   max_order: int = 200) -> VerifyReport:
    """Exhaustive: components of Delta_d are unions of conjugacy classes."""
    t0 = time.perf_counter()
    failures = []
    instances = 0
    for entry in cat.default_catalog():
        G = entry.group()
        if G.order > max_order:
            continue
        cert = min_rank(G, limits)
        if cert.d <= 1:
            continue
        ds = ([2] if cert.d == 2 else []) + [3]
        for d in ds:
            graph = build_delta_d(G, d, limits)
            comps = components(graph)
            ct = G.cayley_table(limits)
            pos = {ct.index[p.images]: v
                   for v, p in enumerate(graph.labels)}
            for v, p in enumerate(graph.labels):
                instances += 1
                x = ct.index[p.images]
                for z in range(ct.n):
                    xz = ct.conj(x, z)
                    w = pos.get(xz)
                    if w is None or comps.ids[w] != comps.ids[v]:
                        failures.append({"group": entry.id, "d": d,
                                         "vertex": p.cycle_string(), "z": z})
                        break
    return VerifyReport("coniugo", not failures, instances, failures,
                        {"max_order": max_order}, seed,
                        int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# Frattini-quotient reduction (frat)


def verify_frat(seed: int = 42, limits: Limits = DEFAULT_LIMITS) -> VerifyReport:
    """If Gamma_d(G/Frat(G)) is connected then Gamma_d(G) is connected."""
    t0 = time.perf_counter()
    group_ids = ["Dih4", "Dih8", "Dih16", "C4xC2", "C4xC4", "Dih4xC2",
                 "S4", "E2^3"]
    entries = {e.id: e for e in cat.default_catalog()}
    failures = []
    instances = 0
    nonvacuous = 0
    for gid in group_ids:
        G = entries[gid].group()
        F = frattini(G, limits)
        if F.order == 1:
            Q = G
        else:
            Q, _ = quotient(G, F, limits)
        cert = min_rank(G, limits)
        if cert.d <= 1:
            continue
        for d in (2, 3, max(2, cert.d)):
            instances += 1
            gq = build_gamma_d(Q, d, limits)
            if not components(gq).connected:
                continue  # hypothesis fails; implication vacuous
            nonvacuous += 1
            gg = build_gamma_d(G, d, limits)
            if not components(gg).connected:
                failures.append({"group": gid, "d": d})
    return VerifyReport("frat", not failures, instances, failures,
                        {"non_vacuous": nonvacuous, "groups": group_ids},
                        seed, int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# quotient path lifting (induzionenormale)


def verify_induzionenormale(seed: int = 42,
                            limits: Limits = DEFAULT_LIMITS) -> VerifyReport:
    """Non-isolated x, y with xM, yM in one quotient component admit m in M
    with x and y m in one component."""
    t0 = time.perf_counter()
    entries = {e.id: e for e in cat.default_catalog()}
    cases = [("S4", 4, 2), ("S4", 4, 3), ("Dih6", 3, 2),
             ("A4xC2", 2, 2), ("S3xS3", 6, 2)]
    failures = []
    instances = 0
    for gid, m_order, d in cases:
        G = entries[gid].group()
        lattice = normal_subgroups(G, limits)
        M = next(N for N in lattice.normals if N.order == m_order)
        Q, hom = quotient(G, M, limits)
        if min_rank(Q, limits).d <= 1:
            continue  # cyclic quotient: the graph policy excludes it
        gamma = build_gamma_d(G, d, limits)
        comps = components(gamma)
        gamma_q = build_gamma_d(Q, d, limits)
        comps_q = components(gamma_q)
        ct = G.cayley_table(limits)
        ctq = Q.cayley_table(limits)
        m_elems = M.elements(limits)
        vert = {i: v for v, i in
                enumerate(ct.index[p.images] for p in gamma.labels)}
        vert_q = {i: v for v, i in
                  enumerate(ctq.index[p.images] for p in gamma_q.labels)}
        non_iso = [x for x, v in vert.items() if gamma.adjacency[v]]
        for x in non_iso:
            for y in non_iso:
                qx = vert_q[ctq.index[hom(ct.perm(x)).images]]
                qy = vert_q[ctq.index[hom(ct.perm(y)).images]]
                if comps_q.ids[qx] != comps_q.ids[qy]:
                    continue
                instances += 1
                target = comps.ids[vert[x]]
                ok = any(
                    comps.ids[vert[ct.index[(ct.perm(y) * m).images]]] == target
                    for m in m_elems)
                if not ok:
                    failures.append({"group": gid, "d": d, "x": x, "y": y})
    return VerifyReport("induzionenormale", not failures, instances, failures,
                        {"cases": cases}, seed,
                        int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# soluble-quotient reduction (norsol)


def verify_norsol(seed: int = 42, limits: Limits = DEFAULT_LIMITS) -> VerifyReport:
    """Delta_d(G/N) connected with N soluble normal implies Delta_d(G) connected."""
    t0 = time.perf_counter()
    entries = {e.id: e for e in cat.default_catalog()}
    cases = [("S4", 4, 2), ("S4", 12, 2), ("S4", 4, 3), ("A4", 4, 2),
             ("A4xC2", 2, 2), ("S3xS3", 9, 2), ("Dih6", 3, 2),
             ("Dih12", 3, 2)]
    failures = []
    instances = 0
    for gid, n_order, d in cases:
        G = entries[gid].group()
        lattice = normal_subgroups(G, limits)
        N = next(M for M in lattice.normals if M.order == n_order)
        if not is_soluble(N):
            failures.append({"group": gid, "err": "instance N not soluble"})
            continue
        Q, _ = quotient(G, N, limits)
        dq = min_rank(Q, limits).d
        if dq <= 1 or dq > d:
            continue  # cyclic quotient or empty Delta_d: nothing to conclude
        instances += 1
        if not delta_summary(Q, d, limits).connected:
            continue
        if not delta_summary(G, d, limits).connected:
            failures.append({"group": gid, "N": n_order, "d": d})
    return VerifyReport("norsol", not failures, instances, failures,
                        {"cases": cases}, seed,
                        int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# weak connectivity of crown graphs (weak-conn)


def verify_weak_conn(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                     tuples_per_pattern: int = 3,
                     eta2_samples: int = 60) -> VerifyReport:
    """t = 3, eta = 1 exhaustively for A5 and PSL(2,7); eta = 2 sampled for A5.

    For a simple socle there is a single coset pattern; several seeded
    generating triples are checked per pattern (the graph only depends on
    the pattern, so equal results double as an invariance check).
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    failures = []
    instances = 0
    details = {}
    for gid in ("A5", "PSL(2,7)"):
        L = _mono(gid)
        ct = L.ct(limits)
        reg = registry_for(L.group, limits)
        tuples = [None]  # canonical
        tried = 0
        while len(tuples) < 1 + tuples_per_pattern and tried < 500:
            tried += 1
            a = tuple(rng.randrange(ct.n) for _ in range(3))
            if reg.subgroup_of(a) == reg.full_id:
                tuples.append(a)
        for a in tuples:
            instances += 1
            rep = weak_connectivity(L, 3, 1, a=a, limits=limits)
            if not rep.passed:
                failures.append({"group": gid, "a": a, "eta": 1})
        details[gid] = {"eta1_tuples": len(tuples)}
    # A5, eta = 2, sampled
    L = _mono("A5")
    _, table = delta_Lt(L, 3, limits=limits)
    rep = weak_connectivity_sampled(L, 3, 2, table, samples=eta2_samples,
                                    seed=seed, limits=limits)
    instances += rep.sample_size
    if not rep.passed:
        failures.append({"group": "A5", "eta": 2, "mode": "sampled"})
    details["A5_eta2"] = {"samples": rep.sample_size, "seed": seed}
    return VerifyReport("weak-conn", not failures, instances, failures,
                        details, seed, int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# bipartite coset graph connectivity (lambda)


def verify_lambda(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                  choice_checks: int = 5) -> VerifyReport:
    """All representative choices for the nontrivial coset of A5 in S5.

    The adjacency depends only on the underlying element pairs, so every
    choice of distinct representatives x, y yields the same labelled
    graph; a seeded handful of rebuilds confirms that, and the canonical
    graph is checked for connectivity.  The x = y instance must be
    rejected (and is counted as the documented rejection case).
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    S = cat.alternating(5).group()
    S5 = cat.symmetric(5).group()
    odd = [p for p in S5.elements(limits) if not S.contains(p)]
    failures = []
    base = build_lambda(S, odd[0], odd[1], limits)
    comps = components(base)
    if not comps.connected:
        failures.append({"err": f"{comps.count} components"})
    isolated = sum(1 for a in base.adjacency if not a)
    if isolated:
        failures.append({"err": f"{isolated} isolated vertices"})
    checked = 0
    for _ in range(choice_checks):
        x, y = rng.sample(odd, 2)
        g = build_lambda(S, x, y, limits)
        checked += 1
        if g.adjacency != base.adjacency:
            failures.append({"err": "representative choice changed the graph",
                             "x": x.cycle_string(), "y": y.cycle_string()})
    # the identical-representative instance is rejected and logged
    rejected = False
    try:
        build_lambda(S, odd[0], odd[0], limits)
    except Exception:
        rejected = True
    if not rejected:
        failures.append({"err": "x = y instance was not rejected"})
    n_choices = len(odd) * (len(odd) - 1)
    return VerifyReport(
        "lambda", not failures, 1 + checked + 1, failures,
        {"vertices": base.n_vertices, "edges": base.n_edges,
         "equivalent_choices": n_choices, "rejected_x_eq_y": rejected},
        seed, int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# partition meet condition (sempreuno)


def verify_sempreuno(seed: int = 42, limits: Limits = DEFAULT_LIMITS,
                     submatrix_samples: int = 30) -> VerifyReport:
    """Full-width meet condition for A5, t = 3, plus sub-matrix reports.

    The asserted instance is the complete orbit-representative matrix
    (eta = delta(L, t)), which is the statement's own configuration.
    Sub-matrices of up to 3 columns from distinct orbits are evaluated
    and reported without being asserted: the statement does not promise
    the meet condition for proper sub-matrices.
    """
    t0 = time.perf_counter()
    rng = random.Random(seed)
    L = _mono("A5")
    delta, table = delta_Lt(L, 3, limits=limits)
    parts, meet, ok = partitions_pi(table, limits=limits)
    failures = []
    if not ok:
        failures.append({"err": "meet condition fails at full width",
                         "delta": delta})
    sub_pass = 0
    for _ in range(submatrix_samples):
        cols = [table.reps[i]
                for i in sorted(rng.sample(range(delta), 3))]
        _, _, sub_ok = partitions_pi(table, cols, limits=limits)
        sub_pass += bool(sub_ok)
    return VerifyReport(
        "sempreuno", not failures, 1 + submatrix_samples, failures,
        {"delta": delta, "submatrix_pass": sub_pass,
         "submatrix_total": submatrix_samples,
         "note": "sub-matrix results reported, not asserted"},
        seed, int((time.perf_counter() - t0) * 1000))


# ---------------------------------------------------------------------------
# registry


VERIFIERS: dict = {
    "modgg": verify_modgg,
    "delu": verify_delu,
    "cln": verify_cln,
    "unico-rank": verify_unico_rank,
    "primo": verify_primo,
    "coniugo": verify_coniugo,
    "frat": verify_frat,
    "induzionenormale": verify_induzionenormale,
    "norsol": verify_norsol,
    "weak-conn": verify_weak_conn,
    "lambda": verify_lambda,
    "sempreuno": verify_sempreuno,
}


def run_verifier(lemma: str, seed: int = 42,
                 limits: Limits = DEFAULT_LIMITS, **params) -> VerifyReport:
    try:
        fn = VERIFIERS[lemma]
    except KeyError:
        raise ValueError(
            f"unknown lemma id {lemma!r}; available: {sorted(VERIFIERS)}")
    return fn(seed=seed, limits=limits, **params)
