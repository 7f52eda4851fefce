"""Connectivity verification sweeps over a catalog.

Each record captures, per group and per d in the policy, the streaming
connectivity summary of Delta_d.  A disconnected Delta_d with
d >= max(3, d(G)), or a disconnected Delta_2, is a CRITICAL flag: the
connectivity theorems predict none, so any such flag fails the run.

Records are JSON lines; reruns with the same catalog, policy and seed are
byte-identical apart from the dedicated timing fields (timestamp,
elapsed_ms).
"""

from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

from . import __version__
from .config import DEFAULT_LIMITS, Limits
from .perm_core import CapExceededError
from .catalog import CatalogEntry
from .graphs import build_delta_d, components, delta_summary, diameter
from .group_structure import min_rank


@dataclass
class GraphVerdict:
    d: int
    n_vertices: int
    n_edges: int
    n_components: int
    connected: bool
    diameter: Optional[int] = None
    elapsed_ms: int = 0


@dataclass
class SweepRecord:
    group_id: str
    order: int
    degree: int
    d_min: Optional[int]  # d(G); None when the entry was skipped
    skipped: Optional[str]  # reason, e.g. "cyclic" or "over max-order"
    graphs: list
    critical: list
    error: Optional[str]
    elapsed_ms: int
    tool_version: str
    seed: int
    timestamp: float  # isolated so diffs can ignore it

    def to_json(self) -> str:
        out = dict(self.__dict__)
        out["graphs"] = [g.__dict__ for g in self.graphs]
        return json.dumps(out, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "SweepRecord":
        raw = json.loads(line)
        raw["graphs"] = [GraphVerdict(**g) for g in raw["graphs"]]
        return cls(**raw)


# -- d policies ---------------------------------------------------------------


def d_policy_default(d_min: int) -> list:
    """{2 if d(G) = 2} plus max(3, d(G)) .. d(G) + 1."""
    out = [2] if d_min == 2 else []
    out.extend(range(max(3, d_min), d_min + 2))
    return sorted(set(out))


def d_policy_theorem(d_min: int) -> list:
    """{max(3, d(G)), max(3, d(G)) + 1}: the rank-connectivity range."""
    lo = max(3, d_min)
    return [lo, lo + 1]


def d_policy_conjecture(d_min: int) -> list:
    """Just d = 2 for 2-generated groups."""
    return [2] if d_min == 2 else []


D_POLICIES = {
    "default": d_policy_default,
    "theorem": d_policy_theorem,
    "conjecture": d_policy_conjecture,
}


def resolve_policy(policy) -> Callable:
    if callable(policy):
        return policy
    try:
        return D_POLICIES[policy]
    except KeyError:
        raise ValueError(
            f"unknown d policy {policy!r}; available: {sorted(D_POLICIES)}")


# -- the sweep ---------------------------------------------------------------


def sweep_entry(entry: CatalogEntry, policy="default",
                with_diameter: bool = False, seed: int = 0,
                limits: Limits = DEFAULT_LIMITS) -> SweepRecord:
    """Analyze one catalog entry; errors are captured, not raised."""
    t0 = time.perf_counter()
    policy_fn = resolve_policy(policy)
    G = entry.group()
    record = SweepRecord(entry.id, G.order, entry.degree, None, None, [], [],
                         None, 0, __version__, seed, time.time())
    try:
        cert = min_rank(G, limits)
        if cert.d <= 1:
            record.skipped = "cyclic"
        else:
            record.d_min = cert.d
            for d in policy_fn(cert.d):
                g0 = time.perf_counter()
                if with_diameter:
                    graph = build_delta_d(G, d, limits)
                    comps = components(graph)
                    diam = max(diameter(graph, comps).values()) \
                        if graph.n_vertices else 0
                    verdict = GraphVerdict(
                        d, graph.n_vertices, graph.n_edges, comps.count,
                        comps.count <= 1, diam)
                else:
                    s = delta_summary(G, d, limits)
                    verdict = GraphVerdict(
                        d, s.n_vertices, s.n_edges, s.n_components,
                        s.connected)
                verdict.elapsed_ms = int((time.perf_counter() - g0) * 1000)
                record.graphs.append(verdict)
                if not verdict.connected and (d >= max(3, cert.d) or d == 2):
                    record.critical.append(
                        f"disconnected Delta_{d} ({verdict.n_components} "
                        "components)")
    except CapExceededError as e:
        record.error = f"cap exceeded: {e}"
    except Exception as e:  # per-entry isolation: one failure never aborts
        record.error = f"{type(e).__name__}: {e}"
    record.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return record


def _sweep_worker(args) -> str:
    raw, policy_name, with_diameter, seed, limits_dict = args
    entry = CatalogEntry(id=raw["id"], degree=raw["degree"],
                         generators=raw["generators"])
    return sweep_entry(entry, policy_name, with_diameter, seed,
                       Limits(**limits_dict)).to_json()


def sweep(entries: Sequence[CatalogEntry], max_order: Optional[int] = None,
          policy="default", with_diameter: bool = False, jobs: int = 1,
          seed: int = 0, limits: Limits = DEFAULT_LIMITS,
          skip_ids: Iterable[str] = ()) -> list:
    """Sweep the catalog; singleton errors are recorded, never fatal.

    Entries above ``max_order`` and ids in ``skip_ids`` (resume support)
    are skipped with an explicit record.  With jobs > 1 the entries are
    distributed over worker processes; record order follows the catalog.
    """
    skip = set(skip_ids)
    todo = []
    records: dict[int, SweepRecord] = {}
    for i, entry in enumerate(entries):
        if entry.id in skip:
            continue
        order = entry.group().order
        if max_order is not None and order > max_order:
            rec = SweepRecord(entry.id, order, entry.degree, None,
                              "over max-order", [], [], None, 0,
                              __version__, seed, time.time())
            records[i] = rec
            continue
        todo.append((i, entry))
    if jobs <= 1 or len(todo) <= 1:
        for i, entry in todo:
            records[i] = sweep_entry(entry, policy, with_diameter, seed,
                                     limits)
    else:
        import dataclasses
        policy_name = policy if isinstance(policy, str) else "default"
        limits_dict = dataclasses.asdict(limits)
        args = [(e.to_dict(), policy_name, with_diameter, seed, limits_dict)
                for _, e in todo]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for (i, _), line in zip(todo, pool.map(_sweep_worker, args)):
                records[i] = SweepRecord.from_json(line)
    return [records[i] for i in sorted(records)]


def save_records(records: Iterable[SweepRecord], path,
                 append: bool = True) -> None:
    mode = "a" if append else "w"
    with open(path, mode) as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")


def load_records(path) -> list:
    out = []
    if not os.path.exists(path):
        return out
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(SweepRecord.from_json(line))
    return out


def critical_flags(records: Iterable[SweepRecord]) -> list:
    out = []
    for rec in records:
        for flag in rec.critical:
            out.append((rec.group_id, flag))
    return out
