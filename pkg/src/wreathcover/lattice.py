"""Complete subgroup-lattice enumeration up to conjugacy.

Strategy: seed with the conjugacy classes of cyclic subgroups, then close
under joins of a known class representative with one cyclic subgroup, the
cyclic factor reduced to orbit representatives under the normalizer of the
representative.  Every non-cyclic subgroup H equals <K, c> for a maximal
subgroup K < H and any cyclic c not inside K, so the fixpoint is complete.
Joins whose closure grows past the largest proper divisor of |G| must be the
whole group and are aborted early.

Feasible to group order ~10^4, which covers M11 (order 7920).  Results are
cached on disk keyed by the group's canonical hash; cached data is never used
without re-verifying that hash.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

import numpy as np

from .groups import (
    GroupTable,
    SubgroupClass,
    SubgroupHandle,
    normalizer,
    subgroup_closure,
    subgroup_from_set,
)

DEFAULT_ORDER_CAP = 10**4


class LatticeCapError(RuntimeError):
    """Group order exceeds the subgroup-enumeration cap."""


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return d
        d += 2
    return n


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _generating_ids(g: GroupTable, element_ids: np.ndarray) -> list[int]:
    """Small generating set for a subgroup given as its full element set."""
    have = {0}
    gens: list[int] = []
    target = element_ids.shape[0]
    for x in element_ids.tolist():
        if x in have:
            continue
        gens.append(int(x))
        have = subgroup_closure(g, gens).member_set()
        if len(have) == target:
            break
    return gens


class _ClassRegistry:
    """Tracks every conjugate of every discovered subgroup class."""

    def __init__(self, g: GroupTable):
        self.g = g
        self.key_to_class: dict[bytes, int] = {}
        self.classes: list[SubgroupClass] = []
        self._gen_conj = [g.conj_map(x) for x in g.generator_ids if x != 0]

    def lookup(self, ids: np.ndarray) -> int | None:
        return self.key_to_class.get(ids.astype(np.int64).tobytes())

    def register(self, handle: SubgroupHandle) -> int:
        """Add a new class; computes and files the full conjugation orbit.
        Generators are conjugated along so every conjugate handle is usable."""
        idx = len(self.classes)
        ids0 = handle.member_ids.astype(np.int64)
        gens0 = np.array(handle.generators, dtype=np.int64)
        seen: dict[bytes, tuple[np.ndarray, np.ndarray]] = {ids0.tobytes(): (ids0, gens0)}
        queue = [(ids0, gens0)]
        while queue:
            cur, cur_gens = queue.pop()
            for cm in self._gen_conj:
                nxt = np.sort(cm[cur])
                key = nxt.tobytes()
                if key not in seen:
                    entry = (nxt, cm[cur_gens])
                    seen[key] = entry
                    queue.append(entry)
        conjugates = []
        for key in sorted(seen):
            self.key_to_class[key] = idx
            ids, gens = seen[key]
            conjugates.append(
                SubgroupHandle(self.g, ids, tuple(gens.tolist()), label=handle.label)
            )
        self.classes.append(SubgroupClass(representative=handle, conjugates=conjugates))
        return idx


def all_subgroup_classes(
    g: GroupTable,
    cap: int = DEFAULT_ORDER_CAP,
    cache_dir: str | os.PathLike | None = None,
) -> list[SubgroupClass]:
    """Every subgroup of g up to conjugacy, complete and duplicate-free.

    Classes are sorted by (order, canonical key); the trivial subgroup and g
    itself are included.
    """
    if g.order > cap:
        raise LatticeCapError(f"group order {g.order} exceeds lattice cap {cap}")

    cached = _cache_load(g, cache_dir)
    if cached is not None:
        return cached

    classes = _enumerate_classes(g)
    _cache_store(g, classes, cache_dir)
    return classes


def _enumerate_classes(g: GroupTable) -> list[SubgroupClass]:
    registry = _ClassRegistry(g)

    trivial = subgroup_from_set(g, [0], verify=False)
    registry.register(trivial)

    # seed: cyclic subgroup classes
    orders = g.element_orders()
    cyclic_reps: list[SubgroupHandle] = []
    seen_cyclic: set[bytes] = set()
    for eid in np.argsort(orders, kind="stable").tolist():
        if eid == 0:
            continue
        h = subgroup_closure(g, [eid])
        if h.canonical_key in seen_cyclic:
            continue
        if registry.lookup(h.member_ids) is None:
            idx = registry.register(h)
            cyclic_reps.append(registry.classes[idx].representative)
        for c in registry.classes[registry.lookup(h.member_ids)].conjugates:
            seen_cyclic.add(c.canonical_key)

    cyclic_classes = [
        registry.classes[registry.lookup(h.member_ids)] for h in cyclic_reps
    ]

    divisors = _divisors(g.order)
    max_proper = g.order // _smallest_prime_factor(g.order) if g.order > 1 else 1

    queue = list(range(len(registry.classes)))
    qpos = 0
    while qpos < len(queue):
        cls_idx = queue[qpos]
        qpos += 1
        rep = registry.classes[cls_idx].representative
        if rep.size in (1, g.order):
            continue
        norm_ids = normalizer(g, rep)
        norm_gens = [x for x in _generating_ids(g, norm_ids) if x != 0]
        conj_maps = [g.conj_map(x) for x in norm_gens]
        for cyc_cls in cyclic_classes:
            if cyc_cls.order == g.order:
                continue
            for cyc in _orbit_reps(cyc_cls, conj_maps):
                if np.isin(cyc.member_ids, rep.member_ids).all():
                    continue
                if not _join_could_be_proper(
                    rep.size, cyc, rep, divisors, max_proper
                ):
                    continue
                joined = subgroup_closure(
                    g,
                    list(rep.generators) + list(cyc.generators),
                    abort_above=max_proper,
                )
                if joined is None:
                    continue  # join is the whole group
                if registry.lookup(joined.member_ids) is None:
                    new_idx = registry.register(joined)
                    queue.append(new_idx)

    whole = SubgroupHandle(
        g, np.arange(g.order, dtype=np.int64), tuple(g.generator_ids)
    )
    if registry.lookup(whole.member_ids) is None:
        registry.register(whole)

    out = sorted(
        registry.classes,
        key=lambda c: (c.order, c.conjugates[0].canonical_key),
    )
    return out


def _orbit_reps(cyc_cls: SubgroupClass, conj_maps: list[np.ndarray]):
    """One representative per orbit of the given conjugation maps acting on
    the subgroups of a class; deterministic (min canonical key first)."""
    key_to_idx = {h.canonical_key: i for i, h in enumerate(cyc_cls.conjugates)}
    unvisited = [True] * len(cyc_cls.conjugates)
    reps = []
    for i, h in enumerate(cyc_cls.conjugates):
        if not unvisited[i]:
            continue
        reps.append(h)
        stack = [h.member_ids]
        unvisited[i] = False
        while stack:
            cur = stack.pop()
            for cm in conj_maps:
                nxt = np.sort(cm[cur])
                j = key_to_idx[nxt.tobytes()]
                if unvisited[j]:
                    unvisited[j] = False
                    stack.append(nxt)
    return reps


def _join_could_be_proper(
    h_size: int,
    cyc: SubgroupHandle,
    rep: SubgroupHandle,
    divisors: list[int],
    max_proper: int,
) -> bool:
    """Cheap Lagrange screen: the join order is a multiple of |H| at least
    |H|*|C|/|H∩C| and divides |G|; skip the closure if that forces it past
    the largest proper divisor."""
    inter = int(np.isin(cyc.member_ids, rep.member_ids).sum())
    lower = h_size * cyc.size // max(inter, 1)
    for d in divisors:
        if d > max_proper:
            break
        if d >= lower and d % h_size == 0 and d % cyc.size == 0:
            return True
    return False


def maximal_classes_from_lattice(
    g: GroupTable, classes: list[SubgroupClass]
) -> list[SubgroupClass]:
    """The maximal-subgroup classes: proper classes contained in no larger
    proper subgroup (checked against every conjugate)."""
    proper = [c for c in classes if c.order < g.order]
    out = []
    for c in proper:
        rep = c.representative
        dominated = False
        for other in proper:
            if other.order <= c.order or other.order % c.order != 0:
                continue
            for conj in other.conjugates:
                if np.isin(rep.member_ids, conj.member_ids).all():
                    dominated = True
                    break
            if dominated:
                break
        if not dominated:
            out.append(c)
    return out


# -- disk cache -----------------------------------------------------------


def cache_directory(cache_dir: str | os.PathLike | None = None) -> Path:
    if cache_dir is not None:
        return Path(cache_dir)
    env = os.environ.get("WREATHCOVER_CACHE")
    if env:
        return Path(env)
    return Path.home() / ".cache" / "wreathcover"


def _cache_path(g: GroupTable, cache_dir) -> Path:
    return cache_directory(cache_dir) / f"lattice-{g.canonical_hash()}.json"


def _cache_load(g: GroupTable, cache_dir) -> list[SubgroupClass] | None:
    path = _cache_path(g, cache_dir)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("group_hash") != g.canonical_hash() or data.get("order") != g.order:
        return None
    classes = []
    for entry in data["classes"]:
        ids = np.array(entry["members"], dtype=np.int64)
        handle = SubgroupHandle(g, ids, tuple(entry["generators"]))
        registry = _ClassRegistry(g)
        idx = registry.register(handle)
        classes.append(registry.classes[idx])
    classes.sort(key=lambda c: (c.order, c.conjugates[0].canonical_key))
    return classes


def _cache_store(g: GroupTable, classes: list[SubgroupClass], cache_dir) -> None:
    path = _cache_path(g, cache_dir)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "group_hash": g.canonical_hash(),
            "order": g.order,
            "classes": [
                {
                    "members": c.representative.member_ids.tolist(),
                    "generators": list(c.representative.generators),
                }
                for c in classes
            ],
        }
        tmp = path.with_suffix(".tmp")
        with open(tmp, "w", encoding="utf-8") as fh:
            json.dump(payload, fh)
        os.replace(tmp, path)
    except OSError:
        pass
