"""Lower-bound certificates for covering numbers of S wr C_m.

Two layers:

* Seed conditions C0-C5 on a pair (seed element set, conjugation-closed
  family of maximal subgroup classes).  C0-C4 are finite set checks; C5 is
  a four-term exact-integer comparison whose terms bound how much of the
  constructed target any outsider subgroup can capture.

* Definite unbeatability of a family H on a target set: H hits the target,
  covers it, no target element lies in two members, and no proper subgroup
  outside H meets the target in more elements than any member does.  When
  that holds the covering number of the target equals |H| exactly, which
  lower-bounds the covering number of the whole group.

Explicit mode enumerates the target and checks everything by set
operations (the group, or m * |S|^m, must be small enough).  Symbolic mode
certifies the first three conditions by the constructive coset argument and
the fourth by the C5 arithmetic; it assumes the trichotomy that a maximal
subgroup of S wr C_m contains the socle, is of product type, or is of
diagonal type, and says so in the certificate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .formulas import alpha, integer_nth_root_ceil, smallest_prime_factor
from .groups import GroupTable, SubgroupClass, SubgroupHandle
from .wreath import (
    ProductTypeDescriptor,
    SocleMaximal,
    WreathContext,
    coset_representatives,
    product_type_mask,
    socle_maximals,
)

TRICHOTOMY_ASSUMPTION = (
    "assumes every maximal subgroup of S wr C_m contains the socle, is of "
    "product type, or is of diagonal type (folklore; not re-derived here)"
)
SCHEMA_ASSUMPTION = (
    "hit/cover/disjointness of the constructed family certified by the "
    "constructive coset argument, not by element enumeration at this scale"
)


@dataclass
class SeedInstance:
    """A seed element set and a conjugation-closed family of maximal
    subgroup classes of S, with the wreath exponent m."""

    S: GroupTable
    seed_ids: np.ndarray  # sorted element ids, conjugation-closed
    seed_classes: list[SubgroupClass]
    m: int
    maximal_classes: list[SubgroupClass]  # all maximal classes of S

    def __post_init__(self):
        self.seed_ids = np.unique(np.asarray(self.seed_ids, dtype=np.int64))
        if self.seed_ids.shape[0] == 0:
            raise ValueError("seed set is empty")
        if self.m < 1:
            raise ValueError("m >= 1 required")

    def seed_class_keys(self) -> set[bytes]:
        return {c.representative.canonical_key for c in self.seed_classes}

    def outside_classes(self) -> list[SubgroupClass]:
        keys = self.seed_class_keys()
        return [c for c in self.maximal_classes if c.representative.canonical_key not in keys]


@dataclass
class ConditionResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"condition": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SeedConditionReport:
    conditions: list[ConditionResult]
    diagonal_bound: int  # (1 + alpha(m)) |S|^(m/l)
    outside_family_max: int  # max over maximal classes outside the family
    cross_class_layer: int  # ordered non-conjugate pair sum times |S|^(m-2)
    family_min: int  # min over family members
    seed_counts: dict
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    def to_dict(self) -> dict:
        return {
            "passed": self.passed,
            "conditions": [c.to_dict() for c in self.conditions],
            "arithmetic": {
                "diagonal_bound": str(self.diagonal_bound),
                "outside_family_max": str(self.outside_family_max),
                "cross_class_layer": str(self.cross_class_layer),
                "family_min": str(self.family_min),
            },
            "seed_counts": self.seed_counts,
            "notes": list(self.notes),
        }


def _seed_is_conjugation_closed(S: GroupTable, seed: np.ndarray) -> bool:
    lut = np.zeros(S.order, dtype=bool)
    lut[seed] = True
    for g in S.generator_ids:
        if not lut[S.conj_map(g)[seed]].all():
            return False
    return True


def diagonal_term(S_order: int, m: int) -> int:
    """(1 + alpha(m)) |S|^(m/l), l the smallest prime divisor of m.  l | m
    always holds, so the value is an exact integer; the non-integral branch
    rounds the root up so a certificate can only be conservative."""
    l = smallest_prime_factor(m)
    if m % l == 0:
        power = S_order ** (m // l)
    else:
        power = integer_nth_root_ceil(S_order**m, l)
    return (1 + alpha(m)) * power


def check_seed_conditions(inst: SeedInstance) -> SeedConditionReport:
    """Evaluate conditions C0-C5 exhaustively with exact arithmetic."""
    S, seed, m = inst.S, inst.seed_ids, inst.m
    results: list[ConditionResult] = []
    notes: list[str] = []

    members: list[tuple[str, SubgroupHandle]] = []
    for cls in inst.seed_classes:
        base = cls.label or f"order{cls.order}"
        for i, h in enumerate(cls.conjugates):
            members.append((f"{base}[{i}]", h))

    # C0: the family is closed under conjugation (it is built from whole
    # classes; re-verify the class orbits and the seed's closure).
    c0_ok = _seed_is_conjugation_closed(S, seed)
    results.append(
        ConditionResult(
            "C0 conjugation-closed",
            c0_ok,
            "family consists of whole conjugacy classes; seed set checked "
            "against the group generators",
        )
    )

    # per-member seed intersections
    inter: list[np.ndarray] = []
    for _, h in members:
        inter.append(seed[np.isin(seed, h.member_ids)])

    # C1: every member meets the seed
    empty = [lab for (lab, _), ids in zip(members, inter) if ids.shape[0] == 0]
    results.append(
        ConditionResult(
            "C1 every member meets the seed",
            not empty,
            witness={"empty_members": empty[:5]} if empty else None,
        )
    )

    # C2: the seed is covered by the family
    covered = np.zeros(S.order, dtype=bool)
    for _, h in members:
        covered[h.member_ids] = True
    missing = seed[~covered[seed]]
    results.append(
        ConditionResult(
            "C2 seed covered by the family",
            missing.shape[0] == 0,
            witness={"uncovered_element": int(missing[0])} if missing.shape[0] else None,
        )
    )

    # C3: no seed element in two distinct members
    count = np.zeros(S.order, dtype=np.int32)
    for ids in inter:
        count[ids] += 1
    doubled = seed[count[seed] > 1]
    results.append(
        ConditionResult(
            "C3 no seed element in two members",
            doubled.shape[0] == 0,
            witness={"element": int(doubled[0])} if doubled.shape[0] else None,
        )
    )

    # C4: at least two non-conjugate classes
    results.append(
        ConditionResult(
            "C4 at least two classes",
            len(inst.seed_classes) >= 2,
            detail=f"{len(inst.seed_classes)} classes",
        )
    )

    # C5: the four-term arithmetic (m >= 2)
    class_totals: list[int] = []
    seed_counts: dict = {"seed_size": int(seed.shape[0]), "per_class": {}}
    for cls in inst.seed_classes:
        rep_count = int(np.isin(seed, cls.representative.member_ids).sum())
        total = rep_count * cls.class_size
        class_totals.append(total)
        seed_counts["per_class"][cls.label or f"order{cls.order}"] = {
            "per_member": rep_count,
            "class_total": total,
            "member_order": cls.order,
            "class_size": cls.class_size,
            "index": cls.representative.index,
        }

    if m >= 2:
        a_term = diagonal_term(S.order, m)
        b_term = 0
        b_attained = None
        for cls in inst.outside_classes():
            cnt = int(np.isin(seed, cls.representative.member_ids).sum())
            val = cnt * cls.order ** (m - 1)
            if val > b_term:
                b_term, b_attained = val, cls.label
        t_sum = sum(class_totals)
        c_term = (t_sum**2 - sum(t * t for t in class_totals)) * S.order ** (m - 2)
        d_term, d_attained = None, None
        for cls in inst.seed_classes:
            cnt = seed_counts["per_class"][cls.label or f"order{cls.order}"]["per_member"]
            val = cnt * cls.order ** (m - 1)
            if d_term is None or val < d_term:
                d_term, d_attained = val, cls.label
        five_ok = max(a_term, b_term) <= min(c_term, d_term)
        results.append(
            ConditionResult(
                "C5 arithmetic",
                five_ok,
                detail=(
                    f"max(diagonal={a_term}, outside={b_term}) vs "
                    f"min(cross={c_term}, family_min={d_term})"
                ),
                witness=None
                if five_ok
                else {
                    "max_side": str(max(a_term, b_term)),
                    "min_side": str(min(c_term, d_term)),
                },
            )
        )
        notes.append(
            "outside-family maximum ranges over maximal-subgroup classes not "
            "in the family (the shape the product-type bound applies to); "
            f"attained by {b_attained!r}, family minimum by {d_attained!r}"
        )
    else:
        a_term = b_term = c_term = 0
        d_term = min(
            seed_counts["per_class"][cls.label or f"order{cls.order}"]["per_member"]
            for cls in inst.seed_classes
        )
        results.append(
            ConditionResult(
                "C5 arithmetic",
                True,
                detail="m=1: no wreath layer, condition vacuous",
            )
        )

    return SeedConditionReport(
        conditions=results,
        diagonal_bound=a_term,
        outside_family_max=b_term,
        cross_class_layer=c_term,
        family_min=d_term if d_term is not None else 0,
        seed_counts=seed_counts,
        notes=notes,
    )


# -- the target set and family ---------------------------------------------


@dataclass
class TargetFamilySpec:
    """Symbolic description of the certified target and family with exact
    counts; executable membership predicates live in the explicit checker."""

    inst: SeedInstance
    family_size: int
    product_members: int
    socle_members: int
    per_class_members: dict

    def to_dict(self) -> dict:
        return {
            "family_size": str(self.family_size),
            "product_members": str(self.product_members),
            "socle_members": self.socle_members,
            "per_class_members": {k: str(v) for k, v in self.per_class_members.items()},
        }


def build_target_family(inst: SeedInstance) -> TargetFamilySpec:
    """Counts: alpha(m) socle maximals plus, per family member M, one
    product-type subgroup per coset tuple, |S:M|^(m-1) each."""
    m = inst.m
    per_class = {}
    product_total = 0
    for cls in inst.seed_classes:
        idx = cls.representative.index
        cnt = cls.class_size * idx ** (m - 1)
        per_class[cls.label or f"order{cls.order}"] = cnt
        product_total += cnt
    socle_count = alpha(m) if m >= 2 else 0
    return TargetFamilySpec(
        inst=inst,
        family_size=socle_count + product_total,
        product_members=product_total,
        socle_members=socle_count,
        per_class_members=per_class,
    )


# -- definite unbeatability ---------------------------------------------------


@dataclass
class UnbeatabilityReport:
    mode: str  # explicit-group | explicit-wreath | symbolic
    conditions: list[ConditionResult]
    family_size: int
    target_size: Optional[int] = None
    member_min_count: Optional[int] = None
    outsider_max: Optional[dict] = None
    assumptions: list[str] = field(default_factory=list)
    conditional: bool = False

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.conditions)

    @property
    def certified_lower_bound(self) -> Optional[int]:
        """sigma(target) = |family| <= sigma(X) when all conditions pass."""
        return self.family_size if self.passed else None

    def to_dict(self) -> dict:
        out = {
            "mode": self.mode,
            "passed": self.passed,
            "conditions": [c.to_dict() for c in self.conditions],
            "family_size": str(self.family_size),
            "assumptions": list(self.assumptions),
            "conditional": self.conditional,
        }
        if self.target_size is not None:
            out["target_size"] = self.target_size
        if self.member_min_count is not None:
            out["member_min_count"] = self.member_min_count
        if self.outsider_max is not None:
            out["outsider_max"] = self.outsider_max
        if self.passed:
            out["certified_lower_bound"] = str(self.family_size)
        return out


def check_definitely_unbeatable_group(
    S: GroupTable,
    target_ids: np.ndarray,
    family: Sequence[SubgroupHandle],
    family_labels: Sequence[str],
    all_classes: Optional[Sequence[SubgroupClass]] = None,
    maximal_classes: Optional[Sequence[SubgroupClass]] = None,
) -> UnbeatabilityReport:
    """Explicit m=1 mode: the family lives inside S itself and every
    condition is a finite set check.  The outsider sweep uses the full
    subgroup lattice when given (unconditional certificate), else the
    maximal classes only (certificate marked conditional)."""
    target = np.unique(np.asarray(target_ids, dtype=np.int64))
    results: list[ConditionResult] = []

    inter = [target[np.isin(target, h.member_ids)] for h in family]

    empty = [lab for lab, ids in zip(family_labels, inter) if ids.shape[0] == 0]
    results.append(
        ConditionResult(
            "U1 every member meets the target",
            not empty,
            witness={"empty_members": list(empty[:5])} if empty else None,
        )
    )

    count = np.zeros(S.order, dtype=np.int32)
    for ids in inter:
        count[ids] += 1
    uncovered = target[count[target] == 0]
    results.append(
        ConditionResult(
            "U2 target covered",
            uncovered.shape[0] == 0,
            witness={"uncovered_element": int(uncovered[0])}
            if uncovered.shape[0]
            else None,
        )
    )
    doubled = target[count[target] > 1]
    results.append(
        ConditionResult(
            "U3 no target element in two members",
            doubled.shape[0] == 0,
            witness={"element": int(doubled[0])} if doubled.shape[0] else None,
        )
    )

    member_min = min(ids.shape[0] for ids in inter) if inter else 0
    family_keys = {h.canonical_key for h in family}
    conditional = all_classes is None
    if all_classes is not None:
        sweep = [c for c in all_classes if c.order < S.order]
    elif maximal_classes is not None:
        sweep = list(maximal_classes)
    else:
        raise ValueError("need the subgroup lattice or the maximal classes")
    outsider_max, outsider_label = 0, None
    for cls in sweep:
        if cls.representative.canonical_key in family_keys:
            # the family is conjugation-closed in our uses, so one key
            # matching means the whole class is inside the family
            continue
        cnt = int(np.isin(target, cls.representative.member_ids).sum())
        if cnt > outsider_max:
            outsider_max = cnt
            outsider_label = cls.label or f"order{cls.order}"
    results.append(
        ConditionResult(
            "U4 outsiders dominated",
            outsider_max <= member_min,
            detail=f"max outsider {outsider_max} ({outsider_label}) vs member min {member_min}",
            witness=None
            if outsider_max <= member_min
            else {"outsider": outsider_label, "count": outsider_max, "member_min": member_min},
        )
    )

    return UnbeatabilityReport(
        mode="explicit-group",
        conditions=results,
        family_size=len(family),
        target_size=int(target.shape[0]),
        member_min_count=member_min,
        outsider_max={"count": outsider_max, "class": outsider_label},
        assumptions=[],
        conditional=conditional,
    )


@dataclass
class ExplicitWreathFamily:
    """The constructed family materialized for explicit checking."""

    products: list[ProductTypeDescriptor]
    socle: list[SocleMaximal]
    labels: list[str]

    @property
    def size(self) -> int:
        return len(self.products) + len(self.socle)


def materialize_family(inst: SeedInstance) -> ExplicitWreathFamily:
    """All product-type members (every first-slot conjugate, every coset
    tuple) plus the socle maximals, canonically ordered."""
    import itertools

    products, labels = [], []
    for cls in inst.seed_classes:
        base = cls.label or f"order{cls.order}"
        for i, M in enumerate(cls.conjugates):
            reps = coset_representatives(M)
            for combo in itertools.product(reps, repeat=inst.m - 1):
                d = ProductTypeDescriptor.create(M, combo)
                products.append(d)
                labels.append(f"{base}[{i}]{list(combo)}")
    socle = socle_maximals(inst.m) if inst.m >= 2 else []
    labels.extend(f"socle[{s.r}]" for s in socle)
    return ExplicitWreathFamily(products=products, socle=socle, labels=labels)


class _TargetMasks:
    """Per-shift boolean masks of the target set over the base grid."""

    def __init__(self, inst: SeedInstance, ctx: WreathContext, grid: np.ndarray):
        S, m = inst.S, inst.m
        self.masks: dict[int, np.ndarray] = {}
        seed_lut = np.zeros(S.order, dtype=bool)
        seed_lut[inst.seed_ids] = True

        def strand_product_column(step: int, t: int) -> np.ndarray:
            cols = [(t + j * step) % m for j in range(m // step)]
            acc = grid[:, cols[0]].astype(np.int64)
            for c in cols[1:]:
                acc = S.mul_many(acc, grid[:, c])
            return acc

        # twisted layer: shift 1, whole-product in the seed
        full_prod = grid[:, 0].astype(np.int64)
        for j in range(1, m):
            full_prod = S.mul_many(full_prod, grid[:, j])
        self._add(1 % m, seed_lut[full_prod])

        # strand layer: one prime shift per prime divisor of m
        if m >= 2:
            class_unions = []
            for cls in inst.seed_classes:
                lut = np.zeros(S.order, dtype=bool)
                for h in cls.conjugates:
                    lut[h.member_ids] = True
                class_unions.append(lut & seed_lut)
            for s in socle_maximals(m):
                r = s.r
                p0 = strand_product_column(r, 0)
                p1 = strand_product_column(r, 1)
                mask = np.zeros(grid.shape[0], dtype=bool)
                for a, lut_a in enumerate(class_unions):
                    for b, lut_b in enumerate(class_unions):
                        if a == b:
                            continue
                        mask |= lut_a[p0] & lut_b[p1]
                self._add(r % m, mask)

    def _add(self, shift: int, mask: np.ndarray) -> None:
        if shift in self.masks:
            self.masks[shift] = self.masks[shift] | mask
        else:
            self.masks[shift] = mask

    def total(self) -> int:
        return int(sum(int(m.sum()) for m in self.masks.values()))


def _member_mask(
    ctx: WreathContext,
    member,
    grid: np.ndarray,
    shift: int,
) -> np.ndarray:
    if isinstance(member, SocleMaximal):
        if shift % member.r == 0:
            return np.ones(grid.shape[0], dtype=bool)
        return np.zeros(grid.shape[0], dtype=bool)
    return product_type_mask(ctx, member, grid, shift)


def check_definitely_unbeatable_wreath(
    inst: SeedInstance,
    family: Optional[ExplicitWreathFamily] = None,
    element_cap: int = 10**8,
) -> UnbeatabilityReport:
    """Explicit wreath mode (desk scale, m * |S|^m <= cap): enumerate the
    target and verify all four conditions by counting.  The outsider sweep
    runs over every product-type subgroup built on maximal classes outside
    the family; diagonal-type subgroups contribute their size bound only and
    make the verdict conditional if they alone decide the comparison."""
    S, m = inst.S, inst.m
    total = m * S.order**m
    if total > element_cap:
        raise ValueError(f"explicit mode needs m*|S|^m = {total} <= {element_cap}")
    ctx = WreathContext(S, m)
    grid = ctx.base_grid()
    if family is None:
        family = materialize_family(inst)
    members: list = list(family.products) + list(family.socle)
    labels = family.labels

    tmasks = _TargetMasks(inst, ctx, grid)
    results: list[ConditionResult] = []

    member_counts = np.zeros(len(members), dtype=np.int64)
    empty_witness = None
    per_shift_counts = {s: np.zeros(grid.shape[0], dtype=np.int32) for s in tmasks.masks}
    for idx, member in enumerate(members):
        hit = 0
        for shift, tmask in tmasks.masks.items():
            mm = _member_mask(ctx, member, grid, shift) & tmask
            per_shift_counts[shift][mm] += 1
            hit += int(mm.sum())
        member_counts[idx] = hit
        if hit == 0 and empty_witness is None:
            empty_witness = labels[idx]
    results.append(
        ConditionResult(
            "U1 every member meets the target",
            empty_witness is None,
            witness={"empty_member": empty_witness} if empty_witness else None,
        )
    )

    uncovered_witness = None
    doubled_witness = None
    for shift in sorted(tmasks.masks):
        tmask = tmasks.masks[shift]
        counts = per_shift_counts[shift]
        bad0 = np.flatnonzero(tmask & (counts == 0))
        if bad0.shape[0] and uncovered_witness is None:
            uncovered_witness = {
                "shift": shift,
                "base": [int(x) for x in grid[bad0[0]]],
            }
        bad2 = np.flatnonzero(tmask & (counts > 1))
        if bad2.shape[0] and doubled_witness is None:
            doubled_witness = {
                "shift": shift,
                "base": [int(x) for x in grid[bad2[0]]],
            }
    results.append(
        ConditionResult(
            "U2 target covered",
            uncovered_witness is None,
            witness=uncovered_witness,
        )
    )
    results.append(
        ConditionResult(
            "U3 no target element in two members",
            doubled_witness is None,
            witness=doubled_witness,
        )
    )

    member_min = int(member_counts.min()) if len(members) else 0

    # outsider sweep: product types over classes outside the family
    import itertools

    family_keys = inst.seed_class_keys()
    outsider_max, outsider_label = 0, None
    for cls in inst.maximal_classes:
        if cls.representative.canonical_key in family_keys:
            continue
        base = cls.label or f"order{cls.order}"
        for i, M in enumerate(cls.conjugates):
            reps = coset_representatives(M)
            for combo in itertools.product(reps, repeat=m - 1):
                d = ProductTypeDescriptor.create(M, combo)
                cnt = 0
                for shift, tmask in tmasks.masks.items():
                    cnt += int((product_type_mask(ctx, d, grid, shift) & tmask).sum())
                if cnt > outsider_max:
                    outsider_max = cnt
                    outsider_label = f"{base}[{i}]{list(combo)}"

    diag_bound = diagonal_term(S.order, m)
    u4_by_count = outsider_max <= member_min
    u4_by_diag = diag_bound <= member_min
    u4_ok = u4_by_count and u4_by_diag
    detail = (
        f"max outsider product-type count {outsider_max} ({outsider_label}), "
        f"diagonal size bound {diag_bound}, member min {member_min}"
    )
    witness = None
    if not u4_by_count:
        witness = {
            "outsider": outsider_label,
            "count": outsider_max,
            "member_min": member_min,
        }
    elif not u4_by_diag:
        witness = {
            "outsider": "diagonal-type (size bound, not an exhibited subgroup)",
            "bound": str(diag_bound),
            "member_min": member_min,
        }
    results.append(ConditionResult("U4 outsiders dominated", u4_ok, detail, witness))

    return UnbeatabilityReport(
        mode="explicit-wreath",
        conditions=results,
        family_size=family.size,
        target_size=tmasks.total(),
        member_min_count=member_min,
        outsider_max={"count": outsider_max, "member": outsider_label},
        assumptions=[TRICHOTOMY_ASSUMPTION],
        conditional=u4_by_count and not u4_by_diag,
    )


def check_definitely_unbeatable_symbolic(
    inst: SeedInstance, seed_report: Optional[SeedConditionReport] = None
) -> UnbeatabilityReport:
    """Symbolic mode for m >= 2: seed conditions C0-C4 certify the hit,
    cover and disjointness conditions through the constructive coset
    argument; C5's arithmetic certifies outsider domination through the
    maximal-subgroup trichotomy."""
    if inst.m < 2:
        raise ValueError("symbolic mode needs m >= 2")
    if seed_report is None:
        seed_report = check_seed_conditions(inst)
    spec = build_target_family(inst)
    results = []
    c_by_name = {c.name: c for c in seed_report.conditions}
    base_ok = all(
        c_by_name[f"C{i} " + n].passed
        for i, n in (
            (0, "conjugation-closed"),
            (1, "every member meets the seed"),
            (2, "seed covered by the family"),
            (3, "no seed element in two members"),
            (4, "at least two classes"),
        )
    )
    for name in ("U1 every member meets the target", "U2 target covered", "U3 no target element in two members"):
        results.append(
            ConditionResult(
                name,
                base_ok,
                detail="certified by the constructive coset argument from C0-C4",
            )
        )
    c5 = c_by_name["C5 arithmetic"]
    results.append(
        ConditionResult(
            "U4 outsiders dominated",
            c5.passed,
            detail=c5.detail,
            witness=c5.witness,
        )
    )
    return UnbeatabilityReport(
        mode="symbolic",
        conditions=results,
        family_size=spec.family_size,
        assumptions=[SCHEMA_ASSUMPTION, TRICHOTOMY_ASSUMPTION],
        conditional=False,
    )


# -- main theorem bound assembly ------------------------------------------------


@dataclass
class WreathBounds:
    lower: int
    upper: int
    family_size: int
    cover_size_term: int
    report: UnbeatabilityReport | SeedConditionReport

    def to_dict(self) -> dict:
        return {
            "lower": str(self.lower),
            "upper": str(self.upper),
            "family_term": str(self.family_size),
            "cover_term": str(self.cover_size_term),
        }


def wreath_cover_upper_term(cover: Sequence[SubgroupHandle], m: int) -> int:
    """alpha(m) + sum over the covering family of |S:M|^(m-1)."""
    return alpha(m) + sum(h.index ** (m - 1) for h in cover)


def theorem_bounds(
    inst: SeedInstance,
    cover_handles: Sequence[SubgroupHandle],
    seed_report: Optional[SeedConditionReport] = None,
) -> WreathBounds:
    """Assemble lower and upper bounds for sigma(S wr C_m): the certified
    family size from the seed conditions, and the constructive cover count
    from a verified covering of S."""
    from .cover import verify_cover_handles

    ok, missing = verify_cover_handles(inst.S, cover_handles)
    if not ok:
        raise ValueError(f"cover does not cover S: element {missing} missed")
    upper = wreath_cover_upper_term(cover_handles, inst.m)
    if inst.m == 1:
        lower_members = [h for cls in inst.seed_classes for h in cls.conjugates]
        labels = [f"{cls.label}[{i}]" for cls in inst.seed_classes for i in range(cls.class_size)]
        report = check_definitely_unbeatable_group(
            inst.S,
            inst.seed_ids,
            lower_members,
            labels,
            maximal_classes=inst.maximal_classes,
        )
        lower = report.certified_lower_bound or 0
        return WreathBounds(lower, upper, len(lower_members), upper, report)
    report = seed_report or check_seed_conditions(inst)
    spec = build_target_family(inst)
    lower = spec.family_size if report.passed else 0
    return WreathBounds(lower, upper, spec.family_size, upper, report)
