"""Built-in group catalog and the group spec file loader.

Generators are shipped as cycle-notation data, never as bare orders; every
load re-enumerates the group and re-verifies each maximal class's order and
class size against the recorded values, so transcription errors in the data
fail loudly at load time.

Maximality of the catalog classes is trusted data here (it is re-derived and
checked against the full subgroup lattice in the test suite, where the
lattice is feasible).
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path

import yaml

from .groups import GroupTable, SubgroupClass, conjugate_class, subgroup_closure
from .perm import Perm


class CatalogError(ValueError):
    """Unknown catalog name or catalog data failing verification."""


@dataclass(frozen=True)
class MaximalClassSpec:
    label: str
    generators: tuple[str, ...]
    expected_order: int
    expected_class_size: int


@dataclass(frozen=True)
class GroupSpec:
    name: str
    degree: int
    generators: tuple[str, ...]
    maximal_classes: tuple[MaximalClassSpec, ...]


@dataclass
class CatalogGroup:
    """An enumerated group plus its verified maximal-subgroup classes."""

    spec: GroupSpec
    table: GroupTable
    maximal_classes: list[SubgroupClass]

    def classes_by_label(self) -> dict[str, SubgroupClass]:
        return {c.label: c for c in self.maximal_classes}


BUILTIN_SPECS: dict[str, GroupSpec] = {
    "A5": GroupSpec(
        name="A5",
        degree=5,
        generators=("(1 2 3 4 5)", "(1 2 3)"),
        maximal_classes=(
            MaximalClassSpec("A4", ("(3 4 5)", "(2 3)(4 5)"), 12, 5),
            MaximalClassSpec("D10", ("(2 3)(4 5)", "(1 2)(3 4)"), 10, 6),
            MaximalClassSpec("S3", ("(2 3)(4 5)", "(1 2)(4 5)"), 6, 10),
        ),
    ),
    "A6": GroupSpec(
        name="A6",
        degree=6,
        generators=("(1 2 3 4 5)", "(4 5 6)"),
        maximal_classes=(
            MaximalClassSpec("A5", ("(3 4)(5 6)", "(2 5 3)"), 60, 6),
            MaximalClassSpec("PSL(2,5)", ("(3 4)(5 6)", "(1 2 3)(4 5 6)"), 60, 6),
            MaximalClassSpec("3^2:4", ("(3 4)(5 6)", "(1 4)(2 5 3 6)"), 36, 10),
            MaximalClassSpec("S4", ("(3 4)(5 6)", "(1 3 2)"), 24, 15),
            MaximalClassSpec("S4'", ("(3 4)(5 6)", "(1 6 3)(2 4 5)"), 24, 15),
        ),
    ),
    "PSL(2,7)": GroupSpec(
        name="PSL(2,7)",
        degree=8,
        generators=("(1 2 3 4 5 6 7)", "(1 8)(2 7)(3 4)(5 6)"),
        maximal_classes=(
            MaximalClassSpec("7:3", ("(3 7 8)(4 6 5)", "(2 3 5)(4 7 6)"), 21, 8),
            MaximalClassSpec(
                "S4", ("(2 3 5)(4 7 6)", "(1 2)(3 4)(5 7)(6 8)"), 24, 7
            ),
            MaximalClassSpec(
                "S4'", ("(2 4 8)(3 6 7)", "(1 2)(3 4)(5 7)(6 8)"), 24, 7
            ),
        ),
    ),
    "PSL(2,11)": GroupSpec(
        name="PSL(2,11)",
        degree=12,
        generators=("(1 2 3 4 5 6 7 8 9 10 11)", "(1 12)(2 11)(3 6)(4 8)(5 9)(7 10)"),
        maximal_classes=(
            MaximalClassSpec(
                "11:5",
                ("(3 4 10 11 7)(5 12 9 6 8)", "(2 9 3 8 4)(6 7 10 11 12)"),
                55,
                12,
            ),
            MaximalClassSpec(
                "D12",
                (
                    "(1 2)(3 5)(4 8)(6 10)(7 12)(9 11)",
                    "(1 5)(2 11)(3 7)(4 12)(6 8)(9 10)",
                ),
                12,
                55,
            ),
            MaximalClassSpec(
                "A5",
                (
                    "(1 2)(3 5)(4 8)(6 10)(7 12)(9 11)",
                    "(1 8 5)(2 4 10)(3 9 11)(6 7 12)",
                ),
                60,
                11,
            ),
            MaximalClassSpec(
                "A5'",
                (
                    "(1 2)(3 5)(4 8)(6 10)(7 12)(9 11)",
                    "(1 10 11)(2 6 8)(3 5 9)(4 12 7)",
                ),
                60,
                11,
            ),
        ),
    ),
    "PSL(2,13)": GroupSpec(
        name="PSL(2,13)",
        degree=14,
        generators=(
            "(1 2 3 4 5 6 7 8 9 10 11 12 13)",
            "(1 14)(2 13)(3 7)(4 5)(8 12)(10 11)",
        ),
        maximal_classes=(
            MaximalClassSpec(
                "13:6",
                (
                    "(3 6)(4 12)(5 9)(7 11)(8 14)(10 13)",
                    "(2 4 3)(6 11 9)(7 14 12)(8 13 10)",
                ),
                78,
                14,
            ),
            MaximalClassSpec(
                "D14",
                (
                    "(3 6)(4 12)(5 9)(7 11)(8 14)(10 13)",
                    "(1 14)(2 4)(3 9)(6 12)(7 8)(11 13)",
                ),
                14,
                78,
            ),
            MaximalClassSpec(
                "D12",
                (
                    "(3 6)(4 12)(5 9)(7 11)(8 14)(10 13)",
                    "(1 14)(2 5)(4 11)(6 7)(8 9)(10 13)",
                ),
                12,
                91,
            ),
            MaximalClassSpec(
                "A4",
                (
                    "(3 6)(4 12)(5 9)(7 11)(8 14)(10 13)",
                    "(1 10 11)(2 13 7)(4 6 12)(5 9 8)",
                ),
                12,
                91,
            ),
        ),
    ),
    "M11": GroupSpec(
        name="M11",
        degree=11,
        generators=("(1 2 3 4 5 6 7 8 9 10 11)", "(3 7 11 8)(4 10 5 6)"),
        maximal_classes=(
            MaximalClassSpec(
                "M10", ("(4 10)(5 8)(6 7)(9 11)", "(1 4 6 3)(7 10 8 9)"), 720, 11
            ),
            MaximalClassSpec(
                "PSL(2,11)",
                ("(4 10)(5 8)(6 7)(9 11)", "(1 3 11)(2 6 4)(8 9 10)"),
                660,
                12,
            ),
            MaximalClassSpec(
                "M9:2", ("(4 10)(5 8)(6 7)(9 11)", "(1 11 7 6)(2 3 10 9)"), 144, 55
            ),
            MaximalClassSpec(
                "S5", ("(4 10)(5 8)(6 7)(9 11)", "(1 3 6 9)(2 10 5 4)"), 120, 66
            ),
            MaximalClassSpec(
                "M8:S3",
                ("(4 10)(5 8)(6 7)(9 11)", "(1 8 5)(2 4 11)(3 7 9)"),
                48,
                165,
            ),
        ),
    ),
}

BUILTIN_NAMES = tuple(BUILTIN_SPECS)


def parse_group_file(path: str | Path) -> GroupSpec:
    """Load a group spec file (YAML: name, degree, generators,
    optional maximal_classes with label/generators/expected_order/
    expected_class_size)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = yaml.safe_load(fh)
    if not isinstance(data, dict):
        raise CatalogError(f"group file {path} is not a mapping")
    try:
        name = str(data["name"])
        degree = int(data["degree"])
        generators = tuple(str(s) for s in data["generators"])
    except KeyError as exc:
        raise CatalogError(f"group file {path} missing key {exc}") from exc
    classes = []
    for entry in data.get("maximal_classes", []) or []:
        classes.append(
            MaximalClassSpec(
                label=str(entry["label"]),
                generators=tuple(str(s) for s in entry["generators"]),
                expected_order=int(entry["expected_order"]),
                expected_class_size=int(entry["expected_class_size"]),
            )
        )
    return GroupSpec(name, degree, generators, tuple(classes))


def resolve_spec(source: str) -> GroupSpec:
    """A built-in name, or a path to a group spec file."""
    if source in BUILTIN_SPECS:
        return BUILTIN_SPECS[source]
    p = Path(source)
    if p.exists():
        return parse_group_file(p)
    raise CatalogError(
        f"unknown group {source!r}; built-ins: {', '.join(BUILTIN_NAMES)}"
    )


def _load_from_spec(spec: GroupSpec) -> CatalogGroup:
    gens = [Perm.from_cycles(s, spec.degree) for s in spec.generators]
    table = GroupTable.from_generators(gens, name=spec.name)
    classes = []
    for mc in spec.maximal_classes:
        ids = [table.id_of(Perm.from_cycles(s, spec.degree)) for s in mc.generators]
        handle = subgroup_closure(table, ids, label=mc.label)
        if handle.size != mc.expected_order:
            raise CatalogError(
                f"{spec.name}/{mc.label}: generators give order {handle.size}, "
                f"catalog records {mc.expected_order}"
            )
        cls = conjugate_class(table, handle)
        if cls.class_size != mc.expected_class_size:
            raise CatalogError(
                f"{spec.name}/{mc.label}: class size {cls.class_size}, "
                f"catalog records {mc.expected_class_size}"
            )
        classes.append(cls)
    return CatalogGroup(spec=spec, table=table, maximal_classes=classes)


@functools.lru_cache(maxsize=None)
def _load_builtin(name: str) -> CatalogGroup:
    return _load_from_spec(BUILTIN_SPECS[name])


def load(source: str) -> CatalogGroup:
    """Load and verify a catalog group (built-in name or spec file path)."""
    if source in BUILTIN_SPECS:
        return _load_builtin(source)
    return _load_from_spec(resolve_spec(source))
