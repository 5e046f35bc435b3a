"""Degree boxes and tables of (cohomological index, multidegree) -> dimension."""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class DegreeBox:
    lo: Tuple[int, ...]
    hi: Tuple[int, ...]

    def __post_init__(self):
        lo, hi = tuple(int(x) for x in self.lo), tuple(int(x) for x in self.hi)
        if len(lo) != len(hi):
            raise ValueError("box corners of different lengths")
        if any(a > b for a, b in zip(lo, hi)):
            raise ValueError(f"box lo {lo} not <= hi {hi}")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def cube(cls, n: int, radius: int) -> "DegreeBox":
        return cls((-radius,) * n, (radius,) * n)

    @property
    def nvars(self) -> int:
        return len(self.lo)

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        return iter(product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi))))

    def __len__(self) -> int:
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def __contains__(self, a) -> bool:
        return all(x <= y <= z for x, y, z in zip(self.lo, a, self.hi))

    def to_json(self):
        return {"lo": list(self.lo), "hi": list(self.hi)}


def map_degrees(fn: Callable, degrees, threads: int = 1) -> list:
    """Evaluate ``fn`` on every degree, optionally on a thread pool; order is preserved."""
    degrees = list(degrees)
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, degrees))
    return [fn(a) for a in degrees]


def _key(a: Sequence[int]) -> str:
    return "[" + ",".join(str(x) for x in a) + "]"


@dataclass
class DegreeTable:
    """Dimensions of graded pieces on a box; absent cells are zero within the box.

    ``unstable`` lists degrees where a colimit was not certified stable; their
    entries hold the last computed stage and must not be read as final.
    """

    box: DegreeBox
    indices: Tuple[int, int]
    cells: Dict[int, Dict[Tuple[int, ...], int]] = field(default_factory=dict)
    label: str = ""
    unstable: List[Tuple[int, ...]] = field(default_factory=list)
    meta: Dict[str, object] = field(default_factory=dict)

    def set(self, i: int, a: Sequence[int], dim: int) -> None:
        if dim < 0:
            raise ValueError("negative dimension")
        a = tuple(a)
        if dim:
            self.cells.setdefault(i, {})[a] = dim
        else:
            self.cells.get(i, {}).pop(a, None)

    def get(self, i: int, a: Sequence[int]) -> int:
        return self.cells.get(i, {}).get(tuple(a), 0)

    def __getitem__(self, key):
        i, a = key
        return self.get(i, a)

    def nonzero(self, i: Optional[int] = None) -> Dict[Tuple[int, ...], int]:
        if i is None:
            return {(k, a): d for k, row in self.cells.items() for a, d in row.items()}
        return dict(self.cells.get(i, {}))

    def nonzero_indices(self) -> List[int]:
        return sorted(i for i, row in self.cells.items() if row)

    def total(self, i: int) -> int:
        return sum(self.cells.get(i, {}).values())

    def __eq__(self, other) -> bool:
        if not isinstance(other, DegreeTable):
            return NotImplemented
        return self.box == other.box and self.nonzero() == other.nonzero()

    def first_difference(self, other: "DegreeTable"):
        mine, theirs = self.nonzero(), other.nonzero()
        for key in sorted(set(mine) | set(theirs)):
            if mine.get(key, 0) != theirs.get(key, 0):
                return key, mine.get(key, 0), theirs.get(key, 0)
        return None

    def coarsen(self, weights: Sequence[int]) -> Dict[int, Dict[int, int]]:
        """Sum the fine table over fibres of a -> sum(w_i a_i), within the box."""
        out: Dict[int, Dict[int, int]] = {}
        for (i, a), d in self.nonzero().items():
            deg = sum(w * x for w, x in zip(weights, a))
            row = out.setdefault(i, {})
            row[deg] = row.get(deg, 0) + d
        return out

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "label": self.label,
            "box": self.box.to_json(),
            "indices": list(self.indices),
            "table": {str(i): {_key(a): d for a, d in sorted(self.cells.get(i, {}).items())}
                      for i in range(self.indices[0], self.indices[1] + 1)},
            "unstable": [list(a) for a in self.unstable],
            "meta": self.meta,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DegreeTable":
        box = DegreeBox(tuple(obj["box"]["lo"]), tuple(obj["box"]["hi"]))
        t = cls(box, tuple(obj["indices"]), label=obj.get("label", ""), meta=obj.get("meta", {}))
        for i, row in obj["table"].items():
            for k, d in row.items():
                t.set(int(i), tuple(json.loads(k)), d)
        t.unstable = [tuple(a) for a in obj.get("unstable", [])]
        return t

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i", "a", "dim"])
        for i in sorted(self.cells):
            for a, d in sorted(self.cells[i].items()):
                w.writerow([i, _key(a), d])
        return buf.getvalue()

    def render(self) -> str:
        """Plain text dump; always states the box so truncation is not read as vanishing."""
        lines = [f"{self.label or 'table'}  box lo={list(self.box.lo)} hi={list(self.box.hi)}"
                 f"  (zero means zero inside the box)"]
        for i in range(self.indices[0], self.indices[1] + 1):
            row = self.cells.get(i, {})
            if not row:
                lines.append(f"  H^{i}: 0")
                continue
            lines.append(f"  H^{i}: {len(row)} nonzero degree(s), total dim {sum(row.values())}")
            for a, d in sorted(row.items()):
                lines.append(f"    {_key(a)}: {d}")
        return "\n".join(lines)


@dataclass
class CheckReport:
    """Outcome of a certificate check; ``failures`` carry witness data."""

    name: str
    passed: bool = True
    checked: int = 0
    failures: List[dict] = field(default_factory=list)
    details: Dict[str, object] = field(default_factory=dict)

    def fail(self, **witness) -> None:
        self.passed = False
        self.failures.append(witness)

    @property
    def witness(self):
        return self.failures[0] if self.failures else None

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failures": self.failures[:20], "n_failures": len(self.failures), "details": self.details}
