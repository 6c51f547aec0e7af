"""Summaries of a class database: (m,n)-box grids, predominant classes, and the G conjecture.

Within an (m,n)-box, classes H(p,q) are gridded by (p,q) and classes B, C(3), G(r) and T by (p,r),
where B sits at (1,2), T at (3,0), C(3) at (3,3) and G(r) at (0,r).
"""

import csv
import io
import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, NamedTuple, Optional, Tuple

from datastore import ClassDatabase, ClassKey
from file_utils import load_json_file

log = logging.getLogger(__name__)

# Recording filter of the sampling experiments
MIN_M = 5
MIN_N = 2

PREDOMINANCE_FACTOR = 7

CSV_HEADER = ("m", "n", "class", "p", "q", "r", "count")

# Cell markers for grids with a permissibility list
NOT_PERMISSIBLE = "."
OBSERVED_NOT_PERMISSIBLE = "!"


def grid_cell(key: ClassKey) -> Tuple[str, Tuple[int, int]]:
    """The grid ("H" or "BGT") and cell coordinates of a class"""
    if key.name == "H":
        return "H", (key.p, key.q)
    return "BGT", (key.p, key.r)


@dataclass
class BoxGrid:
    """Observation counts for one grid of an (m,n)-box

    @param kind  "H" for (p,q)-cells, "BGT" for (p,r)-cells
    @param cells  {(p, q or r): count}
    @param permissible  The permissible cells, if known for this box
    """

    m: int
    n: int
    kind: str
    cells: Dict[Tuple[int, int], int] = dataclass_field(default_factory=dict)
    permissible: Optional[set] = None

    @property
    def total(self) -> int:
        return sum(self.cells.values())

    @property
    def column_name(self) -> str:
        return "q" if self.kind == "H" else "r"

    def marker(self, cell) -> str:
        """Empty for permissible or unknown cells, otherwise a marker"""
        if self.permissible is None or cell in self.permissible:
            return ""
        return OBSERVED_NOT_PERMISSIBLE if self.cells.get(cell) else NOT_PERMISSIBLE

    def extent(self) -> Tuple[int, int]:
        cells = set(self.cells) | (self.permissible or set())
        if not cells:
            return 0, 0
        return max(c[0] for c in cells) + 1, max(c[1] for c in cells) + 1

    def to_text(self) -> str:
        """The grid with p down the side and q (or r) across the top"""
        rows, columns = self.extent()
        header = f"({self.m},{self.n})-box {self.kind}: p \\ {self.column_name}"
        if not rows:
            return header + "\n(empty)\n"
        width = max([len(str(v)) + 1 for v in self.cells.values()] + [len(str(columns)), 2])
        lines = [header, "    " + "".join(f"{c:>{width + 1}}" for c in range(columns))]
        for p in range(rows):
            text = []
            for c in range(columns):
                count = self.cells.get((p, c), 0)
                marker = self.marker((p, c))
                if marker == NOT_PERMISSIBLE:
                    value = NOT_PERMISSIBLE
                else:
                    value = f"{marker}{count}" if count or marker else "0"
                text.append(f"{value:>{width + 1}}")
            lines.append(f"{p:>4}" + "".join(text))
        return "\n".join(lines) + "\n"


def load_permissibility(path: str) -> dict:
    """Read a permissibility file {"H": {"m,n": [[p,q], ...]}, "BGT": {"m,n": [[p,r], ...]}}

    @return  {(kind, m, n): set of cells}
    """
    raw = load_json_file(path)
    result = {}
    for kind in ("H", "BGT"):
        for box, cells in raw.get(kind, {}).items():
            m, n = (int(v) for v in box.split(","))
            result[(kind, m, n)] = {tuple(int(v) for v in cell) for cell in cells}
    return result


def grid_report(
    db: ClassDatabase, m: int, n: int, bucket: int = None, permissible: dict = None
) -> Tuple[BoxGrid, BoxGrid]:
    """The H grid and the BGT grid of the (m,n)-box, counts summed over buckets unless one is
    given
    """
    permissible = permissible or {}
    grids = {
        kind: BoxGrid(m, n, kind, permissible=permissible.get((kind, m, n)))
        for kind in ("H", "BGT")
    }
    for key, count in db.counts(bucket).items():
        if (key.m, key.n) != (m, n):
            continue
        kind, cell = grid_cell(key)
        cells = grids[kind].cells
        cells[cell] = cells.get(cell, 0) + count
    return grids["H"], grids["BGT"]


def csv_report(db: ClassDatabase, bucket: int = None, min_m: int = 0, min_n: int = 0) -> str:
    """One row per class, header m,n,class,p,q,r,count"""
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for key, count in sorted(db.counts(bucket).items()):
        if key.m >= min_m and key.n >= min_n:
            writer.writerow([*key, count])
    return out.getvalue()


class Predominant(NamedTuple):
    key: ClassKey


class ShortList(NamedTuple):
    keys: List[ClassKey]


def predominant_classes(counts: Dict[ClassKey, int], factor: int = PREDOMINANCE_FACTOR):
    """The class seen at least `factor` times as often as every other, or failing that every class
    seen at least 1/factor as often as the most common one

    @exception ValueError if counts is empty
    """
    if not counts:
        raise ValueError("No classes to compare")
    top = max(counts.values())
    for key, count in counts.items():
        if all(count >= factor * other for k, other in counts.items() if k != key):
            return Predominant(key)
    return ShortList(sorted(k for k, c in counts.items() if factor * c >= top))


def describe(result) -> str:
    if isinstance(result, Predominant):
        return result.key.label
    return ", ".join(k.label for k in result.keys)


def predominance_table(
    db: ClassDatabase,
    factor: int = PREDOMINANCE_FACTOR,
    min_m: int = MIN_M,
    min_n: int = MIN_N,
    bucket: int = None,
) -> Dict[Tuple[int, int], object]:
    """`predominant_classes` for every (m,n)-box in the database passing the recording filter"""
    boxes: Dict[Tuple[int, int], Dict[ClassKey, int]] = {}
    for key, count in db.counts(bucket).items():
        if key.m >= min_m and key.n >= min_n:
            boxes.setdefault((key.m, key.n), {})[key] = count
    return {box: predominant_classes(counts, factor) for box, counts in sorted(boxes.items())}


def format_predominance_table(table) -> str:
    """Rows by n descending, columns by m ascending"""
    if not table:
        return "(no boxes)\n"
    ms = sorted({m for m, _ in table})
    ns = sorted({n for _, n in table}, reverse=True)
    cells = {box: describe(result) for box, result in table.items()}
    width = max(len(text) for text in cells.values()) + 2
    lines = ["n \\ m" + "".join(f"{m:>{width}}" for m in ms)]
    for n in ns:
        lines.append(f"{n:>5}" + "".join(f"{cells.get((m, n), ''):>{width}}" for m in ms))
    return "\n".join(lines) + "\n"


def g_conjecture_permissible(m: int, n: int, r: int) -> bool:
    """Whether G(r) is expected to occur in the (m,n)-box

    For n = 2: 2 <= r <= m - 5 or r = m - 3. For n >= 3: 2 <= r <= m - 4.

    @exception ValueError for n < 2 or r < 2, where the statement says nothing
    """
    if n < 2 or r < 2:
        raise ValueError(f"Undefined for n = {n}, r = {r}: need n >= 2 and r >= 2")
    if n == 2:
        return r <= m - 5 or r == m - 3
    return r <= m - 4
