"""The `data/` folder: every class observed so far, how often, and its shortest representative.

Layout under the root directory:

    data/classDat.txt               ((m,n,C,p,q,r),(matrix{{...}},count)), one entry per line
    data/class.txt                  | m n C p q r count | gen gen ... |, the same entries for people
    data/<bucket>/m-n-C-p-q-r.txt   every representative that was the shortest when recorded

Buckets 1 to 4 hold ideals whose longest minimal generator has that many terms (4 meaning four or
more); bucket 0 holds runs with dense random forms. The index files are shared by all buckets; the
bucket of an entry is recovered from the folder whose per-class file ends with its representative.

The index files are rewritten atomically on every record, so an interrupted run leaves a loadable
folder.
"""

import logging
import os
import re
from dataclasses import dataclass, replace
from functools import partial
from typing import Dict, List, NamedTuple, Tuple

from errors import DatabaseFormatError
from file_utils import append_text, delete_file, read_lines, truncate_file, write_text_atomic
from polynomials import HUMAN, serialize_matrix

log = logging.getLogger(__name__)

DATA_FOLDER = "data"
MACHINE_INDEX = "classDat.txt"
HUMAN_INDEX = "class.txt"
BUCKETS = (0, 1, 2, 3, 4)

_ENTRY = re.compile(
    r"^\(\((\d+),(\d+),([BCGHT]),(\d+),(\d+),(\d+)\),\((matrix\{\{.*\}\}),(\d+)\)\)$"
)
_STEM = re.compile(r"^(\d+)-(\d+)-([BCGHT])-(\d+)-(\d+)-(\d+)$")


class ClassKey(NamedTuple):
    """(m, n, Class, p, q, r); tuples sort the way class.txt is ordered"""

    m: int
    n: int
    name: str
    p: int
    q: int
    r: int

    @property
    def stem(self) -> str:
        return f"{self.m}-{self.n}-{self.name}-{self.p}-{self.q}-{self.r}"

    @classmethod
    def from_stem(cls, stem: str):
        """Parse `m-n-Class-p-q-r`; None if the text has another shape"""
        match = _STEM.match(stem)
        if not match:
            return None
        m, n, name, p, q, r = match.groups()
        return cls(int(m), int(n), name, int(p), int(q), int(r))

    @classmethod
    def from_profile(cls, profile):
        return cls(*profile.as_tuple())

    @property
    def label(self) -> str:
        if self.name == "G":
            return f"G({self.r})"
        if self.name == "H":
            return f"H({self.p},{self.q})"
        if self.name == "C":
            return "C(3)"
        return self.name

    def __str__(self):
        return f"({self.m},{self.n},{self.name},{self.p},{self.q},{self.r})"


@dataclass(frozen=True)
class ClassEntry:
    """The record of one class in one bucket

    @param generators  The shortest representative so far, as `matrix{{...}}`
    @param count  How many times the class was recorded
    @param bucket  Term-count bucket, 0 to 4
    """

    generators: str
    count: int
    bucket: int

    @property
    def human(self) -> str:
        return human_text(self.generators)


def human_text(machine: str) -> str:
    """The class.txt rendering of a `matrix{{...}}` line"""
    inner = machine[len("matrix{{") : -len("}}")]
    return " ".join(inner.replace("*", "").replace("^", "").split(","))


def bucket_for(gens, num_terms: int) -> int:
    """0 for dense runs; otherwise the term count of the longest generator, capped at 4"""
    if num_terms == 0:
        return 0
    return min(4, max((g.num_terms for g in gens), default=0))


def format_machine_entry(key: ClassKey, entry: ClassEntry) -> str:
    return (
        f"(({key.m},{key.n},{key.name},{key.p},{key.q},{key.r}),"
        f"({entry.generators},{entry.count}))"
    )


def format_human_entry(key: ClassKey, entry: ClassEntry) -> str:
    return (
        f"| {key.m} {key.n} {key.name} {key.p} {key.q} {key.r} {entry.count} | {entry.human} |"
    )


def parse_machine_entry(line: str):
    """Inverse of `format_machine_entry`; None if the line does not match"""
    match = _ENTRY.match(line)
    if not match:
        return None
    m, n, name, p, q, r, generators, count = match.groups()
    return ClassKey(int(m), int(n), name, int(p), int(q), int(r)), generators, int(count)


class RecordResult(NamedTuple):
    entry: ClassEntry
    new_class: bool
    new_representative: bool


class ClassDatabase:
    """Write-through view of a data folder

    @param root  The directory containing `data/`
    @param entries  {(bucket, ClassKey): ClassEntry}
    """

    def __init__(self, root: str, entries: Dict[Tuple[int, ClassKey], ClassEntry] = None):
        self.root = root
        self.entries = dict(entries or {})

    @property
    def data_dir(self) -> str:
        return os.path.join(self.root, DATA_FOLDER)

    def class_file(self, bucket: int, key: ClassKey) -> str:
        return os.path.join(self.data_dir, str(bucket), f"{key.stem}.txt")

    def __len__(self):
        return len(self.entries)

    def keys(self) -> List[ClassKey]:
        return sorted({key for _, key in self.entries})

    def has_class(self, key: ClassKey) -> bool:
        return any(k == key for _, k in self.entries)

    def get(self, key: ClassKey, bucket: int):
        return self.entries.get((bucket, key))

    def count(self, key: ClassKey, bucket: int = None) -> int:
        return sum(
            e.count for (b, k), e in self.entries.items() if k == key and bucket in (None, b)
        )

    def counts(self, bucket: int = None) -> Dict[ClassKey, int]:
        """Counts per class, summed over buckets unless one is given"""
        totals: Dict[ClassKey, int] = {}
        for (b, key), entry in self.entries.items():
            if bucket is None or b == bucket:
                totals[key] = totals.get(key, 0) + entry.count
        return totals

    def boxes(self, bucket: int = None) -> List[Tuple[int, int]]:
        return sorted({(key.m, key.n) for key in self.counts(bucket)})

    def sorted_entries(self, entries=None):
        entries = self.entries if entries is None else entries
        return sorted(entries.items(), key=lambda item: (item[0][1], item[0][0]))

    def _write_indexes(self, entries):
        ordered = self.sorted_entries(entries)
        machine = "".join(format_machine_entry(k, e) + "\n" for (_, k), e in ordered)
        human = "".join(format_human_entry(k, e) + "\n" for (_, k), e in ordered)
        # classDat.txt goes last: it is the file load_database trusts
        write_text_atomic(os.path.join(self.data_dir, HUMAN_INDEX), human)
        write_text_atomic(os.path.join(self.data_dir, MACHINE_INDEX), machine)

    def record(self, key: ClassKey, gens, bucket: int) -> RecordResult:
        """Count one more observation of a class

        A first observation in a bucket creates the per-class file. Later observations replace the
        representative only when its human text is strictly shorter, appending it to that file.
        Memory is only updated once every file has been written; if the index rewrite fails, the
        per-class file is restored.

        @exception OSError if a file cannot be written
        """
        if not gens:
            raise ValueError("Cannot record an empty generator list")
        if bucket not in BUCKETS:
            raise ValueError(f"Bucket {bucket} is not one of {BUCKETS}")
        machine = serialize_matrix(gens)
        new_class = not self.has_class(key)
        existing = self.entries.get((bucket, key))
        path = self.class_file(bucket, key)
        os.makedirs(os.path.dirname(path), exist_ok=True)

        if existing is None:
            write_text_atomic(path, machine + "\n")
            entry = ClassEntry(machine, 1, bucket)
            shorter = True
            undo = partial(delete_file, path)
        else:
            shorter = len(serialize_matrix(gens, HUMAN)) < len(existing.human)
            if shorter:
                size = os.path.getsize(path)
                append_text(path, machine + "\n")
                entry = ClassEntry(machine, existing.count + 1, bucket)
                undo = partial(truncate_file, path, size)
            else:
                entry = replace(existing, count=existing.count + 1)
                undo = None

        updated = dict(self.entries)
        updated[(bucket, key)] = entry
        try:
            self._write_indexes(updated)
        except OSError:
            # the per-class file must keep ending with the representative the index names
            if undo is not None:
                undo()
            raise
        self.entries = updated
        log.debug(f"recorded {key} in bucket {bucket}, count {entry.count}")
        return RecordResult(entry, new_class, shorter)


def _read_index(path: str):
    """[(line number, key, generators, count)] from a classDat.txt file"""
    entries = []
    for number, line in enumerate(read_lines(path), start=1):
        if not line.strip():
            continue
        parsed = parse_machine_entry(line.strip())
        if parsed is None:
            raise DatabaseFormatError(path, number, f"malformed entry {line!r}")
        entries.append((number, *parsed))
    return entries


def _last_line(path: str):
    if not os.path.isfile(path):
        return None
    lines = [line for line in read_lines(path) if line.strip()]
    return lines[-1].strip() if lines else None


def load_database(root: str = ".") -> ClassDatabase:
    """Read the data folder under root, creating an empty one if there is none

    @exception DatabaseFormatError if an index line is malformed, repeated, or names a
               representative that no per-class file ends with
    @exception OSError if the folder cannot be read or created
    """
    db = ClassDatabase(root)
    data_dir = db.data_dir
    if not os.path.isdir(data_dir):
        log.info(f"No data folder in {root}; creating an empty one")
        os.makedirs(data_dir, exist_ok=True)
        return db

    entries: Dict[Tuple[int, ClassKey], ClassEntry] = {}
    index = os.path.join(data_dir, MACHINE_INDEX)
    if os.path.isfile(index):
        for number, key, generators, count in _read_index(index):
            claimed = [b for b in BUCKETS if (b, key) in entries]
            if len(claimed) == len(BUCKETS):
                raise DatabaseFormatError(index, number, f"{key} appears in too many buckets")
            matching = [
                b
                for b in BUCKETS
                if b not in claimed and _last_line(db.class_file(b, key)) == generators
            ]
            if not matching:
                raise DatabaseFormatError(
                    index, number, f"no per-class file ends with the entry for {key}"
                )
            bucket = matching[0]
            entries[(bucket, key)] = ClassEntry(generators, count, bucket)

    db.entries = entries
    log.info(f"Loaded {len(entries)} entries from {data_dir}")
    return db


def record_classification(db: ClassDatabase, key: ClassKey, gens, bucket: int) -> RecordResult:
    """Record one classified ideal in db, which is updated in place and on disk"""
    return db.record(key, gens, bucket)
