import pytest

import json

from datastore import ClassDatabase, ClassEntry, ClassKey
from reports import (
    BoxGrid,
    Predominant,
    ShortList,
    csv_report,
    describe,
    format_predominance_table,
    g_conjecture_permissible,
    grid_cell,
    grid_report,
    load_permissibility,
    predominance_table,
    predominant_classes,
)

B = ClassKey(5, 2, "B", 1, 1, 2)
H00 = ClassKey(5, 2, "H", 0, 0, 0)
G3 = ClassKey(6, 2, "G", 0, 1, 3)
T = ClassKey(5, 4, "T", 3, 0, 0)
C3 = ClassKey(3, 1, "C", 3, 1, 3)


def database(tmp_path, counts, bucket=0):
    entries = {(bucket, key): ClassEntry("matrix{{x^2}}", count, bucket) for key, count in counts}
    return ClassDatabase(str(tmp_path), entries)


@pytest.mark.parametrize(
    "key, cell",
    [(B, ("BGT", (1, 2))), (T, ("BGT", (3, 0))), (C3, ("BGT", (3, 3))), (G3, ("BGT", (0, 3)))],
)
def test_grid_cells(key, cell):
    assert grid_cell(key) == cell
    assert grid_cell(ClassKey(7, 3, "H", 2, 1, 1)) == ("H", (2, 1))


def test_grid_report_single_class(tmp_path):
    h, bgt = grid_report(database(tmp_path, [(B, 3)]), 5, 2)

    assert h.cells == {}
    assert bgt.cells == {(1, 2): 3}
    assert bgt.total == 3
    assert h.to_text() == "(5,2)-box H: p \\ q\n(empty)\n"
    lines = bgt.to_text().splitlines()
    assert lines[0] == "(5,2)-box BGT: p \\ r"
    assert lines[1] == "      0  1  2"
    assert lines[2] == "   0  0  0  0"
    assert lines[3] == "   1  0  0  3"


def test_grid_report_sums_buckets(tmp_path):
    entries = {
        (0, B): ClassEntry("matrix{{x^2}}", 3, 0),
        (2, B): ClassEntry("matrix{{x^2}}", 4, 2),
        (2, H00): ClassEntry("matrix{{x^2}}", 5, 2),
    }
    db = ClassDatabase(str(tmp_path), entries)

    h, bgt = grid_report(db, 5, 2)
    assert bgt.cells == {(1, 2): 7}
    assert h.cells == {(0, 0): 5}

    _, bgt = grid_report(db, 5, 2, bucket=0)
    assert bgt.cells == {(1, 2): 3}


def test_markers():
    grid = BoxGrid(5, 4, "BGT", {(3, 0): 2}, permissible={(1, 2)})

    assert grid.marker((1, 2)) == ""
    assert grid.marker((0, 0)) == "."
    assert grid.marker((3, 0)) == "!"
    assert BoxGrid(5, 4, "BGT", {(3, 0): 2}).marker((3, 0)) == ""
    assert "!2" in grid.to_text()


def test_load_permissibility(tmp_path):
    path = tmp_path / "permissible.json"
    path.write_text(json.dumps({"H": {"5,2": [[0, 0], [1, 1]]}, "BGT": {"5,2": [[1, 2]]}}))

    assert load_permissibility(str(path)) == {
        ("H", 5, 2): {(0, 0), (1, 1)},
        ("BGT", 5, 2): {(1, 2)},
    }
    assert load_permissibility(str(tmp_path / "missing.json")) == {}


def test_csv_report(tmp_path):
    db = database(tmp_path, [(B, 3), (C3, 1), (G3, 2)])

    assert csv_report(db) == "m,n,class,p,q,r,count\n3,1,C,3,1,3,1\n5,2,B,1,1,2,3\n6,2,G,0,1,3,2\n"
    assert csv_report(db, min_m=5, min_n=2).count("\n") == 3


@pytest.mark.parametrize(
    "counts, expected",
    [
        ({B: 70, H00: 10}, Predominant(B)),
        ({B: 60, H00: 10}, ShortList([B, H00])),
        ({B: 100, H00: 10, G3: 1}, Predominant(B)),
        ({B: 50, H00: 50, G3: 5}, ShortList([B, H00])),
        ({T: 1}, Predominant(T)),
    ],
)
def test_predominant_classes(counts, expected):
    assert predominant_classes(counts) == expected


def test_predominance_is_scale_invariant():
    counts = {B: 60, H00: 10, G3: 8}
    scaled = {k: 13 * v for k, v in counts.items()}

    assert predominant_classes(counts) == predominant_classes(scaled)


def test_predominant_of_nothing():
    with pytest.raises(ValueError):
        predominant_classes({})


def test_describe():
    assert describe(Predominant(G3)) == "G(3)"
    assert describe(ShortList([H00, B])) == "H(0,0), B"


def test_predominance_table(tmp_path):
    db = database(tmp_path, [(B, 70), (H00, 10), (C3, 9), (G3, 1)])

    table = predominance_table(db)

    assert table == {(5, 2): Predominant(B), (6, 2): Predominant(G3)}
    text = format_predominance_table(table)
    assert text.splitlines()[0].split() == ["n", "\\", "m", "5", "6"]
    assert text.splitlines()[1].split() == ["2", "B", "G(3)"]
    assert format_predominance_table({}) == "(no boxes)\n"


@pytest.mark.parametrize(
    "m, n, r, expected",
    [
        (6, 2, 3, True),
        (8, 2, 5, True),
        (8, 2, 4, False),
        (7, 2, 2, True),
        (6, 3, 3, False),
        (8, 3, 4, True),
        (12, 6, 8, True),
    ],
)
def test_g_conjecture(m, n, r, expected):
    assert g_conjecture_permissible(m, n, r) == expected


@pytest.mark.parametrize("n, r", [(1, 2), (2, 1)])
def test_g_conjecture_undefined(n, r):
    with pytest.raises(ValueError):
        g_conjecture_permissible(8, n, r)
