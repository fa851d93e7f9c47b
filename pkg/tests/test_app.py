from app import run
from core.formats import read_catalog

DECAGON = "n=10: 0-2, 1-4, 3-7, 5-8, 6-9"
TWISTED = "n=10: 0-1-, 2-5+, 3-8-, 4-7-, 6-9+"


def test_bounds(capsys):
    assert run(["bounds", "--chi", "-1", "--n", "12"]) == 0
    assert capsys.readouterr().out.strip() == "f in (0.2, 1]; f=1 attains max (all vertices degree 3)"


def test_bounds_table(capsys):
    assert run(["bounds", "--chi", "-1"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("n=7: ")
    assert out[-1].startswith("n=12: ")


def test_admissible(capsys):
    assert run(["admissible", "--chi", "-1"]) == 0
    assert capsys.readouterr().out.splitlines() == ["7: 2 4 6", "8: 1 2 3", "9: 2", "10: 1", "12: 1"]


def test_vertices(capsys):
    assert run(["vertices", "--diagram", TWISTED]) == 0
    assert capsys.readouterr().out.strip() == "n=10: (0,1-,2,6)(3,8-,5)(4,7-,9-)"


def test_diagram(capsys):
    assert run(["diagram", "--vertex-set", "(0683,124795)"]) == 0
    assert capsys.readouterr().out.strip() == DECAGON


def test_validate(capsys):
    assert run(["validate", "--vertex-set", "n=10: (0,3,8,6)(1,5,9,7,4,2)"]) == 0
    assert capsys.readouterr().out.strip() == "pass"
    assert run(["validate", "--vertex-set", "n=8: (0,1,2,3)(4,5,6,7)"]) == 1
    assert capsys.readouterr().out.startswith("fail adjacent:")


def test_classify(capsys):
    assert run(["classify", "--diagram", DECAGON]) == 0
    assert capsys.readouterr().out.strip() == "2T2 chi=-2 v=2 e=5 orientable degrees=4,6"
    assert run(["classify", "--diagram", TWISTED]) == 0
    assert capsys.readouterr().out.strip() == "3P2 chi=-1 v=3 e=5 non-orientable degrees=3,3,4"


def test_canon(capsys):
    assert run(["canon", "--diagram", "n=8: 0-4, 1-5, 2-6, 3-7"]) == 0
    assert capsys.readouterr().out.splitlines() == ["n=8: 0-4, 1-5, 2-6, 3-7", "stabilizer 16, orbit 1"]


def test_eq(capsys):
    assert run(["eq", "--a", DECAGON, "--b", "n=10: 0-2, 1-8, 3-6, 4-7, 5-9"]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"
    assert run(["eq", "--a", DECAGON, "--b", "(0683,124795)"]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"
    assert run(["eq", "--a", DECAGON, "--b", "n=10: (0683,124795)"]) == 0
    assert capsys.readouterr().out.strip() == "equivalent"
    assert run(["eq", "--a", DECAGON, "--b", TWISTED]) == 0
    assert capsys.readouterr().out.strip() == "not equivalent"


def test_enumerate_counts(capsys):
    assert run(["enumerate", "--n", "8"]) == 0
    assert capsys.readouterr().out.splitlines() == ["2T2 8 4", "3P2 8 22", "4P2 8 47"]


def test_enumerate_naive_matches(capsys):
    assert run(["enumerate", "--n", "8", "--surface", "3P2", "--naive"]) == 0
    assert capsys.readouterr().out.strip() == "3P2 8 22"


def test_enumerate_writes_catalog(tmp_path, capsys):
    out = tmp_path / "2T2-8.txt"
    assert run(["enumerate", "--n", "8", "--surface", "2T2", "--out", str(out)]) == 0
    assert capsys.readouterr().out.strip() == "2T2 8 4"
    catalog = read_catalog(str(out))
    assert catalog.count == 4
    assert catalog.surface == "2T2"


def test_enumerate_over_the_node_limit(capsys):
    assert run(["enumerate", "--n", "10", "--node-limit", "1000"]) == 1
    assert "--long" in capsys.readouterr().err


def test_enumerate_out_of_scope(capsys):
    assert run(["enumerate", "--n", "9"]) == 1
    assert capsys.readouterr().err.startswith("error: ")


def test_usage_errors(tmp_path):
    assert run(["enumerate", "--n", "8", "--naive", "--out", str(tmp_path / "x.txt")]) == 2
    assert run(["enumerate", "--n", "8", "--threads", "0"]) == 2
    assert run(["nonsense"]) == 2
    assert run(["enumerate", "--n", "8", "--surface", "2T2", "--chi", "-2"]) == 2


def test_census(capsys, tmp_path):
    chart = tmp_path / "census.html"
    assert run(["census", "--surface", "3P2", "--node-limit", "40000", "--chart", str(chart)]) == 0
    captured = capsys.readouterr()
    assert captured.out.splitlines() == ["3P2 8 22", "3P2 10 24"]
    assert "3P2 12 skipped" in captured.err
    assert chart.exists()


def test_render(tmp_path):
    svg = tmp_path / "decagon.svg"
    assert run(["render", "--diagram", TWISTED, "--out", str(svg)]) == 0
    assert 'id="chord-twisted-0"' in svg.read_text(encoding="utf-8")


def test_render_catalog(tmp_path):
    catalog = tmp_path / "2T2-8.txt"
    svg = tmp_path / "gallery.svg"
    assert run(["enumerate", "--n", "8", "--surface", "2T2", "--out", str(catalog)]) == 0
    assert run(["render", "--catalog", str(catalog), "--out", str(svg), "--columns", "2"]) == 0
    assert svg.read_text(encoding="utf-8").count('id="tiling-') == 4


def test_compare(tmp_path, capsys):
    a = tmp_path / "a.txt"
    b = tmp_path / "b.txt"
    a.write_text(f"{DECAGON}\nn=10: 0-2, 1-8, 3-6, 4-7, 5-9\n", encoding="utf-8")
    b.write_text(f"(0386,159742)\n{TWISTED}\n", encoding="utf-8")
    assert run(["compare", "--a", str(a), "--b", str(b)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "0 present only in A, 1 present only in B"
    assert "Duplicates in A:" in out
    assert run(["compare", "--a", str(a), "--b", str(b), "--records"]) == 0
    records = capsys.readouterr().out.splitlines()
    assert records[0].startswith("missing_from_a\t10\t")


def test_missing_file(capsys, tmp_path):
    assert run(["compare", "--a", str(tmp_path / "nope.txt"), "--b", str(tmp_path / "nope.txt")]) == 1
