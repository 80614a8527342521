import pytest

from morphokit.tables import TABLE1, TABLE2, reproduce, to_csv


def test_table2_columns():
    rows = reproduce(2, mc_samples=20_000, seed=3)
    assert [r["t"] for r in rows] == list(TABLE2.ts)
    for r in rows:
        assert r["vom"] == pytest.approx(r["vom_ref"], abs=5e-5)
        assert r["vomsad"] == pytest.approx(r["vomsad_ref"], abs=5e-5)


def test_table1_vom():
    rows = reproduce(1, mc_samples=20_000, seed=3)
    assert len(rows) == len(TABLE1.ts)
    for r in rows:
        assert r["vom"] == pytest.approx(r["vom_ref"], abs=5e-4)
        assert "vomsad" not in r


def test_csv_header():
    text = to_csv(reproduce(1, mc_samples=1000))
    assert text.splitlines()[0] == "t,exact_ref,mc,mc_stderr,vom,vom_ref"
    assert len(text.splitlines()) == 8


def test_matplotlib_figure(tmp_path):
    from morphokit.plotting import table_figure

    out = table_figure(reproduce(2, mc_samples=1000), tmp_path / "t2.png", "Table 2")
    assert out.stat().st_size > 1000
