from __future__ import annotations

from qlrc.gf import field_create
from qlrc.linalg import Matrix
from qlrc.report import SUMMARY_COLUMNS, plot_support, read_tsv, write_tsv


def test_tsv_round_trip(tmp_path):
    rows = [
        {"label": "a", "n": 6, "k": 4, "d": 2, "quantum_optimal": True, "dual_containing": False},
        {"label": "b", "n": 5, "k": 3, "d": 2},
    ]
    path = write_tsv(rows, tmp_path / "s.tsv")
    back = read_tsv(path)
    assert list(back[0]) == list(SUMMARY_COLUMNS)
    assert back[0]["n"] == "6" and back[0]["quantum_optimal"] == "yes" and back[0]["dual_containing"] == "no"
    assert back[1]["r"] == ""


def test_support_plot_is_a_png(tmp_path):
    H = Matrix(field_create(2), [[1, 1, 1, 0, 0, 0], [0, 0, 0, 1, 1, 1], [1, 0, 1, 0, 1, 1]])
    path = plot_support(H, [(0, 1, 2), (3, 4, 5)], tmp_path / "h.png", title="pairs")
    data = path.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n" and len(data) > 1000
