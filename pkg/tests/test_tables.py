import numpy as np
import pytest

from synrep.tables import VectorTable, load_table_npz, load_table_text, save_table_npz, save_table_text


def test_validation():
    with pytest.raises(ValueError):
        VectorTable(["a", "a"], np.zeros((2, 2)))
    with pytest.raises(ValueError):
        VectorTable(["a"], np.zeros((2, 2)))
    with pytest.raises(ValueError):
        VectorTable(["a"], np.array([[np.inf, 0.0]]))
    with pytest.raises(ValueError):
        VectorTable(["a"], np.zeros(2))


def test_mapping_behaviour():
    t = VectorTable(["a", "b", "c"], np.arange(6.0).reshape(3, 2))
    assert len(t) == 3 and list(t) == ["a", "b", "c"]
    assert np.array_equal(t["b"], [2.0, 3.0])
    assert t.lookup("z") is None and "z" not in t
    with pytest.raises(KeyError):
        t["z"]
    sub = t.subset(["c", "z", "a", "c"])
    assert sub.vocab == ["c", "a"]


def test_text_and_npz_round_trip(tmp_path):
    rng = np.random.default_rng(0)
    t = VectorTable(["x", "y"], rng.normal(size=(2, 8)))
    save_table_text(t, tmp_path / "t.tsv", tag="interpretable")
    back, tag = load_table_text(tmp_path / "t.tsv")
    assert tag == "interpretable"
    assert np.array_equal(back.data, t.data)
    save_table_npz(t, tmp_path / "t.npz", variant="l2", omitted=3)
    back = load_table_npz(tmp_path / "t.npz")
    assert back.vocab == t.vocab and np.array_equal(back.data, t.data)
    assert back.meta == {"variant": "l2", "omitted": 3}
