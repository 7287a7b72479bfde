import numpy as np
import pytest

from telhaz.datasets import builtin, builtin_names, load, save


class TestBuiltins:
    def test_names(self):
        assert builtin_names() == ("melanoma_46", "service_86")

    def test_melanoma_invariants(self):
        data = builtin("melanoma_46")
        values = data.sample.values
        assert data.sample.n == 46
        assert values[0] == 13.0 and values[-1] == 234.0
        assert float(values.sum()) == 2885.0  # pinned transcription checksum
        assert np.all(np.diff(values) >= 0.0)

    def test_service_invariants(self):
        data = builtin("service_86")
        values = data.sample.values
        assert data.sample.n == 86
        assert values[0] == 220.0 and values[-1] == 1659.0
        assert float(values.sum()) == 64132.0  # pinned transcription checksum
        assert np.all(np.diff(values) >= 0.0)

    def test_duplicates_preserved(self):
        values = builtin("melanoma_46").sample.values
        assert np.count_nonzero(values == 19.0) == 2
        assert np.count_nonzero(values == 65.0) == 2

    def test_unknown_name(self):
        with pytest.raises(KeyError):
            builtin("nonexistent")


class TestLoad:
    def test_whitespace_and_newlines(self, tmp_path):
        path = tmp_path / "plain.txt"
        path.write_text("1 2 3\n4\n5 6\n")
        data = load(path)
        assert data.sample.values.tolist() == [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
        assert data.name == "plain"

    def test_single_column_csv(self, tmp_path):
        path = tmp_path / "col.csv"
        path.write_text("3.5\n1.25\n7\n")
        assert load(path).sample.values.tolist() == [1.25, 3.5, 7.0]

    def test_sorts_input(self, tmp_path):
        path = tmp_path / "d.txt"
        path.write_text("9 1 5\n")
        assert load(path).sample.values.tolist() == [1.0, 5.0, 9.0]

    def test_non_numeric_token_names_line(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("1 2\nabc 4\n")
        with pytest.raises(ValueError, match=r"bad\.txt:2.*'abc'"):
            load(path)

    def test_nonpositive_value_rejected(self, tmp_path):
        path = tmp_path / "neg.txt"
        path.write_text("1 -2 3\n")
        with pytest.raises(ValueError, match="finite and > 0"):
            load(path)

    def test_too_few_values(self, tmp_path):
        path = tmp_path / "one.txt"
        path.write_text("42\n")
        with pytest.raises(ValueError, match="at least 3"):
            load(path)

    def test_round_trip(self, tmp_path):
        for name in builtin_names():
            original = builtin(name)
            path = tmp_path / f"{name}.txt"
            save(original, path)
            reloaded = load(path)
            assert reloaded.sample.values.tolist() == original.sample.values.tolist()
