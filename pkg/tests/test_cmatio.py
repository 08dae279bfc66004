import numpy as np
import pytest

from convroof.cmatio import format_cmat, load_cmat, parse_cmat, save_cmat


def test_roundtrip_bit_faithful(tmp_path, rng):
    m = rng.standard_normal((5, 3)) + 1j * rng.standard_normal((5, 3))
    m *= np.exp(rng.uniform(-200, 200, (5, 3)))  # wide dynamic range
    path = tmp_path / "m.cmat"
    save_cmat(path, m)
    back = load_cmat(path)
    assert back.shape == (5, 3)
    assert np.array_equal(back, m)


def test_vector_promoted_to_row(tmp_path):
    v = np.array([1.0 + 2.0j, -3.0j])
    path = tmp_path / "v.cmat"
    save_cmat(path, v)
    back = load_cmat(path)
    assert back.shape == (1, 2)
    assert np.array_equal(back[0], v)


def test_header_format():
    text = format_cmat(np.eye(2))
    lines = text.splitlines()
    assert lines[0] == "cmat 2 2"
    assert len(lines) == 5
    assert lines[1].split() == ["1.0000000000000000e+00", "0.0000000000000000e+00"]


def test_parse_ignores_blank_lines():
    text = "cmat 1 2\n\n1.0 2.0\n\n3.0 -4.0\n"
    m = parse_cmat(text)
    assert np.array_equal(m, np.array([[1.0 + 2.0j, 3.0 - 4.0j]]))


@pytest.mark.parametrize(
    "text",
    [
        "",
        "notcmat 2 2\n" + "0 0\n" * 4,
        "cmat 2\n0 0\n0 0\n",
        "cmat a b\n",
        "cmat 0 2\n",
        "cmat 2 2\n0 0\n0 0\n0 0\n",  # too few entries
        "cmat 1 1\n1 2 3\n",  # malformed entry
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(ValueError):
        parse_cmat(text)
