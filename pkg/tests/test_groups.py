import itertools

import numpy as np
import pytest

from degdiam.groups import (
    ActionNotInvertible,
    ActionOrderError,
    GroupError,
    SemidirectSpec,
    TableGroupError,
    TwoCoordGroup,
    TwoCoordSpec,
    read_generator_indices,
    sd_inv,
    sd_mul,
    sd_validate,
    table_group_from_array,
    table_group_load,
    two_coord_inv,
    two_coord_mul,
)


def test_validate_record_specs():
    g = sd_validate(SemidirectSpec(17, 891, 4523))
    assert g.order == 76891
    assert sd_validate(SemidirectSpec(24, 90, 511)).order == 12264
    assert sd_validate(SemidirectSpec(5, 1, 9)).order == 45


def test_power_table():
    g = sd_validate(SemidirectSpec(24, 90, 511))
    assert g.powers.tolist() == [pow(90, x, 511) for x in range(24)]
    assert not g.powers.flags.writeable


def test_validate_errors():
    with pytest.raises(ActionNotInvertible):
        sd_validate(SemidirectSpec(2, 2, 4))
    with pytest.raises(ActionOrderError):
        sd_validate(SemidirectSpec(3, 2, 5))  # 2 has order 4 mod 5
    with pytest.raises(GroupError):
        sd_validate(SemidirectSpec(113, 390, 196))  # A outside [1, N)
    with pytest.raises(GroupError):
        sd_validate(SemidirectSpec(0, 1, 5))


def test_sd_mul_examples():
    g = sd_validate(SemidirectSpec(24, 90, 511))
    assert sd_mul(g, (0, 0), (13, 77)) == (13, 77)
    # 77 * 90**13 + 77 mod 511, evaluated by hand with modular exponentiation
    assert sd_mul(g, (13, 77), (13, 77)) == (2, 301)
    d = sd_validate(SemidirectSpec(6, 1, 10))
    assert sd_mul(d, (4, 7), (5, 6)) == (3, 3)


def test_sd_inv_examples():
    g = sd_validate(SemidirectSpec(48, 772, 1615))
    assert sd_inv(g, (0, 0)) == (0, 0)
    assert sd_inv(g, (24, 0)) == (24, 0)
    rng = np.random.default_rng(5)
    for _ in range(200):
        e = (int(rng.integers(48)), int(rng.integers(1615)))
        assert sd_mul(g, e, sd_inv(g, e)) == (0, 0)
        assert sd_mul(g, sd_inv(g, e), e) == (0, 0)


def test_mirrored_is_opposite_group():
    spec = SemidirectSpec(6, 2, 9)
    g, h = sd_validate(spec), sd_validate(spec, mirrored=True)
    for a, b in itertools.product(range(g.order), repeat=2):
        assert h.mul(a, b) == g.mul(b, a)
        assert h.inv(a) == g.inv(a)


def test_index_encoding_exhaustive():
    g = sd_validate(SemidirectSpec(20, 729, 2651))
    idx = np.arange(g.order)
    assert all(g.encode(g.decode(i)) == i for i in range(0, g.order, 37))
    x, y = np.divmod(idx, g.N)
    assert np.array_equal(x * g.N + y, idx)
    with pytest.raises(GroupError):
        g.encode((20, 0))


def test_right_mul_matches_mul():
    for mirrored in (False, True):
        g = sd_validate(SemidirectSpec(12, 5, 13), mirrored=mirrored)
        idx = np.arange(g.order, dtype=np.int64)
        for s in (1, 17, 100, g.order - 1):
            assert np.array_equal(g.right_mul(idx.copy(), s), g.mul(idx, s))


def test_two_coord_examples():
    g = TwoCoordGroup(TwoCoordSpec(10))
    assert g.order == 200
    assert two_coord_mul(g, (0, 0, 1), (0, 0, 1)) == (0, 0, 0)
    assert two_coord_inv(g, (5, 0, 0)) == (5, 0, 0)
    assert two_coord_mul(g, (1, 0, 1), (1, 0, 1)) == (1, 1, 0)
    for e in itertools.product(range(10), range(10), range(2)):
        assert two_coord_mul(g, e, two_coord_inv(g, e)) == (0, 0, 0)
    idx = np.arange(200)
    assert np.array_equal(g.encode(g.decode(7)), 7)
    assert np.array_equal(g.right_mul(idx, 33), g.mul(idx, 33))


def _cyclic_table(n):
    return (np.arange(n)[:, None] + np.arange(n)[None, :]) % n


def _s3_table():
    perms = list(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    return np.array([[pos[tuple(a[b[k]] for k in range(3))] for b in perms] for a in perms])


def test_table_group_z3(tmp_path):
    f = tmp_path / "z3.table"
    f.write_text("3\n0 1 2\n1 2 0\n2 0 1\n")
    g = table_group_load(f)
    assert g.identity == 0 and g.inverses.tolist() == [0, 2, 1]


def test_table_group_s3():
    g = table_group_from_array(_s3_table())
    assert g.order == 6
    for a in range(6):
        assert g.mul(a, g.inv(a)) == g.identity


def test_table_group_associativity_witness():
    # a Latin square with identity 0 and inverses, but not associative
    t = np.array([
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ])
    with pytest.raises(TableGroupError) as info:
        table_group_from_array(t)
    a, b, c = info.value.witness
    assert t[t[a, b], c] != t[a, t[b, c]]
    assert f"({a}, {b}, {c})" in str(info.value)


def test_table_group_other_failures(tmp_path):
    with pytest.raises(TableGroupError, match="closure"):
        table_group_from_array(np.array([[0, 1], [1, 2]]))
    with pytest.raises(TableGroupError, match="identity"):
        table_group_from_array(np.array([[1, 1], [0, 0]]))
    with pytest.raises(TableGroupError, match="cap"):
        table_group_from_array(_cyclic_table(5), max_order=4)
    assert table_group_from_array(_cyclic_table(5), max_order=4, allow_large=True).order == 5
    f = tmp_path / "short.table"
    f.write_text("2\n0 1\n1\n")
    with pytest.raises(TableGroupError, match="expected 4"):
        table_group_load(f)


def test_read_generator_indices(tmp_path):
    f = tmp_path / "g.gens"
    f.write_text("1 4\n7\n")
    assert read_generator_indices(f) == [1, 4, 7]
