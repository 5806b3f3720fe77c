import itertools

from hypothesis import given

from heisrep import group
from heisrep.group import EXT_IDENTITY, IDENTITY, ExtHeisElement, HeisElement
from strategies import ext, heis

H = HeisElement
E = ExtHeisElement


def test_heis_examples():
    assert group.heis_mul(H(1, 2, 3), H(4, 5, 6)) == H(5, 7, 14)
    assert group.heis_inv(H(1, 2, 3)) == H(-1, -2, -1)
    assert group.heis_comm(H(1, 0, 0), H(0, 1, 0)) == H(0, 0, 1)
    assert H(1, 2, 3) * H(4, 5, 6) == H(5, 7, 14)


def test_ext_examples():
    assert group.ext_mul(E(0, 0, 0, 1), E(0, 1, 0, 0)) == E(1, 1, 0, 1)
    assert group.ext_comm(E(0, 0, 0, 1), E(0, 1, 0, 0)) == E(1, 0, -1, 0)
    assert group.ext_inv(E(0, 1, 0, 0)) == E(0, -1, 0, 0)


def test_rd_examples():
    assert group.rd_auto(1, H(0, 2, 0)) == H(2, 2, 1)
    assert group.rd_auto(0, H(5, -3, 7)) == H(5, -3, 7)
    assert group.rd_auto(2, H(0, 2, 0)) == H(4, 2, 2) == group.rd_auto(1, group.rd_auto(1, H(0, 2, 0)))


def test_matrix_examples():
    assert group.matrix_embed(EXT_IDENTITY) == tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
    assert group.matrix_embed3(H(1, 2, 3)) == ((1, 1, 3), (0, 1, 2), (0, 0, 1))
    assert group.matrix_embed(E(1, 2, 3, 4))[1][3] == 1


def test_matrix_embedding_is_injective_on_a_box():
    seen = {}
    for x in itertools.product(range(-2, 3), repeat=4):
        key = tuple(map(tuple, group.matrix_embed(E(*x))))
        assert key not in seen
        seen[key] = x
        assert group.matrix_unembed(group.matrix_embed(E(*x))) == E(*x)


def test_associativity_exhaustive():
    r = range(-2, 3)
    elems = [E(a, b, c, d) for a in r for b in r for c in (0, 1) for d in r]
    sample = elems[::7]
    for x in sample:
        for y in sample:
            for z in sample:
                assert group.ext_mul(group.ext_mul(x, y), z) == group.ext_mul(x, group.ext_mul(y, z))


@given(heis, heis, heis)
def test_class_two(x, y, z):
    assert group.heis_comm(group.heis_comm(x, y), z) == IDENTITY
    assert group.heis_mul(x, group.heis_inv(x)) == IDENTITY


@given(ext, ext, ext, ext)
def test_class_three(x, y, z, w):
    assert group.ext_comm(group.ext_comm(group.ext_comm(x, y), z), w) == EXT_IDENTITY
    assert group.ext_mul(x, group.ext_inv(x)) == EXT_IDENTITY
    assert group.ext_mul(group.ext_inv(x), x) == EXT_IDENTITY


@given(heis, heis)
def test_embedding_is_homomorphism(x, y):
    assert group.embed(group.heis_mul(x, y)) == group.ext_mul(group.embed(x), group.embed(y))


def test_class3_witness():
    xy, xyz = group.class3_witness()
    assert xy == E(1, 0, -1, 0)
    assert xyz == E(0, 0, 1, 0)
    # y and z are the same element; the witness does not need them distinct
    assert group.CLASS3_Y == group.CLASS3_Z


def test_presentation_generators():
    eta, gamma = group.ETA, group.GAMMA
    central = group.heis_comm(eta, gamma)
    assert central == H(0, 0, 1)
    assert group.heis_comm(eta, central) == IDENTITY
    assert group.heis_comm(gamma, central) == IDENTITY
