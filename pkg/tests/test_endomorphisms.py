import numpy as np
import pytest

from groupident import Endo, Group, annihilator
from groupident.errors import DomainError, InvalidEndomorphismError


def test_make_endo_constraint_examples():
    g = Group([4, 2])
    ok = Endo(g, [[0, 2], [0, 0]])  # 2*2 = 0 mod 4
    assert ok.matrix == ((0, 2), (0, 0))
    with pytest.raises(InvalidEndomorphismError) as err:
        Endo(g, [[0, 1], [0, 0]])  # 1*2 = 2 != 0 mod 4
    assert "(0,1)" in str(err.value)
    assert Endo.identity(g).matrix == ((1, 0), (0, 1))


def test_entries_reduced():
    g = Group([4, 2])
    e = Endo(g, [[5, 0], [0, 3]])
    assert e.matrix == ((1, 0), (0, 1))


def test_apply_examples():
    g = Group([5])
    x = g.element([3])
    assert Endo.identity(g).apply(x) == x
    assert Endo.zero(g).apply(x) == g.zero
    assert Endo.scalar(g, 2).apply(x) == g.element([1])


def test_adjoint_homogeneous_is_transpose():
    g = Group([6, 6])
    e = Endo(g, [[1, 2], [3, 4]])
    assert e.adjoint().matrix == ((1, 3), (2, 4))
    assert Endo.identity(g).adjoint() == Endo.identity(g)


def test_adjoint_mixed_orders_example():
    g = Group([4, 2])
    e = Endo(g, [[0, 2], [0, 0]])
    adj = e.adjoint()
    assert adj.matrix == ((0, 0), (1, 0))
    # exhaustive pairing identity over all 8x8 pairs
    for x in g.elements():
        for y in g.elements():
            lhs = g.pair(e.apply(x), y)
            rhs = g.pair(x, adj.apply(y))
            assert abs(lhs - rhs) < 1e-12


def test_adjoint_identity_exact_phases():
    for orders in ([4, 2], [8, 4], [9, 3], [6, 4]):
        g = Group(orders)
        for e in _sample_endos(g):
            adj = e.adjoint()
            for x in g.elements():
                ex = e.apply(x)
                for y in g.elements():
                    assert g.pair_phase(ex, y) == g.pair_phase(x, adj.apply(y))


def test_double_adjoint():
    for orders in ([4, 2], [8, 2], [6, 4], [5]):
        g = Group(orders)
        for e in _sample_endos(g):
            assert e.adjoint().adjoint() == e


def _sample_endos(g):
    out = [Endo.identity(g), Endo.zero(g), Endo.scalar(g, 2),
           Endo.scalar(g, g.exponent - 1)]
    k = g.rank
    if k >= 2:
        # one valid off-diagonal entry per ordered factor pair
        for i in range(k):
            for j in range(k):
                if i == j:
                    continue
                n_i, n_j = g.orders[i], g.orders[j]
                step = n_i // np.gcd(n_i, n_j)
                if step < n_i:
                    m = [[0] * k for _ in range(k)]
                    m[i][j] = step
                    out.append(Endo(g, m))
    return out


def test_kernel_examples():
    g = Group([6])
    assert Endo.identity(g).kernel() == [g.zero]
    assert len(Endo.zero(g).kernel()) == 6
    assert [x.coords for x in Endo.scalar(g, 2).kernel()] == [(0,), (3,)]


def test_kernel_brute_force_oracle():
    g = Group([6])
    e = Endo.scalar(g, 2)
    oracle = [x for x in g.elements() if e.apply(x) == g.zero]
    assert e.kernel() == oracle


def test_image_and_surjectivity():
    g = Group([6])
    assert Endo.identity(g).is_surjective()
    doubled = Endo.scalar(g, 2)
    assert [x.coords for x in doubled.image()] == [(0,), (2,), (4,)]
    assert not doubled.is_surjective()
    g5 = Group([5])
    assert Endo.scalar(g5, 2).is_surjective()


def test_annihilator_examples():
    g = Group([6])
    assert annihilator(g, [g.zero]) == list(g.elements())
    assert annihilator(g, list(g.elements())) == [g.zero]
    sub = [g.zero, g.element([3])]
    assert [y.coords for y in annihilator(g, sub)] == [(0,), (2,), (4,)]


def test_annihilator_brute_force_oracle():
    g = Group([6])
    sub = [g.zero, g.element([3])]
    oracle = [y for y in g.elements()
              if all(abs(g.pair(x, y) - 1.0) < 1e-9 for x in sub)]
    assert annihilator(g, sub) == oracle


def test_annihilator_rejects_non_subgroup():
    g = Group([6])
    with pytest.raises(DomainError):
        annihilator(g, [g.zero, g.element([1])])
    with pytest.raises(DomainError):
        annihilator(g, [g.element([2])])


def test_endo_subtraction():
    g = Group([5])
    e = Endo.scalar(g, 3)
    assert (e - e) == Endo.zero(g)
    assert (Endo.identity(g) - Endo.zero(g)) == Endo.identity(g)
    assert (Endo.scalar(g, 3) - Endo.scalar(g, 1)) == Endo.scalar(g, 2)
    with pytest.raises(DomainError):
        e - Endo.identity(Group([7]))


def test_image_of_adjoint_equals_annihilator_of_kernel():
    for orders in ([6], [4, 2], [9, 3], [12], [6, 4]):
        g = Group(orders)
        for e in _sample_endos(g):
            lhs = sorted(g.index(x) for x in e.adjoint().image())
            rhs = sorted(g.index(x) for x in annihilator(g, e.kernel()))
            assert lhs == rhs


def test_adjoint_surjective_iff_kernel_trivial():
    for orders in ([6], [4, 2], [8], [9, 3]):
        g = Group(orders)
        for e in _sample_endos(g):
            assert e.adjoint().is_surjective() == (len(e.kernel()) == 1)


def test_kernel_image_size_product():
    for orders in ([6], [4, 2], [12], [6, 6]):
        g = Group(orders)
        for e in _sample_endos(g):
            assert len(e.kernel()) * len(e.image()) == g.size
