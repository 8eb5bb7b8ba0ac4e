import random

import pytest

from mackeywitt.fgab import (
    AbHom,
    CompositeNotZeroError,
    FgAbGroup,
    NotWellDefinedError,
    cyclic_group,
    direct_sum,
    free_group,
    homology,
    identity_matrix,
    kernel_basis,
    mat,
    mat_mul,
    preimage_basis,
    row_hnf,
    snf,
    solve_left,
    tensor,
    tensor_hom,
)


def check_snf(m):
    u, d, v = snf(m)
    assert mat_mul(mat_mul(u, mat(m)), v) == d
    k = min(len(d), len(d[0]) if d else 0)
    diag = [d[i][i] for i in range(k)]
    for i in range(len(d)):
        for j in range(len(d[0]) if d else 0):
            if i != j:
                assert d[i][j] == 0
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero, "zeros must come last"
    for a, b in zip(nonzero, nonzero[1:]):
        assert b % a == 0
    assert all(x >= 0 for x in diag)
    return diag


def test_snf_gcd_row():
    # [[4, 6]] reduces to [[2, 0]] by Euclid
    diag = check_snf([[4, 6]])
    assert diag == [2]


def test_snf_identity():
    diag = check_snf(identity_matrix(2))
    assert diag == [1, 1]


def test_snf_zero():
    diag = check_snf([[0]])
    assert diag == [0]


def test_snf_empty():
    check_snf([])
    u, d, v = snf([])
    assert d == ()


def test_snf_divisibility_fold():
    diag = check_snf([[2, 0, 0], [0, 6, 0], [0, 0, 9]])
    assert diag == [1, 6, 18]


def test_snf_random_roundtrip():
    rng = random.Random(1234)
    for _ in range(120):
        r = rng.randint(0, 8)
        c = rng.randint(0, 8)
        m = [[rng.randint(-20, 20) for _ in range(c)] for _ in range(r)]
        check_snf(m)


def test_solve_left():
    m = mat([[2, 0], [0, 3]])
    assert solve_left(m, (4, 9)) == (2, 3)
    assert solve_left(m, (1, 0)) is None
    assert solve_left((), ()) == ()


def test_kernel_basis():
    m = mat([[1, 1], [1, 1], [2, 2]])
    ker = kernel_basis(m)
    assert len(ker) == 2
    for row in ker:
        assert row[0] + row[1] + 2 * row[2] == 0


def test_preimage_basis():
    # x * [[2]] in span of [[4]]  <=>  x even
    rows = preimage_basis(mat([[2]]), mat([[4]]))
    assert row_hnf(rows, 1) == ((2,),)


def test_canonical_form():
    g = FgAbGroup(2, [(2, 0), (0, 3)])
    assert g.canonical_form == ((6,), 0)
    assert FgAbGroup(3, [(1, 0, 0)]).canonical_form == ((), 2)
    assert FgAbGroup(0).canonical_form == ((), 0)
    assert cyclic_group(4).canonical_form == ((4,), 0)
    assert free_group(2).canonical_form == ((), 2)


def test_isomorphism_iff_canonical_form():
    a = FgAbGroup(2, [(2, 0), (0, 3)])
    b = cyclic_group(6)
    assert a.canonical_form == b.canonical_form


def test_elements_and_orders():
    g = FgAbGroup(2, [(2, 0), (0, 4)])
    els = list(g.elements())
    assert len(els) == 8
    reduced = {g.reduce(e) for e in els}
    assert len(reduced) == 8
    assert g.element_order(g.zero()) == 1
    orders = sorted(g.element_order(e) for e in els)
    assert orders.count(4) == 4  # Z/2 x Z/4 has four elements of order 4


def test_elements_and_orders_nondiagonal_relations():
    # Z^2 / <(2,1),(0,4)> = Z/8; exercises the z = x·V coordinate change
    g = FgAbGroup(2, [(2, 1), (0, 4)])
    assert g.canonical_form == ((8,), 0)
    els = list(g.elements())
    assert len(els) == 8
    assert len({g.reduce(e) for e in els}) == 8
    from collections import Counter

    hist = Counter(g.element_order(e) for e in els)
    assert hist == {1: 1, 2: 1, 4: 2, 8: 4}
    for e in els:
        assert g.elements_equal(e, g.reduce(e))


def test_hom_well_definedness():
    z2 = cyclic_group(2)
    z4 = cyclic_group(4)
    AbHom(z4, z2, [(1,)])  # reduction is fine
    with pytest.raises(NotWellDefinedError):
        AbHom(z2, z4, [(1,)])  # no ring map Z/2 -> Z/4 sending 1 to 1
    AbHom(z2, z4, [(2,)])


def test_hom_equality_mod_relations():
    z3 = cyclic_group(3)
    f = AbHom(z3, z3, [(1,)])
    g = AbHom(z3, z3, [(4,)])
    assert f == g
    assert f != AbHom(z3, z3, [(2,)])


def test_homology_coker_of_times_two():
    z = free_group(1)
    zero = FgAbGroup(0)
    d_in = AbHom(z, z, [(2,)])
    d_out = AbHom(z, zero, [()])
    h = homology(d_in, d_out)
    assert h.canonical_form == ((2,), 0)


def test_homology_middle_group():
    z2g = free_group(2)
    zero = FgAbGroup(0)
    d_in = AbHom(zero, z2g, [])
    d_out = AbHom(z2g, zero, [(), ()])
    assert homology(d_in, d_out).canonical_form == ((), 2)


def test_homology_exact():
    z = free_group(1)
    zero = FgAbGroup(0)
    d_in = AbHom(z, z, [(1,)])
    d_out = AbHom(z, zero, [()])
    assert homology(d_in, d_out).is_trivial()


def test_homology_rejects_nonzero_composite():
    z = free_group(1)
    with pytest.raises(CompositeNotZeroError):
        homology(AbHom(z, z, [(1,)]), AbHom(z, z, [(1,)]))


def test_homology_vanishes_when_d_in_surjective_or_d_out_injective():
    rng = random.Random(99)
    zero = FgAbGroup(0)
    for _ in range(20):
        b = FgAbGroup(2, [(rng.randint(1, 6), 0), (0, rng.randint(1, 6))])
        cover = free_group(2)
        d_in = AbHom(cover, b, identity_matrix(2))  # surjective
        assert d_in.is_surjective()
        assert homology(d_in, AbHom(b, zero, [(), ()])).is_trivial()
        # injective d_out with zero d_in
        m = rng.randint(2, 6)
        zmod = cyclic_group(m)
        d_out = AbHom(zmod, cyclic_group(m * m), [(m,)])
        assert d_out.is_injective()
        assert homology(AbHom(zero, zmod, []), d_out).is_trivial()


def test_tensor():
    assert tensor(cyclic_group(2), cyclic_group(3)).is_trivial()
    assert tensor(cyclic_group(4), cyclic_group(6)).canonical_form == ((2,), 0)
    a = FgAbGroup(2, [(2, 0)])
    t = tensor(free_group(1), a)
    assert t.canonical_form == a.canonical_form


def test_tensor_symmetric_associative_on_canonical_form():
    rng = random.Random(3)
    groups = [cyclic_group(2), cyclic_group(4), free_group(1), FgAbGroup(2, [(2, 0), (0, 6)])]
    for a in groups:
        for b in groups:
            assert tensor(a, b).canonical_form == tensor(b, a).canonical_form
    a, b, c = groups[1], groups[2], groups[3]
    assert tensor(tensor(a, b), c).canonical_form == tensor(a, tensor(b, c)).canonical_form


def test_tensor_hom():
    z = free_group(1)
    f = AbHom(z, z, [(2,)])
    g = AbHom(z, z, [(3,)])
    fg = tensor_hom(f, g)
    assert fg.matrix == ((6,),)


def test_kernel_cokernel():
    z = free_group(1)
    f = AbHom(z, z, [(3,)])
    k, incl = f.kernel()
    assert k.is_trivial()
    q, proj = f.cokernel()
    assert q.canonical_form == ((3,), 0)
    g = AbHom(free_group(2), z, [(1,), (1,)])
    k2, incl2 = g.kernel()
    assert k2.canonical_form == ((), 1)
    assert incl2.compose(g).is_zero()


def test_direct_sum():
    s = direct_sum(cyclic_group(2), free_group(1))
    assert s.canonical_form == ((2,), 1)


def test_zero_group_everywhere():
    zero = FgAbGroup(0)
    assert zero.is_trivial()
    f = AbHom(zero, cyclic_group(5), [])
    assert f.kernel()[0].is_trivial()
    assert f.cokernel()[0].canonical_form == ((5,), 0)
    assert tensor(zero, cyclic_group(5)).is_trivial()
    assert direct_sum(zero, zero).is_trivial()


def test_subgroup_hnf_equality():
    g = free_group(2)
    a = g.subgroup_hnf(((2, 0), (0, 2), (2, 2)))
    b = g.subgroup_hnf(((2, 2), (2, -2)))
    c = g.subgroup_hnf(((2, 0), (0, 2)))
    assert a == c
    assert b != c
