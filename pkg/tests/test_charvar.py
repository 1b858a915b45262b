import pytest

from hallinv.charvar import (
    InvariantViolation, b1_cover_abelian, b1_cover_cyclic, beta_distribution,
    character_from_generator_exponents, check_bounds_congruence, depth,
    enumerate_order_p_characters, max_depth_of_order_dividing,
)
from hallinv.fields import primitive_root_of_unity, sufficiently_large_field
from hallinv.foxcalc import abelianization, alexander_matrix
from hallinv.presentations import (
    free_group, nonorientable_surface_group, orientable_surface_group,
    parse_presentation, product_of_free_groups,
)


def beta(P, p, q, **kw):
    return beta_distribution(P, p, q, **kw)


def test_depth_free_group():
    # every nontrivial character of F_n has depth n - 1
    P = free_group(3)
    A = alexander_matrix(P)
    K = sufficiently_large_field(2, 3)
    for t in enumerate_order_p_characters(A.abel, 2, K):
        assert depth(A, t) == 2


def test_depth_surface_group():
    P = orientable_surface_group(2)
    A = alexander_matrix(P)
    K = sufficiently_large_field(3, 7)
    for t in enumerate_order_p_characters(A.abel, 3, K):
        assert depth(A, t) == 2  # 2g - 2


def test_depth_product_of_frees():
    # on F_2 x F_2, characters trivial on one factor but not the other
    # have depth 1; fully mixed ones have depth 0
    P = product_of_free_groups([2, 2])
    A = alexander_matrix(P)
    K = sufficiently_large_field(2, 3)
    abel = A.abel
    zeta = primitive_root_of_unity(K, 2)
    t = character_from_generator_exponents(abel, K, zeta, 2, [0, 0, 0, 1])
    assert depth(A, t) == 1
    t = character_from_generator_exponents(abel, K, zeta, 2, [1, 0, 0, 1])
    assert depth(A, t) == 0


def test_character_order_and_values():
    # order is the lcm of the coordinate orders
    from hallinv.charvar import character_from_coordinate_exponents
    P = nonorientable_surface_group(3)  # H1 = Z^2 + Z/2
    abel = abelianization(P)
    K = sufficiently_large_field(6, 0)
    zeta = primitive_root_of_unity(K, 6)
    t = character_from_coordinate_exponents(abel, K, zeta, 6, [3], [2, 0])
    assert t.order() == 6  # coordinate orders 2 and 3
    assert not t.is_trivial()
    assert t.value(0) == zeta ** 2      # free coordinates come first
    assert t.value(2) == zeta ** 3      # the order-2 torsion coordinate
    trivial = character_from_coordinate_exponents(abel, K, zeta, 6,
                                                  [0], [0, 0])
    assert trivial.is_trivial() and trivial.order() == 1
    with pytest.raises(ValueError):
        # torsion coordinate must square to 1
        character_from_coordinate_exponents(abel, K, zeta, 6, [2], [0, 0])


def test_character_count_and_validation():
    P = nonorientable_surface_group(2)  # H1 = Z + Z/2
    abel = abelianization(P)
    K2 = sufficiently_large_field(2, 3)
    assert len(list(enumerate_order_p_characters(abel, 2, K2))) == 3
    K3 = sufficiently_large_field(3, 7)
    assert len(list(enumerate_order_p_characters(abel, 3, K3))) == 2
    with pytest.raises(ValueError):
        list(enumerate_order_p_characters(abel, 3,
                                          sufficiently_large_field(2, 3)))


def test_beta_free_groups():
    # beta_{p,n-1} = (p^n - 1)/(p - 1), all other d >= 1 empty
    for n in (2, 3):
        for p, q in [(2, 3), (3, 2), (3, 0), (5, 2)]:
            b = beta(free_group(n), p, q)
            want = (p ** n - 1) // (p - 1)
            assert b[n - 1] == want
            assert b.positive_part() == (0,) * (n - 2) + (want,)


def test_beta_product_f2xf2():
    for p, q in [(2, 3), (3, 2), (2, 0)]:
        b = beta(product_of_free_groups([2, 2]), p, q)
        assert b[0] == (p ** 2 - 1) ** 2 // (p - 1)
        assert b[1] == 2 * (p ** 2 - 1) // (p - 1)
        assert b.total() == (p ** 4 - 1) // (p - 1)


def test_beta_surface():
    for p, q in [(2, 3), (3, 0)]:
        b = beta(orientable_surface_group(2), p, q)
        assert b.positive_part() == (0, (p ** 4 - 1) // (p - 1))


def test_beta_nonorientable():
    # genus n: beta_{2,n-2} = 2^n - 2, beta_{2,n-1} = 1,
    # beta_{p,n-2} = (p^{n-1}-1)/(p-1) for odd p
    for n in (2, 3, 4):
        for q in (3, 0, 7):
            b = beta(nonorientable_surface_group(n), 2, q)
            assert b[n - 2] == 2 ** n - 2
            assert b[n - 1] == 1
            assert b.total() == 2 ** n - 1
    for n in (3, 4):
        for q in (2, 0):
            b = beta(nonorientable_surface_group(n), 3, q)
            assert b[n - 2] == (3 ** (n - 1) - 1) // 2


def test_beta_paths_agree():
    for P in (free_group(2), nonorientable_surface_group(3),
              product_of_free_groups([2, 1])):
        for p, q in [(2, 3), (3, 2), (2, 0), (3, 0)]:
            fast = beta(P, p, q)
            slow = beta(P, p, q, check_orbits=True)
            assert fast == slow


def test_beta_invalid_args():
    with pytest.raises(ValueError):
        beta(free_group(2), 3, 3)


def test_b1_cover_cyclic_free():
    # index-k subgroup of F_n is free of rank k(n-1) + 1
    assert b1_cover_cyclic(free_group(2), 2, [1, 0], 0) == 3
    assert b1_cover_cyclic(free_group(2), 4, [1, 0], 0) == 5
    assert b1_cover_cyclic(free_group(2), 4, [1, 2], 0) == 5
    assert b1_cover_cyclic(free_group(3), 3, [1, 1, 2], 0) == 7
    assert b1_cover_cyclic(free_group(2), 6, [1, 1], 5) == 7


def test_b1_cover_cyclic_arrangement_point():
    # the unique depth-1 order-2 character of the 4-plane arrangement
    # group: its double cover gains exactly one Betti number.  In this
    # presentation's basis the point is (-1,-1,-1,1); the published
    # (-1,1,-1,1) corresponds under the monomial change t2 -> t1 t2.
    from itertools import product as iproduct
    from hallinv.braids import fixture
    P = fixture("horizontal:2134")
    assert b1_cover_cyclic(P, 2, [1, 1, 1, 0], 0) == 5
    jumped = [images for images in iproduct(range(2), repeat=4)
              if any(images)
              and b1_cover_cyclic(P, 2, list(images), 0) == 5]
    assert jumped == [(1, 1, 1, 0)]


def test_b1_cover_cyclic_validation():
    with pytest.raises(ValueError):
        b1_cover_cyclic(free_group(2), 4, [2, 2], 0)  # not surjective
    with pytest.raises(ValueError):
        # x has nonzero image in Z_2 but x^2 = 1 in the group forces it to 0
        b1_cover_cyclic(parse_presentation("gens: x; rels: x^3"), 2, [1], 0)
    with pytest.raises(ValueError):
        b1_cover_cyclic(free_group(2), 4, [1, 0], 2)  # q | N


def test_b1_cover_abelian_matches_cyclic():
    import random
    rng = random.Random(31)
    groups = [free_group(2), nonorientable_surface_group(3),
              product_of_free_groups([2, 1])]
    for _ in range(200):
        P = rng.choice(groups)
        N = rng.choice([2, 3, 4, 6])
        q = rng.choice([0, 5, 7])
        while q != 0 and N % q == 0:
            q = rng.choice([0, 5, 7])
        images = [rng.randrange(N) for _ in range(P.num_generators)]
        try:
            want = b1_cover_cyclic(P, N, images, q)
        except ValueError:
            continue
        assert b1_cover_abelian(P, [N], [images], q) == want


def test_b1_cover_abelian_klein_four():
    # index-4 subgroup of F_2 with quotient Z_2 x Z_2 has rank 5
    assert b1_cover_abelian(free_group(2), [2, 2],
                            [[1, 0], [0, 1]], 0) == 5
    # finite-index subgroups of Z^2 are Z^2
    Z2 = parse_presentation("gens: x, y; rels: [x,y]")
    assert b1_cover_abelian(Z2, [2, 2], [[1, 0], [0, 1]], 0) == 2
    with pytest.raises(ValueError):
        b1_cover_abelian(free_group(2), [2, 2], [[1, 0], [1, 0]], 0)


def test_bounds_and_congruence():
    report = check_bounds_congruence(2, 3, 2, 2)
    assert report["jump"] == 1
    with pytest.raises(InvariantViolation):
        check_bounds_congruence(2, 6, 2, 2)  # above (k-1)(l-1) bound
    with pytest.raises(InvariantViolation):
        check_bounds_congruence(2, 3, 5, 9)  # jump 1 not divisible by D = 2
    # sharpened bound via max depth
    P = free_group(2)
    d = max_depth_of_order_dividing(P, 2, 0)
    assert d == 1
    check_bounds_congruence(2, 3, 2, 2, depth_sup=d)


def test_cover_bounds_hold_on_enumerated_covers():
    for P in (free_group(2), nonorientable_surface_group(3)):
        A = alexander_matrix(P)
        abel = A.abel
        for N, q in [(2, 0), (2, 3), (3, 0), (4, 3)]:
            d_sup = max_depth_of_order_dividing(P, N, q, A=A)
            b1_base = abel.b1(q)
            for images in _all_epis(abel.num_generators, N):
                try:
                    b1K = b1_cover_cyclic(P, N, images, q, A=A)
                except ValueError:
                    continue
                check_bounds_congruence(b1_base, b1K, P.num_generators, N,
                                        depth_sup=d_sup)


def _all_epis(l, N):
    from itertools import product
    from math import gcd
    for images in product(range(N), repeat=l):
        if gcd(N, *images) == 1:
            yield list(images)


def test_beta_parallel_matches_serial():
    P = orientable_surface_group(2)
    assert beta(P, 3, 2, jobs=2) == beta(P, 3, 2, jobs=1)


def test_depth_engine_matches_elements_on_arrangement_group():
    # sampled characters of the 8-generator arrangement fixture, engine
    # against element-level evaluation over F_4 and Q(zeta_3)
    import random
    from hallinv.braids import fixture
    from hallinv.charvar import (DepthEngine,
                                 character_from_coordinate_exponents)
    rng = random.Random(63)
    P = fixture("deleted_b3")
    A = alexander_matrix(P)
    abel = A.abel
    for q in (2, 0):
        K = sufficiently_large_field(3, q)
        engine = DepthEngine(A, K, 3)
        zeta = primitive_root_of_unity(K, 3)
        for _ in range(12):
            exps = tuple(rng.randrange(3) for _ in range(8))
            t = character_from_coordinate_exponents(abel, K, zeta, 3,
                                                    exps[:0], exps)
            assert engine.depth_of_exponents(exps) == depth(A, t)


def test_depth_engine_matches_element_arithmetic():
    # the integer-only engine must agree with evaluation through field
    # elements, over both finite and cyclotomic fields
    from itertools import product as iproduct
    from hallinv.charvar import (DepthEngine,
                                 character_from_coordinate_exponents)
    groups = [free_group(2), nonorientable_surface_group(3),
              product_of_free_groups([2, 1]), orientable_surface_group(2)]
    for P in groups:
        A = alexander_matrix(P)
        abel = A.abel
        h = len(abel.torsion)
        for N, q in [(2, 3), (3, 2), (4, 3), (6, 5), (2, 0), (3, 0), (4, 0)]:
            K = sufficiently_large_field(N, q)
            engine = DepthEngine(A, K, N)
            zeta = primitive_root_of_unity(K, N)
            for exps in iproduct(range(N), repeat=abel.num_coordinates):
                if all(e == 0 for e in exps):
                    continue
                if any((e * ei) % N for e, ei in zip(exps[:h], abel.torsion)):
                    continue  # not a valid torsion coordinate value
                t = character_from_coordinate_exponents(
                    abel, K, zeta, N, exps[:h], exps[h:])
                assert engine.depth_of_exponents(exps) == depth(A, t)
