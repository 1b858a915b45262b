import pytest

from hallinv.foxcalc import abelianization
from hallinv.oracle import (
    BudgetExceeded, FiniteGroupTable, aut_order, cover_b1, cover_homology,
    delta_oracle, hom_count, regular_cyclic_action,
)
from hallinv.presentations import (
    direct_product_with_Z, free_group, nonorientable_surface_group,
    orientable_surface_group, parse_presentation, product_of_free_groups,
)

Z2_PRES = parse_presentation("gens: x, y; rels: [x,y]")


def test_table_axioms_checked():
    with pytest.raises(ValueError):
        FiniteGroupTable([[0, 1], [1, 1]])
    T = FiniteGroupTable.cyclic(6)
    assert T.identity == 0 and T.inv[2] == 4
    assert T.element_order(2) == 3


def test_symmetric_table():
    S3 = FiniteGroupTable.symmetric(3)
    assert S3.order == 6 and not S3.is_abelian()
    assert sorted(len(H) for H in S3.all_subgroups()) == [1, 2, 2, 2, 3, 6]
    mu = S3.moebius()
    by_size = {}
    for H, m in mu.items():
        by_size.setdefault(len(H), []).append(m)
    assert by_size[6] == [1] and by_size[3] == [-1]
    assert by_size[2] == [-1, -1, -1] and by_size[1] == [3]


def test_a4_moebius():
    S4 = FiniteGroupTable.symmetric(4)
    evens = [i for i in range(24)
             if sum(1 for a in range(4) for b in range(a + 1, 4)
                    if sorted(__import__("itertools").permutations(range(4)))[i][a]
                    > sorted(__import__("itertools").permutations(range(4)))[i][b])
             % 2 == 0]
    A4, _ = S4.subgroup_table(S4.closure(evens))
    mu = A4.moebius()
    by_size = {}
    for H, m in mu.items():
        by_size.setdefault(len(H), []).append(m)
    assert by_size[12] == [1]
    assert by_size[4] == [-1]
    assert sorted(by_size[3]) == [-1, -1, -1, -1]
    assert by_size[2] == [0, 0, 0]
    assert by_size[1] == [4]


def test_hom_count_free():
    S2 = FiniteGroupTable.symmetric(2)
    assert hom_count(free_group(3), S2) == 8
    S3 = FiniteGroupTable.symmetric(3)
    assert hom_count(free_group(2), S3) == 36


def test_hom_count_commuting_pairs():
    # |Hom(Z^2, S_3)| = sum over g of |C(g)| = 6+2+2+2+3+3
    S3 = FiniteGroupTable.symmetric(3)
    assert hom_count(Z2_PRES, S3) == 18
    assert hom_count(Z2_PRES, S3) == sum(
        len(S3.centralizer([g])) for g in range(6))


def test_epi_count_a4():
    M = __import__("hallinv.hall", fromlist=["construct_mpqs"])
    A4 = M.construct_mpqs(3, 2).table
    assert hom_count(free_group(2), A4, mode="epi") == 96
    assert delta_oracle(free_group(2), A4) == 4


def test_epi_paths_agree():
    # per-tuple generation check vs Moebius inversion
    from hallinv.oracle import _dfs_count, _epi_by_moebius
    S3 = FiniteGroupTable.symmetric(3)
    Z4 = FiniteGroupTable.cyclic(4)
    for P in (free_group(2), Z2_PRES, nonorientable_surface_group(2)):
        relators = [r for r in P.relators if not r.is_identity()]
        for T in (S3, Z4):
            dfs = _dfs_count(relators, P.num_generators, T, "epi", 10 ** 7)
            assert dfs == _epi_by_moebius(P, T, 10 ** 7)


def test_counting_strategies_agree():
    # the block and attached plans must match plain DFS
    from hallinv.oracle import _dfs_count
    S3 = FiniteGroupTable.symmetric(3)
    groups = [orientable_surface_group(2), nonorientable_surface_group(3),
              product_of_free_groups([2, 2]),
              direct_product_with_Z(free_group(2)),
              direct_product_with_Z(product_of_free_groups([2, 1]))]
    for P in groups:
        relators = [r for r in P.relators if not r.is_identity()]
        want = _dfs_count(relators, P.num_generators, S3, "all", 10 ** 8)
        assert hom_count(P, S3) == want


def test_aut_orders():
    assert aut_order(FiniteGroupTable.symmetric(3)) == 6
    assert aut_order(FiniteGroupTable.abelian([2, 2])) == 6
    assert aut_order(FiniteGroupTable.cyclic(8)) == 4
    assert aut_order(FiniteGroupTable.abelian([2, 4])) == 8


def test_budget_exceeded():
    S3 = FiniteGroupTable.symmetric(3)
    # pairwise-entangled relators defeat both reorganized plans under a
    # tiny budget, and the search itself is larger than the budget
    P = parse_presentation("gens: x, y, z; rels: x*y*x*y, y*z*y*z, z*x*z*x")
    with pytest.raises(BudgetExceeded):
        hom_count(P, S3, mode="epi", budget=10)
    assert hom_count(P, S3, mode="all", budget=10 ** 6) > 0


def test_cover_homology_free_group():
    # index-2 subgroup of F_2 is F_3
    action = regular_cyclic_action(2, [1, 0])
    betti, torsion = cover_homology(free_group(2), action)
    assert (betti, torsion) == (3, [])


def test_cover_homology_z2():
    # finite-index subgroups of Z^2 are Z^2
    for images in ([1, 0], [1, 2], [0, 1]):
        action = regular_cyclic_action(3, images)
        betti, torsion = cover_homology(Z2_PRES, action)
        assert (betti, torsion) == (2, [])


def test_cover_homology_trivial_cover():
    # k = 1 returns H_1(G) itself
    P = nonorientable_surface_group(2)
    betti, torsion = cover_homology(P, [(0,), (0,)])
    abel = abelianization(P)
    assert betti == abel.free_rank and torsion == abel.torsion


def test_cover_homology_nontransitive_rejected():
    with pytest.raises(ValueError):
        cover_homology(free_group(2), [(0, 1), (0, 1)])


def test_cover_b1_klein_bottle():
    # the orientation double cover of the Klein bottle is the torus
    P = nonorientable_surface_group(2)
    action = regular_cyclic_action(2, [1, 1])
    assert cover_b1(P, action, 0) == 2


def test_counting_strategies_agree_random():
    # random presentations: whatever reorganized plan fires must agree
    # with the plain backtracking count, in both modes
    import random
    from hallinv.oracle import _dfs_count
    from hallinv.presentations import Presentation, Word
    rng = random.Random(77)
    S3 = FiniteGroupTable.symmetric(3)
    Z4 = FiniteGroupTable.cyclic(4)
    for _ in range(120):
        l = rng.randint(1, 4)
        rels = []
        for _ in range(rng.randint(0, 3)):
            w = Word([(rng.randrange(l), rng.choice([-2, -1, 1, 2]))
                      for _ in range(rng.randint(1, 5))])
            if not w.is_identity():
                rels.append(w)
        P = Presentation([f"g{i}" for i in range(l)], rels)
        relators = [r for r in P.relators if not r.is_identity()]
        for T in (S3, Z4):
            for mode in ("all", "epi"):
                want = _dfs_count(relators, l, T, mode, 10 ** 8) \
                    if relators else \
                    (T.order ** l if mode == "all"
                     else hom_count(P, T, "epi"))
                assert hom_count(P, T, mode) == want


def test_abelian_cover_matches_oracle():
    # non-cyclic abelian covers: depth formula vs Fox/SNF on the regular
    # action of the quotient
    import random
    from hallinv.charvar import b1_cover_abelian
    from hallinv.oracle import regular_abelian_action
    rng = random.Random(19)
    groups = [free_group(2), nonorientable_surface_group(3), Z2_PRES,
              product_of_free_groups([2, 1])]
    cases = 0
    while cases < 25:
        P = rng.choice(groups)
        factors = rng.choice([[2, 2], [2, 4], [3, 3], [2, 2, 2]])
        q = rng.choice([0, 3, 5, 7])
        if q and any(c % q == 0 for c in factors):
            continue
        images = [[rng.randrange(c) for _ in range(P.num_generators)]
                  for c in factors]
        try:
            want = b1_cover_abelian(P, factors, images, q)
        except ValueError:
            continue
        action = regular_abelian_action(factors, images)
        assert cover_b1(P, action, q) == want, (factors, images, q)
        cases += 1


def test_cover_matches_depth_formula():
    # Fox/SNF value equals the depth formula for small cyclic covers
    from hallinv.charvar import b1_cover_cyclic
    from itertools import product as iproduct
    from math import gcd
    groups = [free_group(2), nonorientable_surface_group(3),
              product_of_free_groups([2, 1])]
    for P in groups:
        l = P.num_generators
        for N, q in [(2, 0), (2, 3), (3, 2), (3, 0)]:
            for images in iproduct(range(N), repeat=l):
                if gcd(N, *images) != 1:
                    continue
                try:
                    want = b1_cover_cyclic(P, N, list(images), q)
                except ValueError:
                    continue
                action = regular_cyclic_action(N, list(images))
                assert cover_b1(P, action, q) == want
