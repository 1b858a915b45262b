"""Seeded random presentations, including ones with torsion-heavy H_1,
pushed through every counting route at once: the closed formulas, the
character/depth pipeline, and the brute-force enumeration oracle must
agree on each of them."""

import random

from hallinv.charvar import b1_cover_cyclic, beta_distribution
from hallinv.foxcalc import abelianization, alexander_matrix
from hallinv.hall import (AbelianGroupSpec, construct_mpqs, delta_abelian,
                          delta_mpqs)
from hallinv.oracle import (cover_b1, delta_oracle, regular_cyclic_action)
from hallinv.presentations import Presentation, Word


def random_presentation(rng):
    l = rng.randint(1, 3)
    rels = []
    for _ in range(rng.randint(0, 3)):
        w = Word([(rng.randrange(l), rng.choice([-3, -2, -1, 1, 2, 3, 4]))
                  for _ in range(rng.randint(1, 4))])
        if not w.is_identity():
            rels.append(w)
    return Presentation([f"g{i}" for i in range(l)], rels)


def test_all_routes_agree_on_random_presentations():
    rng = random.Random(11081)
    s3 = construct_mpqs(2, 3).table
    a4 = construct_mpqs(3, 2).table
    abelian_targets = ([2], [4], [2, 2], [2, 4], [9], [6])
    for _ in range(12):
        P = random_presentation(rng)
        abel = abelianization(P)
        A = alexander_matrix(P)

        for factors in rng.sample(abelian_targets, 2):
            spec = AbelianGroupSpec.from_cyclic_factors(factors)
            assert delta_abelian(abel, spec) == \
                delta_oracle(P, spec.table()), (P, factors)

        assert delta_mpqs(P, 2, 3, A=A) == delta_oracle(P, s3), P
        assert delta_mpqs(P, 3, 2, A=A) == delta_oracle(P, a4), P

        for p, q in ((2, 3), (3, 2), (2, 0)):
            b = beta_distribution(P, p, q, A=A, check_orbits=True)
            assert b == beta_distribution(P, p, q, A=A)

        for N, q in ((2, 0), (3, 0), (4, 3), (6, 5)):
            images = [rng.randrange(N) for _ in range(P.num_generators)]
            try:
                want = b1_cover_cyclic(P, N, images, q, A=A)
            except ValueError:
                continue
            action = regular_cyclic_action(N, images)
            assert cover_b1(P, action, q) == want, (P, N, images, q)
