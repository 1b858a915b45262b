"""Counting finite-index subgroups: all, normal, abelian-quotient, and
conjugacy classes.

The index-k count comes from M. Hall's recursion through homomorphism
counts into symmetric groups; index 2 and 3 also have closed forms in the
mod-p Betti data, which is how the recursion gets checked.  Normal counts
for index p, p^2, pq are sums of Hall invariants over the few groups of
those orders; the abelian-quotient count alpha_k sums the abelian ones.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .charvar import beta_distribution
from .fields import factorize
from .foxcalc import abelianization
from .hall import AbelianGroupSpec, delta_abelian, delta_mpqs
from .oracle import FiniteGroupTable, hom_count


class UnsupportedIndexError(ValueError):
    """Indices whose normal count needs Hall invariants outside the
    implemented family (k = 8, 12, or three-factor shapes)."""


def symmetric_hom_counter(P, budget=10 ** 8):
    """l -> |Hom(G, S_l)| by enumeration; the input to Hall's recursion.

    The budget is checked before the S_l multiplication table (of l!^2
    entries) is even built, so an oversized request fails fast."""
    from .oracle import BudgetExceeded
    tables = {}

    def counter(l):
        size = factorial(l)
        if size ** P.num_generators > budget or size * size > min(budget,
                                                                  5_000_000):
            raise BudgetExceeded(
                f"counting maps into S_{l} exceeds the budget")
        if l not in tables:
            tables[l] = FiniteGroupTable.symmetric(l)
        return hom_count(P, tables[l], "all", budget)

    return counter


def a_k_via_hall_recursion(P, k, hom_counter=None, budget=10 ** 8):
    """Number of index-k subgroups by M. Hall's recursion

        a_k = h_k/(k-1)! - sum_{l<k} h_{k-l}/(k-l)! a_l,

    h_l the number of homomorphisms into S_l."""
    if k < 1:
        raise ValueError("k must be positive")
    if hom_counter is None:
        hom_counter = symmetric_hom_counter(P, budget)
    h = {l: hom_counter(l) for l in range(1, k + 1)}
    a = {1: 1}
    for j in range(2, k + 1):
        total = Fraction(h[j], factorial(j - 1))
        for l in range(1, j):
            total -= Fraction(h[j - l], factorial(j - l)) * a[l]
        assert total.denominator == 1 and total >= 0
        a[j] = int(total)
    return a[k]


def a_k_free(n, k):
    """Index-k subgroups of a free group of rank n (closed recursion)."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    a = {1: 1}
    for j in range(2, k + 1):
        total = j * factorial(j) ** (n - 1)
        for l in range(1, j):
            total -= factorial(j - l) ** (n - 1) * a[l]
        a[j] = total
    return a[k]


def a_k_Zn(n, k):
    """Index-k subgroups (sublattices) of Z^n, by the divisor recursion
    a_k(Z^n) = sum_{d | k} a_d(Z^{n-1}) (k/d)^{n-1}."""
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if n == 1:
        return 1
    return sum(a_k_Zn(n - 1, d) * (k // d) ** (n - 1)
               for d in range(1, k + 1) if k % d == 0)


def a2_a3(P, *, A=None, beta23=None):
    """(a_2, a_3) from homological data: a_2 = 2^{n_2} - 1 and
    a_3 = (3^{n_3} - 1)/2 + 3 delta_{S_3}."""
    abel = abelianization(P)
    n2 = abel.b1(2)
    n3 = abel.b1(3)
    if beta23 is None:
        beta23 = beta_distribution(P, 2, 3, A=A)
    d_s3 = delta_mpqs(P, 2, 3, beta=beta23)
    a2 = 2 ** n2 - 1
    a3 = (3 ** n3 - 1) // 2 + 3 * d_s3
    return a2, a3


def a_normal(P, k, *, A=None):
    """Number of index-k normal subgroups, for k prime, p^2, or pq.

    These are the indices where every group of order k is abelian or in
    the implemented metabelian family, so the count is a sum of computed
    Hall invariants.  Other composite shapes raise UnsupportedIndexError.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        return 1
    abel = abelianization(P)
    fac = factorize(k)
    primes = sorted(fac)
    if len(primes) == 1:
        p = primes[0]
        e = fac[p]
        n = abel.b1(p)
        if e == 1:
            return (p ** n - 1) // (p - 1)
        if e == 2:
            m = abel.free_rank + sum(1 for d in abel.torsion
                                     if d % (p * p) == 0)
            part = (p ** n - 1) * (p ** (n - 1) - 1) \
                // ((p * p - 1) * (p - 1))
            return part + p ** (n - 1) * (p ** m - 1) // (p - 1)
        raise UnsupportedIndexError(
            f"index {k} needs Hall invariants outside the abelian and"
            " M_{p,q^s} families")
    if len(primes) == 2 and all(fac[p] == 1 for p in primes):
        u, v = primes
        n = abel.b1(u)
        m = abel.b1(v)
        total = (u ** n - 1) * (v ** m - 1) // ((u - 1) * (v - 1))
        if (v - 1) % u == 0:
            beta = beta_distribution(P, u, v, A=A)
            extra = (u - 1) * sum(c * (v ** d - 1)
                                  for d, c in beta.counts.items() if d >= 1)
            assert extra % (v - 1) == 0
            total += extra // (v - 1)
        return total
    raise UnsupportedIndexError(
        f"index {k} needs Hall invariants outside the abelian and"
        " M_{p,q^s} families")


def abelian_groups_of_order(k):
    """All abelian groups of order k, one spec per isomorphism type, in a
    deterministic order."""
    if k < 1:
        raise ValueError("k must be positive")
    per_prime = []
    for p in sorted(factorize(k)):
        e = factorize(k)[p]
        per_prime.append((p, list(_partitions(e))))
    specs = [{}]
    for p, parts in per_prime:
        specs = [{**s, p: lam} for s in specs for lam in parts]
    from .hall import Partition as _Partition
    return [AbelianGroupSpec({p: _Partition(lam) for p, lam in s.items()})
            for s in specs]


def _partitions(n):
    """Partitions of n as weakly decreasing tuples, lexicographically."""
    if n == 0:
        yield ()
        return
    def rec(remaining, cap):
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    yield from rec(n, n)


def alpha_k(P, k):
    """Number of index-k normal subgroups with abelian quotient: the sum of
    the abelian Hall invariants over groups of order k."""
    abel = abelianization(P)
    return sum(delta_abelian(abel, spec) for spec in abelian_groups_of_order(k))


def c_p(P, p, *, a_p=None, budget=10 ** 8):
    """Number of conjugacy classes of index-p subgroups:
    (p^n + a_p - 1)/p with n = b_1^{(p)}."""
    abel = abelianization(P)
    n = abel.b1(p)
    if a_p is None:
        a_p = a_k_via_hall_recursion(P, p, budget=budget)
    total = p ** n + a_p - 1
    assert total % p == 0, "conjugacy-class count not an integer"
    return total // p


def a_p_product_with_Z(P, p, *, a_p=None, budget=10 ** 8):
    """Index-p count of G x Z from that of G: a_p(G x Z) = a_p(G) + p^n."""
    abel = abelianization(P)
    if a_p is None:
        a_p = a_k_via_hall_recursion(P, p, budget=budget)
    return a_p + p ** abel.b1(p)


class CensusReport:
    """Collected index-k counts with per-value provenance tags."""

    __slots__ = ("k", "values", "methods")

    def __init__(self, k):
        self.k = k
        self.values = {}
        self.methods = {}

    def add(self, key, value, method):
        self.values[key] = value
        self.methods[key] = method

    def validate(self):
        ks = {key: v for key, v in self.values.items() if isinstance(v, int)}
        if ("a_k" in ks and "a_k_normal" in ks
                and not ks["a_k"] >= ks["a_k_normal"]):
            raise AssertionError("normal count exceeds subgroup count")
        if ("a_k_normal" in ks and "alpha_k" in ks
                and not ks["a_k_normal"] >= ks["alpha_k"]):
            raise AssertionError("abelian-quotient count exceeds normal count")

    def as_dict(self):
        out = {"k": self.k}
        for key, value in sorted(self.values.items()):
            out[key] = value
            out[key + "_method"] = self.methods[key]
        return out


def census(P, k, *, want_all=True, want_normal=True, want_alpha=True,
           want_conjugacy=False, budget=10 ** 8):
    """Assemble a CensusReport; infeasible pieces are recorded as the
    string 'infeasible' rather than guessed."""
    from .oracle import BudgetExceeded
    report = CensusReport(k)
    a_p = None
    if want_all:
        if k == 2:
            a2, _ = a2_a3(P)
            report.add("a_k", a2, "closed-form")
            a_p = a2
        elif k == 3:
            _, a3 = a2_a3(P)
            report.add("a_k", a3, "closed-form")
            a_p = a3
        else:
            try:
                a_p = a_k_via_hall_recursion(P, k, budget=budget)
                report.add("a_k", a_p, "hall-recursion")
            except BudgetExceeded:
                report.add("a_k", "infeasible", "hall-recursion")
                a_p = None
    if want_normal:
        try:
            report.add("a_k_normal", a_normal(P, k), "delta-sum")
        except UnsupportedIndexError as e:
            report.add("a_k_normal", f"unsupported: {e}", "delta-sum")
    if want_alpha:
        report.add("alpha_k", alpha_k(P, k), "abelian-delta-sum")
    if want_conjugacy:
        if k in factorize(k) and isinstance(a_p, int):
            report.add("c_k", c_p(P, k, a_p=a_p), "closed-form")
        elif k in factorize(k):
            report.add("c_k", "infeasible", "closed-form")
        else:
            report.add("c_k", "unsupported: conjugacy counts need prime k",
                       "closed-form")
    report.validate()
    return report
