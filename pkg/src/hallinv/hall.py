"""Hall invariants: counting factor groups of a finitely presented group.

Three computation routes live here.  For a finite abelian target the count
is a closed product-formula over primes in partition data (theta sums and
automorphism orders).  For the split metabelian groups M_{p,q^s} =
Z_q^s x| Z_p (s the order of q mod p) the count is assembled from the
distribution of mod-q Betti jumps of index-p normal subgroups.  Eulerian
and Moebius functions of p-groups, and an explicit lattice fold, cover the
enumeration-principle identities the tests exercise.
"""

from __future__ import annotations

from fractions import Fraction

from .charvar import beta_distribution
from .fields import factor_cyclotomic_mod_q, factorize, multiplicative_order
from .foxcalc import abelianization, alexander_matrix
from .oracle import FiniteGroupTable


class Partition:
    """Weakly decreasing positive parts, with the combinatorial helpers the
    abelian counting formula needs."""

    __slots__ = ("parts",)

    def __init__(self, parts=()):
        parts = tuple(sorted((int(p) for p in parts), reverse=True))
        if any(p <= 0 for p in parts):
            raise ValueError("parts must be positive")
        self.parts = parts

    def length(self):
        return len(self.parts)

    def weight(self):
        return sum(self.parts)

    def angle(self):
        """sum (i - 1) * parts[i], 1-indexed."""
        return sum(i * p for i, p in enumerate(self.parts))

    def multiplicity(self, k):
        return sum(1 for p in self.parts if p == k)

    def part(self, i):
        """1-indexed part, zero beyond the length."""
        if i < 1:
            raise IndexError("parts are 1-indexed")
        return self.parts[i - 1] if i <= len(self.parts) else 0

    def derived(self):
        """Each part lowered by one, zeros dropped."""
        return Partition([p - 1 for p in self.parts if p > 1])

    def __eq__(self, other):
        return isinstance(other, Partition) and other.parts == self.parts

    def __hash__(self):
        return hash(self.parts)

    def __repr__(self):
        return f"Partition{self.parts}"


def theta(lam, tau, i):
    """sum_j min(lam_i, tau_j), for 1 <= i <= length of lam."""
    if not 1 <= i <= lam.length():
        raise IndexError(f"index {i} out of range for {lam}")
    li = lam.part(i)
    return sum(min(li, t) for t in tau.parts)


def theta_total(lam, tau):
    return sum(theta(lam, tau, i) for i in range(1, lam.length() + 1))


def _theta_padded(lam, tau, i):
    """Like theta but treating parts beyond the length as zero."""
    li = lam.part(i) if i <= lam.length() else 0
    return sum(min(li, t) for t in tau.parts)


class AbelianGroupSpec:
    """A finite abelian group as a partition per prime: the group is the
    direct sum over p of Z_{p^part} for each part."""

    __slots__ = ("partitions",)

    def __init__(self, partitions):
        self.partitions = {p: lam for p, lam in partitions.items()
                           if lam.length() > 0}

    @classmethod
    def from_cyclic_factors(cls, factors):
        """E.g. [2, 4] builds Z_2 + Z_4."""
        per_prime = {}
        for c in factors:
            if c < 1:
                raise ValueError("cyclic factors must be positive")
            for p, e in factorize(c).items():
                per_prime.setdefault(p, []).append(e)
        return cls({p: Partition(parts) for p, parts in per_prime.items()})

    def order(self):
        out = 1
        for p, lam in self.partitions.items():
            out *= p ** lam.weight()
        return out

    def exponent(self):
        out = 1
        for p, lam in self.partitions.items():
            out *= p ** max(lam.parts)
        return out

    def cyclic_factors(self):
        """Invariant-factor-free flat list of prime power orders."""
        out = []
        for p in sorted(self.partitions):
            out.extend(p ** e for e in self.partitions[p].parts)
        return out

    def table(self):
        return FiniteGroupTable.abelian(self.cyclic_factors())

    def __repr__(self):
        return "Z" + repr(self.cyclic_factors())


def _phi_factor(m, p):
    """prod_{i=1..m} (1 - p^{-i}) as an exact fraction."""
    out = Fraction(1)
    for i in range(1, m + 1):
        out *= 1 - Fraction(1, p ** i)
    return out


def aut_order_abelian(spec):
    """Order of the automorphism group of a finite abelian group."""
    out = Fraction(1)
    for p, lam in spec.partitions.items():
        factor = Fraction(p ** (lam.weight() + 2 * lam.angle()))
        for k in set(lam.parts):
            factor *= _phi_factor(lam.multiplicity(k), p)
        out *= factor
    assert out.denominator == 1 and out > 0
    return int(out)


def delta_abelian(abel, spec):
    """Number of normal subgroups of G with quotient the given abelian
    group, from the free rank and torsion of H_1(G).

    Per prime p, with lam the partition of the target's p-part and tau the
    partition of the p-torsion of H_1: the epimorphism count is

        p^{(|lam| - l(lam)) n + theta(lam', tau)}
        * prod_i (p^{n + theta_i(lam,tau) - theta_i(lam',tau)} - p^{i-1})

    divided by |Aut| of the p-part.  A zero factor means the p-part is not
    a quotient at all, so the product is the honest answer 0; the first
    nonpositive factor in the product is always exactly zero.
    """
    n = abel.free_rank
    total = 1
    for p, lam in spec.partitions.items():
        tau = Partition([_p_adic_valuation(e, p) for e in abel.torsion
                         if e % p == 0])
        lam_d = lam.derived()
        epis = p ** ((lam.weight() - lam.length()) * n
                     + theta_total(lam_d, tau))
        for i in range(1, lam.length() + 1):
            exponent = n + theta(lam, tau, i) - _theta_padded(lam_d, tau, i)
            factor = p ** exponent - p ** (i - 1)
            if factor < 0:
                assert epis == 0, "negative factor without a prior zero"
            epis *= factor
        if epis == 0:
            return 0
        assert epis > 0
        aut = aut_order_abelian(AbelianGroupSpec({p: lam}))
        assert epis % aut == 0
        total *= epis // aut
    return total


def _p_adic_valuation(e, p):
    v = 0
    while e % p == 0:
        e //= p
        v += 1
    return v


def delta_abelian_of(P, factors):
    """delta of a presentation against the abelian group with the given
    cyclic factors."""
    return delta_abelian(abelianization(P),
                         AbelianGroupSpec.from_cyclic_factors(factors))


def eulerian_pgroup(p, r, s, n):
    """Number of generating n-tuples of a p-group of order p^r whose
    Frattini quotient has order p^s."""
    if not (r >= s >= 0 and n >= 1):
        raise ValueError("need r >= s >= 0 and n >= 1")
    out = p ** ((r - s) * n)
    for i in range(s):
        out *= p ** n - p ** i
    return out


def mobius_weisner(p, d, contains_frattini):
    """Moebius function of a subgroup of index p^d in a finite p-group:
    (-1)^d p^{d(d-1)/2} above the Frattini subgroup, 0 otherwise."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    if not contains_frattini:
        return 0
    return (-1) ** d * p ** (d * (d - 1) // 2)


def hall_enumeration_fold(entries):
    """Generic Moebius fold: sum of mu(H) * |Hom(G, H)| over an explicitly
    supplied subgroup lattice."""
    return sum(mu * hom for mu, hom in entries)


# Subgroup lattices with Moebius values for the two targets the index-3
# count is derived from (each row: order, mu, how many conjugate copies).
S3_LATTICE = ((6, 1, 1), (3, -1, 1), (2, -1, 3), (1, 3, 1))
A4_LATTICE = ((12, 1, 1), (4, -1, 1), (3, -1, 4), (2, 0, 3), (1, 4, 1))


# ---------------------------------------------------------------------------
# the metabelian family M_{p,q^s}

class MetabelianGroup:
    """M_{p,q^s} = Z_q^s x| Z_p, built from a companion-matrix action.

    The acting automorphism is multiplication by t on F_q[t]/(f), f the
    first irreducible factor of 1 + t + ... + t^{p-1} over F_q; any factor
    gives an isomorphic group.  Elements are normal forms u b^k with
    u in Z_q^s and 0 <= k < p, indexed as k * q^s + code(u).
    """

    __slots__ = ("p", "q", "s", "factor", "sigma", "table", "aut_order")

    def __init__(self, p, q, factor_index=0):
        if p == q:
            raise ValueError("p and q must be distinct primes")
        self.p = p
        self.q = q
        self.s = multiplicative_order(q, p)
        factors = factor_cyclotomic_mod_q(p, q)
        self.factor = factors[factor_index]
        self.sigma = _companion_action(self.factor, q)
        assert _action_power(self.sigma, p, q, self.s) == \
            _identity_action(self.s)
        assert self.sigma != _identity_action(self.s)
        self.table = _semidirect_table(p, q, self.s, self.sigma)
        self.aut_order = self.s * q ** self.s * (q ** self.s - 1)

    def __repr__(self):
        return f"M({self.p},{self.q}^{self.s})"


def _companion_action(f, q):
    """Matrix (as row tuples) of multiplication by t on F_q[t]/(f)."""
    s = len(f) - 1
    rows = []
    for j in range(s):
        # image of basis vector t^j is t^{j+1}, reduced mod f
        if j + 1 < s:
            img = [0] * s
            img[j + 1] = 1
        else:
            img = [(-c) % q for c in f[:s]]
        rows.append(tuple(img))
    # store column-action form: apply(v)_i = sum_j rows[j][i] * v[j]
    return tuple(rows)


def _apply_action(sigma, v, q):
    s = len(v)
    out = [0] * s
    for j, vj in enumerate(v):
        if vj:
            row = sigma[j]
            for i in range(s):
                out[i] = (out[i] + row[i] * vj) % q
    return tuple(out)


def _identity_action(s):
    return tuple(tuple(1 if i == j else 0 for i in range(s)) for j in range(s))


def _action_power(sigma, e, q, s):
    result = _identity_action(s)
    for _ in range(e):
        result = tuple(_apply_action(sigma, row, q) for row in result)
    return result


def _semidirect_table(p, q, s, sigma):
    span = q ** s

    def decode(code):
        out = []
        for _ in range(s):
            out.append(code % q)
            code //= q
        return tuple(out)

    def encode(v):
        code = 0
        for x in reversed(v):
            code = code * q + x
        return code

    powers = [_identity_action(s)]
    for _ in range(p - 1):
        powers.append(tuple(_apply_action(sigma, row, q)
                            for row in powers[-1]))

    n = p * span
    mul = [[0] * n for _ in range(n)]
    for k in range(p):
        for uc in range(span):
            u = decode(uc)
            a = k * span + uc
            for m in range(p):
                for vc in range(span):
                    v = decode(vc)
                    w = _apply_action(powers[k], v, q)
                    uw = tuple((x + y) % q for x, y in zip(u, w))
                    mul[a][m * span + vc] = ((k + m) % p) * span + encode(uw)
    return FiniteGroupTable(mul, check=True)


def construct_mpqs(p, q, factor_index=0):
    return MetabelianGroup(p, q, factor_index)


def delta_mpqs(P, p, q, *, beta=None, A=None, jobs=1):
    """Hall invariant against M_{p,q^s} from the mod-q Betti distribution:

        (p - 1) / (s (q^s - 1)) * sum_{d >= 1} beta_{p,d}^{(q)} (q^{sd} - 1).
    """
    s = multiplicative_order(q, p)
    if beta is None:
        beta = beta_distribution(P, p, q, A=A, jobs=jobs)
    num = (p - 1) * sum(c * (q ** (s * d) - 1)
                        for d, c in beta.counts.items() if d >= 1)
    den = s * (q ** s - 1)
    assert num % den == 0, "metabelian count not an integer"
    return num // den


def hom_epi_count_mpqs(P, p, q, *, A=None, beta=None):
    """(|Hom|, |Epi|) into M_{p,q^s}, from depths of the order-p characters:
    each rho contributes q^{s(depth+1)} homomorphisms, of which q^s are
    abelian when rho is nontrivial; the trivial rho contributes
    q^{s b_1^{(q)}}.  The nontrivial characters are taken p-1 at a time
    through the Betti distribution, which tallies exactly their depths."""
    if A is None:
        A = alexander_matrix(P)
    abel = A.abel
    s = multiplicative_order(q, p)
    if beta is None:
        beta = beta_distribution(P, p, q, A=A)
    qs = q ** s
    hom = qs ** abel.b1(q)  # trivial rho, via depth(1) = b_1^{(q)} - 1
    epi = 0
    for d, count in beta.counts.items():
        hom += (p - 1) * count * qs ** (d + 1)
        epi += (p - 1) * count * qs * (qs ** d - 1)
    return hom, epi


# reference closed forms, used only against delta_mpqs in tests

def delta_free_mpqs(p, q, n):
    """delta of a free group of rank n against M_{p,q^s}."""
    s = multiplicative_order(q, p)
    num = (p ** n - 1) * (q ** (s * (n - 1)) - 1)
    den = s * (q ** s - 1)
    assert num % den == 0
    return num // den


def delta_free_metacyclic(p, q, n):
    """Metacyclic case p | q - 1 (s = 1)."""
    if (q - 1) % p:
        raise ValueError("requires p | q - 1")
    return (p ** n - 1) * (q ** (n - 1) - 1) // (q - 1)


def delta_free_alternating4(n):
    """Target A_4 = M_{3,4}."""
    return (3 ** n - 1) * (4 ** (n - 1) - 1) // 6


def delta_coprime_product(d1, d2):
    """delta is multiplicative over targets of coprime order."""
    return d1 * d2
