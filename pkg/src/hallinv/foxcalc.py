"""Fox derivatives, the abelianization structure, and the Alexander matrix.

The Fox derivative d/dx_j is the linear map on the free group ring with
d(x_i)/dx_j = delta_ij and d(uv)/dx_j = du/dx_j e(v) + u dv/dx_j, where e
is the augmentation.  Applied to the relators and pushed through a fixed
isomorphism chi of H_1(G) onto Z^n (+) sum Z_{e_i}, the Fox Jacobian
becomes the Alexander matrix, with entries in the Laurent ring

    Z[t_1^{+-1}, ..., t_n^{+-1}, s_1, ..., s_h] / (s_i^{e_i} - 1).

chi itself comes from the Smith normal form of the augmented Jacobian and
is therefore deterministic; every count computed downstream is independent
of this choice, up to the usual monomial change of basis.
"""

from __future__ import annotations

from .linalg import IntMatrix, smith_normal_form
from .presentations import Word


class FreeRingElement:
    """Finite integer combination of freely reduced words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for w, c in (terms.items() if isinstance(terms, dict) else terms):
                if c:
                    new = self.terms.get(w, 0) + c
                    if new:
                        self.terms[w] = new
                    else:
                        self.terms.pop(w, None)

    @classmethod
    def from_word(cls, w, coeff=1):
        return cls({w: coeff})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            new = out.get(w, 0) + c
            if new:
                out[w] = new
            else:
                out.pop(w, None)
        return FreeRingElement(out)

    def __neg__(self):
        return FreeRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def word_mul(self, w):
        """Left-multiply every term by the group element w."""
        return FreeRingElement({w * u: c for u, c in self.terms.items()})

    def scale(self, k):
        return FreeRingElement({w: k * c for w, c in self.terms.items()})

    def mul(self, other):
        out = FreeRingElement()
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                out = out + FreeRingElement({u * v: a * b})
        return out

    def augmentation(self):
        return sum(self.terms.values())

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeRingElement) and other.terms == self.terms

    def __repr__(self):
        return f"FreeRingElement({self.terms})"


def fox_derivative(w, j):
    """Fox derivative of the group element w with respect to generator j.

    Uses d(x^e)/dx = 1 + x + ... + x^{e-1} for e > 0 and
    -(x^{-1} + ... + x^{e}) for e < 0, together with
    d(uv) = du + u dv (valid since e(v) = 1 for group elements).
    """
    terms = {}
    prefix = Word()
    for g, e in w.syllables:
        if g == j:
            x = Word.generator(g)
            if e > 0:
                contributions = [(prefix * x ** k, 1) for k in range(e)]
            else:
                contributions = [(prefix * x ** (-k), -1) for k in range(1, -e + 1)]
            for u, c in contributions:
                new = terms.get(u, 0) + c
                if new:
                    terms[u] = new
                else:
                    terms.pop(u, None)
        prefix = prefix * Word.generator(g) ** e
    return FreeRingElement(terms)


def fox_fundamental_identity_holds(w, num_generators):
    """Check sum_j dw/dx_j (x_j - 1) = w - 1 in the free group ring."""
    total = FreeRingElement()
    for j in range(num_generators):
        d = fox_derivative(w, j)
        xj = FreeRingElement.from_word(Word.generator(j)) - FreeRingElement.from_word(Word())
        total = total + d.mul(xj)
    want = FreeRingElement.from_word(w) - FreeRingElement.from_word(Word())
    return total == want


def augmentation_jacobian(P):
    """The integer matrix of generator exponent sums of the relators."""
    m, l = len(P.relators), P.num_generators
    return IntMatrix(m, l, [[r.exponent_sum(j) for j in range(l)]
                            for r in P.relators])


class AbelStructure:
    """A fixed isomorphism chi: H_1(G) -> Z^n (+) sum_i Z_{e_i}.

    free_rank: n.  torsion: the elementary divisors > 1, in a divisibility
    chain.  chi maps a generator exponent vector to (free part, torsion
    residues); chi_inv expresses each coordinate basis vector as an integer
    combination of generators, which is how characters given on generators
    get converted to coordinates.
    """

    __slots__ = ("free_rank", "torsion", "_gen_free", "_gen_tors",
                 "_inv_rows", "num_generators")

    def __init__(self, free_rank, torsion, gen_free, gen_tors, inv_rows):
        self.free_rank = free_rank
        self.torsion = list(torsion)
        self._gen_free = gen_free    # per generator: tuple in Z^n
        self._gen_tors = gen_tors    # per generator: residues mod torsion[i]
        self._inv_rows = inv_rows    # per coordinate: integer row over generators
        self.num_generators = len(gen_free)

    @property
    def num_coordinates(self):
        return self.free_rank + len(self.torsion)

    def chi(self, exponent_vector):
        """Image of a generator exponent vector, as (free tuple, torsion tuple)."""
        n = self.free_rank
        free = [0] * n
        tors = [0] * len(self.torsion)
        for j, e in enumerate(exponent_vector):
            if e:
                gf = self._gen_free[j]
                gt = self._gen_tors[j]
                for i in range(n):
                    free[i] += e * gf[i]
                for i in range(len(tors)):
                    tors[i] += e * gt[i]
        tors = [t % d for t, d in zip(tors, self.torsion)]
        return tuple(free), tuple(tors)

    def chi_word(self, w):
        n = self.free_rank
        free = [0] * n
        tors = [0] * len(self.torsion)
        for g, e in w.syllables:
            gf = self._gen_free[g]
            gt = self._gen_tors[g]
            for i in range(n):
                free[i] += e * gf[i]
            for i in range(len(tors)):
                tors[i] += e * gt[i]
        tors = [t % d for t, d in zip(tors, self.torsion)]
        return tuple(free), tuple(tors)

    def coordinate_in_generators(self, c):
        """Integer generator-exponent row representing coordinate basis vector c.

        Coordinates are numbered with the torsion ones first (matching the
        divisor chain), then the free ones.
        """
        return list(self._inv_rows[c])

    def b1(self, q):
        """Mod-q first Betti number; q = 0 gives the ordinary one."""
        if q == 0:
            return self.free_rank
        return self.free_rank + sum(1 for e in self.torsion if e % q == 0)

    def group_order(self):
        """Order of H_1 when finite, else None."""
        if self.free_rank:
            return None
        out = 1
        for e in self.torsion:
            out *= e
        return out

    def __repr__(self):
        parts = ["Z"] * self.free_rank + [f"Z_{e}" for e in self.torsion]
        return "H1 = " + (" + ".join(parts) if parts else "0")


def abelianization(P):
    """AbelStructure of a presentation, from the SNF of the augmented Jacobian.

    With U J V = D, the quotient Z^l / rowspace(J) is carried isomorphically
    onto Z^l / rowspace(D) by right multiplication with V; generator j has
    coordinates given by row j of V, and coordinate c pulls back to row c
    of V^{-1}.
    """
    J = augmentation_jacobian(P)
    form = smith_normal_form(J, want_transform=True)
    _, V = form.transform
    vinv = form.vinv
    l = P.num_generators
    r = form.rank
    divisors = form.divisors
    keep = [i for i in range(r) if divisors[i] > 1]
    torsion = [divisors[i] for i in keep]
    gen_free = [tuple(V.entries[j][r:l]) for j in range(l)]
    gen_tors = [tuple(V.entries[j][i] % divisors[i] for i in keep)
                for j in range(l)]
    inv_rows = ([list(vinv.entries[i]) for i in keep]
                + [list(vinv.entries[c]) for c in range(r, l)])
    abel = AbelStructure(l - r, torsion, gen_free, gen_tors, inv_rows)
    for row in J.entries:
        free, tors = abel.chi(row)
        assert all(x == 0 for x in free) and all(x == 0 for x in tors)
    return abel


class LaurentElement:
    """Element of the Laurent ring attached to an AbelStructure.

    terms maps (free exponent tuple, torsion residue tuple) -> coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms) if terms else {}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            new = out.get(k, 0) + c
            if new:
                out[k] = new
            else:
                out.pop(k, None)
        return LaurentElement(out)

    def __neg__(self):
        return LaurentElement({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.terms

    def augmentation(self):
        return sum(self.terms.values())

    def __eq__(self, other):
        return isinstance(other, LaurentElement) and other.terms == self.terms

    def __repr__(self):
        return f"LaurentElement({self.terms})"


class AlexanderMatrix:
    """The Fox Jacobian of a presentation pushed through chi.

    entries is an m x l grid of LaurentElement (m relators, l generators);
    augmenting every entry (all variables -> 1) recovers the integer
    augmented Jacobian.
    """

    __slots__ = ("abel", "entries", "num_relators", "num_generators")

    def __init__(self, abel, entries, num_generators):
        self.abel = abel
        self.entries = entries
        self.num_relators = len(entries)
        self.num_generators = num_generators

    def evaluate(self, character):
        """Entrywise evaluation at a character, as a grid of field elements."""
        K = character.field
        zero = K.zero()
        out = []
        for row in self.entries:
            out_row = []
            for entry in row:
                acc = zero
                for (free, tors), coeff in entry.terms.items():
                    acc = acc + character.monomial_value(free, tors, coeff)
                out_row.append(acc)
            out.append(out_row)
        return out

    def dump(self):
        """One line per entry: `(i,j): c * t^(v) * s^(w) + ...`."""
        lines = []
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if entry.is_zero():
                    continue
                parts = []
                for (free, tors), coeff in sorted(entry.terms.items()):
                    piece = f"{coeff}"
                    if any(free):
                        piece += f" * t^{list(free)}"
                    if any(tors):
                        piece += f" * s^{list(tors)}"
                    parts.append(piece)
                lines.append(f"({i},{j}): " + " + ".join(parts))
        return "\n".join(lines)


def word_to_laurent(abel, w, coeff=1):
    return LaurentElement({abel.chi_word(w): coeff})


def ring_element_to_laurent(abel, elt):
    out = LaurentElement()
    for w, c in elt.terms.items():
        out = out + word_to_laurent(abel, w, c)
    return out


def alexander_matrix(P, abel=None):
    if abel is None:
        abel = abelianization(P)
    entries = []
    for r in P.relators:
        row = [ring_element_to_laurent(abel, fox_derivative(r, j))
               for j in range(P.num_generators)]
        entries.append(row)
    A = AlexanderMatrix(abel, entries, P.num_generators)
    J = augmentation_jacobian(P)
    for i in range(A.num_relators):
        for j in range(A.num_generators):
            assert A.entries[i][j].augmentation() == J.entries[i][j]
    return A
