"""Finite groups as Cayley tables: named families, subgroups, Sylow and
p-subgroups, conjugation and double cosets.

Element 0 is always the identity. Named constructors fix the numbering:

* ``cyclic n``: element j is g^j.
* ``elemab p k``: element sum_t c_t p^t is the vector (c_0, ..., c_{k-1}).
* ``product A,B``: element a + |A| b is the pair (a, b).
* ``dihedral 2n``: element i + n j is r^i s^j (s r s = r^-1).
* ``quaternion 8``: element a + 4 b is i^a j^b.
* ``symmetric n``: permutations of {0..n-1} in lexicographic order,
  composed right to left ((st)(x) = s(t(x))).
"""

import hashlib
import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

SUBGROUP_CAP = 64


class GroupError(ValueError):
    pass


class CapExceeded(RuntimeError):
    """A configured size or degree cap blocked a computation."""


class Group:
    """A validated finite group given by its multiplication table."""

    def __init__(self, table, name="", perms=None):
        self.table = np.asarray(table, dtype=np.int64)
        self.table.setflags(write=False)
        self.name = name
        self.perms = perms
        n = self.order
        inv = np.empty(n, dtype=np.int64)
        for g in range(n):
            inv[g] = int(np.flatnonzero(self.table[g] == 0)[0])
        inv.setflags(write=False)
        self.inverse = inv

    @property
    def order(self):
        return self.table.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Group({self.name or '?'}, order={self.order})"

    @cached_property
    def key(self):
        return hashlib.sha1(self.table.tobytes()).hexdigest()[:16]

    def __eq__(self, other):
        return isinstance(other, Group) and other.order == self.order and np.array_equal(other.table, self.table)

    def __hash__(self):
        return hash(self.key)

    def mul(self, a, b):
        return int(self.table[a, b])

    def conj(self, x, h):
        """x h x^-1"""
        return int(self.table[self.table[x, h], self.inverse[x]])

    def power(self, g, k):
        r = 0
        for _ in range(k):
            r = int(self.table[r, g])
        return r

    @cached_property
    def element_orders(self):
        out = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = int(self.table[x, g])
                k += 1
            out.append(k)
        return out

    @cached_property
    def generators(self):
        """Greedy generating set: scan elements in index order, keep any
        element not already in the subgroup generated so far."""
        gens = []
        current = frozenset([0])
        for g in range(1, self.order):
            if g not in current:
                gens.append(g)
                current = closure(self, gens)
            if len(current) == self.order:
                break
        return tuple(gens)

    def is_abelian(self):
        return bool(np.array_equal(self.table, self.table.T))

    def is_cyclic(self):
        return self.order in self.element_orders

    def is_p_group(self, p):
        n = self.order
        while n % p == 0:
            n //= p
        return n == 1

    def p_part(self, p):
        n, q = self.order, 1
        while n % p == 0:
            n //= p
            q *= p
        return q

    def exponent(self):
        return int(np.lcm.reduce(self.element_orders))

    def cyclic_generator(self):
        """Smallest-index element of maximal order, when the group is cyclic."""
        for g, o in enumerate(self.element_orders):
            if o == self.order:
                return g
        raise GroupError(f"{self!r} is not cyclic")

    def family(self):
        """Coarse isomorphism type used for the trusted cohomology table."""
        n = self.order
        if n == 1:
            return ("trivial",)
        if self.is_cyclic():
            return ("cyclic", n)
        orders = self.element_orders
        if self.is_abelian():
            e = self.exponent()
            r = 0
            m = n
            while m % e == 0 and m > 1:
                m //= e
                r += 1
            if is_prime(e) and m == 1:
                return ("elemab", e, r)
            return ("abelian", n)
        if n == 8 and orders.count(2) == 1:
            return ("quaternion", 8)
        return ("other", n)


def is_prime(n):
    return n > 1 and all(n % f for f in range(2, int(n**0.5) + 1))


def closure(G, elements):
    """Subgroup generated by ``elements`` as a frozenset of indices."""
    gens = [int(g) for g in elements]
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(G.table[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def build_group(table, name=""):
    """Validate a Cayley table and return a Group.

    The identity is renumbered to index 0 if needed. Raises GroupError for a
    missing identity, a non-permutation row/column or a non-associative triple.
    """
    T = np.asarray(table, dtype=np.int64)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise GroupError("Cayley table must be a nonempty square array")
    n = T.shape[0]
    if T.min() < 0 or T.max() >= n:
        raise GroupError("table entries must be element indices 0..n-1")
    full = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(T[i]), full):
            raise GroupError(f"row {i} is not a permutation")
        if not np.array_equal(np.sort(T[:, i]), full):
            raise GroupError(f"column {i} is not a permutation")
    ident = [e for e in range(n) if np.array_equal(T[e], full) and np.array_equal(T[:, e], full)]
    if not ident:
        raise GroupError("no identity element")
    e = ident[0]
    if e != 0:
        perm = np.arange(n)
        perm[0], perm[e] = e, 0  # swap labels 0 and e
        T = perm[T[np.ix_(perm, perm)]]
    # associativity: (ab)c == a(bc) for all triples, vectorised over c
    for a in range(n):
        left = T[T[a]]  # left[b, c] = (ab)c
        right = T[a][T]  # right[b, c] = a(bc)
        if not np.array_equal(left, right):
            b, c = map(int, np.argwhere(left != right)[0])
            raise GroupError(f"not associative at ({a}, {b}, {c})")
    return Group(T, name=name)


# --------------------------------------------------------------------------
# named families


def cyclic(n):
    i = np.arange(n)
    return Group((i[:, None] + i[None, :]) % n, name=f"cyclic:{n}")


def direct_product(A, B, name=None):
    na, nb = A.order, B.order
    T = np.empty((na * nb, na * nb), dtype=np.int64)
    for b1 in range(nb):
        for a1 in range(na):
            x = a1 + na * b1
            T[x] = (A.table[a1][None, :] + na * B.table[b1][:, None]).reshape(-1)
    return Group(T, name=name or f"product:{A.name},{B.name}")


def elementary_abelian(p, k):
    G = cyclic(p)
    for _ in range(k - 1):
        G = direct_product(G, cyclic(p))
    G.name = f"elemab:{p}:{k}"
    return G


def dihedral(order):
    if order % 2 or order < 4:
        raise GroupError("dihedral order must be even and >= 4")
    n = order // 2
    T = np.empty((order, order), dtype=np.int64)
    for i1, j1, i2, j2 in itertools.product(range(n), range(2), range(n), range(2)):
        # r^i1 s^j1 r^i2 s^j2 = r^(i1 + (-1)^j1 i2) s^(j1+j2)
        i = (i1 + (i2 if j1 == 0 else -i2)) % n
        T[i1 + n * j1, i2 + n * j2] = i + n * ((j1 + j2) % 2)
    return Group(T, name=f"dihedral:{order}")


def quaternion8():
    T = np.empty((8, 8), dtype=np.int64)
    for a, b, c, d in itertools.product(range(4), range(2), range(4), range(2)):
        e = (a + (c if b == 0 else -c) + 2 * b * d) % 4
        T[a + 4 * b, c + 4 * d] = e + 4 * ((b + d) % 2)
    return Group(T, name="quaternion:8")


def symmetric(n):
    perms = list(itertools.permutations(range(n)))
    index = {q: i for i, q in enumerate(perms)}
    T = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, s in enumerate(perms):
        for j, t in enumerate(perms):
            T[i, j] = index[tuple(s[t[x]] for x in range(n))]
    return Group(T, name=f"symmetric:{n}", perms=perms)


def trivial_group():
    return Group([[0]], name="trivial")


def named_group(spec):
    """Build a group from a spec string or tuple.

    Accepted strings: "trivial", "cyclic:n", "elemab:p:k", "dihedral:2n",
    "quaternion:8", "symmetric:n" (n <= 4), "product:A,B[,C...]".
    """
    if isinstance(spec, Group):
        return spec
    if isinstance(spec, (tuple, list)):
        spec = ":".join(str(s) for s in spec)
    s = str(spec).strip()
    head, _, rest = s.partition(":")
    try:
        if head == "trivial":
            return trivial_group()
        if head == "cyclic":
            n = int(rest)
            if n < 1:
                raise ValueError
            return cyclic(n)
        if head in ("elemab", "elementary_abelian"):
            p, k = (int(x) for x in rest.split(":"))
            if not is_prime(p) or k < 1:
                raise ValueError
            return elementary_abelian(p, k)
        if head == "dihedral":
            return dihedral(int(rest))
        if head == "quaternion":
            if int(rest) != 8:
                raise GroupError("only quaternion:8 is supported")
            return quaternion8()
        if head == "symmetric":
            n = int(rest)
            if not 1 <= n <= 4:
                raise GroupError("symmetric:n supported for n <= 4")
            return symmetric(n)
        if head in ("product", "direct_product"):
            parts = _split_product(rest)
            if len(parts) < 2:
                raise ValueError
            G = named_group(parts[0])
            for q in parts[1:]:
                G = direct_product(G, named_group(q))
            G.name = s
            return G
    except GroupError:
        raise
    except (ValueError, TypeError) as exc:
        raise GroupError(f"malformed group spec {spec!r}") from exc
    raise GroupError(f"unsupported group spec {spec!r}")


def _split_product(rest):
    return [x.strip() for x in rest.split(",") if x.strip()]


# --------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A subgroup of ``parent`` given by its sorted element indices.

    ``group`` is the subgroup as a Group in its own numbering: local index i
    is parent element ``elements[i]`` (local 0 is the identity).
    """

    def __init__(self, parent, elements, check=True):
        els = tuple(sorted(int(x) for x in elements))
        if check:
            s = set(els)
            if 0 not in s:
                raise GroupError("subgroup must contain the identity")
            for a in els:
                if int(parent.inverse[a]) not in s:
                    raise GroupError("subset not closed under inverses")
                for b in els:
                    if int(parent.table[a, b]) not in s:
                        raise GroupError("subset not closed under multiplication")
            if parent.order % len(els):
                raise GroupError("subgroup order must divide the group order")
        self.parent = parent
        self.elements = els

    @property
    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"Subgroup(order={self.order}, elements={list(self.elements)})"

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.parent == self.parent and other.elements == self.elements

    def __hash__(self):
        return hash((self.parent.key, self.elements))

    @cached_property
    def local(self):
        """parent index -> local index"""
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def group(self):
        els = np.array(self.elements)
        sub = self.parent.table[np.ix_(els, els)]
        lut = np.full(self.parent.order, -1, dtype=np.int64)
        lut[els] = np.arange(len(els))
        name = f"{self.parent.name}>{self.order}"
        return Group(lut[sub], name=name)

    def contains(self, other):
        return set(other.elements) <= set(self.elements)

    def is_normal(self):
        s = set(self.elements)
        return all(self.parent.conj(x, h) in s for x in range(self.parent.order) for h in self.elements)

    def within(self, ambient):
        """This subgroup as a Subgroup of ``ambient.group`` (must be contained)."""
        if not ambient.contains(self):
            raise GroupError("subgroup not contained in ambient subgroup")
        return Subgroup(ambient.group, [ambient.local[g] for g in self.elements], check=False)


def whole(G):
    return Subgroup(G, range(G.order), check=False)


def trivial_subgroup(G):
    return Subgroup(G, [0], check=False)


def all_subgroups(G, cap=SUBGROUP_CAP):
    """Every subgroup, sorted by order then element list."""
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds subgroup enumeration cap {cap}")
    cyclics = {closure(G, [g]) for g in range(G.order)}
    found = set(cyclics)
    frontier = set(cyclics)
    while frontier:
        nxt = set()
        for A in frontier:
            for C in cyclics:
                if C <= A:
                    continue
                J = closure(G, sorted(A | C))
                if J not in found:
                    found.add(J)
                    nxt.add(J)
        frontier = nxt
    subs = [Subgroup(G, S, check=False) for S in found]
    subs.sort(key=lambda H: (H.order, H.elements))
    return subs


def conjugate_subgroup(G, H, x):
    """x H x^-1"""
    return Subgroup(G, {G.conj(x, h) for h in H.elements}, check=False)


def are_conjugate(G, A, B):
    if A.order != B.order:
        return None
    for x in range(G.order):
        if conjugate_subgroup(G, A, x) == B:
            return x
    return None


def p_subgroups(G, p, up_to_conjugacy=False, nontrivial=False, proper=False, non_sylow=False, cap=SUBGROUP_CAP):
    """Subgroups of p-power order.

    With ``up_to_conjugacy`` only the first member (in the sorted order) of
    each conjugacy class is kept. ``non_sylow`` drops subgroups of full
    p-part order.
    """
    out = []
    sylow_order = G.p_part(p)
    for H in all_subgroups(G, cap):
        if not H.group.is_p_group(p):
            continue
        if nontrivial and H.order == 1:
            continue
        if proper and H.order == G.order:
            continue
        if non_sylow and H.order == sylow_order:
            continue
        out.append(H)
    if up_to_conjugacy:
        reps = []
        for H in out:
            if not any(are_conjugate(G, R, H) is not None for R in reps):
                reps.append(H)
        out = reps
    return out


def sylow_subgroup(G, p):
    """A Sylow p-subgroup: the lexicographically least element set of the
    right order (trivial subgroup if p does not divide |G|)."""
    q = G.p_part(p)
    if q == 1:
        return trivial_subgroup(G)
    if q == G.order:
        return whole(G)
    cands = [H for H in all_subgroups(G) if H.order == q]
    return min(cands, key=lambda H: H.elements)


@dataclass
class DoubleCosetDecomposition:
    representatives: list
    cosets: list  # list of sorted element lists, aligned with representatives

    def sizes(self):
        return [len(c) for c in self.cosets]


def double_cosets(G, Q, H):
    """Partition G into double cosets Q x H, each labelled by its minimal element."""
    seen = set()
    reps, cosets = [], []
    for x in range(G.order):
        if x in seen:
            continue
        orbit = {int(G.table[G.table[q, x], h]) for q in Q.elements for h in H.elements}
        seen |= orbit
        reps.append(min(orbit))
        cosets.append(sorted(orbit))
    return DoubleCosetDecomposition(reps, cosets)


def left_transversal(G, H):
    """Minimal representatives t of the left cosets tH, in increasing order.
    The first representative is the identity."""
    seen = set()
    reps = []
    for x in range(G.order):
        if x in seen:
            continue
        reps.append(x)
        seen |= {int(G.table[x, h]) for h in H.elements}
    return reps


def intersection(A, B):
    return Subgroup(A.parent, set(A.elements) & set(B.elements), check=False)
