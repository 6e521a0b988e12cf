"""Finite groups as dense multiplication tables, plus actions by automorphisms.

Elements are integer indices into a multiplication table.  Builders cover the
families used elsewhere in the package (cyclic, dihedral, the quaternion group
of order 8, small symmetric groups, direct products) and semidirect products
K x| G for a G-action on K by automorphisms.
"""

from __future__ import annotations

from itertools import permutations

from .config import LIMITS
from .errors import ResourceLimitError, UsageError


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul, name="G", check=True):
        self.mul = tuple(tuple(row) for row in mul)
        self.name = name
        n = len(self.mul)
        if any(len(row) != n for row in self.mul):
            raise UsageError("multiplication table is not square")
        ident = None
        for e in range(n):
            if all(self.mul[e][x] == x and self.mul[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise UsageError("multiplication table has no identity")
        self.identity = ident
        inv = [None] * n
        for a in range(n):
            for b in range(n):
                if self.mul[a][b] == ident:
                    inv[a] = b
                    break
            if inv[a] is None:
                raise UsageError("element %d has no inverse" % a)
        self.inverse = tuple(inv)
        if check:
            self.check_associative()

    @property
    def order(self):
        return len(self.mul)

    def check_associative(self):
        n = self.order
        mul = self.mul
        for a in range(n):
            ma = mul[a]
            for b in range(n):
                mab = mul[ma[b]]
                mb = mul[b]
                for c in range(n):
                    if mab[c] != ma[mb[c]]:
                        raise UsageError(
                            "table is not associative at (%d,%d,%d)" % (a, b, c))

    def op(self, a, b):
        return self.mul[a][b]

    def inv(self, a):
        return self.inverse[a]

    def conjugate(self, g, x):
        """g x g^-1."""
        return self.mul[self.mul[g][x]][self.inverse[g]]

    def power(self, a, k):
        if k < 0:
            return self.power(self.inverse[a], -k)
        r = self.identity
        for _ in range(k):
            r = self.mul[r][a]
        return r

    def element_order(self, a):
        r, k = a, 1
        while r != self.identity:
            r = self.mul[r][a]
            k += 1
        return k

    def elements(self):
        return range(self.order)

    def nonidentity(self):
        return [x for x in range(self.order) if x != self.identity]

    def generating_sequence(self):
        """A short list of elements generating the group (greedy)."""
        gens = []
        have = {self.identity}
        for x in sorted(range(self.order), key=self.element_order, reverse=True):
            if x in have:
                continue
            gens.append(x)
            have = self.closure(gens)
            if len(have) == self.order:
                break
        return gens

    def closure(self, elems):
        """Subgroup generated by ``elems``, as a set of indices."""
        have = {self.identity}
        frontier = [self.identity]
        elems = list(elems)
        while frontier:
            x = frontier.pop()
            for g in elems:
                y = self.mul[x][g]
                if y not in have:
                    have.add(y)
                    frontier.append(y)
        return have

    def subgroup(self, elems):
        """The subgroup on ``elems`` (must be closed) as a new FiniteGroup.

        Returns (group, embed) where embed[i] is the parent index of the
        i-th subgroup element.
        """
        embed = sorted(elems)
        pos = {x: i for i, x in enumerate(embed)}
        try:
            mul = [[pos[self.mul[a][b]] for b in embed] for a in embed]
        except KeyError:
            raise UsageError("element set is not closed under multiplication")
        return FiniteGroup(mul, name="%s-sub%d" % (self.name, len(embed)),
                           check=False), embed

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)


# -- builders --------------------------------------------------------------

def trivial_group():
    return FiniteGroup([[0]], name="1", check=False)


def cyclic(n):
    if n < 1:
        raise UsageError("cyclic group needs n >= 1")
    mul = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(mul, name="Z%d" % n, check=False)


def dihedral(n):
    """Dihedral group of order 2n; index j*n + i encodes s^j r^i."""
    if n < 1:
        raise UsageError("dihedral group needs n >= 1")

    def op(x, y):
        jx, ix = divmod(x, n)
        jy, iy = divmod(y, n)
        # s^jx r^ix s^jy r^iy = s^(jx+jy) r^(iy + (-1)^jy... ) using r s = s r^-1
        j = (jx + jy) % 2
        i = (iy + (ix if jy == 0 else (-ix))) % n
        return j * n + i

    mul = [[op(x, y) for y in range(2 * n)] for x in range(2 * n)]
    return FiniteGroup(mul, name="D%d" % n)


def quaternion8():
    """Quaternion group {+-1, +-i, +-j, +-k}; indices 0..7 = 1,-1,i,-i,j,-j,k,-k."""
    # represent q = (sign, letter) with letters 1,i,j,k multiplying like quaternions
    letters = {(1, 1): (1, 1),
               (1, "i"): (1, "i"), (1, "j"): (1, "j"), (1, "k"): (1, "k"),
               ("i", 1): (1, "i"), ("j", 1): (1, "j"), ("k", 1): (1, "k"),
               ("i", "i"): (-1, 1), ("j", "j"): (-1, 1), ("k", "k"): (-1, 1),
               ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
               ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")}
    basis = [1, "i", "j", "k"]

    def idx(sign, letter):
        return basis.index(letter) * 2 + (0 if sign == 1 else 1)

    def op(x, y):
        sx, lx = (1 if x % 2 == 0 else -1), basis[x // 2]
        sy, ly = (1 if y % 2 == 0 else -1), basis[y // 2]
        s, l = letters[(lx, ly)]
        return idx(s * sx * sy, l)

    mul = [[op(x, y) for y in range(8)] for x in range(8)]
    return FiniteGroup(mul, name="Q8")


def symmetric(n):
    """Symmetric group on n letters, n <= 4, in lexicographic permutation order."""
    if n < 1 or n > 4:
        raise UsageError("symmetric(n) supports 1 <= n <= 4")
    perms = sorted(permutations(range(n)))
    pos = {p: i for i, p in enumerate(perms)}

    def op(x, y):
        px, py = perms[x], perms[y]
        return pos[tuple(px[py[i]] for i in range(n))]

    mul = [[op(x, y) for y in range(len(perms))] for x in range(len(perms))]
    return FiniteGroup(mul, name="S%d" % n)


def direct_product(a, b):
    """Direct product; index = ia * |b| + ib."""
    nb = b.order

    def op(x, y):
        xa, xb = divmod(x, nb)
        ya, yb = divmod(y, nb)
        return a.mul[xa][ya] * nb + b.mul[xb][yb]

    n = a.order * nb
    mul = [[op(x, y) for y in range(n)] for x in range(n)]
    return FiniteGroup(mul, name="%sx%s" % (a.name, b.name), check=False)


# -- homomorphisms ---------------------------------------------------------

class GroupHom:
    """A homomorphism given by its full image table."""

    def __init__(self, source, target, images, check=True):
        self.source = source
        self.target = target
        self.images = tuple(images)
        if len(self.images) != source.order:
            raise UsageError("image table has wrong length")
        if check and not self.is_hom():
            raise UsageError("image table is not a homomorphism")

    def is_hom(self):
        s, t, im = self.source, self.target, self.images
        return all(im[s.mul[a][b]] == t.mul[im[a]][im[b]]
                   for a in s.elements() for b in s.elements())

    def __call__(self, x):
        return self.images[x]

    def is_bijective(self):
        return len(set(self.images)) == self.source.order

    def compose(self, other):
        """self after other."""
        assert other.target is self.source or other.target == self.source
        return GroupHom(other.source, self.target,
                        [self.images[other.images[x]] for x in other.source.elements()],
                        check=False)

    def __eq__(self, other):
        return isinstance(other, GroupHom) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


# -- actions ---------------------------------------------------------------

class GroupAction:
    """An action of ``group`` on ``target`` by group automorphisms."""

    def __init__(self, group, target, perms, check=True):
        self.group = group
        self.target = target
        self.perms = tuple(tuple(p) for p in perms)
        if check:
            self.validate()

    def validate(self):
        g, k = self.group, self.target
        if len(self.perms) != g.order:
            raise UsageError("need one permutation per acting element")
        for p in self.perms:
            if sorted(p) != list(range(k.order)):
                raise UsageError("action entry is not a permutation")
            for a in k.elements():
                for b in k.elements():
                    if p[k.mul[a][b]] != k.mul[p[a]][p[b]]:
                        raise UsageError("action entry is not an automorphism")
        for a in g.elements():
            for b in g.elements():
                pa, pb = self.perms[a], self.perms[b]
                if self.perms[g.mul[a][b]] != tuple(pa[pb[x]] for x in k.elements()):
                    raise UsageError("action is not functorial")

    def apply(self, g, x):
        return self.perms[g][x]

    def apply_tuple(self, g, xs):
        p = self.perms[g]
        return tuple(p[x] for x in xs)

    def __eq__(self, other):
        return (isinstance(other, GroupAction) and self.group == other.group
                and self.target == other.target and self.perms == other.perms)

    def __hash__(self):
        return hash((self.group, self.target, self.perms))


def trivial_action(group, target):
    ident = tuple(range(target.order))
    return GroupAction(group, target, [ident] * group.order, check=False)


def conjugation_action(k):
    perms = [[k.conjugate(g, x) for x in k.elements()] for g in k.elements()]
    return GroupAction(k, k, perms, check=False)


def inversion_action(k):
    """Z/2 acting on an abelian group by inversion."""
    for a in k.elements():
        for b in k.elements():
            if k.mul[a][b] != k.mul[b][a]:
                raise UsageError("inversion action needs an abelian group")
    ident = tuple(range(k.order))
    return GroupAction(cyclic(2), k, [ident, k.inverse], check=False)


def action_from_hom(group, target, hom_images):
    """Action from generator-free data: hom_images[g] is a permutation."""
    return GroupAction(group, target, hom_images, check=True)


# -- semidirect products ---------------------------------------------------

class SemidirectProduct:
    """K x| G for an action of G on K; index = k * |G| + g.

    Multiplication is (a, g)(b, h) = (a * g(b), g h).  ``mu`` is the
    multiplication homomorphism (a, g) -> a g, defined only when G acts on
    itself by conjugation.
    """

    def __init__(self, action):
        k, g = action.target, action.group
        order = k.order * g.order
        if order > LIMITS.max_group_order:
            raise ResourceLimitError(
                "semidirect product of order %d exceeds the ceiling %d"
                % (order, LIMITS.max_group_order))
        self.action = action
        self.K = k
        self.G = g
        ng = g.order

        def op(x, y):
            ka, ga = divmod(x, ng)
            kb, gb = divmod(y, ng)
            return k.mul[ka][action.apply(ga, kb)] * ng + g.mul[ga][gb]

        mul = [[op(x, y) for y in range(order)] for x in range(order)]
        self.group = FiniteGroup(mul, name="%sx|%s" % (k.name, g.name), check=False)

        self.embed_k = GroupHom(k, self.group,
                                [a * ng + g.identity for a in k.elements()],
                                check=False)
        self.embed_g = GroupHom(g, self.group,
                                [k.identity * ng + b for b in g.elements()],
                                check=False)
        self.project_g = GroupHom(self.group, g,
                                  [x % ng for x in range(order)], check=False)

        self.mu = None
        if k == g and action == conjugation_action(k):
            self.mu = GroupHom(self.group, k,
                               [k.mul[x // ng][x % ng] for x in range(order)])

    def pair(self, a, g):
        return a * self.G.order + g

    def unpair(self, x):
        return divmod(x, self.G.order)


# -- automorphisms ---------------------------------------------------------

def automorphism_group(k, limit=None):
    """All automorphisms of k, by backtracking over generator images.

    Raises ResourceLimitError if more than ``limit`` automorphisms exist
    (default from config), since downstream orbit computations enumerate them.
    """
    if limit is None:
        limit = LIMITS.max_aut_group_order
    gens = k.generating_sequence()
    if not gens:
        return [GroupHom(k, k, list(k.elements()), check=False)]
    orders = [k.element_order(g) for g in gens]
    found = []

    def extend(partial, depth):
        # partial maps a closed-so-far piece of k; complete it for gens[depth:]
        if depth == len(gens):
            if len(partial) == k.order and len(set(partial.values())) == k.order:
                found.append(GroupHom(k, k, [partial[x] for x in k.elements()],
                                      check=False))
                if len(found) > limit:
                    raise ResourceLimitError(
                        "automorphism group larger than %d" % limit)
            return
        g = gens[depth]
        for img in k.elements():
            if k.element_order(img) != orders[depth]:
                continue
            new = dict(partial)
            new[g] = img
            if _close_map(k, new):
                extend(new, depth + 1)

    extend({k.identity: k.identity}, 0)
    assert all(a.is_hom() for a in found)
    return found


def _close_map(k, partial):
    """Extend a partial multiplicative map to the closure of its domain.

    Mutates ``partial``; returns False on any inconsistency.
    """
    frontier = list(partial)
    while frontier:
        x = frontier.pop()
        for y in list(partial):
            for a, b in ((x, y), (y, x)):
                z = k.mul[a][b]
                w = k.mul[partial[a]][partial[b]]
                if z in partial:
                    if partial[z] != w:
                        return False
                else:
                    partial[z] = w
                    frontier.append(z)
    return True


def equivariant_automorphisms(action):
    """Automorphisms of the target commuting with the whole action."""
    auts = automorphism_group(action.target)
    out = []
    for f in auts:
        if all(tuple(f(action.apply(g, x)) for x in action.target.elements())
               == tuple(action.apply(g, f(x)) for x in action.target.elements())
               for g in action.group.elements()):
            out.append(f)
    return out


def trivialization_section(action):
    """A homomorphism s: G -> K with conj(s(g)) = action(g), or None."""
    g, k = action.group, action.target
    gens = g.generating_sequence()
    orders = [g.element_order(x) for x in gens]

    def check_full(images):
        hom = GroupHom(g, k, images, check=False)
        if not hom.is_hom():
            return False
        return all(tuple(k.conjugate(hom(a), x) for x in k.elements())
                   == action.perms[a] for a in g.elements())

    if not gens:
        images = [k.identity]
        return GroupHom(g, k, images, check=False) if check_full(images) else None

    def extend(partial, depth):
        if depth == len(gens):
            if len(partial) == g.order:
                images = [partial[x] for x in g.elements()]
                if check_full(images):
                    return GroupHom(g, k, images, check=False)
            return None
        x = gens[depth]
        for img in k.elements():
            if orders[depth] % k.element_order(img):
                continue
            if tuple(k.conjugate(img, y) for y in k.elements()) != action.perms[x]:
                continue
            new = dict(partial)
            new[x] = img
            if _close_pair_map(g, k, new):
                res = extend(new, depth + 1)
                if res is not None:
                    return res
        return None

    return extend({g.identity: k.identity}, 0)


def _close_pair_map(g, k, partial):
    frontier = list(partial)
    while frontier:
        x = frontier.pop()
        for y in list(partial):
            for a, b in ((x, y), (y, x)):
                z = g.mul[a][b]
                w = k.mul[partial[a]][partial[b]]
                if z in partial:
                    if partial[z] != w:
                        return False
                else:
                    partial[z] = w
                    frontier.append(z)
    return True


# -- orbits ----------------------------------------------------------------

def orbits(action, points, apply_fn):
    """Orbit partition of ``points`` under the acting group.

    ``apply_fn(g, p)`` must return the image of point p under group element g.
    Returns a list of orbits, each a sorted list of points; the first entry of
    each orbit is its canonical representative.
    """
    seen = set()
    out = []
    for p in points:
        if p in seen:
            continue
        orbit = set()
        frontier = [p]
        while frontier:
            q = frontier.pop()
            if q in orbit:
                continue
            orbit.add(q)
            for g in action.group.elements():
                frontier.append(apply_fn(g, q))
        out.append(sorted(orbit))
        seen |= orbit
    return out


def stabilizer(action, point, apply_fn):
    """Elements of the acting group fixing ``point``."""
    return [g for g in action.group.elements() if apply_fn(g, point) == point]


def transversal(action, orbit, rep, apply_fn):
    """For each point of the orbit, one group element moving ``rep`` to it."""
    t = {rep: action.group.identity}
    frontier = [rep]
    while frontier:
        q = frontier.pop()
        for g in action.group.elements():
            r = apply_fn(g, q)
            if r not in t:
                t[r] = action.group.mul[g][t[q]]
                frontier.append(r)
    assert set(t) == set(orbit)
    return t
