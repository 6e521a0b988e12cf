"""Shuffle maps between the bar complex of K and the double complex of the
conjugation action of K on itself, and the associated explicit cochain
constructions.

``tau_dual`` sends a normalized bar cochain w on K to a total cochain of the
full double complex by summing w over (p, q)-shuffles with signs; the entries
of a shuffled tuple conjugate each K argument by the product of the later G
arguments.  ``dpr_cocycle`` is the classical closed-form transgression of a
3-cocycle into a triple (bidegrees (2,1), (1,2), (0,3)); it coincides
entrywise with ``tau1_dual`` in degree 3.

``BarTransfer`` lifts the identity of Z through the two free resolutions to
get an explicit chain map from the double complex to the bar complex of the
semidirect product.  Its dual lets a cochain on the semidirect product (for
example the pullback of w along the multiplication map K x| K -> K) be
compared with shuffle images inside the double-complex model.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exactalg import mod1
from . import complexes


def shuffles(p, q):
    """Yield (positions, sign): positions[i] is the slot of the i-th g entry.

    A (p, q)-shuffle is encoded by the increasing tuple of slots (0-based,
    out of p+q) taken by the first block; the sign is the parity of the
    permutation.
    """
    slots = range(p + q)
    for gpos in combinations(slots, p):
        kpos = tuple(s for s in slots if s not in gpos)
        perm = [0] * (p + q)
        for i, s in enumerate(gpos):
            perm[i] = s
        for j, s in enumerate(kpos):
            perm[p + j] = s
        inv = sum(1 for a in range(p + q) for b in range(a + 1, p + q)
                  if perm[a] > perm[b])
        yield gpos, (-1) ** inv


def shuffle_tuple(group, gs, ks, gpos):
    """The shuffled tuple in K for the conjugation double complex.

    Entries from the first block are placed verbatim; the j-th entry of the
    second block lands conjugated by the product of the first-block entries
    that were moved past it.
    """
    p, q = len(gs), len(ks)
    out = [None] * (p + q)
    for i, s in enumerate(gpos):
        out[s] = gs[i]
    kpos = [s for s in range(p + q) if s not in gpos]
    for j, s in enumerate(kpos):
        # first-block entries originally after position j of the second block
        # that ended up in front of it
        c = group.identity
        for i in range(p):
            if gpos[i] > s:
                c = group.mul[c][gs[i]]
        out[s] = group.mul[group.mul[c][ks[j]]][group.inverse[c]]
    return tuple(out)


def tau_dual(w, spec, n):
    """Pull a bar cochain w on K back along the shuffle map.

    ``spec`` must be a complex of the conjugation action of K on itself; the
    result is a total cochain of degree n with one component per admitted
    bidegree.
    """
    k = spec.K
    assert spec.G == k
    out = complexes.TotalCochain(spec, n)
    for p, q in spec.bidegrees(n):
        c = complexes.Cochain(spec, p, q)
        for idx, (gs, ks) in spec.iter_cells(p, q):
            v = Fraction(0)
            for gpos, sign in shuffles(p, q):
                v += sign * w.get((), shuffle_tuple(k, gs, ks, gpos))
            c.values[idx] = mod1(v)
        out.comps[(p, q)] = c
    return out


def tau1_dual(w, spec, n):
    """The shuffle pullback with the q = 0 component dropped.

    ``spec`` should admit only rows q >= 1 (or be a truncation); bidegrees
    the shape does not admit are simply not produced.
    """
    return tau_dual(w, spec, n)


def dpr_cocycle(w, spec):
    """The closed-form degree-3 triple of a 3-cocycle w on K.

    Returns (alpha, beta, theta) in bidegrees (2,1), (1,2), (0,3) of the
    conjugation double complex:

        alpha[g|h||x] = w[g|h|x] + w[ghx(gh)^-1|g|h] - w[g|hxh^-1|h]
        beta[g||x|y]  = w[g|x|y] + w[gxg^-1|gyg^-1|g] - w[gxg^-1|g|y]
        theta[x|y|z]  = w[x|y|z]

    This equals tau1_dual(w) entrywise.
    """
    k = spec.K
    assert spec.G == k
    mul, inv = k.mul, k.inverse

    def conj(a, x):
        return mul[mul[a][x]][inv[a]]

    def wv(a, b, c):
        return w.get((), (a, b, c))

    alpha = complexes.Cochain(spec, 2, 1)
    for idx, ((g, h), (x,)) in spec.iter_cells(2, 1):
        v = wv(g, h, x) + wv(conj(mul[g][h], x), g, h) - wv(g, conj(h, x), h)
        alpha.values[idx] = mod1(v)
    beta = complexes.Cochain(spec, 1, 2)
    for idx, ((g,), (x, y)) in spec.iter_cells(1, 2):
        v = wv(g, x, y) + wv(conj(g, x), conj(g, y), g) - wv(conj(g, x), g, y)
        beta.values[idx] = mod1(v)
    theta = complexes.Cochain(spec, 0, 3)
    for idx, ((), (x, y, z)) in spec.iter_cells(0, 3):
        theta.values[idx] = wv(x, y, z)
    return alpha, beta, theta


def mu_pullback(w, sd):
    """Pull a bar cochain on K back along multiplication K x| K -> K."""
    assert sd.mu is not None, "multiplication map needs the conjugation action"
    target_spec = complexes.single_group_spec(sd.group)
    return complexes.pullback_cochain(sd.mu, w, target_spec)


class BarTransfer:
    """An explicit chain map from the double complex of an action to the bar
    complex of its semidirect product, built by recursive lifting with the
    standard bar contraction (append the identity, with alternating sign).

    Chains are dicts from tuples of group indices to integer coefficients.
    Bar chains of degree n use tuples of length n+1 whose last entry is the
    module slot; double-complex chains use a pair of such tuples.  Degenerate
    terms (identity among the non-module entries) are dropped throughout,
    which implements the normalized quotients.
    """

    def __init__(self, sd):
        self.sd = sd
        self.gamma = sd.group
        self.K = sd.K
        self.G = sd.G
        self.action = sd.action
        self._memo = {}

    # -- bar chains of the semidirect product ------------------------------

    def _translate(self, chain, y):
        """The action of y: multiply each module slot by y^-1 on the right."""
        yi = self.gamma.inverse[y]
        out = {}
        for t, c in chain.items():
            nt = t[:-1] + (self.gamma.mul[t[-1]][yi],)
            out[nt] = out.get(nt, 0) + c
        return out

    def _append_one(self, chain, sign):
        e = self.gamma.identity
        out = {}
        for t, c in chain.items():
            if e in t:  # old module slot becomes a generator entry
                continue
            out[t + (e,)] = out.get(t + (e,), 0) + sign * c
        return out

    # -- double-complex chains ---------------------------------------------

    def _tot_boundary(self, gt, kt):
        """Boundary terms of a double-complex tuple, as (gt, kt, coeff)."""
        p, q = len(gt) - 1, len(kt) - 1
        terms = []
        if p >= 1:
            terms.append((gt[1:], kt, 1))
            for i in range(1, p + 1):
                merged = gt[:i - 1] + (self.G.mul[gt[i - 1]][gt[i]],) + gt[i + 1:]
                terms.append((merged, kt, (-1) ** i))
        s = (-1) ** p
        if q >= 1:
            terms.append((gt, kt[1:], s))
            for j in range(1, q + 1):
                merged = kt[:j - 1] + (self.K.mul[kt[j - 1]][kt[j]],) + kt[j + 1:]
                terms.append((gt, merged, s * (-1) ** j))
        return terms

    def _phi_tuple(self, gt, kt):
        """phi of one double-complex tuple, reduced through the group action."""
        g, k = gt[-1], kt[-1]
        gen_g = gt[:-1] + (self.G.identity,)
        gen_k = tuple(self.action.apply(g, x) for x in kt[:-1]) + (self.K.identity,)
        if self.G.identity in gen_g[:-1] or self.K.identity in gen_k[:-1]:
            return {}
        chain = self._phi_generator(gen_g, gen_k)
        y = self.sd.pair(self.K.inverse[k], self.G.inverse[g])
        if y == self.gamma.identity:
            return chain
        return self._translate(chain, y)

    def _phi_generator(self, gt, kt):
        key = (gt, kt)
        if key in self._memo:
            return self._memo[key]
        n = (len(gt) - 1) + (len(kt) - 1)
        if n == 0:
            chain = {(self.gamma.identity,): 1}
        else:
            acc = {}
            for bgt, bkt, coeff in self._tot_boundary(gt, kt):
                part = self._phi_tuple(bgt, bkt)
                for t, c in part.items():
                    acc[t] = acc.get(t, 0) + coeff * c
            acc = {t: c for t, c in acc.items() if c}
            chain = self._append_one(acc, (-1) ** n)
        chain = {t: c for t, c in chain.items() if c}
        self._memo[key] = chain
        return chain

    # -- the dual map ------------------------------------------------------

    def pullback(self, w, spec, n):
        """Pull a bar cochain on the semidirect product back to ``spec``.

        ``w`` lives on single_group_spec(sd.group); the result is a total
        cochain of degree n on ``spec`` (a complex of the same action).
        """
        e = self.gamma.identity
        out = complexes.TotalCochain(spec, n)
        for p, q in spec.bidegrees(n):
            c = complexes.Cochain(spec, p, q)
            for idx, (gs, ks) in spec.iter_cells(p, q):
                gen_g = tuple(gs) + (self.G.identity,)
                gen_k = tuple(ks) + (self.K.identity,)
                chain = self._phi_generator(gen_g, gen_k)
                v = Fraction(0)
                for t, coeff in chain.items():
                    args = t[:-1]
                    if e in args:
                        continue
                    v += coeff * w.get((), args)
                c.values[idx] = mod1(v)
            out.comps[(p, q)] = c
        return out
