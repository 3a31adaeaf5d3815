"""Gelfand and prime spectra of a subsemialgebra, and the maps between them.

A character is a unital *-semiring homomorphism from the algebra into the
scalar quantale (or into the two-element quantale): it preserves zero, binary
join, composition, the unit and the involution.  A point of the prime
spectrum is a proper prime k*-ideal; in a finite algebra every k-ideal is the
down-set of its largest element, which reduces the enumeration to a scan over
members.  The kernel map sends characters onto prime ideals and admits a
section that assigns to each prime ideal its two-valued indicator character.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from qspec._homsearch import enumerate_homs
from qspec.quantale import Quantale, builtin_quantale, require_zdf
from qspec.subalgebra import Subsemialgebra

TWO = builtin_quantale("boolean2")


@dataclass(frozen=True)
class Character:
    """A homomorphism from an algebra into a target quantale, stored as the
    tuple of target element indices over the algebra's canonical member order."""

    algebra: Subsemialgebra
    target: Quantale
    values: tuple

    def value_of(self, entries):
        return self.values[self.algebra.member_pos[entries]]

    def kernel_members(self):
        b = self.target.bottom
        return tuple(m for m, v in zip(self.algebra.members, self.values) if v == b)

    def __repr__(self):
        ids = self.target.elements
        return f"Character({','.join(ids[v] for v in self.values)})"


@dataclass(frozen=True)
class PrimeIdeal:
    """A proper prime k*-ideal, stored as its sorted member matrices."""

    algebra: Subsemialgebra
    members: tuple

    @cached_property
    def member_set(self):
        return frozenset(self.members)

    def __contains__(self, entries):
        return entries in self.member_set

    def __repr__(self):
        return f"PrimeIdeal({len(self.members)} of {self.algebra.size} members)"


@dataclass(frozen=True)
class SpectrumSet:
    """Canonically ordered points of one spectrum of one algebra."""

    algebra: Subsemialgebra
    kind: str  # "gelfand" | "prime"
    points: tuple
    improper: tuple = ()  # prime-closed down-sets rejected only for containing the unit

    @property
    def size(self):
        return len(self.points)

    def index_of(self, point):
        return self.points.index(point)


# -- character enumeration -----------------------------------------------------


def _characters(algebra, target):
    sr = algebra.semiring()
    out = [Character(algebra, target, values)
           for values in enumerate_homs(sr, target.semiring())]
    out.sort(key=lambda c: c.values)
    return out


def gelfand_spectrum(algebra):
    """All characters into the scalar quantale, by exhaustive backtracking."""
    return SpectrumSet(algebra, "gelfand", tuple(_characters(algebra, algebra.quantale)))


def characters_to_two(algebra):
    """All homomorphisms into the two-element quantale (needs a ZDF scalar
    quantale for the collapse onto {0, 1} to respect multiplication)."""
    require_zdf(algebra.quantale, "characters into the two-element quantale")
    return _characters(algebra, TWO)


def is_character(algebra, target, values):
    """Full homomorphism validation for one value table, including the derived
    scalar compatibility value(s * m) = value(s * id) . value(m)."""
    sr = algebra.semiring()
    tq = target
    if len(values) != sr.size:
        return False
    if values[sr.zero] != tq.bottom or values[sr.one] != tq.unit:
        return False
    for i in range(sr.size):
        if values[sr.star[i]] != tq.inv(values[i]):
            return False
        for j in range(sr.size):
            if values[sr.add[i][j]] != tq.join(values[i], values[j]):
                return False
            if values[sr.mul[i][j]] != tq.mul(values[i], values[j]):
                return False
    q = algebra.quantale
    from qspec.subalgebra import _e_scalar
    pos = algebra.member_pos
    for s in range(q.size):
        scaled_unit = values[pos[_e_scalar(q, s, algebra.members[sr.one])]]
        for i, m in enumerate(algebra.members):
            if values[pos[_e_scalar(q, s, m)]] != tq.mul(scaled_unit, values[i]):
                return False
    return True


# -- prime ideal enumeration -----------------------------------------------------


def prime_spectrum(algebra):
    """All proper prime k*-ideals.

    In a finite join-semilattice a k-ideal is exactly the down-set of its
    join, so candidates are down-sets of star-fixed members absorbed by the
    algebra's top; primality and properness are then checked directly.
    Prime-closed candidates that fail only properness are reported in the
    ``improper`` slot instead of being silently dropped.
    """
    sr = algebra.semiring()
    n = sr.size
    add, mul = sr.add, sr.mul

    def leq(i, j):
        return add[i][j] == j

    top = 0
    for i in range(n):
        top = add[top][i]
    points = []
    improper = []
    for m in range(n):
        if mul[m][top] != m:      # not absorbing, so the down-set is no ideal
            continue
        if sr.star[m] != m:       # not closed under the involution
            continue
        prime = True
        for s in range(n):
            if leq(s, m):
                continue
            for t in range(s, n):
                if not leq(t, m) and leq(mul[s][t], m):
                    prime = False
                    break
            if not prime:
                break
        if not prime:
            continue
        ideal_members = tuple(sorted(
            algebra.members[i] for i in range(n) if leq(i, m)))
        if leq(sr.one, m):
            improper.append(ideal_members)
            continue
        points.append(PrimeIdeal(algebra, ideal_members))
    member_order = algebra.members
    points.sort(key=lambda p: tuple(1 if mm in p.member_set else 0 for mm in member_order))
    return SpectrumSet(algebra, "prime", tuple(points), tuple(improper))


def is_prime_kstar_ideal(algebra, members):
    """Direct validation of one subset against the prime k*-ideal conditions."""
    from qspec.subalgebra import _e_compose, _e_dagger, _e_join, _identity_entries, _zero_entries
    q = algebra.quantale
    n = algebra.carrier.size
    s = frozenset(members)
    if not s <= algebra.member_set or _zero_entries(q, n) not in s:
        return False
    if _identity_entries(q, n) in s:
        return False
    for a in s:
        if _e_dagger(q, a) not in s:
            return False
        for b in s:
            if _e_join(q, a, b) not in s:
                return False
        for b in algebra.members:
            if _e_compose(q, a, b) not in s:
                return False
            joined = _e_join(q, a, b)
            if joined in s and b not in s:
                return False
    for a, b in itertools.combinations_with_replacement(algebra.members, 2):
        if _e_compose(q, a, b) in s and a not in s and b not in s:
            return False
    return True


# -- restriction along inclusions ---------------------------------------------------


def _check_inclusion(sub, sup):
    if sub.quantale != sup.quantale or sub.carrier != sup.carrier:
        raise ValueError("inclusion across different ambient objects")
    if not sub.member_set <= sup.member_set:
        raise ValueError("not an inclusion of algebras")


def restrict_character(rho, sub):
    """Restrict a character of the larger algebra to a subalgebra."""
    _check_inclusion(sub, rho.algebra)
    pos = rho.algebra.member_pos
    return Character(sub, rho.target,
                     tuple(rho.values[pos[m]] for m in sub.members))


def restrict_prime(ideal, sub):
    """Pull a prime ideal back along an inclusion (preimage, i.e. intersection)."""
    _check_inclusion(sub, ideal.algebra)
    return PrimeIdeal(sub, tuple(sorted(ideal.member_set & sub.member_set)))


def restrict_point(point, sub):
    if isinstance(point, Character):
        return restrict_character(point, sub)
    if isinstance(point, PrimeIdeal):
        return restrict_prime(point, sub)
    raise TypeError(f"not a spectrum point: {point!r}")


# -- comparison maps between the spectra ----------------------------------------------


def character_kernel(rho):
    """The prime ideal of members a character sends to bottom (ZDF scalars)."""
    require_zdf(rho.algebra.quantale, "the kernel comparison map")
    return PrimeIdeal(rho.algebra, tuple(sorted(rho.kernel_members())))


def character_from_prime(ideal):
    """The indicator character of a prime ideal's complement, valued in the
    scalar quantale through the unique embedding of the two-element quantale."""
    a = ideal.algebra
    require_zdf(a.quantale, "the indicator character of a prime ideal")
    q = a.quantale
    values = tuple(q.bottom if m in ideal.member_set else q.unit for m in a.members)
    return Character(a, q, values)


def character_from_two(gamma):
    """Post-compose a two-valued character with the unique quantale embedding
    of the two-element quantale into the scalars."""
    a = gamma.algebra
    require_zdf(a.quantale, "embedding a two-valued character")
    q = a.quantale
    embed = {TWO.bottom: q.bottom, TWO.unit: q.unit}
    return Character(a, q, tuple(embed[v] for v in gamma.values))
