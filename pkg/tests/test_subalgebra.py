"""Closure, commutants, von Neumann enumeration, and the idempotent split."""

import itertools
import random

import pytest

from qspec.quantale import ZdfRequiredError, builtin_quantale
from qspec.relations import (
    QRel, add, all_relations, carrier, compose, dagger, identity_rel, rel,
    scalar_mul, subset_idempotent, support, zero_rel,
)
from qspec.subalgebra import (
    EnumerationBoundExceeded, Subsemialgebra, close, commutant,
    diagonal_algebra, direct_sum, enumerate_vn, is_von_neumann,
    primitive_idempotents, restrict_component, subunital_idempotents,
    trivial_algebra,
)

BOOL2 = builtin_quantale("boolean2")
GODEL3 = builtin_quantale("godel_chain", 3)
LUK3 = builtin_quantale("lukasiewicz_chain", 3)
X2 = carrier("X", 2)


# -- independent oracles -----------------------------------------------------------


def oracle_closure(x, gens, q):
    """Fixed-point closure written directly against the relation operations."""
    members = {zero_rel(q, x, x).entries, identity_rel(q, x).entries}
    members |= {g.entries for g in gens}

    def as_rel(e):
        return QRel(q, x, x, e)

    changed = True
    while changed:
        changed = False
        snapshot = list(members)
        for a in snapshot:
            new = [dagger(as_rel(a)).entries]
            new += [scalar_mul(s, as_rel(a)).entries for s in range(q.size)]
            for b in snapshot:
                new.append(add(as_rel(a), as_rel(b)).entries)
                new.append(compose(as_rel(a), as_rel(b)).entries)
                new.append(compose(as_rel(b), as_rel(a)).entries)
            for e in new:
                if e not in members:
                    members.add(e)
                    changed = True
    return members


def oracle_commutant(x, rels, q):
    out = set()
    for cand in all_relations(q, x, x):
        if all(compose(cand, g) == compose(g, cand) for g in rels):
            out.add(cand.entries)
    return out


def oracle_is_vn(a):
    first = oracle_commutant(a.carrier, a.relations(), a.quantale)
    rels = [QRel(a.quantale, a.carrier, a.carrier, e) for e in first]
    second = oracle_commutant(a.carrier, rels, a.quantale)
    return second == a.member_set


def oracle_enumerate_boolean2_x2():
    """Literal subset scan over all 2^16 subsets of Hom(X, X)."""
    q = BOOL2
    els = [r.entries for r in all_relations(q, X2, X2)]
    zero = zero_rel(q, X2, X2).entries
    ident = identity_rel(q, X2).entries
    found = []
    for bits in range(1 << 16):
        sub = [els[i] for i in range(16) if bits >> i & 1]
        s = set(sub)
        if zero not in s or ident not in s:
            continue
        algebra = Subsemialgebra.from_entries(q, X2, s)
        if not (algebra.is_closed() and algebra.is_commutative
                and algebra.is_star_closed):
            continue
        if oracle_is_vn(algebra):
            found.append(algebra.members)
    return sorted(found)


def e1_rel():
    return rel(BOOL2, X2, X2, {("1", "1"): "1"})


# -- closure -------------------------------------------------------------------------


def test_close_empty_is_scalar_multiples():
    for q in (BOOL2, GODEL3):
        a = close(X2, [], q)
        expected = {scalar_mul(s, identity_rel(q, X2)).entries for s in range(q.size)}
        assert a.member_set == expected
        assert close(X2, [identity_rel(q, X2)]).member_set == expected


def test_close_single_idempotent_boolean():
    a = close(X2, [e1_rel()])
    assert a.member_set == oracle_closure(X2, [e1_rel()], BOOL2)
    assert a.size == 3  # zero, the one-point idempotent, and the identity


def test_close_matches_oracle_on_random_generators():
    rng = random.Random(17)
    rels = list(all_relations(GODEL3, X2, X2))
    for _ in range(10):
        gens = rng.sample(rels, 2)
        assert close(X2, gens).member_set == oracle_closure(X2, gens, GODEL3)


def test_closed_algebra_flags():
    a = close(X2, [e1_rel()])
    assert a.is_unital and a.is_star_closed and a.is_closed()


# -- commutants ------------------------------------------------------------------------


def test_commutant_of_empty_set_is_everything():
    c = commutant(X2, [], BOOL2)
    assert c.size == 16


def test_commutant_of_everything_is_the_scalars():
    full = list(all_relations(BOOL2, X2, X2))
    center = commutant(X2, full)
    assert center.member_set == {zero_rel(BOOL2, X2, X2).entries,
                                 identity_rel(BOOL2, X2).entries}


def test_commutant_laws_on_random_sets():
    rng = random.Random(29)
    rels = list(all_relations(GODEL3, X2, X2))
    for _ in range(6):
        sample = rng.sample(rels, rng.randint(1, 3))
        c1 = commutant(X2, sample)
        c2 = commutant(X2, c1.relations())
        c3 = commutant(X2, c2.relations())
        assert {r.entries for r in sample} <= c2.member_set
        assert c3.member_set == c1.member_set
        bigger = sample + [rng.choice(rels)]
        assert commutant(X2, bigger).member_set <= c1.member_set


def test_is_von_neumann():
    assert is_von_neumann(trivial_algebra(X2, BOOL2))
    assert is_von_neumann(diagonal_algebra(X2, BOOL2))
    assert not is_von_neumann(close(X2, [e1_rel()]))


# -- enumeration -------------------------------------------------------------------------


def test_enumerate_single_point_carrier():
    x1 = carrier("X", 1)
    poset = enumerate_vn(x1, BOOL2)
    assert len(poset.algebras) == 1
    assert poset.algebras[0].member_set == {((0,),), ((1,),)}


def test_enumerate_boolean2_x2_matches_subset_scan_oracle():
    poset = enumerate_vn(X2, BOOL2)
    assert sorted(a.members for a in poset.algebras) == oracle_enumerate_boolean2_x2()


def test_enumerate_godel3_x2_self_checks():
    poset = enumerate_vn(X2, GODEL3)
    members_seen = set()
    for a in poset.algebras:
        assert a.members not in members_seen
        members_seen.add(a.members)
        assert a.is_unital and a.is_star_closed and a.is_commutative
        assert a.is_closed()
        assert oracle_is_vn(a)
    assert poset.trivial_index is not None
    assert poset.diagonal_index is not None
    triv = poset.algebras[poset.trivial_index]
    assert all(triv.member_set <= a.member_set for a in poset.algebras)


def test_poset_order_and_hasse():
    poset = enumerate_vn(X2, BOOL2)
    n = len(poset.algebras)
    for i in range(n):
        for j in range(n):
            included = poset.algebras[i].member_set <= poset.algebras[j].member_set
            assert ((i, j) in poset.leq_pairs) == included
    proper = {(i, j) for (i, j) in poset.leq_pairs if i != j}
    reduction = {(i, j) for (i, j) in proper
                 if not any((i, k) in proper and (k, j) in proper for k in range(n))}
    assert set(poset.hasse) == reduction


def test_generated_mode_is_a_sound_subset():
    exhaustive = {a.members for a in enumerate_vn(X2, GODEL3).algebras}
    generated = enumerate_vn(X2, GODEL3, "generated", 2)
    got = {a.members for a in generated.algebras}
    assert got <= exhaustive
    assert not generated.complete
    assert generated.algebras[generated.trivial_index].members in got
    assert generated.algebras[generated.diagonal_index].members in got
    for a in generated.algebras:
        assert a.is_commutative and a.is_star_closed and is_von_neumann(a)


def test_enumeration_bound(monkeypatch):
    monkeypatch.setenv("QSPEC_MAX_HOM_SIZE", "10")
    import qspec.subalgebra as sub
    sub._space_cache.clear()
    with pytest.raises(EnumerationBoundExceeded):
        enumerate_vn(X2, BOOL2)
    monkeypatch.delenv("QSPEC_MAX_HOM_SIZE")
    sub._space_cache.clear()


def test_poset_exports():
    poset = enumerate_vn(X2, BOOL2)
    js = poset.to_json()
    assert js["complete"] is True
    assert len(js["algebras"]) == len(poset.algebras)
    dot = poset.to_dot()
    assert dot.startswith("digraph") and "->" in dot


# -- decomposition ----------------------------------------------------------------------


def oracle_check_decomposition(a, dec):
    q = a.quantale
    zero = zero_rel(q, a.carrier, a.carrier)
    ident = identity_rel(q, a.carrier)
    es = dec.idempotents
    for e in es:
        assert compose(e, e) == e
        assert e.entries in a.member_set
    for e, f in itertools.combinations(es, 2):
        assert compose(e, f) == zero
    total = zero
    for e in es:
        total = add(total, e)
    assert total == ident
    # primitivity against the subunital idempotents of the algebra itself
    subs = [s for s in subunital_idempotents(a) if s != zero.entries]
    for e in es:
        for s, t in itertools.combinations(subs, 2):
            if s != e.entries and t != e.entries:
                joined = add(QRel(q, a.carrier, a.carrier, s),
                             QRel(q, a.carrier, a.carrier, t))
                assert joined.entries != e.entries
    # the member -> component-tuple map is a bijection onto the product
    images = {tuple(compose(e, QRel(q, a.carrier, a.carrier, m)).entries for e in es)
              for m in a.members}
    assert len(images) == len(a.members)
    count = 1
    for comp in dec.components:
        count *= len(comp)
    assert count == len(a.members)
    for combo in itertools.product(*dec.components):
        rebuilt = zero
        for part in combo:
            rebuilt = add(rebuilt, QRel(q, a.carrier, a.carrier, part))
        assert rebuilt.entries in a.member_set
        for e, part in zip(es, combo):
            assert compose(e, rebuilt).entries == part


def test_decomposition_trivial_algebra():
    dec = primitive_idempotents(trivial_algebra(X2, BOOL2))
    assert len(dec.idempotents) == 1
    assert dec.idempotents[0] == identity_rel(BOOL2, X2)


def test_decomposition_diagonal_boolean():
    dec = primitive_idempotents(diagonal_algebra(X2, BOOL2))
    assert len(dec.idempotents) == 2
    assert {support(e).supp for e in dec.idempotents} == {("1",), ("2",)}
    oracle_check_decomposition(dec.algebra, dec)


def test_decomposition_every_enumerated_algebra():
    for q in (BOOL2, GODEL3):
        for a in enumerate_vn(X2, q).algebras:
            oracle_check_decomposition(a, primitive_idempotents(a))


def test_decomposition_on_a_longer_chain():
    godel4 = builtin_quantale("godel_chain", 4)
    poset = enumerate_vn(X2, godel4)
    assert poset.diagonal_index is not None
    for a in poset.algebras:
        oracle_check_decomposition(a, primitive_idempotents(a))


def test_space_closure_agrees_with_direct_closure():
    from qspec.subalgebra import get_endospace
    space = get_endospace(GODEL3, X2)
    rng = random.Random(41)
    for _ in range(8):
        idxs = rng.sample(range(space.size), 2)
        via_space = {space.elements[i] for i in space.bits(space.close_mask(idxs))}
        gens = [QRel(GODEL3, X2, X2, space.elements[i]) for i in idxs]
        assert via_space == close(X2, gens).member_set


def test_decomposition_requires_zdf_and_von_neumann():
    with pytest.raises(ZdfRequiredError):
        primitive_idempotents(trivial_algebra(X2, LUK3))
    with pytest.raises(ValueError, match="von Neumann"):
        primitive_idempotents(close(X2, [e1_rel()]))


def test_support_projections_stay_inside():
    for q in (BOOL2, GODEL3):
        for a in enumerate_vn(X2, q).algebras:
            for m in a.members:
                f = QRel(q, a.carrier, a.carrier, m)
                proj = subset_idempotent(q, a.carrier, support(f).supp)
                assert proj.entries in a.member_set


def test_trivial_algebra_godel():
    t = trivial_algebra(X2, GODEL3)
    assert t.size == 3
    assert is_von_neumann(t)


# -- direct sums and restriction -----------------------------------------------------------


def test_direct_sum_of_trivial_algebras():
    a1, b1 = carrier("A", 1), carrier("B", 1)
    s = direct_sum(trivial_algebra(a1, BOOL2), trivial_algebra(b1, BOOL2))
    assert s.size == 4
    assert s.member_set == diagonal_algebra(s.carrier, BOOL2).member_set
    assert oracle_is_vn(s)


def test_direct_sum_godel_is_von_neumann():
    a1, b1 = carrier("A", 1), carrier("B", 1)
    s = direct_sum(trivial_algebra(a1, GODEL3), trivial_algebra(b1, GODEL3))
    assert s.size == 9
    assert oracle_is_vn(s)


def test_restrict_component_round_trip():
    a1, b1 = carrier("A", 1), carrier("B", 1)
    left = trivial_algebra(a1, GODEL3)
    s = direct_sum(left, trivial_algebra(b1, GODEL3))
    e_left = subset_idempotent(GODEL3, s.carrier, [(0, "1")])
    r = restrict_component(s, e_left)
    assert r.carrier.elements == ((0, "1"),)
    assert sorted(r.members) == sorted(left.members)
    assert oracle_is_vn(r)
    assert identity_rel(GODEL3, r.carrier).entries in r.member_set


def test_restrict_component_rejects_bad_idempotents():
    d = diagonal_algebra(X2, GODEL3)
    bad = QRel(GODEL3, X2, X2, ((1, 0), (0, 0)))  # diagonal but not unit-valued
    with pytest.raises(ValueError):
        restrict_component(d, bad)


def test_mixed_ambients_are_rejected():
    from qspec.subalgebra import MixedAmbientError
    with pytest.raises(MixedAmbientError):
        close(X2, [])  # no generators and no quantale to infer from
    with pytest.raises(MixedAmbientError):
        close(X2, [identity_rel(BOOL2, X2), identity_rel(GODEL3, X2)])
    with pytest.raises(MixedAmbientError):
        close(X2, [identity_rel(BOOL2, carrier("Y", 2))])
    with pytest.raises(MixedAmbientError):
        direct_sum(trivial_algebra(carrier("A", 1), BOOL2),
                   trivial_algebra(carrier("B", 1), GODEL3))


def test_generated_mode_with_one_generator():
    poset = enumerate_vn(X2, BOOL2, "generated", 1)
    exhaustive = {a.members for a in enumerate_vn(X2, BOOL2).algebras}
    assert {a.members for a in poset.algebras} <= exhaustive
    assert poset.diagonal_index is not None
    assert poset.trivial_index is not None


def test_three_point_carrier_exhaustive_contains_generated():
    from qspec.spectra import character_kernel, characters_to_two, prime_spectrum
    from qspec.subalgebra import validate_decomposition
    x3 = carrier("X", 3)
    exhaustive = enumerate_vn(x3, BOOL2)
    generated = enumerate_vn(x3, BOOL2, "generated", 2)
    exh = {a.members for a in exhaustive.algebras}
    assert {a.members for a in generated.algebras} < exh
    assert exhaustive.complete and not generated.complete
    for a in exhaustive.algebras:
        assert not validate_decomposition(primitive_idempotents(a))
        kers = sorted(character_kernel(g).members for g in characters_to_two(a))
        assert kers == sorted(p.members for p in prime_spectrum(a).points)
