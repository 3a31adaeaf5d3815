"""Invariant suites behind the CLI.

Each suite re-runs structural guarantees on the objects it is handed and
returns one result per named check; the CLI's exit status is the conjunction.
Randomized properties draw from a seeded generator so reports are reproducible.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from qspec.quantale import is_zdf, verify_quantale
from qspec.relations import (
    QRel, add, add_via_biproduct, carrier, compose, dagger, identity_rel,
    scalar_mul, scalar_mul_via_tensor, subset_idempotent, support, zero_rel,
)
from qspec.spectra import (
    character_from_prime, character_kernel, characters_to_two,
    gelfand_spectrum, prime_spectrum, restrict_character, restrict_prime,
)
from qspec.subalgebra import (
    commutant, is_von_neumann, primitive_idempotents, trivial_algebra,
    validate_decomposition, _e_compose, _e_join, _zero_entries,
)
from qspec.zariski import (
    all_ideals, check_continuity, kolmogorov_quotient, separation_report,
    vanishing_set_of_ideal, verify_quotient_xi, zariski_topology,
    closed_family_from_basis,
)


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: str = ""


def _ok(name, details=""):
    return CheckResult(name, True, details)


def _fail(name, details):
    return CheckResult(name, False, details)


def _verdict(name, passed, details_on_fail):
    return _ok(name) if passed else _fail(name, details_on_fail)


# -- quantale-level checks -----------------------------------------------------


def quantale_suite(q):
    out = []
    report = verify_quantale(q)
    out.append(_verdict("axioms", report.passed, f"violations: {report.violations}"))
    if not report.passed:
        return out
    report2 = verify_quantale(q)
    out.append(_verdict("verify-deterministic", report == report2,
                        "repeated verification differed"))
    n = q.size
    order_ok = all(q.leq(x, x) for x in range(n))
    order_ok &= all(not (q.leq(x, y) and q.leq(y, x)) or x == y
                    for x in range(n) for y in range(n))
    order_ok &= all(not (q.leq(x, y) and q.leq(y, z)) or q.leq(x, z)
                    for x in range(n) for y in range(n) for z in range(n))
    out.append(_verdict("order-partial-order", order_ok, "join order is not a partial order"))
    bounds = all(q.leq(q.bottom, x) and q.leq(x, q.top) for x in range(n))
    out.append(_verdict("order-bounds", bounds, "bottom/top do not bound the order"))
    if n <= 8:
        from qspec.quantale import endomorphisms
        homs = endomorphisms(q)
        maps = {h.mapping for h in homs}
        ident = tuple(range(n))
        closed = ident in maps and all(
            tuple(g.mapping[v] for v in h.mapping) in maps
            for g in homs for h in homs)
        out.append(_verdict("endomorphism-monoid", closed,
                            "endomorphisms not closed under composition"))
    return out


def relations_suite(q, seed, cases=300):
    rng = random.Random(seed)
    sizes = [1, 2, 3]

    def rand_rel(dom, cod):
        return QRel(q, dom, cod, tuple(
            tuple(rng.randrange(q.size) for _ in range(cod.size))
            for _ in range(dom.size)))

    conv = scal = dag = cat = mod = True
    for _ in range(cases):
        x = carrier("X", rng.choice(sizes))
        y = carrier("Y", rng.choice(sizes))
        z = carrier("Z", rng.choice(sizes))
        f, g = rand_rel(x, y), rand_rel(x, y)
        h, k = rand_rel(y, z), rand_rel(y, z)
        s, t = rng.randrange(q.size), rng.randrange(q.size)
        conv &= add(f, g) == add_via_biproduct(f, g)
        scal &= scalar_mul(s, f) == scalar_mul_via_tensor(s, f)
        dag &= dagger(compose(f, h)) == compose(dagger(h), dagger(f))
        dag &= dagger(dagger(f)) == f
        cat &= compose(f, identity_rel(q, y)) == f
        w = rand_rel(z, x)
        cat &= compose(compose(f, h), w) == compose(f, compose(h, w))
        # semimodule axioms for the scalar action
        mod &= scalar_mul(s, add(f, g)) == add(scalar_mul(s, f), scalar_mul(s, g))
        mod &= scalar_mul(q.mul(s, t), f) == scalar_mul(s, scalar_mul(t, f))
        mod &= scalar_mul(q.join(s, t), f) == add(scalar_mul(s, f), scalar_mul(t, f))
        mod &= scalar_mul(q.bottom, f) == zero_rel(q, x, y)
        mod &= scalar_mul(s, zero_rel(q, x, y)) == zero_rel(q, x, y)
        mod &= scalar_mul(q.unit, f) == f
    return [
        _verdict("convolution-oracle", conv, "pointwise join != biproduct composite"),
        _verdict("scalar-oracle", scal, "entrywise action != tensor composite"),
        _verdict("dagger-laws", dag, "dagger laws failed"),
        _verdict("category-laws", cat, "identity/associativity failed"),
        _verdict("semimodule-axioms", mod, "a semimodule axiom failed"),
    ]


# -- algebra-level checks ---------------------------------------------------------


def algebras_suite(poset, seed):
    out = []
    q = poset.quantale
    algebras = poset.algebras
    flags = all(a.is_unital and a.is_star_closed and a.is_commutative and a.is_closed()
                for a in algebras)
    out.append(_verdict("closure-flags", flags, "an algebra misses a closure flag"))
    out.append(_verdict("von-neumann", all(is_von_neumann(a) for a in algebras),
                        "an algebra differs from its double commutant"))
    triv = trivial_algebra(poset.carrier, q)
    included = (poset.index_of(triv) is not None
                and all(triv.member_set <= a.member_set for a in algebras))
    out.append(_verdict("trivial-included", included,
                        "the trivial algebra is not below every object"))
    joins_ok = True
    for a in algebras:
        if a.size <= 10:
            subsets = itertools.chain.from_iterable(
                itertools.combinations(a.members, r) for r in range(a.size + 1))
        else:
            rng = random.Random(seed)
            subsets = [tuple(rng.sample(a.members, rng.randint(0, a.size)))
                       for _ in range(200)]
        for sub in subsets:
            acc = _zero_entries(q, a.carrier.size)
            for m in sub:
                acc = _e_join(q, acc, m)
            if acc not in a.member_set:
                joins_ok = False
                break
    out.append(_verdict("join-closure-subsets", joins_ok,
                        "a subset join escaped its algebra"))
    if is_zdf(q):
        supp_ok = True
        for a in algebras:
            for m in a.members:
                pts = support(QRel(q, a.carrier, a.carrier, m)).supp
                if subset_idempotent(q, a.carrier, pts).entries not in a.member_set:
                    supp_ok = False
        out.append(_verdict("support-projections", supp_ok,
                            "a support projection escaped its algebra"))
        failures = []
        for i, a in enumerate(algebras):
            failures += [f"A{i}: {msg}" for msg in
                         validate_decomposition(primitive_idempotents(a))]
        out.append(_verdict("decomposition", not failures, "; ".join(failures[:5])))
    rng = random.Random(seed)
    hom = list(poset.algebras[-1].relations())  # largest algebra as a sample pool
    triple_ok = mono_ok = True
    for _ in range(5):
        sample = rng.sample(hom, min(len(hom), rng.randint(1, 3)))
        c1 = commutant(poset.carrier, sample, q)
        c2 = commutant(poset.carrier, c1.relations(), q)
        c3 = commutant(poset.carrier, c2.relations(), q)
        triple_ok &= c3.member_set == c1.member_set
        bigger = sample + [rng.choice(hom)]
        cb = commutant(poset.carrier, bigger, q)
        mono_ok &= cb.member_set <= c1.member_set
    out.append(_verdict("triple-commutant", triple_ok, "B''' != B' on a sample"))
    out.append(_verdict("commutant-antitone", mono_ok, "commutant failed to reverse inclusion"))
    return out


# -- spectra-level checks -------------------------------------------------------------


def spectra_suite(poset):
    out = []
    q = poset.quantale
    algebras = poset.algebras
    gelfands = [gelfand_spectrum(a) for a in algebras]
    primes = [prime_spectrum(a) for a in algebras]
    if is_zdf(q):
        bij = roundtrip = one_idem = True
        for a, pr in zip(algebras, primes):
            gammas = characters_to_two(a)
            kernels = sorted(character_kernel(g).members for g in gammas)
            if kernels != sorted(p.members for p in pr.points):
                bij = False
            if len({tuple(k) for k in kernels}) != len(gammas):
                bij = False
            dec = primitive_idempotents(a)
            for g in gammas:
                hits = [e for e in dec.idempotents
                        if g.value_of(e.entries) == g.target.unit]
                if len(hits) != 1:
                    one_idem = False
            for p in pr.points:
                if character_kernel(character_from_prime(p)).members != p.members:
                    roundtrip = False
        out.append(_verdict("kernel-bijection", bij,
                            "two-valued characters do not biject with the prime points"))
        out.append(_verdict("one-idempotent-per-character", one_idem,
                            "a two-valued character hits != 1 primitive idempotent"))
        out.append(_verdict("kernel-section-identity", roundtrip,
                            "kernel of an indicator character is not the ideal"))
        natural = True
        for (i, j) in poset.inclusions():
            sub, sup = algebras[i], algebras[j]
            for rho in gelfands[j].points:
                lhs = character_kernel(restrict_character(rho, sub))
                rhs = restrict_prime(character_kernel(rho), sub)
                natural &= lhs.members == rhs.members
            for p in primes[j].points:
                lhs = restrict_character(character_from_prime(p), sub)
                rhs = character_from_prime(restrict_prime(p, sub))
                natural &= lhs.values == rhs.values
        out.append(_verdict("comparison-naturality", natural,
                            "a kernel/indicator naturality square failed"))
        if q.size == 2:
            coincide = all(
                len({character_kernel(rho).members for rho in g.points}) == g.size
                and g.size == p.size
                for g, p in zip(gelfands, primes))
            out.append(_verdict("two-spectra-coincide", coincide,
                                "kernel map is not a bijection over the two-element quantale"))
    functorial = True
    incl = poset.inclusions()
    for (i, j) in incl:
        for (j2, k) in incl:
            if j2 != j or (i, k) not in set(incl):
                continue
            for rho in gelfands[k].points:
                step = restrict_character(restrict_character(rho, algebras[j]), algebras[i])
                functorial &= step == restrict_character(rho, algebras[i])
            for p in primes[k].points:
                step = restrict_prime(restrict_prime(p, algebras[j]), algebras[i])
                functorial &= step == restrict_prime(p, algebras[i])
    out.append(_verdict("restriction-functorial", functorial,
                        "restriction along a composite differs from the composite"))
    return out


# -- topology-level checks --------------------------------------------------------------


def topology_suite(poset):
    out = []
    q = poset.quantale
    algebras = poset.algebras
    primes = [prime_spectrum(a) for a in algebras]
    gelfands = [gelfand_spectrum(a) for a in algebras]
    if is_zdf(q):
        t0_ok = compact_ok = True
        for a, pr in zip(algebras, primes):
            rep = separation_report(zariski_topology(a, "prime", pr))
            t0_ok &= rep.t0
            compact_ok &= rep.compact
        out.append(_verdict("prime-t0", t0_ok, "a prime-side topology is not T0"))
        out.append(_verdict("prime-compact", compact_ok, "a prime-side topology is not compact"))
        quot = all(verify_quotient_xi(a, g, p)
                   for a, g, p in zip(algebras, gelfands, primes))
        out.append(_verdict("quotient-comparison", quot,
                            "kernel map is not the Kolmogorov quotient somewhere"))
    cont = True
    for (i, j) in poset.hasse:
        cont &= check_continuity(algebras[i], algebras[j], "prime",
                                 primes[i], primes[j])
        cont &= check_continuity(algebras[i], algebras[j], "gelfand",
                                 gelfands[i], gelfands[j])
    out.append(_verdict("restriction-continuity", cont,
                        "a restriction map is not continuous"))
    idem_ok = True
    for a, g in zip(algebras, gelfands):
        t = zariski_topology(a, "gelfand", g)
        t1, _ = kolmogorov_quotient(t)
        t2, m2 = kolmogorov_quotient(t1)
        idem_ok &= separation_report(t1).t0
        idem_ok &= t2.size == t1.size and list(m2) == list(range(t1.size))
        idem_ok &= len(t2.closed_sets) == len(t1.closed_sets)
    out.append(_verdict("kolmogorov-idempotent", idem_ok,
                        "quotienting twice changed the space"))
    basis_ok = True
    for a, pr in zip(algebras, primes):
        if a.size > 9:
            continue
        principal = zariski_topology(a, "prime", pr)
        ideal_basis = [vanishing_set_of_ideal(pr, j) for j in all_ideals(a)]
        from_all = closed_family_from_basis(range(pr.size), ideal_basis)
        basis_ok &= from_all.closed_sets == principal.closed_sets
    out.append(_verdict("principal-basis-oracle", basis_ok,
                        "principal ideals generate a different family than all ideals"))
    return out
