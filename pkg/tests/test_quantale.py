"""Quantale loading, axiom checking, built-ins and endomorphisms."""

import itertools

import pytest

from qspec.quantale import (
    QuantaleError, builtin_quantale, endomorphisms, is_zdf, load_quantale,
    parse_quantale_tag, quantale_to_doc, verify_quantale, zdf_witness,
)

BOOL2 = builtin_quantale("boolean2")
GODEL3 = builtin_quantale("godel_chain", 3)
LUK3 = builtin_quantale("lukasiewicz_chain", 3)


def godel3_doc():
    return {
        "name": "g3",
        "elements": ["0", "a", "1"],
        "join": [["0", "a", "1"], ["a", "a", "1"], ["1", "1", "1"]],
        "mul": [["0", "0", "0"], ["0", "a", "a"], ["0", "a", "1"]],
        "unit": "1",
    }


# -- independent oracle: filter all maps directly against the preservation laws


def brute_force_endos(q):
    n = q.size
    out = []
    for image in itertools.product(range(n), repeat=n):
        if image[q.bottom] != q.bottom or image[q.unit] != q.unit:
            continue
        if any(image[q.inv(x)] != q.inv(image[x]) for x in range(n)):
            continue
        if all(image[q.join(x, y)] == q.join(image[x], image[y])
               and image[q.mul(x, y)] == q.mul(image[x], image[y])
               for x in range(n) for y in range(n)):
            out.append(image)
    return sorted(out)


def test_builtins_pass_axioms():
    quantales = [BOOL2, LUK3, GODEL3,
                 builtin_quantale("godel_chain", 4),
                 builtin_quantale("godel_chain", 5),
                 builtin_quantale("lukasiewicz_chain", 4),
                 builtin_quantale("lukasiewicz_chain", 5),
                 builtin_quantale("powerset", 1),
                 builtin_quantale("powerset", 2),
                 builtin_quantale("powerset", 3)]
    for q in quantales:
        report = verify_quantale(q)
        assert report.passed, (q.name, report.violations)


def test_load_then_verify_splits_concerns():
    doc = godel3_doc()
    doc["join"][1][1] = "1"  # join(a, a) = 1 breaks idempotence but still loads
    q = load_quantale(doc)
    report = verify_quantale(q)
    assert not report.passed
    assert ("join-idempotent", ("a",)) in report.violations


def test_load_errors():
    with pytest.raises(QuantaleError):
        load_quantale({"name": "x", "elements": ["0"]})
    bad_arity = godel3_doc()
    bad_arity["mul"] = bad_arity["mul"][:2]
    with pytest.raises(QuantaleError, match="arity"):
        load_quantale(bad_arity)
    bad_id = godel3_doc()
    bad_id["join"][0][0] = "zz"
    with pytest.raises(QuantaleError, match="unknown element"):
        load_quantale(bad_id)
    dup = godel3_doc()
    dup["elements"] = ["0", "0", "1"]
    with pytest.raises(QuantaleError):
        load_quantale(dup)


def test_derived_fields():
    q = load_quantale(godel3_doc())
    assert q.elements[q.bottom] == "0"
    assert q.elements[q.top] == "1"
    assert q.leq(q.index("0"), q.index("a"))
    assert q.leq(q.index("a"), q.index("1"))
    assert not q.leq(q.index("1"), q.index("a"))


def test_document_round_trip_is_exact():
    doc = godel3_doc()
    assert quantale_to_doc(load_quantale(doc)) == doc
    doc["involution"] = ["0", "a", "1"]
    assert quantale_to_doc(load_quantale(doc)) == doc


def test_nontrivial_involution_round_trip_and_axioms():
    doc = {
        "name": "swap",
        "elements": ["{}", "{1}", "{2}", "{1,2}"],
        "join": [["{}", "{1}", "{2}", "{1,2}"],
                 ["{1}", "{1}", "{1,2}", "{1,2}"],
                 ["{2}", "{1,2}", "{2}", "{1,2}"],
                 ["{1,2}", "{1,2}", "{1,2}", "{1,2}"]],
        "mul": [["{}", "{}", "{}", "{}"],
                ["{}", "{1}", "{}", "{1}"],
                ["{}", "{}", "{2}", "{2}"],
                ["{}", "{1}", "{2}", "{1,2}"]],
        "unit": "{1,2}",
        "involution": ["{}", "{2}", "{1}", "{1,2}"],
    }
    q = load_quantale(doc)
    assert verify_quantale(q).passed
    assert quantale_to_doc(q) == doc


def test_distributivity_violation_found_by_table_search():
    # Search all commutative unital multiplications on the 3-chain that keep
    # bottom absorbing, and pick one that is not monotone; the checker must
    # flag exactly distributivity.
    join = [[max(i, j) for j in range(3)] for i in range(3)]
    found = None
    for m11 in range(3):
        mul = [[0, 0, 0], [0, m11, 1], [0, 1, 2]]
        assoc = all(mul[x][mul[y][z]] == mul[mul[x][y]][z]
                    for x in range(3) for y in range(3) for z in range(3))
        distributes = all(mul[x][join[y][z]] == join[mul[x][y]][mul[x][z]]
                          for x in range(3) for y in range(3) for z in range(3))
        if assoc and not distributes:
            found = mul
            break
    assert found is not None
    ids = ["0", "a", "1"]
    doc = {
        "name": "bad",
        "elements": ids,
        "join": [[ids[v] for v in row] for row in join],
        "mul": [[ids[v] for v in row] for row in found],
        "unit": "1",
    }
    report = verify_quantale(load_quantale(doc))
    assert not report.passed
    assert {name for name, _ in report.violations} == {"distributivity"}


def test_multiple_violations_each_get_a_witness():
    doc = godel3_doc()
    doc["join"][1][1] = "1"       # breaks idempotence at a
    doc["mul"][1][1] = "1"        # breaks monotonicity, hence distributivity
    report = verify_quantale(load_quantale(doc))
    names = {name for name, _ in report.violations}
    assert "join-idempotent" in names
    assert len(report.violations) >= 2
    assert all(len(w) >= 0 for _, w in report.violations)


def test_zdf():
    assert is_zdf(BOOL2)
    for n in (3, 4, 5):
        assert is_zdf(builtin_quantale("godel_chain", n))
        assert not is_zdf(builtin_quantale("lukasiewicz_chain", n))
    assert is_zdf(builtin_quantale("powerset", 1))
    assert not is_zdf(builtin_quantale("powerset", 2))
    assert not is_zdf(builtin_quantale("powerset", 3))
    assert zdf_witness(LUK3) == ("1/2", "1/2")
    assert zdf_witness(builtin_quantale("powerset", 2)) == ("{1}", "{2}")


def test_powerset_shape():
    p2 = builtin_quantale("powerset", 2)
    assert p2.size == 4
    assert p2.elements[p2.unit] == "{1,2}"
    assert p2.elements[p2.bottom] == "{}"


def test_endomorphisms_against_brute_force():
    for q in (BOOL2, GODEL3, LUK3, builtin_quantale("powerset", 2)):
        assert [h.mapping for h in endomorphisms(q)] == brute_force_endos(q)


def test_endomorphism_structure():
    # boolean2 admits only the identity; the 3-chain admits exactly the three
    # maps sending the middle element down, nowhere, or up.
    assert [h.mapping for h in endomorphisms(BOOL2)] == [(0, 1)]
    a = GODEL3.index("a")
    images = sorted(h.mapping[a] for h in endomorphisms(GODEL3))
    assert images == [GODEL3.index("0"), GODEL3.index("a"), GODEL3.index("1")]
    assert len(endomorphisms(LUK3)) == 2


def test_endomorphism_monoid_closure():
    for q in (BOOL2, GODEL3, LUK3):
        homs = endomorphisms(q)
        maps = {h.mapping for h in homs}
        assert tuple(range(q.size)) in maps
        for g in homs:
            for h in homs:
                assert h.compose(g).mapping in maps
        for h in homs:
            assert h.is_valid()


def test_order_is_partial_order_with_bounds():
    for q in (BOOL2, GODEL3, LUK3, builtin_quantale("powerset", 3)):
        n = q.size
        for x in range(n):
            assert q.leq(x, x)
            assert q.leq(q.bottom, x) and q.leq(x, q.top)
            for y in range(n):
                if q.leq(x, y) and q.leq(y, x):
                    assert x == y
                for z in range(n):
                    if q.leq(x, y) and q.leq(y, z):
                        assert q.leq(x, z)


def test_verify_is_deterministic():
    assert verify_quantale(GODEL3) == verify_quantale(GODEL3)


def test_two_embedding_is_the_only_map_out_of_two():
    from qspec.quantale import rig_homs, two_embedding
    two = builtin_quantale("boolean2")
    for q in (BOOL2, GODEL3, LUK3, builtin_quantale("powerset", 2)):
        emb = two_embedding(q)
        assert emb.is_valid()
        assert [h.mapping for h in rig_homs(two, q)] == [emb.mapping]


def test_zdf_collapse_exists_exactly_for_zdf_quantales():
    from qspec.quantale import ZdfRequiredError, rig_homs, zdf_collapse, two_embedding
    two = builtin_quantale("boolean2")
    for q in (BOOL2, GODEL3, builtin_quantale("godel_chain", 4)):
        w = zdf_collapse(q)
        assert w.is_valid()
        assert w.mapping in {h.mapping for h in rig_homs(q, two)}
        # collapsing after embedding is the identity on the two elements
        assert w.compose(two_embedding(q)).mapping == (0, 1)
    with pytest.raises(ZdfRequiredError):
        zdf_collapse(LUK3)
    # and indeed no valid map can send all non-bottom elements to the unit
    bad = tuple(0 if i == LUK3.bottom else 1 for i in range(LUK3.size))
    from qspec.quantale import RigHom
    assert not RigHom(LUK3, two, bad).is_valid()


def test_parse_quantale_tag():
    assert parse_quantale_tag("boolean2").name == "boolean2"
    assert parse_quantale_tag("godel3").size == 3
    assert parse_quantale_tag("godel_chain(4)").size == 4
    assert parse_quantale_tag("lukasiewicz3").name == "lukasiewicz3"
    assert parse_quantale_tag("powerset2").size == 4
    with pytest.raises(QuantaleError):
        parse_quantale_tag("frobenius9")
    with pytest.raises(QuantaleError):
        builtin_quantale("godel_chain", 1)
