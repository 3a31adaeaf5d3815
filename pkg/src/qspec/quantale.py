"""Finite involutive commutative quantales given by explicit operation tables.

A quantale here is a finite join-semilattice with a least element together
with a commutative monoid multiplication that distributes over joins.  Being
finite, it doubles as a *-semiring: addition is the join, zero is the bottom
element.  All downstream machinery (relations, subalgebras, spectra) is
parametrised by one of these.
"""

from __future__ import annotations

import itertools
import json
import re
import string
from dataclasses import dataclass
from fractions import Fraction

from qspec._homsearch import TableSemiring, enumerate_homs


class QuantaleError(ValueError):
    """Malformed quantale document or foreign-element lookup."""


class ZdfRequiredError(ValueError):
    """An operation needed a zero-divisor-free quantale and did not get one."""


class Quantale:
    """Finite involutive commutative quantale.

    Elements are addressed by index into ``elements``; the element order is
    the document order and fixes every enumeration downstream.  Loading does
    not assume the axioms hold: run :func:`verify_quantale` for that.
    """

    def __init__(self, name, elements, join_table, mul_table, unit,
                 involution=None, involution_explicit=None):
        self.name = name
        self.elements = tuple(elements)
        self._index = {e: i for i, e in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise QuantaleError("duplicate element ids")
        self.join_table = tuple(tuple(row) for row in join_table)
        self.mul_table = tuple(tuple(row) for row in mul_table)
        self.unit = unit
        if involution is None:
            involution = tuple(range(len(self.elements)))
            if involution_explicit is None:
                involution_explicit = False
        elif involution_explicit is None:
            involution_explicit = True
        self.involution = tuple(involution)
        self.involution_explicit = involution_explicit
        self.bottom = self._find_bottom()
        self.top = self._fold_join()

    # -- construction helpers -------------------------------------------------

    def _find_bottom(self):
        n = len(self.elements)
        for b in range(n):
            if all(self.join_table[b][x] == x for x in range(n)):
                return b
        return None

    def _fold_join(self):
        acc = 0
        for x in range(1, len(self.elements)):
            acc = self.join_table[acc][x]
        return acc

    # -- basic accessors -------------------------------------------------------

    @property
    def size(self):
        return len(self.elements)

    def index(self, element_id):
        try:
            return self._index[element_id]
        except KeyError:
            raise QuantaleError(f"unknown element id {element_id!r} in quantale {self.name!r}") from None

    def join(self, i, j):
        return self.join_table[i][j]

    def mul(self, i, j):
        return self.mul_table[i][j]

    def inv(self, i):
        return self.involution[i]

    def leq(self, i, j):
        return self.join_table[i][j] == j

    def join_all(self, indices):
        acc = self.bottom
        for i in indices:
            acc = self.join_table[acc][i] if acc is not None else i
        return acc

    @property
    def fingerprint(self):
        fp = self.__dict__.get("_fingerprint")
        if fp is None:
            fp = (self.name, self.elements, self.join_table, self.mul_table,
                  self.unit, self.involution)
            self.__dict__["_fingerprint"] = fp
        return fp

    def __eq__(self, other):
        return isinstance(other, Quantale) and self.fingerprint == other.fingerprint

    def __hash__(self):
        return hash(self.fingerprint)

    def __repr__(self):
        return f"Quantale({self.name!r}, {self.size} elements)"

    def semiring(self):
        """The element-indexed *-semiring table view (join as addition)."""
        return TableSemiring(
            size=self.size,
            add=self.join_table,
            mul=self.mul_table,
            star=self.involution,
            zero=self.bottom,
            one=self.unit,
        )


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of the exhaustive quantale axiom check."""

    passed: bool
    violations: tuple

    def __post_init__(self):
        assert self.passed == (len(self.violations) == 0)


@dataclass(frozen=True)
class RigHom:
    """A map of quantales preserving join, bottom, multiplication, unit and involution."""

    source: Quantale
    target: Quantale
    mapping: tuple

    def apply(self, i):
        return self.mapping[i]

    def is_valid(self):
        s, t, f = self.source, self.target, self.mapping
        n = s.size
        if len(f) != n:
            return False
        if f[s.bottom] != t.bottom or f[s.unit] != t.unit:
            return False
        for i in range(n):
            if f[s.inv(i)] != t.inv(f[i]):
                return False
            for j in range(n):
                if f[s.join(i, j)] != t.join(f[i], f[j]):
                    return False
                if f[s.mul(i, j)] != t.mul(f[i], f[j]):
                    return False
        return True

    def compose(self, other):
        """self after other (other: A -> B, self: B -> C)."""
        if other.target != self.source:
            raise QuantaleError("composition mismatch")
        return RigHom(other.source, self.target,
                      tuple(self.mapping[v] for v in other.mapping))


# -- document loading ----------------------------------------------------------


def load_quantale(doc):
    """Build a Quantale from a definition document (parsed JSON object).

    The tables are taken verbatim; no axiom is assumed.  Raises QuantaleError
    on structural problems: missing fields, wrong table shapes, unknown ids.
    """
    if not isinstance(doc, dict):
        raise QuantaleError("parse error: document must be an object")
    for field in ("name", "elements", "join", "mul", "unit"):
        if field not in doc:
            raise QuantaleError(f"parse error: missing field {field!r}")
    name = doc["name"]
    elements = doc["elements"]
    if not isinstance(name, str):
        raise QuantaleError("parse error: name must be a string")
    if (not isinstance(elements, list) or not elements
            or not all(isinstance(e, str) for e in elements)):
        raise QuantaleError("parse error: elements must be a non-empty array of strings")
    if len(set(elements)) != len(elements):
        raise QuantaleError("parse error: duplicate element ids")
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)

    def table(field):
        rows = doc[field]
        if not isinstance(rows, list) or len(rows) != n or any(
                not isinstance(r, list) or len(r) != n for r in rows):
            raise QuantaleError(f"arity error: {field} table must be {n}x{n}")
        out = []
        for r in rows:
            for e in r:
                if e not in index:
                    raise QuantaleError(f"unknown element id {e!r} in {field} table")
            out.append(tuple(index[e] for e in r))
        return tuple(out)

    join_table = table("join")
    mul_table = table("mul")
    unit = doc["unit"]
    if unit not in index:
        raise QuantaleError(f"unknown element id {unit!r} for unit")
    involution = None
    explicit = False
    if "involution" in doc:
        inv = doc["involution"]
        if not isinstance(inv, list) or len(inv) != n:
            raise QuantaleError("arity error: involution must list one image per element")
        for e in inv:
            if e not in index:
                raise QuantaleError(f"unknown element id {e!r} in involution")
        involution = tuple(index[e] for e in inv)
        explicit = True
    return Quantale(name, elements, join_table, mul_table, index[unit],
                    involution, involution_explicit=explicit)


def load_quantale_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return load_quantale(json.load(fh))


def quantale_to_doc(q):
    """Serialize back to the document form; inverse of load_quantale."""
    ids = q.elements
    doc = {
        "name": q.name,
        "elements": list(ids),
        "join": [[ids[v] for v in row] for row in q.join_table],
        "mul": [[ids[v] for v in row] for row in q.mul_table],
        "unit": ids[q.unit],
    }
    if q.involution_explicit:
        doc["involution"] = [ids[v] for v in q.involution]
    return doc


# -- axiom verification --------------------------------------------------------


def verify_quantale(q):
    """Exhaustively check the quantale axioms; every violated axiom gets one
    witness tuple (the first in canonical element order)."""
    n = q.size
    ids = q.elements
    violations = []

    def record(axiom, witness):
        violations.append((axiom, tuple(ids[w] for w in witness)))

    for x, y in itertools.product(range(n), repeat=2):
        if q.join(x, y) != q.join(y, x):
            record("join-commutative", (x, y))
            break
    for x in range(n):
        if q.join(x, x) != x:
            record("join-idempotent", (x,))
            break
    for x, y, z in itertools.product(range(n), repeat=3):
        if q.join(x, q.join(y, z)) != q.join(q.join(x, y), z):
            record("join-associative", (x, y, z))
            break
    if q.bottom is None:
        record("join-identity", ())
    for x, y in itertools.product(range(n), repeat=2):
        if q.mul(x, y) != q.mul(y, x):
            record("mul-commutative", (x, y))
            break
    for x, y, z in itertools.product(range(n), repeat=3):
        if q.mul(x, q.mul(y, z)) != q.mul(q.mul(x, y), z):
            record("mul-associative", (x, y, z))
            break
    for x in range(n):
        if q.mul(q.unit, x) != x:
            record("mul-unit", (x,))
            break
    for x, y, z in itertools.product(range(n), repeat=3):
        if q.mul(x, q.join(y, z)) != q.join(q.mul(x, y), q.mul(x, z)):
            record("distributivity", (x, y, z))
            break
    if q.bottom is not None:
        for x in range(n):
            if q.mul(x, q.bottom) != q.bottom:
                record("bottom-absorbing", (x,))
                break
    for x in range(n):
        if q.inv(q.inv(x)) != x:
            record("involution-involutive", (x,))
            break
    for x, y in itertools.product(range(n), repeat=2):
        if q.inv(q.join(x, y)) != q.join(q.inv(x), q.inv(y)):
            record("involution-join", (x, y))
            break
    for x, y in itertools.product(range(n), repeat=2):
        if q.inv(q.mul(x, y)) != q.mul(q.inv(x), q.inv(y)):
            record("involution-mul", (x, y))
            break
    if q.inv(q.unit) != q.unit:
        record("involution-unit", ())
    if q.bottom is not None and q.bottom == q.top:
        record("non-trivial", ())
    return AxiomReport(passed=not violations, violations=tuple(violations))


def is_zdf(q):
    """True iff no two non-bottom elements multiply to bottom."""
    return zdf_witness(q) is None


def zdf_witness(q):
    """A pair of non-bottom elements multiplying to bottom, or None."""
    b = q.bottom
    for x in range(q.size):
        if x == b:
            continue
        for y in range(q.size):
            if y == b:
                continue
            if q.mul(x, y) == b:
                return (q.elements[x], q.elements[y])
    return None


def require_zdf(q, context):
    if not is_zdf(q):
        raise ZdfRequiredError(
            f"{context} requires a zero-divisor-free quantale; "
            f"{q.name!r} has witness {zdf_witness(q)}")


# -- built-in quantales ----------------------------------------------------------


def _chain_names(n):
    if n == 2:
        return ["0", "1"]
    if n - 2 > len(string.ascii_lowercase):
        raise QuantaleError(f"invalid parameter: chain size {n} too large")
    return ["0"] + list(string.ascii_lowercase[: n - 2]) + ["1"]


def builtin_quantale(name, n=None):
    """Construct one of the built-in quantales.

    Tags: ``boolean2``, ``godel_chain`` (n >= 2, multiplication = min),
    ``lukasiewicz_chain`` (n >= 2, multiplication = max(0, x+y-1) on the
    uniform grid), ``powerset`` (n >= 1, union/intersection on P({1..n})).
    All carry the trivial involution.
    """
    if name == "boolean2":
        if n not in (None, 2):
            raise QuantaleError("invalid parameter: boolean2 takes no size")
        return Quantale(
            "boolean2", ("0", "1"),
            ((0, 1), (1, 1)), ((0, 0), (0, 1)), 1)
    if name == "godel_chain":
        if n is None or n < 2:
            raise QuantaleError("invalid parameter: godel_chain needs n >= 2")
        names = _chain_names(n)
        join = tuple(tuple(max(i, j) for j in range(n)) for i in range(n))
        mul = tuple(tuple(min(i, j) for j in range(n)) for i in range(n))
        return Quantale(f"godel{n}", names, join, mul, n - 1)
    if name == "lukasiewicz_chain":
        if n is None or n < 2:
            raise QuantaleError("invalid parameter: lukasiewicz_chain needs n >= 2")
        names = [str(Fraction(i, n - 1)) for i in range(n)]
        join = tuple(tuple(max(i, j) for j in range(n)) for i in range(n))
        mul = tuple(tuple(max(0, i + j - (n - 1)) for j in range(n)) for i in range(n))
        return Quantale(f"lukasiewicz{n}", names, join, mul, n - 1)
    if name == "powerset":
        if n is None or n < 1:
            raise QuantaleError("invalid parameter: powerset needs n >= 1")
        if n > 6:
            raise QuantaleError(f"invalid parameter: powerset size {n} too large")
        size = 1 << n

        def setname(mask):
            return "{" + ",".join(str(i + 1) for i in range(n) if mask >> i & 1) + "}"

        names = [setname(m) for m in range(size)]
        join = tuple(tuple(i | j for j in range(size)) for i in range(size))
        mul = tuple(tuple(i & j for j in range(size)) for i in range(size))
        return Quantale(f"powerset{n}", names, join, mul, size - 1)
    raise QuantaleError(f"unknown builtin quantale tag {name!r}")


_TAG_RE = re.compile(r"^([a-z_]+?)(?:_chain)?(?:\((\d+)\)|(\d+))?$")


def parse_quantale_tag(tag):
    """Parse CLI-style tags: boolean2, godel3, godel_chain(4), powerset2, ..."""
    m = _TAG_RE.match(tag.strip())
    if not m:
        raise QuantaleError(f"unknown builtin quantale tag {tag!r}")
    base, n1, n2 = m.groups()
    n = int(n1 or n2) if (n1 or n2) else None
    if base == "boolean" and n == 2 or tag.strip() == "boolean2":
        return builtin_quantale("boolean2")
    if base == "godel":
        return builtin_quantale("godel_chain", n)
    if base == "lukasiewicz":
        return builtin_quantale("lukasiewicz_chain", n)
    if base == "powerset":
        return builtin_quantale("powerset", n)
    raise QuantaleError(f"unknown builtin quantale tag {tag!r}")


# -- endomorphisms ----------------------------------------------------------------


def endomorphisms(q):
    """All maps q -> q preserving join, bottom, mul, unit and involution,
    in lexicographic order of their image tuples.  Exhaustive."""
    return rig_homs(q, q)


def rig_homs(source, target):
    """All quantale-operation-preserving maps source -> target."""
    out = [RigHom(source, target, mapping)
           for mapping in enumerate_homs(source.semiring(), target.semiring())]
    out.sort(key=lambda h: h.mapping)
    return out


def two_embedding(q):
    """The unique quantale map from the two-element quantale into q."""
    two = builtin_quantale("boolean2")
    return RigHom(two, q, (q.bottom, q.unit))


def zdf_collapse(q):
    """The map onto the two-element quantale sending every non-bottom element
    to the unit; multiplicative exactly because q has no zero divisors."""
    require_zdf(q, "the collapse onto the two-element quantale")
    two = builtin_quantale("boolean2")
    return RigHom(q, two, tuple(two.bottom if i == q.bottom else two.unit
                                for i in range(q.size)))
