"""Characters with t-polynomial coefficients over monomials, and the
twisted products between them.

Two product routes are kept deliberately separate:

* multiply_standard composes two characters through the cross-pairing
  twist after undoing each factor's self-pairing normalization, and
  re-normalizes against the combined root datum (valid only when the
  factors' spectral roots satisfy the separation condition);
* star_product twists each term pair by the commutation exponent and
  never touches normalization.

They differ by a single global power of t, which the verification layer
checks rather than assumes.
"""

from __future__ import annotations

from collections import Counter
import heapq
import re

from . import kernels
from .errors import ParseError, SeparationViolation, InternalError
from .monomial import (
    EpsilonTable,
    ONE_MONO,
    YMonomial,
    a_monomial,
    parse_monomial,
    v_factorization,
)
from .roots import LieType, build_lie_type
from .tpoly import TPoly, parse_tpoly, t_binomial


class DrinfeldPoly:
    """Multiset of per-node spectral roots indexing a module; immutable."""

    __slots__ = ("roots",)

    def __init__(self, roots=()):
        self.roots = tuple(sorted((int(i), int(s)) for i, s in roots))

    @classmethod
    def fundamental(cls, i: int, s: int) -> "DrinfeldPoly":
        return cls(((i, s),))

    @classmethod
    def kr(cls, i: int, k: int, s: int) -> "DrinfeldPoly":
        """String of k roots at node i stepping by 2 from s."""
        return cls((i, s + 2 * j) for j in range(k))

    def monomial(self) -> YMonomial:
        c = Counter(self.roots)
        return YMonomial((i, s, e) for (i, s), e in c.items())

    def node_roots(self, i: int) -> tuple:
        return tuple(s for j, s in self.roots if j == i)

    def shift(self, d: int) -> "DrinfeldPoly":
        return DrinfeldPoly((i, s + d) for i, s in self.roots)

    def __mul__(self, other: "DrinfeldPoly") -> "DrinfeldPoly":
        return DrinfeldPoly(self.roots + other.roots)

    def __eq__(self, other):
        return isinstance(other, DrinfeldPoly) and self.roots == other.roots

    def __hash__(self):
        return hash(self.roots)

    def __bool__(self):
        return bool(self.roots)

    def __str__(self):
        if not self.roots:
            return "P()"
        by_node: dict = {}
        for i, s in self.roots:
            by_node.setdefault(i, []).append(s)
        parts = [f"{i}: {' '.join(map(str, ss))}" for i, ss in sorted(by_node.items())]
        return "P(" + "; ".join(parts) + ")"

    __repr__ = __str__


def separation_ok(p1: DrinfeldPoly, p2: DrinfeldPoly) -> bool:
    """No root of p1 may sit two or more spectral steps above a root of p2."""
    if not p1.roots or not p2.roots:
        return True
    hi = max(s for _, s in p1.roots)
    lo = min(s for _, s in p2.roots)
    return hi - lo < 2


class QtCharacter:
    """Character of a module: highest root datum plus a finite term dict
    mapping monomials to t-polynomial coefficients."""

    __slots__ = ("L", "poly", "terms", "_highest")

    def __init__(self, L: LieType, poly: DrinfeldPoly, terms):
        self.L = L
        self.poly = poly
        self.terms = {m: p for m, p in dict(terms).items() if p}
        self._highest = None

    @property
    def highest(self) -> YMonomial:
        h = self._highest
        if h is None:
            h = self.poly.monomial()
            self._highest = h
        return h

    @property
    def lie_type(self) -> LieType:
        return self.L

    def coeff(self, m: YMonomial) -> TPoly:
        return self.terms.get(m, TPoly.ZERO)

    def items(self):
        """Terms in canonical monomial order."""
        return sorted(self.terms.items(), key=lambda kv: kv[0].data)

    def dimension(self) -> int:
        return sum(p.at_one() for p in self.terms.values())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (
            isinstance(other, QtCharacter)
            and self.L == other.L
            and self.poly == other.poly
            and self.terms == other.terms
        )

    def shift(self, d: int) -> "QtCharacter":
        if d == 0:
            return self
        return QtCharacter(
            self.L,
            self.poly.shift(d),
            {m.shift(d): p for m, p in self.terms.items()},
        )

    def bar(self) -> "QtCharacter":
        return QtCharacter(self.L, self.poly, {m: p.bar() for m, p in self.terms.items()})

    def validate(self) -> None:
        """Cheap structural sanity: the highest term is present, monic, and
        truly highest (every other monomial factors below it)."""
        top = self.highest
        if self.terms.get(top) != TPoly.ONE:
            raise InternalError("highest term missing or not monic")
        for m in self.terms:
            if m != top:
                v_factorization(self.L, m, top)

    def __str__(self):
        lines = [f"{self.L.family}{self.L.rank} character, highest {self.poly}"]
        for m, p in self.items():
            lines.append(f"  {p} : {m}")
        return "\n".join(lines)


# -- term-dict arithmetic ----------------------------------------------------


def terms_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, p in b.items():
        q = out.get(m)
        r = p if q is None else q + p
        if r:
            out[m] = r
        else:
            out.pop(m, None)
    return out


def terms_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, p in b.items():
        q = out.get(m)
        r = -p if q is None else q - p
        if r:
            out[m] = r
        else:
            out.pop(m, None)
    return out


def terms_scale(a: dict, c: TPoly) -> dict:
    if not c:
        return {}
    return {m: p * c for m, p in a.items()}


def dominant_part(terms: dict) -> dict:
    return {m: p for m, p in terms.items() if m.is_l_dominant()}


# -- expansion at a node ------------------------------------------------------


def _expansion_tail(L: LieType, i: int, m: YMonomial) -> list:
    """Terms of the expansion at an i-dominant m as (monomial, coefficient,
    step count), where step count is the total affinization degree of the
    term below m.  The leading entry (m, 1, 0) is included."""
    from .errors import NotDominant

    if not m.is_i_dominant(i):
        raise NotDominant(f"{m} is not {i}-dominant")
    out = [(ONE_MONO, TPoly.ONE, 0)]
    for j, s, u in m.data:
        if j != i:
            continue
        a_inv = a_monomial(L, i, s + 1) ** -1
        options = []
        step = ONE_MONO
        for r in range(u + 1):
            options.append((step, t_binomial(u, r).shifted(r * (u - r)), r))
            step = step * a_inv
        merged: dict = {}
        for mono, poly, deg in out:
            for am, c, r in options:
                key = mono * am
                got = merged.get(key)
                if got is None:
                    merged[key] = (poly * c, deg + r)
                else:
                    if got[1] != deg + r:
                        raise InternalError("expansion degree clash")
                    merged[key] = (got[0] + poly * c, got[1])
        out = [(mo, p, deg) for mo, (p, deg) in merged.items()]
    return [(m * mo, p, deg) for mo, p, deg in out]


def expand_E_i(L: LieType, m: YMonomial, i: int) -> dict:
    """Expansion at an i-dominant monomial: product over spectral levels of
    the twisted-binomial sums in inverse affinization steps.  Returns a term
    dict whose coefficient at m itself is 1."""
    return {mo: p for mo, p, _ in _expansion_tail(L, i, m)}


# -- products -----------------------------------------------------------------


def star_product(L: LieType, a, b, table: EpsilonTable | None = None) -> dict:
    """Term-by-term twisted product; returns a raw term dict.  The result of
    multiplying two normalized characters this way is NOT normalized: its
    top coefficient is a power of t, not 1."""
    d1 = a.terms if isinstance(a, QtCharacter) else a
    d2 = b.terms if isinstance(b, QtCharacter) else b
    tab = table if table is not None else EpsilonTable(L)
    acc: dict = {}
    for m1, p1 in d1.items():
        r1 = p1.terms
        for m2, p2 in d2.items():
            e = tab.of(m1, m2)
            key = m1 * m2
            slot = acc.get(key)
            if slot is None:
                slot = {}
                acc[key] = slot
            kernels.poly_acc_mul(slot, r1, p2.terms, e)
    return {m: TPoly._wrap(p) for m, p in acc.items() if p}


def _self_twist(v: dict, um: dict, up: dict) -> int:
    """Exponent of the normalizing twist for a term with v-exponents v,
    exponent map um, below a highest monomial with exponent map up."""
    return kernels.dot_shifted(v, um, 1) + kernels.dot_shifted(up, v, 1)


def multiply_standard(
    ch1: QtCharacter, p1: DrinfeldPoly, ch2: QtCharacter, p2: DrinfeldPoly
) -> QtCharacter:
    """Character of the composite module built from two normalized
    characters of the given root data.  Requires the separation condition
    between the root data; the factors' normalization is undone, the cross
    twist applied per term pair, and the result re-normalized against the
    combined root datum."""
    if ch1.L != ch2.L:
        raise InternalError("type mismatch in product")
    L = ch1.L
    if not separation_ok(p1, p2):
        raise SeparationViolation(f"roots of {p1} reach 2 or more above {p2}")
    mp1, mp2 = p1.monomial(), p2.monomial()
    up1, up2 = mp1.u_map(), mp2.u_map()

    lst1 = []
    for m, a in ch1.terms.items():
        v = v_factorization(L, m, mp1)
        raw = kernels.poly_scale(a.terms, _self_twist(v, m.u_map(), up1), 1)
        lst1.append((m, v, raw))
    lst2 = []
    for m, a in ch2.terms.items():
        v = v_factorization(L, m, mp2)
        raw = kernels.poly_scale(a.terms, _self_twist(v, m.u_map(), up2), 1)
        half = kernels.dot_shifted(up1, v, 1)
        lst2.append((m, v, raw, half))

    acc: dict = {}
    vees: dict = {}
    for m1, v1, raw1 in lst1:
        for m2, v2, raw2, half in lst2:
            tw = 2 * (kernels.dot_shifted(v1, m2.u_map(), 1) + half)
            key = m1 * m2
            slot = acc.get(key)
            if slot is None:
                slot = {}
                acc[key] = slot
                vees[key] = (v1, v2)
            kernels.poly_acc_mul(slot, raw1, raw2, tw)

    poly = p1 * p2
    up = poly.monomial().u_map()
    terms: dict = {}
    for key, raw in acc.items():
        if not raw:
            continue
        v1, v2 = vees[key]
        v = dict(v1)
        for k, e in v2.items():
            v[k] = v.get(k, 0) + e
        terms[key] = TPoly._wrap(
            kernels.poly_scale(raw, -_self_twist(v, key.u_map(), up), 1)
        )
    return QtCharacter(L, poly, terms)


# -- specializations ----------------------------------------------------------


def specialize_t1(ch: QtCharacter) -> dict:
    """Coefficients evaluated at t=1; returns dict monomial -> int."""
    out = {}
    for m, p in ch.terms.items():
        c = p.at_one()
        if c:
            out[m] = c
    return out


def qchar_mul(d1: dict, d2: dict) -> dict:
    """Plain commutative product of t=1 term dicts."""
    out: dict = {}
    for m1, c1 in d1.items():
        for m2, c2 in d2.items():
            key = m1 * m2
            c = out.get(key, 0) + c1 * c2
            if c:
                out[key] = c
            else:
                out.pop(key, None)
    return out


class GCharacter:
    """Finite-type character: integer multiplicities on weight-lattice
    points written in fundamental-weight coordinates."""

    __slots__ = ("lie_type", "terms")

    def __init__(self, lie_type: LieType, terms=()):
        self.lie_type = lie_type
        self.terms = {tuple(w): int(c) for w, c in dict(terms).items() if c}

    @classmethod
    def one(cls, lie_type: LieType) -> "GCharacter":
        return cls(lie_type, {(0,) * lie_type.rank: 1})

    @classmethod
    def from_qt(cls, ch: QtCharacter) -> "GCharacter":
        terms: dict = {}
        for m, p in ch.terms.items():
            w = m.weight(ch.L)
            c = terms.get(w, 0) + p.at_one()
            if c:
                terms[w] = c
            else:
                terms.pop(w, None)
        return cls(ch.L, terms)

    def coeff(self, w) -> int:
        return self.terms.get(tuple(w), 0)

    def dimension(self) -> int:
        return sum(self.terms.values())

    def __add__(self, other: "GCharacter") -> "GCharacter":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GCharacter(self.lie_type, out)

    def __sub__(self, other: "GCharacter") -> "GCharacter":
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) - c
        return GCharacter(self.lie_type, out)

    def __mul__(self, other: "GCharacter") -> "GCharacter":
        out: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                key = tuple(x + y for x, y in zip(w1, w2))
                out[key] = out.get(key, 0) + c1 * c2
        return GCharacter(self.lie_type, out)

    def scaled(self, c: int) -> "GCharacter":
        return GCharacter(self.lie_type, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, GCharacter)
            and self.lie_type == other.lie_type
            and self.terms == other.terms
        )

    def __bool__(self):
        return bool(self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w, c in sorted(self.terms.items()):
            wtxt = "e[" + ",".join(map(str, w)) + "]"
            bits.append(f"{c}*{wtxt}" if c != 1 else wtxt)
        return " + ".join(bits)

    __repr__ = __str__


def restrict_to_g(ch: QtCharacter) -> GCharacter:
    """Forget spectral parameters and set t=1."""
    return GCharacter.from_qt(ch)


def normalized_in_A(ch: QtCharacter, D: int) -> dict:
    """Character re-keyed by each term's v-exponents against the highest
    monomial, truncated to total affinization degree at most D.  Keys are
    sorted tuples of ((node, spectral), exponent)."""
    top = ch.highest
    L = ch.L
    out: dict = {}
    for m, p in ch.terms.items():
        v = v_factorization(L, m, top)
        if sum(v.values()) > D:
            continue
        out[tuple(sorted(v.items()))] = p
    return out


# -- independent span membership check ----------------------------------------


def in_slice_span(ch: QtCharacter, i: int) -> bool:
    """Whether the character lies in the span of expansions at i-dominant
    monomials.  Greedy strip from the top: the shallowest remaining
    monomial must be i-dominant and is removed by subtracting its full
    expansion.  Exact for genuine members (each step strips one summand of
    the decomposition); returns False at the first shallowest non-i-dominant
    monomial."""
    L = ch.L
    top = ch.highest
    rem = {m: dict(p.terms) for m, p in ch.terms.items()}
    depths: dict = {}

    def depth(m: YMonomial) -> int:
        d = depths.get(m)
        if d is None:
            d = sum(v_factorization(L, m, top).values())
            depths[m] = d
        return d

    guard = 2 * max((depth(m) for m in rem), default=0) + 4 * L.coxeter_number + 16
    heap = [(depth(m), m.data, m) for m in rem]
    heapq.heapify(heap)
    while heap:
        d, _, m = heapq.heappop(heap)
        raw = rem.pop(m, None)
        if not raw:
            continue
        if d > guard:
            raise InternalError("span check exceeded depth bound")
        if not m.is_i_dominant(i):
            return False
        neg = {e: -c for e, c in raw.items()}
        for mm, p in expand_E_i(L, m, i).items():
            if mm == m:
                continue
            slot = rem.get(mm)
            if slot is None:
                rem[mm] = slot = {}
                heapq.heappush(heap, (depth(mm), mm.data, mm))
            kernels.poly_acc_mul(slot, neg, p.terms, 0)
            if not slot:
                del rem[mm]
    return True


def in_span_all_nodes(ch: QtCharacter) -> bool:
    return all(in_slice_span(ch, i) for i in ch.L.nodes)


# -- serialization -------------------------------------------------------------

_QTC_HEADER = "# qtc v1"
_TYPE_RE = re.compile(r"^type ([ADE]) (\d+)$")
_P_RE = re.compile(r"^P (\d+):((?: -?\d+)*)$")


def dumps_qtc(ch: QtCharacter) -> str:
    lines = [_QTC_HEADER, f"type {ch.L.family} {ch.L.rank}"]
    by_node: dict = {}
    for i, s in ch.poly.roots:
        by_node.setdefault(i, []).append(s)
    for i in sorted(by_node):
        lines.append(f"P {i}: " + " ".join(str(s) for s in sorted(by_node[i])))
    for m, p in ch.items():
        lines.append(f"term {p} : {m}")
    return "\n".join(lines) + "\n"


def loads_qtc(text: str) -> QtCharacter:
    lines = [ln.rstrip("\n") for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != _QTC_HEADER:
        raise ParseError("missing qtc v1 header")
    if len(lines) < 2:
        raise ParseError("missing type line")
    mt = _TYPE_RE.match(lines[1])
    if not mt:
        raise ParseError(f"bad type line {lines[1]!r}")
    L = build_lie_type(mt.group(1), int(mt.group(2)))
    roots = []
    terms: dict = {}
    for ln in lines[2:]:
        if ln.startswith("P "):
            mp = _P_RE.match(ln)
            if not mp:
                raise ParseError(f"bad root line {ln!r}")
            i = int(mp.group(1))
            if i not in L.nodes:
                raise ParseError(f"node {i} out of range in {ln!r}")
            roots.extend((i, int(s)) for s in mp.group(2).split())
        elif ln.startswith("term "):
            body = ln[5:]
            if " : " not in body:
                raise ParseError(f"bad term line {ln!r}")
            ptxt, mtxt = body.split(" : ", 1)
            mono = parse_monomial(mtxt)
            if any(i not in L.nodes for i, _, _ in mono.data):
                raise ParseError(f"node out of range in {ln!r}")
            if mono in terms:
                raise ParseError(f"duplicate monomial in {ln!r}")
            terms[mono] = parse_tpoly(ptxt)
        else:
            raise ParseError(f"unrecognized line {ln!r}")
    return QtCharacter(L, DrinfeldPoly(roots), terms)


def write_qtc(path, ch: QtCharacter) -> None:
    with open(path, "w", encoding="ascii") as fp:
        fp.write(dumps_qtc(ch))


def read_qtc(path) -> QtCharacter:
    with open(path, "r", encoding="ascii") as fp:
        return loads_qtc(fp.read())
