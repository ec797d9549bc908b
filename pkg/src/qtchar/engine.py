"""Fixpoint construction of characters and their simple-module
decomposition.

The core routine grows a character downward from its highest monomial,
one monomial per heap pop in order of affinization depth.  At each
monomial the coefficient is pinned by the colors for which the monomial
is not dominant (they admit no expansion rooted there, so the already
accumulated contributions must be the whole coefficient); every color
for which it is dominant then gets a correcting expansion whose tail is
pushed further down.  Contributions only ever flow to strictly deeper
monomials, so a single sweep is a fixpoint.

Two modes differ only at interior dominant-for-all-colors monomials:
the head-module mode treats any such monomial as an error (none can
occur below the top of a single-root character), while the string mode
pins its coefficient to zero and lets the correcting expansions cancel
the accumulated contributions.
"""

from __future__ import annotations

from dataclasses import dataclass
import heapq
import os

from . import kernels
from .character import (
    DrinfeldPoly,
    QtCharacter,
    _expansion_tail,
    _self_twist,
    multiply_standard,
    read_qtc,
    write_qtc,
)
from .errors import DomainError, InconsistentExpansion, InternalError
from .monomial import ONE_MONO, YMonomial, v_factorization
from .roots import LieType
from .tpoly import TPoly

_ONE_RAW = {0: 1}


def _fixpoint(L: LieType, poly: DrinfeldPoly, string_mode: bool) -> QtCharacter:
    top = poly.monomial()
    nodes = list(L.nodes)
    expected = {i: {} for i in nodes}
    depth = {top: 0}
    heap = [(0, top.data, top)]
    coeffs: dict = {}
    while heap:
        d, _, m = heapq.heappop(heap)
        if m == top:
            a = dict(_ONE_RAW)
        else:
            pinned = None
            have_pin = False
            for i in nodes:
                if m.is_i_dominant(i):
                    continue
                val = expected[i].get(m, {})
                if have_pin:
                    if val != pinned:
                        raise InconsistentExpansion(
                            f"colors disagree at {m}: {val} vs {pinned}"
                        )
                else:
                    pinned, have_pin = val, True
            if have_pin:
                a = pinned
            else:
                # interior monomial dominant for every color
                a = {}
                if not string_mode and any(
                    expected[i].get(m) for i in nodes
                ):
                    raise InconsistentExpansion(
                        f"interior dominant monomial {m} reached"
                    )
        if a:
            coeffs[m] = a
        for i in nodes:
            if not m.is_i_dominant(i):
                continue
            combo = kernels.poly_sub(a, expected[i].pop(m, {}))
            if not combo:
                continue
            for mm, p, deg in _expansion_tail(L, i, m):
                if deg == 0:
                    continue
                dd = d + deg
                seen = depth.get(mm)
                if seen is None:
                    depth[mm] = dd
                    heapq.heappush(heap, (dd, mm.data, mm))
                elif seen != dd:
                    raise InternalError(f"depth mismatch at {mm}: {seen} vs {dd}")
                slot = expected[i].get(mm)
                if slot is None:
                    expected[i][mm] = slot = {}
                kernels.poly_acc_mul(slot, combo, p.terms, 0)
    up = top.u_map()
    terms = {}
    for m, raw in coeffs.items():
        v = v_factorization(L, m, top)
        tw = _self_twist(v, m.u_map(), up)
        terms[m] = TPoly._wrap(kernels.poly_scale(raw, -tw, 1) if tw else raw)
    return QtCharacter(L, poly, terms)


@dataclass
class KLResult:
    """Triangular decomposition data for one standard character.

    factors lists (root datum, multiplicity of its simple inside the
    input standard), the input itself first with multiplicity 1.  order
    lists the closure of root data from shallowest (the input) to
    deepest; c, z, l are matrices over that order, keyed by index pairs;
    z rows give multiplicities of simples inside standards, l rows are
    the simple characters evaluated at dominant monomials."""

    standard: DrinfeldPoly
    factors: list
    simples: dict
    lie_type: LieType
    order: tuple
    c: dict
    z: dict
    l: dict
    standards: dict

    def multiplicity(self, sub: DrinfeldPoly) -> TPoly:
        try:
            j = self.order.index(sub)
        except ValueError:
            return TPoly.ZERO
        return self.z.get((0, j), TPoly.ZERO)


class Engine:
    """Computes and caches characters for one type.

    Base characters are computed at spectral shift 0 and translated on
    request.  If cache_dir is set, base characters are also stored as qtc
    files (written atomically, re-read on later runs)."""

    def __init__(self, L: LieType, cache_dir: str | None = None):
        self.L = L
        self.cache_dir = cache_dir
        self._base: dict = {}
        self._standard: dict = {}
        self._kl: dict = {}
        self._simple: dict = {}
        if cache_dir:
            os.makedirs(cache_dir, exist_ok=True)

    # -- cache plumbing -----------------------------------------------------

    def _cache_path(self, stem: str) -> str:
        name = f"{self.L.family}{self.L.rank}_{stem}.qtc"
        return os.path.join(self.cache_dir, name)

    def _cached(self, stem: str, compute):
        ch = self._base.get(stem)
        if ch is not None:
            return ch
        if self.cache_dir:
            path = self._cache_path(stem)
            if os.path.exists(path):
                try:
                    ch = read_qtc(path)
                    if ch.L == self.L:
                        self._base[stem] = ch
                        return ch
                except Exception:
                    pass  # unreadable cache entry: recompute and rewrite
        ch = compute()
        self._base[stem] = ch
        if self.cache_dir:
            path = self._cache_path(stem)
            tmp = f"{path}.tmp.{os.getpid()}"
            write_qtc(tmp, ch)
            os.replace(tmp, path)
        return ch

    # -- module characters ----------------------------------------------------

    def _check_node(self, i: int) -> None:
        if i not in self.L.nodes:
            raise DomainError(f"node {i} out of range for {self.L.family}{self.L.rank}")

    def fundamental_char(self, i: int, s: int = 0) -> QtCharacter:
        self._check_node(i)
        base = self._cached(
            f"fund_{i}",
            lambda: _fixpoint(self.L, DrinfeldPoly.fundamental(i, 0), False),
        )
        return base.shift(s)

    def kr_char_direct(self, i: int, k: int, s: int = 0) -> QtCharacter:
        """Character of the length-k string module at node i starting at s,
        computed by its own fixpoint run rather than through the triangular
        decomposition."""
        self._check_node(i)
        if k < 0:
            raise DomainError("string length must be nonnegative")
        if k == 0:
            return QtCharacter(self.L, DrinfeldPoly(), {ONE_MONO: TPoly.ONE})
        if k == 1:
            return self.fundamental_char(i, s)
        base = self._cached(
            f"kr_{i}_{k}",
            lambda: _fixpoint(self.L, DrinfeldPoly.kr(i, k, 0), True),
        )
        return base.shift(s)

    def standard_char(self, poly: DrinfeldPoly) -> QtCharacter:
        """Character of the product module: fundamentals folded together in
        ascending spectral order, which always meets the separation
        condition."""
        got = self._standard.get(poly.roots)
        if got is not None:
            return got
        if not poly.roots:
            ch = QtCharacter(self.L, poly, {ONE_MONO: TPoly.ONE})
        else:
            parts = sorted(poly.roots, key=lambda r: (r[1], r[0]))
            i0, s0 = parts[0]
            acc = DrinfeldPoly.fundamental(i0, s0)
            ch = self.fundamental_char(i0, s0)
            for i, s in parts[1:]:
                nxt = DrinfeldPoly.fundamental(i, s)
                ch = multiply_standard(ch, acc, self.fundamental_char(i, s), nxt)
                acc = acc * nxt
        self._standard[poly.roots] = ch
        return ch

    # -- triangular decomposition ----------------------------------------------

    def kl_decompose(self, poly: DrinfeldPoly) -> KLResult:
        got = self._kl.get(poly.roots)
        if got is not None:
            return got
        L = self.L
        top = poly.monomial()

        # closure of root data under taking dominant monomials of standards
        def mono_poly(m: YMonomial) -> DrinfeldPoly:
            roots = []
            for i, s, e in m.data:
                roots.extend([(i, s)] * e)
            return DrinfeldPoly(roots)

        seen = {poly}
        work = [poly]
        standards = {}
        while work:
            q = work.pop()
            ch = self.standard_char(q)
            standards[q] = ch
            for m in ch.terms:
                if m.is_l_dominant():
                    q2 = mono_poly(m)
                    if q2 not in seen:
                        seen.add(q2)
                        work.append(q2)

        def depth_of(q: DrinfeldPoly) -> int:
            return sum(v_factorization(L, q.monomial(), top).values())

        order = tuple(sorted(seen, key=lambda q: (depth_of(q), q.roots)))
        n = len(order)
        monos = [q.monomial() for q in order]

        c: dict = {}
        for ai, qa in enumerate(order):
            terms = standards[qa].terms
            for bi in range(ai, n):
                val = terms.get(monos[bi])
                if val:
                    c[(ai, bi)] = val

        # deepest rows first: the middle terms of each interval sum live in
        # strictly deeper rows, which must exist before this row is split
        z: dict = {}
        lw: dict = {}
        for ai in range(n - 1, -1, -1):
            z[(ai, ai)] = TPoly.ONE
            lw[(ai, ai)] = TPoly.ONE
            for ci in range(ai + 1, n):
                f = c.get((ai, ci), TPoly.ZERO)
                for bi in range(ai + 1, ci):
                    zab = z.get((ai, bi))
                    lbc = lw.get((bi, ci))
                    if zab and lbc:
                        f = f - zab * lbc
                sym = {}
                zz = {}
                if 0 in f.terms:
                    sym[0] = f.terms[0]
                for lev in {abs(e) for e in f.terms if e != 0}:
                    fp = f.terms.get(lev, 0)
                    fm = f.terms.get(-lev, 0)
                    if fp:
                        sym[lev] = fp
                        sym[-lev] = fp
                    if fm != fp:
                        zz[-lev] = fm - fp
                lpoly = TPoly._wrap({e: cf for e, cf in sym.items() if cf})
                zpoly = TPoly._wrap(zz)
                if not zpoly.has_nonneg_coeffs() or not lpoly.has_nonneg_coeffs():
                    raise InternalError(
                        f"negative multiplicity between {order[ai]} and {order[ci]}"
                    )
                if f != lpoly + zpoly:
                    raise InternalError("triangular split failed")
                if zpoly:
                    z[(ai, ci)] = zpoly
                if lpoly:
                    lw[(ai, ci)] = lpoly

        simples: dict = {}
        for ai in range(n - 1, -1, -1):
            terms = dict(standards[order[ai]].terms)
            for bi in range(ai + 1, n):
                zab = z.get((ai, bi))
                if not zab:
                    continue
                for m, p in simples[order[bi]].terms.items():
                    q = terms.get(m)
                    r = (q - zab * p) if q is not None else -(zab * p)
                    if r:
                        terms[m] = r
                    else:
                        terms.pop(m, None)
            simples[order[ai]] = QtCharacter(L, order[ai], terms)

        factors = [(order[bi], z[(0, bi)]) for bi in range(n) if (0, bi) in z]
        res = KLResult(poly, factors, simples, L, order, c, z, lw, standards)
        self._kl[poly.roots] = res
        return res

    def simple_char(self, poly: DrinfeldPoly) -> QtCharacter:
        got = self._simple.get(poly.roots)
        if got is None:
            got = self.kl_decompose(poly).simples[poly]
            self._simple[poly.roots] = got
        return got


_DEFAULT_ENGINES: dict = {}


def default_engine(L: LieType) -> Engine:
    """Shared per-type memory-only engine behind the module-level helpers."""
    key = (L.family, L.rank)
    eng = _DEFAULT_ENGINES.get(key)
    if eng is None:
        eng = _DEFAULT_ENGINES[key] = Engine(L)
    return eng


def fundamental_char(L: LieType, i: int, s: int = 0, engine: Engine | None = None) -> QtCharacter:
    return (engine or default_engine(L)).fundamental_char(i, s)


def kr_char_direct(L: LieType, i: int, k: int, s: int = 0, engine: Engine | None = None) -> QtCharacter:
    return (engine or default_engine(L)).kr_char_direct(i, k, s)


def standard_char(L: LieType, poly: DrinfeldPoly, engine: Engine | None = None) -> QtCharacter:
    return (engine or default_engine(L)).standard_char(poly)


def kl_decompose(L: LieType, poly: DrinfeldPoly, engine: Engine | None = None) -> KLResult:
    return (engine or default_engine(L)).kl_decompose(poly)


def simple_char(L: LieType, poly: DrinfeldPoly, engine: Engine | None = None) -> QtCharacter:
    return (engine or default_engine(L)).simple_char(poly)
