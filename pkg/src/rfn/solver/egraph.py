"""Acyclic e-graph: each class collapses eagerly to one representative node.

Nodes are hash-consed tuples whose first element is the kind:

    ("const", "unit"|"bool"|"int", value)
    ("atom", ident)                 free context variable or skolem
    ("bvar", i)                     de Bruijn variable under ("lam", ...)
    ("bin", op, a, b)               op in == < && || / %
    ("not", a)
    ("sum", ((factors, coef), ...), const)
                                    flat sum of monomials; factors are
                                    sorted node ids, coefficients wrap mod 2**32
    ("pair", a, b) ("inl", a) ("inr", a)
    ("proj", 1|2, a)
    ("lam", body) ("app", f, a) ("tapp", f)

Children of every stored key are canonical representatives.  ``a <= b``,
``a > b``, ``a >= b`` and ``a != b`` never appear: the builders rewrite
them to ``<``, ``==`` and ``not``.
"""
from __future__ import annotations

from collections import deque
from typing import Callable, Optional

CONST, ATOM, BVAR, BIN, NOT, SUM = "const", "atom", "bvar", "bin", "not", "sum"
PAIR, INL, INR, PROJ, LAM, APP, TAPP = "pair", "inl", "inr", "proj", "lam", "app", "tapp"

CTORS = frozenset({PAIR, INL, INR})
_RANK = {CONST: 0, BIN: 1, NOT: 1, SUM: 1, PROJ: 1, APP: 1, TAPP: 1,
         PAIR: 2, INL: 2, INR: 2, LAM: 3, ATOM: 4, BVAR: 5}

_MASK = 0xFFFFFFFF
_BETA_DEPTH = 64


def wrap32(n: int) -> int:
    return ((n + 2**31) & _MASK) - 2**31


def key_children(key: tuple) -> tuple[int, ...]:
    kind = key[0]
    if kind in (CONST, ATOM, BVAR):
        return ()
    if kind == BIN:
        return key[2], key[3]
    if kind == SUM:
        return tuple(f for factors, _ in key[1] for f in factors)
    if kind == PROJ:
        return (key[2],)
    return key[1:]


def map_children(key: tuple, f: Callable[[int], int]) -> tuple:
    kind = key[0]
    if kind in (CONST, ATOM, BVAR):
        return key
    if kind == BIN:
        return (BIN, key[1], f(key[2]), f(key[3]))
    if kind == SUM:
        return (SUM, tuple((tuple(f(x) for x in factors), c) for factors, c in key[1]), key[2])
    if kind == PROJ:
        return (PROJ, key[1], f(key[2]))
    return (kind,) + tuple(f(x) for x in key[1:])


class EGraph:
    """Acyclic e-graph with congruence repair, normalization and ``<`` bounds.

    ``merge_cap`` bounds the total number of merges; exceeding it marks the
    graph ``incomplete`` and further merges are dropped, so callers must
    answer conservatively.
    """

    def __init__(self, merge_cap: int = 10_000, trace: Optional[Callable[[str], None]] = None):
        self.keys: list[tuple] = []
        self.table: dict[tuple, int] = {}
        self._uf: list[int] = []
        self.parents: list[set[int]] = []
        self.members: list[list[int]] = []
        self._blevel: list[int] = []
        # strongest known value node (constant or constructor) per class
        self._ctor: dict[int, int] = {}
        # bound lists: hi[a][b] = strict means a < b (strict) or a <= b
        self.hi: dict[int, dict[int, bool]] = {}
        self.lo: dict[int, dict[int, bool]] = {}
        self._int_consts: list[int] = []
        self._pending: deque = deque()
        self.merge_cap = merge_cap
        self.merge_count = 0
        self.inconsistent = False
        self.incomplete = False
        self.refused = 0
        self._beta_depth = 0
        self.trace = trace
        self.true = self._intern((CONST, "bool", True))
        self.false = self._intern((CONST, "bool", False))
        self.unit = self._intern((CONST, "unit", None))

    # ------------------------------------------------------------ basics

    def find(self, n: int) -> int:
        uf = self._uf
        root = n
        while uf[root] != root:
            root = uf[root]
        while uf[n] != root:
            uf[n], n = root, uf[n]
        return root

    def __len__(self) -> int:
        return len(self.keys)

    def kind(self, n: int) -> str:
        return self.keys[self.find(n)][0]

    def key(self, n: int) -> tuple:
        return self.keys[self.find(n)]

    def is_true(self, n: int) -> bool:
        return self.find(n) == self.find(self.true)

    def is_false(self, n: int) -> bool:
        return self.find(n) == self.find(self.false)

    def canon_key(self, key: tuple) -> tuple:
        return map_children(key, self.find)

    def add(self, key: tuple) -> int:
        """Insert ``key`` (children are canonicalized first) and return its class."""
        n = self._intern(self.canon_key(key))
        self._process()
        return self.find(n)

    def merge(self, a: int, b: int, rule: str = "assert") -> None:
        self._pending.append((a, b, rule))
        self._process()

    def assert_true(self, n: int) -> None:
        self.merge(n, self.true, "fact")

    # ------------------------------------------------------------ builders

    def const(self, value) -> int:
        if value is None:
            return self.unit
        if isinstance(value, bool):
            return self.true if value else self.false
        return self.add((CONST, "int", wrap32(value)))

    def atom(self, ident) -> int:
        return self.add((ATOM, ident))

    def bvar(self, i: int) -> int:
        return self.add((BVAR, i))

    def eq(self, a: int, b: int) -> int:
        return self.add((BIN, "==", a, b))

    def ne(self, a: int, b: int) -> int:
        return self.not_(self.eq(a, b))

    def lt(self, a: int, b: int) -> int:
        return self.add((BIN, "<", a, b))

    def le(self, a: int, b: int) -> int:
        return self.not_(self.lt(b, a))

    def and_(self, a: int, b: int) -> int:
        return self.add((BIN, "&&", a, b))

    def or_(self, a: int, b: int) -> int:
        return self.add((BIN, "||", a, b))

    def not_(self, a: int) -> int:
        return self.add((NOT, a))

    def plus(self, a: int, b: int) -> int:
        return self._finish(self._poly_add(self._poly(a), self._poly(b), 1))

    def minus(self, a: int, b: int) -> int:
        # a - b  ->  a + (-1) * b
        return self._finish(self._poly_add(self._poly(a), self._poly(b), -1))

    def times(self, a: int, b: int) -> int:
        n = self._mul(self.find(a), self.find(b))
        self._process()
        return self.find(n)

    def div(self, a: int, b: int) -> int:
        return self.add((BIN, "/", a, b))

    def mod(self, a: int, b: int) -> int:
        return self.add((BIN, "%", a, b))

    def pair(self, a: int, b: int) -> int:
        return self.add((PAIR, a, b))

    def inl(self, a: int) -> int:
        return self.add((INL, a))

    def inr(self, a: int) -> int:
        return self.add((INR, a))

    def proj(self, i: int, a: int) -> int:
        return self.add((PROJ, i, a))

    def lam(self, body: int) -> int:
        return self.add((LAM, body))

    def app(self, f: int, a: int) -> int:
        return self.add((APP, f, a))

    def tapp(self, f: int) -> int:
        return self.add((TAPP, f))

    def lift(self, n: int, d: int) -> int:
        """Shift free bound variables of ``n`` by ``d`` (crossing ``d`` lambdas)."""
        m = self._shift(n, d, 0)
        self._process()
        return self.find(m)

    def _finish(self, poly: dict) -> int:
        n = self._from_poly(poly)
        self._process()
        return self.find(n)

    # ------------------------------------------------------------ node creation

    def _intern(self, key: tuple) -> int:
        res = self._norm(key)
        if isinstance(res, int):
            return self.find(res)
        n = self.table.get(res)
        if n is not None:
            return self.find(n)
        return self._new(res)

    def _new(self, key: tuple) -> int:
        n = len(self.keys)
        self.keys.append(key)
        self._uf.append(n)
        self.parents.append(set())
        self.members.append([n])
        kind = key[0]
        if kind == BVAR:
            level = key[1] + 1
        elif kind == LAM:
            level = max(0, self._blevel[self.find(key[1])] - 1)
        else:
            level = max((self._blevel[c] for c in key_children(key)), default=0)
        self._blevel.append(level)
        self.table[key] = n
        for c in key_children(key):
            self.parents[c].add(n)
        if kind == CONST or kind in CTORS:
            self._ctor[n] = n
        if kind == CONST and key[1] == "int":
            for other in self._int_consts:
                ov = self.keys[other][2]
                if ov < key[2]:
                    self._add_bound(other, n, True)
                else:
                    self._add_bound(n, other, True)
            self._int_consts.append(n)
        return n

    # ------------------------------------------------------------ normalization

    def _norm(self, key: tuple):
        """Return a normalized key, or the id of the node ``key`` rewrites to."""
        kind = key[0]
        if kind == BIN:
            return self._norm_bin(key)
        if kind == NOT:
            a = key[1]
            ka = self.keys[a]
            if ka[0] == CONST and ka[1] == "bool":
                return self.false if ka[2] else self.true
            if ka[0] == NOT:
                return self.find(ka[1])
            return key
        if kind == SUM:
            poly: dict = {(): key[2]}
            for factors, coef in key[1]:
                self._poly_accumulate(poly, self._mono_poly(factors), coef)
            return self._from_poly_key(poly)
        if kind == PROJ:
            v = self._ctor.get(key[2])
            if v is not None and self.keys[v][0] == PAIR:
                return self.find(self.keys[v][key[1]])
            return key
        if kind == APP:
            kf = self.keys[key[1]]
            if kf[0] == LAM and self._beta_depth < _BETA_DEPTH:
                self._beta_depth += 1
                try:
                    return self._subst(kf[1], 0, key[2])
                finally:
                    self._beta_depth -= 1
            return key
        return key

    def _norm_bin(self, key: tuple):
        _, op, a, b = key
        ka, kb = self.keys[a], self.keys[b]
        if op == "==":
            if a == b:
                return self.true
            va, vb = self._ctor.get(a), self._ctor.get(b)
            if va is not None and vb is not None:
                ka2, kb2 = self.keys[va], self.keys[vb]
                if ka2[0] == CONST and kb2[0] == CONST:
                    return self.true if ka2[1:] == kb2[1:] else self.false
                if ka2[0] != kb2[0]:
                    return self.false
                if ka2[0] == PAIR:
                    return self._intern((BIN, "&&",
                                         self._intern((BIN, "==", self.find(ka2[1]), self.find(kb2[1]))),
                                         self._intern((BIN, "==", self.find(ka2[2]), self.find(kb2[2])))))
                return self._intern((BIN, "==", self.find(ka2[1]), self.find(kb2[1])))
            if a > b:
                return (BIN, op, b, a)
            return key
        if op == "<":
            if a == b:
                return self.false
            if ka[0] == CONST and kb[0] == CONST and ka[1] == "int" and kb[1] == "int":
                return self.true if ka[2] < kb[2] else self.false
            up = self.hi.get(a)
            if up is not None and up.get(b):
                return self.true
            up = self.hi.get(b)
            if up is not None and a in up:
                return self.false
            return key
        if op in ("&&", "||"):
            absorbing = op == "||"
            for x, y in ((a, b), (b, a)):
                kx = self.keys[x]
                if kx[0] == CONST and kx[1] == "bool":
                    return (self.true if absorbing else self.false) if kx[2] == absorbing else y
            if a == b:
                return a
            if a > b:
                return (BIN, op, b, a)
            return key
        if op in ("/", "%"):
            # only constant operands with a nonzero divisor fold; otherwise opaque
            if ka[0] == CONST and kb[0] == CONST and ka[1] == "int" and kb[1] == "int" and kb[2] != 0:
                x, y = ka[2], kb[2]
                q = abs(x) // abs(y)
                if op == "/":
                    val = q if (x >= 0) == (y >= 0) else -q
                else:
                    val = abs(x) % abs(y)
                    val = val if x >= 0 else -val
                return self._intern((CONST, "int", wrap32(val)))
            return key
        raise ValueError(f"unknown binary operator {op!r}")

    # ------------------------------------------------------------ polynomials

    def _poly(self, n: int) -> dict:
        n = self.find(n)
        key = self.keys[n]
        if key[0] == CONST and key[1] == "int":
            return {(): key[2]}
        if key[0] == SUM:
            poly = dict(key[1])
            poly[()] = key[2]
            return poly
        return {(n,): 1}

    def _mono_poly(self, factors: tuple) -> dict:
        """Expand a monomial whose factors may have become constants or sums."""
        coef = 1
        opaque: list[int] = []
        linear: Optional[dict] = None
        for f in factors:
            f = self.find(f)
            kf = self.keys[f]
            if kf[0] == CONST and kf[1] == "int":
                coef *= kf[2]
            elif kf[0] == SUM:
                p = self._poly(f)
                if len(p) == 1 or (len(p) == 2 and p.get((), 0) == 0):
                    ((m, c),) = [(m, c) for m, c in p.items() if m != () and c != 0] or [((), 0)]
                    coef *= c
                    opaque.extend(m)
                elif linear is None:
                    linear = p
                else:
                    opaque.append(f)
            else:
                opaque.append(f)
        if linear is not None and opaque:
            # more than one non-constant factor: keep the sum opaque (no distribution)
            opaque.append(self._from_poly(linear))
            linear = None
        if linear is not None:
            return {m: c * coef for m, c in linear.items()}
        return {tuple(sorted(opaque)): coef}

    @staticmethod
    def _poly_accumulate(acc: dict, poly: dict, scale: int) -> None:
        for m, c in poly.items():
            acc[m] = acc.get(m, 0) + c * scale

    def _poly_add(self, p: dict, q: dict, scale: int) -> dict:
        out = dict(p)
        self._poly_accumulate(out, q, scale)
        return out

    def _from_poly_key(self, poly: dict):
        poly = {m: wrap32(c) for m, c in poly.items()}
        const = poly.pop((), 0)
        poly = {m: c for m, c in poly.items() if c != 0}
        if not poly:
            return self._intern((CONST, "int", const))
        if const == 0 and len(poly) == 1:
            ((m, c),) = poly.items()
            if c == 1 and len(m) == 1:
                return self.find(m[0])
        return (SUM, tuple(sorted(poly.items())), const)

    def _from_poly(self, poly: dict) -> int:
        res = self._from_poly_key(poly)
        if isinstance(res, int):
            return res
        return self._intern(res)

    def _mul(self, a: int, b: int) -> int:
        pa, pb = self._poly(a), self._poly(b)
        if set(pa) <= {()}:
            return self._from_poly({m: c * pa.get((), 0) for m, c in pb.items()})
        if set(pb) <= {()}:
            return self._from_poly({m: c * pb.get((), 0) for m, c in pa.items()})

        def mono(n, p):
            items = [(m, c) for m, c in p.items() if c != 0]
            if len(items) == 1 and items[0][0] != ():
                return items[0]
            return (n,), 1

        ma, ca = mono(a, pa)
        mb, cb = mono(b, pb)
        return self._from_poly({tuple(sorted(ma + mb)): ca * cb})

    # ------------------------------------------------------------ binders

    def _shift(self, n: int, d: int, cutoff: int) -> int:
        n = self.find(n)
        if d == 0 or self._blevel[n] <= cutoff:
            return n
        key = self.keys[n]
        if key[0] == BVAR:
            return self._intern((BVAR, key[1] + d)) if key[1] >= cutoff else n
        if key[0] == LAM:
            return self._intern((LAM, self._shift(key[1], d, cutoff + 1)))
        return self._intern(map_children(key, lambda c: self._shift(c, d, cutoff)))

    def _subst(self, n: int, k: int, arg: int) -> int:
        """Replace bound variable ``k`` in ``n`` by ``arg``, closing the binder."""
        n = self.find(n)
        if self._blevel[n] <= k:
            return n
        key = self.keys[n]
        if key[0] == BVAR:
            j = key[1]
            if j == k:
                return self._shift(arg, k, 0)
            return self._intern((BVAR, j - 1)) if j > k else n
        if key[0] == LAM:
            return self._intern((LAM, self._subst(key[1], k + 1, arg)))
        return self._intern(map_children(key, lambda c: self._subst(c, k, arg)))

    # ------------------------------------------------------------ bounds

    def _add_bound(self, a: int, b: int, strict: bool) -> None:
        """Record ``a < b`` (strict) or ``a <= b`` and close transitively."""
        a, b = self.find(a), self.find(b)
        if a == b:
            if strict:
                self._set_inconsistent("a < a")
            return
        known = self.hi.get(a, {}).get(b)
        if known is not None and (known or not strict):
            return
        lows = [(a, False)] + [(self.find(x), s) for x, s in self.lo.get(a, {}).items()]
        highs = [(b, False)] + [(self.find(x), s) for x, s in self.hi.get(b, {}).items()]
        for lo, s1 in lows:
            for hi, s2 in highs:
                s = strict or s1 or s2
                if lo == hi:
                    if s:
                        self._set_inconsistent("cyclic strict bound")
                    continue
                known = self.hi.setdefault(lo, {}).get(hi)
                if known is not None and (known or not s):
                    continue
                self.hi[lo][hi] = s
                self.lo.setdefault(hi, {})[lo] = s
                self._bound_derived(lo, hi, s)

    def _bound_derived(self, lo: int, hi: int, strict: bool) -> None:
        klo, khi = self.keys[lo], self.keys[hi]
        if klo[0] == CONST and khi[0] == CONST and klo[1] == khi[1] == "int":
            if klo[2] > khi[2] or (strict and klo[2] == khi[2]):
                self._set_inconsistent("bound contradicts constants")
            return
        n = self.table.get((BIN, "<", lo, hi))
        if n is not None and strict:
            self._pending.append((n, self.true, "lt-transitivity"))
        n = self.table.get((BIN, "<", hi, lo))
        if n is not None:
            self._pending.append((n, self.false, "lt-transitivity"))
        if strict:
            n = self.table.get((BIN, "==", min(lo, hi), max(lo, hi)))
            if n is not None:
                self._pending.append((n, self.false, "lt-transitivity"))

    # ------------------------------------------------------------ merging

    def _set_inconsistent(self, why: str) -> None:
        if not self.inconsistent and self.trace:
            self.trace(f"inconsistent: {why}")
        self.inconsistent = True

    def _reaches(self, src: int, target: int) -> bool:
        stack = [src]
        seen = set()
        while stack:
            n = self.find(stack.pop())
            if n == target:
                return True
            if n in seen:
                continue
            seen.add(n)
            stack.extend(key_children(self.keys[n]))
        return False

    def _truth(self, c: int) -> Optional[bool]:
        if c == self.find(self.true):
            return True
        if c == self.find(self.false):
            return False
        return None

    def _process(self) -> None:
        pending = self._pending
        while pending:
            if self.inconsistent or self.incomplete:
                pending.clear()
                return
            a, b, rule = pending.popleft()
            self._union(self.find(a), self.find(b), rule)

    def _union(self, a: int, b: int, rule: str) -> None:
        if a == b:
            return
        ka, kb = self.keys[a], self.keys[b]
        if ka[0] == BVAR or kb[0] == BVAR:
            self.refused += 1
            return
        self.merge_count += 1
        if self.merge_count > self.merge_cap:
            self.incomplete = True
            if self.trace:
                self.trace("merge cap exceeded")
            return
        if (_RANK[ka[0]], a) <= (_RANK[kb[0]], b):
            rep, lose = a, b
        else:
            rep, lose = b, a
        if key_children(self.keys[rep]) and self._reaches(rep, lose):
            rep, lose = lose, rep
        truth_rep, truth_lose = self._truth(rep), self._truth(lose)
        if truth_rep is not None and truth_lose is not None:
            self._set_inconsistent("true == false")
            return
        vr, vl = self._ctor.get(rep), self._ctor.get(lose)
        if vr is not None and vl is not None:
            kr, kl = self.keys[vr], self.keys[vl]
            if kr[0] == CONST or kl[0] == CONST or kr[0] != kl[0]:
                if kr != kl:
                    self._set_inconsistent(f"{self.show(vr)} == {self.show(vl)}")
                    return
            else:
                for x, y in zip(key_children(kr), key_children(kl)):
                    self._pending.append((x, y, "injectivity"))
        if self.trace:
            self.trace(f"merge {self.merge_count}: {self.show(rep)} <- {self.show(lose)} [{rule}]")

        self._uf[lose] = rep
        if vr is None and vl is not None:
            self._ctor[rep] = vl
        self._ctor.pop(lose, None)
        newly = None
        if truth_rep is not None:
            newly = (list(self.members[lose]), truth_rep)
        elif truth_lose is not None:
            newly = (list(self.members[rep]), truth_lose)
        self.members[rep].extend(self.members[lose])
        self.members[lose] = []

        for x, s in list(self.hi.pop(lose, {}).items()):
            self.lo.get(self.find(x), {}).pop(lose, None)
            self._add_bound(rep, x, s)
        for x, s in list(self.lo.pop(lose, {}).items()):
            self.hi.get(self.find(x), {}).pop(lose, None)
            self._add_bound(x, rep, s)

        if newly is not None:
            nodes, value = newly
            for m in nodes:
                self._propagate(m, value)

        moved = self.parents[lose]
        self.parents[lose] = set()
        self.parents[rep] |= moved
        for p in list(moved):
            self._repair(p)
        # a class that gained a constructor may unlock projections and equalities
        if vr is None and vl is not None:
            for p in list(self.parents[rep]):
                self._repair(p, force=True)

    def _propagate(self, m: int, value: bool) -> None:
        key = self.keys[m]
        kind = key[0]
        if kind == NOT:
            self._pending.append((key[1], self.false if value else self.true, "not"))
        elif kind == BIN:
            op, x, y = key[1], key[2], key[3]
            if op == "&&" and value:
                self._pending.append((x, self.true, "and-split"))
                self._pending.append((y, self.true, "and-split"))
            elif op == "||" and not value:
                self._pending.append((x, self.false, "or-split"))
                self._pending.append((y, self.false, "or-split"))
            elif op == "==" and value:
                self._pending.append((x, y, "eq"))
                self._solve_linear(x, y)
            elif op == "<":
                if value:
                    self._add_bound(x, y, True)
                else:
                    self._add_bound(y, x, False)

    def _solve_linear(self, x: int, y: int) -> None:
        """For an integer equation, orient one unit-coefficient atom to the rest."""
        kx, ky = self.keys[self.find(x)], self.keys[self.find(y)]
        if not any(k[0] == SUM or (k[0] == CONST and k[1] == "int") for k in (kx, ky)):
            return
        diff = self._poly_add(self._poly(x), self._poly(y), -1)
        diff = {m: wrap32(c) for m, c in diff.items() if wrap32(c) != 0}
        candidates = [m[0] for m, c in diff.items()
                      if len(m) == 1 and c in (1, -1) and self.keys[self.find(m[0])][0] == ATOM]
        if not candidates:
            return
        atom = max(candidates)
        c = diff.pop((atom,))
        # c*atom + rest == 0  ->  atom == -rest / c  (c is +-1)
        rest = {m: -v * c for m, v in diff.items()}
        self._pending.append((atom, self._from_poly(rest), "linear"))

    def _repair(self, p: int, force: bool = False) -> None:
        old = self.keys[p]
        new = self.canon_key(old)
        if new == old and not force:
            return
        if self.table.get(old) == p:
            del self.table[old]
        res = self._norm(new)
        if isinstance(res, int):
            self.keys[p] = new
            if self.table.setdefault(new, p) == p:
                pass
            for c in key_children(new):
                self.parents[c].add(p)
            if self.find(res) != self.find(p):
                self._pending.append((p, res, "rewrite"))
            return
        self.keys[p] = res
        for c in key_children(res):
            self.parents[self.find(c)].add(p)
        other = self.table.get(res)
        if other is None:
            self.table[res] = p
        elif self.find(other) != self.find(p):
            self._pending.append((p, other, "congruence"))

    # ------------------------------------------------------------ inspection

    def show(self, n: int, depth: int = 6) -> str:
        n = self.find(n)
        key = self.keys[n]
        kind = key[0]
        if depth <= 0:
            return "..."
        if kind == CONST:
            v = key[2]
            return "unit" if v is None else (str(v).lower() if isinstance(v, bool) else str(v))
        if kind == ATOM:
            return str(key[1])
        if kind == BVAR:
            return f"#{key[1]}"
        if kind == BIN:
            return f"({self.show(key[2], depth - 1)} {key[1]} {self.show(key[3], depth - 1)})"
        if kind == NOT:
            return f"!{self.show(key[1], depth - 1)}"
        if kind == SUM:
            parts = []
            for factors, c in key[1]:
                term = "*".join(self.show(f, depth - 1) for f in factors)
                parts.append(term if c == 1 else f"{c}*{term}")
            if key[2]:
                parts.append(str(key[2]))
            return "(" + " + ".join(parts) + ")"
        if kind == PROJ:
            return f"{self.show(key[2], depth - 1)}._{key[1]}"
        if kind == LAM:
            return f"(\\. {self.show(key[1], depth - 1)})"
        if kind == APP:
            return f"({self.show(key[1], depth - 1)} {self.show(key[2], depth - 1)})"
        if kind == TAPP:
            return f"{self.show(key[1], depth - 1)}[_]"
        inner = ", ".join(self.show(c, depth - 1) for c in key[1:])
        return f"{kind}({inner})"

    def invariant_violations(self) -> list[str]:
        """Check canonical idempotence, congruence and bound-variable isolation."""
        out = []
        for n in range(len(self.keys)):
            r = self.find(n)
            if self.find(r) != r or self._uf[r] != r:
                out.append(f"canonical map not idempotent at {n}")
        seen: dict[tuple, int] = {}
        for n, key in enumerate(self.keys):
            ck = self.canon_key(key)
            if ck != key and not self.inconsistent and not self.incomplete:
                out.append(f"stored key of {n} has non-canonical children")
            cls = self.find(n)
            prev = seen.setdefault(ck, cls)
            if prev != cls and not self.inconsistent and not self.incomplete:
                out.append(f"congruence broken: {self.show(n)} vs class {self.show(prev)}")
            if key[0] == BVAR and (cls != n or len(self.members[n]) != 1):
                out.append(f"bound variable {key} was merged")
        return out
