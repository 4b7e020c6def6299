"""Finite pocrims as operation tables.

A structure on carrier {0..n-1} is stored as two n-by-n tables for
addition and implication; element 0 is always the monoid identity and
the order is derived, x >= y iff imp[x][y] == 0.  Everything here is
exhaustive table computation: law checking, classification flags,
constructions (ordinal sum, product, quotient), homomorphism search and
enumeration of all pocrims of a given order up to isomorphism.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .syntax import AlgTerm, TImp, TOne, TPlus, TVar, TZero

Table = tuple[tuple[int, ...], ...]


def _freeze(rows) -> Table:
    return tuple(tuple(int(v) for v in row) for row in rows)


@dataclass(frozen=True)
class FiniteAlgebra:
    """Operation tables over carrier {0..n-1} with 0 the monoid identity."""

    add: Table
    imp: Table
    names: tuple[str, ...] | None = field(default=None, compare=False)

    @property
    def n(self) -> int:
        return len(self.add)

    def ge(self, x: int, y: int) -> bool:
        """Derived order: x >= y iff x -> y = 0."""
        return self.imp[x][y] == 0

    @cached_property
    def one(self) -> int | None:
        """The annihilator (x + 1 = 1 for all x), if the tables have one."""
        for e in range(self.n):
            if all(self.add[x][e] == e for x in range(self.n)):
                return e
        return None

    def delta(self, x: int) -> int:
        """Double negation x^^ = (x -> 1) -> 1."""
        one = self.one
        if one is None:
            raise ValueError("no annihilator: double negation is undefined")
        return self.imp[self.imp[x][one]][one]

    def name_of(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def index_of(self, name: str) -> int:
        if self.names and name in self.names:
            return self.names.index(name)
        try:
            i = int(name)
        except ValueError:
            raise ValueError(f"unknown element {name!r}") from None
        if not 0 <= i < self.n:
            raise ValueError(f"element index {i} out of range")
        return i


def make_algebra(add, imp, names=None) -> FiniteAlgebra:
    add, imp = _freeze(add), _freeze(imp)
    n = len(add)
    for label, table in (("add", add), ("imp", imp)):
        if len(table) != n or any(len(row) != n for row in table):
            raise ValueError(f"{label} table is not {n}x{n}")
        if any(not 0 <= v < n for row in table for v in row):
            raise ValueError(f"{label} table has entries outside the carrier")
    if names is not None:
        names = tuple(names)
        if len(names) != n:
            raise ValueError("names do not match the carrier size")
    return FiniteAlgebra(add, imp, names)


# ---------------------------------------------------------------------------
# Law checking

POCRIM_LAWS = ("m1", "m2", "m3", "o1", "o2", "o3", "o4", "b", "r")


@dataclass(frozen=True)
class PocrimReport:
    """Per-law result: law name -> first violating tuple, or None if it holds."""

    witnesses: dict[str, tuple | None]

    @property
    def passed(self) -> bool:
        return all(w is None for w in self.witnesses.values())

    def failing(self) -> list[str]:
        return [law for law, w in self.witnesses.items() if w is not None]


def check_pocrim(alg: FiniteAlgebra) -> PocrimReport:
    """Exhaustively evaluate the pocrim laws, reporting one witness per failure."""
    n, add, imp = alg.n, alg.add, alg.imp
    rng = range(n)
    ge = [[imp[x][y] == 0 for y in rng] for x in rng]
    out: dict[str, tuple | None] = {}

    def first(law, it):
        out[law] = next(it, None)

    first("m1", ((x, y, z) for x in rng for y in rng for z in rng
                 if add[add[x][y]][z] != add[x][add[y][z]]))
    first("m2", ((x, y) for x in rng for y in rng if add[x][y] != add[y][x]))
    first("m3", ((x,) for x in rng if add[x][0] != x))
    first("o1", ((x,) for x in rng if not ge[x][x]))
    first("o2", ((x, y, z) for x in rng for y in rng for z in rng
                 if ge[x][y] and ge[y][z] and not ge[x][z]))
    first("o3", ((x, y) for x in rng for y in rng
                 if ge[x][y] and ge[y][x] and x != y))
    first("o4", ((x, y, z) for x in rng for y in rng for z in rng
                 if ge[x][y] and not ge[add[x][z]][add[y][z]]))
    first("b", ((x,) for x in rng if not ge[x][0]))
    first("r", ((x, y, z) for x in rng for y in rng for z in rng
                if ge[add[x][y]][z] != ge[x][imp[y][z]]))
    return PocrimReport(out)


# ---------------------------------------------------------------------------
# Ideals

def ideals(alg: FiniteAlgebra) -> list[frozenset[int]]:
    """All subsets containing 0 that are downward closed and closed under +."""
    n, add, imp = alg.n, alg.add, alg.imp
    found = []
    others = list(range(1, n))
    for bits in range(1 << len(others)):
        subset = {0} | {others[i] for i in range(len(others)) if bits >> i & 1}
        if any(imp[x][y] == 0 and y not in subset for x in subset for y in range(n)):
            continue
        if any(add[x][y] not in subset for x in subset for y in subset):
            continue
        found.append(frozenset(subset))
    found.sort(key=lambda s: (len(s), sorted(s)))
    return found


def ideal_generated(alg: FiniteAlgebra, xs) -> frozenset[int]:
    """Least ideal containing xs: downward closure of finite sums."""
    n, add, imp = alg.n, alg.add, alg.imp
    current = {0} | set(xs)
    while True:
        grown = set(current)
        grown.update(add[x][y] for x in current for y in current)
        grown.update(y for x in grown.copy() for y in range(n) if imp[x][y] == 0)
        if grown == current:
            return frozenset(current)
        current = grown


def is_archimedean(alg: FiniteAlgebra) -> bool:
    """Every nonzero x has nx >= y for each nonzero y and some multiple n."""
    n, add, imp = alg.n, alg.add, alg.imp
    for x in range(1, n):
        reachable = set()
        acc = x
        while acc not in reachable:
            reachable.add(acc)
            acc = add[acc][x]
        for y in range(1, n):
            if not any(imp[m][y] == 0 for m in reachable):
                return False
    return True


# ---------------------------------------------------------------------------
# Classification

@dataclass(frozen=True)
class ClassificationReport:
    bounded: bool
    involutive: bool
    hoop: bool
    wajsberg: bool
    idempotent: bool
    naturally_ordered: bool
    simple: bool
    subdirectly_irreducible: bool
    #: for each false flag, a violating tuple checkable by table lookup
    witnesses: dict[str, tuple]

    FLAGS = ("bounded", "involutive", "hoop", "wajsberg", "idempotent",
             "naturally_ordered", "simple", "subdirectly_irreducible")

    def flag(self, name: str) -> bool:
        return getattr(self, name)


def classify(alg: FiniteAlgebra) -> ClassificationReport:
    """Compute classification flags by exhaustive table checks.

    Requires the tables to pass :func:`check_pocrim`.  Simplicity and
    subdirect irreducibility are determined from the ideal lattice: simple
    means only the two trivial ideals exist, subdirectly irreducible means
    the nonzero ideals have a least member.
    """
    report = check_pocrim(alg)
    if not report.passed:
        raise ValueError(f"not a pocrim; failing laws: {report.failing()}")
    n, add, imp = alg.n, alg.add, alg.imp
    rng = range(n)
    witnesses: dict[str, tuple] = {}

    one = alg.one
    bounded = one is not None

    # a finite pocrim always has an annihilator (the sum of all elements)
    bad = next(((x,) for x in rng if alg.delta(x) != x), None) if bounded else None
    involutive = bounded and bad is None
    if bad is not None:
        witnesses["involutive"] = bad

    cwc = next(((x, y) for x in rng for y in rng
                if add[x][imp[x][y]] != add[y][imp[y][x]]), None)
    hoop = cwc is None
    if cwc:
        witnesses["hoop"] = cwc

    waj = next(((x, y) for x in rng for y in rng
                if imp[imp[x][y]][y] != imp[imp[y][x]][x]), None)
    wajsberg = hoop and waj is None
    if not wajsberg:
        witnesses["wajsberg"] = cwc if cwc else waj

    idem = next(((x,) for x in rng if add[x][x] != x), None)
    idempotent = idem is None
    if idem:
        witnesses["idempotent"] = idem

    nat = next(((x, y) for x in rng for y in rng
                if imp[x][y] == 0 and all(add[y][z] != x for z in rng)), None)
    naturally_ordered = nat is None
    if nat:
        witnesses["naturally_ordered"] = nat

    ideal_list = ideals(alg)
    proper = [i for i in ideal_list if 0 < len(i) - 1 < n - 1]
    simple = not proper
    if proper:
        witnesses["simple"] = tuple(sorted(proper[0]))

    nonzero = [i for i in ideal_list if len(i) > 1]
    if not nonzero:
        subdirectly_irreducible = False
        witnesses["subdirectly_irreducible"] = ()
    else:
        least = min(nonzero, key=len)
        subdirectly_irreducible = all(least <= i for i in nonzero)
        if not subdirectly_irreducible:
            others = [i for i in nonzero if not least <= i]
            witnesses["subdirectly_irreducible"] = (
                tuple(sorted(least)), tuple(sorted(others[0])))

    return ClassificationReport(
        bounded=bounded, involutive=involutive, hoop=hoop, wajsberg=wajsberg,
        idempotent=idempotent, naturally_ordered=naturally_ordered,
        simple=simple, subdirectly_irreducible=subdirectly_irreducible,
        witnesses=witnesses)


# ---------------------------------------------------------------------------
# Constructions

def ordinal_sum(c: FiniteAlgebra, d: FiniteAlgebra) -> FiniteAlgebra:
    """Stack d minus its zero on top of c.

    For x in the lower part and nonzero y in the upper part: x + y = y,
    x -> y = y and y -> x = 0.  The result is a hoop iff both parts are.
    """
    nc, nd = c.n, d.n
    n = nc + nd - 1

    def up(j):  # index of d's element j inside the sum
        return 0 if j == 0 else nc + j - 1

    add = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(n):
            if x < nc and y < nc:
                add[x][y] = c.add[x][y]
                imp[x][y] = c.imp[x][y]
            elif x >= nc and y >= nc:
                add[x][y] = up(d.add[x - nc + 1][y - nc + 1])
                imp[x][y] = up(d.imp[x - nc + 1][y - nc + 1])
            elif x < nc:  # y in upper part
                add[x][y] = y
                imp[x][y] = y
            else:  # x upper, y lower
                add[x][y] = x
                imp[x][y] = 0

    names = None
    if c.names and d.names:
        names = c.names + d.names[1:]
    return make_algebra(add, imp, names)


def direct_product(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise tables on the product carrier; (x, y) -> x * b.n + y."""
    na, nb = a.n, b.n
    n = na * nb

    def pair(x, y):
        return x * nb + y

    add = [[0] * n for _ in range(n)]
    imp = [[0] * n for _ in range(n)]
    for x1 in range(na):
        for y1 in range(nb):
            for x2 in range(na):
                for y2 in range(nb):
                    add[pair(x1, y1)][pair(x2, y2)] = pair(a.add[x1][x2], b.add[y1][y2])
                    imp[pair(x1, y1)][pair(x2, y2)] = pair(a.imp[x1][x2], b.imp[y1][y2])
    names = None
    if a.names and b.names:
        names = tuple(f"({a.names[x]},{b.names[y]})" for x in range(na) for y in range(nb))
    return make_algebra(add, imp, names)


def quotient(alg: FiniteAlgebra, ideal: frozenset[int] | set[int]):
    """Quotient of a hoop by an ideal; returns (algebra, projection).

    Elements x, y are identified when (x -> y) + (y -> x) lies in the
    ideal.  Only hoops are accepted: the ideal/congruence correspondence
    this relies on does not hold for general pocrims.
    """
    ideal = frozenset(ideal)
    if ideal not in set(ideals(alg)):
        raise ValueError("not an ideal of this algebra")
    if not classify(alg).hoop:
        raise ValueError("quotients are only defined for hoops")
    n, add, imp = alg.n, alg.add, alg.imp

    def related(x, y):
        return add[imp[x][y]][imp[y][x]] in ideal

    classes: list[list[int]] = []
    for x in range(n):
        for cls in classes:
            if related(x, cls[0]):
                cls.append(x)
                break
        else:
            classes.append([x])
    classes.sort(key=min)
    proj = [0] * n
    for k, cls in enumerate(classes):
        for x in cls:
            proj[x] = k

    m = len(classes)
    qadd = [[0] * m for _ in range(m)]
    qimp = [[0] * m for _ in range(m)]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            adds = {proj[add[x][y]] for x in ci for y in cj}
            imps = {proj[imp[x][y]] for x in ci for y in cj}
            if len(adds) != 1 or len(imps) != 1:
                raise ValueError("relation is not a congruence")
            qadd[i][j] = adds.pop()
            qimp[i][j] = imps.pop()
    return make_algebra(qadd, qimp), tuple(proj)


def subalgebra(alg: FiniteAlgebra, subset) -> tuple[FiniteAlgebra, dict[int, int]]:
    """Restrict the tables to a closed subset containing 0."""
    elems = sorted(set(subset))
    if not elems or elems[0] != 0:
        raise ValueError("a subalgebra must contain 0")
    pos = {x: i for i, x in enumerate(elems)}
    for x in elems:
        for y in elems:
            if alg.add[x][y] not in pos or alg.imp[x][y] not in pos:
                raise ValueError("subset is not closed under the operations")
    add = [[pos[alg.add[x][y]] for y in elems] for x in elems]
    imp = [[pos[alg.imp[x][y]] for y in elems] for x in elems]
    names = tuple(alg.name_of(x) for x in elems) if alg.names else None
    return make_algebra(add, imp, names), pos


def homomorphisms(a: FiniteAlgebra, b: FiniteAlgebra,
                  preserve_one: bool = True) -> list[tuple[int, ...]]:
    """All structure-preserving maps a -> b, found by backtracking.

    Maps fix 0; with ``preserve_one`` (the bounded signature) they must
    also send annihilator to annihilator.
    """
    na, nb = a.n, b.n
    f = [-1] * na
    f[0] = 0
    if preserve_one and a.one is not None:
        if b.one is None:
            return []
        f[a.one] = b.one
    fixed = [x for x in range(na) if f[x] >= 0]
    free = [x for x in range(na) if f[x] < 0]
    out = []

    def consistent(assigned):
        for x in assigned:
            for y in assigned:
                fx, fy = f[x], f[y]
                z = a.add[x][y]
                if f[z] >= 0 and f[z] != b.add[fx][fy]:
                    return False
                z = a.imp[x][y]
                if f[z] >= 0 and f[z] != b.imp[fx][fy]:
                    return False
        return True

    def search(k, assigned):
        if k == len(free):
            if consistent(assigned):
                out.append(tuple(f))
            return
        x = free[k]
        for v in range(nb):
            f[x] = v
            if consistent(assigned + [x]):
                search(k + 1, assigned + [x])
        f[x] = -1

    search(0, list(fixed))
    return sorted(out)


def double_negation(alg: FiniteAlgebra):
    """The map x -> x^^ together with its image.

    Returns (delta, image, closed) where delta is the value tuple, image
    the sorted image of negation and closed tells whether the image is
    closed under addition.
    """
    if alg.one is None:
        raise ValueError("double negation needs an annihilator")
    delta = tuple(alg.delta(x) for x in range(alg.n))
    image = sorted({alg.imp[x][alg.one] for x in range(alg.n)})
    closed = all(alg.add[x][y] in image for x in image for y in image)
    return delta, tuple(image), closed


# ---------------------------------------------------------------------------
# Term evaluation

def eval_term(alg: FiniteAlgebra, term: AlgTerm, assignment: dict[str, int]) -> int:
    """Bottom-up table evaluation; 1 needs an annihilator."""
    match term:
        case TVar(name):
            try:
                return assignment[name]
            except KeyError:
                raise ValueError(f"unbound variable {name!r}") from None
        case TZero():
            return 0
        case TOne():
            if alg.one is None:
                raise ValueError("constant 1 used in an algebra with no annihilator")
            return alg.one
        case TPlus(s, t):
            return alg.add[eval_term(alg, s, assignment)][eval_term(alg, t, assignment)]
        case TImp(s, t):
            return alg.imp[eval_term(alg, s, assignment)][eval_term(alg, t, assignment)]
    raise TypeError(f"not a term: {term!r}")


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms

def canonical_form(alg: FiniteAlgebra) -> bytes:
    """Minimal table serialization over all carrier relabelings fixing 0."""
    n = alg.n
    best = None
    for perm in itertools.permutations(range(1, n)):
        p = (0,) + perm  # p[old] = new
        inv = [0] * n
        for old, new in enumerate(p):
            inv[new] = old
        flat = bytearray([n])
        for table in (alg.add, alg.imp):
            for x in range(n):
                for y in range(n):
                    flat.append(p[table[inv[x]][inv[y]]])
        flat = bytes(flat)
        if best is None or flat < best:
            best = flat
    return best


def algebra_from_canonical(blob: bytes) -> FiniteAlgebra:
    n = blob[0]
    vals = list(blob[1:])
    add = [vals[i * n:(i + 1) * n] for i in range(n)]
    imp = [vals[n * n + i * n:n * n + (i + 1) * n] for i in range(n)]
    return make_algebra(add, imp)


def is_isomorphic(a: FiniteAlgebra, b: FiniteAlgebra) -> bool:
    return a.n == b.n and canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# Enumeration up to isomorphism

@dataclass(frozen=True)
class EnumerationResult:
    """Algebras sorted by canonical form; ``complete`` is False when the
    search budget ran out and the list is only a partial answer."""

    algebras: tuple[FiniteAlgebra, ...]
    complete: bool = True

    def __iter__(self):
        return iter(self.algebras)

    def __len__(self):
        return len(self.algebras)

    def __getitem__(self, i):
        return self.algebras[i]


def _labeled_posets(k: int) -> list[list[set[int]]]:
    """All partial orders on {0..k-1}, as down-set lists: ge[i] = {j : i >= j}."""
    posets: list[list[set[int]]] = [[]]
    for m in range(k):
        grown = []
        universe = list(range(m))
        for ge in posets:
            above = [{w for w in range(m) if u in ge[w]} for u in range(m)]
            for dbits in range(1 << m):
                down = {i for i in universe if dbits >> i & 1}
                if any(not ge[d] <= down for d in down):
                    continue
                rest = [u for u in universe if u not in down]
                for ubits in range(1 << len(rest)):
                    up = {rest[i] for i in range(len(rest)) if ubits >> i & 1}
                    if any(not above[u] <= up for u in up):
                        continue
                    if any(down - ge[u] for u in up):
                        continue
                    new = [s | ({m} if i in up else set()) for i, s in enumerate(ge)]
                    new.append(down | {m})
                    grown.append(new)
        posets = grown
    return posets


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0
        self.exhausted = False

    def spend(self) -> bool:
        if self.limit is None:
            return True
        self.used += 1
        if self.used > self.limit:
            self.exhausted = True
        return not self.exhausted


def _fill_monoids(n: int, ge: list[list[bool]], budget: _Budget):
    """All commutative monotone monoid tables on the given order, with
    residuals; yields (add, imp) pairs that satisfy every pocrim law."""
    cells = [(i, j) for i in range(1, n) for j in range(i, n)]
    add = [[0] * n for _ in range(n)]
    for k in range(n):
        add[0][k] = add[k][0] = k
    candidates = {
        (i, j): [v for v in range(n) if ge[v][i] and ge[v][j]]
        for (i, j) in cells
    }
    filled = [[False] * n for _ in range(n)]
    for k in range(n):
        filled[0][k] = filled[k][0] = True

    def monotone_ok(i, j, v):
        for (a, b) in cells:
            if not filled[a][b]:
                continue
            w = add[a][b]
            for (x, y) in ((a, b), (b, a)):
                if ge[i][x] and ge[j][y] and not ge[v][w]:
                    return False
                if ge[x][i] and ge[y][j] and not ge[w][v]:
                    return False
        return True

    def assoc_ok():
        for x in range(n):
            for y in range(n):
                if not filled[x][y]:
                    continue
                s = add[x][y]
                for z in range(n):
                    if filled[s][z] and filled[y][z] and filled[x][add[y][z]]:
                        if add[s][z] != add[x][add[y][z]]:
                            return False
        return True

    def residuals():
        # imp[y][z] must be a least element of {x : x + y >= z}
        imp = [[0] * n for _ in range(n)]
        for y in range(n):
            for z in range(n):
                sat = [x for x in range(n) if ge[add[x][y]][z]]
                least = next((c for c in sat if all(ge[x][c] for x in sat)), None)
                if least is None:
                    return None
                imp[y][z] = least
        return imp

    def search(k):
        if not budget.spend():
            return
        if k == len(cells):
            imp = residuals()
            if imp is not None:
                yield _freeze(add), _freeze(imp)
            return
        i, j = cells[k]
        for v in candidates[(i, j)]:
            add[i][j] = add[j][i] = v
            filled[i][j] = filled[j][i] = True
            if monotone_ok(i, j, v) and assoc_ok():
                yield from search(k + 1)
            filled[i][j] = filled[j][i] = False
        add[i][j] = add[j][i] = 0

    yield from search(0)


def _enumerate_poset(args):
    n, ge_sets, limit = args
    ge = [[False] * n for _ in range(n)]
    ge[0][0] = True
    for i, below in enumerate(ge_sets):
        x = i + 1
        ge[x][0] = ge[x][x] = True
        for j in below:
            ge[x][j + 1] = True
    budget = _Budget(limit)
    forms = set()
    for add, imp in _fill_monoids(n, ge, budget):
        alg = FiniteAlgebra(add, imp)
        if check_pocrim(alg).passed:
            forms.add(canonical_form(alg))
    return forms, budget.exhausted


_RAW_CACHE: dict[int, tuple[tuple[bytes, ...], bool]] = {}


def _enumerate_raw(n: int, budget: int | None, jobs: int):
    if budget is None and n in _RAW_CACHE and _RAW_CACHE[n][1]:
        return _RAW_CACHE[n]
    # posets on {0..n-2} model the nonzero elements; 0 sits below everything
    tasks = [(n, [poset[i] - {i} for i in range(n - 1)], budget)
             for poset in _labeled_posets(n - 1)]
    forms: set[bytes] = set()
    complete = True
    if jobs > 1 and budget is None and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part, exhausted in pool.map(_enumerate_poset, tasks, chunksize=8):
                forms |= part
                complete &= not exhausted
    else:
        for task in tasks:
            part, exhausted = _enumerate_poset(task)
            forms |= part
            complete &= not exhausted
            if not complete:
                break
    result = (tuple(sorted(forms)), complete)
    if complete and budget is None:
        _RAW_CACHE[n] = result
    return result


def enumerate_pocrims(n: int, *, hoop: bool | None = None,
                      involutive: bool | None = None,
                      idempotent: bool | None = None,
                      wajsberg: bool | None = None,
                      budget: int | None = None,
                      jobs: int = 1) -> EnumerationResult:
    """All pocrims with n elements up to isomorphism, in canonical order.

    Keyword flags filter on classification (True keeps only matching
    algebras, False only non-matching, None does not filter).  A budget
    bounds the number of search nodes; when it runs out the result is
    flagged incomplete.
    """
    if n < 1:
        raise ValueError("carrier size must be at least 1")
    if n == 1:
        algs = [make_algebra([[0]], [[0]])]
        return EnumerationResult(tuple(algs), True)
    forms, complete = _enumerate_raw(n, budget, jobs)
    algs = []
    wanted = {"hoop": hoop, "involutive": involutive,
              "idempotent": idempotent, "wajsberg": wajsberg}
    for blob in forms:
        alg = algebra_from_canonical(blob)
        cls = classify(alg)
        if all(v is None or cls.flag(k) == v for k, v in wanted.items()):
            algs.append(alg)
    return EnumerationResult(tuple(algs), complete)


# ---------------------------------------------------------------------------
# Catalog

def _lukasiewicz(n: int) -> FiniteAlgebra:
    top = n - 1
    add = [[min(i + j, top) for j in range(n)] for i in range(n)]
    imp = [[max(j - i, 0) for j in range(n)] for i in range(n)]
    names = tuple(str(Fraction(i, top)) for i in range(n))
    return make_algebra(add, imp, names)


def _goedel(n: int) -> FiniteAlgebra:
    add = [[max(i, j) for j in range(n)] for i in range(n)]
    imp = [[j if j > i else 0 for j in range(n)] for i in range(n)]
    names = ("0",) + tuple(f"x{k}" for k in range(1, n - 1)) + ("1",)
    return make_algebra(add, imp, names)


_FIXED_CATALOG = {
    "trivial": ([[0]], [[0]], ("0",)),
    "B": ([[0, 1], [1, 1]], [[0, 1], [0, 0]], ("0", "1")),
    "P4": ([[0, 1, 2, 3], [1, 3, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3]],
           [[0, 1, 2, 3], [0, 0, 1, 1], [0, 0, 0, 1], [0, 0, 0, 0]],
           ("0", "p", "q", "1")),
    "Q4": ([[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 3, 3], [3, 3, 3, 3]],
           [[0, 1, 2, 3], [0, 0, 2, 2], [0, 0, 0, 1], [0, 0, 0, 0]],
           ("0", "u", "v", "1")),
    "Q6": ([[0, 1, 2, 3, 4, 5], [1, 1, 3, 3, 4, 5], [2, 3, 3, 3, 5, 5],
            [3, 3, 3, 3, 5, 5], [4, 4, 5, 5, 5, 5], [5, 5, 5, 5, 5, 5]],
           [[0, 1, 2, 3, 4, 5], [0, 0, 2, 2, 4, 5], [0, 0, 0, 1, 4, 4],
            [0, 0, 0, 0, 4, 4], [0, 0, 0, 0, 0, 2], [0, 0, 0, 0, 0, 0]],
           ("0", "p", "q", "r", "s", "1")),
    "U": ([[0, 1, 2, 3, 4], [1, 2, 2, 4, 4], [2, 2, 2, 4, 4],
           [3, 4, 4, 4, 4], [4, 4, 4, 4, 4]],
          [[0, 1, 2, 3, 4], [0, 0, 1, 3, 3], [0, 0, 0, 3, 3],
           [0, 0, 0, 0, 1], [0, 0, 0, 0, 0]],
          ("0", "a", "b", "c", "1")),
}

CATALOG_NAMES = ("trivial", "B", "Ln", "Gn", "P4", "Q4", "Q6", "U")


def catalog(name: str) -> FiniteAlgebra:
    """Named constructors for the standard small algebras.

    Fixed tables: trivial, B, P4, Q4, Q6, U.  Families: Ln (n >= 2) are
    the evenly spaced subalgebras of the unit interval, Gn (n >= 2) the
    max/implication chains.
    """
    key = name.strip()
    if key in _FIXED_CATALOG:
        add, imp, names = _FIXED_CATALOG[key]
        return make_algebra(add, imp, names)
    if len(key) >= 2 and key[0] in "LG" and key[1:].isdigit():
        n = int(key[1:])
        if n < 2:
            raise ValueError(f"{key}: size must be at least 2")
        return _lukasiewicz(n) if key[0] == "L" else _goedel(n)
    raise ValueError(f"unknown catalog name {name!r}")


# ---------------------------------------------------------------------------
# Text format

def format_algebra(alg: FiniteAlgebra) -> str:
    lines = [f"pocrim {alg.n}"]
    if alg.one is not None:
        lines.append(f"one {alg.one}")
    lines.append("add")
    lines.extend(" ".join(str(v) for v in row) for row in alg.add)
    lines.append("imp")
    lines.extend(" ".join(str(v) for v in row) for row in alg.imp)
    return "\n".join(lines) + "\n"


class AlgebraFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_algebra(text: str) -> FiniteAlgebra:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("pocrim "):
        raise AlgebraFormatError("expected header 'pocrim <n>'", 1)
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise AlgebraFormatError("expected header 'pocrim <n>'", 1) from None
    i = 1
    declared_one = None
    if i < len(lines) and lines[i].startswith("one "):
        try:
            declared_one = int(lines[i].split()[1])
        except (IndexError, ValueError):
            raise AlgebraFormatError("expected 'one <idx>'", i + 1) from None
        i += 1

    def read_table(label, i):
        if i >= len(lines) or lines[i] != label:
            raise AlgebraFormatError(f"expected '{label}'", i + 1)
        i += 1
        rows = []
        for r in range(n):
            if i >= len(lines):
                raise AlgebraFormatError(f"missing row {r} of {label}", i + 1)
            try:
                row = [int(v) for v in lines[i].split()]
            except ValueError:
                raise AlgebraFormatError(f"bad row of {label}", i + 1) from None
            if len(row) != n or any(not 0 <= v < n for v in row):
                raise AlgebraFormatError(f"bad row of {label}", i + 1)
            rows.append(row)
            i += 1
        return rows, i

    add, i = read_table("add", i)
    imp, i = read_table("imp", i)
    if i != len(lines):
        raise AlgebraFormatError("trailing content", i + 1)
    alg = make_algebra(add, imp)
    if declared_one is not None and alg.one != declared_one:
        raise AlgebraFormatError(f"declared annihilator {declared_one} "
                                 f"does not match the tables", 2)
    return alg
