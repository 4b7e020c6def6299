"""Exact decision oracles for identities over [0,1] and the non-negative reals.

Identities of involutive hoops reduce to validity over the unit interval
with x + y read as min(x + y, 1) and x -> y as max(y - x, 0); identities
of Wajsberg hoops reduce to validity over the non-negative reals with
ordinary addition and truncated subtraction.  Both are decided here by
splitting each side of the identity into linear pieces and testing every
pair of overlapping pieces for a disagreement with Fourier-Motzkin
elimination.  All arithmetic is exact rational arithmetic; an Invalid
verdict always carries a rational witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .syntax import (
    AlgTerm,
    Identity,
    TImp,
    TOne,
    TPlus,
    TVar,
    TZero,
    term_has_one,
)

UNIT = "unit"
NONNEG = "nonneg"

_ZERO = Fraction(0)
_ONE = Fraction(1)


@dataclass(frozen=True)
class LinExpr:
    """A rational linear expression: sum of coeff * var plus a constant."""

    coeffs: tuple[tuple[str, Fraction], ...]  # sorted by variable, no zeros
    const: Fraction

    @staticmethod
    def constant(c) -> "LinExpr":
        return LinExpr((), Fraction(c))

    @staticmethod
    def variable(name: str) -> "LinExpr":
        return LinExpr(((name, _ONE),), _ZERO)

    def _combine(self, other: "LinExpr", sign: int) -> "LinExpr":
        acc = dict(self.coeffs)
        for v, c in other.coeffs:
            acc[v] = acc.get(v, _ZERO) + sign * c
        coeffs = tuple(sorted((v, c) for v, c in acc.items() if c != 0))
        return LinExpr(coeffs, self.const + sign * other.const)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, k) -> "LinExpr":
        k = Fraction(k)
        if k == 0:
            return LinExpr((), _ZERO)
        return LinExpr(tuple((v, c * k) for v, c in self.coeffs), self.const * k)

    def coeff(self, var: str) -> Fraction:
        for v, c in self.coeffs:
            if v == var:
                return c
        return _ZERO

    def drop(self, var: str) -> "LinExpr":
        return LinExpr(tuple((v, c) for v, c in self.coeffs if v != var), self.const)

    def evaluate(self, point: dict[str, Fraction]) -> Fraction:
        return self.const + sum((c * point[v] for v, c in self.coeffs), _ZERO)

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def __str__(self) -> str:
        parts = []
        for v, c in self.coeffs:
            if c == 1:
                parts.append(v)
            elif c == -1:
                parts.append(f"-{v}")
            else:
                parts.append(f"{c}*{v}")
        if self.const != 0 or not parts:
            parts.append(str(self.const))
        return " + ".join(parts).replace("+ -", "- ")


#: A constraint is (e, strict) read as e >= 0, or e > 0 when strict.
Constraint = tuple[LinExpr, bool]


def fm_feasible(constraints) -> dict[str, Fraction] | None:
    """Exact feasibility by Fourier-Motzkin elimination.

    Returns a rational sample point satisfying every constraint, or None
    when the system has no solution.  Strict and non-strict inequalities
    are tracked separately; sampling prefers interior points (midpoints
    of the final bound interval) so strict constraints come out slack.
    """
    system = [(e, s) for e, s in constraints]
    names = sorted({v for e, _ in system for v in e.variables})
    levels = []
    for var in reversed(names):
        lows, ups, rest = [], [], []
        for e, s in system:
            c = e.coeff(var)
            if c == 0:
                rest.append((e, s))
                continue
            bound = e.drop(var).scale(Fraction(-1, 1) / c)
            if c > 0:  # var >= bound
                lows.append((bound, s))
            else:  # var <= bound
                ups.append((bound, s))
        for lo, sl in lows:
            for up, su in ups:
                rest.append((up - lo, sl or su))
        levels.append((var, lows, ups))
        system = rest

    for e, s in system:
        if e.const < 0 or (s and e.const == 0):
            return None

    point: dict[str, Fraction] = {}
    for var, lows, ups in reversed(levels):
        lo_vals = [(b.evaluate(point), s) for b, s in lows]
        up_vals = [(b.evaluate(point), s) for b, s in ups]
        if not lo_vals and not up_vals:
            point[var] = _ZERO
            continue
        if not up_vals:
            lo = max(v for v, _ in lo_vals)
            strict = any(s for v, s in lo_vals if v == lo)
            point[var] = lo + 1 if strict else lo
            continue
        if not lo_vals:
            up = min(v for v, _ in up_vals)
            strict = any(s for v, s in up_vals if v == up)
            point[var] = up - 1 if strict else up
            continue
        lo = max(v for v, _ in lo_vals)
        up = min(v for v, _ in up_vals)
        if lo < up:
            point[var] = (lo + up) / 2
        else:
            # elimination guarantees lo == up with both bounds attained
            # non-strictly; anything else is an internal error
            if lo > up or any(s for v, s in lo_vals + up_vals if v == lo):
                raise RuntimeError("inconsistent bounds after elimination")
            point[var] = lo

    for e, s in constraints:
        val = e.evaluate({v: point.get(v, _ZERO) for v in e.variables})
        if val < 0 or (s and val == 0):
            raise RuntimeError("sample point does not satisfy the system")
    return point


# ---------------------------------------------------------------------------
# Piecewise-linear case analysis

@dataclass(frozen=True)
class Piece:
    """Within its constraints, the piece's value equals the term's value."""

    constraints: tuple[Constraint, ...]
    value: LinExpr


def _box(names, domain) -> list[Constraint]:
    out: list[Constraint] = []
    for v in names:
        out.append((LinExpr.variable(v), False))
        if domain == UNIT:
            out.append((LinExpr.constant(1) - LinExpr.variable(v), False))
    return out


def _clip(pieces, box, upper: bool):
    """Apply max(value, 0) (or min(value, 1) when ``upper``) to every piece.

    Pieces whose truncation can only go one way under the domain box are
    not split; min/max splits keep the linear side non-strict and the
    constant side strict, so the two sides are disjoint.
    """
    out = []
    for cons, val in pieces:
        edge = LinExpr.constant(1) - val if upper else val
        flat = LinExpr.constant(1) if upper else LinExpr.constant(0)
        base = list(box) + list(cons)
        if fm_feasible(base + [(edge.scale(-1), True)]) is None:
            out.append((cons, val))  # truncation never bites
        elif fm_feasible(base + [(edge, True)]) is None:
            out.append((cons, flat))  # truncation always bites
        else:
            out.append((cons + ((edge, False),), val))
            out.append((cons + ((edge.scale(-1), True),), flat))
    return out


@lru_cache(maxsize=None)
def _split(term: AlgTerm, domain: str) -> tuple[tuple[tuple[Constraint, ...], LinExpr], ...]:
    if domain == NONNEG and term_has_one(term):
        raise ValueError("constant 1 has no meaning over the non-negative reals")
    box = tuple(_box(sorted(set(_term_vars(term))), domain))
    match term:
        case TVar(name):
            return (((), LinExpr.variable(name)),)
        case TZero():
            return (((), LinExpr.constant(0)),)
        case TOne():
            return (((), LinExpr.constant(1)),)
        case TPlus(a, b):
            combined = _merge(_split(a, domain), _split(b, domain), box, minus=False)
            if domain == UNIT:
                combined = _clip(combined, box, upper=True)
            return _dedupe(combined)
        case TImp(a, b):
            combined = _merge(_split(a, domain), _split(b, domain), box, minus=True)
            return _dedupe(_clip(combined, box, upper=False))
    raise TypeError(f"not a term: {term!r}")


def _merge(left, right, box, minus: bool):
    out = []
    for lc, lv in left:
        for rc, rv in right:
            cons = lc + tuple(c for c in rc if c not in lc)
            if fm_feasible(list(box) + list(cons)) is None:
                continue
            out.append((cons, rv - lv if minus else lv + rv))
    return out


def _dedupe(pairs):
    seen = set()
    out = []
    for cons, val in pairs:
        key = (frozenset(cons), val)
        if key not in seen:
            seen.add(key)
            out.append((cons, val))
    return tuple(out)


def _term_vars(term: AlgTerm):
    match term:
        case TVar(name):
            return (name,)
        case TPlus(a, b) | TImp(a, b):
            return _term_vars(a) + _term_vars(b)
        case _:
            return ()


def case_split(term: AlgTerm, domain: str) -> list[Piece]:
    """Cover the domain box with linear pieces for the term's value."""
    return [Piece(cons, val) for cons, val in _split(term, domain)]


# ---------------------------------------------------------------------------
# Evaluation and verdicts

def interval_eval(term: AlgTerm, alpha: dict[str, Fraction], domain: str) -> Fraction:
    """Exact evaluation; certifies witnesses independently of case_split."""
    point = {v: Fraction(x) for v, x in alpha.items()}
    for v, x in point.items():
        if x < 0 or (domain == UNIT and x > 1):
            raise ValueError(f"{v} = {x} is outside the {domain} domain")

    def ev(t: AlgTerm) -> Fraction:
        match t:
            case TVar(name):
                try:
                    return point[name]
                except KeyError:
                    raise ValueError(f"unbound variable {name!r}") from None
            case TZero():
                return _ZERO
            case TOne():
                if domain == NONNEG:
                    raise ValueError("constant 1 has no meaning over the "
                                     "non-negative reals")
                return _ONE
            case TPlus(a, b):
                s = ev(a) + ev(b)
                return min(s, _ONE) if domain == UNIT else s
            case TImp(a, b):
                return max(ev(b) - ev(a), _ZERO)
        raise TypeError(f"not a term: {t!r}")

    return ev(term)


@dataclass(frozen=True)
class Verdict:
    valid: bool
    witness: dict[str, Fraction] | None = None

    def __bool__(self):
        return self.valid


def _decide(identity: Identity, domain: str, assume) -> Verdict:
    names = identity.vars
    box = _box(names, domain)
    extra = list(assume)
    left = _split(identity.lhs, domain)
    right = _split(identity.rhs, domain)
    for lc, lv in left:
        for rc, rv in right:
            if lv == rv:
                continue
            base = box + extra + list(lc) + list(rc)
            for diff in (lv - rv, rv - lv):
                point = fm_feasible(base + [(diff, True)])
                if point is None:
                    continue
                witness = {v: point.get(v, _ZERO) for v in names}
                lval = interval_eval(identity.lhs, witness, domain)
                rval = interval_eval(identity.rhs, witness, domain)
                if lval == rval:
                    raise RuntimeError("case analysis produced a bogus witness")
                return Verdict(False, witness)
    return Verdict(True)


def decide_involutive(identity: Identity, assume=()) -> Verdict:
    """Decide an identity over the unit interval.

    Valid here means valid in every involutive hoop.  ``assume`` may add
    side constraints (linear in the identity's variables) under which
    validity is tested.
    """
    return _decide(identity, UNIT, assume)


def decide_wajsberg(identity: Identity, assume=()) -> Verdict:
    """Decide an identity over the non-negative reals.

    Valid here means valid in every Wajsberg hoop whose order embeds in
    the reals' negative cone; the identity must be in the unbounded
    signature.
    """
    if term_has_one(identity.lhs) or term_has_one(identity.rhs):
        raise ValueError("constant 1 has no meaning over the non-negative reals")
    return _decide(identity, NONNEG, assume)
