"""Hilbert-style proof checking and translation into equational proofs.

Nine logics are defined by axiom-schema sets over the shared language;
proofs are explicit step lists (schema instances with their substitution,
plus modus ponens by step index) and are replayed rather than searched.

A checked proof in the weakest logic with commuting weak conjunction can
be translated into an equational proof that its translated term equals 0,
using only the commutative monoid laws and the equations

    eq1: x -> x = 0          eq2: x -> 0 = 0
    eq3: x + y -> z = x -> y -> z
    eq4: x + (x -> y) = y + (y -> x)
    eq5: 1 -> x = 0          (bounded signature only)

applied at explicit positions.  Equational proofs store every
intermediate term, so checking is a pure local comparison at each step;
eq2 is redundant and :func:`eliminate_eq2` replaces each of its uses by
a fixed thirteen-step derivation from the other rules.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .syntax import (
    AlgTerm,
    Formula,
    Limp,
    ONE,
    One,
    Position,
    T_ONE,
    T_ZERO,
    Tensor,
    TImp,
    TOne,
    TPlus,
    TVar,
    TZero,
    Var,
    formula_vars,
    neg,
    parse_formula,
    print_formula,
    print_term,
    replace_at,
    substitute,
    subterm_at,
    term_has_one,
)

# ---------------------------------------------------------------------------
# Schemata and logics

_A, _B, _C = Var("A"), Var("B"), Var("C")

SCHEMATA: dict[str, Formula] = {
    "Comp": Limp(Limp(_A, _B), Limp(Limp(_B, _C), Limp(_A, _C))),
    "Comm": Limp(Tensor(_A, _B), Tensor(_B, _A)),
    "Curry": Limp(Limp(Tensor(_A, _B), _C), Limp(_A, Limp(_B, _C))),
    "Uncurry": Limp(Limp(_A, Limp(_B, _C)), Limp(Tensor(_A, _B), _C)),
    "Wk": Limp(Tensor(_A, _B), _A),
    "EFQ": Limp(ONE, _A),
    "DNE": Limp(neg(neg(_A)), _A),
    "CWC": Limp(Tensor(_A, Limp(_A, _B)), Tensor(_B, Limp(_B, _A))),
    "Con": Limp(_A, Tensor(_A, _A)),
}

_BASE = ("Comp", "Comm", "Curry", "Uncurry", "Wk")

LOGICS: dict[str, frozenset[str]] = {
    "ALm": frozenset(_BASE),
    "ALi": frozenset(_BASE + ("EFQ",)),
    "ALc": frozenset(_BASE + ("EFQ", "DNE")),
    "LLm": frozenset(_BASE + ("CWC",)),
    "LLi": frozenset(_BASE + ("CWC", "EFQ")),
    "LLc": frozenset(_BASE + ("CWC", "EFQ", "DNE")),
    "ML": frozenset(_BASE + ("Con",)),
    "IL": frozenset(_BASE + ("Con", "EFQ")),
    "BL": frozenset(_BASE + ("Con", "EFQ", "DNE")),
}

# lattice coordinates: (conjunction strength, negation strength)
_GRID = {"ALm": (0, 0), "ALi": (0, 1), "ALc": (0, 2),
         "LLm": (1, 0), "LLi": (1, 1), "LLc": (1, 2),
         "ML": (2, 0), "IL": (2, 1), "BL": (2, 2)}

#: classification filters for the class of algebras each logic is sound for
LOGIC_MODEL_FILTERS = {
    "ALm": {}, "ALi": {}, "ALc": {"involutive": True},
    "LLm": {"hoop": True}, "LLi": {"hoop": True},
    "LLc": {"hoop": True, "involutive": True},
    "ML": {"hoop": True, "idempotent": True},
    "IL": {"hoop": True, "idempotent": True},
    "BL": {"hoop": True, "idempotent": True, "involutive": True},
}

#: logics whose semantics pins the constant 1 to the annihilator
LOGIC_BOUNDED = {"ALm": False, "ALi": True, "ALc": True,
                 "LLm": False, "LLi": True, "LLc": True,
                 "ML": False, "IL": True, "BL": True}


def logic_extends(stronger: str, weaker: str) -> bool:
    """Whether every theorem of ``weaker`` is a theorem of ``stronger``."""
    (a1, a2), (b1, b2) = _GRID[stronger], _GRID[weaker]
    return a1 >= b1 and a2 >= b2


# ---------------------------------------------------------------------------
# Hilbert proofs

class ProofError(ValueError):
    def __init__(self, message: str, step: int | None = None):
        where = f"step {step}: " if step is not None else ""
        super().__init__(where + message)
        self.step = step


@dataclass(frozen=True)
class AxiomStep:
    schema: str
    subst: tuple[tuple[str, Formula], ...]

    @staticmethod
    def make(schema: str, **formulas: Formula) -> "AxiomStep":
        return AxiomStep(schema, tuple(sorted(formulas.items())))


@dataclass(frozen=True)
class MpStep:
    premise: int      # 1-based index of the step proving B
    implication: int  # 1-based index of the step proving B -> A


Step = AxiomStep | MpStep


@dataclass(frozen=True)
class HilbertProof:
    steps: tuple[Step, ...]

    @property
    def theorem_unchecked(self) -> Formula:
        return proof_formulas(self)[-1]


def proof_formulas(proof: HilbertProof) -> list[Formula]:
    """Formula of every step, without checking schema availability."""
    out: list[Formula] = []
    for k, step in enumerate(proof.steps, start=1):
        match step:
            case AxiomStep(schema, subst):
                if schema not in SCHEMATA:
                    raise ProofError(f"unknown schema {schema!r}", k)
                template = SCHEMATA[schema]
                mapping = dict(subst)
                needed = set(formula_vars(template))
                if set(mapping) != needed:
                    raise ProofError(
                        f"schema {schema} needs exactly {sorted(needed)}", k)
                out.append(substitute(template, mapping))
            case MpStep(i, j):
                if not (1 <= i < k and 1 <= j < k):
                    raise ProofError("modus ponens must cite earlier steps", k)
                match out[j - 1]:
                    case Limp(lhs, rhs) if lhs == out[i - 1]:
                        out.append(rhs)
                    case _:
                        raise ProofError(
                            "second cited step is not an implication whose "
                            "antecedent is the first cited step", k)
            case _:
                raise ProofError(f"unknown step kind {step!r}", k)
    if not out:
        raise ProofError("empty proof")
    return out


def check_hilbert(proof: HilbertProof, logic: str) -> Formula:
    """Validate every step under the given logic; returns the theorem."""
    if logic not in LOGICS:
        raise ProofError(f"unknown logic {logic!r}")
    allowed = LOGICS[logic]
    for k, step in enumerate(proof.steps, start=1):
        if isinstance(step, AxiomStep) and step.schema not in allowed:
            raise ProofError(f"schema {step.schema} is not part of {logic}", k)
    return proof_formulas(proof)[-1]


# ---------------------------------------------------------------------------
# Derived-rule builders (all produce proofs in the weakest logic)

class _Build:
    """Mutable step list with 1-based indices and proof splicing."""

    def __init__(self):
        self.steps: list[Step] = []

    def axiom(self, schema: str, **formulas: Formula) -> int:
        self.steps.append(AxiomStep.make(schema, **formulas))
        return len(self.steps)

    def mp(self, premise: int, implication: int) -> int:
        self.steps.append(MpStep(premise, implication))
        return len(self.steps)

    def splice(self, proof: HilbertProof) -> int:
        offset = len(self.steps)
        for step in proof.steps:
            match step:
                case MpStep(i, j):
                    self.steps.append(MpStep(i + offset, j + offset))
                case _:
                    self.steps.append(step)
        return len(self.steps)

    def trans(self, i: int, j: int, a: Formula, b: Formula, c: Formula) -> int:
        """From step i: a -> b and step j: b -> c conclude a -> c."""
        comp = self.axiom("Comp", A=a, B=b, C=c)
        first = self.mp(i, comp)
        return self.mp(j, first)

    def done(self) -> HilbertProof:
        return HilbertProof(tuple(self.steps))


def build_refl(a: Formula) -> HilbertProof:
    """Derive a -> a from weakening, commutation, composition and currying."""
    v1, v2 = Var("V1"), Var("V2")
    d = Limp(Tensor(v1, v2), v1)
    b = _Build()
    s1 = b.axiom("Wk", A=v1, B=v2)                   # D, itself provable
    s2 = b.axiom("Wk", A=a, B=d)                     # a * D -> a
    s3 = b.axiom("Comm", A=d, B=a)                   # D * a -> a * D
    comp = b.axiom("Comp", A=Tensor(d, a), B=Tensor(a, d), C=a)
    s4 = b.mp(s3, comp)                              # (a * D -> a) -> (D * a -> a)
    s5 = b.mp(s2, s4)                                # D * a -> a
    curry = b.axiom("Curry", A=d, B=a, C=a)
    s6 = b.mp(s5, curry)                             # D -> a -> a
    b.mp(s1, s6)                                     # a -> a
    return b.done()


def _implication_parts(proof: HilbertProof) -> tuple[Formula, Formula]:
    match proof_formulas(proof)[-1]:
        case Limp(lhs, rhs):
            return lhs, rhs
    raise ProofError("proof does not end in an implication")


def build_trans(p: HilbertProof, q: HilbertProof) -> HilbertProof:
    """From p: a -> b and q: b -> c build a proof of a -> c."""
    a, b1 = _implication_parts(p)
    b2, c = _implication_parts(q)
    if b1 != b2:
        raise ProofError("endpoints do not match for transitivity")
    out = _Build()
    i = out.splice(p)
    j = out.splice(q)
    out.trans(i, j, a, b1, c)
    return out.done()


def _exchange(b: _Build, x: Formula, y: Formula, z: Formula) -> int:
    """Derive (x -> y -> z) -> (y -> x -> z)."""
    lhs = Limp(x, Limp(y, z))
    u1 = b.axiom("Uncurry", A=x, B=y, C=z)           # lhs -> (x * y -> z)
    u2 = b.axiom("Comm", A=y, B=x)                   # y * x -> x * y
    u3 = b.axiom("Comp", A=Tensor(y, x), B=Tensor(x, y), C=z)
    u4 = b.mp(u2, u3)                                # (x * y -> z) -> (y * x -> z)
    u5 = b.trans(u1, u4, lhs, Limp(Tensor(x, y), z), Limp(Tensor(y, x), z))
    u6 = b.axiom("Curry", A=y, B=x, C=z)             # (y * x -> z) -> (y -> x -> z)
    return b.trans(u5, u6, lhs, Limp(Tensor(y, x), z), Limp(y, Limp(x, z)))


def build_mono(side: str, p: HilbertProof, c: Formula) -> HilbertProof:
    """Lift p: a -> b to an implication between implications.

    side "first" gives (b -> c) -> (a -> c): implication is antimonotonic
    in its first argument.  side "second" gives (c -> a) -> (c -> b).
    """
    a, b_ = _implication_parts(p)
    out = _Build()
    i = out.splice(p)
    if side == "first":
        comp = out.axiom("Comp", A=a, B=b_, C=c)
        out.mp(i, comp)
        return out.done()
    if side == "second":
        comp = out.axiom("Comp", A=c, B=a, C=b_)     # (c->a) -> (a->b) -> (c->b)
        ex = _exchange(out, Limp(c, a), Limp(a, b_), Limp(c, b_))
        swapped = out.mp(comp, ex)                   # (a->b) -> (c->a) -> (c->b)
        out.mp(i, swapped)
        return out.done()
    raise ValueError("side must be 'first' or 'second'")


def build_assoc(a: Formula, b_: Formula, c: Formula) -> HilbertProof:
    """Derive (a * b) * c -> a * (b * c)."""
    d = Tensor(a, Tensor(b_, c))
    out = _Build()
    i = out.splice(build_refl(d))                    # a * (b * c) -> d
    cur1 = out.axiom("Curry", A=a, B=Tensor(b_, c), C=d)
    j = out.mp(i, cur1)                              # a -> (b * c -> d)
    cur2 = out.axiom("Curry", A=b_, B=c, C=d)        # (b*c -> d) -> (b -> c -> d)
    lift = out.splice(build_mono(
        "second", HilbertProof((AxiomStep.make("Curry", A=b_, B=c, C=d),)), a))
    k = out.mp(j, lift)                              # a -> b -> c -> d
    unc1 = out.axiom("Uncurry", A=a, B=b_, C=Limp(c, d))
    m = out.mp(k, unc1)                              # a * b -> c -> d
    unc2 = out.axiom("Uncurry", A=Tensor(a, b_), B=c, C=d)
    out.mp(m, unc2)                                  # (a * b) * c -> d
    return out.done()


# ---------------------------------------------------------------------------
# Equational proofs

EQ_RULES = ("assoc", "comm", "unit", "eq1", "eq2", "eq3", "eq4", "eq5", "hyp")


@dataclass(frozen=True)
class EqStep:
    rule: str
    pos: Position
    direction: str  # "fwd" or "bwd"
    hyp: int | None = None


@dataclass(frozen=True)
class Chain:
    """A rewrite chain: terms[0] = ... = terms[-1], one step per transition."""

    terms: tuple[AlgTerm, ...]
    steps: tuple[EqStep, ...]

    @property
    def start(self) -> AlgTerm:
        return self.terms[0]

    @property
    def end(self) -> AlgTerm:
        return self.terms[-1]


@dataclass(frozen=True)
class EquationalProof:
    """A list of chains; chain k may cite chains 0..k-1 as hypotheses.

    The final chain carries the goal: its first term equals its last
    (typically 0).  Each cited chain j rewrites its own start to its own
    end wherever it occurs.
    """

    bounded: bool
    chains: tuple[Chain, ...]

    @property
    def goal(self) -> tuple[AlgTerm, AlgTerm]:
        last = self.chains[-1]
        return last.start, last.end


def _rule_pairs(rule: str, before: AlgTerm, after: AlgTerm, direction: str,
                hyps: list[tuple[AlgTerm, AlgTerm]], hyp: int | None,
                bounded: bool) -> bool:
    """Whether before -> after is a legal application of the rule."""
    if direction == "bwd":
        before, after = after, before
    match rule:
        case "assoc":
            match before:
                case TPlus(TPlus(a, b), c):
                    return after == TPlus(a, TPlus(b, c))
            return False
        case "comm":
            match before:
                case TPlus(a, b):
                    return after == TPlus(b, a)
            return False
        case "unit":
            return before == TPlus(after, T_ZERO) if direction == "bwd" else (
                isinstance(before, TPlus) and before.rhs == T_ZERO
                and after == before.lhs)
        case "eq1":
            match before:
                case TImp(a, b) if a == b:
                    return after == T_ZERO
            return False
        case "eq2":
            match before:
                case TImp(_, TZero()):
                    return after == T_ZERO
            return False
        case "eq3":
            match before:
                case TImp(TPlus(a, b), c):
                    return after == TImp(a, TImp(b, c))
            return False
        case "eq4":
            match before:
                case TPlus(a, TImp(a2, b)) if a == a2:
                    return after == TPlus(b, TImp(b, a))
            return False
        case "eq5":
            if not bounded:
                return False
            match before:
                case TImp(One() | TOne(), _):
                    return after == T_ZERO
            return False
        case "hyp":
            if hyp is None or not 0 <= hyp < len(hyps):
                return False
            start, end = hyps[hyp]
            return before == start and after == end
    return False


def check_equational(proof: EquationalProof, bounded: bool | None = None,
                     goal: tuple[AlgTerm, AlgTerm] | None = None):
    """Replay every rewrite; returns (ok, None) or (False, failure message).

    With ``goal`` = (lhs, rhs), additionally require the final chain to
    start at lhs and end at rhs.
    """
    if bounded is None:
        bounded = proof.bounded
    if not proof.chains:
        return False, "no chains"
    done: list[tuple[AlgTerm, AlgTerm]] = []
    for ci, chain in enumerate(proof.chains):
        if len(chain.terms) != len(chain.steps) + 1:
            return False, f"chain {ci}: terms and steps do not line up"
        if not bounded:
            for t in chain.terms:
                if term_has_one(t):
                    return False, f"chain {ci}: constant 1 under unbounded signature"
        for si, step in enumerate(chain.steps):
            cur, nxt = chain.terms[si], chain.terms[si + 1]
            if step.rule not in EQ_RULES:
                return False, f"chain {ci} step {si}: unknown rule {step.rule!r}"
            try:
                before = subterm_at(cur, step.pos)
                after = subterm_at(nxt, step.pos)
            except IndexError:
                return False, f"chain {ci} step {si}: invalid position"
            if replace_at(cur, step.pos, after) != nxt:
                return False, f"chain {ci} step {si}: terms differ outside position"
            if step.rule == "eq4" and _rule_pairs("eq4", after, before, "fwd",
                                                  done, None, bounded):
                pass  # the weak-commutation law is symmetric
            elif not _rule_pairs(step.rule, before, after, step.direction,
                                 done, step.hyp, bounded):
                return False, f"chain {ci} step {si}: rule {step.rule} misapplied"
        done.append((chain.start, chain.end))
    if goal is not None and (proof.chains[-1].start != goal[0]
                             or proof.chains[-1].end != goal[1]):
        return False, "goal not reached"
    return True, None


class _ChainBuilder:
    """Builds a chain by applying rules; every transition is validated with
    the same predicate the checker uses, so emitted chains always check."""

    def __init__(self, start: AlgTerm, hyps: list[tuple[AlgTerm, AlgTerm]],
                 bounded: bool):
        self.terms = [start]
        self.steps: list[EqStep] = []
        self.hyps = hyps
        self.bounded = bounded

    @property
    def current(self) -> AlgTerm:
        return self.terms[-1]

    def apply(self, rule: str, pos: Position, direction: str = "fwd",
              new_sub: AlgTerm | None = None, hyp: int | None = None):
        before = subterm_at(self.current, pos)
        after = new_sub if new_sub is not None else _forward_result(
            rule, before, direction, self.hyps, hyp)
        ok = _rule_pairs(rule, before, after, direction, self.hyps, hyp,
                         self.bounded)
        if rule == "eq4" and not ok:
            ok = _rule_pairs("eq4", after, before, "fwd", self.hyps, None,
                             self.bounded)
        if not ok:
            raise ProofError(f"internal: bad {rule} emission at {pos}")
        self.steps.append(EqStep(rule, tuple(pos), direction, hyp))
        self.terms.append(replace_at(self.current, pos, after))

    def done(self) -> Chain:
        return Chain(tuple(self.terms), tuple(self.steps))


def _forward_result(rule, before, direction, hyps, hyp):
    """Deterministic result of a rule application, where one exists."""
    fwd = direction == "fwd"
    match rule, before:
        case "assoc", TPlus(TPlus(a, b), c) if fwd:
            return TPlus(a, TPlus(b, c))
        case "assoc", TPlus(a, TPlus(b, c)) if not fwd:
            return TPlus(TPlus(a, b), c)
        case "comm", TPlus(a, b):
            return TPlus(b, a)
        case "unit", TPlus(a, TZero()) if fwd:
            return a
        case "unit", _ if not fwd:
            return TPlus(before, T_ZERO)
        case "eq1", TImp(a, b) if fwd and a == b:
            return T_ZERO
        case "eq2", TImp(_, TZero()) if fwd:
            return T_ZERO
        case "eq3", TImp(TPlus(a, b), c) if fwd:
            return TImp(a, TImp(b, c))
        case "eq3", TImp(a, TImp(b, c)) if not fwd:
            return TImp(TPlus(a, b), c)
        case "eq4", TPlus(a, TImp(a2, b)) if a == a2:
            return TPlus(b, TImp(b, a))
        case "eq5", TImp(One() | TOne(), _) if fwd:
            return T_ZERO
        case "hyp", _:
            start, end = hyps[hyp]
            return end if fwd else start
    raise ProofError(f"internal: no deterministic result for {rule}")


# ---------------------------------------------------------------------------
# Translation of Hilbert proofs to equational proofs

def _to_term(f: Formula, names: dict[str, AlgTerm], one: AlgTerm) -> AlgTerm:
    match f:
        case Var(name):
            return names[name]
        case One():
            return one
        case Tensor(a, b):
            return TPlus(_to_term(a, names, one), _to_term(b, names, one))
        case Limp(a, b):
            return TImp(_to_term(a, names, one), _to_term(b, names, one))
    raise TypeError(f"not a formula: {f!r}")


def _chain_comp(b: _ChainBuilder, a, b_, c):
    """(a->b) -> (b->c) -> (a->c) = 0 by the standard nine-equation chain;
    the two initial grouping steps apply outermost, left to right."""
    i_ab, i_bc = TImp(a, b_), TImp(b_, c)
    b.apply("eq3", (), "bwd")    # (i_ab + i_bc) -> (a -> c)
    b.apply("eq3", (), "bwd")    # ((i_ab + i_bc) + a) -> c
    b.apply("comm", (0,))        # a + (i_ab + i_bc)
    b.apply("assoc", (0,), "bwd")  # (a + i_ab) + i_bc
    b.apply("eq4", (0, 0))       # (b + i_ba) + i_bc
    b.apply("comm", (0, 0))      # (i_ba + b) + i_bc
    b.apply("assoc", (0,))       # i_ba + (b + i_bc)
    b.apply("eq4", (0, 1))       # i_ba + (c + i_cb)
    b.apply("comm", (0, 1))      # i_ba + (i_cb + c)
    b.apply("assoc", (0,), "bwd")  # (i_ba + i_cb) + c
    b.apply("eq3", ())           # (i_ba + i_cb) -> c -> c
    b.apply("eq1", (1,))
    b.apply("eq2", ())


def _axiom_chain(schema: str, inst: dict[str, AlgTerm], goal: AlgTerm,
                 bounded: bool) -> Chain:
    b = _ChainBuilder(goal, [], bounded)
    a = inst.get("A")
    b_ = inst.get("B")
    c = inst.get("C")
    if schema == "Comp":
        _chain_comp(b, a, b_, c)
    elif schema == "Comm":
        b.apply("comm", (0,))
        b.apply("eq1", ())
    elif schema == "Curry":
        b.apply("eq3", (0,))
        b.apply("eq1", ())
    elif schema == "Uncurry":
        b.apply("eq3", (1,))
        b.apply("eq1", ())
    elif schema == "Wk":
        b.apply("comm", (0,))
        b.apply("eq3", ())
        b.apply("eq1", (1,))
        b.apply("eq2", ())
    elif schema == "CWC":
        b.apply("eq4", (0,))
        b.apply("eq1", ())
    elif schema == "EFQ":
        b.apply("eq5", ())
    else:
        raise ProofError(f"schema {schema} has no equational translation")
    assert b.current == T_ZERO
    return b.done()


def _mp_chain(cut: AlgTerm, conclusion: AlgTerm, hyp_cut: int, hyp_imp: int,
              hyps, bounded: bool) -> Chain:
    b = _ChainBuilder(conclusion, hyps, bounded)
    b.apply("unit", (), "bwd")                            # b + 0
    b.apply("eq2", (1,), "bwd", new_sub=TImp(conclusion, T_ZERO))
    b.apply("eq4", ())                                    # 0 + (0 -> b)
    b.apply("comm", ())
    b.apply("unit", ())                                   # 0 -> b
    b.apply("hyp", (0,), "bwd", hyp=hyp_cut)              # a -> b
    b.apply("hyp", (), "fwd", hyp=hyp_imp)                # 0
    return b.done()


def translate_to_equational(proof: HilbertProof, logic: str) -> EquationalProof:
    """Turn a checked proof into chains showing each step's term equals 0.

    Axiom steps expand to their fixed equation chains; each modus ponens
    becomes the saturation chain b = b + 0 = b + (b -> 0) = 0 + (0 -> b)
    = 0 -> b = a -> b = 0, citing the premises as hypotheses instead of
    inlining them (see :func:`inline_chains` for the fully chained form).

    Under LLm the constant 1 carries no axioms, so it translates to the
    reserved variable x0; under LLi it becomes the constant 1 and EFQ
    translates through eq5.
    """
    if logic not in ("LLm", "LLi"):
        raise ProofError("translation is defined for the logics LLm and LLi")
    bounded = logic == "LLi"
    check_hilbert(proof, logic)
    formulas = proof_formulas(proof)
    order: list[str] = []
    seen = set()
    for f in formulas:
        for v in formula_vars(f):
            if v not in seen:
                seen.add(v)
                order.append(v)
    names = {v: TVar(f"x{i + 1}") for i, v in enumerate(order)}
    one = T_ONE if bounded else TVar("x0")
    terms = [_to_term(f, names, one) for f in formulas]

    chains: list[Chain] = []
    hyps: list[tuple[AlgTerm, AlgTerm]] = []
    for k, step in enumerate(proof.steps):
        match step:
            case AxiomStep(schema, subst):
                inst = {m: _to_term(f, names, one) for m, f in subst}
                chain = _axiom_chain(schema, inst, terms[k], bounded)
            case MpStep(i, j):
                chain = _mp_chain(terms[i - 1], terms[k], i - 1, j - 1,
                                  hyps, bounded)
        chains.append(chain)
        hyps.append((chain.start, chain.end))
    return EquationalProof(bounded, tuple(chains))


def inline_chains(proof: EquationalProof) -> EquationalProof:
    """Expand all hypothesis references, yielding a single chain."""
    expanded: list[Chain] = []
    for chain in proof.chains:
        b = _ChainBuilder(chain.start, [], proof.bounded)
        for si, step in enumerate(chain.steps):
            if step.rule != "hyp":
                after = subterm_at(chain.terms[si + 1], step.pos)
                b.apply(step.rule, step.pos, step.direction, new_sub=after)
                continue
            sub = expanded[step.hyp]
            seq = zip(sub.steps, sub.terms[1:])
            if step.direction == "bwd":
                seq = [(EqStep(s.rule, s.pos, _flip(s.direction), s.hyp), t)
                       for s, t in zip(sub.steps, sub.terms[:-1])][::-1]
            for inner, target in seq:
                b.apply(inner.rule, step.pos + inner.pos, inner.direction,
                        new_sub=subterm_at(target, inner.pos))
        expanded.append(b.done())
    return EquationalProof(proof.bounded, (expanded[-1],))


def _flip(direction: str) -> str:
    return "bwd" if direction == "fwd" else "fwd"


#: x -> 0 rewrites to 0 without eq2: introduce (0 -> x) -> (0 -> x) by
#: reflexivity inside the 0, convert 0 + (0 -> x) to x + (x -> 0) by the
#: weak-commutation law, regroup twice with eq3 and collapse with eq1.
_EQ2_EXPANSION = (
    ("eq1", (1,), "bwd"),
    ("unit", (1, 0), "bwd"),
    ("comm", (1, 0), "fwd"),
    ("eq4", (1, 0), "fwd"),
    ("comm", (1, 0), "fwd"),
    ("eq3", (1,), "fwd"),
    ("eq3", (1, 1), "bwd"),
    ("unit", (1, 1, 0), "fwd"),
    ("eq1", (1, 1), "fwd"),
    ("eq3", (), "bwd"),
    ("comm", (0,), "fwd"),
    ("eq3", (), "fwd"),
    ("eq1", (), "fwd"),
)


def _expand_eq2(b: _ChainBuilder, pos: Position):
    """Replace one forward eq2 application at pos by primitive steps."""
    target = subterm_at(b.current, pos)
    match target:
        case TImp(t, TZero()):
            pass
        case _:
            raise ProofError("eq2 expansion applied to a non-matching term")
    zx = TImp(T_ZERO, t)
    news = {0: TImp(zx, zx)}
    for i, (rule, rel, direction) in enumerate(_EQ2_EXPANSION):
        b.apply(rule, tuple(pos) + rel, direction, new_sub=news.get(i))


def eliminate_eq2(proof: EquationalProof) -> EquationalProof:
    """Rewrite the proof so the rule eq2 never appears.

    Each forward eq2 use is replaced by a thirteen-step derivation from
    the commutative monoid laws and eq1, eq3, eq4; backward uses get the
    reversed derivation.
    """
    chains: list[Chain] = []
    hyps: list[tuple[AlgTerm, AlgTerm]] = []
    for chain in proof.chains:
        b = _ChainBuilder(chain.start, hyps, proof.bounded)
        for si, step in enumerate(chain.steps):
            if step.rule != "eq2":
                after = subterm_at(chain.terms[si + 1], step.pos)
                b.apply(step.rule, step.pos, step.direction,
                        new_sub=after, hyp=step.hyp)
            elif step.direction == "fwd":
                _expand_eq2(b, step.pos)
            else:
                probe = _ChainBuilder(chain.terms[si + 1], [], proof.bounded)
                _expand_eq2(probe, step.pos)
                sub = probe.done()
                for inner, target in [
                    (EqStep(s.rule, s.pos, _flip(s.direction), s.hyp), t)
                    for s, t in zip(sub.steps, sub.terms[:-1])
                ][::-1]:
                    b.apply(inner.rule, inner.pos, inner.direction,
                            new_sub=subterm_at(target, inner.pos))
        chains.append(b.done())
        hyps.append((chain.start, chain.end))
    return EquationalProof(proof.bounded, tuple(chains))


# ---------------------------------------------------------------------------
# Random proof generation (seeded, for soundness sweeps)

def random_hilbert_proof(seed: int, logic: str = "LLm", rounds: int = 4) -> HilbertProof:
    """A small random checked proof, built from axiom instances and the
    derived rules so every intermediate object is valid by construction."""
    rng = random.Random(seed)
    vars_ = [Var("v1"), Var("v2"), Var("v3")]

    def formula(depth=2):
        if depth == 0 or rng.random() < 0.4:
            return rng.choice(vars_ + ([ONE] if LOGIC_BOUNDED[logic] else []))
        if rng.random() < 0.55:
            return Limp(formula(depth - 1), formula(depth - 1))
        return Tensor(formula(depth - 1), formula(depth - 1))

    schemas = sorted(LOGICS[logic])
    pool: list[HilbertProof] = []

    def axiom_instance():
        schema = rng.choice(schemas)
        needed = formula_vars(SCHEMATA[schema])
        return HilbertProof((AxiomStep.make(
            schema, **{m: formula() for m in needed}),))

    pool.append(axiom_instance())
    pool.append(build_refl(formula()))
    for _ in range(rounds):
        kind = rng.random()
        p = rng.choice(pool)
        if kind < 0.3:
            pool.append(axiom_instance())
        elif kind < 0.5:
            try:
                side = rng.choice(["first", "second"])
                pool.append(build_mono(side, p, formula()))
            except ProofError:
                pool.append(build_refl(formula()))
        elif kind < 0.7:
            try:
                _, b_ = _implication_parts(p)
                pool.append(build_trans(p, build_refl(b_)))
            except ProofError:
                pool.append(build_refl(formula()))
        elif kind < 0.85:
            f = formula()
            pool.append(build_assoc(f, formula(1), formula(1)))
        else:
            # modus ponens between pool members when endpoints align
            done = False
            for q in pool:
                try:
                    lhs, _ = _implication_parts(q)
                except ProofError:
                    continue
                for r in pool:
                    if proof_formulas(r)[-1] == lhs:
                        out = _Build()
                        i = out.splice(r)
                        j = out.splice(q)
                        out.mp(i, j)
                        pool.append(out.done())
                        done = True
                        break
                if done:
                    break
            if not done:
                pool.append(build_refl(formula()))
    return pool[-1]


# ---------------------------------------------------------------------------
# Text formats

def format_hilbert(proof: HilbertProof) -> str:
    lines = []
    for step in proof.steps:
        match step:
            case AxiomStep(schema, subst):
                inner = "; ".join(f"{m} = {print_formula(f)}" for m, f in subst)
                lines.append(f"ax {schema} {{ {inner} }}")
            case MpStep(i, j):
                lines.append(f"mp {i} {j}")
    return "\n".join(lines) + "\n"


def parse_hilbert(text: str) -> HilbertProof:
    steps: list[Step] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("mp "):
            parts = line.split()
            if len(parts) != 3:
                raise ProofError("expected 'mp <i> <j>'", lineno)
            try:
                steps.append(MpStep(int(parts[1]), int(parts[2])))
            except ValueError:
                raise ProofError("expected 'mp <i> <j>'", lineno) from None
            continue
        if line.startswith("ax "):
            body = line[3:].strip()
            name, _, rest = body.partition("{")
            name = name.strip()
            rest = rest.rsplit("}", 1)[0]
            subst = {}
            for item in rest.split(";"):
                if not item.strip():
                    continue
                mv, _, ftext = item.partition("=")
                subst[mv.strip()] = parse_formula(ftext)
            steps.append(AxiomStep.make(name, **subst))
            continue
        raise ProofError(f"unrecognized line {line!r}", lineno)
    return HilbertProof(tuple(steps))


def _format_pos(pos: Position) -> str:
    return ".".join(str(i) for i in pos) if pos else "."


def _parse_pos(text: str) -> Position:
    if text == ".":
        return ()
    return tuple(int(p) for p in text.split("."))


def format_equational(proof: EquationalProof) -> str:
    lines = [f"eqproof {'bounded' if proof.bounded else 'unbounded'}"]
    for k, chain in enumerate(proof.chains):
        lines.append(f"lemma {k}")
        lines.append(print_term(chain.terms[0]))
        for step, term in zip(chain.steps, chain.terms[1:]):
            head = f"hyp {step.hyp}" if step.rule == "hyp" else step.rule
            lines.append(f"{head} at {_format_pos(step.pos)} {step.direction}")
            lines.append(print_term(term))
    return "\n".join(lines) + "\n"


def parse_equational(text: str) -> EquationalProof:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("eqproof"):
        raise ProofError("expected header 'eqproof bounded|unbounded'", 1)
    bounded = lines[0].split()[1:] == ["bounded"]
    chains: list[Chain] = []
    i = 1
    while i < len(lines):
        if not lines[i].startswith("lemma "):
            raise ProofError("expected 'lemma <k>'", i + 1)
        i += 1
        from .syntax import parse_term

        terms = [parse_term(lines[i])]
        i += 1
        steps: list[EqStep] = []
        while i < len(lines) and not lines[i].startswith("lemma "):
            words = lines[i].split()
            hyp = None
            if words[0] == "hyp":
                hyp = int(words[1])
                rule = "hyp"
                words = words[1:]
            else:
                rule = words[0]
            if len(words) != 4 or words[1] != "at":
                raise ProofError("expected '<rule> at <path> <dir>'", i + 1)
            steps.append(EqStep(rule, _parse_pos(words[2]), words[3], hyp))
            i += 1
            if i >= len(lines):
                raise ProofError("missing term after step", i)
            terms.append(parse_term(lines[i]))
            i += 1
        chains.append(Chain(tuple(terms), tuple(steps)))
    return EquationalProof(bounded, tuple(chains))
