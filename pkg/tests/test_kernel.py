import itertools
import random

import pytest

from hoopkit.algebras import catalog, enumerate_pocrims, eval_term
from hoopkit.kernel import (
    AxiomStep,
    Chain,
    EqStep,
    EquationalProof,
    HilbertProof,
    LOGICS,
    MpStep,
    ProofError,
    SCHEMATA,
    build_assoc,
    build_mono,
    build_refl,
    build_trans,
    check_equational,
    check_hilbert,
    eliminate_eq2,
    format_equational,
    format_hilbert,
    inline_chains,
    logic_extends,
    parse_equational,
    parse_hilbert,
    proof_formulas,
    random_hilbert_proof,
    translate_to_equational,
)
from hoopkit.syntax import (
    Limp,
    T_ZERO,
    Tensor,
    TImp,
    TVar,
    Var,
    parse_term,
    print_formula,
)

v1, v2, v3 = Var("v1"), Var("v2"), Var("v3")


class TestLogics:
    def test_schema_sets(self):
        assert LOGICS["ALm"] == {"Comp", "Comm", "Curry", "Uncurry", "Wk"}
        assert LOGICS["LLm"] == LOGICS["ALm"] | {"CWC"}
        assert LOGICS["BL"] == LOGICS["ALm"] | {"Con", "EFQ", "DNE"}

    def test_lattice(self):
        assert logic_extends("LLc", "LLm")
        assert logic_extends("BL", "ALm")
        assert logic_extends("IL", "LLi") and not logic_extends("LLi", "IL")
        assert not logic_extends("ALc", "LLm")
        # schema sets grow along the negation axis
        for col in (("ALm", "ALi", "ALc"), ("LLm", "LLi", "LLc"), ("ML", "IL", "BL")):
            assert LOGICS[col[0]] < LOGICS[col[1]] < LOGICS[col[2]]


class TestCheckHilbert:
    def test_reflexivity_derivation(self):
        proof = build_refl(v1)
        assert check_hilbert(proof, "ALm") == Limp(v1, v1)

    def test_schema_not_in_logic(self):
        proof = HilbertProof((AxiomStep.make("DNE", A=v1),))
        with pytest.raises(ProofError, match="not part of ALm"):
            check_hilbert(proof, "ALm")
        check_hilbert(proof, "ALc")  # same proof is fine one column up

    def test_mp_operand_order(self):
        # step 2 proves v1*v2 -> v1; feeding the steps to mp in the wrong
        # order must fail because step 1 is not an implication of step 2
        wk_d = AxiomStep.make("Wk", A=v1, B=v2)
        wk_a = AxiomStep.make("Wk", A=Limp(Tensor(v1, v2), v1), B=v2)
        proof_formulas(HilbertProof((wk_d, wk_a, MpStep(1, 2))))
        with pytest.raises(ProofError):
            proof_formulas(HilbertProof((wk_d, wk_a, MpStep(2, 1))))

    def test_bad_index(self):
        wk = AxiomStep.make("Wk", A=v1, B=v1)
        with pytest.raises(ProofError, match="earlier"):
            proof_formulas(HilbertProof((wk, MpStep(1, 2))))

    def test_substitution_must_cover_schema(self):
        with pytest.raises(ProofError, match="needs exactly"):
            proof_formulas(HilbertProof((AxiomStep.make("Comp", A=v1, B=v2),)))


class TestDerivedRules:
    def test_refl_on_compound(self):
        f = Tensor(v1, v2)
        proof = build_refl(f)
        assert check_hilbert(proof, "ALm") == Limp(f, f)

    def test_trans(self):
        p = build_refl(v1)
        q = build_refl(v1)
        assert check_hilbert(build_trans(p, q), "ALm") == Limp(v1, v1)

    def test_trans_rejects_mismatched_endpoints(self):
        with pytest.raises(ProofError):
            build_trans(build_refl(v1), build_refl(v2))

    def test_mono_first_argument(self):
        p = build_refl(v1)  # v1 -> v1
        out = check_hilbert(build_mono("first", p, v3), "ALm")
        assert out == Limp(Limp(v1, v3), Limp(v1, v3))

    def test_mono_second_argument(self):
        p = build_refl(v1)
        out = check_hilbert(build_mono("second", p, v3), "ALm")
        assert out == Limp(Limp(v3, v1), Limp(v3, v1))

    def test_assoc(self):
        out = check_hilbert(build_assoc(v1, v2, v3), "ALm")
        assert out == Limp(Tensor(Tensor(v1, v2), v3), Tensor(v1, Tensor(v2, v3)))

    def test_derived_proofs_check_in_every_extension(self):
        proof = build_assoc(v1, v2, v3)
        for logic in LOGICS:
            check_hilbert(proof, logic)


class TestTranslation:
    def test_refl_translation_is_small_and_checks(self):
        proof = translate_to_equational(build_refl(v1), "LLm")
        ok, err = check_equational(proof)
        assert ok, err
        assert proof.goal[1] == T_ZERO
        assert sum(len(c.steps) for c in proof.chains) <= 60
        lhs = proof.goal[0]
        assert lhs == TImp(TVar("x3"), TVar("x3"))

    def test_single_weakening_axiom(self):
        proof = HilbertProof((AxiomStep.make("Wk", A=v1, B=v2),))
        eq = translate_to_equational(proof, "LLm")
        chain = eq.chains[0]
        assert len(chain.steps) == 4
        assert chain.end == T_ZERO
        assert check_equational(eq)[0]

    def test_single_commutation_axiom(self):
        proof = HilbertProof((AxiomStep.make("Comm", A=v1, B=v2),))
        eq = translate_to_equational(proof, "LLm")
        assert len(eq.chains[0].steps) == 2
        assert check_equational(eq)[0]

    def test_efq_uses_eq5_under_the_bounded_logic(self):
        proof = HilbertProof((AxiomStep.make("EFQ", A=v1),))
        eq = translate_to_equational(proof, "LLi")
        assert [s.rule for s in eq.chains[0].steps] == ["eq5"]
        assert check_equational(eq)[0]
        with pytest.raises(ProofError):
            translate_to_equational(proof, "LLm")  # EFQ is not an LLm schema

    def test_rejects_other_logics(self):
        with pytest.raises(ProofError):
            translate_to_equational(build_refl(v1), "ALc")

    def test_translated_chains_evaluate_constantly_in_hoops(self):
        rng = random.Random(12)
        hoops = [a for n in (2, 3, 4) for a in enumerate_pocrims(n, hoop=True)]
        for seed in range(12):
            proof = random_hilbert_proof(seed)
            eq = translate_to_equational(proof, "LLm")
            ok, err = check_equational(eq)
            assert ok, err
            names = sorted({v for c in eq.chains for t in c.terms
                            for v in _vars(t)})
            for _ in range(4):
                alg = rng.choice(hoops)
                env = {v: rng.randrange(alg.n) for v in names}
                for chain in eq.chains:
                    values = {eval_term(alg, t, env) for t in chain.terms}
                    assert values == {0}


def _vars(t):
    from hoopkit.syntax import term_vars

    return term_vars(t)


class TestCheckEquational:
    def test_modus_ponens_chain_shape(self):
        # b = b + 0 = b + (b -> 0) = 0 + (0 -> b) = 0 -> b = a -> b = 0
        a, b = parse_term("x1"), parse_term("x2")
        hyp_a = Chain((a, T_ZERO), (EqStep("eq2", (), "fwd"),))  # placeholder shape
        proof = HilbertProof((
            AxiomStep.make("Wk", A=v1, B=v2),          # (v1*v2 -> v1) proved
            AxiomStep.make("CWC", A=v1, B=v2),
        ))
        eq = translate_to_equational(HilbertProof((
            AxiomStep.make("Wk", A=v1, B=v2),
            AxiomStep.make("Comp", A=Tensor(v1, v2), B=v1, C=Tensor(v1, v2)),
        )), "LLm")
        assert check_equational(eq)[0]

    def test_eq5_requires_bounded_signature(self):
        term = parse_term("1 -> x")
        chain = Chain((term, T_ZERO), (EqStep("eq5", (), "fwd"),))
        good = EquationalProof(True, (chain,))
        assert check_equational(good)[0]
        bad = EquationalProof(False, (chain,))
        ok, err = check_equational(bad)
        assert not ok and "signature" in err

    def test_goal_not_reached(self):
        chain = Chain((parse_term("x1 + 0"), parse_term("x1")),
                      (EqStep("unit", (), "fwd"),))
        proof = EquationalProof(False, (chain,))
        ok, err = check_equational(proof, goal=(parse_term("x1 + 0"), T_ZERO))
        assert not ok and err == "goal not reached"

    def test_position_and_rule_validation(self):
        t0 = parse_term("x + y")
        t1 = parse_term("y + x")
        bad_rule = EquationalProof(False, (Chain((t0, t1), (EqStep("eq1", (), "fwd"),)),))
        assert not check_equational(bad_rule)[0]
        bad_pos = EquationalProof(False, (Chain((t0, t1), (EqStep("comm", (0,), "fwd"),)),))
        assert not check_equational(bad_pos)[0]
        good = EquationalProof(False, (Chain((t0, t1), (EqStep("comm", (), "fwd"),)),))
        assert check_equational(good)[0]

    def test_hypothesis_must_cite_earlier_chain(self):
        x = parse_term("x")
        c0 = Chain((x, T_ZERO), (EqStep("hyp", (), "fwd", 0),))
        assert not check_equational(EquationalProof(False, (c0,)))[0]


class TestEq2Elimination:
    def test_expansion_replaces_every_use(self):
        for seed in (0, 2, 4):
            eq = translate_to_equational(random_hilbert_proof(seed), "LLm")
            out = eliminate_eq2(eq)
            rules = [s.rule for c in out.chains for s in c.steps]
            assert "eq2" not in rules
            ok, err = check_equational(out)
            assert ok, err
            # endpoints are untouched
            assert [(c.start, c.end) for c in out.chains] == \
                   [(c.start, c.end) for c in eq.chains]

    def test_direct_eq2_chain(self):
        term = parse_term("(x + y) -> 0")
        chain = Chain((term, T_ZERO), (EqStep("eq2", (), "fwd"),))
        out = eliminate_eq2(EquationalProof(False, (chain,)))
        assert check_equational(out)[0]
        assert len(out.chains[0].steps) == 13

    def test_backward_use(self):
        t0 = parse_term("x")
        t1 = parse_term("x + 0")
        t2 = parse_term("x + (y -> 0)")
        chain = Chain((t0, t1, t2),
                      (EqStep("unit", (), "bwd"), EqStep("eq2", (1,), "bwd")))
        out = eliminate_eq2(EquationalProof(False, (chain,)))
        ok, err = check_equational(out)
        assert ok, err
        assert out.chains[0].end == t2


class TestInline:
    def test_single_chain_without_hypotheses(self):
        for seed in (1, 3):
            eq = translate_to_equational(random_hilbert_proof(seed), "LLm")
            flat = inline_chains(eq)
            assert len(flat.chains) == 1
            assert all(s.rule != "hyp" for s in flat.chains[0].steps)
            ok, err = check_equational(flat)
            assert ok, err
            assert flat.goal == eq.goal


class TestTextFormats:
    def test_hilbert_roundtrip(self):
        for seed in (0, 5):
            proof = random_hilbert_proof(seed)
            assert parse_hilbert(format_hilbert(proof)) == proof

    def test_hilbert_format_shape(self):
        text = format_hilbert(HilbertProof((
            AxiomStep.make("Wk", A=v1, B=v2), MpStep(1, 1))))
        assert text.splitlines() == ["ax Wk { A = v1; B = v2 }", "mp 1 1"]

    def test_equational_roundtrip(self):
        eq = translate_to_equational(build_refl(v1), "LLm")
        assert parse_equational(format_equational(eq)) == eq

    def test_parse_errors(self):
        with pytest.raises(ProofError):
            parse_hilbert("axiom nonsense")
        with pytest.raises(ProofError):
            parse_equational("not a proof")


class TestRandomProofs:
    def test_deterministic(self):
        assert random_hilbert_proof(42) == random_hilbert_proof(42)

    def test_all_check(self):
        for seed in range(20):
            proof = random_hilbert_proof(seed)
            check_hilbert(proof, "LLm")
