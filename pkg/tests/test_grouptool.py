import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from smallvol.data import CORPUS, PROP43, PROP44, presentation_text, script_text
from smallvol.formats import parse_presentation, parse_script
from smallvol.grouptool import (
    INCONCLUSIVE,
    NONHYPERBOLIC,
    Presentation,
    ProofScript,
    abelian_invariants,
    abelianization,
    detect_power_relator,
    nontrivial_in_abelianization,
    search_trivial,
    smith_normal_form,
    verify_script,
    words,
)
from smallvol.grouptool.engine import _State, _run_step


class TestWords:
    def test_free_reduce(self):
        gens = ("a", "b")
        assert words.parse_word("aa-1b", gens) == (2,)

    def test_cyclic_reduce(self):
        gens = ("a", "b")
        w = words.parse_word("b-1ab", gens)
        assert words.cyclic_reduce(w) == (1,)

    def test_commutator(self):
        gens = ("a", "b")
        c = words.commutator((1,), (2,))
        assert words.format_word(c, gens) == "aba-1b-1"

    def test_parse_format_round_trip(self):
        gens = ("a", "b", "c")
        for text in ("ab-1a-2b-1ab2", "a3b2", "c-5", "abc", "1"):
            w = words.parse_word(text, gens)
            assert words.parse_word(words.format_word(w, gens), gens) == w

    @given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=30))
    @settings(max_examples=200, deadline=None)
    def test_reduce_involution_properties(self, letters):
        w = words.free_reduce(letters)
        assert words.free_reduce(w) == w
        assert words.concat(w, words.invert(w)) == ()
        assert words.invert(words.invert(w)) == w

    @given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20),
           st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20))
    @settings(max_examples=200, deadline=None)
    def test_concat_associative(self, u, v):
        u = words.free_reduce(u)
        v = words.free_reduce(v)
        assert words.concat(u, v) == words.free_reduce(tuple(u) + tuple(v))


class TestSmithNormalForm:
    def test_free_group(self):
        p = Presentation.from_strings(("a", "b"), [])
        assert abelianization(p) == (0, 0)

    def test_cyclic(self):
        p = Presentation.from_strings(("a",), ["a5"])
        assert abelianization(p) == (5,)

    def test_a3b2(self):
        p = Presentation.from_strings(("a", "b"), ["a3b2"])
        assert abelianization(p) == (1, 0)

    def test_divisibility_chain_random(self):
        rng = random.Random(6)
        for _ in range(60):
            m = rng.randint(1, 4)
            n = rng.randint(1, 4)
            mat = [[rng.randint(-6, 6) for _ in range(n)] for _ in range(m)]
            diag = smith_normal_form(mat)
            nz = [d for d in diag if d]
            for i in range(len(nz) - 1):
                assert nz[i + 1] % nz[i] == 0

    def test_nontrivial_in_abelianization(self):
        p = Presentation.from_strings(("a", "b", "c"), ["a2cb-1cb", "b2c2"])
        assert nontrivial_in_abelianization(p, p.word("c"))
        assert not nontrivial_in_abelianization(p, p.word("aba-1b-1"))


class TestDetectPowerRelator:
    def test_power_relator_a3b2(self):
        p = Presentation.from_strings(("a", "b"), ["a3b2"])
        v = detect_power_relator(p)
        assert v.nonhyperbolic and v.reason == "power-relator"

    def test_four_syllable_pattern(self):
        p = Presentation.from_strings(("a", "b"), ["a2b2a-1b2"])
        v = detect_power_relator(p)
        assert v.nonhyperbolic and v.reason == "relator-pattern"
        assert "(2,2,1)" in v.log[0]

    def test_non_matching_inconclusive(self):
        p = Presentation.from_strings(("a", "b"), ["abab-1a-1ba-1b-1"])
        assert detect_power_relator(p).status == INCONCLUSIVE

    def test_wrong_shape_inconclusive(self):
        p3 = Presentation.from_strings(("a", "b", "c"), ["a3b2"])
        assert detect_power_relator(p3).status == INCONCLUSIVE
        p2 = Presentation.from_strings(("a", "b"), ["a3b2", "ab"])
        assert detect_power_relator(p2).status == INCONCLUSIVE

    def test_invariance_rotation_inversion_renaming(self):
        rng = random.Random(8)
        base = Presentation.from_strings(("a", "b"), ["a2b3a-1b3"])
        expect = detect_power_relator(base).status
        rel = base.relators[0]
        for _ in range(40):
            w = rel
            if rng.random() < 0.5:
                w = words.invert(w)
            w = words.rotate(w, rng.randrange(len(w)))
            if rng.random() < 0.5:  # swap generator names
                w = tuple((2 if abs(x) == 1 else 1) * (1 if x > 0 else -1)
                          for x in w)
            v = detect_power_relator(Presentation(("a", "b"), (w,)))
            assert v.status == expect == NONHYPERBOLIC

    def test_degenerate_pattern_not_claimed(self):
        # n + k = 0 gives a proper power; the pattern rule must not fire
        p = Presentation.from_strings(("a", "b"), ["a2b3a2b3"])
        v = detect_power_relator(p)
        assert v.status == INCONCLUSIVE


class TestSearch:
    def test_relator_itself(self):
        rel = words.parse_word("ab-1a-2b-1ab2", ("a", "b"))
        d = search_trivial(rel, [rel], depth=2)
        assert d is not None and len(d.steps) == 1 and d.replay()

    def test_nested_commutator_calculation(self):
        gens = ("a", "b")
        rel = words.parse_word("ab-1a-2b-1ab2", gens)
        w = words.commutator(
            words.commutator(words.parse_word("ab", gens), (2,)),
            words.parse_word("ab", gens),
        )
        d = search_trivial(w, [rel], depth=8)
        assert d is not None and d.replay()

    def test_lemma_instance_property(self):
        """[a^{n+k}, b^m] is trivial in <a,b | a^n b^m a^-k b^m> for all
        1 <= n,m,k <= 3, with replayable certificates at depth <= 6."""
        for n in (1, 2, 3):
            for m in (1, 2, 3):
                for k in (1, 2, 3):
                    rel = words.concat(
                        words.power((1,), n), words.power((2,), m),
                        words.power((-1,), k), words.power((2,), m),
                    )
                    target = words.commutator(
                        words.power((1,), n + k), words.power((2,), m)
                    )
                    d = search_trivial(target, [rel], depth=6)
                    assert d is not None, (n, m, k)
                    assert d.replay()
                    assert len(d.steps) <= 6

    def test_negative_search_returns_none(self):
        rel = words.power(words.parse_word("ab", ("a", "b")), 3)
        assert search_trivial(words.commutator((1,), (2,)), [rel], depth=4) is None

    def test_derivations_replay_only_by_insertion(self):
        # replay() is pure free reduction over the recorded insertions
        rel = words.parse_word("ab-3ab2a2b2", ("a", "b"))
        w = words.commutator(words.power((2,), 3), words.parse_word("ab2a", ("a", "b")))
        d = search_trivial(w, [rel], depth=6)
        assert d is not None
        replayed = words.free_reduce(d.start)
        for step in d.steps:
            replayed = words.concat(
                replayed[: step.position], step.inserted, replayed[step.position:]
            )
        assert replayed == ()


def _corpus_pair(name):
    pres = parse_presentation(presentation_text(name))
    script = parse_script(script_text(name))
    return pres, script


class TestCorpus:
    @pytest.mark.parametrize("name", PROP43)
    def test_prop43_scripts(self, name):
        pres, script = _corpus_pair(name)
        v = verify_script(pres, script)
        assert v.nonhyperbolic, (name, v.reason)

    @pytest.mark.parametrize("name", PROP44)
    def test_prop44_scripts(self, name):
        pres, script = _corpus_pair(name)
        v = verify_script(pres, script)
        assert v.nonhyperbolic, (name, v.reason)

    def test_last_prop44_is_swapped_first(self):
        """The ninth closed-case group is the first one with the roles of
        the generators exchanged (up to rotating the relators)."""
        p1, _ = _corpus_pair("p44_01")
        p9, _ = _corpus_pair("p44_09")
        swap = {1: 2, -1: -2, 2: 1, -2: -1}
        swapped = [tuple(swap[x] for x in r) for r in p1.relators]
        for w in swapped:
            assert any(
                words.is_cyclic_rotation(words.cyclic_reduce(w), r)
                for r in p9.relators
            )

    @pytest.mark.parametrize("name", CORPUS)
    def test_tietze_abelianization_invariance(self, name):
        """Invariant factors never change across presentation-rewriting
        steps of any shipped script."""
        pres, script = _corpus_pair(name)
        st_ = _State(
            names=list(pres.generators),
            active=list(range(1, len(pres.generators) + 1)),
            relators=list(pres.relators),
        )
        before = abelian_invariants(st_.snapshot())
        for i, step in enumerate(script.steps):
            if step[0] == "branch":
                break  # assumption steps legitimately change the group
            out = _run_step(st_, i, step, 8, 3000)
            if step[0] in ("rotate", "subst", "introduce", "eliminate", "change"):
                assert abelian_invariants(st_.snapshot()) == before, (name, i)
            if out is not None:
                break


class TestMutations:
    """Corrupted scripts must come back inconclusive, never nonhyperbolic."""

    def _verify_mutated(self, name, mutate):
        pres, script = _corpus_pair(name)
        steps = [list(s) for s in script.steps]
        mutate(steps)
        mutated = ProofScript(tuple(tuple(s) for s in steps))
        return verify_script(pres, mutated)

    def test_corrupt_power_exponent(self):
        v = self._verify_mutated("p43_02", lambda s: s[1].__setitem__(2, "4"))
        assert v.status == INCONCLUSIVE and v.failed_step is not None

    def test_corrupt_subst_position(self):
        def mutate(steps):
            for s in steps:
                if s[0] == "subst":
                    s[2] = str(int(s[2]) + 1)
                    return
        v = self._verify_mutated("p44_01", mutate)
        assert v.status == INCONCLUSIVE

    def test_corrupt_grouplem_params(self):
        def mutate(steps):
            for s in steps:
                if s[0] == "grouplem":
                    s[3] = str(int(s[3]) + 1)
                    return
        v = self._verify_mutated("p44_06", mutate)
        assert v.status == INCONCLUSIVE

    def test_drop_required_fact(self):
        v = self._verify_mutated("p43_01", lambda s: s.pop(0))
        assert v.status == INCONCLUSIVE

    def test_premature_conclude(self):
        def mutate(steps):
            del steps[:-1]  # keep only the conclude
        v = self._verify_mutated("p43_04", mutate)
        assert v.status == INCONCLUSIVE

    def test_unknown_step_kind(self):
        def mutate(steps):
            steps.insert(0, ["frobnicate", "a"])
        v = self._verify_mutated("p43_09", mutate)
        assert v.status == INCONCLUSIVE

    def test_eliminate_with_two_occurrences(self):
        pres = parse_presentation("gens a b\nrel abab\n")
        script = ProofScript.parse("eliminate a 1\nconclude abelian\n")
        v = verify_script(pres, script)
        assert v.status == INCONCLUSIVE

    def test_branch_without_power_fact(self):
        pres = parse_presentation("gens a b\nrel a3b2\n")
        script = ProofScript.parse("branch ab 2\nconclude abelian\n")
        v = verify_script(pres, script)
        assert v.status == INCONCLUSIVE and v.failed_step == 0

    def test_hub_requires_nontrivial_hub(self):
        # all pairs commute with c, but c dies in the abelianization:
        # the hub argument must refuse
        pres = parse_presentation("gens a b c\nrel c\n")
        script = ProofScript.parse(
            "commutes a c 2\ncommutes b c 2\nconclude abelian\n"
        )
        v = verify_script(pres, script)
        assert v.status == INCONCLUSIVE


class TestOtherConclusions:
    def test_trivial_generator_conclusion(self):
        pres = parse_presentation("gens a b\nrel a\n")
        script = ProofScript.parse("trivial a 2\nconclude trivial-gen a\n")
        v = verify_script(pres, script)
        assert v.nonhyperbolic and v.reason == "trivial-generator"

    def test_trivial_gen_needs_remaining_commutation(self):
        pres = parse_presentation("gens a b c\nrel a\n")
        script = ProofScript.parse("trivial a 2\nconclude trivial-gen a\n")
        v = verify_script(pres, script)
        assert v.status == INCONCLUSIVE  # (b, c) not proved to commute

    def test_torsion_conclusion(self):
        pres = parse_presentation("gens a b\nrel a3\n")
        script = ProofScript.parse("trivial a3 2\nconclude torsion a 3\n")
        v = verify_script(pres, script)
        assert v.nonhyperbolic and v.reason == "torsion"

    def test_torsion_needs_nontrivial_element(self):
        # a itself is a relator, so a^2 = 1 proves nothing about torsion
        pres = parse_presentation("gens a b\nrel a\n")
        script = ProofScript.parse("trivial a2 2\nconclude torsion a 2\n")
        v = verify_script(pres, script)
        assert v.status == INCONCLUSIVE
