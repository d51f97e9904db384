"""Model construction, serialisation, enumeration, and configurations."""

import itertools
import json

import pytest

from pml import (
    BudgetError,
    Configuration,
    KripkeModel,
    ModelFormatError,
    ModelGenSpec,
    enumerate_models,
    exhaustive_count,
    inverted,
    load_model,
    poison,
    poison_model,
    poison_successors,
    save_model,
    to_dot,
)
from pml.kripke import bits_of, mask_of


class TestBuild:
    def test_default_names(self):
        m = KripkeModel.build([[(0, 1), (1, 2)]], n=3)
        assert m.names == ("1", "2", "3")
        assert m.n == 3
        assert m.relation_count == 1

    def test_n_inferred_from_edges(self):
        m = KripkeModel.build([[(0, 4)]])
        assert m.n == 5

    def test_named_states_and_valuation(self):
        m = KripkeModel.build(
            [[(0, 1)]], names=("a", "b"), valuation={"p": [1]}
        )
        assert m.state_id("b") == 1
        assert m.val == {"p": 0b10}
        assert m.atoms == ("p",)

    def test_successors_and_masks(self):
        m = KripkeModel.build([[(0, 1), (0, 2), (2, 0)]], n=3)
        assert m.successors(0) == (1, 2)
        assert m.succ_mask[0][0] == 0b110
        assert m.pred[0][0] == (2,)

    def test_multiple_relations(self):
        m = KripkeModel.build([[(0, 1)], [(1, 0)]], n=2)
        assert m.relation_count == 2
        assert m.successors(1, index=1) == (0,)
        assert m.poison_base == (0, 0)

    def test_rejects_bad_shapes(self):
        with pytest.raises(ModelFormatError):
            KripkeModel.build([[(0, 3)]], n=2)
        with pytest.raises(ModelFormatError):
            KripkeModel.build([[(0, 0)]], names=("a", "a"))

    def test_unknown_state_name(self):
        m = KripkeModel.build([[(0, 0)]], n=1)
        with pytest.raises(ModelFormatError):
            m.state_id("zz")

    def test_equality_and_hash(self):
        a = KripkeModel.build([[(0, 1)]], n=2)
        b = KripkeModel.build([[(0, 1)]], n=2)
        assert a == b
        assert hash(a) == hash(b)


class TestSerialisation:
    def test_round_trip(self, demo):
        assert load_model(save_model(demo)) == demo

    def test_round_trip_with_poison_and_atoms(self):
        m = KripkeModel.build(
            [[(0, 1)], [(1, 1)]],
            names=("a", "b"),
            valuation={"p": [0], "q": [0, 1]},
            poison_base=[[1], []],
        )
        assert load_model(save_model(m)) == m

    def test_canonical_document_shape(self, demo):
        doc = json.loads(save_model(demo))
        assert list(doc) == ["states", "relations", "valuation", "poison"]
        assert doc["states"] == ["1", "2", "3", "4", "5", "6"]
        assert doc["relations"][0][0] == ["1", "2"]
        assert save_model(demo).endswith("\n")

    def test_save_is_deterministic(self, demo):
        assert save_model(demo) == save_model(load_model(save_model(demo)))

    @pytest.mark.parametrize(
        "doc, needle",
        [
            ("[]", "object"),
            ("{", "invalid JSON"),
            ('{"states": [], "relations": [[]]}', "states"),
            ('{"states": ["a", "a"], "relations": [[]]}', "duplicate"),
            ('{"states": ["a"], "relations": [[["a", "b"]]]}', "unknown state"),
            ('{"states": ["a"], "relations": [[["a"]]]}', "pair"),
            ('{"states": ["a"], "relations": []}', "relations"),
            ('{"states": ["a"], "relations": [[]], "valuation": {"P": []}}',
             "atom"),
            ('{"states": ["a"], "relations": [[]], "valuation": {"p": ["b"]}}',
             "unknown state"),
            ('{"states": ["a"], "relations": [[]], "poison": []}',
             "one state set per relation"),
            ('{"states": ["a"], "relations": [[]], "poison": [["b"]]}',
             "unknown state"),
        ],
    )
    def test_rejects_malformed_documents(self, doc, needle):
        with pytest.raises(ModelFormatError) as exc:
            load_model(doc)
        assert needle in str(exc.value)

    def test_json_error_is_located(self):
        with pytest.raises(ModelFormatError) as exc:
            load_model('{"states": [,]}')
        assert "line 1" in str(exc.value)

    def test_dot_export_mentions_every_state(self, demo):
        dot = to_dot(demo)
        assert dot.startswith("digraph")
        for name in demo.names:
            assert f'"{name}"' in dot


class TestEnumeration:
    def test_exhaustive_count_formula(self):
        assert exhaustive_count(ModelGenSpec(max_states=2)) == 16
        assert exhaustive_count(ModelGenSpec(max_states=2, atoms=("p",))) == 64
        assert exhaustive_count(
            ModelGenSpec(max_states=2, relation_count=2)
        ) == 256

    def test_exhaustive_enumeration_is_exactly_n(self):
        models = list(enumerate_models(ModelGenSpec(max_states=2)))
        assert len(models) == 16
        assert all(m.n == 2 for m in models)
        assert len(set(models)) == 16

    def test_exhaustive_enumeration_with_atom(self):
        models = list(enumerate_models(ModelGenSpec(max_states=1, atoms=("p",))))
        assert len(models) == 4
        assert sorted(m.val.get("p", 0) for m in models) == [0, 0, 1, 1]

    def test_budget_guard(self):
        spec = ModelGenSpec(max_states=4, budget=1000)
        with pytest.raises(BudgetError) as exc:
            list(enumerate_models(spec))
        assert exc.value.estimate == 1 << 16
        assert exc.value.budget == 1000

    def test_random_mode_is_seed_deterministic(self):
        spec = ModelGenSpec(max_states=4, atoms=("p",), seed=7, mode="random")
        a = list(itertools.islice(enumerate_models(spec), 5))
        b = list(itertools.islice(enumerate_models(spec), 5))
        assert a == b
        other = ModelGenSpec(max_states=4, atoms=("p",), seed=8, mode="random")
        c = list(itertools.islice(enumerate_models(other), 5))
        assert a != c

    def test_random_mode_respects_bounds(self):
        spec = ModelGenSpec(max_states=3, atoms=("p", "q"), seed=1, mode="random")
        for m in itertools.islice(enumerate_models(spec), 50):
            assert 1 <= m.n <= 3
            assert set(m.val) <= {"p", "q"}

    def test_rejects_bad_spec(self):
        with pytest.raises(ModelFormatError):
            ModelGenSpec(max_states=0)
        with pytest.raises(ModelFormatError):
            ModelGenSpec(max_states=2, mode="creative")


class TestConfigurations:
    def test_initial_starts_from_poison_base(self):
        m = KripkeModel.build([[(0, 1)]], n=2, poison_base=[[1]])
        cfg = Configuration.initial(m, 0)
        assert cfg.poisoned_states() == [1]
        assert cfg.current == 0

    def test_poison_accumulates_and_moves(self):
        m = KripkeModel.build([[(0, 1), (1, 0)]], n=2)
        cfg = Configuration.initial(m, 0)
        cfg = poison(cfg, 0, 1)
        assert cfg.current == 1
        assert cfg.poisoned_states() == [1]
        cfg = poison(cfg, 0, 0)
        assert cfg.poisoned_states() == [0, 1]

    def test_poison_successors_one_step(self):
        m = KripkeModel.build([[(0, 1), (0, 2)]], n=3)
        cfg = Configuration.initial(m, 0)
        steps = poison_successors(cfg)
        assert [c.current for c in steps] == [1, 2]
        assert all(c.poisoned_states() == [c.current] for c in steps)

    def test_poison_model_sets_base(self):
        m = KripkeModel.build([[(0, 1)]], n=2)
        pm = poison_model(m, 1)
        assert pm.poison_base == (0b10,)
        assert Configuration.initial(pm, 0).poisoned_states() == [1]

    def test_index_out_of_range(self):
        m = KripkeModel.build([[(0, 1)]], n=2)
        cfg = Configuration.initial(m, 0)
        with pytest.raises(Exception):
            poison(cfg, 1, 0)


class TestInversion:
    def test_inverted_reverses_each_relation(self, demo):
        inv = inverted(demo)
        assert inv.names == demo.names
        assert (1, 0) in inv.edges[0]
        assert inverted(inv) == demo

    def test_masks(self):
        assert mask_of([0, 2]) == 0b101
        assert bits_of(0b1010) == [1, 3]
        assert bits_of(0) == []
