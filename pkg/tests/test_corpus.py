import pytest

from bvperiod import analysis, corpus
from bvperiod.diagram import ContractError, from_recursion, validate

ALL_FACTS = [(name, i, f) for name in corpus.names() for i, f in enumerate(corpus.fixture(name).facts)]


@pytest.mark.parametrize("name, i, fact", ALL_FACTS,
                         ids=[f"{n}-{i}-{f.op}" for n, i, f in ALL_FACTS])
def test_fixture_fact(name, i, fact):
    assert fact.tag in (corpus.PAPER, corpus.TRIVIAL, corpus.DERIVED)
    assert corpus.evaluate(corpus.fixture(name), fact) == fact.expected


def test_names_and_aliases():
    assert "chacon" in corpus.names()
    assert corpus.fixture("fig3b").name == "chacon"
    assert corpus.fixture("fig2b").name == "ex-someper"
    with pytest.raises(KeyError):
        corpus.fixture("fig9z")


def test_required_facts_are_attached():
    ops = {(f.op, f.args) for f in corpus.fixture("fig1b-rank1").facts}
    assert ("block", (3, 1, 1)) in ops
    assert any(f.op == "semi" and f.expected and f.expected[0] == "0s1s1s0"
               for f in corpus.fixture("sec4-U3").facts)


def test_unknown_fact_operation():
    with pytest.raises(KeyError):
        corpus.evaluate(corpus.fixture("chacon"), corpus.Fact("nope", (), None, corpus.DERIVED))


def test_generators_respect_standing_conditions():
    for seed in range(10_000):
        policy = ("branching", "isolated")[seed % 2]
        for d in (corpus.random_stationary(seed, 1 + seed % 3, spacer_policy=policy),
                  corpus.random_ldc_stationary(seed, 1 + seed % 4, perturb=seed % 3 == 0)):
            rep = validate(d, 3)
            assert not (rep.structure or rep.c1 or rep.c2 or rep.c3), seed


def test_random_stationary_is_deterministic():
    assert corpus.random_stationary(5, 2) == corpus.random_stationary(5, 2)


def test_random_stationary_rank_one_shape():
    d = corpus.random_stationary(11, 1)
    assert analysis.rank_one_structure(d, horizon=6) is not None


def test_random_stationary_bad_parameters():
    with pytest.raises(ContractError):
        corpus.random_stationary(1, 0)
    with pytest.raises(ContractError):
        corpus.random_stationary(1, 2, max_edges=1)
    with pytest.raises(ContractError):
        corpus.random_stationary(1, 2, spacer_policy="sometimes")


def test_ldc_generator_passes_by_construction():
    for seed in range(50):
        d = corpus.random_ldc_stationary(seed, 1 + seed % 4)
        assert validate(d, 6).ok
        assert all(analysis.ldc(d, n, 1).passed for n in range(2, 6))


def test_perturbed_generator_fails_ldc():
    for seed in range(50):
        d = corpus.random_ldc_stationary(seed, 1 + seed % 4, perturb=True)
        assert not analysis.ldc(d, 2, 1).passed


def test_rank_one_generator_shapes():
    for seed in range(30):
        for periodic in (True, False):
            table = corpus.random_rank_one(seed, periodic)
            d = from_recursion(table)
            assert all(d.K(n) == 1 for n in range(1, d.explicit_depth + 1))
            assert table == corpus.random_rank_one(seed, periodic)
