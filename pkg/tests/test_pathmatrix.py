import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qspath import (
    InfeasibilityCertificate,
    InteractionMatrix,
    PathMatrix,
    QsppInstance,
    ScaleError,
    build_path_matrix,
    lp_oracle,
    make_complete_symmetric,
    make_grid,
    path_vertices,
)
from qspath.generate import filled_instance

from helpers import (
    arc_index,
    assert_valid_certificate,
    random_symmetric_interaction,
)


def k4_instance(entries) -> QsppInstance:
    g = make_complete_symmetric(4, simplified=True, source=0, target=3)
    idx = arc_index(g)
    mapped = {(idx[e], idx[f]): v for (e, f), v in entries.items()}
    q = InteractionMatrix.from_entries(g.m, mapped)
    return QsppInstance(g, 0, 3, (Fraction(0),) * g.m, q)


SHORT_PATHS_COSTLY = {((0, 1), (1, 3)): 1, ((0, 2), (2, 3)): 1}


def test_path_matrix_k4_content():
    inst = k4_instance(SHORT_PATHS_COSTLY)
    pm = build_path_matrix(inst)
    assert len(pm.rows) == 4 and pm.arc_count == 6
    idx = arc_index(inst.graph)
    by_route = {path_vertices(inst.graph, p): i for i, p in enumerate(pm.paths)}
    # characteristic vectors hold exactly the arcs of each route
    expected = {
        (0, 1, 3): [(0, 1), (1, 3)],
        (0, 2, 3): [(0, 2), (2, 3)],
        (0, 1, 2, 3): [(0, 1), (1, 2), (2, 3)],
        (0, 2, 1, 3): [(0, 2), (2, 1), (1, 3)],
    }
    for route, arcs in expected.items():
        row = pm.rows[by_route[route]]
        assert sum(row) == len(arcs)
        assert all(row[idx[a]] == 1 for a in arcs)
    assert pm.costs[by_route[(0, 1, 3)]] == 2
    assert pm.costs[by_route[(0, 2, 3)]] == 2
    assert pm.costs[by_route[(0, 1, 2, 3)]] == 0
    assert pm.costs[by_route[(0, 2, 1, 3)]] == 0


def test_path_matrix_tiny_grid():
    g = make_grid(2, 2)
    inst = QsppInstance(g, 0, 3, (Fraction(0),) * 4, InteractionMatrix.zero(4))
    pm = build_path_matrix(inst)
    assert len(pm.rows) == 2
    assert all(sum(row) == 2 for row in pm.rows)


def test_oracle_zero_costs_feasible():
    inst = k4_instance({})
    result = lp_oracle(build_path_matrix(inst), require_nonneg=True)
    assert result.linearizable
    assert result.vector == (0,) * 6


def test_oracle_rejects_costly_short_paths_with_certificate():
    inst = k4_instance(SHORT_PATHS_COSTLY)
    pm = build_path_matrix(inst)
    result = lp_oracle(pm, require_nonneg=True)
    assert not result.linearizable
    assert isinstance(result.witness, InfeasibilityCertificate)
    assert_valid_certificate(pm, result.witness.coefficients)
    # the textbook combination (short paths -1, long paths +1) also certifies
    weights = {2: Fraction(-1), 3: Fraction(1)}
    y = [weights[len(p)] for p in pm.paths]
    assert_valid_certificate(pm, y)
    assert sum(c * v for c, v in zip(pm.costs, y)) == -4
    # without the sign restriction the same system is solvable
    assert lp_oracle(pm, require_nonneg=False).linearizable


def test_oracle_feasible_interior_pair():
    inst = k4_instance({((0, 1), (1, 2)): 1})
    pm = build_path_matrix(inst)
    by_route = {path_vertices(inst.graph, p): i for i, p in enumerate(pm.paths)}
    assert pm.costs[by_route[(0, 1, 2, 3)]] == 2
    assert sum(pm.costs) == 2
    result = lp_oracle(pm, require_nonneg=True)
    assert result.linearizable
    idx = arc_index(inst.graph)
    # weight 2 on the interior arc reproduces all four costs
    explicit = [Fraction(0)] * 6
    explicit[idx[(1, 2)]] = Fraction(2)
    for row, cost in zip(pm.rows, pm.costs):
        assert sum(r * v for r, v in zip(row, explicit)) == cost


def test_oracle_unrestricted_certificate_on_unbalanced_grid():
    rng = random.Random(1)
    found = False
    for seed in range(40):
        inst = filled_instance(make_grid(3, 3), 0, 8, "random", seed=seed)
        pm = build_path_matrix(inst)
        result = lp_oracle(pm, require_nonneg=False)
        if result.linearizable:
            continue
        found = True
        y = result.witness.coefficients
        # equality-form certificate: rows combine to zero, costs do not
        for col in range(pm.arc_count):
            assert sum(pm.rows[i][col] * y[i] for i in range(len(y))) == 0
        assert sum(c * v for c, v in zip(pm.costs, y)) < 0
    assert found


def test_oracle_feasible_by_construction():
    rng = random.Random(15)
    for _ in range(15):
        g = make_grid(rng.randint(2, 4), rng.randint(2, 4))
        inst = QsppInstance(
            g, 0, g.n - 1, (Fraction(0),) * g.m, InteractionMatrix.zero(g.m)
        )
        pm = build_path_matrix(inst)
        planted = [Fraction(rng.randint(0, 9)) for _ in range(g.m)]
        costs = tuple(
            sum(r * v for r, v in zip(row, planted)) for row in pm.rows
        )
        planted_pm = PathMatrix(pm.rows, costs, pm.paths, pm.arc_count)
        for flag in (True, False):
            result = lp_oracle(planted_pm, require_nonneg=flag)
            assert result.linearizable
            for row, cost in zip(pm.rows, costs):
                assert sum(r * v for r, v in zip(row, result.vector)) == cost


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10**6), nonneg=st.booleans())
def test_oracle_outcomes_always_verify(seed, nonneg):
    rng = random.Random(seed)
    g = make_grid(rng.randint(2, 3), rng.randint(2, 4))
    inst = QsppInstance(
        g,
        0,
        g.n - 1,
        tuple(Fraction(rng.randint(0, 3)) for _ in range(g.m)),
        random_symmetric_interaction(g.m, rng, 0, 3),
    )
    pm = build_path_matrix(inst)
    result = lp_oracle(pm, require_nonneg=nonneg)
    if result.linearizable:
        for row, cost in zip(pm.rows, pm.costs):
            assert sum(r * v for r, v in zip(row, result.vector)) == cost
        if nonneg:
            assert all(v >= 0 for v in result.vector)
    else:
        assert_valid_certificate(pm, result.witness.coefficients)


def test_oracle_scale_guard():
    big = PathMatrix(((),) * 1001, (Fraction(0),) * 1001, (None,) * 1001, 0)
    with pytest.raises(ScaleError):
        lp_oracle(big)
