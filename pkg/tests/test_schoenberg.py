import numpy as np
import pytest

from hilbert_embed.errors import IndexOutOfRange, NotEmbeddable
from hilbert_embed.families import (
    FamilySpec,
    cycle_graph,
    generate,
    path_graph,
    random_euclidean,
)
from hilbert_embed.metric import shortest_path_metric
from hilbert_embed.schoenberg import (
    embed_coordinates,
    is_embeddable,
    kernel_at_base,
    kernel_trace_profile,
    quadratic_form,
    squared_distance_matrix,
    verify_isometry,
)

P3 = shortest_path_metric(path_graph(3))


def test_squared_distance_p3():
    np.testing.assert_array_equal(squared_distance_matrix(P3), [[0, 1, 4], [1, 0, 1], [4, 1, 0]])


@pytest.mark.parametrize(
    "base, want",
    [
        (0, [[0, 0, 0], [0, 2, 4], [0, 4, 8]]),
        (1, [[2, 0, -2], [0, 0, 0], [-2, 0, 2]]),
        (2, [[8, 4, 0], [4, 2, 0], [0, 0, 0]]),
    ],
)
def test_p3_kernels_exact(base, want):
    k = kernel_at_base(P3, base).K
    assert np.array_equal(k, np.array(want, dtype=float))


def test_p3_trace_profile():
    assert kernel_trace_profile(P3) == [10.0, 4.0, 10.0]


def test_kernel_base_out_of_range():
    with pytest.raises(IndexOutOfRange):
        kernel_at_base(P3, 3)


def test_p3_embeds_on_a_line():
    e = embed_coordinates(P3, 0)
    assert e.rank == 1
    np.testing.assert_allclose(np.abs(e.coords[:, 0]), [0, 1, 2], atol=1e-12)
    assert verify_isometry(e, P3) <= 1e-9


def test_is_embeddable_p3():
    r = is_embeddable(P3)
    assert r.embeddable and r.witness is None


@pytest.mark.parametrize("kind", ["claw", "claw-plus-edge"])
def test_claw_not_embeddable(kind):
    m = generate(FamilySpec(kind))
    r = is_embeddable(m)
    assert not r.embeddable
    assert abs(r.witness.sum()) <= 1e-12
    assert quadratic_form(squared_distance_matrix(m), r.witness) > 1e-9
    assert r.lambda_max > 0


def test_c4_alternating_vector():
    m = shortest_path_metric(cycle_graph(4))
    alpha = np.zeros(4)
    alpha[[0, 3, 1, 2]] = [1, -1, -1, 1]
    assert quadratic_form(squared_distance_matrix(m), alpha) == 8


def test_embed_not_embeddable_raises():
    with pytest.raises(NotEmbeddable):
        embed_coordinates(generate(FamilySpec("claw")))


def test_embedding_independent_of_base():
    m = random_euclidean(6, 3, 11)
    for base in range(6):
        e = embed_coordinates(m, base)
        assert e.rank == 3
        assert verify_isometry(e, m) <= 1e-9
        np.testing.assert_allclose(e.coords[base], 0, atol=1e-12)


def test_embedding_rank_of_collinear_points():
    m = generate(FamilySpec("path", n=5))
    assert embed_coordinates(m).rank == 1


def test_verdict_agrees_with_numpy_oracle():
    rng = np.random.default_rng(4)
    for n in range(3, 8):
        for _ in range(5):
            m = random_euclidean(n, 2, int(rng.integers(1 << 30)))
            assert is_embeddable(m).embeddable
    for n in range(5, 12):
        m = shortest_path_metric(cycle_graph(n))
        d2 = squared_distance_matrix(m)
        p = np.eye(n) - 1 / n
        top = np.linalg.eigvalsh(p @ d2 @ p)[-1]
        r = is_embeddable(m)
        assert r.lambda_max == pytest.approx(top, abs=1e-9)
        assert not r.embeddable


def test_report_json():
    obj = is_embeddable(P3).to_json()
    assert set(obj) == {"embeddable", "lambda_max", "witness"}
    assert obj["witness"] is None
