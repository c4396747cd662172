import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from colorcode_pcwd import gf2
from colorcode_pcwd.lattice import Color, build
from colorcode_pcwd.spa import SumProduct, depolarizing_prior, run_spa


@pytest.fixture(scope="module")
def min_weight_by_syndrome_L1():
    """Exhaustive oracle: every syndrome of the L=1 code -> its minimum-weight error(s)."""
    H = build(1).H
    n = H.shape[1]
    allv = ((np.arange(2**n)[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    syn = (allv.astype(np.int64) @ H.T.astype(np.int64)) & 1
    keys = syn @ (1 << np.arange(H.shape[0]))
    weights = allv.sum(axis=1)
    best = {}
    for k, w, idx in zip(keys.tolist(), weights.tolist(), range(len(allv))):
        if k not in best or w < best[k][0]:
            best[k] = (w, [idx])
        elif w == best[k][0]:
            best[k][1].append(idx)
    return best, allv


def test_zero_syndrome_returns_prior():
    H = build(2).H
    res = run_spa(H, np.zeros(H.shape[0], dtype=np.uint8), 0.05, 100)
    assert res.matched and res.iterations_used == 1
    assert not res.hard.any()
    assert np.allclose(res.omega, 0.05)


def test_single_face_errors_L1(min_weight_by_syndrome_L1):
    best, allv = min_weight_by_syndrome_L1
    lat = build(1)
    sp = SumProduct(lat.H)
    for f in range(lat.n_faces):
        e = lat.face_indicator([f])
        s = lat.syndrome(e)
        w, idxs = best[int(s @ (1 << np.arange(9)))]
        assert w == 1 and len(idxs) == 1 and np.array_equal(allv[idxs[0]], e)
        res = sp.decode(s, 0.05, 100)
        assert res.matched
        assert np.array_equal(res.hard, e)


def test_single_edge_errors_on_red_cycle_code():
    g = build(2).cycle_projection(Color.R)
    graph = nx.Graph()
    for j in range(g.n_edges):
        a, b = np.flatnonzero(g.H[:, j])
        graph.add_edge(int(a), int(b), idx=j)
    sp = SumProduct(g.H)
    for j in range(g.n_edges):
        e = np.zeros(g.n_edges, dtype=np.uint8)
        e[j] = 1
        s = gf2.mat_vec(g.H, e)
        a, b = np.flatnonzero(s)
        path = nx.shortest_path(graph, int(a), int(b))
        assert len(path) == 2 and graph.edges[path[0], path[1]]["idx"] == j
        res = sp.decode(s, 0.05, 100)
        assert res.matched and np.array_equal(res.hard, e)


def test_rejects_bad_inputs():
    H = build(1).H
    with pytest.raises(ValueError):
        run_spa(H, np.zeros(9, dtype=np.uint8), 0.0)
    with pytest.raises(ValueError):
        run_spa(H, np.zeros(9, dtype=np.uint8), 0.5)
    with pytest.raises(ValueError):
        run_spa(H, np.zeros(8, dtype=np.uint8), 0.1)


def test_depolarizing_prior():
    assert depolarizing_prior(0.15) == pytest.approx(0.1)
    assert depolarizing_prior(0.75) == pytest.approx(0.5)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.01, 0.3), st.integers(1, 30))
def test_omega_bounds_and_match_consistency(seed, q, iters):
    lat = build(2)
    rng = np.random.default_rng(seed)
    e = (rng.random(lat.n_faces) < q).astype(np.uint8)
    s = lat.syndrome(e)
    res = run_spa(lat.H, s, q, iters)
    assert np.all((res.omega >= 0) & (res.omega <= 1))
    assert np.array_equal(res.hard, (res.omega > 0.5).astype(np.uint8))
    assert res.matched == np.array_equal(lat.syndrome(res.hard), s)
    again = run_spa(lat.H, s, q, iters)
    assert np.array_equal(again.hard, res.hard) and np.array_equal(again.omega, res.omega)


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_variable_permutation_equivariance(seed):
    g = build(2).cycle_projection(Color.G)
    rng = np.random.default_rng(seed)
    e = (rng.random(g.n_edges) < 0.1).astype(np.uint8)
    s = gf2.mat_vec(g.H, e)
    perm = rng.permutation(g.n_edges)
    a = run_spa(g.H, s, 0.05, 50)
    b = run_spa(g.H[:, perm], s, 0.05, 50)
    assert np.allclose(a.omega[perm], b.omega, atol=1e-12)
    assert a.iterations_used == b.iterations_used
