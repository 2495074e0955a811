import math

import numpy as np
import pytest

import cutfem


def test_mesh_shapes():
    m = cutfem.build_mesh(1)
    assert m.num_elements == 2 * 16 * 16
    assert m.nodes.shape == (17 * 17, 2)
    assert m.elements.shape == (m.num_elements, 3)
    assert math.isclose(m.h, 2 ** -2.5)
    areas = [m.area(t) for t in range(m.num_elements)]
    assert math.isclose(sum(areas), 4.0, rel_tol=1e-12)
    with pytest.raises(cutfem.ConfigError):
        cutfem.build_mesh(0)


def test_level_sets_and_reflection():
    c = cutfem.make_circle(1.0 / 3.0)
    assert c(0.0, 0.0) == pytest.approx(-1.0 / 3.0)
    root = cutfem.edge_root(c, [0.0, 0.0], [1.0, 0.0])
    assert root[0] == pytest.approx(1.0 / 3.0, abs=1e-13)
    assert cutfem.edge_root(c, [0.5, 0.0], [1.0, 0.0]) is None
    y = cutfem.reflect(c, [0.4, 0.0])
    assert np.allclose(y, [2.0 / 3.0 - 0.4, 0.0])
    f = cutfem.make_flower()
    assert f(1.0 / 18.0, 0.0) == pytest.approx(0.0, abs=1e-15)


def test_classification_area():
    m = cutfem.build_mesh(3)
    topo = cutfem.classify(m, cutfem.make_circle(1.0 / 3.0))
    area = sum(topo.part_area(t, cutfem.Side.minus) for t in topo.elements(cutfem.Side.minus))
    assert area == pytest.approx(math.pi / 9.0, rel=1e-3)
    assert len(topo.cut_elements) > 0
    assert len(topo.ghost_edges(cutfem.Side.plus)) > 0


def test_eoc():
    assert cutfem.eoc([4.0, 1.0], [2.0, 1.0]) == [pytest.approx(2.0)]
    assert cutfem.eoc([1.0, 0.0], [2.0, 1.0]) == [None]


def test_patch_solve():
    out = cutfem.run_solve({"example": "patch", "level": 2, "rho_minus": 1, "rho_plus": 1})
    assert out["e0"] < 1e-10
    assert out["eflux"] < 1e-10
    assert out["symmetry"] < 1e-12


def test_convergence_and_contrast():
    rows = cutfem.run_convergence({"example": 1, "levels": [1, 2, 3]})
    assert [r["level"] for r in rows] == [1, 2, 3]
    assert rows[0]["eoc0"] is None
    assert rows[2]["eoc0"] > 1.5
    sweep = cutfem.run_contrast_sweep({"level": 2, "pairs": [(1, 10), (0.1, 100)]})
    assert len(sweep) == 2
    assert sweep[1]["eflux"] == pytest.approx(sweep[0]["eflux"], rel=0.25)


def test_config_errors():
    with pytest.raises(cutfem.ConfigError):
        cutfem.run_solve({"bogus": 1})
    with pytest.raises(cutfem.ConfigError):
        cutfem.run_solve({"solver": "qr"})


def test_diagnostics():
    rep = cutfem.run_diagnostics({}, levels=[1, 2], interpolation_levels=[1, 2], random_fields=2)
    assert len(rep["levels"]) == 2
    assert rep["levels"][0]["coercivity"] > 0
    assert all(r["ratio"] > 0 for r in rep["interpolation"])
