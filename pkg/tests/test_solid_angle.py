import json
import math

import numpy as np
import pytest

from angulus.errors import DomainError
from angulus.solid_angle import (
    CORPUS_ENV,
    PlatonicSolid,
    RegularVertexFigure,
    default_corpus,
    dihedral_oracle_solid_angle,
    load_corpus,
    monte_carlo_solid_angle,
    platonic_table,
    platonic_vertex_figure,
    regular_vertex_edges,
    regular_vertex_solid_angle,
    trihedral_edges,
    trihedral_solid_angle,
    triple_product_solid_angle,
    validate_trihedral,
)

HALF_PI = math.pi / 2
# closed forms through the dihedral angle of each solid
TETRA = 3 * math.acos(1 / 3) - math.pi
OCTA = 4 * math.acos(-1 / 3) - 2 * math.pi
ICOSA = 5 * math.acos(-math.sqrt(5) / 3) - 3 * math.pi
DODECA = 3 * math.acos(-1 / math.sqrt(5)) - math.pi


def random_trihedrals(count, seed):
    rng = np.random.default_rng(seed)
    out = []
    while len(out) < count:
        try:
            out.append(validate_trihedral(*rng.uniform(0, math.pi, 3)))
        except DomainError:
            pass
    return out


class TestTrihedral:
    def test_cube_corner_valid(self):
        assert validate_trihedral(HALF_PI, HALF_PI, HALF_PI).faces == (HALF_PI,) * 3

    @pytest.mark.parametrize("faces, invariant", [
        ((0.3, 0.3, 0.7), "face angle triangle inequality"),
        ((2.2, 2.2, 2.2), "face angle sum < 2*pi"),
        ((0.0, 1.0, 1.0), "face angle range"),
    ])
    def test_rejections(self, faces, invariant):
        with pytest.raises(DomainError) as info:
            validate_trihedral(*faces)
        assert info.value.invariant == invariant

    def test_examples(self):
        assert trihedral_solid_angle(validate_trihedral(HALF_PI, HALF_PI, HALF_PI)) == \
            pytest.approx(HALF_PI, abs=1e-15)
        third = math.pi / 3
        assert trihedral_solid_angle(validate_trihedral(third, third, third)) == \
            pytest.approx(TETRA, abs=1e-14)

    def test_flattening_cone(self):
        omega = trihedral_solid_angle(validate_trihedral(1.0, 0.7, 1.7 - 1e-9))
        assert 0 <= omega < 1e-4

    def test_routes_agree(self):
        worst = 0.0
        for t in random_trihedrals(500, 0):
            tp = triple_product_solid_angle(*trihedral_edges(t))
            assert not tp.degenerate
            worst = max(worst, abs(tp.steradians - trihedral_solid_angle(t)))
        assert worst <= 1e-10


class TestTripleProduct:
    def test_octant(self):
        assert triple_product_solid_angle(*np.eye(3)) == (pytest.approx(HALF_PI, abs=1e-15), False)

    def test_tetrahedron_corner(self):
        # edges from one vertex of a regular tetrahedron
        v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], float)
        edges = [(v[i] - v[0]) / np.linalg.norm(v[i] - v[0]) for i in (1, 2, 3)]
        assert triple_product_solid_angle(*edges).steradians == pytest.approx(TETRA, abs=1e-14)

    def test_coplanar(self):
        assert triple_product_solid_angle([1, 0, 0], [0, 1, 0], [1, 1, 0]) == (0.0, True)

    def test_beyond_hemisphere_quarter(self):
        # wide cone: denominator 1 + u.v + v.w + w.u goes negative
        t = validate_trihedral(2.0, 2.0, 2.0)
        tp = triple_product_solid_angle(*trihedral_edges(t))
        assert tp.steradians > math.pi
        assert tp.steradians == pytest.approx(trihedral_solid_angle(t), abs=1e-12)


class TestRegular:
    def test_examples(self):
        assert regular_vertex_solid_angle(RegularVertexFigure(3, HALF_PI)) == \
            pytest.approx(HALF_PI, abs=1e-15)
        assert regular_vertex_solid_angle(RegularVertexFigure(4, math.pi / 3)) == \
            pytest.approx(OCTA, abs=1e-12)
        assert regular_vertex_solid_angle(RegularVertexFigure(5, math.pi / 3)) == \
            pytest.approx(ICOSA, abs=1e-12)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, math.pi / 3, HALF_PI, 1.8])
    def test_matches_trihedral(self, alpha):
        regular = regular_vertex_solid_angle(RegularVertexFigure(3, alpha))
        assert abs(regular - trihedral_solid_angle(validate_trihedral(alpha, alpha, alpha))) <= 1e-12

    @pytest.mark.parametrize("n", [3, 4, 5, 6, 8, 12])
    def test_matches_dihedral_oracle(self, n):
        for alpha in np.linspace(0.05, 2 * math.pi / n - 0.05, 9):
            fig = RegularVertexFigure(n, float(alpha))
            assert regular_vertex_solid_angle(fig) == \
                pytest.approx(dihedral_oracle_solid_angle(fig), abs=1e-10)

    @pytest.mark.parametrize("n", [3, 4, 5, 7])
    def test_monotone_in_alpha(self, n):
        values = [regular_vertex_solid_angle(RegularVertexFigure(n, float(a)))
                  for a in np.linspace(0.01, 2 * math.pi / n - 1e-3, 200)]
        assert all(x < y for x, y in zip(values, values[1:]))

    def test_flat_vertex_limit(self):
        values = [regular_vertex_solid_angle(RegularVertexFigure(4, HALF_PI - h))
                  for h in (1e-2, 1e-4, 1e-6, 1e-8)]
        gaps = [2 * math.pi - v for v in values]
        assert all(g > 0 for g in gaps)
        # the deficit shrinks like sqrt(h)
        assert all(8 < x / y < 12 for x, y in zip(gaps, gaps[1:]))
        assert gaps[-1] < 1e-3

    def test_edges_have_apex_angle(self):
        fig = RegularVertexFigure(5, 0.9)
        e = regular_vertex_edges(fig)
        for k in range(5):
            assert math.acos(np.dot(e[k], e[(k + 1) % 5])) == pytest.approx(0.9, abs=1e-12)

    @pytest.mark.parametrize("n, alpha", [(2, 1.0), (3, 0.0), (4, HALF_PI), (6, 1.2)])
    def test_rejections(self, n, alpha):
        with pytest.raises(DomainError):
            regular_vertex_solid_angle(RegularVertexFigure(n, alpha))


class TestPlatonic:
    @pytest.mark.parametrize("solid, n, alpha", [
        ("tetrahedron", 3, math.pi / 3),
        ("cube", 3, HALF_PI),
        ("octahedron", 4, math.pi / 3),
        ("dodecahedron", 3, 3 * math.pi / 5),
        ("icosahedron", 5, math.pi / 3),
    ])
    def test_vertex_figures(self, solid, n, alpha):
        assert platonic_vertex_figure(PlatonicSolid(solid)) == RegularVertexFigure(n, alpha)

    def test_closed_enumeration(self):
        assert len(PlatonicSolid) == 5

    def test_cube_tiles_sphere(self):
        cube = regular_vertex_solid_angle(platonic_vertex_figure("cube"))
        assert abs(8 * cube - 4 * math.pi) <= 1e-12

    def test_table_values_and_ordering(self):
        rows = {r["solid"]: r for r in platonic_table(samples=0)}
        expected = {"tetrahedron": TETRA, "cube": HALF_PI, "octahedron": OCTA,
                    "dodecahedron": DODECA, "icosahedron": ICOSA}
        for name, value in expected.items():
            assert rows[name]["solid_angle_sr"] == pytest.approx(value, abs=1e-12)
            assert rows[name]["fraction_of_sphere"] == pytest.approx(value / (4 * math.pi))
            assert "mc_sr" not in rows[name]
        order = sorted(rows, key=lambda k: rows[k]["solid_angle_sr"])
        assert order == ["tetrahedron", "octahedron", "cube", "icosahedron", "dodecahedron"]


class TestMonteCarlo:
    def test_cube_corner(self):
        est = monte_carlo_solid_angle(np.eye(3), 10**6, seed=0)
        assert abs(est.value - HALF_PI) <= 3 * est.stderr

    def test_octahedron(self):
        edges = regular_vertex_edges(platonic_vertex_figure("octahedron"))
        est = monte_carlo_solid_angle(edges, 10**6, seed=0)
        assert abs(est.value - OCTA) <= 3 * est.stderr

    def test_orientation_independent(self):
        edges = regular_vertex_edges(RegularVertexFigure(4, 1.0))
        a = monte_carlo_solid_angle(edges, 100_000, seed=1)
        b = monte_carlo_solid_angle(edges[::-1], 100_000, seed=1)
        assert a == b

    def test_rejects(self):
        with pytest.raises(DomainError):
            monte_carlo_solid_angle(np.eye(3)[:2], 1000)
        bowtie = [[1, 0, 1], [0, 1, 1], [1, 1, 1], [-1, 0, 1]]
        with pytest.raises(DomainError, match="convex"):
            monte_carlo_solid_angle(bowtie, 1000)


class TestCorpus:
    def test_default(self, monkeypatch):
        monkeypatch.delenv(CORPUS_ENV, raising=False)
        names = [e.name for e in default_corpus()]
        assert names == ["tetrahedron", "cube", "octahedron", "dodecahedron", "icosahedron"]

    def test_custom_file_and_env(self, tmp_path, monkeypatch):
        path = tmp_path / "corpus.json"
        path.write_text(json.dumps([{"name": "square pyramid apex", "faces_at_vertex": 4,
                                     "apex_angle_rad": math.pi / 3}]))
        (entry,) = load_corpus(path)
        assert entry.figure == RegularVertexFigure(4, math.pi / 3)
        monkeypatch.setenv(CORPUS_ENV, str(path))
        assert [e.name for e in default_corpus()] == ["square pyramid apex"]

    @pytest.mark.parametrize("payload", [
        {"name": "x"},
        [{"name": "x", "faces_at_vertex": 3}],
        [{"name": "x", "faces_at_vertex": "3", "apex_angle_rad": 1.0}],
        [{"name": "x", "faces_at_vertex": 3, "apex_angle_rad": 3.0}],
    ])
    def test_bad_schema(self, tmp_path, payload):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps(payload))
        with pytest.raises(DomainError):
            load_corpus(path)

    def test_missing_and_malformed(self, tmp_path):
        with pytest.raises(DomainError):
            load_corpus(tmp_path / "nope.json")
        (tmp_path / "x.json").write_text("{not json")
        with pytest.raises(DomainError):
            load_corpus(tmp_path / "x.json")
