import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3tk import strata as S
from k3tk.strata import PairDescriptor, StrataError

SPACES = (S.GIT, S.KIRWAN, S.PAIRS)

TYPE_II_DIMS = {"II1": 3, "II2": 19, "II3": 4, "II4": 10, "II5": 12, "II6": 13}
TYPE_III_DIMS = {"III1": 2, "III2": 18, "III3": 3, "III4": 9, "III5": 11, "III6": 12}
TABLE2_DIMS = {"IIIalpha": 1, "IIIbeta": 8, "IIIgamma": 3, "IIIdelta": 3, "IIIepsilon": 2, "IIIphi": 9,
               "IIIzeta'": 0, "IIIzeta": 0}
BB = {"II1": S.A17, "II2": S.E8E8A1, "II3": S.D16A1, "II4": S.E7D10, "II5": S.E8E8A1, "II6": S.E7D10}


def test_tabulated_dimensions():
    assert {r.id: r.dim for r in S.table1()} == TYPE_II_DIMS
    assert {r.id: r.dim for r in S.type_iii_components()} == TYPE_III_DIMS
    assert {r.id: r.dim for r in S.table2()} == TABLE2_DIMS


def test_baily_borel_targets():
    assert {sid: S.bb_target(sid) for sid in TYPE_II_DIMS} == BB
    assert all(S.bb_target(sid) == S.III_POINT for sid in list(TYPE_III_DIMS) + list(TABLE2_DIMS))
    pre = S.bb_preimages()
    assert pre == {S.A17: ("II1",), S.D16A1: ("II3",), S.E7D10: ("II4", "II6"), S.E8E8A1: ("II2", "II5")}
    assert S.git_to_pairs("Z1") == ("II2", "II5")
    assert S.git_to_pairs("Z4") == ("II1",)
    assert S.git_to_pairs("omega") == ()


def transitive_closure(nodes, covers):
    """Warshall on a boolean matrix: the oracle for the poset queries."""
    idx = {n: i for i, n in enumerate(nodes)}
    m = [[False] * len(nodes) for _ in nodes]
    for a, b in covers:
        m[idx[a]][idx[b]] = True
    for k in range(len(nodes)):
        for i in range(len(nodes)):
            if m[i][k]:
                for j in range(len(nodes)):
                    m[i][j] = m[i][j] or m[k][j]
    return {(a, b) for a in nodes for b in nodes if m[idx[a]][idx[b]]}


@pytest.mark.parametrize("space", SPACES)
def test_poset_axioms(space):
    g = S.adjacency_graph(space)
    assert g.violations() == []
    rel = transitive_closure(g.nodes, g.covers)
    for a, b in itertools.product(g.nodes, repeat=2):
        if b in g.unions:
            continue
        assert g.leq(a, b) == (a == b or (a, b) in rel)
        if a != b and g.leq(a, b):
            assert not g.leq(b, a)  # antisymmetry
            assert g.dims[a] < g.dims[b]  # closure lowers dimension


@given(st.data())
def test_poset_transitivity(data):
    g = S.adjacency_graph(data.draw(st.sampled_from(SPACES)))
    a, b, c = (data.draw(st.sampled_from(g.nodes)) for _ in range(3))
    if g.leq(a, b) and g.leq(b, c) and b not in g.unions and c not in g.unions:
        assert g.leq(a, c)


def test_known_incidences():
    pairs = S.adjacency_graph(S.PAIRS)
    assert pairs.leq("IIIbeta", "III4") and pairs.leq("IIIbeta", "III6")
    assert pairs.leq("IIIzeta", "II1")
    assert pairs.leq("IIIγ", "III₃") and pairs.leq("IIIepsilon", "III3")
    assert not pairs.leq("III2", "II1")
    git = S.adjacency_graph(S.GIT)
    assert git.leq("zeta", "Z2")
    assert not git.leq("omega", "Z2")
    assert git.leq("ω", "Z1")
    blowup = S.adjacency_graph(S.KIRWAN)
    assert blowup.leq("xi", "Z1") and blowup.leq("ξ", "Z3")
    assert "omega" not in blowup.dims
    with pytest.raises(StrataError):
        git.leq("xi", "Z1")


def test_every_descriptor_maps_back():
    for rec in S.pair_strata().values():
        if rec.descriptor is not None:
            assert S.stratum_of(rec.descriptor).id == rec.id
            again = PairDescriptor.from_json(rec.descriptor.to_json())
            assert S.stratum_of(again).id == rec.id


def test_descriptor_lookup_examples():
    two_planes = PairDescriptor(["plane", "plane"], "smooth-elliptic")
    assert S.stratum_of(two_planes).id == "II1"
    quadric = PairDescriptor(["quadric"], "smooth-elliptic", non_normal=[True])
    assert S.stratum_of(quadric).id == "II3"
    assert S.stratum_of(PairDescriptor(["rational"], "none", "Ẽ8")).id == "II5"
    assert S.stratum_of(PairDescriptor(["rational"], "none", "T_{7,3,2}")).id == "III5"
    assert S.stratum_of(PairDescriptor(["plane", "plane"], "cycle(1)")).id == "III1"
    with pytest.raises(StrataError):
        S.stratum_of(PairDescriptor(["cone"], "smooth-elliptic"))


def test_descriptor_rejects_nonsense():
    with pytest.raises(StrataError):
        PairDescriptor(["torus"], "nodal")
    with pytest.raises(StrataError):
        PairDescriptor(["plane"], "cycle(0)")
    with pytest.raises(StrataError):
        PairDescriptor(["rational"], "none", "T_{2,3,6}")  # not a cusp
    with pytest.raises(StrataError):
        PairDescriptor(["plane"], "wiggly")


def test_ids_and_aliases():
    assert S.get("II₁").id == "II1"
    assert S.get("IIIζ′").id == "IIIzeta'"
    assert S.get("τ", S.GIT).id == "tau"
    with pytest.raises(StrataError):
        S.get("II7")
    with pytest.raises(StrataError):
        S.git_strata("moduli")


def test_dimension_audit():
    report = S.dimension_audit()
    assert report.ok
    rows = {r.id: r for r in report.rows}
    for sid, dim in {**TYPE_II_DIMS, **TYPE_III_DIMS}.items():
        assert rows[sid].computed == dim
    assert report.fibers == {S.E8E8A1: {"II2": 18, "II5": 11}, S.E7D10: {"II4": 9, "II6": 12},
                             S.A17: {"II1": 2}, S.D16A1: {"II3": 3}}


def test_audit_detects_a_wrong_record(monkeypatch):
    bad = [r if r.id != "II4" else S.StratumRecord("II4", r.description, 11, r.space, r.bb_target, r.descriptor)
           for r in S._TYPE_II]
    monkeypatch.setattr(S, "_TYPE_II", bad)
    report = S.dimension_audit(strict=False)
    assert [r.id for r in report.failures()] == ["II4"]
    with pytest.raises(StrataError):
        S.dimension_audit()


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_exports_are_byte_stable(tmp_path, fmt):
    a = S.export_tables(tmp_path / "a", fmt)
    b = S.export_tables(tmp_path / "b", fmt)
    assert [p.name for p in a] == [p.name for p in b]
    for p, q in zip(a, b):
        assert p.read_bytes() == q.read_bytes()
        assert b"\r\n" not in p.read_bytes()
    assert any(p.suffix == ".dot" for p in a)


def test_csv_content():
    files = S.render_tables("csv")
    t1 = files["table1.csv"].splitlines()
    assert t1[0].startswith("id,description,dim,bb_target")
    assert len(t1) == 7
    assert files["table2.csv"].count("\n") == 9
    with pytest.raises(StrataError):
        S.render_tables("xml")
