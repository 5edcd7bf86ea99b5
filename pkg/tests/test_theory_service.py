import pytest

from src.core.errors import UnsupportedFieldError
from src.core.exact_fields import cyc_context, ff_context, quad_context
from src.core.galois_groups import unit_group
from src.core.mat_category import Matrix
from src.services.theory_service import GaloisTheoryService


@pytest.fixture
def service():
    return GaloisTheoryService()


def zeta(n):
    return cyc_context(n).generators()["z"]


# ---------------------------------------------------------
# Theory construction
# ---------------------------------------------------------

def test_resolve_context(service):
    assert service.resolve_context(7) == cyc_context(7)
    assert service.resolve_context(fieldSpec="finite:2:4") == ff_context(2, 4)
    assert service.resolve_context(5, "quadratic:-3") == quad_context(-3)
    with pytest.raises(UnsupportedFieldError):
        service.resolve_context()
    with pytest.raises(UnsupportedFieldError):
        service.resolve_context(fieldSpec="padic:5")


def test_resolve_subgroup(service):
    G = unit_group(7)
    assert service.resolve_subgroup(G, None) == G.full()
    assert service.resolve_subgroup(G, []) == G.trivial()
    assert service.resolve_subgroup(G, ["2"]).order == 3
    with pytest.raises(UnsupportedFieldError):
        service.resolve_subgroup(G, ["x"])


# ---------------------------------------------------------
# Lattice
# ---------------------------------------------------------

def test_lattice_of_q_zeta7(service):
    result = service.emit_lattice(cyc_context(7))
    assert result["success"]
    assert result["groupOrder"] == 6
    assert len(result["nodes"]) == 4
    assert len(result["edges"]) == 4
    trivial = result["nodes"][0]
    assert trivial["generators"] == "{e}"
    assert trivial["fixedFieldDegree"] == 6
    assert trivial["semiring"] == "whole_field"
    imaginary = next(node for node in result["nodes"] if node["order"] == 3)
    assert imaginary["discriminant"] == "-7/1"
    assert not imaginary["real"]
    assert "text" not in result


def test_lattice_as_dot(service):
    result = service.emit_lattice(cyc_context(7), "dot")
    text = result["text"]
    assert text.startswith("graph lattice {")
    assert text.count("[label=") == 4
    assert text.count(" -- ") == 4
    assert text.rstrip().endswith("}")


def test_lattice_of_a_finite_field(service):
    result = service.emit_lattice(ff_context(2, 4))
    assert [node["fixedField"] for node in result["nodes"]] == ["GF(16)", "GF(4)", "GF(2)"]
    assert all(node["semiring"] == "whole_field" for node in result["nodes"])


# ---------------------------------------------------------
# Folding, decoherence, scalars
# ---------------------------------------------------------

def test_fold(service):
    z = zeta(5)
    result = service.fold(Matrix.scalar(1 - z))
    assert result["mode"] == "complete"
    assert result["matrix"]["entries"] == [[{"field": {"kind": "cyclotomic", "n": 5},
                                            "coords": ["5/1", "0/1", "0/1", "0/1"]}]]
    transversal = service.fold(Matrix.scalar(z + z ** 4), ["4"])
    assert transversal["mode"] == "transversal"
    assert transversal["matrix"]["entries"][0][0]["coords"] == ["-1/1", "0/1", "0/1", "0/1"]
    refused = service.fold(Matrix.scalar(z), ["4"])
    assert not refused["success"]


def test_decohere_and_discard(service):
    decoherence = service.decohere(cyc_context(7), ["2"], 2)
    assert decoherence["rank"] == 4
    assert decoherence["subgroup"] == "<2>"
    assert decoherence["matrix"]["rows"] == 64
    assert not service.decohere(cyc_context(7), None, 5)["success"]
    discard = service.discard(cyc_context(5), ["4"], 2)
    assert discard["support"] == 4
    assert discard["matrix"]["cols"] == 16


def test_scalar(service):
    context = cyc_context(5)
    z = zeta(5)
    state = Matrix(context, [[1 - z], [context.one()]])
    result = service.scalar(state, ["4"])
    assert result["success"]
    assert result["agrees"]
    assert not service.scalar(Matrix.identity(context, 2))["success"]


# ---------------------------------------------------------
# Elements
# ---------------------------------------------------------

def test_norm(service):
    context = cyc_context(5)
    result = service.norm(context, "1-z")
    assert result["norm"] == "5/1"
    assert "relativeNorm" not in result
    relative = service.norm(context, "1-z", ["4"])
    assert relative["subgroup"] == "<4>"
    assert relative["relativeNorm"]["coords"] == ["3/1", "0/1", "1/1", "1/1"]
    assert not service.norm(context, "1-q")["success"]


def test_total_positivity(service):
    result = service.total_positivity(cyc_context(5), "z + z^4 + 2")
    assert result["totallyPositive"]
    assert result["minPoly"] == "x^2 - 3*x + 1"
    assert result["realRoots"] == 2
    assert not service.total_positivity(cyc_context(5), "z")["totallyPositive"]
    assert not service.total_positivity(ff_context(2, 2), "z")["success"]


def test_finite_field_report(service):
    result = service.finite_field(2, 4, 2)
    assert result["imageSize"] == 4
    assert result["surjective"]
    assert result["modulus"] == [1, 1, 0, 0, 1]
    assert not service.finite_field(2, 4, 3)["success"]
    assert not service.finite_field(6, 2, 1)["success"]


def test_search(service):
    found = service.search(quad_context(5), "-1", None, 3, 2)
    assert found["found"]
    assert len(found["witnesses"]) == 1
    assert found["witnessText"]
    missing = service.search(cyc_context(5), "-1", None, 1, 2)
    assert missing["success"]
    assert not missing["found"]
    assert "witnesses" not in missing
    assert not service.search(cyc_context(5), "2", None, 0, 2)["success"]
