from __future__ import annotations

import json

import pytest
from hypothesis import given, strategies as st

from scatlab import claims, jsonio
from scatlab.cli import main
from scatlab.field import cached_field
from scatlab.linpoly import LinPoly

C56 = cached_field(5, 1, 6)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, json.loads(out), err


def test_parse_field_forms():
    assert jsonio.parse_field("9,6").q == 9
    assert jsonio.parse_field("q=5, n=6").order == 5**6
    ctx = jsonio.parse_field('{"p": 2, "h": 1, "n": 4, "modulus": [1, 0, 0, 1, 1]}')
    assert ctx.modulus == (1, 0, 0, 1, 1)


@pytest.mark.parametrize("text", ["6,4", "abc", '{"p": 4, "n": 2}', '{"p": 5, "n": 6, "modulus": [1,1,0,0,0,0,1]}', "{bad"])
def test_parse_field_errors(text):
    with pytest.raises(jsonio.ParseError):
        jsonio.parse_field(text)


def test_parse_poly_text_and_list():
    f = jsonio.parse_poly(C56, "x^q - x^q^2 + x^q^4 + x^q^5")
    assert f.coeffs == (0, 1, 4, 0, 1, 1)
    assert jsonio.parse_poly(C56, "[0,1,4,0,1,1]") == f
    assert jsonio.parse_poly(C56, "3x + [7]x^q").coeffs == (3, 7, 0, 0, 0, 0)
    assert jsonio.parse_poly(C56, "0").is_zero()


@pytest.mark.parametrize("text,pos", [("x^q^7", 0), ("x + y", 2), ("x x^q", 2), ("[99999]x", 0)])
def test_parse_poly_errors_have_positions(text, pos):
    with pytest.raises(jsonio.ParseError) as exc:
        jsonio.parse_poly(C56, text)
    assert exc.value.position == pos


def test_poly_json_range_checked():
    with pytest.raises(jsonio.ParseError):
        jsonio.poly_from_json(C56, [0, 1, 2, 3, 4, C56.order])
    with pytest.raises(jsonio.ParseError):
        jsonio.poly_from_json(C56, [0, 1])


@given(st.lists(st.integers(0, C56.order - 1), min_size=6, max_size=6))
def test_poly_roundtrip(coeffs):
    f = LinPoly(C56, tuple(coeffs))
    assert jsonio.poly_from_json(C56, jsonio.poly_to_json(f)) == f
    assert jsonio.parse_poly(C56, repr(f)[len("LinPoly("):-1].replace(" + ", " + ")) == f


def test_field_and_subspace_roundtrip():
    ctx = cached_field(3, 1, 4)
    assert jsonio.field_from_json(jsonio.field_to_json(ctx)) == ctx
    from scatlab.geometry import ProjSubspace
    S = ProjSubspace.span(ctx, [[1, 2, 0, 0], [0, 0, 1, 5]])
    obj = jsonio.subspace_to_json(S)
    assert jsonio.subspace_from_json(ctx, {"basis": obj["basis"]}) == S
    assert jsonio.subspace_from_json(ctx, {"equations": obj["equations"]}) == S
    with pytest.raises(jsonio.ParseError):
        jsonio.subspace_from_json(ctx, {"basis": [[1, 2, 3]]})


def test_code_roundtrip():
    from scatlab.rmcode import gabidulin
    ctx = cached_field(3, 1, 4)
    C = gabidulin(ctx, 2, 1)
    obj = jsonio.code_to_json(C)
    assert jsonio.code_from_json(ctx, {"generators": obj["generators"], "left_linear": True}) == C


def test_cli_scattered(capsys):
    code, out, err = run(capsys, "scattered", "--field", "5,6", "--poly", "x^q - x^q^2 + x^q^4 + x^q^5")
    assert code == 0 and out["verdict"] == "scattered"
    assert "scattered=True" in err


def test_cli_not_scattered_has_witness(capsys):
    code, out, _ = run(capsys, "scattered", "--field", "3,4", "--poly", "x^q^2")
    assert code == 0 and out["verdict"] == "not_scattered"
    assert out["witness"]["weight"] == 2


def test_cli_spectrum(capsys):
    code, out, _ = run(capsys, "spectrum", "--field", "3,4", "--poly", "x^q + x^q^2")
    assert out["spectrum"] == {"1": 32, "2": 2}


def test_cli_input_errors_exit_2(capsys):
    code, out, _ = run(capsys, "scattered", "--field", "6,4", "--poly", "x")
    assert code == 2 and out["error"] == "input"
    code, out, _ = run(capsys, "scattered", "--field", "5,6", "--poly", "x^q^8")
    assert code == 2 and out["position"] == 0
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2


def test_cli_budget_exit_2(capsys):
    code, out, _ = run(capsys, "spectrum", "--field", "5,6", "--poly", "x^q", "--budget", "10")
    assert code == 2 and out["error"] == "budget"


def test_cli_code_commands(capsys, tmp_path):
    gens = json.dumps([[1, 0, 0, 0], [0, 1, 0, 0]])
    code, out, _ = run(capsys, "mrd", "--field", "3,4", "--gens", gens, "--left-linear",
                       "--distribution", "--json", str(tmp_path / "r.json"))
    assert out["mrd"] and out["min_distance"] == 3 and out["gabidulin_s"] == [1, 3]
    assert json.loads((tmp_path / "r.json").read_text()) == out
    _, out, _ = run(capsys, "dual", "--field", "3,4", "--gens", gens, "--left-linear")
    assert out["dual"]["dim_fq"] == 8
    _, out, _ = run(capsys, "idealiser", "--field", "3,4", "--gens", gens, "--left-linear")
    assert out["left"]["type"] == "F_q^4"
    _, out, _ = run(capsys, "recognize", "--field", "3,4", "--gens", gens)
    assert out["gabidulin_s"] == [1, 3]


def test_cli_geometry(capsys):
    _, out, _ = run(capsys, "geometry", "intn", "--field", "5,6", "--preset", "new")
    assert out["intn"] == {"1": 3, "5": 3} and out["meets_subgeometry"] is None
    _, out, _ = run(capsys, "geometry", "project", "--field", "5,6", "--preset", "new")
    assert out["poly"] == [0, 1, 4, 0, 1, 1] and out["spectrum"] == {"1": 3906}
    _, out, _ = run(capsys, "geometry", "criteria", "--field", "3,5", "--preset", "lp", "--delta", "7")
    assert out["criteria"]["lp"]["verdict"] == "true"
    vertex = json.dumps({"equations": [[1, 0, 0, 0], [0, 0, 0, 1]]})
    axis = json.dumps({"basis": [[1, 0, 0, 0], [0, 0, 0, 1]]})
    code, out, _ = run(capsys, "geometry", "project", "--field", "3,4", "--vertex", vertex, "--axis", axis)
    assert code == 0 and out["size"] == 40  # <e_1, e_2> projects onto the pseudoregulus set
    bad_axis = json.dumps({"basis": [[1, 0, 0, 0], [0, 1, 0, 0]]})
    code, out, _ = run(capsys, "geometry", "project", "--field", "3,4", "--vertex", vertex, "--axis", bad_axis)
    assert code == 2 and out["type"] == "VertexMeetsAxis"
    code, out, _ = run(capsys, "geometry", "intn", "--field", "3,4", "--preset", "lp")
    assert code == 2


def test_cli_equiv(capsys):
    _, out, _ = run(capsys, "equiv", "--field", "5,6", "--f", "x^q", "--h", "x^q^5", "--linear-sets")
    assert out["status"] == "equivalent"
    _, out, _ = run(capsys, "equiv", "--field", "5,6", "--f", "x^q - x^q^2 + x^q^4 + x^q^5",
                    "--h", "x^q + x^q^3 + [2]x^q^5")
    assert out["status"] == "equivalent"
    w = out["witnesses"][0]
    assert w["sigma"] == 0


def test_cli_reproduce_list(capsys):
    _, out, _ = run(capsys, "reproduce", "--list", "--suite", "equivalence")
    ids = [c["id"] for c in out["claims"]]
    assert "equivalence.witness.q5" in ids
    assert not any(i.endswith("q17") for i in ids)
    _, out, _ = run(capsys, "reproduce", "--list", "--extended")
    assert "scattered.new_family.q29" in [c["id"] for c in out["claims"]]


def test_cli_reproduce_small_suite(capsys):
    code, out, err = run(capsys, "reproduce", "--suite", "mrd")
    assert code == 0 and out["passed"] and out["schema"] == claims.SCHEMA
    assert {c["verdict"] for c in out["claims"]} == {"pass"}
    assert "4/4 claims passed" in err


def test_failing_claim_gives_exit_1(capsys, monkeypatch):
    fake = [claims.Claim("x.fail", "mrd", "always fails", lambda cfg: (False, {}), 3),
            claims.Claim("x.crash", "mrd", "raises", lambda cfg: 1 / 0, 3)]
    monkeypatch.setattr(claims, "registry", lambda extended=False: fake)
    code, out, _ = run(capsys, "reproduce", "--suite", "mrd")
    assert code == 1 and not out["passed"]
    assert [c["verdict"] for c in out["claims"]] == ["fail", "error"]
    assert "ZeroDivisionError" in out["claims"][1]["certificate"]["error"]


def test_select_filters_by_q():
    ids = [c.id for c in claims.select("scattered", qmax=5)]
    assert "scattered.new_family.q5" in ids and "scattered.new_family.q9" not in ids
    with pytest.raises(ValueError):
        claims.select("bogus")


def test_documented_flag_spellings(capsys):
    code, out, _ = run(capsys, "scattered", "--field", '{"p": 5, "h": 1, "n": 6}',
                       "--f", "x^q - x^q^2 + x^q^4 + x^q^5", "--extended")
    assert code == 0 and out["verdict"] == "scattered"
    assert out["modulus"] == list(C56.modulus) and out["timing"]["runtime_s"] >= 0
    code, out, _ = run(capsys, "mrd", "audit", "--field", "3,4", "--gens", '["x", "x^q"]', "--left-linear")
    assert code == 0 and out["mrd"]
    code, out, _ = run(capsys, "equiv", "--field", "3,4", "--f", "x^q", "--h", "x^q^3", "--pgl")
    assert code == 0 and out["status"] == "equivalent"


def test_extended_claims_print_estimates(capsys, monkeypatch):
    fake = [claims.Claim("x.big", "scattered", "large case", lambda cfg: (True, {}), 29, True, 3600.0)]
    monkeypatch.setattr(claims, "registry", lambda extended=False: fake if extended else [])
    code, out, err = run(capsys, "reproduce", "--suite", "scattered", "--extended")
    assert code == 0 and out["passed"]
    assert "x.big: about 60 min" in err
    code, out, _ = run(capsys, "reproduce", "--extended", "--list")
    assert out["claims"][0]["estimate_s"] == 3600.0


def test_registry_marks_large_q_extended():
    ext = {c.id: c for c in claims.registry(extended=True) if c.extended}
    assert {"scattered.new_family.q17", "scattered.new_family.q25", "scattered.new_family.q29",
            "equivalence.trinomial_systems.q17", "equivalence.catalog.q17"} == set(ext)
    assert all(c.estimate_s and c.estimate_s > 60 for c in ext.values())
