import pytest

import flatchain

Z = {"kind": "Integers"}


def segment(coeff, a, b):
    return {"group": Z, "ambient": 2, "dim": 1,
            "terms": [{"coeff": coeff, "simplex": [a, b]}]}


def test_mass_and_boundary():
    seg = segment(3, ["0", "0"], ["3", "4"])
    assert flatchain.mass(seg) == pytest.approx(15.0)
    b = flatchain.boundary(seg)
    assert b["dim"] == 0
    assert sorted(t["coeff"] for t in b["terms"]) == [-3, 3]


def test_flat_bracket_of_segment_is_exact():
    br = flatchain.flat_bracket(segment(4, ["0", "0"], ["1", "0"]))
    assert br["lower"] == br["upper"] == 4.0
    assert flatchain.mass(br["residual"]) + flatchain.mass(br["b"]) == pytest.approx(br["upper"])


def test_flat_distance_of_parallel_segments():
    a = segment(1, ["0", "0"], ["1", "0"])
    b = segment(1, ["0", "1/10"], ["1", "1/10"])
    br = flatchain.flat_distance(a, b)
    assert br["lower"] <= br["upper"] <= 0.3 + 1e-12


def test_norms_and_classification():
    assert flatchain.norm({"kind": "IntegersModP", "p": 5}, 4) == 1.0
    assert flatchain.classify_group({"kind": "Reals"})["rectifiable"] is False
    assert flatchain.classify_group(Z)["rectifiable"] is True


def test_errors_are_typed():
    with pytest.raises(flatchain.InputError):
        flatchain.mass({"group": Z, "dim": 0, "terms": []})
    with pytest.raises(flatchain.FlatchainError):
        flatchain.mass("not json")


def test_cli_in_process(tmp_path):
    code, out, _ = flatchain.run_cli("--help")
    assert code == 0 and "commands:" in out
    code, out, err = flatchain.run_cli("classify", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0].startswith("#") or "group" in out
    assert flatchain.run_cli("no-such-command")[0] == 2
