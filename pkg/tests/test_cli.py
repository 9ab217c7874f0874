import json
import subprocess
import sys

import pytest

from capgroups.capability import WitnessReport
from capgroups.cli import format_presentation, main
from capgroups.constructions import easterfield

from oracles import fp_group_from_presentation


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_witness_json(capsys):
    code, out, _ = run(capsys, "witness", "--p", "3", "--r", "2", "--json")
    assert code == 0
    d = json.loads(out)
    assert d["class_computed"] == 4
    assert d["equality_attained"] is True
    rep = WitnessReport.from_dict(d)
    assert rep.to_dict() == d


def test_witness_text(capsys):
    code, out, _ = run(capsys, "witness", "--p", "2", "--r", "2")
    assert code == 0
    assert "PASS  equality_attained" in out
    assert "FAIL" not in out


def test_witness_rejects_composite_p(capsys):
    code, _, err = run(capsys, "witness", "--p", "4", "--r", "1")
    assert code == 2
    assert "p must be prime" in err


def test_witness_cap(capsys):
    code, out, err = run(capsys, "witness", "--p", "3", "--r", "2", "--cap", "100")
    assert code == 2 and out == ""
    assert "cap" in err


def test_missing_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["witness", "--p", "3"])
    assert exc.value.code == 2


@pytest.mark.parametrize("c", [1, 3, 6])
def test_dihedral(capsys, c):
    code, out, _ = run(capsys, "dihedral", "--c", str(c), "--json")
    assert code == 0
    d = json.loads(out)
    assert d["quotient_order"] == d["smaller_group_order"] == 2 ** (c + 1)
    assert (d["a_exponent"], d["b_exponent"]) == (1, c)
    assert d["bound_rhs"] == c


def test_dihedral_rejects_c0(capsys):
    assert run(capsys, "dihedral", "--c", "0")[0] == 2


def test_scan(capsys):
    code, out, _ = run(capsys, "scan", "--p", "2", "--r-max", "3", "--json")
    assert code == 0
    assert [d["params"] for d in json.loads(out)] == [1, 2, 3]


def test_scan_with_cap_failure(capsys):
    code, out, _ = run(capsys, "scan", "--p", "3", "--r-max", "3", "--cap", "1000")
    assert code == 1
    assert out.splitlines()[-1].startswith("FAIL")


def test_lemma(capsys):
    code, out, _ = run(capsys, "lemma", "--p", "3", "--r", "2")
    assert code == 0
    assert "[x0^3, y] = x1^3" in out


def test_exit_code_tracks_flags(monkeypatch, capsys):
    from capgroups import cli

    real = cli.witness_easterfield

    def broken(p, r, cap):
        rep = real(p, r, cap=cap)
        rep.lcs_matches_prediction = False
        return rep

    monkeypatch.setattr(cli, "witness_easterfield", broken)
    code, out, _ = run(capsys, "witness", "--p", "2", "--r", "1")
    assert code == 1
    assert "FAIL  lcs_matches_prediction" in out


def test_presentation_21(capsys):
    code, out, _ = run(capsys, "presentation", "--p", "2", "--r", "1")
    assert code == 0
    rel = out.split("relators:\n")[1].splitlines()
    assert rel == [
        "y^2 = e",
        "x0^2 = e",
        "x1^2 = e",
        "[x0,x1] = e",
        "y^-1*x0*y = x0*x1",
        "y^-1*x1*y = x1^-1",
    ]


def test_presentation_31_omits_trivial():
    text = format_presentation(3, 1)
    assert "# x2 has order 1 (trivial); omitted from relators" in text
    body = [ln for ln in text.splitlines() if not ln.startswith("#")]
    assert not any("x2" in ln for ln in body)


def test_presentation_32():
    text = format_presentation(3, 2)
    assert "y^-1*x2*y = x1^-3*x2^-2" in text
    assert text == format_presentation(3, 2)


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (5, 1)])
def test_presentation_defines_the_group(p, r):
    # coset enumeration in sympy, independent of the engine
    fp, _ = fp_group_from_presentation(format_presentation(p, r))
    perm, _ = fp._to_perm_group()
    G = easterfield(p, r)
    assert perm.order() == G.order
    assert len(perm.lower_central_series()) - 1 == 2 + (r - 1) * (p - 1)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "capgroups", "presentation", "--p", "3", "--r", "2"],
        capture_output=True, text=True, check=True,
    )
    assert proc.stdout == format_presentation(3, 2)
