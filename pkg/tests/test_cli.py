import json

import pytest

from qjones.cli import main
from qjones.cyclo import CycNumber
from qjones.cyclojones import CyclotomicCoeffs
from qjones.habiro import HabiroElement
from qjones.ore import OrePoly
from qjones.qpoly import LaurentPoly
from qjones.surgery import SurgeryPresentation


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out.strip(), out.err


def canonical(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def test_jones_unknot(capsys):
    code, out, _ = run(capsys, "jones", "--pd", "fixtures/unknot.json")
    assert code == 0
    assert LaurentPoly.from_json(json.loads(out)) == LaurentPoly({2: 1, -2: 1})
    code, out, _ = run(capsys, "jones", "--pd", "fixtures/unknot.json", "--pretty")
    assert out == "q^(1/2) + q^(-1/2)"


def test_cjones_unknot(capsys):
    code, out, _ = run(capsys, "cjones", "--knot", "unknot", "--color", "5", "--pretty")
    assert code == 0
    assert out == "q^2 + q + 1 + q^-1 + q^-2"


def test_check_eval_figure8(capsys):
    code, out, _ = run(capsys, "check-eval", "--knot", "figure8", "--framing", "-1", "--d", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "EQUAL"
    values = json.loads(lines[0])
    assert CycNumber.from_json(values["habiro"]) == CycNumber.from_json(values["wrt"])


def test_habiro_eval_and_wrt_agree(capsys):
    _, a, _ = run(capsys, "habiro-eval", "--knot", "trefoil", "--framing", "1", "--d", "3")
    _, b, _ = run(capsys, "wrt", "--knot", "trefoil", "--framing", "1", "--d", "3")
    assert CycNumber.from_json(json.loads(a)) == CycNumber.from_json(json.loads(b))


def test_habiro_taylor(capsys):
    code, out, _ = run(capsys, "habiro-taylor", "--knot", "unknot", "--framing", "1", "--trunc", "3")
    assert code == 0 and json.loads(out) == [1, 0, 0, 0]


@pytest.mark.parametrize(
    "argv,parse",
    [
        (("jones", "--knot", "trefoil"), lambda d: LaurentPoly.from_json(d).to_json()),
        (("cyclotomic", "--knot", "figure8", "--color", "4"), lambda d: CyclotomicCoeffs.from_json(d).to_json()),
        (("surgery", "--knot", "figure8", "--framing", "-1", "--trunc", "4"), lambda d: HabiroElement.from_json(d).to_json()),
        (("wrt", "--knot", "figure8", "--framing", "1", "--d", "3"), lambda d: CycNumber.from_json(d).to_json()),
        (("rec-guess", "--knot", "bracket", "--dL", "1", "--dM", "2", "--train", "10"), lambda d: OrePoly.from_json(d).to_json()),
    ],
)
def test_serialized_output_round_trips(capsys, argv, parse):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert canonical(parse(json.loads(out))) == out


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "j.json"
    code, out, _ = run(capsys, "cjones", "--knot", "figure8", "--color", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert LaurentPoly.from_json(json.loads(target.read_text())) == LaurentPoly({10: 1, -10: 1})


def test_rec_guess_verify_cycle(capsys, tmp_path):
    code, out, err = run(capsys, "rec-guess", "--knot", "bracket", "--dL", "2", "--dM", "0", "--train", "10")
    assert code == 0 and "method" in err
    op = tmp_path / "op.json"
    op.write_text(out)
    code, out, _ = run(capsys, "rec-verify", "--op", str(op), "--knot", "bracket", "--train", "25")
    assert code == 0 and out.startswith("VERIFIED")
    code, out, _ = run(capsys, "rec-verify", "--op", str(op), "--knot", "brace_factorial", "--train", "10")
    assert code == 1 and out.startswith("FAILED")


def test_aj_check_unknot(capsys, tmp_path):
    apoly = tmp_path / "unknot_apoly.json"
    apoly.write_text(json.dumps({"terms": [[1, 0, 1], [0, 0, -1]]}))
    code, out, _ = run(capsys, "aj-check", "--knot", "bracket", "--dL", "1", "--dM", "2", "--train", "10", "--apoly", str(apoly))
    assert code == 0 and out.startswith("essentially-equal")
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"terms": [[1, 0, 1], [0, 1, -1]]}))
    code, out, _ = run(capsys, "aj-check", "--knot", "bracket", "--dL", "1", "--dM", "2", "--train", "10", "--apoly", str(wrong))
    assert code == 1 and out.startswith("different")


def test_presentation_file(capsys, tmp_path):
    p = SurgeryPresentation.knot_surgery(CyclotomicCoeffs.unknot(6), 1)
    path = tmp_path / "pres.json"
    path.write_text(json.dumps(p.to_json()))
    code, out, _ = run(capsys, "wrt", "--knot", str(path), "--d", "2")
    assert code == 0 and CycNumber.from_json(json.loads(out)) == 1


@pytest.mark.parametrize(
    "argv",
    [
        ("frobnicate",),
        ("jones", "--color", "3"),
        ("cjones", "--knot", "unknot", "--color", "5", "--bogus", "1"),
        ("jones", "--pd", "/nonexistent/file.json"),
        ("cjones", "--knot", "unknot"),
        ("cjones", "--knot", "unknot", "--color", "zero"),
        ("wrt", "--knot", "figure8", "--framing", "2", "--d", "3"),
        ("check-eval", "--knot", "figure8", "--d", "3"),
        ("cjones", "--knot", "trefoil", "--color", "100"),
    ],
)
def test_input_errors_exit_two(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.strip()


def test_bad_json_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, _ = run(capsys, "jones", "--pd", str(bad))
    assert code == 2
