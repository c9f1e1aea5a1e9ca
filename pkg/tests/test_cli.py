import json
import subprocess
import sys

import pytest

from downup import Params, parse_element, reduce
from downup.cli import SUBCOMMANDS, run
from downup.poset import load_poset

SL2 = ["--alpha", "2", "--beta", "-1", "--gamma", "-2"]


def ok(argv):
    code, out = run(argv)
    assert code == 0, out
    return out


def test_reduce_example():
    assert ok(["reduce", *SL2, "d^2*u"]) == "2*(du)*d - 1*u*d^2 - 2*d"


def test_weights_example():
    assert ok(["weights", "--alpha", "1", "--beta", "1", "--gamma", "0", "--lambda", "1", "--n", "5"]) == "1,1,2,3,5,8"


def test_verma_check_example():
    out = ok(["verma", *SL2, "--lambda", "2", "--check"])
    assert out.splitlines()[-1] == "verdict NotSimple m=2, M(λ)≅V(-4)"
    assert "relations: ok" in out


def test_output_reparses():
    out = ok(["mul", *SL2, "d+u", "d*u - 1/2"])
    P = Params.of(2, -1, -2)
    assert reduce(P, parse_element(out)) == reduce(P, "(d+u)*(d*u - 1/2)")


def test_json_mode():
    data = json.loads(ok(["classify", *SL2, "--lambda", "2", "--json"]))
    assert set(data) == {"case", "period", "witness_k", "witness_l", "many_simple_vermas"}
    data = json.loads(ok(["--json", "closed", "--alpha", "1", "--beta", "1", "--gamma", "0", "--lambda", "1"]))
    assert data["r1"] == "1/2+1/2*sqrt(5)" and data["case"] == "distinct-roots"


def test_negative_fraction_needs_equals():
    assert ok(["weights", "--alpha", "5/2", "--beta=-1", "--gamma", "0", "--lambda", "1", "--n", "2"]) == "1,5/2,21/4"
    assert ok(["weights", "--alpha", "0", "--beta=-1/2", "--gamma", "0", "--lambda", "1", "--n", "2"]) == "1,0,-1/2"


def test_deterministic():
    argv = ["onedim", "--alpha", "1", "--beta", "1", "--gamma", "2", "--sample", "5", "--seed", "3"]
    assert ok(argv) == ok(argv)
    assert ok(argv) != ok(argv[:-1] + ["4"])


def test_central():
    out = ok(["central", "--alpha", "2", "--beta", "-1", "--gamma", "0", "du-ud", "--lambda", "5"])
    assert out == "central: true\ncharacter: 5"


def test_poset_round_trip(tmp_path):
    text = ok(["poset-gen", "alt", "--q", "2", "--n", "2"])
    path = tmp_path / "alt.json"
    path.write_text(text)
    assert load_poset(str(path)).rank_sizes() == [1, 3, 2]
    out = ok(["poset-check", "--file", str(path), "--alpha", "6", "--beta=-8", "--gamma=-12"])
    assert out.startswith("ok: true")
    fit = json.loads(ok(["poset-fit", "--young", "5", "--json"]))
    assert fit["kind"] == "AffineFamily" and fit["dimension"] == 1


def test_nfmod_and_double():
    out = ok(["nfmod", "--alpha", "0", "--beta", "1", "--gamma", "0", "--nu1", "1", "--nu2", "2", "--check"])
    assert "structure: simple" in out and "relations: ok" in out
    out = ok(["double", "--alpha", "3", "--beta", "-2", "--gamma", "0", "--kappa", "2", "--lambda", "3", "--check"])
    assert "verdict Simple" in out


def test_convert_and_filtration():
    assert ok(["convert", "woronowicz", "2"]) == "20 -64 10"
    assert ok(["filtration", "--ell", "5"]) == "exact: 12\ncumulative: 34"


@pytest.mark.parametrize(
    "argv,code",
    [
        (["bogus"], 64),
        ([], 64),
        (["reduce", "d"], 64),
        (["reduce", *SL2, "d^"], 65),
        (["reduce", "--alpha", "1.5", "--beta", "0", "--gamma", "0", "d"], 65),
        (["convert", "witten", "1", "1", "1", "1", "1", "1", "1"], 2),
        (["lowest", "--alpha", "3", "--beta", "0", "--gamma", "6", "--kappa", "1"], 2),
        (["poset-fit", "--file", "/nonexistent/poset.json"], 65),
        (["central", *SL2, "d", "--lambda", "1"], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_precondition_names_condition():
    code, out = run(["convert", "witten", "1", "1", "1", "1", "1", "1", "1"])
    assert code == 2 and "xi_6 == 0" in out


def test_every_subcommand_has_help():
    for name in SUBCOMMANDS:
        assert run([name, "--help"])[0] == 0


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "downup", "reduce", *SL2, "d^2*u"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and proc.stdout.strip() == "2*(du)*d - 1*u*d^2 - 2*d"
    proc = subprocess.run([sys.executable, "-m", "downup", "nope"], capture_output=True, text=True, check=False)
    assert proc.returncode == 64 and proc.stderr
