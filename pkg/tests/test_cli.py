import subprocess
import sys

import pytest

from knotcrypt.cli import main
from knotcrypt.codes import parse_dt
from knotcrypt.diagram import is_isomorphic, parse_pd
from knotcrypt.polynomial import LaurentPolynomial
from knotcrypt.protocol import Ciphertext, KeyPackage
from knotcrypt.table import default_table_path, parse_table


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dt(capsys):
    assert run(capsys, "dt", "5_1") == (0, "6 8 10 2 4\n", "")


def test_dt_canonical(capsys, table):
    code, out, _ = run(capsys, "dt", "4_1", "--canonical")
    assert code == 0 and len(parse_dt(out.strip())) == 4


def test_invariant_unknot(capsys):
    assert run(capsys, "invariant", "unknot")[1] == "1\n"


def test_invariant_outputs_parse(capsys, table):
    _, out, _ = run(capsys, "invariant", "3_1")
    assert LaurentPolynomial.parse(out.strip()) == LaurentPolynomial({1: 1, 3: 1, 4: -1})
    _, out, _ = run(capsys, "invariant", "3_1", "--kind", "bracket")
    assert LaurentPolynomial.parse(out.strip(), "A").terms == {-7: 1, -3: -1, 5: -1}
    assert run(capsys, "invariant", "3_1", "--kind", "writhe")[1] == "3\n"


def test_invariant_of_pd_file(capsys, tmp_path):
    f = tmp_path / "k.pd"
    f.write_text("X(1,5,2,4)\nX(3,1,4,6)\nX(5,3,6,2)\nBASE 1 +\n")
    assert run(capsys, "invariant", str(f))[1] == "1*t^1 + 1*t^3 + -1*t^4\n"


def test_compose(capsys, table):
    assert run(capsys, "compose", "3_1", "3_1", "--dt")[1] == "4 6 2 10 12 8\n"
    _, out, _ = run(capsys, "compose", "3_1", "4_1")
    assert parse_pd(out).n == 7


def test_mutate(capsys, table):
    _, r = table["11n_42"].mutant
    _, out, _ = run(capsys, "mutate", "11n_42", r.letter)
    assert is_isomorphic(parse_pd(out), table["11n_34"].pd)
    _, out, _ = run(capsys, "mutate", "11n_42", r.letter, "--dt")
    assert parse_dt(out.strip()) == table["11n_34"].dt


def test_table_list(capsys, table):
    _, out, _ = run(capsys, "table", "list")
    lines = out.splitlines()
    assert len(lines) == len(table)
    assert lines[0].split("\t")[:3] == ["3_1", "3", "4 6 2"]
    _, out, _ = run(capsys, "table", "list", "--records")
    assert parse_table(out).names == table.names


def test_keygen_and_transport(capsys, tmp_path, table):
    priv, pub, blocks = tmp_path / "k", tmp_path / "k.pub", tmp_path / "blocks"
    assert run(capsys, "keygen", "--bits", "64", "--seed", "3", "--out", str(priv), "--public-out", str(pub))[0] == 0
    assert "d=" in priv.read_text() and "d=" not in pub.read_text()
    assert run(capsys, "keypkg", "--n", "5", "--seed", "9", "--key", str(pub), "--out", str(blocks))[0] == 0
    _, clear, _ = run(capsys, "keypkg", "--n", "5", "--seed", "9")
    _, opened, _ = run(capsys, "keypkg", "--open", str(blocks), "--key", str(priv))
    assert opened == clear
    assert len(KeyPackage.from_clear(clear).entries) == 5


def test_keygen_stdout_is_deterministic(capsys):
    a = run(capsys, "keygen", "--bits", "128", "--seed", "1")
    b = run(capsys, "keygen", "--bits", "128", "--seed", "1")
    assert a == b and a[0] == 0


def test_encrypt_decrypt_files(capsys, tmp_path):
    msg, ct, back = tmp_path / "m", tmp_path / "c", tmp_path / "m2"
    msg.write_bytes(b"knots all the way down\n")
    assert run(capsys, "encrypt", "--seed", "5", "--in", str(msg), "--out", str(ct))[0] == 0
    assert Ciphertext.from_text(ct.read_text()).length == len(msg.read_bytes())
    assert run(capsys, "decrypt", "--seed", "5", "--in", str(ct), "--out", str(back))[0] == 0
    assert back.read_bytes() == msg.read_bytes()
    first = ct.read_text()
    run(capsys, "encrypt", "--seed", "5", "--in", str(msg), "--out", str(ct))
    assert ct.read_text() == first


def test_decrypt_with_wrong_seed(capsys, tmp_path):
    msg, ct = tmp_path / "m", tmp_path / "c"
    msg.write_bytes(b"secret")
    run(capsys, "encrypt", "--seed", "5", "--in", str(msg), "--out", str(ct))
    code, out, err = run(capsys, "decrypt", "--seed", "6", "--in", str(ct))
    assert code == 1 and out == ""
    assert err.startswith("error: suffix mismatch at record") and err.count("\n") == 1


def test_attack_demo(capsys, tmp_path, table):
    msg = tmp_path / "m"
    msg.write_bytes(b"\x00\x01")
    _, r = table["11n_42"].mutant
    code, out, _ = run(capsys, "attack-demo", "--keys", f"11n_42:{r.letter}", "--in", str(msg))
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 2 and all("11n_34=11n_42" in line for line in lines)


@pytest.mark.parametrize(
    "argv",
    [[], ["bogus"], ["dt"], ["mutate", "3_1", "Q"], ["keygen", "--bits", "x", "--seed", "1"], ["encrypt"]],
)
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert err.startswith("error: usage:") and err.count("\n") == 1


@pytest.mark.parametrize(
    "argv",
    [["dt", "nothing"], ["keygen", "--bits", "8", "--seed", "1"], ["decrypt", "--keys", "3_1:I", "--in", "/nonexistent"],
     ["encrypt", "--keys", "9_99:I", "--in", "/dev/null"]],
)
def test_data_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error: ") and err.count("\n") == 1


def test_table_env(capsys, tmp_path, monkeypatch, table):
    records = [l for l in default_table_path().read_text().splitlines() if l and l[0] != "#"]
    small = tmp_path / "t.tbl"
    small.write_text("\n".join(records[:2]) + "\n")
    monkeypatch.setenv("KNOTCRYPT_TABLE", str(small))
    _, out, _ = run(capsys, "table", "list")
    assert [l.split("\t")[0] for l in out.splitlines()] == ["3_1", "4_1"]


def test_console_script_module():
    out = subprocess.run(
        [sys.executable, "-m", "knotcrypt.cli", "dt", "5_1"], capture_output=True, text=True, check=True
    )
    assert out.stdout == "6 8 10 2 4\n"
