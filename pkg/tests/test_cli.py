from __future__ import annotations

import json
import subprocess
import sys
from decimal import Decimal

import mpmath
import pytest

from eulersums.cli import main


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def field(out: str, name: str) -> str:
    for line in out.splitlines():
        key, _, value = line.partition("=")
        if key.strip() == name:
            return value.strip()
    raise AssertionError(f"{name} not in output:\n{out}")


def test_eval_alternating_sum(capsys):
    code, out, _ = run(capsys, "eval", "S(~1;3)", "--digits", "40")
    assert code == 0
    mpmath.mp.dps = 60
    want = mpmath.mpf(7) / 4 * mpmath.zeta(3) * mpmath.log(2) - mpmath.mpf(5) / 16 * mpmath.zeta(4)
    assert abs(Decimal(field(out, "value")) - Decimal(mpmath.nstr(want, 50))) < Decimal("1e-39")
    assert int(field(out, "digits_claimed")) >= 40
    assert field(out, "strategy") in ("direct", "accelerated")
    assert int(field(out, "cutoff")) > 0


def test_eval_mzv(capsys):
    code, out, _ = run(capsys, "eval", "z(2,1)")
    assert code == 0
    assert field(out, "value").startswith("1.20205690315959428539973816151")


def test_eval_divergent_exits_with_math_error(capsys):
    code, _, err = run(capsys, "eval", "S(1;1)")
    assert code == 3
    assert "diverges" in err


def test_eval_malformed_exits_with_input_error(capsys):
    code, _, err = run(capsys, "eval", "S(1;")
    assert code == 2
    assert "column" in err


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("S(1,3;4)", "z(8) + z(4,4) + z(5,3) + z(7,1) + z(4,1,3) + z(4,3,1)"),
        ("S(~1,~1;~2)", "-z(~4) - z(~2,2) - 2*z(3,~1) - 2*z(~2,~1,~1)"),
        ("S(;5)", "z(5)"),
    ],
)
def test_expand(capsys, text, expected):
    code, out, _ = run(capsys, "expand", text)
    assert code == 0
    first, second = out.splitlines()[:2]
    assert first == expected
    assert second == "finite check n=20: exact"


def test_expand_unsupported_atoms(capsys):
    code, _, _ = run(capsys, "expand", "Sum[Y(2)*PowDenom(3)]")
    assert code == 3


def test_const(capsys):
    code, out, _ = run(capsys, "const", "zeta", "5", "--digits", "50")
    assert code == 0
    assert out.strip() == "1.0369277551433699263313654864570341680570809195019"
    code, out, _ = run(capsys, "const", "li", "4")
    assert code == 0
    assert out.strip().startswith("0.517479061673899386330758161899")
    code, _, _ = run(capsys, "const", "zeta", "1")
    assert code == 3
    code, _, _ = run(capsys, "const", "nosuch")
    assert code == 2


def test_verify_filter(capsys):
    code, out, _ = run(capsys, "verify", "b4*", "--no-templates")
    assert code == 0
    ids = [line.split()[0] for line in out.splitlines()[:-1]]
    assert ids == ["b43", "b44", "b44.r", "b45", "b46", "b47", "b48", "b49"]
    assert "1 erratum" in out.splitlines()[-1]


def test_verify_json_schema(capsys):
    code, out, err = run(capsys, "verify", "c5*", "--no-templates", "--output", "json")
    assert code == 0
    rows = [json.loads(line) for line in out.splitlines()]
    assert rows
    for row in rows:
        assert set(row) == {"id", "status", "digits_agreed", "lhs", "rhs", "delta", "runtime_ms"}
    assert "identities" in err


def test_parallel_matches_serial(capsys):
    args = ["verify", "c*", "--no-templates", "--output", "json"]
    _, serial, _ = run(capsys, *args)
    _, parallel, _ = run(capsys, *args, "--parallel")

    def strip(text):
        rows = [json.loads(line) for line in text.splitlines()]
        for row in rows:
            row.pop("runtime_ms")
        return [json.dumps(r) for r in rows]

    assert strip(serial) == strip(parallel)
    assert len(strip(serial)) > 20


def test_corrupted_database(capsys, tmp_path):
    db = tmp_path / "bad.eid"
    db.write_text("[a] S(;2) == zeta(2)\n[b] S(1;2 == zeta(3)\n", encoding="utf-8")
    code, _, err = run(capsys, "verify", "--db", str(db), "--no-templates")
    assert code == 2
    assert "line 2" in err


def test_failures_and_errors_set_exit_codes(capsys, tmp_path):
    db = tmp_path / "f.eid"
    db.write_text("[a] S(;2) == zeta(3)\n", encoding="utf-8")
    assert run(capsys, "verify", "--db", str(db), "--no-templates")[0] == 1
    db.write_text("[a] S(1;1) - S(;2) == zeta(2) | fused\n", encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--db", str(db), "--no-templates")
    assert code == 3
    assert "error" in out


def test_tolerance_override(capsys, tmp_path):
    db = tmp_path / "t.eid"
    db.write_text("[a] S(1;2) == 2*zeta(3) + 1/10^15\n[b] S(1;2) == 2*zeta(3)\n", encoding="utf-8")
    # a loose tolerance never hides a difference the error budget cannot explain
    code, out, _ = run(capsys, "verify", "a", "--db", str(db), "--no-templates", "--tol", "1e-5")
    assert code == 1, out
    code, out, err = run(capsys, "verify", "b", "--db", str(db), "--no-templates", "--digits", "10", "--tol", "1e-40")
    assert code == 0
    assert "low-precision" in out
    assert "warning" in err


def test_bad_arguments(capsys):
    assert run(capsys, "verify", "--digits", "3")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "verify", "--tol", "abc")[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "eulersums", "const", "ln2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout.startswith("0.693147180559945309417232121458")
