import json
import subprocess
import sys
import time

import pytest

from gf2max import reference
from gf2max.cli import main
from gf2max.gf2mat import char_poly, decode, mat_order
from gf2max.gf2poly import factor_mersenne, parse_poly


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--format", "json")
    assert code == 0, err
    return json.loads(out)


@pytest.mark.parametrize("n, gl, npoly, per, total", [
    (1, 1, 1, 1, 1),
    (3, 168, 2, 24, 48),
    (4, 20160, 2, 1344, 2688),
])
def test_count(capsys, n, gl, npoly, per, total):
    code, out, _ = run(capsys, "count", "--n", str(n))
    assert code == 0
    assert out.splitlines()[-1].endswith(f"= {per} * {npoly} = {total}")
    d = run_json(capsys, "count", "--n", str(n))
    assert (d["gl_order"], d["count_primitive"], d["class_size"], d["total"]) == (gl, npoly, per, total)


def test_count_formula_expansion(capsys):
    _, out, _ = run(capsys, "count", "--n", "3")
    assert "(8-1)(8-2)(8-4) = 168" in out
    assert "phi(7)/3 = 6/3 = 2" in out


def test_count_cap(capsys):
    code, _, err = run(capsys, "count", "--n", "65")
    assert code == 1 and "cap exceeded" in err


def test_polys(capsys):
    code, out, _ = run(capsys, "polys", "--n", "3")
    assert code == 0
    assert out.splitlines() == ["x^3+x+1 (11)", "x^3+x^2+1 (13)"]
    _, out, _ = run(capsys, "polys", "--n", "2")
    assert out.splitlines() == ["x^2+x+1 (7)"]


def test_polys_rejects_zero(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["polys", "--n", "0"])
    assert exc.value.code == 2


@pytest.mark.parametrize("poly, published", [
    ("x^3+x+1", reference.CLASS_X3_X_1),
    ("x^3+x^2+1", reference.CLASS_X3_X2_1),
])
def test_gen_exhaustive(capsys, poly, published):
    code, out, _ = run(capsys, "gen", "--n", "3", "--poly", poly)
    assert code == 0
    assert [int(x) for x in out.split()] == sorted(published)


def test_gen_sampled_deterministic(capsys):
    args = ("gen", "--n", "8", "--poly", "x^8+x^4+x^3+x^2+1", "--mode", "sampled", "--count", "5", "--seed", "42")
    _, first, _ = run(capsys, *args)
    _, second, _ = run(capsys, *args)
    codes = [int(x) for x in first.split()]
    assert first == second and len(codes) == 5
    f = parse_poly("x^8+x^4+x^3+x^2+1")
    for c in codes:
        m = decode(c, 8)
        assert char_poly(m) == f and mat_order(m, factor_mersenne(8)) == 255


def test_gen_json_schema(capsys):
    d = run_json(capsys, "gen", "--poly", "11", "--mode", "sampled", "--count", "4", "--seed", "1")
    assert {"n", "polynomial", "mode", "seed", "count", "codes", "timings"} <= set(d)
    assert d["n"] == 3 and d["polynomial"] == "x^3+x+1" and d["seed"] == 1 and d["count"] == 4
    d2 = run_json(capsys, "gen", "--poly", "11", "--mode", "sampled", "--count", "4", "--seed", "1")
    assert d2["codes"] == d["codes"]
    big = run_json(capsys, "gen", "--poly", "x^12+x^6+x^4+x+1", "--mode", "sampled", "--count", "2")
    assert all(c.startswith("0x") for c in big["codes"])


def test_gen_rejects_non_primitive(capsys):
    code, _, err = run(capsys, "gen", "--poly", "x^4+x^3+x^2+x+1")
    assert code == 1
    assert "must be primitive" in err and "proper divisor of 15" in err
    code, _, err = run(capsys, "gen", "--poly", "x^4+x^2+1")
    assert code == 1 and "reducible" in err


def test_gen_exhaustive_cap(capsys):
    code, _, err = run(capsys, "gen", "--poly", "x^8+x^4+x^3+x^2+1")
    assert code == 1 and "exhaustive cap exceeded" in err


def test_gen_degree_mismatch(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--n", "4", "--poly", "x^3+x+1"])
    assert exc.value.code == 2


def test_verify_n3(capsys):
    code, out, _ = run(capsys, "verify", "--n", "3")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "PASS n=3"
    assert not any(line.startswith("FAIL") for line in lines)
    assert "PASS census count 48 = formula 48" in lines
    # the printed centralizer list belongs to 396, not 172
    assert any(line.startswith("NOTE published centralizer list differs from N(172)") for line in lines)


def test_verify_n4_fast(capsys):
    t0 = time.perf_counter()
    code, out, _ = run(capsys, "verify", "--n", "4")
    assert code == 0 and out.splitlines()[-1] == "PASS n=4"
    assert time.perf_counter() - t0 < 10


def test_verify_json(capsys):
    d = run_json(capsys, "verify", "--n", "2")
    assert d["passed"] and all(c["passed"] for c in d["checks"])


def test_verify_cap(capsys):
    code, _, err = run(capsys, "verify", "--n", "6")
    assert code == 1
    assert "cap exceeded" in err and "sampled" in err


def test_encode_decode(capsys):
    code, out, _ = run(capsys, "decode", "172")
    assert code == 0 and out.splitlines() == ["001", "101", "010"]
    _, out, _ = run(capsys, "encode", "100/010/001")
    assert out.strip() == "273"
    _, out, _ = run(capsys, "encode", "100\n010\n001")
    assert out.strip() == "273"
    d = run_json(capsys, "decode", "0xac")
    assert d == {"n": 3, "code": 172, "rows": ["001", "101", "010"]}


def test_decode_large_n_hex(capsys):
    _, out, _ = run(capsys, "encode", "/".join(["1" + "0" * 8] * 9))
    assert out.strip().startswith("0x")


@pytest.mark.parametrize("argv", [
    ["decode", "abc"],
    ["decode", "512", "--n", "3"],
    ["encode", "12/01"],
    ["stream", "--matrix", "172", "--seed", "10"],
])
def test_malformed_input_is_usage_error(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_stream_zero_seed(capsys):
    code, _, err = run(capsys, "stream", "--matrix", "172", "--seed", "000")
    assert code == 1 and "seed must be nonzero" in err


def test_stream(capsys):
    code, out, _ = run(capsys, "stream", "--matrix", "172", "--seed", "100", "--steps", "7")
    assert code == 0
    states = out.split()
    assert len(states) == 7 == len(set(states))
    assert states[-1] == "100"
    assert states[0] == "010"


def test_stream_hex(capsys):
    _, out, _ = run(capsys, "stream", "--matrix", "172", "--seed", "100", "--steps", "3", "--state-format", "hex")
    assert out.splitlines() == ["n=3", "2", "4", "3"]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "gf2max", "count", "--n", "3"], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[-1].endswith("= 48")
