import json

import numpy as np
import pytest

from ltc.chaos import PAPER_KEY
from ltc.cli import load_golden, main, selftest_checks
from ltc.formats import format_key, read_envelope, read_pgm, write_pgm

PAPER_KEY_TEXT = format_key(PAPER_KEY, with_public=False)


@pytest.fixture
def keyfile(tmp_path):
    path = tmp_path / "paper.key"
    path.write_text(PAPER_KEY_TEXT)
    return str(path)


@pytest.fixture
def plain(tmp_path, corpus):
    path = tmp_path / "camera.pgm"
    write_pgm(corpus["camera"], path)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_round_trip(capsys, tmp_path, keyfile, plain):
    enc, dec = str(tmp_path / "c.ltc"), str(tmp_path / "d.pgm")
    assert run(capsys, "encrypt", "-k", keyfile, "-i", plain, "-o", enc) == (0, "", "")
    assert run(capsys, "decrypt", "-k", keyfile, "-i", enc, "-o", dec) == (0, "", "")
    assert open(dec, "rb").read() == open(plain, "rb").read()


def test_round_trip_whole_corpus(capsys, tmp_path, keyfile, corpus):
    for name, img in corpus.items():
        src, enc, dec = (str(tmp_path / f"{name}.{ext}") for ext in ("pgm", "ltc", "out.pgm"))
        write_pgm(img, src)
        assert run(capsys, "encrypt", "-k", keyfile, "-i", src, "-o", enc)[0] == 0
        assert run(capsys, "decrypt", "-k", keyfile, "-i", enc, "-o", dec)[0] == 0
        assert open(dec, "rb").read() == open(src, "rb").read()


def test_public_overrides(capsys, tmp_path, keyfile, plain):
    a, b = str(tmp_path / "a.ltc"), str(tmp_path / "b.ltc")
    run(capsys, "encrypt", "-k", keyfile, "-i", plain, "-o", a)
    run(capsys, "encrypt", "-k", keyfile, "-i", plain, "-o", b, "--a", "5", "--c1", "2", "--debug-verify")
    assert read_envelope(a).payload != read_envelope(b).payload
    out = str(tmp_path / "o.pgm")
    assert run(capsys, "decrypt", "-k", keyfile, "-i", b, "-o", out, "--a", "5", "--c1", "2")[0] == 0
    assert np.array_equal(read_pgm(out), read_pgm(plain))


def test_wrong_key_exit_6_but_writes_output(capsys, tmp_path, keyfile, plain):
    enc, dec = str(tmp_path / "c.ltc"), str(tmp_path / "d.pgm")
    run(capsys, "encrypt", "-k", keyfile, "-i", plain, "-o", enc)
    wrong = tmp_path / "wrong.key"
    wrong.write_text(format_key(PAPER_KEY.perturbed("key0", 1e-15), with_public=False))
    code, _, err = run(capsys, "decrypt", "-k", str(wrong), "-i", enc, "-o", dec)
    assert code == 6 and "SumMismatch" in err
    assert read_pgm(dec).shape == (256, 256)
    assert run(capsys, "decrypt", "-k", str(wrong), "-i", enc, "-o", dec, "--force")[0] == 0


def test_verify_n256(capsys, keyfile):
    code, out, err = run(capsys, "verify", "-k", keyfile, "--n", "256", "--sumq", "8388608")
    assert code == 0 and err == ""
    lines = out.splitlines()
    assert len(lines) == 8 and all(line.endswith("=pass") for line in lines)


def test_selftest(capsys):
    code, out, err = run(capsys, "selftest")
    assert code == 0 and err == ""
    assert "transcript_keyed=pass" in out
    assert all(selftest_checks().values())
    assert load_golden()["worked4"]["transversal0"] == [[0, 0], [1, 2], [2, 3], [3, 1]]


def test_analyze_text_and_json(capsys, tmp_path, keyfile, plain):
    enc = str(tmp_path / "c.ltc")
    run(capsys, "encrypt", "-k", keyfile, "-i", plain, "-o", enc)
    code, out, err = run(capsys, "analyze", "-p", plain, "-c", enc, "--json")
    assert code == 0 and err == ""
    reports = json.loads(out)
    assert [r["name"] for r in reports] == [plain, enc]
    assert reports[0]["entropy"] < 7.5 and reports[1]["entropy"] > 7.99
    assert reports[1]["npcr"] > 99
    code, out, _ = run(capsys, "analyze", "-c", enc, "--pairs", "0")
    assert code == 0 and "entropy=" in out and "npcr=na" in out


def test_analyze_seed_from_environment(capsys, monkeypatch, tmp_path, keyfile, plain):
    enc = str(tmp_path / "c.ltc")
    run(capsys, "encrypt", "-k", keyfile, "-i", plain, "-o", enc)
    monkeypatch.setenv("LTC_SEED", "17")
    from_env = run(capsys, "analyze", "-c", enc, "--json")[1]
    explicit = run(capsys, "analyze", "-c", enc, "--json", "--seed", "17")[1]
    other = run(capsys, "analyze", "-c", enc, "--json", "--seed", "18")[1]
    assert from_env == explicit != other


@pytest.mark.parametrize(
    "setup, argv, code",
    [
        ("badkey", ["encrypt", "-k", "{key}", "-i", "{img}", "-o", "{out}"], 3),
        ("rangekey", ["encrypt", "-k", "{key}", "-i", "{img}", "-o", "{out}"], 4),
        (None, ["encrypt", "-k", "{key}", "-i", "{tmp}/missing.pgm", "-o", "{out}"], 9),
        (None, ["encrypt", "-k", "{key}", "-i", "{img}", "-o", "{out}", "--a", "1"], 5),
        ("notpgm", ["encrypt", "-k", "{key}", "-i", "{img}", "-o", "{out}"], 3),
        (None, ["decrypt", "-k", "{key}", "-i", "{img}", "-o", "{out}"], 3),
        (None, ["analyze", "-c", "{img}", "--pairs", "1"], 8),
    ],
)
def test_exit_codes(capsys, tmp_path, keyfile, plain, setup, argv, code):
    key, img = keyfile, plain
    if setup == "badkey":
        key = str(tmp_path / "bad.key")
        open(key, "w").write("3.99 0.1 0.2\n")
    elif setup == "rangekey":
        key = str(tmp_path / "range.key")
        open(key, "w").write("2.000000000000000 0.100000000000000 0.200000000000000\n")
    elif setup == "notpgm":
        img = str(tmp_path / "x.pgm")
        open(img, "wb").write(b"hello")
    fill = dict(key=key, img=img, out=str(tmp_path / "out"), tmp=str(tmp_path))
    got, out, err = run(capsys, *[a.format(**fill) for a in argv])
    assert got == code
    assert err.startswith("ltc: ")


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["encrypt"])
    assert info.value.code == 2
