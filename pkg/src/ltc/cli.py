"""Command line entry point ``ltc``.

Exit codes::

    0  success
    2  usage error (argparse)
    3  file format or key-file error
    4  key out of range / degenerate logistic orbit
    5  invalid field or design parameters
    6  decrypted pixel sum does not match the envelope
    7  a verification or self-test check failed
    8  analysis error (mismatched images, bad parameters)
    9  I/O error
    1  any other package error
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from importlib import resources

import numpy as np

from . import analysis, errors, formats, latin
from .chaos import KeyMaterial
from .cipher import SUPPORTED_SIZES, decrypt, derive_material, encrypt, encrypt_stages
from .field import FiniteField

EXIT_CODES = [
    (errors.SumMismatch, 6),
    (errors.FormatError, 3),
    (errors.ChaosError, 4),
    (errors.FieldError, 5),
    (errors.DesignError, 5),
    (errors.AnalysisError, 8),
    (errors.CipherError, 3),
    (errors.LTCError, 1),
    (OSError, 9),
]


class CheckFailed(Exception):
    pass


def _key(args) -> KeyMaterial:
    key = formats.read_key(args.key)
    overrides = {k: getattr(args, k) for k in ("a_code", "c1", "c2") if getattr(args, k, None) is not None}
    if overrides:
        key = replace(key, **overrides)
    return key


def _load_cipher_image(path) -> np.ndarray:
    with open(path, "rb") as fh:
        data = fh.read()
    if data[:4] == formats.ENVELOPE_MAGIC:
        return formats.decode_envelope(data).image
    return formats.decode_pgm(data, require_supported=False)


def cmd_encrypt(args) -> int:
    img = formats.read_pgm(args.input)
    env = encrypt(img, _key(args), debug_verify=args.debug_verify)
    formats.write_envelope(env, args.output)
    return 0


def cmd_decrypt(args) -> int:
    env = formats.read_envelope(args.input)
    try:
        img = decrypt(env, _key(args), check_sum=not args.force)
    except errors.SumMismatch as exc:
        # keep the output for inspection even though the check failed
        formats.write_pgm(exc.image, args.output)
        raise
    formats.write_pgm(img, args.output)
    return 0


def cmd_analyze(args) -> int:
    seed = args.seed if args.seed is not None else int(os.environ.get("LTC_SEED", "0"))
    pairs = None if args.pairs == 0 else args.pairs
    reports = []
    plain = None
    if args.plain:
        plain = formats.read_pgm(args.plain, require_supported=False)
        reports.append(analysis.analyze_image(plain, args.plain, pairs=pairs, seed=seed))
    for path in args.cipher:
        img = _load_cipher_image(path)
        reports.append(analysis.analyze_image(img, path, reference=plain, pairs=pairs, seed=seed))
    if args.json:
        json.dump([r.to_dict() for r in reports], sys.stdout, indent=1)
        sys.stdout.write("\n")
    else:
        sys.stdout.write("\n".join(r.to_text() for r in reports))
    return 0


def cmd_verify(args) -> int:
    key = _key(args)
    material = derive_material(args.sumq, args.n, key)
    checks = material.verify()
    for name, ok in checks.items():
        print(f"{name}={'pass' if ok else 'FAIL'}")
    if not all(checks.values()):
        raise CheckFailed("design verification failed")
    return 0


def load_golden() -> dict:
    return json.loads(resources.files("ltc").joinpath("data/golden.json").read_text())


def selftest_checks() -> dict[str, bool]:
    g = load_golden()
    ex = g["worked4"]
    f4 = FiniteField(2, 2, (1, 1, 1))
    M, M1, Mg = latin.build_squares(f4, None, 2)
    D = latin.TransversalDecomposition(Mg)
    checks = {
        "worked4_M": np.array_equal(M, ex["M"]),
        "worked4_M1": np.array_equal(M1, ex["M1"]),
        "worked4_Mgamma": np.array_equal(Mg, ex["Mgamma"]),
        "worked4_transversal": [list(p) for p in D.transversal(0)] == ex["transversal0"],
    }
    inp = g["pipeline_input"]
    key = KeyMaterial(inp["mu0"], inp["key0"], inp["key1"], inp["a"], inp["c1"], inp["c2"])
    Q = np.array(inp["Q"], dtype=np.uint8)
    field = FiniteField(inp["p"], len(inp["poly"]) - 1, inp["poly"])
    for name, labeling in (("pinned", latin.Labeling.identity(4)), ("keyed", None)):
        want = g[name]
        material = derive_material(want["sum_q"], 4, key, field=field, labeling=labeling)
        stages = encrypt_stages(Q, material, key.c1, key.c2, verify=True)
        checks[f"transcript_{name}"] = all(
            np.array_equal(stages[k], want[k]) for k in ("P1", "P2", "P3", "cipher")
        ) and np.array_equal(material.labeling.perm, want["labeling"])
    return checks


def cmd_selftest(args) -> int:
    checks = selftest_checks()
    for name, ok in checks.items():
        print(f"{name}={'pass' if ok else 'FAIL'}")
    if not all(checks.values()):
        raise CheckFailed("self-test failed")
    return 0


def _add_key_args(p, public: bool = True):
    p.add_argument("-k", "--key", required=True, help="key file")
    if public:
        p.add_argument("--a", dest="a_code", type=int, help="public multiplier as element code")
        p.add_argument("--c1", type=float)
        p.add_argument("--c2", type=float)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ltc", description="Latin-square transversal image cipher")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encrypt", help="encrypt a square P5 PGM into an LTC1 envelope")
    _add_key_args(p)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--debug-verify", action="store_true", help="check every design property first")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt an LTC1 envelope into a PGM")
    _add_key_args(p)
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--force", action="store_true", help="ignore a pixel-sum mismatch")
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("analyze", help="statistics for plaintext and cipher images")
    p.add_argument("-p", "--plain")
    p.add_argument("-c", "--cipher", required=True, action="append", help="PGM or LTC1 file; repeatable")
    p.add_argument("--pairs", type=int, default=4000, help="sampled neighbour pairs, 0 for all")
    p.add_argument("--seed", type=int, help="sampler seed (default $LTC_SEED or 0)")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="rebuild the design for a key and check it")
    _add_key_args(p)
    p.add_argument("--n", type=int, required=True, choices=SUPPORTED_SIZES)
    p.add_argument("--sumq", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("selftest", help="check the embedded golden vectors")
    p.set_defaults(func=cmd_selftest)
    return parser


def exit_code(exc: BaseException) -> int:
    if isinstance(exc, CheckFailed):
        return 7
    for cls, code in EXIT_CODES:
        if isinstance(exc, cls):
            return code
    raise exc


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (errors.LTCError, CheckFailed, OSError) as exc:
        print(f"ltc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code(exc)


if __name__ == "__main__":
    sys.exit(main())
