"""Binary PGM images, ciphertext envelopes and key files.

Envelope layout (big-endian, no padding)::

    magic   4 bytes  b"LTC1"
    version 1 byte   0x01
    n       uint32
    sumQ    uint64
    payload n*n bytes, row-major

Key files hold whitespace-separated tokens ``mu0 key0 key1 [a_code c1 c2]``.
The three secret values are decimals with exactly 15 fractional digits;
``a_code`` is an element code or ``gen`` for the field generator.
"""

from __future__ import annotations

import re
import struct
from pathlib import Path

import numpy as np

from .chaos import KEY_DIGITS, KeyMaterial
from .cipher import SUPPORTED_SIZES, CipherEnvelope
from .errors import (
    BadMagic,
    BadMaxval,
    BadVersion,
    KeyFileError,
    NonSquare,
    SumOutOfRange,
    Truncated,
    UnsupportedSize,
)

ENVELOPE_MAGIC = b"LTC1"
ENVELOPE_VERSION = 1
_HEADER = struct.Struct(">4sBIQ")

_SECRET = re.compile(r"^\d+\.\d{%d}$" % KEY_DIGITS)


# -- PGM ----------------------------------------------------------------------

def _pgm_tokens(data: bytes, count: int):
    """Read ``count`` header tokens, skipping comments; return them and the data offset."""
    tokens, pos = [], 0
    while len(tokens) < count:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos >= len(data):
            raise Truncated("PGM header ends early")
        if data[pos : pos + 1] == b"#":
            end = data.find(b"\n", pos)
            if end < 0:
                raise Truncated("PGM header ends inside a comment")
            pos = end + 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        tokens.append(data[start:pos])
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise Truncated("PGM header is not followed by whitespace")
    return tokens, pos + 1


def decode_pgm(data: bytes, require_supported: bool = True) -> np.ndarray:
    if data[:2] != b"P5":
        raise BadMagic(f"not a binary PGM (magic {data[:2]!r})")
    (_, w, h, maxval), offset = _pgm_tokens(data, 4)
    try:
        width, height, maxval = int(w), int(h), int(maxval)
    except ValueError as exc:
        raise BadMagic(f"malformed PGM header: {exc}") from None
    if maxval != 255:
        raise BadMaxval(f"maxval must be 255, got {maxval}")
    if width != height:
        raise NonSquare(f"image is {width}x{height}")
    if require_supported and width not in SUPPORTED_SIZES:
        raise UnsupportedSize(f"side {width} not in {SUPPORTED_SIZES}")
    body = data[offset : offset + width * height]
    if len(body) < width * height:
        raise Truncated(f"expected {width * height} pixel bytes, got {len(body)}")
    return np.frombuffer(body, dtype=np.uint8).reshape(height, width).copy()


def encode_pgm(img) -> bytes:
    a = np.asarray(img, dtype=np.uint8)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D image, got shape {a.shape}")
    h, w = a.shape
    return b"P5\n%d %d\n255\n" % (w, h) + a.tobytes()


def read_pgm(source, require_supported: bool = True) -> np.ndarray:
    """Read a P5 image from a path or a binary stream."""
    if hasattr(source, "read"):
        data = source.read()
    else:
        data = Path(source).read_bytes()
    return decode_pgm(data, require_supported)


def write_pgm(img, sink) -> None:
    data = encode_pgm(img)
    if hasattr(sink, "write"):
        sink.write(data)
    else:
        Path(sink).write_bytes(data)


# -- envelopes ----------------------------------------------------------------

def encode_envelope(env: CipherEnvelope) -> bytes:
    return _HEADER.pack(ENVELOPE_MAGIC, ENVELOPE_VERSION, env.n, env.sum_q) + env.payload


def decode_envelope(data: bytes) -> CipherEnvelope:
    if len(data) < 4 or data[:4] != ENVELOPE_MAGIC:
        raise BadMagic("not an LTC1 envelope")
    if len(data) < _HEADER.size:
        raise Truncated("envelope header is incomplete")
    _, version, n, sum_q = _HEADER.unpack_from(data)
    if version != ENVELOPE_VERSION:
        raise BadVersion(f"unsupported envelope version {version}")
    if sum_q > 255 * n * n:
        raise SumOutOfRange(f"sumQ={sum_q} exceeds 255*n^2 for n={n}")
    payload = data[_HEADER.size :]
    if len(payload) < n * n:
        raise Truncated(f"expected {n * n} payload bytes, got {len(payload)}")
    return CipherEnvelope(n, sum_q, payload[: n * n])


def read_envelope(source) -> CipherEnvelope:
    if hasattr(source, "read"):
        return decode_envelope(source.read())
    return decode_envelope(Path(source).read_bytes())


def write_envelope(env: CipherEnvelope, sink) -> None:
    data = encode_envelope(env)
    if hasattr(sink, "write"):
        sink.write(data)
    else:
        Path(sink).write_bytes(data)


# -- key files ----------------------------------------------------------------

def parse_key(text: str) -> KeyMaterial:
    tokens = text.split()
    if len(tokens) not in (3, 6):
        raise KeyFileError(f"key file needs 3 or 6 tokens, found {len(tokens)}")
    for name, tok in zip(("mu0", "key0", "key1"), tokens):
        if not _SECRET.match(tok):
            raise KeyFileError(f"{name}={tok!r} must have exactly {KEY_DIGITS} decimal places")
    secret = dict(zip(("mu0", "key0", "key1"), map(float, tokens[:3])))
    if len(tokens) == 6:
        try:
            a_code = None if tokens[3] == "gen" else int(tokens[3])
            secret.update(a_code=a_code, c1=float(tokens[4]), c2=float(tokens[5]))
        except ValueError as exc:
            raise KeyFileError(f"bad public parameter: {exc}") from None
    return KeyMaterial(**secret)


def format_key(key: KeyMaterial, with_public: bool = True) -> str:
    parts = [f"{v:.{KEY_DIGITS}f}" for v in (key.mu0, key.key0, key.key1)]
    if with_public:
        a = "gen" if key.a_code is None else str(key.a_code)
        parts += [a, repr(key.c1), repr(key.c2)]
    return " ".join(parts) + "\n"


def read_key(path) -> KeyMaterial:
    return parse_key(Path(path).read_text())
