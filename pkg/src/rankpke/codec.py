"""Binary file format shared by keys, ciphertexts and plaintexts.

Layout: b"RMS1" | type byte | n, k, w, l as u16 LE | payload.

  pk, ct  (n-k) field elements bit-packed, n bits each
  sk      the w non-leading coefficients of V (monic lead implied), bit-packed
  pt      n rows of ceil(n/8) bytes

Bit-packing puts element i at bits [i*n, (i+1)*n) of a little-endian integer,
so payload sizes are ceil(count*n/8) bytes; high padding bits must be zero.
"""

from __future__ import annotations

import struct
from typing import Sequence

from .linalg import BitMatrix
from .scheme import Ciphertext, InvalidParameters, ParameterSet, Plaintext, PrivateKey, PublicKey, scheme_for
from .skew import SkewPoly

MAGIC = b"RMS1"
HEADER = struct.Struct("<4sB4H")
TYPE_PK, TYPE_SK, TYPE_CT, TYPE_PT = 1, 2, 3, 4
TYPE_NAMES = {TYPE_PK: "public key", TYPE_SK: "private key", TYPE_CT: "ciphertext", TYPE_PT: "plaintext"}


class FormatError(ValueError):
    """Bytes that are not a well-formed object of the expected type."""


class ParameterMismatch(FormatError):
    """A well-formed object whose parameters differ from the ones expected."""


def pack_elements(values: Sequence[int], n: int) -> bytes:
    acc = 0
    for i, v in enumerate(values):
        acc |= v << (i * n)
    return acc.to_bytes((len(values) * n + 7) // 8, "little")


def unpack_elements(data: bytes, count: int, n: int) -> list[int]:
    if len(data) != (count * n + 7) // 8:
        raise FormatError(f"packed payload must be {(count * n + 7) // 8} bytes, got {len(data)}")
    acc = int.from_bytes(data, "little")
    if acc >> (count * n):
        raise FormatError("nonzero padding bits in packed payload")
    mask = (1 << n) - 1
    return [(acc >> (i * n)) & mask for i in range(count)]


def payload_size(kind: int, params: ParameterSet) -> int:
    n, k, w = params.n, params.k, params.w
    if kind in (TYPE_PK, TYPE_CT):
        return ((n - k) * n + 7) // 8
    if kind == TYPE_SK:
        return (w * n + 7) // 8
    if kind == TYPE_PT:
        return n * ((n + 7) // 8)
    raise FormatError(f"unknown object type {kind}")


def _header(kind: int, params: ParameterSet) -> bytes:
    return HEADER.pack(MAGIC, kind, params.n, params.k, params.w, params.l)


def read_header(data: bytes) -> tuple[int, ParameterSet]:
    """Parse and check the header; returns (type byte, parameters)."""
    if len(data) < HEADER.size:
        raise FormatError(f"truncated header: {len(data)} of {HEADER.size} bytes")
    magic, kind, n, k, w, l = HEADER.unpack_from(data)
    if magic != MAGIC:
        if magic[:3] == MAGIC[:3]:
            raise FormatError(f"unsupported format version {magic[3:]!r}")
        raise FormatError("bad magic (not an RMS1 file)")
    if kind not in TYPE_NAMES:
        raise FormatError(f"unknown object type {kind}")
    params = ParameterSet(n, k, w, l)
    try:
        params.check()
    except InvalidParameters as exc:
        raise FormatError(f"header parameters rejected: {exc}") from None
    return kind, params


def _open(data: bytes, kind: int, expect: ParameterSet | None) -> tuple[ParameterSet, bytes]:
    found, params = read_header(data)
    if found != kind:
        raise FormatError(f"expected a {TYPE_NAMES[kind]}, found a {TYPE_NAMES[found]}")
    if expect is not None and params != expect:
        raise ParameterMismatch(f"parameters {params} differ from expected {expect}")
    body = data[HEADER.size:]
    size = payload_size(kind, params)
    if len(body) < size:
        raise FormatError(f"truncated {TYPE_NAMES[kind]}: payload {len(body)} of {size} bytes")
    if len(body) > size:
        raise FormatError(f"{len(body) - size} trailing bytes after {TYPE_NAMES[kind]}")
    return params, body


def serialize_pk(pk: PublicKey) -> bytes:
    return _header(TYPE_PK, pk.params) + pack_elements(pk.k_pub, pk.params.n)


def deserialize_pk(data: bytes, expect: ParameterSet | None = None) -> PublicKey:
    params, body = _open(data, TYPE_PK, expect)
    return PublicKey(params, tuple(unpack_elements(body, params.n - params.k, params.n)))


def serialize_ct(ct: Ciphertext) -> bytes:
    return _header(TYPE_CT, ct.params) + pack_elements(ct.u, ct.params.n)


def deserialize_ct(data: bytes, expect: ParameterSet | None = None) -> Ciphertext:
    params, body = _open(data, TYPE_CT, expect)
    return Ciphertext(params, tuple(unpack_elements(body, params.n - params.k, params.n)))


def serialize_sk(sk: PrivateKey) -> bytes:
    return _header(TYPE_SK, sk.params) + pack_elements(sk.V.coeffs[:-1], sk.params.n)


def deserialize_sk(data: bytes, expect: ParameterSet | None = None) -> PrivateKey:
    params, body = _open(data, TYPE_SK, expect)
    coeffs = unpack_elements(body, params.w, params.n) + [1]
    return PrivateKey(params, SkewPoly(scheme_for(params).ctx, coeffs))


def serialize_pt(pt: Plaintext, params: ParameterSet) -> bytes:
    pt.check(params)
    return _header(TYPE_PT, params) + pt.P.to_bytes()


def deserialize_pt(data: bytes, expect: ParameterSet | None = None) -> tuple[Plaintext, ParameterSet]:
    params, body = _open(data, TYPE_PT, expect)
    try:
        P = BitMatrix.from_bytes(body, params.n, params.n)
    except ValueError as exc:
        raise FormatError(f"bad plaintext rows: {exc}") from None
    pt = Plaintext(P)
    try:
        pt.check(params)
    except ValueError as exc:
        raise FormatError(f"not a valid plaintext: {exc}") from None
    return pt, params


def serialize_skewpoly(P: SkewPoly) -> bytes:
    """Coefficient count (u16 LE) then each coefficient in element encoding."""
    ctx = P.ctx
    return struct.pack("<H", len(P.coeffs)) + b"".join(ctx.encode(c) for c in P.coeffs)


def deserialize_skewpoly(ctx, data: bytes) -> SkewPoly:
    if len(data) < 2:
        raise FormatError("truncated skew polynomial")
    (count,) = struct.unpack_from("<H", data)
    nb = ctx.nbytes
    if len(data) != 2 + count * nb:
        raise FormatError(f"skew polynomial needs {2 + count * nb} bytes, got {len(data)}")
    try:
        coeffs = [ctx.decode(data[2 + i * nb:2 + (i + 1) * nb]) for i in range(count)]
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    if coeffs and not coeffs[-1]:
        raise FormatError("skew polynomial has a trailing zero coefficient")
    return SkewPoly(ctx, coeffs)
