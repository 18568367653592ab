"""Deterministic random byte stream seeded by 32 bytes.

Block i of the stream is SHAKE-256(domain || seed || i) truncated to
BLOCK_BYTES.  Bits are consumed little-endian; every call to getrandbits(k)
takes ceil(k/8) fresh bytes so the stream position never depends on
previous call results.
"""

from __future__ import annotations

import hashlib
import os

SEED_BYTES = 32
BLOCK_BYTES = 1 << 14
_DOMAIN = b"rankpke-rng-v1"


class SeededRng:
    def __init__(self, seed: bytes | None = None):
        if seed is None:
            seed = os.urandom(SEED_BYTES)
        if len(seed) != SEED_BYTES:
            raise ValueError(f"seed must be {SEED_BYTES} bytes, got {len(seed)}")
        self.seed = bytes(seed)
        self._counter = 0
        self._buf = b""
        self._pos = 0

    @classmethod
    def from_hex(cls, text: str) -> SeededRng:
        return cls(bytes.fromhex(text))

    def _refill(self) -> None:
        block = hashlib.shake_256(_DOMAIN + self.seed + self._counter.to_bytes(8, "little")).digest(BLOCK_BYTES)
        self._counter += 1
        self._buf = self._buf[self._pos:] + block
        self._pos = 0

    def randbytes(self, k: int) -> bytes:
        while self._pos + k > len(self._buf):
            self._refill()
        out = self._buf[self._pos:self._pos + k]
        self._pos += k
        return out

    def getrandbits(self, k: int) -> int:
        if k <= 0:
            return 0
        nb = (k + 7) >> 3
        pos = self._pos
        if pos + nb > len(self._buf):
            self._refill()
            pos = 0
        self._pos = pos + nb
        return int.from_bytes(self._buf[pos:pos + nb], "little") & ((1 << k) - 1)

    def randbelow(self, m: int) -> int:
        """Uniform integer in [0, m) by rejection."""
        if m <= 0:
            raise ValueError("randbelow needs a positive bound")
        k = (m - 1).bit_length()
        while True:
            x = self.getrandbits(k)
            if x < m:
                return x

    def spawn(self, index: int) -> SeededRng:
        """Independent child stream, e.g. one per Monte Carlo shard."""
        child = hashlib.shake_256(_DOMAIN + b"/spawn" + self.seed + index.to_bytes(8, "little")).digest(SEED_BYTES)
        return SeededRng(child)
