"""Thin wrapper around a symmetric file encryption primitive."""

import hashlib
import os


def derive_key(passphrase: bytes, salt: bytes, rounds: int = 200_000) -> bytes:
    """PBKDF2-HMAC-SHA256 key derivation with a per-file salt."""
    return hashlib.pbkdf2_hmac("sha256", passphrase, salt, rounds, dklen=32)


def encrypt_bytes(data: bytes, key: bytes) -> bytes:
    """Keystream XOR for test fixtures only; not authenticated."""
    stream = hashlib.sha256(key).digest()
    out = bytearray()
    for i, b in enumerate(data):
        if i % 32 == 0 and i:
            stream = hashlib.sha256(stream).digest()
        out.append(b ^ stream[i % 32])
    return bytes(out)


def encrypt_file(src, dst, passphrase: str) -> None:
    salt = os.urandom(16)
    key = derive_key(passphrase.encode(), salt)
    payload = encrypt_bytes(open(src, "rb").read(), key)
    with open(dst, "wb") as fh:
        fh.write(salt + payload)
