"""Textbook RSA used to carry the key package.

No padding and no constant-time arithmetic: this is the bare
exponentiation scheme, good for showing the protocol's shape and nothing
more.  Do not use it to protect real data.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import KnotCryptError

__all__ = [
    "RsaPublicKey",
    "RsaKeyPair",
    "is_probable_prime",
    "keypair_from_primes",
    "rsa_keygen",
    "rsa_encrypt",
    "rsa_decrypt",
    "rsa_transform",
    "MIN_BITS",
]

MIN_BITS = 16
DEFAULT_EXPONENT = 65537
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# the first few Fermat primes, tried in order when 65537 is unusable
_EXPONENTS = (65537, 257, 17, 5, 3)


@dataclass(frozen=True)
class RsaPublicKey:
    n: int
    e: int


@dataclass(frozen=True)
class RsaKeyPair:
    n: int
    e: int
    d: int
    p: int
    q: int

    @property
    def public(self) -> RsaPublicKey:
        return RsaPublicKey(self.n, self.e)

    @property
    def carmichael(self) -> int:
        return math.lcm(self.p - 1, self.q - 1)


def is_probable_prime(n: int, rng: random.Random | None = None, rounds: int = 16) -> bool:
    """Miller-Rabin.  Exact below 3.3e24; above that adds ``rounds`` random bases."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = list(_SMALL_PRIMES)
    if n >= 3_317_044_064_679_887_385_961_981:
        rng = rng or random.Random(n)
        bases += [rng.randrange(2, n - 1) for _ in range(rounds)]
    for a in bases:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def keypair_from_primes(p: int, q: int, e: int) -> RsaKeyPair:
    """Build a key pair from given primes.

    ``d`` is the inverse of ``e`` modulo (p-1)(q-1).  That value is also an
    inverse modulo lcm(p-1, q-1), which is all decryption needs.
    """
    if p == q or not (is_probable_prime(p) and is_probable_prime(q)):
        raise KnotCryptError("p and q must be two distinct primes")
    phi = (p - 1) * (q - 1)
    if math.gcd(e, phi) != 1 or not 1 < e < phi:
        raise KnotCryptError(f"public exponent {e} is not invertible modulo {phi}")
    return RsaKeyPair(p * q, e, pow(e, -1, phi), p, q)


def _random_prime(bits: int, rng: random.Random, attempts: int) -> int:
    for _ in range(attempts):
        # top two bits set so that the product has exactly the requested size
        cand = rng.getrandbits(bits) | (3 << (bits - 2)) | 1
        if is_probable_prime(cand, rng):
            return cand
    raise KnotCryptError(f"no {bits}-bit prime found after {attempts} attempts")


def rsa_keygen(bit_length: int, rng, max_attempts: int = 10_000) -> RsaKeyPair:
    """Generate a key pair whose modulus has exactly ``bit_length`` bits.

    ``rng`` is a :class:`random.Random` or an integer seed.
    """
    if bit_length < MIN_BITS:
        raise KnotCryptError(f"bit length must be at least {MIN_BITS}")
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    half = bit_length // 2
    for _ in range(max_attempts):
        p = _random_prime(half, rng, max_attempts)
        q = _random_prime(bit_length - half, rng, max_attempts)
        if p == q:
            continue
        phi = (p - 1) * (q - 1)
        for e in _EXPONENTS:
            if e < phi and math.gcd(e, phi) == 1:
                return keypair_from_primes(p, q, e)
    raise KnotCryptError(f"no usable prime pair found after {max_attempts} attempts")


def rsa_transform(value: int, exponent: int, n: int) -> int:
    if not 0 <= value < n:
        raise KnotCryptError(f"value {value} is outside [0, {n})")
    return pow(value, exponent, n)


def rsa_encrypt(value: int, key: RsaPublicKey | RsaKeyPair) -> int:
    return rsa_transform(value, key.e, key.n)


def rsa_decrypt(value: int, key: RsaKeyPair) -> int:
    return rsa_transform(value, key.d, key.n)
