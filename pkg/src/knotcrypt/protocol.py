"""Knot-based hybrid encryption.

The receiver picks an ordered list of table knots, each with a rotation to
apply to its bundled tangle, and sends that list to the sender under RSA.
Both sides turn the list into the same key knots.  A message byte becomes
the connected sum of two public codebook knots (high nibble, low nibble),
and encryption appends one key knot to that sum.  What travels is the DT
code of the composite, read from the basepoint, so the receiver decrypts
by stripping the known key code off the end and reading the two codebook
codes that remain.

``attack_invariant_demo`` plays an attacker who even has the composite
diagrams and tries to find the key knot from Jones polynomials alone.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .codes import DTCode, extract_dt, format_dt, offset, parse_dt, strip_suffix
from .diagram import Diagram, connected_sum
from .errors import DecryptionError, KnotCryptError, SizeLimitError, SuffixMismatchError
from .invariants import MAX_CROSSINGS, jones
from .polynomial import LaurentPolynomial, divide_exact
from .rsa import RsaKeyPair, RsaPublicKey, rsa_decrypt, rsa_encrypt
from .table import KnotTable
from .tangles import RotationKind, mutate

__all__ = [
    "KeyPackage",
    "KeyKnot",
    "Codebook",
    "Ciphertext",
    "RecordReport",
    "AttackReport",
    "make_key_package",
    "derive_key_knots",
    "pack_key_package",
    "unpack_key_package",
    "encrypt_key_package",
    "decrypt_key_package",
    "encode_message",
    "compose_records",
    "encrypt_message",
    "decrypt_message",
    "attack_invariant_demo",
    "CIPHERTEXT_MAGIC",
]

CIPHERTEXT_MAGIC = "KNOTCRYPT/1"


def _rng(randomness) -> random.Random:
    return randomness if isinstance(randomness, random.Random) else random.Random(randomness)


# ---------------------------------------------------------------------------
# key package


@dataclass(frozen=True)
class KeyPackage:
    """Ordered (table name, rotation) pairs plus a session nonce.

    The nonce labels the session locally; it is not part of the clear form
    and is not transported.
    """

    entries: tuple[tuple[str, RotationKind], ...]
    nonce: int = 0

    def __post_init__(self):
        if not self.entries:
            raise KnotCryptError("a key package needs at least one knot")
        for name, r in self.entries:
            if not name or any(ch in name for ch in ":, \n"):
                raise KnotCryptError(f"bad knot name {name!r} in key package")
            RotationKind(r)

    def __len__(self):
        return len(self.entries)

    def to_clear(self) -> str:
        """``name:R,name:R,...`` with ``R`` one of I, H, V, Z."""
        return ",".join(f"{name}:{RotationKind(r).letter}" for name, r in self.entries)

    @classmethod
    def from_clear(cls, text: str, nonce: int = 0) -> "KeyPackage":
        entries = []
        for k, item in enumerate(text.strip().split(",")):
            name, sep, letter = item.partition(":")
            try:
                if not sep:
                    raise ValueError
                entries.append((name, RotationKind.from_letter(letter)))
            except ValueError:
                raise KnotCryptError(f"key package item {k} is not 'name:R': {item!r}") from None
        return cls(tuple(entries), nonce)

    def validate(self, table: KnotTable) -> None:
        for k, (name, _) in enumerate(self.entries):
            if table.lookup(name) is None:
                raise KnotCryptError(f"key package item {k}: {name!r} is not in the table")


def make_key_package(table: KnotTable, length: int, randomness) -> KeyPackage:
    """Draw ``length`` table names and rotations uniformly and independently."""
    if len(table) == 0:
        raise KnotCryptError("cannot draw a key package from an empty table")
    if length < 1:
        raise KnotCryptError("key package length must be at least 1")
    rng = _rng(randomness)
    names = table.names
    kinds = list(RotationKind)
    entries = tuple((rng.choice(names), rng.choice(kinds)) for _ in range(length))
    return KeyPackage(entries, nonce=rng.getrandbits(64))


def pack_key_package(pkg: KeyPackage) -> bytes:
    """Each entry as a length byte, the ASCII name, then the rotation letter."""
    out = bytearray()
    for name, r in pkg.entries:
        raw = name.encode("ascii")
        if len(raw) > 255:
            raise KnotCryptError(f"knot name {name!r} is too long to pack")
        out.append(len(raw))
        out += raw
        out += RotationKind(r).letter.encode("ascii")
    return bytes(out)


def unpack_key_package(data: bytes, nonce: int = 0) -> KeyPackage:
    entries = []
    pos = 0
    while pos < len(data):
        size = data[pos]
        end = pos + 1 + size
        if end >= len(data):
            raise KnotCryptError(f"truncated key package at byte {pos}")
        name = data[pos + 1:end].decode("ascii")
        try:
            r = RotationKind.from_letter(chr(data[end]))
        except ValueError:
            raise KnotCryptError(f"bad rotation byte at offset {end}") from None
        entries.append((name, r))
        pos = end + 1
    return KeyPackage(tuple(entries), nonce)


def _chunk_size(n: int) -> int:
    size = (n.bit_length() - 1) // 8
    if size < 1:
        raise KnotCryptError("RSA modulus is too small to carry bytes")
    return size


def encrypt_key_package(pkg: KeyPackage, public: RsaPublicKey | RsaKeyPair) -> list[int]:
    """RSA-encrypt the packed package.

    The first integer is the packed byte length; the rest are big-endian
    chunks, each short enough to stay below the modulus.
    """
    data = pack_key_package(pkg)
    size = _chunk_size(public.n)
    if len(data) >= public.n:
        raise KnotCryptError("key package too long for this modulus")
    blocks = [len(data)] + [
        int.from_bytes(data[i:i + size], "big") for i in range(0, len(data), size)
    ]
    return [rsa_encrypt(b, public) for b in blocks]


def decrypt_key_package(blocks: Sequence[int], keypair: RsaKeyPair, nonce: int = 0) -> KeyPackage:
    if not blocks:
        raise KnotCryptError("empty key transport")
    plain = [rsa_decrypt(b, keypair) for b in blocks]
    total, chunks = plain[0], plain[1:]
    size = _chunk_size(keypair.n)
    data = bytearray()
    for k, value in enumerate(chunks):
        width = min(size, total - k * size)
        if width <= 0 or value >= 1 << (8 * width):
            raise KnotCryptError(f"key transport block {k + 1} does not fit the declared length")
        data += value.to_bytes(width, "big")
    if len(data) != total:
        raise KnotCryptError(f"key transport carries {len(data)} bytes, header says {total}")
    return unpack_key_package(bytes(data), nonce)


class KeyKnot(NamedTuple):
    name: str
    rotation: RotationKind
    diagram: Diagram
    dt: DTCode


def derive_key_knots(pkg: KeyPackage, table: KnotTable) -> list[KeyKnot]:
    """Mutate each named knot's bundled presentation and read off its code."""
    pkg.validate(table)
    out = []
    for name, r in pkg.entries:
        d = mutate(table[name].tangle, r, name=f"{name}:{r.letter}")
        out.append(KeyKnot(name, r, d, extract_dt(d)))
    return out


# ---------------------------------------------------------------------------
# codebook and messages


class Codebook:
    """Public map from the 16 nibble values to table knots.

    Construction checks that every one of the 256 two-symbol composites
    decodes to exactly one symbol pair.
    """

    SIZE = 16

    def __init__(self, names: Sequence[str], table: KnotTable):
        names = tuple(names)
        if len(names) != self.SIZE or len(set(names)) != self.SIZE:
            raise KnotCryptError(f"a codebook needs {self.SIZE} distinct names")
        self.names = names
        self.entries = tuple(table[n] for n in names)
        self.codes = tuple(e.dt for e in self.entries)
        self._by_code = {c: s for s, c in enumerate(self.codes)}
        for hi in range(self.SIZE):
            for lo in range(self.SIZE):
                parses = self._parses(self.codes[hi] + offset(self.codes[lo], 2 * len(self.codes[hi])))
                if parses != [(hi, lo)]:
                    raise KnotCryptError(
                        f"codebook is not uniquely decodable: {names[hi]}#{names[lo]} parses as {parses}"
                    )

    @classmethod
    def default(cls, table: KnotTable) -> "Codebook":
        """The first 16 table entries in table order."""
        return cls(table.names[: cls.SIZE], table)

    def _parses(self, code) -> list[tuple[int, int]]:
        out = []
        for hi, head in enumerate(self.codes):
            k = len(head)
            if tuple(code[:k]) != head:
                continue
            rest = tuple(code[k:])
            if any(abs(e) <= 2 * k for e in rest):
                continue
            lo = self._by_code.get(offset(rest, -2 * k))
            if lo is not None:
                out.append((hi, lo))
        return out

    def decode_pair(self, code) -> tuple[int, int] | None:
        parses = self._parses(code)
        return parses[0] if len(parses) == 1 else None

    def symbol_diagram(self, symbol: int) -> Diagram:
        return self.entries[symbol].pd


def encode_message(message: bytes, codebook: Codebook) -> list[Diagram]:
    """One composite per byte: codebook knot of the high nibble # that of the low nibble."""
    return [
        connected_sum(codebook.symbol_diagram(b >> 4), codebook.symbol_diagram(b & 15))
        for b in message
    ]


def decode_codes(codes: Sequence[DTCode], codebook: Codebook) -> bytes:
    out = bytearray()
    for i, code in enumerate(codes):
        pair = codebook.decode_pair(code)
        if pair is None:
            raise DecryptionError("codebook decode failure", i, format_dt(code))
        out.append(pair[0] << 4 | pair[1])
    return bytes(out)


@dataclass(frozen=True)
class Ciphertext:
    """Composite DT codes, one per message byte."""

    length: int
    records: tuple[DTCode, ...]

    def to_text(self) -> str:
        lines = [f"{CIPHERTEXT_MAGIC} {self.length}"]
        lines += [format_dt(c) for c in self.records]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Ciphertext":
        lines = text.split("\n")
        if lines and lines[-1] == "":
            lines.pop()
        if not lines:
            raise KnotCryptError("line 1: missing ciphertext header")
        magic, _, count = lines[0].partition(" ")
        if magic != CIPHERTEXT_MAGIC or not count.isdigit():
            raise KnotCryptError(f"line 1: expected '{CIPHERTEXT_MAGIC} <byte-count>'")
        records = []
        for lineno, line in enumerate(lines[1:], start=2):
            try:
                records.append(parse_dt(line))
            except KnotCryptError as exc:
                raise KnotCryptError(f"line {lineno}: {exc}") from None
        if len(records) != int(count):
            raise KnotCryptError(f"header announces {count} records, found {len(records)}")
        return cls(int(count), tuple(records))


def _key_for(key_knots: Sequence[KeyKnot], i: int) -> KeyKnot:
    # keys are reused cyclically when the message is longer than the package
    return key_knots[i % len(key_knots)]


def compose_records(message: bytes, key_knots: Sequence[KeyKnot], codebook: Codebook) -> list[Diagram]:
    """The composite diagrams L_i # K'_i behind each ciphertext record."""
    if not key_knots:
        raise KnotCryptError("empty key package")
    return [
        connected_sum(letter, _key_for(key_knots, i).diagram)
        for i, letter in enumerate(encode_message(message, codebook))
    ]


def encrypt_message(message: bytes, key_knots: Sequence[KeyKnot], codebook: Codebook) -> Ciphertext:
    records = tuple(extract_dt(d) for d in compose_records(message, key_knots, codebook))
    return Ciphertext(len(message), records)


def decrypt_message(c: Ciphertext, key_knots: Sequence[KeyKnot], codebook: Codebook) -> bytes:
    """Strip each record's key code, then decode the two codebook codes left over."""
    if not key_knots:
        raise KnotCryptError("empty key package")
    if c.length != len(c.records):
        raise KnotCryptError(f"header announces {c.length} records, found {len(c.records)}")
    letters = []
    for i, code in enumerate(c.records):
        try:
            letters.append(strip_suffix(code, _key_for(key_knots, i).dt))
        except SuffixMismatchError as exc:
            detail = str(exc).removeprefix("suffix mismatch").lstrip(": ")
            raise DecryptionError("suffix mismatch", i, detail) from None
    return decode_codes(letters, codebook)


# ---------------------------------------------------------------------------
# invariant attack


@dataclass(frozen=True)
class RecordReport:
    index: int
    status: str  # "attacked" or "too large"
    crossings: int
    survivors: tuple[str, ...] = ()
    # survivors sharing one Jones polynomial, so Jones cannot tell them apart
    ambiguous: tuple[tuple[str, ...], ...] = ()


@dataclass(frozen=True)
class AttackReport:
    records: tuple[RecordReport, ...]

    def lines(self) -> list[str]:
        out = []
        for r in self.records:
            if r.status != "attacked":
                out.append(f"record {r.index}: {r.status} ({r.crossings} crossings)")
                continue
            groups = "; ".join("=".join(g) for g in r.ambiguous) or "none"
            out.append(
                f"record {r.index}: {len(r.survivors)} candidates [{' '.join(r.survivors)}] "
                f"indistinguishable: {groups}"
            )
        return out


def attack_invariant_demo(
    c: Ciphertext,
    public_table: KnotTable,
    granted_diagrams: Sequence[Diagram],
    max_crossings: int = MAX_CROSSINGS,
) -> AttackReport:
    """Try to recover each record's key knot from the Jones polynomial.

    A table knot survives when its Jones polynomial divides that of the
    composite.  Survivors with equal polynomials are reported as groups
    the attack cannot separate.
    """
    if len(granted_diagrams) != len(c.records):
        raise KnotCryptError("need exactly one granted diagram per ciphertext record")
    cand_jones = {e.name: jones(e.pd) for e in public_table}
    reports = []
    for i, (code, d) in enumerate(zip(c.records, granted_diagrams)):
        if extract_dt(d) != code:
            raise KnotCryptError(f"granted diagram {i} does not match ciphertext record {i}")
        try:
            total = jones(d, max_crossings)
        except SizeLimitError:
            reports.append(RecordReport(i, "too large", d.n))
            continue
        survivors = tuple(n for n, j in cand_jones.items() if divide_exact(total, j) is not None)
        groups: dict[LaurentPolynomial, list[str]] = defaultdict(list)
        for n in survivors:
            groups[cand_jones[n]].append(n)
        ambiguous = tuple(tuple(g) for g in groups.values() if len(g) > 1)
        reports.append(RecordReport(i, "attacked", d.n, survivors, ambiguous))
    return AttackReport(tuple(reports))
