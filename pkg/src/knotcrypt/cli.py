"""Command-line entry point: ``knotcrypt <command> ...``.

Exit status is 0 on success, 2 for usage errors and 1 for data errors.
Every error is reported on a single stderr line starting with ``error:``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .codes import canonical_dt, extract_dt, format_dt
from .diagram import Diagram, connected_sum, format_pd, parse_pd, unknot
from .errors import KnotCryptError
from .invariants import MAX_CROSSINGS, jones, kauffman_bracket, writhe
from .protocol import (
    Ciphertext,
    Codebook,
    KeyPackage,
    attack_invariant_demo,
    compose_records,
    decrypt_key_package,
    decrypt_message,
    derive_key_knots,
    encrypt_key_package,
    encrypt_message,
    make_key_package,
)
from .rsa import RsaKeyPair, RsaPublicKey, rsa_keygen
from .table import KnotTable, format_table, load_table
from .tangles import RotationKind, mutate

DEFAULT_KEY_LENGTH = 8


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# ---------------------------------------------------------------------------
# helpers


def _table(args) -> KnotTable:
    return load_table(args.table)


def _diagram(table: KnotTable, ref: str) -> Diagram:
    """A table name, ``unknot``, or a path to a PD file."""
    if ref == "unknot":
        return unknot()
    entry = table.lookup(ref)
    if entry is not None:
        return entry.pd
    path = Path(ref)
    if path.is_file():
        return parse_pd(path.read_text(encoding="utf-8"), name=path.stem)
    raise KnotCryptError(f"{ref!r} is neither a table knot nor a PD file")


def _codebook(args, table: KnotTable) -> Codebook:
    if args.codebook:
        return Codebook([n.strip() for n in args.codebook.split(",")], table)
    return Codebook.default(table)


def _key_package(args, table: KnotTable) -> KeyPackage:
    if args.keypkg:
        pkg = KeyPackage.from_clear(Path(args.keypkg).read_text(encoding="ascii"))
    elif args.keys:
        pkg = KeyPackage.from_clear(args.keys)
    elif args.seed is not None:
        pkg = make_key_package(table, args.n, args.seed)
    else:
        raise UsageError("give one of --keypkg, --keys or --seed")
    pkg.validate(table)
    return pkg


def _read_bytes(path: str | None) -> bytes:
    if path in (None, "-"):
        return sys.stdin.buffer.read()
    return Path(path).read_bytes()


def _write(path: str | None, data: bytes | str):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if path in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _format_key(k: RsaKeyPair, public_only: bool) -> str:
    fields = [("n", k.n), ("e", k.e)]
    if not public_only:
        fields += [("d", k.d), ("p", k.p), ("q", k.q)]
    return "".join(f"{name}={value}\n" for name, value in fields)


def _parse_key(path: str) -> RsaKeyPair | RsaPublicKey:
    values = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="ascii").splitlines(), start=1):
        if not line.strip():
            continue
        name, sep, value = line.partition("=")
        if not sep or not value.strip().isdigit():
            raise KnotCryptError(f"{path}: line {lineno}: expected 'name=integer'")
        values[name.strip()] = int(value)
    if {"n", "e", "d", "p", "q"} <= values.keys():
        return RsaKeyPair(values["n"], values["e"], values["d"], values["p"], values["q"])
    if {"n", "e"} <= values.keys():
        return RsaPublicKey(values["n"], values["e"])
    raise KnotCryptError(f"{path}: key file needs at least n= and e=")


# ---------------------------------------------------------------------------
# commands


def cmd_table_list(args):
    table = _table(args)
    if args.records:
        _write(None, format_table(table))
        return
    for e in table:
        flags = ("alternating" if e.alternating else "non-alternating") + (" chiral" if e.chiral else "")
        print(f"{e.name}\t{e.crossing_number}\t{format_dt(e.dt)}\t{flags}")


def cmd_dt(args):
    d = _diagram(_table(args), args.knot)
    print(format_dt(canonical_dt(d) if args.canonical else extract_dt(d)))


def cmd_invariant(args):
    d = _diagram(_table(args), args.knot)
    if args.kind == "writhe":
        print(writhe(d))
    elif args.kind == "bracket":
        print(kauffman_bracket(d, args.max_crossings))
    else:
        print(jones(d, args.max_crossings))


def _emit_diagram(d: Diagram, as_dt: bool):
    print(format_dt(extract_dt(d)) if as_dt else format_pd(d))


def cmd_compose(args):
    table = _table(args)
    _emit_diagram(connected_sum(_diagram(table, args.first), _diagram(table, args.second)), args.dt)


def cmd_mutate(args):
    table = _table(args)
    try:
        r = RotationKind.from_letter(args.rotation)
    except ValueError:
        raise UsageError(f"rotation must be one of I, H, V, Z, not {args.rotation!r}") from None
    _emit_diagram(mutate(table[args.knot].tangle, r, name=args.knot), args.dt)


def cmd_keygen(args):
    k = rsa_keygen(args.bits, args.seed)
    _write(args.out, _format_key(k, public_only=False))
    if args.public_out:
        _write(args.public_out, _format_key(k, public_only=True))


def cmd_keypkg(args):
    table = _table(args)
    if args.open:
        key = _parse_key(args.key) if args.key else None
        if not isinstance(key, RsaKeyPair):
            raise UsageError("--open needs --key with a private key file")
        blocks = [int(x) for x in Path(args.open).read_text(encoding="ascii").split()]
        pkg = decrypt_key_package(blocks, key)
        pkg.validate(table)
        _write(args.out, pkg.to_clear() + "\n")
        return
    if args.seed is None:
        raise UsageError("keypkg needs --seed (or --open)")
    pkg = make_key_package(table, args.n, args.seed)
    if args.key:
        blocks = encrypt_key_package(pkg, _parse_key(args.key))
        _write(args.out, " ".join(map(str, blocks)) + "\n")
    else:
        _write(args.out, pkg.to_clear() + "\n")


def cmd_encrypt(args):
    table = _table(args)
    keys = derive_key_knots(_key_package(args, table), table)
    c = encrypt_message(_read_bytes(args.input), keys, _codebook(args, table))
    _write(args.out, c.to_text())


def cmd_decrypt(args):
    table = _table(args)
    keys = derive_key_knots(_key_package(args, table), table)
    c = Ciphertext.from_text(_read_bytes(args.input).decode("ascii"))
    _write(args.out, decrypt_message(c, keys, _codebook(args, table)))


def cmd_attack_demo(args):
    table = _table(args)
    keys = derive_key_knots(_key_package(args, table), table)
    codebook = _codebook(args, table)
    message = _read_bytes(args.input)
    c = encrypt_message(message, keys, codebook)
    report = attack_invariant_demo(c, table, compose_records(message, keys, codebook), args.max_crossings)
    for line in report.lines():
        print(line)


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--table", help="knot table file (default: $KNOTCRYPT_TABLE or the bundled table)")

    session = _Parser(add_help=False)
    session.add_argument("--keypkg", help="file holding a key package in clear form")
    session.add_argument("--keys", help="key package in clear form, e.g. '3_1:I,11n_42:H'")
    session.add_argument("--seed", type=int, help="draw the key package from this seed")
    session.add_argument("--n", type=int, default=DEFAULT_KEY_LENGTH, help="key package length with --seed")
    session.add_argument("--codebook", help="16 comma-separated table names (default: first 16 entries)")
    session.add_argument("--in", dest="input", help="input file (default: stdin)")

    p = _Parser(prog="knotcrypt", description="Knot-based hybrid encryption toolkit.")
    p.add_argument("--version", action="version", version=f"knotcrypt {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="inspect the knot table")
    tsub = t.add_subparsers(dest="table_command", required=True, parser_class=_Parser)
    tl = tsub.add_parser("list", parents=[common], help="list table entries")
    tl.add_argument("--records", action="store_true", help="print full fixture records")
    tl.set_defaults(func=cmd_table_list)

    s = sub.add_parser("dt", parents=[common], help="DT code of a knot")
    s.add_argument("knot", help="table name, 'unknot' or PD file")
    s.add_argument("--canonical", action="store_true", help="least code over all starts and directions")
    s.set_defaults(func=cmd_dt)

    s = sub.add_parser("invariant", parents=[common], help="Jones polynomial, bracket or writhe")
    s.add_argument("knot", help="table name, 'unknot' or PD file")
    s.add_argument("--kind", choices=("jones", "bracket", "writhe"), default="jones")
    s.add_argument("--max-crossings", type=int, default=MAX_CROSSINGS)
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("compose", parents=[common], help="connected sum of two knots")
    s.add_argument("first")
    s.add_argument("second")
    s.add_argument("--dt", action="store_true", help="print the DT code instead of the PD")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("mutate", parents=[common], help="mutate a table knot's bundled tangle")
    s.add_argument("knot")
    s.add_argument("rotation", help="I, H, V or Z")
    s.add_argument("--dt", action="store_true", help="print the DT code instead of the PD")
    s.set_defaults(func=cmd_mutate)

    s = sub.add_parser("keygen", help="generate an RSA key pair")
    s.add_argument("--bits", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--out", help="private key file (default: stdout)")
    s.add_argument("--public-out", help="also write the public key here")
    s.set_defaults(func=cmd_keygen)

    s = sub.add_parser("keypkg", parents=[common], help="draw, seal or open a key package")
    s.add_argument("--n", type=int, default=DEFAULT_KEY_LENGTH)
    s.add_argument("--seed", type=int)
    s.add_argument("--key", help="RSA key file: public to seal, private with --open")
    s.add_argument("--open", help="file of RSA blocks to decrypt into a clear package")
    s.add_argument("--out", help="output file (default: stdout)")
    s.set_defaults(func=cmd_keypkg)

    s = sub.add_parser("encrypt", parents=[common, session], help="encrypt a message")
    s.add_argument("--out", help="ciphertext file (default: stdout)")
    s.set_defaults(func=cmd_encrypt)

    s = sub.add_parser("decrypt", parents=[common, session], help="decrypt a ciphertext")
    s.add_argument("--out", help="plaintext file (default: stdout)")
    s.set_defaults(func=cmd_decrypt)

    s = sub.add_parser("attack-demo", parents=[common, session], help="Jones-polynomial attack on a session")
    s.add_argument("--max-crossings", type=int, default=MAX_CROSSINGS)
    s.set_defaults(func=cmd_attack_demo)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except UsageError as exc:
        print(f"error: usage: {exc}", file=sys.stderr)
        return 2
    except (KnotCryptError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {' '.join(str(exc).split())}", file=sys.stderr)
        return 1
    return 0


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
