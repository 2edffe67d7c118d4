"""An eavesdropper who can compute Jones polynomials tries to recover key knots.

For every record the attacker keeps the table knots whose Jones polynomial
divides that of the composite.  When the key is the Kinoshita-Terasaka knot
turned into its Conway mutant, both knots survive and cannot be told apart.
"""

from knotcrypt import default_table
from knotcrypt.protocol import (
    Codebook,
    KeyPackage,
    attack_invariant_demo,
    compose_records,
    derive_key_knots,
    encrypt_message,
)

table = default_table()
codebook = Codebook.default(table)
_, rotation = table["11n_42"].mutant

for clear in ("3_1:I,4_1:I", f"11n_42:{rotation.letter}"):
    keys = derive_key_knots(KeyPackage.from_clear(clear), table)
    message = b"\x00\x01\x10\x02"
    ciphertext = encrypt_message(message, keys, codebook)
    report = attack_invariant_demo(ciphertext, table, compose_records(message, keys, codebook))
    print(f"key package {clear}")
    for line in report.lines():
        print("  " + line)
