"""One full session: RSA key transport, then knot encryption and decryption."""

from knotcrypt import default_table
from knotcrypt.errors import DecryptionError
from knotcrypt.protocol import (
    Ciphertext,
    Codebook,
    decrypt_key_package,
    decrypt_message,
    derive_key_knots,
    encrypt_key_package,
    encrypt_message,
    make_key_package,
    pack_key_package,
)
from knotcrypt.rsa import rsa_keygen

table = default_table()
codebook = Codebook.default(table)

# the receiver publishes a key
seed = 7
keypair = rsa_keygen(128, seed)
print(f"receiver key: n={keypair.n} e={keypair.e}")

# the sender picks key knots and ships them under RSA
package = make_key_package(table, 5, seed)
blocks = encrypt_key_package(package, keypair.public)
print("key package:", package.to_clear())
print("RSA blocks: ", blocks)

received = decrypt_key_package(blocks, keypair)
print("package arrives intact:", pack_key_package(received) == pack_key_package(package))

message = b"tie me up"
ciphertext = encrypt_message(message, derive_key_knots(package, table), codebook)
text = ciphertext.to_text()
print()
print(text, end="")

plain = decrypt_message(Ciphertext.from_text(text), derive_key_knots(received, table), codebook)
print()
print("decrypted:", plain)

wrong = derive_key_knots(make_key_package(table, 5, seed + 1), table)
try:
    decrypt_message(ciphertext, wrong, codebook)
except DecryptionError as exc:
    print("with the wrong package:", exc)
