"""Private match-making for fleet coordination over Paillier encryption."""

from .matchmaking import (InterestSet, QueryVector, Response, World, interpret,
                          return_response, submit_query)
from .paillier import (Ciphertext, PrivateKey, PublicKey, decrypt, encrypt,
                       generate_keys, keys_from_primes)

__version__ = "0.1.0"
