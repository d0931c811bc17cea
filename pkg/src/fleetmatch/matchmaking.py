"""Two-party encrypted match-making.

The enquirer sends an encrypted indicator vector over the road/time-slot
grid; the responder folds in its own interest set homomorphically and
returns one ciphertext. The enquirer learns only whether the queried slot
is in the responder's set.

All indices are 1-based: w runs over 1..world.size.
"""

import random
from dataclasses import dataclass

from . import paillier
from .paillier import Ciphertext

HEADER_BYTES = 8


@dataclass(frozen=True)
class World:
    num_roads: int
    num_slots: int

    def __post_init__(self):
        if self.num_roads < 1 or self.num_slots < 1:
            raise ValueError("world needs at least one road and one slot")

    @property
    def size(self):
        return self.num_roads * self.num_slots

    def index(self, road, slot):
        """Row-major map from (road, slot), both 1-based, to w."""
        if not (1 <= road <= self.num_roads and 1 <= slot <= self.num_slots):
            raise ValueError(f"(road={road}, slot={slot}) outside the world")
        return (road - 1) * self.num_slots + slot

    def road_slot(self, w):
        self.check(w)
        road, slot = divmod(w - 1, self.num_slots)
        return road + 1, slot + 1

    def check(self, w):
        if not 1 <= w <= self.size:
            raise ValueError(f"index {w} outside 1..{self.size}")


@dataclass(frozen=True)
class InterestSet:
    world: World
    members: frozenset

    def __init__(self, world, members=()):
        members = frozenset(members)
        for w in members:
            world.check(w)
        object.__setattr__(self, "world", world)
        object.__setattr__(self, "members", members)

    def __contains__(self, w):
        return w in self.members

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))


@dataclass(frozen=True)
class QueryVector:
    pk: paillier.PublicKey
    entries: tuple

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, w):
        """1-based access."""
        if not 1 <= w <= len(self.entries):
            raise IndexError(w)
        return self.entries[w - 1]


@dataclass(frozen=True)
class Response:
    y: Ciphertext


def submit_query(pk, world, w, rng=None):
    """Encrypt the indicator vector of ``w`` with a fresh randomizer per entry."""
    world.check(w)
    rng = rng or random.SystemRandom()
    entries = []
    for i in range(1, world.size + 1):
        r = paillier.sample_unit(pk, rng)
        entries.append(paillier.encrypt(pk, 1 if i == w else 0, r))
    return QueryVector(pk, tuple(entries))


def return_response(pk, x, interests, rng=None, multipliers=None):
    """Responder side: y = prod_{j in interests} x_j^{v_j} mod N^2.

    Each v_j is uniform on {1, ..., N-1}. ``multipliers`` (index -> v)
    overrides the draws, which lets an oracle replay a run exactly.
    An empty interest set yields the literal ciphertext 1.
    """
    if len(x) != interests.world.size:
        raise ValueError(f"query has {len(x)} entries, world has {interests.world.size}")
    rng = rng or random.SystemRandom()
    y = Ciphertext(1)
    for j in interests:
        v = multipliers[j] if multipliers is not None else rng.randrange(1, pk.n)
        y = paillier.add_cipher(pk, y, paillier.scalar_mul(pk, x[j], v))
    return Response(y)


def interpret(sk, pk, response):
    """True iff the response decrypts to a nonzero value."""
    return paillier.decrypt(sk, pk, response.y) != 0


# -- wire format ---------------------------------------------------------------
# query:    8-byte big-endian count, then count fixed-width big-endian ciphertexts
# response: one fixed-width ciphertext

def query_message_bytes(q):
    return HEADER_BYTES + len(q) * paillier.ciphertext_width(q.pk)


def response_message_bytes(pk):
    return paillier.ciphertext_width(pk)


def encode_query(q):
    width = paillier.ciphertext_width(q.pk)
    parts = [len(q).to_bytes(HEADER_BYTES, "big")]
    parts.extend(c.value.to_bytes(width, "big") for c in q.entries)
    return b"".join(parts)


def decode_query(pk, data):
    width = paillier.ciphertext_width(pk)
    count = int.from_bytes(data[:HEADER_BYTES], "big")
    if len(data) != HEADER_BYTES + count * width:
        raise ValueError("query payload length does not match its header")
    entries = []
    for k in range(count):
        off = HEADER_BYTES + k * width
        c = Ciphertext(int.from_bytes(data[off:off + width], "big"))
        if c.value >= pk.n_squared:
            raise ValueError(f"entry {k + 1} is not a residue mod N^2")
        entries.append(c)
    return QueryVector(pk, tuple(entries))


def encode_response(pk, response):
    return response.y.value.to_bytes(paillier.ciphertext_width(pk), "big")


def decode_response(pk, data):
    if len(data) != paillier.ciphertext_width(pk):
        raise ValueError("response payload has the wrong width")
    value = int.from_bytes(data, "big")
    if value >= pk.n_squared:
        raise ValueError("response is not a residue mod N^2")
    return Response(Ciphertext(value))
