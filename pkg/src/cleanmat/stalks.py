"""Local stalk backends.

Every ring handled by this package is a finite product of local stalks of
three kinds: Z/p^k (``ZModStalk``), the localization of Z at a prime
(``ZLocStalk``), and local subrings of user-supplied operation tables
(``TableStalk``).  A stalk owns exact arithmetic on its raw values: small
ints for Z/p^k, ``Fraction`` for Z_(p), and parent-table indices for table
stalks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

MAX_TABLE_SIZE = 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> list[tuple[int, int]]:
    """Prime factorization of n >= 2 as (prime, exponent) pairs, primes ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


class ZModStalk:
    """The local ring Z/p^k."""

    kind = "zmod"
    finite = True

    def __init__(self, p: int, k: int):
        self.p = p
        self.k = k
        self.q = p**k
        self.zero = 0
        self.one = 1 % self.q

    def label(self) -> str:
        return f"Z/{self.q}"

    @property
    def size(self) -> int:
        return self.q

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def from_int(self, v: int):
        return v % self.q

    def is_unit(self, a) -> bool:
        return a % self.p != 0

    def inv(self, a):
        if not self.is_unit(a):
            return None
        return pow(a, -1, self.q)

    def in_max_ideal(self, a) -> bool:
        return a % self.p == 0

    def is_nilpotent(self, a) -> bool:
        # In Z/p^k the nil radical and the maximal ideal coincide.
        return a % self.p == 0

    def elements(self):
        return list(range(self.q))

    def nilpotents(self):
        return list(range(0, self.q, self.p))

    def nil_index(self) -> int:
        return self.k

    def key(self, a):
        return a

    def random(self, rng):
        return rng.randrange(self.q)

    def check_local(self) -> bool:
        """Exhaustively verify the non-units form an ideal (memoized)."""
        if not hasattr(self, "_local"):
            self._local = self._check_local()
        return self._local

    def _check_local(self) -> bool:
        nonunits = self.nilpotents()
        for a in nonunits:
            for b in nonunits:
                if self.is_unit(self.add(a, b)):
                    return False
        for a in nonunits:
            for r in range(self.q):
                if self.is_unit(self.mul(a, r)):
                    return False
        return True

    def ring_descriptor(self) -> dict:
        return {"type": "zmod", "n": self.q}

    def to_standalone(self, a):
        return a

    def from_standalone(self, a):
        return a

    def value_to_json(self, a):
        return a

    def value_from_json(self, data):
        if isinstance(data, bool) or not isinstance(data, int):
            raise ValueError(f"expected integer residue, got {data!r}")
        return data % self.q


class ZLocStalk:
    """Z localized at the prime p: exact fractions with denominator coprime to p."""

    kind = "zloc"
    finite = False
    size = None

    def __init__(self, p: int):
        self.p = p
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def label(self) -> str:
        return f"Z_({self.p})"

    def _check(self, a: Fraction) -> Fraction:
        if a.denominator % self.p == 0:
            raise ValueError(f"{a} is not in Z_({self.p})")
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def from_int(self, v: int):
        return Fraction(v)

    def is_unit(self, a) -> bool:
        return a.numerator % self.p != 0

    def inv(self, a):
        if not self.is_unit(a):
            return None
        return 1 / a

    def in_max_ideal(self, a) -> bool:
        return a.numerator % self.p == 0

    def is_nilpotent(self, a) -> bool:
        return a == 0

    def elements(self):
        raise ValueError("Z_(p) is infinite")

    def nilpotents(self):
        return [Fraction(0)]

    def nil_index(self) -> int:
        return 1

    def key(self, a):
        return a

    def random(self, rng):
        dens = [d for d in (1, 1, 1, 2, 3, 5, 7) if d % self.p != 0]
        return Fraction(rng.randint(-9, 9), rng.choice(dens))

    def check_local(self) -> bool:
        # Valuation argument: v_p(a+b) >= min(v_p a, v_p b) >= 1 and
        # v_p(ar) >= v_p(a) >= 1, so the non-units p*Z_(p) form an ideal.
        return True

    def ring_descriptor(self) -> dict:
        return {"type": "zloc", "p": self.p}

    def to_standalone(self, a):
        return a

    def from_standalone(self, a):
        return a

    def value_to_json(self, a):
        return f"{a.numerator}/{a.denominator}"

    def value_from_json(self, data):
        if isinstance(data, bool):
            raise ValueError(f"expected fraction, got {data!r}")
        if isinstance(data, int):
            return self._check(Fraction(data))
        if isinstance(data, str):
            return self._check(Fraction(data))
        raise ValueError(f"expected fraction, got {data!r}")


class TableStalk:
    """A local subring e*R of a table ring, values stored as parent-table indices."""

    kind = "table"
    finite = True

    def __init__(self, add_table, mul_table, members, one_idx, zero_idx):
        self._add = add_table
        self._mul = mul_table
        self.members = tuple(sorted(members))
        self.zero = zero_idx
        self.one = one_idx
        self._pos = {m: i for i, m in enumerate(self.members)}
        self._inv = {}
        for a in self.members:
            for b in self.members:
                if self._mul[a][b] == self.one:
                    self._inv[a] = b
                    break

    def label(self) -> str:
        return f"table[{len(self.members)}]"

    @property
    def size(self) -> int:
        return len(self.members)

    def add(self, a, b):
        return self._add[a][b]

    def sub(self, a, b):
        return self._add[a][self.neg(b)]

    def mul(self, a, b):
        return self._mul[a][b]

    def neg(self, a):
        row = self._add[a]
        for b in self.members:
            if row[b] == self.zero:
                return b
        raise AssertionError("no additive inverse in table stalk")

    def from_int(self, v: int):
        out = self.zero
        step = self.one if v >= 0 else self.neg(self.one)
        for _ in range(abs(v) % self._additive_order()):
            out = self.add(out, step)
        return out

    def _additive_order(self) -> int:
        n = 1
        acc = self.one
        while acc != self.zero:
            acc = self.add(acc, self.one)
            n += 1
        return n

    def is_unit(self, a) -> bool:
        return a in self._inv

    def inv(self, a):
        return self._inv.get(a)

    def in_max_ideal(self, a) -> bool:
        return a not in self._inv

    def is_nilpotent(self, a) -> bool:
        acc = a
        for _ in range(len(self.members)):
            if acc == self.zero:
                return True
            acc = self.mul(acc, a)
        return acc == self.zero

    def elements(self):
        return list(self.members)

    def nilpotents(self):
        return [a for a in self.members if self.is_nilpotent(a)]

    def nil_index(self) -> int:
        """Smallest c with m^c = 0 for the maximal ideal m."""
        ideal = frozenset(a for a in self.members if not self.is_unit(a))
        power = ideal
        c = 1
        while power != {self.zero}:
            products = {self.mul(a, b) for a in power for b in ideal}
            power = self._additive_closure(products)
            c += 1
            if c > len(self.members) + 1:
                raise AssertionError("maximal ideal of a table stalk is not nilpotent")
        return c

    def _additive_closure(self, seed):
        closed = set(seed) | {self.zero}
        frontier = list(closed)
        while frontier:
            a = frontier.pop()
            for b in list(closed):
                s = self.add(a, b)
                if s not in closed:
                    closed.add(s)
                    frontier.append(s)
        return closed

    def key(self, a):
        return self._pos[a]

    def random(self, rng):
        return rng.choice(self.members)

    def check_local(self) -> bool:
        nonunits = [a for a in self.members if not self.is_unit(a)]
        for a in nonunits:
            for b in nonunits:
                if self.is_unit(self.add(a, b)):
                    return False
            for r in self.members:
                if self.is_unit(self.mul(a, r)):
                    return False
        return True

    def ring_descriptor(self) -> dict:
        m = self.members
        pos = self._pos
        return {
            "type": "table",
            "add": [[pos[self._add[a][b]] for b in m] for a in m],
            "mul": [[pos[self._mul[a][b]] for b in m] for a in m],
        }

    def to_standalone(self, a):
        return self._pos[a]

    def from_standalone(self, a):
        return self.members[a]

    def value_to_json(self, a):
        return self._pos[a]

    def value_from_json(self, data):
        if isinstance(data, bool) or not isinstance(data, int):
            raise ValueError(f"expected table index, got {data!r}")
        if not 0 <= data < len(self.members):
            raise ValueError(f"table index {data} out of range")
        return self.members[data]


@lru_cache(maxsize=None)
def zmod_stalk(p: int, k: int) -> ZModStalk:
    return ZModStalk(p, k)


@lru_cache(maxsize=None)
def zloc_stalk(p: int) -> ZLocStalk:
    return ZLocStalk(p)
