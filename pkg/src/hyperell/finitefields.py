"""Prime fields F_p and extension fields F_{p^k}.

F_p elements are ints in [0, p); F_{p^k} elements are tuples of k ints,
coordinates with respect to the power basis of a fixed monic irreducible
modulus polynomial.  The modulus of degree k is chosen as the
lexicographically smallest monic irreducible, so runs are reproducible.
"""

from __future__ import annotations

from itertools import product

from .domains import Domain, mpq
from .errors import DivisionByZeroError, DomainMismatchError

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with fixed bases; deterministic for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


class PrimeField(Domain):
    """F_p for prime p; elements are plain ints reduced mod p."""

    def __init__(self, p: int):
        if not is_probable_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZeroError(f"inverse of zero in GF({self.p})")
        return pow(a, self.p - 2, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def from_mpq(self, q):
        q = mpq(q)
        den = int(q.denominator) % self.p
        if den == 0:
            raise DomainMismatchError(f"denominator of {q} vanishes mod {self.p}")
        return int(q.numerator) % self.p * self.inv(den) % self.p

    def elements(self):
        return range(self.p)


class ExtField(Domain):
    """F_{p^k} = F_p[t]/(modulus); elements are length-k int tuples."""

    def __init__(self, p: int, modulus: tuple[int, ...]):
        # modulus: monic coefficients low->high, length k+1
        self.p = p
        self.characteristic = p
        self.base = PrimeField(p)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(c % p for c in modulus)
        self.k = len(modulus) - 1
        if self.k < 1:
            raise ValueError("modulus must be nonconstant")
        self.order = p ** self.k
        self.zero = (0,) * self.k
        self.one = (1 % p,) + (0,) * (self.k - 1)
        # rows[j] = coordinates of t^(k+j) for the reduction step
        self._red_rows = self._reduction_rows()

    @classmethod
    def of_degree(cls, p: int, k: int) -> "ExtField":
        """F_{p^k} with the lexicographically smallest monic irreducible modulus."""
        if k == 1:
            return cls(p, (0, 1))
        for tail in product(range(p), repeat=k):
            mod = tuple(reversed(tail)) + (1,)
            if _is_irreducible_modp(mod, p):
                return cls(p, mod)
        raise RuntimeError("unreachable: irreducible polynomial always exists")

    def _reduction_rows(self):
        p, k, mod = self.p, self.k, self.modulus
        rows = []
        cur = [(-c) % p for c in mod[:-1]]  # t^k
        rows.append(tuple(cur))
        for _ in range(k - 2):
            new = [0] * k
            carry = cur[k - 1]
            for i in range(k - 1):
                new[i + 1] = cur[i]
            if carry:
                for i in range(k):
                    new[i] = (new[i] + carry * rows[0][i]) % p
            cur = new
            rows.append(tuple(cur))
        return rows

    def __repr__(self):
        return f"GF({self.p}^{self.k})"

    def __eq__(self, other):
        return (
            isinstance(other, ExtField)
            and other.p == self.p
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("ExtField", self.p, self.modulus))

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple(-x % p for x in a)

    def mul(self, a, b):
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] += ai * bj
        out = [c % p for c in prod[:k]]
        rows = self._red_rows
        for j in range(k - 1):
            c = prod[k + j] % p
            if c:
                row = rows[j]
                for i in range(k):
                    out[i] = (out[i] + c * row[i]) % p
        return tuple(out)

    def inv(self, a):
        if a == self.zero:
            raise DivisionByZeroError(f"inverse of zero in {self!r}")
        # extended Euclid on coefficient lists over F_p
        p = self.p
        r0 = list(self.modulus)
        r1 = list(a)
        s0, s1 = [0], [1]
        while any(r1):
            while r1 and r1[-1] == 0:
                r1.pop()
            q, r = _poly_divmod_modp(r0, r1, p)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub_modp(s0, _poly_mul_modp(q, s1, p), p)
        lead = r0[-1]
        il = pow(lead, p - 2, p)
        inv = [c * il % p for c in s0]
        inv += [0] * (self.k - len(inv))
        return tuple(inv[: self.k])

    def is_zero(self, a):
        return a == self.zero

    def from_int(self, n):
        return (n % self.p,) + (0,) * (self.k - 1)

    def from_mpq(self, q):
        return self.from_base(self.base.from_mpq(q))

    def from_base(self, a):
        return (a % self.p,) + (0,) * (self.k - 1)

    def pow(self, a, e: int):
        result = self.one
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def generator_t(self):
        """The class of t, the modulus root adjoined to F_p."""
        if self.k == 1:
            return self.zero
        return (0, 1) + (0,) * (self.k - 2)

    def elements(self):
        for coords in product(range(self.p), repeat=self.k):
            yield coords

    def to_str(self, a):
        if self.k == 1:
            return str(a[0])
        parts = []
        for i, c in enumerate(a):
            if c:
                if i == 0:
                    parts.append(str(c))
                elif i == 1:
                    parts.append(f"{c}*t" if c != 1 else "t")
                else:
                    parts.append(f"{c}*t^{i}" if c != 1 else f"t^{i}")
        return " + ".join(parts) if parts else "0"


def _poly_divmod_modp(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]
    while b and b[-1] == 0:
        b.pop()
    if not b:
        raise DivisionByZeroError("polynomial division by zero")
    q = [0] * max(0, len(a) - len(b) + 1)
    inv_lead = pow(b[-1], p - 2, p)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv_lead % p
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    while a and a[-1] == 0:
        a.pop()
    return q, a


def _poly_mul_modp(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_sub_modp(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [(x - y) % p for x, y in zip(a, b)]


def _poly_powmod_modp(base, e, mod, p):
    result = [1]
    base = _poly_divmod_modp(base, mod, p)[1]
    while e:
        if e & 1:
            result = _poly_divmod_modp(_poly_mul_modp(result, base, p), mod, p)[1]
        base = _poly_divmod_modp(_poly_mul_modp(base, base, p), mod, p)[1]
        e >>= 1
    return result


def _poly_gcd_modp(a, b, p):
    a, b = list(a), list(b)
    while b and any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        a, b = b, _poly_divmod_modp(a, b, p)[1]
    while a and a[-1] == 0:
        a.pop()
    return a


def _is_irreducible_modp(mod, p):
    """Rabin irreducibility test for a monic polynomial over F_p."""
    k = len(mod) - 1
    if k == 1:
        return True
    x = [0, 1]
    xq = _poly_powmod_modp(x, p ** k, mod, p)
    if _poly_sub_modp(xq, x, p) and any(_poly_sub_modp(xq, x, p)):
        return False
    for d in _prime_divisors(k):
        xe = _poly_powmod_modp(x, p ** (k // d), mod, p)
        g = _poly_gcd_modp(_poly_sub_modp(xe, x, p), mod, p)
        if len(g) - 1 != 0:
            return False
    return True


def _prime_divisors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out
