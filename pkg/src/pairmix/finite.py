from __future__ import annotations

from typing import Sequence


class FiniteGroup:
    """A finite group given by a multiplication table on indices 0..n-1.

    ``labels`` name the elements; index order is the declared element order
    used for choosing coset representatives.
    """

    def __init__(self, labels: Sequence[str], table: Sequence[Sequence[int]]):
        self.labels = list(labels)
        self.table = [list(r) for r in table]
        n = len(self.labels)
        if n == 0 or len(self.table) != n or any(len(r) != n for r in self.table):
            raise ValueError("multiplication table must be n x n with n labels")
        if len(set(self.labels)) != n:
            raise ValueError("element labels must be distinct")
        if any(not 0 <= x < n for r in self.table for x in r):
            raise ValueError("table entries out of range")
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if len(ids) != 1:
            raise ValueError("table has no identity")
        self.identity = ids[0]
        self._inv = []
        for x in range(n):
            inv = [y for y in range(n) if self.table[x][y] == self.identity]
            if len(inv) != 1:
                raise ValueError(f"element {self.labels[x]} has no unique inverse")
            self._inv.append(inv[0])
        for a in range(n):
            for b in range(n):
                ab = self.table[a][b]
                for c in range(n):
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("table is not associative")
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @classmethod
    def cyclic(cls, order: int, name: str) -> FiniteGroup:
        if order < 1:
            raise ValueError("order must be positive")
        labels = ["1"] + [name if k == 1 else f"{name}^{k}" for k in range(1, order)]
        table = [[(i + j) % order for j in range(order)] for i in range(order)]
        grp = cls(labels, table)
        grp.cyclic_name = name
        return grp

    cyclic_name: str | None = None

    def __len__(self) -> int:
        return len(self.labels)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self._inv[a], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][a]
        return out

    def order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def lookup(self, label: str) -> int | None:
        return self._index.get(label)

    def label(self, a: int) -> str:
        return self.labels[a]
