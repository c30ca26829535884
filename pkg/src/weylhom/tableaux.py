"""Partitions, compositions and row-standard tableaux as value-count matrices.

A row-standard tableau of shape lambda and type nu is stored as the matrix
``rows[j][i]`` = number of entries equal to ``i + 1`` in row ``j + 1``.  Row sums
give the shape, column sums give the type.  Entry arrays only appear in
:meth:`TableauCounts.entries`, which exists for checking and display.
"""

from __future__ import annotations

from itertools import accumulate
from typing import Iterator, Sequence


def check_partition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(x) for x in parts)
    if any(x <= 0 for x in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


def check_composition(parts: Sequence[int]) -> tuple[int, ...]:
    parts = tuple(int(x) for x in parts)
    if any(x < 0 for x in parts):
        raise ValueError(f"composition parts must be nonnegative: {parts}")
    return parts


def dominates(lam: Sequence[int], nu: Sequence[int]) -> bool:
    """True iff every partial sum of ``lam`` is at least that of ``nu``."""
    if sum(lam) != sum(nu):
        raise ValueError(f"dominance needs equal sizes: {tuple(lam)} vs {tuple(nu)}")
    n = max(len(lam), len(nu))
    a = list(lam) + [0] * (n - len(lam))
    b = list(nu) + [0] * (n - len(nu))
    return all(x >= y for x, y in zip(accumulate(a), accumulate(b)))


def nu_dt(mu: Sequence[int], d: int, t: int) -> tuple[int, ...]:
    """The type obtained by turning t entries d+1 into d (d is 1-based)."""
    mu = tuple(mu)
    if not 1 <= d < len(mu):
        raise ValueError(f"need 1 <= d < {len(mu)}, got d={d}")
    if not 1 <= t <= mu[d]:
        raise ValueError(f"need 1 <= t <= {mu[d]}, got t={t}")
    nu = list(mu)
    nu[d - 1] += t
    nu[d] -= t
    return tuple(nu)


class TableauCounts:
    """A row-standard tableau encoded by its count matrix ``rows[j][i]``."""

    __slots__ = ("rows", "_hash")

    def __init__(self, rows):
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if not rows:
            raise ValueError("tableau needs at least one row")
        width = len(rows[0])
        if width == 0 or any(len(r) != width for r in rows):
            raise ValueError("all rows need the same number of values")
        if any(x < 0 for r in rows for x in r):
            raise ValueError("counts must be nonnegative")
        check_partition([sum(r) for r in rows])
        self.rows = rows
        self._hash = hash(rows)

    @classmethod
    def _make(cls, rows: tuple) -> "TableauCounts":
        # unchecked constructor for the hot paths
        self = object.__new__(cls)
        self.rows = rows
        self._hash = hash(rows)
        return self

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    @property
    def type(self) -> tuple[int, ...]:
        return tuple(sum(col) for col in zip(*self.rows))

    @property
    def nvalues(self) -> int:
        return len(self.rows[0])

    def count(self, value: int, row: int) -> int:
        """T^value_row, 1-based; zero outside the matrix."""
        if 1 <= row <= len(self.rows) and 1 <= value <= len(self.rows[0]):
            return self.rows[row - 1][value - 1]
        return 0

    def less(self, value: int, row: int) -> int:
        """T^{<value}_row."""
        return sum(self.rows[row - 1][: value - 1])

    def greater(self, value: int, row: int) -> int:
        """T^{>value}_row."""
        return sum(self.rows[row - 1][value:])

    def below(self, value: int, row: int) -> int:
        """T^value_{>row}: entries equal to ``value`` strictly below ``row``."""
        return sum(r[value - 1] for r in self.rows[row:])

    def entries(self) -> list[list[int]]:
        return [[i + 1 for i, c in enumerate(r) for _ in range(c)] for r in self.rows]

    def __eq__(self, other):
        if not isinstance(other, TableauCounts):
            return NotImplemented
        return self.rows == other.rows

    def __lt__(self, other):
        return self.rows < other.rows

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"TableauCounts.parse({format_tableau(self)!r}, {self.nvalues})"

    def __str__(self):
        return format_tableau(self)

    @classmethod
    def parse(cls, text: str, length: int | None = None) -> "TableauCounts":
        return parse_tableau(text, length)


def format_tableau(T: TableauCounts) -> str:
    """Run-length text form, e.g. ``1^5 2 3 / 2^4 3 / 3 4 5``."""
    rows = []
    for r in T.rows:
        toks = [str(i + 1) if c == 1 else f"{i + 1}^{c}" for i, c in enumerate(r) if c]
        rows.append(" ".join(toks))
    return " / ".join(rows)


def parse_tableau(text: str, length: int | None = None) -> TableauCounts:
    """Parse the run-length text form.

    ``length`` fixes the number of values (the length of the type); by default
    it is the largest value that occurs.
    """
    parsed = []
    for row_text in text.split("/"):
        toks = row_text.split()
        if not toks:
            raise ValueError(f"empty row in tableau {text!r}")
        row = []
        last = 0
        for tok in toks:
            val, _, mult = tok.partition("^")
            try:
                v = int(val)
                k = int(mult) if mult else 1
            except ValueError:
                raise ValueError(f"bad token {tok!r} in tableau {text!r}") from None
            if v < 1 or k < 1:
                raise ValueError(f"bad token {tok!r} in tableau {text!r}")
            if v < last:
                raise ValueError(f"row {row_text.strip()!r} is not weakly increasing")
            last = v
            row.append((v, k))
        parsed.append(row)
    top = max(v for row in parsed for v, _ in row)
    if length is None:
        length = top
    elif top > length:
        raise ValueError(f"value {top} exceeds type length {length}")
    rows = []
    for row in parsed:
        counts = [0] * length
        for v, k in row:
            counts[v - 1] += k
        rows.append(counts)
    return TableauCounts(rows)


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` with parts bounded by ``caps``, lexicographic."""
    n = len(caps)
    room = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        room[i] = room[i + 1] + caps[i]
    if total > room[0]:
        return
    out = [0] * n

    def rec(i, left):
        if i == n - 1:
            out[i] = left
            yield tuple(out)
            return
        lo = max(0, left - room[i + 1])
        for c in range(lo, min(caps[i], left) + 1):
            out[i] = c
            yield from rec(i + 1, left - c)

    if n == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)


def bounded_compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    return _compositions(total, caps)


def _check_sizes(shape, type_):
    if sum(shape) != sum(type_):
        raise ValueError(f"shape {tuple(shape)} and type {tuple(type_)} have different sizes")


def enumerate_row_standard(shape: Sequence[int], type_: Sequence[int]) -> list[TableauCounts]:
    """All row-standard tableaux of the given shape and type (contingency tables)."""
    shape = check_partition(shape)
    type_ = check_composition(type_)
    _check_sizes(shape, type_)
    out = []

    def rec(j, remaining, acc):
        if j == len(shape):
            out.append(TableauCounts._make(tuple(acc)))
            return
        for row in _compositions(shape[j], remaining):
            acc.append(row)
            rec(j + 1, tuple(r - c for r, c in zip(remaining, row)), acc)
            acc.pop()

    rec(0, type_, [])
    return out


def enumerate_semistandard(shape: Sequence[int], type_: Sequence[int]) -> list[TableauCounts]:
    """T_0(shape, type) in the same order as :func:`enumerate_row_standard`."""
    shape = check_partition(shape)
    type_ = check_composition(type_)
    _check_sizes(shape, type_)
    n = len(type_)
    out = []

    def row_choices(total, remaining, prev):
        # prefix(row, i) <= prefix(prev, i - 1) for every value i
        limit = [0] * n
        if prev is None:
            limit = [total] * n
        else:
            run = 0
            for i in range(n):
                limit[i] = run
                run += prev[i]
        tail = [0] * (n + 1)
        for i in range(n - 1, -1, -1):
            tail[i] = tail[i + 1] + remaining[i]
        row = [0] * n

        def rec(i, used):
            left = total - used
            if i == n:
                if left == 0:
                    yield tuple(row)
                return
            lo = max(0, left - tail[i + 1])
            hi = min(remaining[i], left, limit[i] - used)
            for c in range(lo, hi + 1):
                row[i] = c
                yield from rec(i + 1, used + c)
            row[i] = 0

        yield from rec(0, 0)

    def rec(j, remaining, prev, acc):
        if j == len(shape):
            out.append(TableauCounts._make(tuple(acc)))
            return
        for row in row_choices(shape[j], remaining, prev):
            acc.append(row)
            rec(j + 1, tuple(r - c for r, c in zip(remaining, row)), row, acc)
            acc.pop()

    rec(0, type_, None, [])
    return out


def is_semistandard(T: TableauCounts) -> bool:
    """Column strictness via counts: T^{<=i}_{j+1} <= T^{<=i-1}_j for all i, j."""
    rows = T.rows
    for j in range(len(rows) - 1):
        upper, lower = rows[j], rows[j + 1]
        up = low = 0
        for i in range(len(upper)):
            low += lower[i]
            if low > up:
                return False
            up += upper[i]
    return True


def column_violations(T: TableauCounts) -> list[tuple[int, int]]:
    """1-based sites (r, i) where entries i of row r+1 sit too far left.

    A site is reported when the column criterion fails at value i and row r+1
    actually contains an i, so that moving those entries is a genuine rewrite.
    """
    rows = T.rows
    sites = []
    for j in range(len(rows) - 1):
        upper, lower = rows[j], rows[j + 1]
        up = low = 0
        for i in range(len(upper)):
            low += lower[i]
            if low > up and lower[i]:
                sites.append((j + 1, i + 1))
            up += upper[i]
    return sites


def is_semistandard_entries(entries: list[list[int]]) -> bool:
    """Direct check on an entry array (English notation)."""
    for row in entries:
        if any(row[k] > row[k + 1] for k in range(len(row) - 1)):
            return False
    for j in range(len(entries) - 1):
        for k in range(len(entries[j + 1])):
            if entries[j + 1][k] <= entries[j][k]:
                return False
    return True


def partitions(n: int, max_part: int | None = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest
