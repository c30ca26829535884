"""Homomorphism calculus on tableau coefficient vectors.

A :class:`HomElement` is a formal combination sum c_T Theta_T of row-standard
tableaux of a fixed shape and type.  The two rewriting rules are

* :func:`apply_hdt` -- the expansion of Theta_T(m_mu h_{d,t}) over tableaux of
  type nu(d, t), and
* :func:`straighten_once` -- the relation that moves all entries d of row r+1
  into row r.

Iterating the second rule until only semistandard tableaux remain gives the
coordinates of an element in the semistandard basis (:func:`normalize`); see
:class:`Straightener` for what happens when the iteration runs in a circle.  The
kernel of the resulting constraint matrix is Psi(mu, lambda) (:func:`hom_dim`).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Mapping

from .scalars import QParams, Scalar
from .tableaux import (
    TableauCounts,
    bounded_compositions,
    check_composition,
    check_partition,
    column_violations,
    dominates,
    enumerate_row_standard,
    enumerate_semistandard,
    is_semistandard,
    nu_dt,
    parse_tableau,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**6


class StraighteningError(RuntimeError):
    """Straightening did not reach the semistandard basis (budget, or undetermined tableau)."""


class HomElement:
    """A finite combination of Theta_T with nonzero scalar coefficients.

    Values are treated as immutable; arithmetic returns new objects.
    """

    __slots__ = ("shape", "type", "terms")

    def __init__(self, shape, type_, terms: Mapping[TableauCounts, Scalar] | None = None, check=True):
        self.shape = tuple(shape)
        self.type = tuple(type_)
        terms = {T: c for T, c in (terms or {}).items() if c}
        if check:
            for T in terms:
                if T.shape != self.shape or T.type != self.type:
                    raise ValueError(f"tableau {T} does not have shape {self.shape} and type {self.type}")
        self.terms = terms

    @classmethod
    def theta(cls, T: TableauCounts, params: QParams) -> "HomElement":
        return cls(T.shape, T.type, {T: params.one}, check=False)

    @classmethod
    def zero(cls, shape, type_) -> "HomElement":
        return cls(shape, type_, {}, check=False)

    def _same_space(self, other):
        if (self.shape, self.type) != (other.shape, other.type):
            raise ValueError("HomElements live in different spaces")

    def __add__(self, other: "HomElement") -> "HomElement":
        if not isinstance(other, HomElement):
            return NotImplemented
        self._same_space(other)
        out = dict(self.terms)
        for T, c in other.terms.items():
            out[T] = out[T] + c if T in out else c
        return HomElement(self.shape, self.type, out, check=False)

    def __neg__(self):
        return HomElement(self.shape, self.type, {T: -c for T, c in self.terms.items()}, check=False)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        if not isinstance(c, (Scalar, int)):
            return NotImplemented
        return HomElement(self.shape, self.type, {T: c * x for T, x in self.terms.items()}, check=False)

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, HomElement):
            return NotImplemented
        return (self.shape, self.type) == (other.shape, other.type) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, T: TableauCounts):
        return self.terms.get(T)

    @property
    def support(self) -> set[TableauCounts]:
        return set(self.terms)

    def __repr__(self):
        if not self.terms:
            return f"HomElement({self.shape}, {self.type}, 0)"
        body = " + ".join(f"({c})*[{T}]" for T, c in sorted(self.terms.items()))
        return f"HomElement({self.shape}, {self.type}, {body})"

    def to_json(self) -> dict:
        return {
            "shape": list(self.shape),
            "type": list(self.type),
            "terms": [{"tableau": str(T), "coeff": str(c)} for T, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_json(cls, data: dict, params: QParams) -> "HomElement":
        shape = check_partition(data["shape"])
        type_ = check_composition(data["type"])
        out: dict[TableauCounts, Scalar] = {}
        for term in data["terms"]:
            T = parse_tableau(term["tableau"], len(type_))
            c = params.parse(term["coeff"])
            out[T] = out[T] + c if T in out else c
        return cls(shape, type_, out)


def _add_into(acc: dict, key, c):
    if key in acc:
        v = acc[key] + c
        if v:
            acc[key] = v
        else:
            del acc[key]
    elif c:
        acc[key] = c


# ---------------------------------------------------------------------------
# h_{d,t} expansion

def _hdt_terms(rows: tuple, d: int, t: int, params: QParams) -> dict:
    lo, hi = d - 1, d  # value indices of d and d+1
    nrows = len(rows)
    caps = [r[hi] for r in rows]
    below = [0] * (nrows + 1)
    for j in range(nrows - 1, -1, -1):
        below[j] = below[j + 1] + rows[j][lo]
    out = {}
    for xs in bounded_compositions(t, caps):
        exp = 0
        coef = params.one
        new_rows = []
        for j, x in enumerate(xs):
            row = rows[j]
            if x:
                exp += below[j + 1] * x
                coef = coef * params.gauss(row[lo] + x, row[lo])
                if not coef:
                    break
                row = list(row)
                row[lo] += x
                row[hi] -= x
                row = tuple(row)
            new_rows.append(row)
        else:
            _add_into(out, TableauCounts._make(tuple(new_rows)), coef * params.q_pow(exp))
    return out


def apply_hdt(H: HomElement | TableauCounts, d: int, t: int, params: QParams) -> HomElement:
    """Theta(m_mu h_{d,t}) expressed over row-standard tableaux of type nu(d, t).

    Each term replaces t entries d+1 by d; the row-j factor is
    q^{T^d_{>j}(S^d_j - T^d_j)} gauss(S^d_j, T^d_j).  Output tableaux need not be
    semistandard.
    """
    if isinstance(H, TableauCounts):
        H = HomElement.theta(H, params)
    nu = nu_dt(H.type, d, t)
    acc: dict = {}
    for T, c in H.terms.items():
        for S, x in _hdt_terms(T.rows, d, t, params).items():
            _add_into(acc, S, c * x)
    return HomElement(H.shape, nu, acc, check=False)


# ---------------------------------------------------------------------------
# straightening

def _straighten_terms(rows: tuple, r: int, d: int, params: QParams) -> dict:
    top, bot = rows[r - 1], rows[r]
    di = d - 1
    s = bot[di]
    if s == 0:
        return {TableauCounts._make(rows): params.one}
    width = len(top)
    less = [0] * (width + 1)  # less[i] = S^{<i+1}_{r+1}
    for i in range(width):
        less[i + 1] = less[i] + bot[i]
    base = -comb(s + 1, 2) - s * less[di]
    sign = -1 if s % 2 else 1
    caps = [0 if i == di else top[i] for i in range(width)]
    out = {}
    for g in bounded_compositions(s, caps):
        exp = base + sum(g[:di])
        coef = params.one
        for i, gi in enumerate(g):
            if gi:
                exp += gi * less[i]
                coef = coef * params.gauss(bot[i] + gi, gi)
                if not coef:
                    break
        else:
            new_top = list(top)
            new_bot = list(bot)
            for i, gi in enumerate(g):
                new_top[i] -= gi
                new_bot[i] += gi
            new_top[di] += s
            new_bot[di] -= s
            new_rows = rows[: r - 1] + (tuple(new_top), tuple(new_bot)) + rows[r + 1:]
            _add_into(out, TableauCounts._make(new_rows), coef * params.q_pow(exp) * sign)
    return out


def straighten_once(S: TableauCounts, r: int, d: int, params: QParams) -> HomElement:
    """Rewrite Theta_S by moving every d of row r+1 up into row r.

    The result is a combination of Theta_{U_g} over the g of the relation: g
    moves g_i entries i != d from row r down to row r+1, with
    sum g_i = S^d_{r+1} and g_i <= S^i_r.
    """
    if not 1 <= r < len(S.rows):
        raise ValueError(f"need 1 <= r < {len(S.rows)}, got r={r}")
    if not 1 <= d <= S.nvalues:
        raise ValueError(f"need 1 <= d <= {S.nvalues}, got d={d}")
    return HomElement(S.shape, S.type, _straighten_terms(S.rows, r, d, params), check=False)


def weight(T: TableauCounts) -> int:
    """sum_{i,j} i*j*T^i_j; recorded per rewrite as an empirical monovariant."""
    return sum((j + 1) * (i + 1) * c for j, r in enumerate(T.rows) for i, c in enumerate(r))


class Eliminator:
    """Sparse exact Gauss-Jordan elimination kept in fully reduced form.

    Equations are dicts ``var -> coefficient``.  The pivot of a new equation is
    its smallest variable with a nonzero coefficient; pivot rows never contain
    another pivot variable.
    """

    def __init__(self):
        self.rows: dict[int, dict[int, Scalar]] = {}

    def reduce(self, eq: dict) -> dict:
        eq = dict(eq)
        for p in [v for v in eq if v in self.rows]:
            c = eq.get(p)
            if c:
                for v, x in self.rows[p].items():
                    _add_into(eq, v, -c * x)
        return eq

    def add(self, eq: dict) -> int | None:
        eq = self.reduce(eq)
        if not eq:
            return None
        p = min(eq)
        inv = eq[p].inverse()
        eq = {v: x * inv for v, x in eq.items()}
        for row in self.rows.values():
            c = row.get(p)
            if c:
                for v, x in eq.items():
                    _add_into(row, v, -c * x)
        self.rows[p] = eq
        return p

    @property
    def rank(self) -> int:
        return len(self.rows)


@dataclass
class StraightenStats:
    steps: int = 0
    rewrites: int = 0
    weight_increasing: int = 0  # rewrites where every output tableau has larger weight
    max_stack: int = 0
    cycles: int = 0
    space_solves: int = 0
    derived_used: int = 0


def _site_top(T):
    sites = column_violations(T)
    return sites[0] if sites else None


def _site_bottom(T):
    sites = column_violations(T)
    return max(sites) if sites else None


STRATEGIES = {"top": _site_top, "bottom": _site_bottom}


class _Cycle(Exception):
    pass


class Straightener:
    """Normal forms in the semistandard basis, memoized per tableau.

    ``strategy`` picks the rewrite site: ``"top"`` takes the topmost row and
    smallest value, ``"bottom"`` the bottommost row and largest value.

    Rewriting with a single relation per tableau can run in a circle (two
    tableaux whose relations coincide).  When that happens the whole space of
    row-standard tableaux of that shape and type is solved at once from all
    straightening relations, supplemented if necessary by the images under
    h_{d,t} of the straightening relations of the types one step finer.  A
    tableau that stays undetermined, or an exhausted step budget, raises
    :class:`StraighteningError`; a wrong answer is never returned.
    """

    def __init__(self, params: QParams, strategy: str = "top", budget: int = DEFAULT_BUDGET):
        if strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {strategy!r}")
        self.params = params
        self.strategy = strategy
        self._site = STRATEGIES[strategy]
        self.budget = budget
        self.cache: dict[TableauCounts, dict] = {}
        self.solved_spaces: set[tuple] = set()
        self.stats = StraightenStats()
        self._steps = 0

    def _tick(self, n=1):
        self._steps += n
        self.stats.steps += n
        if self._steps > self.budget:
            raise StraighteningError(f"straightening budget of {self.budget} steps exhausted")

    def normal_form(self, T: TableauCounts) -> dict:
        """Coordinates of Theta_T in the semistandard basis, as a dict."""
        hit = self.cache.get(T)
        if hit is not None:
            return hit
        space = (T.shape, T.type)
        if space not in self.solved_spaces:
            try:
                return self._rewrite(T)
            except _Cycle:
                self.stats.cycles += 1
            self._solve_space(*space)
        hit = self.cache.get(T)
        if hit is None:
            raise StraighteningError(f"straightening relations do not determine {T}")
        return hit

    def _rewrite(self, T):
        cache = self.cache
        params = self.params
        pending: dict[TableauCounts, dict] = {}
        stack = [T]
        while stack:
            S = stack[-1]
            if S in cache:
                stack.pop()
                continue
            exp = pending.get(S)
            if exp is None:
                site = self._site(S)
                if site is None:
                    cache[S] = {S: params.one}
                    stack.pop()
                    continue
                self._tick()
                exp = _straighten_terms(S.rows, site[0], site[1], params)
                self.stats.rewrites += 1
                w = weight(S)
                if all(weight(U) > w for U in exp):
                    self.stats.weight_increasing += 1
                pending[S] = exp
            missing = [U for U in exp if U not in cache]
            if missing:
                if any(U in pending for U in missing):
                    raise _Cycle
                stack.extend(missing)
                if len(stack) > self.stats.max_stack:
                    self.stats.max_stack = len(stack)
                continue
            acc: dict = {}
            for U, c in exp.items():
                for V, x in cache[U].items():
                    _add_into(acc, V, c * x)
            cache[S] = acc
            del pending[S]
            stack.pop()
        return cache[T]

    def _relations(self, shape, type_):
        """Every straightening relation Theta_S - sum c Theta_U = 0 of one space."""
        params = self.params
        for S in sorted(enumerate_row_standard(shape, type_), reverse=self.strategy == "bottom"):
            for r in range(1, len(shape)):
                for d in range(1, len(type_) + 1):
                    if S.rows[r][d - 1]:
                        self._tick()
                        rel = {S: params.one}
                        for U, c in _straighten_terms(S.rows, r, d, params).items():
                            _add_into(rel, U, -c)
                        if rel:
                            yield rel

    def _derived_relations(self, shape, type_):
        """h_{d,t}-images of the relations of the types nu' with nu'(d, t) = type_."""
        for d in range(1, len(type_)):
            for t in range(1, type_[d - 1] + 1):
                finer = list(type_)
                finer[d - 1] -= t
                finer[d] += t
                for rel in self._relations(shape, tuple(finer)):
                    image: dict = {}
                    for U, c in rel.items():
                        for S, x in _hdt_terms(U.rows, d, t, self.params).items():
                            _add_into(image, S, c * x)
                    if image:
                        yield image

    def _solve_space(self, shape, type_):
        # unknowns: non-semistandard tableaux without a cached normal form,
        # ordered before the semistandard basis so that they become pivots
        self.stats.space_solves += 1
        tableaux = enumerate_row_standard(shape, type_)
        self._tick(len(tableaux))
        basis = [T for T in tableaux if is_semistandard(T)]
        unknown = [T for T in tableaux if T not in self.cache and not is_semistandard(T)]
        order = unknown + basis
        index = {T: k for k, T in enumerate(order)}
        nunk = len(unknown)
        cache = self.cache
        elim = Eliminator()

        def feed(relations):
            for rel in relations:
                eq: dict = {}
                for U, c in rel.items():
                    k = index.get(U)
                    if k is not None:
                        _add_into(eq, k, c)
                    else:
                        for V, x in cache[U].items():
                            _add_into(eq, index[V], c * x)
                elim.add(eq)

        def determined():
            out = {}
            for k in range(nunk):
                row = elim.rows.get(k)
                if row is not None and all(v == k or v >= nunk for v in row):
                    out[k] = row
            return out

        feed(self._relations(shape, type_))
        found = determined()
        if len(found) < nunk:
            self.stats.derived_used += 1
            feed(self._derived_relations(shape, type_))
            found = determined()
        if any(k >= nunk for k in elim.rows):
            raise StraighteningError(f"straightening relations are inconsistent for shape {shape}, type {type_}")
        for k, row in found.items():
            nf: dict = {}
            for v, x in row.items():
                if v != k:
                    _add_into(nf, order[v], -x)
            cache[order[k]] = nf
        for T in basis:
            cache.setdefault(T, {T: self.params.one})
        self.solved_spaces.add((shape, type_))

    def normalize(self, H: HomElement) -> HomElement:
        self._steps = 0
        acc: dict = {}
        for T, c in H.terms.items():
            for V, x in self.normal_form(T).items():
                _add_into(acc, V, c * x)
        return HomElement(H.shape, H.type, acc, check=False)


def normalize(H: HomElement, params: QParams, strategy: str = "top", budget: int = DEFAULT_BUDGET,
              straightener: Straightener | None = None) -> HomElement:
    """Rewrite H until every tableau is semistandard."""
    if straightener is None:
        straightener = Straightener(params, strategy, budget)
    return straightener.normalize(H)


def is_zero(H: HomElement, params: QParams, straightener: Straightener | None = None) -> bool:
    return not normalize(H, params, straightener=straightener).terms


# ---------------------------------------------------------------------------
# constraints and kernel

def hdt_pairs(mu) -> list[tuple[int, int]]:
    return [(d, t) for d in range(1, len(mu)) for t in range(1, mu[d] + 1)]


@dataclass
class ConstraintMatrix:
    """Rows: T_0(lambda, mu).  Columns: (d, t, S) with S in T_0(lambda, nu(d, t)).

    ``entries[k]`` maps column positions to the nonzero entries of row k.
    """

    mu: tuple
    lam: tuple
    index: list[TableauCounts]
    columns: list[tuple[int, int, TableauCounts]]
    entries: list[dict[int, Scalar]]
    zero: Scalar

    def entry(self, row: int, col: int) -> Scalar:
        return self.entries[row].get(col, self.zero)

    @property
    def shape(self):
        return len(self.index), len(self.columns)


def build_constraints(mu, lam, params: QParams, straightener: Straightener | None = None) -> ConstraintMatrix:
    mu = check_partition(mu)
    lam = check_partition(lam)
    if sum(mu) != sum(lam):
        raise ValueError(f"|mu| = {sum(mu)} differs from |lambda| = {sum(lam)}")
    if straightener is None:
        straightener = Straightener(params)
    index = enumerate_semistandard(lam, mu)
    columns: list[tuple[int, int, TableauCounts]] = []
    col_of: dict[tuple[int, int, TableauCounts], int] = {}
    active = []
    for d, t in hdt_pairs(mu):
        targets = enumerate_semistandard(lam, nu_dt(mu, d, t))
        if not targets:
            continue
        active.append((d, t))
        for S in targets:
            col_of[(d, t, S)] = len(columns)
            columns.append((d, t, S))
    entries = []
    for T in index:
        row: dict[int, Scalar] = {}
        for d, t in active:
            image = straightener.normalize(apply_hdt(T, d, t, params))
            for S, c in image.terms.items():
                row[col_of[(d, t, S)]] = c
        entries.append(row)
    return ConstraintMatrix(mu, lam, index, columns, entries, params.zero)


@dataclass
class KernelResult:
    dimension: int
    basis: list[list[Scalar]]
    index: list[TableauCounts]
    mu: tuple = ()
    lam: tuple = ()

    def element(self, k: int) -> HomElement:
        """The k-th basis vector as a HomElement of type mu."""
        terms = {T: c for T, c in zip(self.index, self.basis[k]) if c}
        return HomElement(self.lam, self.mu, terms, check=False)

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "lambda": list(self.lam),
            "dimension": self.dimension,
            "index": [str(T) for T in self.index],
            "basis": [[str(c) for c in v] for v in self.basis],
        }


def left_kernel(entries: list[dict[int, Scalar]], ncols: int, one: Scalar, zero: Scalar) -> list[list[Scalar]]:
    """Basis of {x : sum_k x_k * row_k = 0} by exact Gauss-Jordan elimination.

    Each column gives the equation sum_k entries[k][col] x_k = 0.  Pivots are
    chosen as the first variable with a nonzero coefficient, equations are
    processed in column order, so the basis is reproducible.
    """
    nvars = len(entries)
    equations: list[dict[int, Scalar]] = [dict() for _ in range(ncols)]
    for k, row in enumerate(entries):
        for col, c in row.items():
            equations[col][k] = c
    elim = Eliminator()
    for eq in equations:
        if eq:
            elim.add(eq)
    basis = []
    for f in range(nvars):
        if f in elim.rows:
            continue
        vec = [zero] * nvars
        vec[f] = one
        for p, row in elim.rows.items():
            c = row.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis


def hom_dim(mu, lam, params: QParams, straightener: Straightener | None = None) -> KernelResult:
    """Dimension and basis of Psi(mu, lambda) = Hom(Delta(mu), Delta(lambda))."""
    M = build_constraints(mu, lam, params, straightener)
    basis = left_kernel(M.entries, len(M.columns), params.one, params.zero)
    log.info("hom_dim mu=%s lambda=%s: |T_0|=%d, %d columns, dimension %d",
             M.mu, M.lam, len(M.index), len(M.columns), len(basis))
    return KernelResult(len(basis), basis, M.index, M.mu, M.lam)


@dataclass
class MembershipReport:
    mu: tuple
    lam: tuple
    images: dict[tuple[int, int], HomElement] = field(default_factory=dict)

    @property
    def vanishing(self) -> dict[tuple[int, int], bool]:
        return {dt: not img.terms for dt, img in self.images.items()}

    @property
    def member(self) -> bool:
        return all(not img.terms for img in self.images.values())

    @property
    def failures(self) -> list[tuple[int, int]]:
        return [dt for dt, img in self.images.items() if img.terms]

    def to_json(self) -> dict:
        return {
            "mu": list(self.mu),
            "lambda": list(self.lam),
            "member": self.member,
            "constraints": [
                {"d": d, "t": t, "vanishes": not img.terms, "image": img.to_json()}
                for (d, t), img in self.images.items()
            ],
        }


def verify_membership(H: HomElement, mu, lam, params: QParams,
                      straightener: Straightener | None = None,
                      pairs: Iterable[tuple[int, int]] | None = None) -> MembershipReport:
    """Evaluate every constraint Theta(m_mu h_{d,t}) on H in the semistandard basis."""
    mu = check_partition(mu)
    lam = check_partition(lam)
    if (H.shape, H.type) != (lam, mu):
        raise ValueError(f"HomElement has shape {H.shape} and type {H.type}, expected {lam} and {mu}")
    bad = [T for T in H.terms if not is_semistandard(T)]
    if bad:
        raise ValueError(f"HomElement is not supported on semistandard tableaux: {bad[0]}")
    if straightener is None:
        straightener = Straightener(params)
    report = MembershipReport(mu, lam)
    for d, t in (pairs if pairs is not None else hdt_pairs(mu)):
        report.images[(d, t)] = straightener.normalize(apply_hdt(H, d, t, params))
    return report


def semistandard_support(mu, lam) -> list[TableauCounts]:
    return enumerate_semistandard(lam, mu) if dominates(lam, mu) else []
