"""The explicit two-dimensional family of homomorphisms and the gluing construction.

For a >= b >= c+1 >= 4 the pair

    mu = (ae-3, be-3, ce-3, e-1, e-1),   lambda = ((a+2)e-5, be-3, ce-3)

carries two homomorphisms Theta and Phi with disjoint semistandard supports.
:func:`closed_form_h` evaluates the h_{d,t} action on the tableaux used to build
them through closed formulas; it is never called by the generic engine and
serves as an independent check of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .homcalc import HomElement
from .scalars import QParams
from .tableaux import (
    TableauCounts,
    bounded_compositions,
    check_partition,
    dominates,
    is_semistandard,
)


class ParameterError(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    a: int
    b: int
    c: int
    e: int

    def __post_init__(self):
        if not (self.a >= self.b >= self.c + 1 >= 4):
            raise ParameterError(f"need a >= b >= c+1 >= 4, got a={self.a}, b={self.b}, c={self.c}")
        if self.e < 2:
            raise ParameterError(f"need e >= 2, got e={self.e}")


def family_partitions(p: FamilyParams) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a, b, c, e = p.a, p.b, p.c, p.e
    mu = (a * e - 3, b * e - 3, c * e - 3, e - 1, e - 1)
    lam = ((a + 2) * e - 5, b * e - 3, c * e - 3)
    return mu, lam


def theta_tableau(p: FamilyParams) -> TableauCounts:
    a, b, c, e = p.a, p.b, p.c, p.e
    return TableauCounts([
        (a * e - 3, e - 1, e - 1, 0, 0),
        (0, (b - 1) * e - 2, e - 1, 0, 0),
        (0, 0, (c - 2) * e - 1, e - 1, e - 1),
    ])


def theta_element(p: FamilyParams, params: QParams) -> HomElement:
    return HomElement.theta(theta_tableau(p), params)


def phi_tableaux(p: FamilyParams) -> tuple[list[TableauCounts], list[TableauCounts]]:
    """The sets A and B: type-mu completions whose third row starts 3^((c-1)e-2), resp. 3^((c-1)e-1).

    The templates fix the 1s and 2s and the 3s of the third row; only the 3s,
    4s and 5s of the first two rows and the 4s and 5s of the third are free.
    """
    a, b, c, e = p.a, p.b, p.c, p.e
    mu, lam = family_partitions(p)
    fixed1, fixed2 = (a * e - 3, e - 1), (0, (b - 1) * e - 2)
    out = []
    for threes in ((c - 1) * e - 2, (c - 1) * e - 1):
        room = [lam[0] - sum(fixed1), lam[1] - sum(fixed2), lam[2] - threes]
        left = [mu[2] - threes, mu[3], mu[4]]
        found = []
        for r1 in bounded_compositions(room[0], left):
            rest = [x - y for x, y in zip(left, r1)]
            for r2 in bounded_compositions(room[1], rest):
                r3 = [x - y for x, y in zip(rest, r2)]
                if r3[0] or sum(r3) != room[2]:
                    continue
                T = TableauCounts([fixed1 + r1, fixed2 + r2, (0, 0, threes, r3[1], r3[2])])
                if is_semistandard(T):
                    found.append(T)
        out.append(sorted(found))
    return out[0], out[1]


def phi_element(p: FamilyParams, params: QParams) -> HomElement:
    """Phi = sum_{A} Theta_A - q sum_{B} Theta_B."""
    A, B = phi_tableaux(p)
    mu, lam = family_partitions(p)
    terms = {T: params.one for T in A}
    mq = -params.q
    for T in B:
        terms[T] = mq
    return HomElement(lam, mu, terms)


def is_special_form(T: TableauCounts, p: FamilyParams) -> bool:
    a, b, e = p.a, p.b, p.e
    mu, lam = family_partitions(p)
    if T.shape != lam or T.type != mu:
        return False
    r1, r2, r3 = T.rows
    return (r1[0] == a * e - 3 and r1[1] == e - 1 and r2[0] == 0 and r2[1] == (b - 1) * e - 2
            and r3[0] == 0 and r3[1] == 0 and is_semistandard(T))


def _change(rows, row, frm, to, k):
    rows = [list(r) for r in rows]
    rows[row][frm - 1] -= k
    rows[row][to - 1] += k
    return rows


def _exchange(rows, upper, value):
    """All ways of swapping the entries ``value`` of row upper+1 with other entries of row ``upper``."""
    top, bot = rows[upper], rows[upper + 1]
    k = bot[value - 1]
    caps = [0 if i == value - 1 else top[i] for i in range(len(top))]
    for g in bounded_compositions(k, caps):
        new_top = [x - y for x, y in zip(top, g)]
        new_bot = [x + y for x, y in zip(bot, g)]
        new_top[value - 1] += k
        new_bot[value - 1] -= k
        new = [list(r) for r in rows]
        new[upper], new[upper + 1] = new_top, new_bot
        yield TableauCounts(new)


def closed_form_h(T: TableauCounts, d: int, t: int, fam: FamilyParams, params: QParams) -> HomElement:
    """Theta_T(m_mu h_{d,t}) in the semistandard basis from the closed formulas.

    ``T`` must have the special form (first row 1^{ae-3} 2^{e-1} ..., second
    row 2^{(b-1)e-2} ..., third row without 1s and 2s).  Ranges: d in {3, 4}
    with 1 <= t <= e-1; d = 2 with 1 <= t <= mu_3 - 1 (zero once t > e-1);
    d = 1 with 1 <= t <= mu_2 - 1 (zero once t > 2e-2).
    """
    if not is_special_form(T, fam):
        raise ValueError(f"{T} is not of the special form for {fam}")
    if params.e != fam.e:
        raise ValueError(f"field has quantum characteristic {params.e}, family needs e={fam.e}")
    a, b, e = fam.a, fam.b, fam.e
    mu, lam = family_partitions(fam)
    gauss, qp = params.gauss, params.q_pow
    C = T.count
    out: dict[TableauCounts, object] = {}

    def emit(S, coef):
        if coef:
            out[S] = coef

    if d in (3, 4):
        if not 1 <= t <= e - 1:
            raise ValueError(f"d={d} needs 1 <= t <= {e - 1}")
        x = d  # entries x+1 become x
        for xs in bounded_compositions(t, [C(x + 1, j) for j in (1, 2, 3)]):
            rows = T.rows
            for j, k in enumerate(xs):
                rows = _change(rows, j, x + 1, x, k)
            S = TableauCounts(rows)
            s = S.count
            coef = (qp((C(x, 3) + C(x, 2)) * (s(x, 1) - C(x, 1))) * gauss(s(x, 1), C(x, 1))
                    * qp(C(x, 3) * (s(x, 2) - C(x, 2))) * gauss(s(x, 2), C(x, 2))
                    * gauss(s(x, 3), C(x, 3)))
            emit(S, coef)
        return HomElement(lam, _nu(mu, d, t), out)

    if d == 2:
        if not 1 <= t <= mu[2] - 1:
            raise ValueError(f"d=2 needs 1 <= t <= {mu[2] - 1}")
        if t > e - 1:
            return HomElement.zero(lam, _nu(mu, d, t))
        reached = set()
        for x2, x3 in bounded_compositions(t, [C(3, 2), C(3, 3)]):
            rows = _change(_change(T.rows, 1, 3, 2, x2), 2, 3, 2, x3)
            reached.update(_exchange(rows, 1, 2))
        for S in sorted(reached):
            s = S.count
            k = C(3, 3) - s(3, 3)
            coef = ((-1) ** k * qp(comb(k, 2) + s(3, 3) * t)
                    * gauss((b - 1) * e - 2 + t - C(3, 3), (b - 1) * e - 2 - s(3, 3))
                    * qp(C(4, 3) * (s(5, 3) - C(5, 3))) * gauss(s(4, 3), C(4, 3)) * gauss(s(5, 3), C(5, 3)))
            emit(S, coef)
        return HomElement(lam, _nu(mu, d, t), out)

    if d == 1:
        if not 1 <= t <= mu[1] - 1:
            raise ValueError(f"d=1 needs 1 <= t <= {mu[1] - 1}")
        if t > 2 * e - 2:
            return HomElement.zero(lam, _nu(mu, d, t))
        reached = set()
        for x1, x2 in bounded_compositions(t, [C(2, 1), C(2, 2)]):
            rows = _change(_change(T.rows, 0, 2, 1, x1), 1, 2, 1, x2)
            reached.update(_exchange(rows, 0, 1))
        T22 = (b - 1) * e - 2
        for S in sorted(reached):
            s = S.count
            k = T22 - s(2, 2)
            coef = ((-1) ** k * qp(comb(k, 2) + s(2, 2) * t)
                    * gauss((a - b + 1) * e - 1 + t, a * e - 3 - s(2, 2))
                    * qp(C(3, 2) * (s(4, 2) - C(4, 2))) * qp((C(3, 2) + C(4, 2)) * (s(5, 2) - C(5, 2)))
                    * gauss(s(3, 2), C(3, 2)) * gauss(s(4, 2), C(4, 2)) * gauss(s(5, 2), C(5, 2)))
            emit(S, coef)
        return HomElement(lam, _nu(mu, d, t), out)

    raise ValueError(f"closed forms exist for 1 <= d <= 4, got d={d}")


def closed_form_pairs(fam: FamilyParams) -> list[tuple[int, int]]:
    """Every (d, t) inside the ranges of the closed formulas."""
    mu, _ = family_partitions(fam)
    e = fam.e
    pairs = [(1, t) for t in range(1, mu[1])]
    pairs += [(2, t) for t in range(1, mu[2])]
    pairs += [(3, t) for t in range(1, e)]
    pairs += [(4, t) for t in range(1, e)]
    return pairs


def _nu(mu, d, t):
    nu = list(mu)
    nu[d - 1] += t
    nu[d] -= t
    return tuple(nu)


def glue(mu, lam) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Stack mu under a widened copy of mu, and lambda under a widened copy of lambda.

    alpha = (mu_1 + lam_1, ..., mu_a + lam_1, mu_1, ..., mu_a) and
    beta = (lam_1 + lam_1, ..., lam_a + lam_1, lam_1, ..., lam_b) with a = l(mu),
    b = l(lambda) and lam_i = 0 for i > b.
    """
    mu = check_partition(mu)
    lam = check_partition(lam)
    if sum(mu) != sum(lam) or not dominates(lam, mu):
        raise ParameterError(f"glue needs lambda {lam} to dominate mu {mu}")
    a = len(mu)
    l1 = lam[0]
    padded = list(lam) + [0] * (a - len(lam))
    alpha = tuple(x + l1 for x in mu) + mu
    beta = tuple(x + l1 for x in padded[:a]) + lam
    return check_partition(alpha), check_partition(beta)
