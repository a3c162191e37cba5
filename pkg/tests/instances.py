"""Randomized instance generation shared by the property and acceptance tests.

The sampling distribution follows the acceptance brief: n in {2, 3},
coefficients in Q(zeta_3) or Q(zeta_4), groups diagonal or
signed-permutation of order at most 6 acting compatibly with q, and
kappa supported on at most two group elements with entries drawn from
{0, +-1, +-1/2, zeta_N}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from qpbw import (
    GroupData,
    GroupTooLargeError,
    KappaMap,
    QMatrix,
    check_q_compatibility,
    close_group,
    cyclotomic_field,
    identity_matrix,
)


@dataclass
class Instance:
    q: QMatrix
    group: GroupData
    kappa: KappaMap
    label: str

    @property
    def n(self) -> int:
        return self.q.n


def diagonal_matrix(fld, entries):
    n = len(entries)
    return tuple(
        tuple(entries[a] if a == b else fld.zero for b in range(n)) for a in range(n)
    )


def signed_perm_matrix(fld, perm, signs):
    """Column b is signs[b] * e_{perm[b]}."""
    n = len(perm)
    rows = [[fld.zero] * n for _ in range(n)]
    for b in range(n):
        rows[perm[b]][b] = signs[b]
    return tuple(tuple(r) for r in rows)


def swap01(n):
    perm = list(range(n))
    perm[0], perm[1] = perm[1], perm[0]
    return perm


def sample_instance(rng: random.Random) -> Instance | None:
    """One attempt; None when the draw is rejected (too large, incompatible)."""
    order = rng.choice([3, 4])
    fld = cyclotomic_field(order)
    n = rng.choice([2, 3])
    roots = [fld.zeta(k) for k in range(order)]
    diag_pool = roots + [-r for r in roots]  # orders up to 6 in Q(zeta_3)

    kind = rng.choice(["trivial", "diag", "swap", "diagswap"])
    if kind == "trivial":
        gens = [identity_matrix(n, fld)]
    elif kind == "diag":
        gens = [diagonal_matrix(fld, [rng.choice(diag_pool) for _ in range(n)])]
    elif kind == "swap":
        signs = [rng.choice([fld.one, -fld.one]) for _ in range(n)]
        gens = [signed_perm_matrix(fld, swap01(n), signs)]
    else:
        gens = [
            diagonal_matrix(fld, [rng.choice([fld.one, -fld.one]) for _ in range(n)]),
            signed_perm_matrix(fld, swap01(n), [fld.one] * n),
        ]
    try:
        group = close_group(gens, max_order=8)
    except GroupTooLargeError:
        return None
    if group.order > 6:
        return None

    qvals = {}
    for i in range(n):
        for j in range(i + 1, n):
            qvals[(i, j)] = rng.choice(roots + [-fld.one])
    if kind in ("swap", "diagswap"):
        # q must be constant on index-pair orbits of the permutation part
        qvals[(0, 1)] = rng.choice([fld.one, -fld.one])
        if n == 3:
            qvals[(1, 2)] = qvals[(0, 2)]
    q = QMatrix.from_upper(n, fld, qvals)
    for g in group:
        if check_q_compatibility(g, q):
            return None

    pool = [fld.zero, fld.one, -fld.one, fld.scalar(Fraction(1, 2)),
            fld.scalar(Fraction(-1, 2)), fld.zeta()]
    support_size = rng.choice([0, 1, 1, 2])
    support = rng.sample(range(group.order), min(support_size, group.order))
    entries = {}
    for gid in support:
        pairs = {}
        for i in range(n):
            for j in range(i + 1, n):
                if rng.random() < 0.6:
                    const = rng.choice(pool)
                    lin = tuple(
                        rng.choice(pool) if rng.random() < 0.4 else fld.zero
                        for _ in range(n)
                    )
                    pairs[(i, j)] = (const, lin)
        if pairs:
            entries[gid] = pairs
    kappa = KappaMap(n, fld, entries)
    label = f"n={n} N={order} {kind} |G|={group.order} support={kappa.support}"
    return Instance(q, group, kappa, label)


def sample_pool(seed: int, count: int) -> list[Instance]:
    rng = random.Random(seed)
    pool = []
    while len(pool) < count:
        instance = sample_instance(rng)
        if instance is not None:
            pool.append(instance)
    return pool


def weyl_instance(rng: random.Random) -> Instance:
    """q == 1, trivial group, constant-only kappa: always PBW."""
    fld = cyclotomic_field(1)
    n = rng.choice([2, 3])
    q = QMatrix.from_upper(n, fld, {})
    group = close_group([identity_matrix(n, fld)])
    constants = [fld.scalar(c) for c in (-3, -1, 0, 1, 2, Fraction(1, 2))]
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            pairs[(i, j)] = (rng.choice(constants), (fld.zero,) * n)
    kappa = KappaMap(n, fld, {0: pairs})
    return Instance(q, group, kappa, f"weyl n={n}")


# -- single-coefficient perturbation ------------------------------------


def perturbation_slots(kappa: KappaMap) -> list[tuple[int, int, int, object]]:
    """Deterministic enumeration of +1 bumps over the stored grid.

    For an empty kappa the grid of the identity component is used, so a
    perturbation always exists.
    """
    gids = kappa.support or [0]
    slots = []
    for gid in gids:
        for i in range(kappa.n):
            for j in range(i + 1, kappa.n):
                slots.append((gid, i, j, "const"))
                for m in range(kappa.n):
                    slots.append((gid, i, j, m))
    return slots


def perturb(kappa: KappaMap, slot) -> KappaMap:
    gid, i, j, which = slot
    entries = kappa.as_entry_dict()
    pairs = entries.setdefault(gid, {})
    const, lin = pairs.get((i, j), (kappa.field.zero, (kappa.field.zero,) * kappa.n))
    if which == "const":
        const = const + 1
    else:
        lin = tuple(c + 1 if m == which else c for m, c in enumerate(lin))
    pairs[(i, j)] = (const, lin)
    return KappaMap(kappa.n, kappa.field, entries)
