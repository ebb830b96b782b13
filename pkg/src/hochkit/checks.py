"""Structural checks on a built pipeline, reported as named pass/fail items."""
from __future__ import annotations

from .atiyah import DecompositionMaps
from .bar import quotient_basis
from .gca import check_presentation, commutator
from .homology import (boundary_squares_to_zero, euler_characteristic, homology_dim, slice)
from .linalg import rank
from .resolvent import free_basis_check, in_ideal


def presentations_valid(M: DecompositionMaps) -> bool:
    algs = [M.R, M.env.S, M.env.S_f, M.B, M.omega.Omega, M.BOmega, M.C, M.H]
    return all(not check_presentation(a) for a in algs) and \
        not check_presentation(M.env.S, M.env.mu)


def resolvent_acyclic(M: DecompositionMaps) -> bool:
    """``H^{-k}(R) = 0`` for ``1 <= k <= N`` and ``H^0(R)_w = A_w`` for ``w <= W``."""
    res = M.resolvent
    q = quotient_basis(res.algebra, res.max_weight)
    for w in range(res.max_weight + 1):
        if homology_dim(M.R, 0, w) != q.dim(w):
            return False
        for k in range(1, res.max_degree + 1):
            if homology_dim(M.R, -k, w):
                return False
    return True


def phi_is_chain(M: DecompositionMaps) -> bool:
    S_f, B, phi = M.env.S_f, M.B, M.acyc.phi
    for v in M.R.variables:
        f = S_f.gen(f"f_{v.name}")
        if phi(S_f.d(f)) != B.d(phi(f)):
            return False
        if M.acyc.nu(phi(f)):
            return False
    return True


def atiyah_commutes_with_d(M: DecompositionMaps) -> bool:
    comm = commutator(M.BOmega.d, M.at)
    return all(not comm.value(i) for i in range(len(M.BOmega)))


def atiyah_kills_phi_s(M: DecompositionMaps) -> bool:
    S = M.env.S
    return all(not M.at(M.acyc.phi_S(S.gen(i))) for i in range(len(M.R), len(S)))


def models_are_complexes(M: DecompositionMaps) -> bool:
    res = M.resolvent
    for alg in (M.H, M.C):
        for n in range(res.max_degree + 1):
            for w in range(res.max_weight + 1):
                if not boundary_squares_to_zero(alg, -n - 1, w):
                    return False
    return True


def euler_characteristics(M: DecompositionMaps) -> bool:
    for alg in (M.H, M.C):
        for w in range(M.resolvent.max_weight + 1):
            a, b = euler_characteristic(alg, w)
            if a != b:
                return False
    return True


def pivot_orders_agree(M: DecompositionMaps) -> bool:
    res = M.resolvent
    for alg in (M.H, M.C, M.R):
        for n in range(res.max_degree + 2):
            for w in range(res.max_weight + 1):
                cols = slice(alg, -n, w).boundary
                if rank(cols) != rank(cols, reverse=True):
                    return False
    return True


def euler_phi_in_ideal(M: DecompositionMaps) -> bool:
    """``eps(phi(s))`` lies in ``phi(I) B`` for generators of I and their pairwise products."""
    S_f, acyc = M.env.S_f, M.acyc
    gens = [S_f.gen(f"f_{v.name}") for v in M.R.variables]
    samples = gens + [a * b for a in gens for b in gens if (a * b)]
    samples += [a * S_f.gen(v.name) for a in gens for v in M.R.variables]
    return all(in_ideal(acyc, acyc.epsilon(acyc.phi(s))) for s in samples)


def b_is_free(M: DecompositionMaps) -> bool:
    res = M.resolvent
    for n in range(res.max_degree + 1):
        for w in range(min(res.max_weight, 4) + 1):
            if not free_basis_check(M.acyc, -n, w):
                return False
    return True


FAST = {
    "presentations_valid": presentations_valid,
    "resolvent_acyclic": resolvent_acyclic,
    "phi_chain_map": phi_is_chain,
    "atiyah_commutes_with_d": atiyah_commutes_with_d,
    "atiyah_kills_phi_S": atiyah_kills_phi_s,
}

FULL = {
    **FAST,
    "models_square_zero": models_are_complexes,
    "euler_characteristics": euler_characteristics,
    "rank_pivot_orders_agree": pivot_orders_agree,
    "euler_phi_in_ideal": euler_phi_in_ideal,
    "B_free_over_S": b_is_free,
}


def run_checks(M: DecompositionMaps, level: str = "fast") -> list[dict]:
    table = FULL if level == "full" else FAST
    return [{"name": name, "passed": bool(fn(M))} for name, fn in table.items()]
