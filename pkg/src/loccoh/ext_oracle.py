"""Local cohomology as colim_r Ext^i(S/I_r, M), via Taylor resolutions.

The cofinal system used by default is the Frobenius powers I_r = (g_1^r, ..., g_m^r):
they are cofinal with ordinary powers and keep the generator count at m, so
Taylor resolutions stay at 2^m terms for every r.

Everything is computed over the polynomial ring S; a module over
R = S/J0 is handed over as the S-module S/(J0 + J), which has the same local
cohomology.

Taylor conventions (homological): T_j has one free summand e_sigma per
j-subset sigma, generated in degree L_sigma = lcm of the generators in sigma,
with d e_sigma = sum_k (-1)^pos(k) (L_sigma / L_(sigma - k)) e_(sigma - k).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ComputationError, LiftFailed, NotStabilized, TooManyGenerators
from .koszul_cech import (GradedComplex, IdealLike, _as_box, _ladder, _module_relations,
                          _normalize_gens, _resolve_ladder, _table_from, complex_matrices)
from .linalg import ExactMatrix, Field, QQ, rank, solve
from .monomials import Monomial, MonomialIdeal, RingSpec, divides, mono_lcm
from .pieces import Cyclic, MapEntries, ModuleDescriptor, stage_threshold
from .tables import CheckReport, DegreeBox, DegreeTable, map_degrees

MAX_GENERATORS = 12


@dataclass(frozen=True)
class TaylorResolution:
    nvars: int
    gens: Tuple[Monomial, ...]
    subsets: Tuple[Tuple[Tuple[int, ...], ...], ...]   # subsets[j] lists the j-subsets
    lcms: Tuple[Tuple[Monomial, ...], ...]

    @property
    def length(self) -> int:
        return len(self.gens)

    def index(self, j: int) -> Dict[Tuple[int, ...], int]:
        return {S: i for i, S in enumerate(self.subsets[j])}

    def boundary(self, j: int) -> MapEntries:
        """d: T_j -> T_(j-1) as {(target, source): (sign, monomial)}."""
        tgt = self.index(j - 1)
        out = {}
        for si, S in enumerate(self.subsets[j]):
            L = self.lcms[j][si]
            for pos, k in enumerate(S):
                T = S[:pos] + S[pos + 1:]
                ti = tgt[T]
                out[(ti, si)] = (-1 if pos % 2 else 1,
                                 tuple(x - y for x, y in zip(L, self.lcms[j - 1][ti])))
        return out

    def present(self, j: int, b) -> List[int]:
        return [i for i, L in enumerate(self.lcms[j]) if divides(L, b)]

    def degree_matrix(self, j: int, b, field: Field = QQ) -> ExactMatrix:
        """d_j in degree b (the free pieces are 1-dimensional where L_sigma divides x^b)."""
        src, tgt = self.present(j, b), self.present(j - 1, b)
        col = {s: c for c, s in enumerate(src)}
        row = {t: r for r, t in enumerate(tgt)}
        ent = {}
        for (t, s), (c, _) in self.boundary(j).items():
            if t in row and s in col:
                ent[(row[t], col[s])] = c
        return ExactMatrix(len(tgt), len(src), field, ent)

    def homology(self, b, field: Field = QQ) -> List[int]:
        """dim H_j(T)_b for j = 0..m (H_0 should be (S/I)_b, the rest zero)."""
        dims = [len(self.present(j, b)) for j in range(self.length + 1)]
        ranks = [0] + [rank(self.degree_matrix(j, b, field)) for j in range(1, self.length + 1)] + [0]
        return [dims[j] - ranks[j] - ranks[j + 1] for j in range(self.length + 1)]

    def check_d_squared(self, b, field: Field = QQ) -> bool:
        for j in range(2, self.length + 1):
            if not (self.degree_matrix(j - 1, b, field) @ self.degree_matrix(j, b, field)).is_zero():
                return False
        return True


def _taylor(nvars: int, gens: Tuple[Monomial, ...]) -> TaylorResolution:
    m = len(gens)
    subsets, lcms = [], []
    for j in range(m + 1):
        subs = tuple(combinations(range(m), j))
        subsets.append(subs)
        lcms.append(tuple(mono_lcm([gens[i] for i in S], nvars) for S in subs))
    return TaylorResolution(nvars, gens, tuple(subsets), tuple(lcms))


_taylor_cached = lru_cache(maxsize=256)(_taylor)


def taylor_resolution(ring: RingSpec, I: IdealLike) -> TaylorResolution:
    """Taylor resolution of S/I on the given generators (not minimized when given as a list)."""
    gens = tuple(_normalize_gens(I, ring.nvars))
    if len(gens) > MAX_GENERATORS:
        raise TooManyGenerators(f"{len(gens)} generators; the Taylor complex would have 2^{len(gens)} terms")
    return _taylor_cached(ring.nvars, gens)


def quotient_power(gens: Sequence[Monomial], r: int, kind: str = "frobenius", nvars: Optional[int] = None):
    """Generators of the r-th member of the cofinal system."""
    if r < 1:
        raise ValueError("r must be positive")
    if kind == "frobenius":
        return tuple(tuple(r * e for e in g) for g in gens)
    if kind == "ordinary":
        n = nvars if nvars is not None else len(gens[0])
        return MonomialIdeal(n, tuple(gens)).__pow__(r).gens
    raise ValueError(f"unknown power kind {kind!r}")


def hom_complex(ring: RingSpec, T: TaylorResolution, M=None) -> GradedComplex:
    """Hom(T, M) as a cochain complex; the summand for sigma is M shifted by -L_sigma."""
    J = _module_relations(ring, M)
    n = ring.nvars
    terms = [ModuleDescriptor(n, J, tuple(Cyclic(tuple(-e for e in L)) for L in T.lcms[j]))
             for j in range(T.length + 1)]
    diffs = []
    for j in range(1, T.length + 1):
        # (delta phi)(e_sigma) = phi(d e_sigma): transpose of d
        diffs.append({(s, t): (c, mono) for (t, s), (c, mono) in T.boundary(j).items()})
    return GradedComplex(0, tuple(terms), tuple(diffs), ring.field, "Hom(T, M)")


def ext_dims(ring: RingSpec, I: IdealLike, r: int, M=None, box=4, i: Optional[int] = None,
             kind: str = "frobenius", threads: int = 1) -> DegreeTable:
    """dim Ext^i(S/I_r, M)_a on the box; all i when ``i`` is None."""
    box = _as_box(box, ring.nvars)
    gens = _normalize_gens(I, ring.nvars)
    T = taylor_resolution(ring, quotient_power(gens, r, kind, ring.nvars))
    table = _table_from(box, hom_complex(ring, T, M), threads, f"Ext(S/I_{r}, M)")
    if i is not None:
        table.cells = {i: table.cells.get(i, {})}
    return table


def lift_comparison(ring: RingSpec, big: TaylorResolution, small: TaylorResolution) -> List[MapEntries]:
    """Chain map big -> small over the identity of S, lifting S/I_big -> S/I_small.

    Solved generator by generator in degree L_sigma, free variables set to
    zero.  Requires I_big inside I_small.
    """
    field = ring.field
    f = [{(0, 0): (1, (0,) * ring.nvars)}]
    for j in range(1, min(big.length, small.length) + 1):
        fj: MapEntries = {}
        prev = f[j - 1]
        dbig = big.boundary(j)
        by_source: Dict[int, List[Tuple[int, object]]] = {}
        for (t, s), (c, _) in dbig.items():
            by_source.setdefault(s, []).append((t, c))
        prev_by_source: Dict[int, List[Tuple[int, object]]] = {}
        for (t, s), (c, _) in prev.items():
            prev_by_source.setdefault(s, []).append((t, c))
        for si, b in enumerate(big.lcms[j]):
            tgt_rows = small.present(j - 1, b)
            cols = small.present(j, b)
            row = {t: k for k, t in enumerate(tgt_rows)}
            rhs = [field.zero] * len(tgt_rows)
            for t_big, c in by_source.get(si, []):
                for t_small, c2 in prev_by_source.get(t_big, []):
                    if t_small not in row:
                        raise LiftFailed(f"component outside degree {b}")
                    k = row[t_small]
                    rhs[k] = field.add(rhs[k], field.mul(field(c), field(c2)))
            if not any(rhs):
                continue
            D = small.degree_matrix(j, b, field)
            x = solve(D, rhs)
            if x is None:
                raise LiftFailed(f"no lift for generator {big.subsets[j][si]} in homological degree {j}")
            for k, val in enumerate(x):
                if val:
                    ti = cols[k]
                    fj[(ti, si)] = (val, tuple(p - q for p, q in zip(b, small.lcms[j][ti])))
        f.append(fj)
    for j in range(len(f), big.length + 1):
        f.append({})
    return f


def diagonal_comparison(ring: RingSpec, r: int, gens) -> List[MapEntries]:
    """The explicit lift e_sigma -> x^(L_sigma) e_sigma between consecutive Frobenius stages."""
    T = _taylor(ring.nvars, tuple(gens))
    return [{(i, i): (1, L) for i, L in enumerate(T.lcms[j])} for j in range(T.length + 1)]


def _induced_on_hom(f: List[MapEntries]) -> List[MapEntries]:
    # phi -> phi o f_j; Hom summands are indexed like the resolution summands
    return [{(s, t): (c, mono) for (t, s), (c, mono) in fj.items()} for fj in f]


def colimit_maps(ring: RingSpec, I: IdealLike, r: int, M=None, kind: str = "frobenius",
                 lift: str = "solve"):
    """(Hom(T_r, M), Hom(T_(r+1), M), induced cochain map) for the transition r -> r+1."""
    gens = _normalize_gens(I, ring.nvars)
    Ts = taylor_resolution(ring, quotient_power(gens, r, kind, ring.nvars))
    Tb = taylor_resolution(ring, quotient_power(gens, r + 1, kind, ring.nvars))
    if lift == "diagonal":
        if kind != "frobenius":
            raise ValueError("the diagonal lift only exists between Frobenius powers")
        f = diagonal_comparison(ring, r, gens)
    else:
        f = lift_comparison(ring, Tb, Ts)
    return hom_complex(ring, Ts, M), hom_complex(ring, Tb, M), _induced_on_hom(f)


def colimit_map_ranks(ring: RingSpec, I: IdealLike, r: int, a, M=None, kind: str = "frobenius",
                      lift: str = "solve") -> Tuple[List[int], List[int], List[bool]]:
    """Ext dims at r and r+1 in degree a, and per-index iso flags of the transition."""
    Hs, Hb, f = colimit_maps(ring, I, r, M, kind, lift)
    dims, isos = _ladder_with_flags([Hs, Hb], [f], a, ring.field)
    return dims[0], dims[1], isos


def _ladder_with_flags(complexes, transitions, a, field):
    from .koszul_cech import _zero_map
    from .linalg import induced_map_rank
    from .pieces import map_matrix
    data = []
    for C in complexes:
        present, mats = complex_matrices(C, a)
        data.append((present, mats, C.cohomology(a, present, mats)))
    flags = []
    (p0, m0, h0), (p1, m1, h1) = data
    for k in range(max(len(h0), len(h1))):
        a0 = h0[k] if k < len(h0) else 0
        a1 = h1[k] if k < len(h1) else 0
        if a0 != a1:
            flags.append(False)
            continue
        if a0 == 0:
            flags.append(True)
            continue
        fm = map_matrix(complexes[0].terms[k], complexes[1].terms[k], transitions[0][k], a, field,
                        check=False, src_idx=p0[k], tgt_idx=p1[k])
        src_in = m0[k - 1] if k > 0 else _zero_map(len(p0[k]), 0, field)
        src_out = m0[k] if k < len(m0) else _zero_map(0, len(p0[k]), field)
        tgt_in = m1[k - 1] if k > 0 else _zero_map(len(p1[k]), 0, field)
        flags.append(induced_map_rank(src_in, src_out, fm, tgt_in) == h0[k])
    return [d[2] for d in data], flags


def ext_certified_stage(ring: RingSpec, gens, J: MonomialIdeal, a) -> int:
    """Stage past which Hom(T_r, M)_a is constant and the diagonal transitions are identities."""
    T = _taylor(ring.nvars, tuple(gens))
    vecs = [L for j in range(1, T.length + 1) for L in T.lcms[j]]
    return stage_threshold(a, vecs, J)


def stable_ext(ring: RingSpec, I: IdealLike, M=None, box=4, r_max: int = 6, i: Optional[int] = None,
               kind: str = "frobenius", threads: int = 1, strict: bool = True) -> DegreeTable:
    """colim_r Ext^i(S/I_r, M) on the box.

    With Frobenius powers a degree is stable once r_max reaches its certified
    stage; transitions from there to r_max are recomputed from solved lifts
    and checked to be isomorphisms.  With ordinary powers no certificate is
    available and the table records the last stage together with the
    stage at which two consecutive isomorphisms were first seen.
    """
    if r_max < 3:
        raise ValueError("r_max must be at least 3")
    box = _as_box(box, ring.nvars)
    gens = _normalize_gens(I, ring.nvars)
    J = _module_relations(ring, M)
    stages = [taylor_resolution(ring, quotient_power(gens, r, kind, ring.nvars)) for r in range(1, r_max + 1)]
    complexes = [hom_complex(ring, T, M) for T in stages]
    transitions = [_induced_on_hom(lift_comparison(ring, stages[r + 1], stages[r])) for r in range(r_max - 1)]
    # pad transitions of differing length (ordinary powers change the generator count)
    for t, (A, B) in zip(transitions, zip(complexes, complexes[1:])):
        while len(t) < min(len(A.terms), len(B.terms)):
            t.append({})
    m = len(gens)

    def one(a):
        if kind == "frobenius":
            dims, isos = _ladder(complexes, transitions, a, ring.field)
            cert = ext_certified_stage(ring, gens, J, a)
            return (cert,) + _resolve_ladder(a, dims, isos, cert, r_max, "Ext colimit") + (dims,)
        dims, isos = [], []
        for r in range(r_max - 1):
            d0, flags = _ladder_with_flags([complexes[r], complexes[r + 1]], [transitions[r]], a, ring.field)
            if not dims:
                dims.append(d0[0])
            dims.append(d0[1])
            isos.append(all(flags))
        value, stable, heur = dims[-1], False, None
        for s in range(1, r_max - 1):
            if isos[s - 1] and isos[s]:
                heur, stable = s, True
                break
        return (None, value, stable, heur, dims)

    rows = map_degrees(one, box, threads)
    hi = max(len(C.terms) for C in complexes) - 1
    table = DegreeTable(box, (0, hi if kind != "frobenius" else m), label="stable Ext",
                        meta={"r_max": r_max, "powers": kind, "certified": kind == "frobenius"})
    disagreements = []
    for a, (cert, value, stable, heur, dims) in zip(box, rows):
        for k, h in enumerate(value):
            table.set(k, a, h)
        if not stable:
            table.unstable.append(a)
        elif kind == "frobenius" and heur is not None and dims[heur + 1] != value:
            disagreements.append(list(a))
    if kind == "frobenius":
        table.meta["max_certified_stage"] = max(r[0] for r in rows)
        table.meta["heuristic_disagreements"] = disagreements
    if i is not None:
        table.cells = {i: table.cells.get(i, {})}
    if strict and table.unstable:
        raise NotStabilized(table.unstable)
    return table


def compare_oracles(ring: RingSpec, I: IdealLike, M=None, box=4, s_max: int = 6, r_max: int = 6,
                    threads: int = 1) -> CheckReport:
    """Cellwise agreement of the Čech, Koszul-colimit and Ext-colimit tables."""
    from .koszul_cech import koszul_colimit_cohomology, local_cohomology
    box = _as_box(box, ring.nvars)
    tables = {
        "local_cohomology": local_cohomology(ring, I, M, box, threads),
        "koszul_colimit": koszul_colimit_cohomology(ring, I, M, box, s_max, threads),
        "stable_ext": stable_ext(ring, I, M, box, r_max, threads=threads),
    }
    rep = CheckReport("oracle-compare", checked=len(box))
    base = tables["local_cohomology"]
    for name in ("koszul_colimit", "stable_ext"):
        diff = base.first_difference(tables[name])
        if diff is not None:
            (i, a), x, y = diff
            rep.fail(oracle=name, index=i, degree=list(a), local_cohomology=x, other=y)
    rep.details["tables"] = tables
    return rep
