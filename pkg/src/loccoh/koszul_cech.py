"""Koszul and Čech complexes on monomial sequences, and the cohomology tables they give.

Cohomological indexing throughout.  For generators g_1..g_m:

* the unstable Koszul complex K_s has, in index j, one free summand per
  j-subset S, generated in degree -s*g_S so that every map is degree
  preserving (g_S is the product of the generators in S);
* the stable Koszul complex K has, in index j, the localizations
  (R/J)[1/g_S] over j-subsets, with K^0 = R/J;
* the Čech complex is K with index 0 removed and everything shifted down
  by one: Č^j = K^(j+1).

Koszul signs: e_S -> sum over k not in S of (-1)^#{i in S, i < k} g_k e_(S+k).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .errors import ComputationError, EmptyIdeal, NotStabilized, RadicalsDiffer
from .linalg import ExactMatrix, Field, induced_map_rank, rank
from .monomials import Monomial, MonomialIdeal, RingSpec, krull_dim, monomial, radical
from .pieces import Cyclic, MapEntries, ModuleDescriptor, check_homogeneous, euler_characteristic, \
    map_matrix, stage_threshold
from .tables import CheckReport, DegreeBox, DegreeTable, map_degrees

IdealLike = Union[MonomialIdeal, Sequence[Sequence[int]]]


@dataclass(frozen=True)
class GradedComplex:
    """Cochain complex of ModuleDescriptors; ``differentials[k]`` maps term k to term k+1."""

    start: int
    terms: Tuple[ModuleDescriptor, ...]
    differentials: Tuple[MapEntries, ...]
    field: Field
    label: str = ""

    def __post_init__(self):
        if len(self.differentials) != max(len(self.terms) - 1, 0):
            raise ValueError("need one differential between each pair of adjacent terms")
        for k, d in enumerate(self.differentials):
            check_homogeneous(self.terms[k], self.terms[k + 1], d)

    @property
    def stop(self) -> int:
        return self.start + len(self.terms) - 1

    def present(self, a) -> List[List[int]]:
        return [t.present_indices(a) for t in self.terms]

    def dims(self, a) -> List[int]:
        return [len(p) for p in self.present(a)]

    def matrices(self, a, present=None) -> List[ExactMatrix]:
        if present is None:
            present = self.present(a)
        return [map_matrix(self.terms[k], self.terms[k + 1], d, a, self.field, check=False,
                           src_idx=present[k], tgt_idx=present[k + 1])
                for k, d in enumerate(self.differentials)]

    def cohomology(self, a, present=None, mats=None) -> List[int]:
        """dim H^i in degree a, listed from index ``start``."""
        if present is None:
            present = self.present(a)
        dims = [len(p) for p in present]
        if not any(dims):
            return [0] * len(dims)
        if mats is None:
            mats = self.matrices(a, present)
        ranks = [rank(m) for m in mats]
        out = []
        for k, n in enumerate(dims):
            r_out = ranks[k] if k < len(ranks) else 0
            r_in = ranks[k - 1] if k > 0 else 0
            out.append(n - r_out - r_in)
        return out

    def check_d_squared(self, a) -> bool:
        mats = self.matrices(a)
        return all((mats[k + 1] @ mats[k]).is_zero() for k in range(len(mats) - 1))

    def euler_check(self, a) -> bool:
        present = self.present(a)
        dims = [len(p) for p in present]
        return euler_characteristic(dims, self.start) == euler_characteristic(self.cohomology(a, present), self.start)


def _zero_map(rows: int, cols: int, field: Field) -> ExactMatrix:
    return ExactMatrix(rows, cols, field, {})


def complex_matrices(C: GradedComplex, a):
    """(present lists, differential matrices) with zero maps padded at both ends."""
    present = C.present(a)
    mats = C.matrices(a, present)
    return present, mats


def _normalize_gens(I: IdealLike, nvars: int) -> List[Monomial]:
    if isinstance(I, MonomialIdeal):
        gens = list(I.gens)
    else:
        gens = [monomial(g) for g in I]
    for g in gens:
        if len(g) != nvars:
            raise ValueError(f"generator {g} has wrong length")
        if any(e < 0 for e in g):
            raise ValueError(f"generator {g} has a negative exponent")
    if not gens:
        raise EmptyIdeal("the zero ideal has no Koszul or Čech complex")
    return gens


def _module_relations(ring: RingSpec, M) -> MonomialIdeal:
    if M is None:
        return ring.relations
    if isinstance(M, MonomialIdeal):
        extra = M
    else:
        extra = MonomialIdeal.of(M, ring.nvars) if len(M) else MonomialIdeal.zero(ring.nvars)
    return ring.relations + extra


def _subsets(m: int, j: int):
    return list(combinations(range(m), j))


def _koszul_sign(S, k) -> int:
    return -1 if sum(1 for i in S if i < k) % 2 else 1


def _sum_vec(gens, S, n) -> Monomial:
    return tuple(sum(gens[i][v] for i in S) for v in range(n))


def _koszul_diffs(m: int, coeff_mono, j_from: int, j_to: int):
    """Differentials between subset-indexed terms j_from..j_to."""
    diffs = []
    for j in range(j_from, j_to):
        src = _subsets(m, j)
        tgt = {S: i for i, S in enumerate(_subsets(m, j + 1))}
        d = {}
        for si, S in enumerate(src):
            for k in range(m):
                if k in S:
                    continue
                T = tuple(sorted(S + (k,)))
                d[(tgt[T], si)] = (_koszul_sign(S, k), coeff_mono(S, k))
        diffs.append(d)
    return diffs


def build_unstable_koszul(ring: RingSpec, gens: IdealLike, s: int, M=None) -> GradedComplex:
    """K_s(g_1..g_m) tensored with M = R/J, in indices 0..m."""
    if s < 1:
        raise ValueError("s must be positive")
    n = ring.nvars
    gens = _normalize_gens(gens, n)
    m = len(gens)
    J = _module_relations(ring, M)
    terms = []
    for j in range(m + 1):
        shifts = [tuple(-s * e for e in _sum_vec(gens, S, n)) for S in _subsets(m, j)]
        terms.append(ModuleDescriptor(n, J, tuple(Cyclic(sh) for sh in shifts)))
    diffs = _koszul_diffs(m, lambda S, k: tuple(s * e for e in gens[k]), 0, m)
    return GradedComplex(0, tuple(terms), tuple(diffs), ring.field, f"K_{s}")


def _stable_terms(ring, gens, J, j_from):
    n, m = ring.nvars, len(gens)
    terms = []
    for j in range(j_from, m + 1):
        summands = []
        for S in _subsets(m, j):
            if not S:
                summands.append(Cyclic((0,) * n))
            else:
                summands.append(Cyclic((0,) * n, _sum_vec(gens, S, n)))
        terms.append(ModuleDescriptor(n, J, tuple(summands)))
    return terms


def build_stable_koszul(ring: RingSpec, gens: IdealLike, M=None) -> GradedComplex:
    """K(g_1..g_m) tensored with M, indices 0..m (index 0 is M itself)."""
    n = ring.nvars
    gens = _normalize_gens(gens, n)
    m = len(gens)
    J = _module_relations(ring, M)
    terms = _stable_terms(ring, gens, J, 0)
    diffs = _koszul_diffs(m, lambda S, k: (0,) * n, 0, m)
    return GradedComplex(0, tuple(terms), tuple(diffs), ring.field, "K")


def build_cech(ring: RingSpec, gens: IdealLike, M=None) -> GradedComplex:
    """Čech complex tensored with M, indices 0..m-1."""
    n = ring.nvars
    gens = _normalize_gens(gens, n)
    m = len(gens)
    J = _module_relations(ring, M)
    terms = _stable_terms(ring, gens, J, 1)
    diffs = _koszul_diffs(m, lambda S, k: (0,) * n, 1, m)
    return GradedComplex(0, tuple(terms), tuple(diffs), ring.field, "Cech")


def koszul_transition(ring: RingSpec, gens: IdealLike, s: int) -> List[MapEntries]:
    """Chain map K_s -> K_(s+1): multiplication by g_S on the summand of subset S."""
    n = ring.nvars
    gens = _normalize_gens(gens, n)
    m = len(gens)
    out = []
    for j in range(m + 1):
        out.append({(i, i): (1, _sum_vec(gens, S, n)) for i, S in enumerate(_subsets(m, j))})
    return out


# -- tables ------------------------------------------------------------------

def _table_from(box: DegreeBox, C: GradedComplex, threads: int, label: str, meta=None) -> DegreeTable:
    rows = map_degrees(C.cohomology, box, threads)
    table = DegreeTable(box, (C.start, C.stop), label=label, meta=meta or {})
    for a, hs in zip(box, rows):
        for k, h in enumerate(hs):
            table.set(C.start + k, a, h)
    return table


def _as_box(box, n) -> DegreeBox:
    if isinstance(box, DegreeBox):
        return box
    if isinstance(box, int):
        return DegreeBox.cube(n, box)
    lo, hi = box
    return DegreeBox(tuple(lo), tuple(hi))


def local_cohomology(ring: RingSpec, I: IdealLike, M=None, box=4, threads: int = 1,
                     allow_zero_ideal: bool = False) -> DegreeTable:
    """dim H^i_I(M)_a for a in the box, from the stable Koszul (augmented Čech) complex.

    With ``allow_zero_ideal`` the zero ideal gets the convention H^0 = M.
    """
    box = _as_box(box, ring.nvars)
    if (isinstance(I, MonomialIdeal) and I.is_zero) or (not isinstance(I, MonomialIdeal) and not len(I)):
        if not allow_zero_ideal:
            raise EmptyIdeal("local cohomology at the zero ideal requested")
        J = _module_relations(ring, M)
        Mmod = ModuleDescriptor(ring.nvars, J, (Cyclic((0,) * ring.nvars),))
        table = DegreeTable(box, (0, 0), label="H_I (I = 0)")
        for a in box:
            table.set(0, a, Mmod.dim(a))
        return table
    C = build_stable_koszul(ring, I, M)
    return _table_from(box, C, threads, "local cohomology", {"route": "stable Koszul"})


def cech_cohomology(ring: RingSpec, I: IdealLike, M=None, box=4, threads: int = 1) -> DegreeTable:
    box = _as_box(box, ring.nvars)
    C = build_cech(ring, I, M)
    return _table_from(box, C, threads, "Cech cohomology")


def koszul_certified_stage(ring: RingSpec, gens: Sequence[Monomial], J: MonomialIdeal, a) -> int:
    """Stage past which K_s (x) M is literally constant in degree a, with identity transitions."""
    n, m = ring.nvars, len(gens)
    vecs = [_sum_vec(gens, S, n) for j in range(1, m + 1) for S in _subsets(m, j)]
    return stage_threshold(a, vecs, J)


def _ladder(complexes, transitions, a, field):
    """H dims per stage and per-transition iso flags in degree a."""
    data = []
    for C in complexes:
        present, mats = complex_matrices(C, a)
        data.append((present, mats, C.cohomology(a, present, mats)))
    isos = []
    for s in range(len(complexes) - 1):
        (p0, m0, h0), (p1, m1, h1) = data[s], data[s + 1]
        ok = True
        for k in range(len(h0)):
            if h0[k] != h1[k]:
                ok = False
                break
            if h0[k] == 0:
                continue
            f = map_matrix(complexes[s].terms[k], complexes[s + 1].terms[k], transitions[s][k], a,
                           field, check=False, src_idx=p0[k], tgt_idx=p1[k])
            src_in = m0[k - 1] if k > 0 else _zero_map(len(p0[k]), 0, field)
            src_out = m0[k] if k < len(m0) else _zero_map(0, len(p0[k]), field)
            tgt_in = m1[k - 1] if k > 0 else _zero_map(len(p1[k]), 0, field)
            if induced_map_rank(src_in, src_out, f, tgt_in) != h0[k]:
                ok = False
                break
        isos.append(ok)
    return [d[2] for d in data], isos


def _resolve_ladder(a, dims, isos, certified, limit, what):
    """Certified value and heuristic stage for one degree of a colimit ladder.

    Stages are 1-based: dims[s-1] belongs to stage s.  Returns
    (value, stable, heuristic_stage or None).
    """
    heuristic = None
    for s in range(1, limit - 1):
        if isos[s - 1] and isos[s]:
            heuristic = s
            break
    if certified <= limit:
        for s in range(certified, limit):
            if not isos[s - 1]:
                raise ComputationError(f"{what}: transition {s}->{s + 1} in degree {a} is not an "
                                       f"isomorphism past the certified stage {certified}")
        return dims[limit - 1], True, heuristic
    return dims[limit - 1], False, heuristic


def koszul_colimit_cohomology(ring: RingSpec, I: IdealLike, M=None, box=4, s_max: int = 6,
                              threads: int = 1, strict: bool = True) -> DegreeTable:
    """Colimit over s of H^*(K_s (x) M), degree by degree.

    A degree is declared stable once s_max reaches its certified stage: past
    that stage the complexes K_s (x) M agree in this degree and the
    transition maps are identities, so the colimit is attained.  Transition
    isomorphisms beyond the certified stage are recomputed and checked.  The
    bare "two consecutive isomorphisms" rule is recorded only as a diagnostic
    because it can fire early, e.g. for M = k[x]/(x^3) in degree -4.
    """
    if s_max < 2:
        raise ValueError("s_max must be at least 2")
    box = _as_box(box, ring.nvars)
    gens = _normalize_gens(I, ring.nvars)
    J = _module_relations(ring, M)
    complexes = [build_unstable_koszul(ring, gens, s, M) for s in range(1, s_max + 1)]
    transitions = [koszul_transition(ring, gens, s) for s in range(1, s_max)]

    def one(a):
        dims, isos = _ladder(complexes, transitions, a, ring.field)
        cert = koszul_certified_stage(ring, gens, J, a)
        return (cert,) + _resolve_ladder(a, dims, isos, cert, s_max, "Koszul colimit") + (dims,)

    rows = map_degrees(one, box, threads)
    table = DegreeTable(box, (0, len(gens)), label="Koszul colimit",
                        meta={"s_max": s_max})
    disagreements = []
    for a, (cert, value, stable, heur, dims) in zip(box, rows):
        for k, h in enumerate(value):
            table.set(k, a, h)
        if not stable:
            table.unstable.append(a)
        elif heur is not None and dims[heur + 1] != value:
            disagreements.append(list(a))
    table.meta["max_certified_stage"] = max(r[0] for r in rows)
    table.meta["heuristic_disagreements"] = disagreements
    if strict and table.unstable:
        raise NotStabilized(table.unstable)
    return table


# -- checks --------------------------------------------------------------------

def les_check(ring: RingSpec, I: IdealLike, M=None, box=4) -> CheckReport:
    """Exactness of 0 -> H^0 -> M -> CH^0 -> H^1 -> 0 and H^i = CH^(i-1), i >= 2, in every degree.

    Also checks Euler-characteristic conservation for both complexes.
    """
    box = _as_box(box, ring.nvars)
    K = build_stable_koszul(ring, I, M)
    C = build_cech(ring, I, M)
    rep = CheckReport("les-check")
    for a in box:
        rep.checked += 1
        pk, mk = complex_matrices(K, a)
        h = K.cohomology(a, pk, mk)
        ch = C.cohomology(a)
        dim_m = len(pk[0])
        r = rank(mk[0]) if mk else 0
        seq = [0, h[0], dim_m, ch[0] if ch else 0, h[1] if len(h) > 1 else 0, 0]
        if h[0] != dim_m - r:
            rep.fail(degree=list(a), reason="H^0 != ker(M -> CH^0)", sequence=seq)
        elif len(h) > 1 and h[1] != (ch[0] if ch else 0) - r:
            rep.fail(degree=list(a), reason="H^1 != coker(M -> CH^0)", sequence=seq)
        elif seq[1] - seq[2] + seq[3] - seq[4] != 0:
            rep.fail(degree=list(a), reason="alternating sum of four-term sequence", sequence=seq)
        else:
            for i in range(2, len(h)):
                if h[i] != ch[i - 1]:
                    rep.fail(degree=list(a), reason=f"H^{i} != CH^{i - 1}", values=[h[i], ch[i - 1]])
                    break
        if not K.euler_check(a) or not C.euler_check(a):
            rep.fail(degree=list(a), reason="Euler characteristic not conserved")
    return rep


def radical_invariance_check(ring: RingSpec, gens1: IdealLike, gens2: IdealLike, M=None, box=4) -> CheckReport:
    n = ring.nvars
    g1, g2 = _normalize_gens(gens1, n), _normalize_gens(gens2, n)
    r1, r2 = radical(MonomialIdeal(n, tuple(g1))), radical(MonomialIdeal(n, tuple(g2)))
    if r1 != r2:
        raise RadicalsDiffer(f"radicals {r1} and {r2} differ")
    t1 = local_cohomology(ring, g1, M, box)
    t2 = local_cohomology(ring, g2, M, box)
    rep = CheckReport("radical-check", checked=len(t1.box))
    rep.details["radical"] = r1.to_json()
    diff = t1.first_difference(t2)
    if diff is not None:
        (i, a), x, y = diff
        rep.fail(index=i, degree=list(a), first=x, second=y)
    return rep


def vanishing_report(ring: RingSpec, I: IdealLike, M=None, box=4, table: Optional[DegreeTable] = None) -> CheckReport:
    """Compare the nonvanishing range of H^*_I(M) in the box with Krull dimension.

    Depth is read off as the first index with a nonzero cell; when IM != M it
    must exist and not exceed the dimension.
    """
    n = ring.nvars
    gens = _normalize_gens(I, n)
    if table is None:
        table = local_cohomology(ring, gens, M, box)
    J = _module_relations(ring, M)
    d = krull_dim(RingSpec(n, ring.field, J))
    nz = table.nonzero_indices()
    depth = nz[0] if nz else None
    rep = CheckReport("vanishing", checked=len(table.box))
    rep.details.update({"computed_depth": depth, "krull_dim": d})
    for i in nz:
        if i > d:
            a, v = next(iter(sorted(table.nonzero(i).items())))
            rep.fail(reason=f"H^{i} nonzero above dimension {d}", index=i, degree=list(a), dim=v)
    module_nonzero = not J.is_unit
    proper = not any(not any(g) for g in gens)
    rep.details["IM_ne_M"] = module_nonzero and proper
    if module_nonzero and proper:
        if depth is None:
            rep.fail(reason="no nonvanishing local cohomology found in the box although IM != M")
        elif depth > d:
            rep.fail(reason="first nonvanishing index exceeds Krull dimension", index=depth)
    return rep
