"""Chain complexes of chain bimodules, their homology, relative homology and the long exact sequence.

Complexes are stored degree-wise as free modules with explicit boundary
matrices and one action matrix per basis 1-morphism on each side, so the
absolute, extended and relative complexes share one representation.
Homology is reported only up to degree ``top - 1``, where ``top`` is the
truncation dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .bimod import (ChainBimodule, SubBimodule, chain_bimodule, submodule_generated,
                    transfer_domain, transfer_map)
from .exactlin import (CoefficientRing, ExactLinError, LinearSolver, Matrix, ModuleMorphism, NotContained,
                       PresentedModule, Subquotient, ZZ, induced_map_on_subquotients, is_exact_at,
                       kernel_basis, same_span, snf)
from .nualg import Algebra, AlgebraElement, induced_algebra_morphism, path_algebra
from .scat import EnrichedCategory, EnrichedFunctor, TruncationError, full_subcategory


class HomologyError(ValueError):
    pass


class NotAChainMap(HomologyError):
    pass


def boundary_matrix(C: EnrichedCategory, n: int, ring: CoefficientRing = ZZ) -> Matrix:
    """``d_n(s) = sum_j (-1)^j d_j s`` from ``C_n`` to ``C_{n-1}``."""
    if n < 1 or n > C.dim:
        raise TruncationError(f"boundary d_{n} needs 1 <= n <= {C.dim}")
    rows = [x for _, _, x in C.simplices(n - 1)]
    ridx = {x: i for i, x in enumerate(rows)}
    cols = []
    for a, b, x in C.simplices(n):
        col = [ring.zero] * len(rows)
        faces = C.hom(a, b).faces[x]
        for j, y in enumerate(faces):
            col[ridx[y]] += 1 if j % 2 == 0 else -1
        cols.append([ring.reduce(v) for v in col])
    return Matrix.from_columns(ring, cols, len(rows))


class ChainComplex:
    """Free modules ``C_0 .. C_top`` with boundaries and per-degree action matrices."""

    def __init__(self, ring: CoefficientRing, algebra: Algebra, labels: Sequence[tuple],
                 boundaries: Mapping[int, Matrix], left: Sequence[Mapping[str, Matrix]],
                 right: Sequence[Mapping[str, Matrix]], name: str = ""):
        self.ring = ring
        self.algebra = algebra
        self.labels = [tuple(l) for l in labels]
        self.top = len(self.labels) - 1
        self.boundaries = dict(boundaries)
        self.left = [dict(m) for m in left]
        self.right = [dict(m) for m in right]
        self.name = name
        self._homology = {}
        for n in range(1, self.top + 1):
            d = self.boundaries.get(n)
            if d is None or d.shape != (self.rank(n - 1), self.rank(n)):
                raise HomologyError(f"boundary d_{n} missing or of the wrong shape")

    def rank(self, n: int) -> int:
        return len(self.labels[n])

    def d(self, n: int) -> Matrix:
        """``d_n``; ``d_0`` is the zero map to the zero module."""
        if n == 0:
            return Matrix.zeros(self.ring, 0, self.rank(0))
        if n > self.top:
            raise TruncationError(f"d_{n} exceeds the truncation {self.top}")
        return self.boundaries[n]

    def action(self, side: str, f: str, n: int) -> Matrix:
        mats = (self.left if side == "left" else self.right)[n]
        m = mats.get(f)
        return m if m is not None else Matrix.zeros(self.ring, self.rank(n), self.rank(n))

    def action_of(self, side: str, a: AlgebraElement, n: int) -> Matrix:
        out = Matrix.zeros(self.ring, self.rank(n), self.rank(n))
        for b, c in a.coeffs.items():
            out = out + self.action(side, b, n).scale(c)
        return out

    def dd_failures(self) -> list:
        return [n for n in range(2, self.top + 1) if not (self.d(n - 1) @ self.d(n)).is_zero()]

    def equivariance_failures(self) -> list:
        bad = []
        for n in range(1, self.top + 1):
            d = self.d(n)
            for side in ("left", "right"):
                for f in self.algebra.basis:
                    if d @ self.action(side, f, n) != self.action(side, f, n - 1) @ d:
                        bad.append((n, side, f))
        return bad

    def homology(self, n: int) -> "HomologyBimodule":
        if n < 0 or n > self.top - 1:
            raise TruncationError(f"H_{n} needs d_{n + 1}; truncation is {self.top}")
        if n not in self._homology:
            self._homology[n] = HomologyBimodule(self, n)
        return self._homology[n]


class CategoryComplex(ChainComplex):
    """The unnormalised chain complex of an enriched category."""

    def __init__(self, category: EnrichedCategory, ring: CoefficientRing = ZZ, algebra: Optional[Algebra] = None):
        A = algebra if algebra is not None else path_algebra(category, ring)
        self.category = category
        self.modules = [chain_bimodule(category, n, ring, A) for n in range(category.dim + 1)]
        super().__init__(ring, A, [M.labels for M in self.modules],
                         {n: boundary_matrix(category, n, ring) for n in range(1, category.dim + 1)},
                         [M.left for M in self.modules], [M.right for M in self.modules],
                         name=category.name)


def chain_complex(C: EnrichedCategory, ring: CoefficientRing = ZZ, algebra: Optional[Algebra] = None) -> CategoryComplex:
    return CategoryComplex(C, ring, algebra)


@dataclass
class EquivarianceReport:
    failures: list
    dd_failures: list

    @property
    def ok(self) -> bool:
        return not self.failures and not self.dd_failures


def verify_boundary_equivariance(complex: ChainComplex) -> EquivarianceReport:
    return EquivarianceReport(complex.equivariance_failures(), complex.dd_failures())


class HomologyBimodule:
    """``ker d_n / im d_{n+1}`` with the actions induced by every basis 1-morphism."""

    def __init__(self, complex: ChainComplex, n: int):
        self.complex = complex
        self.degree = n
        cycles = kernel_basis(complex.d(n))
        self.module = Subquotient(cycles, complex.d(n + 1))
        self.left = {}
        self.right = {}
        for side, store in (("left", self.left), ("right", self.right)):
            for f in complex.algebra.basis:
                try:
                    store[f] = induced_map_on_subquotients(complex.action(side, f, n), self.module, self.module)
                except (NotContained, ExactLinError) as exc:
                    raise HomologyError(f"{side} action of {f!r} is not well defined on H_{n}: {exc}") from None

    @property
    def free_rank(self) -> int:
        return self.module.free_rank

    @property
    def invariant_factors(self) -> tuple:
        return self.module.invariant_factors

    def is_zero(self) -> bool:
        return self.module.is_zero()

    def describe(self) -> str:
        return self.module.describe()

    def representatives(self) -> Matrix:
        return self.module.representatives()

    def class_of(self, cycle: Sequence) -> tuple:
        return self.module.class_of(cycle)

    def same_class(self, u: Sequence, v: Sequence) -> bool:
        return self.class_of(u) == self.class_of(v)

    def action_matrix(self, side: str, f: str) -> Matrix:
        return (self.left if side == "left" else self.right)[f].canonical_matrix

    def action_morphism(self, side: str, a: AlgebraElement) -> ModuleMorphism:
        m = self.module
        return ModuleMorphism(m, m, _combine(m, (self.left if side == "left" else self.right), a))

    def axiom_failures(self) -> list:
        """Associativity of the induced actions and commutation of the two sides."""
        A = self.complex.algebra
        bad = []
        for x in A.basis:
            for y in A.basis:
                xy = A.multiply_basis(x, y)
                if not (self.left[x] @ self.left[y]).equals(self.action_morphism("left", xy)):
                    bad.append(("left", x, y))
                if not (self.right[y] @ self.right[x]).equals(self.action_morphism("right", xy)):
                    bad.append(("right", x, y))
                if not (self.left[x] @ self.right[y]).equals(self.right[y] @ self.left[x]):
                    bad.append(("commute", x, y))
        return bad

    def to_dict(self) -> dict:
        tj = self.complex.ring.to_json
        reps = self.representatives()
        labels = self.complex.labels[self.degree]
        gens = []
        for c in reps.columns():
            gens.append({labels[i]: tj(v) for i, v in enumerate(c) if v})
        return {
            "degree": self.degree,
            "free_rank": self.free_rank,
            "invariant_factors": [tj(d) for d in self.invariant_factors],
            "description": self.describe(),
            "generators": gens,
            "left_action": {f: self.action_matrix("left", f).to_json() for f in self.complex.algebra.basis},
            "right_action": {f: self.action_matrix("right", f).to_json() for f in self.complex.algebra.basis},
        }


def _combine(module: PresentedModule, store: Mapping[str, ModuleMorphism], a: AlgebraElement) -> Matrix:
    k = module.generator_count
    out = Matrix.zeros(module.ring, k, k)
    for b, c in a.coeffs.items():
        out = out + store[b].matrix.scale(c)
    return out


def homology(complex: ChainComplex, n: int) -> HomologyBimodule:
    return complex.homology(n)


# -- functoriality -----------------------------------------------------

def chain_map_matrix(F: EnrichedFunctor, src: CategoryComplex, tgt: CategoryComplex, n: int) -> Matrix:
    ring = src.ring
    tidx = {x: i for i, x in enumerate(tgt.labels[n])}
    cols = []
    for x in src.labels[n]:
        col = [ring.zero] * tgt.rank(n)
        col[tidx[F(x)]] = ring.one
        cols.append(col)
    return Matrix.from_columns(ring, cols, tgt.rank(n))


def induced_map(F: EnrichedFunctor, src: CategoryComplex, tgt: CategoryComplex, n: int) -> ModuleMorphism:
    """``H_n(F)``, after checking that ``F`` commutes with the boundaries around degree ``n``."""
    for k in (n, n + 1):
        if 1 <= k <= min(src.top, tgt.top):
            lhs = tgt.d(k) @ chain_map_matrix(F, src, tgt, k)
            rhs = chain_map_matrix(F, src, tgt, k - 1) @ src.d(k)
            if lhs != rhs:
                raise NotAChainMap(f"functor does not commute with d_{k}")
    return induced_map_on_subquotients(chain_map_matrix(F, src, tgt, n), src.homology(n).module,
                                       tgt.homology(n).module)


def actions_conjugate(F: EnrichedFunctor, src: CategoryComplex, tgt: CategoryComplex, n: int,
                      phi: Optional[ModuleMorphism] = None) -> bool:
    """``phi . f = F(f) . phi`` on ``H_n`` for every basis 1-morphism, on both sides."""
    phi = phi or induced_map(F, src, tgt, n)
    Hs, Ht = src.homology(n), tgt.homology(n)
    for f in src.algebra.basis:
        Ff = F(f)
        if not (phi @ Hs.left[f]).equals(Ht.left[Ff] @ phi):
            return False
        if not (phi @ Hs.right[f]).equals(Ht.right[Ff] @ phi):
            return False
    return True


@dataclass
class InducedEquivarianceReport:
    checked: int
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_induced_equivariance(F: EnrichedFunctor, src: CategoryComplex, tgt: CategoryComplex, n: int,
                               samples: Sequence[tuple]) -> InducedEquivarianceReport:
    """``H(F)(a . u . b) = F(a) . H(F)(u) . F(b)`` for sampled ``(a, cycle, b)``."""
    g = induced_algebra_morphism(F, src.ring, src.algebra, tgt.algebra)
    fmat = chain_map_matrix(F, src, tgt, n)
    Ht = tgt.homology(n)
    fails = []
    for i, (a, u, b) in enumerate(samples):
        moved = src.action_of("left", a, n) @ (src.action_of("right", b, n) @ tuple(u))
        lhs = Ht.class_of(fmat @ moved)
        image = fmat @ tuple(u)
        rhs = Ht.class_of(tgt.action_of("left", g(a), n) @ (tgt.action_of("right", g(b), n) @ image))
        if lhs != rhs:
            fails.append(i)
    return InducedEquivarianceReport(len(samples), fails)


# -- relative homology -------------------------------------------------

def extended_chains(S: EnrichedCategory, T: EnrichedCategory, n: int, ring: CoefficientRing = ZZ,
                    chains: Optional[ChainBimodule] = None, inclusion: Optional[EnrichedFunctor] = None) -> SubBimodule:
    """Sub-bimodule of ``C_n(S)`` generated by the ``n``-simplices of ``T``."""
    CS = chains if chains is not None else chain_bimodule(S, n, ring)
    ids = [inclusion(x) if inclusion else x for _, _, x in T.simplices(n)]
    missing = [x for x in ids if x not in CS.index]
    if missing:
        raise HomologyError(f"T is not a subcategory of S: unknown simplices {missing[:3]}")
    return submodule_generated(CS, [CS.generator(x) for x in ids])


def _saturated_split(B: Matrix, k: int, ring: CoefficientRing):
    """Projection ``p`` with kernel ``span(B)`` and a section ``s`` with ``p s = 1``."""
    if B.ncols == 0:
        ident = Matrix.identity(ring, k)
        return ident, ident
    s = snf(B)
    if any(not ring.is_unit(d) for d in s.diagonal):
        raise HomologyError("extended chains are not a direct summand; the quotient has torsion")
    r = s.rank
    p = s.U.take_rows(range(r, k))
    lift = s.Uinv.take_columns(range(r, k))
    return p, lift


class RelativeComplex:
    """The short exact sequence ``0 -> C^S(T) -> C(S) -> C(S)/C^S(T) -> 0``."""

    def __init__(self, S: EnrichedCategory, T: EnrichedCategory, ring: CoefficientRing = ZZ,
                 inclusion: Optional[EnrichedFunctor] = None, ambient: Optional[CategoryComplex] = None):
        self.S, self.T, self.ring = S, T, ring
        self.ambient = ambient if ambient is not None else CategoryComplex(S, ring)
        amb = self.ambient
        A = amb.algebra
        top = amb.top
        self.subs = [extended_chains(S, T, n, ring, amb.modules[n], inclusion) for n in range(top + 1)]
        self.B = [sub.basis for sub in self.subs]
        self.p, self.lift = [], []
        for n in range(top + 1):
            p, lift = _saturated_split(self.B[n], amb.rank(n), ring)
            self.p.append(p)
            self.lift.append(lift)
        ext_bd, quo_bd = {}, {}
        for n in range(1, top + 1):
            img = amb.d(n) @ self.B[n]
            try:
                ext_bd[n] = LinearSolver(self.B[n - 1]).solve_matrix(img) if self.B[n - 1].ncols else \
                    Matrix.zeros(ring, 0, self.B[n].ncols)
            except NotContained:
                raise HomologyError(f"boundary does not preserve extended chains in degree {n}") from None
            if self.B[n - 1].ncols == 0 and not img.is_zero():
                raise HomologyError(f"boundary does not preserve extended chains in degree {n}")
            quo_bd[n] = self.p[n - 1] @ amb.d(n) @ self.lift[n]
        ext_left = [{f: sub.certificate[("left", f)] for f in A.basis} for sub in self.subs]
        ext_right = [{f: sub.certificate[("right", f)] for f in A.basis} for sub in self.subs]
        quo_left = [{f: self.p[n] @ amb.action("left", f, n) @ self.lift[n] for f in A.basis}
                    for n in range(top + 1)]
        quo_right = [{f: self.p[n] @ amb.action("right", f, n) @ self.lift[n] for f in A.basis}
                     for n in range(top + 1)]
        ext_labels = [tuple(f"e{i}" for i in range(B.ncols)) for B in self.B]
        quo_labels = [tuple(f"q{i}" for i in range(p.nrows)) for p in self.p]
        self.extended = ChainComplex(ring, A, ext_labels, ext_bd, ext_left, ext_right, name=f"ext({T.name})")
        self.quotient = ChainComplex(ring, A, quo_labels, quo_bd, quo_left, quo_right,
                                     name=f"{S.name}/{T.name}")

    @property
    def top(self) -> int:
        return self.ambient.top

    def ses_report(self) -> dict:
        """Per degree: ``j`` injective, ``p`` surjective, ``im j = ker p``, and chain-map checks."""
        out = {}
        ring = self.ring
        for n in range(self.top + 1):
            B, p, lift = self.B[n], self.p[n], self.lift[n]
            k = self.ambient.rank(n)
            inj = B.rank == B.ncols
            sur = (p @ lift) == Matrix.identity(ring, p.nrows)
            exact = same_span(B, kernel_basis(p)) if B.ncols or p.ncols else True
            chain = True
            if n >= 1:
                chain = (self.ambient.d(n) @ B == self.B[n - 1] @ self.extended.d(n)
                         and self.p[n - 1] @ self.ambient.d(n) == self.quotient.d(n) @ p)
            out[n] = {"j_injective": inj, "p_surjective": sur, "image_equals_kernel": exact,
                      "chain_maps": chain, "ranks": [B.ncols, k, p.nrows]}
        return out

    def ses_ok(self) -> bool:
        return all(all(v for key, v in row.items() if key != "ranks") for row in self.ses_report().values())

    def j_star(self, n: int) -> ModuleMorphism:
        return induced_map_on_subquotients(self.B[n], self.extended.homology(n).module,
                                           self.ambient.homology(n).module)

    def p_star(self, n: int) -> ModuleMorphism:
        return induced_map_on_subquotients(self.p[n], self.ambient.homology(n).module,
                                           self.quotient.homology(n).module)

    def delta(self, n: int) -> ModuleMorphism:
        """Connecting map ``H_n(S/T) -> H_{n-1}(C^S(T))``."""
        HQ = self.quotient.homology(n).module
        HE = self.extended.homology(n - 1).module
        ring = self.ring
        reps = HQ.cycles
        lifted = self.lift[n] @ reps
        img = self.ambient.d(n) @ lifted
        if self.B[n - 1].ncols == 0:
            if not img.is_zero():
                raise HomologyError("boundary of a lifted relative cycle is not an extended chain")
            coords = Matrix.zeros(ring, 0, reps.ncols)
        else:
            try:
                coords = LinearSolver(self.B[n - 1]).solve_matrix(img)
            except NotContained:
                raise HomologyError("boundary of a lifted relative cycle is not an extended chain") from None
        # coords: extended-chain coordinates of delta applied to each cycle basis vector of H_n(S/T)
        try:
            in_cycles = HE._solver.solve_matrix(coords)
        except NotContained:
            raise HomologyError("connecting map does not produce cycles") from None
        return ModuleMorphism(HQ, HE, in_cycles)

    def delta_alternative_lift_ok(self, n: int) -> bool:
        """Recompute the connecting map with shifted lifts and representatives; classes must agree."""
        HQ = self.quotient.homology(n).module
        HE = self.extended.homology(n - 1).module
        delta = self.delta(n)
        ring = self.ring
        shift_ext = [ring.one] * self.B[n].ncols
        shift = self.B[n] @ tuple(shift_ext) if shift_ext else tuple([ring.zero] * self.ambient.rank(n))
        bq = self.quotient.d(n + 1) if n + 1 <= self.top else None
        for i, z in enumerate(HQ.cycles.columns()):
            zq = tuple(z)
            if bq is not None and bq.ncols:
                zq = tuple(a + b for a, b in zip(zq, bq.column(0)))
            c = tuple(a + b for a, b in zip(self.lift[n] @ zq, shift))
            img = self.ambient.d(n) @ c
            if self.B[n - 1].ncols == 0:
                if any(img):
                    return False
                continue
            w = LinearSolver(self.B[n - 1]).solve(img)
            if w is None:
                return False
            standard = HQ.cycles.column(i)
            expected = delta.matrix.apply(HQ.coordinates(standard))
            if HE.reduce(HE.coordinates(w)) != HE.reduce(expected):
                return False
        return True


def relative_complex(S: EnrichedCategory, T: EnrichedCategory, ring: CoefficientRing = ZZ,
                     inclusion: Optional[EnrichedFunctor] = None,
                     ambient: Optional[CategoryComplex] = None) -> RelativeComplex:
    return RelativeComplex(S, T, ring, inclusion, ambient)


@dataclass
class LESNode:
    where: str
    incoming: str
    outgoing: str
    exact: bool


@dataclass
class LESReport:
    max_degree: int
    homology: dict              # degree -> {"extended", "absolute", "relative"} descriptions
    maps: dict                  # name -> canonical matrix
    nodes: list
    delta_lift_independent: dict
    equivariant: dict
    ses: dict

    @property
    def exact(self) -> bool:
        return all(node.exact for node in self.nodes)

    @property
    def ok(self) -> bool:
        return (self.exact and all(self.delta_lift_independent.values()) and all(self.equivariant.values())
                and all(all(v for k, v in row.items() if k != "ranks") for row in self.ses.values()))

    def to_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "homology": {str(n): v for n, v in sorted(self.homology.items())},
            "maps": {k: self.maps[k] for k in self.maps},
            "nodes": [{"at": n.where, "in": n.incoming, "out": n.outgoing, "exact": n.exact} for n in self.nodes],
            "delta_lift_independent": self.delta_lift_independent,
            "equivariant": self.equivariant,
            "ses": {str(n): v for n, v in sorted(self.ses.items())},
            "exact": self.exact,
        }


def _zero_into(module: PresentedModule) -> ModuleMorphism:
    ring = module.ring
    return ModuleMorphism(PresentedModule(ring, 0), module, Matrix.zeros(ring, module.generator_count, 0))


def _zero_out_of(module: PresentedModule) -> ModuleMorphism:
    ring = module.ring
    return ModuleMorphism(module, PresentedModule(ring, 0), Matrix.zeros(ring, 0, module.generator_count))


def _equivariant(m: ModuleMorphism, src: HomologyBimodule, tgt: HomologyBimodule, basis) -> bool:
    for f in basis:
        if not (m @ src.left[f]).equals(tgt.left[f] @ m):
            return False
        if not (m @ src.right[f]).equals(tgt.right[f] @ m):
            return False
    return True


def les(rel: RelativeComplex, max_degree: Optional[int] = None) -> LESReport:
    """Assemble the long exact sequence through ``max_degree`` and check it node by node.

    Nodes are ``H_n(S)`` for ``n <= N``, ``H_n(S/T)`` for ``1 <= n <= N``,
    ``H_n(C^S(T))`` for ``n < N`` (and ``n = N`` when ``delta_{N+1}`` is
    computable), plus surjectivity onto ``H_0(S/T)``.
    """
    top = rel.top
    N = top - 1 if max_degree is None else max_degree
    if N > top - 1 or N < 0:
        raise TruncationError(f"max_degree must lie in [0, {top - 1}]")
    basis = rel.ambient.algebra.basis
    H = {}
    maps = {}
    j, p, d = {}, {}, {}
    equiv, lift_ok = {}, {}
    top_delta = N + 1 if N + 1 <= top - 1 else N
    for n in range(top_delta + 1):
        HE, HS, HQ = rel.extended.homology(n), rel.ambient.homology(n), rel.quotient.homology(n)
        if n <= N:
            H[n] = {"extended": HE.module.to_json(), "absolute": HS.module.to_json(), "relative": HQ.module.to_json()}
            j[n], p[n] = rel.j_star(n), rel.p_star(n)
            maps[f"j_{n}"] = j[n].canonical_matrix.to_json()
            maps[f"p_{n}"] = p[n].canonical_matrix.to_json()
            equiv[f"j_{n}"] = _equivariant(j[n], HE, HS, basis)
            equiv[f"p_{n}"] = _equivariant(p[n], HS, HQ, basis)
        if n >= 1:
            d[n] = rel.delta(n)
            maps[f"delta_{n}"] = d[n].canonical_matrix.to_json()
            equiv[f"delta_{n}"] = _equivariant(d[n], HQ, rel.extended.homology(n - 1), basis)
            lift_ok[f"delta_{n}"] = rel.delta_alternative_lift_ok(n)
    nodes = []
    for n in range(N, -1, -1):
        if n + 1 in d:
            nodes.append(LESNode(f"H_{n}(ext)", f"delta_{n + 1}", f"j_{n}", is_exact_at(d[n + 1], j[n])))
        nodes.append(LESNode(f"H_{n}(S)", f"j_{n}", f"p_{n}", is_exact_at(j[n], p[n])))
        if n >= 1:
            nodes.append(LESNode(f"H_{n}(S/T)", f"p_{n}", f"delta_{n}", is_exact_at(p[n], d[n])))
        else:
            nodes.append(LESNode("H_0(S/T)", "p_0", "0", is_exact_at(p[0], _zero_out_of(p[0].target))))
    return LESReport(N, H, maps, nodes, lift_ok, equiv, rel.ses_report())


@dataclass
class TransferKernelReport:
    degree: int
    domain: PresentedModule
    kernel: PresentedModule
    injective: bool
    image_rank: int
    extended_rank: int
    image_equals_extended: bool
    triples: int

    @property
    def isomorphic_to_extended(self) -> bool:
        return (self.injective and self.image_equals_extended and self.domain.free_rank == self.extended_rank
                and not self.domain.invariant_factors)

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "triples": self.triples,
            "domain": self.domain.to_json(),
            "kernel": self.kernel.to_json(),
            "injective": self.injective,
            "image_rank": self.image_rank,
            "extended_rank": self.extended_rank,
            "image_equals_extended": self.image_equals_extended,
            "isomorphic_to_extended": self.isomorphic_to_extended,
        }


def transfer_kernel(S: EnrichedCategory, T: EnrichedCategory, n: int, ring: CoefficientRing = ZZ,
                    inclusion: Optional[EnrichedFunctor] = None, ambient: Optional[CategoryComplex] = None,
                    sub_algebra: Optional[Algebra] = None) -> TransferKernelReport:
    if inclusion is None:
        _, inclusion = full_subcategory(S, T.objects)
    amb = ambient if ambient is not None else CategoryComplex(S, ring)
    dom = transfer_domain(S, T, inclusion, n, ring, amb.algebra, sub_algebra)
    iota = transfer_map(dom, amb.modules[n])
    ker = iota.kernel()
    ext = extended_chains(S, T, n, ring, amb.modules[n], inclusion)
    image = iota.matrix
    img_rank = image.rank
    eq = same_span(image, ext.basis) if (image.ncols or ext.basis.ncols) else True
    return TransferKernelReport(n, dom.module, ker, ker.is_zero(), img_rank, ext.rank, eq, len(dom.triples))


def to_dict(complex: ChainComplex, degrees: Sequence[int]) -> dict:
    return {"complex": complex.name, "ranks": [complex.rank(n) for n in range(complex.top + 1)],
            "homology": [complex.homology(n).to_dict() for n in degrees]}
