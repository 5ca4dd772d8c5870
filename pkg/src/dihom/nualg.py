"""Non-unital algebras with a finite basis.

An :class:`Algebra` stores structure constants ``product[(x, y)]`` as a tuple
of ``(basis id, coefficient)`` pairs; missing pairs multiply to zero.  Path
algebras tag each basis element with its (source, target) objects and
multiply ``g * f`` as "f, then g" when the ends meet.

Unitalization adjoins a fresh basis symbol playing the role of ``(0, 1)``,
so the pair ``(a, r)`` is the element ``a + r * unit``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .exactlin import CoefficientRing, LinearSolver, Matrix, ZZ, same_span
from .scat import Category1, EnrichedCategory, EnrichedFunctor, check_injective_on_objects, underlying_category


class AlgebraError(ValueError):
    pass


class NotSUnital(AlgebraError):
    pass


class AlgebraElement:
    """Finite linear combination of basis elements; zeros are never stored."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: "Algebra", coeffs: Mapping[str, object] = ()):
        ring = algebra.ring
        clean = {}
        for b, c in dict(coeffs).items():
            if b not in algebra.index:
                raise AlgebraError(f"{b!r} is not a basis element of {algebra.name or 'the algebra'}")
            c = ring.coerce(c)
            if c != 0:
                clean[b] = c
        self.algebra = algebra
        self.coeffs = clean

    def __getitem__(self, b):
        return self.coeffs.get(b, self.algebra.ring.zero)

    def _combine(self, other, sign):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise AlgebraError("elements of different algebras")
        out = dict(self.coeffs)
        red = self.algebra.ring.reduce
        for b, c in other.coeffs.items():
            out[b] = red(out.get(b, 0) + sign * c)
        return AlgebraElement(self.algebra, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "AlgebraElement":
        ring = self.algebra.ring
        c = ring.coerce(c)
        return AlgebraElement(self.algebra, {b: ring.reduce(c * v) for b, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra is other.algebra and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(tuple(sorted(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def vector(self) -> tuple:
        return tuple(self[b] for b in self.algebra.basis)

    @property
    def scalar(self):
        """The ``r`` of a pair ``(a, r)`` in a unitalized algebra."""
        sym = self.algebra.unit_symbol
        if sym is None:
            raise AlgebraError("not a unitalized algebra")
        return self[sym]

    @property
    def part(self) -> "AlgebraElement":
        """The ``a`` of a pair ``(a, r)``, as an element of the base algebra."""
        A = self.algebra
        if A.base is None:
            raise AlgebraError("not a unitalized algebra")
        return AlgebraElement(A.base, {b: c for b, c in self.coeffs.items() if b != A.unit_symbol})

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for b in self.algebra.basis:
            if b in self.coeffs:
                c = self.coeffs[b]
                parts.append(b if c == 1 else f"{c}*{b}")
        return " + ".join(parts)


class Algebra:
    """Algebra over a coefficient ring with a finite basis and sparse structure constants."""

    def __init__(self, ring: CoefficientRing, basis: Sequence[str], product: Mapping[tuple, Mapping[str, object]],
                 tags: Optional[Mapping[str, tuple]] = None, unit: Optional[Mapping[str, object]] = None,
                 name: str = "", identities: Optional[Mapping[str, str]] = None,
                 base: Optional["Algebra"] = None, unit_symbol: Optional[str] = None):
        self.ring = ring
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise AlgebraError("duplicate basis ids")
        self.index = {b: i for i, b in enumerate(self.basis)}
        table = {}
        for (x, y), val in product.items():
            if x not in self.index or y not in self.index:
                raise AlgebraError(f"product entry ({x!r}, {y!r}) mentions an unknown basis element")
            entry = tuple((k, ring.coerce(c)) for k, c in dict(val).items() if ring.coerce(c) != 0)
            for k, _ in entry:
                if k not in self.index:
                    raise AlgebraError(f"product ({x!r}, {y!r}) has unknown term {k!r}")
            if entry:
                table[(x, y)] = entry
        self.product = table
        self.tags = dict(tags) if tags else {}
        self.identities = dict(identities) if identities else {}
        self.name = name
        self.base = base
        self.unit_symbol = unit_symbol
        self._unit = None if unit is None else AlgebraElement(self, unit)

    # -- elements -------------------------------------------------------

    def element(self, coeffs: Mapping[str, object] = ()) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def __call__(self, coeffs: Mapping[str, object] = ()) -> AlgebraElement:
        return AlgebraElement(self, coeffs)

    def basis_element(self, b: str) -> AlgebraElement:
        return AlgebraElement(self, {b: 1})

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def from_vector(self, vec: Sequence) -> AlgebraElement:
        return AlgebraElement(self, dict(zip(self.basis, vec)))

    @property
    def is_unital(self) -> bool:
        return self._unit is not None

    def one(self) -> AlgebraElement:
        if self._unit is None:
            raise AlgebraError(f"{self.name or 'algebra'} has no designated unit")
        return self._unit

    def pair(self, a: AlgebraElement, r=0) -> AlgebraElement:
        """The element ``(a, r)`` of a unitalized algebra."""
        if self.base is None:
            raise AlgebraError("pairs only exist in unitalized algebras")
        if a.algebra is not self.base:
            raise AlgebraError("first component must lie in the base algebra")
        coeffs = dict(a.coeffs)
        coeffs[self.unit_symbol] = r
        return AlgebraElement(self, coeffs)

    def mul(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self or y.algebra is not self:
            raise AlgebraError("elements of a different algebra")
        red = self.ring.reduce
        out = {}
        for a, ca in x.coeffs.items():
            for b, cb in y.coeffs.items():
                for k, c in self.product.get((a, b), ()):
                    out[k] = red(out.get(k, 0) + ca * cb * c)
        return AlgebraElement(self, out)

    def multiply_basis(self, x: str, y: str) -> AlgebraElement:
        return AlgebraElement(self, dict(self.product.get((x, y), ())))

    def random_element(self, rng: random.Random, density: float = 0.5, bound: int = 5) -> AlgebraElement:
        coeffs = {}
        for b in self.basis:
            if rng.random() < density:
                coeffs[b] = rng.randint(-bound, bound)
        return AlgebraElement(self, coeffs)

    # -- structure ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def source(self, b):
        return self.tags[b][0]

    def target(self, b):
        return self.tags[b][1]

    def associativity_failures(self) -> list:
        """Basis triples ``(x, y, z)`` with ``(xy)z != x(yz)``."""
        bad = []
        for x, y, z in itertools.product(self.basis, repeat=3):
            bx, by, bz = (self.basis_element(t) for t in (x, y, z))
            if self.mul(self.mul(bx, by), bz) != self.mul(bx, self.mul(by, bz)):
                bad.append((x, y, z))
        return bad

    def is_associative(self) -> bool:
        return not self.associativity_failures()

    def unit_failures(self) -> list:
        if self._unit is None:
            return []
        e = self._unit
        return [b for b in self.basis
                if self.mul(e, self.basis_element(b)) != self.basis_element(b)
                or self.mul(self.basis_element(b), e) != self.basis_element(b)]

    def products_matrix(self) -> Matrix:
        """Columns are the coordinate vectors of all basis products."""
        cols = [self.multiply_basis(x, y).vector() for x in self.basis for y in self.basis]
        return Matrix.from_columns(self.ring, cols, self.dimension)

    def to_json(self) -> dict:
        tj = self.ring.to_json
        basis = []
        for b in self.basis:
            entry = {"id": b}
            if b in self.tags:
                entry["source"], entry["target"] = self.tags[b]
            basis.append(entry)
        product = [{"left": x, "right": y, "value": {k: tj(c) for k, c in val}}
                   for (x, y), val in sorted(self.product.items(), key=lambda kv: (self.index[kv[0][0]],
                                                                                   self.index[kv[0][1]]))]
        out = {"schema": "algebra.v1", "name": self.name, "ring": self.ring.name, "basis": basis,
               "product": product}
        if self._unit is not None:
            out["unit"] = {k: tj(c) for k, c in self._unit.coeffs.items()}
        return out

    def __repr__(self):
        return f"<Algebra {self.name or ''} dim={self.dimension} over {self.ring}>"


class AlgebraMorphism:
    """Linear map given on basis elements."""

    def __init__(self, source: Algebra, target: Algebra, images: Mapping[str, AlgebraElement]):
        for b in source.basis:
            img = images.get(b)
            if img is None or img.algebra is not target:
                raise AlgebraError(f"no image in the target algebra for basis element {b!r}")
        self.source = source
        self.target = target
        self.images = dict(images)

    def __call__(self, x: AlgebraElement) -> AlgebraElement:
        if x.algebra is not self.source:
            raise AlgebraError("element of a different algebra")
        out = self.target.zero()
        for b, c in x.coeffs.items():
            out = out + self.images[b].scale(c)
        return out

    def multiplicativity_failures(self) -> list:
        bad = []
        S = self.source
        for x, y in itertools.product(S.basis, repeat=2):
            lhs = self(S.multiply_basis(x, y))
            rhs = self.target.mul(self.images[x], self.images[y])
            if lhs != rhs:
                bad.append((x, y))
        return bad

    def is_multiplicative(self) -> bool:
        return not self.multiplicativity_failures()

    def preserves_unit(self) -> bool:
        if not (self.source.is_unital and self.target.is_unital):
            return True
        return self(self.source.one()) == self.target.one()

    def compose(self, first: "AlgebraMorphism") -> "AlgebraMorphism":
        """``self`` after ``first``."""
        if first.target is not self.source:
            raise AlgebraError("morphisms are not composable")
        return AlgebraMorphism(first.source, self.target, {b: self(img) for b, img in first.images.items()})

    def matrix(self) -> Matrix:
        return Matrix.from_columns(self.source.ring, [self.images[b].vector() for b in self.source.basis],
                                   self.target.dimension)

    def is_injective(self) -> bool:
        return self.matrix().rank == self.source.dimension

    def equals(self, other: "AlgebraMorphism") -> bool:
        return (self.source is other.source and self.target is other.target
                and all(self.images[b] == other.images[b] for b in self.source.basis))


def identity_morphism(A: Algebra) -> AlgebraMorphism:
    return AlgebraMorphism(A, A, {b: A.basis_element(b) for b in A.basis})


# -- constructions -----------------------------------------------------

def path_algebra(S0: Category1 | EnrichedCategory, ring: CoefficientRing = ZZ, name: str = "") -> Algebra:
    """Free module on the 1-morphisms; ``g * f`` is the composite "f, then g" when defined."""
    if isinstance(S0, EnrichedCategory):
        name = name or (f"{ring}[{S0.name}]" if S0.name else "")
        S0 = underlying_category(S0)
    product = {}
    for f, _, t in S0.morphisms:
        for g, s, _ in S0.morphisms:
            if t == s:
                product[(g, f)] = {S0.compose[(f, g)]: 1}
    tags = {m: (s, t) for m, s, t in S0.morphisms}
    return Algebra(ring, S0.ids, product, tags=tags, name=name, identities=dict(S0.identities))


def _fresh_symbol(basis, stem="1"):
    sym = stem
    while sym in basis:
        sym += "'"
    return sym


def unitalize(A: Algebra) -> Algebra:
    """Dorroh extension: pairs ``(a, r)`` with ``(a,r)(b,s) = (ab + r b + a s, rs)``."""
    sym = _fresh_symbol(A.basis)
    product = {k: dict(v) for k, v in A.product.items()}
    for b in A.basis:
        product[(sym, b)] = {b: 1}
        product[(b, sym)] = {b: 1}
    product[(sym, sym)] = {sym: 1}
    name = f"({A.name})^" if A.name else ""
    return Algebra(A.ring, A.basis + (sym,), product, tags=A.tags, unit={sym: 1}, name=name,
                   identities=A.identities, base=A, unit_symbol=sym)


def unitalization_unit(A: Algebra, Ahat: Optional[Algebra] = None) -> AlgebraMorphism:
    """``eta(x) = (x, 0)``, a morphism of rngs ``A -> A^``."""
    Ahat = Ahat or unitalize(A)
    return AlgebraMorphism(A, Ahat, {b: Ahat.basis_element(b) for b in A.basis})


def counit(Ahat: Algebra) -> AlgebraMorphism:
    """``(x, r) -> x + r 1`` for the unitalization of a unital algebra."""
    A = Ahat.base
    if A is None:
        raise AlgebraError("counit needs a unitalized algebra")
    if not A.is_unital:
        raise AlgebraError("counit needs a unital base algebra")
    images = {b: A.basis_element(b) for b in A.basis}
    images[Ahat.unit_symbol] = A.one()
    return AlgebraMorphism(Ahat, A, images)


def unitalize_morphism(g: AlgebraMorphism, source_hat: Algebra, target_hat: Algebra) -> AlgebraMorphism:
    """``(a, r) -> (g(a), r)``."""
    images = {b: target_hat.pair(g.images[b], 0) for b in g.source.basis}
    images[source_hat.unit_symbol] = target_hat.one()
    return AlgebraMorphism(source_hat, target_hat, images)


@dataclass
class AdjunctionReport:
    algebra: str
    samples: int
    eta_multiplicative: bool
    epsilon_multiplicative: bool
    epsilon_unital: bool
    triangle_unital: bool      # eps_C . eta_C = id on a unital C
    triangle_free: bool        # eps_{A^} . (eta_A)^ = id on A^
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return (self.eta_multiplicative and self.epsilon_multiplicative and self.epsilon_unital
                and self.triangle_unital and self.triangle_free)


def check_adjunction_triangles(A: Algebra, samples: Sequence[AlgebraElement]) -> AdjunctionReport:
    """Exact check of both triangle identities of unitalization -| forget.

    ``samples`` are elements of the unitalization of ``A`` (elements of ``A``
    are embedded as ``(x, 0)``).  The unital triangle is tested on ``C = A^``
    and, when ``A`` itself is unital, also on ``A``.
    """
    Ahat = unitalize(A)
    Ahathat = unitalize(Ahat)
    eta = unitalization_unit(A, Ahat)
    eta_hat = unitalization_unit(Ahat, Ahathat)
    eps = counit(Ahathat)
    F_eta = unitalize_morphism(eta, Ahat, Ahathat)
    pts = []
    for s in samples:
        if s.algebra is A:
            pts.append(eta(s))
        elif s.algebra.base is A:
            pts.append(AlgebraElement(Ahat, s.coeffs))
        else:
            raise AlgebraError("sample is not in the algebra or its unitalization")
    failures = []
    tri_u, tri_f = True, True
    for y in pts:
        if eps(eta_hat(y)) != y:
            tri_u = False
            failures.append(("unital", repr(y)))
        if eps(F_eta(y)) != y:
            tri_f = False
            failures.append(("free", repr(y)))
    if A.is_unital:
        eps_A = counit(Ahat)
        for s in samples:
            if s.algebra is A and eps_A(eta(s)) != s:
                tri_u = False
                failures.append(("unital-base", repr(s)))
    return AdjunctionReport(A.name, len(pts), eta.is_multiplicative(), eps.is_multiplicative(),
                            eps.preserves_unit(), tri_u, tri_f, failures)


def _is_path_algebra(A: Algebra) -> bool:
    return bool(A.identities) and all(b in A.tags for b in A.basis)


def _objects_of(A: Algebra, x: AlgebraElement, side: str) -> list:
    objs = []
    for b in x.coeffs:
        s, t = A.tags[b]
        picks = {"left": (t,), "right": (s,), "both": (s, t)}[side]
        for o in picks:
            if o not in objs:
                objs.append(o)
    return objs


def _solve_one_sided(A: Algebra, x: AlgebraElement, side: str) -> AlgebraElement:
    if x.is_zero():
        return A.zero()
    if side == "left":
        cols = [A.mul(A.basis_element(b), x).vector() for b in A.basis]
    else:
        cols = [A.mul(x, A.basis_element(b)).vector() for b in A.basis]
    sol = LinearSolver(Matrix.from_columns(A.ring, cols, A.dimension)).solve(x.vector())
    if sol is None:
        raise NotSUnital(f"no {side} local unit exists for {x!r}")
    return A.from_vector(sol)


def _combine_units(A: Algebra, xs, side: str) -> AlgebraElement:
    e = A.zero()
    for x in xs:
        if side == "left":
            y = x - A.mul(e, x)
            e2 = _solve_one_sided(A, y, "left")
            e = e + e2 - A.mul(e2, e)
        else:
            y = x - A.mul(x, e)
            e2 = _solve_one_sided(A, y, "right")
            e = e + e2 - A.mul(e, e2)
    return e


def local_unit_holds(A: Algebra, e: AlgebraElement, xs, side: str) -> bool:
    for x in xs:
        if side in ("left", "both") and A.mul(e, x) != x:
            return False
        if side in ("right", "both") and A.mul(x, e) != x:
            return False
    return True


def find_local_unit(A: Algebra, xs: Sequence[AlgebraElement], side: str = "both",
                    method: str = "auto") -> AlgebraElement:
    """Element ``e`` with ``e x = x`` (left), ``x e = x`` (right) or both, for all ``xs``.

    Path algebras use the sum of identities at the relevant objects: targets
    for a left unit, sources for a right unit.  Other algebras (or
    ``method="generic"``) solve for a unit per element and merge them with
    ``e + e' - e'e``.  The result is always verified.
    """
    if side not in ("left", "right", "both"):
        raise ValueError("side must be left, right or both")
    xs = list(xs)
    if method == "auto":
        method = "path" if _is_path_algebra(A) else "generic"
    if method == "path":
        if not _is_path_algebra(A):
            raise NotSUnital("the path recipe needs a tagged algebra with identities")
        objs = []
        for x in xs:
            for o in _objects_of(A, x, side):
                if o not in objs:
                    objs.append(o)
        missing = [o for o in objs if o not in A.identities]
        if missing:
            raise NotSUnital(f"no identity element for objects {missing}")
        e = A.element({A.identities[o]: 1 for o in objs})
    elif method == "generic":
        if A.is_unital:
            e = A.one()
        elif side == "both":
            l = _combine_units(A, xs, "left")
            r = _combine_units(A, xs, "right")
            e = l + r - A.mul(r, l)
        else:
            e = _combine_units(A, xs, side)
    else:
        raise ValueError(f"unknown method {method!r}")
    if not local_unit_holds(A, e, xs, side):
        raise NotSUnital(f"candidate local unit {e!r} fails")
    return e


def is_idempotent(A: Algebra) -> bool:
    """``A^2 = A``: the products span the whole basis lattice."""
    if A.dimension == 0:
        return True
    return same_span(A.products_matrix(), Matrix.identity(A.ring, A.dimension))


def opposite(A: Algebra) -> Algebra:
    product = {(y, x): dict(v) for (x, y), v in A.product.items()}
    tags = {b: (t, s) for b, (s, t) in A.tags.items()}
    unit = dict(A.one().coeffs) if A.is_unital else None
    name = A.name[:-3] if A.name.endswith("^op") else (f"{A.name}^op" if A.name else "")
    return Algebra(A.ring, A.basis, product, tags=tags, unit=unit, name=name, identities=A.identities,
                   base=A.base, unit_symbol=A.unit_symbol)


def same_structure(A: Algebra, B: Algebra) -> bool:
    """Same ring, basis, structure constants, tags and unit."""
    return (A.ring == B.ring and A.basis == B.basis and A.product == B.product and A.tags == B.tags
            and (A.one().coeffs if A.is_unital else None) == (B.one().coeffs if B.is_unital else None))


def tensor_id(a: str, b: str) -> str:
    return f"{a}⊗{b}"


def tensor_unital(A: Algebra, B: Algebra) -> Algebra:
    """``A (x) B`` for unital ``A``, ``B`` with ``(a (x) b)(a' (x) b') = aa' (x) bb'``.

    Pass ``opposite(B)`` to get the enveloping algebra used by Merge.
    """
    if A.ring != B.ring:
        raise AlgebraError("tensor_unital needs a common coefficient ring")
    if not (A.is_unital and B.is_unital):
        raise AlgebraError("tensor_unital needs unital factors")
    red = A.ring.reduce
    basis = [tensor_id(a, b) for a in A.basis for b in B.basis]
    product = {}
    for (a1, a2), va in A.product.items():
        for (b1, b2), vb in B.product.items():
            out = {}
            for ka, ca in va:
                for kb, cb in vb:
                    k = tensor_id(ka, kb)
                    out[k] = red(out.get(k, 0) + ca * cb)
            product[(tensor_id(a1, b1), tensor_id(a2, b2))] = out
    unit = {}
    for ka, ca in A.one().coeffs.items():
        for kb, cb in B.one().coeffs.items():
            unit[tensor_id(ka, kb)] = red(ca * cb)
    T = Algebra(A.ring, basis, product, unit=unit, name=f"{A.name}⊗{B.name}")
    T.factors = (A, B)
    return T


def tensor_element(T: Algebra, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    red = T.ring.reduce
    out = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            k = tensor_id(ka, kb)
            out[k] = red(out.get(k, 0) + ca * cb)
    return T.element(out)


def induced_algebra_morphism(F: EnrichedFunctor, ring: CoefficientRing = ZZ,
                             source: Optional[Algebra] = None, target: Optional[Algebra] = None) -> AlgebraMorphism:
    """Linear extension of ``F`` on 1-morphisms; refused unless ``F`` is injective on objects."""
    if not check_injective_on_objects(F):
        raise AlgebraError("functor is not injective on objects; the induced map need not be multiplicative")
    A = source or path_algebra(F.source, ring)
    B = target or path_algebra(F.target, ring)
    g = AlgebraMorphism(A, B, {b: B.basis_element(F(b)) for b in A.basis})
    bad = g.multiplicativity_failures()
    if bad:
        raise AlgebraError(f"induced map is not multiplicative on {bad[:3]}")
    return g
