"""Finite simplicially enriched categories with truncated hom simplicial sets.

Simplex ids are strings and must be unique across the whole category, so a
simplex id determines its hom pair and dimension.  Degenerate simplices are
stored explicitly; builders name them canonically as ``s1s0(f)`` etc.

Composition follows the signature ``S(A,B) x S(B,C) -> S(A,C)``: the pair
``(sigma, tau)`` means "sigma, then tau".
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence


class ScatError(ValueError):
    pass


class BuilderError(ScatError):
    pass


class TruncationError(ScatError):
    pass


@dataclass(frozen=True)
class Violation:
    kind: str
    where: str
    detail: str

    def __str__(self):
        return f"[{self.kind}] {self.where}: {self.detail}"


@dataclass
class ValidationReport:
    subject: str
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, kind, where, detail):
        self.violations.append(Violation(kind, where, detail))

    def extend(self, other: "ValidationReport", prefix: str = ""):
        for v in other.violations:
            self.violations.append(Violation(v.kind, f"{prefix}{v.where}", v.detail))

    def __str__(self):
        if self.ok:
            return f"{self.subject}: valid"
        lines = [f"{self.subject}: {len(self.violations)} violation(s)"]
        lines += [f"  {v}" for v in self.violations]
        return "\n".join(lines)

    def to_json(self):
        return {"subject": self.subject, "valid": self.ok,
                "violations": [{"kind": v.kind, "where": v.where, "detail": v.detail} for v in self.violations]}


# -- surjection calculus used to generate degenerate simplices ---------------

def _surjections(k: int, m: int):
    """Nondecreasing surjections [k] -> [m] as tuples, in lexicographic order."""
    out = []
    for jumps in itertools.combinations(range(k), m):
        sigma, v = [0], 0
        for j in range(k):
            if j in jumps:
                v += 1
            sigma.append(v)
        out.append(tuple(sigma))
    return sorted(out)


def degenerate_name(base: str, surj: tuple) -> str:
    """Canonical id ``s_{i1}...s_{ir}(base)`` with ``i1 > ... > ir``."""
    idx = [j for j in range(len(surj) - 1) if surj[j] == surj[j + 1]]
    if not idx:
        return base
    return "".join(f"s{i}" for i in sorted(idx, reverse=True)) + f"({base})"


@dataclass(frozen=True, eq=False)
class TruncatedSimplicialSet:
    """Simplices of dimension ``0..dim`` with explicit face and degeneracy tables.

    ``faces[x]`` lists ``d_0 x, ..., d_d x`` for ``x`` of dimension ``d >= 1``;
    ``degeneracies[x]`` lists ``s_0 x, ..., s_d x`` for ``d < dim``.
    """

    dim: int
    simplices: tuple
    faces: Mapping[str, tuple]
    degeneracies: Mapping[str, tuple]
    degenerate: frozenset

    def __post_init__(self):
        dims = {}
        for d, ids in enumerate(self.simplices):
            for x in ids:
                dims[x] = d
        object.__setattr__(self, "_dims", dims)

    @classmethod
    def empty(cls, dim: int) -> "TruncatedSimplicialSet":
        return cls(dim, tuple(() for _ in range(dim + 1)), {}, {}, frozenset())

    @classmethod
    def generate(cls, nondegenerate: Sequence[tuple], dim: int) -> "TruncatedSimplicialSet":
        """Close a list of nondegenerate simplices under degeneracies up to ``dim``.

        ``nondegenerate`` holds ``(id, d, faces)`` triples; ``faces`` names the
        ``d + 1`` faces by id (vertices have ``faces == ()``).  Face ids may be
        canonical degenerate names such as ``s0(f)``.
        """
        rep = {}
        nd_dim, nd_faces, order = {}, {}, []
        for sid, d, fcs in sorted(nondegenerate, key=lambda t: t[1]):
            if sid in rep:
                raise BuilderError(f"duplicate simplex id {sid!r}")
            if d > dim:
                raise TruncationError(f"simplex {sid!r} of dimension {d} exceeds truncation {dim}")
            if len(fcs) != (d + 1 if d else 0):
                raise BuilderError(f"simplex {sid!r} needs {d + 1 if d else 0} faces")
            for f in fcs:
                if f not in rep or len(rep[f][1]) != d:
                    raise BuilderError(f"face {f!r} of {sid!r} is not a known {d - 1}-simplex")
            nd_dim[sid], nd_faces[sid] = d, tuple(fcs)
            order.append(sid)
            rep[sid] = (sid, tuple(range(d + 1)))
            # register the degenerate simplices over sid so later faces can refer to them
            for k in range(d + 1, dim + 1):
                for s in _surjections(k, d):
                    rep.setdefault(degenerate_name(sid, s), (sid, s))

        def face(x, sigma, i):
            tau = sigma[:i] + sigma[i + 1:]
            m = nd_dim[x]
            if len(set(tau)) == m + 1:
                return (x, tau)
            missing = next(v for v in range(m + 1) if v not in tau)
            y, rho = rep[nd_faces[x][missing]]
            tau2 = tuple(t if t < missing else t - 1 for t in tau)
            return (y, tuple(rho[t] for t in tau2))

        def degen(sigma, i):
            return tuple(sigma[j if j <= i else j - 1] for j in range(len(sigma) + 1))

        simplices = [[] for _ in range(dim + 1)]
        faces, degens, degenerate = {}, {}, set()
        for k in range(dim + 1):
            for x in order:
                m = nd_dim[x]
                if m > k:
                    continue
                for s in _surjections(k, m):
                    name = degenerate_name(x, s)
                    simplices[k].append(name)
                    if k > m:
                        degenerate.add(name)
                    if k >= 1:
                        faces[name] = tuple(degenerate_name(*face(x, s, i)) for i in range(k + 1))
                    if k < dim:
                        degens[name] = tuple(degenerate_name(x, degen(s, i)) for i in range(k + 1))
        return cls(dim, tuple(tuple(s) for s in simplices), faces, degens, frozenset(degenerate))

    def dim_of(self, x: str) -> int:
        return self._dims[x]

    def __contains__(self, x):
        return x in self._dims

    def all_ids(self):
        return [x for ids in self.simplices for x in ids]

    def is_empty(self) -> bool:
        return not any(self.simplices)

    @property
    def vertices(self) -> tuple:
        return self.simplices[0]

    def face(self, x: str, j: int) -> str:
        return self.faces[x][j]

    def degeneracy(self, x: str, k: int) -> str:
        if self.dim_of(x) >= self.dim:
            raise TruncationError(f"s_{k} of {x!r} leaves the truncation dimension {self.dim}")
        return self.degeneracies[x][k]

    def total_degeneracy(self, v: str, n: int) -> str:
        """``s_{n-1} ... s_0 (v)`` for a vertex ``v``."""
        if n > self.dim:
            raise TruncationError(f"total degeneracy of dimension {n} exceeds truncation {self.dim}")
        if self.dim_of(v) != 0:
            raise ScatError(f"{v!r} is not a vertex")
        x = v
        for k in range(n):
            x = self.degeneracies[x][k]
        return x

    def relabel(self, mapping: Mapping[str, str]) -> "TruncatedSimplicialSet":
        m = mapping.__getitem__
        return TruncatedSimplicialSet(
            self.dim,
            tuple(tuple(m(x) for x in ids) for ids in self.simplices),
            {m(x): tuple(m(y) for y in ys) for x, ys in self.faces.items()},
            {m(x): tuple(m(y) for y in ys) for x, ys in self.degeneracies.items()},
            frozenset(m(x) for x in self.degenerate),
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedSimplicialSet):
            return NotImplemented
        return (self.dim == other.dim and self.simplices == other.simplices and dict(self.faces) == dict(other.faces)
                and dict(self.degeneracies) == dict(other.degeneracies) and self.degenerate == other.degenerate)

    __hash__ = None


def validate_simplicial_set(X: TruncatedSimplicialSet, name: str = "X") -> ValidationReport:
    """Check table shapes and every simplicial identity inside the truncation."""
    rep = ValidationReport(f"simplicial set {name}")
    D = X.dim
    if len(X.simplices) != D + 1:
        rep.add("shape", name, f"expected {D + 1} dimension levels, found {len(X.simplices)}")
        return rep
    seen = set()
    for d, ids in enumerate(X.simplices):
        for x in ids:
            if x in seen:
                rep.add("duplicate", x, "simplex id listed twice")
            seen.add(x)
    dim = X.dim_of

    def known(y, d):
        return y in X and dim(y) == d

    shape_ok = True
    for d, ids in enumerate(X.simplices):
        for x in ids:
            if d >= 1:
                fs = X.faces.get(x)
                if fs is None or len(fs) != d + 1:
                    rep.add("shape", x, f"needs {d + 1} faces")
                    shape_ok = False
                else:
                    for j, y in enumerate(fs):
                        if not known(y, d - 1):
                            rep.add("shape", x, f"face d_{j} = {y!r} is not a {d - 1}-simplex")
                            shape_ok = False
            if d < D:
                ss = X.degeneracies.get(x)
                if ss is None or len(ss) != d + 1:
                    rep.add("shape", x, f"needs {d + 1} degeneracies")
                    shape_ok = False
                else:
                    for k, y in enumerate(ss):
                        if not known(y, d + 1):
                            rep.add("shape", x, f"degeneracy s_{k} = {y!r} is not a {d + 1}-simplex")
                            shape_ok = False
    if not shape_ok:
        return rep
    F, S = X.faces, X.degeneracies
    for d, ids in enumerate(X.simplices):
        for x in ids:
            # d_i d_j = d_{j-1} d_i for i < j
            if d >= 2:
                for j in range(d + 1):
                    for i in range(j):
                        lhs, rhs = F[F[x][j]][i], F[F[x][i]][j - 1]
                        if lhs != rhs:
                            rep.add("face-face", x, f"d_{i} d_{j} = {lhs!r} but d_{j - 1} d_{i} = {rhs!r}")
            # s_i s_j = s_{j+1} s_i for i <= j
            if d + 2 <= D:
                for j in range(d + 1):
                    for i in range(j + 1):
                        lhs, rhs = S[S[x][j]][i], S[S[x][i]][j + 1]
                        if lhs != rhs:
                            rep.add("degeneracy-degeneracy", x,
                                    f"s_{i} s_{j} = {lhs!r} but s_{j + 1} s_{i} = {rhs!r}")
            # mixed identities
            if d + 1 <= D:
                for j in range(d + 1):
                    y = S[x][j]
                    for i in range(d + 2):
                        lhs = F[y][i]
                        if i in (j, j + 1):
                            rhs, rule = x, "id"
                        elif d == 0:
                            continue
                        elif i < j:
                            rhs, rule = S[F[x][i]][j - 1], f"s_{j - 1} d_{i}"
                        else:
                            rhs, rule = S[F[x][i - 1]][j], f"s_{j} d_{i - 1}"
                        if lhs != rhs:
                            rep.add("face-degeneracy", x, f"d_{i} s_{j} = {lhs!r} but {rule} = {rhs!r}")
    images = {y for ys in S.values() for y in ys}
    for x in X.degenerate:
        if x not in images:
            rep.add("degenerate-flag", x, "flagged degenerate but is not s_k of any simplex")
    for y in images:
        if y not in X.degenerate:
            rep.add("degenerate-flag", y, "is a degeneracy but not flagged degenerate")
    return rep


# -- categories --------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Category1:
    """An ordinary finite category; ``compose[(f, g)]`` is "f, then g"."""

    objects: tuple
    morphisms: tuple          # (id, source, target)
    compose: Mapping[tuple, str]
    identities: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "_ends", {m: (s, t) for m, s, t in self.morphisms})

    def source(self, f):
        return self._ends[f][0]

    def target(self, f):
        return self._ends[f][1]

    @property
    def ids(self) -> list:
        return [m for m, _, _ in self.morphisms]

    def hom(self, a, b) -> list:
        return [m for m, s, t in self.morphisms if s == a and t == b]

    def validate(self) -> ValidationReport:
        rep = ValidationReport("category")
        for a in self.objects:
            e = self.identities.get(a)
            if e is None or self._ends.get(e) != (a, a):
                rep.add("identity", a, "missing identity")
        for f, s, t in self.morphisms:
            for g in self.ids:
                if self.source(g) == t:
                    h = self.compose.get((f, g))
                    if h is None or self._ends.get(h) != (s, self.target(g)):
                        rep.add("composition", f"{f};{g}", f"bad composite {h!r}")
        if not rep.ok:
            return rep
        for f, s, t in self.morphisms:
            if self.compose[(self.identities[s], f)] != f or self.compose[(f, self.identities[t])] != f:
                rep.add("unit", f, "identity law fails")
            for g in self.ids:
                if self.source(g) != t:
                    continue
                for h in self.ids:
                    if self.source(h) != self.target(g):
                        continue
                    if self.compose[(self.compose[(f, g)], h)] != self.compose[(f, self.compose[(g, h)])]:
                        rep.add("associativity", f"{f};{g};{h}", "composition is not associative")
        return rep


@dataclass(frozen=True, eq=False)
class EnrichedCategory:
    """Finite simplicially enriched category truncated at dimension ``dim``.

    ``homs`` maps ``(A, B)`` to a :class:`TruncatedSimplicialSet` (missing pairs
    are empty); ``composition[(A, B, C)]`` maps ``(sigma, tau)`` with
    ``sigma`` in ``S(A,B)_d`` and ``tau`` in ``S(B,C)_d`` to ``S(A,C)_d``.
    """

    objects: tuple
    dim: int
    homs: Mapping[tuple, TruncatedSimplicialSet]
    identities: Mapping[str, str]
    composition: Mapping[tuple, Mapping[tuple, str]]
    name: str = ""

    def __post_init__(self):
        loc = {}
        for (a, b), X in self.homs.items():
            for x in X.all_ids():
                loc.setdefault(x, []).append((a, b))
        object.__setattr__(self, "_loc", loc)

    def hom(self, a, b) -> TruncatedSimplicialSet:
        X = self.homs.get((a, b))
        return X if X is not None else TruncatedSimplicialSet.empty(self.dim)

    def hom_pairs(self) -> list:
        """Nonempty hom pairs in object order."""
        idx = {o: i for i, o in enumerate(self.objects)}
        return sorted((p for p, X in self.homs.items() if not X.is_empty()),
                      key=lambda p: (idx.get(p[0], -1), idx.get(p[1], -1)))

    def locate(self, x: str) -> tuple:
        try:
            return self._loc[x][0]
        except KeyError:
            raise ScatError(f"unknown simplex {x!r}") from None

    def dim_of(self, x: str) -> int:
        return self.hom(*self.locate(x)).dim_of(x)

    def source(self, x):
        return self.locate(x)[0]

    def target(self, x):
        return self.locate(x)[1]

    def simplices(self, n: int) -> list:
        """All ``n``-simplices as ``(A, B, id)`` in a deterministic order."""
        if n > self.dim:
            raise TruncationError(f"degree {n} exceeds truncation {self.dim}")
        return [(a, b, x) for a, b in self.hom_pairs() for x in self.homs[(a, b)].simplices[n]]

    def vertices(self) -> list:
        return [x for _, _, x in self.simplices(0)]

    def compose(self, sigma: str, tau: str) -> str:
        a, b = self.locate(sigma)
        b2, c = self.locate(tau)
        if b != b2:
            raise ScatError(f"{sigma!r} and {tau!r} are not composable")
        try:
            return self.composition[(a, b, c)][(sigma, tau)]
        except KeyError:
            raise ScatError(f"no composite recorded for ({sigma!r}, {tau!r})") from None

    def total_degeneracy(self, f: str, n: int) -> str:
        return self.hom(*self.locate(f)).total_degeneracy(f, n)

    def identity_at(self, a: str, n: int) -> str:
        return self.total_degeneracy(self.identities[a], n)

    def __eq__(self, other):
        if not isinstance(other, EnrichedCategory):
            return NotImplemented
        norm = lambda c: {k: dict(v) for k, v in c.composition.items() if v}
        pairs = lambda c: {p: X for p, X in c.homs.items() if not X.is_empty()}
        return (self.objects == other.objects and self.dim == other.dim and dict(self.identities) == dict(
            other.identities) and pairs(self) == pairs(other) and norm(self) == norm(other))

    __hash__ = None


def total_degeneracy(C: EnrichedCategory, f: str, n: int) -> str:
    return C.total_degeneracy(f, n)


def validate_enriched_category(C: EnrichedCategory) -> ValidationReport:
    """Hom validity, completeness of composition, simpliciality, unit laws and associativity."""
    rep = ValidationReport(f"enriched category {C.name or '<unnamed>'}")
    if len(set(C.objects)) != len(C.objects):
        rep.add("objects", "objects", "duplicate object ids")
    for (a, b), X in C.homs.items():
        if a not in C.objects or b not in C.objects:
            rep.add("objects", f"hom({a},{b})", "hom between unknown objects")
        if X.dim != C.dim:
            rep.add("truncation", f"hom({a},{b})", f"truncation {X.dim} differs from {C.dim}")
        rep.extend(validate_simplicial_set(X, f"hom({a},{b})"), prefix=f"hom({a},{b}) ")
    for x, places in C._loc.items():
        if len(places) > 1:
            rep.add("duplicate", x, f"simplex id used in several homs {places}")
    for a in C.objects:
        e = C.identities.get(a)
        if e is None or e not in C.hom(a, a) or C.hom(a, a).dim_of(e) != 0:
            rep.add("identity", a, f"identity {e!r} is not a vertex of hom({a},{a})")
    if not rep.ok:
        return rep

    D = C.dim
    triples = [(a, b, c) for a in C.objects for b in C.objects for c in C.objects
               if not C.hom(a, b).is_empty() and not C.hom(b, c).is_empty()]
    complete = True
    for a, b, c in triples:
        table = C.composition.get((a, b, c), {})
        X, Y, Z = C.hom(a, b), C.hom(b, c), C.hom(a, c)
        for d in range(D + 1):
            for s in X.simplices[d]:
                for t in Y.simplices[d]:
                    r = table.get((s, t))
                    if r is None:
                        rep.add("composition", f"({a},{b},{c})", f"missing composite of ({s!r}, {t!r})")
                        complete = False
                    elif r not in Z or Z.dim_of(r) != d:
                        rep.add("composition", f"({a},{b},{c})",
                                f"composite of ({s!r}, {t!r}) is {r!r}, not a {d}-simplex of hom({a},{c})")
                        complete = False
    if not complete:
        return rep

    comp = C.compose
    for a, b, c in triples:
        X, Y, Z = C.hom(a, b), C.hom(b, c), C.hom(a, c)
        for d in range(D + 1):
            for s in X.simplices[d]:
                for t in Y.simplices[d]:
                    r = comp(s, t)
                    if d >= 1:
                        for j in range(d + 1):
                            lhs, rhs = Z.faces[r][j], comp(X.faces[s][j], Y.faces[t][j])
                            if lhs != rhs:
                                rep.add("simplicial", f"({s},{t})",
                                        f"d_{j} of composite is {lhs!r} but composite of faces is {rhs!r}")
                    if d < D:
                        for k in range(d + 1):
                            lhs, rhs = Z.degeneracies[r][k], comp(X.degeneracies[s][k], Y.degeneracies[t][k])
                            if lhs != rhs:
                                rep.add("simplicial", f"({s},{t})",
                                        f"s_{k} of composite is {lhs!r} but composite of degeneracies is {rhs!r}")
    for (a, b), X in C.homs.items():
        for d in range(D + 1):
            ea, eb = C.identity_at(a, d), C.identity_at(b, d)
            for s in X.simplices[d]:
                if comp(ea, s) != s:
                    rep.add("unit", s, f"left unit law fails: ({ea}, {s}) -> {comp(ea, s)!r}")
                if comp(s, eb) != s:
                    rep.add("unit", s, f"right unit law fails: ({s}, {eb}) -> {comp(s, eb)!r}")
    for a, b, c in triples:
        for e in C.objects:
            if C.hom(c, e).is_empty():
                continue
            X, Y, W = C.hom(a, b), C.hom(b, c), C.hom(c, e)
            for d in range(D + 1):
                for s in X.simplices[d]:
                    for t in Y.simplices[d]:
                        st = comp(s, t)
                        for u in W.simplices[d]:
                            if comp(st, u) != comp(s, comp(t, u)):
                                rep.add("associativity", f"({s},{t},{u})", "composition is not associative")
    return rep


def underlying_category(C: EnrichedCategory) -> Category1:
    """Objects of ``C`` with the 0-simplices of the homs as morphisms."""
    morphisms = tuple((x, a, b) for a, b, x in C.simplices(0))
    compose = {}
    for f, a, b in morphisms:
        for g, b2, c in morphisms:
            if b2 == b:
                compose[(f, g)] = C.compose(f, g)
    return Category1(tuple(C.objects), morphisms, compose, dict(C.identities))


# -- functors ----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class EnrichedFunctor:
    source: EnrichedCategory
    target: EnrichedCategory
    object_map: Mapping[str, str]
    simplex_map: Mapping[str, str]

    def __call__(self, x: str) -> str:
        return self.simplex_map[x]

    def obj(self, a: str) -> str:
        return self.object_map[a]

    def compose(self, first: "EnrichedFunctor") -> "EnrichedFunctor":
        """``self`` after ``first``."""
        return EnrichedFunctor(first.source, self.target,
                               {a: self.object_map[b] for a, b in first.object_map.items()},
                               {x: self.simplex_map[y] for x, y in first.simplex_map.items()})

    def validate(self) -> ValidationReport:
        rep = ValidationReport("enriched functor")
        S, T = self.source, self.target
        for a in S.objects:
            if self.object_map.get(a) not in T.objects:
                rep.add("objects", a, "object not mapped into the target")
        if not rep.ok:
            return rep
        for a, b in S.hom_pairs():
            X, Y = S.hom(a, b), T.hom(self.object_map[a], self.object_map[b])
            for d in range(S.dim + 1):
                for x in X.simplices[d]:
                    y = self.simplex_map.get(x)
                    if y is None or y not in Y or Y.dim_of(y) != d:
                        rep.add("hom", x, f"not sent to a {d}-simplex of the image hom")
                        continue
                    if d >= 1:
                        for j in range(d + 1):
                            if self.simplex_map.get(X.faces[x][j]) != Y.faces[y][j]:
                                rep.add("simplicial", x, f"does not commute with d_{j}")
                    if d < S.dim and d < T.dim:
                        for k in range(d + 1):
                            if self.simplex_map.get(X.degeneracies[x][k]) != Y.degeneracies[y][k]:
                                rep.add("simplicial", x, f"does not commute with s_{k}")
        if not rep.ok:
            return rep
        for a in S.objects:
            if self.simplex_map[S.identities[a]] != T.identities[self.object_map[a]]:
                rep.add("identity", a, "identity not preserved")
        for (a, b, c), table in S.composition.items():
            for (s, t), r in table.items():
                if self.simplex_map[r] != T.compose(self.simplex_map[s], self.simplex_map[t]):
                    rep.add("composition", f"({s},{t})", "composition not preserved")
        return rep


def identity_functor(C: EnrichedCategory) -> EnrichedFunctor:
    return EnrichedFunctor(C, C, {a: a for a in C.objects},
                           {x: x for X in C.homs.values() for x in X.all_ids()})


def check_injective_on_objects(F: EnrichedFunctor) -> bool:
    images = [F.object_map[a] for a in F.source.objects]
    return len(set(images)) == len(images)


# -- builders ----------------------------------------------------------------

def _discrete_hom(vertices: Sequence[str], dim: int) -> TruncatedSimplicialSet:
    return TruncatedSimplicialSet.generate([(v, 0, ()) for v in vertices], dim)


def build_from_category(cat: Category1, dim: int = 2, name: str = "") -> EnrichedCategory:
    """Discrete enrichment: every hom is a set of points with all degeneracies."""
    if dim < 0:
        raise BuilderError("truncation dimension must be non-negative")
    rep = cat.validate()
    if not rep.ok:
        raise BuilderError(str(rep))
    homs = {}
    for a in cat.objects:
        for b in cat.objects:
            vs = cat.hom(a, b)
            if vs:
                homs[(a, b)] = _discrete_hom(vs, dim)
    composition = {}
    for (a, b), X in homs.items():
        for c in cat.objects:
            Y = homs.get((b, c))
            if Y is None:
                continue
            Z = homs[(a, c)]
            table = {}
            for f in X.vertices:
                for g in Y.vertices:
                    h = cat.compose[(f, g)]
                    for d in range(dim + 1):
                        table[(X.total_degeneracy(f, d), Y.total_degeneracy(g, d))] = Z.total_degeneracy(h, d)
            composition[(a, b, c)] = table
    return EnrichedCategory(tuple(cat.objects), dim, homs, dict(cat.identities), composition, name)


def poset_category(relation: Iterable[Sequence[str]], objects: Optional[Sequence[str]] = None,
                   closure: bool = False, names: Optional[Mapping[tuple, str]] = None) -> Category1:
    pairs = [(str(a), str(b)) for a, b in relation]
    objs = list(objects) if objects is not None else []
    for a, b in pairs:
        for o in (a, b):
            if o not in objs:
                objs.append(o)
    for a, b in pairs:
        if a not in objs or b not in objs:
            raise BuilderError(f"relation mentions unknown object in {(a, b)}")
    le = {(a, a) for a in objs} | set(pairs)
    if closure:
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(le), list(le)):
                if b == c and (a, d) not in le:
                    le.add((a, d))
                    changed = True
    for a, b in le:
        if a != b and (b, a) in le:
            raise BuilderError(f"relation is not antisymmetric: {a} <= {b} <= {a}")
    for (a, b), (c, d) in itertools.product(le, le):
        if b == c and (a, d) not in le:
            raise BuilderError(f"relation is not transitive: {a} <= {b} <= {d} but not {a} <= {d}")
    names = dict(names or {})
    idx = {o: i for i, o in enumerate(objs)}

    def mname(a, b):
        if (a, b) in names:
            return names[(a, b)]
        return f"id{a}" if a == b else f"{a}<{b}"

    morphisms = tuple((mname(a, b), a, b) for a, b in sorted(le, key=lambda p: (idx[p[0]], idx[p[1]])))
    compose = {}
    for (a, b) in le:
        for (b2, c) in le:
            if b2 == b:
                compose[(mname(a, b), mname(b, c))] = mname(a, c)
    return Category1(tuple(objs), morphisms, compose, {a: mname(a, a) for a in objs})


def build_from_poset(relation: Iterable[Sequence[str]], objects: Optional[Sequence[str]] = None, dim: int = 2,
                     closure: bool = False, names: Optional[Mapping[tuple, str]] = None,
                     name: str = "") -> EnrichedCategory:
    """One morphism per comparable pair, all higher simplices degenerate.

    ``relation`` lists pairs ``(a, b)`` meaning ``a <= b``; reflexive pairs are
    implied.  Unless ``closure`` is set, the relation must already be
    transitive.
    """
    return build_from_category(poset_category(relation, objects, closure, names), dim, name)


def chain_poset(length: int, dim: int = 2) -> EnrichedCategory:
    objs = [str(i) for i in range(length + 1)]
    rel = [(objs[i], objs[j]) for i in range(len(objs)) for j in range(i + 1, len(objs))]
    return build_from_poset(rel, objs, dim, name=f"chain{length}")


def grid_poset(rows: int, cols: int, dim: int = 2) -> EnrichedCategory:
    objs = [f"{i}{j}" for i in range(rows) for j in range(cols)]
    rel = [(f"{i}{j}", f"{k}{l}") for i in range(rows) for j in range(cols) for k in range(rows) for l in range(cols)
           if (i, j) != (k, l) and i <= k and j <= l]
    return build_from_poset(rel, objs, dim, name=f"grid{rows}x{cols}")


def antichain(size: int, dim: int = 2) -> EnrichedCategory:
    return build_from_poset([], [str(i) for i in range(size)], dim, name=f"antichain{size}")


def build_with_homotopies(base: EnrichedCategory, attachments: Sequence[Sequence[str]],
                          name: str = "") -> EnrichedCategory:
    """Attach 1-simplices ``h`` with ``d_1 h = f`` and ``d_0 h = g``.

    Each attachment is ``(A, B, f, g)`` or ``(A, B, f, g, h_name)``.  The base
    must be locally discrete.  Composites with ``h`` are whiskerings by
    vertices: for ``p: X -> A`` and ``q: B -> Y`` a fresh 1-simplex ``p;h;q``
    of ``S(X, Y)`` is added (identity parts are left out of the name).
    Two attached simplices that could be composed with each other are
    rejected, since no composite for them is supplied.
    """
    if not attachments:
        return base
    D = base.dim
    if D < 1:
        raise TruncationError("attaching 1-simplices needs truncation dimension >= 1")
    for (a, b), X in base.homs.items():
        for d in range(1, D + 1):
            for x in X.simplices[d]:
                if x not in X.degenerate:
                    raise BuilderError(f"base hom({a},{b}) has nondegenerate simplex {x!r}")
    atts = []
    for i, att in enumerate(attachments):
        if len(att) not in (4, 5):
            raise BuilderError("attachments are (A, B, f, g) or (A, B, f, g, name)")
        a, b, f, g = (str(v) for v in att[:4])
        hname = str(att[4]) if len(att) == 5 else (f"h{i}" if len(attachments) > 1 else "h")
        X = base.hom(a, b)
        for v in (f, g):
            if v not in X or X.dim_of(v) != 0:
                raise BuilderError(f"{v!r} is not a vertex of hom({a},{b}); the pair is not parallel")
        atts.append((a, b, f, g, hname))
    for a1, b1, *_ , h1 in atts:
        for a2, b2, *_, h2 in atts:
            if not base.hom(b1, a2).is_empty():
                raise BuilderError(f"attached simplices {h1!r} and {h2!r} are composable; "
                                   "their composite would have to be supplied")
    ident = set(base.identities.values())
    comp0 = base.compose
    # whiskered 1-simplices per hom pair: id -> (p, h-index, q)
    whiskers = {}
    for k, (a, b, f, g, hname) in enumerate(atts):
        for x in base.objects:
            for p in base.hom(x, a).vertices:
                for y in base.objects:
                    for q in base.hom(b, y).vertices:
                        parts = ([] if p in ident else [p]) + [hname] + ([] if q in ident else [q])
                        wid = ";".join(parts)
                        whiskers.setdefault((x, y), {})[wid] = (p, k, q)
    lookup = {}
    homs = {}
    for x in base.objects:
        for y in base.objects:
            verts = list(base.hom(x, y).vertices)
            wh = whiskers.get((x, y), {})
            if not verts and not wh:
                continue
            nd = [(v, 0, ()) for v in verts]
            for wid, (p, k, q) in wh.items():
                a, b, f, g, _ = atts[k]
                src = comp0(comp0(p, f), q)
                tgt = comp0(comp0(p, g), q)
                nd.append((wid, 1, (tgt, src)))
                lookup[wid] = (p, k, q)
            homs[(x, y)] = TruncatedSimplicialSet.generate(nd, D)

    def parse(X, sid):
        # simplex -> (nondegenerate id, surjection)
        for base_id in list(X.vertices) + [w for w in X.simplices[1] if w in lookup]:
            d = X.dim_of(sid)
            m = X.dim_of(base_id)
            for s in _surjections(d, m):
                if degenerate_name(base_id, s) == sid:
                    return base_id, s
        raise ScatError(f"cannot parse simplex {sid!r}")

    parsed = {}
    for (x, y), X in homs.items():
        for sid in X.all_ids():
            parsed[sid] = parse(X, sid)

    composition = {}
    for (x, y), X in homs.items():
        for z in base.objects:
            Y = homs.get((y, z))
            if Y is None:
                continue
            table = {}
            for d in range(D + 1):
                for s in X.simplices[d]:
                    bs, ss = parsed[s]
                    for t in Y.simplices[d]:
                        bt, st = parsed[t]
                        if bs not in lookup and bt not in lookup:
                            r = degenerate_name(comp0(bs, bt), ss)
                        elif bt in lookup and bs not in lookup:
                            p, k, q = lookup[bt]
                            r = degenerate_name(_whisker_id(atts[k][4], comp0(bs, p), q, ident), st)
                        elif bs in lookup and bt not in lookup:
                            p, k, q = lookup[bs]
                            r = degenerate_name(_whisker_id(atts[k][4], p, comp0(q, bt), ident), ss)
                        else:
                            raise BuilderError("two attached simplices met in a composite")
                        table[(s, t)] = r
            composition[(x, y, z)] = table
    return EnrichedCategory(tuple(base.objects), D, homs, dict(base.identities), composition,
                            name or (f"{base.name}+h" if base.name else ""))


def _whisker_id(hname, p, q, ident):
    return ";".join(([] if p in ident else [p]) + [hname] + ([] if q in ident else [q]))


def full_subcategory(C: EnrichedCategory, objs: Sequence[str], name: str = "") -> tuple:
    """Full sub-enriched category on ``objs`` and its inclusion functor."""
    for o in objs:
        if o not in C.objects:
            raise ScatError(f"unknown object {o!r}")
    keep = [o for o in C.objects if o in set(objs)]
    ks = set(keep)
    homs = {(a, b): X for (a, b), X in C.homs.items() if a in ks and b in ks}
    comp = {k: v for k, v in C.composition.items() if all(o in ks for o in k)}
    T = EnrichedCategory(tuple(keep), C.dim, homs, {a: C.identities[a] for a in keep}, comp,
                         name or f"{C.name}|{','.join(keep)}")
    inc = EnrichedFunctor(T, C, {a: a for a in keep}, {x: x for X in homs.values() for x in X.all_ids()})
    return T, inc


def relabel_isomorphism(C: EnrichedCategory, object_map: Mapping[str, str], simplex_map: Mapping[str, str],
                        name: str = "") -> tuple:
    """Rename objects and simplices; returns ``(C', F, F_inverse)``."""
    all_ids = [x for X in C.homs.values() for x in X.all_ids()]
    if set(object_map) != set(C.objects) or len(set(object_map.values())) != len(object_map):
        raise ScatError("object relabelling must be a bijection on the objects")
    if set(simplex_map) != set(all_ids) or len(set(simplex_map.values())) != len(simplex_map):
        raise ScatError("simplex relabelling must be a bijection on all simplex ids")
    om, sm = dict(object_map), dict(simplex_map)
    homs = {(om[a], om[b]): X.relabel(sm) for (a, b), X in C.homs.items()}
    comp = {(om[a], om[b], om[c]): {(sm[s], sm[t]): sm[r] for (s, t), r in table.items()}
            for (a, b, c), table in C.composition.items()}
    C2 = EnrichedCategory(tuple(om[a] for a in C.objects), C.dim, homs,
                          {om[a]: sm[e] for a, e in C.identities.items()}, comp, name or f"{C.name}'")
    F = EnrichedFunctor(C, C2, om, sm)
    Finv = EnrichedFunctor(C2, C, {v: k for k, v in om.items()}, {v: k for k, v in sm.items()})
    return C2, F, Finv
