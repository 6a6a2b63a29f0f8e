"""Degree-wise construction of a minimal model through a fixed degree."""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Element, Generator, GradedAlgebra
from .constructions import transport
from .dga import DGA, Morphism, kernel_coordinates, map_rank
from .linalg import Echelon

MAX_DEGREE = 4
MAX_ROUNDS = 64


@dataclass(frozen=True, eq=False)
class MinimalModel:
    model: DGA
    morphism: Morphism
    degree: int
    ranks: tuple[tuple[int, int, int], ...]  # (k, dim H^k(model), rank of induced map)

    @property
    def images(self) -> dict[str, Element]:
        return self.morphism.images()

    def iso_through(self) -> int:
        """Largest k with an isomorphism on H^0..H^k."""
        top = -1
        for k, _, _ in self.ranks:
            if self.is_iso(k):
                top = k
            else:
                break
        return top

    def is_iso(self, k: int) -> bool:
        for kk, dim_m, r in self.ranks:
            if kk == k:
                return dim_m == r == self.morphism.target.betti_number(k)
        raise KeyError(k)

    def is_mono(self, k: int) -> bool:
        for kk, dim_m, r in self.ranks:
            if kk == k:
                return dim_m == r
        raise KeyError(k)


def _extend(M: DGA, phi_imgs: dict[str, Element], D: DGA, new: list[tuple[str, int, Element, Element]]):
    """Adjoin generators ``(name, degree, d-value in M, image in D)``."""
    gens = list(M.generators) + [Generator(n, deg) for n, deg, _, _ in new]
    alg = GradedAlgebra(gens)
    diff = {n: transport(dg, alg) for n, dg in M.differential_map().items() if dg}
    for n, _, dv, _ in new:
        if dv:
            diff[n] = transport(dv, alg)
    M2 = DGA(alg, diff)
    imgs = dict(phi_imgs)
    for n, _, _, img in new:
        imgs[n] = img
    return M2, imgs


def minimal_model_up_to(D: DGA, N: int, force_construction: bool = False) -> MinimalModel:
    """Sullivan's degree-by-degree construction with generators of degree <= N.

    The resulting morphism induces isomorphisms on H^k for k <= N and a
    monomorphism on H^{N+1}; both are checked by rank.  A DGA that is
    already free and minimal is returned with the identity unless
    ``force_construction`` is set.
    """
    if N > MAX_DEGREE:
        raise ValueError(f"minimal models are supported up to degree {MAX_DEGREE}")
    if N < 0:
        raise ValueError("N must be >= 0")
    if D.betti_number(0) != 1 or not any(D.cohomology(0).coordinates(D.algebra.unit())):
        raise ValueError("H^0 must be one-dimensional, spanned by 1")
    if D.algebra.is_free and not force_construction and D.is_minimal():
        gens = [g for g in D.generators if g.degree <= N]
        if len(gens) == len(D.generators):
            ident = Morphism(D, D, {n: D.gen(n) for n in D.names})
            return _finish(D, ident, N)

    M = DGA(GradedAlgebra([]))
    imgs: dict[str, Element] = {}
    counter = {}

    def name_for(rep: Element, deg: int) -> str:
        # reuse the target's generator name when the class is a bare generator
        used = rep.generators_used()
        if len(rep) == 1 and len(used) == 1:
            cand = D.algebra.generators[next(iter(used))].name
            if rep == D.gen(cand) and cand not in M.algebra and cand not in counter:
                counter[cand] = 1
                return cand
        return fresh(deg)

    def fresh(deg):
        while True:
            counter[deg] = counter.get(deg, 0) + 1
            cand = f"v{deg}_{counter[deg]}"
            if cand not in counter and cand not in D.algebra:
                return cand

    for k in range(1, N + 1):
        # surjectivity on H^k: adjoin closed generators hitting a complement
        phi = Morphism(M, D, imgs)
        target = D.cohomology(k)
        e = Echelon()
        for v in phi.on_cohomology(k):
            e.insert({i: c for i, c in enumerate(v) if c})
        new = []
        for cls in target:
            vec = {i: c for i, c in enumerate(cls.coordinates) if c}
            if e.insert(vec) is None:
                new.append((name_for(cls.representative, k), k, None, cls.representative))
        if new:
            M, imgs = _extend(M, imgs, D, [(n, deg, M.algebra.zero(), img) for n, deg, _, img in new])
        # injectivity on H^{k+1}: kill kernel classes with degree-k generators
        for _ in range(MAX_ROUNDS):
            phi = Morphism(M, D, imgs)
            images = phi.on_cohomology(k + 1)
            relations = kernel_coordinates(images)
            if not relations:
                break
            space = M.cohomology(k + 1)
            new = []
            for rel in relations:
                z = M.algebra.zero()
                for i, c in rel.items():
                    z = z + space.class_basis[i].representative.scale(c)
                eta = D.is_exact(phi(z))
                if eta is None:
                    raise AssertionError("kernel class does not map to an exact element")
                new.append((fresh(k), k, z, eta))
            M, imgs = _extend(M, imgs, D, new)
        else:
            raise RuntimeError(f"degree-{k} construction did not stabilise in {MAX_ROUNDS} rounds")
    phi = Morphism(M, D, imgs)
    return _finish(M, phi, N)


def _finish(M: DGA, phi: Morphism, N: int) -> MinimalModel:
    if phi.chain_map_defects():
        raise AssertionError(f"not a chain map at {phi.chain_map_defects()}")
    ranks = []
    for k in range(0, N + 2):
        r = map_rank(phi.on_cohomology(k))
        ranks.append((k, M.betti_number(k), r))
    result = MinimalModel(M, phi, N, tuple(ranks))
    for k in range(N + 1):
        if not result.is_iso(k):
            raise AssertionError(f"minimal model is not an isomorphism on H^{k}")
    if not result.is_mono(N + 1):
        raise AssertionError(f"minimal model is not injective on H^{N + 1}")
    return result

